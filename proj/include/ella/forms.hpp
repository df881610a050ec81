#ifndef ELLA_FORMS_HPP
#define ELLA_FORMS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ella/intmat.hpp"
#include "ella/lattice_solve.hpp"
#include "ella/modular.hpp"
#include "ella/qpair.hpp"
#include "ella/theta.hpp"

namespace ella {

// Transversal k x k system: hyperplane j is  sum_i t_i a(i,j) = z_j  with
// exact lifts z_j, plus the weight vector w defining the local system.
struct tsystem {
    intmat a;
    std::vector<qpair> z;
    std::vector<qpair> w;
    modular_param mp;

    tsystem(intmat a_, std::vector<qpair> z_, std::vector<qpair> w_, modular_param mp_)
        : a(std::move(a_)), z(std::move(z_)), w(std::move(w_)), mp(mp_) {
        validate();
    }
    int k() const { return a.rows; }
    void validate() const;
};

// Solution of the primal system with its integer shifts:
//   sum_i u_i a(i,j) - z_j = A_j tau + B_j.
struct ulift {
    std::vector<qpair> u;
    std::vector<long long> A, B;
};

// Solution of the dual system with its integer shifts:
//   sum_j a(i,j) v_j - w_i = C_i tau + D_i.
// All coordinates lie off the lattice (admissibility).
struct vsolution {
    std::vector<qpair> v;
    std::vector<long long> C, D;
};

// The (|det a|)^2 solutions of the primal system, fundamental-square lifts,
// sorted.
std::vector<ulift> enumerate_u_lifts(const tsystem& s);

// Shifts for a caller-chosen exact lift; throws if u does not solve the
// system on E.
ulift make_ulift(const tsystem& s, const std::vector<qpair>& u);

// The (|det a|)^2 dual solutions; throws not_admissible if any coordinate
// is a lattice point.
std::vector<vsolution> enumerate_v_solutions(const tsystem& s);

// Coefficient of dt_1 ^ ... ^ dt_k of
//   omega_v = det(a) e^{-2 pi i sum C_i t_i} prod_j sigma_{v_j}(sum_i t_i a(i,j) - z_j).
cplx omega_v_eval(const tsystem& s, const vsolution& vs, const std::vector<cplx>& t);

// Exact exponent sum_i (A_i v_i - C_i u_i); the transition entry is
// e^{2 pi i <exponent>}.  Equals the iterated residue of omega_v at u.
qpair transition_exponent(const ulift& u, const vsolution& v);
cplx transition_entry(const tsystem& s, const ulift& u, const vsolution& v);

// Linear combination sum_v coeffs[v] * omega_v, tagged with the u-point it
// is normalized at.
struct form_descriptor {
    tsystem sys;
    ulift label;
    std::vector<vsolution> basis;
    std::vector<cplx> coeffs;
};

cplx form_eval(const form_descriptor& fd, const std::vector<cplx>& t);

struct normalized_family {
    std::vector<form_descriptor> forms; // one per u, unit residue there, zero at the others
    double det_scaled;                  // |det M| / prod of row norms
    double cond;                        // ||M||_1 * ||M^{-1}||_1
};

// Solves sum_v c_u[v] M(u', v) = delta_{u,u'}.  The one-argument overload
// uses the canonical fundamental-square lifts.
normalized_family normalized_forms(const tsystem& s);
normalized_family normalized_forms(const tsystem& s, const std::vector<ulift>& us);

// Iterated point residue at u of a top-form coefficient g, probed along a
// seeded direction kept away from every hyperplane kernel, with two
// Richardson steps:  (f(eps) - 6 f(eps/2) + 8 f(eps/4)) / 3  for
//   f(eps) = g(u + eps d) prod_j (eps l_j(d)) / det(a),
// accurate to O(eps^3) in the Laurent tail.
cplx point_residue(const std::function<cplx(const std::vector<cplx>&)>& g,
                   const tsystem& s, const ulift& u, std::uint64_t seed);
cplx point_residue(const form_descriptor& fd, const ulift& u, std::uint64_t seed);

// Restriction of a system to the lifted hyperplane j through u.  For k >= 2
// the chart is s = W^T t with W unimodular, first column the j-th
// coefficient column, so the hyperplane is {s_1 = s1}; the induced
// (k-1)-system keeps the other hyperplanes' order and inherits u's integer
// shifts.  For k = 1 the hyperplane is the point u itself and only the
// residue probe applies.
struct restriction_data {
    int j = 0;
    modular_param mp;
    ulift base;         // the chosen lift of the vertex
    intmat w_basis;     // W (0 x 0 when k == 1)
    intmat w_inv;       // W^{-1}
    long long jac = 1;  // det W
    qpair s1;           // z_j + B_j + A_j tau
    std::optional<tsystem> restricted;  // absent when k == 1
    std::optional<ulift> induced_lift;

    explicit restriction_data(modular_param m) : mp(m) {}
};
restriction_data restrict_system(const tsystem& s, const ulift& u, int j);

// Residue along the hyperplane, with the convention
//   omega = (d l_j / l_j) ^ eta + regular,
// evaluated at the point of the hyperplane with chart coordinates s_prime.
cplx hyperplane_residue_eval(const std::function<cplx(const std::vector<cplx>&)>& g,
                             const restriction_data& rd, const std::vector<cplx>& s_prime);
cplx hyperplane_residue_eval(const form_descriptor& fd, const restriction_data& rd,
                             const std::vector<cplx>& s_prime);

// Chart map of the restriction: full ambient point for chart coordinates
// (s1 + eps, s_prime).
std::vector<cplx> restriction_chart_point(const restriction_data& rd, cplx eps,
                                          const std::vector<cplx>& s_prime);

} // namespace ella

#endif
