#ifndef ELLA_THETA_HPP
#define ELLA_THETA_HPP

#include <complex>
#include <vector>

#include "ella/modular.hpp"
#include "ella/qpair.hpp"

namespace ella {

// First Jacobi theta function in product form,
//   theta(z) = i * e^{pi*i*(tau/4 - z)} * (x;q) (q/x;q) (q;q),
// with q = e^{2 pi i tau}, x = e^{2 pi i z}.  Odd, with simple zeros exactly
// on Z + Z*tau, and
//   theta(z+1)   = -theta(z),
//   theta(z+tau) = -e^{-pi i tau - 2 pi i z} theta(z).
cplx theta(cplx z, const modular_param& mp);

// d/dz theta at z = 0; equals 2*pi*e^{pi*i*tau/4}*(q;q)^3.
cplx theta_prime_zero(const modular_param& mp);

// sigma_w(t) = theta(w-t) theta'(0) / (theta(w) theta(t)).
// Simple poles with residue 1 on t in Z + Z*tau; t-periodic in 1 and picks
// up e^{2 pi i w} under t -> t + tau.  Throws near_singular when w or t is
// within the relative guard band of a lattice point.
cplx sigma(cplx w, cplx t, const modular_param& mp);

// Relative defect of the three-term identity
//   sigma_{w1+w2}(t-u) sigma_{w2}(s-t) - sigma_{w2}(s-u) sigma_{w1}(t-u)
//     + sigma_{w1}(t-s) sigma_{w1+w2}(s-u)
// normalized by the largest term magnitude.
double three_term_defect(cplx w1, cplx w2, cplx t, cplx s, cplx u,
                         const modular_param& mp);

// Monodromy of the weight-w local system along deck translation gamma:
// e^{2 pi i sum_i w_i l_i}, the exponent assembled exactly as a qpair
// before embedding.
cplx rho_factor(const std::vector<qpair>& w, const lattice_vector& gamma,
                const modular_param& mp);

// Decompose c = c_R + tau*c_tau with real c_R, c_tau.
void split_real_tau(cplx c, cplx tau, double& c_r, double& c_tau);

} // namespace ella

#endif
