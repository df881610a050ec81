#ifndef ELLA_ARRANGEMENT_HPP
#define ELLA_ARRANGEMENT_HPP

#include <optional>
#include <vector>

#include "ella/forms.hpp"
#include "ella/intmat.hpp"
#include "ella/lattice_solve.hpp"
#include "ella/modular.hpp"
#include "ella/qpair.hpp"

namespace ella {

// Elliptic hyperplane {t : sum_i c_i t_i = z} in E^k.  The column is
// primitive; canonical orientation has the first nonzero coefficient
// positive, flipping the offset along with the sign.
struct ehyperplane {
    std::vector<long long> c;
    epoint z;

    ehyperplane(std::vector<long long> c_, epoint z_);

    friend bool operator==(const ehyperplane& a, const ehyperplane& b) {
        return a.c == b.c && a.z == b.z;
    }
    friend bool operator<(const ehyperplane& a, const ehyperplane& b) {
        if (a.c != b.c) return a.c < b.c;
        return a.z < b.z;
    }
};

struct earrangement {
    int k = 1;
    modular_param mp;
    std::vector<qpair> w;
    std::vector<ehyperplane> hps;

    earrangement(int k_, modular_param mp_, std::vector<qpair> w_,
                 std::vector<ehyperplane> hps_);
};

// All t_i = z_a (i outer, a inner), then the diagonals t_i = t_j (i < j).
earrangement discriminantal(int n, int k, const std::vector<epoint>& z,
                            const modular_param& mp, std::vector<qpair> w);

struct evertex {
    std::vector<epoint> point;
    std::vector<int> incident; // sorted arrangement indices
};

// 0-dimensional intersections with their full incidence sets, sorted by
// point.  Desk scale guard: at most 14 hyperplanes, k <= 4.
std::vector<evertex> enumerate_vertices(const earrangement& c);

// Top local Orlik-Solomon dimension at a vertex: the number of
// no-broken-circuit k-subsets of its incident columns, hyperplane order
// as in the arrangement.
int local_os_dim(const earrangement& c, const evertex& v);

// Same dimension from the presentation: transversal k-subsets modulo the
// alternating (k+1)-term relations, rank over exact rationals.
int local_os_dim_bruteforce(const earrangement& c, const evertex& v);

struct betti_report {
    long long total = 0;
    std::vector<evertex> vertices;
    std::vector<int> os_dims; // parallel to vertices
};

// Degree-k Betti number of the complement with the weight-w local system:
// sum of local OS dimensions over vertices.  Requires convenient weights.
betti_report betti(const earrangement& c);

// Every transversal subset of size 1..k-1 must leave some kernel direction
// pairing w off the lattice, and w itself must be off Lambda^k.  On failure
// the witness holds the offending subset (empty = the ambient condition).
bool is_convenient(const earrangement& c, std::vector<int>* witness = nullptr);

// Dual-system admissibility for the k-subset: every coordinate of every
// dual solution off the lattice.
bool admissible_at_vertex(const earrangement& c, const std::vector<int>& subset);

earrangement deleted(const earrangement& c, int j0);

struct arr_restriction {
    earrangement arr;  // induced arrangement on the hyperplane, ambient E^{k-1}
    intmat w_basis;    // unimodular chart W, first column = c_{j0}
    std::vector<std::vector<int>> preimage; // induced index -> source indices
};

// Induced arrangement on hyperplane j0 (k >= 2): each other hyperplane
// contributes content^2 parallel primitive hyperplanes in the chart, with
// merged duplicates tracked in preimage.  Weights map through the chart.
arr_restriction restrict_arrangement(const earrangement& c, int j0);

// betti(C) - betti(C') - betti_{k-1}(C''); the k = 1 restriction is a point
// contributing 1 in degree 0.
long long deletion_restriction_defect(const earrangement& c, int j0);

// Unimodular change of coordinates t = W s: columns map to W^T c
// (re-canonicalized), weights to W^T w, offsets follow the sign flips.
earrangement change_coordinates(const earrangement& c, const intmat& wmat);

// b_k of the affine arrangement {t_i = z_a, t_i = t_j} in C^k with generic
// rational z, via the intersection-poset Moebius function.  Cross-validated
// against a second generic choice of z.
long long affine_moebius_betti(int n, int k);

// System built on a transversal k-subset of the arrangement.
tsystem vertex_system(const earrangement& c, const std::vector<int>& subset);

// Normalized form families at a vertex, one per nbc k-subset of its
// incident set; `which` points at the family member whose u equals the
// vertex.
struct vertex_form_set {
    std::vector<int> subset;
    normalized_family family;
    int which = -1;
};
std::vector<vertex_form_set> vertex_forms(const earrangement& c, const evertex& v);

} // namespace ella

#endif
