#ifndef ELLA_FOREST_HPP
#define ELLA_FOREST_HPP

#include <array>
#include <utility>
#include <vector>

#include "ella/exact_rank.hpp"
#include "ella/modular.hpp"
#include "ella/qpair.hpp"
#include "ella/theta.hpp"

namespace ella {

// Ordered k-forest on the vertex set {z_1..z_n, t_1..t_k}.  Vertex ids:
// 0..n-1 are the z's, n..n+k-1 are the t's.  Edges are stored as (lo, hi)
// pairs; the list order is the wedge order and carries sign.
struct forest {
    int n = 0, k = 0;
    std::vector<std::pair<int, int>> edges;

    forest() = default;
    forest(int n_, int k_, std::vector<std::pair<int, int>> e)
        : n(n_), k(k_), edges(std::move(e)) {}

    bool is_z(int v) const { return v < n; }

    friend bool operator==(const forest& a, const forest& b) {
        return a.n == b.n && a.k == b.k && a.edges == b.edges;
    }
    friend bool operator<(const forest& a, const forest& b) { return a.edges < b.edges; }
};

// Validates vertex ranges and shape (throws malformed_forest), then checks
// admissibility: exactly k edges, acyclic, every t-vertex covered, and each
// component containing exactly one z-vertex.
bool is_admissible(const forest& f);

// Edge list sorted lexicographically; sign is the permutation parity picked
// up by the reordering (edge transposition relation).
std::pair<forest, int> canonicalize(const forest& f);

// All admissible forests on (n, k), one canonical representative per
// underlying graph, sorted.  Desk scale: n + k <= 9.
std::vector<forest> generate_admissible(int n, int k);

// One triangle relation instance: the signed sum of the three generators
// vanishes.  gen indexes into the generator list the instance was built
// against.
struct r2_instance {
    std::array<int, 3> gen;
    std::array<int, 3> sign;
};

struct forest_space {
    int n = 0, k = 0;
    std::vector<forest> generators;
    std::vector<r2_instance> relations; // deduped
};

forest_space build_forest_space(int n, int k);

// dim = #generators - rank(relations), exact over Q.
int forest_space_dim(int n, int k);

// Closed-form dimension count: sum over m_1+...+m_n = k of m_1! ... m_n!.
long long composition_factorial_sum(int n, int k);

// Heads point away from the component's z-root: for edge i, head(i) is the
// endpoint farther from the root, tail(i) the closer one.
struct rooted_forest {
    std::vector<int> head, tail;                // per edge
    std::vector<std::vector<int>> branch_tvars; // per edge: t-indices in B(head)
    std::vector<int> root;                      // per vertex: its component's z (-1 if unused)
};
rooted_forest root_forest(const forest& f);

// Sum of w over the branch at vertex v (t-vertices whose root path passes
// through v, v included).  v is a vertex id; w has one entry per t-vertex.
qpair load(const forest& f, int v, const std::vector<qpair>& w);

// Coefficient g in  phi_rat(F) = g dt_1 ^ ... ^ dt_k  at the point (t, z):
// determinant of the matrix of logarithmic-derivative rows d log(head-tail).
cplx phi_rat_eval(const forest& f, const std::vector<cplx>& t, const std::vector<cplx>& z);

// Same for the theta-weighted form: (0/+-1 incidence determinant) times
// prod_i sigma_{load(head_i)}(head_i - tail_i).
cplx phi_theta_eval(const forest& f, const std::vector<cplx>& t, const std::vector<cplx>& z,
                    const std::vector<qpair>& w, const modular_param& mp);

// Every nonempty subset sum of w off the lattice.  On failure the witness
// holds the (0-based) offending subset.
bool is_discriminantal_convenient(const std::vector<qpair>& w, std::vector<int>* witness = nullptr);

} // namespace ella

#endif
