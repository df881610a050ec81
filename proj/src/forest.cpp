#include "ella/forest.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "ella/errors.hpp"

namespace ella {

namespace {

void validate_shape(const forest& f) {
    if (f.n < 1 || f.k < 1)
        throw malformed_forest("forest: need n >= 1 and k >= 1");
    for (auto& [a, b] : f.edges) {
        if (a < 0 || b < 0 || a >= f.n + f.k || b >= f.n + f.k)
            throw malformed_forest("forest: vertex id out of range");
        if (a == b) throw malformed_forest("forest: self-loop");
    }
}

struct union_find {
    std::vector<int> parent;
    explicit union_find(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a); b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
};

} // namespace

bool is_admissible(const forest& f) {
    validate_shape(f);
    if (int(f.edges.size()) != f.k) return false;
    std::set<std::pair<int, int>> seen;
    union_find uf(f.n + f.k);
    for (auto [a, b] : f.edges) {
        if (a > b) std::swap(a, b);
        if (!seen.insert({a, b}).second) return false; // duplicate edge = cycle
        if (!uf.unite(a, b)) return false;
    }
    // Every t-vertex must appear in some edge.
    std::vector<char> touched(f.n + f.k, 0);
    for (auto& [a, b] : f.edges) touched[a] = touched[b] = 1;
    for (int t = f.n; t < f.n + f.k; ++t)
        if (!touched[t]) return false;
    // Exactly one z per component that carries edges.
    std::vector<int> zcount(f.n + f.k, 0);
    for (int z = 0; z < f.n; ++z)
        if (touched[z]) zcount[uf.find(z)]++;
    for (int v = 0; v < f.n + f.k; ++v)
        if (touched[v] && zcount[uf.find(v)] != 1) return false;
    return true;
}

std::pair<forest, int> canonicalize(const forest& f) {
    validate_shape(f);
    forest g = f;
    for (auto& [a, b] : g.edges)
        if (a > b) std::swap(a, b);
    // Insertion sort, counting transpositions for the sign.
    int sign = 1;
    for (size_t i = 1; i < g.edges.size(); ++i)
        for (size_t j = i; j > 0 && g.edges[j] < g.edges[j - 1]; --j) {
            std::swap(g.edges[j], g.edges[j - 1]);
            sign = -sign;
        }
    return {g, sign};
}

std::vector<forest> generate_admissible(int n, int k) {
    if (n < 1 || k < 1) throw malformed_forest("generate_admissible: need n, k >= 1");
    if (n + k > 9) throw size_limit("generate_admissible: n + k exceeds desk scale (9)");

    // Candidate edges: every {z_a, t_i} and every {t_i, t_j}, ascending.
    std::vector<std::pair<int, int>> cand;
    for (int z = 0; z < n; ++z)
        for (int t = n; t < n + k; ++t) cand.push_back({z, t});
    for (int t1 = n; t1 < n + k; ++t1)
        for (int t2 = t1 + 1; t2 < n + k; ++t2) cand.push_back({t1, t2});
    std::sort(cand.begin(), cand.end());

    std::vector<forest> out;
    std::vector<std::pair<int, int>> cur;
    // Backtracking over acyclic edge subsets; admissibility checked at size k.
    auto rec = [&](auto&& self, size_t next, union_find uf) -> void {
        if (int(cur.size()) == k) {
            forest f(n, k, cur);
            if (is_admissible(f)) out.push_back(f);
            return;
        }
        if (cand.size() - next < k - cur.size()) return;
        for (size_t e = next; e < cand.size(); ++e) {
            union_find uf2 = uf;
            if (!uf2.unite(cand[e].first, cand[e].second)) continue;
            cur.push_back(cand[e]);
            self(self, e + 1, uf2);
            cur.pop_back();
        }
    };
    rec(rec, 0, union_find(n + k));
    std::sort(out.begin(), out.end());
    return out;
}

rooted_forest root_forest(const forest& f) {
    if (!is_admissible(f))
        throw malformed_forest("root_forest: forest is not admissible");
    int nv = f.n + f.k;
    std::vector<std::vector<std::pair<int, int>>> adj(nv); // (neighbor, edge idx)
    for (int e = 0; e < f.k; ++e) {
        auto [a, b] = f.edges[e];
        adj[a].push_back({b, e});
        adj[b].push_back({a, e});
    }
    rooted_forest rf;
    rf.head.assign(f.k, -1);
    rf.tail.assign(f.k, -1);
    rf.branch_tvars.assign(f.k, {});
    rf.root.assign(nv, -1);

    std::vector<char> vis(nv, 0);
    for (int z = 0; z < f.n; ++z) {
        if (vis[z]) continue;
        // Iterative DFS from each z-root; heads point away from the root.
        std::vector<std::pair<int, int>> stack{{z, -1}};
        vis[z] = 1;
        if (!adj[z].empty()) rf.root[z] = z;
        while (!stack.empty()) {
            auto [v, from_edge] = stack.back();
            stack.pop_back();
            for (auto [u, e] : adj[v]) {
                if (e == from_edge || vis[u]) continue;
                vis[u] = 1;
                rf.root[u] = z;
                rf.head[e] = u;
                rf.tail[e] = v;
                stack.push_back({u, e});
            }
        }
    }
    // Branch of head(e): t-vertices whose root path passes through head(e).
    // Walk up from each t-vertex collecting the edges it sits above.
    std::vector<int> up_edge(nv, -1); // edge towards the root
    for (int e = 0; e < f.k; ++e) up_edge[rf.head[e]] = e;
    for (int t = f.n; t < nv; ++t) {
        int v = t;
        while (up_edge[v] >= 0) {
            int e = up_edge[v];
            rf.branch_tvars[e].push_back(t - f.n);
            v = rf.tail[e];
        }
    }
    for (auto& b : rf.branch_tvars) std::sort(b.begin(), b.end());
    return rf;
}

qpair load(const forest& f, int v, const std::vector<qpair>& w) {
    if (int(w.size()) != f.k)
        throw dimension_mismatch("load: weight count must equal k");
    if (v < 0 || v >= f.n + f.k)
        throw malformed_forest("load: vertex id out of range");
    rooted_forest rf = root_forest(f);
    if (v < f.n) { // branch at a root is its whole component
        qpair acc;
        for (int t = f.n; t < f.n + f.k; ++t)
            if (rf.root[t] == v) acc += w[t - f.n];
        return acc;
    }
    // Find the edge whose head is v; its branch is B(v).
    for (int e = 0; e < f.k; ++e)
        if (rf.head[e] == v) {
            qpair acc;
            for (int ti : rf.branch_tvars[e]) acc += w[ti];
            return acc;
        }
    throw malformed_forest("load: vertex not covered by the forest");
}

forest_space build_forest_space(int n, int k) {
    forest_space fs;
    fs.n = n;
    fs.k = k;
    fs.generators = generate_admissible(n, k);

    auto gen_index = [&](const forest& f) -> int {
        auto it = std::lower_bound(fs.generators.begin(), fs.generators.end(), f);
        if (it == fs.generators.end() || !(*it == f)) return -1;
        return int(it - fs.generators.begin());
    };

    // Each instance is generated from its both-edges-at-the-bottom term, so
    // scanning ordered edge pairs of every generator is exhaustive.
    std::set<std::array<long long, 6>> seen;
    for (const forest& f : fs.generators) {
        for (int pa = 0; pa < k; ++pa)
            for (int pb = 0; pb < k; ++pb) {
                if (pa == pb) continue;
                auto [a1, a2] = f.edges[pa];
                auto [b1, b2] = f.edges[pb];
                int bottom, left, right;
                if (a1 == b1) { bottom = a1; left = a2; right = b2; }
                else if (a1 == b2) { bottom = a1; left = a2; right = b1; }
                else if (a2 == b1) { bottom = a2; left = a1; right = b2; }
                else if (a2 == b2) { bottom = a2; left = a1; right = b1; }
                else continue;

                auto mk = [&](std::pair<int, int> ea, std::pair<int, int> eb) {
                    forest g = f;
                    g.edges[pa] = ea;
                    g.edges[pb] = eb;
                    return g;
                };
                // Local move: {bottom-left, bottom-right} ->
                //   {left-right at a, bottom-left at b} and
                //   {bottom-right at a, left-right at b}.
                forest t1 = f;
                forest t2 = mk({left, right}, {bottom, left});
                forest t3 = mk({bottom, right}, {left, right});

                r2_instance inst;
                bool ok = true;
                const forest* terms[3] = {&t1, &t2, &t3};
                for (int i = 0; i < 3; ++i) {
                    auto [cf, sg] = canonicalize(*terms[i]);
                    int gi = gen_index(cf);
                    if (gi < 0) { ok = false; break; } // inadmissible: whole triple is
                    inst.gen[i] = gi;
                    inst.sign[i] = sg;
                }
                if (!ok) continue;

                // Normalize for dedup: sort terms by generator, leading sign +.
                std::array<int, 3> ord{0, 1, 2};
                std::sort(ord.begin(), ord.end(),
                          [&](int x, int y) { return inst.gen[x] < inst.gen[y]; });
                r2_instance norm;
                for (int i = 0; i < 3; ++i) {
                    norm.gen[i] = inst.gen[ord[i]];
                    norm.sign[i] = inst.sign[ord[i]];
                }
                if (norm.sign[0] < 0)
                    for (auto& s : norm.sign) s = -s;
                std::array<long long, 6> key{norm.gen[0], norm.gen[1], norm.gen[2],
                                             norm.sign[0], norm.sign[1], norm.sign[2]};
                if (seen.insert(key).second) fs.relations.push_back(norm);
            }
    }
    return fs;
}

int forest_space_dim(int n, int k) {
    forest_space fs = build_forest_space(n, k);
    std::vector<sparse_row> rows;
    rows.reserve(fs.relations.size());
    for (const r2_instance& r : fs.relations) {
        sparse_row row;
        for (int i = 0; i < 3; ++i) row.push_back({r.gen[i], r.sign[i]});
        std::sort(row.begin(), row.end());
        // Distinct graphs per instance, so no column merging is needed.
        rows.push_back(std::move(row));
    }
    return int(fs.generators.size()) - sparse_rank(rows);
}

long long composition_factorial_sum(int n, int k) {
    // sum over compositions m_1 + ... + m_n = k (m_i >= 0) of prod m_i!.
    std::vector<long long> fact(k + 1, 1);
    for (int i = 1; i <= k; ++i) fact[i] = fact[i - 1] * i;
    std::vector<long long> cur(k + 1, 0), next(k + 1, 0);
    cur[0] = 1; // zero parts, sum 0
    for (int part = 0; part < n; ++part) {
        std::fill(next.begin(), next.end(), 0);
        for (int s = 0; s <= k; ++s) {
            if (cur[s] == 0) continue;
            for (int m = 0; s + m <= k; ++m) next[s + m] += cur[s] * fact[m];
        }
        std::swap(cur, next);
    }
    return cur[k];
}

cplx phi_rat_eval(const forest& f, const std::vector<cplx>& t, const std::vector<cplx>& z) {
    if (int(t.size()) != f.k || int(z.size()) != f.n)
        throw dimension_mismatch("phi_rat_eval: point sizes must match (n, k)");
    if (!is_admissible(f))
        throw malformed_forest("phi_rat_eval: forest is not admissible");
    rooted_forest rf = root_forest(f);
    auto value = [&](int v) { return v < f.n ? z[v] : t[v - f.n]; };

    // Row e of the pattern: coefficients of d log(head - tail) in dt_1..dt_k.
    std::vector<cplx> m(size_t(f.k) * f.k, cplx(0.0));
    for (int e = 0; e < f.k; ++e) {
        cplx diff = value(rf.head[e]) - value(rf.tail[e]);
        if (std::abs(diff) < 1e-13)
            throw on_hyperplane("phi_rat_eval: evaluation point on a hyperplane");
        cplx inv = 1.0 / diff;
        m[size_t(e) * f.k + (rf.head[e] - f.n)] += inv;
        if (rf.tail[e] >= f.n) m[size_t(e) * f.k + (rf.tail[e] - f.n)] -= inv;
    }
    // Gaussian elimination determinant, partial pivoting.
    cplx det(1.0);
    for (int p = 0; p < f.k; ++p) {
        int piv = p;
        for (int i = p + 1; i < f.k; ++i)
            if (std::abs(m[size_t(i) * f.k + p]) > std::abs(m[size_t(piv) * f.k + p])) piv = i;
        if (std::abs(m[size_t(piv) * f.k + p]) == 0.0) return cplx(0.0);
        if (piv != p) {
            for (int j = 0; j < f.k; ++j)
                std::swap(m[size_t(piv) * f.k + j], m[size_t(p) * f.k + j]);
            det = -det;
        }
        det *= m[size_t(p) * f.k + p];
        for (int i = p + 1; i < f.k; ++i) {
            cplx fct = m[size_t(i) * f.k + p] / m[size_t(p) * f.k + p];
            for (int j = p; j < f.k; ++j) m[size_t(i) * f.k + j] -= fct * m[size_t(p) * f.k + j];
        }
    }
    return det;
}

cplx phi_theta_eval(const forest& f, const std::vector<cplx>& t, const std::vector<cplx>& z,
                    const std::vector<qpair>& w, const modular_param& mp) {
    if (int(t.size()) != f.k || int(z.size()) != f.n)
        throw dimension_mismatch("phi_theta_eval: point sizes must match (n, k)");
    if (int(w.size()) != f.k)
        throw dimension_mismatch("phi_theta_eval: weight count must equal k");
    if (!is_admissible(f))
        throw malformed_forest("phi_theta_eval: forest is not admissible");
    std::vector<int> witness;
    if (!is_discriminantal_convenient(w, &witness)) {
        std::string msg = "phi_theta_eval: weights not discriminantal-convenient; subset {";
        for (size_t i = 0; i < witness.size(); ++i)
            msg += (i ? "," : "") + std::to_string(witness[i]);
        throw not_convenient(msg + "} sums into the lattice", witness);
    }
    rooted_forest rf = root_forest(f);
    auto value = [&](int v) { return v < f.n ? z[v] : t[v - f.n]; };

    // Incidence pattern of d(head - tail): entries 0, +-1.
    std::vector<double> m(size_t(f.k) * f.k, 0.0);
    for (int e = 0; e < f.k; ++e) {
        m[size_t(e) * f.k + (rf.head[e] - f.n)] += 1.0;
        if (rf.tail[e] >= f.n) m[size_t(e) * f.k + (rf.tail[e] - f.n)] -= 1.0;
    }
    double det = 1.0;
    for (int p = 0; p < f.k; ++p) {
        int piv = p;
        for (int i = p + 1; i < f.k; ++i)
            if (std::abs(m[size_t(i) * f.k + p]) > std::abs(m[size_t(piv) * f.k + p])) piv = i;
        if (m[size_t(piv) * f.k + p] == 0.0) return cplx(0.0);
        if (piv != p) {
            for (int j = 0; j < f.k; ++j)
                std::swap(m[size_t(piv) * f.k + j], m[size_t(p) * f.k + j]);
            det = -det;
        }
        det *= m[size_t(p) * f.k + p];
        for (int i = p + 1; i < f.k; ++i) {
            double fct = m[size_t(i) * f.k + p] / m[size_t(p) * f.k + p];
            for (int j = p; j < f.k; ++j) m[size_t(i) * f.k + j] -= fct * m[size_t(p) * f.k + j];
        }
    }

    cplx prod(det, 0.0);
    try {
        for (int e = 0; e < f.k; ++e) {
            qpair ld;
            for (int ti : rf.branch_tvars[e]) ld += w[ti];
            prod *= sigma(mp.embed(ld), value(rf.head[e]) - value(rf.tail[e]), mp);
        }
    } catch (const near_singular&) {
        throw on_hyperplane("phi_theta_eval: evaluation point on a hyperplane");
    }
    return prod;
}

bool is_discriminantal_convenient(const std::vector<qpair>& w, std::vector<int>* witness) {
    int k = int(w.size());
    if (k > 20) throw size_limit("is_discriminantal_convenient: too many weights");
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
        qpair sum;
        for (int i = 0; i < k; ++i)
            if (mask & (1u << i)) sum += w[i];
        if (sum.in_lambda()) {
            if (witness) {
                witness->clear();
                for (int i = 0; i < k; ++i)
                    if (mask & (1u << i)) witness->push_back(i);
            }
            return false;
        }
    }
    return true;
}

} // namespace ella
