#include "ella/arrangement.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>

#include "ella/exact_rank.hpp"

namespace ella {

ehyperplane::ehyperplane(std::vector<long long> c_, epoint z_)
    : c(std::move(c_)), z(z_) {
    if (c.empty()) throw dimension_mismatch("ehyperplane: empty column");
    long long g = content(c);
    if (g == 0) throw not_primitive("ehyperplane: zero column");
    if (g != 1) throw not_primitive("ehyperplane: column content " + std::to_string(g));
    for (long long x : c) {
        if (x == 0) continue;
        if (x < 0) {
            for (long long& y : c) y = -y;
            z = -z;
        }
        break;
    }
}

earrangement::earrangement(int k_, modular_param mp_, std::vector<qpair> w_,
                           std::vector<ehyperplane> hps_)
    : k(k_), mp(mp_), w(std::move(w_)), hps(std::move(hps_)) {
    if (k < 1) throw dimension_mismatch("earrangement: k must be >= 1");
    if ((int)w.size() != k)
        throw dimension_mismatch("earrangement: weight vector has wrong length");
    for (const auto& h : hps)
        if ((int)h.c.size() != k)
            throw dimension_mismatch("earrangement: hyperplane column has wrong length");
    std::set<ehyperplane> seen;
    for (const auto& h : hps)
        if (!seen.insert(h).second)
            throw duplicate_hyperplane("earrangement: repeated hyperplane");
}

earrangement discriminantal(int n, int k, const std::vector<epoint>& z,
                            const modular_param& mp, std::vector<qpair> w) {
    if (n < 0 || k < 1) throw dimension_mismatch("discriminantal: need n >= 0, k >= 1");
    if ((int)z.size() != n)
        throw dimension_mismatch("discriminantal: expected n marked points");
    std::set<epoint> distinct(z.begin(), z.end());
    if ((int)distinct.size() != n)
        throw duplicate_hyperplane("discriminantal: marked points must be distinct");
    std::vector<ehyperplane> hps;
    for (int i = 0; i < k; ++i)
        for (int a = 0; a < n; ++a) {
            std::vector<long long> c(k, 0);
            c[i] = 1;
            hps.emplace_back(std::move(c), z[a]);
        }
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            std::vector<long long> c(k, 0);
            c[i] = 1;
            c[j] = -1;
            hps.emplace_back(std::move(c), epoint());
        }
    return earrangement(k, mp, std::move(w), std::move(hps));
}

namespace {

// Pairing of the point against hyperplane h, exact; the point lies on h iff
// the pairing is in Lambda.
qpair pairing(const ehyperplane& h, const std::vector<epoint>& pt) {
    qpair acc;
    for (size_t i = 0; i < h.c.size(); ++i) acc += h.c[i] * pt[i].v;
    return acc - h.z.v;
}

// Rank over Q of the chosen columns.
int column_rank(const earrangement& c, const std::vector<int>& subset) {
    ratmat m(c.k, (int)subset.size());
    for (int i = 0; i < c.k; ++i)
        for (size_t j = 0; j < subset.size(); ++j)
            m.at(i, (int)j) = rational(c.hps[subset[j]].c[i]);
    return rank_of(m);
}

void k_subsets(int m, int k, const std::function<void(const std::vector<int>&)>& f) {
    std::vector<int> idx(k);
    std::function<void(int, int)> rec = [&](int pos, int start) {
        if (pos == k) {
            f(idx);
            return;
        }
        for (int i = start; i <= m - (k - pos); ++i) {
            idx[pos] = i;
            rec(pos + 1, i + 1);
        }
    };
    if (k <= m && k >= 0) rec(0, 0);
}

} // namespace

std::vector<evertex> enumerate_vertices(const earrangement& c) {
    int m = (int)c.hps.size();
    if (m > 14) throw size_limit("enumerate_vertices: more than 14 hyperplanes");
    if (c.k > 4) throw size_limit("enumerate_vertices: k > 4");
    std::set<std::vector<epoint>> points;
    k_subsets(m, c.k, [&](const std::vector<int>& sub) {
        intmat a(c.k, c.k);
        std::vector<epoint> zv(c.k);
        for (int j = 0; j < c.k; ++j) {
            for (int i = 0; i < c.k; ++i) a.at(i, j) = c.hps[sub[j]].c[i];
            zv[j] = c.hps[sub[j]].z;
        }
        if (det(a) == 0) return;
        esolutions sol = solve_on_e(a, zv);
        for (auto& p : sol.points) points.insert(p);
    });
    std::vector<evertex> out;
    for (const auto& p : points) {
        evertex v;
        v.point = p;
        for (int h = 0; h < m; ++h)
            if (pairing(c.hps[h], p).in_lambda()) v.incident.push_back(h);
        out.push_back(std::move(v));
    }
    return out;
}

namespace {

// No-broken-circuit k-subsets of the incident columns, as positions into
// v.incident (which is sorted by arrangement order).
std::vector<std::vector<int>> nbc_position_subsets(const earrangement& c, const evertex& v) {
    int m = (int)v.incident.size();
    auto rank_of_positions = [&](const std::vector<int>& pos) {
        std::vector<int> global(pos.size());
        for (size_t i = 0; i < pos.size(); ++i) global[i] = v.incident[pos[i]];
        return column_rank(c, global);
    };
    // circuits have at most k+1 elements since the ambient rank is k
    std::vector<std::uint32_t> broken;
    for (int s = 2; s <= c.k + 1 && s <= m; ++s) {
        k_subsets(m, s, [&](const std::vector<int>& sub) {
            if (rank_of_positions(sub) == s) return; // independent
            for (int drop = 0; drop < s; ++drop) {
                std::vector<int> smaller;
                for (int i = 0; i < s; ++i)
                    if (i != drop) smaller.push_back(sub[i]);
                if (rank_of_positions(smaller) != s - 1) return; // not minimal
            }
            std::uint32_t mask = 0;
            for (int i = 1; i < s; ++i) mask |= (1u << sub[i]); // drop the minimum
            broken.push_back(mask);
        });
    }
    std::vector<std::vector<int>> out;
    k_subsets(m, c.k, [&](const std::vector<int>& sub) {
        std::uint32_t mask = 0;
        for (int i : sub) mask |= (1u << i);
        for (std::uint32_t b : broken)
            if ((mask & b) == b) return;
        if (rank_of_positions(sub) != c.k) return;
        out.push_back(sub);
    });
    return out;
}

} // namespace

int local_os_dim(const earrangement& c, const evertex& v) {
    return (int)nbc_position_subsets(c, v).size();
}

int local_os_dim_bruteforce(const earrangement& c, const evertex& v) {
    int m = (int)v.incident.size();
    auto rank_of_positions = [&](const std::vector<int>& pos) {
        std::vector<int> global(pos.size());
        for (size_t i = 0; i < pos.size(); ++i) global[i] = v.incident[pos[i]];
        return column_rank(c, global);
    };
    std::map<std::vector<int>, int> gen_index;
    k_subsets(m, c.k, [&](const std::vector<int>& sub) {
        if (rank_of_positions(sub) == c.k) {
            int id = (int)gen_index.size();
            gen_index.emplace(sub, id);
        }
    });
    std::vector<sparse_row> rel;
    if (m >= c.k + 1) {
        k_subsets(m, c.k + 1, [&](const std::vector<int>& sub) {
            sparse_row row;
            for (int drop = 0; drop <= c.k; ++drop) {
                std::vector<int> s;
                for (int i = 0; i <= c.k; ++i)
                    if (i != drop) s.push_back(sub[i]);
                auto it = gen_index.find(s);
                if (it == gen_index.end()) continue; // dependent term, zero
                row.emplace_back(it->second, (drop % 2 == 0) ? 1 : -1);
            }
            if (!row.empty()) {
                std::sort(row.begin(), row.end());
                rel.push_back(std::move(row));
            }
        });
    }
    return (int)gen_index.size() - sparse_rank(rel);
}

bool is_convenient(const earrangement& c, std::vector<int>* witness) {
    bool all_lambda = true;
    for (const auto& wi : c.w)
        if (!wi.in_lambda()) all_lambda = false;
    if (all_lambda) {
        if (witness) witness->clear();
        return false;
    }
    int m = (int)c.hps.size();
    bool ok = true;
    std::vector<int> bad;
    for (int l = 1; l <= c.k - 1 && ok; ++l) {
        k_subsets(m, l, [&](const std::vector<int>& sub) {
            if (!ok) return;
            if (column_rank(c, sub) != l) return; // only transversal subsets
            intmat block(c.k, l);
            for (int i = 0; i < c.k; ++i)
                for (int j = 0; j < l; ++j) block.at(i, j) = c.hps[sub[j]].c[i];
            intmat kb = kernel_basis(block);
            for (int r = 0; r < kb.rows; ++r) {
                qpair acc;
                for (int i = 0; i < c.k; ++i) acc += kb.at(r, i) * c.w[i];
                if (!acc.in_lambda()) return; // this subset is fine
            }
            ok = false;
            bad = sub;
        });
    }
    if (!ok && witness) *witness = bad;
    return ok;
}

betti_report betti(const earrangement& c) {
    std::vector<int> wit;
    if (!is_convenient(c, &wit)) {
        std::string msg = "betti: weights not convenient, witness subset {";
        for (size_t i = 0; i < wit.size(); ++i)
            msg += (i ? "," : "") + std::to_string(wit[i]);
        msg += "}";
        throw not_convenient(msg, wit);
    }
    betti_report rep;
    rep.vertices = enumerate_vertices(c);
    for (const auto& v : rep.vertices) {
        int d = local_os_dim(c, v);
        rep.os_dims.push_back(d);
        rep.total += d;
    }
    return rep;
}

bool admissible_at_vertex(const earrangement& c, const std::vector<int>& subset) {
    try {
        enumerate_v_solutions(vertex_system(c, subset));
    } catch (const not_admissible&) {
        return false;
    }
    return true;
}

earrangement deleted(const earrangement& c, int j0) {
    if (j0 < 0 || j0 >= (int)c.hps.size())
        throw dimension_mismatch("deleted: hyperplane index out of range");
    std::vector<ehyperplane> hps = c.hps;
    hps.erase(hps.begin() + j0);
    return earrangement(c.k, c.mp, c.w, std::move(hps));
}

arr_restriction restrict_arrangement(const earrangement& c, int j0) {
    if (j0 < 0 || j0 >= (int)c.hps.size())
        throw dimension_mismatch("restrict_arrangement: index out of range");
    if (c.k < 2)
        throw dimension_mismatch("restrict_arrangement: ambient dimension must be >= 2");
    intmat wb = unimodular_complete(c.hps[j0].c);
    intmat wi = unimodular_inverse(wb);
    // chart t = W^{-T} s, s_1 = <c_j0, t>; hyperplane i pairs with s through
    // W^{-1} c_i, so its induced column is the tail of that vector
    std::vector<qpair> wprime(c.k - 1);
    for (int r = 1; r < c.k; ++r) {
        qpair acc;
        for (int i = 0; i < c.k; ++i) acc += wi.at(r, i) * c.w[i];
        wprime[r - 1] = acc;
    }
    std::map<ehyperplane, int> index;
    std::vector<ehyperplane> hps;
    std::vector<std::vector<int>> preimage;
    for (int i = 0; i < (int)c.hps.size(); ++i) {
        if (i == j0) continue;
        std::vector<long long> full(c.k, 0);
        for (int r = 0; r < c.k; ++r) {
            long long acc = 0;
            for (int t = 0; t < c.k; ++t)
                acc = fma_checked(acc, wi.at(r, t), c.hps[i].c[t], "restrict_arrangement");
            full[r] = acc;
        }
        std::vector<long long> d(full.begin() + 1, full.end());
        long long g = content(d);
        if (g == 0) continue; // parallel to the hyperplane, empty trace
        std::vector<long long> p(d);
        for (long long& x : p) x /= g;
        qpair zprime = c.hps[i].z.v - full[0] * c.hps[j0].z.v;
        intmat gmat(1, 1);
        gmat.at(0, 0) = g;
        esolutions sol = solve_on_e(gmat, {epoint(zprime)});
        for (const auto& y : sol.points) {
            ehyperplane h(p, y[0]);
            auto it = index.find(h);
            if (it == index.end()) {
                it = index.emplace(h, (int)hps.size()).first;
                hps.push_back(h);
                preimage.emplace_back();
            }
            auto& pre = preimage[it->second];
            if (pre.empty() || pre.back() != i) pre.push_back(i);
        }
    }
    arr_restriction out{earrangement(c.k - 1, c.mp, std::move(wprime), std::move(hps)),
                        wb, std::move(preimage)};
    return out;
}

long long deletion_restriction_defect(const earrangement& c, int j0) {
    long long b = betti(c).total;
    long long bd = betti(deleted(c, j0)).total;
    long long br;
    if (c.k == 1) {
        br = 1; // the restriction is a single point; degree-0 Betti number
    } else {
        br = betti(restrict_arrangement(c, j0).arr).total;
    }
    return b - bd - br;
}

earrangement change_coordinates(const earrangement& c, const intmat& wmat) {
    if (wmat.rows != c.k || wmat.cols != c.k)
        throw dimension_mismatch("change_coordinates: matrix shape mismatch");
    long long dw = det(wmat);
    if (dw != 1 && dw != -1)
        throw not_unimodular("change_coordinates: |det| != 1");
    std::vector<ehyperplane> hps;
    for (const auto& h : c.hps) {
        std::vector<long long> nc(c.k, 0);
        for (int i = 0; i < c.k; ++i) {
            long long acc = 0;
            for (int j = 0; j < c.k; ++j)
                acc = fma_checked(acc, wmat.at(j, i), h.c[j], "change_coordinates");
            nc[i] = acc;
        }
        hps.emplace_back(std::move(nc), h.z);
    }
    std::vector<qpair> w(c.k);
    for (int i = 0; i < c.k; ++i) {
        qpair acc;
        for (int j = 0; j < c.k; ++j) acc += wmat.at(j, i) * c.w[j];
        w[i] = acc;
    }
    return earrangement(c.k, c.mp, std::move(w), std::move(hps));
}

namespace {

struct aff_flat {
    ratmat sys; // canonical RREF of the augmented system, rank rows
    int codim = 0;
};

// Solution sets satisfy sub <= sup iff sup's equations are implied by
// sub's, i.e. stacking them adds no rank over sub alone.
bool flat_inside(const aff_flat& sub, const aff_flat& sup) {
    ratmat stacked(sub.sys.rows + sup.sys.rows, sub.sys.cols);
    for (int i = 0; i < sub.sys.rows; ++i)
        for (int j = 0; j < sub.sys.cols; ++j) stacked.at(i, j) = sub.sys.at(i, j);
    for (int i = 0; i < sup.sys.rows; ++i)
        for (int j = 0; j < sup.sys.cols; ++j)
            stacked.at(sub.sys.rows + i, j) = sup.sys.at(i, j);
    return rank_of(stacked) == sub.codim;
}

long long moebius_betti_for(int n, int k, const std::vector<rational>& zs) {
    std::vector<std::vector<rational>> hyper;
    for (int i = 0; i < k; ++i)
        for (int a = 0; a < n; ++a) {
            std::vector<rational> row(k + 1);
            row[i] = rational(1);
            row[k] = zs[a];
            hyper.push_back(std::move(row));
        }
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            std::vector<rational> row(k + 1);
            row[i] = rational(1);
            row[j] = rational(-1);
            hyper.push_back(std::move(row));
        }
    int m = (int)hyper.size();
    if (m > 20) throw size_limit("affine_moebius_betti: more than 20 hyperplanes");

    std::set<ratmat> seen;
    std::vector<aff_flat> flats;
    for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
        ratmat aug(__builtin_popcount(mask), k + 1);
        int r = 0;
        for (int i = 0; i < m; ++i) {
            if (!(mask >> i & 1u)) continue;
            for (int j = 0; j <= k; ++j) aug.at(r, j) = hyper[i][j];
            ++r;
        }
        int rank = rref(aug);
        bool inconsistent = false;
        ratmat canon(rank, k + 1);
        for (int i = 0; i < rank; ++i) {
            bool coeffs_zero = true;
            for (int j = 0; j < k; ++j) {
                canon.at(i, j) = aug.at(i, j);
                if (!aug.at(i, j).is_zero()) coeffs_zero = false;
            }
            canon.at(i, k) = aug.at(i, k);
            if (coeffs_zero && !aug.at(i, k).is_zero()) inconsistent = true;
        }
        if (inconsistent) continue;
        if (seen.insert(canon).second)
            flats.push_back(aff_flat{std::move(canon), rank});
    }

    std::sort(flats.begin(), flats.end(),
              [](const aff_flat& a, const aff_flat& b) {
                  if (a.codim != b.codim) return a.codim < b.codim;
                  return a.sys < b.sys;
              });
    // moebius values from the ambient space down the poset
    std::vector<long long> mu(flats.size());
    for (size_t x = 0; x < flats.size(); ++x) {
        long long acc = 1; // contribution of the ambient flat
        for (size_t y = 0; y < x; ++y)
            if (flats[y].codim < flats[x].codim && flat_inside(flats[x], flats[y]))
                acc += mu[y];
        mu[x] = -acc;
    }
    long long total = 0;
    for (size_t x = 0; x < flats.size(); ++x)
        if (flats[x].codim == k) total += (mu[x] < 0) ? -mu[x] : mu[x];
    return total;
}

} // namespace

long long affine_moebius_betti(int n, int k) {
    if (n < 0 || k < 1) throw dimension_mismatch("affine_moebius_betti: bad shape");
    std::vector<rational> z1, z2;
    for (int a = 0; a < n; ++a) {
        z1.emplace_back(a + 1, n + 1);
        z2.emplace_back(2 * a + 1, 2 * n + 3);
    }
    long long b1 = moebius_betti_for(n, k, z1);
    long long b2 = moebius_betti_for(n, k, z2);
    if (b1 != b2)
        throw error("affine_moebius_betti: generic position check failed");
    return b1;
}

tsystem vertex_system(const earrangement& c, const std::vector<int>& subset) {
    if ((int)subset.size() != c.k)
        throw dimension_mismatch("vertex_system: subset size must equal k");
    intmat a(c.k, c.k);
    std::vector<qpair> z(c.k);
    for (int j = 0; j < c.k; ++j) {
        for (int i = 0; i < c.k; ++i) a.at(i, j) = c.hps[subset[j]].c[i];
        z[j] = c.hps[subset[j]].z.v;
    }
    return tsystem(std::move(a), std::move(z), c.w, c.mp);
}

std::vector<vertex_form_set> vertex_forms(const earrangement& c, const evertex& v) {
    std::vector<vertex_form_set> out;
    for (const auto& pos : nbc_position_subsets(c, v)) {
        vertex_form_set vfs;
        for (int p : pos) vfs.subset.push_back(v.incident[p]);
        tsystem sys = vertex_system(c, vfs.subset);
        std::vector<ulift> us = enumerate_u_lifts(sys);
        for (size_t i = 0; i < us.size(); ++i) {
            bool same = true;
            for (int j = 0; j < c.k; ++j)
                if (us[i].u[j] != v.point[j].v) { same = false; break; }
            if (same) vfs.which = (int)i;
        }
        vfs.family = normalized_forms(sys, us);
        out.push_back(std::move(vfs));
    }
    return out;
}

} // namespace ella
