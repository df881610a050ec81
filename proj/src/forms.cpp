#include "ella/forms.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ella/errors.hpp"

namespace ella {

namespace {

constexpr double kDegenerateM = 1e-10;
constexpr double kProbeEps = 1e-3;

// Dense complex LU with partial pivoting; factors in place.
struct lu {
    int n;
    std::vector<cplx> m;
    std::vector<int> piv;
    cplx det;

    lu(std::vector<cplx> a, int n_) : n(n_), m(std::move(a)), piv(n_), det(1.0) {
        for (int p = 0; p < n; ++p) {
            int best = p;
            for (int i = p + 1; i < n; ++i)
                if (std::abs(m[size_t(i) * n + p]) > std::abs(m[size_t(best) * n + p])) best = i;
            piv[p] = best;
            if (best != p) {
                for (int j = 0; j < n; ++j)
                    std::swap(m[size_t(best) * n + j], m[size_t(p) * n + j]);
                det = -det;
            }
            cplx d = m[size_t(p) * n + p];
            det *= d;
            if (std::abs(d) == 0.0) return; // singular; det == 0 tells the caller
            for (int i = p + 1; i < n; ++i) {
                cplx f = m[size_t(i) * n + p] / d;
                m[size_t(i) * n + p] = f;
                for (int j = p + 1; j < n; ++j)
                    m[size_t(i) * n + j] -= f * m[size_t(p) * n + j];
            }
        }
    }

    std::vector<cplx> solve(std::vector<cplx> b) const {
        for (int p = 0; p < n; ++p)
            if (piv[p] != p) std::swap(b[p], b[piv[p]]);
        for (int i = 1; i < n; ++i)
            for (int j = 0; j < i; ++j) b[i] -= m[size_t(i) * n + j] * b[j];
        for (int i = n - 1; i >= 0; --i) {
            for (int j = i + 1; j < n; ++j) b[i] -= m[size_t(i) * n + j] * b[j];
            b[i] /= m[size_t(i) * n + i];
        }
        return b;
    }
};

std::vector<long long> lambda_shifts(const qpair& r, const char* where) {
    if (!r.in_lambda())
        throw error(std::string(where) + ": offset is not a lattice point");
    return {r.s.num(), r.r.num()}; // (tau part, real part)
}

} // namespace

void tsystem::validate() const {
    if (a.rows != a.cols) throw dimension_mismatch("tsystem: coefficient block must be square");
    if (a.rows < 1) throw dimension_mismatch("tsystem: k must be >= 1");
    if (int(z.size()) != a.rows || int(w.size()) != a.rows)
        throw dimension_mismatch("tsystem: offsets and weights must have length k");
    if (det(a) == 0) throw not_transversal("tsystem: coefficient block is singular");
}

std::vector<ulift> enumerate_u_lifts(const tsystem& s) {
    std::vector<epoint> zt(s.k());
    for (int j = 0; j < s.k(); ++j) zt[j] = epoint(s.z[j]);
    esolutions sol = solve_on_e(s.a, zt);
    std::vector<ulift> out;
    out.reserve(sol.points.size());
    for (const auto& pt : sol.points) {
        std::vector<qpair> u(s.k());
        for (int i = 0; i < s.k(); ++i) u[i] = pt[i].v;
        out.push_back(make_ulift(s, u));
    }
    return out;
}

ulift make_ulift(const tsystem& s, const std::vector<qpair>& u) {
    if (int(u.size()) != s.k())
        throw dimension_mismatch("make_ulift: wrong length");
    ulift lift;
    lift.u = u;
    lift.A.resize(s.k());
    lift.B.resize(s.k());
    for (int j = 0; j < s.k(); ++j) {
        qpair r;
        for (int i = 0; i < s.k(); ++i) r += s.a.at(i, j) * u[i];
        r -= s.z[j];
        auto ab = lambda_shifts(r, "make_ulift");
        lift.A[j] = ab[0];
        lift.B[j] = ab[1];
    }
    return lift;
}

std::vector<vsolution> enumerate_v_solutions(const tsystem& s) {
    std::vector<epoint> wt(s.k());
    for (int i = 0; i < s.k(); ++i) wt[i] = epoint(s.w[i]);
    esolutions sol = solve_on_e(s.a.transpose(), wt);
    std::vector<vsolution> out;
    out.reserve(sol.points.size());
    for (const auto& pt : sol.points) {
        vsolution vs;
        vs.v.resize(s.k());
        for (int j = 0; j < s.k(); ++j) {
            if (pt[j].is_zero())
                throw not_admissible(
                    "enumerate_v_solutions: dual solution has a lattice coordinate");
            vs.v[j] = pt[j].v;
        }
        vs.C.resize(s.k());
        vs.D.resize(s.k());
        for (int i = 0; i < s.k(); ++i) {
            qpair r;
            for (int j = 0; j < s.k(); ++j) r += s.a.at(i, j) * vs.v[j];
            r -= s.w[i];
            auto cd = lambda_shifts(r, "enumerate_v_solutions");
            vs.C[i] = cd[0];
            vs.D[i] = cd[1];
        }
        out.push_back(std::move(vs));
    }
    return out;
}

cplx omega_v_eval(const tsystem& s, const vsolution& vs, const std::vector<cplx>& t) {
    if (int(t.size()) != s.k())
        throw dimension_mismatch("omega_v_eval: point has wrong length");
    const double pi = modular_param::pi();
    cplx phase_arg(0.0);
    for (int i = 0; i < s.k(); ++i) phase_arg += double(vs.C[i]) * t[i];
    cplx val = cplx(double(det(s.a)), 0.0) * std::exp(cplx(0.0, -2.0 * pi) * phase_arg);
    try {
        for (int j = 0; j < s.k(); ++j) {
            cplx arg(0.0);
            for (int i = 0; i < s.k(); ++i) arg += t[i] * double(s.a.at(i, j));
            arg -= s.mp.embed(s.z[j]);
            val *= sigma(s.mp.embed(vs.v[j]), arg, s.mp);
        }
    } catch (const near_singular&) {
        throw on_hyperplane("omega_v_eval: point lies on a lifted hyperplane");
    }
    return val;
}

qpair transition_exponent(const ulift& u, const vsolution& v) {
    if (u.u.size() != v.v.size())
        throw dimension_mismatch("transition_exponent: size mismatch");
    qpair e;
    for (size_t i = 0; i < u.u.size(); ++i)
        e += u.A[i] * v.v[i] - v.C[i] * u.u[i];
    return e;
}

cplx transition_entry(const tsystem& s, const ulift& u, const vsolution& v) {
    return std::exp(cplx(0.0, 2.0 * modular_param::pi()) * s.mp.embed(transition_exponent(u, v)));
}

cplx form_eval(const form_descriptor& fd, const std::vector<cplx>& t) {
    cplx acc(0.0);
    for (size_t i = 0; i < fd.basis.size(); ++i)
        acc += fd.coeffs[i] * omega_v_eval(fd.sys, fd.basis[i], t);
    return acc;
}

normalized_family normalized_forms(const tsystem& s) {
    return normalized_forms(s, enumerate_u_lifts(s));
}

normalized_family normalized_forms(const tsystem& s, const std::vector<ulift>& us) {
    std::vector<vsolution> vs = enumerate_v_solutions(s);
    int n = int(us.size());
    if (int(vs.size()) != n)
        throw dimension_mismatch("normalized_forms: need one u-lift per dual solution");

    std::vector<cplx> m(size_t(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[size_t(i) * n + j] = transition_entry(s, us[i], vs[j]);

    double hadamard = 1.0;
    for (int i = 0; i < n; ++i) {
        double r = 0.0;
        for (int j = 0; j < n; ++j) r += std::norm(m[size_t(i) * n + j]);
        hadamard *= std::sqrt(r);
    }
    lu fac(m, n);
    double det_scaled = std::abs(fac.det) / (hadamard > 0 ? hadamard : 1.0);
    if (det_scaled < kDegenerateM)
        throw degenerate_m("normalized_forms: transition matrix numerically singular");

    // Columns of M^{-1} are the coefficient vectors; assemble the inverse to
    // also report a 1-norm condition estimate.
    std::vector<std::vector<cplx>> inv_cols(n);
    for (int u = 0; u < n; ++u) {
        std::vector<cplx> e(n, cplx(0.0));
        e[u] = 1.0;
        inv_cols[u] = fac.solve(std::move(e));
    }
    double norm_m = 0.0, norm_minv = 0.0;
    for (int j = 0; j < n; ++j) {
        double cm = 0.0, ci = 0.0;
        for (int i = 0; i < n; ++i) {
            cm += std::abs(m[size_t(i) * n + j]);
            ci += std::abs(inv_cols[j][i]);
        }
        norm_m = std::max(norm_m, cm);
        norm_minv = std::max(norm_minv, ci);
    }

    normalized_family fam;
    fam.det_scaled = det_scaled;
    fam.cond = norm_m * norm_minv;
    fam.forms.reserve(n);
    for (int u = 0; u < n; ++u)
        fam.forms.push_back(form_descriptor{s, us[u], vs, inv_cols[u]});
    return fam;
}

cplx point_residue(const std::function<cplx(const std::vector<cplx>&)>& g,
                   const tsystem& s, const ulift& u, std::uint64_t seed) {
    int k = s.k();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);

    std::vector<double> col_norm(k, 0.0);
    for (int j = 0; j < k; ++j) {
        double c = 0.0;
        for (int i = 0; i < k; ++i) c += double(s.a.at(i, j)) * double(s.a.at(i, j));
        col_norm[j] = std::sqrt(c);
    }

    std::vector<double> d(k);
    std::vector<double> ld(k); // l_j(d)
    bool found = false;
    for (int attempt = 0; attempt < 100 && !found; ++attempt) {
        double nrm = 0.0;
        for (int i = 0; i < k; ++i) { d[i] = uni(rng); nrm += d[i] * d[i]; }
        nrm = std::sqrt(nrm);
        if (nrm < 1e-8) continue;
        for (int i = 0; i < k; ++i) d[i] /= nrm;
        found = true;
        for (int j = 0; j < k; ++j) {
            double v = 0.0;
            for (int i = 0; i < k; ++i) v += d[i] * double(s.a.at(i, j));
            ld[j] = v;
            if (std::abs(v) < 1e-3 * col_norm[j]) { found = false; break; }
        }
    }
    if (!found)
        throw bad_direction("point_residue: no direction clear of the hyperplane kernels");

    std::vector<cplx> uc(k);
    for (int i = 0; i < k; ++i) uc[i] = s.mp.embed(u.u[i]);

    auto f = [&](double eps) {
        std::vector<cplx> t(k);
        for (int i = 0; i < k; ++i) t[i] = uc[i] + eps * d[i];
        cplx val = g(t);
        for (int j = 0; j < k; ++j) val *= eps * ld[j];
        return val / double(det(s.a));
    };
    // second-order Richardson: kills the eps and eps^2 terms of the
    // Laurent tail, leaving O(eps^3)
    return (f(kProbeEps) - 6.0 * f(kProbeEps / 2.0) + 8.0 * f(kProbeEps / 4.0)) / 3.0;
}

cplx point_residue(const form_descriptor& fd, const ulift& u, std::uint64_t seed) {
    return point_residue([&](const std::vector<cplx>& t) { return form_eval(fd, t); },
                         fd.sys, u, seed);
}

restriction_data restrict_system(const tsystem& s, const ulift& u, int j) {
    int k = s.k();
    if (j < 0 || j >= k) throw dimension_mismatch("restrict_system: bad hyperplane index");

    restriction_data rd(s.mp);
    rd.j = j;
    rd.base = u;
    rd.s1 = s.z[j] + qpair(rational(u.B[j]), rational(u.A[j]));
    if (k == 1) return rd; // the hyperplane is the point u; no chart

    std::vector<long long> c = s.a.col(j);
    if (content(c) != 1)
        throw not_primitive("restrict_system: hyperplane column is not primitive");
    rd.w_basis = unimodular_complete(c);
    rd.w_inv = unimodular_inverse(rd.w_basis);
    rd.jac = det(rd.w_basis);

    intmat b = rd.w_inv * s.a; // column j becomes e_1

    intmat ar(k - 1, k - 1);
    std::vector<qpair> zr, wr;
    zr.reserve(k - 1);
    for (int i = 0, col = 0; i < k; ++i) {
        if (i == j) continue;
        for (int q = 1; q < k; ++q) ar.at(q - 1, col) = b.at(q, i);
        zr.push_back(s.z[i] - b.at(0, i) * rd.s1);
        ++col;
    }
    for (int q = 1; q < k; ++q) {
        qpair acc;
        for (int i = 0; i < k; ++i) acc += rd.w_inv.at(q, i) * s.w[i];
        wr.push_back(acc);
    }

    rd.restricted.emplace(std::move(ar), std::move(zr), std::move(wr), s.mp);

    std::vector<qpair> up;
    up.reserve(k - 1);
    for (int q = 1; q < k; ++q) {
        qpair acc;
        for (int i = 0; i < k; ++i) acc += rd.w_basis.at(i, q) * u.u[i];
        up.push_back(acc);
    }
    rd.induced_lift = make_ulift(*rd.restricted, up);
    return rd;
}

std::vector<cplx> restriction_chart_point(const restriction_data& rd, cplx eps,
                                          const std::vector<cplx>& s_prime) {
    int k = rd.w_basis.rows;
    if (k == 0) { // k == 1 system: the chart is the ambient coordinate itself
        if (!s_prime.empty())
            throw dimension_mismatch("restriction_chart_point: point chart takes no coordinates");
        return {rd.mp.embed(rd.base.u[0]) + eps};
    }
    if (int(s_prime.size()) != k - 1)
        throw dimension_mismatch("restriction_chart_point: wrong chart dimension");
    // t = W^{-T} s  with  s = (s1 + eps, s_prime).
    std::vector<cplx> sfull(k);
    sfull[0] = rd.mp.embed(rd.s1) + eps;
    for (int q = 1; q < k; ++q) sfull[q] = s_prime[q - 1];
    std::vector<cplx> t(k, cplx(0.0));
    for (int i = 0; i < k; ++i)
        for (int q = 0; q < k; ++q) t[i] += double(rd.w_inv.at(q, i)) * sfull[q];
    return t;
}

cplx hyperplane_residue_eval(const std::function<cplx(const std::vector<cplx>&)>& g,
                             const restriction_data& rd, const std::vector<cplx>& s_prime) {
    auto f = [&](double eps) {
        cplx val = g(restriction_chart_point(rd, cplx(eps, 0.0), s_prime));
        return val * eps / double(rd.jac);
    };
    return (f(kProbeEps) - 6.0 * f(kProbeEps / 2.0) + 8.0 * f(kProbeEps / 4.0)) / 3.0;
}

cplx hyperplane_residue_eval(const form_descriptor& fd, const restriction_data& rd,
                             const std::vector<cplx>& s_prime) {
    return hyperplane_residue_eval(
        [&](const std::vector<cplx>& t) { return form_eval(fd, t); }, rd, s_prime);
}

} // namespace ella
