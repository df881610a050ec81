#include "ella/lattice_solve.hpp"

#include <algorithm>

namespace ella {

esolutions solve_on_e(const intmat& a, const std::vector<epoint>& z) {
    int k = a.rows, l = a.cols;
    if (int(z.size()) != l)
        throw dimension_mismatch("solve_on_e: offset count does not match columns");
    if (l > k)
        throw dimension_mismatch("solve_on_e: more equations than variables");

    snf_result s = snf(a); // s.u * a * s.v = s.d
    std::vector<long long> d(l);
    for (int j = 0; j < l; ++j) {
        d[j] = s.d.at(j, j);
        if (d[j] == 0)
            throw not_transversal("solve_on_e: coefficient block is rank-deficient");
    }

    // In the unimodular coordinates s = t * u^{-1} the system splits into
    // d_j * s_j = (z * v)_j, each with d_j^2 solutions on E.
    std::vector<epoint> c(l);
    for (int j = 0; j < l; ++j) {
        qpair acc;
        for (int b = 0; b < l; ++b) acc += s.v.at(b, j) * z[b].v;
        c[j] = epoint(acc);
    }

    std::vector<std::vector<qpair>> per_coord(l);
    for (int j = 0; j < l; ++j) {
        rational dj(d[j]);
        for (long long m = 0; m < d[j]; ++m)
            for (long long p = 0; p < d[j]; ++p)
                per_coord[j].push_back(qpair((c[j].v.r + rational(m)) / dj,
                                             (c[j].v.s + rational(p)) / dj));
    }

    esolutions out;
    std::vector<int> idx(l, 0);
    for (;;) {
        std::vector<epoint> t(k);
        for (int i = 0; i < k; ++i) {
            qpair acc;
            // t = s * u with the free coordinates held at 0.
            for (int j = 0; j < l; ++j) acc += s.u.at(j, i) * per_coord[j][idx[j]];
            t[i] = epoint(acc);
        }
        out.points.push_back(std::move(t));

        int pos = l - 1;
        while (pos >= 0 && ++idx[pos] == int(per_coord[pos].size())) idx[pos--] = 0;
        if (pos < 0) break;
    }

    std::sort(out.points.begin(), out.points.end());
    out.points.erase(std::unique(out.points.begin(), out.points.end()), out.points.end());

    out.directions = intmat(k - l, k);
    for (int i = l; i < k; ++i)
        for (int j = 0; j < k; ++j) out.directions.at(i - l, j) = s.u.at(i, j);
    return out;
}

} // namespace ella
