#include "ella/intmat.hpp"

#include <cstdlib>
#include <numeric>
#include <sstream>

namespace ella {

namespace {

long long narrow(__int128 v, const char* where) {
    if (v > INT64_MAX || v < INT64_MIN)
        throw overflow_error(std::string(where) + ": 64-bit overflow");
    return static_cast<long long>(v);
}

} // namespace

long long fma_checked(long long a, long long b, long long c, const char* where) {
    return narrow(static_cast<__int128>(a) + static_cast<__int128>(b) * c, where);
}

std::string intmat::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows; ++i) {
        os << (i ? ", [" : "[");
        for (int j = 0; j < cols; ++j) os << (j ? "," : "") << at(i, j);
        os << "]";
    }
    os << "]";
    return os.str();
}

intmat operator*(const intmat& a, const intmat& b) {
    if (a.cols != b.rows) throw dimension_mismatch("intmat *: inner sizes differ");
    intmat c(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k) {
            long long aik = a.at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < b.cols; ++j)
                c.at(i, j) = fma_checked(c.at(i, j), aik, b.at(k, j), "intmat *");
        }
    return c;
}

long long det(const intmat& a) {
    if (a.rows != a.cols) throw dimension_mismatch("det: matrix not square");
    int n = a.rows;
    if (n == 0) return 1;
    std::vector<__int128> m(a.data.begin(), a.data.end());
    auto at = [&](int i, int j) -> __int128& { return m[size_t(i) * n + j]; };
    __int128 prev = 1;
    int sign = 1;
    for (int p = 0; p < n - 1; ++p) {
        if (at(p, p) == 0) {
            int r = -1;
            for (int i = p + 1; i < n; ++i)
                if (at(i, p) != 0) { r = i; break; }
            if (r < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(at(p, j), at(r, j));
            sign = -sign;
        }
        for (int i = p + 1; i < n; ++i) {
            for (int j = p + 1; j < n; ++j)
                at(i, j) = (at(i, j) * at(p, p) - at(i, p) * at(p, j)) / prev;
            at(i, p) = 0;
        }
        prev = at(p, p);
    }
    return narrow(sign * at(n - 1, n - 1), "det");
}

snf_result snf(const intmat& a) {
    intmat d = a;
    intmat u = intmat::identity(a.rows);
    intmat v = intmat::identity(a.cols);

    auto row_sub = [&](intmat& m, int dst, int src, long long q) {
        for (int j = 0; j < m.cols; ++j)
            m.at(dst, j) = fma_checked(m.at(dst, j), -q, m.at(src, j), "snf row op");
    };
    auto col_sub = [&](intmat& m, int dst, int src, long long q) {
        for (int i = 0; i < m.rows; ++i)
            m.at(i, dst) = fma_checked(m.at(i, dst), -q, m.at(i, src), "snf col op");
    };
    auto row_swap = [&](intmat& m, int i1, int i2) {
        for (int j = 0; j < m.cols; ++j) std::swap(m.at(i1, j), m.at(i2, j));
    };
    auto col_swap = [&](intmat& m, int j1, int j2) {
        for (int i = 0; i < m.rows; ++i) std::swap(m.at(i, j1), m.at(i, j2));
    };

    int np = std::min(a.rows, a.cols);
    for (int p = 0; p < np; ++p) {
        for (;;) {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            int bi = -1, bj = -1;
            long long best = 0;
            for (int i = p; i < d.rows; ++i)
                for (int j = p; j < d.cols; ++j) {
                    long long x = std::llabs(d.at(i, j));
                    if (x != 0 && (bi < 0 || x < best)) { best = x; bi = i; bj = j; }
                }
            if (bi < 0) { p = np; break; } // trailing block all zero
            if (bi != p) { row_swap(d, p, bi); row_swap(u, p, bi); }
            if (bj != p) { col_swap(d, p, bj); col_swap(v, p, bj); }

            bool clean = true;
            for (int i = p + 1; i < d.rows; ++i) {
                if (d.at(i, p) == 0) continue;
                long long q = d.at(i, p) / d.at(p, p);
                if (q != 0) { row_sub(d, i, p, q); row_sub(u, i, p, q); }
                if (d.at(i, p) != 0) clean = false;
            }
            for (int j = p + 1; j < d.cols; ++j) {
                if (d.at(p, j) == 0) continue;
                long long q = d.at(p, j) / d.at(p, p);
                if (q != 0) { col_sub(d, j, p, q); col_sub(v, j, p, q); }
                if (d.at(p, j) != 0) clean = false;
            }
            if (!clean) continue;

            // Divisibility: fold a bad row in and keep reducing.
            long long piv = d.at(p, p);
            int badrow = -1;
            for (int i = p + 1; i < d.rows && badrow < 0; ++i)
                for (int j = p + 1; j < d.cols; ++j)
                    if (d.at(i, j) % piv != 0) { badrow = i; break; }
            if (badrow < 0) break;
            row_sub(d, p, badrow, -1); // add the offending row
            row_sub(u, p, badrow, -1);
        }
        if (p >= np) break;
    }

    for (int p = 0; p < np; ++p)
        if (d.at(p, p) < 0) {
            for (int j = 0; j < d.cols; ++j) d.at(p, j) = -d.at(p, j);
            for (int j = 0; j < u.cols; ++j) u.at(p, j) = -u.at(p, j);
        }
    return {u, d, v};
}

intmat kernel_basis(const intmat& a) {
    snf_result s = snf(a);
    int np = std::min(a.rows, a.cols);
    int rank = 0;
    for (int p = 0; p < np; ++p)
        if (s.d.at(p, p) != 0) ++rank;
    // l^T a = 0  iff  l is an integer combination of the last rows of u.
    intmat k(a.rows - rank, a.rows);
    for (int i = rank; i < a.rows; ++i)
        for (int j = 0; j < a.rows; ++j) k.at(i - rank, j) = s.u.at(i, j);
    return k;
}

intmat unimodular_inverse(const intmat& w) {
    if (w.rows != w.cols) throw dimension_mismatch("unimodular_inverse: not square");
    long long dw = det(w);
    if (dw != 1 && dw != -1)
        throw not_unimodular("unimodular_inverse: determinant is not +-1");
    int n = w.rows;
    // Adjugate via (n-1)-minors; n is small everywhere this is used.
    intmat inv(n, n);
    intmat minor(n - 1, n - 1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            for (int r = 0, mr = 0; r < n; ++r) {
                if (r == i) continue;
                for (int c = 0, mc = 0; c < n; ++c) {
                    if (c == j) continue;
                    minor.at(mr, mc++) = w.at(r, c);
                }
                ++mr;
            }
            long long cof = (n == 1) ? 1 : det(minor);
            if ((i + j) % 2) cof = -cof;
            inv.at(j, i) = cof * dw; // adjugate transposed, divided by det
        }
    return inv;
}

intmat unimodular_complete(const std::vector<long long>& c) {
    int k = int(c.size());
    if (k == 0) throw dimension_mismatch("unimodular_complete: empty vector");
    intmat col(k, 1);
    for (int i = 0; i < k; ++i) col.at(i, 0) = c[i];
    snf_result s = snf(col);
    if (s.d.at(0, 0) != 1)
        throw not_primitive("unimodular_complete: vector content is not 1");
    // s.u * c = +-e1; flip the first row if needed, then invert.
    intmat u = s.u;
    long long lead = 0;
    for (int j = 0; j < k; ++j) lead = fma_checked(lead, u.at(0, j), c[j], "unimodular_complete");
    if (lead == -1)
        for (int j = 0; j < k; ++j) u.at(0, j) = -u.at(0, j);
    return unimodular_inverse(u);
}

long long content(const std::vector<long long>& v) {
    long long g = 0;
    for (long long x : v) g = std::gcd(g, x);
    return g < 0 ? -g : g;
}

} // namespace ella
