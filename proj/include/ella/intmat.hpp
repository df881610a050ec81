#ifndef ELLA_INTMAT_HPP
#define ELLA_INTMAT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ella/errors.hpp"

namespace ella {

// Dense integer matrix, row-major, int64 entries with checked arithmetic.
// Everything here is desk scale; overflow throws instead of wrapping.
struct intmat {
    int rows = 0, cols = 0;
    std::vector<long long> data;

    intmat() = default;
    intmat(int r, int c) : rows(r), cols(c), data(size_t(r) * c, 0) {}
    intmat(int r, int c, std::vector<long long> d) : rows(r), cols(c), data(std::move(d)) {
        if (data.size() != size_t(r) * c)
            throw dimension_mismatch("intmat: data size does not match shape");
    }

    long long& at(int i, int j) { return data[size_t(i) * cols + j]; }
    long long at(int i, int j) const { return data[size_t(i) * cols + j]; }

    static intmat identity(int n) {
        intmat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    intmat transpose() const {
        intmat t(cols, rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    std::vector<long long> row(int i) const {
        return std::vector<long long>(data.begin() + size_t(i) * cols,
                                      data.begin() + size_t(i + 1) * cols);
    }
    std::vector<long long> col(int j) const {
        std::vector<long long> c(rows);
        for (int i = 0; i < rows; ++i) c[i] = at(i, j);
        return c;
    }

    friend bool operator==(const intmat& a, const intmat& b) {
        return a.rows == b.rows && a.cols == b.cols && a.data == b.data;
    }

    std::string str() const;
};

intmat operator*(const intmat& a, const intmat& b);

// Determinant of a square matrix (fraction-free Bareiss).
long long det(const intmat& a);

// Smith normal form: u * a * v = d with u, v unimodular and d diagonal,
// nonnegative, each diagonal entry dividing the next.  Pivoting always picks
// the smallest nonzero entry, which keeps growth tame at desk scale.
struct snf_result {
    intmat u, d, v;
};
snf_result snf(const intmat& a);

// Z-basis of the left kernel {l : l^T a = 0}; returned as the rows of a
// (rows(a) - rank) x rows(a) matrix.
intmat kernel_basis(const intmat& a);

// Exact inverse of a matrix with det = +-1.
intmat unimodular_inverse(const intmat& w);

// Unimodular W whose first column is the given primitive vector.
intmat unimodular_complete(const std::vector<long long>& c);

// gcd of a vector, nonnegative; 0 for the zero vector.
long long content(const std::vector<long long>& v);

// a + b*c with the product taken in 128 bits; overflow throws.
long long fma_checked(long long a, long long b, long long c, const char* where);

} // namespace ella

#endif
