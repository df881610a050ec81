#ifndef ELLA_EXACT_RANK_HPP
#define ELLA_EXACT_RANK_HPP

#include <utility>
#include <vector>

#include "ella/rational.hpp"

namespace ella {

// Sparse row: sorted (column, value) pairs, value != 0.
using sparse_row = std::vector<std::pair<int, long long>>;

// Rank over Q of a sparse integer matrix.  Fraction-free elimination with
// big-integer intermediates and per-row content normalization, so the result
// is exact regardless of growth.  Intended for relation matrices whose rows
// have a handful of +-1 entries.
int sparse_rank(const std::vector<sparse_row>& rows);

// Dense exact matrix over Q with reduced row echelon form; small systems
// only (flat computations, pattern ranks).
struct ratmat {
    int rows = 0, cols = 0;
    std::vector<rational> data;

    ratmat() = default;
    ratmat(int r, int c) : rows(r), cols(c), data(size_t(r) * c) {}

    rational& at(int i, int j) { return data[size_t(i) * cols + j]; }
    const rational& at(int i, int j) const { return data[size_t(i) * cols + j]; }

    friend bool operator==(const ratmat& a, const ratmat& b) {
        return a.rows == b.rows && a.cols == b.cols && a.data == b.data;
    }
    friend bool operator<(const ratmat& a, const ratmat& b); // lexicographic, for map keys
};

// In-place RREF; returns rank.  Column order is left to right.
int rref(ratmat& m);

int rank_of(const ratmat& m);

} // namespace ella

#endif
