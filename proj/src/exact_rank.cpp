#include "ella/exact_rank.hpp"

#include <algorithm>
#include <map>

#include <boost/multiprecision/cpp_int.hpp>

namespace ella {

namespace {

using bigint = boost::multiprecision::cpp_int;
using bigrow = std::vector<std::pair<int, bigint>>; // sorted by column

bigint big_gcd(bigint a, bigint b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) { bigint t = a % b; a = b; b = t; }
    return a;
}

void normalize_content(bigrow& r) {
    if (r.empty()) return;
    bigint g = 0;
    for (auto& [c, v] : r) { g = big_gcd(g, v); if (g == 1) break; }
    if (g > 1)
        for (auto& [c, v] : r) v /= g;
    if (r.front().second < 0)
        for (auto& [c, v] : r) v = -v;
}

// dst = dst*a - src*b, merged by column; zero entries dropped.
bigrow combine(const bigrow& dst, const bigint& a, const bigrow& src, const bigint& b) {
    bigrow out;
    out.reserve(dst.size() + src.size());
    size_t i = 0, j = 0;
    while (i < dst.size() || j < src.size()) {
        if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
            out.emplace_back(dst[i].first, dst[i].second * a);
            ++i;
        } else if (i == dst.size() || src[j].first < dst[i].first) {
            out.emplace_back(src[j].first, -src[j].second * b);
            ++j;
        } else {
            bigint v = dst[i].second * a - src[j].second * b;
            if (v != 0) out.emplace_back(dst[i].first, std::move(v));
            ++i; ++j;
        }
    }
    return out;
}

} // namespace

int sparse_rank(const std::vector<sparse_row>& rows) {
    // pivot column -> reduced pivot row
    std::map<int, bigrow> pivots;
    int rank = 0;
    for (const sparse_row& r0 : rows) {
        bigrow r;
        r.reserve(r0.size());
        for (auto& [c, v] : r0)
            if (v != 0) r.emplace_back(c, bigint(v));
        std::sort(r.begin(), r.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        // Reduce against existing pivots until the leading column is fresh.
        while (!r.empty()) {
            auto it = pivots.find(r.front().first);
            if (it == pivots.end()) break;
            const bigrow& p = it->second;
            r = combine(r, p.front().second, p, r.front().second);
            normalize_content(r);
        }
        if (!r.empty()) {
            normalize_content(r);
            pivots.emplace(r.front().first, std::move(r));
            ++rank;
        }
    }
    return rank;
}

bool operator<(const ratmat& a, const ratmat& b) {
    if (a.rows != b.rows) return a.rows < b.rows;
    if (a.cols != b.cols) return a.cols < b.cols;
    for (size_t i = 0; i < a.data.size(); ++i) {
        if (a.data[i] != b.data[i]) return a.data[i] < b.data[i];
    }
    return false;
}

int rref(ratmat& m) {
    int rank = 0;
    for (int col = 0; col < m.cols && rank < m.rows; ++col) {
        int piv = -1;
        for (int i = rank; i < m.rows; ++i)
            if (!m.at(i, col).is_zero()) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != rank)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(rank, j));
        rational inv = rational(1) / m.at(rank, col);
        for (int j = col; j < m.cols; ++j) m.at(rank, j) *= inv;
        for (int i = 0; i < m.rows; ++i) {
            if (i == rank || m.at(i, col).is_zero()) continue;
            rational f = m.at(i, col);
            for (int j = col; j < m.cols; ++j) m.at(i, j) -= f * m.at(rank, j);
        }
        ++rank;
    }
    return rank;
}

int rank_of(const ratmat& m) {
    ratmat c = m;
    return rref(c);
}

} // namespace ella
