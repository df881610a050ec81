#ifndef ELLA_QPAIR_HPP
#define ELLA_QPAIR_HPP

#include <complex>
#include <string>
#include <vector>

#include "ella/rational.hpp"

namespace ella {

using cplx = std::complex<double>;

// Element of Q + Q*tau, stored exactly as (r, s) meaning r + s*tau.  All
// exact offsets, weights and lifts in the library live here; tau itself only
// enters when a value is embedded into C.
struct qpair {
    rational r, s;

    qpair() = default;
    qpair(rational r_, rational s_) : r(r_), s(s_) {}

    bool is_zero() const { return r.is_zero() && s.is_zero(); }

    // Both coordinates integral, i.e. membership in Z + Z*tau.
    bool in_lambda() const { return r.is_integer() && s.is_integer(); }

    friend qpair operator+(const qpair& a, const qpair& b) { return {a.r + b.r, a.s + b.s}; }
    friend qpair operator-(const qpair& a, const qpair& b) { return {a.r - b.r, a.s - b.s}; }
    qpair operator-() const { return {-r, -s}; }
    friend qpair operator*(const rational& c, const qpair& a) { return {c * a.r, c * a.s}; }
    friend qpair operator*(long long c, const qpair& a) { return rational(c) * a; }
    qpair& operator+=(const qpair& b) { r += b.r; s += b.s; return *this; }
    qpair& operator-=(const qpair& b) { r -= b.r; s -= b.s; return *this; }

    friend bool operator==(const qpair& a, const qpair& b) { return a.r == b.r && a.s == b.s; }
    friend bool operator!=(const qpair& a, const qpair& b) { return !(a == b); }
    friend bool operator<(const qpair& a, const qpair& b) {
        if (a.r != b.r) return a.r < b.r;
        return a.s < b.s;
    }

    std::string str() const { return "(" + r.str() + ", " + s.str() + ")"; }
};

// Numeric image r + s*tau.
inline cplx embed(const qpair& x, cplx tau) {
    return cplx(x.r.to_double(), 0.0) + cplx(x.s.to_double(), 0.0) * tau;
}

// Point of E^1 = C/(Z + Z*tau) in the canonical half-open fundamental
// square: both coordinates reduced into [0, 1).
struct epoint {
    qpair v;

    epoint() = default;
    explicit epoint(const qpair& x) : v(x.r.mod1(), x.s.mod1()) {}
    epoint(rational r_, rational s_) : epoint(qpair(r_, s_)) {}

    bool is_zero() const { return v.is_zero(); }

    friend bool operator==(const epoint& a, const epoint& b) { return a.v == b.v; }
    friend bool operator!=(const epoint& a, const epoint& b) { return !(a.v == b.v); }
    friend bool operator<(const epoint& a, const epoint& b) { return a.v < b.v; }

    epoint operator-() const { return epoint(-v); }
    friend epoint operator+(const epoint& a, const qpair& b) { return epoint(a.v + b); }
    friend epoint operator-(const epoint& a, const qpair& b) { return epoint(a.v - b); }

    std::string str() const { return v.str(); }
};

// Element gamma of the rank-2k deck lattice: coordinate i translates by
// l_i*tau + m_i.
struct lattice_vector {
    std::vector<long long> l, m;

    lattice_vector() = default;
    lattice_vector(std::vector<long long> l_, std::vector<long long> m_)
        : l(std::move(l_)), m(std::move(m_)) {
        if (l.size() != m.size())
            throw dimension_mismatch("lattice_vector: l and m lengths differ");
    }

    size_t size() const { return l.size(); }

    qpair coord(size_t i) const { return qpair(rational(m[i]), rational(l[i])); }

    friend lattice_vector operator+(const lattice_vector& a, const lattice_vector& b) {
        if (a.size() != b.size())
            throw dimension_mismatch("lattice_vector: size mismatch in +");
        lattice_vector c = a;
        for (size_t i = 0; i < b.size(); ++i) { c.l[i] += b.l[i]; c.m[i] += b.m[i]; }
        return c;
    }
};

} // namespace ella

#endif
