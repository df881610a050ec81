#ifndef ELLA_RATIONAL_HPP
#define ELLA_RATIONAL_HPP

#include <cstdint>
#include <numeric>
#include <string>
#include <iosfwd>

#include "ella/errors.hpp"

namespace ella {

// Exact rational over int64 with checked intermediates.  Always normalized:
// den > 0, gcd(num, den) == 1, zero is 0/1.  All sizes in this library are
// desk scale, so int64 is plenty; any overflow after reduction throws rather
// than wrapping.
class rational {
  public:
    rational() : num_(0), den_(1) {}
    rational(long long n) : num_(n), den_(1) {}
    rational(long long n, long long d) { assign(n, d); }

    long long num() const { return num_; }
    long long den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    friend rational operator+(const rational& a, const rational& b) {
        __int128 n = i128(a.num_) * b.den_ + i128(b.num_) * a.den_;
        __int128 d = i128(a.den_) * b.den_;
        return from_i128(n, d);
    }
    friend rational operator-(const rational& a, const rational& b) {
        __int128 n = i128(a.num_) * b.den_ - i128(b.num_) * a.den_;
        __int128 d = i128(a.den_) * b.den_;
        return from_i128(n, d);
    }
    friend rational operator*(const rational& a, const rational& b) {
        return from_i128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend rational operator/(const rational& a, const rational& b) {
        if (b.num_ == 0) throw error("rational: division by zero");
        return from_i128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }
    rational operator-() const {
        rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    rational& operator+=(const rational& b) { return *this = *this + b; }
    rational& operator-=(const rational& b) { return *this = *this - b; }
    rational& operator*=(const rational& b) { return *this = *this * b; }
    rational& operator/=(const rational& b) { return *this = *this / b; }

    friend bool operator==(const rational& a, const rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const rational& a, const rational& b) { return !(a == b); }
    friend bool operator<(const rational& a, const rational& b) {
        return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
    }
    friend bool operator<=(const rational& a, const rational& b) { return !(b < a); }
    friend bool operator>(const rational& a, const rational& b) { return b < a; }
    friend bool operator>=(const rational& a, const rational& b) { return !(a < b); }

    // Largest integer <= value.  den_ > 0 so this is plain floor division.
    long long floor() const {
        long long q = num_ / den_, r = num_ % den_;
        return (r < 0) ? q - 1 : q;
    }

    // Fractional part in [0, 1).
    rational mod1() const { return *this - rational(floor()); }

    double to_double() const { return double(num_) / double(den_); }

    // Canonical form "p/q" (q always printed, reduced, q > 0).
    std::string str() const {
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    // Accepts "p" or "p/q".
    static rational parse(const std::string& s);

  private:
    static __int128 i128(long long v) { return static_cast<__int128>(v); }

    static rational from_i128(__int128 n, __int128 d) {
        if (d == 0) throw error("rational: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        rational r;
        r.num_ = narrow(n);
        r.den_ = narrow(d);
        return r;
    }

    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        return a < 0 ? -a : a;
    }

    static long long narrow(__int128 v) {
        if (v > INT64_MAX || v < INT64_MIN)
            throw overflow_error("rational: value exceeds 64-bit range after reduction");
        return static_cast<long long>(v);
    }

    void assign(long long n, long long d) {
        *this = from_i128(i128(n), i128(d));
    }

    long long num_, den_;
};

std::ostream& operator<<(std::ostream& os, const rational& r);

} // namespace ella

#endif
