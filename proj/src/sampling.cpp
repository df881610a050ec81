#include "ella/sampling.hpp"

#include "ella/errors.hpp"

namespace ella {

long long sampler::pick(long long lo, long long hi) {
    return std::uniform_int_distribution<long long>(lo, hi)(rng);
}

double sampler::real(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

cplx sampler::box(double re_lo, double re_hi, double im_lo, double im_hi) {
    double re = real(re_lo, re_hi);
    double im = real(im_lo, im_hi);
    return cplx(re, im);
}

rational sampler::rat(long long max_num, long long max_den) {
    return rational(pick(-max_num, max_num), pick(1, max_den));
}

qpair sampler::qp(long long max_num, long long max_den) {
    rational r = rat(max_num, max_den);
    rational s = rat(max_num, max_den);
    return qpair(r, s);
}

epoint sampler::ep(long long max_den) {
    long long den = pick(1, max_den);
    rational r(pick(0, den - 1), den);
    long long den2 = pick(1, max_den);
    rational s(pick(0, den2 - 1), den2);
    return epoint(r, s);
}

std::vector<long long> sampler::primitive_column(int k, long long bound) {
    for (int attempt = 0; attempt < 10000; ++attempt) {
        std::vector<long long> c(k);
        for (auto& x : c) x = pick(-bound, bound);
        long long g = content(c);
        if (g == 0) continue;
        if (g != 1)
            for (auto& x : c) x /= g;
        return c;
    }
    throw size_limit("sampler: failed to draw a primitive column");
}

intmat sampler::small_system(int k, long long det_bound, long long entry_bound) {
    for (int attempt = 0; attempt < 100000; ++attempt) {
        intmat a(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) a.at(i, j) = pick(-entry_bound, entry_bound);
        long long d = det(a);
        if (d != 0 && (d < 0 ? -d : d) <= det_bound) return a;
    }
    throw size_limit("sampler: failed to draw an invertible system");
}

std::vector<qpair> sampler::unit_fraction_weights(int k) {
    static const long long primes[] = {3, 5, 7, 11, 13, 17, 19, 23};
    if (k > (int)(sizeof(primes) / sizeof(primes[0])))
        throw size_limit("sampler: weight vector too long");
    std::vector<qpair> w(k);
    for (int i = 0; i < k; ++i)
        w[i] = qpair(rational(1, primes[i]), rational(0));
    return w;
}

} // namespace ella
