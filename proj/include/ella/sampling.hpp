#ifndef ELLA_SAMPLING_HPP
#define ELLA_SAMPLING_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "ella/intmat.hpp"
#include "ella/qpair.hpp"

namespace ella {

// Seeded desk-scale random inputs for tests and self-checks.  Everything is
// drawn from one mt19937_64 stream so a (seed, call sequence) pair pins the
// data exactly.
struct sampler {
    std::mt19937_64 rng;

    explicit sampler(std::uint64_t seed) : rng(seed) {}

    long long pick(long long lo, long long hi);
    double real(double lo, double hi);
    cplx box(double re_lo, double re_hi, double im_lo, double im_hi);

    rational rat(long long max_num = 3, long long max_den = 7);
    qpair qp(long long max_num = 3, long long max_den = 7);
    epoint ep(long long max_den = 7);

    // Nonzero column with content 1, entries within the bound.
    std::vector<long long> primitive_column(int k, long long bound = 2);

    // Invertible k x k with entries within the bound and |det| <= det_bound.
    intmat small_system(int k, long long det_bound = 3, long long entry_bound = 2);

    // Weights 1/p with distinct small prime denominators, real part only;
    // subset sums stay off the integers at desk scale.
    std::vector<qpair> unit_fraction_weights(int k);
};

} // namespace ella

#endif
