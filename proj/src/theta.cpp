#include "ella/theta.hpp"

#include <cmath>

namespace ella {

namespace {

// (y;q) truncated per the modular_param depth.
cplx qpochhammer(cplx y, const modular_param& mp) {
    cplx q = mp.q();
    cplx prod(1.0, 0.0);
    cplx yqj = y;
    for (int j = 0; j <= mp.n_terms(); ++j) {
        prod *= (cplx(1.0, 0.0) - yqj);
        yqj *= q;
    }
    return prod;
}

constexpr double kSingularGuard = 1e-13;

} // namespace

cplx theta(cplx z, const modular_param& mp) {
    const double pi = modular_param::pi();
    cplx q = mp.q();
    cplx x = std::exp(cplx(0.0, 2.0 * pi) * z);
    cplx pref = cplx(0.0, 1.0) * std::exp(cplx(0.0, pi) * (mp.tau() / 4.0 - z));
    return pref * qpochhammer(x, mp) * qpochhammer(q / x, mp) * qpochhammer(q, mp);
}

cplx theta_prime_zero(const modular_param& mp) {
    const double pi = modular_param::pi();
    cplx qq = qpochhammer(mp.q(), mp);
    return 2.0 * pi * std::exp(cplx(0.0, pi) * mp.tau() / 4.0) * qq * qq * qq;
}

cplx sigma(cplx w, cplx t, const modular_param& mp) {
    cplx tp0 = theta_prime_zero(mp);
    cplx th_w = theta(w, mp);
    cplx th_t = theta(t, mp);
    // theta ~ theta'(0)*dist near its zeros, so |theta|/|theta'(0)| is a
    // scale-free distance to the lattice.
    double guard = kSingularGuard * std::abs(tp0);
    if (std::abs(th_w) < guard)
        throw near_singular("sigma: weight w within guard band of the lattice");
    if (std::abs(th_t) < guard)
        throw near_singular("sigma: argument t within guard band of the lattice");
    return theta(w - t, mp) * tp0 / (th_w * th_t);
}

double three_term_defect(cplx w1, cplx w2, cplx t, cplx s, cplx u,
                         const modular_param& mp) {
    cplx a = sigma(w1 + w2, t - u, mp) * sigma(w2, s - t, mp);
    cplx b = sigma(w2, s - u, mp) * sigma(w1, t - u, mp);
    cplx c = sigma(w1, t - s, mp) * sigma(w1 + w2, s - u, mp);
    double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
    if (scale == 0.0) return 0.0;
    return std::abs(a - b + c) / scale;
}

cplx rho_factor(const std::vector<qpair>& w, const lattice_vector& gamma,
                const modular_param& mp) {
    if (w.size() != gamma.size())
        throw dimension_mismatch("rho_factor: weight and lattice vector sizes differ");
    qpair expo;
    for (size_t i = 0; i < w.size(); ++i) expo += gamma.l[i] * w[i];
    return std::exp(cplx(0.0, 2.0 * modular_param::pi()) * mp.embed(expo));
}

void split_real_tau(cplx c, cplx tau, double& c_r, double& c_tau) {
    if (!(tau.imag() > 0.0))
        throw invalid_modular_param("split_real_tau: Im(tau) must be > 0");
    c_tau = c.imag() / tau.imag();
    c_r = c.real() - tau.real() * c_tau;
}

} // namespace ella
