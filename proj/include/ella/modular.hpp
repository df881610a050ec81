#ifndef ELLA_MODULAR_HPP
#define ELLA_MODULAR_HPP

#include <cmath>
#include <complex>

#include "ella/errors.hpp"
#include "ella/qpair.hpp"

namespace ella {

// Modular parameter with its derived nome and the q-product truncation
// depth.  Im(tau) must be positive; accuracy is only guaranteed for
// Im(tau) >= 0.3 and the precision_loss flag is raised when |q| > 0.9.
class modular_param {
  public:
    explicit modular_param(cplx tau, int truncation_margin = 5) : tau_(tau) {
        if (!(tau.imag() > 0.0))
            throw invalid_modular_param("modular_param: Im(tau) must be > 0");
        q_ = std::exp(cplx(0.0, 2.0 * pi()) * tau);
        double absq = std::abs(q_);
        precision_loss_ = absq > 0.9;
        // Truncate once |q|^j drops below 1e-17, plus a safety margin.
        double digits_per_term = -std::log10(absq);
        n_terms_ = static_cast<int>(std::ceil(17.0 / digits_per_term)) + truncation_margin;
        if (n_terms_ > 20000) n_terms_ = 20000;
    }

    cplx tau() const { return tau_; }
    cplx q() const { return q_; }
    int n_terms() const { return n_terms_; }
    bool precision_loss() const { return precision_loss_; }

    cplx embed(const qpair& x) const { return ella::embed(x, tau_); }

    static double pi() { return 3.141592653589793238462643383279502884; }

  private:
    cplx tau_, q_;
    int n_terms_;
    bool precision_loss_;
};

} // namespace ella

#endif
