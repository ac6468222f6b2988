#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace parnet {

// Logistic squasher sigma(x) = 1/(1+e^{-x}).
// Branch on the sign so we never exponentiate a large positive argument.
inline double sigmoid(double x) {
    if (x >= 0.0) {
        return 1.0 / (1.0 + std::exp(-x));
    }
    const double e = std::exp(x);
    return e / (1.0 + e);
}

// Derivatives of the logistic function expressed as polynomials in s = sigma(x).
// sigma^(0) = s and sigma^(m+1) = d/ds[poly_m](s) * s*(1-s), expanded exactly.
class SigmaDerivTable {
  public:
    explicit SigmaDerivTable(int max_order) {
        if (max_order < 0) throw std::invalid_argument("SigmaDerivTable: order must be >= 0");
        coeffs_.reserve(static_cast<std::size_t>(max_order) + 1);
        coeffs_.push_back({0.0, 1.0});  // sigma^(0) = s
        for (int m = 0; m < max_order; ++m) {
            const auto& p = coeffs_.back();
            // dp = p'(s)
            std::vector<double> dp(p.size() > 1 ? p.size() - 1 : 1, 0.0);
            for (std::size_t i = 1; i < p.size(); ++i) dp[i - 1] = static_cast<double>(i) * p[i];
            // next = dp * (s - s^2)
            std::vector<double> next(dp.size() + 2, 0.0);
            for (std::size_t i = 0; i < dp.size(); ++i) {
                next[i + 1] += dp[i];
                next[i + 2] -= dp[i];
            }
            coeffs_.push_back(std::move(next));
        }
    }

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }

    // Polynomial coefficients of sigma^(m) in powers of s.
    const std::vector<double>& poly(int m) const {
        if (m < 0 || m > order()) throw std::invalid_argument("SigmaDerivTable: order out of range");
        return coeffs_[static_cast<std::size_t>(m)];
    }

    double eval(int m, double x) const {
        const auto& p = poly(m);
        const double s = sigmoid(x);
        double v = 0.0;
        for (std::size_t i = p.size(); i-- > 0;) v = v * s + p[i];
        return v;
    }

  private:
    std::vector<std::vector<double>> coeffs_;
};

// sigma^(m)(x); builds a table per call for small m, use SigmaDerivTable directly in loops.
inline double sigma_deriv(int m, double x) {
    static thread_local SigmaDerivTable table(12);
    if (m > table.order()) throw std::invalid_argument("sigma_deriv: order exceeds table");
    return table.eval(m, x);
}

}  // namespace parnet
