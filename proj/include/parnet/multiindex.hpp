#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace parnet {

using MultiIndex = std::vector<int>;

inline int multi_index_order(const MultiIndex& alpha) {
    int s = 0;
    for (int a : alpha) s += a;
    return s;
}

// All multi-indices in d variables with total degree <= q, graded lexicographic:
// ordered by total degree, ties broken lexicographically.
std::vector<MultiIndex> enumerate_multi_indices(int d, int q);

double multi_index_factorial(const MultiIndex& alpha);

// Multivariate polynomial of total degree <= degree, stored as coefficients over
// the monomials (x - center)^alpha in the graded-lex enumeration.
class CenteredPolynomial {
  public:
    CenteredPolynomial() = default;
    CenteredPolynomial(std::vector<double> center, int degree);

    const std::vector<double>& center() const { return center_; }
    int degree() const { return degree_; }
    int dimension() const { return static_cast<int>(center_.size()); }
    const std::vector<MultiIndex>& monomials() const { return monomials_; }

    double coefficient(std::size_t idx) const { return coeffs_[idx]; }
    double& coefficient(std::size_t idx) { return coeffs_[idx]; }
    std::size_t term_count() const { return coeffs_.size(); }

    double evaluate(std::span<const double> x) const;

    // Exact re-expansion around a new center by binomial expansion of each monomial.
    CenteredPolynomial recentered(std::span<const double> new_center) const;

    CenteredPolynomial& operator-=(const CenteredPolynomial& other);
    CenteredPolynomial& operator+=(const CenteredPolynomial& other);

    double max_abs_coefficient() const;

  private:
    std::vector<double> center_;
    int degree_ = 0;
    std::vector<MultiIndex> monomials_;
    std::vector<double> coeffs_;
};

}  // namespace parnet
