#include "parnet/multiindex.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace parnet {

namespace {

void enumerate_fixed_degree(int d, int degree, MultiIndex& current, int pos,
                            std::vector<MultiIndex>& out) {
    if (pos == d - 1) {
        current[static_cast<std::size_t>(pos)] = degree;
        out.push_back(current);
        return;
    }
    // Lexicographic within a degree class: largest leading entries first.
    for (int a = degree; a >= 0; --a) {
        current[static_cast<std::size_t>(pos)] = a;
        enumerate_fixed_degree(d, degree - a, current, pos + 1, out);
    }
}

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return r;
}

}  // namespace

std::vector<MultiIndex> enumerate_multi_indices(int d, int q) {
    if (d < 1 || q < 0) throw std::invalid_argument("enumerate_multi_indices: bad arguments");
    std::vector<MultiIndex> out;
    MultiIndex current(static_cast<std::size_t>(d), 0);
    for (int degree = 0; degree <= q; ++degree)
        enumerate_fixed_degree(d, degree, current, 0, out);
    return out;
}

double multi_index_factorial(const MultiIndex& alpha) {
    double r = 1.0;
    for (int a : alpha)
        for (int i = 2; i <= a; ++i) r *= static_cast<double>(i);
    return r;
}

CenteredPolynomial::CenteredPolynomial(std::vector<double> center, int degree)
    : center_(std::move(center)),
      degree_(degree),
      monomials_(enumerate_multi_indices(static_cast<int>(center_.size()), degree)),
      coeffs_(monomials_.size(), 0.0) {}

double CenteredPolynomial::evaluate(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != dimension())
        throw std::invalid_argument("CenteredPolynomial: dimension mismatch");
    double result = 0.0;
    for (std::size_t m = 0; m < monomials_.size(); ++m) {
        if (coeffs_[m] == 0.0) continue;
        double term = coeffs_[m];
        for (int j = 0; j < dimension(); ++j) {
            const double z = x[static_cast<std::size_t>(j)] - center_[static_cast<std::size_t>(j)];
            for (int a = 0; a < monomials_[m][static_cast<std::size_t>(j)]; ++a) term *= z;
        }
        result += term;
    }
    return result;
}

CenteredPolynomial CenteredPolynomial::recentered(std::span<const double> new_center) const {
    if (static_cast<int>(new_center.size()) != dimension())
        throw std::invalid_argument("CenteredPolynomial: dimension mismatch");
    CenteredPolynomial out(std::vector<double>(new_center.begin(), new_center.end()), degree_);
    const int d = dimension();
    // Shift per axis: x - c_old = (x - c_new) + s, s = c_new - c_old.
    std::vector<double> shift(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j)
        shift[static_cast<std::size_t>(j)] =
            new_center[static_cast<std::size_t>(j)] - center_[static_cast<std::size_t>(j)];
    // Index of each monomial for accumulation.
    std::map<MultiIndex, std::size_t> index;
    for (std::size_t m = 0; m < out.monomials_.size(); ++m) index[out.monomials_[m]] = m;
    MultiIndex beta(static_cast<std::size_t>(d), 0);
    for (std::size_t m = 0; m < monomials_.size(); ++m) {
        if (coeffs_[m] == 0.0) continue;
        const MultiIndex& alpha = monomials_[m];
        // Expand prod_j ((x-c_new)_j + s_j)^{alpha_j}.
        std::vector<std::size_t> pick(static_cast<std::size_t>(d), 0);
        bool done = false;
        while (!done) {
            double coeff = coeffs_[m];
            for (int j = 0; j < d; ++j) {
                const int a = alpha[static_cast<std::size_t>(j)];
                const int b = static_cast<int>(pick[static_cast<std::size_t>(j)]);
                beta[static_cast<std::size_t>(j)] = b;
                coeff *= binomial(a, b) *
                         std::pow(shift[static_cast<std::size_t>(j)], static_cast<double>(a - b));
            }
            out.coeffs_[index.at(beta)] += coeff;
            done = true;
            for (int j = 0; j < d; ++j) {
                if (static_cast<int>(++pick[static_cast<std::size_t>(j)]) <=
                    alpha[static_cast<std::size_t>(j)]) {
                    done = false;
                    break;
                }
                pick[static_cast<std::size_t>(j)] = 0;
            }
        }
    }
    return out;
}

CenteredPolynomial& CenteredPolynomial::operator-=(const CenteredPolynomial& other) {
    if (other.center_ != center_ || other.degree_ != degree_)
        throw std::invalid_argument("CenteredPolynomial: incompatible operands");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
    return *this;
}

CenteredPolynomial& CenteredPolynomial::operator+=(const CenteredPolynomial& other) {
    if (other.center_ != center_ || other.degree_ != degree_)
        throw std::invalid_argument("CenteredPolynomial: incompatible operands");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
    return *this;
}

double CenteredPolynomial::max_abs_coefficient() const {
    double m = 0.0;
    for (double c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

}  // namespace parnet
