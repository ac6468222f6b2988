#pragma once

#include <span>
#include <vector>

#include "parnet/multiindex.hpp"
#include "parnet/smooth_target.hpp"

namespace parnet {

// Uniform subdivision of [-A, A]^d into K^d cubes with lower-left corners
// u_k = -A + k * 2A/K per axis.
struct TaylorGrid {
    double A = 1.0;
    int K = 1;
    int d = 1;

    double delta() const { return 2.0 * A / static_cast<double>(K); }
    double corner(int k) const { return -A + static_cast<double>(k) * delta(); }
    std::vector<double> corner_point(const std::vector<int>& cell) const;
    // Cell index of x (clamped into 0..K-1 per axis).
    std::vector<int> cell_of(std::span<const double> x) const;
};

// Degree-q Taylor polynomial of f around u, evaluated at x.
double taylor_at(const SmoothTarget& f, std::span<const double> u, std::span<const double> x);

// The same polynomial as an explicit coefficient table centered at u.
CenteredPolynomial taylor_polynomial(const SmoothTarget& f, std::span<const double> u);

// Piecewise Taylor polynomial: per-cell correction pieces P_k built by the recursion
// P_k = T(f - sum_{l : u_l < u_k} P_l)_{q, u_k}, plus the smoothing scale M used by
// the sigmoid surrogate.
struct PiecewiseTaylor {
    TaylorGrid grid;
    int q = 0;
    std::vector<CenteredPolynomial> pieces;  // row-major over cell indices
    double M = 1.0;

    std::size_t piece_index(const std::vector<int>& cell) const;
};

PiecewiseTaylor build_pieces(const SmoothTarget& f, const TaylorGrid& grid);

// P(x) = sum of pieces whose corner is coordinatewise <= x.
double eval_P(const PiecewiseTaylor& pw, std::span<const double> x);

// Pbar(x) = P_0(x) + sum_{k != 0} P_k(x) * prod_j sigmoid(M (x_j - u_k_j)).
double eval_Pbar(const PiecewiseTaylor& pw, std::span<const double> x);

// Slab-restricted piece sum of the boundary analysis: pieces with u_k <= u_r and
// u_k^(j) == u_r^(j).
double slab_sum(const PiecewiseTaylor& pw, const std::vector<int>& r, int j,
                std::span<const double> x);

}  // namespace parnet
