#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "parnet/multiindex.hpp"

namespace parnet {

// A (p,C)-smooth target: all partials up to order q = floor of p (with p = q + beta,
// beta in (0,1]) exist and are available through an oracle.
struct SmoothTarget {
    std::function<double(std::span<const double>)> evaluate;
    std::function<double(const MultiIndex&, std::span<const double>)> partial;
    double p = 1.0;
    double C = 1.0;
    double A = 1.0;  // domain half-width, >= 1
    int d = 1;

    int q() const {
        // Largest integer with p - q in (0, 1].
        const int candidate = static_cast<int>(std::ceil(p)) - 1;
        return candidate < 0 ? 0 : candidate;
    }
    double beta() const { return p - q(); }
};

// Named fixture targets used across the verification suites.
//   "sin2x"     d=1: m(x) = sin(2x), declared p = 2
//   "abs"       d=1: m(x) = |x|, Lipschitz, declared p = 1
//   "cubic"     d=1: m(x) = x^3 - 0.5 x, polynomial
//   "product"   d=2: m(x) = x1 * x2, declared p = 2
//   "sinprod"   d=2: m(x) = sin(2 x1) * cos(x2), declared p = 2
//   "constant"  d=1: m(x) = 0.7
//   "linear"    d=1: m(x) = x
SmoothTarget make_target(const std::string& name, double half_width = 1.0);

}  // namespace parnet
