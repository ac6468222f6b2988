#include "parnet/smooth_target.hpp"

#include <cmath>
#include <stdexcept>

namespace parnet {

namespace {

// Derivatives of sin(a x): d^k/dx^k sin(a x) = a^k sin(a x + k pi/2).
double sin_deriv(double a, int k, double x) {
    return std::pow(a, k) * std::sin(a * x + 0.5 * M_PI * static_cast<double>(k));
}

double cos_deriv(double a, int k, double x) {
    return std::pow(a, k) * std::cos(a * x + 0.5 * M_PI * static_cast<double>(k));
}

}  // namespace

SmoothTarget make_target(const std::string& name, double half_width) {
    SmoothTarget t;
    t.A = half_width;
    if (name == "sin2x") {
        t.d = 1;
        t.p = 2.0;
        t.C = 8.0;  // |d^2/dx^2 sin(2x)| <= 4, Lipschitz constant of the derivative
        t.evaluate = [](std::span<const double> x) { return std::sin(2.0 * x[0]); };
        t.partial = [](const MultiIndex& a, std::span<const double> x) {
            return sin_deriv(2.0, a[0], x[0]);
        };
    } else if (name == "abs") {
        t.d = 1;
        t.p = 1.0;
        t.C = 1.0;
        t.evaluate = [](std::span<const double> x) { return std::abs(x[0]); };
        t.partial = [](const MultiIndex& a, std::span<const double> x) {
            if (a[0] == 0) return std::abs(x[0]);
            throw std::invalid_argument("abs target: partials beyond order 0 unavailable");
        };
    } else if (name == "cubic") {
        t.d = 1;
        t.p = 2.0;
        t.C = 6.0;
        t.evaluate = [](std::span<const double> x) { return x[0] * x[0] * x[0] - 0.5 * x[0]; };
        t.partial = [](const MultiIndex& a, std::span<const double> x) {
            switch (a[0]) {
                case 0: return x[0] * x[0] * x[0] - 0.5 * x[0];
                case 1: return 3.0 * x[0] * x[0] - 0.5;
                case 2: return 6.0 * x[0];
                case 3: return 6.0;
                default: return 0.0;
            }
        };
    } else if (name == "cubic4") {
        // Same cubic, declared p = 4 so its degree-3 Taylor expansion is exact.
        t = make_target("cubic", half_width);
        t.p = 4.0;
        return t;
    } else if (name == "product3") {
        t = make_target("product", half_width);
        t.p = 3.0;
        return t;
    } else if (name == "product") {
        t.d = 2;
        t.p = 2.0;
        t.C = 2.0;
        t.evaluate = [](std::span<const double> x) { return x[0] * x[1]; };
        t.partial = [](const MultiIndex& a, std::span<const double> x) {
            const int a0 = a[0], a1 = a[1];
            if (a0 > 1 || a1 > 1) return 0.0;
            const double f0 = (a0 == 0) ? x[0] : 1.0;
            const double f1 = (a1 == 0) ? x[1] : 1.0;
            return f0 * f1;
        };
    } else if (name == "sinprod") {
        t.d = 2;
        t.p = 2.0;
        t.C = 16.0;
        t.evaluate = [](std::span<const double> x) { return std::sin(2.0 * x[0]) * std::cos(x[1]); };
        t.partial = [](const MultiIndex& a, std::span<const double> x) {
            return sin_deriv(2.0, a[0], x[0]) * cos_deriv(1.0, a[1], x[1]);
        };
    } else if (name == "constant") {
        t.d = 1;
        t.p = 2.0;
        t.C = 1.0;
        t.evaluate = [](std::span<const double>) { return 0.7; };
        t.partial = [](const MultiIndex& a, std::span<const double>) {
            return (a[0] == 0) ? 0.7 : 0.0;
        };
    } else if (name == "linear") {
        t.d = 1;
        t.p = 2.0;
        t.C = 1.0;
        t.evaluate = [](std::span<const double> x) { return x[0]; };
        t.partial = [](const MultiIndex& a, std::span<const double> x) {
            if (a[0] == 0) return x[0];
            if (a[0] == 1) return 1.0;
            return 0.0;
        };
    } else {
        throw std::invalid_argument("make_target: unknown target '" + name + "'");
    }
    return t;
}

}  // namespace parnet
