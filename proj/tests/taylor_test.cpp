#include <cmath>
#include <random>

#include "doctest.h"
#include "parnet/multiindex.hpp"
#include "parnet/smooth_target.hpp"
#include "parnet/taylor.hpp"

using namespace parnet;

TEST_CASE("multi-index enumeration is graded and complete") {
    const auto idx = enumerate_multi_indices(2, 2);
    REQUIRE(idx.size() == 6);  // (q+d choose d) = (4 choose 2)
    for (std::size_t i = 1; i < idx.size(); ++i)
        CHECK(multi_index_order(idx[i - 1]) <= multi_index_order(idx[i]));
    CHECK(idx.front() == MultiIndex{0, 0});
    CHECK(multi_index_factorial({3, 2}) == doctest::Approx(12.0));
    CHECK(multi_index_factorial({0, 0}) == doctest::Approx(1.0));
}

TEST_CASE("centered polynomial evaluates and recenters exactly") {
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    CenteredPolynomial poly({0.3, -0.4}, 3);
    for (std::size_t i = 0; i < poly.term_count(); ++i) poly.coefficient(i) = u(rng);
    const std::vector<double> new_center{-0.7, 0.2};
    const CenteredPolynomial moved = poly.recentered(new_center);
    CHECK(moved.degree() == poly.degree());
    for (int t = 0; t < 200; ++t) {
        const std::vector<double> x{u(rng), u(rng)};
        CHECK(std::abs(poly.evaluate(x) - moved.evaluate(x)) <= 1e-10);
    }
}

TEST_CASE("taylor grid geometry") {
    TaylorGrid grid;
    grid.A = 1.0;
    grid.K = 4;
    grid.d = 2;
    CHECK(grid.delta() == doctest::Approx(0.5));
    CHECK(grid.corner(0) == doctest::Approx(-1.0));
    CHECK(grid.corner(3) == doctest::Approx(0.5));
    const std::vector<double> x{0.3, -0.9};
    const std::vector<int> cell = grid.cell_of(x);
    CHECK(cell == std::vector<int>{2, 0});
    const std::vector<double> out{5.0, -5.0};
    const std::vector<int> clamped = grid.cell_of(out);
    CHECK(clamped == std::vector<int>{3, 0});
    const std::vector<double> cp = grid.corner_point({2, 1});
    CHECK(cp[0] == doctest::Approx(0.0));
    CHECK(cp[1] == doctest::Approx(-0.5));
}

TEST_CASE("taylor expansion of a constant is the constant") {
    const SmoothTarget f = make_target("constant");
    const std::vector<double> u{-0.2};
    for (double xv : {-0.9, 0.0, 0.77}) {
        const std::vector<double> x{xv};
        CHECK(taylor_at(f, u, x) == doctest::Approx(0.7).epsilon(1e-14));
    }
}

TEST_CASE("first-order taylor expansion of sin(2x) at 0") {
    const SmoothTarget f = make_target("sin2x");  // p = 2, so degree-1 expansion
    const std::vector<double> u{0.0};
    const std::vector<double> x{0.1};
    CHECK(taylor_at(f, u, x) == doctest::Approx(0.2).epsilon(1e-14));
}

TEST_CASE("taylor expansion is exact for polynomials within its degree") {
    const SmoothTarget f = make_target("cubic4");  // degree 3, expanded to degree 3
    const std::vector<double> u{0.4};
    std::mt19937_64 rng(103);
    std::uniform_real_distribution<double> uu(-1.0, 1.0);
    for (int t = 0; t < 100; ++t) {
        const std::vector<double> x{uu(rng)};
        CHECK(std::abs(taylor_at(f, u, x) - f.evaluate(x)) <= 1e-12);
    }
}

TEST_CASE("taylor_polynomial coefficient table matches taylor_at") {
    const SmoothTarget f = make_target("sinprod");
    const std::vector<double> u{0.3, -0.6};
    const CenteredPolynomial poly = taylor_polynomial(f, u);
    std::mt19937_64 rng(107);
    std::uniform_real_distribution<double> uu(-1.0, 1.0);
    for (int t = 0; t < 100; ++t) {
        const std::vector<double> x{uu(rng), uu(rng)};
        CHECK(poly.evaluate(x) == doctest::Approx(taylor_at(f, u, x)).epsilon(1e-12));
    }
}

TEST_CASE("single-cell piecewise expansion is the Taylor expansion at the corner") {
    const SmoothTarget f = make_target("sin2x");
    TaylorGrid grid;
    grid.A = 1.0;
    grid.K = 1;
    grid.d = 1;
    const PiecewiseTaylor pw = build_pieces(f, grid);
    REQUIRE(pw.pieces.size() == 1);
    const std::vector<double> u{-1.0};
    for (double xv : {-0.8, 0.0, 0.9}) {
        const std::vector<double> x{xv};
        CHECK(eval_P(pw, x) == doctest::Approx(taylor_at(f, u, x)).epsilon(1e-12));
    }
}

TEST_CASE("correction pieces vanish for polynomial targets inside the degree") {
    const SmoothTarget f = make_target("cubic4");
    TaylorGrid grid;
    grid.A = 1.0;
    grid.K = 4;
    grid.d = 1;
    const PiecewiseTaylor pw = build_pieces(f, grid);
    REQUIRE(pw.pieces.size() == 4);
    for (std::size_t k = 1; k < pw.pieces.size(); ++k)
        CHECK(pw.pieces[k].max_abs_coefficient() <= 1e-9);
    std::mt19937_64 rng(109);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < 200; ++t) {
        const std::vector<double> x{u(rng)};
        CHECK(std::abs(eval_P(pw, x) - f.evaluate(x)) <= 1e-10);
    }
}

TEST_CASE("piecewise expansion of x1*x2 at q = 2 is exact in two dimensions") {
    const SmoothTarget f = make_target("product3");
    TaylorGrid grid;
    grid.A = 1.0;
    grid.K = 2;
    grid.d = 2;
    const PiecewiseTaylor pw = build_pieces(f, grid);
    REQUIRE(pw.pieces.size() == 4);
    std::mt19937_64 rng(113);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < 200; ++t) {
        const std::vector<double> x{u(rng), u(rng)};
        CHECK(std::abs(eval_P(pw, x) - f.evaluate(x)) <= 1e-10);
    }
}

TEST_CASE("piecewise expansion interpolates the target at every cell corner") {
    const SmoothTarget f = make_target("sin2x");
    TaylorGrid grid;
    grid.A = 1.0;
    grid.K = 4;
    grid.d = 1;
    const PiecewiseTaylor pw = build_pieces(f, grid);
    for (int k = 0; k < grid.K; ++k) {
        const std::vector<double> u{grid.corner(k)};
        CHECK(eval_P(pw, u) == doctest::Approx(f.evaluate(u)).epsilon(1e-12));
    }
}

TEST_CASE("smoothed surrogate coincides with the expansion on one cell") {
    const SmoothTarget f = make_target("sin2x");
    TaylorGrid grid;
    grid.A = 1.0;
    grid.K = 1;
    grid.d = 1;
    const PiecewiseTaylor pw = build_pieces(f, grid);
    for (double xv : {-0.5, 0.2, 0.95}) {
        const std::vector<double> x{xv};
        CHECK(eval_Pbar(pw, x) == doctest::Approx(eval_P(pw, x)).epsilon(1e-12));
    }
}

TEST_CASE("smoothed surrogate tracks the expansion away from cell boundaries") {
    const SmoothTarget f = make_target("sin2x");
    TaylorGrid grid;
    grid.A = 1.0;
    grid.K = 8;
    grid.d = 1;
    const PiecewiseTaylor pw = build_pieces(f, grid);
    CHECK(pw.M >= 1.0);
    // At points at least a quarter-cell away from every corner, each indicator
    // factor sigmoid(M (x - u)) is within e^{-M delta / 4} of {0, 1}.
    const double slack =
        10.0 * std::exp(-pw.M * grid.delta() / 4.0) * (1.0 + std::abs(f.C));
    for (int i = 0; i < 64; ++i) {
        const double xv = -1.0 + (static_cast<double>(i % 8) + 0.5) * grid.delta();
        const std::vector<double> x{xv};
        CHECK(std::abs(eval_Pbar(pw, x) - eval_P(pw, x)) <= slack);
    }
}

TEST_CASE("slab sums vanish for polynomial targets and reduce to P_0 at K = 1") {
    const SmoothTarget poly = make_target("cubic4");
    TaylorGrid grid;
    grid.A = 1.0;
    grid.K = 4;
    grid.d = 1;
    const PiecewiseTaylor pw = build_pieces(poly, grid);
    const std::vector<double> x{0.3};
    for (int r = 1; r < grid.K; ++r)
        CHECK(std::abs(slab_sum(pw, {r}, 0, x)) <= 1e-9);

    const SmoothTarget f = make_target("sin2x");
    TaylorGrid one;
    one.A = 1.0;
    one.K = 1;
    one.d = 1;
    const PiecewiseTaylor pw1 = build_pieces(f, one);
    CHECK(slab_sum(pw1, {0}, 0, x) == doctest::Approx(pw1.pieces[0].evaluate(x)));
}

TEST_CASE("pieces telescope: slabs along an axis partition the active cells") {
    const SmoothTarget f = make_target("sinprod");
    TaylorGrid grid;
    grid.A = 1.0;
    grid.K = 3;
    grid.d = 2;
    const PiecewiseTaylor pw = build_pieces(f, grid);
    const std::vector<double> x{0.9, 0.9};  // interior of the top-right cell
    // Every piece with corner <= x lies in exactly one slab {u^(0) == u_r^(0)}.
    double total = 0.0;
    for (int r = 0; r < grid.K; ++r) total += slab_sum(pw, {r, grid.K - 1}, 0, x);
    CHECK(total == doctest::Approx(eval_P(pw, x)).epsilon(1e-10));
}
