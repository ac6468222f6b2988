#include <cmath>
#include <random>

#include "doctest.h"
#include "parnet/construct.hpp"
#include "parnet/network.hpp"
#include "parnet/sigmoid.hpp"

using namespace parnet;

TEST_CASE("moment system closed-form solutions") {
    SUBCASE("k = 1, betas (1, 2)") {
        const auto a = solve_moment_system(1, 2, {1.0, 2.0});
        REQUIRE(a.size() == 2);
        CHECK(a[0] == doctest::Approx(-1.0).epsilon(1e-12));
        CHECK(a[1] == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("k = 2, betas (0, 1, 2)") {
        const auto a = solve_moment_system(2, 3, {0.0, 1.0, 2.0});
        REQUIRE(a.size() == 3);
        CHECK(a[0] == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(a[1] == doctest::Approx(-1.0).epsilon(1e-12));
        CHECK(a[2] == doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("duplicate betas are rejected") {
        CHECK_THROWS(solve_moment_system(1, 2, {1.0, 1.0}));
    }
}

TEST_CASE("t_sigma maximizes the k-th sigmoid derivative magnitude") {
    CHECK(choose_t_sigma(1) == doctest::Approx(0.0));
    CHECK(choose_t_sigma(2) != 0.0);
    for (int k = 1; k <= 6; ++k) {
        const double t = choose_t_sigma(k);
        CHECK(std::abs(sigma_deriv(k, t)) >= 1e-3);
        // Local optimality against the neighbouring grid points.
        CHECK(std::abs(sigma_deriv(k, t)) >= std::abs(sigma_deriv(k, t + 0.01)) - 1e-12);
        CHECK(std::abs(sigma_deriv(k, t)) >= std::abs(sigma_deriv(k, t - 0.01)) - 1e-12);
    }
}

TEST_CASE("monomial nets solve their moment system and approximate x^k") {
    for (int k : {1, 2, 3}) {
        const MonomialNetSpec net = build_monomial_net(k, 5, 0.1);
        CHECK(net.moment_residual() <= 1e-9);
        double sup = 0.0;
        for (int i = 0; i <= 200; ++i) {
            const double x = -0.1 + 0.2 * i / 200.0;
            sup = std::max(sup, std::abs(net.eval(x) - std::pow(x, k)));
        }
        CHECK(sup <= 1e-4);
    }
}

TEST_CASE("monomial net error shrinks with the input range as A^N") {
    const int k = 2, N = 4;
    auto sup_err = [&](double A) {
        const MonomialNetSpec net = build_monomial_net(k, N, A);
        double sup = 0.0;
        for (int i = 0; i <= 400; ++i) {
            const double x = -A + 2.0 * A * i / 400.0;
            sup = std::max(sup, std::abs(net.eval(x) - x * x));
        }
        return sup;
    };
    const double ratio = sup_err(0.2) / sup_err(0.1);
    // Halving A should shrink the error by roughly 2^N = 16.
    CHECK(ratio >= 4.0);
    CHECK(ratio <= 64.0);
}

TEST_CASE("two-input multiplier approximates the product by polarization") {
    const Mult2Net mult = build_mult2(5, 0.1);
    CHECK(std::abs(mult.eval(0.0, 0.0)) <= 1e-6);
    std::mt19937_64 rng(211);
    std::uniform_real_distribution<double> u(-0.1, 0.1);
    for (int t = 0; t < 200; ++t) {
        const double x = u(rng), y = u(rng);
        CHECK(std::abs(mult.eval(x, y) - x * y) <= 1e-5);
    }
    // Symmetric up to the approximation error of the squaring block.
    CHECK(std::abs(mult.eval(0.05, -0.03) - mult.eval(-0.03, 0.05)) <= 1e-4);
}

TEST_CASE("product tree reproduces products, odd widths included") {
    std::mt19937_64 rng(223);
    for (int d_in : {2, 3, 4}) {
        const MultDNet net = build_mult_d(d_in, 5, 0.05);
        CHECK(net.mult_layers() == static_cast<int>(std::ceil(std::log2(d_in))));
        std::uniform_real_distribution<double> u(-0.05, 0.05);
        for (int t = 0; t < 100; ++t) {
            std::vector<double> x(static_cast<std::size_t>(d_in));
            double prod = 1.0;
            for (auto& v : x) {
                v = u(rng);
                prod *= v;
            }
            CHECK(std::abs(net.eval(x) - prod) <= 1e-5);
        }
        std::vector<double> zero(static_cast<std::size_t>(d_in), 0.0);
        CHECK(std::abs(net.eval(zero)) <= 1e-5);
    }
}

TEST_CASE("product tree rejects ranges outside the admissibility condition") {
    CHECK_THROWS_AS(build_mult_d(2, 3, 0.5, 1.0), std::invalid_argument);
}

TEST_CASE("assembly requirements grow with the input dimension") {
    const SmoothTarget f1 = make_target("sin2x");
    const SmoothTarget f2 = make_target("sinprod");
    const auto r1 = assembly_requirements(f1, 4, 4);
    const auto r2 = assembly_requirements(f2, 4, 4);
    CHECK(r1.min_depth >= 1);
    CHECK(r1.min_width >= 1);
    CHECK(r2.min_depth >= r1.min_depth);
    CHECK(r2.min_width >= 1);
}

TEST_CASE("assembled network reproduces a linear target closely") {
    const SmoothTarget f = make_target("linear");
    const int K = 4, N = 6;
    const auto req = assembly_requirements(f, K, N);
    const auto blueprints = assemble_taylor_net(f, K, req.min_depth, req.min_width, N);
    CHECK_FALSE(blueprints.empty());
    double sup = 0.0;
    for (int i = 0; i <= 400; ++i) {
        const std::vector<double> x{-1.0 + 2.0 * i / 400.0};
        sup = std::max(sup, std::abs(eval_blueprints(blueprints, x) - f.evaluate(x)));
    }
    CHECK(sup <= 1e-3);
}

TEST_CASE("assembled network reproduces a constant target closely") {
    const SmoothTarget f = make_target("constant");
    const int K = 2, N = 6;
    const auto req = assembly_requirements(f, K, N);
    const auto blueprints = assemble_taylor_net(f, K, req.min_depth, req.min_width, N);
    double sup = 0.0;
    for (int i = 0; i <= 200; ++i) {
        const std::vector<double> x{-1.0 + 2.0 * i / 200.0};
        sup = std::max(sup, std::abs(eval_blueprints(blueprints, x) - 0.7));
    }
    CHECK(sup <= 1e-5);
}

TEST_CASE("blueprint count is bounded by terms times cells times block size") {
    const SmoothTarget f = make_target("sinprod");
    const int K = 3, N = 4;
    const auto req = assembly_requirements(f, K, N);
    const auto blueprints = assemble_taylor_net(f, K, req.min_depth, req.min_width, N);
    const int monomials = (f.q() + 1) * (f.q() + 2) / 2;  // terms of degree <= q, d = 2
    const int cells = K * K;
    CHECK(static_cast<int>(blueprints.size()) <= monomials * cells * 2 * N);
}

TEST_CASE("embedding blueprints is additive over subnet slots") {
    const SmoothTarget f = make_target("sin2x");
    const int K = 2, N = 4;
    const auto req = assembly_requirements(f, K, N);
    const auto blueprints = assemble_taylor_net(f, K, req.min_depth, req.min_width, N);
    REQUIRE(blueprints.size() >= 2);

    std::vector<SubnetBlueprint> two{blueprints[0], blueprints[1]};
    const Topology topo(f.d, 5, blueprints[0].weights.topology().L,
                        blueprints[0].weights.topology().r);
    const WeightVector w = embed_blueprints(two, topo, {3, 0});
    std::mt19937_64 rng(227);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < 50; ++t) {
        const std::vector<double> x{u(rng)};
        CHECK(forward(w, x) ==
              doctest::Approx(eval_blueprints(two, x)).epsilon(1e-10).scale(1.0));
    }

    const WeightVector empty = embed_blueprints({}, topo, {});
    const std::vector<double> x{0.3};
    CHECK(forward(empty, x) == 0.0);
}
