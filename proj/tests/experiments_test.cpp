#include <cmath>

#include "doctest.h"
#include "parnet/experiments.hpp"

using namespace parnet;

TEST_CASE("configuration validation") {
    ExperimentConfig cfg;
    CHECK_THROWS(cfg.check());  // empty n grid
    cfg.n_grid = {50, 100};
    CHECK_NOTHROW(cfg.check());
    cfg.n_grid = {100, 50};
    CHECK_THROWS(cfg.check());
    cfg.n_grid = {50, 100};
    cfg.repetitions = 0;
    CHECK_THROWS(cfg.check());
    cfg.repetitions = 1;
    cfg.noise_std = -1.0;
    CHECK_THROWS(cfg.check());
}

TEST_CASE("noise-free data lies exactly on the target") {
    ExperimentConfig cfg;
    cfg.noise_std = 0.0;
    const SmoothTarget f = make_target("sin2x");
    const Dataset data = generate_data(cfg, f, 25, 77);
    REQUIRE(data.size() == 25);
    CHECK(data.dimension() == 1);
    for (std::size_t i = 0; i < data.size(); ++i) {
        CHECK(std::abs(data.xs[i][0]) <= cfg.half_width);
        CHECK(data.ys[i] == f.evaluate(data.xs[i]));
    }
}

TEST_CASE("data generation is seed-deterministic") {
    ExperimentConfig cfg;
    const SmoothTarget f = make_target("product");
    const Dataset a = generate_data(cfg, f, 30, 5);
    const Dataset b = generate_data(cfg, f, 30, 5);
    const Dataset c = generate_data(cfg, f, 30, 6);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.xs[i] == b.xs[i]);
        CHECK(a.ys[i] == b.ys[i]);
    }
    bool any_diff = false;
    for (std::size_t i = 0; i < a.size(); ++i) any_diff = any_diff || (a.ys[i] != c.ys[i]);
    CHECK(any_diff);
}

TEST_CASE("Monte Carlo squared error of the zero predictor against x is 1/3") {
    const SmoothTarget f = make_target("linear");
    const McEstimate est = mc_l2_error(
        [](std::span<const double>) { return 0.0; }, f, 1, 1.0, 200000, 11);
    CHECK(est.standard_error > 0.0);
    CHECK(std::abs(est.value - 1.0 / 3.0) <= 5.0 * est.standard_error);
    CHECK_THROWS(mc_l2_error([](std::span<const double>) { return 0.0; }, f, 1, 1.0, 0, 1));
}

TEST_CASE("covering bound worked example and limits") {
    CoveringParams prm;  // all magnitudes 1, L = d = k = 1, epsilon = 1/2, p = 2
    const double v = covering_bound_log(prm);
    CHECK(v == doctest::Approx(3.0 * std::log(4.0)).epsilon(1e-12));

    CoveringParams tighter = prm;
    tighter.epsilon = 0.25;
    CHECK(covering_bound_log(tighter) > v);

    CoveringParams smooth = prm;
    smooth.C = 2.0;
    smooth.k = 1000;  // high smoothness flattens the (C / eps)^(d/k) factor
    CHECK(covering_bound_log(smooth) ==
          doctest::Approx((std::pow(4.0, 1.0 / 1000.0) + 1.0) * std::log(4.0)).epsilon(1e-9));

    CoveringParams bad = prm;
    bad.epsilon = 2.0;
    CHECK_THROWS(covering_bound_log(bad));
    bad = prm;
    bad.B = 0.5;
    CHECK_THROWS(covering_bound_log(bad));
}

TEST_CASE("rate study produces the documented CSV shape deterministically") {
    ExperimentConfig cfg;
    cfg.target = "abs";
    cfg.planted = true;
    cfg.noise_std = 0.1;
    cfg.n_grid = {30, 60};
    cfg.repetitions = 2;
    cfg.t_n_override = 50;
    cfg.lambda_override = 0.02;
    cfg.r_override = 4;
    cfg.mc_points = 500;
    cfg.K_n = 2;
    cfg.seed = 9;

    const RateReport a = rate_study(cfg);
    const RateReport b = rate_study(cfg);
    const std::string csv_a = a.to_csv();
    CHECK(csv_a == b.to_csv());  // byte-identical reruns
    CHECK(csv_a.rfind("n,rep,seed,l2_error,stderr,wall_ms\n", 0) == 0);
    REQUIRE(a.cells.size() == 4);
    CHECK(a.n_values == std::vector<int>{30, 60});
    CHECK(a.theoretical_exponent == doctest::Approx(-2.0 / 3.0));
    for (const auto& cell : a.cells) {
        CHECK_FALSE(cell.failed);
        CHECK(cell.l2_error >= 0.0);
        CHECK(cell.seed == cfg.seed * 1000003ULL + static_cast<std::uint64_t>(cell.n) * 101ULL +
                               static_cast<std::uint64_t>(cell.rep));
    }
    // Two n values are not enough for a slope fit.
    CHECK_FALSE(a.fitted_slope.has_value());
}

TEST_CASE("slope fit on a flat error curve is zero, not degenerate") {
    ExperimentConfig cfg;
    cfg.target = "constant";
    cfg.noise_std = 0.0;
    cfg.n_grid = {10, 20, 40};
    cfg.repetitions = 1;
    cfg.t_n_override = 1;
    cfg.lambda_override = 0.0;  // no training: predictor stays identically zero
    cfg.mc_points = 200;
    cfg.K_n = 1;
    const RateReport report = rate_study(cfg);
    // Constant target, zero predictor: every cell has the same positive error, so
    // the fitted slope is (numerically) zero rather than degenerate.
    REQUIRE(report.fitted_slope.has_value());
    CHECK(std::abs(*report.fitted_slope) <= 1e-9);
    CHECK_FALSE(report.degenerate_slope);
}
