#include <cmath>
#include <random>

#include "doctest.h"
#include "parnet/construct.hpp"
#include "parnet/estimator.hpp"
#include "parnet/experiments.hpp"
#include "parnet/network.hpp"

using namespace parnet;

TEST_CASE("hyperparameter schedule worked examples") {
    SUBCASE("p = 2, d = 1") {
        const TheoremSchedule s = schedule_from_theorem(2.0, 8.0, 1, 100, 4);
        CHECK(s.q == 1);
        CHECK(s.beta_smooth == doctest::Approx(1.0));
        CHECK(s.L == 2);
        CHECK(s.r == 50);
        CHECK(s.tau == doctest::Approx(0.2));
        CHECK(s.theorem_applies);
    }
    SUBCASE("p = 1/2, d = 1") {
        const TheoremSchedule s = schedule_from_theorem(0.5, 1.0, 1, 100, 4);
        CHECK(s.q == 0);
        CHECK(s.L == 1);
        CHECK(s.r == 8);
        CHECK(s.tau == doctest::Approx(0.5));
        CHECK(s.theorem_applies);
    }
    SUBCASE("p = 1, d = 2") {
        const TheoremSchedule s = schedule_from_theorem(1.0, 1.0, 2, 100, 4);
        CHECK(s.q == 0);
        CHECK(s.L == 2);
        CHECK(s.r == 32);
        CHECK(s.tau == doctest::Approx(0.25));
    }
    SUBCASE("below the smoothness threshold the guarantee is withdrawn") {
        const TheoremSchedule s = schedule_from_theorem(0.4, 1.0, 1, 100, 4);
        CHECK_FALSE(s.theorem_applies);
    }
    SUBCASE("sample-size dependent quantities") {
        ScheduleConstants c;
        c.c3 = 2.0;
        c.c5 = 3.0;
        c.c6 = 5.0;
        const int n = 200, K = 4;
        const TheoremSchedule s = schedule_from_theorem(2.0, 8.0, 1, n, K, c);
        CHECK(s.beta_n == doctest::Approx(2.0 * std::log(200.0)));
        CHECK(s.lambda_n == doctest::Approx(3.0 / (200.0 * 64.0)));
        CHECK(s.t_n == static_cast<int>(std::ceil(5.0 * 64.0 / s.beta_n)));
        CHECK(s.theoretical_K_exponent ==
              doctest::Approx(4.0 * 50 * 51 * 1 + 50 * 10 + 6));
    }
    SUBCASE("invalid arguments are rejected") {
        CHECK_THROWS(schedule_from_theorem(2.0, 8.0, 1, 1, 4));
        CHECK_THROWS(schedule_from_theorem(2.0, 8.0, 1, 100, 0));
    }
}

TEST_CASE("initial weights respect the layer-wise ranges and start silent") {
    const TheoremSchedule s = schedule_from_theorem(2.0, 8.0, 1, 100, 3);
    const Topology topo = s.topology();
    const WeightVector w = init_weights(topo, s, 42);
    const double input_range = s.c2 * std::log(100.0) * std::pow(100.0, s.tau);
    for (std::size_t i = 0; i < w.size(); ++i) {
        const WeightCoord c = w.coord_of(i);
        if (c.l == topo.L)
            CHECK(w[i] == 0.0);
        else if (c.l == 0)
            CHECK(std::abs(w[i]) <= input_range);
        else
            CHECK(std::abs(w[i]) <= s.c1);
    }
    const std::vector<double> x{0.4};
    CHECK(forward(w, x) == 0.0);  // zero output layer silences the network

    const WeightVector w2 = init_weights(topo, s, 42);
    for (std::size_t i = 0; i < w.size(); ++i) CHECK(w[i] == w2[i]);
    const WeightVector w3 = init_weights(topo, s, 43);
    bool any_diff = false;
    for (std::size_t i = 0; i < w.size(); ++i) any_diff = any_diff || (w[i] != w3[i]);
    CHECK(any_diff);
}

TEST_CASE("noise-free planting copies blueprint inner weights exactly") {
    const SmoothTarget f = make_target("sin2x");
    const auto req = assembly_requirements(f, 2, 4);
    const auto blueprints = assemble_taylor_net(f, 2, req.min_depth, req.min_width, 4);
    REQUIRE_FALSE(blueprints.empty());

    TheoremSchedule s = schedule_from_theorem(2.0, 8.0, 1, 100, static_cast<int>(blueprints.size()));
    s.L = blueprints[0].weights.topology().L;
    s.r = blueprints[0].weights.topology().r;
    const Topology topo = s.topology();
    const WeightVector w0 = init_weights(topo, s, 7);
    const WeightVector w = plant_oracle(w0, blueprints, 0.0);

    for (std::size_t b = 0; b < blueprints.size(); ++b) {
        const WeightVector& bw = blueprints[b].weights;
        const int k = static_cast<int>(b);
        for (int l = 0; l < topo.L; ++l) {
            const int fan_in = (l == 0) ? topo.d : topo.r;
            for (int i = 0; i < topo.r; ++i)
                for (int j = 0; j <= fan_in; ++j)
                    CHECK(w.at({k, l, i, j}) == bw.at({0, l, i, j}));
        }
        CHECK(w.output_weight(k) == 0.0);
    }
    const std::vector<double> x{0.2};
    CHECK(forward(w, x) == 0.0);
}

TEST_CASE("planting rejects oversized blueprint lists") {
    const SmoothTarget f = make_target("sin2x");
    const auto req = assembly_requirements(f, 2, 4);
    const auto blueprints = assemble_taylor_net(f, 2, req.min_depth, req.min_width, 4);
    const Topology topo(1, 1, blueprints[0].weights.topology().L,
                        blueprints[0].weights.topology().r);
    REQUIRE(blueprints.size() > 1);
    WeightVector w0(topo);
    CHECK_THROWS(plant_oracle(w0, blueprints, 0.0));
}

TEST_CASE("fit leaves the zero optimum alone when responses vanish") {
    TheoremSchedule s = schedule_from_theorem(2.0, 8.0, 1, 20, 2);
    s.r = 3;
    s.t_n = 10;
    Dataset data;
    std::mt19937_64 rng(311);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 20; ++i) {
        data.xs.push_back({u(rng)});
        data.ys.push_back(0.0);
    }
    const FitReport report = fit(data, s, FitMode{}, 5);
    // Output weights start at zero, the network output is identically zero, and
    // with zero responses the gradient vanishes: the risk stays at its optimum 0.
    for (double r : report.trace.risk) CHECK(r == 0.0);
}

TEST_CASE("planted descent reduces the empirical risk substantially") {
    const SmoothTarget f = make_target("sin2x");
    const int K_cells = 2, N = 4;
    const auto req = assembly_requirements(f, K_cells, N);
    TheoremSchedule s = schedule_from_theorem(f.p, f.C, f.d, 60, 2);
    if (s.L < req.min_depth) s.L = req.min_depth;
    s.r = req.min_width;
    FitMode mode;
    mode.planted = true;
    mode.blueprints = assemble_taylor_net(f, K_cells, s.L, s.r, N);
    mode.epsilon = 1e-4;
    if (static_cast<int>(mode.blueprints.size()) > s.K_n)
        s.K_n = static_cast<int>(mode.blueprints.size());
    s.t_n = 400;
    s.lambda_n = 0.02;

    ExperimentConfig cfg;
    cfg.noise_std = 0.0;
    const Dataset data = generate_data(cfg, f, 60, 2024);
    const FitReport report = fit(data, s, mode, 9);
    CHECK(report.trace.risk.back() < 0.5 * report.trace.risk.front());
    CHECK(report.wall_seconds >= 0.0);
}

TEST_CASE("prediction is truncated at the configured level") {
    const Topology topo(1, 1, 1, 1);
    TheoremSchedule s;
    s.beta_n = 0.4;
    FitReport report;
    report.schedule = s;
    WeightVector w(topo);
    w.output_weight(0) = 10.0;  // raw output 10 * sigmoid(0) = 5
    report.final_weights = w;
    const std::vector<double> x{0.0};
    CHECK(predict(report, x) == doctest::Approx(0.4));
    w.output_weight(0) = -10.0;
    report.final_weights = w;
    CHECK(predict(report, x) == doctest::Approx(-0.4));
    w.output_weight(0) = 0.2;
    report.final_weights = w;
    CHECK(predict(report, x) == doctest::Approx(0.1));
}
