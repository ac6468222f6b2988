#include "parnet/estimator.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <stdexcept>

#include "parnet/network.hpp"

namespace parnet {

TheoremSchedule schedule_from_theorem(double p, double C, int d, int n, int K_n,
                                      const ScheduleConstants& constants) {
    if (n < 2) throw std::invalid_argument("schedule_from_theorem: n must be >= 2");
    if (K_n < 1) throw std::invalid_argument("schedule_from_theorem: K_n must be >= 1");
    TheoremSchedule s;
    s.p = p;
    s.C = C;
    s.d = d;
    s.n = n;
    s.K_n = K_n;
    s.c1 = constants.c1;
    s.c2 = constants.c2;
    s.c3 = constants.c3;
    s.c5 = constants.c5;
    s.c6 = constants.c6;
    s.theorem_applies = (p >= 0.5);
    // Largest integer q with p - q in (0, 1].
    s.q = static_cast<int>(std::ceil(p)) - 1;
    if (s.q < 0) s.q = 0;
    s.beta_smooth = p - s.q;
    s.L = static_cast<int>(std::ceil(std::log2(static_cast<double>(s.q + d)))) + 1;
    if (s.L < 1) s.L = 1;
    s.r = 2 * static_cast<int>(std::ceil((2.0 * p + d) * (2.0 * p + d)));
    s.tau = 1.0 / (2.0 * p + static_cast<double>(d));
    s.beta_n = s.c3 * std::log(static_cast<double>(n));
    const double K3 = static_cast<double>(K_n) * K_n * K_n;
    s.lambda_n = s.c5 / (static_cast<double>(n) * K3);
    s.t_n = static_cast<int>(std::ceil(s.c6 * K3 / s.beta_n));
    if (s.t_n < 1) s.t_n = 1;
    s.theoretical_K_exponent = 4.0 * s.r * (s.r + 1.0) * (s.L - 1.0) +
                               s.r * (4.0 * d + 6.0) + 6.0;
    return s;
}

WeightVector init_weights(const Topology& topology, const TheoremSchedule& schedule,
                          std::uint64_t seed) {
    if (topology.L != schedule.L && schedule.L >= 1 && topology.L < 1)
        throw std::invalid_argument("init_weights: inconsistent topology");
    WeightVector w(topology);
    std::mt19937_64 rng(seed);
    const double input_range = schedule.c2 * std::log(static_cast<double>(schedule.n)) *
                               std::pow(static_cast<double>(schedule.n), schedule.tau);
    std::uniform_real_distribution<double> u0(-input_range, input_range);
    std::uniform_real_distribution<double> uh(-schedule.c1, schedule.c1);
    for (std::size_t idx = 0; idx < w.size(); ++idx) {
        const WeightCoord c = w.coord_of(idx);
        if (c.l == topology.L) {
            w[idx] = 0.0;  // output layer starts at zero
        } else if (c.l == 0) {
            w[idx] = u0(rng);
        } else {
            w[idx] = uh(rng);
        }
    }
    return w;
}

WeightVector plant_oracle(const WeightVector& w0,
                          const std::vector<SubnetBlueprint>& blueprints, double epsilon,
                          std::uint64_t seed) {
    const Topology& topo = w0.topology();
    if (static_cast<int>(blueprints.size()) > topo.K)
        throw std::invalid_argument("plant_oracle: more blueprints than subnets");
    if (epsilon < 0.0) throw std::invalid_argument("plant_oracle: epsilon must be >= 0");
    WeightVector w = w0;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> noise(-epsilon, epsilon);
    for (std::size_t b = 0; b < blueprints.size(); ++b) {
        const Topology& bt = blueprints[b].weights.topology();
        if (bt.d != topo.d || bt.L != topo.L || bt.r > topo.r)
            throw std::invalid_argument("plant_oracle: blueprint does not fit topology");
        const int k = static_cast<int>(b);
        const WeightVector& bw = blueprints[b].weights;
        for (int i = 0; i < topo.r; ++i)
            for (int j = 0; j <= topo.d; ++j) {
                const double base = (i < bt.r) ? bw.at({0, 0, i, j}) : 0.0;
                w.at({k, 0, i, j}) = base + (epsilon > 0.0 ? noise(rng) : 0.0);
            }
        for (int l = 1; l < topo.L; ++l)
            for (int i = 0; i < topo.r; ++i)
                for (int j = 0; j <= topo.r; ++j) {
                    const double base =
                        (i < bt.r && j <= bt.r) ? bw.at({0, l, i, j}) : 0.0;
                    w.at({k, l, i, j}) = base + (epsilon > 0.0 ? noise(rng) : 0.0);
                }
        // Output weights stay at zero: the planting event constrains inner layers only.
    }
    return w;
}

FitReport fit(const Dataset& data, const TheoremSchedule& schedule, const FitMode& mode,
              std::uint64_t seed) {
    data.check();
    const auto start = std::chrono::steady_clock::now();
    const Topology topo = schedule.topology();
    WeightVector w0 = init_weights(topo, schedule, seed);
    if (mode.planted) w0 = plant_oracle(w0, mode.blueprints, mode.epsilon, seed + 1);
    GdConfig cfg;
    cfg.step_size = schedule.lambda_n;
    cfg.steps = schedule.t_n;
    cfg.truncation = schedule.beta_n;
    cfg.seed = seed;
    FitReport report;
    report.schedule = schedule;
    report.trace = run_gd(w0, data, cfg);
    report.final_weights = report.trace.final_weights;
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

double predict(const FitReport& report, std::span<const double> x) {
    return truncate(forward(report.final_weights, x), report.schedule.beta_n);
}

}  // namespace parnet
