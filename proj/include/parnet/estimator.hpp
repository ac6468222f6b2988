#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "parnet/construct.hpp"
#include "parnet/topology.hpp"
#include "parnet/training.hpp"

namespace parnet {

// Hyperparameter schedule of the main estimator. All formulas are applied
// literally with natural logarithms; K_n stays a user knob because the required
// theoretical lower bound is far beyond desk scale (the exponent is recorded).
struct TheoremSchedule {
    double p = 1.0;
    double C = 1.0;
    int d = 1;
    int n = 2;
    int K_n = 1;

    int q = 0;
    double beta_smooth = 1.0;  // p = q + beta_smooth
    int L = 1;
    int r = 1;
    double tau = 0.0;
    double beta_n = 1.0;   // truncation level c3 * ln n
    double lambda_n = 0.0;
    int t_n = 1;
    double theoretical_K_exponent = 0.0;  // 4 r (r+1) (L-1) + r (4d+6) + 6
    bool theorem_applies = true;          // false when p < 1/2

    // configurable constants
    double c1 = 1.0, c2 = 1.0, c3 = 1.0, c5 = 1.0, c6 = 1.0;

    Topology topology() const { return Topology(d, K_n, L, r); }
};

struct ScheduleConstants {
    double c1 = 1.0;
    double c2 = 1.0;
    double c3 = 10.0 / std::log(10.0);
    double c5 = 1.0;
    double c6 = 1.0;
};

TheoremSchedule schedule_from_theorem(double p, double C, int d, int n, int K_n,
                                      const ScheduleConstants& constants = {});

// Random initialization: output weights exactly zero, hidden layers uniform on
// [-c1, c1], input layer uniform on [-c2 ln(n) n^tau, c2 ln(n) n^tau].
WeightVector init_weights(const Topology& topology, const TheoremSchedule& schedule,
                          std::uint64_t seed);

// Overwrites the inner weights of the first blueprints.size() subnets with the
// blueprint inner weights plus independent uniform noise on [-epsilon, epsilon].
// Output weights stay zero.
WeightVector plant_oracle(const WeightVector& w0,
                          const std::vector<SubnetBlueprint>& blueprints, double epsilon,
                          std::uint64_t seed = 99);

struct FitMode {
    bool planted = false;
    std::vector<SubnetBlueprint> blueprints;
    double epsilon = 0.0;
};

struct FitReport {
    TheoremSchedule schedule;
    DescentTrace trace;
    double wall_seconds = 0.0;
    WeightVector final_weights;
};

FitReport fit(const Dataset& data, const TheoremSchedule& schedule, const FitMode& mode,
              std::uint64_t seed);

// Truncated prediction of the fitted network: T_{beta_n} f_w(x).
double predict(const FitReport& report, std::span<const double> x);

}  // namespace parnet
