#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "parnet/estimator.hpp"
#include "parnet/smooth_target.hpp"
#include "parnet/training.hpp"

namespace parnet {

struct ExperimentConfig {
    std::string target = "sin2x";  // fixture target id, declares (p, C, d)
    double half_width = 1.0;       // X uniform on [-A, A]^d
    double noise_std = 0.1;        // Gaussian noise (sub-Gaussian moment condition holds)
    std::vector<int> n_grid;       // strictly increasing sample sizes
    int repetitions = 1;
    bool planted = false;
    double plant_epsilon = 1e-4;
    std::uint64_t seed = 1;
    int mc_points = 10000;         // Monte Carlo points for the L2 error
    int K_n = 8;                   // subnet count; in planted mode grown to fit blueprints
    double kcells_scale = 1.0;     // K_cells = ceil(kcells_scale * n^(1/(2p+d)))
    ScheduleConstants constants;
    std::optional<int> t_n_override;
    std::optional<double> lambda_override;
    std::optional<int> r_override;  // width knob; never below the assembly minimum
    std::string output_path;       // CSV destination ("" = stdout only)

    void check() const;
};

Dataset generate_data(const ExperimentConfig& cfg, const SmoothTarget& target, int n,
                      std::uint64_t rep_seed);

struct McEstimate {
    double value = 0.0;
    double standard_error = 0.0;
};

// Monte Carlo estimate of the integrated squared error between a predictor and the
// target over the uniform law on [-A, A]^d.
McEstimate mc_l2_error(const std::function<double(std::span<const double>)>& predictor,
                       const SmoothTarget& target, int d, double A, int M_eval,
                       std::uint64_t seed);

struct RateCell {
    int n = 0;
    int rep = 0;
    std::uint64_t seed = 0;
    double l2_error = 0.0;
    double stderr_mc = 0.0;
    double wall_ms = 0.0;
    bool failed = false;
    std::string failure;
};

struct RateReport {
    std::vector<RateCell> cells;
    std::vector<int> n_values;
    std::vector<double> mean_error;     // per n, over successful reps
    std::vector<double> stderr_mean;    // standard error of that mean
    std::vector<int> failed_cells;      // per n
    std::optional<double> fitted_slope; // OLS on (ln n, ln mean error)
    double theoretical_exponent = 0.0;  // -2p/(2p+d)
    bool degenerate_slope = false;      // all errors ~ 0

    std::string to_csv() const;
    std::string summary_json() const;
};

RateReport rate_study(const ExperimentConfig& cfg);

// Log of the covering-number bound
//   (c81 beta^p / eps^p) ^ (c82 alpha^d B^((L-1)d) A^d (C/eps)^(d/k) + c83).
struct CoveringParams {
    double alpha = 1.0, beta = 1.0;
    double A = 1.0, B = 1.0, C = 1.0;
    int L = 1, d = 1, k = 1;
    double epsilon = 0.5;
    double p_norm = 2.0;
    double c81 = 1.0, c82 = 1.0, c83 = 1.0;
};

double covering_bound_log(const CoveringParams& params);

}  // namespace parnet
