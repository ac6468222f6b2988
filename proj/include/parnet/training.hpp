#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "parnet/topology.hpp"

namespace parnet {

struct Dataset {
    std::vector<std::vector<double>> xs;
    std::vector<double> ys;

    std::size_t size() const { return xs.size(); }
    int dimension() const { return xs.empty() ? 0 : static_cast<int>(xs.front().size()); }

    void check() const;
};

struct BallProjection {
    WeightVector center;
    double radius = 0.0;
};

struct GdConfig {
    double step_size = 0.0;       // lambda_n
    int steps = 0;                // t_n
    std::optional<BallProjection> projection;
    double truncation = 1.0;      // beta_n
    std::uint64_t seed = 0;
};

struct DescentTrace {
    std::vector<double> risk;    // F_n(w^(t)), t = 0..t_n
    std::vector<double> drift;   // ||w^(t) - w^(0)||
    WeightVector final_weights;
};

// Mean squared residual (1/n) sum |Y_i - f_w(X_i)|^2.
double empirical_risk(const WeightVector& w, const Dataset& data);

// Exact gradient of the empirical L2 risk by backpropagation.
WeightVector gradient(const WeightVector& w, const Dataset& data);

// Euclidean projection onto the closed ball around center.
WeightVector project_ball(const WeightVector& w, const WeightVector& center, double radius);

// Plain gradient descent; applies the ball projection after each step when configured.
// Throws std::runtime_error when the risk becomes non-finite.
DescentTrace run_gd(const WeightVector& w0, const Dataset& data, const GdConfig& cfg);

// Clamp to [-beta, beta].
double truncate(double z, double beta);

// Empirical curvature constants over random weight pairs in the ball around w_center:
//   C_est: max over pairs and data points of ||grad_w f_{w1}(x) - grad_w f_{w2}(x)|| / ||w1-w2||
//   D_est: max risk-gradient norm
//   L_est: max risk-gradient Lipschitz ratio
struct LipschitzEstimates {
    double C_est = 0.0;
    double D_est = 0.0;
    double L_est = 0.0;
};

LipschitzEstimates lipschitz_probe(const WeightVector& w_center, const Dataset& data,
                                   double radius, int samples, std::uint64_t seed = 1);

struct RiskBoundVerdict {
    bool preconditions_ok = false;
    std::string precondition_failure;
    double lhs = 0.0;  // min_t F_n(w^(t))
    double rhs = 0.0;
    double C_n = 0.0;
    double D_n = 0.0;
    bool holds = false;
};

// Runs projected GD and checks
//   min_t F_n(w^(t)) <= F_n(w*) + ||w*-w0||^2/(2 lambda t) + 12 beta C delta^2 + lambda D^2 / 2
// with C_n, D_n taken from lipschitz_probe over the configured ball.
RiskBoundVerdict verify_risk_bound(const WeightVector& w0, const WeightVector& w_star,
                            const Dataset& data, const GdConfig& cfg);

struct DerivBoundVerdict {
    double sample_max = 0.0;
    double certified_bound = 0.0;
    bool holds = false;
};

// First-order input-derivative bound: certifies sup_x ||grad_x f_w(x)||_inf layer by
// layer (each layer contributes a |weight|-weighted sum times sup|sigma'| = 1/4) and
// compares against finite-difference samples on a uniform grid over [-a, a]^d.
DerivBoundVerdict verify_derivative_bound(const WeightVector& w, double a, int grid);

}  // namespace parnet
