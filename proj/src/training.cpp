#include "parnet/training.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "parnet/network.hpp"

namespace parnet {

void Dataset::check() const {
    if (xs.empty()) throw std::invalid_argument("Dataset: empty");
    if (xs.size() != ys.size()) throw std::invalid_argument("Dataset: xs/ys length mismatch");
    const std::size_t d = xs.front().size();
    for (const auto& x : xs)
        if (x.size() != d) throw std::invalid_argument("Dataset: inconsistent dimensions");
}

double empirical_risk(const WeightVector& w, const Dataset& data) {
    data.check();
    double sum = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const double res = data.ys[i] - forward(w, data.xs[i]);
        sum += res * res;
    }
    return sum / static_cast<double>(data.size());
}

WeightVector gradient(const WeightVector& w, const Dataset& data) {
    data.check();
    WeightVector grad(w.topology());
    const double n = static_cast<double>(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        const ActivationTensor units = forward_units(w, data.xs[i]);
        const double res = forward(w, data.xs[i], units) - data.ys[i];
        accumulate_network_gradient(w, data.xs[i], units, 2.0 * res / n, grad.values());
    }
    return grad;
}

WeightVector project_ball(const WeightVector& w, const WeightVector& center, double radius) {
    if (radius < 0.0) throw std::invalid_argument("project_ball: radius must be >= 0");
    const double dist = w.distance(center);
    if (dist <= radius) return w;
    WeightVector out(w.topology());
    const double scale = radius / dist;
    for (std::size_t i = 0; i < w.size(); ++i)
        out[i] = center[i] + scale * (w[i] - center[i]);
    return out;
}

DescentTrace run_gd(const WeightVector& w0, const Dataset& data, const GdConfig& cfg) {
    if (cfg.step_size < 0.0) throw std::invalid_argument("run_gd: negative step size");
    if (cfg.steps < 0) throw std::invalid_argument("run_gd: negative step count");
    DescentTrace trace;
    trace.risk.reserve(static_cast<std::size_t>(cfg.steps) + 1);
    trace.drift.reserve(static_cast<std::size_t>(cfg.steps) + 1);
    WeightVector w = w0;
    double risk = empirical_risk(w, data);
    trace.risk.push_back(risk);
    trace.drift.push_back(0.0);
    for (int t = 1; t <= cfg.steps; ++t) {
        const WeightVector g = gradient(w, data);
        for (std::size_t i = 0; i < w.size(); ++i) w[i] -= cfg.step_size * g[i];
        if (cfg.projection)
            w = project_ball(w, cfg.projection->center, cfg.projection->radius);
        risk = empirical_risk(w, data);
        if (!std::isfinite(risk))
            throw std::runtime_error("run_gd: non-finite risk at step " + std::to_string(t) +
                                     " (step size too large?)");
        trace.risk.push_back(risk);
        trace.drift.push_back(w.distance(w0));
    }
    trace.final_weights = std::move(w);
    return trace;
}

double truncate(double z, double beta) {
    if (beta <= 0.0) throw std::invalid_argument("truncate: beta must be > 0");
    return std::max(std::min(z, beta), -beta);
}

namespace {

WeightVector sample_in_ball(const WeightVector& center, double radius, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    WeightVector w = center;
    std::vector<double> dir(center.size());
    double norm2 = 0.0;
    for (auto& v : dir) {
        v = gauss(rng);
        norm2 += v * v;
    }
    const double norm = std::sqrt(norm2);
    if (norm == 0.0) return w;
    const double scale = radius * unif(rng) / norm;
    for (std::size_t i = 0; i < w.size(); ++i) w[i] += scale * dir[i];
    return w;
}

double vec_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = a[i] - b[i];
        s += diff * diff;
    }
    return std::sqrt(s);
}

}  // namespace

LipschitzEstimates lipschitz_probe(const WeightVector& w_center, const Dataset& data,
                                   double radius, int samples, std::uint64_t seed) {
    if (radius <= 0.0) throw std::invalid_argument("lipschitz_probe: radius must be > 0");
    if (samples < 2) throw std::invalid_argument("lipschitz_probe: need at least 2 samples");
    data.check();
    std::mt19937_64 rng(seed);
    LipschitzEstimates est;
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int s = 0; s < samples; ++s) {
        WeightVector w1 = sample_in_ball(w_center, radius, rng);
        WeightVector w2 = w1;
        if (s % 2 == 0) {
            // Close pair along the local risk-gradient direction: descent moves
            // this way, and far-apart secants systematically understate the
            // curvature it encounters.
            std::vector<double> dir = gradient(w1, data).values();
            double norm2 = 0.0;
            for (double v : dir) norm2 += v * v;
            double norm = std::sqrt(norm2);
            if (norm == 0.0) {
                for (auto& v : dir) {
                    v = gauss(rng);
                    norm2 += v * v;
                }
                norm = std::sqrt(norm2);
            }
            if (norm > 0.0) {
                const double eps = 1e-3 * radius / norm;
                for (std::size_t i = 0; i < w2.size(); ++i) w2[i] += eps * dir[i];
            }
        } else {
            w2 = sample_in_ball(w_center, radius, rng);
        }
        double dist = w1.distance(w2);
        int attempts = 0;
        while (dist == 0.0 && attempts++ < 100) {
            w2 = sample_in_ball(w_center, radius, rng);
            dist = w1.distance(w2);
        }
        if (dist == 0.0) continue;
        for (std::size_t i = 0; i < data.size(); ++i) {
            const auto g1 = network_gradient(w1, data.xs[i]);
            const auto g2 = network_gradient(w2, data.xs[i]);
            est.C_est = std::max(est.C_est, vec_distance(g1, g2) / dist);
        }
        const WeightVector rg1 = gradient(w1, data);
        const WeightVector rg2 = gradient(w2, data);
        est.D_est = std::max({est.D_est, rg1.norm(), rg2.norm()});
        est.L_est = std::max(est.L_est, vec_distance(rg1.values(), rg2.values()) / dist);
    }
    return est;
}

RiskBoundVerdict verify_risk_bound(const WeightVector& w0, const WeightVector& w_star,
                            const Dataset& data, const GdConfig& cfg) {
    RiskBoundVerdict v;
    if (!cfg.projection) {
        v.precondition_failure = "projection ball not configured";
        return v;
    }
    const double delta = cfg.projection->radius;
    const double beta = cfg.truncation;
    if (w_star.distance(cfg.projection->center) > delta * (1.0 + 1e-12) + 1e-15) {
        v.precondition_failure = "w_star outside the projection ball";
        return v;
    }
    if (beta < 1.0) {
        v.precondition_failure = "beta_n must be >= 1";
        return v;
    }
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (std::abs(data.ys[i]) > beta) {
            v.precondition_failure = "|Y_i| exceeds beta_n";
            return v;
        }
        if (std::abs(forward(w_star, data.xs[i])) > beta) {
            v.precondition_failure = "|f_{w*}(X_i)| exceeds beta_n";
            return v;
        }
    }
    const auto est = lipschitz_probe(cfg.projection->center, data,
                                     std::max(delta, 1e-8), 50, cfg.seed + 17);
    v.C_n = est.C_est;
    v.D_n = est.D_est;
    if (v.C_n * delta * delta > 1.0) {
        v.precondition_failure = "C_n * delta_n^2 > 1";
        return v;
    }
    v.preconditions_ok = true;
    const DescentTrace trace = run_gd(w0, data, cfg);
    // min over t = 0..t_n-1, matching the statement.
    double lhs = trace.risk.front();
    for (int t = 0; t < cfg.steps && t < static_cast<int>(trace.risk.size()); ++t)
        lhs = std::min(lhs, trace.risk[static_cast<std::size_t>(t)]);
    v.lhs = lhs;
    const double dist0 = w_star.distance(w0);
    v.rhs = empirical_risk(w_star, data) +
            dist0 * dist0 / (2.0 * cfg.step_size * static_cast<double>(std::max(cfg.steps, 1))) +
            12.0 * beta * v.C_n * delta * delta + 0.5 * cfg.step_size * v.D_n * v.D_n;
    v.holds = v.lhs <= v.rhs + 1e-9;
    return v;
}

DerivBoundVerdict verify_derivative_bound(const WeightVector& w, double a, int grid) {
    const Topology& t = w.topology();
    DerivBoundVerdict v;
    // Certified per-component bound b[i][s] >= sup_x |d f^{(l)}_{k,i} / d x_s|,
    // propagated layer by layer with sup|sigma'| = 1/4.
    double total = 0.0;
    std::vector<double> component_bound(static_cast<std::size_t>(t.d), 0.0);
    for (int k = 0; k < t.K; ++k) {
        std::vector<std::vector<double>> b(static_cast<std::size_t>(t.r),
                                           std::vector<double>(static_cast<std::size_t>(t.d), 0.0));
        for (int i = 0; i < t.r; ++i)
            for (int s = 0; s < t.d; ++s)
                b[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)] =
                    0.25 * std::abs(w.at({k, 0, i, s + 1}));
        for (int l = 2; l <= t.L; ++l) {
            std::vector<std::vector<double>> nb(static_cast<std::size_t>(t.r),
                                                std::vector<double>(static_cast<std::size_t>(t.d), 0.0));
            for (int i = 0; i < t.r; ++i)
                for (int s = 0; s < t.d; ++s) {
                    double sum = 0.0;
                    for (int j = 0; j < t.r; ++j)
                        sum += std::abs(w.at({k, l - 1, i, j + 1})) *
                               b[static_cast<std::size_t>(j)][static_cast<std::size_t>(s)];
                    nb[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)] = 0.25 * sum;
                }
            b = std::move(nb);
        }
        const double w_out = std::abs(w.output_weight(k));
        for (int s = 0; s < t.d; ++s)
            component_bound[static_cast<std::size_t>(s)] += w_out * b[0][static_cast<std::size_t>(s)];
    }
    for (double cb : component_bound) total = std::max(total, cb);
    v.certified_bound = total;

    // Finite-difference sampling over a uniform grid in [-a, a]^d.
    const int g = std::max(grid, 2);
    const double h = 1e-6;
    std::vector<int> idx(static_cast<std::size_t>(t.d), 0);
    std::vector<double> x(static_cast<std::size_t>(t.d), 0.0);
    bool done = false;
    while (!done) {
        for (int s = 0; s < t.d; ++s)
            x[static_cast<std::size_t>(s)] =
                -a + 2.0 * a * static_cast<double>(idx[static_cast<std::size_t>(s)]) / (g - 1);
        for (int s = 0; s < t.d; ++s) {
            std::vector<double> xp = x, xm = x;
            xp[static_cast<std::size_t>(s)] += h;
            xm[static_cast<std::size_t>(s)] -= h;
            const double fd = (forward(w, xp) - forward(w, xm)) / (2.0 * h);
            v.sample_max = std::max(v.sample_max, std::abs(fd));
        }
        done = true;
        for (int s = 0; s < t.d; ++s) {
            if (++idx[static_cast<std::size_t>(s)] < g) {
                done = false;
                break;
            }
            idx[static_cast<std::size_t>(s)] = 0;
        }
    }
    v.holds = v.sample_max <= v.certified_bound + 1e-9;
    return v;
}

}  // namespace parnet
