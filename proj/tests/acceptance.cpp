// End-to-end acceptance harness: one line per criterion, exit 0 iff all pass.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "parnet/experiments.hpp"
#include "parnet/verify.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

bool find_pass(const std::vector<parnet::CheckResult>& results, const std::string& prefix,
               std::string& detail) {
    bool found = false, ok = true;
    for (const auto& r : results) {
        if (r.name.rfind(prefix, 0) == 0) {
            found = true;
            if (!r.pass) {
                ok = false;
                detail += (detail.empty() ? "" : "; ") + r.name + " measured=" +
                          std::to_string(r.measured);
            }
        }
    }
    if (!found) {
        ok = false;
        detail += (detail.empty() ? "" : "; ") + prefix + ": check missing";
    }
    return ok;
}

int failures = 0;

void report(int idx, const std::string& what, bool pass, double elapsed, double limit,
            const std::string& detail) {
    bool ok = pass;
    std::string note = detail;
    if (limit > 0.0 && elapsed > limit) {
        ok = false;
        note += (note.empty() ? "" : "; ") + std::string("runtime ") +
                std::to_string(elapsed) + "s exceeds " + std::to_string(limit) + "s";
    }
    if (!ok) ++failures;
    std::printf("%s  [%2d] %s  (%.1fs)%s%s\n", ok ? "PASS" : "FAIL", idx, what.c_str(),
                elapsed, note.empty() ? "" : "  -- ", note.c_str());
    std::fflush(stdout);
}

}  // namespace

int main() {
    const std::uint64_t seed = 1;

    auto t0 = Clock::now();
    const auto opt = parnet::run_opt_suite(seed);
    const double opt_s = seconds_since(t0);

    t0 = Clock::now();
    const auto approx = parnet::run_approx_suite(seed);
    const double approx_s = seconds_since(t0);

    t0 = Clock::now();
    const auto deriv = parnet::run_derivbound_suite(seed);
    const double deriv_s = seconds_since(t0);

    std::string d;
    d.clear();
    report(1, "analytic risk gradient matches central finite differences on 50 instances",
           find_pass(opt, "opt.gradient_vs_finite_differences", d), opt_s, 10.0, d);
    d.clear();
    report(2, "descent with step 1/L_est: risk non-increasing and drift within bound",
           find_pass(opt, "opt.descent_risk_monotone", d) &
               find_pass(opt, "opt.descent_drift_bound", d),
           opt_s, 30.0, d);
    d.clear();
    report(3, "projected-descent risk inequality holds on 10 precondition-checked instances",
           find_pass(opt, "opt.projected_descent_risk_bound", d), opt_s, 60.0, d);
    d.clear();
    report(4, "monomial block sup error scales as A^N with small absolute error",
           find_pass(approx, "approx.monomial_", d), approx_s, 5.0, d);
    d.clear();
    report(5, "pairwise and d-ary multiplier blocks obey the A^N scaling window",
           find_pass(approx, "approx.mult2_", d) & find_pass(approx, "approx.product_tree_", d),
           approx_s, 10.0, d);
    d.clear();
    report(6, "piecewise expansion exact at corners and on polynomial targets",
           find_pass(approx, "approx.corner_identity", d) &
               find_pass(approx, "approx.polynomial_exact", d),
           approx_s, 0.0, d);
    d.clear();
    report(7, "smoothed-vs-piecewise gap halves at rate 2^-p when K doubles",
           find_pass(approx, "approx.smoothing_gap_decay_", d), approx_s, 60.0, d);
    d.clear();
    report(8, "assembled sin(2x) network sup error decays at rate K^-p from K=4 to K=8",
           find_pass(approx, "approx.assembly_", d), approx_s, 120.0, d);
    d.clear();
    report(9, "sampled input gradients never exceed the certified inductive bound",
           find_pass(deriv, "derivbound.", d), deriv_s, 0.0, d);

    // Directional convergence-rate study on the Lipschitz |x| target, planted mode.
    parnet::ExperimentConfig rate_cfg;
    rate_cfg.target = "abs";
    rate_cfg.planted = true;
    rate_cfg.noise_std = 0.1;
    rate_cfg.n_grid = {50, 100, 200, 400, 800, 1600, 3200};
    rate_cfg.repetitions = 10;
    rate_cfg.t_n_override = 1500;
    rate_cfg.lambda_override = 0.02;
    rate_cfg.r_override = 4;
    rate_cfg.plant_epsilon = 1e-4;
    rate_cfg.mc_points = 10000;
    rate_cfg.K_n = 2;
    rate_cfg.seed = 3;

    t0 = Clock::now();
    const parnet::RateReport rate = parnet::rate_study(rate_cfg);
    const double rate_s = seconds_since(t0);
    d.clear();
    bool rate_ok = true;
    for (int f : rate.failed_cells)
        if (f > 0) {
            rate_ok = false;
            d += (d.empty() ? "" : "; ") + std::string("diverged cells present");
            break;
        }
    if (!rate.fitted_slope) {
        rate_ok = false;
        d += (d.empty() ? "" : "; ") + std::string("no slope fitted");
    } else if (*rate.fitted_slope >= 0.0) {
        rate_ok = false;
        d += (d.empty() ? "" : "; ") + std::string("slope ") + std::to_string(*rate.fitted_slope) +
             " not negative";
    }
    if (!rate.mean_error.empty() &&
        !(rate.mean_error.back() < 0.5 * rate.mean_error.front())) {
        rate_ok = false;
        d += (d.empty() ? "" : "; ") + std::string("error at n=3200 not below half of n=50");
    }
    if (rate.fitted_slope)
        d += (d.empty() ? "" : "; ") + std::string("slope=") + std::to_string(*rate.fitted_slope) +
             " (reference -2/3, reported only)";
    report(10, "planted rate study: negative slope, error(n=3200) < error(n=50)/2", rate_ok,
           rate_s, 900.0, d);

    // Determinism: identical config and seed must reproduce the CSV byte for byte.
    parnet::ExperimentConfig det_cfg = rate_cfg;
    det_cfg.n_grid = {30, 60};
    det_cfg.repetitions = 2;
    det_cfg.t_n_override = 50;
    det_cfg.mc_points = 500;
    t0 = Clock::now();
    const std::string csv_a = parnet::rate_study(det_cfg).to_csv();
    const std::string csv_b = parnet::rate_study(det_cfg).to_csv();
    d = (csv_a == csv_b) ? "" : "CSV outputs differ between reruns";
    report(11, "rerunning the rate study with one config and seed is byte-identical",
           csv_a == csv_b, seconds_since(t0), 0.0, d);

    return failures == 0 ? 0 : 1;
}
