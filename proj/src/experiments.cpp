#include "parnet/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <thread>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "parnet/network.hpp"

namespace parnet {

void ExperimentConfig::check() const {
    if (n_grid.empty()) throw std::invalid_argument("ExperimentConfig: empty n grid");
    for (std::size_t i = 1; i < n_grid.size(); ++i)
        if (n_grid[i] <= n_grid[i - 1])
            throw std::invalid_argument("ExperimentConfig: n grid must be strictly increasing");
    if (repetitions < 1) throw std::invalid_argument("ExperimentConfig: repetitions must be >= 1");
    if (noise_std < 0.0) throw std::invalid_argument("ExperimentConfig: noise std must be >= 0");
}

Dataset generate_data(const ExperimentConfig& cfg, const SmoothTarget& target, int n,
                      std::uint64_t rep_seed) {
    Dataset data;
    data.xs.reserve(static_cast<std::size_t>(n));
    data.ys.reserve(static_cast<std::size_t>(n));
    std::mt19937_64 rng(rep_seed);
    std::uniform_real_distribution<double> ux(-cfg.half_width, cfg.half_width);
    std::normal_distribution<double> noise(0.0, 1.0);
    for (int i = 0; i < n; ++i) {
        std::vector<double> x(static_cast<std::size_t>(target.d));
        for (auto& v : x) v = ux(rng);
        const double y = target.evaluate(x) + (cfg.noise_std > 0.0 ? cfg.noise_std * noise(rng) : 0.0);
        data.xs.push_back(std::move(x));
        data.ys.push_back(y);
    }
    return data;
}

McEstimate mc_l2_error(const std::function<double(std::span<const double>)>& predictor,
                       const SmoothTarget& target, int d, double A, int M_eval,
                       std::uint64_t seed) {
    if (M_eval < 1) throw std::invalid_argument("mc_l2_error: M_eval must be >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(-A, A);
    double sum = 0.0, sum2 = 0.0;
    std::vector<double> x(static_cast<std::size_t>(d));
    for (int i = 0; i < M_eval; ++i) {
        for (auto& v : x) v = ux(rng);
        const double diff = predictor(x) - target.evaluate(x);
        const double sq = diff * diff;
        sum += sq;
        sum2 += sq * sq;
    }
    McEstimate est;
    const double m = static_cast<double>(M_eval);
    est.value = sum / m;
    const double var = std::max(0.0, sum2 / m - est.value * est.value);
    est.standard_error = std::sqrt(var / m);
    return est;
}

namespace {

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

std::string RateReport::to_csv() const {
    std::ostringstream os;
    os << "n,rep,seed,l2_error,stderr,wall_ms\n";
    // The CSV is the reproducible product: reruns with one config and seed must be
    // byte-identical. Wall-clock time is environmental, so the wall_ms column
    // carries the missing-data marker and measured timings go to the JSON summary.
    for (const auto& c : cells) {
        os << c.n << ',' << c.rep << ',' << c.seed << ',';
        if (c.failed)
            os << "NA,NA,NA\n";
        else
            os << format_double(c.l2_error) << ',' << format_double(c.stderr_mc) << ",NA\n";
    }
    return os.str();
}

std::string RateReport::summary_json() const {
    std::ostringstream os;
    os.precision(17);
    os << "{\n  \"n\": [";
    for (std::size_t i = 0; i < n_values.size(); ++i)
        os << (i ? ", " : "") << n_values[i];
    os << "],\n  \"mean_error\": [";
    for (std::size_t i = 0; i < mean_error.size(); ++i)
        os << (i ? ", " : "") << mean_error[i];
    os << "],\n  \"stderr_mean\": [";
    for (std::size_t i = 0; i < stderr_mean.size(); ++i)
        os << (i ? ", " : "") << stderr_mean[i];
    os << "],\n  \"mean_wall_ms\": [";
    {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < n_values.size(); ++i) {
            double total = 0.0;
            int count = 0;
            while (idx < cells.size() && cells[idx].n == n_values[i]) {
                total += cells[idx].wall_ms;
                ++count;
                ++idx;
            }
            os << (i ? ", " : "") << (count > 0 ? total / count : 0.0);
        }
    }
    os << "],\n  \"failed_cells\": [";
    for (std::size_t i = 0; i < failed_cells.size(); ++i)
        os << (i ? ", " : "") << failed_cells[i];
    os << "],\n  \"fitted_slope\": ";
    if (degenerate_slope)
        os << "\"degenerate\"";
    else if (fitted_slope)
        os << *fitted_slope;
    else
        os << "null";
    os << ",\n  \"theoretical_exponent\": " << theoretical_exponent << "\n}\n";
    return os.str();
}

RateReport rate_study(const ExperimentConfig& cfg) {
    cfg.check();
    const SmoothTarget target = make_target(cfg.target, cfg.half_width);
    RateReport report;
    report.n_values = cfg.n_grid;
    report.theoretical_exponent =
        -2.0 * target.p / (2.0 * target.p + static_cast<double>(target.d));

    // Cells are mutually independent with deterministic per-(n, rep) seeds, so they
    // run concurrently and are assembled in key order afterwards.
    std::vector<RateCell> cells;
    for (int n : cfg.n_grid)
        for (int rep = 0; rep < cfg.repetitions; ++rep) {
            RateCell cell;
            cell.n = n;
            cell.rep = rep;
            cell.seed = cfg.seed * 1000003ULL + static_cast<std::uint64_t>(n) * 101ULL +
                        static_cast<std::uint64_t>(rep);
            cells.push_back(cell);
        }

    auto run_cell = [&cfg, &target](RateCell& cell) {
        const int n = cell.n;
        const auto start = std::chrono::steady_clock::now();
        try {
            TheoremSchedule schedule =
                schedule_from_theorem(target.p, target.C, target.d, n, cfg.K_n, cfg.constants);
            FitMode mode;
            if (cfg.planted) {
                const int K_cells = std::max(
                    2, static_cast<int>(std::ceil(
                           cfg.kcells_scale *
                           std::pow(static_cast<double>(n),
                                    1.0 / (2.0 * target.p + target.d)))));
                const AssemblyRequirements req = assembly_requirements(target, K_cells, 4);
                if (schedule.L < req.min_depth) schedule.L = req.min_depth;
                if (cfg.r_override) schedule.r = *cfg.r_override;
                if (schedule.r < req.min_width) schedule.r = req.min_width;
                mode.planted = true;
                mode.blueprints =
                    assemble_taylor_net(target, K_cells, schedule.L, schedule.r, 4);
                mode.epsilon = cfg.plant_epsilon;
                if (static_cast<int>(mode.blueprints.size()) > schedule.K_n)
                    schedule.K_n = static_cast<int>(mode.blueprints.size());
            }
            if (cfg.t_n_override) schedule.t_n = *cfg.t_n_override;
            if (cfg.lambda_override) schedule.lambda_n = *cfg.lambda_override;
            const Dataset data = generate_data(cfg, target, n, cell.seed);
            const FitReport fit_report = fit(data, schedule, mode, cell.seed + 7);
            const McEstimate mc = mc_l2_error(
                [&fit_report](std::span<const double> x) { return predict(fit_report, x); },
                target, target.d, cfg.half_width, cfg.mc_points, cell.seed + 13);
            cell.l2_error = mc.value;
            cell.stderr_mc = mc.standard_error;
        } catch (const std::exception& e) {
            cell.failed = true;
            cell.failure = e.what();
        }
        cell.wall_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - start)
                           .count();
    };

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t workers = std::min<std::size_t>(hw, cells.size());
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t)
        pool.emplace_back([&cells, &next, &run_cell] {
            for (std::size_t i = next.fetch_add(1); i < cells.size(); i = next.fetch_add(1))
                run_cell(cells[i]);
        });
    for (auto& t : pool) t.join();
    report.cells = std::move(cells);

    // Per-n aggregation over the key-ordered cells.
    std::size_t idx = 0;
    for (int n : cfg.n_grid) {
        double err_sum = 0.0, err_sum2 = 0.0;
        int ok = 0, failed = 0;
        for (int rep = 0; rep < cfg.repetitions; ++rep, ++idx) {
            const RateCell& cell = report.cells[idx];
            if (cell.failed) {
                ++failed;
            } else {
                err_sum += cell.l2_error;
                err_sum2 += cell.l2_error * cell.l2_error;
                ++ok;
            }
        }
        (void)n;
        const double mean = ok > 0 ? err_sum / ok : 0.0;
        report.mean_error.push_back(mean);
        const double var = ok > 1 ? std::max(0.0, err_sum2 / ok - mean * mean) : 0.0;
        report.stderr_mean.push_back(ok > 1 ? std::sqrt(var / ok) : 0.0);
        report.failed_cells.push_back(failed);
    }

    // OLS slope on (ln n, ln mean error), requiring >= 3 usable n values.
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < report.n_values.size(); ++i) {
        if (report.mean_error[i] > 1e-14) {
            lx.push_back(std::log(static_cast<double>(report.n_values[i])));
            ly.push_back(std::log(report.mean_error[i]));
        }
    }
    if (lx.size() < report.n_values.size() && lx.size() < 3) report.degenerate_slope = true;
    if (lx.size() >= 3) {
        double mx = 0.0, my = 0.0;
        for (std::size_t i = 0; i < lx.size(); ++i) {
            mx += lx[i];
            my += ly[i];
        }
        mx /= static_cast<double>(lx.size());
        my /= static_cast<double>(lx.size());
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < lx.size(); ++i) {
            num += (lx[i] - mx) * (ly[i] - my);
            den += (lx[i] - mx) * (lx[i] - mx);
        }
        if (den > 0.0) report.fitted_slope = num / den;
    } else if (!report.degenerate_slope && report.n_values.size() >= 3) {
        report.degenerate_slope = true;
    }
    return report;
}

double covering_bound_log(const CoveringParams& prm) {
    if (prm.epsilon <= 0.0 || prm.epsilon >= 1.0)
        throw std::invalid_argument("covering_bound: need 0 < epsilon < 1");
    if (prm.alpha < 1.0 || prm.beta < 1.0 || prm.A < 1.0 || prm.B < 1.0 || prm.C < 1.0)
        throw std::invalid_argument("covering_bound: magnitude parameters must be >= 1");
    if (prm.L < 1 || prm.d < 1 || prm.k < 1)
        throw std::invalid_argument("covering_bound: L, d, k must be >= 1");
    if (prm.p_norm < 1.0) throw std::invalid_argument("covering_bound: p must be >= 1");
    const double exponent =
        prm.c82 * std::pow(prm.alpha, prm.d) *
            std::pow(prm.B, static_cast<double>(prm.L - 1) * prm.d) * std::pow(prm.A, prm.d) *
            std::pow(prm.C / prm.epsilon, static_cast<double>(prm.d) / prm.k) +
        prm.c83;
    const double base = prm.c81 * std::pow(prm.beta, prm.p_norm) /
                        std::pow(prm.epsilon, prm.p_norm);
    return exponent * std::log(base);
}

}  // namespace parnet
