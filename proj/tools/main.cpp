#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "parnet/construct.hpp"
#include "parnet/estimator.hpp"
#include "parnet/experiments.hpp"
#include "parnet/network.hpp"
#include "parnet/verify.hpp"

using nlohmann::json;

namespace {

json load_config(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    json cfg;
    in >> cfg;
    return cfg;
}

parnet::ExperimentConfig experiment_config(const json& j) {
    parnet::ExperimentConfig cfg;
    cfg.target = j.value("target", cfg.target);
    cfg.half_width = j.value("half_width", cfg.half_width);
    cfg.noise_std = j.value("noise_std", cfg.noise_std);
    cfg.n_grid = j.value("n_grid", cfg.n_grid);
    cfg.repetitions = j.value("repetitions", cfg.repetitions);
    cfg.planted = j.value("planted", cfg.planted);
    cfg.plant_epsilon = j.value("plant_epsilon", cfg.plant_epsilon);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.mc_points = j.value("mc_points", cfg.mc_points);
    cfg.K_n = j.value("K_n", cfg.K_n);
    cfg.kcells_scale = j.value("kcells_scale", cfg.kcells_scale);
    cfg.constants.c1 = j.value("c1", cfg.constants.c1);
    cfg.constants.c2 = j.value("c2", cfg.constants.c2);
    cfg.constants.c3 = j.value("c3", cfg.constants.c3);
    cfg.constants.c5 = j.value("c5", cfg.constants.c5);
    cfg.constants.c6 = j.value("c6", cfg.constants.c6);
    if (j.contains("t_n")) cfg.t_n_override = j["t_n"].get<int>();
    if (j.contains("lambda")) cfg.lambda_override = j["lambda"].get<double>();
    if (j.contains("r")) cfg.r_override = j["r"].get<int>();
    cfg.output_path = j.value("output", cfg.output_path);
    return cfg;
}

void write_or_print_csv(const std::string& csv, const std::string& path) {
    if (path.empty()) {
        std::cout << csv;
    } else {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open output file: " + path);
        out << csv;
    }
}

int cmd_fit(const json& j, std::optional<std::uint64_t> seed_override) {
    parnet::ExperimentConfig cfg = experiment_config(j);
    if (seed_override) cfg.seed = *seed_override;
    const int n = j.value("n", cfg.n_grid.empty() ? 100 : cfg.n_grid.front());
    const parnet::SmoothTarget target = parnet::make_target(cfg.target, cfg.half_width);
    parnet::TheoremSchedule schedule = parnet::schedule_from_theorem(
        target.p, target.C, target.d, n, cfg.K_n, cfg.constants);
    parnet::FitMode mode;
    if (cfg.planted) {
        const int K_cells = j.value("K_cells", 4);
        const int N = j.value("N", 4);
        const auto req = parnet::assembly_requirements(target, K_cells, N);
        if (schedule.L < req.min_depth) schedule.L = req.min_depth;
        if (schedule.r < req.min_width) schedule.r = req.min_width;
        mode.planted = true;
        mode.blueprints = parnet::assemble_taylor_net(target, K_cells, schedule.L, schedule.r, N);
        mode.epsilon = cfg.plant_epsilon;
        if (static_cast<int>(mode.blueprints.size()) > schedule.K_n)
            schedule.K_n = static_cast<int>(mode.blueprints.size());
    }
    if (cfg.t_n_override) schedule.t_n = *cfg.t_n_override;
    if (cfg.lambda_override) schedule.lambda_n = *cfg.lambda_override;

    const parnet::Dataset data = parnet::generate_data(cfg, target, n, cfg.seed);
    const parnet::FitReport report = parnet::fit(data, schedule, mode, cfg.seed + 7);
    const parnet::McEstimate mc = parnet::mc_l2_error(
        [&report](std::span<const double> x) { return parnet::predict(report, x); }, target,
        target.d, cfg.half_width, cfg.mc_points, cfg.seed + 13);

    json out;
    out["n"] = n;
    out["seed"] = cfg.seed;
    out["schedule"] = {{"K_n", report.schedule.K_n},   {"L", report.schedule.L},
                       {"r", report.schedule.r},       {"t_n", report.schedule.t_n},
                       {"lambda_n", report.schedule.lambda_n},
                       {"beta_n", report.schedule.beta_n},
                       {"theorem_applies", report.schedule.theorem_applies}};
    out["initial_risk"] = report.trace.risk.front();
    out["final_risk"] = report.trace.risk.back();
    out["l2_error"] = mc.value;
    out["l2_stderr"] = mc.standard_error;
    out["wall_seconds"] = report.wall_seconds;
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_rate_study(const json& j, std::optional<std::uint64_t> seed_override) {
    parnet::ExperimentConfig cfg = experiment_config(j);
    if (seed_override) cfg.seed = *seed_override;
    if (cfg.n_grid.empty()) cfg.n_grid = {50, 100, 200, 400};
    const parnet::RateReport report = parnet::rate_study(cfg);
    write_or_print_csv(report.to_csv(), cfg.output_path);
    std::cerr << report.summary_json();
    int failed = 0;
    for (int f : report.failed_cells) failed += f;
    return failed == 0 ? 0 : 1;
}

int cmd_verify(const std::string& suite, std::uint64_t seed) {
    const auto results = parnet::run_suite(suite, seed);
    for (const auto& r : results) {
        std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.name << "  measured="
                  << r.measured << " threshold=" << r.threshold;
        if (!r.detail.empty()) std::cout << "  (" << r.detail << ")";
        std::cout << "\n";
    }
    std::cout << parnet::results_to_json(results);
    return parnet::all_pass(results) ? 0 : 1;
}

int cmd_covering_bound(const json& j) {
    parnet::CoveringParams prm;
    prm.alpha = j.value("alpha", prm.alpha);
    prm.beta = j.value("beta", prm.beta);
    prm.A = j.value("A", prm.A);
    prm.B = j.value("B", prm.B);
    prm.C = j.value("C", prm.C);
    prm.L = j.value("L", prm.L);
    prm.d = j.value("d", prm.d);
    prm.k = j.value("k", prm.k);
    prm.epsilon = j.value("epsilon", prm.epsilon);
    prm.p_norm = j.value("p", prm.p_norm);
    prm.c81 = j.value("c81", prm.c81);
    prm.c82 = j.value("c82", prm.c82);
    prm.c83 = j.value("c83", prm.c83);
    json out;
    out["log_covering_bound"] = parnet::covering_bound_log(prm);
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_build_approx(const json& j) {
    const std::string target_name = j.value("target", std::string("sin2x"));
    const double half_width = j.value("half_width", 1.0);
    const parnet::SmoothTarget target = parnet::make_target(target_name, half_width);
    const int K = j.value("K", 8);
    const int N = j.value("N", 6);
    const auto req = parnet::assembly_requirements(target, K, N);
    const int L = std::max(req.min_depth, j.value("L", 0));
    const int r = std::max(req.min_width, j.value("r", 0));
    const auto blueprints = parnet::assemble_taylor_net(target, K, L, r, N);

    const int points = j.value("points", 2000);
    double sup = 0.0;
    std::vector<double> x(static_cast<std::size_t>(target.d), 0.0);
    for (int i = 0; i < points; ++i) {
        x[0] = -target.A + 2.0 * target.A * (static_cast<double>(i) + 0.5) / points;
        if (target.d > 1) {
            for (int a = 1; a < target.d; ++a)
                x[static_cast<std::size_t>(a)] =
                    -target.A +
                    2.0 * target.A *
                        (0.5 + static_cast<double>((i * (a + 13)) % points)) / points;
        }
        sup = std::max(sup,
                       std::abs(target.evaluate(x) - parnet::eval_blueprints(blueprints, x)));
    }
    json out;
    out["target"] = target_name;
    out["K"] = K;
    out["N"] = N;
    out["depth"] = L;
    out["width"] = r;
    out["blueprints"] = blueprints.size();
    out["sup_error"] = sup;
    std::cout << out.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Over-parametrized sigmoid network estimator and verification harness"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed_override;
    app.add_option("--config", config_path, "JSON config file")->capture_default_str();
    app.add_option("--seed", seed_override, "Seed override (takes precedence over config)");

    auto* fit_cmd = app.add_subcommand("fit", "Fit the estimator on synthetic data");
    auto* rate_cmd = app.add_subcommand("rate-study", "Empirical L2 convergence-rate study");
    auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite");
    std::string suite = "all";
    verify_cmd->add_option("--suite", suite, "approx | opt | derivbound | all")
        ->check(CLI::IsMember({"approx", "opt", "derivbound", "all"}));
    auto* cover_cmd = app.add_subcommand("covering-bound", "Evaluate the log covering bound");
    auto* build_cmd =
        app.add_subcommand("build-approx", "Assemble an approximation network and measure it");

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        const json cfg = load_config(config_path);
        if (fit_cmd->parsed()) return cmd_fit(cfg, seed_override);
        if (rate_cmd->parsed()) return cmd_rate_study(cfg, seed_override);
        if (verify_cmd->parsed()) {
            std::uint64_t seed = cfg.value("seed", std::uint64_t{1});
            if (seed_override) seed = *seed_override;
            return cmd_verify(suite, seed);
        }
        if (cover_cmd->parsed()) return cmd_covering_bound(cfg);
        if (build_cmd->parsed()) return cmd_build_approx(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
