#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "parnet/construct.hpp"
#include "parnet/estimator.hpp"
#include "parnet/experiments.hpp"
#include "parnet/network.hpp"
#include "parnet/verify.hpp"

namespace py = pybind11;
using namespace parnet;

namespace {

py::dict schedule_to_dict(const TheoremSchedule& s) {
    py::dict d;
    d["p"] = s.p;
    d["C"] = s.C;
    d["d"] = s.d;
    d["n"] = s.n;
    d["K_n"] = s.K_n;
    d["q"] = s.q;
    d["L"] = s.L;
    d["r"] = s.r;
    d["tau"] = s.tau;
    d["beta_n"] = s.beta_n;
    d["lambda_n"] = s.lambda_n;
    d["t_n"] = s.t_n;
    d["theoretical_K_exponent"] = s.theoretical_K_exponent;
    d["theorem_applies"] = s.theorem_applies;
    return d;
}

struct PyFit {
    FitReport report;

    double predict_one(const std::vector<double>& x) const {
        return predict(report, x);
    }
    double initial_risk() const { return report.trace.risk.front(); }
    double final_risk() const { return report.trace.risk.back(); }
    std::vector<double> risk_trace() const { return report.trace.risk; }
    py::dict schedule() const { return schedule_to_dict(report.schedule); }
};

PyFit fit_target(const std::string& target_name, int n, double noise_std, bool planted,
                 int K_cells, int N, int K_n, std::optional<int> t_n,
                 std::optional<double> lambda, std::optional<int> r,
                 double plant_epsilon, std::uint64_t seed) {
    const SmoothTarget target = make_target(target_name);
    TheoremSchedule schedule =
        schedule_from_theorem(target.p, target.C, target.d, n, K_n);
    FitMode mode;
    if (planted) {
        const AssemblyRequirements req = assembly_requirements(target, K_cells, N);
        if (schedule.L < req.min_depth) schedule.L = req.min_depth;
        if (r) schedule.r = *r;
        if (schedule.r < req.min_width) schedule.r = req.min_width;
        mode.planted = true;
        mode.blueprints = assemble_taylor_net(target, K_cells, schedule.L, schedule.r, N);
        mode.epsilon = plant_epsilon;
        if (static_cast<int>(mode.blueprints.size()) > schedule.K_n)
            schedule.K_n = static_cast<int>(mode.blueprints.size());
    } else if (r) {
        schedule.r = *r;
    }
    if (t_n) schedule.t_n = *t_n;
    if (lambda) schedule.lambda_n = *lambda;

    ExperimentConfig cfg;
    cfg.noise_std = noise_std;
    const Dataset data = generate_data(cfg, target, n, seed);
    PyFit out;
    out.report = fit(data, schedule, mode, seed + 7);
    return out;
}

py::list verify_py(const std::string& suite, std::uint64_t seed) {
    py::list out;
    for (const auto& r : run_suite(suite, seed)) {
        py::dict d;
        d["name"] = r.name;
        d["pass"] = r.pass;
        d["measured"] = r.measured;
        d["threshold"] = r.threshold;
        d["detail"] = r.detail;
        out.append(d);
    }
    return out;
}

py::dict rate_study_py(const std::string& target_name, const std::vector<int>& n_grid,
                       int repetitions, double noise_std, bool planted,
                       std::optional<int> t_n, std::optional<double> lambda,
                       std::optional<int> r, int mc_points, std::uint64_t seed) {
    ExperimentConfig cfg;
    cfg.target = target_name;
    cfg.n_grid = n_grid;
    cfg.repetitions = repetitions;
    cfg.noise_std = noise_std;
    cfg.planted = planted;
    cfg.t_n_override = t_n;
    cfg.lambda_override = lambda;
    cfg.r_override = r;
    cfg.mc_points = mc_points;
    cfg.seed = seed;
    const RateReport report = rate_study(cfg);
    py::dict d;
    d["csv"] = report.to_csv();
    d["summary_json"] = report.summary_json();
    d["n"] = report.n_values;
    d["mean_error"] = report.mean_error;
    d["failed_cells"] = report.failed_cells;
    d["theoretical_exponent"] = report.theoretical_exponent;
    if (report.fitted_slope)
        d["fitted_slope"] = *report.fitted_slope;
    else
        d["fitted_slope"] = py::none();
    return d;
}

double assembled_sup_error(const std::string& target_name, int K, int N, int points) {
    const SmoothTarget target = make_target(target_name);
    const AssemblyRequirements req = assembly_requirements(target, K, N);
    const auto blueprints =
        assemble_taylor_net(target, K, req.min_depth, req.min_width, N);
    double sup = 0.0;
    std::vector<double> x(static_cast<std::size_t>(target.d), 0.0);
    for (int i = 0; i < points; ++i) {
        for (int a = 0; a < target.d; ++a)
            x[static_cast<std::size_t>(a)] =
                -target.A +
                2.0 * target.A * (0.5 + static_cast<double>((i * (a * 13 + 1)) % points)) /
                    points;
        sup = std::max(sup, std::abs(target.evaluate(x) - eval_blueprints(blueprints, x)));
    }
    return sup;
}

double covering_bound_py(double alpha, double beta, double A, double B, double C, int L,
                         int d, int k, double epsilon, double p) {
    CoveringParams prm;
    prm.alpha = alpha;
    prm.beta = beta;
    prm.A = A;
    prm.B = B;
    prm.C = C;
    prm.L = L;
    prm.d = d;
    prm.k = k;
    prm.epsilon = epsilon;
    prm.p_norm = p;
    return covering_bound_log(prm);
}

}  // namespace

PYBIND11_MODULE(_parnet, m) {
    m.doc() = "Over-parametrized parallel sigmoid network estimator";

    py::class_<PyFit>(m, "Fit")
        .def("predict", &PyFit::predict_one, py::arg("x"))
        .def_property_readonly("initial_risk", &PyFit::initial_risk)
        .def_property_readonly("final_risk", &PyFit::final_risk)
        .def_property_readonly("risk_trace", &PyFit::risk_trace)
        .def_property_readonly("schedule", &PyFit::schedule);

    m.def("schedule", [](double p, double C, int d, int n, int K_n) {
              return schedule_to_dict(schedule_from_theorem(p, C, d, n, K_n));
          },
          py::arg("p"), py::arg("C"), py::arg("d"), py::arg("n"), py::arg("K_n"));

    m.def("fit", &fit_target, py::arg("target"), py::arg("n"), py::arg("noise_std") = 0.1,
          py::arg("planted") = false, py::arg("K_cells") = 4, py::arg("N") = 4,
          py::arg("K_n") = 8, py::arg("t_n") = py::none(), py::arg("lam") = py::none(),
          py::arg("r") = py::none(), py::arg("plant_epsilon") = 1e-4, py::arg("seed") = 1);

    m.def("verify", &verify_py, py::arg("suite") = "all", py::arg("seed") = 1);

    m.def("rate_study", &rate_study_py, py::arg("target"), py::arg("n_grid"),
          py::arg("repetitions") = 1, py::arg("noise_std") = 0.1,
          py::arg("planted") = false, py::arg("t_n") = py::none(),
          py::arg("lam") = py::none(), py::arg("r") = py::none(),
          py::arg("mc_points") = 1000, py::arg("seed") = 1);

    m.def("assembled_sup_error", &assembled_sup_error, py::arg("target"), py::arg("K"),
          py::arg("N"), py::arg("points") = 1000);

    m.def("covering_bound_log", &covering_bound_py, py::arg("alpha") = 1.0,
          py::arg("beta") = 1.0, py::arg("A") = 1.0, py::arg("B") = 1.0,
          py::arg("C") = 1.0, py::arg("L") = 1, py::arg("d") = 1, py::arg("k") = 1,
          py::arg("epsilon") = 0.5, py::arg("p") = 2.0);
}
