// Python bindings: exact constants, closed forms, moment determinants, and
// in-memory runs with estimate checks.

#include "burgerslab/config.hpp"
#include "burgerslab/estimates.hpp"
#include "burgerslab/exact.hpp"
#include "burgerslab/flux.hpp"
#include "burgerslab/moment.hpp"
#include "burgerslab/solver.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

namespace py = pybind11;
using namespace burgerslab;

namespace {

py::object fraction(const Rational& r) {
    static py::object Fraction = py::module_::import("fractions").attr("Fraction");
    return Fraction(to_string(r));
}

py::object json_to_py(const nlohmann::json& j) {
    static py::object loads = py::module_::import("json").attr("loads");
    return loads(j.dump());
}

py::dict exponent_dict(const ExponentSet& e) {
    py::dict d;
    d["d"] = e.d;
    d["gamma"] = fraction(e.gamma);
    d["delta"] = fraction(e.delta);
    d["kappa"] = fraction(e.kappa);
    d["nu"] = fraction(e.nu);
    d["theta"] = fraction(e.theta);
    d["beta"] = fraction(e.beta);
    d["alpha"] = fraction(e.alpha);
    d["p_star"] = fraction(e.p_star);
    return d;
}

py::dict constants_dict(const MonomialConstants& c) {
    py::dict d;
    d["k"] = c.k;
    d["K"] = c.K;
    d["N"] = c.N;
    d["admissible"] = c.admissible;
    d["theta"] = fraction(c.theta);
    if (c.decay_defined) {
        d["gamma"] = fraction(c.gamma);
        d["delta"] = fraction(c.delta);
    }
    d["norm_exponent"] = fraction(c.norm_exponent);
    return d;
}

py::dict row_dict(const DiagRow& r) {
    py::dict d;
    d["t"] = r.t;
    d["mass"] = r.mass;
    d["l1"] = r.l1;
    d["l2"] = r.l2;
    d["lp_main"] = r.lp_main;
    d["linf"] = r.linf;
    d["tv_sq"] = r.tv_sq;
    d["entropy_diss"] = r.entropy_diss;
    d["acc_estfond"] = r.acc_estfond;
    d["acc_delta"] = r.acc_delta;
    return d;
}

py::dict diagnostics_dict(const RunDiagnostics& diag) {
    py::dict d;
    d["n"] = diag.n;
    d["d"] = diag.d;
    d["p_main"] = diag.p_main;
    d["p_star"] = diag.p_star;
    d["norm_ps"] = diag.norm_ps;
    d["initial_mass"] = diag.initial_mass;
    d["initial_l1"] = diag.initial_l1;
    d["initial_min"] = diag.initial_min;
    d["initial_max"] = diag.initial_max;
    d["initial_moments"] = diag.initial_moments;
    d["steps"] = diag.steps;
    d["t_final"] = diag.t_final;
    d["acc_estfond"] = diag.acc_estfond_final;
    d["acc_delta"] = diag.acc_delta_final;
    py::list rows;
    for (const auto& r : diag.rows) rows.append(row_dict(r));
    d["rows"] = std::move(rows);
    return d;
}

struct RunResult {
    ExperimentConfig config;
    RunDiagnostics diag;
};

RunResult run_from_json_string(const std::string& config_json) {
    const auto cfg = ExperimentConfig::from_json(nlohmann::json::parse(config_json));
    const GridSpec grid = cfg.resolve_grid();
    RunDiagnostics diag;
    {
        py::gil_scoped_release release;
        diag = run(grid, cfg.profile, cfg.flux, cfg.solver);
    }
    return {cfg, std::move(diag)};
}

py::dict run_experiment_py(const std::string& config_json) {
    auto res = run_from_json_string(config_json);
    return diagnostics_dict(res.diag);
}

py::dict run_and_check_py(const std::string& config_json) {
    auto res = run_from_json_string(config_json);
    py::dict out;
    out["summary"] = diagnostics_dict(res.diag);
    py::list reports;
    bool all_pass = true;
    for (const auto& ck : res.config.checks) {
        const EstimateReport r = evaluate_check(ck, res.diag, res.config.flux);
        all_pass = all_pass && r.pass();
        reports.append(json_to_py(report_to_json(res.config.run_id, r)));
    }
    out["reports"] = std::move(reports);
    out["all_pass"] = all_pass;
    return out;
}

py::dict fit_dict(const PowerFit& f) {
    py::dict d;
    d["exponent"] = f.exponent;
    d["amplitude"] = f.amplitude;
    d["max_log_residual"] = f.max_log_residual;
    d["samples"] = f.samples;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Monotone finite-volume laboratory for multi-dimensional Burgers-type "
              "conservation laws";
    m.attr("__version__") = kVersion;

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);

    py::class_<FluxSpec>(m, "FluxSpec")
        .def_static("monomial", &FluxSpec::monomial, py::arg("exponents"))
        .def_static("polynomial", &FluxSpec::polynomial, py::arg("coefficients"))
        .def_static("burgers", &FluxSpec::burgers, py::arg("d"))
        .def_property_readonly("n", &FluxSpec::n)
        .def_property_readonly("d", &FluxSpec::d)
        .def_property_readonly("is_monomial", &FluxSpec::is_monomial)
        .def_property_readonly("is_burgers", &FluxSpec::is_burgers)
        .def("exponents", &FluxSpec::exponents)
        .def("flux", &FluxSpec::flux, py::arg("j"), py::arg("s"))
        .def("flux_deriv", &FluxSpec::flux_deriv, py::arg("j"), py::arg("s"))
        .def("flux_second_deriv", &FluxSpec::flux_second_deriv, py::arg("j"), py::arg("s"))
        .def("curvature_norm", &FluxSpec::curvature_norm, py::arg("s"))
        .def("to_json", [](const FluxSpec& s) { return json_to_py(s.to_json()); })
        .def("__repr__", [](const FluxSpec& s) { return "FluxSpec(" + s.to_json().dump() + ")"; });

    m.def(
        "godunov_interface",
        [](const FluxSpec& spec, int j, double uL, double uR) {
            const InterfaceFlux g = godunov_interface(spec, j, uL, uR);
            return py::make_tuple(g.flux, g.omega);
        },
        py::arg("spec"), py::arg("j"), py::arg("uL"), py::arg("uR"),
        "Godunov interface flux and the state realising it, as (flux, omega).");

    m.def(
        "hilbert_det", [](int d) { return fraction(hilbert_det(d)); }, py::arg("d"),
        "Exact determinant of the d x d matrix 1/(i+j+1); det M(a) = hilbert_det(d) a^{d^2}.");
    m.def(
        "det_identity_holds",
        [](const std::string& a, int d) { return det_identity_holds(Rational(a), d); },
        py::arg("a"), py::arg("d"),
        "Exact check of det M(a) == hilbert_det(d) * a^{d^2}; a is a rational string 'p/q'.");
    m.def("capital_delta", &capital_delta, py::arg("spec"), py::arg("a"),
          "Delta(a) = det(int_0^a F' F'^T)^{1/n}.");
    m.def(
        "moment_determinant",
        [](const FluxSpec& spec, const std::string& a) {
            return fraction(det_exact(general_moment_exact(spec, Rational(a))));
        },
        py::arg("spec"), py::arg("a"),
        "Exact det of the moment matrix of a monomial family at rational a.");

    m.def(
        "burgers_exponents", [](int d) { return exponent_dict(burgers_exponents(d)); },
        py::arg("d"), "Scaling exponents of the d-dimensional Burgers family, as Fractions.");
    m.def(
        "monomial_constants",
        [](const std::vector<int>& k) { return constants_dict(monomial_constants(k)); },
        py::arg("k"), "Decay/dispersion constants of a monomial family.");

    m.def("n_wave", &n_wave, py::arg("L"), py::arg("t"), py::arg("y1"));
    m.def("n_wave_lp_norm", &n_wave_lp_norm, py::arg("L"), py::arg("t"), py::arg("p"));
    m.def("riemann_burgers_1d", &riemann_burgers_1d, py::arg("uL"), py::arg("uR"), py::arg("t"),
          py::arg("y"));

    m.def(
        "fit_power_law",
        [](const std::vector<double>& t, const std::vector<double>& v) {
            return fit_dict(fit_power_law(t, v));
        },
        py::arg("t"), py::arg("value"));

    m.def("run_experiment", &run_experiment_py, py::arg("config_json"),
          "Run an experiment config (JSON string) in memory; returns the diagnostics.");
    m.def("run_and_check", &run_and_check_py, py::arg("config_json"),
          "Run an experiment and evaluate its configured checks.");
}
