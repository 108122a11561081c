#include "burgerslab/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace burgerslab {

namespace {

void reject_unknown_keys(const nlohmann::json& j, const std::set<std::string>& known,
                         const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known.count(it.key()))
            throw ConfigError("config: unknown key '" + it.key() + "' in " + where);
}

std::vector<double> doubles_of(const nlohmann::json& j, const char* what) {
    if (!j.is_array()) throw ConfigError(std::string("config: ") + what + " must be an array");
    std::vector<double> v;
    for (const auto& x : j) {
        if (!x.is_number()) throw ConfigError(std::string("config: ") + what + " must be numeric");
        v.push_back(x.get<double>());
    }
    return v;
}

EntropyId entropy_of(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw ConfigError("config: entropy entries need a kind");
    reject_unknown_keys(j, {"kind", "a", "j"}, "entropy");
    const std::string kind = j["kind"].get<std::string>();
    if (kind == "kruzhkov") {
        if (!j.contains("a")) throw ConfigError("config: kruzhkov entropy needs a");
        return EntropyId::kruzhkov(j["a"].get<double>());
    }
    if (kind == "quadratic") return EntropyId::quadratic();
    if (kind == "power") {
        if (!j.contains("j")) throw ConfigError("config: power entropy needs j");
        return EntropyId::power(j["j"].get<int>());
    }
    if (kind == "phi") return EntropyId::phi();
    throw ConfigError("config: unknown entropy kind '" + kind + "'");
}

nlohmann::json entropy_json(const EntropyId& e) {
    nlohmann::json j;
    switch (e.kind) {
        case EntropyId::Kind::kruzhkov:
            j["kind"] = "kruzhkov";
            j["a"] = e.a;
            break;
        case EntropyId::Kind::quadratic:
            j["kind"] = "quadratic";
            break;
        case EntropyId::Kind::power:
            j["kind"] = "power";
            j["j"] = e.j;
            break;
        case EntropyId::Kind::phi:
            j["kind"] = "phi";
            break;
    }
    return j;
}

CheckSpec check_of(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("estimate"))
        throw ConfigError("config: check entries need an estimate name");
    reject_unknown_keys(j,
                        {"estimate", "q", "window", "slope_tol", "tol", "growth_cap", "taus",
                         "per_decade", "decades"},
                        "check");
    CheckSpec c;
    c.estimate = j["estimate"].get<std::string>();
    static const std::set<std::string> known = {
        "estfond", "nonhom", "decay", "gendec", "daf_tv",
        "heat_linf", "xtau", "cigen", "grongen_diagonal"};
    if (!known.count(c.estimate))
        throw ConfigError("config: unknown estimate '" + c.estimate + "'");
    if (j.contains("q")) c.q = j["q"].get<double>();
    if (j.contains("window")) {
        const auto w = doubles_of(j["window"], "window");
        if (w.size() != 2) throw ConfigError("config: window must be [t0, t1]");
        c.window = {w[0], w[1]};
    }
    if (j.contains("slope_tol")) c.slope_tol = j["slope_tol"].get<double>();
    if (j.contains("tol")) c.tol = j["tol"].get<double>();
    if (j.contains("growth_cap")) c.growth_cap = j["growth_cap"].get<double>();
    if (j.contains("taus")) c.taus = doubles_of(j["taus"], "taus");
    if (j.contains("per_decade")) c.per_decade = j["per_decade"].get<int>();
    if (j.contains("decades")) c.decades = j["decades"].get<double>();

    const bool needs_window =
        (c.estimate == "decay" || c.estimate == "gendec" || c.estimate == "daf_tv" ||
         c.estimate == "heat_linf");
    if (needs_window && !c.window)
        throw ConfigError("config: check '" + c.estimate + "' needs a window");
    if (c.estimate == "gendec" && !c.q)
        throw ConfigError("config: gendec needs q");
    if (c.estimate == "xtau" && c.taus.empty())
        throw ConfigError("config: xtau needs taus");
    return c;
}

nlohmann::json check_json(const CheckSpec& c) {
    nlohmann::json j;
    j["estimate"] = c.estimate;
    if (c.q) j["q"] = *c.q;
    if (c.window) j["window"] = {c.window->first, c.window->second};
    if (c.slope_tol) j["slope_tol"] = *c.slope_tol;
    if (c.tol) j["tol"] = *c.tol;
    if (c.growth_cap) j["growth_cap"] = *c.growth_cap;
    if (!c.taus.empty()) j["taus"] = c.taus;
    if (c.per_decade) j["per_decade"] = *c.per_decade;
    if (c.decades) j["decades"] = *c.decades;
    return j;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("config: expected a JSON object");
    reject_unknown_keys(j, {"run_id", "flux", "profile", "grid", "solver", "checks", "out"},
                        "the top level");
    ExperimentConfig c;
    if (!j.contains("run_id") || !j["run_id"].is_string() || j["run_id"].get<std::string>().empty())
        throw ConfigError("config: run_id (nonempty string) is required");
    c.run_id = j["run_id"].get<std::string>();
    for (char ch : c.run_id)
        if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-'))
            throw ConfigError("config: run_id may contain only [A-Za-z0-9_-]");
    if (!j.contains("flux")) throw ConfigError("config: flux is required");
    c.flux = FluxSpec::from_json(j["flux"]);
    if (!j.contains("profile")) throw ConfigError("config: profile is required");
    c.profile = DataProfile::from_json(j["profile"]);
    if (c.profile.dimension() != c.flux.n())
        throw ConfigError("config: profile dimension must equal the flux component count");

    if (!j.contains("grid")) throw ConfigError("config: grid is required");
    const auto& jg = j["grid"];
    if (jg.contains("auto")) {
        reject_unknown_keys(jg, {"auto"}, "grid");
        const auto& ja = jg["auto"];
        reject_unknown_keys(ja, {"target_h", "margin"}, "grid.auto");
        AutoGrid ag;
        if (!ja.contains("target_h")) throw ConfigError("config: grid.auto needs target_h");
        if (ja["target_h"].is_number())
            ag.target_h = {ja["target_h"].get<double>()};
        else
            ag.target_h = doubles_of(ja["target_h"], "target_h");
        for (double h : ag.target_h)
            if (!(h > 0.0)) throw ConfigError("config: target_h must be > 0");
        if (ja.contains("margin")) ag.margin = ja["margin"].get<double>();
        if (!(ag.margin >= 0.0)) throw ConfigError("config: margin must be >= 0");
        c.grid = ag;
    } else {
        reject_unknown_keys(jg, {"origin", "h", "counts"}, "grid");
        GridSpec g;
        g.origin = doubles_of(jg.at("origin"), "grid.origin");
        g.h = doubles_of(jg.at("h"), "grid.h");
        for (const auto& x : jg.at("counts")) g.counts.push_back(x.get<int64_t>());
        g.validate();
        c.grid = g;
    }

    if (!j.contains("solver")) throw ConfigError("config: solver is required");
    const auto& js = j["solver"];
    reject_unknown_keys(js,
                        {"t_end", "cfl_fraction", "output_times", "entropies", "norm_ps",
                         "record_xseries", "accumulate_estfond", "accumulate_delta",
                         "track_phi_mass", "snapshot_times", "oracle_n_wave_L", "max_steps"},
                        "solver");
    if (!js.contains("t_end")) throw ConfigError("config: solver.t_end is required");
    c.solver.t_end = js["t_end"].get<double>();
    if (js.contains("cfl_fraction")) c.solver.cfl_fraction = js["cfl_fraction"].get<double>();
    if (js.contains("output_times"))
        c.solver.output_times = doubles_of(js["output_times"], "output_times");
    if (js.contains("entropies"))
        for (const auto& je : js["entropies"]) c.solver.entropies.push_back(entropy_of(je));
    if (js.contains("norm_ps")) c.solver.extra_norm_ps = doubles_of(js["norm_ps"], "norm_ps");
    if (js.contains("record_xseries")) c.solver.record_xseries = js["record_xseries"].get<bool>();
    if (js.contains("accumulate_estfond"))
        c.solver.acc_estfond = js["accumulate_estfond"].get<bool>();
    if (js.contains("accumulate_delta")) c.solver.acc_delta = js["accumulate_delta"].get<bool>();
    if (js.contains("track_phi_mass")) c.solver.track_phi_mass = js["track_phi_mass"].get<bool>();
    if (js.contains("snapshot_times"))
        c.solver.snapshot_times = doubles_of(js["snapshot_times"], "snapshot_times");
    if (js.contains("oracle_n_wave_L"))
        c.solver.oracle_n_wave_L = js["oracle_n_wave_L"].get<double>();
    if (js.contains("max_steps")) c.solver.max_steps = js["max_steps"].get<int64_t>();

    if (j.contains("checks"))
        for (const auto& jc : j["checks"]) c.checks.push_back(check_of(jc));
    if (j.contains("out")) c.out_dir = j["out"].get<std::string>();

    // cross-validation that does not need the grid
    for (const auto& ck : c.checks) {
        if ((ck.estimate == "daf_tv" || ck.estimate == "heat_linf") && c.flux.n() != 1)
            throw ConfigError("config: " + ck.estimate + " needs one space variable");
        if (ck.estimate == "gendec" && ck.q) {
            const double d = c.flux.d();
            if (!(*ck.q > 1.0) || *ck.q >= d * d / (d - 1.0))
                throw ConfigError("config: gendec q must lie in (1, d^2/(d-1))");
        }
        const bool needs_estfond_acc = (ck.estimate == "estfond" || ck.estimate == "nonhom");
        if (needs_estfond_acc && !c.solver.acc_estfond)
            throw ConfigError("config: check '" + ck.estimate +
                              "' needs solver.accumulate_estfond");
        const bool needs_delta = (ck.estimate == "cigen" || ck.estimate == "grongen_diagonal");
        if (needs_delta && !c.solver.acc_delta)
            throw ConfigError("config: check '" + ck.estimate + "' needs solver.accumulate_delta");
        if (ck.estimate == "xtau" && !c.solver.record_xseries)
            throw ConfigError("config: xtau needs solver.record_xseries");
    }
    return c;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config: invalid JSON in '" + path + "': " + e.what());
    }
    return from_json(j);
}

nlohmann::json ExperimentConfig::to_json() const {
    nlohmann::json j;
    j["run_id"] = run_id;
    j["flux"] = flux.to_json();
    j["profile"] = profile.to_json();
    if (std::holds_alternative<GridSpec>(grid)) {
        const auto& g = std::get<GridSpec>(grid);
        j["grid"] = {{"origin", g.origin}, {"h", g.h}, {"counts", g.counts}};
    } else {
        const auto& a = std::get<AutoGrid>(grid);
        j["grid"] = {{"auto", {{"target_h", a.target_h}, {"margin", a.margin}}}};
    }
    nlohmann::json js;
    js["t_end"] = solver.t_end;
    js["cfl_fraction"] = solver.cfl_fraction;
    js["output_times"] = solver.output_times;
    nlohmann::json ents = nlohmann::json::array();
    for (const auto& e : solver.entropies) ents.push_back(entropy_json(e));
    js["entropies"] = std::move(ents);
    js["norm_ps"] = solver.extra_norm_ps;
    js["record_xseries"] = solver.record_xseries;
    js["accumulate_estfond"] = solver.acc_estfond;
    js["accumulate_delta"] = solver.acc_delta;
    js["track_phi_mass"] = solver.track_phi_mass;
    js["snapshot_times"] = solver.snapshot_times;
    if (solver.oracle_n_wave_L) js["oracle_n_wave_L"] = *solver.oracle_n_wave_L;
    js["max_steps"] = solver.max_steps;
    j["solver"] = std::move(js);
    nlohmann::json jc = nlohmann::json::array();
    for (const auto& ck : checks) jc.push_back(check_json(ck));
    j["checks"] = std::move(jc);
    if (out_dir) j["out"] = *out_dir;
    return j;
}

GridSpec ExperimentConfig::resolve_grid() const {
    if (std::holds_alternative<GridSpec>(grid)) return std::get<GridSpec>(grid);
    const auto& a = std::get<AutoGrid>(grid);
    const int n = flux.n();
    std::vector<double> hs;
    if (a.target_h.size() == 1)
        hs.assign(static_cast<size_t>(n), a.target_h[0]);
    else if (static_cast<int>(a.target_h.size()) == n)
        hs = a.target_h;
    else
        throw ConfigError("config: target_h must be scalar or one value per axis");

    const auto support = profile.support_bounds();
    const auto vb = profile.value_bounds();
    if (!std::isfinite(vb[0]) || !std::isfinite(vb[1]))
        throw ConfigError("config: cannot size a grid for unbounded data (clip it)");
    const auto speeds = wave_speed_range(flux, vb[0], vb[1]);

    GridSpec g;
    for (int k = 0; k < n; ++k) {
        const double h = hs[static_cast<size_t>(k)];
        double lo = support[static_cast<size_t>(k)][0] +
                    std::min(0.0, speeds[static_cast<size_t>(k)].first) * solver.t_end;
        double hi = support[static_cast<size_t>(k)][1] +
                    std::max(0.0, speeds[static_cast<size_t>(k)].second) * solver.t_end;
        const double pad = a.margin * (hi - lo) + 2.0 * h;
        lo -= pad;
        hi += pad;
        const auto count = static_cast<int64_t>(std::ceil((hi - lo) / h)) + 2;
        g.origin.push_back(lo);
        g.h.push_back(h);
        g.counts.push_back(std::max<int64_t>(count, 3));
    }
    g.validate();
    return g;
}

EstimateReport evaluate_check(const CheckSpec& c, const RunDiagnostics& diag,
                              const FluxSpec& spec) {
    if (c.estimate == "estfond") return check_estfond(diag, c.growth_cap.value_or(0.10));
    if (c.estimate == "nonhom") return check_nonhom(diag, c.growth_cap.value_or(0.10));
    if (c.estimate == "decay")
        return check_decay(diag, c.window->first, c.window->second, c.slope_tol.value_or(0.02));
    if (c.estimate == "gendec")
        return check_gendec(diag, *c.q, c.window->first, c.window->second,
                            c.slope_tol.value_or(0.02));
    if (c.estimate == "daf_tv")
        return check_daf_tv(diag, c.window->first, c.window->second, c.tol.value_or(0.05));
    if (c.estimate == "heat_linf")
        return check_heat_linf(diag, c.window->first, c.window->second, c.tol.value_or(0.05));
    if (c.estimate == "xtau") {
        XtauOptions opt;
        opt.taus = c.taus;
        return check_xtau(diag, opt);
    }
    if (c.estimate == "cigen") return check_cigen(diag);
    if (c.estimate == "grongen_diagonal") {
        GrongenOptions opt;
        if (c.per_decade) opt.per_decade = *c.per_decade;
        if (c.decades) opt.decades = *c.decades;
        return check_grongen_diagonal(diag, spec, opt);
    }
    throw ConfigError("config: unknown estimate '" + c.estimate + "'");
}

nlohmann::json report_to_json(const std::string& run_id, const EstimateReport& r) {
    nlohmann::json j;
    j["run_id"] = run_id;
    j["estimate"] = r.estimate;
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["ratio"] = r.ratio;
    if (r.slope)
        j["slope"] = *r.slope;
    else
        j["slope"] = nullptr;
    j["pass"] = r.pass();
    nlohmann::json detail;
    detail["status"] = to_string(r.status);
    detail["note"] = r.note;
    if (r.expected_slope) detail["expected_slope"] = *r.expected_slope;
    j["detail"] = std::move(detail);
    return j;
}

}  // namespace burgerslab
