#include "burgerslab/io.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace burgerslab {

namespace fs = std::filesystem;

namespace {

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw SolverError("io: cannot write '" + path.string() + "'");
    return out;
}

std::ifstream open_in(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("io: cannot read '" + path.string() + "'");
    return in;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_double(const std::string& s) {
    if (s.empty() || s == "nan") return std::numeric_limits<double>::quiet_NaN();
    return std::strtod(s.c_str(), nullptr);
}

std::string csv_field(double x) {
    if (std::isnan(x)) return "nan";
    return format_g17(x);
}

// Extra norm columns: the resolved exponents that are not already the named
// l1 / l2 / lp_main columns.
std::vector<size_t> extra_norm_indices(const RunDiagnostics& diag) {
    std::vector<size_t> idx;
    for (size_t i = 0; i < diag.norm_ps.size(); ++i) {
        const double p = diag.norm_ps[i];
        if (p == 1.0 || p == 2.0 || p == diag.p_main) continue;
        idx.push_back(i);
    }
    return idx;
}

}  // namespace

void write_diagnostics_csv(const fs::path& path, const RunDiagnostics& diag) {
    auto out = open_out(path);
    out << "t,mass,l1,l2,lp_main,linf";
    if (diag.n == 1) out << ",tv_sq";
    for (const auto& e : diag.entropies) out << ",diss_" << e.label();
    out << ",acc_estfond,acc_delta";
    const auto extras = extra_norm_indices(diag);
    for (size_t i : extras) out << ",lp_" << format_g17(diag.norm_ps[i]);
    const bool oracle = !diag.rows.empty() && std::isfinite(diag.rows.front().oracle_l1_error);
    if (oracle) out << ",oracle_l1_error";
    out << "\n";
    for (const auto& row : diag.rows) {
        out << csv_field(row.t) << ',' << csv_field(row.mass) << ',' << csv_field(row.l1)
            << ',' << csv_field(row.l2) << ',' << csv_field(row.lp_main) << ','
            << csv_field(row.linf);
        if (diag.n == 1) out << ',' << csv_field(row.tv_sq);
        for (size_t e = 0; e < diag.entropies.size(); ++e)
            out << ',' << csv_field(row.entropy_diss[e]);
        out << ',' << csv_field(row.acc_estfond) << ',' << csv_field(row.acc_delta);
        for (size_t i : extras) out << ',' << csv_field(row.lp_all[i]);
        if (oracle) out << ',' << csv_field(row.oracle_l1_error);
        out << "\n";
    }
}

void write_xseries_csv(const fs::path& path, const std::vector<std::array<double, 2>>& xs) {
    auto out = open_out(path);
    out << "t,x\n";
    for (const auto& p : xs) out << csv_field(p[0]) << ',' << csv_field(p[1]) << "\n";
}

void write_cdf_csv(const fs::path& path, const ValueCdf& cdf) {
    auto out = open_out(path);
    out << "value,vol_above,sum_above\n";
    for (size_t i = 0; i < cdf.values.size(); ++i)
        out << csv_field(cdf.values[i]) << ',' << csv_field(cdf.vol_above[i]) << ','
            << csv_field(cdf.sum_above[i]) << "\n";
}

void write_snapshot(const fs::path& path, const CellField& f) {
    auto out = open_out(path);
    out << "burgerslab-field 1\n";
    out << "n " << f.grid.dim() << "\n";
    out << "origin";
    for (double o : f.grid.origin) out << ' ' << format_g17(o);
    out << "\nh";
    for (double h : f.grid.h) out << ' ' << format_g17(h);
    out << "\ncounts";
    for (int64_t c : f.grid.counts) out << ' ' << c;
    out << "\ntime " << format_g17(f.time) << "\nvalues\n";
    for (double v : f.values) out << format_g17(v) << "\n";
}

CellField read_snapshot(const fs::path& path) {
    auto in = open_in(path);
    std::string tag;
    int version = 0;
    in >> tag >> version;
    if (tag != "burgerslab-field" || version != 1)
        throw ConfigError("io: '" + path.string() + "' is not a field snapshot");
    CellField f;
    int n = 0;
    std::string key;
    in >> key >> n;
    if (key != "n" || n < 1) throw ConfigError("io: malformed snapshot header");
    f.grid.origin.resize(static_cast<size_t>(n));
    f.grid.h.resize(static_cast<size_t>(n));
    f.grid.counts.resize(static_cast<size_t>(n));
    in >> key;
    for (auto& o : f.grid.origin) in >> o;
    in >> key;
    for (auto& h : f.grid.h) in >> h;
    in >> key;
    for (auto& c : f.grid.counts) in >> c;
    in >> key >> f.time;
    in >> key;  // "values"
    if (!in) throw ConfigError("io: malformed snapshot header");
    f.grid.validate();
    f.values.resize(static_cast<size_t>(f.grid.cells()));
    for (auto& v : f.values) in >> v;
    if (!in) throw ConfigError("io: snapshot value block is truncated");
    return f;
}

namespace {

nlohmann::json entropy_labels(const RunDiagnostics& diag) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& e : diag.entropies) a.push_back(e.label());
    return a;
}

}  // namespace

static nlohmann::json summary_json(const RunDiagnostics& diag) {
    nlohmann::json s;
    s["n"] = diag.n;
    s["d"] = diag.d;
    s["p_main"] = diag.p_main;
    s["p_star"] = diag.p_star;
    s["norm_ps"] = diag.norm_ps;
    s["entropy_labels"] = entropy_labels(diag);
    s["initial_mass"] = diag.initial_mass;
    s["initial_l1"] = diag.initial_l1;
    s["initial_min"] = diag.initial_min;
    s["initial_max"] = diag.initial_max;
    s["initial_moments"] = diag.initial_moments;
    s["initial_entropy_mass"] = diag.initial_entropy_mass;
    if (std::isfinite(diag.phi_mass0)) s["phi_mass0"] = diag.phi_mass0;
    s["cdf_total_vol"] = diag.initial_cdf.total_vol;
    s["cdf_total_sum"] = diag.initial_cdf.total_sum;
    s["acc_estfond_final"] = diag.acc_estfond_final;
    s["acc_delta_final"] = diag.acc_delta_final;
    s["steps"] = diag.steps;
    s["t_final"] = diag.t_final;
    s["grid"] = {{"origin", diag.grid.origin}, {"h", diag.grid.h}, {"counts", diag.grid.counts}};
    return s;
}

void write_manifest(const fs::path& dir, const ExperimentConfig& config,
                    const RunDiagnostics& diag, double wall_seconds) {
    nlohmann::json m;
    m["tool"] = "burgerslab";
    m["version"] = kVersion;
    m["config"] = config.to_json();
    m["boundary_policy"] =
        "zero extension outside the grid; the run aborts if the support reaches the "
        "outermost cell ring";
    m["wall_seconds"] = wall_seconds;
    m["summary"] = summary_json(diag);
    nlohmann::json files = nlohmann::json::array();
    files.push_back("diagnostics.csv");
    if (!diag.xseries.empty()) files.push_back("xseries.csv");
    if (!diag.initial_cdf.empty()) files.push_back("initial_cdf.csv");
    for (size_t i = 0; i < diag.snapshots.size(); ++i) {
        char name[64];
        std::snprintf(name, sizeof name, "snapshots/snap_%03zu.dat", i);
        files.push_back(name);
    }
    m["files"] = std::move(files);
    auto out = open_out(dir / "manifest.json");
    out << m.dump(2) << "\n";
}

void write_abort_manifest(const fs::path& dir, const ExperimentConfig& config,
                          const std::string& message) {
    nlohmann::json m;
    m["tool"] = "burgerslab";
    m["version"] = kVersion;
    m["config"] = config.to_json();
    m["boundary_policy"] =
        "zero extension outside the grid; the run aborts if the support reaches the "
        "outermost cell ring";
    m["aborted"] = message;
    auto out = open_out(dir / "manifest.json");
    out << m.dump(2) << "\n";
}

void write_run_artifacts(const fs::path& dir, const ExperimentConfig& config,
                         const RunDiagnostics& diag, double wall_seconds) {
    fs::create_directories(dir);
    write_diagnostics_csv(dir / "diagnostics.csv", diag);
    if (!diag.xseries.empty()) write_xseries_csv(dir / "xseries.csv", diag.xseries);
    if (!diag.initial_cdf.empty()) write_cdf_csv(dir / "initial_cdf.csv", diag.initial_cdf);
    if (!diag.snapshots.empty()) {
        fs::create_directories(dir / "snapshots");
        for (size_t i = 0; i < diag.snapshots.size(); ++i) {
            char name[64];
            std::snprintf(name, sizeof name, "snap_%03zu.dat", i);
            write_snapshot(dir / "snapshots" / name, diag.snapshots[i]);
        }
    }
    write_manifest(dir, config, diag, wall_seconds);
}

std::pair<ExperimentConfig, RunDiagnostics> load_run_artifacts(const fs::path& dir) {
    auto in = open_in(dir / "manifest.json");
    nlohmann::json m;
    try {
        in >> m;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("io: invalid manifest: ") + e.what());
    }
    if (m.contains("aborted"))
        throw ConfigError("io: run directory holds an aborted run: " +
                          m["aborted"].get<std::string>());
    ExperimentConfig config = ExperimentConfig::from_json(m.at("config"));
    const auto& s = m.at("summary");

    RunDiagnostics diag;
    diag.n = s.at("n").get<int>();
    diag.d = s.at("d").get<int>();
    diag.p_main = s.at("p_main").get<double>();
    diag.p_star = s.at("p_star").get<double>();
    diag.norm_ps = s.at("norm_ps").get<std::vector<double>>();
    diag.entropies = config.solver.entropies;
    diag.initial_mass = s.at("initial_mass").get<double>();
    diag.initial_l1 = s.at("initial_l1").get<double>();
    diag.initial_min = s.at("initial_min").get<double>();
    diag.initial_max = s.at("initial_max").get<double>();
    diag.initial_moments = s.at("initial_moments").get<std::vector<double>>();
    diag.initial_entropy_mass = s.at("initial_entropy_mass").get<std::vector<double>>();
    diag.phi_mass0 = s.contains("phi_mass0") ? s["phi_mass0"].get<double>()
                                             : std::numeric_limits<double>::quiet_NaN();
    diag.acc_estfond_final = s.at("acc_estfond_final").is_number()
                                 ? s.at("acc_estfond_final").get<double>()
                                 : std::numeric_limits<double>::quiet_NaN();
    diag.acc_delta_final = s.at("acc_delta_final").is_number()
                               ? s.at("acc_delta_final").get<double>()
                               : std::numeric_limits<double>::quiet_NaN();
    diag.steps = s.at("steps").get<int64_t>();
    diag.t_final = s.at("t_final").get<double>();
    diag.grid.origin = s.at("grid").at("origin").get<std::vector<double>>();
    diag.grid.h = s.at("grid").at("h").get<std::vector<double>>();
    diag.grid.counts = s.at("grid").at("counts").get<std::vector<int64_t>>();

    // diagnostics.csv
    {
        auto din = open_in(dir / "diagnostics.csv");
        std::string line;
        if (!std::getline(din, line)) throw ConfigError("io: empty diagnostics.csv");
        const auto header = split_csv(line);
        std::map<std::string, size_t> col;
        for (size_t i = 0; i < header.size(); ++i) col[header[i]] = i;
        const auto need = [&](const std::string& name) {
            auto it = col.find(name);
            if (it == col.end())
                throw ConfigError("io: diagnostics.csv misses column '" + name + "'");
            return it->second;
        };
        const size_t ci_t = need("t"), ci_mass = need("mass"), ci_l1 = need("l1"),
                     ci_l2 = need("l2"), ci_lpm = need("lp_main"), ci_linf = need("linf");
        const bool has_tv = col.count("tv_sq") > 0;
        std::vector<size_t> ci_diss;
        for (const auto& e : diag.entropies) ci_diss.push_back(need("diss_" + e.label()));
        const size_t ci_ae = need("acc_estfond"), ci_ad = need("acc_delta");
        std::vector<std::pair<size_t, size_t>> ci_extra;  // (norm index, column)
        for (size_t i = 0; i < diag.norm_ps.size(); ++i) {
            const double p = diag.norm_ps[i];
            if (p == 1.0 || p == 2.0 || p == diag.p_main) continue;
            ci_extra.emplace_back(i, need("lp_" + format_g17(p)));
        }
        const bool has_oracle = col.count("oracle_l1_error") > 0;
        while (std::getline(din, line)) {
            if (line.empty()) continue;
            const auto f = split_csv(line);
            DiagRow row;
            row.t = parse_double(f.at(ci_t));
            row.mass = parse_double(f.at(ci_mass));
            row.l1 = parse_double(f.at(ci_l1));
            row.l2 = parse_double(f.at(ci_l2));
            row.lp_main = parse_double(f.at(ci_lpm));
            row.linf = parse_double(f.at(ci_linf));
            row.tv_sq = has_tv ? parse_double(f.at(col["tv_sq"]))
                               : std::numeric_limits<double>::quiet_NaN();
            row.lp_all.assign(diag.norm_ps.size(), std::numeric_limits<double>::quiet_NaN());
            for (size_t i = 0; i < diag.norm_ps.size(); ++i) {
                const double p = diag.norm_ps[i];
                if (p == 1.0) row.lp_all[i] = row.l1;
                else if (p == 2.0) row.lp_all[i] = row.l2;
                else if (p == diag.p_main) row.lp_all[i] = row.lp_main;
            }
            for (const auto& [ni, ci] : ci_extra) row.lp_all[ni] = parse_double(f.at(ci));
            for (size_t e = 0; e < ci_diss.size(); ++e)
                row.entropy_diss.push_back(parse_double(f.at(ci_diss[e])));
            row.acc_estfond = parse_double(f.at(ci_ae));
            row.acc_delta = parse_double(f.at(ci_ad));
            row.oracle_l1_error = has_oracle ? parse_double(f.at(col["oracle_l1_error"]))
                                             : std::numeric_limits<double>::quiet_NaN();
            diag.rows.push_back(std::move(row));
        }
    }

    if (fs::exists(dir / "xseries.csv")) {
        auto xin = open_in(dir / "xseries.csv");
        std::string line;
        std::getline(xin, line);  // header
        while (std::getline(xin, line)) {
            if (line.empty()) continue;
            const auto f = split_csv(line);
            diag.xseries.push_back({parse_double(f.at(0)), parse_double(f.at(1))});
        }
    }
    if (fs::exists(dir / "initial_cdf.csv")) {
        auto cin_ = open_in(dir / "initial_cdf.csv");
        std::string line;
        std::getline(cin_, line);  // header
        while (std::getline(cin_, line)) {
            if (line.empty()) continue;
            const auto f = split_csv(line);
            diag.initial_cdf.values.push_back(parse_double(f.at(0)));
            diag.initial_cdf.vol_above.push_back(parse_double(f.at(1)));
            diag.initial_cdf.sum_above.push_back(parse_double(f.at(2)));
        }
        diag.initial_cdf.total_vol = s.at("cdf_total_vol").get<double>();
        diag.initial_cdf.total_sum = s.at("cdf_total_sum").get<double>();
    }
    return {std::move(config), std::move(diag)};
}

void write_reports(const fs::path& dir, const std::string& run_id,
                   const std::vector<EstimateReport>& reports) {
    fs::create_directories(dir);
    std::map<std::string, int> seen;
    auto csv = open_out(dir / "reports.csv");
    csv << "run_id,estimate,lhs,rhs,ratio,slope,pass,status\n";
    for (const auto& r : reports) {
        std::string stem = "report_" + r.estimate;
        const int k = seen[r.estimate]++;
        if (k > 0) stem += "_" + std::to_string(k + 1);
        auto out = open_out(dir / (stem + ".json"));
        out << report_to_json(run_id, r).dump(2) << "\n";
        csv << run_id << ',' << r.estimate << ',' << csv_field(r.lhs) << ','
            << csv_field(r.rhs) << ',' << csv_field(r.ratio) << ','
            << (r.slope ? csv_field(*r.slope) : "") << ',' << (r.pass() ? "true" : "false")
            << ',' << to_string(r.status) << "\n";
    }
}

}  // namespace burgerslab
