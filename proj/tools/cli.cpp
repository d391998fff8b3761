#include "cli.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "clonal/bounds.hpp"
#include "clonal/error.hpp"
#include "clonal/examples.hpp"
#include "clonal/parallel.hpp"
#include "clonal/scenario_io.hpp"
#include "clonal/solver.hpp"
#include "clonal/spectral.hpp"
#include "clonal/steady.hpp"
#include "json_text.hpp"

namespace clonal::cli {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

struct RunConfig {
    std::string subcommand;
    std::string scenario_path;
    int example_id = 0;
    std::string out_dir;
    std::optional<std::size_t> n_age;
    std::optional<std::size_t> n_len;
    std::optional<double> cadence;
    double delta = 0.2;
    bool overwrite = false;
};

class Output {
public:
    Output(const RunConfig& cfg) : dir_(cfg.out_dir) {
        if (fs::exists(dir_)) {
            if (!fs::is_directory(dir_)) throw ConfigError("output path '" + dir_.string() + "' is not a directory");
            if (!cfg.overwrite && !fs::is_empty(dir_))
                throw ConfigError("output directory '" + dir_.string() + "' is not empty; pass --overwrite to replace");
        } else {
            fs::create_directories(dir_);
        }
    }

    void write(const std::string& name, const std::string& content) {
        std::ofstream f(dir_ / name, std::ios::binary | std::ios::trunc);
        if (!f) throw ConfigError("cannot write '" + (dir_ / name).string() + "'");
        f << content;
        files_.push_back(name);
    }

    const std::vector<std::string>& files() const { return files_; }

private:
    fs::path dir_;
    std::vector<std::string> files_;
};

ScenarioSpec resolve_spec(const RunConfig& cfg) {
    ScenarioSpec spec;
    if (!cfg.scenario_path.empty() && cfg.example_id != 0)
        throw ConfigError("give either --scenario or --id, not both");
    if (!cfg.scenario_path.empty()) spec = load_scenario(cfg.scenario_path);
    else if (cfg.example_id != 0) spec = example_spec(cfg.example_id);
    else throw ConfigError("a scenario is required: pass --scenario <path> or --id <1|2|3>");
    if (cfg.n_age) spec.grid.n_age = *cfg.n_age;
    if (cfg.n_len) spec.grid.n_len = *cfg.n_len;
    if (cfg.cadence) spec.cadence = *cfg.cadence;
    return spec;
}

std::string time_label(double t) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", t);
    return buf;
}

std::string grid_csv(const DensityField& p) {
    const Grid& g = p.grid();
    std::string s = "a\\l";
    for (std::size_t i = 0; i < g.n_len; ++i) s += "," + csv_number(g.length(i));
    s += "\n";
    for (std::size_t k = 0; k < g.n_age; ++k) {
        s += csv_number(g.age(k));
        for (std::size_t i = 0; i < g.n_len; ++i) s += "," + csv_number(p(k, i));
        s += "\n";
    }
    return s;
}

std::string totals_csv(const SimulationTrace& tr) {
    std::string s = "time,total";
    for (std::size_t b = 0; b < tr.bands.size(); ++b) s += ",band_" + std::to_string(b);
    s += "\n";
    for (std::size_t n = 0; n < tr.times.size(); ++n) {
        s += csv_number(tr.times[n]) + "," + csv_number(tr.totals[n]);
        for (const auto& band : tr.class_totals) s += "," + csv_number(band[n]);
        s += "\n";
    }
    return s;
}

ojson number_or_null(bool present, double v) { return present ? ojson(v) : ojson(nullptr); }

void write_simulation(Output& out, const SimulationTrace& tr) {
    out.write("totals.csv", totals_csv(tr));
    for (const auto& snap : tr.snapshots) out.write("snapshot_" + time_label(snap.time) + ".csv", grid_csv(snap.density));
}

void write_spectrum(Output& out, const Scenario& s) {
    const auto rep = analyze(s.coefficients, s.kernel);
    const auto root = growth_rate(s.coefficients, s.kernel);
    const auto cls = classify(s.coefficients, s.kernel);
    ojson j;
    j["radius"] = rep.radius;
    j["lambda_star"] = number_or_null(root.found, root.lambda);
    j["bounds"] = {rep.bounds.column_lower, rep.bounds.column_upper, rep.bounds.row_lower, rep.bounds.row_upper};
    j["irreducible"] = rep.irreducible;
    j["kernel_irreducible"] = kernel_irreducible(s.kernel);
    j["regime"] = to_string(cls.regime);
    j["converged"] = rep.converged;
    j["iterations"] = rep.iterations;
    if (!root.found) j["lambda_message"] = root.message;
    j["eigenvector"] = rep.eigenvector;
    out.write("spectrum.json", format_json(j));

    const auto curves = bound_curves(s.coefficients, s.kernel);
    std::string csv = "l,column_bound,row_bound\n";
    for (std::size_t i = 0; i < s.grid.n_len; ++i)
        csv += csv_number(s.grid.length(i)) + "," + csv_number(curves.column[i]) + "," + csv_number(curves.row[i]) + "\n";
    out.write("bound_curves.csv", csv);
}

void write_steady(Output& out, const Scenario& s) {
    const auto rep = find_equilibrium(s);
    ojson j;
    j["lambda_star"] = number_or_null(rep.lambda_found, rep.lambda_star);
    j["P_star"] = rep.P_star;
    j["c"] = rep.profile ? ojson(rep.profile->c) : ojson(nullptr);
    j["stability_margin"] = rep.stability_margin;
    j["extinction_stable"] = rep.extinction_stable;
    j["instability_flag"] = rep.instability_flag;
    j["status"] = to_string(rep.status);
    j["equilibria"] = rep.equilibria;
    j["kernel_irreducible"] = rep.kernel_irreducible;
    if (!rep.message.empty()) j["message"] = rep.message;
    out.write("steady.json", format_json(j));
    if (rep.profile) out.write("profile.csv", grid_csv(rep.profile->density));
}

void write_bounds(Output& out, Scenario s, double delta) {
    const auto config = make_class_bound_config(s.coefficients, s.kernel, delta);
    s.bands = config.bands();
    const auto trace = simulate(s);
    const auto rep = verify_class_bounds(trace, config);
    std::string csv = "time,band,simulated,bound,ratio\n";
    for (const auto& r : rep.rows)
        csv += csv_number(r.time) + "," + std::to_string(r.band) + "," + csv_number(r.simulated) + "," +
               csv_number(r.bound) + "," + csv_number(r.ratio) + "\n";
    out.write("bound_check.csv", csv);
    ojson j;
    j["delta"] = config.delta;
    j["N"] = config.N;
    j["sigma"] = config.sigma;
    j["omega"] = config.omega;
    j["certified"] = rep.certified;
    j["all_hold"] = rep.all_hold;
    j["violations"] = rep.violations;
    j["worst_ratio"] = rep.worst_ratio;
    out.write("bounds.json", format_json(j));
}

void write_manifest(Output& out, const RunConfig& cfg, const ScenarioSpec& spec, double wall) {
    ojson j;
    j["command"] = cfg.subcommand;
    j["source"] = cfg.example_id != 0 ? "example " + std::to_string(cfg.example_id) : cfg.scenario_path;
    j["scenario"] = ojson::parse(to_json(spec));
    const Grid& g = spec.grid;
    j["grid"] = {{"n_age", g.n_age}, {"n_len", g.n_len}, {"a_max", g.a_max}, {"l_max", g.l_max},
                 {"da", g.da()},     {"dl", g.dl()},     {"dt", g.dt()}};
    if (cfg.subcommand == "bounds") j["delta"] = cfg.delta;
    j["threads"] = worker_count();
    j["outputs"] = out.files();
    j["wall_time_s"] = wall;
    out.write("manifest.json", format_json(j));
}

int run(const RunConfig& cfg, std::ostream& out) {
    const auto start = std::chrono::steady_clock::now();
    const ScenarioSpec spec = resolve_spec(cfg);
    const Scenario scenario = resolve(spec);
    Output dir(cfg);

    if (cfg.subcommand == "simulate") {
        write_simulation(dir, simulate(scenario));
    } else if (cfg.subcommand == "spectrum") {
        write_spectrum(dir, scenario);
    } else if (cfg.subcommand == "steady") {
        write_steady(dir, scenario);
    } else if (cfg.subcommand == "bounds") {
        write_bounds(dir, scenario, cfg.delta);
    } else if (cfg.subcommand == "example") {
        write_simulation(dir, simulate(scenario));
        write_spectrum(dir, scenario);
        if (scenario.crowding) write_steady(dir, scenario);
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_manifest(dir, cfg, spec, wall);
    out << cfg.subcommand << ": wrote " << dir.files().size() << " files to " << cfg.out_dir << "\n";
    return ok;
}

std::string one_line(std::string s) {
    for (char& c : s)
        if (c == '\n' || c == '\r') c = ' ';
    while (!s.empty() && s.back() == ' ') s.pop_back();
    return s;
}

} // namespace

int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Age and telomere-length structured cell population simulator", "clonal-evolve"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    RunConfig cfg;
    struct Sub {
        const char* name;
        const char* help;
    };
    const Sub subs[] = {
        {"simulate", "Time-step a scenario; writes totals.csv, snapshot_<t>.csv"},
        {"spectrum", "Spectral radius, characteristic root and radius bounds; writes spectrum.json, bound_curves.csv"},
        {"steady", "Nonlinear steady state and stability conditions; writes steady.json, profile.csv"},
        {"bounds", "Telomere-class decay bounds against a simulation; writes bound_check.csv"},
        {"example", "Run a built-in example end to end"},
    };
    for (const Sub& s : subs) {
        CLI::App* sub = app.add_subcommand(s.name, s.help);
        sub->add_option("--scenario", cfg.scenario_path, "Scenario JSON document");
        sub->add_option("--id", cfg.example_id, "Built-in example id")->check(CLI::Range(1, 3));
        sub->add_option("--out", cfg.out_dir, "Output directory")->required();
        sub->add_option("--n-age", cfg.n_age, "Override number of age nodes");
        sub->add_option("--n-len", cfg.n_len, "Override number of telomere-length nodes");
        sub->add_option("--cadence", cfg.cadence, "Snapshot cadence (time units)");
        sub->add_flag("--overwrite", cfg.overwrite, "Allow writing into a non-empty output directory");
        if (std::string(s.name) == "bounds") sub->add_option("--delta", cfg.delta, "Telomere band width")->capture_default_str();
        sub->callback([&cfg, name = std::string(s.name)] { cfg.subcommand = name; });
    }
    app.get_subcommand("example")->get_option("--id")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return ok;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "clonal-evolve: error: " << one_line(e.what()) << "\n";
        return validation_error;
    }

    try {
        return run(cfg, out);
    } catch (const ConfigError& e) {
        err << "clonal-evolve: error: " << one_line(e.what()) << "\n";
        return validation_error;
    } catch (const ContractViolation& e) {
        err << "clonal-evolve: error: " << one_line(e.what()) << "\n";
        return validation_error;
    } catch (const fs::filesystem_error& e) {
        err << "clonal-evolve: error: " << one_line(e.what()) << "\n";
        return validation_error;
    } catch (const NumericalError& e) {
        err << "clonal-evolve: numerical failure: " << one_line(e.what()) << "\n";
        return numerical_error;
    }
}

} // namespace clonal::cli
