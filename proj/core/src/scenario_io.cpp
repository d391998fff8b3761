#include "clonal/scenario_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "clonal/error.hpp"
#include "clonal/examples.hpp"
#include "json.hpp"

namespace clonal {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw ConfigError("unknown key '" + it.key() + "' in " + where);
}

const json& member(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key))
        throw ConfigError("missing '" + std::string(key) + "' in " + where);
    return obj.at(key);
}

double number(const json& obj, const char* key, const std::string& where) {
    const json& v = member(obj, key, where);
    if (!v.is_number()) throw ConfigError("'" + std::string(key) + "' in " + where + " must be a number");
    return v.get<double>();
}

std::size_t count(const json& obj, const char* key, const std::string& where) {
    const json& v = member(obj, key, where);
    if (!v.is_number_integer() || v.get<long long>() < 0)
        throw ConfigError("'" + std::string(key) + "' in " + where + " must be a nonnegative integer");
    return v.get<std::size_t>();
}

std::string text(const json& obj, const char* key, const std::string& where) {
    const json& v = member(obj, key, where);
    if (!v.is_string()) throw ConfigError("'" + std::string(key) + "' in " + where + " must be a string");
    return v.get<std::string>();
}

std::vector<double> table(const json& obj, const std::string& where) {
    const json& v = member(obj, "values", where);
    if (!v.is_array()) throw ConfigError("'values' in " + where + " must be an array");
    std::vector<double> out;
    out.reserve(v.size());
    for (const json& x : v) {
        if (!x.is_number()) throw ConfigError("'values' in " + where + " must hold numbers only");
        out.push_back(x.get<double>());
    }
    return out;
}

void check_table(const std::vector<double>& t, std::size_t expected, const char* what) {
    if (t.size() != expected)
        throw ConfigError(std::string(what) + " table has " + std::to_string(t.size()) +
                          " entries, grid needs " + std::to_string(expected));
}

} // namespace

Scenario resolve(const ScenarioSpec& spec) {
    const Grid& g = spec.grid;
    g.validate();

    std::vector<double> beta;
    switch (spec.beta.kind) {
    case BetaSpec::Kind::example: beta = build_beta(g, spec.beta.beta0, spec.beta.gate).values; break;
    case BetaSpec::Kind::constant: beta.assign(g.size(), spec.beta.value); break;
    case BetaSpec::Kind::table:
        check_table(spec.beta.table, g.size(), "beta");
        beta = spec.beta.table;
        break;
    }

    std::vector<double> mu;
    if (spec.mu.kind == MuSpec::Kind::constant) {
        mu.assign(g.size(), spec.mu.value);
    } else {
        check_table(spec.mu.table, g.size(), "mu");
        mu = spec.mu.table;
    }

    DivisionKernel kernel;
    if (spec.kernel.kind == KernelSpec::Kind::gaussian) {
        const KernelSpec k = spec.kernel;
        std::function<double(double)> mean;
        if (k.mean == KernelSpec::Mean::shift)
            mean = [off = k.offset](double lh) { return lh + off; };
        else
            mean = [a = k.intercept, b = k.slope](double lh) { return a + b * lh; };
        kernel = build_gaussian_kernel(g, mean, k.sd, k.divisor, k.renormalize);
    } else {
        check_table(spec.kernel.table, g.n_len * g.n_len, "kernel");
        kernel = DivisionKernel(g.n_len, g.l_max, spec.kernel.table);
    }

    Scenario s;
    s.grid = g;
    s.coefficients = CoefficientField(g, std::move(beta), std::move(mu));
    s.kernel = std::move(kernel);
    if (spec.initial.kind == InitialSpec::Kind::example) {
        s.initial = build_initial_density(g);
    } else {
        check_table(spec.initial.table, g.size(), "initial");
        s.initial = DensityField(g, spec.initial.table);
    }
    if (spec.crowding.kind == CrowdingSpec::Kind::linear) s.crowding = CrowdingLaw::linear(spec.crowding.gamma);
    s.horizon = spec.horizon;
    s.cadence = spec.cadence;
    s.bands = spec.bands;
    s.validate();
    return s;
}

ScenarioSpec parse_scenario(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text.begin(), json_text.end());
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed scenario JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("scenario document must be a JSON object");
    reject_unknown(doc, {"grid", "beta", "mu", "kernel", "crowding", "initial", "bands", "horizon", "cadence"},
                   "scenario");

    ScenarioSpec s;
    const json& g = member(doc, "grid", "scenario");
    reject_unknown(g, {"n_age", "n_len", "a_max", "l_max"}, "grid");
    s.grid = Grid{count(g, "n_age", "grid"), count(g, "n_len", "grid"), number(g, "a_max", "grid"),
                  number(g, "l_max", "grid")};
    s.grid.validate();

    const json& b = member(doc, "beta", "scenario");
    const std::string bk = text(b, "kind", "beta");
    if (bk == "example") {
        reject_unknown(b, {"kind", "beta0", "gate"}, "beta");
        s.beta.kind = BetaSpec::Kind::example;
        s.beta.beta0 = number(b, "beta0", "beta");
        if (b.contains("gate")) {
            const std::string gate = text(b, "gate", "beta");
            if (gate == "literal") s.beta.gate = TelomereGate::literal;
            else if (gate == "sigmoid") s.beta.gate = TelomereGate::sigmoid;
            else throw ConfigError("beta gate must be 'literal' or 'sigmoid'");
        }
    } else if (bk == "constant") {
        reject_unknown(b, {"kind", "value"}, "beta");
        s.beta.kind = BetaSpec::Kind::constant;
        s.beta.value = number(b, "value", "beta");
    } else if (bk == "table") {
        reject_unknown(b, {"kind", "values"}, "beta");
        s.beta.kind = BetaSpec::Kind::table;
        s.beta.table = table(b, "beta");
    } else {
        throw ConfigError("beta kind must be 'example', 'constant' or 'table'");
    }

    const json& m = member(doc, "mu", "scenario");
    const std::string mk = text(m, "kind", "mu");
    if (mk == "constant") {
        reject_unknown(m, {"kind", "value"}, "mu");
        s.mu.kind = MuSpec::Kind::constant;
        s.mu.value = number(m, "value", "mu");
    } else if (mk == "table") {
        reject_unknown(m, {"kind", "values"}, "mu");
        s.mu.kind = MuSpec::Kind::table;
        s.mu.table = table(m, "mu");
    } else {
        throw ConfigError("mu kind must be 'constant' or 'table'");
    }

    const json& k = member(doc, "kernel", "scenario");
    const std::string kk = text(k, "kind", "kernel");
    if (kk == "gaussian") {
        s.kernel.kind = KernelSpec::Kind::gaussian;
        const std::string mean = text(k, "mean", "kernel");
        if (mean == "shift") {
            reject_unknown(k, {"kind", "mean", "offset", "sd", "divisor", "renormalize"}, "kernel");
            s.kernel.mean = KernelSpec::Mean::shift;
            s.kernel.offset = number(k, "offset", "kernel");
        } else if (mean == "affine") {
            reject_unknown(k, {"kind", "mean", "intercept", "slope", "sd", "divisor", "renormalize"}, "kernel");
            s.kernel.mean = KernelSpec::Mean::affine;
            s.kernel.intercept = number(k, "intercept", "kernel");
            s.kernel.slope = number(k, "slope", "kernel");
        } else {
            throw ConfigError("kernel mean must be 'shift' or 'affine'");
        }
        s.kernel.sd = number(k, "sd", "kernel");
        s.kernel.divisor = number(k, "divisor", "kernel");
        if (k.contains("renormalize")) {
            if (!k.at("renormalize").is_boolean()) throw ConfigError("kernel 'renormalize' must be a boolean");
            s.kernel.renormalize = k.at("renormalize").get<bool>();
        }
    } else if (kk == "table") {
        reject_unknown(k, {"kind", "values"}, "kernel");
        s.kernel.kind = KernelSpec::Kind::table;
        s.kernel.table = table(k, "kernel");
    } else {
        throw ConfigError("kernel kind must be 'gaussian' or 'table'");
    }

    if (doc.contains("crowding")) {
        const json& c = doc.at("crowding");
        const std::string ck = text(c, "kind", "crowding");
        if (ck == "none") {
            reject_unknown(c, {"kind"}, "crowding");
        } else if (ck == "linear") {
            reject_unknown(c, {"kind", "gamma"}, "crowding");
            s.crowding.kind = CrowdingSpec::Kind::linear;
            s.crowding.gamma = number(c, "gamma", "crowding");
        } else {
            throw ConfigError("crowding kind must be 'none' or 'linear'");
        }
    }

    if (doc.contains("initial")) {
        const json& p = doc.at("initial");
        const std::string pk = text(p, "kind", "initial");
        if (pk == "example") {
            reject_unknown(p, {"kind"}, "initial");
        } else if (pk == "table") {
            reject_unknown(p, {"kind", "values"}, "initial");
            s.initial.kind = InitialSpec::Kind::table;
            s.initial.table = table(p, "initial");
        } else {
            throw ConfigError("initial kind must be 'example' or 'table'");
        }
    }

    if (doc.contains("bands")) {
        const json& bands = doc.at("bands");
        if (!bands.is_array()) throw ConfigError("'bands' must be an array of [lo, hi] pairs");
        for (const json& pair : bands) {
            if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number())
                throw ConfigError("'bands' must be an array of [lo, hi] pairs");
            s.bands.push_back({pair[0].get<double>(), pair[1].get<double>()});
        }
    }

    s.horizon = number(doc, "horizon", "scenario");
    if (doc.contains("cadence")) s.cadence = number(doc, "cadence", "scenario");
    return s;
}

ScenarioSpec load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open scenario file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

std::string to_json(const ScenarioSpec& s) {
    json doc;
    doc["grid"] = {{"n_age", s.grid.n_age}, {"n_len", s.grid.n_len}, {"a_max", s.grid.a_max},
                   {"l_max", s.grid.l_max}};
    switch (s.beta.kind) {
    case BetaSpec::Kind::example:
        doc["beta"] = {{"kind", "example"},
                       {"beta0", s.beta.beta0},
                       {"gate", s.beta.gate == TelomereGate::literal ? "literal" : "sigmoid"}};
        break;
    case BetaSpec::Kind::constant: doc["beta"] = {{"kind", "constant"}, {"value", s.beta.value}}; break;
    case BetaSpec::Kind::table: doc["beta"] = {{"kind", "table"}, {"values", s.beta.table}}; break;
    }
    if (s.mu.kind == MuSpec::Kind::constant)
        doc["mu"] = {{"kind", "constant"}, {"value", s.mu.value}};
    else
        doc["mu"] = {{"kind", "table"}, {"values", s.mu.table}};
    if (s.kernel.kind == KernelSpec::Kind::gaussian) {
        json k = {{"kind", "gaussian"}, {"sd", s.kernel.sd}, {"divisor", s.kernel.divisor},
                  {"renormalize", s.kernel.renormalize}};
        if (s.kernel.mean == KernelSpec::Mean::shift) {
            k["mean"] = "shift";
            k["offset"] = s.kernel.offset;
        } else {
            k["mean"] = "affine";
            k["intercept"] = s.kernel.intercept;
            k["slope"] = s.kernel.slope;
        }
        doc["kernel"] = k;
    } else {
        doc["kernel"] = {{"kind", "table"}, {"values", s.kernel.table}};
    }
    if (s.crowding.kind == CrowdingSpec::Kind::linear)
        doc["crowding"] = {{"kind", "linear"}, {"gamma", s.crowding.gamma}};
    else
        doc["crowding"] = {{"kind", "none"}};
    if (s.initial.kind == InitialSpec::Kind::example)
        doc["initial"] = {{"kind", "example"}};
    else
        doc["initial"] = {{"kind", "table"}, {"values", s.initial.table}};
    json bands = json::array();
    for (const Band& b : s.bands) bands.push_back({b.lo, b.hi});
    doc["bands"] = bands;
    doc["horizon"] = s.horizon;
    doc["cadence"] = s.cadence;
    return doc.dump(2);
}

} // namespace clonal
