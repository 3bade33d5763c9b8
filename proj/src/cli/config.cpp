#include "hydroclose/cli/config.hpp"
#include "hydroclose/sim/streams.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

namespace hydroclose::cli {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        parts.push_back(b == std::string::npos ? std::string() : item.substr(b, e - b + 1));
    }
    return parts;
}

int parse_int(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("invalid " + what + ": '" + s + "'");
    }
}

// Largest k with "nu<k>" in the text.
std::size_t max_nu_index(const std::string& text) {
    static const std::regex re("nu([0-9]+)");
    std::size_t best = 0;
    for (auto it = std::sregex_iterator(text.begin(), text.end(), re); it != std::sregex_iterator(); ++it)
        best = std::max<std::size_t>(best, std::stoul((*it)[1].str()));
    return best;
}

std::string describe(const json& path_or_key) { return path_or_key.dump(); }

void allow_keys(const json& obj, std::initializer_list<const char*> keys, const std::string& where) {
    if (!obj.is_object()) throw ConfigError(where + " must be an object");
    std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& [k, v] : obj.items())
        if (!allowed.count(k)) throw ConfigError("unknown key '" + k + "' in " + where);
}

double get_number(const json& obj, const char* key, double fallback, const std::string& where) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number()) throw ConfigError(where + "." + key + " must be a number, got " + describe(v));
    return v.get<double>();
}

long get_integer(const json& obj, const char* key, long fallback, const std::string& where) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_integer()) throw ConfigError(where + "." + key + " must be an integer, got " + describe(v));
    return v.get<long>();
}

std::string get_string(const json& obj, const char* key, const std::string& fallback, const std::string& where) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_string()) throw ConfigError(where + "." + key + " must be a string, got " + describe(v));
    return v.get<std::string>();
}

// Integers or "p/q" strings; floats are refused so exact families stay exact.
Rational to_rational(const json& v, const std::string& where) {
    if (v.is_number_integer()) return Rational(v.get<long>());
    if (v.is_string()) {
        try {
            return parse_rational(v.get<std::string>());
        } catch (const std::exception&) {
        }
    }
    throw ConfigError(where + " must be an integer or a \"p/q\" string, got " + describe(v));
}

std::string metric_text(const json& v, const std::string& where) {
    if (v.is_string()) return v.get<std::string>();
    if (!v.is_array()) throw ConfigError(where + " must be a matrix (array of rows) or a string");
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_array()) throw ConfigError(where + " rows must be arrays");
        if (i) out += ';';
        for (std::size_t j = 0; j < v[i].size(); ++j) {
            if (j) out += ',';
            out += to_string(to_rational(v[i][j], where));
        }
    }
    return out;
}

ClosureSpec parse_closure(const json& c) {
    const std::string where = "closure";
    allow_keys(c, {"family", "params"}, where);
    ClosureSpec s;
    s.family = get_string(c, "family", "cold", where);
    const json params = c.value("params", json::object());
    const std::string pw = "closure.params";
    if (s.family == "cold") {
        allow_keys(params, {}, pw);
    } else if (s.family == "multidelta") {
        allow_keys(params, {"streams"}, pw);
        s.streams = static_cast<int>(get_integer(params, "streams", 2, pw));
    } else if (s.family == "waterbag") {
        allow_keys(params, {"heights"}, pw);
        if (!params.contains("heights") || !params["heights"].is_array())
            throw ConfigError("closure.params.heights must be an array");
        for (const auto& h : params["heights"]) s.heights.push_back(to_rational(h, pw + ".heights"));
    } else if (s.family == "burby") {
        allow_keys(params, {"level", "branch"}, pw);
        s.level = static_cast<int>(get_integer(params, "level", 1, pw));
        s.branch = parse_branch(get_string(params, "branch", "plus", pw));
    } else if (s.family == "fourfield") {
        allow_keys(params, {"kappa"}, pw);
        s.kappa = params.contains("kappa") ? to_rational(params["kappa"], pw + ".kappa") : Rational(0);
    } else if (s.family == "generic") {
        allow_keys(params, {"mu2", "mu1", "metric", "rule", "lambda"}, pw);
        s.mu2 = get_string(params, "mu2", "", pw);
        s.mu1 = get_string(params, "mu1", "", pw);
        if (params.contains("metric")) s.metric = metric_text(params["metric"], pw + ".metric");
        s.rule = parse_rule(get_string(params, "rule", "euler", pw));
        if (params.contains("lambda")) s.lambda = to_rational(params["lambda"], pw + ".lambda");
    } else {
        throw ConfigError("unknown closure family '" + s.family + "'");
    }
    return s;
}

sim::Perturbation parse_perturbation(const json& p, const std::string& where) {
    allow_keys(p, {"field", "index", "amplitude", "mode", "phase"}, where);
    sim::Perturbation out;
    const std::string field = get_string(p, "field", "rho", where);
    if (field == "rho")
        out.field = sim::PerturbedField::rho;
    else if (field == "u")
        out.field = sim::PerturbedField::u;
    else if (field == "nu")
        out.field = sim::PerturbedField::nu;
    else
        throw ConfigError(where + ".field must be rho, u or nu");
    const long index = get_integer(p, "index", 1, where);
    if (out.field == sim::PerturbedField::nu && index < 1) throw ConfigError(where + ".index counts from 1");
    out.index = static_cast<std::size_t>(std::max(index, 1L) - 1);
    out.amplitude = get_number(p, "amplitude", 0.0, where);
    out.mode = static_cast<int>(get_integer(p, "mode", 1, where));
    if (out.mode < 1) throw ConfigError(where + ".mode must be >= 1");
    out.phase = get_number(p, "phase", 0.0, where);
    return out;
}

sim::BeamSpec parse_beam(const json& b, const std::string& where) {
    allow_keys(b, {"weight", "velocity", "density_amplitude", "velocity_amplitude", "mode", "phase"}, where);
    sim::BeamSpec out;
    out.weight = get_number(b, "weight", 1.0, where);
    out.velocity = get_number(b, "velocity", 0.0, where);
    out.density_amplitude = get_number(b, "density_amplitude", 0.0, where);
    out.velocity_amplitude = get_number(b, "velocity_amplitude", 0.0, where);
    out.mode = static_cast<int>(get_integer(b, "mode", 1, where));
    if (out.mode < 1) throw ConfigError(where + ".mode must be >= 1");
    out.phase = get_number(b, "phase", 0.0, where);
    return out;
}

InitialSpec parse_initial(const json& init) {
    const std::string where = "initial";
    allow_keys(init, {"n0", "u0", "nu0", "perturbations", "beams"}, where);
    InitialSpec s;
    s.n0 = get_number(init, "n0", 1.0, where);
    if (!(s.n0 > 0)) throw ConfigError("initial.n0 must be positive");
    s.u0 = get_number(init, "u0", 0.0, where);
    if (init.contains("nu0")) {
        if (!init["nu0"].is_array()) throw ConfigError("initial.nu0 must be an array");
        for (const auto& v : init["nu0"]) {
            if (!v.is_number()) throw ConfigError("initial.nu0 entries must be numbers");
            s.nu0.push_back(v.get<double>());
        }
    }
    if (init.contains("perturbations")) {
        if (!init["perturbations"].is_array()) throw ConfigError("initial.perturbations must be an array");
        for (std::size_t i = 0; i < init["perturbations"].size(); ++i)
            s.perturbations.push_back(
                parse_perturbation(init["perturbations"][i], "initial.perturbations[" + std::to_string(i) + "]"));
    }
    if (init.contains("beams")) {
        if (!init["beams"].is_array()) throw ConfigError("initial.beams must be an array");
        for (std::size_t i = 0; i < init["beams"].size(); ++i)
            s.beams.push_back(parse_beam(init["beams"][i], "initial.beams[" + std::to_string(i) + "]"));
    }
    return s;
}

IntegratorSpec parse_integrator(const json& in) {
    const std::string where = "integrator";
    allow_keys(in, {"scheme", "dt", "t_end", "discretization", "kernels"}, where);
    IntegratorSpec s;
    const std::string scheme = get_string(in, "scheme", "rk4", where);
    if (scheme == "rk4")
        s.scheme = sim::Scheme::rk4;
    else if (scheme == "split")
        s.scheme = sim::Scheme::split;
    else
        throw ConfigError("integrator.scheme must be rk4 or split");
    s.dt = get_number(in, "dt", 0.0, where);
    if (s.dt < 0) throw ConfigError("integrator.dt must be nonnegative (0 selects the CFL estimate)");
    s.t_end = get_number(in, "t_end", 1.0, where);
    if (!(s.t_end > 0)) throw ConfigError("integrator.t_end must be positive");
    const std::string disc = get_string(in, "discretization", "spectral", where);
    if (disc == "spectral")
        s.discretization = sim::Discretization::spectral;
    else if (disc == "central")
        s.discretization = sim::Discretization::central;
    else
        throw ConfigError("integrator.discretization must be spectral or central");
    const std::string kernels = get_string(in, "kernels", "openmp", where);
    if (kernels == "openmp")
        s.kernels = sim::KernelMode::openmp;
    else if (kernels == "serial")
        s.kernels = sim::KernelMode::serial;
    else
        throw ConfigError("integrator.kernels must be openmp or serial");
    return s;
}

OutputSpec parse_output(const json& out) {
    const std::string where = "output";
    allow_keys(out, {"stride", "snapshots", "path"}, where);
    OutputSpec s;
    const long stride = get_integer(out, "stride", 1, where);
    if (stride < 1) throw ConfigError("output.stride must be at least 1");
    s.stride = static_cast<std::size_t>(stride);
    const long snaps = get_integer(out, "snapshots", 0, where);
    if (snaps < 0) throw ConfigError("output.snapshots must be nonnegative");
    s.snapshots = static_cast<std::size_t>(snaps);
    s.path = get_string(out, "path", "", where);
    return s;
}

CheckSpec parse_checks(const json& c) {
    const std::string where = "checks";
    allow_keys(c, {"drift_tolerance", "casimir_tolerance", "frequency", "moment_tolerance"}, where);
    CheckSpec s;
    s.drift_tolerance = get_number(c, "drift_tolerance", s.drift_tolerance, where);
    if (c.contains("casimir_tolerance")) s.casimir_tolerance = get_number(c, "casimir_tolerance", 0.0, where);
    s.moment_tolerance = get_number(c, "moment_tolerance", s.moment_tolerance, where);
    if (c.contains("frequency")) {
        const json& f = c["frequency"];
        allow_keys(f, {"expected", "tolerance"}, "checks.frequency");
        if (!f.contains("expected")) throw ConfigError("checks.frequency.expected is required");
        s.expected_frequency = get_number(f, "expected", 1.0, "checks.frequency");
        s.frequency_tolerance = get_number(f, "tolerance", s.frequency_tolerance, "checks.frequency");
    }
    return s;
}

VerifySpec parse_verify(const json& v) {
    const std::string where = "verify";
    allow_keys(v, {"levels", "inversion_samples", "seed", "serial"}, where);
    VerifySpec s;
    if (v.contains("levels")) {
        if (v["levels"].is_string())
            s.levels = parse_levels(v["levels"].get<std::string>());
        else if (v["levels"].is_number_integer())
            s.levels = {v["levels"].get<int>()};
        else
            throw ConfigError("verify.levels must be a string such as \"1..6\" or an integer");
    }
    s.inversion_samples = static_cast<int>(get_integer(v, "inversion_samples", 100, where));
    s.seed = static_cast<std::uint64_t>(get_integer(v, "seed", 0x5eed, where));
    if (v.contains("serial")) {
        if (!v["serial"].is_boolean()) throw ConfigError("verify.serial must be a boolean");
        s.serial = v["serial"].get<bool>();
    }
    return s;
}

}  // namespace

std::vector<int> parse_levels(const std::string& text) {
    std::vector<int> out;
    const auto dots = text.find("..");
    if (dots != std::string::npos) {
        const int lo = parse_int(text.substr(0, dots), "level range");
        const int hi = parse_int(text.substr(dots + 2), "level range");
        if (lo > hi) throw ConfigError("empty level range '" + text + "'");
        for (int l = lo; l <= hi; ++l) out.push_back(l);
    } else {
        for (const auto& part : split(text, ',')) out.push_back(parse_int(part, "level"));
    }
    if (out.empty()) throw ConfigError("no levels given");
    return out;
}

std::vector<Rational> parse_rational_list(const std::string& text) {
    std::vector<Rational> out;
    for (const auto& part : split(text, ',')) {
        try {
            out.push_back(parse_rational(part));
        } catch (const std::exception&) {
            throw ConfigError("invalid rational '" + part + "'");
        }
    }
    return out;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    for (const auto& part : split(text, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(part, &used));
            if (used != part.size()) throw std::invalid_argument(part);
        } catch (const std::exception&) {
            throw ConfigError("invalid number '" + part + "'");
        }
    }
    return out;
}

RationalMatrix parse_metric(const std::string& text, std::size_t dim) {
    if (text.empty()) return identity_matrix(dim);
    const auto rows = split(text, ';');
    // A single entry c means c times the identity.
    if (rows.size() == 1 && rows[0].find(',') == std::string::npos) {
        RationalMatrix g = identity_matrix(dim);
        const Rational c = parse_rational_list(rows[0]).at(0);
        for (std::size_t i = 0; i < dim; ++i) g(i, i) = c;
        return g;
    }
    if (rows.size() != dim) throw ConfigError("metric needs " + std::to_string(dim) + " rows");
    RationalMatrix g(dim, dim, Rational(0));
    for (std::size_t i = 0; i < dim; ++i) {
        const auto entries = parse_rational_list(rows[i]);
        if (entries.size() != dim) throw ConfigError("metric row " + std::to_string(i + 1) + " has the wrong length");
        for (std::size_t j = 0; j < dim; ++j) g(i, j) = entries[j];
    }
    return g;
}

BurbyBranch parse_branch(const std::string& text) {
    if (text == "plus") return BurbyBranch::plus;
    if (text == "minus") return BurbyBranch::minus;
    throw ConfigError("branch must be plus or minus");
}

GammaRule parse_rule(const std::string& text) {
    if (text == "euler") return GammaRule::euler;
    if (text == "waterbag") return GammaRule::waterbag;
    if (text == "zero") return GammaRule::zero;
    throw ConfigError("gamma rule must be euler, waterbag or zero");
}

ClosureFamily build_family(const ClosureSpec& s) {
    try {
        if (s.family == "cold") return make_cold();
        if (s.family == "multidelta") {
            if (s.streams < 1) throw ConfigError("multidelta needs at least one stream");
            return make_multidelta(s.streams);
        }
        if (s.family == "waterbag") {
            if (s.heights.size() < 3) throw ConfigError("waterbag needs at least three heights");
            return make_waterbag(s.heights);
        }
        if (s.family == "burby") {
            if (s.level < 1) throw ConfigError("burby level must be at least 1");
            return make_burby(s.level, s.branch);
        }
        if (s.family == "fourfield") return make_fourfield(s.kappa);
        if (s.family == "generic") {
            if (s.mu2.empty()) throw ConfigError("generic family needs mu2");
            std::size_t dim = std::max(max_nu_index(s.mu2), max_nu_index(s.mu1));
            if (!s.metric.empty()) {
                const auto rows = split(s.metric, ';');
                if (rows.size() > 1 || rows[0].find(',') != std::string::npos) dim = std::max(dim, rows.size());
            }
            if (dim == 0) throw ConfigError("generic mu2 must use the variables nu1, nu2, ...");
            const auto names = indexed_names("nu", dim);
            const MultiPoly mu2 = parse_poly(s.mu2, names);
            std::optional<MultiPoly> mu1;
            if (!s.mu1.empty()) mu1 = parse_poly(s.mu1, names);
            return make_generic(mu2, parse_metric(s.metric, dim), s.rule, s.lambda, mu1);
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError("invalid " + s.family + " parameters: " + e.what());
    }
    throw ConfigError("unknown closure family '" + s.family + "'");
}

json to_json(const ClosureSpec& s) {
    json j{{"family", s.family}};
    json p = json::object();
    if (s.family == "multidelta") p["streams"] = s.streams;
    if (s.family == "waterbag") {
        p["heights"] = json::array();
        for (const auto& h : s.heights) p["heights"].push_back(to_string(h));
    }
    if (s.family == "burby") {
        p["level"] = s.level;
        p["branch"] = s.branch == BurbyBranch::plus ? "plus" : "minus";
    }
    if (s.family == "fourfield") p["kappa"] = to_string(s.kappa);
    if (s.family == "generic") {
        p["mu2"] = s.mu2;
        if (!s.mu1.empty()) p["mu1"] = s.mu1;
        if (!s.metric.empty()) p["metric"] = s.metric;
        p["rule"] = s.rule == GammaRule::euler ? "euler" : s.rule == GammaRule::waterbag ? "waterbag" : "zero";
        p["lambda"] = to_string(s.lambda);
    }
    j["params"] = p;
    return j;
}

RunConfig parse_run_config(const json& doc) {
    allow_keys(doc, {"model", "grid", "closure", "initial", "integrator", "output", "checks", "verify"}, "config");
    RunConfig c;
    const std::string model = get_string(doc, "model", "fluid", "config");
    if (model == "fluid")
        c.model = ModelKind::fluid;
    else if (model == "streams")
        c.model = ModelKind::streams;
    else
        throw ConfigError("model must be fluid or streams");
    if (doc.contains("grid")) {
        const json& g = doc["grid"];
        allow_keys(g, {"L", "nx"}, "grid");
        c.grid.L = get_number(g, "L", c.grid.L, "grid");
        const long nx = get_integer(g, "nx", 64, "grid");
        if (nx < 1) throw ConfigError("grid.nx must be positive");
        c.grid.nx = static_cast<std::size_t>(nx);
    }
    try {
        c.grid.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("grid: ") + e.what());
    }
    if (doc.contains("closure")) c.closure = parse_closure(doc["closure"]);
    if (doc.contains("initial")) c.initial = parse_initial(doc["initial"]);
    if (doc.contains("integrator")) c.integrator = parse_integrator(doc["integrator"]);
    if (doc.contains("output")) c.output = parse_output(doc["output"]);
    if (doc.contains("checks")) c.checks = parse_checks(doc["checks"]);
    if (doc.contains("verify")) c.verify = parse_verify(doc["verify"]);
    if (c.model == ModelKind::streams) {
        if (c.initial.beams.empty()) throw ConfigError("streams model needs initial.beams");
        if (c.integrator.scheme != sim::Scheme::rk4) throw ConfigError("streams model only supports rk4");
    }
    c.source = doc;
    return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
    }
    return parse_run_config(doc);
}

sim::FieldState initial_fluid_state(const RunConfig& c, const ClosureFamily& family) {
    const InitialSpec& in = c.initial;
    try {
        if (!in.beams.empty()) {
            const bool multidelta = family.kind == FamilyKind::multidelta &&
                                    std::get<MultiDeltaParams>(family.params).streams == static_cast<int>(in.beams.size());
            if (!multidelta)
                throw ConfigError("initial.beams needs the multidelta closure with streams = " +
                                  std::to_string(in.beams.size()));
            if (in.u0 != 0.0 || !in.nu0.empty() || !in.perturbations.empty())
                throw ConfigError("initial.beams cannot be combined with u0, nu0 or perturbations");
            return sim::fluid_from_streams(sim::multi_stream_state(c.grid, in.n0, in.beams));
        }
        if (in.nu0.size() != family.nvars())
            throw ConfigError("initial.nu0 needs " + std::to_string(family.nvars()) + " entries for " + family.tag());
        sim::FieldState s = sim::homogeneous_state(c.grid, in.n0, in.u0, in.nu0);
        for (const auto& p : in.perturbations) {
            if (p.field == sim::PerturbedField::nu && p.index >= family.nvars())
                throw ConfigError("perturbation index exceeds the number of normal variables");
            sim::perturb(s, c.grid, p);
        }
        return s;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("initial: ") + e.what());
    }
}

sim::StreamState initial_stream_state(const RunConfig& c) {
    if (c.initial.beams.empty()) throw ConfigError("initial.beams is empty");
    try {
        return sim::multi_stream_state(c.grid, c.initial.n0, c.initial.beams);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("initial.beams: ") + e.what());
    }
}

}  // namespace hydroclose::cli
