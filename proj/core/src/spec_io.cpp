#include "kfrac/spec_io.hpp"

#include "kfrac/errors.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <set>
#include <sstream>

#ifndef KFRAC_VERSION
#define KFRAC_VERSION "0.0.0"
#endif

namespace kfrac::io {

using nlohmann::json;

namespace {

std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(join(path, key), "missing required key");
    return *it;
}

double number(const json& obj, const std::string& key, const std::string& path) {
    const json& v = require(obj, key, path);
    if (!v.is_number()) throw ParseError(join(path, key), "expected a number, got " + std::string(v.type_name()));
    return v.get<double>();
}

double number_or(const json& obj, const std::string& key, const std::string& path, double fallback) {
    return obj.contains(key) ? number(obj, key, path) : fallback;
}

long long integer(const json& obj, const std::string& key, const std::string& path) {
    const json& v = require(obj, key, path);
    if (v.is_number_integer()) return v.get<long long>();
    if (v.is_number_float()) {
        const double d = v.get<double>();
        if (std::isfinite(d) && d == std::floor(d)) return static_cast<long long>(d);
    }
    throw ParseError(join(path, key), "expected an integer, got " + v.dump());
}

template <class T>
T unsigned_or(const json& obj, const std::string& key, const std::string& path, T fallback) {
    if (!obj.contains(key)) return fallback;
    const long long v = integer(obj, key, path);
    if (v < 0) throw ParseError(join(path, key), "must be nonnegative");
    return static_cast<T>(v);
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& path) {
    if (!obj.is_object()) throw ParseError(path, "expected an object");
    for (const auto& [k, _] : obj.items())
        if (!allowed.contains(k)) throw ParseError(join(path, k), "unknown key");
}

Potential parse_potential(const json& j) {
    const std::string path = "potential";
    reject_unknown(j, {"kind", "coeffs", "value"}, path);
    const json& kind = require(j, "kind", path);
    if (!kind.is_string()) throw ParseError("potential.kind", "expected a string");
    const auto k = kind.get<std::string>();
    if (k == "const") return Potential::constant(number(j, "value", path));
    if (k == "poly") {
        const json& c = require(j, "coeffs", path);
        if (!c.is_array() || c.empty()) throw ParseError("potential.coeffs", "expected a non-empty array");
        std::vector<double> coeffs;
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (!c[i].is_number())
                throw ParseError("potential.coeffs[" + std::to_string(i) + "]", "expected a number");
            coeffs.push_back(c[i].get<double>());
        }
        return Potential::polynomial(std::move(coeffs));
    }
    throw ParseError("potential.kind", "expected \"poly\" or \"const\", got \"" + k + "\"");
}

Nonlinearity parse_nonlinearity(const json& j) {
    const std::string path = "nonlinearity";
    reject_unknown(j, {"kind", "c0", "c1", "r", "delta", "q1", "q2", "M1", "M2", "beta"}, path);
    const json& kind = require(j, "kind", path);
    if (!kind.is_string() || kind.get<std::string>() != "power")
        throw ParseError("nonlinearity.kind", "only \"power\" is supported");
    PowerFamily f{number(j, "c0", path), number(j, "c1", path), number(j, "r", path)};
    GrowthConstants c;
    c.delta = number(j, "delta", path);
    c.q1 = number(j, "q1", path);
    c.q2 = number(j, "q2", path);
    c.M1 = number(j, "M1", path);
    c.M2 = number(j, "M2", path);
    c.beta = number(j, "beta", path);
    return Nonlinearity::power(f, c);
}

MountainPassConfig parse_solver(const json& j, MountainPassConfig cfg) {
    const std::string path = "solver";
    reject_unknown(j,
                   {"path_points", "max_outer_iters", "descent_tol", "armijo_c", "armijo_shrink", "seed",
                    "newton_switch_tol", "max_newton_iters", "reparam_every", "bound_slack"},
                   path);
    cfg.path_points = unsigned_or(j, "path_points", path, cfg.path_points);
    cfg.max_outer_iters = unsigned_or(j, "max_outer_iters", path, cfg.max_outer_iters);
    cfg.descent_tol = number_or(j, "descent_tol", path, cfg.descent_tol);
    cfg.armijo_c = number_or(j, "armijo_c", path, cfg.armijo_c);
    cfg.armijo_shrink = number_or(j, "armijo_shrink", path, cfg.armijo_shrink);
    cfg.seed = unsigned_or(j, "seed", path, cfg.seed);
    cfg.newton_switch_tol = number_or(j, "newton_switch_tol", path, cfg.newton_switch_tol);
    cfg.max_newton_iters = unsigned_or(j, "max_newton_iters", path, cfg.max_newton_iters);
    cfg.reparam_every = unsigned_or(j, "reparam_every", path, cfg.reparam_every);
    cfg.bound_slack = number_or(j, "bound_slack", path, cfg.bound_slack);

    if (cfg.path_points < 16) throw ParseError("solver.path_points", "must be at least 16");
    for (auto [name, v] : {std::pair{"descent_tol", cfg.descent_tol}, {"newton_switch_tol", cfg.newton_switch_tol},
                           {"bound_slack", cfg.bound_slack}})
        if (!(v > 0.0)) throw ParseError(std::string("solver.") + name, "must be positive");
    for (auto [name, v] : {std::pair{"armijo_c", cfg.armijo_c}, {"armijo_shrink", cfg.armijo_shrink}})
        if (!(v > 0.0 && v < 1.0)) throw ParseError(std::string("solver.") + name, "must lie in (0, 1)");
    if (cfg.reparam_every == 0) throw ParseError("solver.reparam_every", "must be positive");
    return cfg;
}

json check_json(const BoundCheck& c) {
    return {{"ok", c.ok}, {"asserted", c.asserted}, {"value", c.value}, {"bound", c.bound}, {"margin", c.margin}};
}

BoundCheck check_from_json(const json& j) {
    BoundCheck c;
    c.ok = j.at("ok").get<bool>();
    c.asserted = j.at("asserted").get<bool>();
    c.value = j.at("value").get<double>();
    c.bound = j.at("bound").get<double>();
    c.margin = j.at("margin").get<double>();
    return c;
}

BoundVerdicts verdicts_from_json(const json& j) {
    BoundVerdicts v;
    v.v_norm_bound = check_from_json(j.at("v_norm_bound"));
    v.sup_half_delta = check_from_json(j.at("sup_half_delta"));
    v.sup_embedding = check_from_json(j.at("sup_embedding"));
    v.sup_bound = check_from_json(j.at("sup_bound"));
    v.c_upper = check_from_json(j.at("c_upper"));
    v.c_lower = check_from_json(j.at("c_lower"));
    v.geometry_ok = j.at("geometry_ok").get<bool>();
    v.trivial_solution = j.at("trivial_solution").get<bool>();
    v.decay = j.at("decay").get<std::string>();
    return v;
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace

SpecFile parse_spec(const json& j) {
    reject_unknown(j,
                   {"description", "a", "b", "p", "alpha", "T", "N", "lambda_log10", "potential", "nonlinearity",
                    "grid_m", "solver"},
                   "");
    SpecFile f;
    f.spec.a = number(j, "a", "");
    f.spec.b = number(j, "b", "");
    f.spec.p = static_cast<int>(integer(j, "p", ""));
    f.spec.alpha = number(j, "alpha", "");
    f.spec.T = number(j, "T", "");
    f.spec.N = static_cast<int>(integer(j, "N", ""));
    f.spec.potential = parse_potential(require(j, "potential", ""));
    f.spec.nl = parse_nonlinearity(require(j, "nonlinearity", ""));
    if (j.contains("lambda_log10")) f.lambda_log10 = number(j, "lambda_log10", "");
    f.solver.grid_m = unsigned_or(j, "grid_m", "", f.solver.grid_m);
    if (f.solver.grid_m < Grid::kMinIntervals)
        throw ParseError("grid_m", "must be at least " + std::to_string(Grid::kMinIntervals));
    if (j.contains("solver")) f.solver = parse_solver(j.at("solver"), f.solver);
    return f;
}

SpecFile load_spec(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("", "cannot open " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        // Translate the byte offset into line:column.
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError("", path.string() + ":" + std::to_string(line) + ":" + std::to_string(col) +
                                 ": invalid JSON (" + e.what() + ")");
    }
    return parse_spec(j);
}

json to_json(const SpecFile& f) {
    const auto& s = f.spec;
    json j;
    j["a"] = s.a;
    j["b"] = s.b;
    j["p"] = s.p;
    j["alpha"] = s.alpha;
    j["T"] = s.T;
    j["N"] = s.N;
    if (s.potential.kind == Potential::Kind::constant)
        j["potential"] = {{"kind", "const"}, {"value", s.potential.coeffs.at(0)}};
    else
        j["potential"] = {{"kind", "poly"}, {"coeffs", s.potential.coeffs}};
    const auto& fam = s.nl.power_family();
    if (!fam) throw std::invalid_argument("only power-family nonlinearities can be serialized");
    const auto& c = s.nl.constants();
    j["nonlinearity"] = {{"kind", "power"}, {"c0", fam->c0}, {"c1", fam->c1}, {"r", fam->r},
                         {"delta", c.delta}, {"q1", c.q1},     {"q2", c.q2},    {"M1", c.M1},
                         {"M2", c.M2},       {"beta", c.beta}};
    if (f.lambda_log10) j["lambda_log10"] = *f.lambda_log10;
    j["grid_m"] = f.solver.grid_m;
    const auto& cfg = f.solver;
    j["solver"] = {{"path_points", cfg.path_points},
                   {"max_outer_iters", cfg.max_outer_iters},
                   {"descent_tol", cfg.descent_tol},
                   {"armijo_c", cfg.armijo_c},
                   {"armijo_shrink", cfg.armijo_shrink},
                   {"seed", cfg.seed},
                   {"newton_switch_tol", cfg.newton_switch_tol},
                   {"max_newton_iters", cfg.max_newton_iters},
                   {"reparam_every", cfg.reparam_every},
                   {"bound_slack", cfg.bound_slack}};
    return j;
}

json to_json(const LogReal& x) {
    return {{"decimal", x.to_string(12)},
            {"log10", x.is_zero() ? json(nullptr) : json(x.log10_abs())},
            {"sign", static_cast<int>(x.sign())}};
}

json to_json(const ConstantsReport& c) {
    return {{"D", to_json(c.D)},
            {"G", to_json(c.G)},
            {"G0", to_json(c.G0)},
            {"C_star", to_json(c.C_star)},
            {"Lambda1", to_json(c.Lambda1)},
            {"Lambda1_ring", to_json(c.Lambda1_ring)},
            {"Lambda1_endpoint", to_json(c.Lambda1_endpoint)},
            {"Lambda2", to_json(c.Lambda2)},
            {"Lambda3", to_json(c.Lambda3)},
            {"lambda_star", to_json(c.lambda_star)},
            {"lambda_star_index", c.lambda_star_index},
            {"theta", c.theta},
            {"nu_coeff", to_json(c.nu_coeff)},
            {"bound_coeff", to_json(c.bound_coeff)},
            {"sup_coeff", to_json(c.sup_coeff)},
            {"decay_exponent", c.decay_exponent},
            {"v_min", c.v_min},
            {"v_max", c.v_max}};
}

json to_json(const NormReport& n) {
    return {{"lp_norm", n.lp_norm},
            {"frac_seminorm", n.frac_seminorm},
            {"e_norm", n.e_norm},
            {"v_norm", n.v_norm},
            {"sup_norm", n.sup_norm}};
}

NormReport norms_from_json(const json& j) {
    NormReport n;
    n.lp_norm = j.at("lp_norm").get<double>();
    n.frac_seminorm = j.at("frac_seminorm").get<double>();
    n.e_norm = j.at("e_norm").get<double>();
    n.v_norm = j.at("v_norm").get<double>();
    n.sup_norm = j.at("sup_norm").get<double>();
    return n;
}

json to_json(const BoundVerdicts& v) {
    return {{"v_norm_bound", check_json(v.v_norm_bound)},
            {"sup_half_delta", check_json(v.sup_half_delta)},
            {"sup_embedding", check_json(v.sup_embedding)},
            {"sup_bound", check_json(v.sup_bound)},
            {"c_upper", check_json(v.c_upper)},
            {"c_lower", check_json(v.c_lower)},
            {"geometry_ok", v.geometry_ok},
            {"trivial_solution", v.trivial_solution},
            {"decay", v.decay},
            {"all_asserted_ok", v.all_asserted_ok()}};
}

json to_json(const GridFunction& u) {
    json rows = json::array();
    for (std::size_t i = 0; i < u.size(); ++i) {
        const auto r = u.row(i);
        rows.push_back(std::vector<double>(r.begin(), r.end()));
    }
    return {{"T", u.grid().length()}, {"m", u.grid().intervals()}, {"components", u.components()}, {"values", rows}};
}

GridFunction grid_function_from_json(const json& j, const Grid& grid) {
    const json& rows = j.at("values");
    if (!rows.is_array() || rows.size() != grid.size())
        throw ParseError("values", "expected " + std::to_string(grid.size()) + " rows");
    const std::size_t N = j.at("components").get<std::size_t>();
    RowMatrix values(static_cast<Eigen::Index>(grid.size()), static_cast<Eigen::Index>(N));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != N) throw ParseError("values[" + std::to_string(i) + "]", "wrong component count");
        for (std::size_t k = 0; k < N; ++k)
            values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = rows[i][k].get<double>();
    }
    return GridFunction(grid, std::move(values));
}

json to_json(const ResultFile& r, const ConstantsReport& constants) {
    const SolveResult& s = r.result;
    json j;
    j["tool"] = "kfrac";
    j["tool_version"] = r.tool_version;
    j["timestamp"] = r.timestamp.empty() ? utc_timestamp() : r.timestamp;
    j["spec"] = to_json(r.spec);
    j["lambda_log10"] = r.lambda_log10;
    j["seed"] = r.spec.solver.seed;
    j["constants"] = to_json(constants);
    j["result"] = {{"c_lambda", s.c_lambda},
                   {"residual", s.residual},
                   {"residual_abs", s.residual_abs},
                   {"nu", s.nu},
                   {"d", s.d},
                   {"iterations", s.iterations},
                   {"newton_iterations", s.newton_iterations},
                   {"morse_index", s.morse_index},
                   {"path_max", s.path_max},
                   {"geometry_ok", s.geometry_ok},
                   {"norms", to_json(s.norms)},
                   {"u", to_json(s.u)}};
    j["verdicts"] = to_json(s.bounds);
    return j;
}

ResultFile result_from_json(const json& j) {
    try {
        SpecFile spec = parse_spec(j.at("spec"));
        const json& res = j.at("result");
        const json& uj = res.at("u");
        const Grid grid(uj.at("T").get<double>(), uj.at("m").get<std::size_t>());
        SolveResult s(grid_function_from_json(uj, grid));
        s.c_lambda = res.at("c_lambda").get<double>();
        s.residual = res.at("residual").get<double>();
        s.residual_abs = res.at("residual_abs").get<double>();
        s.nu = res.at("nu").get<double>();
        s.d = res.at("d").get<double>();
        s.iterations = res.at("iterations").get<std::size_t>();
        s.newton_iterations = res.at("newton_iterations").get<std::size_t>();
        s.morse_index = res.at("morse_index").get<int>();
        s.path_max = res.at("path_max").get<double>();
        s.geometry_ok = res.at("geometry_ok").get<bool>();
        s.norms = norms_from_json(res.at("norms"));
        s.bounds = verdicts_from_json(j.at("verdicts"));
        return ResultFile{std::move(spec), j.at("lambda_log10").get<double>(), std::move(s),
                          j.at("tool_version").get<std::string>(), j.at("timestamp").get<std::string>()};
    } catch (const json::exception& e) {
        throw ParseError("", std::string("malformed result file: ") + e.what());
    }
}

std::string tool_version() { return KFRAC_VERSION; }

} // namespace kfrac::io
