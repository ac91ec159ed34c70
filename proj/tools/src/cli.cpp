#include "kfrac_cli/cli.hpp"

#include <kfrac/constants.hpp>
#include <kfrac/errors.hpp>
#include <kfrac/selftest.hpp>
#include <kfrac/solver.hpp>
#include <kfrac/spec_io.hpp>
#include <kfrac/verify.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

namespace kfrac::cli {

namespace {

constexpr std::size_t kGeometrySamples = 100;

struct Options {
    std::string spec_path;
    bool json = false;
    std::optional<double> lambda_log10;
    std::optional<std::size_t> grid;
    std::optional<std::uint64_t> seed;
    std::string out_path;
    std::vector<double> lambda_list;
};

std::string full(double x) {
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

// λ* as a q1(p-1)-th power, the form the growth estimate produces it in.
std::string as_power(const LogReal& x, double exponent) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(2) << std::pow(10.0, x.log10_abs() / exponent) << "^"
       << std::defaultfloat << exponent;
    return os.str();
}

void write_or_print(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

io::SpecFile load(const Options& o) {
    io::SpecFile f = io::load_spec(o.spec_path);
    if (o.grid) f.solver.grid_m = *o.grid;
    if (o.seed) f.solver.seed = *o.seed;
    return f;
}

int cmd_constants(const Options& o, std::ostream& out) {
    const io::SpecFile f = load(o);
    const Problem problem(f.spec, f.solver.grid_m);
    const ConstantsReport c = compute_constants(problem);
    const double star_exponent = f.spec.nl.constants().q1 * (f.spec.p - 1);
    if (o.json) {
        auto j = io::to_json(c);
        j["lambda_star_power"] = as_power(c.lambda_star, star_exponent);
        out << j.dump(2) << "\n";
        return kOk;
    }
    auto row = [&](const char* name, const LogReal& x) {
        out << std::left << std::setw(18) << name << x.to_string(8) << "   log10 = " << std::setprecision(10)
            << x.log10_abs() << "\n";
    };
    row("D", c.D);
    row("G", c.G);
    row("G0", c.G0);
    row("C*", c.C_star);
    row("Lambda1", c.Lambda1);
    row("  ring branch", c.Lambda1_ring);
    row("  endpoint branch", c.Lambda1_endpoint);
    row("Lambda2", c.Lambda2);
    row("Lambda3", c.Lambda3);
    row("lambda*", c.lambda_star);
    out << "lambda* = Lambda" << c.lambda_star_index << " ~ " << as_power(c.lambda_star, star_exponent) << "\n";
    out << "theta = " << c.theta << ", V on grid in [" << c.v_min << ", " << c.v_max << "]\n";
    return kOk;
}

int cmd_solve(const Options& o, std::ostream& out, std::ostream& err) {
    io::SpecFile f = load(o);
    const double L = o.lambda_log10 ? *o.lambda_log10 : f.lambda_log10.value_or(NAN);
    if (std::isnan(L)) throw ParseError("lambda_log10", "give --lambda-log10 or lambda_log10 in the spec");
    f.lambda_log10 = L;
    const Lambda lambda = Lambda::from_log10(L);
    const Problem problem(f.spec, f.solver.grid_m);
    const ConstantsReport c = compute_constants(problem);

    SolveResult r = solve(problem, c, lambda, f.solver);
    const GeometryVerdict g =
        check_geometry(problem, c, lambda, kGeometrySamples, f.solver.seed, f.solver.bound_slack);

    io::ResultFile rf{f, L, r, io::tool_version(), {}};
    auto j = io::to_json(rf, c);
    j["geometry_check"] = {{"pass", g.pass()},
                           {"ring_ok", g.ring_ok},
                           {"ring_min_energy", g.ring_min_energy},
                           {"d", g.d},
                           {"nu", g.nu},
                           {"endpoint_energy", g.endpoint_energy},
                           {"endpoint", to_string(g.endpoint)},
                           {"endpoint_asserted", g.endpoint_asserted},
                           {"samples", kGeometrySamples}};
    write_or_print(o.out_path, j.dump(1) + "\n", out);

    const bool ok = r.bounds.all_asserted_ok() && g.pass();
    err << "log10 lambda = " << L << ": c_lambda = " << full(r.c_lambda) << ", ||u||_V = " << full(r.norms.v_norm)
        << ", ||u||_inf = " << full(r.norms.sup_norm) << ", residual = " << r.residual << " ("
        << r.iterations << " descent + " << r.newton_iterations << " Newton iterations), verdicts "
        << (ok ? "pass" : "FAIL") << "\n";
    return ok ? kOk : kVerdict;
}

int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err) {
    const io::SpecFile f = load(o);
    const Problem problem(f.spec, f.solver.grid_m);
    const ConstantsReport c = compute_constants(problem);
    std::vector<double> list = o.lambda_list;
    std::sort(list.begin(), list.end());
    std::vector<Lambda> lambdas;
    for (double L : list) lambdas.push_back(Lambda::from_log10(L));

    const auto table = sweep(problem, c, lambdas, f.solver);
    std::ostringstream csv;
    csv << "lambda_log10,vnorm,supnorm,c_lambda,kk6_bound,margin,status\r\n";
    bool all_ok = true;
    for (const auto& e : table) {
        const LogReal bound = v_norm_pow_bound(c, e.lambda);
        csv << full(e.lambda.log10()) << ",";
        if (e.result) {
            const auto& r = *e.result;
            csv << full(r.norms.v_norm) << "," << full(r.norms.sup_norm) << "," << full(r.c_lambda) << ","
                << full(bound.to_double()) << "," << full(r.bounds.v_norm_bound.margin) << ",";
            const bool ok = r.bounds.all_asserted_ok();
            all_ok = all_ok && ok;
            csv << (ok ? "ok" : "verdict-failure") << "\r\n";
        } else {
            all_ok = false;
            csv << ",,," << full(bound.to_double()) << ",," << csv_field(e.status) << "\r\n";
        }
    }
    write_or_print(o.out_path, csv.str(), out);

    const DecayVerdict d = check_decay(decay_rows(table), c, f.spec.p);
    err << "decay: " << to_string(d.status) << (d.detail.empty() ? "" : " (" + d.detail + ")") << "\n";
    if (!all_ok) return kConvergence;
    return d.status == DecayStatus::fail ? kVerdict : kOk;
}

int cmd_selftest(const Options& o, std::ostream& out) {
    const auto results = run_selftest();
    bool all = true;
    for (const auto& r : results) all = all && r.pass;
    if (o.json) {
        out << to_json(results).dump(2) << "\n";
    } else {
        for (const auto& r : results)
            out << (r.pass ? "PASS " : "FAIL ") << std::left << std::setw(13) << r.name << r.detail << "\n";
    }
    return all ? kOk : kVerdict;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Kirchhoff-type fractional p-Laplacian systems: constants, mountain-pass solves, sweeps"};
    app.set_version_flag("--version", io::tool_version());
    app.require_subcommand(1);
    Options o;

    auto* constants = app.add_subcommand("constants", "print the threshold constants for a spec");
    constants->add_option("spec", o.spec_path, "problem spec (JSON)")->required();
    constants->add_flag("--json", o.json, "machine-readable output");
    constants->add_option("--grid", o.grid, "grid intervals used to sample V");

    auto* solve_cmd = app.add_subcommand("solve", "compute a mountain-pass critical point and verify it");
    solve_cmd->add_option("spec", o.spec_path, "problem spec (JSON)")->required();
    solve_cmd->add_option("--lambda-log10", o.lambda_log10, "log10 of lambda");
    solve_cmd->add_option("--grid", o.grid, "grid intervals m")->check(CLI::Range(8, 1 << 16));
    solve_cmd->add_option("--out", o.out_path, "result file (stdout when omitted)");
    solve_cmd->add_option("--seed", o.seed, "overrides solver.seed");

    auto* sweep_cmd = app.add_subcommand("sweep", "independent solves over a list of lambdas");
    sweep_cmd->add_option("spec", o.spec_path, "problem spec (JSON)")->required();
    sweep_cmd->add_option("--lambda-log10-list", o.lambda_list, "comma-separated log10 lambdas")->delimiter(',');
    sweep_cmd->add_option("--grid", o.grid, "grid intervals m")->check(CLI::Range(8, 1 << 16));
    sweep_cmd->add_option("--out", o.out_path, "CSV file (stdout when omitted)");
    sweep_cmd->add_option("--seed", o.seed, "overrides solver.seed");

    auto* selftest = app.add_subcommand("selftest", "run the built-in numerical oracle suites");
    selftest->add_flag("--json", o.json, "machine-readable output");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kParse;
    }

    try {
        if (constants->parsed()) return cmd_constants(o, out);
        if (solve_cmd->parsed()) return cmd_solve(o, out, err);
        if (sweep_cmd->parsed()) return cmd_sweep(o, out, err);
        return cmd_selftest(o, out);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kParse;
    } catch (const InvalidSpecError& e) {
        err << "error: invalid spec, " << e.what() << "\n";
        return kParse;
    } catch (const GeometryNotVerified& e) {
        err << "error: " << e.what() << "\n";
        return kGeometry;
    } catch (const MaxItersExceeded& e) {
        err << "error: " << e.what() << "\n";
        return kConvergence;
    } catch (const DegenerateCollapse& e) {
        err << "error: " << e.what() << "\n";
        return kConvergence;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kOther;
    }
}

} // namespace kfrac::cli
