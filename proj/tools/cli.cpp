#include "cli.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <regex>
#include <sstream>

#include <CLI11.hpp>

#include "digest.hpp"
#include "knotspread/constructions.hpp"
#include "knotspread/convergence.hpp"
#include "knotspread/curve_io.hpp"
#include "knotspread/error.hpp"
#include "knotspread/knot_guard.hpp"
#include "knotspread/optimize.hpp"
#include "knotspread/spread.hpp"
#include "knotspread/thickness.hpp"
#include "report.hpp"
#include "suites.hpp"

#ifndef KNOTSPREAD_VERSION
#define KNOTSPREAD_VERSION "unknown"
#endif

namespace knotspread::cli {

namespace {

namespace fs = std::filesystem;

struct Options {
    // quadrature
    int base_nodes = 8;
    int max_depth = 24;
    double rel_tol = 1e-7;
    int threads = 1;
    bool nondeterministic = false;

    // compute
    std::string curve_file;
    std::string p;
    bool force_quadrature = false;

    // validate
    std::string suite;
    std::uint64_t seed = 42;
    double tolerance_scale = 1.0;

    // construct
    std::string kind;
    int n = 256;
    double radius = 1.0;
    double R = 100.0;
    double eps = 1.0;
    std::string host = "ngon256";
    std::string pattern = "trefoil";
    double ball_radius = 0.01;
    std::size_t edge = 0;
    std::string output;

    // optimize
    std::string mode;
    std::string input;
    int ngon = 64;
    double lambda = 1.05;
    std::optional<double> rop_reference;
    OptimizerConfig opt{};

    // table
    std::string experiment;
    std::vector<int> n_list{16, 64, 256, 1024};
    std::vector<double> r_list{0.1, 0.03, 0.01};
    std::vector<double> aspect_list{10.0, 100.0, 1000.0};
    std::vector<double> p_list{0.1, -0.1, 0.01, -0.01, 0.001, -0.001};
};

QuadratureConfig quadrature_of(const Options& o) {
    QuadratureConfig q;
    q.base_nodes = o.base_nodes;
    q.max_depth = o.max_depth;
    q.rel_tol = o.rel_tol;
    q.threads = o.threads;
    q.deterministic = !o.nondeterministic;
    q.validate();
    return q;
}

void add_quadrature_flags(CLI::App* app, Options& o) {
    app->add_option("--base-nodes", o.base_nodes, "Gauss nodes per panel");
    app->add_option("--max-depth", o.max_depth, "adaptive bisection depth");
    app->add_option("--rel-tol", o.rel_tol, "relative quadrature tolerance");
    app->add_option("--threads", o.threads, "worker threads for the pair sweep");
    app->add_flag("--nondeterministic", o.nondeterministic, "allow completion-order reduction");
}

std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
    return s;
}

/// The manifest: command line, every option value (given or default), inputs and their digests.
std::vector<std::pair<std::string, std::string>> manifest(const CLI::App& sub, int argc, const char* const* argv,
                                                          const std::vector<fs::path>& inputs) {
    std::vector<std::pair<std::string, std::string>> m;
    m.emplace_back("command", sub.get_name());
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    m.emplace_back("argv", join(args, " "));
    for (const CLI::Option* opt : sub.get_options()) {
        const std::string name = opt->get_single_name();
        if (name == "help") continue;
        std::string value;
        if (opt->get_expected_min() == 0) {
            value = opt->count() > 0 ? "true" : "false";
        } else if (opt->count() > 0) {
            value = join(opt->results(), ",");
        } else {
            value = opt->get_default_str();
        }
        m.emplace_back("flag." + name, value);
    }
    for (const fs::path& p : inputs) m.emplace_back("input." + p.filename().string() + ".sha256", sha256_file(p));
    m.emplace_back("version", KNOTSPREAD_VERSION);
    m.emplace_back("wall_clock", utc_now());
    return m;
}

void emit_manifest(Report& r, const std::vector<std::pair<std::string, std::string>>& m) {
    for (const auto& [k, v] : m) r.record("manifest." + k, v);
}

std::vector<std::string> manifest_comments(const std::vector<std::pair<std::string, std::string>>& m) {
    std::vector<std::string> c;
    for (const auto& [k, v] : m) c.push_back("manifest." + k + "=" + v);
    return c;
}

std::string exponent_text(const Exponent& e) {
    if (e.is_log()) return "log";
    if (e.is_diameter()) return "inf";
    return fmt12(e.p());
}

bool is_file(const std::string& s) { return fs::is_regular_file(fs::path(s)); }

KnotArcPattern resolve_pattern(const std::string& source) {
    if (is_file(source)) {
        KnotArcPattern p = pattern_from_file(read_curve_file(source));
        validate_pattern(p);
        return p;
    }
    if (source == "straight" || source == "unknot") return straight_pattern();
    return builtin_pattern(source);
}

PolygonalCurve resolve_host(const std::string& source, double radius) {
    static const std::regex ngon(R"(ngon(\d+))");
    std::smatch m;
    if (!is_file(source) && std::regex_match(source, m, ngon)) return regular_ngon(std::stoi(m[1]), radius);
    return read_curve(source);
}

std::vector<fs::path> file_inputs(std::initializer_list<std::string> candidates) {
    std::vector<fs::path> out;
    for (const std::string& c : candidates) {
        if (!c.empty() && is_file(c)) out.emplace_back(c);
    }
    return out;
}

void write_output(const std::string& path, const PolygonalCurve& curve, std::vector<std::string> comments) {
    std::ofstream f(path);
    if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
    write_curve(f, curve, comments);
}

using Manifest = std::vector<std::pair<std::string, std::string>>;

int cmd_compute(const Options& o, const Manifest& m, Report& r) {
    const Exponent e = Exponent::parse(o.p);
    const QuadratureConfig q = quadrature_of(o);
    const PolygonalCurve curve = read_curve(o.curve_file);
    const SpreadValue v = spread(curve, e, q, o.force_quadrature);
    const double len = length(curve);
    emit_manifest(r, m);
    r.record("vertices", curve.size());
    r.record("length", len);
    r.record("diameter", diameter(curve));
    r.record("exponent", exponent_text(e));
    r.record("spread", v.value);
    r.record("raw_moment", v.raw_moment);
    r.record("ratio", len / v.value);
    r.record("err_estimate", v.err_estimate);
    r.record("method", to_string(v.method));
    return kOk;
}

int cmd_validate(const Options& o, const Manifest& m, Report& r) {
    if (!(o.tolerance_scale > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance scale must be positive");
    const std::vector<Check> checks =
        o.suite == "constants" ? constants_suite(o.tolerance_scale) : properties_suite(o.seed, o.tolerance_scale);
    emit_manifest(r, m);
    r.record("suite", o.suite);
    long failed = 0;
    for (const Check& c : checks) {
        if (!c.pass) ++failed;
        r.line("check." + c.name + "=" + (c.pass ? "PASS" : "FAIL") + " observed=" + fmt12(c.observed) +
               " target=" + fmt12(c.target) + " tol=" + fmt12(c.tolerance));
    }
    r.record("checks.total", checks.size());
    r.record("checks.failed", failed);
    r.record("status", failed == 0 ? "PASS" : "FAIL");
    return failed == 0 ? kOk : kCheckFailed;
}

int cmd_construct(const Options& o, const Manifest& m, Report& r) {
    std::vector<std::string> extra;
    std::optional<KnotGuardReport> guard;
    std::optional<PolygonalCurve> curve;
    if (o.kind == "ngon") {
        curve = regular_ngon(o.n, o.radius);
    } else if (o.kind == "stadium") {
        if (o.pattern == "straight" || o.pattern == "unknot") {
            curve = stadium_curve(o.R, o.eps, o.n);
        } else {
            const KnotArcPattern pat = resolve_pattern(o.pattern);
            curve = stadium_with_knot(o.R, o.eps, o.n, pat);
            guard = knot_determinant(*curve);
            if (guard->determinant != pat.expected_determinant) {
                throw Error(ErrorKind::GuardMismatch, "determinant " + std::to_string(guard->determinant) +
                                                          " differs from the pattern's " +
                                                          std::to_string(pat.expected_determinant));
            }
        }
    } else if (o.kind == "insert-knot") {
        const KnotArcPattern pat = resolve_pattern(o.pattern);
        curve = insert_local_knot(resolve_host(o.host, o.radius), pat, o.edge, o.ball_radius);
        guard = knot_determinant(*curve);
        if (guard->determinant != pat.expected_determinant) {
            throw Error(ErrorKind::GuardMismatch, "determinant " + std::to_string(guard->determinant) +
                                                      " differs from the pattern's " +
                                                      std::to_string(pat.expected_determinant));
        }
    } else {
        const KnotArcPattern pat = resolve_pattern(o.pattern);
        CurveFile file = pattern_to_file(pat);
        std::vector<std::string> comments = manifest_comments(m);
        comments.insert(comments.end(), file.comments.begin(), file.comments.end());
        std::ofstream f(o.output);
        if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + o.output);
        write_points(f, file.points, comments);
        emit_manifest(r, m);
        r.record("kind", o.kind);
        r.record("pattern", pat.name);
        r.record("vertices", pat.arc_vertices.size());
        r.record("arc_length", pat.arc_length());
        r.record("expected_determinant", static_cast<unsigned long long>(pat.expected_determinant));
        r.record("output", o.output);
        return kOk;
    }

    std::vector<std::string> comments = manifest_comments(m);
    if (guard) {
        comments.push_back("determinant=" + std::to_string(guard->determinant));
        comments.push_back("crossings_used=" + std::to_string(guard->crossings_used));
    }
    write_output(o.output, *curve, comments);

    emit_manifest(r, m);
    r.record("kind", o.kind);
    r.record("vertices", curve->size());
    r.record("length", length(*curve));
    r.record("diameter", diameter(*curve));
    if (guard) {
        r.record("determinant", static_cast<unsigned long long>(guard->determinant));
        r.record("crossings_used", guard->crossings_used);
        const Vec3& a = guard->projection_axis;
        r.record("projection_axis", fmt12(a.x) + " " + fmt12(a.y) + " " + fmt12(a.z));
    }
    r.record("output", o.output);
    return kOk;
}

int cmd_optimize(const Options& o, const Manifest& m, Report& r) {
    OptimizerConfig cfg = o.opt;
    cfg.quadrature = quadrature_of(o);
    cfg.validate();
    const PolygonalCurve initial = o.input.empty() ? regular_ngon(o.ngon, o.radius) : read_curve(o.input);

    std::optional<OptimizationResult> res;
    std::string rop_source;
    double rop_reference = 0.0;
    if (o.mode == "ropelength") {
        res = minimize_ropelength(initial, cfg);
    } else if (o.mode == "windowed") {
        if (o.p.empty()) throw Error(ErrorKind::InvalidArgument, "windowed mode needs --p");
        if (o.rop_reference) {
            rop_reference = *o.rop_reference;
            rop_source = "flag";
        } else {
            rop_reference = minimize_ropelength(initial, cfg).best_ratio;
            rop_source = "minimize_ropelength";
        }
        res = minimize_windowed_density(initial, Exponent::parse(o.p), {o.lambda, rop_reference}, cfg);
    } else {
        res = maximize_spread_ratio(Exponent::parse(o.p.empty() ? "3" : o.p), cfg, initial);
    }

    const ThicknessReport thick = thickness(res->best_curve);
    std::vector<std::string> comments = manifest_comments(m);
    comments.push_back("best_ratio=" + fmt12(res->best_ratio));
    if (!o.output.empty()) write_output(o.output, res->best_curve, comments);

    emit_manifest(r, m);
    r.record("mode", to_string(res->mode));
    if (res->exponent) r.record("exponent", exponent_text(*res->exponent));
    r.record("initial_ratio", res->initial_ratio);
    r.record("best_ratio", res->best_ratio);
    r.record("accepted", res->accepted);
    r.record("rejected", res->rejected);
    r.record("guard.start.determinant", static_cast<unsigned long long>(res->guard_start.determinant));
    r.record("guard.end.determinant", static_cast<unsigned long long>(res->guard_end.determinant));
    r.record("best.vertices", res->best_curve.size());
    r.record("best.length", thick.length);
    r.record("best.thickness", thick.thickness);
    r.record("best.ropelength", thick.ropelength);
    if (res->window) {
        const WindowCheck w = window_feasible(res->best_curve, *res->window);
        r.record("window.lambda", res->window->lambda);
        r.record("window.rop_reference", res->window->rop_reference);
        r.record("window.rop_reference_source", rop_source);
        r.record("window.feasible", w.feasible ? "true" : "false");
        r.record("window.thi_slack", w.thi_slack);
        r.record("window.len_slack", w.len_slack);
    }
    if (res->circle_reference) r.record("circle_reference", *res->circle_reference);
    if (!res->banner.empty()) r.record("banner", res->banner);
    if (!o.output.empty()) r.record("output", o.output);

    std::vector<std::vector<std::string>> rows;
    for (const TracePoint& t : res->trace) {
        rows.push_back(
            {std::to_string(t.iteration), fmt6(t.ratio), fmt6(t.best_ratio), fmt6(t.thickness), fmt6(t.length)});
    }
    r.table("trace", {"iteration", "ratio", "best_ratio", "thickness", "length"}, rows);
    return kOk;
}

int cmd_table(const Options& o, const Manifest& m, Report& r) {
    const QuadratureConfig q = quadrature_of(o);
    std::optional<ConvergenceTable> t;
    if (o.experiment == "ngon") {
        t = ngon_convergence(Exponent::parse(o.p.empty() ? "log" : o.p), o.n_list, q);
    } else if (o.experiment == "localknot") {
        const Exponent e = Exponent::parse(o.p.empty() ? "2" : o.p);
        t = local_knot_degeneration(e, resolve_pattern(o.pattern), e.is_diameter() ? o.aspect_list : o.r_list, q);
    } else {
        const PolygonalCurve c = o.input.empty() ? regular_ngon(256, 1.0) : read_curve(o.input);
        t = pzero_continuity(c, o.p_list, q);
    }

    emit_manifest(r, m);
    r.record("experiment", t->experiment);
    r.record("exponent", t->exponent);
    r.record("target", t->target);
    r.record("fitted_order", t->fitted_order);
    for (const std::string& w : t->warnings) r.record("warning", w);

    const bool has_det = !t->rows.empty() && t->rows.front().determinant.has_value();
    std::vector<std::string> header{t->parameter_name, t->value_name, "gap"};
    if (has_det) header.push_back("determinant");
    std::vector<std::vector<std::string>> rows;
    for (const ConvergenceRow& row : t->rows) {
        std::vector<std::string> cells{fmt6(row.parameter), fmt6(row.value), fmt6(row.error)};
        if (has_det) cells.push_back(row.determinant ? std::to_string(*row.determinant) : "-");
        rows.push_back(std::move(cells));
    }
    r.table(t->experiment, header, rows);
    return kOk;
}

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidArgument:
        case ErrorKind::Parse:
            return kParse;
        case ErrorKind::NotEmbedded:
        case ErrorKind::DegenerateGeometry:
            return kNotEmbedded;
        case ErrorKind::Quadrature:
        case ErrorKind::SingularityTooStrong:
            return kQuadrature;
        case ErrorKind::Locality:
            return kLocality;
        case ErrorKind::Infeasible:
            return kInfeasible;
        case ErrorKind::GuardMismatch:
            return kGuard;
    }
    return kParse;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Spread functionals, thickness and windowed optimization on polygonal knots", "knotspread"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();
    app.set_version_flag("--version", KNOTSPREAD_VERSION);

    CLI::App* compute = app.add_subcommand("compute", "D_p, length and density ratio of a curve file");
    compute->add_option("file", o.curve_file, "curve file")->required();
    compute->add_option("--p", o.p, "exponent: a decimal in (-1, inf), log or inf")->required();
    compute->add_flag("--force-quadrature", o.force_quadrature, "use quadrature even at p = 2");
    add_quadrature_flags(compute, o);

    CLI::App* validate = app.add_subcommand("validate", "built-in check suites");
    validate->add_option("--suite", o.suite, "constants or properties")
        ->required()
        ->check(CLI::IsMember({"constants", "properties"}));
    validate->add_option("--seed", o.seed, "seed for the properties suite");
    validate->add_option("--tolerance-scale", o.tolerance_scale, "multiplies every check tolerance");

    CLI::App* construct = app.add_subcommand("construct", "write a constructed curve");
    construct->add_option("--kind", o.kind, "ngon, stadium, insert-knot or pattern")
        ->required()
        ->check(CLI::IsMember({"ngon", "stadium", "insert-knot", "pattern"}));
    construct->add_option("--n", o.n, "vertex count (ngon, stadium)");
    construct->add_option("--radius", o.radius, "circumradius (ngon and ngon hosts)");
    construct->add_option("--R", o.R, "stadium half length");
    construct->add_option("--eps", o.eps, "stadium half width");
    construct->add_option("--host", o.host, "host curve file or ngon<N>");
    construct->add_option("--pattern", o.pattern, "trefoil, figure_eight, straight or a pattern file");
    construct->add_option("--ball-radius", o.ball_radius, "insertion ball radius");
    construct->add_option("--edge", o.edge, "host edge whose midpoint centres the ball");
    construct->add_option("-o,--output", o.output, "output curve file")->required();

    CLI::App* optimize = app.add_subcommand("optimize", "annealing runs");
    optimize->add_option("--mode", o.mode, "ropelength, windowed or explore")
        ->required()
        ->check(CLI::IsMember({"ropelength", "windowed", "explore"}));
    optimize->add_option("--input", o.input, "starting curve file");
    optimize->add_option("--ngon", o.ngon, "start from the regular n-gon when no input is given");
    optimize->add_option("--radius", o.radius, "circumradius of the starting n-gon");
    optimize->add_option("--p", o.p, "exponent (windowed, explore)");
    optimize->add_option("--lambda", o.lambda, "window factor, >= 1");
    optimize->add_option("--rop-reference", o.rop_reference, "ropelength reference; estimated when omitted");
    optimize->add_option("--seed", o.opt.seed, "random seed");
    optimize->add_option("--iters", o.opt.max_iters, "iterations");
    optimize->add_option("--step", o.opt.initial_step, "initial move scale over the mean edge");
    optimize->add_option("--cooling", o.opt.cooling, "temperature factor per epoch");
    optimize->add_option("--temp0", o.opt.temp0, "initial temperature");
    optimize->add_option("--penalty-thickness", o.opt.penalty_thickness, "burn-in thickness penalty");
    optimize->add_option("--penalty-length", o.opt.penalty_length, "burn-in length penalty");
    optimize->add_option("--resample-every", o.opt.resample_every, "resampling period, 0 disables");
    optimize->add_option("--trace-every", o.opt.trace_every, "trace period, 0 picks iters/200");
    optimize->add_option("-o,--output", o.output, "best curve file");
    add_quadrature_flags(optimize, o);

    CLI::App* table = app.add_subcommand("table", "convergence tables");
    table->add_option("--experiment", o.experiment, "ngon, localknot or pzero")
        ->required()
        ->check(CLI::IsMember({"ngon", "localknot", "pzero"}));
    table->add_option("--p", o.p, "exponent (ngon: log, localknot: 2)");
    table->add_option("--n-list", o.n_list, "ngon sizes")->delimiter(',');
    table->add_option("--r-list", o.r_list, "ball radii for localknot")->delimiter(',');
    table->add_option("--aspect-list", o.aspect_list, "R/eps values for localknot at p = inf")->delimiter(',');
    table->add_option("--pattern", o.pattern, "knot pattern for localknot");
    table->add_option("--input", o.input, "curve for pzero (default: regular 256-gon)");
    table->add_option("--p-list", o.p_list, "small exponents for pzero")->delimiter(',');
    add_quadrature_flags(table, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kParse;
    }

    CLI::App* sub = app.get_subcommands().front();
    try {
        const Manifest m =
            manifest(*sub, argc, argv,
                     file_inputs({o.curve_file, o.input, sub == construct ? o.host : "", o.pattern}));
        Report r;
        int code = kOk;
        if (sub == compute) code = cmd_compute(o, m, r);
        else if (sub == validate) code = cmd_validate(o, m, r);
        else if (sub == construct) code = cmd_construct(o, m, r);
        else if (sub == optimize) code = cmd_optimize(o, m, r);
        else code = cmd_table(o, m, r);
        out << r.str();
        return code;
    } catch (const Error& e) {
        err << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kParse;
    }
}

}  // namespace knotspread::cli
