#include "adbsde/cli.hpp"

#include "adbsde/acceptance.hpp"
#include "adbsde/analysis.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace adbsde::cli {

namespace {

/// Configuration error reported with exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string fmt(double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, r.ptr);
}

double to_number(const std::string& key, const std::string& text) {
    double v = 0.0;
    const char* b = text.data();
    const char* e = b + text.size();
    if (!text.empty() && *b == '+') ++b;
    const auto r = std::from_chars(b, e, v);
    if (r.ec != std::errc() || r.ptr != e) throw UsageError("value of '" + key + "' is not a number: '" + text + "'");
    return v;
}

std::vector<double> to_list(const std::string& key, const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(to_number(key, item));
    }
    if (out.empty()) throw UsageError("'" + key + "' needs at least one value");
    return out;
}

std::string flag_to_key(std::string name) {
    std::replace(name.begin(), name.end(), '-', '_');
    return name;
}

// Resolved settings with defaults and typed accessors.
class Run {
public:
    explicit Run(Settings s) : s_(std::move(s)) {
        defaults("engine.kind", "tree");
        defaults("engine.path_count", "100000");
        defaults("engine.seed", "42");
        defaults("engine.basis_degree", "3");
        defaults("engine.workers", "1");
        defaults("solver.tol", "1e-10");
        defaults("solver.max_iter", "200");
        defaults("solver.initial_guess", "terminal_extension");
        defaults("output.formats", "report");
        defaults("output.dump_nodes", "0");
    }

    [[nodiscard]] std::string str(const std::string& key) const {
        auto it = s_.find(key);
        return it == s_.end() ? std::string{} : it->second;
    }
    [[nodiscard]] bool has(const std::string& key) const { return s_.count(key) != 0; }
    [[nodiscard]] double num(const std::string& key) const { return to_number(key, str(key)); }
    [[nodiscard]] int integer(const std::string& key, int lo) const {
        const double v = num(key);
        if (std::floor(v) != v || v < lo) throw UsageError("'" + key + "' must be an integer >= " + std::to_string(lo));
        return static_cast<int>(v);
    }
    void set(const std::string& key, const std::string& v) { s_[key] = v; }
    [[nodiscard]] const Settings& all() const { return s_; }

    /// Every `<section>.*` entry as numbers keyed by the bare name.
    [[nodiscard]] ParamMap section(const std::string& sec, const std::vector<std::string>& skip = {"name"}) const {
        ParamMap out;
        const std::string prefix = sec + ".";
        for (const auto& [k, v] : s_) {
            if (k.rfind(prefix, 0) != 0) continue;
            const std::string name = k.substr(prefix.size());
            if (std::find(skip.begin(), skip.end(), name) == skip.end()) out[name] = to_number(k, v);
        }
        return out;
    }

    [[nodiscard]] SolverConfig solver() const {
        SolverConfig c;
        if (has("solver.beta") && str("solver.beta") != "auto") c.beta = num("solver.beta");
        c.tol = num("solver.tol");
        if (!(c.tol > 0.0)) throw UsageError("solver.tol must be positive");
        c.max_iter = integer("solver.max_iter", 1);
        const std::string g = str("solver.initial_guess");
        if (g == "zero") {
            c.initial_guess = InitialGuess::zero;
        } else if (g != "terminal_extension") {
            throw UsageError("solver.initial_guess must be terminal_extension or zero");
        }
        return c;
    }

    [[nodiscard]] std::unique_ptr<Engine> engine(const TimeGrid& grid) const {
        const std::string kind = str("engine.kind");
        if (kind == "tree") return build_tree(grid);
        if (kind == "montecarlo") {
            const double seed = num("engine.seed");
            if (seed < 0 || std::floor(seed) != seed) throw UsageError("engine.seed must be a non-negative integer");
            return sample_paths(grid, static_cast<std::size_t>(integer("engine.path_count", 2)),
                                static_cast<std::uint64_t>(seed), integer("engine.basis_degree", 0),
                                static_cast<unsigned>(integer("engine.workers", 1)));
        }
        throw UsageError("engine.kind must be tree or montecarlo, got '" + kind + "'");
    }

    [[nodiscard]] bool wants(const std::string& format) const {
        std::stringstream ss(str("output.formats"));
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (item != "csv" && item != "report") throw UsageError("unknown output format '" + item + "'");
            if (item == format) return true;
        }
        return false;
    }

private:
    void defaults(const std::string& k, const std::string& v) { s_.try_emplace(k, v); }
    Settings s_;
};

double weighted_quantile(const Column& values, const std::vector<double>& weights, double q) {
    std::vector<std::size_t> order(values.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    double acc = 0.0;
    for (std::size_t i : order) {
        acc += weights[i];
        if (acc >= q - 1e-12) return values[i];
    }
    return values[order.back()];
}

struct Series {
    std::string name;
    const NodeProcess* process;
};

void write_csv(std::ostream& os, const Engine& e, const std::vector<Series>& series) {
    os << "t";
    for (const auto& s : series) os << "," << s.name << "_mean," << s.name << "_p05," << s.name << "_p95";
    os << "\n";
    const TimeGrid& g = e.grid();
    for (int k = 0; k <= g.last_index(); ++k) {
        const auto w = e.weights(k);
        os << fmt(g.time_of(k));
        for (const auto& s : series) {
            const Column& c = (*s.process)[k];
            os << "," << fmt(e.expectation(c, k)) << "," << fmt(weighted_quantile(c, w, 0.05)) << ","
               << fmt(weighted_quantile(c, w, 0.95));
        }
        os << "\n";
    }
}

void write_nodes(std::ostream& os, const Engine& e, const std::vector<Series>& series) {
    os << "index,t,node,weight,brownian";
    for (const auto& s : series) os << "," << s.name;
    os << "\n";
    const TimeGrid& g = e.grid();
    for (int k = 0; k <= g.last_index(); ++k) {
        const auto w = e.weights(k);
        const Column b = e.brownian(k);
        for (std::size_t j = 0; j < b.size(); ++j) {
            os << k << "," << fmt(g.time_of(k)) << "," << j << "," << fmt(w[j]) << "," << fmt(b[j]);
            for (const auto& s : series) os << "," << fmt((*s.process)[k][j]);
            os << "\n";
        }
    }
}

// Collects report text; echoes to stdout and optionally to <dir>/report.txt.
class Report {
public:
    void key(const std::string& k, const std::string& v) { head_ << k << ": " << v << "\n"; }
    void key(const std::string& k, double v) { key(k, fmt(v)); }
    std::ostringstream& body() { return body_; }

    void emit(std::ostream& out, const Run& run) {
        std::ostringstream all;
        all << head_.str() << "\n[config]\n";
        for (const auto& [k, v] : run.all()) all << k << " = " << v << "\n";
        all << body_.str();
        out << all.str();
        const std::string dir = run.str("output.directory");
        if (!dir.empty() && run.wants("report")) {
            std::filesystem::create_directories(dir);
            std::ofstream f(std::filesystem::path(dir) / "report.txt", std::ios::binary);
            f << all.str();
        }
    }

private:
    std::ostringstream head_;
    std::ostringstream body_;
};

void write_outputs(const Run& run, const Engine& e, const std::vector<Series>& series) {
    const std::string dir = run.str("output.directory");
    const bool dump = run.str("output.dump_nodes") != "0";
    if (dir.empty()) {
        if (run.wants("csv") || dump) throw UsageError("csv output and --dump-nodes need output.directory (--out)");
        return;
    }
    std::filesystem::create_directories(dir);
    if (run.wants("csv")) {
        std::ofstream f(std::filesystem::path(dir) / "trajectory.csv", std::ios::binary);
        write_csv(f, e, series);
    }
    if (dump) {
        std::ofstream f(std::filesystem::path(dir) / "nodes.csv", std::ios::binary);
        write_nodes(f, e, series);
    }
}

void solver_section(Report& rep, const SolveReport& r) {
    rep.key("CONVERGED", r.converged ? "true" : "false");
    rep.key("ITERATIONS", std::to_string(r.iterations));
    rep.key("BETA", r.beta_used);
    rep.key("GAMMA_EMPIRICAL", r.gamma_empirical ? fmt(*r.gamma_empirical) : "undefined");
    auto& b = rep.body();
    b << "\n[residuals]\n";
    for (std::size_t i = 0; i < r.residuals.size(); ++i) b << i + 1 << " " << fmt(r.residuals[i]) << "\n";
    b << "\n[anchor_means]\n";
    for (std::size_t i = 0; i < r.anchor_means.size(); ++i) b << i + 1 << " " << fmt(r.anchor_means[i]) << "\n";
}

int verdict_exit(Report& rep, const SolveReport& r, ExpectedBehavior expected) {
    std::string verdict;
    int code = 0;
    if (r.converged) {
        verdict = expected == ExpectedBehavior::converges ? "converged" : "converged unexpectedly";
        code = expected == ExpectedBehavior::converges ? 0 : 1;
    } else {
        verdict = expected == ExpectedBehavior::diverges ? "diverged as expected" : "did not converge";
        code = expected == ExpectedBehavior::diverges ? 0 : 1;
    }
    rep.key("VERDICT", verdict);
    rep.key("VERDICT_DETAIL", r.verdict_detail);
    return code;
}

ProblemSpec load_problem(const Run& run, const std::string& fallback) {
    const std::string name = run.has("problem.name") ? run.str("problem.name") : fallback;
    if (name.empty()) throw UsageError("no problem given (--problem or problem.name)");
    const auto& names = builtin_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) {
        throw UsageError("unknown problem '" + name + "'");
    }
    try {
        return builtin_problem(name, run.section("problem"));
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("problem '") + name + "': " + e.what());
    }
}

int cmd_solve(Run& run, std::ostream& out, ProblemKind kind) {
    const ProblemSpec p = load_problem(run, "");
    if (p.kind != kind) {
        throw UsageError("problem '" + p.name + "' is " + (p.kind == ProblemKind::bsde ? "a BSDE" : "an SDE") +
                         "; use " + (p.kind == ProblemKind::bsde ? "solve-bsde" : "solve-sde"));
    }
    const auto engine = run.engine(p.grid);
    SolverConfig cfg = run.solver();
    if (!cfg.beta) cfg.beta = kind == ProblemKind::bsde ? default_beta(p) : 2.0;
    run.set("solver.beta", fmt(*cfg.beta));
    Report rep;
    rep.key("COMMAND", kind == ProblemKind::bsde ? "solve-bsde" : "solve-sde");
    rep.key("PROBLEM", p.name);
    rep.key("ENGINE", run.str("engine.kind"));
    int code = 0;
    if (kind == ProblemKind::bsde) {
        const auto [s, r] = solve_bsde(p, *engine, cfg);
        rep.key("Y0", s.Y0);
        rep.key("Y0_STDERR", engine->standard_error(s.Y[p.grid.t0_index()], p.grid.t0_index()));
        solver_section(rep, r);
        code = verdict_exit(rep, r, p.expected);
        write_outputs(run, *engine, {{"Y", &s.Y}, {"Z", &s.Z}});
    } else {
        const auto [s, r] = solve_sde(p, *engine, cfg);
        const int iT = p.grid.T_index();
        rep.key("X_T_MEAN", engine->expectation(s.X[iT], iT));
        rep.key("X_T_STDERR", engine->standard_error(s.X[iT], iT));
        solver_section(rep, r);
        code = verdict_exit(rep, r, p.expected);
        write_outputs(run, *engine, {{"X", &s.X}});
    }
    rep.emit(out, run);
    return code;
}

int cmd_contraction(Run& run, std::ostream& out) {
    if (!run.has("contraction.condition")) throw UsageError("check-contraction needs --condition");
    Condition c;
    try {
        c = parse_condition(run.str("contraction.condition"));
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    ConstantMap constants = run.section("problem");
    for (const auto& [k, v] : run.section("contraction", {"condition", "beta_max", "points"})) constants[k] = v;
    for (const auto& key : required_constants(c)) {
        if (key == "t0") constants.try_emplace("t0", 0.0);
        if (!constants.count(key) && !(key == "Kp" && constants.count("K'"))) {
            throw UsageError(std::string("condition ") + to_string(c) + " needs constant '" + key + "'");
        }
        if (constants[key] < 0.0) throw UsageError("constant '" + key + "' must be non-negative");
    }
    ScanOptions so;
    if (run.has("contraction.beta_max")) so.beta_max = run.num("contraction.beta_max");
    if (run.has("contraction.points")) so.points = run.integer("contraction.points", 2);
    const FeasibilityReport r = check_contraction(c, constants, so);
    Report rep;
    rep.key("COMMAND", "check-contraction");
    rep.key("CONDITION", to_string(c));
    rep.key("FEASIBLE", r.feasible ? "true" : "false");
    rep.key("BETA_STAR", r.beta_star);
    rep.key("VALUE", r.value);
    rep.key("GAMMA", r.gamma);
    rep.key("THRESHOLD", contraction_threshold(c));
    rep.emit(out, run);
    const std::string dir = run.str("output.directory");
    if (!dir.empty() && run.wants("csv")) {
        std::filesystem::create_directories(dir);
        std::ofstream f(std::filesystem::path(dir) / "scan.csv", std::ios::binary);
        f << "beta,value\n";
        for (const auto& [b, v] : r.scan) f << fmt(b) << "," << fmt(v) << "\n";
    }
    return r.feasible ? 0 : 1;
}

int cmd_duality(Run& run, std::ostream& out) {
    const ParamMap pm = run.section("problem");
    auto get = [&](const char* k, double d) {
        auto it = pm.find(k);
        return it == pm.end() ? d : it->second;
    };
    LinearCoefficients k{get("b", 0.0),     get("bbar", 0.0),     get("bund", 0.0), get("sigma", 0.0),
                         get("sigmabar", 0.0), get("sigmaund", 0.0), get("c", 0.0)};
    const double T = get("T", 1.0), l = get("l", 0.0), u = get("u", 0.0);
    const double steps = get("steps", 8.0);
    if (steps < 1 || std::floor(steps) != steps) throw UsageError("steps must be a positive integer");
    const double xc = get("xi_const", 0.0), xs = get("xi_sq", 1.0);
    const ScalarField xi = [=](double t, double b) { return xc + xs * (b * b - t); };
    const ScalarField eta = [=](double, double b) { return 2.0 * xs * b; };
    const std::vector<double> times =
        run.has("duality.times") ? to_list("duality.times", run.str("duality.times")) : std::vector<double>{0.0};
    TimeGrid g;
    try {
        g = duality_grid(T, l, u, static_cast<int>(steps));
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const auto engine = run.engine(g);
    const double tol = run.has("duality.tolerance") ? run.num("duality.tolerance") : g.dt();
    const DualityReport r = verify_duality(k, l, u, xi, eta, times, *engine, run.solver());
    double worst = 0.0;
    for (double gap : r.gaps) worst = std::max(worst, gap);
    Report rep;
    rep.key("COMMAND", "verify-duality");
    rep.key("LHS", r.lhs);
    rep.key("RHS", r.rhs);
    rep.key("DENOMINATOR", r.denominator);
    rep.key("CLOSED_Y0", r.closed_y0 ? fmt(*r.closed_y0) : "omitted (denominator within 1e-8 of zero)");
    rep.key("MAX_GAP", worst);
    rep.key("TOLERANCE", tol);
    rep.key("STATUS", worst <= tol ? "pass" : "fail");
    rep.body() << "\n[gaps]\n";
    for (std::size_t i = 0; i < r.gaps.size(); ++i) rep.body() << fmt(r.times[i]) << " " << fmt(r.gaps[i]) << "\n";
    rep.emit(out, run);
    return worst <= tol ? 0 : 1;
}

int cmd_compare(Run& run, std::ostream& out) {
    if (run.str("engine.kind") != "tree") {
        throw UsageError("compare checks node-wise ordering and needs engine.kind = tree");
    }
    const ProblemSpec p = load_problem(run, "comparison_pair");
    if (!p.partner) throw UsageError("problem '" + p.name + "' has no comparison partner");
    const auto engine = run.engine(p.grid);
    const ComparisonReport r = run_comparison(p, *p.partner, *engine, run.solver());
    Report rep;
    rep.key("COMMAND", "compare");
    rep.key("PROBLEM", p.name);
    rep.key("HYPOTHESES", r.hypotheses_passed ? "passed" : "failed: " + r.failed_hypothesis);
    rep.key("MIN_DIFFERENCE", r.min_difference);
    rep.key("CHAIN_MONOTONE", r.chain_monotone ? "true" : "false");
    rep.key("CHAIN_LENGTH", std::to_string(r.chain_length));
    const bool ok = r.hypotheses_passed && r.min_difference >= 0.0 && r.chain_monotone;
    rep.key("STATUS", ok ? "ordered" : "not ordered");
    rep.emit(out, run);
    return ok ? 0 : 1;
}

int cmd_dependence(Run& run, std::ostream& out) {
    const ProblemSpec p = load_problem(run, "bsde_8");
    const auto engine = run.engine(p.grid);
    const std::vector<double> eps = run.has("dependence.eps") ? to_list("dependence.eps", run.str("dependence.eps"))
                                                              : std::vector<double>{0.1, 0.05, 0.025, 0.0125};
    const DependenceReport r = continuous_dependence_probe(p, eps, *engine, run.solver());
    Report rep;
    rep.key("COMMAND", "probe-dependence");
    rep.key("PROBLEM", p.name);
    rep.key("BOUNDED", r.bounded ? "true" : "false");
    rep.key("LINEAR_SCALING", r.linear_scaling ? "true" : "false");
    rep.body() << "\n[ratios]\neps distance ratio sup_diff\n";
    for (const auto& row : r.rows) {
        rep.body() << fmt(row.eps) << " " << fmt(row.distance) << " " << fmt(row.ratio) << " " << fmt(row.sup_diff)
                   << "\n";
    }
    rep.emit(out, run);
    return r.bounded && r.linear_scaling ? 0 : 1;
}

int cmd_suite(std::ostream& out) {
    int failed = 0;
    for (int i = 1; i <= kCriterionCount; ++i) {
        const CriterionResult r = run_criterion(i);
        out << format_result(r) << "\n";
        failed += r.passed ? 0 : 1;
    }
    out << "SUMMARY: " << (kCriterionCount - failed) << "/" << kCriterionCount << " passed\n";
    return failed == 0 ? 0 : 1;
}

}  // namespace

Settings parse_config(std::istream& in, const std::string& origin) {
    Settings s;
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
        ++n;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw UsageError(origin + ":" + std::to_string(n) + ": expected 'section.key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto dot = key.find('.');
        if (dot == std::string::npos || dot == 0 || dot + 1 == key.size()) {
            throw UsageError(origin + ":" + std::to_string(n) + ": key '" + key + "' needs a section");
        }
        s[key] = value;
    }
    return s;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Solvers and checkers for BSDEs and SDEs with time-advanced and -delayed coefficients", "adbsde"};
    app.require_subcommand(1);

    struct Common {
        std::string config, problem, engine, out, formats, condition, times, eps, initial_guess;
        std::optional<double> beta, tol;
        std::optional<int> max_iter, paths, degree, workers, steps;
        std::optional<std::uint64_t> seed;
        bool dump = false;
    } c;

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"solve-bsde", "Solve a built-in BSDE by Picard iteration"},
        {"solve-sde", "Solve a built-in SDE by Picard iteration"},
        {"check-contraction", "Check a contraction condition and search for beta"},
        {"verify-duality", "Compare the linear BSDE with its adjoint SDE representation"},
        {"compare", "Run the comparison harness on an ordered pair"},
        {"probe-dependence", "Measure continuous dependence on additive perturbations"},
        {"suite", "Run every acceptance check"}};
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->allow_extras();
        sub->add_option("--config", c.config, "Config file with section.key = value lines");
        sub->add_option("--problem", c.problem, "Built-in problem name");
        sub->add_option("--engine", c.engine, "tree or montecarlo");
        sub->add_option("--steps", c.steps, "Steps in the solve window");
        sub->add_option("--paths", c.paths, "Monte Carlo path count");
        sub->add_option("--seed", c.seed, "Monte Carlo seed");
        sub->add_option("--degree", c.degree, "Regression basis degree");
        sub->add_option("--workers", c.workers, "Worker threads");
        sub->add_option("--beta", c.beta, "Norm weight beta");
        sub->add_option("--tol", c.tol, "Picard tolerance");
        sub->add_option("--max-iter", c.max_iter, "Picard iteration cap");
        sub->add_option("--initial-guess", c.initial_guess, "terminal_extension or zero");
        sub->add_option("--out", c.out, "Output directory");
        sub->add_option("--format", c.formats, "Comma list of csv, report");
        sub->add_option("--condition", c.condition, "Contraction condition id");
        sub->add_option("--times", c.times, "Comma list of duality times");
        sub->add_option("--eps", c.eps, "Comma list of perturbation sizes");
        sub->add_flag("--dump-nodes", c.dump, "Export every node/path value");
    }

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    const CLI::App* sub = app.get_subcommands().front();
    const std::string command = sub->get_name();
    try {
        Settings s;
        if (!c.config.empty()) {
            std::ifstream f(c.config);
            if (!f) throw UsageError("cannot open config file '" + c.config + "'");
            s = parse_config(f, c.config);
        }
        auto put = [&](const std::string& k, const std::string& v) {
            if (!v.empty()) s[k] = v;
        };
        put("problem.name", c.problem);
        put("engine.kind", c.engine);
        if (c.steps) s["problem.steps"] = std::to_string(*c.steps);
        if (c.paths) s["engine.path_count"] = std::to_string(*c.paths);
        if (c.seed) s["engine.seed"] = std::to_string(*c.seed);
        if (c.degree) s["engine.basis_degree"] = std::to_string(*c.degree);
        if (c.workers) s["engine.workers"] = std::to_string(*c.workers);
        if (c.beta) s["solver.beta"] = fmt(*c.beta);
        if (c.tol) s["solver.tol"] = fmt(*c.tol);
        if (c.max_iter) s["solver.max_iter"] = std::to_string(*c.max_iter);
        put("solver.initial_guess", c.initial_guess);
        put("output.directory", c.out);
        put("output.formats", c.formats);
        put("contraction.condition", c.condition);
        put("duality.times", c.times);
        put("dependence.eps", c.eps);
        if (c.dump) s["output.dump_nodes"] = "1";

        // Remaining `--name value` pairs are problem parameters / contraction constants.
        const auto extras = sub->remaining();
        for (std::size_t i = 0; i < extras.size(); ++i) {
            const std::string& a = extras[i];
            if (a.rfind("--", 0) != 0 || a.size() < 3) throw UsageError("unexpected argument '" + a + "'");
            std::string name = a.substr(2), value;
            const auto eq = name.find('=');
            if (eq != std::string::npos) {
                value = name.substr(eq + 1);
                name = name.substr(0, eq);
            } else {
                if (i + 1 >= extras.size()) throw UsageError("option '" + a + "' needs a value");
                value = extras[++i];
            }
            const std::string key = "problem." + flag_to_key(name);
            to_number(key, value);
            s[key] = value;
        }

        if (command == "suite") return cmd_suite(out);
        Run run(std::move(s));
        if (command == "solve-bsde") return cmd_solve(run, out, ProblemKind::bsde);
        if (command == "solve-sde") return cmd_solve(run, out, ProblemKind::sde);
        if (command == "check-contraction") return cmd_contraction(run, out);
        if (command == "verify-duality") return cmd_duality(run, out);
        if (command == "compare") return cmd_compare(run, out);
        if (command == "probe-dependence") return cmd_dependence(run, out);
        throw UsageError("unknown command '" + command + "'");
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace adbsde::cli
