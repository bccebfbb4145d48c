#include "commands.hpp"

#include "function_dsl.hpp"

#include "impois/error.hpp"
#include "impois/imprecise.hpp"
#include "impois/oracle.hpp"
#include "impois/poisson.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace impois::cli {

namespace {

struct BoundsArgs {
    double lo = 0.0;
    double hi = 0.0;
    double t = 0.0;
    double s = 0.0;
    Count x = 0;
    std::string f;
    double eps = 1e-6;
    std::string set = "both";
    std::string out;
    bool no_shortcut = false;
};

struct SweepArgs {
    double lo = 0.0;
    double hi = 0.0;
    Count x = 0;
    std::string f;
    double eps = 1e-6;
    double start = 0.0;
    double stop = 0.0;
    double step = 0.0;
    std::string times;
    std::string sets = "both";
    std::string out;
    bool no_shortcut = false;
};

struct ExactArgs {
    double rate = 0.0;
    std::optional<double> dt;
    std::optional<Count> y;
    double t = 0.0;
    std::optional<double> s;
    Count x = 0;
    std::string f;
    double tol = 1e-13;
};

struct OracleArgs {
    std::uint64_t cases = 100;
    std::uint64_t seed = 0;
};

const std::vector<std::string> kSetChoices{"poisson", "consistent", "both"};

std::vector<SetKind> selected_sets(const std::string& which) {
    if (which == "poisson") return {SetKind::poisson_set};
    if (which == "consistent") return {SetKind::consistent_set};
    return {SetKind::poisson_set, SetKind::consistent_set};
}

// Emits to --out when given, otherwise to the command's stdout stream.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw Error(ErrorCode::invalid_parameter, "cannot write '" + path + "'");
        }
        stream_ = path.empty() ? &fallback : &file_;
    }
    std::ostream& stream() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

int cmd_bounds(const BoundsArgs& a, std::ostream& out) {
    const RateInterval interval(a.lo, a.hi);
    const FunctionSpec f = parse_function(a.f);
    EngineOptions opts;
    opts.monotone_shortcut = !a.no_shortcut;
    opts.max_steps = max_steps_from_env();

    std::ostringstream csv;
    csv << "t,s,x,set,lower,upper,error_bound,steps,truncation_top\n";
    for (SetKind kind : selected_sets(a.set)) {
        const BoundResult r = expectation_bounds(kind, interval, a.t, a.s, a.x, f, a.eps, opts);
        csv << format_value(a.t) << ',' << format_value(a.s) << ',' << a.x << ',' << to_string(kind) << ','
            << format_value(r.lower) << ',' << format_value(r.upper) << ',' << format_value(r.error_bound) << ','
            << r.steps << ',' << r.truncation_top << '\n';
    }
    Sink sink(a.out, out);
    sink.stream() << csv.str();
    return kSuccess;
}

std::vector<double> sweep_times(const SweepArgs& a) {
    std::vector<double> times;
    if (!a.times.empty()) {
        std::stringstream in(a.times);
        std::string item;
        while (std::getline(in, item, ',')) {
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(item, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used == 0 || !(v >= 0.0) || !std::isfinite(v))
                throw Error(ErrorCode::invalid_parameter, "bad time '" + item + "'");
            times.push_back(v);
        }
        std::sort(times.begin(), times.end());
        times.erase(std::unique(times.begin(), times.end()), times.end());
        return times;
    }
    if (!(a.step > 0.0)) throw Error(ErrorCode::invalid_parameter, "sweep step must be positive");
    if (!(a.start >= 0.0)) throw Error(ErrorCode::invalid_parameter, "sweep start must be non-negative");
    if (a.stop < a.start) throw Error(ErrorCode::invalid_parameter, "sweep stop lies before start");
    const auto count = static_cast<std::uint64_t>(std::floor((a.stop - a.start) / a.step + 1e-9)) + 1;
    for (std::uint64_t i = 0; i < count; ++i) times.push_back(a.start + static_cast<double>(i) * a.step);
    return times;
}

int cmd_sweep(const SweepArgs& a, std::ostream& out, std::ostream& err) {
    const RateInterval interval(a.lo, a.hi);
    const FunctionSpec f = parse_function(a.f);
    EngineOptions opts;
    opts.monotone_shortcut = !a.no_shortcut;
    opts.max_steps = max_steps_from_env();
    const auto sets = selected_sets(a.sets);
    const bool want_consistent = std::find(sets.begin(), sets.end(), SetKind::consistent_set) != sets.end();
    const bool want_poisson = std::find(sets.begin(), sets.end(), SetKind::poisson_set) != sets.end();

    std::ostringstream csv;
    csv << "t,lower_consistent,upper_consistent,lower_poisson,upper_poisson\n";
    for (double t : sweep_times(a)) {
        try {
            csv << format_value(t);
            if (want_consistent) {
                const auto r = expectation_bounds(SetKind::consistent_set, interval, 0.0, t, a.x, f, a.eps, opts);
                csv << ',' << format_value(r.lower) << ',' << format_value(r.upper);
            } else {
                csv << ",,";
            }
            if (want_poisson) {
                const auto r = expectation_bounds(SetKind::poisson_set, interval, 0.0, t, a.x, f, a.eps, opts);
                csv << ',' << format_value(r.lower) << ',' << format_value(r.upper);
            } else {
                csv << ",,";
            }
            csv << '\n';
        } catch (const Error& e) {
            err << "sweep failed at t=" << format_value(t) << ": " << e.what() << '\n';
            return kToleranceError;
        }
    }
    Sink sink(a.out, out);
    sink.stream() << csv.str();
    return kSuccess;
}

int cmd_exact(const ExactArgs& a, std::ostream& out, std::ostream& err) {
    if (!a.f.empty()) {
        if (!a.s) {
            err << "exact: --f needs --s\n";
            return kUsageError;
        }
        const FunctionSpec f = parse_function(a.f);
        out << format_fixed(poisson_expectation(a.rate, a.t, *a.s, a.x, f, a.tol)) << '\n';
        return kSuccess;
    }
    if (!a.dt || !a.y) {
        err << "exact: expected either --dt and --y, or --s and --f\n";
        return kUsageError;
    }
    out << format_fixed(transition_probability(a.rate, *a.dt, a.x, *a.y)) << '\n';
    return kSuccess;
}

// Portable uniform draw on [0, 1).
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

int cmd_oracle_check(const OracleArgs& a, const PhiEngine& engine, std::ostream& out) {
    std::mt19937_64 rng(a.seed);
    std::uint64_t failures = 0;
    for (std::uint64_t c = 0; c < a.cases; ++c) {
        const auto window = 1 + static_cast<std::size_t>(rng() % 4);
        const auto steps = 1 + rng() % 3;
        const double lo = 2.0 * unit(rng);
        const double hi = unit(rng) < 0.1 ? lo : lo + 2.0 * unit(rng);
        const Count base = rng() % 6;
        std::vector<double> values(window);
        for (double& v : values) v = 2.0 * unit(rng) - 1.0;
        const double dt = hi > 0.0 ? (1.0 - unit(rng)) / hi : 1.0 - unit(rng);

        const RateInterval interval(lo, hi);
        const TimeGrid grid(0.0, dt * static_cast<double>(steps), steps);
        const WindowFunction g(base, values);
        const WindowFunction fast = engine(interval, grid, g);
        const WindowFunction slow = oracle::brute_force_phi(interval, grid, g);
        double gap = 0.0;
        for (std::size_t i = 0; i < window; ++i) gap = std::max(gap, std::abs(fast[i] - slow[i]));
        if (!(gap <= 1e-12)) {
            ++failures;
            out << "FAIL case=" << c << " lo=" << format_value(lo) << " hi=" << format_value(hi)
                << " steps=" << steps << " duration=" << format_value(grid.duration()) << " base=" << base
                << " g=";
            for (std::size_t i = 0; i < window; ++i) out << (i ? ";" : "") << format_value(values[i]);
            out << " gap=" << format_value(gap) << '\n';
        }
    }
    out << "cases=" << a.cases << " failures=" << failures << " seed=" << a.seed << '\n';
    return failures == 0 ? kSuccess : kVerificationFailure;
}

// Expands `sweep --config PATH` into flag pairs placed before the explicit
// flags, so flags on the command line win.
std::vector<std::string> expand_config(std::vector<std::string> args) {
    if (args.empty() || args.front() != "sweep") return args;
    std::optional<std::string> path;
    std::vector<std::string> rest;
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[++i];
        } else if (args[i].starts_with("--config=")) {
            path = args[i].substr(9);
        } else {
            rest.push_back(args[i]);
        }
    }
    if (!path) return args;

    std::ifstream in(*path);
    if (!in) throw Error(ErrorCode::invalid_parameter, "cannot open config '" + *path + "'");
    std::vector<std::string> expanded{"sweep"};
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw Error(ErrorCode::invalid_parameter, "config line without '=': " + line);
        auto strip = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = strip(line.substr(0, eq));
        const std::string value = strip(line.substr(eq + 1));
        if (key == "no-shortcut") {
            if (value == "true" || value == "1") expanded.push_back("--no-shortcut");
            continue;
        }
        expanded.push_back("--" + key);
        expanded.push_back(value);
    }
    expanded.insert(expanded.end(), rest.begin(), rest.end());
    return expanded;
}

} // namespace

std::uint64_t max_steps_from_env() {
    const char* raw = std::getenv("IMPOIS_MAX_STEPS");
    if (raw == nullptr || *raw == '\0') return kDefaultMaxSteps;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(raw, &end, 10);
    if (end == raw || *end != '\0' || v == 0)
        throw Error(ErrorCode::invalid_parameter, "IMPOIS_MAX_STEPS must be a positive integer");
    return v;
}

std::string format_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
    return buf;
}

std::string format_fixed(double v) {
    char buf[512];
    std::snprintf(buf, sizeof buf, "%.12f", v == 0.0 ? 0.0 : v);
    return buf;
}

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err, const Hooks& hooks) {
    CLI::App app{"Lower and upper expectations for counting processes with an interval rate", "impois"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    BoundsArgs bounds;
    auto* b = app.add_subcommand("bounds", "Lower and upper expectation of f(X_s) given X_t = x");
    b->add_option("--lo", bounds.lo, "Lower rate")->required();
    b->add_option("--hi", bounds.hi, "Upper rate")->required();
    b->add_option("--t", bounds.t, "Conditioning time")->capture_default_str();
    b->add_option("--s", bounds.s, "Evaluation time")->required();
    b->add_option("--x", bounds.x, "Count at time t")->capture_default_str();
    b->add_option("--f", bounds.f, "Function descriptor")->required();
    b->add_option("--eps", bounds.eps, "Error budget")->capture_default_str();
    b->add_option("--set", bounds.set, "poisson, consistent or both")
        ->check(CLI::IsMember(kSetChoices))
        ->capture_default_str();
    b->add_option("--out", bounds.out, "Write CSV here instead of stdout");
    b->add_flag("--no-shortcut", bounds.no_shortcut, "Run the full solvers even for monotone f");

    SweepArgs sweep;
    auto* w = app.add_subcommand("sweep", "Bounds on f(X_t) given X_0 = x over a range of t");
    w->add_option("--lo", sweep.lo, "Lower rate")->required();
    w->add_option("--hi", sweep.hi, "Upper rate")->required();
    w->add_option("--x", sweep.x, "Count at time 0")->capture_default_str();
    w->add_option("--f", sweep.f, "Function descriptor")->required();
    w->add_option("--eps", sweep.eps, "Error budget")->capture_default_str();
    w->add_option("--start", sweep.start, "First time")->capture_default_str();
    w->add_option("--stop", sweep.stop, "Last time");
    w->add_option("--step", sweep.step, "Time increment");
    w->add_option("--times", sweep.times, "Explicit comma-separated times");
    w->add_option("--sets", sweep.sets, "poisson, consistent or both")
        ->check(CLI::IsMember(kSetChoices))
        ->capture_default_str();
    w->add_option("--out", sweep.out, "Write CSV here instead of stdout");
    w->add_flag("--no-shortcut", sweep.no_shortcut, "Run the full solvers even for monotone f");
    w->footer("--config PATH reads key=value lines naming the options above; flags override them.");

    ExactArgs exact;
    auto* e = app.add_subcommand("exact", "Precise Poisson transition probability or expectation");
    e->add_option("--rate", exact.rate, "Rate")->required();
    e->add_option("--dt", exact.dt, "Duration");
    e->add_option("--y", exact.y, "Target count");
    e->add_option("--t", exact.t, "Conditioning time")->capture_default_str();
    e->add_option("--s", exact.s, "Evaluation time");
    e->add_option("--x", exact.x, "Count at the start")->capture_default_str();
    e->add_option("--f", exact.f, "Function descriptor");
    e->add_option("--tol", exact.tol, "Series tolerance")->capture_default_str();

    OracleArgs oracle_args;
    auto* o = app.add_subcommand("oracle-check", "Compare the recursion with brute-force enumeration");
    o->add_option("--cases", oracle_args.cases, "Number of random instances")->capture_default_str();
    o->add_option("--seed", oracle_args.seed, "Random seed")->capture_default_str();

    try {
        args = expand_config(std::move(args));
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& ex) {
        const int code = app.exit(ex, out, err);
        return code == 0 ? kSuccess : kUsageError;
    } catch (const Error& ex) {
        err << "error: " << ex.what() << '\n';
        return kUsageError;
    }

    try {
        if (b->parsed()) return cmd_bounds(bounds, out);
        if (w->parsed()) return cmd_sweep(sweep, out, err);
        if (e->parsed()) return cmd_exact(exact, out, err);
        return cmd_oracle_check(oracle_args, hooks.engine, out);
    } catch (const Error& ex) {
        err << "error: " << ex.what() << '\n';
        return ex.code() == ErrorCode::tolerance_unreachable ? kToleranceError : kUsageError;
    }
}

} // namespace impois::cli
