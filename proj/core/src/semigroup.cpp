#include "impois/semigroup.hpp"

#include "impois/error.hpp"
#include "impois/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace impois {

namespace {

// Beyond this many state updates the exact x + n truncation window is
// abandoned in favour of a tail-mass truncation.
constexpr double kExactWindowWork = 5e7;

// The growth schedule gives up once the window exceeds this many states.
constexpr Count kMaxGrowthWindow = Count{1} << 24;

void require_times(double t, double s) {
    if (!std::isfinite(t) || !std::isfinite(s) || !(t >= 0.0) || !(t <= s))
        throw Error(ErrorCode::invalid_parameter,
                    "expected finite times 0 <= t <= s, got t=" + std::to_string(t) + " s=" + std::to_string(s));
}

void require_eps(double eps) {
    if (!(eps > 0.0) || !std::isfinite(eps))
        throw Error(ErrorCode::invalid_parameter, "eps must be positive and finite");
}

void check_step(const RateInterval& interval, double dt) {
    if (!(dt >= 0.0))
        throw Error(ErrorCode::invalid_parameter, "step length must be non-negative");
    if (dt * operator_norm(interval) > 2.0)
        throw Error(ErrorCode::step_too_large,
                    "step " + std::to_string(dt) + " exceeds 2/||Q|| for upper rate " +
                        std::to_string(interval.upper()));
}

// In-place backward recursion. With `only_base` set, the state updates are
// limited to the states that can still influence the value at the base:
// after the j-th of n steps only indices below n - j + 1 are read later.
void run_recursion(const RateInterval& interval, const TimeGrid& grid, std::vector<double>& v,
                   bool only_base) {
    const double dt = grid.granularity();
    check_step(interval, dt);
    const double lo = interval.lower();
    const double hi = interval.upper();
    const std::uint64_t n = grid.steps();
    const std::size_t full = v.size() - 1;
    for (std::uint64_t j = 1; j <= n; ++j) {
        std::size_t active = full;
        if (only_base) active = static_cast<std::size_t>(std::min<std::uint64_t>(full, n - j + 1));
        for (std::size_t i = 0; i < active; ++i) {
            const double d = v[i + 1] - v[i];
            v[i] = v[i] + dt * ((d >= 0.0 ? lo : hi) * d);
        }
    }
}

// Value at the window base of the lower operator applied to g, with grid
// chosen for eps.
Estimate window_lower_at_base(const RateInterval& interval, double t, double s, const WindowFunction& g,
                              double eps, const EngineOptions& opts) {
    const double norm = g.sup_norm();
    const TimeGrid grid = choose_grid(interval, t, s, norm, eps, opts.max_steps);
    std::vector<double> v(g.values().begin(), g.values().end());
    run_recursion(interval, grid, v, true);
    return Estimate{v.front(), a_priori_error(interval, grid, norm), g.top(), grid.steps()};
}

Estimate negate(Estimate e) {
    e.value = -e.value;
    return e;
}

Estimate prevision_growth(const RateInterval& interval, double t, double s, Count x, const FunctionSpec& f,
                          double eps, const EngineOptions& opts, bool upper) {
    require_times(t, s);
    require_eps(eps);
    if (!f.envelope)
        throw Error(ErrorCode::unsupported_function, "unbounded function needs a growth envelope");
    const auto lb = f.infimum();
    if (!lb) throw Error(ErrorCode::unsupported_function, "growth path needs a bounded-below function");
    if (t == s) return Estimate{f(x), 0.0, x, 0};

    const GrowthEnvelope& env = *f.envelope;
    const PoissonMean mean_hi(interval.upper() * (s - t));
    const double half = 0.5 * eps;

    std::optional<double> previous;
    for (Count span = 16;; span *= 2) {
        if (span > kMaxGrowthWindow)
            throw ToleranceUnreachable("truncation did not settle within " + std::to_string(kMaxGrowthWindow) +
                                           " states",
                                       eps);
        const Count top = x + span;
        WindowFunction g = WindowFunction::restrict(f, x, top);
        for (Count y = x; y <= top; ++y) {
            const double v = g.at(y);
            if (v > env(y) + 1e-12 * std::max(1.0, std::abs(env(y))) || v < *lb)
                throw Error(ErrorCode::contract_violation,
                            "function leaves its declared envelope at y=" + std::to_string(y));
        }

        Estimate e = upper ? negate(window_lower_at_base(interval, t, s, -g, half, opts))
                           : window_lower_at_base(interval, t, s, g, half, opts);

        // |P(f) - P(f_trunc)| is bounded by the upper Poisson expectation of
        // the positive and negative parts of f - f_trunc above top.
        const double f_top = g.at(top);
        const double above = polynomial_tail_moment(mean_hi, x, span + 1, std::max(env.a - f_top, 0.0),
                                                    std::max(env.b, 0.0), env.p, 0.1 * half);
        const double below = (f_top - *lb) * upper_tail(mean_hi, span + 1);
        const double tail = std::max(above, below);

        const bool settled = previous && std::abs(e.value - *previous) <= half;
        if (settled && tail <= half) {
            e.error_bound += tail;
            return e;
        }
        previous = e.value;
    }
}

} // namespace

TimeGrid::TimeGrid(double start, double end, std::uint64_t steps) : start_(start), end_(end), steps_(steps) {
    require_times(start, end);
    if (start == end && steps != 0)
        throw Error(ErrorCode::invalid_parameter, "a single-point grid has no steps");
    if (start < end && steps == 0)
        throw Error(ErrorCode::invalid_parameter, "a non-trivial grid needs at least one step");
}

BoundResult combine(const Estimate& lower, const Estimate& upper) {
    return BoundResult{lower.value, upper.value, std::max(lower.error_bound, upper.error_bound),
                       std::max(lower.truncation_top, upper.truncation_top),
                       std::max(lower.steps, upper.steps)};
}

WindowFunction euler_step(const RateInterval& interval, const WindowFunction& g, double dt) {
    check_step(interval, dt);
    const WindowFunction q = apply_lower_generator(interval, g);
    std::vector<double> out(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) out[i] = g[i] + dt * q[i];
    return WindowFunction(g.base(), std::move(out), g.tail());
}

WindowFunction phi_apply(const RateInterval& interval, const TimeGrid& grid, const WindowFunction& g) {
    std::vector<double> v(g.values().begin(), g.values().end());
    run_recursion(interval, grid, v, false);
    return WindowFunction(g.base(), std::move(v), g.tail());
}

double a_priori_error(const RateInterval& interval, const TimeGrid& grid, double g_norm) {
    const double q = operator_norm(interval);
    return grid.granularity() * grid.duration() * q * q * g_norm;
}

ApproxResult approximate(const RateInterval& interval, const TimeGrid& grid, const WindowFunction& g) {
    return ApproxResult{phi_apply(interval, grid, g), a_priori_error(interval, grid, g.sup_norm()), grid};
}

TimeGrid choose_grid(const RateInterval& interval, double t, double s, double g_norm, double eps,
                     std::uint64_t max_steps) {
    require_times(t, s);
    require_eps(eps);
    if (!(g_norm >= 0.0) || !std::isfinite(g_norm))
        throw Error(ErrorCode::invalid_parameter, "function norm must be finite and non-negative");
    if (t == s) return TimeGrid(t, s, 0);

    const double span = s - t;
    const double q = operator_norm(interval);
    const double c = span * span * q * q * g_norm;
    const double by_error = c / eps;
    const double by_step = span * q;
    const double needed = std::max({1.0, std::ceil(by_error), std::ceil(by_step)});
    if (needed > static_cast<double>(max_steps))
        throw ToleranceUnreachable("eps=" + std::to_string(eps) + " needs more than " + std::to_string(max_steps) +
                                       " grid steps",
                                   c / static_cast<double>(max_steps));

    auto fits = [&](std::uint64_t n) {
        const double nd = static_cast<double>(n);
        return c / nd <= eps && span / nd * q <= 1.0;
    };
    auto n = static_cast<std::uint64_t>(needed);
    while (n > 1 && fits(n - 1)) --n;
    while (!fits(n)) ++n;
    return TimeGrid(t, s, n);
}

Estimate lower_prevision_ev_const(const RateInterval& interval, double t, double s, Count x,
                                  const FunctionSpec& f, double eps, const EngineOptions& opts) {
    require_times(t, s);
    require_eps(eps);
    if (!f.eventual_constant_at)
        throw Error(ErrorCode::unsupported_function, "function has no eventual-constant index");
    const Count top = *f.eventual_constant_at;
    if (x >= top) return Estimate{f(top), 0.0, top, 0};
    return window_lower_at_base(interval, t, s, WindowFunction::restrict(f, x, top), eps, opts);
}

Estimate lower_prevision_bounded(const RateInterval& interval, double t, double s, Count x,
                                 const FunctionSpec& f, double eps, const EngineOptions& opts) {
    require_times(t, s);
    require_eps(eps);
    double bound = 0.0;
    if (f.bound) {
        bound = *f.bound;
    } else if (f.eventual_constant_at) {
        bound = WindowFunction::restrict(f, 0, *f.eventual_constant_at).sup_norm();
    } else {
        throw Error(ErrorCode::unsupported_function, "bounded path needs a bound certificate");
    }
    if (t == s) return Estimate{f(x), 0.0, x, 0};

    const std::uint64_t provisional = choose_grid(interval, t, s, bound, eps, opts.max_steps).steps();
    const double exact_work = 0.5 * static_cast<double>(provisional) * static_cast<double>(provisional + 1);

    // Smallest m with 2B * P_upper(Y > m) <= eps/2; the truncation changes f
    // by at most 2B and only above x + m.
    const PoissonMean mean_hi(interval.upper() * (s - t));
    Count m = 0;
    while (m < provisional && 2.0 * bound * upper_tail(mean_hi, m + 1) > 0.5 * eps) ++m;

    if (m >= provisional || exact_work <= kExactWindowWork) {
        // any grid no finer than the provisional one only reads {x .. x+provisional}
        return window_lower_at_base(interval, t, s, WindowFunction::restrict(f, x, x + provisional), eps, opts);
    }
    Estimate e = window_lower_at_base(interval, t, s, WindowFunction::restrict(f, x, x + m), 0.5 * eps, opts);
    e.error_bound += 2.0 * bound * upper_tail(mean_hi, m + 1);
    return e;
}

Estimate lower_prevision_growth(const RateInterval& interval, double t, double s, Count x,
                                const FunctionSpec& f, double eps, const EngineOptions& opts) {
    return prevision_growth(interval, t, s, x, f, eps, opts, false);
}

Estimate upper_prevision_growth(const RateInterval& interval, double t, double s, Count x,
                                const FunctionSpec& f, double eps, const EngineOptions& opts) {
    return prevision_growth(interval, t, s, x, f, eps, opts, true);
}

Estimate lower_prevision(const RateInterval& interval, double t, double s, Count x, const FunctionSpec& f,
                         double eps, const EngineOptions& opts) {
    if (f.eventual_constant_at) return lower_prevision_ev_const(interval, t, s, x, f, eps, opts);
    if (f.bound) return lower_prevision_bounded(interval, t, s, x, f, eps, opts);
    if (f.envelope) return lower_prevision_growth(interval, t, s, x, f, eps, opts);
    throw Error(ErrorCode::unsupported_function,
                "function needs an eventual-constant index, a bound, or a growth envelope");
}

Estimate upper_prevision(const RateInterval& interval, double t, double s, Count x, const FunctionSpec& f,
                         double eps, const EngineOptions& opts) {
    if (f.is_bounded()) return negate(lower_prevision(interval, t, s, x, negated(f), eps, opts));
    if (f.envelope) return upper_prevision_growth(interval, t, s, x, f, eps, opts);
    throw Error(ErrorCode::unsupported_function,
                "function needs an eventual-constant index, a bound, or a growth envelope");
}

} // namespace impois
