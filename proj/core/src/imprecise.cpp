#include "impois/imprecise.hpp"

#include "impois/error.hpp"
#include "impois/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace impois {

namespace {

constexpr double kInvPhi = 0.6180339887498949;   // (sqrt(5) - 1) / 2
constexpr double kRelativeBracket = 1e-8;

void require_query(double t, double s, double eps) {
    if (!std::isfinite(t) || !std::isfinite(s) || !(t >= 0.0) || !(t <= s))
        throw Error(ErrorCode::invalid_parameter, "expected finite times 0 <= t <= s");
    if (!(eps > 0.0) || !std::isfinite(eps))
        throw Error(ErrorCode::invalid_parameter, "eps must be positive and finite");
}

// Crude bound on |d/d rate E_rate f| over the interval: the derivative is
// (s-t) * E[f(x+Y+1) - f(x+Y)].
double rate_lipschitz(const RateInterval& interval, double t, double s, Count x, const FunctionSpec& f) {
    const double span = s - t;
    if (f.bound) return 2.0 * span * *f.bound;
    if (f.eventual_constant_at)
        return 2.0 * span * WindowFunction::restrict(f, 0, std::max(x, *f.eventual_constant_at)).sup_norm();
    const auto lo = f.infimum();
    if (!f.envelope || !lo)
        throw Error(ErrorCode::unsupported_function, "rate optimization needs a bounded or enveloped function");
    const auto& env = *f.envelope;
    const double alpha = std::abs(*lo) + std::abs(env.a);
    return 2.0 * span *
           polynomial_tail_moment(PoissonMean(interval.upper() * span), x + 1, 0, alpha, std::abs(env.b), env.p,
                                  1e-6);
}

// Minimizes sign * E_rate f over the interval.
Estimate optimize_rate(const RateInterval& interval, double t, double s, Count x, const FunctionSpec& f,
                       double eps, int grid_points, double sign) {
    const double tol = 0.5 * eps;
    auto objective = [&](double rate) { return sign * poisson_expectation(rate, t, s, x, f, tol); };

    const double lo = interval.lower();
    const double hi = interval.upper();
    if (interval.degenerate() || t == s) return Estimate{sign * objective(lo), tol, x, 0};
    if (grid_points < 2) throw Error(ErrorCode::invalid_parameter, "rate grid needs at least two points");

    const auto n = static_cast<std::size_t>(grid_points);
    std::vector<double> rates(n);
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) {
        rates[i] = i + 1 == n ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
        values[i] = objective(rates[i]);
    }
    // first minimum by index keeps the result independent of evaluation order
    const std::size_t best = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
    double best_value = values[best];

    double a = rates[best == 0 ? 0 : best - 1];
    double b = rates[std::min(best + 1, n - 1)];
    const double width = kRelativeBracket * (hi - lo);
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = objective(c);
    double fd = objective(d);
    std::uint64_t evaluations = n + 2;
    while (b - a > width) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = objective(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = objective(d);
        }
        ++evaluations;
        best_value = std::min({best_value, fc, fd});
    }

    const double slack = rate_lipschitz(interval, t, s, x, f) * (b - a);
    return Estimate{sign * best_value, tol + slack, x, evaluations};
}

bool shortcut_applies(const FunctionSpec& f, const EngineOptions& opts) {
    return opts.monotone_shortcut && f.monotonicity != Monotonicity::none;
}

} // namespace

std::string_view to_string(SetKind kind) noexcept {
    return kind == SetKind::poisson_set ? "poisson" : "consistent";
}

Estimate optimize_poisson_rate(const RateInterval& interval, double t, double s, Count x, const FunctionSpec& f,
                               double eps, int grid_points) {
    require_query(t, s, eps);
    return optimize_rate(interval, t, s, x, f, eps, grid_points, 1.0);
}

Estimate lower_expectation(SetKind set, const RateInterval& interval, double t, double s, Count x,
                           const FunctionSpec& f, double eps, const EngineOptions& opts) {
    require_query(t, s, eps);
    validate(f);
    if (shortcut_applies(f, opts)) {
        const double rate = f.monotonicity == Monotonicity::non_decreasing ? interval.lower() : interval.upper();
        return Estimate{poisson_expectation(rate, t, s, x, f, eps), eps, x, 0};
    }
    if (set == SetKind::consistent_set) return lower_prevision(interval, t, s, x, f, eps, opts);
    return optimize_rate(interval, t, s, x, f, eps, kRateGridPoints, 1.0);
}

Estimate upper_expectation(SetKind set, const RateInterval& interval, double t, double s, Count x,
                           const FunctionSpec& f, double eps, const EngineOptions& opts) {
    require_query(t, s, eps);
    validate(f);
    if (shortcut_applies(f, opts)) {
        const double rate = f.monotonicity == Monotonicity::non_decreasing ? interval.upper() : interval.lower();
        return Estimate{poisson_expectation(rate, t, s, x, f, eps), eps, x, 0};
    }
    if (set == SetKind::consistent_set) return upper_prevision(interval, t, s, x, f, eps, opts);
    return optimize_rate(interval, t, s, x, f, eps, kRateGridPoints, -1.0);
}

BoundResult expectation_bounds(SetKind set, const RateInterval& interval, double t, double s, Count x,
                               const FunctionSpec& f, double eps, const EngineOptions& opts) {
    return combine(lower_expectation(set, interval, t, s, x, f, eps, opts),
                   upper_expectation(set, interval, t, s, x, f, eps, opts));
}

std::pair<double, double> expected_count_bounds(const RateInterval& interval, double t, double s, Count x) {
    if (!std::isfinite(t) || !std::isfinite(s) || !(t >= 0.0) || !(t <= s))
        throw Error(ErrorCode::invalid_parameter, "expected finite times 0 <= t <= s");
    const double base = static_cast<double>(x);
    return {base + interval.lower() * (s - t), base + interval.upper() * (s - t)};
}

} // namespace impois
