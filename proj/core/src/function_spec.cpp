#include "impois/function_spec.hpp"

#include "impois/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace impois {

double GrowthEnvelope::operator()(Count y) const {
    return a + b * std::pow(static_cast<double>(y), static_cast<double>(p));
}

std::optional<double> FunctionSpec::infimum() const {
    if (lower_bound) return lower_bound;
    if (bound) return -*bound;
    if (eventual_constant_at) {
        double lo = evaluate(0);
        for (Count y = 1; y <= *eventual_constant_at; ++y) lo = std::min(lo, evaluate(y));
        return lo;
    }
    return std::nullopt;
}

namespace {

constexpr Count kSpotCheckRange = 64;

[[noreturn]] void violation(const std::string& what, Count y, double value) {
    throw Error(ErrorCode::contract_violation,
                what + " violated at y=" + std::to_string(y) +
                    " (f(y)=" + std::to_string(value) + ")");
}

std::vector<Count> sample_points() {
    std::vector<Count> points;
    for (Count y = 0; y <= kSpotCheckRange; ++y) points.push_back(y);
    points.insert(points.end(), {100, 1000, 10000});
    return points;
}

} // namespace

void validate(const FunctionSpec& f) {
    if (!f.evaluate) throw Error(ErrorCode::invalid_parameter, "function has no evaluator");
    if (f.bound && !(*f.bound >= 0.0 && std::isfinite(*f.bound)))
        throw Error(ErrorCode::invalid_parameter, "bound certificate must be finite and non-negative");

    const auto points = sample_points();
    for (Count y : points) {
        const double v = f(y);
        if (!std::isfinite(v)) violation("finiteness", y, v);
        if (f.bound && std::abs(v) > *f.bound) violation("declared bound", y, v);
        if (f.lower_bound && v < *f.lower_bound) violation("declared lower bound", y, v);
        if (f.envelope) {
            const double env = (*f.envelope)(y);
            if (v > env + 1e-12 * std::max(1.0, std::abs(env))) violation("growth envelope", y, v);
        }
    }

    if (f.monotonicity != Monotonicity::none) {
        double prev = f(0);
        for (Count y = 1; y <= kSpotCheckRange; ++y) {
            const double v = f(y);
            const bool ok = f.monotonicity == Monotonicity::non_decreasing ? v >= prev : v <= prev;
            if (!ok) violation("declared monotonicity", y, v);
            prev = v;
        }
    }

    if (f.eventual_constant_at) {
        const Count top = *f.eventual_constant_at;
        const double c = f(top);
        for (Count y = top + 1; y <= top + kSpotCheckRange; ++y)
            if (f(y) != c) violation("eventual constancy", y, f(y));
        if (f(top + 1000) != c) violation("eventual constancy", top + 1000, f(top + 1000));
    }
}

FunctionSpec negated(const FunctionSpec& f) {
    FunctionSpec g;
    g.evaluate = [inner = f.evaluate](Count y) { return -inner(y); };
    switch (f.monotonicity) {
    case Monotonicity::non_decreasing: g.monotonicity = Monotonicity::non_increasing; break;
    case Monotonicity::non_increasing: g.monotonicity = Monotonicity::non_decreasing; break;
    case Monotonicity::none: break;
    }
    g.eventual_constant_at = f.eventual_constant_at;
    g.bound = f.bound;
    if (f.bound) g.lower_bound = -*f.bound;
    if (auto lo = f.lower_bound) g.envelope = GrowthEnvelope{-*lo, 0.0, 0};
    return g;
}

FunctionSpec shifted(const FunctionSpec& f, Count offset) {
    FunctionSpec g;
    g.evaluate = [inner = f.evaluate, offset](Count z) { return inner(offset + z); };
    g.monotonicity = f.monotonicity;
    if (f.eventual_constant_at)
        g.eventual_constant_at = *f.eventual_constant_at > offset ? *f.eventual_constant_at - offset : 0;
    g.bound = f.bound;
    g.lower_bound = f.lower_bound;
    if (f.envelope) {
        const auto& e = *f.envelope;
        if (e.p == 0 || e.b == 0.0) {
            g.envelope = GrowthEnvelope{e.a + e.b, 0.0, 0};
        } else if (e.b < 0.0) {
            g.envelope = GrowthEnvelope{e.a, 0.0, 0};
        } else {
            // (offset + z)^p <= 2^{p-1} (offset^p + z^p) by convexity
            const double scale = std::pow(2.0, static_cast<double>(e.p) - 1.0);
            g.envelope = GrowthEnvelope{
                e.a + e.b * scale * std::pow(static_cast<double>(offset), static_cast<double>(e.p)),
                e.b * scale, e.p};
        }
    }
    return g;
}

namespace functions {

FunctionSpec constant(double c) {
    FunctionSpec f;
    f.evaluate = [c](Count) { return c; };
    f.eventual_constant_at = 0;
    f.bound = std::abs(c);
    f.lower_bound = c;
    f.monotonicity = Monotonicity::non_decreasing;
    return f;
}

FunctionSpec indicator(Count k) {
    FunctionSpec f;
    f.evaluate = [k](Count y) { return y == k ? 1.0 : 0.0; };
    f.eventual_constant_at = k + 1;
    f.bound = 1.0;
    f.lower_bound = 0.0;
    if (k == 0) f.monotonicity = Monotonicity::non_increasing;
    return f;
}

FunctionSpec indicator_at_least(Count k) {
    FunctionSpec f;
    f.evaluate = [k](Count y) { return y >= k ? 1.0 : 0.0; };
    f.eventual_constant_at = k;
    f.bound = 1.0;
    f.lower_bound = 0.0;
    f.monotonicity = Monotonicity::non_decreasing;
    return f;
}

FunctionSpec indicator_at_most(Count k) {
    FunctionSpec f;
    f.evaluate = [k](Count y) { return y <= k ? 1.0 : 0.0; };
    f.eventual_constant_at = k + 1;
    f.bound = 1.0;
    f.lower_bound = 0.0;
    f.monotonicity = Monotonicity::non_increasing;
    return f;
}

FunctionSpec identity() {
    FunctionSpec f;
    f.evaluate = [](Count y) { return static_cast<double>(y); };
    f.monotonicity = Monotonicity::non_decreasing;
    f.envelope = GrowthEnvelope{0.0, 1.0, 1};
    f.lower_bound = 0.0;
    return f;
}

FunctionSpec polynomial(double a, double b, unsigned p) {
    if (p == 0 || b == 0.0) return constant(a + (p == 0 ? b : 0.0));
    FunctionSpec f;
    const GrowthEnvelope env{a, b, p};
    f.evaluate = env;
    f.envelope = env;
    if (b > 0.0) {
        f.monotonicity = Monotonicity::non_decreasing;
        f.lower_bound = a;
    } else {
        // not bounded below; only the envelope is known
        f.monotonicity = Monotonicity::non_increasing;
    }
    return f;
}

FunctionSpec tabulated(std::vector<double> values, double tail) {
    for (double v : values)
        if (!std::isfinite(v)) throw Error(ErrorCode::invalid_parameter, "tabulated value is not finite");
    if (!std::isfinite(tail)) throw Error(ErrorCode::invalid_parameter, "tabulated tail is not finite");

    // drop trailing entries that already equal the tail
    while (!values.empty() && values.back() == tail) values.pop_back();

    FunctionSpec f;
    f.eventual_constant_at = values.size();
    double sup = std::abs(tail);
    double inf = tail;
    bool up = true;
    bool down = true;
    for (std::size_t i = 0; i < values.size(); ++i) {
        sup = std::max(sup, std::abs(values[i]));
        inf = std::min(inf, values[i]);
        const double next = i + 1 < values.size() ? values[i + 1] : tail;
        up = up && next >= values[i];
        down = down && next <= values[i];
    }
    f.bound = sup;
    f.lower_bound = inf;
    if (up) f.monotonicity = Monotonicity::non_decreasing;
    else if (down) f.monotonicity = Monotonicity::non_increasing;
    f.evaluate = [values = std::move(values), tail](Count y) {
        return y < values.size() ? values[y] : tail;
    };
    return f;
}

} // namespace functions

} // namespace impois
