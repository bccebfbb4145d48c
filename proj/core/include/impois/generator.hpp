#pragma once

#include "impois/function_spec.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace impois {

/// The closed interval [lower, upper] of admissible event rates.
class RateInterval {
public:
    RateInterval(double lower, double upper);

    double lower() const noexcept { return lower_; }
    double upper() const noexcept { return upper_; }
    bool degenerate() const noexcept { return lower_ == upper_; }

private:
    double lower_;
    double upper_;
};

/// A function on the count window {base .. top()} extended by a constant
/// `tail` beyond top(). Truncations of an eventually constant function use
/// tail == values.back().
class WindowFunction {
public:
    WindowFunction(Count base, std::vector<double> values, double tail);
    /// Convenience form with tail equal to the last value.
    WindowFunction(Count base, std::vector<double> values);

    /// Restriction of f to {base .. top}, extended by f(top).
    static WindowFunction restrict(const FunctionSpec& f, Count base, Count top);

    Count base() const noexcept { return base_; }
    Count top() const noexcept { return base_ + values_.size() - 1; }
    std::size_t size() const noexcept { return values_.size(); }
    double tail() const noexcept { return tail_; }

    std::span<const double> values() const noexcept { return values_; }
    /// Local index, 0 == base.
    double operator[](std::size_t i) const { return values_[i]; }
    /// Global count; constant tail above top, invalid below base.
    double at(Count x) const;

    double sup_norm() const;
    double min() const;
    double max() const;

    WindowFunction operator-() const;

    friend bool operator==(const WindowFunction&, const WindowFunction&) = default;

private:
    Count base_;
    std::vector<double> values_;
    double tail_;
};

/// One rate per window state below the top, each inside the interval.
/// Characterises a dominating linear generator on the window.
struct RateSelection {
    std::vector<double> rates;
};

/// [Q g](x) = min over rates of rate * (g(x+1) - g(x)) below the top, 0 at
/// the top. The result's tail is 0.
WindowFunction apply_lower_generator(const RateInterval& interval, const WindowFunction& g);

/// Linear birth generator for a fixed per-state rate selection.
WindowFunction apply_selected_generator(const RateSelection& selection, const WindowFunction& g);

/// The per-state rates attaining the minimum in apply_lower_generator. Ties
/// (flat steps) pick the lower rate.
RateSelection minimizing_selection(const RateInterval& interval, const WindowFunction& g);

/// Sup-norm operator norm of the lower generator: 2 * upper.
double operator_norm(const RateInterval& interval);

} // namespace impois
