#include "impois/generator.hpp"

#include "impois/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace impois {

RateInterval::RateInterval(double lower, double upper) : lower_(lower), upper_(upper) {
    if (!std::isfinite(lower) || !std::isfinite(upper) || !(lower >= 0.0) || !(lower <= upper))
        throw Error(ErrorCode::invalid_parameter,
                    "rate interval needs 0 <= lower <= upper < inf, got [" + std::to_string(lower) +
                        ", " + std::to_string(upper) + "]");
}

WindowFunction::WindowFunction(Count base, std::vector<double> values, double tail)
    : base_(base), values_(std::move(values)), tail_(tail) {
    if (values_.empty()) throw Error(ErrorCode::dimension_mismatch, "window must hold at least one state");
    for (double v : values_)
        if (!std::isfinite(v)) throw Error(ErrorCode::invalid_parameter, "window values must be finite");
    if (!std::isfinite(tail_)) throw Error(ErrorCode::invalid_parameter, "window tail must be finite");
}

WindowFunction::WindowFunction(Count base, std::vector<double> values)
    : WindowFunction(base, values, values.empty() ? 0.0 : values.back()) {}

WindowFunction WindowFunction::restrict(const FunctionSpec& f, Count base, Count top) {
    if (top < base) throw Error(ErrorCode::dimension_mismatch, "window top below base");
    std::vector<double> values;
    values.reserve(top - base + 1);
    for (Count y = base; y <= top; ++y) values.push_back(f(y));
    return WindowFunction(base, std::move(values));
}

double WindowFunction::at(Count x) const {
    if (x < base_) throw Error(ErrorCode::dimension_mismatch, "count below window base");
    return x > top() ? tail_ : values_[x - base_];
}

double WindowFunction::sup_norm() const {
    double n = 0.0;
    for (double v : values_) n = std::max(n, std::abs(v));
    return n;
}

double WindowFunction::min() const { return *std::min_element(values_.begin(), values_.end()); }

double WindowFunction::max() const { return *std::max_element(values_.begin(), values_.end()); }

WindowFunction WindowFunction::operator-() const {
    std::vector<double> neg(values_.size());
    std::transform(values_.begin(), values_.end(), neg.begin(), [](double v) { return -v; });
    return WindowFunction(base_, std::move(neg), -tail_);
}

WindowFunction apply_lower_generator(const RateInterval& interval, const WindowFunction& g) {
    const auto v = g.values();
    std::vector<double> out(v.size(), 0.0);
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        const double d = v[i + 1] - v[i];
        out[i] = (d >= 0.0 ? interval.lower() : interval.upper()) * d;
    }
    return WindowFunction(g.base(), std::move(out), 0.0);
}

WindowFunction apply_selected_generator(const RateSelection& selection, const WindowFunction& g) {
    const auto v = g.values();
    if (selection.rates.size() + 1 != v.size())
        throw Error(ErrorCode::dimension_mismatch,
                    "rate selection has " + std::to_string(selection.rates.size()) +
                        " entries for a window of " + std::to_string(v.size()) + " states");
    std::vector<double> out(v.size(), 0.0);
    for (std::size_t i = 0; i + 1 < v.size(); ++i) out[i] = selection.rates[i] * (v[i + 1] - v[i]);
    return WindowFunction(g.base(), std::move(out), 0.0);
}

RateSelection minimizing_selection(const RateInterval& interval, const WindowFunction& g) {
    const auto v = g.values();
    RateSelection sel;
    sel.rates.reserve(v.size() - 1);
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        sel.rates.push_back(v[i + 1] - v[i] >= 0.0 ? interval.lower() : interval.upper());
    return sel;
}

double operator_norm(const RateInterval& interval) { return 2.0 * interval.upper(); }

} // namespace impois
