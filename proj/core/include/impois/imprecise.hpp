#pragma once

#include "impois/function_spec.hpp"
#include "impois/generator.hpp"
#include "impois/semigroup.hpp"

#include <string_view>
#include <utility>

namespace impois {

/// Which set of counting processes the bounds range over.
enum class SetKind {
    /// Homogeneous Poisson processes with a rate in the interval.
    poisson_set,
    /// All counting processes whose rates stay inside the interval.
    consistent_set,
};

std::string_view to_string(SetKind kind) noexcept;

/// Number of points of the coarse rate grid in the Poisson-set optimizer.
inline constexpr int kRateGridPoints = 129;

Estimate lower_expectation(SetKind set, const RateInterval& interval, double t, double s, Count x,
                           const FunctionSpec& f, double eps, const EngineOptions& opts = {});

Estimate upper_expectation(SetKind set, const RateInterval& interval, double t, double s, Count x,
                           const FunctionSpec& f, double eps, const EngineOptions& opts = {});

/// Lower and upper expectation in one result.
BoundResult expectation_bounds(SetKind set, const RateInterval& interval, double t, double s, Count x,
                               const FunctionSpec& f, double eps, const EngineOptions& opts = {});

/// Tight bounds on the expected count at s given x at t: x + rate * (s - t)
/// at both ends of the interval.
std::pair<double, double> expected_count_bounds(const RateInterval& interval, double t, double s, Count x);

/// Minimum over rates in the interval of the precise Poisson expectation,
/// found by a coarse grid followed by golden-section refinement. Exposed for
/// testing the optimizer independently of the monotone shortcut.
Estimate optimize_poisson_rate(const RateInterval& interval, double t, double s, Count x,
                               const FunctionSpec& f, double eps, int grid_points = kRateGridPoints);

} // namespace impois
