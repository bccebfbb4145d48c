#pragma once

#include "impois/function_spec.hpp"
#include "impois/generator.hpp"

#include <cstdint>

namespace impois {

inline constexpr std::uint64_t kDefaultMaxSteps = 100'000'000;

struct EngineOptions {
    /// Upper limit on the number of grid steps of any single recursion.
    std::uint64_t max_steps = kDefaultMaxSteps;
    /// Use the closed-form Poisson answer for declared-monotone functions.
    bool monotone_shortcut = true;
};

/// Uniform partition of [start, end] into `steps` pieces. A grid with
/// start == end is the single point and has zero steps.
class TimeGrid {
public:
    TimeGrid(double start, double end, std::uint64_t steps);

    double start() const noexcept { return start_; }
    double end() const noexcept { return end_; }
    std::uint64_t steps() const noexcept { return steps_; }
    double duration() const noexcept { return end_ - start_; }
    /// Largest (here: every) step length.
    double granularity() const noexcept { return steps_ == 0 ? 0.0 : duration() / static_cast<double>(steps_); }

private:
    double start_;
    double end_;
    std::uint64_t steps_;
};

struct ApproxResult {
    WindowFunction values;
    /// Sup-norm bound on the distance to the exact lower transition operator.
    double a_priori_error;
    TimeGrid grid;
};

/// A single computed lower or upper value.
struct Estimate {
    double value = 0.0;
    double error_bound = 0.0;
    Count truncation_top = 0;
    std::uint64_t steps = 0;
};

struct BoundResult {
    double lower = 0.0;
    double upper = 0.0;
    /// Applies to each of lower and upper.
    double error_bound = 0.0;
    Count truncation_top = 0;
    std::uint64_t steps = 0;
};

BoundResult combine(const Estimate& lower, const Estimate& upper);

/// g + dt * Q g. Refuses steps with dt * ||Q|| > 2, where the map would stop
/// being a convex combination.
WindowFunction euler_step(const RateInterval& interval, const WindowFunction& g, double dt);

/// Backward product of Euler steps over the grid.
WindowFunction phi_apply(const RateInterval& interval, const TimeGrid& grid, const WindowFunction& g);

/// sigma * (s - t) * ||Q||^2 * g_norm.
double a_priori_error(const RateInterval& interval, const TimeGrid& grid, double g_norm);

ApproxResult approximate(const RateInterval& interval, const TimeGrid& grid, const WindowFunction& g);

/// Smallest uniform grid on [t, s] whose a priori error for a function of
/// norm g_norm is at most eps and whose steps satisfy dt * ||Q|| <= 1.
TimeGrid choose_grid(const RateInterval& interval, double t, double s, double g_norm, double eps,
                     std::uint64_t max_steps = kDefaultMaxSteps);

/// Lower prevision of a function that is constant from its declared index on.
Estimate lower_prevision_ev_const(const RateInterval& interval, double t, double s, Count x,
                                  const FunctionSpec& f, double eps, const EngineOptions& opts = {});

/// Lower prevision of a bounded function.
///
/// After n backward steps the value at x only sees f on {x .. x+n}, so the
/// truncation at x + n is exact for that grid. When that window would make
/// the recursion too expensive the truncation point is taken from the upper
/// Poisson tail instead, and half of eps is spent on the neglected tail.
Estimate lower_prevision_bounded(const RateInterval& interval, double t, double s, Count x,
                                 const FunctionSpec& f, double eps, const EngineOptions& opts = {});

/// Lower prevision of a bounded-below function with a growth envelope, as
/// the limit of its eventually constant truncations.
Estimate lower_prevision_growth(const RateInterval& interval, double t, double s, Count x,
                                const FunctionSpec& f, double eps, const EngineOptions& opts = {});

/// Upper counterpart of lower_prevision_growth.
Estimate upper_prevision_growth(const RateInterval& interval, double t, double s, Count x,
                                const FunctionSpec& f, double eps, const EngineOptions& opts = {});

/// Dispatches on the function's metadata: eventually constant, then
/// bounded, then growth envelope.
Estimate lower_prevision(const RateInterval& interval, double t, double s, Count x,
                         const FunctionSpec& f, double eps, const EngineOptions& opts = {});

/// Conjugate upper prevision, -lower(-f) for bounded f.
Estimate upper_prevision(const RateInterval& interval, double t, double s, Count x,
                         const FunctionSpec& f, double eps, const EngineOptions& opts = {});

} // namespace impois
