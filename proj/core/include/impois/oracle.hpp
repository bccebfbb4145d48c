#pragma once

#include "impois/function_spec.hpp"
#include "impois/generator.hpp"
#include "impois/semigroup.hpp"

#include <cstdint>
#include <functional>

namespace impois::oracle {

/// Limits on the enumeration. The number of rate assignments is
/// 2^((window - 1) * steps) and must stay at or below 2^16.
struct OracleBudget {
    int max_window = 5;
    int max_steps = 4;
};

/// Componentwise minimum of prod_i (I + dt Q_i) g over every assignment of
/// an endpoint rate to every (step, state) pair.
///
/// Each step's value is linear in each per-state rate, so interior rates
/// never beat the endpoints and the enumeration covers the whole set of
/// dominating generators.
WindowFunction brute_force_phi(const RateInterval& interval, const TimeGrid& grid, const WindowFunction& g,
                               const OracleBudget& budget = {});

/// Plain compensated partial sum of the first `terms` terms of
/// sum_k f(x+k) psi_{rate (s-t)}(k), with the Poisson weights built by the
/// multiplicative recurrence rather than in log space.
double series_expectation_oracle(double rate, double t, double s, Count x,
                                 const std::function<double(Count)>& f, std::uint64_t terms);

} // namespace impois::oracle
