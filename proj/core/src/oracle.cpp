#include "impois/oracle.hpp"

#include "impois/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace impois::oracle {

WindowFunction brute_force_phi(const RateInterval& interval, const TimeGrid& grid, const WindowFunction& g,
                               const OracleBudget& budget) {
    const auto window = static_cast<int>(g.size());
    const auto steps = grid.steps();
    if (window > budget.max_window || steps > static_cast<std::uint64_t>(budget.max_steps) ||
        budget.max_window > 5 || budget.max_steps > 4)
        throw Error(ErrorCode::oracle_budget, "instance with window " + std::to_string(window) + " and " +
                                                  std::to_string(steps) + " steps exceeds the oracle budget");
    const auto free_rates = static_cast<std::uint64_t>(window - 1) * steps;
    if (free_rates > 16) throw Error(ErrorCode::oracle_budget, "more than 2^16 rate assignments");

    const double dt = grid.granularity();
    if (dt * operator_norm(interval) > 2.0) throw Error(ErrorCode::step_too_large, "grid violates step validity");

    const auto per_step = static_cast<std::size_t>(window - 1);
    const std::uint64_t assignments = std::uint64_t{1} << free_rates;
    std::vector<double> best(g.values().begin(), g.values().end());
    bool first = true;
    std::vector<double> h;
    RateSelection sel;
    sel.rates.resize(per_step);
    for (std::uint64_t code = 0; code < assignments; ++code) {
        h.assign(g.values().begin(), g.values().end());
        for (std::uint64_t step = 0; step < steps; ++step) {
            for (std::size_t i = 0; i < per_step; ++i) {
                const bool high = (code >> (step * per_step + i)) & 1u;
                sel.rates[i] = high ? interval.upper() : interval.lower();
            }
            const WindowFunction current(g.base(), h, g.tail());
            const WindowFunction q = apply_selected_generator(sel, current);
            for (std::size_t i = 0; i < h.size(); ++i) h[i] = h[i] + dt * q[i];
        }
        for (std::size_t i = 0; i < h.size(); ++i) best[i] = first ? h[i] : std::min(best[i], h[i]);
        first = false;
    }
    return WindowFunction(g.base(), std::move(best), g.tail());
}

double series_expectation_oracle(double rate, double t, double s, Count x, const std::function<double(Count)>& f,
                                 std::uint64_t terms) {
    if (terms < 1) throw Error(ErrorCode::invalid_parameter, "need at least one term");
    const double mean = rate * (s - t);
    double weight = std::exp(-mean);
    // Neumaier summation
    double sum = 0.0;
    double carry = 0.0;
    for (std::uint64_t k = 0; k < terms; ++k) {
        const double term = f(x + k) * weight;
        const double next = sum + term;
        if (std::abs(sum) >= std::abs(term)) carry += (sum - next) + term;
        else carry += (term - next) + sum;
        sum = next;
        weight *= mean / static_cast<double>(k + 1);
    }
    return sum + carry;
}

} // namespace impois::oracle
