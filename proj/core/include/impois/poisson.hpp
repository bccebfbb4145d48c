#pragma once

#include "impois/function_spec.hpp"

#include <cstdint>

namespace impois {

/// Product of a rate and a duration; the parameter of a Poisson law.
class PoissonMean {
public:
    explicit PoissonMean(double mean);

    double value() const noexcept { return mean_; }

private:
    double mean_;
};

/// Poisson probability mass e^{-m} m^k / k!, evaluated in log space.
double pmf(PoissonMean mean, Count k);

/// Probability that a Poisson(mean) variable is at least k.
/// Summed directly from k upward with a geometric bound on what is left, so
/// the result is accurate in the far tail where 1 - cdf would cancel.
double upper_tail(PoissonMean mean, Count k);

/// Chernoff bound on P(Y >= m) for Y ~ Poisson(mean), valid for m > mean.
/// Returns 1 when m <= mean.
double chernoff_tail_bound(PoissonMean mean, Count m);

/// P(X_{t+dt} = y | X_t = x) for a Poisson process with the given rate.
double transition_probability(double rate, double duration, Count x, Count y);

/// E[f(X_s) | X_t = x] for a Poisson process with the given rate.
///
/// The series is truncated a priori so that the neglected tail is at most
/// `tol`. Eventually constant functions are summed exactly over their
/// non-constant part. Bounded functions use the Chernoff tail bound times
/// twice the bound. Functions with a growth envelope use a geometric bound
/// on the envelope-weighted tail.
double poisson_expectation(double rate, double t, double s, Count x,
                           const FunctionSpec& f, double tol);

/// Upper bound on sum_{k >= first} (alpha + beta (x+k)^p) e^{-m} m^k / k!
/// for alpha, beta >= 0, within `slack` of the true sum.
double polynomial_tail_moment(PoissonMean mean, Count x, Count first,
                              double alpha, double beta, unsigned p,
                              double slack);

} // namespace impois
