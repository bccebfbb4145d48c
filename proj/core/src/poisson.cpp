#include "impois/poisson.hpp"

#include "impois/error.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace impois {

namespace {

void require_rate(double rate, const char* name) {
    if (!(rate >= 0.0) || !std::isfinite(rate))
        throw Error(ErrorCode::invalid_parameter,
                    std::string(name) + " must be finite and non-negative");
}

double pow_count(Count y, unsigned p) {
    return std::pow(static_cast<double>(y), static_cast<double>(p));
}

// Bound on sum_{j >= k} (alpha + beta (x+j)^p) psi(j), or +inf while the
// term ratio is not yet below one. For x + j >= 1 the ratio of consecutive
// terms is at most m/(j+1) * ((x+j+1)/(x+j))^p and decreases in j.
double geometric_rest(double mean, Count x, Count k, double alpha, double beta, unsigned p) {
    if (x + k == 0) return std::numeric_limits<double>::infinity();
    const double y = static_cast<double>(x + k);
    const double ratio = mean / static_cast<double>(k + 1) * std::pow((y + 1.0) / y, static_cast<double>(p));
    if (!(ratio < 1.0)) return std::numeric_limits<double>::infinity();
    const double term = (alpha + beta * pow_count(x + k, p)) * pmf(PoissonMean(mean), k);
    return term / (1.0 - ratio);
}

} // namespace

PoissonMean::PoissonMean(double mean) : mean_(mean) {
    require_rate(mean, "Poisson mean");
}

double pmf(PoissonMean mean, Count k) {
    const double m = mean.value();
    if (m == 0.0) return k == 0 ? 1.0 : 0.0;
    const double kd = static_cast<double>(k);
    return std::exp(kd * std::log(m) - m - std::lgamma(kd + 1.0));
}

double upper_tail(PoissonMean mean, Count k) {
    const double m = mean.value();
    if (k == 0) return 1.0;
    if (m == 0.0) return 0.0;
    if (static_cast<double>(k) <= m) {
        double below = 0.0;
        for (Count j = 0; j < k; ++j) below += pmf(mean, j);
        return below >= 1.0 ? 0.0 : 1.0 - below;
    }
    double sum = 0.0;
    for (Count j = k;; ++j) {
        const double term = pmf(mean, j);
        sum += term;
        const double ratio = m / static_cast<double>(j + 1);
        const double rest = term * ratio / (1.0 - ratio);
        if (rest <= 1e-17 * sum || term == 0.0) return sum + rest;
    }
}

double chernoff_tail_bound(PoissonMean mean, Count m) {
    const double mu = mean.value();
    const double md = static_cast<double>(m);
    if (md <= mu) return 1.0;
    if (mu == 0.0) return 0.0;
    return std::exp(-mu + md * (1.0 + std::log(mu / md)));
}

double transition_probability(double rate, double duration, Count x, Count y) {
    require_rate(rate, "rate");
    require_rate(duration, "duration");
    if (y < x) return 0.0;
    if (duration == 0.0) return y == x ? 1.0 : 0.0;
    return pmf(PoissonMean(rate * duration), y - x);
}

double polynomial_tail_moment(PoissonMean mean, Count x, Count first,
                              double alpha, double beta, unsigned p, double slack) {
    if (alpha < 0.0 || beta < 0.0)
        throw Error(ErrorCode::invalid_parameter, "tail moment coefficients must be non-negative");
    const double m = mean.value();
    if (m == 0.0) return first == 0 ? alpha + beta * pow_count(x, p) : 0.0;
    double sum = 0.0;
    for (Count k = first;; ++k) {
        const double rest = geometric_rest(m, x, k, alpha, beta, p);
        if (rest <= slack) return sum + rest;
        sum += (alpha + beta * pow_count(x + k, p)) * pmf(mean, k);
    }
}

double poisson_expectation(double rate, double t, double s, Count x,
                           const FunctionSpec& f, double tol) {
    require_rate(rate, "rate");
    if (!(t <= s) || !std::isfinite(t) || !std::isfinite(s))
        throw Error(ErrorCode::invalid_parameter, "expected finite t <= s");
    if (!(tol > 0.0)) throw Error(ErrorCode::invalid_parameter, "tolerance must be positive");
    if (!f.evaluate) throw Error(ErrorCode::invalid_parameter, "function has no evaluator");

    const PoissonMean mean(rate * (s - t));
    if (mean.value() == 0.0) return f(x);

    if (f.eventual_constant_at) {
        const Count top = *f.eventual_constant_at;
        if (x >= top) return f(x);
        const double c = f(top);
        double sum = 0.0;
        for (Count k = 0; x + k < top; ++k) sum += (f(x + k) - c) * pmf(mean, k);
        return c + sum;
    }

    if (f.bound) {
        const double b = *f.bound;
        Count m = static_cast<Count>(std::floor(mean.value())) + 1;
        // remainder |sum_{k>=m} f(x+k) psi(k)| <= B * P(Y >= m)
        while (b * chernoff_tail_bound(mean, m) > tol) ++m;
        double sum = 0.0;
        for (Count k = 0; k < m; ++k) sum += f(x + k) * pmf(mean, k);
        return sum;
    }

    if (f.envelope) {
        const auto lo = f.infimum();
        if (!lo) throw Error(ErrorCode::unsupported_function, "growth-enveloped function needs a lower bound");
        // |f(y)| <= |inf f| + |a| + |b| y^p
        const double alpha = std::abs(*lo) + std::abs(f.envelope->a);
        const double beta = std::abs(f.envelope->b);
        const unsigned p = f.envelope->p;
        double sum = 0.0;
        for (Count k = 0;; ++k) {
            if (geometric_rest(mean.value(), x, k, alpha, beta, p) <= tol) return sum;
            sum += f(x + k) * pmf(mean, k);
        }
    }

    throw Error(ErrorCode::unsupported_function,
                "function needs an eventual-constant index, a bound, or a growth envelope");
}

} // namespace impois
