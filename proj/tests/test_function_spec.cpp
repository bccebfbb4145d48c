#include "impois/error.hpp"
#include "impois/function_spec.hpp"
#include "impois/generator.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace impois {
namespace {

ErrorCode validate_code(const FunctionSpec& f) {
    try {
        validate(f);
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "validate accepted the function";
    return ErrorCode::oracle_budget;
}

TEST(Validate, AcceptsFactories) {
    EXPECT_NO_THROW(validate(functions::constant(1.5)));
    EXPECT_NO_THROW(validate(functions::indicator(0)));
    EXPECT_NO_THROW(validate(functions::indicator(4)));
    EXPECT_NO_THROW(validate(functions::indicator_at_least(2)));
    EXPECT_NO_THROW(validate(functions::indicator_at_most(2)));
    EXPECT_NO_THROW(validate(functions::identity()));
    EXPECT_NO_THROW(validate(functions::polynomial(1.0, 2.0, 3)));
    EXPECT_NO_THROW(validate(functions::polynomial(1.0, -2.0, 2)));
    EXPECT_NO_THROW(validate(functions::tabulated({0.5, -1.0, 3.0}, 2.0)));
}

TEST(Validate, MissingEvaluator) {
    EXPECT_THROW(validate(FunctionSpec{}), Error);
}

TEST(Validate, BoundViolation) {
    FunctionSpec f = functions::indicator(3);
    f.bound = 0.5;
    EXPECT_EQ(validate_code(f), ErrorCode::contract_violation);
}

TEST(Validate, MonotonicityViolation) {
    FunctionSpec f = functions::indicator(3);
    f.monotonicity = Monotonicity::non_decreasing;
    EXPECT_EQ(validate_code(f), ErrorCode::contract_violation);
}

TEST(Validate, EventualConstancyViolation) {
    FunctionSpec f = functions::indicator(60);
    f.eventual_constant_at = 5;
    EXPECT_EQ(validate_code(f), ErrorCode::contract_violation);
}

TEST(Validate, EnvelopeViolation) {
    FunctionSpec f = functions::polynomial(0.0, 1.0, 2);
    f.envelope = GrowthEnvelope{0.0, 1.0, 1};
    EXPECT_EQ(validate_code(f), ErrorCode::contract_violation);
}

TEST(Validate, NonFiniteValue) {
    FunctionSpec f;
    f.evaluate = [](Count y) { return y == 1000 ? INFINITY : 0.0; };
    EXPECT_EQ(validate_code(f), ErrorCode::contract_violation);
}

TEST(Validate, NegativeBoundCertificate) {
    FunctionSpec f = functions::constant(0.0);
    f.bound = -1.0;
    EXPECT_EQ(validate_code(f), ErrorCode::invalid_parameter);
}

TEST(Negated, FlipsValuesAndMonotonicity) {
    const FunctionSpec f = negated(functions::indicator_at_least(2));
    EXPECT_EQ(f(0), -0.0);
    EXPECT_EQ(f(5), -1.0);
    EXPECT_EQ(f.monotonicity, Monotonicity::non_increasing);
    EXPECT_EQ(f.eventual_constant_at, Count{2});
    EXPECT_EQ(f.bound, 1.0);
    EXPECT_NO_THROW(validate(f));
}

TEST(Negated, IdentityBecomesEnvelopedAboveOnly) {
    const FunctionSpec f = negated(functions::identity());
    EXPECT_FALSE(f.is_bounded());
    ASSERT_TRUE(f.envelope.has_value());
    EXPECT_EQ((*f.envelope)(1000), 0.0);
    EXPECT_FALSE(f.infimum().has_value());
    EXPECT_NO_THROW(validate(f));
}

TEST(Shifted, MovesEventualIndexAndKeepsEnvelopeValid) {
    const FunctionSpec f = shifted(functions::indicator(4), 3);
    EXPECT_EQ(f(1), 1.0);
    EXPECT_EQ(f(0), 0.0);
    EXPECT_EQ(f.eventual_constant_at, Count{2});
    EXPECT_NO_THROW(validate(f));

    const FunctionSpec g = shifted(functions::polynomial(1.0, 0.5, 3), 7);
    EXPECT_EQ(g(2), 1.0 + 0.5 * 729.0);
    EXPECT_NO_THROW(validate(g));
}

TEST(Shifted, PastTheEventualIndexIsConstant) {
    const FunctionSpec f = shifted(functions::indicator_at_least(2), 10);
    EXPECT_EQ(f.eventual_constant_at, Count{0});
    EXPECT_EQ(f(0), 1.0);
}

TEST(Tabulated, TrimsTrailingTailValues) {
    const FunctionSpec f = functions::tabulated({0.0, 1.0, 2.0, 2.0}, 2.0);
    EXPECT_EQ(f.eventual_constant_at, Count{2});
    EXPECT_EQ(f(10), 2.0);
    EXPECT_EQ(f(1), 1.0);
    EXPECT_EQ(f.monotonicity, Monotonicity::non_decreasing);
}

TEST(Tabulated, DerivesBoundsAndMonotonicity) {
    const FunctionSpec f = functions::tabulated({3.0, -4.0, 1.0}, 0.5);
    EXPECT_EQ(f.bound, 4.0);
    EXPECT_EQ(f.lower_bound, -4.0);
    EXPECT_EQ(f.monotonicity, Monotonicity::none);
    EXPECT_EQ(functions::tabulated({3.0, 2.0}, 2.0).monotonicity, Monotonicity::non_increasing);
}

TEST(Tabulated, RejectsNonFinite) {
    EXPECT_THROW(functions::tabulated({NAN}, 0.0), Error);
    EXPECT_THROW(functions::tabulated({}, INFINITY), Error);
}

TEST(Tabulated, EmptyTableIsConstant) {
    const FunctionSpec f = functions::tabulated({}, -2.0);
    EXPECT_EQ(f.eventual_constant_at, Count{0});
    EXPECT_EQ(f(0), -2.0);
}

TEST(Polynomial, Degenerate) {
    const FunctionSpec f = functions::polynomial(2.0, 3.0, 0);
    EXPECT_EQ(f(9), 5.0);
    EXPECT_EQ(f.eventual_constant_at, Count{0});
}

TEST(Infimum, FromEventualConstancy) {
    FunctionSpec f = functions::tabulated({1.0, -3.0, 2.0}, 0.0);
    f.bound.reset();
    f.lower_bound.reset();
    EXPECT_EQ(f.infimum(), -3.0);
}

TEST(RestrictWindow, ReadsTheFunction) {
    const WindowFunction w = WindowFunction::restrict(functions::identity(), 3, 6);
    EXPECT_EQ(w.base(), 3u);
    EXPECT_EQ(w.top(), 6u);
    EXPECT_EQ(w[0], 3.0);
    EXPECT_EQ(w.tail(), 6.0);
}

} // namespace
} // namespace impois
