#pragma once

#include "impois/generator.hpp"
#include "impois/semigroup.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace impois::cli {

enum ExitCode : int {
    kSuccess = 0,
    kVerificationFailure = 1,
    kUsageError = 2,
    kToleranceError = 3,
};

using PhiEngine = std::function<WindowFunction(const RateInterval&, const TimeGrid&, const WindowFunction&)>;

/// Test seams. Defaults run the real engine.
struct Hooks {
    /// Engine checked by `oracle-check`.
    PhiEngine engine = phi_apply;
};

/// Runs one invocation. `args` excludes the program name.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err, const Hooks& hooks = {});

/// Grid-step cap, overridable through IMPOIS_MAX_STEPS.
std::uint64_t max_steps_from_env();

/// 12 significant digits, shortest form.
std::string format_value(double v);

/// 12 digits after the decimal point.
std::string format_fixed(double v);

} // namespace impois::cli
