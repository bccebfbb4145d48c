#pragma once

#include "impois/function_spec.hpp"

#include <string_view>

namespace impois::cli {

/// Parses a textual function descriptor:
///
///   ind:k        indicator of {k}
///   indge:k      indicator of {y >= k}
///   indle:k      indicator of {y <= k}
///   id           identity
///   poly:a,b,p   a + b * y^p
///   file:PATH    one value per line for y = 0, 1, ... then a `tail=<v>` line;
///                blank lines and lines starting with # are skipped
///
/// Throws impois::Error(invalid_parameter) on malformed input.
FunctionSpec parse_function(std::string_view text);

} // namespace impois::cli
