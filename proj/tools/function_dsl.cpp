#include "function_dsl.hpp"

#include "impois/error.hpp"

#include <charconv>
#include <fstream>
#include <string>
#include <vector>

namespace impois::cli {

namespace {

[[noreturn]] void bad(std::string_view text, const std::string& why) {
    throw Error(ErrorCode::invalid_parameter, "bad function '" + std::string(text) + "': " + why);
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

Count parse_count(std::string_view whole, std::string_view s) {
    s = trim(s);
    Count value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) bad(whole, "expected a count, got '" + std::string(s) + "'");
    return value;
}

double parse_real(std::string_view whole, std::string_view s) {
    const std::string text(trim(s));
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        bad(whole, "expected a number, got '" + text + "'");
    }
    if (used != text.size()) bad(whole, "expected a number, got '" + text + "'");
    return value;
}

FunctionSpec parse_file(std::string_view whole, const std::string& path) {
    std::ifstream in(path);
    if (!in) bad(whole, "cannot open '" + path + "'");
    std::vector<double> values;
    std::string line;
    bool have_tail = false;
    double tail = 0.0;
    while (std::getline(in, line)) {
        const std::string_view v = trim(line);
        if (v.empty() || v.front() == '#') continue;
        if (have_tail) bad(whole, "values after the tail line");
        if (v.starts_with("tail=")) {
            tail = parse_real(whole, v.substr(5));
            have_tail = true;
        } else {
            values.push_back(parse_real(whole, v));
        }
    }
    if (!have_tail) bad(whole, "missing tail=<v> line");
    return functions::tabulated(std::move(values), tail);
}

} // namespace

FunctionSpec parse_function(std::string_view text) {
    const std::string_view s = trim(text);
    if (s == "id") return functions::identity();

    const auto colon = s.find(':');
    if (colon == std::string_view::npos) bad(text, "unknown form");
    const std::string_view kind = s.substr(0, colon);
    const std::string_view arg = s.substr(colon + 1);

    if (kind == "ind") return functions::indicator(parse_count(text, arg));
    if (kind == "indge") return functions::indicator_at_least(parse_count(text, arg));
    if (kind == "indle") return functions::indicator_at_most(parse_count(text, arg));
    if (kind == "file") {
        if (arg.empty()) bad(text, "missing path");
        return parse_file(text, std::string(arg));
    }
    if (kind == "poly") {
        const auto c1 = arg.find(',');
        const auto c2 = c1 == std::string_view::npos ? c1 : arg.find(',', c1 + 1);
        if (c2 == std::string_view::npos || arg.find(',', c2 + 1) != std::string_view::npos)
            bad(text, "expected poly:a,b,p");
        const double a = parse_real(text, arg.substr(0, c1));
        const double b = parse_real(text, arg.substr(c1 + 1, c2 - c1 - 1));
        const Count p = parse_count(text, arg.substr(c2 + 1));
        if (p > 16) bad(text, "exponent above 16");
        return functions::polynomial(a, b, static_cast<unsigned>(p));
    }
    bad(text, "unknown form '" + std::string(kind) + "'");
}

} // namespace impois::cli
