#pragma once

// Batch front-end. Every subcommand builds an Envelope of rows that is
// written as JSON or CSV; run() is what the vbl executable calls.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace vbl::cli {

std::string tool_version();

/// Parses "1.5", "0:5:0.25", "0.1:10:log" (10 points per decade),
/// "0.1:10:log25" (25 points), or a comma-separated list of these.
/// Throws std::invalid_argument on malformed input.
std::vector<double> parse_range(const std::string& text);

using Cell = std::variant<std::monostate, bool, long, double, std::string>;

struct Envelope {
    std::string command;
    nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::optional<std::uint64_t> rng_seed;

    nlohmann::ordered_json to_json() const;
    /// Header line plus one line per row; doubles with 6 significant digits.
    std::string to_csv() const;
};

enum ExitCode : int { kOk = 0, kUsage = 2, kNumeric = 3 };

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vbl::cli
