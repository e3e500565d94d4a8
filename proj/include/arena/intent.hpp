#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "arena/game.hpp"

namespace arena::intent {

/// Parse failure with enough context to point at the offending input.
struct Diagnostic {
    std::size_t offset = 0;          // byte offset into the input
    std::string lexeme;              // the offending text, if any
    std::vector<std::string> expected;
    std::string message;

    std::string render() const;  // "offset 27: expected NUMBER, got '-'"
};

/// A parsed intent. Amounts live as exact scaled integers inside
/// PowerSaving; per-user floors (1-based indices, as written) in bit/s.
/// Materializes into a GoalSpec once the user count is known.
struct IntentSpec {
    std::string raw;
    game::PowerSaving saving;
    std::map<std::size_t, std::int64_t> floors_bps;

    /// Floors default to 0 for users without an override. Throws
    /// std::invalid_argument when an override names a user beyond K.
    game::GoalSpec to_goal_spec(std::size_t user_count, int max_rounds) const;

    bool operator==(const IntentSpec& other) const {
        return saving == other.saving && floors_bps == other.floors_bps;
    }
};

using ParseResult = std::variant<IntentSpec, Diagnostic>;

/// Grammar:
///   intent     := "reduce total power by" AMOUNT ("while" CONSTRAINT ("and" CONSTRAINT)*)?
///   AMOUNT     := NUMBER "%" | NUMBER ("W" | "mW")
///   CONSTRAINT := "rate of user" INDEX ">=" NUMBER ("kbps" | "bps")
/// Keywords are case-insensitive; whitespace is free; numbers are
/// non-negative decimals with a '.' separator. Never throws on bad
/// input; returns a Diagnostic instead.
ParseResult parse_intent(const std::string& text);

/// Canonical one-line rendering; parse_intent(format_intent(s)) == s.
std::string format_intent(const IntentSpec& spec);

}  // namespace arena::intent
