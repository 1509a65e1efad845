#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "collatz_mersenne/natural.hpp"

namespace cm {

enum class ExpressionKind { Decimal, PowerOfTwo, MersenneByExponent, MersenneByRank };

/// A user-facing name for a starting value, e.g. "M9689" or "Mp47".
///
/// `parameter` is the literal for Decimal, the exponent for PowerOfTwo and
/// MersenneByExponent, and the catalog rank for MersenneByRank. Equality
/// ignores `source_text`, so "2^5-1" and "M5" compare equal.
struct NumberExpression {
    std::string source_text;
    ExpressionKind kind = ExpressionKind::Decimal;
    Natural parameter;

    friend bool operator==(const NumberExpression& a, const NumberExpression& b) {
        return a.kind == b.kind && a.parameter == b.parameter;
    }
};

/// expr := DEC | "2^" DEC | "2^" DEC "-1" | "M" DEC | "Mp" DEC
/// DEC  := digit ( digit | "_" digit )*
/// Throws ParseError carrying the byte offset of the first bad character.
NumberExpression parse_expression(std::string_view text);

/// Canonical text; parse_expression(render(e)) == e.
std::string render(const NumberExpression& expr);

/// Exponent n for 2^n, 2^n-1, Mn and Mp(k); nullopt for decimal literals.
std::optional<std::uint64_t> expression_exponent(const NumberExpression& expr);

/// Materializes the value. Throws DomainError for M0, RangeError for a bad rank.
Natural evaluate(const NumberExpression& expr);

}  // namespace cm
