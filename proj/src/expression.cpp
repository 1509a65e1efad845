#include "collatz_mersenne/expression.hpp"

#include "collatz_mersenne/catalog.hpp"
#include "collatz_mersenne/errors.hpp"

namespace cm {

namespace {

class Cursor {
public:
    explicit Cursor(std::string_view text) : text_(text) {}

    bool at_end() const { return pos_ == text_.size(); }
    std::size_t offset() const { return pos_; }

    bool consume(std::string_view token) {
        if (text_.substr(pos_, token.size()) != token) return false;
        pos_ += token.size();
        return true;
    }

    // Returns the digits with separators removed.
    std::string decimal() {
        auto is_digit = [&](std::size_t i) { return i < text_.size() && text_[i] >= '0' && text_[i] <= '9'; };
        if (!is_digit(pos_)) throw ParseError(pos_, "decimal digit");
        std::string digits;
        while (true) {
            if (is_digit(pos_)) {
                digits.push_back(text_[pos_++]);
            } else if (pos_ < text_.size() && text_[pos_] == '_') {
                if (!is_digit(pos_ + 1)) throw ParseError(pos_ + 1, "decimal digit after '_'");
                ++pos_;
            } else {
                return digits;
            }
        }
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

Natural small_parameter(const std::string& digits, std::size_t offset) {
    Natural value = Natural::from_decimal(digits);
    if (!value.to_u64()) throw ParseError(offset, "value below 2^64");
    return value;
}

}  // namespace

NumberExpression parse_expression(std::string_view text) {
    Cursor cur(text);
    NumberExpression expr;
    expr.source_text = std::string(text);

    if (cur.consume("Mp")) {
        std::size_t at = cur.offset();
        expr.kind = ExpressionKind::MersenneByRank;
        expr.parameter = small_parameter(cur.decimal(), at);
    } else if (cur.consume("M")) {
        std::size_t at = cur.offset();
        expr.kind = ExpressionKind::MersenneByExponent;
        expr.parameter = small_parameter(cur.decimal(), at);
    } else if (cur.consume("2^")) {
        std::size_t at = cur.offset();
        expr.parameter = small_parameter(cur.decimal(), at);
        if (cur.consume("-1")) {
            expr.kind = ExpressionKind::MersenneByExponent;
        } else {
            expr.kind = ExpressionKind::PowerOfTwo;
        }
    } else {
        expr.kind = ExpressionKind::Decimal;
        expr.parameter = Natural::from_decimal(cur.decimal());
    }

    if (!cur.at_end()) throw ParseError(cur.offset(), "end of expression");
    return expr;
}

std::string render(const NumberExpression& expr) {
    switch (expr.kind) {
        case ExpressionKind::Decimal: return expr.parameter.to_decimal();
        case ExpressionKind::PowerOfTwo: return "2^" + expr.parameter.to_decimal();
        case ExpressionKind::MersenneByExponent: return "M" + expr.parameter.to_decimal();
        case ExpressionKind::MersenneByRank: return "Mp" + expr.parameter.to_decimal();
    }
    return {};
}

std::optional<std::uint64_t> expression_exponent(const NumberExpression& expr) {
    switch (expr.kind) {
        case ExpressionKind::Decimal: return std::nullopt;
        case ExpressionKind::PowerOfTwo:
        case ExpressionKind::MersenneByExponent: return expr.parameter.to_u64();
        case ExpressionKind::MersenneByRank: {
            auto rank = expr.parameter.to_u64().value_or(0);
            if (rank < 1 || rank > kCatalogSize) throw RangeError("catalog rank out of range: " + render(expr));
            return catalog_entry(static_cast<int>(rank)).exponent;
        }
    }
    return std::nullopt;
}

Natural evaluate(const NumberExpression& expr) {
    switch (expr.kind) {
        case ExpressionKind::Decimal: return expr.parameter;
        case ExpressionKind::PowerOfTwo: return Natural::pow2(*expr.parameter.to_u64());
        case ExpressionKind::MersenneByExponent:
        case ExpressionKind::MersenneByRank: return mersenne_number(*expression_exponent(expr));
    }
    return {};
}

}  // namespace cm
