#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cm {

/// Arbitrary-precision non-negative integer.
///
/// Little-endian 64-bit limbs, always normalized: no high zero limbs, and
/// zero is the empty limb vector. Besides the usual arithmetic it carries the
/// two in-place primitives the Collatz engine spends nearly all of its time
/// in (`odd_step` and `strip_trailing_zeros`), both of which rewrite the
/// existing buffer rather than allocating.
class Natural {
public:
    using Limb = std::uint64_t;
    static constexpr unsigned kLimbBits = 64;

    Natural() = default;
    Natural(std::uint64_t value);  // NOLINT(google-explicit-constructor)

    static Natural pow2(std::uint64_t exponent);
    static Natural pow(std::uint64_t base, std::uint64_t exponent);

    /// Throws DomainError on empty input or any non-digit character.
    static Natural from_decimal(std::string_view digits);
    /// Accepts upper or lower case; no prefix. Throws DomainError otherwise.
    static Natural from_hex(std::string_view digits);

    std::string to_decimal() const;
    /// Lowercase, no leading zeros, "0" for zero.
    std::string to_hex() const;

    bool is_zero() const noexcept { return limbs_.empty(); }
    bool is_one() const noexcept { return limbs_.size() == 1 && limbs_[0] == 1; }
    bool is_odd() const noexcept { return !limbs_.empty() && (limbs_[0] & 1U); }
    bool is_even() const noexcept { return !is_odd(); }
    bool is_power_of_two() const noexcept;

    /// 0 for zero, floor(log2 x) + 1 otherwise.
    std::uint64_t bit_length() const noexcept;
    /// 2-adic valuation; 0 for zero.
    std::uint64_t trailing_zeros() const noexcept;
    bool bit(std::uint64_t index) const noexcept;

    std::optional<std::uint64_t> to_u64() const noexcept;
    std::span<const Limb> limbs() const noexcept { return limbs_; }
    std::size_t limb_count() const noexcept { return limbs_.size(); }

    void reserve_bits(std::uint64_t bits);

    /// The value modulo 2^bits.
    Natural low_bits(std::uint64_t bits) const;

    Natural& operator+=(const Natural& rhs);
    /// Throws DomainError if rhs > *this.
    Natural& operator-=(const Natural& rhs);
    Natural& operator*=(const Natural& rhs);
    Natural& operator<<=(std::uint64_t shift);
    Natural& operator>>=(std::uint64_t shift);

    Natural& mul_small(std::uint64_t factor);
    Natural& add_small(std::uint64_t addend);
    /// Divides in place and returns the remainder. Throws DomainError on 0.
    std::uint64_t div_small(std::uint64_t divisor);

    friend Natural operator+(Natural lhs, const Natural& rhs) { return lhs += rhs; }
    friend Natural operator-(Natural lhs, const Natural& rhs) { return lhs -= rhs; }
    friend Natural operator*(const Natural& lhs, const Natural& rhs);
    friend Natural operator<<(Natural lhs, std::uint64_t shift) { return lhs <<= shift; }
    friend Natural operator>>(Natural lhs, std::uint64_t shift) { return lhs >>= shift; }

    friend bool operator==(const Natural&, const Natural&) = default;
    friend std::strong_ordering operator<=>(const Natural& lhs, const Natural& rhs) noexcept;

    struct OddStep {
        std::uint64_t valuation;     // trailing zeros of 3x+1
        std::uint64_t halvings;      // how many of them were applied
        std::uint64_t peak_bits;     // bit length of 3x+1
    };

    /// Replaces odd x by (3x+1) / 2^h with h = min(v2(3x+1), max_halvings).
    /// Precondition: *this is odd (unchecked; the engine guarantees it).
    OddStep odd_step(std::uint64_t max_halvings);

    /// Divides out min(v2(x), max_shift) factors of two; returns that count.
    std::uint64_t strip_trailing_zeros(std::uint64_t max_shift);

private:
    void trim() noexcept;

    std::vector<Limb> limbs_;
};

std::string to_string(const Natural& value);

}  // namespace cm
