#include "collatz_mersenne/natural.hpp"

#include <algorithm>
#include <bit>

#include "collatz_mersenne/errors.hpp"

namespace cm {

namespace {

__extension__ using u128 = unsigned __int128;
constexpr std::uint64_t kDecimalChunk = 10'000'000'000'000'000'000ULL;  // 10^19
constexpr int kDecimalChunkDigits = 19;

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

Natural::Natural(std::uint64_t value) {
    if (value != 0) limbs_.push_back(value);
}

Natural Natural::pow2(std::uint64_t exponent) {
    Natural r;
    r.limbs_.assign(exponent / kLimbBits + 1, 0);
    r.limbs_.back() = Limb{1} << (exponent % kLimbBits);
    return r;
}

Natural Natural::pow(std::uint64_t base, std::uint64_t exponent) {
    Natural result{1};
    if (base == 0) return exponent == 0 ? result : Natural{};
    // Repeated small multiplication: fine for the base-3 use and keeps the
    // routine independent of the general multiplier.
    std::uint64_t chunk = 1;
    std::uint64_t chunk_len = 0;
    for (std::uint64_t i = 0; i < exponent; ++i) {
        if (chunk > UINT64_MAX / base) {
            result.mul_small(chunk);
            chunk = 1;
            chunk_len = 0;
        }
        chunk *= base;
        ++chunk_len;
    }
    if (chunk_len != 0) result.mul_small(chunk);
    return result;
}

Natural Natural::from_decimal(std::string_view digits) {
    if (digits.empty()) throw DomainError("empty decimal literal");
    Natural r;
    std::uint64_t chunk = 0;
    std::uint64_t scale = 1;
    for (char c : digits) {
        if (c < '0' || c > '9') throw DomainError(std::string("invalid decimal digit '") + c + "'");
        chunk = chunk * 10 + static_cast<std::uint64_t>(c - '0');
        scale *= 10;
        if (scale == kDecimalChunk) {
            r.mul_small(scale).add_small(chunk);
            chunk = 0;
            scale = 1;
        }
    }
    if (scale != 1) r.mul_small(scale).add_small(chunk);
    return r;
}

Natural Natural::from_hex(std::string_view digits) {
    if (digits.empty()) throw DomainError("empty hexadecimal literal");
    Natural r;
    r.limbs_.assign((digits.size() + 15) / 16, 0);
    std::uint64_t pos = 0;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it, pos += 4) {
        int v = hex_value(*it);
        if (v < 0) throw DomainError(std::string("invalid hexadecimal digit '") + *it + "'");
        r.limbs_[pos / kLimbBits] |= static_cast<Limb>(v) << (pos % kLimbBits);
    }
    r.trim();
    return r;
}

std::string Natural::to_decimal() const {
    if (is_zero()) return "0";
    Natural work = *this;
    std::vector<std::uint64_t> chunks;
    while (!work.is_zero()) chunks.push_back(work.div_small(kDecimalChunk));
    std::string out = std::to_string(chunks.back());
    for (auto it = chunks.rbegin() + 1; it != chunks.rend(); ++it) {
        std::string part = std::to_string(*it);
        out.append(kDecimalChunkDigits - part.size(), '0');
        out += part;
    }
    return out;
}

std::string Natural::to_hex() const {
    if (is_zero()) return "0";
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    out.reserve(limbs_.size() * 16);
    for (auto it = limbs_.rbegin(); it != limbs_.rend(); ++it) {
        for (int shift = 60; shift >= 0; shift -= 4) out.push_back(kDigits[(*it >> shift) & 0xF]);
    }
    out.erase(0, out.find_first_not_of('0'));
    return out;
}

bool Natural::is_power_of_two() const noexcept {
    if (is_zero()) return false;
    for (std::size_t i = 0; i + 1 < limbs_.size(); ++i) {
        if (limbs_[i] != 0) return false;
    }
    return std::has_single_bit(limbs_.back());
}

std::uint64_t Natural::bit_length() const noexcept {
    if (is_zero()) return 0;
    return (limbs_.size() - 1) * kLimbBits + static_cast<std::uint64_t>(std::bit_width(limbs_.back()));
}

std::uint64_t Natural::trailing_zeros() const noexcept {
    std::uint64_t count = 0;
    for (Limb l : limbs_) {
        if (l != 0) return count + static_cast<std::uint64_t>(std::countr_zero(l));
        count += kLimbBits;
    }
    return 0;
}

bool Natural::bit(std::uint64_t index) const noexcept {
    std::uint64_t limb = index / kLimbBits;
    return limb < limbs_.size() && ((limbs_[limb] >> (index % kLimbBits)) & 1U);
}

std::optional<std::uint64_t> Natural::to_u64() const noexcept {
    if (limbs_.size() > 1) return std::nullopt;
    return limbs_.empty() ? 0 : limbs_[0];
}

void Natural::reserve_bits(std::uint64_t bits) {
    limbs_.reserve(bits / kLimbBits + 2);
}

Natural Natural::low_bits(std::uint64_t bits) const {
    Natural r;
    std::uint64_t full = bits / kLimbBits;
    if (full >= limbs_.size()) return *this;
    r.limbs_.assign(limbs_.begin(), limbs_.begin() + static_cast<std::ptrdiff_t>(full));
    if (unsigned rem = bits % kLimbBits; rem != 0) r.limbs_.push_back(limbs_[full] & ((Limb{1} << rem) - 1));
    r.trim();
    return r;
}

Natural& Natural::operator+=(const Natural& rhs) {
    if (limbs_.size() < rhs.limbs_.size()) limbs_.resize(rhs.limbs_.size(), 0);
    Limb carry = 0;
    std::size_t i = 0;
    for (; i < rhs.limbs_.size(); ++i) {
        u128 s = static_cast<u128>(limbs_[i]) + rhs.limbs_[i] + carry;
        limbs_[i] = static_cast<Limb>(s);
        carry = static_cast<Limb>(s >> 64);
    }
    for (; carry != 0 && i < limbs_.size(); ++i) {
        limbs_[i] += 1;
        carry = limbs_[i] == 0 ? 1 : 0;
    }
    if (carry != 0) limbs_.push_back(carry);
    return *this;
}

Natural& Natural::operator-=(const Natural& rhs) {
    if (*this < rhs) throw DomainError("natural subtraction would go negative");
    Limb borrow = 0;
    std::size_t i = 0;
    for (; i < rhs.limbs_.size(); ++i) {
        Limb a = limbs_[i];
        Limb d = a - rhs.limbs_[i] - borrow;
        borrow = (a < rhs.limbs_[i] || (a == rhs.limbs_[i] && borrow != 0)) ? 1 : 0;
        limbs_[i] = d;
    }
    for (; borrow != 0 && i < limbs_.size(); ++i) {
        borrow = limbs_[i] == 0 ? 1 : 0;
        limbs_[i] -= 1;
    }
    trim();
    return *this;
}

Natural operator*(const Natural& lhs, const Natural& rhs) {
    Natural r;
    if (lhs.is_zero() || rhs.is_zero()) return r;
    const auto& a = lhs.limbs_;
    const auto& b = rhs.limbs_;
    r.limbs_.assign(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        Natural::Limb carry = 0;
        for (std::size_t j = 0; j < b.size(); ++j) {
            u128 t = static_cast<u128>(a[i]) * b[j] + r.limbs_[i + j] + carry;
            r.limbs_[i + j] = static_cast<Natural::Limb>(t);
            carry = static_cast<Natural::Limb>(t >> 64);
        }
        r.limbs_[i + b.size()] = carry;
    }
    r.trim();
    return r;
}

Natural& Natural::operator*=(const Natural& rhs) {
    *this = *this * rhs;
    return *this;
}

Natural& Natural::operator<<=(std::uint64_t shift) {
    if (is_zero() || shift == 0) return *this;
    std::uint64_t whole = shift / kLimbBits;
    unsigned part = shift % kLimbBits;
    if (part != 0) {
        Limb carry = 0;
        for (Limb& l : limbs_) {
            Limb next = l >> (kLimbBits - part);
            l = (l << part) | carry;
            carry = next;
        }
        if (carry != 0) limbs_.push_back(carry);
    }
    limbs_.insert(limbs_.begin(), whole, 0);
    return *this;
}

Natural& Natural::operator>>=(std::uint64_t shift) {
    std::uint64_t whole = shift / kLimbBits;
    if (whole >= limbs_.size()) {
        limbs_.clear();
        return *this;
    }
    limbs_.erase(limbs_.begin(), limbs_.begin() + static_cast<std::ptrdiff_t>(whole));
    unsigned part = shift % kLimbBits;
    if (part != 0) {
        const std::size_t n = limbs_.size();
        for (std::size_t i = 0; i + 1 < n; ++i) {
            limbs_[i] = (limbs_[i] >> part) | (limbs_[i + 1] << (kLimbBits - part));
        }
        limbs_[n - 1] >>= part;
    }
    trim();
    return *this;
}

Natural& Natural::mul_small(std::uint64_t factor) {
    if (factor == 0) {
        limbs_.clear();
        return *this;
    }
    Limb carry = 0;
    for (Limb& l : limbs_) {
        u128 t = static_cast<u128>(l) * factor + carry;
        l = static_cast<Limb>(t);
        carry = static_cast<Limb>(t >> 64);
    }
    if (carry != 0) limbs_.push_back(carry);
    return *this;
}

Natural& Natural::add_small(std::uint64_t addend) {
    return *this += Natural{addend};
}

std::uint64_t Natural::div_small(std::uint64_t divisor) {
    if (divisor == 0) throw DomainError("division by zero");
    u128 rem = 0;
    for (auto it = limbs_.rbegin(); it != limbs_.rend(); ++it) {
        u128 cur = (rem << 64) | *it;
        *it = static_cast<Limb>(cur / divisor);
        rem = cur % divisor;
    }
    trim();
    return static_cast<std::uint64_t>(rem);
}

std::strong_ordering operator<=>(const Natural& lhs, const Natural& rhs) noexcept {
    if (lhs.limbs_.size() != rhs.limbs_.size()) return lhs.limbs_.size() <=> rhs.limbs_.size();
    for (std::size_t i = lhs.limbs_.size(); i-- > 0;) {
        if (lhs.limbs_[i] != rhs.limbs_[i]) return lhs.limbs_[i] <=> rhs.limbs_[i];
    }
    return std::strong_ordering::equal;
}

Natural::OddStep Natural::odd_step(std::uint64_t max_halvings) {
    const std::size_t n = limbs_.size();
    Limb* a = limbs_.data();

    u128 v = static_cast<u128>(a[0]) * 3 + 1;
    Limb prev = static_cast<Limb>(v);
    Limb carry = static_cast<Limb>(v >> 64);

    if (prev == 0 || max_halvings == 0) {
        // 3x+1 has a whole zero low limb (or no halving is wanted): do it in
        // two passes.
        mul_small(3);
        add_small(1);
        OddStep out{trailing_zeros(), 0, bit_length()};
        out.halvings = std::min(out.valuation, max_halvings);
        *this >>= out.halvings;
        return out;
    }

    const auto valuation = static_cast<unsigned>(std::countr_zero(prev));
    const auto s = static_cast<unsigned>(std::min<std::uint64_t>(valuation, max_halvings));
    const unsigned back = kLimbBits - s;  // s >= 1 here

    // Fused pass: limb i of 3x+1 is produced, then limb i-1 of the shifted
    // result is written over the already-consumed input limb.
    for (std::size_t i = 1; i < n; ++i) {
        v = static_cast<u128>(a[i]) * 3 + carry;
        Limb y = static_cast<Limb>(v);
        carry = static_cast<Limb>(v >> 64);
        a[i - 1] = (prev >> s) | (y << back);
        prev = y;
    }

    std::uint64_t peak_bits;
    if (carry != 0) {
        peak_bits = n * kLimbBits + static_cast<std::uint64_t>(std::bit_width(carry));
        a[n - 1] = (prev >> s) | (carry << back);
        if (Limb top = carry >> s; top != 0) limbs_.push_back(top);
    } else {
        peak_bits = (n - 1) * kLimbBits + static_cast<std::uint64_t>(std::bit_width(prev));
        a[n - 1] = prev >> s;
        if (a[n - 1] == 0) limbs_.pop_back();
    }
    return {valuation, s, peak_bits};
}

std::uint64_t Natural::strip_trailing_zeros(std::uint64_t max_shift) {
    std::uint64_t shift = std::min(trailing_zeros(), max_shift);
    if (shift != 0) *this >>= shift;
    return shift;
}

void Natural::trim() noexcept {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

std::string to_string(const Natural& value) {
    return value.to_decimal();
}

}  // namespace cm
