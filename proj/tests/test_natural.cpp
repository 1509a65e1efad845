#include <doctest.h>

#include <random>

#include "collatz_mersenne/errors.hpp"
#include "collatz_mersenne/natural.hpp"

using cm::Natural;

namespace {

__extension__ using u128 = unsigned __int128;

Natural from_u128(u128 v) {
    return (Natural{static_cast<std::uint64_t>(v >> 64)} << 64) + Natural{static_cast<std::uint64_t>(v)};
}

Natural random_natural(std::mt19937_64& rng, std::size_t max_limbs) {
    std::uniform_int_distribution<std::size_t> len(1, max_limbs);
    Natural x;
    for (std::size_t i = len(rng); i > 0; --i) {
        x <<= 64;
        x += Natural{rng()};
    }
    return x;
}

}  // namespace

TEST_SUITE("natural") {

TEST_CASE("bit_length and trailing zeros") {
    CHECK(Natural{}.bit_length() == 0);
    CHECK(Natural{1}.bit_length() == 1);
    CHECK(Natural{255}.bit_length() == 8);
    CHECK(Natural::pow2(64).bit_length() == 65);
    CHECK(Natural::pow2(1000).trailing_zeros() == 1000);
    CHECK(Natural{12}.trailing_zeros() == 2);
    CHECK(Natural::pow2(130).is_power_of_two());
    CHECK_FALSE((Natural::pow2(130) + Natural{4}).is_power_of_two());
}

TEST_CASE("decimal and hex text") {
    CHECK(Natural::from_decimal("0").is_zero());
    CHECK(Natural::from_decimal("18446744073709551616") == Natural::pow2(64));
    CHECK(Natural::pow2(100).to_decimal() == "1267650600228229401496703205376");
    CHECK(Natural::pow2(100).to_hex() == "10000000000000000000000000");
    CHECK(Natural::from_hex("DeadBeef") == Natural{0xdeadbeefULL});
    CHECK(Natural{}.to_hex() == "0");
    CHECK(Natural::from_hex("000b") == Natural{11});
    CHECK_THROWS_AS(Natural::from_decimal(""), cm::DomainError);
    CHECK_THROWS_AS(Natural::from_decimal("12a"), cm::DomainError);
    CHECK_THROWS_AS(Natural::from_hex("xyz"), cm::DomainError);
}

TEST_CASE("pow matches repeated multiplication") {
    CHECK(Natural::pow(3, 0) == Natural{1});
    CHECK(Natural::pow(3, 40) == Natural{12157665459056928801ULL});
    Natural p{1};
    for (int i = 0; i < 200; ++i) p.mul_small(3);
    CHECK(Natural::pow(3, 200) == p);
    CHECK(Natural::pow(3, 200).to_decimal() ==
          "265613988875874769338781322035779626829233452653394495974574961739092490901302182994384699044001");
}

TEST_CASE("subtraction underflow is an error") {
    CHECK_THROWS_AS(Natural{3} - Natural{4}, cm::DomainError);
    CHECK((Natural::pow2(128) - Natural{1}).to_hex() == std::string(32, 'f'));
}

TEST_CASE("arithmetic agrees with 128-bit integers") {
    std::mt19937_64 rng(12345);
    for (int i = 0; i < 2000; ++i) {
        u128 a = (static_cast<u128>(rng() >> 1) << 64) | rng();
        u128 b = (static_cast<u128>(rng() >> 2) << 64) | rng();
        std::uint64_t small = rng() | 1U;
        Natural na = from_u128(a);
        Natural nb = from_u128(b);
        CHECK(na + nb == from_u128(a + b));
        if (a >= b) CHECK(na - nb == from_u128(a - b));
        CHECK(((na << 7) >> 7) == na);
        CHECK((na >> 70) == from_u128(a >> 70));
        CHECK(from_u128(a >> 64) * from_u128(b >> 64) == from_u128((a >> 64) * (b >> 64)));
        Natural q = na;
        std::uint64_t r = q.div_small(small);
        CHECK(q == from_u128(a / small));
        CHECK(r == static_cast<std::uint64_t>(a % small));
        CHECK(na.low_bits(77) == from_u128(a & ((static_cast<u128>(1) << 77) - 1)));
        CHECK((na < nb) == (a < b));
    }
}

TEST_CASE("decimal round trip on random values") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        Natural x = random_natural(rng, 12);
        CHECK(Natural::from_decimal(x.to_decimal()) == x);
        CHECK(Natural::from_hex(x.to_hex()) == x);
    }
}

TEST_CASE("fused odd step equals 3x+1 followed by a shift") {
    std::mt19937_64 rng(99);
    auto check_one = [](const Natural& x) {
        Natural expected = x;
        expected.mul_small(3).add_small(1);
        const auto valuation = expected.trailing_zeros();
        const auto peak = expected.bit_length();
        for (std::uint64_t cap : {std::uint64_t{0}, std::uint64_t{1}, std::uint64_t{3}, UINT64_MAX}) {
            Natural y = x;
            auto step = y.odd_step(cap);
            Natural e = expected >> std::min(valuation, cap);
            CHECK(y == e);
            CHECK(step.valuation == valuation);
            CHECK(step.halvings == std::min(valuation, cap));
            CHECK(step.peak_bits == peak);
        }
    };
    for (int i = 0; i < 3000; ++i) {
        Natural x = random_natural(rng, 6);
        if (x.is_even()) x.add_small(1);
        check_one(x);
    }
    // 3 * 0x55..55 + 1 wraps the low limb to zero.
    check_one(Natural{0x5555555555555555ULL});
    check_one((Natural{rng()} << 64) + Natural{0x5555555555555555ULL});
    // Carry out of the top limb.
    check_one(Natural::pow2(128) - Natural{1});
    check_one(Natural{1});
}

TEST_CASE("strip_trailing_zeros respects its cap") {
    Natural x = Natural::pow2(200) * Natural{5};
    CHECK(x.strip_trailing_zeros(50) == 50);
    CHECK(x == Natural::pow2(150) * Natural{5});
    CHECK(x.strip_trailing_zeros(UINT64_MAX) == 150);
    CHECK(x == Natural{5});
    CHECK(x.strip_trailing_zeros(10) == 0);
}

}  // TEST_SUITE
