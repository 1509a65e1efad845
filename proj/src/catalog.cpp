#include "collatz_mersenne/catalog.hpp"

#include <array>
#include <string>

#include "collatz_mersenne/errors.hpp"

namespace cm {

namespace {

// Row 45 was published with exponent 371566673; its D and D/n columns only
// agree with 37156667, which is also the value that keeps exponents sorted.
constexpr std::array<CatalogEntry, kCatalogSize> kCatalog{{
    {1, 2, 2, 7, 3.5},
    {2, 3, 3, 16, 5.33333},
    {3, 5, 5, 106, 21.2},
    {4, 7, 7, 46, 6.57143},
    {5, 13, 13, 158, 12.1538},
    {6, 17, 17, 224, 13.1765},
    {7, 19, 19, 177, 9.31579},
    {8, 31, 31, 450, 14.5161},
    {9, 61, 61, 860, 14.0984},
    {10, 89, 89, 1454, 16.3371},
    {11, 107, 107, 1441, 13.4673},
    {12, 127, 127, 1660, 13.0709},
    {13, 521, 521, 6769, 12.9923},
    {14, 607, 607, 8494, 13.9934},
    {15, 1279, 1279, 17094, 13.3651},
    {16, 2203, 2203, 29821, 13.5365},
    {17, 2281, 2281, 30734, 13.4739},
    {18, 3217, 3217, 43478, 13.5151},
    {19, 4253, 4253, 55906, 13.1451},
    {20, 4423, 4423, 60716, 13.7273},
    {21, 9689, 9689, 129608, 13.3768},
    {22, 9941, 9941, 134345, 13.5142},
    {23, 11213, 11213, 153505, 13.6899},
    {24, 19937, 19937, 265860, 13.335},
    {25, 21701, 21701, 293161, 13.5091},
    {26, 23209, 23209, 312164, 13.4501},
    {27, 44497, 44497, 598067, 13.4406},
    {28, 86243, 86243, 1158876, 13.4373},
    {29, 110503, 110503, 1482529, 13.4162},
    {30, 132049, 132049, 1771117, 13.4126},
    {31, 216091, 216091, 2906179, 13.4489},
    {32, 756839, 756839, 10197081, 13.4732},
    {33, 859433, 859433, 11568589, 13.4607},
    {34, 1257787, 1257787, 16927967, 13.4585},
    {35, 1398269, 1398269, 18807193, 13.4503},
    {36, 2976221, 2976221, 40055567, 13.4585},
    {37, 3021377, 3021377, 40663017, 13.4584},
    {38, 6972593, 6972593, 93778449, 13.4496},
    {39, 13466917, 13466917, 181209792, 13.4559},
    {40, 20996011, 20996011, 282515044, 13.4557},
    {41, 24036583, 24036583, 323346876, 13.4523},
    {42, 25964951, 25964951, 349304386, 13.4529},
    {43, 30402457, 30402457, 409093991, 13.456},
    {44, 32582657, 32582657, 438465334, 13.457},
    {45, 37156667, 371566673, 499902411, 13.4539},
    {46, 42643801, 42643801, 573966881, 13.4596},
    {47, 43112609, 43112609, 580260946, 13.4592},
}};

__extension__ using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1;
    base %= m;
    while (exp != 0) {
        if (exp & 1U) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

bool strong_probable_prime(std::uint64_t n, std::uint64_t d, unsigned r, std::uint64_t a) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (unsigned i = 1; i < r; ++i) {
        x = mul_mod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

// x mod (2^p - 1) using 2^p == 1.
void reduce_mersenne(Natural& x, std::uint64_t p, const Natural& modulus) {
    while (x.bit_length() > p) x = x.low_bits(p) + (x >> p);
    if (x == modulus) x = Natural{};
}

}  // namespace

std::span<const CatalogEntry> catalog() {
    return kCatalog;
}

const CatalogEntry& catalog_entry(int rank) {
    if (rank < 1 || rank > kCatalogSize) {
        throw RangeError("catalog rank " + std::to_string(rank) + " outside [1, " + std::to_string(kCatalogSize) + "]");
    }
    return kCatalog[static_cast<std::size_t>(rank - 1)];
}

Natural mersenne_number(std::uint64_t n) {
    if (n == 0) throw DomainError("mersenne_number: exponent must be positive");
    return Natural::pow2(n) - Natural{1};
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    static constexpr std::array<std::uint64_t, 12> kBases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (std::uint64_t p : kBases) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    unsigned r = 0;
    while ((d & 1U) == 0) {
        d >>= 1;
        ++r;
    }
    // These twelve bases are sufficient for every n < 3.3 * 10^24.
    for (std::uint64_t a : kBases) {
        if (!strong_probable_prime(n, d, r, a)) return false;
    }
    return true;
}

std::uint64_t next_prime(std::uint64_t n) {
    // Largest prime below 2^64.
    constexpr std::uint64_t kLargestPrime = 18446744073709551557ULL;
    if (n >= kLargestPrime) throw RangeError("next_prime: no prime above " + std::to_string(n) + " below 2^64");
    if (n < 2) return 2;
    std::uint64_t c = (n + 1) | 1U;
    while (!is_prime(c)) c += 2;
    return c;
}

bool lucas_lehmer(std::uint64_t p) {
    if (p % 2 == 0 || !is_prime(p)) {
        throw DomainError("lucas_lehmer: exponent " + std::to_string(p) + " is not an odd prime");
    }
    const Natural modulus = mersenne_number(p);
    const Natural two{2};
    Natural s{4};
    for (std::uint64_t i = 0; i + 2 < p; ++i) {
        s = s * s;
        reduce_mersenne(s, p, modulus);
        if (s < two) s += modulus;
        s -= two;
    }
    return s.is_zero();
}

}  // namespace cm
