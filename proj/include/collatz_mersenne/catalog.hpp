#pragma once

#include <cstdint>
#include <span>

#include "collatz_mersenne/natural.hpp"

namespace cm {

inline constexpr int kCatalogSize = 47;

/// One row of the Mersenne-prime path length table.
struct CatalogEntry {
    int rank;                     // k: position among Mersenne primes
    std::uint64_t exponent;       // n, authoritative (corrected) value
    std::uint64_t printed_exponent;  // n as originally published
    std::uint64_t reference_d;    // D(2^n - 1)
    double reference_ratio;       // D / n, as published (rounded)
};

/// All 47 rows in rank order.
std::span<const CatalogEntry> catalog();

/// Throws RangeError outside [1, 47].
const CatalogEntry& catalog_entry(int rank);

/// 2^n - 1. Throws DomainError for n = 0.
Natural mersenne_number(std::uint64_t n);

/// Deterministic over the whole 64-bit range.
bool is_prime(std::uint64_t n);

/// Smallest prime strictly greater than n. Throws RangeError past 2^64.
std::uint64_t next_prime(std::uint64_t n);

/// Lucas-Lehmer test of 2^p - 1. Throws DomainError unless p is an odd prime.
bool lucas_lehmer(std::uint64_t p);

}  // namespace cm
