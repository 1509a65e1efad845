#pragma once

#include <cstdint>
#include <span>

namespace cm {

/// Steps per natural-log unit for a "random" start: 3 / ln(4/3).
double random_path_rate();

/// Steps per unit of exponent for 2^n - 1: 2 + ln 3 * 3 / ln(4/3).
double mersenne_slope();

struct HeuristicConstants {
    double c0;
    double mersenne_slope;
};

HeuristicConstants heuristic_constants();

/// Expected path length of a large random N, given ln N. Throws DomainError if negative.
double heuristic_path_length(double ln_n);

/// Expected path length of 2^n - 1: two steps per bit to reach 3^n - 1,
/// then the random-start estimate from there.
double mersenne_heuristic(std::uint64_t n);

/// Checks that 2^n - 1 becomes 3*2^(n-1) - 1 after two steps (n >= 2) and
/// 3^n - 1 after 2n steps.
bool verify_transit_lemma(std::uint64_t n);

struct RankExponent {
    int rank;
    std::uint64_t exponent;
};

struct FitResult {
    double intercept;
    double slope;
    double rms_residual;
};

/// Least squares of log2(log2(2^n - 1)) on rank. The response is taken as
/// log2(n), which is exact at double precision for n >= 2.
/// Throws DegenerateFitError for < 2 points or a single distinct rank.
FitResult fit_loglog(std::span<const RankExponent> entries);

}  // namespace cm
