#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "collatz_mersenne/collatz.hpp"
#include "collatz_mersenne/heuristics.hpp"

namespace cm {

enum class SetLabel { Mersenne, A, B, C, D };
enum class Provenance { Generated, Fixture };

std::string_view label_name(SetLabel label);
/// Accepts "mersenne", "A".."D" (case-insensitive). Throws DomainError otherwise.
SetLabel parse_label(std::string_view text);

struct IndexSet {
    SetLabel label;
    std::vector<std::uint64_t> indices;  // strictly increasing
    Provenance provenance;
};

struct RatioStats {
    std::size_t count;
    double mean;
    double sample_variance;  // divisor count - 1
};

struct ScanRecord {
    std::uint64_t exponent;
    bool is_prime_index;
    std::uint64_t d;
    double ratio;
};

struct ExponentPathLength {
    std::uint64_t exponent;
    std::uint64_t d;
};

/// Exponents of catalog ranks from..to inclusive.
IndexSet mersenne_set(int from_rank, int to_rank);

/// next_prime of each base index.
IndexSet generate_set_A(const IndexSet& base);

/// floor((n_k + n_{k+1}) / 2) for each consecutive rank pair in from..to.
/// Requires from < to; yields to - from indices.
IndexSet generate_set_B(int from_rank, int to_rank);

/// The hand-picked comparison lists of the published survey, verbatim.
IndexSet fixture_set_C();
IndexSet fixture_set_D();

/// Twice each base index; the rule the C fixture was picked by.
IndexSet doubled_set(const IndexSet& base);

/// round(2^(intercept + slope * k)) for k in from..to; the rule the D
/// fixture was picked by.
IndexSet fit_line_set(const FitResult& fit, int from_rank, int to_rank);

/// Published (n, D) pairs for the survey rows. Mersenne uses the catalog
/// (ranks 26..38); A-D use the printed survey values.
std::vector<ExponentPathLength> reference_pairs(SetLabel label);

/// Mean and N-1 variance of d/n. Throws DegenerateStatsError for < 2 pairs.
RatioStats ratio_stats(std::span<const ExponentPathLength> pairs);

/// D(2^n - 1) for every exponent, computed on `jobs` worker threads. Output
/// order follows input order.
std::vector<std::uint64_t> mersenne_path_lengths(std::span<const std::uint64_t> exponents, unsigned jobs,
                                                 std::uint64_t cycle_guard = kDefaultCycleGuard);

/// The exponents a scan visits, in increasing order. With primes_only the
/// anchor is the first prime >= center and each side takes every
/// stride-th prime; otherwise center +- i*stride. Empty for count 0.
std::vector<std::uint64_t> scan_indices(std::uint64_t center, std::uint64_t count_each_side, std::uint64_t stride,
                                        bool primes_only);

std::vector<ScanRecord> scan_ratios(std::uint64_t center, std::uint64_t count_each_side, std::uint64_t stride,
                                    bool primes_only, unsigned jobs = 1,
                                    std::uint64_t cycle_guard = kDefaultCycleGuard);

struct StaircaseReport {
    std::size_t drops;              // places where d decreases
    std::size_t adjacent_drops;     // drops immediately following another drop
    double min_ratio;
    double max_ratio;
    bool holds;                     // isolated drops only and ratios within bounds
};

StaircaseReport staircase_report(std::span<const ScanRecord> records, double ratio_low = 13.2,
                                 double ratio_high = 13.7);

}  // namespace cm
