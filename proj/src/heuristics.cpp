#include "collatz_mersenne/heuristics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "collatz_mersenne/catalog.hpp"
#include "collatz_mersenne/collatz.hpp"
#include "collatz_mersenne/errors.hpp"

namespace cm {

double random_path_rate() {
    return 3.0 / std::log(4.0 / 3.0);
}

double mersenne_slope() {
    return 2.0 + random_path_rate() * std::log(3.0);
}

HeuristicConstants heuristic_constants() {
    return {random_path_rate(), mersenne_slope()};
}

double heuristic_path_length(double ln_n) {
    if (!(ln_n >= 0.0)) throw DomainError("heuristic_path_length: ln N must be non-negative");
    return random_path_rate() * ln_n;
}

double mersenne_heuristic(std::uint64_t n) {
    return mersenne_slope() * static_cast<double>(n);
}

bool verify_transit_lemma(std::uint64_t n) {
    if (n == 0) throw DomainError("verify_transit_lemma: n must be positive");
    IterationState s = IterationState::start(mersenne_number(n));
    s = raw_advance(std::move(s), 2);
    if (n >= 2) {
        Natural expected = Natural::pow2(n - 1);
        expected.mul_small(3);
        expected -= Natural{1};
        if (s.current != expected) return false;
    }
    s = raw_advance(std::move(s), 2 * n - 2);
    return s.current == Natural::pow(3, n) - Natural{1};
}

FitResult fit_loglog(std::span<const RankExponent> input) {
    if (input.size() < 2) throw DegenerateFitError("fit_loglog: need at least two points");
    // Fixed summation order makes the result independent of input order.
    std::vector<RankExponent> entries(input.begin(), input.end());
    std::sort(entries.begin(), entries.end(), [](const RankExponent& a, const RankExponent& b) {
        return a.rank != b.rank ? a.rank < b.rank : a.exponent < b.exponent;
    });
    const auto count = static_cast<double>(entries.size());
    double mean_k = 0.0;
    double mean_y = 0.0;
    for (const auto& e : entries) {
        if (e.exponent < 1) throw DomainError("fit_loglog: exponent must be positive");
        mean_k += e.rank;
        mean_y += std::log2(static_cast<double>(e.exponent));
    }
    mean_k /= count;
    mean_y /= count;

    double sxx = 0.0;
    double sxy = 0.0;
    for (const auto& e : entries) {
        double dk = e.rank - mean_k;
        sxx += dk * dk;
        sxy += dk * (std::log2(static_cast<double>(e.exponent)) - mean_y);
    }
    if (sxx == 0.0) throw DegenerateFitError("fit_loglog: all ranks are equal");

    FitResult fit{};
    fit.slope = sxy / sxx;
    fit.intercept = mean_y - fit.slope * mean_k;
    double sse = 0.0;
    for (const auto& e : entries) {
        double r = std::log2(static_cast<double>(e.exponent)) - (fit.intercept + fit.slope * e.rank);
        sse += r * r;
    }
    fit.rms_residual = std::sqrt(sse / count);
    return fit;
}

}  // namespace cm
