#include "collatz_mersenne/survey.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cctype>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "collatz_mersenne/catalog.hpp"
#include "collatz_mersenne/errors.hpp"

namespace cm {

namespace {

constexpr std::array<std::uint64_t, 13> kSetC{22426,  43402,   46418,   88994,   172486,  221006, 264098,
                                              432182, 1513678, 1718866, 2515574, 2796538, 5952442};
constexpr std::array<std::uint64_t, 13> kSetD{20160,  43644,  64216,   94484,   139021,  204550, 442830,
                                              651562, 958682, 1410567, 2075452, 3053739, 4493150};

struct ReferenceRow {
    std::array<std::uint64_t, 13> n;
    std::array<std::uint64_t, 13> d;
};

constexpr ReferenceRow kRowA{
    {23227, 44501, 86249, 110527, 132059, 216103, 756853, 859447, 1257827, 1398281, 2976229, 3021407, 6972607},
    {312182, 598071, 1158882, 1482553, 1771127, 2906191, 10197095, 11568603, 16928007, 18807205, 40055575,
     40663047, 93778463}};
constexpr ReferenceRow kRowB{
    {22455, 33853, 65370, 98373, 121276, 174070, 486465, 808136, 1058610, 1328028, 2187245, 2998799, 4996985},
    {299801, 457438, 875438, 1327329, 1633743, 2344640, 6524449, 10868120, 14246657, 17876449, 29428265,
     40364153, 67195624}};
constexpr ReferenceRow kRowC{
    kSetC,
    {299772, 584422, 627877, 1201650, 2320161, 2974984, 3556035, 5828307, 20384499, 23124964, 33827530,
     37632788, 80085173}};
constexpr ReferenceRow kRowD{
    kSetD,
    {270868, 587280, 866299, 1265873, 1871202, 2748585, 5947053, 8769774, 12911249, 18991590, 27939124,
     41095221, 60441877}};

void check_rank_range(int from_rank, int to_rank) {
    catalog_entry(from_rank);
    catalog_entry(to_rank);
    if (from_rank > to_rank) throw RangeError("rank range is reversed");
}

std::vector<ExponentPathLength> pairs_of(const ReferenceRow& row) {
    std::vector<ExponentPathLength> out;
    for (std::size_t i = 0; i < row.n.size(); ++i) out.push_back({row.n[i], row.d[i]});
    return out;
}

}  // namespace

std::string_view label_name(SetLabel label) {
    switch (label) {
        case SetLabel::Mersenne: return "mersenne";
        case SetLabel::A: return "A";
        case SetLabel::B: return "B";
        case SetLabel::C: return "C";
        case SetLabel::D: return "D";
    }
    return "?";
}

SetLabel parse_label(std::string_view text) {
    std::string lower;
    for (char c : text) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (lower == "mersenne") return SetLabel::Mersenne;
    if (lower == "a") return SetLabel::A;
    if (lower == "b") return SetLabel::B;
    if (lower == "c") return SetLabel::C;
    if (lower == "d") return SetLabel::D;
    throw DomainError("unknown set label '" + std::string(text) + "' (expected mersenne, A, B, C or D)");
}

IndexSet mersenne_set(int from_rank, int to_rank) {
    check_rank_range(from_rank, to_rank);
    IndexSet set{SetLabel::Mersenne, {}, Provenance::Fixture};
    for (int k = from_rank; k <= to_rank; ++k) set.indices.push_back(catalog_entry(k).exponent);
    return set;
}

IndexSet generate_set_A(const IndexSet& base) {
    if (base.indices.empty()) throw DomainError("generate_set_A: empty base set");
    IndexSet set{SetLabel::A, {}, Provenance::Generated};
    for (auto n : base.indices) set.indices.push_back(next_prime(n));
    return set;
}

IndexSet generate_set_B(int from_rank, int to_rank) {
    check_rank_range(from_rank, to_rank);
    if (from_rank == to_rank) throw RangeError("generate_set_B: need at least two consecutive ranks");
    IndexSet set{SetLabel::B, {}, Provenance::Generated};
    for (int k = from_rank; k < to_rank; ++k) {
        set.indices.push_back((catalog_entry(k).exponent + catalog_entry(k + 1).exponent) / 2);
    }
    return set;
}

IndexSet fixture_set_C() {
    return {SetLabel::C, {kSetC.begin(), kSetC.end()}, Provenance::Fixture};
}

IndexSet fixture_set_D() {
    return {SetLabel::D, {kSetD.begin(), kSetD.end()}, Provenance::Fixture};
}

IndexSet doubled_set(const IndexSet& base) {
    IndexSet set{SetLabel::C, {}, Provenance::Generated};
    for (auto n : base.indices) set.indices.push_back(2 * n);
    return set;
}

IndexSet fit_line_set(const FitResult& fit, int from_rank, int to_rank) {
    if (from_rank > to_rank) throw RangeError("fit_line_set: rank range is reversed");
    IndexSet set{SetLabel::D, {}, Provenance::Generated};
    for (int k = from_rank; k <= to_rank; ++k) {
        auto n = static_cast<std::uint64_t>(std::llround(std::exp2(fit.intercept + fit.slope * k)));
        if (set.indices.empty() || n > set.indices.back()) set.indices.push_back(n);
    }
    return set;
}

std::vector<ExponentPathLength> reference_pairs(SetLabel label) {
    switch (label) {
        case SetLabel::Mersenne: {
            std::vector<ExponentPathLength> out;
            for (int k = 26; k <= 38; ++k) out.push_back({catalog_entry(k).exponent, catalog_entry(k).reference_d});
            return out;
        }
        case SetLabel::A: return pairs_of(kRowA);
        case SetLabel::B: return pairs_of(kRowB);
        case SetLabel::C: return pairs_of(kRowC);
        case SetLabel::D: return pairs_of(kRowD);
    }
    return {};
}

RatioStats ratio_stats(std::span<const ExponentPathLength> pairs) {
    if (pairs.size() < 2) throw DegenerateStatsError("ratio_stats: need at least two (n, D) pairs");
    std::vector<double> ratios;
    ratios.reserve(pairs.size());
    for (const auto& p : pairs) {
        if (p.exponent == 0) throw DomainError("ratio_stats: exponent must be positive");
        ratios.push_back(static_cast<double>(p.d) / static_cast<double>(p.exponent));
    }
    // Sorted so the sums do not depend on input order.
    std::sort(ratios.begin(), ratios.end());
    double sum = 0.0;
    for (double r : ratios) sum += r;
    const double mean = sum / static_cast<double>(ratios.size());
    double ss = 0.0;
    for (double r : ratios) ss += (r - mean) * (r - mean);
    return {ratios.size(), mean, ss / static_cast<double>(ratios.size() - 1)};
}

std::vector<std::uint64_t> mersenne_path_lengths(std::span<const std::uint64_t> exponents, unsigned jobs,
                                                 std::uint64_t cycle_guard) {
    std::vector<std::uint64_t> out(exponents.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (std::size_t i = next++; i < exponents.size(); i = next++) {
            try {
                out[i] = path_length(mersenne_number(exponents[i]), cycle_guard).d;
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = exponents.size();
            }
        }
    };

    jobs = std::clamp<unsigned>(jobs, 1, static_cast<unsigned>(std::max<std::size_t>(exponents.size(), 1)));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

std::vector<std::uint64_t> scan_indices(std::uint64_t center, std::uint64_t count_each_side, std::uint64_t stride,
                                        bool primes_only) {
    if (stride == 0) throw DomainError("scan: stride must be at least 1");
    std::vector<std::uint64_t> out;
    if (count_each_side == 0) return out;

    if (!primes_only) {
        if (center == 0) throw DomainError("scan: center must be positive");
        for (std::uint64_t i = count_each_side; i >= 1; --i) {
            if (i * stride < center) out.push_back(center - i * stride);
        }
        out.push_back(center);
        for (std::uint64_t i = 1; i <= count_each_side; ++i) out.push_back(center + i * stride);
        return out;
    }

    if (center < 2) throw DomainError("scan: center must be at least 2");
    const std::uint64_t anchor = is_prime(center) ? center : next_prime(center);

    std::vector<std::uint64_t> below;
    std::uint64_t p = anchor;
    std::uint64_t seen = 0;
    while (below.size() < count_each_side && p > 2) {
        do {
            --p;
        } while (p >= 2 && !is_prime(p));
        if (p < 2) break;
        if (++seen % stride == 0) below.push_back(p);
    }
    out.assign(below.rbegin(), below.rend());
    out.push_back(anchor);

    p = anchor;
    seen = 0;
    for (std::uint64_t taken = 0; taken < count_each_side;) {
        p = next_prime(p);
        if (++seen % stride == 0) {
            out.push_back(p);
            ++taken;
        }
    }
    return out;
}

std::vector<ScanRecord> scan_ratios(std::uint64_t center, std::uint64_t count_each_side, std::uint64_t stride,
                                    bool primes_only, unsigned jobs, std::uint64_t cycle_guard) {
    const auto indices = scan_indices(center, count_each_side, stride, primes_only);
    const auto lengths = mersenne_path_lengths(indices, jobs, cycle_guard);
    std::vector<ScanRecord> out;
    out.reserve(indices.size());
    for (std::size_t i = 0; i < indices.size(); ++i) {
        out.push_back({indices[i], is_prime(indices[i]), lengths[i],
                       static_cast<double>(lengths[i]) / static_cast<double>(indices[i])});
    }
    return out;
}

StaircaseReport staircase_report(std::span<const ScanRecord> records, double ratio_low, double ratio_high) {
    StaircaseReport report{0, 0, 0.0, 0.0, true};
    if (records.empty()) return report;
    report.min_ratio = report.max_ratio = records.front().ratio;
    bool previous_dropped = false;
    for (std::size_t i = 1; i < records.size(); ++i) {
        bool dropped = records[i].d < records[i - 1].d;
        if (dropped) {
            ++report.drops;
            if (previous_dropped) ++report.adjacent_drops;
        }
        previous_dropped = dropped;
        report.min_ratio = std::min(report.min_ratio, records[i].ratio);
        report.max_ratio = std::max(report.max_ratio, records[i].ratio);
    }
    report.holds = report.adjacent_drops == 0 && report.min_ratio >= ratio_low && report.max_ratio <= ratio_high;
    return report;
}

}  // namespace cm
