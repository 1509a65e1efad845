#include <doctest.h>

#include <algorithm>
#include <random>

#include "collatz_mersenne/catalog.hpp"
#include "collatz_mersenne/errors.hpp"
#include "collatz_mersenne/survey.hpp"
#include "oracle.hpp"

using namespace cm;

namespace {

const std::vector<std::uint64_t> kPublishedA{23227,  44501,  86249,   110527,  132059,  216103, 756853,
                                             859447, 1257827, 1398281, 2976229, 3021407, 6972607};
const std::vector<std::uint64_t> kPublishedB{22455,  33853,  65370,   98373,   121276,  174070, 486465,
                                             808136, 1058610, 1328028, 2187245, 2998799, 4996985};

}  // namespace

TEST_SUITE("survey") {

TEST_CASE("mersenne_set") {
    auto s = mersenne_set(26, 38);
    REQUIRE(s.indices.size() == 13);
    CHECK(s.indices.front() == 23209);
    CHECK(s.indices.back() == 6972593);
    CHECK(mersenne_set(1, 2).indices == std::vector<std::uint64_t>{2, 3});
    CHECK(mersenne_set(26, 26).indices == std::vector<std::uint64_t>{23209});
    CHECK_THROWS_AS(mersenne_set(0, 5), RangeError);
    CHECK_THROWS_AS(mersenne_set(40, 48), RangeError);
    CHECK_THROWS_AS(mersenne_set(5, 4), RangeError);
}

TEST_CASE("set A is the next prime above each Mersenne exponent") {
    IndexSet base{SetLabel::Mersenne, {23209, 44497, 86243}, Provenance::Fixture};
    CHECK(generate_set_A(base).indices == std::vector<std::uint64_t>{23227, 44501, 86249});
    CHECK(generate_set_A({SetLabel::Mersenne, {1}, Provenance::Fixture}).indices == std::vector<std::uint64_t>{2});
    CHECK(generate_set_A({SetLabel::Mersenne, {6972593}, Provenance::Fixture}).indices ==
          std::vector<std::uint64_t>{6972607});
    CHECK(generate_set_A(mersenne_set(26, 38)).indices == kPublishedA);
    CHECK_THROWS_AS(generate_set_A({SetLabel::Mersenne, {}, Provenance::Fixture}), DomainError);
    // Cross-check next_prime against the trial-division oracle.
    for (auto a : kPublishedA) {
        CHECK(oracle::trial_division_is_prime(a));
    }
}

TEST_CASE("set B is the midpoint of consecutive exponents") {
    auto b = generate_set_B(25, 38);
    CHECK(b.indices == kPublishedB);
    for (int k = 25; k < 38; ++k) {
        // Midpoints are exact: every consecutive sum in range is even.
        CHECK((catalog_entry(k).exponent + catalog_entry(k + 1).exponent) % 2 == 0);
    }
    CHECK(generate_set_B(2, 3).indices == std::vector<std::uint64_t>{4});
    CHECK_THROWS_AS(generate_set_B(30, 30), RangeError);
    CHECK_THROWS_AS(generate_set_B(46, 48), RangeError);
}

TEST_CASE("fixture sets C and D") {
    auto c = fixture_set_C();
    auto d = fixture_set_D();
    CHECK(c.provenance == Provenance::Fixture);
    REQUIRE(c.indices.size() == 13);
    REQUIRE(d.indices.size() == 13);
    CHECK(c.indices[0] == 22426);
    CHECK(c.indices[1] == 43402);
    CHECK(c.indices[2] == 46418);
    CHECK(d.indices[1] == 43644);
    CHECK(std::is_sorted(c.indices.begin(), c.indices.end()));
    CHECK(std::adjacent_find(d.indices.begin(), d.indices.end(), std::greater_equal<>()) == d.indices.end());
    for (auto n : c.indices) {
        bool doubled = std::any_of(catalog().begin(), catalog().end(), [&](const CatalogEntry& e) { return 2 * e.exponent == n; });
        CHECK(doubled);
    }
}

TEST_CASE("companion generators") {
    CHECK(doubled_set({SetLabel::Mersenne, {11213}, Provenance::Fixture}).indices == std::vector<std::uint64_t>{22426});
    FitResult line{1.0, 1.0, 0.0};
    CHECK(fit_line_set(line, 1, 3).indices == std::vector<std::uint64_t>{4, 8, 16});
}

TEST_CASE("ratio_stats") {
    std::vector<ExponentPathLength> flat{{1, 13}, {2, 26}};
    auto s = ratio_stats(flat);
    CHECK(s.count == 2);
    CHECK(s.mean == doctest::Approx(13.0));
    CHECK(s.sample_variance == doctest::Approx(0.0));
    std::vector<ExponentPathLength> single{{5, 60}};
    CHECK_THROWS_AS(ratio_stats(single), DegenerateStatsError);
    std::vector<ExponentPathLength> bad{{0, 1}, {1, 1}};
    CHECK_THROWS_AS(ratio_stats(bad), DomainError);
}

TEST_CASE("ratio_stats on the Mersenne rows uses the N-1 divisor") {
    auto pairs = reference_pairs(SetLabel::Mersenne);
    REQUIRE(pairs.size() == 13);
    auto s = ratio_stats(pairs);
    CHECK(std::fabs(s.mean - 13.4473) < 5e-5);
    CHECK(std::fabs(s.sample_variance - 0.0002977) < 5e-8);

    // Population divisor would give 0.000275, which the published value rules out.
    double population = s.sample_variance * 12.0 / 13.0;
    CHECK(std::fabs(population - 0.000275) < 1e-6);
    CHECK(std::fabs(population - 0.0002977) > 1e-5);
}

TEST_CASE("ratio_stats is permutation invariant and scale consistent") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<ExponentPathLength> pairs;
        for (int i = 0; i < 13; ++i) {
            std::uint64_t n = 1 + rng() % 100000;
            pairs.push_back({n, n * 13 + rng() % 1000});
        }
        auto base = ratio_stats(pairs);
        std::shuffle(pairs.begin(), pairs.end(), rng);
        auto shuffled = ratio_stats(pairs);
        CHECK(shuffled.mean == base.mean);
        CHECK(shuffled.sample_variance == base.sample_variance);
        std::uint64_t c = 1 + rng() % 50;
        for (auto& p : pairs) {
            p.exponent *= c;
            p.d *= c;
        }
        auto scaled = ratio_stats(pairs);
        CHECK(scaled.mean == doctest::Approx(base.mean).epsilon(1e-12));
        CHECK(scaled.sample_variance == doctest::Approx(base.sample_variance).epsilon(1e-9));
    }
}

TEST_CASE("scan_indices shapes") {
    CHECK(scan_indices(16, 1, 1, false) == std::vector<std::uint64_t>{15, 16, 17});
    CHECK(scan_indices(16, 0, 1, false).empty());
    CHECK(scan_indices(2, 3, 1, false) == std::vector<std::uint64_t>{1, 2, 3, 4, 5});
    CHECK(scan_indices(127, 2, 1, true) == std::vector<std::uint64_t>{109, 113, 127, 131, 137});
    CHECK(scan_indices(126, 1, 1, true) == std::vector<std::uint64_t>{113, 127, 131});
    CHECK(scan_indices(127, 2, 2, true) == std::vector<std::uint64_t>{103, 109, 127, 137, 149});
    CHECK(scan_indices(3, 5, 1, true) == std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13, 17});
    CHECK_THROWS_AS(scan_indices(1, 1, 1, true), DomainError);
    CHECK_THROWS_AS(scan_indices(10, 1, 0, true), DomainError);
}

TEST_CASE("scan_ratios records") {
    auto around127 = scan_ratios(127, 1, 1, true, 2);
    REQUIRE(around127.size() == 3);
    CHECK(around127[1].exponent == 127);
    CHECK(around127[1].d == 1660);
    CHECK(around127[1].is_prime_index);

    auto around23209 = scan_ratios(23209, 1, 1, true, 1);
    CHECK(around23209[1].exponent == 23209);
    CHECK(around23209[1].d == 312164);
    CHECK(around23209[1].ratio == doctest::Approx(13.4501).epsilon(1e-5));

    auto plain = scan_ratios(16, 1, 1, false);
    CHECK(plain.size() == 3);
    CHECK_FALSE(plain[1].is_prime_index);
    CHECK(plain[2].is_prime_index);
    for (const auto& r : plain) CHECK(r.ratio * static_cast<double>(r.exponent) == doctest::Approx(static_cast<double>(r.d)));
    CHECK(scan_ratios(100, 0, 1, true).empty());
}

TEST_CASE("scan output does not depend on the worker count") {
    auto one = scan_ratios(1000, 10, 3, true, 1);
    auto four = scan_ratios(1000, 10, 3, true, 4);
    REQUIRE(one.size() == four.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
        CHECK(one[i].exponent == four[i].exponent);
        CHECK(one[i].d == four[i].d);
    }
}

TEST_CASE("worker errors propagate") {
    std::vector<std::uint64_t> exponents{10, 20, 30};
    CHECK_THROWS_AS(mersenne_path_lengths(exponents, 2, 5), CycleGuardExceeded);
}

TEST_CASE("staircase_report") {
    std::vector<ScanRecord> rising{{2, true, 10, 13.3}, {3, true, 12, 13.4}, {5, true, 11, 13.5}, {7, true, 15, 13.6}};
    auto r = staircase_report(rising);
    CHECK(r.drops == 1);
    CHECK(r.adjacent_drops == 0);
    CHECK(r.holds);
    rising[3].d = 9;
    rising[2].d = 10;
    auto s = staircase_report(rising);
    CHECK(s.adjacent_drops == 1);
    CHECK_FALSE(s.holds);
}

TEST_CASE("labels") {
    CHECK(parse_label("mersenne") == SetLabel::Mersenne);
    CHECK(parse_label("b") == SetLabel::B);
    CHECK(label_name(SetLabel::D) == "D");
    CHECK_THROWS_AS(parse_label("E"), DomainError);
}

}  // TEST_SUITE
