#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "halfcert/errors.hpp"
#include "halfcert/family.hpp"
#include "halfcert/json_io.hpp"
#include "halfcert/search.hpp"

#include "generators.hpp"

using halfcert::Family;
using halfcert::SearchConfig;
using halfcert::SearchCoverage;
using halfcert::SearchUniverse;
using halfcert::SetMask;
using halfcert::ThresholdConfig;

namespace {

Family fam(int n, std::vector<std::vector<int>> raw) {
    return Family::from_element_lists(n, raw);
}

SearchConfig full_universe(std::size_t budget = 10'000) {
    SearchConfig config;
    config.universe = SearchUniverse::full_power_set;
    config.budget = budget;
    return config;
}

} // namespace

TEST_CASE("exhaustive search proves non-existence for the three singletons") {
    Family f = fam(3, {{1}, {2}, {3}});
    auto outcome = exhaustive_search(f, full_universe());
    CHECK(!outcome.witness);
    CHECK(outcome.coverage == SearchCoverage::exhausted);
    CHECK(outcome.examined == 247); // all G ⊆ 2^[3] with |G| >= 2
    CHECK(abundant_elements(f).empty());
}

TEST_CASE("exhaustive search returns the first canonical witness") {
    Family f = fam(2, {{}, {1}, {1, 2}});
    auto outcome = exhaustive_search(f, full_universe());
    REQUIRE(outcome.witness);
    CHECK(*outcome.witness == fam(2, {{}, {1}})); // lowest encoding of size 2
    CHECK(outcome.report->pass);
    // self-check: the returned report must re-verify
    CHECK(verify_certificate(f, *outcome.witness).pass);

    // same family, subfamily universe
    SearchConfig sub;
    sub.universe = SearchUniverse::subfamilies;
    auto sub_outcome = exhaustive_search(f, sub);
    REQUIRE(sub_outcome.witness);
    CHECK(*sub_outcome.witness == fam(2, {{}, {1}}));
}

TEST_CASE("a full-ground family accepts the very first candidate") {
    Family f = fam(2, {{1, 2}});
    auto outcome = exhaustive_search(f, full_universe());
    REQUIRE(outcome.witness);
    CHECK(*outcome.witness == fam(2, {{}, {1}}));
    CHECK(outcome.report->lhs_bits == 0.0);
    CHECK(outcome.examined == 1);
}

TEST_CASE("search guards and budget accounting") {
    Family f = fam(3, {{1}, {2}, {3}});

    SearchConfig bad = full_universe();
    bad.min_size = 1;
    CHECK_THROWS_AS(exhaustive_search(f, bad), std::invalid_argument);
    bad = full_universe();
    bad.budget = 0;
    CHECK_THROWS_AS(exhaustive_search(f, bad), std::invalid_argument);
    bad = full_universe();
    bad.max_size = 1;
    CHECK_THROWS_AS(exhaustive_search(f, bad), std::invalid_argument);

    Family wide = fam(6, {{1}, {2}});
    CHECK_THROWS_AS(exhaustive_search(wide, full_universe()),
                    halfcert::ResourceLimitError);

    auto clipped = exhaustive_search(f, full_universe(1));
    CHECK(!clipped.witness);
    CHECK(clipped.examined == 1);
    CHECK(clipped.coverage == SearchCoverage::budget_limited);
}

TEST_CASE("minimum size skips the small witnesses") {
    // all four size-3 candidates fail for this family; the first passer of
    // size >= 3 is the whole power set, an exact tie 64 = 64
    Family f = fam(2, {{}, {1}, {1, 2}});
    SearchConfig config = full_universe();
    config.min_size = 3;
    auto outcome = exhaustive_search(f, config);
    REQUIRE(outcome.witness);
    CHECK(outcome.witness->size() == 4);
    CHECK(outcome.report->exact_lhs == outcome.report->exact_rhs);
    CHECK(outcome.report->pass);
}

TEST_CASE("exhaustive outcomes are deterministic") {
    Family f = fam(2, {{}, {1}, {1, 2}});
    auto a = exhaustive_search(f, full_universe());
    auto b = exhaustive_search(f, full_universe());
    CHECK(halfcert::to_json(a) == halfcert::to_json(b));
}

TEST_CASE("greedy search finds the known witness") {
    Family f = fam(2, {{}, {1}, {1, 2}});
    SearchConfig config; // subfamily universe
    config.seed = 0;
    auto outcome = greedy_search(f, config);
    REQUIRE(outcome.witness);
    CHECK(outcome.report->pass);
    CHECK(verify_certificate(f, *outcome.witness).pass);
    CHECK(!outcome.trace.empty());
    CHECK(outcome.trace.back().passed);

    // deterministic given the seed, trace included
    auto again = greedy_search(f, config);
    CHECK(halfcert::to_json(outcome) == halfcert::to_json(again));
}

TEST_CASE("greedy search exhausts its budget when no witness exists") {
    Family f = fam(3, {{1}, {2}, {3}});
    SearchConfig config;
    config.seed = 11;
    config.budget = 500;
    auto outcome = greedy_search(f, config);
    CHECK(!outcome.witness);
    CHECK(outcome.coverage == SearchCoverage::budget_limited);
    CHECK(outcome.examined == 500);

    config.budget = 1;
    auto single = greedy_search(f, config);
    CHECK(single.examined == 1);
    CHECK(single.trace.size() == 1);
}

TEST_CASE("greedy stays inside its universe and the verifier agrees") {
    std::mt19937_64 rng(424242);
    for (int round = 0; round < 40; ++round) {
        int n = 1 + static_cast<int>(rng() % 3);
        Family f = testgen::random_family(rng, n, std::size_t{1} << n);
        SearchConfig config;
        config.universe = SearchUniverse::subfamilies;
        config.seed = rng();
        config.budget = 300;
        if (f.size() < config.min_size) continue;
        auto outcome = greedy_search(f, config);
        if (!outcome.witness) continue;
        CHECK(outcome.witness->subfamily_of(f));
        CHECK(verify_certificate(f, *outcome.witness).pass);
    }
}

TEST_CASE("exhaustive search agrees with abundance on random families") {
    std::mt19937_64 rng(1357);
    for (int round = 0; round < 40; ++round) {
        int n = 1 + static_cast<int>(rng() % 3);
        Family f = testgen::random_family(rng, n, std::size_t{1} << n);
        auto outcome = exhaustive_search(f, full_universe());
        bool has_abundant = !abundant_elements(f).empty();
        CHECK(outcome.witness.has_value() == has_abundant);
        if (!outcome.witness)
            CHECK(outcome.coverage == SearchCoverage::exhausted);
    }
}

TEST_CASE("threshold witness with a zero exponent keeps every tuple") {
    Family f = fam(2, {{}, {1}, {1, 2}});
    ThresholdConfig config;
    config.copies = 2;
    config.epsilon = {1, 4};
    auto report = threshold_power_witness(f, config);
    CHECK(report.power_size == 9);
    CHECK(report.witness_size == 9); // threshold |F|^0 = 1 admits everything
    CHECK(!report.size_condition_met);
    CHECK(report.lower_bound_met);
    CHECK(report.degenerate_copies); // exponent only turns positive at N = 3
    CHECK(report.certificate.inequality_evaluated);
    CHECK(!report.certificate.pass); // the square of the counterexample
}

TEST_CASE("threshold witness flags the degenerate single copy") {
    Family f = fam(2, {{}, {1}, {1, 2}});
    ThresholdConfig config;
    config.copies = 1;
    config.epsilon = {1, 4};
    auto report = threshold_power_witness(f, config);
    CHECK(report.degenerate_copies);
    CHECK(report.power_size == 3);
    CHECK(report.witness_size == 3); // negative exponent admits everything
}

TEST_CASE("threshold keeps seven of eight tuples for the doubleton cubed") {
    Family f = fam(1, {{}, {1}});
    ThresholdConfig config;
    config.copies = 3;
    config.epsilon = {1, 4};
    auto report = threshold_power_witness(f, config);
    CHECK(report.power_size == 8);
    CHECK(report.witness_size == 7); // only ({1},{1},{1}) falls below 2^{1/4}
    CHECK(report.lower_bound_met);
    CHECK(!report.size_condition_met);
    CHECK(report.certificate.witness_size == 7);
}

TEST_CASE("threshold configuration validation") {
    Family f = fam(1, {{}, {1}});
    ThresholdConfig config;
    config.copies = 3;
    config.epsilon = {1, 2};
    CHECK_THROWS_AS(threshold_power_witness(f, config), std::invalid_argument);
    config.epsilon = {0, 4};
    CHECK_THROWS_AS(threshold_power_witness(f, config), std::invalid_argument);
    config.epsilon = {3, 4};
    CHECK_THROWS_AS(threshold_power_witness(f, config), std::invalid_argument);

    config.epsilon = {1, 4};
    config.cap = 4;
    CHECK_THROWS_AS(threshold_power_witness(f, config),
                    halfcert::ResourceLimitError);
}

TEST_CASE("threshold chain audit holds over random closed families") {
    std::mt19937_64 rng(5150);
    for (int round = 0; round < 25; ++round) {
        Family f = testgen::random_union_closed_family(rng, 3);
        for (int copies : {3, 4}) {
            ThresholdConfig config;
            config.copies = copies;
            config.epsilon = {1, 8};
            config.cap = 1u << 16;
            // throws InternalContractError if the audited implication breaks
            auto report = threshold_power_witness(f, config);
            if (report.size_condition_met && report.lower_bound_met &&
                report.witness_size > 1)
                CHECK(report.certificate.pass);
        }
    }
}
