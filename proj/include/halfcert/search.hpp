#ifndef HALFCERT_SEARCH_HPP
#define HALFCERT_SEARCH_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "halfcert/certificate.hpp"
#include "halfcert/family.hpp"

namespace halfcert {

enum class SearchUniverse {
    full_power_set, // every G ⊆ 2^[n]; exhaustive mode guards n <= 5
    subfamilies,    // every G ⊆ F
};

struct SearchConfig {
    SearchUniverse universe = SearchUniverse::subfamilies;
    std::size_t min_size = 2; // |G| > 1 is part of the certificate contract
    std::size_t max_size = std::numeric_limits<std::size_t>::max();
    std::size_t budget = 10'000; // max candidates examined
    std::uint64_t seed = 0;      // heuristic moves only
};

enum class SearchCoverage {
    found,          // witness returned
    exhausted,      // every candidate in the universe was examined; none pass
    budget_limited, // stopped at the budget; non-existence not established
};

struct SearchTraceEntry {
    std::size_t step = 0;
    std::string action; // "init", "add", "remove", "swap", "restart"
    double margin_bits = 0.0;
    bool accepted = false;
    bool passed = false;
};

struct SearchOutcome {
    std::optional<Family> witness;
    std::optional<CertificateReport> report;
    SearchCoverage coverage = SearchCoverage::budget_limited;
    std::size_t examined = 0;
    std::vector<SearchTraceEntry> trace; // greedy mode only
};

// Enumerates candidates in canonical order (ascending size, then ascending
// encoding over the universe) and returns the first passing witness.
// Coverage "exhausted" with no witness rules out the whole universe.
SearchOutcome exhaustive_search(const Family& family, const SearchConfig& config);

// Margin-maximizing local search: moves add, remove, or swap one set;
// strict improvements are accepted; stagnation triggers a seeded restart.
// Deterministic given the seed.
SearchOutcome greedy_search(const Family& family, const SearchConfig& config);

// Exact rational epsilon for the threshold construction.
struct RationalEpsilon {
    std::uint64_t num = 1;
    std::uint64_t den = 4;
};

struct ThresholdConfig {
    int copies = 3;                    // N
    RationalEpsilon epsilon;           // 0 < num/den < 1/2
    std::uint64_t cap = 1u << 20;      // materialization bound for F^N
};

// Witness built from the power family: G collects every tuple S of F^N with
// |F^N(S)| >= |F|^{epsilon (N-2)}, decided by exact integer powers.
struct ThresholdReport {
    std::uint64_t power_size = 0;   // |F^N|
    std::uint64_t witness_size = 0; // |G|
    int copies = 1;
    RationalEpsilon epsilon;
    bool size_condition_met = false; // |G| <= (1/2 - eps) |F^N|, exact
    bool lower_bound_met = false;    // |G| >= |F^N| / 4, exact
    bool degenerate_copies = false;  // N < 3: threshold exponent <= 0
    bool trivial_base = false;       // |F| = 1
    CertificateReport certificate;   // verify_certificate(F^N, G)
};

ThresholdReport threshold_power_witness(const Family& family,
                                        const ThresholdConfig& config);

} // namespace halfcert

#endif
