// Acceptance suite: runs every release criterion at its stated tolerance and
// prints one pass/fail line per criterion. Exits nonzero if any line fails.
#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "halfcert/certificate.hpp"
#include "halfcert/entropy.hpp"
#include "halfcert/family.hpp"
#include "halfcert/search.hpp"

#include "generators.hpp"

using halfcert::CertificateReport;
using halfcert::Family;
using halfcert::SetDistribution;
using halfcert::SetMask;
using halfcert::VerifyMode;

namespace {

struct Criterion {
    int id;
    std::string label;
    bool pass = true;
    std::string detail;
    double seconds = 0.0;
    double limit_seconds = 0.0; // 0 = no stated limit
};

std::vector<Criterion> results;

template <typename Body>
void run_criterion(int id, const std::string& label, double limit_seconds,
                   Body body) {
    Criterion c{id, label};
    c.limit_seconds = limit_seconds;
    auto start = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& err) {
        c.pass = false;
        c.detail += std::string(" unexpected exception: ") + err.what();
    }
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              start)
                    .count();
    if (limit_seconds > 0.0 && c.seconds > limit_seconds) {
        c.pass = false;
        c.detail += " exceeded time limit";
    }
    std::ostringstream line;
    line << (c.pass ? "[PASS]" : "[FAIL]") << " " << c.id << ". " << c.label
         << ":" << c.detail << " (" << std::fixed;
    line.precision(3);
    line << c.seconds << " s";
    if (limit_seconds > 0.0) line << ", limit " << limit_seconds << " s";
    line << ")";
    std::cout << line.str() << std::endl;
    results.push_back(std::move(c));
}

// Tallies for the float/exact coherence criterion, fed by criteria 1-4.
struct CoherenceStats {
    std::size_t reports = 0;
    std::size_t decisive = 0; // |margin| > 1e-6
    std::size_t ties = 0;     // exact_lhs == exact_rhs
    std::size_t sign_mismatches = 0;
    std::size_t tie_failures = 0;

    void feed(const CertificateReport& report) {
        if (!report.inequality_evaluated) return;
        ++reports;
        if (std::abs(report.margin_bits) > 1e-6) {
            ++decisive;
            if (report.pass != (report.margin_bits > 0.0)) ++sign_mismatches;
        }
        if (report.exact_lhs == report.exact_rhs) {
            ++ties;
            if (!report.pass) ++tie_failures;
        }
    }
};

CoherenceStats coherence;

struct PassingPair {
    int n;
    std::uint32_t family_bits;
    std::uint32_t witness_bits;
};

std::vector<PassingPair> passing_pairs;

Family family_from_bits(const std::vector<SetMask>& universe, int n,
                        std::uint32_t bits) {
    std::vector<SetMask> masks;
    for (std::uint32_t b = 0; b < universe.size(); ++b)
        if (bits & (std::uint32_t{1} << b)) masks.push_back(universe[b]);
    return Family::from_masks(n, std::move(masks));
}

// Criteria 1 and 2: abundance is equivalent to the existence of a passing
// witness, over every family and every candidate of the given ground size.
void equivalence_sweep(Criterion& c, int n) {
    const std::vector<SetMask> universe = halfcert::all_subsets(n);
    const std::uint32_t families = (std::uint32_t{1} << universe.size()) - 1;

    halfcert::SearchConfig search_config;
    search_config.universe = halfcert::SearchUniverse::full_power_set;
    search_config.budget = 1u << 20;

    std::size_t candidate_count = 0;
    std::size_t mismatches = 0;
    for (std::uint32_t fbits = 1; fbits <= families; ++fbits) {
        Family f = family_from_bits(universe, n, fbits);
        const bool has_abundant = !halfcert::abundant_elements(f).empty();

        bool any_pass = false;
        candidate_count = 0;
        for (std::uint32_t gbits = 1; gbits <= families; ++gbits) {
            if (std::popcount(gbits) < 2) continue;
            ++candidate_count;
            Family g = family_from_bits(universe, n, gbits);
            CertificateReport report = verify_certificate(f, g);
            coherence.feed(report);
            if (report.pass) {
                any_pass = true;
                passing_pairs.push_back({n, fbits, gbits});
            }
        }

        auto outcome = halfcert::exhaustive_search(f, search_config);
        const bool search_found = outcome.witness.has_value();
        if (search_found != any_pass || any_pass != has_abundant) ++mismatches;
        if (search_found && !verify_certificate(f, *outcome.witness).pass)
            ++mismatches;
    }

    std::ostringstream detail;
    detail << " " << families << " families x " << candidate_count
           << " candidates, " << mismatches << " mismatches";
    c.detail += detail.str();
    c.pass = mismatches == 0;
}

} // namespace

int main() {
    std::cout << "acceptance suite: entropy certificates for half-abundant "
                 "elements\n";

    run_criterion(1, "theorem equivalence, n = 2", 1.0,
                  [](Criterion& c) { equivalence_sweep(c, 2); });

    run_criterion(2, "theorem equivalence, n = 3", 60.0,
                  [](Criterion& c) { equivalence_sweep(c, 3); });

    run_criterion(3, "self-witness counterexample is exact", 0.0,
                  [](Criterion& c) {
        Family f = Family::from_element_lists(2, {{}, {1}, {1, 2}});
        CertificateReport report = verify_certificate(f, f);
        coherence.feed(report);
        c.pass = !report.pass && report.exact_lhs == 36 && report.exact_rhs == 27;
        c.detail = " exact_lhs=" + halfcert::to_decimal(report.exact_lhs) +
                   " exact_rhs=" + halfcert::to_decimal(report.exact_rhs) +
                   std::string(report.pass ? " verdict=pass" : " verdict=fail");
    });

    run_criterion(4, "two-set witness from every abundant element, n = 3", 0.0,
                  [](Criterion& c) {
        const auto universe = halfcert::all_subsets(3);
        std::size_t checked = 0;
        std::size_t failures = 0;
        for (std::uint32_t fbits = 1; fbits < 256; ++fbits) {
            Family f = family_from_bits(universe, 3, fbits);
            const auto table = halfcert::frequencies(f);
            for (int i : halfcert::abundant_elements(f)) {
                Family g = halfcert::certificate_from_abundant(f, i);
                CertificateReport report = verify_certificate(f, g);
                coherence.feed(report);
                ++checked;
                const double w = static_cast<double>(
                    table.absent_count[static_cast<std::size_t>(i - 1)]);
                if (!report.pass || report.lhs_bits != w) ++failures;
            }
        }
        c.pass = failures == 0;
        c.detail = " " + std::to_string(checked) + " abundant pairs, " +
                   std::to_string(failures) + " failures";
    });

    run_criterion(5, "extraction round trip over all passing pairs", 0.0,
                  [](Criterion& c) {
        std::size_t failures = 0;
        for (const PassingPair& pair : passing_pairs) {
            const auto universe = halfcert::all_subsets(pair.n);
            Family f = family_from_bits(universe, pair.n, pair.family_bits);
            Family g = family_from_bits(universe, pair.n, pair.witness_bits);
            auto extraction = halfcert::extract_abundant(f, g);
            auto abundant = halfcert::abundant_elements(f);
            if (std::find(abundant.begin(), abundant.end(),
                          extraction.element) == abundant.end())
                ++failures;
        }
        c.pass = failures == 0;
        c.detail = " " + std::to_string(passing_pairs.size()) +
                   " passing pairs, " + std::to_string(failures) + " failures";
    });

    // Criteria 6 and 7 share one batch of seeded distributions.
    std::vector<SetDistribution> distributions;
    {
        std::mt19937_64 rng(1590715907ULL);
        for (int i = 0; i < 500; ++i) {
            int n = 1 + static_cast<int>(rng() % 6);
            distributions.push_back(testgen::random_distribution(rng, n));
        }
    }

    run_criterion(6, "decomposition suite, 500 distributions x 5 orders", 30.0,
                  [&](Criterion& c) {
        std::mt19937_64 rng(726180443ULL);
        std::size_t violations = 0;
        std::size_t sum_failures = 0;
        double worst_slack = 0.0;
        for (const SetDistribution& d : distributions) {
            const double h = halfcert::entropy_bits(d);
            for (int round = 0; round < 5; ++round) {
                auto order = testgen::random_order(rng, d.ground_size());
                auto vec = halfcert::decompose(d, order);
                double sum = std::accumulate(vec.x.begin(), vec.x.end(), 0.0);
                if (std::abs(sum - h) > 1e-9) ++sum_failures;
                auto check = halfcert::verify_decomposition(
                    d, vec, VerifyMode::exhaustive());
                violations += check.violations.size();
                worst_slack = std::min(worst_slack, check.worst_slack);
            }
        }
        c.pass = violations == 0 && sum_failures == 0 && worst_slack >= -1e-9;
        std::ostringstream detail;
        detail << " worst slack " << worst_slack << ", " << violations
               << " violations, " << sum_failures << " sum failures";
        c.detail += detail.str();
    });

    run_criterion(7, "submodularity suite over the same distributions", 0.0,
                  [&](Criterion& c) {
        std::size_t pairs = 0;
        std::size_t violations = 0;
        double worst_gap = 0.0;
        for (const SetDistribution& d : distributions) {
            const int n = d.ground_size();
            for (const SetMask& s : halfcert::all_subsets(n)) {
                for (int e = 1; e <= n; ++e) {
                    if (s.contains(e)) continue;
                    ++pairs;
                    double gap = halfcert::submodularity_gap(d, s, e);
                    worst_gap = std::min(worst_gap, gap);
                    if (gap < -1e-9) ++violations;
                }
            }
        }
        c.pass = violations == 0;
        std::ostringstream detail;
        detail << " " << pairs << " (S,e) pairs, worst gap " << worst_gap
               << ", " << violations << " violations";
        c.detail += detail.str();
    });

    run_criterion(8, "power family correspondence, 50 random bases", 0.0,
                  [](Criterion& c) {
        std::mt19937_64 rng(987651234ULL);
        std::size_t failures = 0;
        std::size_t factor_checks = 0;
        for (int round = 0; round < 50; ++round) {
            Family f = testgen::random_family(rng, 3, 8);
            const auto base_table = halfcert::frequencies(f);
            const bool base_closed = halfcert::is_union_closed(f);
            for (int copies : {2, 3}) {
                halfcert::PowerFamily power(f, copies, 1u << 16);
                Family materialized = power.materialize();

                std::size_t expected = 1;
                for (int j = 0; j < copies; ++j) expected *= f.size();
                if (materialized.size() != expected) ++failures;
                if (halfcert::is_union_closed(materialized) != base_closed)
                    ++failures;

                const auto power_table = halfcert::frequencies(materialized);
                const std::size_t scale = expected / f.size();
                for (int j = 0; j < copies; ++j)
                    for (int i = 1; i <= 3; ++i)
                        if (power_table.absent_count[static_cast<std::size_t>(
                                i - 1 + j * 3)] !=
                            base_table.absent_count[static_cast<std::size_t>(
                                i - 1)] *
                                scale)
                            ++failures;

                if (f.size() <= 3) {
                    std::vector<std::size_t> idx(
                        static_cast<std::size_t>(copies), 0);
                    for (;;) {
                        std::vector<SetMask> tuple;
                        for (std::size_t j : idx) tuple.push_back(f[j]);
                        ++factor_checks;
                        if (power.shift_size(tuple) !=
                            halfcert::BigInt(halfcert::shift_size(
                                materialized, power.embed(tuple))))
                            ++failures;
                        std::size_t j = 0;
                        while (j < idx.size() && ++idx[j] == f.size())
                            idx[j++] = 0;
                        if (j == idx.size()) break;
                    }
                }
            }
        }
        c.pass = failures == 0;
        c.detail = " " + std::to_string(failures) + " failures, " +
                   std::to_string(factor_checks) + " factorization tuples";
    });

    run_criterion(9, "threshold chain audit over union-closed bases", 0.0,
                  [](Criterion& c) {
        std::mt19937_64 rng(246813579ULL);
        std::size_t runs = 0;
        std::size_t conditions_met = 0;
        std::size_t counterexamples = 0;
        for (int round = 0; round < 50; ++round) {
            Family f = testgen::random_union_closed_family(rng, 3);
            for (int copies : {3, 4}) {
                for (auto eps : {halfcert::RationalEpsilon{1, 8},
                                 halfcert::RationalEpsilon{1, 4}}) {
                    halfcert::ThresholdConfig config;
                    config.copies = copies;
                    config.epsilon = eps;
                    config.cap = 1u << 16;
                    ++runs;
                    auto report = halfcert::threshold_power_witness(f, config);
                    if (report.size_condition_met && report.lower_bound_met &&
                        report.witness_size > 1) {
                        ++conditions_met;
                        if (!report.certificate.pass) ++counterexamples;
                    }
                }
            }
        }
        c.pass = counterexamples == 0;
        c.detail = " " + std::to_string(runs) + " runs, conditions met in " +
                   std::to_string(conditions_met) + ", " +
                   std::to_string(counterexamples) + " counterexamples";
    });

    run_criterion(10, "exact/float coherence across criteria 1-4", 0.0,
                  [](Criterion& c) {
        c.pass = coherence.sign_mismatches == 0 && coherence.tie_failures == 0;
        c.detail = " " + std::to_string(coherence.reports) + " reports, " +
                   std::to_string(coherence.decisive) + " decisive, " +
                   std::to_string(coherence.ties) + " exact ties, " +
                   std::to_string(coherence.sign_mismatches) +
                   " sign mismatches, " +
                   std::to_string(coherence.tie_failures) + " tie failures";
    });

    std::size_t failed = 0;
    for (const Criterion& c : results)
        if (!c.pass) ++failed;
    if (failed == 0) {
        std::cout << "all " << results.size() << " criteria passed\n";
        return 0;
    }
    std::cout << failed << " of " << results.size() << " criteria failed\n";
    return 1;
}
