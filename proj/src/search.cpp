#include "halfcert/search.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>
#include <string>

#include "halfcert/errors.hpp"

namespace halfcert {

namespace {

void validate_config(const SearchConfig& config) {
    if (config.min_size < 2)
        throw std::invalid_argument("witness search requires min_size >= 2");
    if (config.max_size < config.min_size)
        throw std::invalid_argument("max_size below min_size");
    if (config.budget == 0)
        throw std::invalid_argument("search budget must be positive");
}

std::vector<SetMask> universe_pool(const Family& family,
                                   const SearchConfig& config, bool exhaustive) {
    if (config.universe == SearchUniverse::subfamilies) return family.sets();
    if (exhaustive && family.ground_size() > 5)
        throw ResourceLimitError(
            "exhaustive search over the full power set refused for n > 5");
    return all_subsets(family.ground_size());
}

// Advances a k-combination of {0..pool-1} in colex order, which visits
// candidate encodings in ascending numeric order. Returns false after the
// last combination.
bool next_combination_colex(std::vector<std::size_t>& idx, std::size_t pool) {
    const std::size_t k = idx.size();
    for (std::size_t j = 0; j < k; ++j) {
        std::size_t limit = (j + 1 < k) ? idx[j + 1] : pool;
        if (idx[j] + 1 < limit) {
            ++idx[j];
            for (std::size_t r = 0; r < j; ++r) idx[r] = r;
            return true;
        }
    }
    return false;
}

} // namespace

SearchOutcome exhaustive_search(const Family& family, const SearchConfig& config) {
    validate_config(config);
    if (family.empty())
        throw std::invalid_argument("witness search needs a nonempty family");

    const std::vector<SetMask> pool = universe_pool(family, config, true);
    SearchOutcome outcome;

    const std::size_t max_k = std::min(config.max_size, pool.size());
    for (std::size_t k = config.min_size; k <= max_k; ++k) {
        std::vector<std::size_t> idx(k);
        for (std::size_t j = 0; j < k; ++j) idx[j] = j;
        for (;;) {
            if (outcome.examined == config.budget) {
                outcome.coverage = SearchCoverage::budget_limited;
                return outcome;
            }
            std::vector<SetMask> masks;
            masks.reserve(k);
            for (std::size_t j : idx) masks.push_back(pool[j]);
            Family candidate = Family::from_masks(family.ground_size(),
                                                  std::move(masks));
            CertificateReport report = verify_certificate(family, candidate);
            ++outcome.examined;
            if (report.pass) {
                outcome.witness = std::move(candidate);
                outcome.report = std::move(report);
                outcome.coverage = SearchCoverage::found;
                return outcome;
            }
            if (!next_combination_colex(idx, pool.size())) break;
        }
    }
    outcome.coverage = SearchCoverage::exhausted;
    return outcome;
}

namespace {

// Restart after this many consecutive non-improving candidate evaluations.
constexpr std::size_t kStagnationLimit = 64;

class GreedyState {
public:
    GreedyState(const Family& family, const SearchConfig& config)
        : family_(family), config_(config), rng_(config.seed),
          pool_(universe_pool(family, config, false)) {
        if (pool_.size() < config.min_size)
            throw std::invalid_argument(
                "universe smaller than the minimum witness size");
    }

    SearchOutcome run() {
        restart(true);
        while (!done()) {
            if (stagnation_ >= kStagnationLimit) {
                restart(false);
                continue;
            }
            propose_move();
        }
        if (outcome_.coverage != SearchCoverage::found)
            outcome_.coverage = SearchCoverage::budget_limited;
        return std::move(outcome_);
    }

private:
    bool done() const {
        return outcome_.coverage == SearchCoverage::found ||
               outcome_.examined >= config_.budget;
    }

    std::size_t pick(std::size_t bound) {
        return static_cast<std::size_t>(rng_() % bound);
    }

    std::vector<SetMask> random_state() {
        std::vector<SetMask> masks;
        std::vector<std::size_t> order(pool_.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::shuffle(order.begin(), order.end(), rng_);
        for (std::size_t i = 0; i < config_.min_size; ++i)
            masks.push_back(pool_[order[i]]);
        return masks;
    }

    void evaluate(std::vector<SetMask> masks, const std::string& action) {
        Family candidate =
            Family::from_masks(family_.ground_size(), std::move(masks));
        CertificateReport report = verify_certificate(family_, candidate);
        ++outcome_.examined;

        SearchTraceEntry entry;
        entry.step = outcome_.examined;
        entry.action = action;
        entry.margin_bits = report.margin_bits;
        entry.passed = report.pass;
        bool accept = action == "init" || action == "restart" ||
                      report.margin_bits > current_margin_;
        entry.accepted = accept;
        outcome_.trace.push_back(entry);

        if (report.pass) {
            outcome_.witness = candidate;
            outcome_.report = std::move(report);
            outcome_.coverage = SearchCoverage::found;
            return;
        }
        if (accept) {
            current_ = candidate;
            current_margin_ = report.margin_bits;
            stagnation_ = 0;
        } else {
            ++stagnation_;
        }
    }

    void restart(bool first) {
        if (done()) return;
        stagnation_ = 0;
        current_margin_ = -std::numeric_limits<double>::infinity();
        evaluate(random_state(), first ? "init" : "restart");
    }

    void propose_move() {
        const std::vector<SetMask>& members = current_.sets();
        std::vector<int> moves; // 0 add, 1 remove, 2 swap
        if (members.size() < config_.max_size && members.size() < pool_.size())
            moves.push_back(0);
        if (members.size() > config_.min_size) moves.push_back(1);
        if (members.size() < pool_.size()) moves.push_back(2);
        if (moves.empty()) { // nowhere to go, e.g. pool == min_size
            ++stagnation_;
            if (stagnation_ >= kStagnationLimit) restart(false);
            return;
        }
        int move = moves[pick(moves.size())];
        std::vector<SetMask> masks = members;
        const char* action = "";
        switch (move) {
        case 0:
            masks.push_back(random_outsider(masks));
            action = "add";
            break;
        case 1:
            masks.erase(masks.begin() + static_cast<std::ptrdiff_t>(pick(masks.size())));
            action = "remove";
            break;
        default:
            masks.erase(masks.begin() + static_cast<std::ptrdiff_t>(pick(masks.size())));
            masks.push_back(random_outsider(masks));
            action = "swap";
            break;
        }
        evaluate(std::move(masks), action);
    }

    SetMask random_outsider(const std::vector<SetMask>& members) {
        for (;;) {
            const SetMask& candidate = pool_[pick(pool_.size())];
            if (std::find(members.begin(), members.end(), candidate) ==
                members.end())
                return candidate;
        }
    }

    const Family& family_;
    const SearchConfig& config_;
    std::mt19937_64 rng_;
    std::vector<SetMask> pool_;
    Family current_;
    double current_margin_ = -std::numeric_limits<double>::infinity();
    std::size_t stagnation_ = 0;
    SearchOutcome outcome_;
};

} // namespace

SearchOutcome greedy_search(const Family& family, const SearchConfig& config) {
    validate_config(config);
    if (family.empty())
        throw std::invalid_argument("witness search needs a nonempty family");
    return GreedyState(family, config).run();
}

namespace {

void validate_epsilon(const RationalEpsilon& eps) {
    // num >= den - num is the overflow-safe form of 2*num >= den.
    if (eps.den == 0 || eps.num == 0 || eps.num >= eps.den ||
        eps.num >= eps.den - eps.num)
        throw std::invalid_argument("epsilon must satisfy 0 < num/den < 1/2");
}

} // namespace

ThresholdReport threshold_power_witness(const Family& family,
                                        const ThresholdConfig& config) {
    validate_epsilon(config.epsilon);
    if (family.empty())
        throw std::invalid_argument("threshold construction needs a nonempty family");
    if (config.copies < 1)
        throw std::invalid_argument("threshold construction needs copies >= 1");

    PowerFamily power(family, config.copies, config.cap);
    Family materialized = power.materialize(); // enforces the cap
    const std::uint64_t power_size = static_cast<std::uint64_t>(materialized.size());

    // Per-member shift sizes of the base; tuple sizes are their products.
    std::vector<std::size_t> base_shift_sizes;
    base_shift_sizes.reserve(family.size());
    for (const SetMask& member : family.sets())
        base_shift_sizes.push_back(shift_size(family, member));

    // Threshold exponent num*(N-2); nonpositive for N <= 2, where every tuple
    // qualifies because every |F^N(S)| >= 1 >= |F|^{eps(N-2)}.
    const bool positive_exponent = config.copies > 2;
    BigInt threshold;
    if (positive_exponent) {
        if (config.epsilon.num >
            std::numeric_limits<std::uint64_t>::max() /
                static_cast<std::uint64_t>(config.copies - 2))
            throw std::invalid_argument("epsilon numerator too large");
        threshold = big_pow(BigInt(family.size()),
                            config.epsilon.num *
                                static_cast<std::uint64_t>(config.copies - 2));
    }

    // Membership by tuple size: s in G iff s^den >= |F|^{num (N-2)}.
    std::map<std::uint64_t, bool> member_cache;
    auto tuple_is_member = [&](std::uint64_t s) {
        if (!positive_exponent) return true;
        auto it = member_cache.find(s);
        if (it != member_cache.end()) return it->second;
        bool member = big_pow(BigInt(s), config.epsilon.den) >= threshold;
        member_cache.emplace(s, member);
        return member;
    };

    std::vector<SetMask> witness_masks;
    std::vector<std::size_t> idx(static_cast<std::size_t>(config.copies), 0);
    std::vector<SetMask> parts;
    for (;;) {
        std::uint64_t tuple_size = 1;
        for (std::size_t j : idx) tuple_size *= base_shift_sizes[j];
        if (tuple_is_member(tuple_size)) {
            parts.clear();
            for (std::size_t j : idx) parts.push_back(family[j]);
            witness_masks.push_back(power.embed(parts));
        }
        std::size_t j = 0;
        while (j < idx.size() && ++idx[j] == family.size()) idx[j++] = 0;
        if (j == idx.size()) break;
    }

    ThresholdReport report;
    report.copies = config.copies;
    report.epsilon = config.epsilon;
    report.power_size = power_size;
    report.degenerate_copies = config.copies < 3;
    report.trivial_base = family.size() == 1;

    Family witness =
        Family::from_masks(power.ground_size(), std::move(witness_masks));
    report.witness_size = static_cast<std::uint64_t>(witness.size());

    // Exact rational comparisons: |G| <= (1/2 - num/den)|F^N| and 4|G| >= |F^N|.
    report.size_condition_met =
        BigInt(2) * config.epsilon.den * report.witness_size <=
        BigInt(config.epsilon.den - 2 * config.epsilon.num) * power_size;
    report.lower_bound_met = BigInt(4) * report.witness_size >= BigInt(power_size);

    report.certificate = verify_certificate(materialized, witness);

    if (report.size_condition_met && report.lower_bound_met &&
        report.witness_size > 1 && !report.certificate.pass)
        throw InternalContractError(
            "threshold chain audit failed: size and lower-bound conditions hold "
            "but the certificate does not pass");
    return report;
}

} // namespace halfcert
