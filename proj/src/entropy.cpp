#include "halfcert/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

#include "halfcert/errors.hpp"
#include "stable_sum.hpp"

namespace halfcert {

SetDistribution SetDistribution::from_masses(
    int ground_size, std::vector<std::pair<SetMask, double>> masses) {
    if (ground_size <= 0)
        throw std::invalid_argument("distribution ground size must be positive");
    for (auto& [mask, p] : masses) {
        if (mask.width() != ground_size)
            throw std::invalid_argument("distribution mask width mismatch");
        if (!(p >= 0.0))
            throw std::invalid_argument("distribution mass must be nonnegative");
    }
    std::erase_if(masses, [](const auto& entry) { return entry.second == 0.0; });
    if (masses.empty())
        throw std::invalid_argument("distribution needs positive total mass");
    std::sort(masses.begin(), masses.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    // merge duplicate outcomes
    std::vector<std::pair<SetMask, double>> merged;
    merged.reserve(masses.size());
    for (auto& entry : masses) {
        if (!merged.empty() && merged.back().first == entry.first)
            merged.back().second += entry.second;
        else
            merged.push_back(std::move(entry));
    }
    std::vector<double> ps;
    ps.reserve(merged.size());
    for (const auto& [mask, p] : merged) ps.push_back(p);
    double total = detail::stable_sum(std::move(ps));
    if (std::abs(total - 1.0) > kNormalizationTolerance)
        throw std::invalid_argument("distribution masses sum to " +
                                    std::to_string(total) + ", not 1");
    SetDistribution d;
    d.ground_size_ = ground_size;
    d.mass_ = std::move(merged);
    return d;
}

SetDistribution SetDistribution::uniform_on(const Family& fam) {
    if (fam.empty())
        throw std::invalid_argument("uniform distribution needs a nonempty family");
    std::vector<std::pair<SetMask, double>> masses;
    masses.reserve(fam.size());
    const double p = 1.0 / static_cast<double>(fam.size());
    for (const SetMask& m : fam.sets()) masses.emplace_back(m, p);
    return from_masses(fam.ground_size(), std::move(masses));
}

double entropy_bits(const SetDistribution& dist) {
    std::vector<double> terms;
    terms.reserve(dist.support_size());
    for (const auto& [mask, p] : dist.mass()) terms.push_back(-p * std::log2(p));
    return detail::stable_sum(std::move(terms));
}

SetDistribution union_pushforward(const SetDistribution& dist, const SetMask& s) {
    if (s.width() != dist.ground_size())
        throw std::invalid_argument("pushforward mask width mismatch");
    std::vector<std::pair<SetMask, double>> masses;
    masses.reserve(dist.support_size());
    for (const auto& [mask, p] : dist.mass())
        masses.emplace_back(mask.union_with(s), p);
    return SetDistribution::from_masses(dist.ground_size(), std::move(masses));
}

double submodularity_gap(const SetDistribution& dist, const SetMask& s, int e) {
    if (s.contains(e))
        throw std::invalid_argument("submodularity_gap requires e outside S");
    if (e < 1 || e > dist.ground_size())
        throw std::invalid_argument("element outside ground set");
    SetDistribution with_s = union_pushforward(dist, s);
    SetDistribution with_e = union_pushforward(dist, SetMask(dist.ground_size()).with(e));
    SetDistribution with_both = union_pushforward(with_s, SetMask(dist.ground_size()).with(e));
    double near = entropy_bits(dist) - entropy_bits(with_e);
    double far = entropy_bits(with_s) - entropy_bits(with_both);
    return far - near;
}

namespace {

// Relabels outcomes by dropping element e; every outcome must contain e, so
// this is a bijection and masses transfer one-to-one.
SetDistribution strip_element(const SetDistribution& dist, int e) {
    std::vector<std::pair<SetMask, double>> masses;
    masses.reserve(dist.support_size());
    for (const auto& [mask, p] : dist.mass())
        masses.emplace_back(mask.without(e), p);
    return SetDistribution::from_masses(dist.ground_size(), std::move(masses));
}

} // namespace

DecompositionVector decompose(const SetDistribution& dist) {
    std::vector<int> order(static_cast<std::size_t>(dist.ground_size()));
    std::iota(order.rbegin(), order.rend(), 1); // n, n-1, ..., 1
    return decompose(dist, order);
}

DecompositionVector decompose(const SetDistribution& dist,
                              std::span<const int> elimination_order) {
    const int n = dist.ground_size();
    if (static_cast<int>(elimination_order.size()) != n)
        throw std::invalid_argument("elimination order must cover the ground set");
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int e : elimination_order) {
        if (e < 1 || e > n || seen[static_cast<std::size_t>(e - 1)])
            throw std::invalid_argument("elimination order must be a permutation of 1..n");
        seen[static_cast<std::size_t>(e - 1)] = true;
    }

    DecompositionVector vec;
    vec.ground_size = n;
    vec.x.assign(static_cast<std::size_t>(n), 0.0);
    vec.elimination_order.assign(elimination_order.begin(), elimination_order.end());
    vec.source_entropy = entropy_bits(dist);

    SetDistribution current = dist;
    double current_entropy = vec.source_entropy;
    for (int e : elimination_order) {
        SetDistribution pushed =
            union_pushforward(current, SetMask(n).with(e));
        double pushed_entropy = entropy_bits(pushed);
        double share = current_entropy - pushed_entropy;
        if (share < -kEntropySlackTolerance)
            throw InternalContractError(
                "negative entropy share " + std::to_string(share) +
                " for element " + std::to_string(e));
        vec.x[static_cast<std::size_t>(e - 1)] = std::max(share, 0.0);
        current = strip_element(pushed, e);
        current_entropy = pushed_entropy;
    }
    return vec;
}

namespace {

double slack_for_subset(const SetDistribution& dist,
                        const DecompositionVector& vec, const SetMask& subset) {
    double pushed_entropy = entropy_bits(union_pushforward(dist, subset));
    double outside = 0.0;
    for (int i = 1; i <= vec.ground_size; ++i)
        if (!subset.contains(i)) outside += vec.x[static_cast<std::size_t>(i - 1)];
    return pushed_entropy - outside;
}

} // namespace

DecompositionCheck verify_decomposition(const SetDistribution& dist,
                                        const DecompositionVector& vec,
                                        const VerifyMode& mode) {
    const int n = dist.ground_size();
    if (vec.ground_size != n)
        throw std::invalid_argument("decomposition ground size mismatch");
    if (static_cast<int>(vec.x.size()) != n)
        throw std::invalid_argument("decomposition vector has wrong length");

    DecompositionCheck check;
    check.worst_slack = std::numeric_limits<double>::infinity();
    auto record = [&](const SetMask& subset) {
        double slack = slack_for_subset(dist, vec, subset);
        check.worst_slack = std::min(check.worst_slack, slack);
        if (slack < -kEntropySlackTolerance)
            check.violations.push_back({subset, slack});
        ++check.subsets_checked;
    };

    std::vector<int> elems;
    if (mode.kind == VerifyMode::Kind::exhaustive) {
        if (n > 24)
            throw ResourceLimitError(
                "exhaustive decomposition check refused for n > 24 (n = " +
                std::to_string(n) + ")");
        // canonical ascending order, one mask at a time
        for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
            elems.clear();
            for (int i = 0; i < n; ++i)
                if ((v >> i) & 1u) elems.push_back(i + 1);
            record(SetMask::from_elements(n, elems));
        }
    } else {
        if (mode.sample_count == 0)
            throw std::invalid_argument("sample mode needs at least one subset");
        std::mt19937_64 rng(mode.seed);
        std::set<SetMask> drawn;
        for (std::size_t k = 0; k < mode.sample_count; ++k) {
            elems.clear();
            for (int i = 1; i <= n; ++i)
                if (rng() & 1u) elems.push_back(i);
            drawn.insert(SetMask::from_elements(n, elems));
        }
        for (const SetMask& subset : drawn) record(subset);
    }
    return check;
}

} // namespace halfcert
