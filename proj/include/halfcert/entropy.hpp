#ifndef HALFCERT_ENTROPY_HPP
#define HALFCERT_ENTROPY_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "halfcert/family.hpp"

namespace halfcert {

// Probability mass function over SetMasks. Entropies are reported in bits.
// Zero-mass entries are dropped on construction; the remaining masses must be
// positive and sum to 1 within 1e-12. Support is kept in canonical mask order.
class SetDistribution {
public:
    static constexpr double kNormalizationTolerance = 1e-12;

    SetDistribution() = default;

    static SetDistribution from_masses(
        int ground_size, std::vector<std::pair<SetMask, double>> masses);

    // Mass 1/|F| on each member. Requires a nonempty family.
    static SetDistribution uniform_on(const Family& fam);

    int ground_size() const { return ground_size_; }
    std::size_t support_size() const { return mass_.size(); }
    const std::vector<std::pair<SetMask, double>>& mass() const { return mass_; }

private:
    int ground_size_ = 0;
    std::vector<std::pair<SetMask, double>> mass_; // sorted by mask, merged
};

// The nonnegative per-element entropy shares x_1..x_n with sum H(X), plus the
// elimination order that produced them.
struct DecompositionVector {
    int ground_size = 0;
    std::vector<double> x;              // x[i-1] is the share of element i, bits
    std::vector<int> elimination_order; // permutation of 1..n, first eliminated first
    double source_entropy = 0.0;        // H(X) in bits
};

// H(X) = -sum p log2 p.
double entropy_bits(const SetDistribution& dist);

// Law of X ∪ S: outcome T collects the mass of every R with R ∪ S = T.
SetDistribution union_pushforward(const SetDistribution& dist, const SetMask& s);

// [H(X∪S) - H(X∪S∪{e})] - [H(X) - H(X∪{e})]; requires e not in S.
// Mathematically never below zero.
double submodularity_gap(const SetDistribution& dist, const SetMask& s, int e);

// Tolerances for the decomposition contract (bits, absolute).
constexpr double kEntropySlackTolerance = 1e-9;

// Eliminates elements one at a time: x_e = H(cur) - H(cur ∪ {e}), then
// continues with the eliminated coordinate stripped. Default order n..1.
// Shares in [-1e-9, 0) clamp to zero; anything lower is an internal error.
DecompositionVector decompose(const SetDistribution& dist);
DecompositionVector decompose(const SetDistribution& dist,
                              std::span<const int> elimination_order);

struct DecompositionViolation {
    SetMask subset;
    double slack = 0.0; // H(X∪S) - sum_{i not in S} x_i
};

struct DecompositionCheck {
    double worst_slack = 0.0;
    std::size_t subsets_checked = 0;
    std::vector<DecompositionViolation> violations; // canonical order
};

struct VerifyMode {
    enum class Kind { exhaustive, sample };
    Kind kind = Kind::exhaustive;
    std::size_t sample_count = 0;
    std::uint64_t seed = 0;

    static VerifyMode exhaustive() { return {}; }
    static VerifyMode sample(std::size_t count, std::uint64_t seed) {
        return {Kind::sample, count, seed};
    }
};

// Checks H(X∪S) >= sum_{i not in S} x_i over all 2^n subsets (exhaustive,
// refused for n > 24) or over seeded random subsets (sample). A subset
// violates when its slack drops below -1e-9.
DecompositionCheck verify_decomposition(const SetDistribution& dist,
                                        const DecompositionVector& vec,
                                        const VerifyMode& mode);

} // namespace halfcert

#endif
