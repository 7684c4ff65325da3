#ifndef HALFCERT_FAMILY_HPP
#define HALFCERT_FAMILY_HPP

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "halfcert/bigint.hpp"

namespace halfcert {

// One finite set S of elements drawn from a ground set {1,...,n}, stored as a
// fixed-width bit vector. Elements are 1-based externally, bit i-1 internally.
// Width is fixed at construction; no bit at position >= width is ever set.
// Ordering and equality compare the numeric value of the bit vector.
class SetMask {
public:
    SetMask() = default;

    explicit SetMask(int width);

    // elems are 1-based and must lie in 1..width; duplicates are fine.
    static SetMask from_elements(int width, std::span<const int> elems);
    static SetMask from_elements(int width, std::initializer_list<int> elems);

    // Full ground set {1,...,width}.
    static SetMask full(int width);

    int width() const { return width_; }
    bool contains(int elem) const;
    bool empty() const;
    int count() const;

    SetMask with(int elem) const;
    SetMask without(int elem) const;
    SetMask union_with(const SetMask& other) const;
    bool subset_of(const SetMask& other) const;

    // Same bits, wider ground set.
    SetMask widened(int new_width) const;

    // Elements as a 1-based ascending list.
    std::vector<int> elements() const;

    // Low word of the bit vector; the whole value when width <= 64.
    std::uint64_t low_word() const { return words_.empty() ? 0 : words_[0]; }

    std::strong_ordering operator<=>(const SetMask& other) const;
    bool operator==(const SetMask& other) const;

private:
    using Words = boost::container::small_vector<std::uint64_t, 2>;

    void check_element(int elem) const;

    int width_ = 0;
    Words words_; // little-endian 64-bit limbs, ceil(width/64) of them
};

// Deduplicated collection of SetMasks over a declared ground size, kept in
// canonical order (ascending bit-vector value). Immutable after construction.
class Family {
public:
    Family() = default;

    // Sorts, deduplicates, and validates widths. ground_size must be >= 1.
    static Family from_masks(int ground_size, std::vector<SetMask> masks);

    // Builds from 1-based element lists; order and duplicates are tolerated.
    static Family from_element_lists(int ground_size,
                                     const std::vector<std::vector<int>>& raw);

    int ground_size() const { return ground_size_; }
    std::size_t size() const { return sets_.size(); }
    bool empty() const { return sets_.empty(); }
    const std::vector<SetMask>& sets() const { return sets_; }
    const SetMask& operator[](std::size_t i) const { return sets_[i]; }

    bool contains(const SetMask& mask) const;
    bool subfamily_of(const Family& other) const;

    bool operator==(const Family& other) const = default;

private:
    int ground_size_ = 0;
    std::vector<SetMask> sets_;
};

// Per-element absence counts w(i) = |{S in F : i not in S}|.
struct FrequencyTable {
    int ground_size = 0;
    std::size_t family_size = 0;
    std::vector<std::size_t> absent_count; // absent_count[i-1] = w(i)
};

// canonicalize() in operation terms: Family::from_element_lists.

// F(S) = deduplicated {S ∪ member : member in F}. Never larger than F.
Family shift(const Family& fam, const SetMask& s);

// |F(S)| without building the shifted family.
std::size_t shift_size(const Family& fam, const SetMask& s);

bool is_union_closed(const Family& fam);

// Smallest union-closed superfamily of the generators. Throws
// ResourceLimitError if the closure would exceed cap members.
Family union_closure(const Family& generators, std::size_t cap = 1u << 20);

FrequencyTable frequencies(const Family& fam);

// Elements contained in at least half the sets: 2*w(i) <= |F|, exact integer
// test, ascending order. Requires a nonempty family.
std::vector<int> abundant_elements(const Family& fam);

// N-fold disjoint-copies product of a base family. Copy j of base element i
// sits at flat position i + (j-1)*n, so the product lives on ground size n*N
// and has exactly |base|^N members. Construction is cheap; only materialize()
// is gated by the cap.
class PowerFamily {
public:
    PowerFamily(Family base, int copies, std::uint64_t materialization_cap);

    const Family& base() const { return base_; }
    int copies() const { return copies_; }
    std::uint64_t materialization_cap() const { return cap_; }
    int ground_size() const { return base_.ground_size() * copies_; }

    BigInt logical_size() const; // |base|^copies

    // Flat mask of the tuple (parts[0], ..., parts[copies-1]); each part is a
    // mask over the base ground.
    SetMask embed(std::span<const SetMask> parts) const;

    // |(F^N)(S)| = prod_j |F(parts[j])|, computed without materializing.
    BigInt shift_size(std::span<const SetMask> parts) const;

    // Throws ResourceLimitError when |base|^copies exceeds the cap.
    Family materialize() const;

private:
    Family base_;
    int copies_ = 1;
    std::uint64_t cap_ = 0;
};

Family product_power(const Family& fam, int copies, std::uint64_t cap);

BigInt power_shift_size(const Family& fam, std::span<const SetMask> parts);

// All 2^n subsets of {1,...,n} in canonical order. Guarded to n <= 24.
std::vector<SetMask> all_subsets(int ground_size);

} // namespace halfcert

#endif
