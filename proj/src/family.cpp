#include "halfcert/family.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>
#include <string>

#include "halfcert/errors.hpp"

namespace halfcert {

namespace {

int words_for(int width) { return (width + 63) / 64; }

} // namespace

SetMask::SetMask(int width) : width_(width) {
    if (width < 0) throw std::invalid_argument("SetMask width must be >= 0");
    words_.assign(static_cast<std::size_t>(words_for(width)), 0);
}

void SetMask::check_element(int elem) const {
    if (elem < 1 || elem > width_)
        throw std::invalid_argument("element " + std::to_string(elem) +
                                    " outside ground set 1.." +
                                    std::to_string(width_));
}

SetMask SetMask::from_elements(int width, std::span<const int> elems) {
    SetMask m(width);
    for (int e : elems) {
        m.check_element(e);
        m.words_[static_cast<std::size_t>((e - 1) >> 6)] |=
            std::uint64_t{1} << ((e - 1) & 63);
    }
    return m;
}

SetMask SetMask::from_elements(int width, std::initializer_list<int> elems) {
    return from_elements(width, std::span<const int>(elems.begin(), elems.size()));
}

SetMask SetMask::full(int width) {
    SetMask m(width);
    for (int e = 1; e <= width; ++e)
        m.words_[static_cast<std::size_t>((e - 1) >> 6)] |=
            std::uint64_t{1} << ((e - 1) & 63);
    return m;
}

bool SetMask::contains(int elem) const {
    if (elem < 1 || elem > width_) return false;
    return (words_[static_cast<std::size_t>((elem - 1) >> 6)] >>
            ((elem - 1) & 63)) & 1u;
}

bool SetMask::empty() const {
    for (std::uint64_t w : words_)
        if (w != 0) return false;
    return true;
}

int SetMask::count() const {
    int c = 0;
    for (std::uint64_t w : words_) c += std::popcount(w);
    return c;
}

SetMask SetMask::with(int elem) const {
    check_element(elem);
    SetMask m = *this;
    m.words_[static_cast<std::size_t>((elem - 1) >> 6)] |=
        std::uint64_t{1} << ((elem - 1) & 63);
    return m;
}

SetMask SetMask::without(int elem) const {
    check_element(elem);
    SetMask m = *this;
    m.words_[static_cast<std::size_t>((elem - 1) >> 6)] &=
        ~(std::uint64_t{1} << ((elem - 1) & 63));
    return m;
}

SetMask SetMask::union_with(const SetMask& other) const {
    if (width_ != other.width_)
        throw std::invalid_argument("SetMask width mismatch in union");
    SetMask m = *this;
    for (std::size_t i = 0; i < m.words_.size(); ++i)
        m.words_[i] |= other.words_[i];
    return m;
}

bool SetMask::subset_of(const SetMask& other) const {
    if (width_ != other.width_)
        throw std::invalid_argument("SetMask width mismatch in subset test");
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & ~other.words_[i]) return false;
    return true;
}

SetMask SetMask::widened(int new_width) const {
    if (new_width < width_)
        throw std::invalid_argument("widened() cannot shrink a SetMask");
    SetMask m(new_width);
    std::copy(words_.begin(), words_.end(), m.words_.begin());
    return m;
}

std::vector<int> SetMask::elements() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(count()));
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
        std::uint64_t w = words_[wi];
        while (w != 0) {
            int bit = std::countr_zero(w);
            out.push_back(static_cast<int>(wi * 64) + bit + 1);
            w &= w - 1;
        }
    }
    return out;
}

std::strong_ordering SetMask::operator<=>(const SetMask& other) const {
    std::size_t n = std::max(words_.size(), other.words_.size());
    for (std::size_t i = n; i-- > 0;) {
        std::uint64_t a = i < words_.size() ? words_[i] : 0;
        std::uint64_t b = i < other.words_.size() ? other.words_[i] : 0;
        if (a != b) return a < b ? std::strong_ordering::less
                                 : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

bool SetMask::operator==(const SetMask& other) const {
    return (*this <=> other) == std::strong_ordering::equal;
}

Family Family::from_masks(int ground_size, std::vector<SetMask> masks) {
    if (ground_size <= 0)
        throw std::invalid_argument("family ground size must be positive");
    for (const SetMask& m : masks)
        if (m.width() != ground_size)
            throw std::invalid_argument("family member width mismatch");
    std::sort(masks.begin(), masks.end());
    masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
    Family fam;
    fam.ground_size_ = ground_size;
    fam.sets_ = std::move(masks);
    return fam;
}

Family Family::from_element_lists(int ground_size,
                                  const std::vector<std::vector<int>>& raw) {
    std::vector<SetMask> masks;
    masks.reserve(raw.size());
    for (const auto& elems : raw)
        masks.push_back(SetMask::from_elements(ground_size, elems));
    return from_masks(ground_size, std::move(masks));
}

bool Family::contains(const SetMask& mask) const {
    return std::binary_search(sets_.begin(), sets_.end(), mask);
}

bool Family::subfamily_of(const Family& other) const {
    if (ground_size_ != other.ground_size_) return false;
    for (const SetMask& m : sets_)
        if (!other.contains(m)) return false;
    return true;
}

Family shift(const Family& fam, const SetMask& s) {
    if (s.width() != fam.ground_size())
        throw std::invalid_argument("shift mask width mismatch");
    std::vector<SetMask> out;
    out.reserve(fam.size());
    for (const SetMask& m : fam.sets()) out.push_back(m.union_with(s));
    return Family::from_masks(fam.ground_size(), std::move(out));
}

namespace {

// Counting path for single-word grounds: distinct values of (member | s).
std::size_t shift_size_one_word(const Family& fam, std::uint64_t s_word,
                                int width) {
    // Stamp table when the whole power set fits comfortably.
    if (width <= 20) {
        thread_local std::vector<std::uint32_t> stamps;
        thread_local std::uint32_t epoch = 0;
        const std::size_t span = std::size_t{1} << width;
        if (stamps.size() < span) stamps.assign(span, 0);
        if (++epoch == 0) { // stamp wraparound
            std::fill(stamps.begin(), stamps.end(), 0);
            epoch = 1;
        }
        std::size_t distinct = 0;
        for (const SetMask& m : fam.sets()) {
            std::uint64_t v = m.low_word() | s_word;
            if (stamps[v] != epoch) {
                stamps[v] = epoch;
                ++distinct;
            }
        }
        return distinct;
    }
    thread_local std::vector<std::uint64_t> scratch;
    scratch.clear();
    scratch.reserve(fam.size());
    for (const SetMask& m : fam.sets()) scratch.push_back(m.low_word() | s_word);
    std::sort(scratch.begin(), scratch.end());
    return static_cast<std::size_t>(
        std::unique(scratch.begin(), scratch.end()) - scratch.begin());
}

} // namespace

std::size_t shift_size(const Family& fam, const SetMask& s) {
    if (s.width() != fam.ground_size())
        throw std::invalid_argument("shift mask width mismatch");
    if (fam.ground_size() <= 64)
        return shift_size_one_word(fam, s.low_word(), fam.ground_size());
    return shift(fam, s).size();
}

bool is_union_closed(const Family& fam) {
    const auto& sets = fam.sets();
    for (std::size_t i = 0; i < sets.size(); ++i)
        for (std::size_t j = i + 1; j < sets.size(); ++j)
            if (!fam.contains(sets[i].union_with(sets[j]))) return false;
    return true;
}

Family union_closure(const Family& generators, std::size_t cap) {
    if (generators.empty())
        throw std::invalid_argument("union_closure requires nonempty generators");
    std::set<SetMask> closed(generators.sets().begin(), generators.sets().end());
    std::vector<SetMask> frontier(closed.begin(), closed.end());
    while (!frontier.empty()) {
        std::vector<SetMask> fresh;
        for (const SetMask& a : frontier) {
            for (const SetMask& b : closed) {
                SetMask u = a.union_with(b);
                if (closed.insert(u).second) {
                    if (closed.size() > cap)
                        throw ResourceLimitError(
                            "union closure exceeds cap of " +
                            std::to_string(cap) + " sets");
                    fresh.push_back(std::move(u));
                }
            }
        }
        frontier = std::move(fresh);
    }
    return Family::from_masks(generators.ground_size(),
                              std::vector<SetMask>(closed.begin(), closed.end()));
}

FrequencyTable frequencies(const Family& fam) {
    FrequencyTable table;
    table.ground_size = fam.ground_size();
    table.family_size = fam.size();
    table.absent_count.assign(static_cast<std::size_t>(fam.ground_size()), 0);
    for (const SetMask& m : fam.sets())
        for (int i = 1; i <= fam.ground_size(); ++i)
            if (!m.contains(i)) ++table.absent_count[static_cast<std::size_t>(i - 1)];
    return table;
}

std::vector<int> abundant_elements(const Family& fam) {
    if (fam.empty())
        throw std::invalid_argument("abundant_elements requires a nonempty family");
    FrequencyTable table = frequencies(fam);
    std::vector<int> out;
    for (int i = 1; i <= fam.ground_size(); ++i)
        if (2 * table.absent_count[static_cast<std::size_t>(i - 1)] <=
            table.family_size)
            out.push_back(i);
    return out;
}

PowerFamily::PowerFamily(Family base, int copies, std::uint64_t cap)
    : base_(std::move(base)), copies_(copies), cap_(cap) {
    if (base_.empty())
        throw std::invalid_argument("power family requires a nonempty base");
    if (copies_ < 1)
        throw std::invalid_argument("power family requires copies >= 1");
    if (cap_ == 0) throw std::invalid_argument("materialization cap must be positive");
}

BigInt PowerFamily::logical_size() const {
    return big_pow(BigInt(base_.size()), static_cast<std::uint64_t>(copies_));
}

SetMask PowerFamily::embed(std::span<const SetMask> parts) const {
    if (static_cast<int>(parts.size()) != copies_)
        throw std::invalid_argument("embed expects one part per copy");
    const int n = base_.ground_size();
    SetMask out(ground_size());
    for (int j = 0; j < copies_; ++j) {
        if (parts[static_cast<std::size_t>(j)].width() != n)
            throw std::invalid_argument("embed part width mismatch");
        for (int e : parts[static_cast<std::size_t>(j)].elements())
            out = out.with(e + j * n);
    }
    return out;
}

BigInt PowerFamily::shift_size(std::span<const SetMask> parts) const {
    if (static_cast<int>(parts.size()) != copies_)
        throw std::invalid_argument("shift_size expects one part per copy");
    BigInt product = 1;
    for (const SetMask& part : parts)
        product *= BigInt(halfcert::shift_size(base_, part));
    return product;
}

Family PowerFamily::materialize() const {
    if (logical_size() > BigInt(cap_))
        throw ResourceLimitError("power family of " + logical_size().str() +
                                 " sets exceeds cap of " + std::to_string(cap_));
    const std::size_t k = base_.size();
    std::vector<SetMask> members;
    members.reserve(static_cast<std::size_t>(logical_size()));
    std::vector<std::size_t> idx(static_cast<std::size_t>(copies_), 0);
    for (;;) {
        std::vector<SetMask> parts;
        parts.reserve(idx.size());
        for (std::size_t j = 0; j < idx.size(); ++j) parts.push_back(base_[idx[j]]);
        members.push_back(embed(parts));
        // odometer over tuples
        std::size_t j = 0;
        while (j < idx.size() && ++idx[j] == k) idx[j++] = 0;
        if (j == idx.size()) break;
    }
    Family out = Family::from_masks(ground_size(), std::move(members));
    if (BigInt(out.size()) != logical_size())
        throw InternalContractError("power family tuples collapsed");
    return out;
}

Family product_power(const Family& fam, int copies, std::uint64_t cap) {
    return PowerFamily(fam, copies, cap).materialize();
}

BigInt power_shift_size(const Family& fam, std::span<const SetMask> parts) {
    if (parts.empty())
        throw std::invalid_argument("power_shift_size requires at least one part");
    BigInt product = 1;
    for (const SetMask& part : parts)
        product *= BigInt(shift_size(fam, part));
    return product;
}

std::vector<SetMask> all_subsets(int ground_size) {
    if (ground_size <= 0)
        throw std::invalid_argument("ground size must be positive");
    if (ground_size > 24)
        throw ResourceLimitError("refusing to enumerate 2^" +
                                 std::to_string(ground_size) + " subsets");
    std::vector<SetMask> out;
    out.reserve(std::size_t{1} << ground_size);
    std::vector<int> elems;
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << ground_size); ++v) {
        elems.clear();
        for (int i = 0; i < ground_size; ++i)
            if ((v >> i) & 1u) elems.push_back(i + 1);
        out.push_back(SetMask::from_elements(ground_size, elems));
    }
    return out;
}

} // namespace halfcert
