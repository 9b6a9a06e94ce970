#pragma once

#include "polymat/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace polymat {

// Bit i set <=> element i of the owning ground set is in the subset.
using Mask = std::uint32_t;

inline constexpr std::size_t kMaxGroundSize = 16;

inline constexpr bool contains(Mask set, Mask sub) { return (set & sub) == sub; }
inline constexpr Mask bit(std::size_t i) { return Mask{1} << i; }
int popcount(Mask m);

class GroundSet {
public:
    GroundSet() = default;
    explicit GroundSet(std::vector<std::string> labels);

    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(std::size_t i) const { return labels_.at(i); }

    std::optional<std::size_t> find(std::string_view label) const;
    std::size_t index_of(std::string_view label) const; // throws InputError

    Mask full() const { return size() == 32 ? ~Mask{0} : (Mask{1} << size()) - 1; }
    std::size_t subset_count() const { return std::size_t{1} << size(); }
    bool valid(Mask m) const { return (m & ~full()) == 0; }

    Mask mask_of(std::span<const std::string> labels) const;
    std::vector<std::string> labels_of(Mask m) const;

    // Comma-separated labels, empty string is the empty set.
    Mask parse_subset(std::string_view csv) const;
    std::string format_subset(Mask m) const;

    friend bool operator==(const GroundSet&, const GroundSet&) = default;

private:
    std::vector<std::string> labels_;
};

// Exact rank table over all 2^n subsets of a ground set.
class SetFunction {
public:
    SetFunction() = default;
    SetFunction(GroundSet ground, std::vector<Rational> values);

    const GroundSet& ground() const { return ground_; }
    std::size_t size() const { return ground_.size(); }
    const Rational& operator()(Mask m) const { return values_[m]; }
    const Rational& at(Mask m) const;
    const std::vector<Rational>& values() const { return values_; }

    friend bool operator==(const SetFunction&, const SetFunction&) = default;

private:
    GroundSet ground_;
    std::vector<Rational> values_;
};

// Builds a total table from (subset, value) entries given by labels.
// Rejects unknown labels, duplicate subsets and incomplete tables.
SetFunction make_set_function(const GroundSet& ground,
                              const std::vector<std::pair<std::vector<std::string>, Rational>>& entries);

// Same, with subsets already encoded as masks.
SetFunction make_set_function(const GroundSet& ground, const std::map<Mask, Rational>& entries);

// f(Y:Z|X) = f(XY) + f(XZ) - f(XYZ) - f(X).
// conditional(f, Y, Z, 0) is f(Y:Z); conditional(f, Y, Y, X) is f(Y|X).
Rational conditional(const SetFunction& f, Mask y, Mask z, Mask x);

enum class PolymatroidMethod { direct, conditional_all, elemental };

struct PolymatroidWitness {
    enum class Kind { empty_set_nonzero, negative_conditional };
    Kind kind = Kind::negative_conditional;
    Mask x = 0;
    Mask y = 0;
    Mask z = 0;
    Rational value; // conditional(f, y, z, x) or f(empty set)
    friend bool operator==(const PolymatroidWitness&, const PolymatroidWitness&) = default;
};

struct PolymatroidVerdict {
    bool is_polymatroid = false;
    std::optional<PolymatroidWitness> witness;
    friend bool operator==(const PolymatroidVerdict&, const PolymatroidVerdict&) = default;
};

PolymatroidVerdict check_polymatroid(const SetFunction& f, PolymatroidMethod method);

// Integer valued with 0 <= f(X) <= |X|. Throws InputError if f is not a polymatroid.
bool is_matroid(const SetFunction& f);

// The restriction to the elements of s, relabelled in ground order.
SetFunction restrict(const SetFunction& f, Mask s);

// True iff f's labels all occur in g and g agrees with f on them.
bool is_extension(const SetFunction& g, const SetFunction& f);

} // namespace polymat
