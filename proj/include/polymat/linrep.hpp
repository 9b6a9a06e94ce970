#pragma once

#include "polymat/setfn.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace polymat {

// A vector over GF(p), entries reduced to [0, p).
using FieldVector = std::vector<std::uint32_t>;

bool is_prime(std::uint64_t p);

// Largest supported modulus; products of two entries must fit in 64 bits.
inline constexpr std::uint64_t kMaxPrime = (std::uint64_t{1} << 31) - 1;

// Reduced row echelon basis of span(vectors). Pivot search goes column by column,
// taking the first row with a nonzero entry, so equal spans give identical bases.
std::vector<FieldVector> echelon_basis(std::span<const FieldVector> vectors, std::uint32_t p);

std::size_t ff_rank(std::span<const FieldVector> vectors, std::uint32_t p);

// Basis of span(u) ∩ span(w) from the left kernel of the stacked generators [u; -w].
std::vector<FieldVector> intersection_basis(std::span<const FieldVector> u, std::span<const FieldVector> w,
                                            std::uint32_t p);

// Folds intersection_basis left to right.
std::size_t multi_intersection_dim(std::span<const std::vector<FieldVector>> subspaces, std::uint32_t p);

// A subspace arrangement (V_x) in GF(p)^d, one generator list per ground element.
class LinearRep {
public:
    LinearRep() = default;
    LinearRep(GroundSet ground, std::uint32_t p, std::size_t ambient_dim, std::vector<std::vector<FieldVector>> generators);

    const GroundSet& ground() const { return ground_; }
    std::uint32_t field() const { return p_; }
    std::size_t ambient_dim() const { return dim_; }
    const std::vector<std::vector<FieldVector>>& generators() const { return generators_; }
    const std::vector<FieldVector>& generators(std::size_t element) const { return generators_.at(element); }

    // Generators of U_A = sum of V_x over x in A.
    std::vector<FieldVector> span_of(Mask a) const;

    friend bool operator==(const LinearRep&, const LinearRep&) = default;

private:
    GroundSet ground_;
    std::uint32_t p_ = 2;
    std::size_t dim_ = 0;
    std::vector<std::vector<FieldVector>> generators_;
};

// f(X) = dim(sum of V_x, x in X).
SetFunction rep_rank_function(const LinearRep& rep);

// The symbols of the triple-intersection bounds for subsets A1, A2, A3.
struct TripleStats {
    Rational r1, r2, r3; // f(A_i)
    Rational s1, s2, s3; // f(A_j A_k)
    Rational s;          // f(A1 A2 A3)
    Rational t1, t2, t3; // r_j + r_k - s_i
    Rational alpha;      // min{r1 + r2 + r3, s1 + s2 + s3 - s}
    Rational beta;       // max{s1 + r1, s2 + r2, s3 + r3}
};

TripleStats triple_stats(const SetFunction& f, Mask a1, Mask a2, Mask a3);

struct TripleBounds {
    Rational lower;     // max{0, s - sum s_i + sum r_i}
    Rational upper;     // min{t1, t2, t3}
    std::size_t actual; // dim(U_A1 ∩ U_A2 ∩ U_A3)
    bool holds() const { return lower <= actual && actual <= upper; }
};

// Pass f = rep_rank_function(rep) when scanning many triples.
TripleBounds triple_bounds_check(const LinearRep& rep, const SetFunction& f, Mask a1, Mask a2, Mask a3);
TripleBounds triple_bounds_check(const LinearRep& rep, Mask a1, Mask a2, Mask a3);

} // namespace polymat
