#pragma once

#include "polymat/linrep.hpp"
#include "polymat/setfn.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace polymat {

// E x {1,2,3}; element (x, i) sits at index (i-1)*n + index(x).
class ProductGround {
public:
    explicit ProductGround(GroundSet base);

    const GroundSet& base() const { return base_; }
    std::size_t base_size() const { return base_.size(); }
    std::size_t size() const { return 3 * base_.size(); }

    // Labels "x@1", "x@2", "x@3". Throws InputError when 3n exceeds the table cap.
    GroundSet ground() const;

    // Mask of A1^1 A2^2 A3^3.
    std::uint64_t encode(Mask a1, Mask a2, Mask a3) const
    {
        const auto n = base_.size();
        return std::uint64_t{a1} | (std::uint64_t{a2} << n) | (std::uint64_t{a3} << (2 * n));
    }

private:
    GroundSet base_;
};

// Mask of X x Y inside E1 x E2, with (x, y) at index index(y)*n1 + index(x).
std::uint64_t product_mask(Mask x, std::size_t n1, Mask y, std::size_t n2);

// A rank function on E x {1,2,3} that may be too large to tabulate.
struct ProductRank {
    GroundSet base;
    std::function<Rational(std::uint64_t)> rank;
};

ProductRank table_product_rank(const SetFunction& g, const GroundSet& base);

// The rank function of kronecker(rep, u23_rep(p)) evaluated on demand; works past the table cap.
ProductRank kronecker_u23_rank(const LinearRep& rep);

SetFunction u23();
SetFunction uniform_matroid(std::size_t rank, std::size_t n);

LinearRep u23_rep(std::uint32_t p);

// Ground E1 x E2 labelled "x@y"; V_(x,y) spanned by u (x) w, u outer, w inner.
LinearRep kronecker(const LinearRep& rep1, const LinearRep& rep2);

struct TensorVerdict {
    bool ok = false;
    bool precondition_ok = true;                        // for checks that need a tensor product first
    std::optional<PolymatroidWitness> polymatroid_failure;
    std::vector<std::pair<Mask, Mask>> axiom_failures;  // g(X x Y) != f1(X) f2(Y)
    std::vector<std::array<Mask, 3>> bound_failures;    // beta <= g(A1^1 A2^2 A3^3) <= alpha violated
    friend bool operator==(const TensorVerdict&, const TensorVerdict&) = default;
};

// g is a polymatroid on E1 x E2 with g(X x Y) = f1(X) f2(Y) for every X, Y.
TensorVerdict check_tensor_axioms(const SetFunction& g, const SetFunction& f1, const SetFunction& f2);

// Only the product identities; for oracles whose polymatroid property is known by construction.
std::vector<std::pair<Mask, Mask>> tensor_axiom_failures(const ProductRank& g, const SetFunction& f);

// Checks beta <= g(A1^1 A2^2 A3^3) <= alpha over all 8^n triples. The tensor-product
// precondition is checked first and reported through precondition_ok.
TensorVerdict check_gentens_bounds(const SetFunction& g, const SetFunction& f, unsigned threads = 1);

// Oracle form for product grounds beyond the table cap. Only the product identities are
// checked as precondition; a representation-induced g is a polymatroid by construction.
TensorVerdict check_gentens_bounds(const ProductRank& g, const SetFunction& f, unsigned threads = 1);

} // namespace polymat
