#include "polymat/tensor.hpp"

#include <algorithm>
#include <bit>
#include <memory>
#include <mutex>
#include <thread>

namespace polymat {

ProductGround::ProductGround(GroundSet base) : base_(std::move(base)) {}

GroundSet ProductGround::ground() const
{
    if (size() > kMaxGroundSize)
        throw InputError("product ground too large: 3 x " + std::to_string(base_.size()) + " elements exceeds " +
                         std::to_string(kMaxGroundSize));
    std::vector<std::string> labels;
    for (int i = 1; i <= 3; ++i)
        for (const auto& l : base_.labels())
            labels.push_back(l + "@" + std::to_string(i));
    return GroundSet(std::move(labels));
}

std::uint64_t product_mask(Mask x, std::size_t n1, Mask y, std::size_t n2)
{
    std::uint64_t m = 0;
    for (std::size_t j = 0; j < n2; ++j)
        if (y & bit(j))
            m |= std::uint64_t{x} << (j * n1);
    return m;
}

ProductRank table_product_rank(const SetFunction& g, const GroundSet& base)
{
    if (g.size() != 3 * base.size())
        throw InputError("product table has " + std::to_string(g.size()) + " elements, expected " +
                         std::to_string(3 * base.size()));
    auto table = std::make_shared<const SetFunction>(g);
    return {base, [table](std::uint64_t m) { return (*table)(static_cast<Mask>(m)); }};
}

namespace {

FieldVector kron(const FieldVector& u, const FieldVector& w, std::uint32_t p)
{
    FieldVector out(u.size() * w.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = 0; j < w.size(); ++j)
            out[i * w.size() + j] = static_cast<std::uint32_t>(std::uint64_t{u[i]} * w[j] % p);
    return out;
}

} // namespace

ProductRank kronecker_u23_rank(const LinearRep& rep)
{
    // g(A1^1 A2^2 A3^3) = dim(U_A1 (x) L1 + U_A2 (x) L2 + U_A3 (x) L3); U_A bases are cached.
    const auto p = rep.field();
    const auto n = rep.ground().size();
    const auto lines = u23_rep(p);
    auto bases = std::make_shared<std::vector<std::vector<FieldVector>>>(rep.ground().subset_count());
    for (Mask a = 0; a < bases->size(); ++a)
        (*bases)[a] = echelon_basis(rep.span_of(a), p);
    return {rep.ground(), [bases, lines, n, p](std::uint64_t m) {
                const Mask part = static_cast<Mask>((std::uint64_t{1} << n) - 1);
                std::vector<FieldVector> gens;
                for (std::size_t i = 0; i < 3; ++i) {
                    const Mask a = static_cast<Mask>(m >> (i * n)) & part;
                    for (const auto& u : (*bases)[a])
                        gens.push_back(kron(u, lines.generators(i).front(), p));
                }
                return Rational(static_cast<unsigned long>(ff_rank(gens, p)));
            }};
}

SetFunction uniform_matroid(std::size_t rank, std::size_t n)
{
    if (rank > n)
        throw InputError("uniform matroid rank exceeds its size");
    std::vector<std::string> labels;
    for (std::size_t i = 1; i <= n; ++i)
        labels.push_back(std::to_string(i));
    GroundSet ground(std::move(labels));
    std::vector<Rational> values(ground.subset_count());
    for (Mask m = 0; m < values.size(); ++m)
        values[m] = static_cast<unsigned long>(std::min<std::size_t>(popcount(m), rank));
    return SetFunction(std::move(ground), std::move(values));
}

SetFunction u23() { return uniform_matroid(2, 3); }

LinearRep u23_rep(std::uint32_t p)
{
    return LinearRep(GroundSet({"1", "2", "3"}), p, 2, {{{1, 0}}, {{0, 1}}, {{1, 1}}});
}

LinearRep kronecker(const LinearRep& rep1, const LinearRep& rep2)
{
    if (rep1.field() != rep2.field())
        throw InputError("kronecker: field mismatch (GF(" + std::to_string(rep1.field()) + ") vs GF(" +
                         std::to_string(rep2.field()) + "))");
    const auto p = rep1.field();
    const auto n1 = rep1.ground().size(), n2 = rep2.ground().size();
    if (n1 * n2 > kMaxGroundSize)
        throw InputError("kronecker: product ground of " + std::to_string(n1 * n2) + " elements exceeds " +
                         std::to_string(kMaxGroundSize));
    std::vector<std::string> labels;
    std::vector<std::vector<FieldVector>> gens;
    for (std::size_t y = 0; y < n2; ++y) {
        for (std::size_t x = 0; x < n1; ++x) {
            labels.push_back(rep1.ground().label(x) + "@" + rep2.ground().label(y));
            std::vector<FieldVector> v;
            for (const auto& u : rep1.generators(x))
                for (const auto& w : rep2.generators(y))
                    v.push_back(kron(u, w, p));
            gens.push_back(std::move(v));
        }
    }
    return LinearRep(GroundSet(std::move(labels)), p, rep1.ambient_dim() * rep2.ambient_dim(), std::move(gens));
}

namespace {

void require_product_ground(const GroundSet& g, const GroundSet& e1, const GroundSet& e2)
{
    if (g.size() != e1.size() * e2.size())
        throw InputError("ground-set mismatch: product has " + std::to_string(g.size()) + " elements, expected " +
                         std::to_string(e1.size() * e2.size()));
    for (std::size_t y = 0; y < e2.size(); ++y)
        for (std::size_t x = 0; x < e1.size(); ++x) {
            const auto expected = e1.label(x) + "@" + e2.label(y);
            if (g.label(y * e1.size() + x) != expected)
                throw InputError("ground-set mismatch: expected label \"" + expected + "\" at position " +
                                 std::to_string(y * e1.size() + x) + ", found \"" + g.label(y * e1.size() + x) + "\"");
        }
}

} // namespace

TensorVerdict check_tensor_axioms(const SetFunction& g, const SetFunction& f1, const SetFunction& f2)
{
    require_product_ground(g.ground(), f1.ground(), f2.ground());
    TensorVerdict v;
    auto poly = check_polymatroid(g, PolymatroidMethod::elemental);
    if (!poly.is_polymatroid)
        v.polymatroid_failure = poly.witness;
    const auto n1 = f1.size(), n2 = f2.size();
    for (Mask x = 0; x < f1.ground().subset_count(); ++x)
        for (Mask y = 0; y < f2.ground().subset_count(); ++y)
            if (g(static_cast<Mask>(product_mask(x, n1, y, n2))) != f1(x) * f2(y))
                v.axiom_failures.emplace_back(x, y);
    v.ok = !v.polymatroid_failure && v.axiom_failures.empty();
    return v;
}

std::vector<std::pair<Mask, Mask>> tensor_axiom_failures(const ProductRank& g, const SetFunction& f)
{
    if (g.base.labels() != f.ground().labels())
        throw InputError("ground-set mismatch between product rank and base function");
    const auto n = f.size();
    std::vector<std::pair<Mask, Mask>> failures;
    for (Mask x = 0; x < f.ground().subset_count(); ++x)
        for (Mask y = 0; y < 8; ++y)
            if (g.rank(product_mask(x, n, y, 3)) != f(x) * std::min(popcount(y), 2))
                failures.emplace_back(x, y);
    return failures;
}

namespace {

std::vector<std::array<Mask, 3>> scan_bounds(const ProductRank& g, const SetFunction& f, unsigned threads)
{
    const Mask count = static_cast<Mask>(f.ground().subset_count());
    const ProductGround pg(f.ground());
    threads = std::max(1u, std::min<unsigned>(threads, count));
    std::vector<std::vector<std::array<Mask, 3>>> found(threads);
    auto work = [&](unsigned t) {
        for (Mask a1 = t; a1 < count; a1 += threads)
            for (Mask a2 = 0; a2 < count; ++a2)
                for (Mask a3 = 0; a3 < count; ++a3) {
                    const auto stats = triple_stats(f, a1, a2, a3);
                    const auto value = g.rank(pg.encode(a1, a2, a3));
                    if (value < stats.beta || value > stats.alpha)
                        found[t].push_back({a1, a2, a3});
                }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(work, t);
        for (auto& th : pool)
            th.join();
    }
    std::vector<std::array<Mask, 3>> all;
    for (auto& part : found)
        all.insert(all.end(), part.begin(), part.end());
    std::sort(all.begin(), all.end());
    return all;
}

} // namespace

TensorVerdict check_gentens_bounds(const SetFunction& g, const SetFunction& f, unsigned threads)
{
    auto v = check_tensor_axioms(g, f, u23());
    if (!v.ok) {
        v.precondition_ok = false;
        return v;
    }
    v.bound_failures = scan_bounds(table_product_rank(g, f.ground()), f, threads);
    v.ok = v.bound_failures.empty();
    return v;
}

TensorVerdict check_gentens_bounds(const ProductRank& g, const SetFunction& f, unsigned threads)
{
    TensorVerdict v;
    v.axiom_failures = tensor_axiom_failures(g, f);
    if (!v.axiom_failures.empty()) {
        v.precondition_ok = false;
        return v;
    }
    v.bound_failures = scan_bounds(g, f, threads);
    v.ok = v.bound_failures.empty();
    return v;
}

} // namespace polymat
