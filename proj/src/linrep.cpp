#include "polymat/linrep.hpp"

#include <algorithm>
#include <bit>

namespace polymat {

bool is_prime(std::uint64_t p)
{
    if (p < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0)
            return false;
    return true;
}

namespace {

std::uint32_t mul(std::uint32_t a, std::uint32_t b, std::uint32_t p)
{
    return static_cast<std::uint32_t>(std::uint64_t{a} * b % p);
}

std::uint32_t sub(std::uint32_t a, std::uint32_t b, std::uint32_t p) { return a >= b ? a - b : a + p - b; }

std::uint32_t inverse(std::uint32_t a, std::uint32_t p)
{
    // Fermat: a^(p-2).
    std::uint64_t result = 1, base = a % p;
    for (std::uint64_t e = p - 2; e; e >>= 1) {
        if (e & 1)
            result = result * base % p;
        base = base * base % p;
    }
    return static_cast<std::uint32_t>(result);
}

void check_field(std::uint32_t p)
{
    if (p > kMaxPrime || !is_prime(p))
        throw InputError("field modulus " + std::to_string(p) + " is not a supported prime");
}

std::size_t common_dim(std::span<const FieldVector> vectors, std::size_t dim, std::uint32_t p)
{
    for (const auto& v : vectors) {
        if (v.size() != dim)
            throw InputError("ragged vectors: expected length " + std::to_string(dim) + ", got " +
                             std::to_string(v.size()));
        for (auto e : v)
            if (e >= p)
                throw InputError("vector entry " + std::to_string(e) + " not reduced mod " + std::to_string(p));
    }
    return dim;
}

// In-place reduced row echelon form; returns the pivot columns. When track is given, the same
// row operations are applied to it (used for kernels).
std::vector<std::size_t> rref(std::vector<FieldVector>& rows, std::uint32_t p, std::vector<FieldVector>* track = nullptr)
{
    std::vector<std::size_t> pivots;
    if (rows.empty())
        return pivots;
    const std::size_t cols = rows.front().size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t sel = r;
        while (sel < rows.size() && rows[sel][c] == 0)
            ++sel;
        if (sel == rows.size())
            continue;
        std::swap(rows[r], rows[sel]);
        if (track)
            std::swap((*track)[r], (*track)[sel]);
        const auto inv = inverse(rows[r][c], p);
        for (auto& e : rows[r])
            e = mul(e, inv, p);
        if (track)
            for (auto& e : (*track)[r])
                e = mul(e, inv, p);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0)
                continue;
            const auto factor = rows[i][c];
            for (std::size_t k = 0; k < cols; ++k)
                rows[i][k] = sub(rows[i][k], mul(factor, rows[r][k], p), p);
            if (track)
                for (std::size_t k = 0; k < (*track)[i].size(); ++k)
                    (*track)[i][k] = sub((*track)[i][k], mul(factor, (*track)[r][k], p), p);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

} // namespace

std::vector<FieldVector> echelon_basis(std::span<const FieldVector> vectors, std::uint32_t p)
{
    check_field(p);
    if (vectors.empty())
        return {};
    common_dim(vectors, vectors.front().size(), p);
    std::vector<FieldVector> rows(vectors.begin(), vectors.end());
    const auto pivots = rref(rows, p);
    rows.resize(pivots.size());
    return rows;
}

std::size_t ff_rank(std::span<const FieldVector> vectors, std::uint32_t p)
{
    return echelon_basis(vectors, p).size();
}

std::vector<FieldVector> intersection_basis(std::span<const FieldVector> u, std::span<const FieldVector> w,
                                            std::uint32_t p)
{
    check_field(p);
    auto bu = echelon_basis(u, p);
    auto bw = echelon_basis(w, p);
    if (bu.empty() || bw.empty())
        return {};
    if (bu.front().size() != bw.front().size())
        throw InputError("intersection of subspaces with different ambient dimensions");
    const std::size_t a = bu.size(), b = bw.size(), total = a + b;

    // Rows [u_i; -w_j] with an identity tracker; zero rows after elimination give (lambda, mu)
    // with sum lambda_i u_i = sum mu_j w_j.
    std::vector<FieldVector> stacked;
    stacked.reserve(total);
    for (const auto& v : bu)
        stacked.push_back(v);
    for (const auto& v : bw) {
        FieldVector neg(v.size());
        for (std::size_t k = 0; k < v.size(); ++k)
            neg[k] = v[k] == 0 ? 0 : p - v[k];
        stacked.push_back(std::move(neg));
    }
    std::vector<FieldVector> track(total, FieldVector(total, 0));
    for (std::size_t i = 0; i < total; ++i)
        track[i][i] = 1;
    const auto rank = rref(stacked, p, &track).size();

    std::vector<FieldVector> meet;
    for (std::size_t r = rank; r < total; ++r) {
        FieldVector v(bu.front().size(), 0);
        for (std::size_t i = 0; i < a; ++i) {
            if (track[r][i] == 0)
                continue;
            for (std::size_t k = 0; k < v.size(); ++k)
                v[k] = (v[k] + mul(track[r][i], bu[i][k], p)) % p;
        }
        meet.push_back(std::move(v));
    }
    return echelon_basis(meet, p);
}

std::size_t multi_intersection_dim(std::span<const std::vector<FieldVector>> subspaces, std::uint32_t p)
{
    if (subspaces.empty())
        throw InputError("multi_intersection_dim needs at least one subspace");
    auto acc = echelon_basis(subspaces.front(), p);
    for (std::size_t i = 1; i < subspaces.size(); ++i)
        acc = intersection_basis(acc, subspaces[i], p);
    return acc.size();
}

LinearRep::LinearRep(GroundSet ground, std::uint32_t p, std::size_t ambient_dim,
                     std::vector<std::vector<FieldVector>> generators)
    : ground_(std::move(ground)), p_(p), dim_(ambient_dim), generators_(std::move(generators))
{
    check_field(p_);
    if (generators_.size() != ground_.size())
        throw InputError("representation needs one generator list per ground element");
    for (const auto& gens : generators_)
        common_dim(gens, dim_, p_);
}

std::vector<FieldVector> LinearRep::span_of(Mask a) const
{
    std::vector<FieldVector> out;
    for (std::size_t i = 0; i < ground_.size(); ++i)
        if (a & bit(i))
            out.insert(out.end(), generators_[i].begin(), generators_[i].end());
    return out;
}

SetFunction rep_rank_function(const LinearRep& rep)
{
    // Grow bases along the lowest-bit recursion: basis(A) = echelon(basis(A \ lowest) + V_lowest).
    const auto count = rep.ground().subset_count();
    std::vector<std::vector<FieldVector>> basis(count);
    std::vector<Rational> values(count);
    for (Mask m = 1; m < count; ++m) {
        const Mask low = m & (~m + 1);
        const auto i = static_cast<std::size_t>(std::countr_zero(low));
        std::vector<FieldVector> gens = basis[m ^ low];
        const auto& extra = rep.generators(i);
        gens.insert(gens.end(), extra.begin(), extra.end());
        basis[m] = echelon_basis(gens, rep.field());
        values[m] = static_cast<unsigned long>(basis[m].size());
    }
    return SetFunction(rep.ground(), std::move(values));
}

TripleStats triple_stats(const SetFunction& f, Mask a1, Mask a2, Mask a3)
{
    TripleStats t;
    t.r1 = f.at(a1);
    t.r2 = f.at(a2);
    t.r3 = f.at(a3);
    t.s1 = f(a2 | a3);
    t.s2 = f(a1 | a3);
    t.s3 = f(a1 | a2);
    t.s = f(a1 | a2 | a3);
    t.t1 = t.r2 + t.r3 - t.s1;
    t.t2 = t.r1 + t.r3 - t.s2;
    t.t3 = t.r1 + t.r2 - t.s3;
    t.alpha = std::min<Rational>(t.r1 + t.r2 + t.r3, t.s1 + t.s2 + t.s3 - t.s);
    t.beta = std::max<Rational>({t.s1 + t.r1, t.s2 + t.r2, t.s3 + t.r3});
    return t;
}

TripleBounds triple_bounds_check(const LinearRep& rep, const SetFunction& f, Mask a1, Mask a2, Mask a3)
{
    const auto t = triple_stats(f, a1, a2, a3);
    TripleBounds out;
    out.lower = std::max<Rational>(0, t.s - t.s1 - t.s2 - t.s3 + t.r1 + t.r2 + t.r3);
    out.upper = std::min<Rational>({t.t1, t.t2, t.t3});
    const std::vector<std::vector<FieldVector>> spaces{rep.span_of(a1), rep.span_of(a2), rep.span_of(a3)};
    out.actual = multi_intersection_dim(spaces, rep.field());
    return out;
}

TripleBounds triple_bounds_check(const LinearRep& rep, Mask a1, Mask a2, Mask a3)
{
    return triple_bounds_check(rep, rep_rank_function(rep), a1, a2, a3);
}

} // namespace polymat
