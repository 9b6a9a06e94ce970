#include "oracles.hpp"

#include "polymat/ci.hpp"
#include "polymat/corpus.hpp"
#include "polymat/ingleton.hpp"

#include <doctest.h>

#include <random>

using namespace polymat;

namespace {

SetFunction kron_table(const LinearRep& rep) { return rep_rank_function(kronecker(rep, u23_rep(rep.field()))); }

// V_a = span{e1,e2}, V_b = span{e2,e3}, V_z = span{e2}.
SetFunction pair_with_z()
{
    return rep_rank_function(
        LinearRep(GroundSet({"a", "b", "z"}), 2, 3, {{{1, 0, 0}, {0, 1, 0}}, {{0, 1, 0}, {0, 0, 1}}, {{0, 1, 0}}}));
}

} // namespace

TEST_CASE("is_common_information on hand-built extensions")
{
    const auto f = pair_with_z();
    const auto ok = is_common_information(f, "z", 0b01, 0b10);
    CHECK(ok.valid());
    CHECK(f(0b100) == 1);

    const auto same = is_common_information(f, "z", 0b01, 0b01);
    CHECK_FALSE(same.valid());
    CHECK(same.gap == -1);

    const auto u = rep_rank_function(LinearRep(GroundSet({"1", "2", "3", "z"}), 2, 2,
                                               {{{1, 0}}, {{0, 1}}, {{1, 1}}, {}}));
    const auto zero = is_common_information(u, "z", 0b001, 0b010);
    CHECK(zero.valid());
    CHECK(zero.gap == 0);
    CHECK(zero.given_x == 0);

    CHECK_THROWS_AS(is_common_information(f, "w", 0b01, 0b10), InputError);
    CHECK_THROWS_AS(is_common_information(f, "z", 0b101, 0b10), InputError);
}

TEST_CASE("linear_ci_extension")
{
    const auto ext = linear_ci_extension(corpus::pair_rep(), 0b01, 0b10);
    CHECK(ext.ground().labels().back() == "z");
    CHECK(echelon_basis(ext.generators(2), 2) == std::vector<FieldVector>{{0, 1, 0}});
    const auto f = rep_rank_function(ext);
    CHECK(f(0b100) == 1);
    CHECK(f(0b101) == 2);
    CHECK(f(0b110) == 2);
    CHECK(f(0b111) == 3);
    CHECK(is_extension(f, corpus::pair_polymatroid()));

    const auto same = rep_rank_function(linear_ci_extension(corpus::pair_rep(), 0b01, 0b01));
    CHECK(same(0b100) == 2);
    CHECK(conditional(same, 0b100, 0b100, 0b01) == 0);

    const auto disjoint = linear_ci_extension(u23_rep(2), 0b001, 0b010);
    CHECK(disjoint.generators(3).empty());
}

TEST_CASE("fresh labels avoid collisions")
{
    CHECK(fresh_label(GroundSet({"a"})) == "z");
    CHECK(fresh_label(GroundSet({"z", "z1"})) == "z2");
    const auto ext = linear_ci_extension(LinearRep(GroundSet({"z"}), 2, 1, {{{1}}}), 1, 1);
    CHECK(ext.ground().labels().back() == "z1");
}

TEST_CASE("property: linear extensions satisfy the intersection rank formula")
{
    std::mt19937_64 rng(606);
    for (int trial = 0; trial < 20; ++trial) {
        const std::uint32_t p = trial % 2 ? 3 : 2;
        const auto rep = oracle::random_rep(rng, 3, 3, p);
        const Mask x = 1 + trial % 7, y = 1 + (trial * 3) % 7;
        const auto ext = linear_ci_extension(rep, x, y);
        const auto f = rep_rank_function(ext);
        const auto fz = oracle::meet_dim({rep.span_of(x), rep.span_of(y)}, 3, p);
        for (Mask a = 0; a < 8; ++a) {
            const auto meet = oracle::meet_dim({rep.span_of(x), rep.span_of(y), rep.span_of(a)}, 3, p);
            CHECK(f(a | 0b1000) == f(a) + static_cast<long>(fz) - static_cast<long>(meet));
        }
        CHECK(is_common_information(f, "z", x, y).valid());
    }
}

TEST_CASE("ci_extension_from_tensor rows and two-route agreement")
{
    const auto rep = corpus::pair_rep();
    const auto f = rep_rank_function(rep);
    const auto g = kron_table(rep);
    for (Mask x = 0; x < 4; ++x)
        for (Mask y = 0; y < 4; ++y) {
            const auto ext = ci_extension_from_tensor(f, g, x, y);
            CHECK(ext(0b100) == conditional(f, x, y, 0));
            CHECK(ext(x | 0b100) == f(x));
            CHECK(ext(y | 0b100) == f(y));
            CHECK(ext == rep_rank_function(linear_ci_extension(rep, x, y)));
            CHECK(is_extension(ext, f));
        }

    auto bad = g.values();
    bad.back() += 1;
    CHECK_THROWS_AS(ci_extension_from_tensor(f, SetFunction(g.ground(), bad), 1, 2), InputError);
}

TEST_CASE("the extension is monotone over every A via the lower sandwich bound")
{
    for (const auto& rep : {u23_rep(2), corpus::pair_rep(), corpus::free2_rep()}) {
        const auto f = rep_rank_function(rep);
        const auto g = kron_table(rep);
        const ProductGround pg(f.ground());
        const auto count = f.ground().subset_count();
        for (Mask x = 0; x < count; ++x)
            for (Mask y = 0; y < count; ++y)
                for (Mask a = 0; a < count; ++a) {
                    const Rational value = g(static_cast<Mask>(pg.encode(x, y, a)));
                    const auto stats = triple_stats(f, x, y, a);
                    CHECK(stats.s3 + stats.r3 == f(x | y) + f(a));
                    CHECK(value - f(x | y) - f(a) >= value - stats.beta);
                    CHECK(value - stats.beta >= 0);
                }
    }
}

TEST_CASE("check_1ci_via_tensor over all ordered pairs")
{
    const auto u = check_1ci_via_tensor(u23(), kron_table(u23_rep(2)));
    CHECK(u.ok);
    CHECK(u.pairs.size() == 64);

    const auto free2 = check_1ci_via_tensor(corpus::free2(), kron_table(corpus::free2_rep()));
    CHECK(free2.ok);
    CHECK(free2.pairs.size() == 16);

    CHECK_THROWS_AS(check_1ci_via_tensor(u23(), rep_rank_function(kronecker(u23_rep(2), corpus::free2_rep()))),
                    InputError);
}

TEST_CASE("Fano plane needs an explicit pair list")
{
    const auto fano = corpus::fano();
    const auto g = kronecker_u23_rank(corpus::fano_rep());
    CHECK_THROWS_WITH_AS(check_1ci_via_tensor(fano, g), doctest::Contains("product ground too large"), InputError);

    const std::vector<std::pair<Mask, Mask>> pairs{{0b0000011, 0b0001100}, {0b0000111, 0b1110000},
                                                   {0b0010001, 0b0100010}, {0b1111111, 0b0000001},
                                                   {0, 0b0101010}};
    const auto report = check_1ci_via_tensor(fano, g, pairs);
    CHECK(report.ok);
    CHECK(report.pairs.size() == pairs.size());
}

TEST_CASE("ci_extension_lp on linear inputs")
{
    const auto u = ci_extension_lp(u23(), 0b001, 0b010);
    REQUIRE(u.feasible);
    REQUIRE(u.extension);
    CHECK((*u.extension)(0b1000) == 0);
    CHECK(satisfies(u.system, [&] {
        std::vector<Rational> x(8);
        for (Mask a = 0; a < 8; ++a)
            x[a] = (*u.extension)(a | 0b1000);
        return x;
    }()));

    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 10; ++trial) {
        const auto rep = oracle::random_rep(rng, 3, 3, trial % 2 ? 3 : 2);
        const auto f = rep_rank_function(rep);
        const Mask x = trial % 8, y = (trial * 5) % 8;
        const auto r = ci_extension_lp(f, x, y);
        REQUIRE(r.feasible);
        CHECK(is_common_information(*r.extension, "z", x, y).valid());
        CHECK(check_polymatroid(*r.extension, PolymatroidMethod::elemental).is_polymatroid);
    }
}

TEST_CASE("ci_extension_lp is feasible for every pair of a tensor-admitting polymatroid")
{
    const auto f = u23();
    for (Mask x = 0; x < 8; ++x)
        for (Mask y = 0; y < 8; ++y)
            CHECK(ci_extension_lp(f, x, y).feasible);
}

TEST_CASE("ci_extension_lp refutes common information where Ingleton fails")
{
    // A common information for (A, B) forces Ingleton on (A, B, C, D).
    const auto violator = corpus::ingleton_violator4();
    const auto r = ci_extension_lp(violator, 0b0001, 0b0010);
    CHECK_FALSE(r.feasible);
    CHECK(verify_certificate(r.system, r.certificate));

    const auto vamos = corpus::vamos();
    REQUIRE_FALSE(ingleton_delta(vamos, 0x03, 0x0c, 0x30, 0xc0).satisfied);
    const auto v = ci_extension_lp(vamos, 0x03, 0x0c);
    CHECK_FALSE(v.feasible);
    CHECK(verify_certificate(v.system, v.certificate));

    CHECK_THROWS_AS(ci_extension_lp(uniform_matroid(2, 9), 1, 2), InputError);
    CHECK_THROWS_AS(ci_extension_lp(SetFunction(GroundSet({"a", "b"}), {0, 2, 1, 1}), 1, 2), InputError);
}
