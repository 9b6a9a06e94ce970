#include "polymat/corpus.hpp"
#include "polymat/io.hpp"

#include <doctest.h>

using namespace polymat;

namespace {

SetFunction reparse(const SetFunction& f) { return set_function_from_json(parse_json(to_json(f).dump())); }

} // namespace

TEST_CASE("rank tables round-trip for every corpus function")
{
    for (const auto& name : {"u23", "fano", "vamos", "ingleton-violator-4", "free2", "pair"}) {
        const auto f = *corpus::set_function({name});
        CHECK(reparse(f) == f);
    }
    const SetFunction frac(GroundSet({"x"}), {0, Rational(-7, 3)});
    CHECK(reparse(frac) == frac);
    CHECK(to_json(frac)["ranks"][1]["value"] == "-7/3");
}

TEST_CASE("rank table parsing")
{
    const auto f = set_function_from_json(parse_json(R"({"ground": ["a"], "ranks": [
        {"set": [], "value": 0}, {"set": ["a"], "value": "3/6"}]})"));
    CHECK(f(1) == Rational(1, 2));

    CHECK_THROWS_AS(set_function_from_json(parse_json(R"({"ground": ["a"], "ranks": [{"set": [], "value": "0"}]})")),
                    InputError);
    CHECK_THROWS_AS(set_function_from_json(parse_json(R"({"ground": ["a"], "ranks": [
        {"set": [], "value": "0"}, {"set": ["b"], "value": "1"}]})")),
                    InputError);
    CHECK_THROWS_AS(set_function_from_json(parse_json(R"({"ground": ["a"], "ranks": [
        {"set": [], "value": "0"}, {"set": ["a"], "value": 0.5}]})")),
                    InputError);
    CHECK_THROWS_AS(set_function_from_json(parse_json(R"({"ranks": []})")), InputError);
    CHECK_THROWS_AS(parse_json("{"), InputError);
}

TEST_CASE("representations round-trip")
{
    for (const auto& name : {"u23-rep", "fano-rep", "free2-rep", "pair-rep"}) {
        const auto rep = *corpus::representation(name);
        CHECK(linear_rep_from_json(parse_json(to_json(rep).dump())) == rep);
    }
    const auto rep = linear_rep_from_json(parse_json(
        R"({"field": 2, "ambient_dim": 3, "ground": ["a","b"], "subspaces": {"a": [[1,0,0],[0,1,0]], "b": [[0,1,0],[0,0,1]]}})"));
    CHECK(rep == corpus::pair_rep());
    CHECK_THROWS_AS(linear_rep_from_json(parse_json(
                        R"({"field": 2, "ambient_dim": 2, "ground": ["a"], "subspaces": {"a": [[1,2]]}})")),
                    InputError);
    CHECK_THROWS_AS(linear_rep_from_json(parse_json(
                        R"({"field": 2, "ambient_dim": 2, "ground": ["a"], "subspaces": {"q": [[1,0]]}})")),
                    InputError);
}

TEST_CASE("verdicts, reports and witnesses round-trip")
{
    const SetFunction bad(GroundSet({"a", "b"}), {0, 2, 1, 1});
    for (const auto& f : {bad, corpus::vamos(), SetFunction(GroundSet({"a"}), {1, 1})}) {
        const auto v = check_polymatroid(f, PolymatroidMethod::elemental);
        const auto back = polymatroid_verdict_from_json(f.ground(), parse_json(to_json(f.ground(), v).dump()));
        CHECK(back.is_polymatroid == v.is_polymatroid);
        REQUIRE(back.witness.has_value() == v.witness.has_value());
        if (v.witness) {
            CHECK(back.witness->kind == v.witness->kind);
            CHECK(back.witness->x == v.witness->x);
            CHECK(back.witness->y == v.witness->y);
            CHECK(back.witness->z == v.witness->z);
            CHECK(back.witness->value == v.witness->value);
        }
    }

    const auto vamos = corpus::vamos();
    const auto r = ingleton_delta(vamos, 0x03, 0x0c, 0x30, 0xc0);
    const auto doc = to_json(vamos.ground(), r);
    CHECK(doc["delta"] == "-1");
    const auto back = ingleton_report_from_json(vamos.ground(), parse_json(doc.dump()));
    CHECK(back.delta == r.delta);
    CHECK(back.quadruple == r.quadruple);
    CHECK(back.satisfied == r.satisfied);

    const auto ext = rep_rank_function(linear_ci_extension(corpus::pair_rep(), 1, 2));
    for (Mask x = 0; x < 4; ++x) {
        const auto w = is_common_information(ext, "z", x, 3 - x);
        CHECK(ci_witness_from_json(ext.ground(), parse_json(to_json(ext.ground(), w).dump())) == w);
    }
}

TEST_CASE("certificates round-trip and are bound to their system")
{
    LinearSystem sys(1);
    sys.add_inequality({{0, 1}}, 1);
    sys.add_inequality({{0, -1}}, Rational(-1, 2));
    const FarkasCertificate cert{{2, 2}};
    REQUIRE(verify_certificate(sys, cert));
    const auto doc = parse_json(certificate_to_json(sys, cert).dump());
    CHECK(certificate_from_json(sys, doc).multipliers == cert.multipliers);

    LinearSystem other(1);
    other.add_inequality({{0, 1}}, 2);
    other.add_inequality({{0, -1}}, Rational(-1, 2));
    CHECK_THROWS_AS(certificate_from_json(other, doc), InputError);
    CHECK(fingerprint_hex(0xab) == "00000000000000ab");
}
