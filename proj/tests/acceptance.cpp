// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any criterion fails.

#include "oracles.hpp"

#include "polymat/ci.hpp"
#include "polymat/corpus.hpp"
#include "polymat/ingleton.hpp"
#include "polymat/io.hpp"
#include "polymat/linrep.hpp"
#include "polymat/lp.hpp"
#include "polymat/tensor.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

using namespace polymat;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool cond, const std::string& what)
    {
        if (!cond && pass) {
            pass = false;
            detail = what;
        }
    }
};

int failures = 0;

void run(int id, const char* title, double limit_seconds, const std::function<void(Outcome&)>& body)
{
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(out);
    } catch (const std::exception& e) {
        out.pass = false;
        out.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (out.pass && secs > limit_seconds) {
        out.pass = false;
        out.detail = "over the time limit";
    }
    failures += !out.pass;
    std::printf("%s [%d] %s (%.2fs / limit %.0fs)%s%s\n", out.pass ? "PASS" : "FAIL", id, title, secs, limit_seconds,
                out.detail.empty() ? "" : ": ", out.detail.c_str());
    std::fflush(stdout);
}

SetFunction kron_table(const LinearRep& rep) { return rep_rank_function(kronecker(rep, u23_rep(rep.field()))); }

// U_{2,4} over GF(3): four pairwise independent lines in the plane.
LinearRep u24_rep()
{
    return LinearRep(GroundSet({"1", "2", "3", "4"}), 3, 2, {{{1, 0}}, {{0, 1}}, {{1, 1}}, {{1, 2}}});
}

std::vector<LinearRep> linear_corpus()
{
    return {u23_rep(2), corpus::free2_rep(), corpus::pair_rep(), u24_rep()};
}

SetFunction random_function(std::mt19937_64& rng, int trial)
{
    const std::size_t n = 1 + trial % 4;
    const auto count = std::size_t{1} << n;
    std::uniform_int_distribution<int> den(1, 3);
    std::vector<Rational> v(count);
    switch (trial % 4) {
    case 0:
    case 1: { // unrestricted values in [-2, 4]
        for (std::size_t m = 1; m < count; ++m) {
            const int d = den(rng);
            v[m] = Rational(std::uniform_int_distribution<int>(-2 * d, 4 * d)(rng), d);
            v[m].canonicalize();
        }
        break;
    }
    default: { // a linear rank function, scaled, sometimes nudged off the cone
        const auto f = rep_rank_function(oracle::random_rep(rng, n, 4, 2));
        const Rational scale(std::uniform_int_distribution<int>(1, 3)(rng), 3);
        for (std::size_t m = 0; m < count; ++m)
            v[m] = f(static_cast<Mask>(m)) * scale;
        if (trial % 4 == 3) {
            const auto at = std::uniform_int_distribution<std::size_t>(1, count - 1)(rng);
            v[at] += Rational(trial % 8 == 3 ? 1 : -1, 2);
        }
        break;
    }
    }
    return SetFunction(oracle::labels(n), std::move(v));
}

} // namespace

int main()
{
    run(1, "polymatroid characterizations agree on 1000 random set functions", 10, [](Outcome& out) {
        std::mt19937_64 rng(1);
        int yes = 0, no = 0;
        for (int trial = 0; trial < 1000; ++trial) {
            const auto f = random_function(rng, trial);
            const bool a = check_polymatroid(f, PolymatroidMethod::direct).is_polymatroid;
            const bool b = check_polymatroid(f, PolymatroidMethod::conditional_all).is_polymatroid;
            const bool c = check_polymatroid(f, PolymatroidMethod::elemental).is_polymatroid;
            out.require(a == b && b == c, "methods disagree on trial " + std::to_string(trial));
            (a ? yes : no)++;
        }
        out.require(yes >= 100 && no >= 100, "random inputs did not exercise both verdicts");
    });

    run(2, "triple-intersection bounds on 200 random GF(2)/GF(3) representations", 60, [](Outcome& out) {
        std::mt19937_64 rng(2);
        std::size_t triples = 0;
        for (int trial = 0; trial < 200; ++trial) {
            const std::size_t n = 1 + trial % 5, d = 1 + (trial / 5) % 6;
            const auto rep = oracle::random_rep(rng, n, d, trial % 2 ? 3 : 2);
            const auto f = rep_rank_function(rep);
            const Mask count = static_cast<Mask>(f.ground().subset_count());
            for (Mask a = 0; a < count; ++a)
                for (Mask b = 0; b < count; ++b)
                    for (Mask c = 0; c < count; ++c) {
                        ++triples;
                        const auto bounds = triple_bounds_check(rep, f, a, b, c);
                        out.require(bounds.holds(), "bounds fail on representation " + std::to_string(trial));
                    }
        }
        out.require(triples > 100000, "too few triples checked");
    });

    run(3, "Kronecker tensors: product identities and the rank formula for every triple", 30, [](Outcome& out) {
        for (const auto& rep : {u23_rep(2), corpus::pair_rep()}) {
            const auto f = rep_rank_function(rep);
            const auto g = kron_table(rep);
            out.require(check_tensor_axioms(g, f, u23()).ok, "tensor axioms fail");
            const auto g_oracle = oracle::rank_table(kronecker(rep, u23_rep(2)));
            const ProductGround pg(rep.ground());
            const Mask count = static_cast<Mask>(f.ground().subset_count());
            for (Mask a = 0; a < count; ++a)
                for (Mask b = 0; b < count; ++b)
                    for (Mask c = 0; c < count; ++c) {
                        const auto meet = oracle::meet_dim({rep.span_of(a), rep.span_of(b), rep.span_of(c)},
                                                           rep.ambient_dim(), rep.field());
                        const auto lib = multi_intersection_dim(
                            std::vector<std::vector<FieldVector>>{rep.span_of(a), rep.span_of(b), rep.span_of(c)},
                            rep.field());
                        const auto m = static_cast<Mask>(pg.encode(a, b, c));
                        const Rational expect = f(a) + f(b) + f(c) - static_cast<long>(meet);
                        out.require(lib == meet, "intersection dimension disagrees with the oracle");
                        out.require(g(m) == expect && Rational(static_cast<long>(g_oracle[m])) == expect,
                                    "rank formula fails");
                    }
        }
    });

    run(4, "sandwich bounds on every corpus tensor product with n <= 4", 60, [](Outcome& out) {
        for (const auto& rep : linear_corpus()) {
            const auto f = rep_rank_function(rep);
            const auto v = check_gentens_bounds(kron_table(rep), f);
            out.require(v.precondition_ok && v.ok, "bounds fail for a Kronecker tensor");
        }
        for (const auto& f : {u23(), corpus::free2()}) {
            const auto sys = build_tensor_feasibility_system(f);
            const auto r = solve_feasibility(sys);
            out.require(r.status == SolveStatus::feasible, "no tensor product found by search");
            if (r.status == SolveStatus::feasible) {
                const auto v = check_gentens_bounds(SetFunction(ProductGround(f.ground()).ground(), r.point), f);
                out.require(v.precondition_ok && v.ok, "bounds fail for a searched tensor");
            }
        }
        const auto stats = triple_stats(u23(), 0b001, 0b010, 0b100);
        const auto g = kron_table(u23_rep(2));
        out.require(stats.alpha == 3 && stats.beta == 3, "u23 singleton alpha/beta are not 3");
        out.require(g(static_cast<Mask>(ProductGround(u23().ground()).encode(0b001, 0b010, 0b100))) == 3,
                    "u23 singleton product rank is not 3");
    });

    run(5, "Ingleton: Vamos at -1, clean scans on U23 and random linear polymatroids", 60, [](Outcome& out) {
        const auto r = ingleton_delta(corpus::vamos(), 0x03, 0x0c, 0x30, 0xc0);
        out.require(r.delta == -1, "Vamos delta is " + format_rational(r.delta));
        out.require(!ingleton_scan(u23(), ExhaustiveScan{}), "violation reported on U23");
        std::mt19937_64 rng(5);
        for (int trial = 0; trial < 10; ++trial) {
            const auto f = rep_rank_function(oracle::random_rep(rng, 4 + trial % 5, 4, trial % 2 ? 3 : 2));
            out.require(!ingleton_scan(f, SampledScan{10000, static_cast<std::uint64_t>(trial)}),
                        "violation reported on a linear polymatroid");
        }
    });

    run(6, "common information from tensors for every pair (u23, free2, pair)", 60, [](Outcome& out) {
        for (const auto& rep : {u23_rep(2), corpus::free2_rep(), corpus::pair_rep()}) {
            const auto f = rep_rank_function(rep);
            const auto report = check_1ci_via_tensor(f, kron_table(rep));
            out.require(report.ok, "a pair failed");
            out.require(report.pairs.size() == f.ground().subset_count() * f.ground().subset_count(),
                        "not every pair was checked");
        }
    });

    run(7, "tensor-route extensions equal linear extensions for all pairs", 60, [](Outcome& out) {
        for (const auto& rep : linear_corpus()) {
            const auto f = rep_rank_function(rep);
            const auto g = kron_table(rep);
            const Mask count = static_cast<Mask>(f.ground().subset_count());
            for (Mask x = 0; x < count; ++x)
                for (Mask y = 0; y < count; ++y)
                    out.require(ci_extension_from_tensor(f, g, x, y) ==
                                    rep_rank_function(linear_ci_extension(rep, x, y)),
                                "extension tables differ");
        }
    });

    run(8, "tensor search: violator infeasible with certificate, linear n <= 3 feasible", 1800, [](Outcome& out) {
        const auto violator = corpus::ingleton_violator4();
        const auto sys = build_tensor_feasibility_system(violator);
        const auto r = solve_feasibility_symmetric(sys, tensor_symmetry_group(violator));
        out.require(r.status == SolveStatus::infeasible, "violator system not reported infeasible");
        out.require(verify_certificate(sys, r.certificate), "violator certificate does not verify");

        std::vector<SetFunction> linear{u23(), corpus::free2(), corpus::pair_polymatroid(), uniform_matroid(1, 3),
                                        uniform_matroid(3, 3)};
        for (const auto& f : linear) {
            const auto start = std::chrono::steady_clock::now();
            const auto s = build_tensor_feasibility_system(f);
            const auto solved = solve_feasibility(s);
            const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            out.require(secs < 60, "a linear run took " + std::to_string(secs) + "s");
            out.require(solved.status == SolveStatus::feasible, "linear input reported infeasible");
            if (solved.status == SolveStatus::feasible)
                out.require(check_tensor_axioms(SetFunction(ProductGround(f.ground()).ground(), solved.point), f,
                                                u23())
                                .ok,
                            "witness fails the tensor axioms");
        }
    });

    run(9, "JSON round trips are exact for all corpus objects", 60, [](Outcome& out) {
        auto again = [](const Json& doc) { return parse_json(doc.dump()); };
        std::vector<SetFunction> functions;
        for (const auto& name : {"u23", "fano", "vamos", "ingleton-violator-4", "free2", "pair"})
            functions.push_back(*corpus::set_function({name}));
        functions.push_back(SetFunction(GroundSet({"a", "b"}), {0, Rational(1, 2), Rational(-2, 3), 4}));
        for (const auto& f : functions) {
            out.require(set_function_from_json(again(to_json(f))) == f, "rank table");
            for (auto method : {PolymatroidMethod::direct, PolymatroidMethod::conditional_all,
                                PolymatroidMethod::elemental}) {
                const auto v = check_polymatroid(f, method);
                out.require(polymatroid_verdict_from_json(f.ground(), again(to_json(f.ground(), v))) == v,
                            "polymatroid verdict");
            }
        }
        for (const auto& name : {"u23-rep", "fano-rep", "free2-rep", "pair-rep"}) {
            const auto rep = *corpus::representation(name);
            out.require(linear_rep_from_json(again(to_json(rep))) == rep, "representation");
        }
        const auto vamos = corpus::vamos();
        const auto report = ingleton_delta(vamos, 0x03, 0x0c, 0x30, 0xc0);
        out.require(ingleton_report_from_json(vamos.ground(), again(to_json(vamos.ground(), report))) == report,
                    "Ingleton report");
        const auto violator4 = corpus::ingleton_violator4();
        const auto hit = *ingleton_scan(violator4, ExhaustiveScan{});
        const auto& vg = violator4.ground();
        out.require(ingleton_report_from_json(vg, again(to_json(vg, hit))) == hit, "Ingleton report");

        for (const auto& rep : {corpus::pair_rep(), u23_rep(2)}) {
            const auto f = rep_rank_function(rep);
            const auto g = kron_table(rep);
            const auto tv = check_gentens_bounds(g, f);
            out.require(tensor_verdict_from_json(f.ground(), again(to_json(f.ground(), tv))) == tv, "tensor verdict");
            const auto one = check_1ci_via_tensor(f, g);
            out.require(one_ci_report_from_json(f.ground(), again(to_json(f.ground(), one))) == one, "1-CI report");
            const auto ext = ci_extension_from_tensor(f, g, 1, 2);
            const auto w = is_common_information(ext, "z", 1, 2);
            out.require(ci_witness_from_json(ext.ground(), again(to_json(ext.ground(), w))) == w, "CI witness");
        }
        const auto u = u23();
        auto broken = kron_table(u23_rep(2)).values();
        broken.back() -= 1;
        const auto bad = check_tensor_axioms(SetFunction(ProductGround(u.ground()).ground(), broken), u, u23());
        out.require(tensor_verdict_from_json(u.ground(), again(to_json(u.ground(), bad))) == bad,
                    "failing tensor verdict");

        const auto violator = corpus::ingleton_violator4();
        const auto sys = build_tensor_feasibility_system(violator);
        const auto r = solve_feasibility_symmetric(sys, tensor_symmetry_group(violator));
        out.require(r.status == SolveStatus::infeasible, "violator not infeasible");
        const auto cert = certificate_from_json(sys, again(certificate_to_json(sys, r.certificate)));
        out.require(cert.multipliers == r.certificate.multipliers, "certificate");
    });

    return failures ? 1 : 0;
}
