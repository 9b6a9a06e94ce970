// polymat: command-line front end over the JSON rank-table, representation and certificate formats.
//
// Exit codes: 0 property holds / feasible, 1 property fails / infeasible, 2 usage or input error,
// 3 tensor search ran out of its time budget.

#include "polymat/ci.hpp"
#include "polymat/corpus.hpp"
#include "polymat/ingleton.hpp"
#include "polymat/io.hpp"
#include "polymat/lp.hpp"
#include "polymat/tensor.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

using namespace polymat;

namespace {

struct Globals {
    bool pretty = false;
    unsigned threads = 0;
};

void emit(const Globals& g, const Json& doc)
{
    std::cout << (g.pretty ? doc.dump(2) : doc.dump()) << "\n";
}

void emit_to(const Globals& g, const std::string& path, const Json& doc)
{
    if (path.empty() || path == "-") {
        emit(g, doc);
        return;
    }
    write_text(path, (g.pretty ? doc.dump(2) : doc.dump()) + "\n");
    emit(g, Json{{"output", path}});
}

unsigned thread_count(const Globals& g)
{
    if (g.threads)
        return g.threads;
    if (const char* env = std::getenv("POLYMAT_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0)
            return static_cast<unsigned>(n);
    }
    return 1;
}

// Accepts a rank table, a representation, or a {"rank_table": ...} document.
SetFunction load_set_function(const std::string& path)
{
    const Json doc = parse_json(read_source(path));
    if (doc.is_object() && doc.contains("rank_table"))
        return set_function_from_json(doc.at("rank_table"));
    if (doc.is_object() && doc.contains("subspaces"))
        return rep_rank_function(linear_rep_from_json(doc));
    return set_function_from_json(doc);
}

LinearRep load_rep(const std::string& path)
{
    const Json doc = parse_json(read_source(path));
    if (doc.is_object() && doc.contains("representation"))
        return linear_rep_from_json(doc.at("representation"));
    return linear_rep_from_json(doc);
}

Json rep_document(const LinearRep& rep)
{
    return Json{{"representation", to_json(rep)}, {"rank_table", to_json(rep_rank_function(rep))}};
}

int run(int argc, char** argv)
{
    CLI::App app{"Exact polymatroid toolkit: tensor products with U_{2,3}, common information, Ingleton"};
    app.require_subcommand(1);
    Globals globals;
    app.add_flag("--pretty", globals.pretty, "Indent JSON output");
    app.add_option("--threads", globals.threads, "Worker threads (default: $POLYMAT_THREADS or 1)");
    int code = 0;

    // validate
    auto* validate = app.add_subcommand("validate", "Check the polymatroid axioms of a rank table");
    std::string validate_in = "-", method = "all";
    validate->add_option("file", validate_in, "Rank table JSON ('-' for stdin)");
    validate->add_option("--method", method, "direct | conditional | elemental | all")
        ->check(CLI::IsMember({"direct", "conditional", "elemental", "all"}));
    validate->callback([&] {
        const auto f = load_set_function(validate_in);
        std::vector<std::pair<std::string, PolymatroidMethod>> methods;
        if (method == "direct" || method == "all")
            methods.emplace_back("direct", PolymatroidMethod::direct);
        if (method == "conditional" || method == "all")
            methods.emplace_back("conditional", PolymatroidMethod::conditional_all);
        if (method == "elemental" || method == "all")
            methods.emplace_back("elemental", PolymatroidMethod::elemental);
        Json per = Json::object();
        std::optional<PolymatroidVerdict> first;
        bool agree = true;
        for (const auto& [name, m] : methods) {
            auto v = check_polymatroid(f, m);
            per[name] = v.is_polymatroid;
            if (!first)
                first = v;
            else
                agree = agree && first->is_polymatroid == v.is_polymatroid;
        }
        Json doc = to_json(f.ground(), *first);
        doc["methods"] = per;
        doc["methods_agree"] = agree;
        doc["is_matroid"] = first->is_polymatroid ? Json(is_matroid(f)) : Json(nullptr);
        emit(globals, doc);
        code = first->is_polymatroid && agree ? 0 : 1;
    });

    // rank
    auto* rank = app.add_subcommand("rank", "Rank table induced by a linear representation");
    std::string rank_in = "-";
    rank->add_option("file", rank_in, "Representation JSON ('-' for stdin)");
    rank->callback([&] { emit(globals, to_json(rep_rank_function(load_rep(rank_in)))); });

    // ingleton
    auto* ingleton = app.add_subcommand("ingleton", "Evaluate or scan Ingleton's inequality");
    std::string ingleton_in = "-";
    std::vector<std::string> quadruple;
    bool exhaustive = false;
    std::size_t sample = 0;
    std::uint64_t seed = 0;
    ingleton->add_option("file", ingleton_in, "Rank table JSON ('-' for stdin)");
    auto* quad_opt = ingleton->add_option("--quadruple", quadruple, "Four comma-separated subsets A B C D")
                         ->expected(4);
    auto* exh_opt = ingleton->add_flag("--exhaustive", exhaustive, "Scan every quadruple (n <= 4)");
    auto* sample_opt = ingleton->add_option("--sample", sample, "Scan K seeded random quadruples");
    ingleton->add_option("--seed", seed, "Seed for --sample");
    quad_opt->excludes(exh_opt)->excludes(sample_opt);
    exh_opt->excludes(sample_opt);
    ingleton->callback([&] {
        const auto f = load_set_function(ingleton_in);
        if (!quadruple.empty()) {
            const auto& g = f.ground();
            auto r = ingleton_delta(f, g.parse_subset(quadruple[0]), g.parse_subset(quadruple[1]),
                                    g.parse_subset(quadruple[2]), g.parse_subset(quadruple[3]));
            emit(globals, to_json(g, r));
            code = r.satisfied ? 0 : 1;
            return;
        }
        if (!exhaustive && sample == 0)
            throw CLI::ValidationError("ingleton", "one of --quadruple, --exhaustive, --sample is required");
        IngletonScanMode mode = exhaustive ? IngletonScanMode{ExhaustiveScan{}} : IngletonScanMode{SampledScan{sample, seed}};
        auto found = ingleton_scan(f, mode);
        if (found) {
            emit(globals, to_json(f.ground(), *found));
            code = 1;
        } else {
            emit(globals, Json{{"delta", nullptr}, {"quadruple", nullptr}, {"satisfied", true}});
        }
    });

    // tensor
    auto* tensor = app.add_subcommand("tensor", "Tensor products with U_{2,3}");
    tensor->require_subcommand(1);
    auto* kron = tensor->add_subcommand("kron", "Kronecker product of two representations");
    std::string kron_a, kron_b, kron_out;
    kron->add_option("rep1", kron_a, "First representation JSON")->required();
    kron->add_option("rep2", kron_b, "Second representation JSON")->required();
    kron->add_option("-o,--output", kron_out, "Output file (default stdout)");
    kron->callback([&] { emit_to(globals, kron_out, rep_document(kronecker(load_rep(kron_a), load_rep(kron_b)))); });

    auto* tcheck = tensor->add_subcommand("check", "Tensor axioms and product bounds of g against f and U_{2,3}");
    std::string check_g, check_f;
    tcheck->add_option("g", check_g, "Product rank table")->required();
    tcheck->add_option("f", check_f, "Base rank table")->required();
    tcheck->callback([&] {
        const auto g = load_set_function(check_g);
        const auto f = load_set_function(check_f);
        auto v = check_gentens_bounds(g, f, thread_count(globals));
        emit(globals, to_json(f.ground(), v));
        code = v.ok ? 0 : 1;
    });

    auto* search = tensor->add_subcommand("search", "Decide by exact LP whether f admits a tensor product with U_{2,3}");
    std::string search_in = "-", search_cert;
    double budget = 0;
    bool progress = false, no_symmetry = false;
    search->add_option("file", search_in, "Rank table JSON ('-' for stdin)");
    search->add_option("--budget-seconds", budget, "Give up after this many seconds (0 = no limit)");
    search->add_option("--certificate", search_cert, "Also write the certificate or witness document here");
    search->add_flag("--progress", progress, "Report solver progress on stderr");
    search->add_flag("--no-symmetry", no_symmetry, "Solve the full system without merging symmetric variables");
    search->callback([&] {
        const auto f = load_set_function(search_in);
        const auto sys = build_tensor_feasibility_system(f);
        SolveOptions options;
        if (budget > 0)
            options.budget = std::chrono::duration<double>(budget);
        if (progress) {
            options.progress_every = 500;
            options.progress = [](std::size_t it, std::size_t k) {
                std::cerr << "iterations " << it << ", active rows " << k << "\n";
            };
        }
        auto result = no_symmetry ? solve_feasibility(sys, options)
                                  : solve_feasibility_symmetric(sys, tensor_symmetry_group(f), options);
        Json doc;
        doc["fingerprint"] = fingerprint_hex(sys.fingerprint());
        doc["iterations"] = result.stats.iterations;
        if (result.status == SolveStatus::budget_exhausted) {
            doc["feasible"] = nullptr;
            doc["status"] = "budget_exhausted";
            emit(globals, doc);
            code = 3;
            return;
        }
        Json artifact;
        if (result.status == SolveStatus::feasible) {
            const auto ground = ProductGround(f.ground()).ground();
            artifact = to_json(SetFunction(ground, result.point));
            doc["feasible"] = true;
            doc["witness"] = artifact;
            code = 0;
        } else {
            artifact = certificate_to_json(sys, result.certificate);
            doc["feasible"] = false;
            doc["certificate"] = artifact;
            doc["verified"] = verify_certificate(sys, result.certificate);
            code = 1;
        }
        if (!search_cert.empty())
            write_text(search_cert, artifact.dump() + "\n");
        emit(globals, doc);
    });

    auto* tverify = tensor->add_subcommand("verify", "Re-check a tensor-search certificate against f");
    std::string verify_f, verify_cert;
    tverify->add_option("f", verify_f, "Base rank table")->required();
    tverify->add_option("certificate", verify_cert, "Certificate document written by tensor search")->required();
    tverify->callback([&] {
        const auto sys = build_tensor_feasibility_system(load_set_function(verify_f));
        const auto cert = certificate_from_json(sys, parse_json(read_source(verify_cert)));
        const bool ok = verify_certificate(sys, cert);
        emit(globals, Json{{"verified", ok}, {"fingerprint", fingerprint_hex(sys.fingerprint())}});
        code = ok ? 0 : 1;
    });

    // ci
    auto* ci = app.add_subcommand("ci", "Common information extensions");
    ci->require_subcommand(1);
    std::string ci_in, ci_tensor, ci_x, ci_y, ci_out, ci_z = "z";

    auto* extend = ci->add_subcommand("extend", "CI extension built from a tensor product with U_{2,3}");
    extend->add_option("file", ci_in, "Rank table JSON")->required();
    extend->add_option("--tensor", ci_tensor, "Tensor product rank table")->required();
    extend->add_option("--x", ci_x, "Comma-separated subset X")->required();
    extend->add_option("--y", ci_y, "Comma-separated subset Y")->required();
    extend->add_option("-o,--output", ci_out, "Output file (default stdout)");
    extend->callback([&] {
        const auto f = load_set_function(ci_in);
        const auto g = load_set_function(ci_tensor);
        const auto ext = ci_extension_from_tensor(f, g, f.ground().parse_subset(ci_x), f.ground().parse_subset(ci_y));
        emit_to(globals, ci_out, to_json(ext));
    });

    auto* extend_linear = ci->add_subcommand("extend-linear", "Add V_z = U_X ∩ U_Y to a representation");
    extend_linear->add_option("file", ci_in, "Representation JSON")->required();
    extend_linear->add_option("--x", ci_x, "Comma-separated subset X")->required();
    extend_linear->add_option("--y", ci_y, "Comma-separated subset Y")->required();
    extend_linear->add_option("-o,--output", ci_out, "Output file (default stdout)");
    extend_linear->callback([&] {
        const auto rep = load_rep(ci_in);
        const auto ext =
            linear_ci_extension(rep, rep.ground().parse_subset(ci_x), rep.ground().parse_subset(ci_y));
        emit_to(globals, ci_out, rep_document(ext));
    });

    auto* cicheck = ci->add_subcommand("check", "Is z a common information for (X, Y)?");
    cicheck->add_option("file", ci_in, "Rank table JSON")->required();
    cicheck->add_option("--z", ci_z, "Label of the candidate element");
    cicheck->add_option("--x", ci_x, "Comma-separated subset X")->required();
    cicheck->add_option("--y", ci_y, "Comma-separated subset Y")->required();
    cicheck->callback([&] {
        const auto f = load_set_function(ci_in);
        auto w = is_common_information(f, ci_z, f.ground().parse_subset(ci_x), f.ground().parse_subset(ci_y));
        emit(globals, to_json(f.ground(), w));
        code = w.valid() ? 0 : 1;
    });

    auto* all_pairs = ci->add_subcommand("all-pairs", "1-CI check of f through a tensor product with U_{2,3}");
    all_pairs->add_option("file", ci_in, "Rank table JSON")->required();
    all_pairs->add_option("--tensor", ci_tensor, "Tensor product rank table")->required();
    all_pairs->callback([&] {
        const auto f = load_set_function(ci_in);
        const auto g = load_set_function(ci_tensor);
        auto r = check_1ci_via_tensor(f, g);
        emit(globals, to_json(f.ground(), r));
        code = r.ok ? 0 : 1;
    });

    auto* ci_search = ci->add_subcommand("search", "Decide by exact LP whether a CI extension for (X, Y) exists");
    ci_search->add_option("file", ci_in, "Rank table JSON")->required();
    ci_search->add_option("--x", ci_x, "Comma-separated subset X")->required();
    ci_search->add_option("--y", ci_y, "Comma-separated subset Y")->required();
    ci_search->callback([&] {
        const auto f = load_set_function(ci_in);
        auto r = ci_extension_lp(f, f.ground().parse_subset(ci_x), f.ground().parse_subset(ci_y));
        Json doc;
        doc["feasible"] = r.feasible;
        if (r.feasible)
            doc["extension"] = to_json(*r.extension);
        else
            doc["certificate"] = certificate_to_json(r.system, r.certificate);
        emit(globals, doc);
        code = r.feasible ? 0 : 1;
    });

    // corpus
    auto* corpus_cmd = app.add_subcommand("corpus", "Print a builtin rank table or representation");
    std::vector<std::string> corpus_name;
    corpus_cmd->add_option("name", corpus_name, "u23 | uniform K N | fano | vamos | ingleton-violator-4 | free2 | "
                                                "pair | u23-rep | fano-rep | free2-rep | pair-rep")
        ->required();
    corpus_cmd->callback([&] {
        if (corpus_name.size() == 1)
            if (auto rep = corpus::representation(corpus_name.front())) {
                emit(globals, to_json(*rep));
                return;
            }
        auto f = corpus::set_function(corpus_name);
        if (!f)
            throw InputError("unknown corpus entry; known: u23, uniform K N, fano, vamos, ingleton-violator-4, "
                             "free2, pair, u23-rep, fano-rep, free2-rep, pair-rep");
        emit(globals, to_json(*f));
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "polymat: " << e.what() << "\n";
        return 2;
    }
    return code;
}

} // namespace

int main(int argc, char** argv)
{
    try {
        return run(argc, argv);
    } catch (const InputError& e) {
        std::cerr << "polymat: " << e.what() << "\n";
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "polymat: malformed input: " << e.what() << "\n";
    } catch (const std::exception& e) {
        std::cerr << "polymat: " << e.what() << "\n";
    }
    return 2;
}
