#include "polymat/ci.hpp"

#include <stdexcept>

namespace polymat {

CIWitness is_common_information(const SetFunction& f_ext, std::string_view z, Mask x, Mask y)
{
    const Mask zm = bit(f_ext.ground().index_of(z));
    if (!f_ext.ground().valid(x) || !f_ext.ground().valid(y))
        throw InputError("common information: subset mask out of range");
    if ((x | y) & zm)
        throw InputError("common information: X and Y must not contain " + std::string(z));
    CIWitness w;
    w.z = std::string(z);
    w.x = x;
    w.y = y;
    w.gap = f_ext(zm) - conditional(f_ext, x, y, 0);
    w.given_x = conditional(f_ext, zm, zm, x);
    w.given_y = conditional(f_ext, zm, zm, y);
    return w;
}

std::string fresh_label(const GroundSet& ground, std::string_view stem)
{
    std::string label(stem);
    for (std::size_t k = 1; ground.find(label); ++k)
        label = std::string(stem) + std::to_string(k);
    return label;
}

LinearRep linear_ci_extension(const LinearRep& rep, Mask x, Mask y)
{
    if (!rep.ground().valid(x) || !rep.ground().valid(y))
        throw InputError("linear extension: subset mask out of range");
    auto labels = rep.ground().labels();
    labels.push_back(fresh_label(rep.ground()));
    auto gens = rep.generators();
    gens.push_back(intersection_basis(rep.span_of(x), rep.span_of(y), rep.field()));
    return LinearRep(GroundSet(std::move(labels)), rep.field(), rep.ambient_dim(), std::move(gens));
}

namespace {

SetFunction extension_from_product(const SetFunction& f, const ProductRank& g, Mask x, Mask y)
{
    if (!f.ground().valid(x) || !f.ground().valid(y))
        throw InputError("extension: subset mask out of range");
    const std::size_t n = f.size();
    auto labels = f.ground().labels();
    labels.push_back(fresh_label(f.ground()));
    GroundSet ground(std::move(labels));
    const ProductGround pg(f.ground());
    const Mask base = f.ground().full();
    const Rational fxy = f(x | y);
    std::vector<Rational> values(ground.subset_count());
    for (Mask m = 0; m < values.size(); ++m) {
        if (m & bit(n))
            values[m] = g.rank(pg.encode(x, y, m & base)) - fxy;
        else
            values[m] = f(m);
    }
    return SetFunction(std::move(ground), std::move(values));
}

void require_tensor(const SetFunction& f, const SetFunction& g)
{
    if (!check_tensor_axioms(g, f, u23()).ok)
        throw InputError("not a tensor product of f with U_{2,3}");
}

void require_tensor(const SetFunction& f, const ProductRank& g)
{
    if (!tensor_axiom_failures(g, f).empty())
        throw InputError("not a tensor product of f with U_{2,3}");
}

PairResult check_pair(const SetFunction& f, const ProductRank& g, Mask x, Mask y)
{
    PairResult r;
    r.x = x;
    r.y = y;
    const auto ext = extension_from_product(f, g, x, y);
    const auto direct = check_polymatroid(ext, PolymatroidMethod::direct);
    const auto all = check_polymatroid(ext, PolymatroidMethod::conditional_all);
    const auto elemental = check_polymatroid(ext, PolymatroidMethod::elemental);
    r.polymatroid = direct.is_polymatroid && all.is_polymatroid && elemental.is_polymatroid;
    if (!elemental.is_polymatroid)
        r.witness = elemental.witness;
    else if (!direct.is_polymatroid)
        r.witness = direct.witness;
    else if (!all.is_polymatroid)
        r.witness = all.witness;
    r.extension = is_extension(ext, f);
    r.ci = is_common_information(ext, ext.ground().labels().back(), x, y);
    return r;
}

OneCIReport check_pairs(const SetFunction& f, const ProductRank& g, const std::vector<std::pair<Mask, Mask>>& pairs)
{
    OneCIReport report;
    report.ok = true;
    for (auto [x, y] : pairs) {
        report.pairs.push_back(check_pair(f, g, x, y));
        report.ok = report.ok && report.pairs.back().ok();
    }
    return report;
}

std::vector<std::pair<Mask, Mask>> all_pairs(const SetFunction& f)
{
    std::vector<std::pair<Mask, Mask>> pairs;
    for (Mask x = 0; x < f.ground().subset_count(); ++x)
        for (Mask y = 0; y < f.ground().subset_count(); ++y)
            pairs.emplace_back(x, y);
    return pairs;
}

} // namespace

SetFunction ci_extension_from_tensor(const SetFunction& f, const SetFunction& g, Mask x, Mask y)
{
    require_tensor(f, g);
    return extension_from_product(f, table_product_rank(g, f.ground()), x, y);
}

SetFunction ci_extension_from_tensor(const SetFunction& f, const ProductRank& g, Mask x, Mask y)
{
    require_tensor(f, g);
    return extension_from_product(f, g, x, y);
}

OneCIReport check_1ci_via_tensor(const SetFunction& f, const SetFunction& g)
{
    require_tensor(f, g);
    return check_pairs(f, table_product_rank(g, f.ground()), all_pairs(f));
}

OneCIReport check_1ci_via_tensor(const SetFunction& f, const ProductRank& g,
                                 const std::optional<std::vector<std::pair<Mask, Mask>>>& pairs)
{
    if (!pairs && 3 * f.size() > kMaxGroundSize)
        throw InputError("product ground too large for an all-pairs check (3 x " + std::to_string(f.size()) +
                         " > " + std::to_string(kMaxGroundSize) + "); pass an explicit pair list");
    require_tensor(f, g);
    return check_pairs(f, g, pairs ? *pairs : all_pairs(f));
}

CIExtensionLPResult ci_extension_lp(const SetFunction& f, Mask x, Mask y, const SolveOptions& options)
{
    const std::size_t n = f.size();
    if (n > kMaxCIExtensionLP)
        throw InputError("CI extension LP supports at most " + std::to_string(kMaxCIExtensionLP) + " elements, got " +
                         std::to_string(n));
    if (!f.ground().valid(x) || !f.ground().valid(y))
        throw InputError("CI extension LP: subset mask out of range");
    if (!check_polymatroid(f, PolymatroidMethod::elemental).is_polymatroid)
        throw InputError("CI extension LP: input is not a polymatroid");

    const Mask base = f.ground().full();
    const Mask zbit = bit(n);
    CIExtensionLPResult result;
    LinearSystem sys(f.ground().subset_count());
    for (Mask a = 0; a <= base; ++a)
        sys.var_names.push_back("f{" + f.ground().format_subset(a) + (a ? ",z}" : "z}"));

    // Value of f(S) on Ez, S containing z or not, as (terms, constant).
    auto term = [&](Mask s, const Rational& coef, std::vector<std::pair<std::size_t, Rational>>& terms,
                    Rational& rhs) {
        if (s & zbit)
            terms.emplace_back(s & base, coef);
        else
            rhs -= coef * f(s);
    };

    sys.add_equality({{0, Rational(1)}}, conditional(f, x, y, 0));
    sys.add_equality({{x, Rational(1)}}, f(x));
    sys.add_equality({{y, Rational(1)}}, f(y));

    const Mask full = base | zbit;
    for (Mask s = 0;; ++s) {
        for (std::size_t i = 0; i <= n; ++i) {
            if (s & bit(i))
                continue;
            for (std::size_t j = i; j <= n; ++j) {
                if (s & bit(j))
                    continue;
                if (!((s | bit(i) | bit(j)) & zbit))
                    continue;
                std::vector<std::pair<std::size_t, Rational>> terms;
                Rational rhs = 0;
                const Mask si = s | bit(i), sj = s | bit(j), sij = si | sj;
                term(si, Rational(1), terms, rhs);
                term(sj, Rational(1), terms, rhs);
                term(sij, Rational(-1), terms, rhs);
                term(s, Rational(-1), terms, rhs);
                sys.add_inequality(std::move(terms), std::move(rhs));
            }
        }
        if (s == full)
            break;
    }

    auto solved = solve_feasibility(sys, options);
    if (solved.status == SolveStatus::budget_exhausted)
        throw std::runtime_error("CI extension LP: time budget exhausted");
    result.feasible = solved.status == SolveStatus::feasible;
    if (result.feasible) {
        auto labels = f.ground().labels();
        labels.push_back(fresh_label(f.ground()));
        GroundSet ground(std::move(labels));
        std::vector<Rational> values(ground.subset_count());
        for (Mask m = 0; m < values.size(); ++m)
            values[m] = (m & zbit) ? solved.point[m & base] : f(m);
        result.extension = SetFunction(std::move(ground), std::move(values));
    } else {
        result.certificate = std::move(solved.certificate);
    }
    result.system = std::move(sys);
    return result;
}

} // namespace polymat
