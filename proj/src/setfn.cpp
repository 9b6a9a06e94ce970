#include "polymat/setfn.hpp"

#include <bit>
#include <set>

namespace polymat {

int popcount(Mask m) { return std::popcount(m); }

GroundSet::GroundSet(std::vector<std::string> labels)
    : labels_(std::move(labels))
{
    if (labels_.empty() || labels_.size() > kMaxGroundSize)
        throw InputError("ground set size must be in [1, " + std::to_string(kMaxGroundSize) + "], got " +
                         std::to_string(labels_.size()));
    std::set<std::string_view> seen;
    for (const auto& l : labels_) {
        if (l.empty())
            throw InputError("empty element label");
        if (!seen.insert(l).second)
            throw InputError("duplicate element label \"" + l + "\"");
    }
}

std::optional<std::size_t> GroundSet::find(std::string_view label) const
{
    for (std::size_t i = 0; i < labels_.size(); ++i)
        if (labels_[i] == label)
            return i;
    return std::nullopt;
}

std::size_t GroundSet::index_of(std::string_view label) const
{
    if (auto i = find(label))
        return *i;
    throw InputError("unknown label \"" + std::string(label) + "\"");
}

Mask GroundSet::mask_of(std::span<const std::string> labels) const
{
    Mask m = 0;
    for (const auto& l : labels)
        m |= bit(index_of(l));
    return m;
}

std::vector<std::string> GroundSet::labels_of(Mask m) const
{
    std::vector<std::string> out;
    for (std::size_t i = 0; i < size(); ++i)
        if (m & bit(i))
            out.push_back(labels_[i]);
    return out;
}

Mask GroundSet::parse_subset(std::string_view csv) const
{
    Mask m = 0;
    while (!csv.empty()) {
        auto comma = csv.find(',');
        auto item = csv.substr(0, comma);
        while (!item.empty() && item.front() == ' ')
            item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ')
            item.remove_suffix(1);
        if (!item.empty())
            m |= bit(index_of(item));
        if (comma == std::string_view::npos)
            break;
        csv.remove_prefix(comma + 1);
    }
    return m;
}

std::string GroundSet::format_subset(Mask m) const
{
    std::string out;
    for (const auto& l : labels_of(m)) {
        if (!out.empty())
            out += ',';
        out += l;
    }
    return out;
}

SetFunction::SetFunction(GroundSet ground, std::vector<Rational> values)
    : ground_(std::move(ground)), values_(std::move(values))
{
    if (values_.size() != ground_.subset_count())
        throw InputError("incomplete table: expected " + std::to_string(ground_.subset_count()) + " values, got " +
                         std::to_string(values_.size()));
}

const Rational& SetFunction::at(Mask m) const
{
    if (!ground_.valid(m))
        throw InputError("subset mask out of range");
    return values_[m];
}

SetFunction make_set_function(const GroundSet& ground, const std::map<Mask, Rational>& entries)
{
    std::vector<Rational> values(ground.subset_count());
    std::vector<bool> seen(values.size(), false);
    for (const auto& [m, v] : entries) {
        if (!ground.valid(m))
            throw InputError("subset mask out of range");
        values[m] = v;
        seen[m] = true;
    }
    for (std::size_t m = 0; m < seen.size(); ++m)
        if (!seen[m])
            throw InputError("incomplete table: missing {" + ground.format_subset(static_cast<Mask>(m)) + "}");
    return SetFunction(ground, std::move(values));
}

SetFunction make_set_function(const GroundSet& ground,
                              const std::vector<std::pair<std::vector<std::string>, Rational>>& entries)
{
    std::map<Mask, Rational> table;
    for (const auto& [labels, v] : entries) {
        std::set<std::string> distinct(labels.begin(), labels.end());
        if (distinct.size() != labels.size())
            throw InputError("repeated label inside a subset");
        Mask m = ground.mask_of(labels);
        if (!table.emplace(m, v).second)
            throw InputError("duplicate subset {" + ground.format_subset(m) + "}");
    }
    return make_set_function(ground, table);
}

Rational conditional(const SetFunction& f, Mask y, Mask z, Mask x)
{
    return f(x | y) + f(x | z) - f(x | y | z) - f(x);
}

namespace {

PolymatroidWitness negative(const SetFunction& f, Mask x, Mask y, Mask z)
{
    return {PolymatroidWitness::Kind::negative_conditional, x, y, z, conditional(f, y, z, x)};
}

std::optional<PolymatroidWitness> scan_direct(const SetFunction& f)
{
    const Mask full = f.ground().full();
    const std::size_t n = f.size();
    for (Mask x = 0;; ++x) {
        for (std::size_t i = 0; i < n; ++i) {
            if (x & bit(i))
                continue;
            if (f(x) > f(x | bit(i)))
                return negative(f, x, bit(i), bit(i));
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (x & bit(i))
                continue;
            for (std::size_t j = i + 1; j < n; ++j) {
                if (x & bit(j))
                    continue;
                if (f(x | bit(i)) + f(x | bit(j)) < f(x | bit(i) | bit(j)) + f(x))
                    return negative(f, x, bit(i), bit(j));
            }
        }
        if (x == full)
            break;
    }
    return std::nullopt;
}

std::optional<PolymatroidWitness> scan_conditional_all(const SetFunction& f)
{
    // f(Y:Z|X) only depends on X, Y\X and Z\X, so Y and Z range over subsets of the complement.
    const Mask full = f.ground().full();
    for (Mask x = 0;; ++x) {
        const Mask rest = full & ~x;
        for (Mask y = rest;; y = (y - 1) & rest) {
            for (Mask z = rest;; z = (z - 1) & rest) {
                if (f(x | y) + f(x | z) < f(x | y | z) + f(x))
                    return negative(f, x, y, z);
                if (z == 0)
                    break;
            }
            if (y == 0)
                break;
        }
        if (x == full)
            break;
    }
    return std::nullopt;
}

std::optional<PolymatroidWitness> scan_elemental(const SetFunction& f)
{
    const Mask full = f.ground().full();
    const std::size_t n = f.size();
    for (Mask x = 0;; ++x) {
        for (std::size_t i = 0; i < n; ++i) {
            if (x & bit(i))
                continue;
            for (std::size_t j = i; j < n; ++j) {
                if (x & bit(j))
                    continue;
                if (conditional(f, bit(i), bit(j), x) < 0)
                    return negative(f, x, bit(i), bit(j));
            }
        }
        if (x == full)
            break;
    }
    return std::nullopt;
}

} // namespace

PolymatroidVerdict check_polymatroid(const SetFunction& f, PolymatroidMethod method)
{
    if (f(0) != 0)
        return {false, PolymatroidWitness{PolymatroidWitness::Kind::empty_set_nonzero, 0, 0, 0, f(0)}};
    std::optional<PolymatroidWitness> w;
    switch (method) {
    case PolymatroidMethod::direct:
        w = scan_direct(f);
        break;
    case PolymatroidMethod::conditional_all:
        w = scan_conditional_all(f);
        break;
    case PolymatroidMethod::elemental:
        w = scan_elemental(f);
        break;
    }
    return {!w.has_value(), std::move(w)};
}

bool is_matroid(const SetFunction& f)
{
    if (!check_polymatroid(f, PolymatroidMethod::elemental).is_polymatroid)
        throw InputError("is_matroid: input is not a polymatroid");
    for (Mask m = 0; m < f.ground().subset_count(); ++m) {
        const Rational& v = f(m);
        if (!is_integer(v) || v < 0 || v > popcount(m))
            return false;
    }
    return true;
}

SetFunction restrict(const SetFunction& f, Mask s)
{
    const auto& ground = f.ground();
    if (!ground.valid(s))
        throw InputError("restrict: subset mask out of range");
    std::vector<std::size_t> picked;
    for (std::size_t i = 0; i < ground.size(); ++i)
        if (s & bit(i))
            picked.push_back(i);
    if (picked.empty())
        throw InputError("restrict: empty subset has no ground set");
    std::vector<std::string> labels;
    for (auto i : picked)
        labels.push_back(ground.label(i));
    GroundSet sub(std::move(labels));
    std::vector<Rational> values(sub.subset_count());
    for (Mask m = 0; m < values.size(); ++m) {
        Mask src = 0;
        for (std::size_t k = 0; k < picked.size(); ++k)
            if (m & bit(k))
                src |= bit(picked[k]);
        values[m] = f(src);
    }
    return SetFunction(std::move(sub), std::move(values));
}

bool is_extension(const SetFunction& g, const SetFunction& f)
{
    std::vector<std::size_t> where;
    for (const auto& l : f.ground().labels()) {
        auto i = g.ground().find(l);
        if (!i)
            throw InputError("is_extension: label \"" + l + "\" missing from the extension");
        where.push_back(*i);
    }
    for (Mask m = 0; m < f.ground().subset_count(); ++m) {
        Mask gm = 0;
        for (std::size_t k = 0; k < where.size(); ++k)
            if (m & bit(k))
                gm |= bit(where[k]);
        if (g(gm) != f(m))
            return false;
    }
    return true;
}

} // namespace polymat
