#include "polymat/io.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace polymat {

namespace {

Json labels_json(const std::vector<std::string>& labels, std::uint64_t m)
{
    Json out = Json::array();
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (m >> i & 1)
            out.push_back(labels[i]);
    return out;
}

Json subset_json(const GroundSet& g, Mask m) { return labels_json(g.labels(), m); }

Mask subset_from_json(const GroundSet& g, const Json& arr)
{
    if (!arr.is_array())
        throw InputError("expected an array of labels");
    Mask m = 0;
    for (const auto& l : arr) {
        if (!l.is_string())
            throw InputError("labels must be strings");
        const Mask b = bit(g.index_of(l.get<std::string>()));
        if (m & b)
            throw InputError("repeated label \"" + l.get<std::string>() + "\" inside a subset");
        m |= b;
    }
    return m;
}

Rational rational_from_json(const Json& v)
{
    if (v.is_string())
        return parse_rational(v.get<std::string>());
    if (v.is_number_integer())
        return Rational(std::to_string(v.get<long long>()));
    throw InputError("rational values must be strings (\"p/q\") or integers");
}

const Json& field(const Json& doc, const char* key)
{
    if (!doc.is_object() || !doc.contains(key))
        throw InputError(std::string("missing field \"") + key + "\"");
    return doc.at(key);
}

GroundSet ground_from_json(const Json& arr)
{
    if (!arr.is_array())
        throw InputError("\"ground\" must be an array of labels");
    std::vector<std::string> labels;
    for (const auto& l : arr) {
        if (!l.is_string())
            throw InputError("labels must be strings");
        labels.push_back(l.get<std::string>());
    }
    return GroundSet(std::move(labels));
}

std::vector<std::string> product_labels(const GroundSet& e1, const GroundSet& e2)
{
    std::vector<std::string> out;
    for (const auto& y : e2.labels())
        for (const auto& x : e1.labels())
            out.push_back(x + "@" + y);
    return out;
}

Json witness_json(const std::vector<std::string>& labels, const PolymatroidWitness& w)
{
    Json out;
    if (w.kind == PolymatroidWitness::Kind::empty_set_nonzero) {
        out["kind"] = "empty_set_nonzero";
    } else {
        out["kind"] = "negative_conditional";
        out["x"] = labels_json(labels, w.x);
        out["y"] = labels_json(labels, w.y);
        out["z"] = labels_json(labels, w.z);
    }
    out["value"] = format_rational(w.value);
    return out;
}

} // namespace

Json to_json(const SetFunction& f)
{
    Json doc;
    doc["ground"] = f.ground().labels();
    Json ranks = Json::array();
    for (Mask m = 0; m < f.ground().subset_count(); ++m)
        ranks.push_back({{"set", subset_json(f.ground(), m)}, {"value", format_rational(f(m))}});
    doc["ranks"] = std::move(ranks);
    return doc;
}

SetFunction set_function_from_json(const Json& doc)
{
    const GroundSet ground = ground_from_json(field(doc, "ground"));
    const Json& ranks = field(doc, "ranks");
    if (!ranks.is_array())
        throw InputError("\"ranks\" must be an array");
    std::map<Mask, Rational> table;
    for (const auto& entry : ranks) {
        const Mask m = subset_from_json(ground, field(entry, "set"));
        if (!table.emplace(m, rational_from_json(field(entry, "value"))).second)
            throw InputError("duplicate subset {" + ground.format_subset(m) + "}");
    }
    return make_set_function(ground, table);
}

Json to_json(const LinearRep& rep)
{
    Json doc;
    doc["field"] = rep.field();
    doc["ambient_dim"] = rep.ambient_dim();
    doc["ground"] = rep.ground().labels();
    Json spaces = Json::object();
    for (std::size_t i = 0; i < rep.ground().size(); ++i) {
        Json vectors = Json::array();
        for (const auto& v : rep.generators(i))
            vectors.push_back(v);
        spaces[rep.ground().label(i)] = std::move(vectors);
    }
    doc["subspaces"] = std::move(spaces);
    return doc;
}

LinearRep linear_rep_from_json(const Json& doc)
{
    const Json& p = field(doc, "field");
    const Json& d = field(doc, "ambient_dim");
    if (!p.is_number_unsigned() || !d.is_number_unsigned())
        throw InputError("\"field\" and \"ambient_dim\" must be non-negative integers");
    const auto prime = p.get<std::uint64_t>();
    if (prime > kMaxPrime)
        throw InputError("field modulus too large");
    const GroundSet ground = ground_from_json(field(doc, "ground"));
    const Json& spaces = field(doc, "subspaces");
    if (!spaces.is_object())
        throw InputError("\"subspaces\" must be an object keyed by label");
    for (const auto& [label, _] : spaces.items())
        ground.index_of(label);
    std::vector<std::vector<FieldVector>> gens(ground.size());
    for (std::size_t i = 0; i < ground.size(); ++i) {
        if (!spaces.contains(ground.label(i)))
            continue; // missing entry = zero subspace
        const Json& list = spaces.at(ground.label(i));
        if (!list.is_array())
            throw InputError("subspace generators must be an array of vectors");
        for (const auto& v : list) {
            if (!v.is_array())
                throw InputError("each generator must be an array of integers");
            FieldVector vec;
            for (const auto& e : v) {
                if (!e.is_number_unsigned())
                    throw InputError("vector entries must be non-negative integers");
                const auto x = e.get<std::uint64_t>();
                if (x >= prime)
                    throw InputError("vector entry " + std::to_string(x) + " not reduced mod " + std::to_string(prime));
                vec.push_back(static_cast<std::uint32_t>(x));
            }
            gens[i].push_back(std::move(vec));
        }
    }
    return LinearRep(ground, static_cast<std::uint32_t>(prime), d.get<std::size_t>(), std::move(gens));
}

Json to_json(const GroundSet& ground, const PolymatroidVerdict& v)
{
    Json doc;
    doc["is_polymatroid"] = v.is_polymatroid;
    doc["witness"] = v.witness ? witness_json(ground.labels(), *v.witness) : Json(nullptr);
    return doc;
}

namespace {

PolymatroidWitness witness_from_json(const GroundSet& ground, const Json& w)
{
    PolymatroidWitness pw;
    const auto kind = field(w, "kind").get<std::string>();
    if (kind == "empty_set_nonzero") {
        pw.kind = PolymatroidWitness::Kind::empty_set_nonzero;
    } else if (kind == "negative_conditional") {
        pw.kind = PolymatroidWitness::Kind::negative_conditional;
        pw.x = subset_from_json(ground, field(w, "x"));
        pw.y = subset_from_json(ground, field(w, "y"));
        pw.z = subset_from_json(ground, field(w, "z"));
    } else {
        throw InputError("unknown witness kind \"" + kind + "\"");
    }
    pw.value = rational_from_json(field(w, "value"));
    return pw;
}

} // namespace

PolymatroidVerdict polymatroid_verdict_from_json(const GroundSet& ground, const Json& doc)
{
    PolymatroidVerdict v;
    v.is_polymatroid = field(doc, "is_polymatroid").get<bool>();
    const Json& w = field(doc, "witness");
    if (!w.is_null())
        v.witness = witness_from_json(ground, w);
    return v;
}

Json to_json(const GroundSet& ground, const IngletonReport& r)
{
    Json doc;
    doc["delta"] = format_rational(r.delta);
    Json quad = Json::array();
    for (Mask m : r.quadruple)
        quad.push_back(subset_json(ground, m));
    doc["quadruple"] = std::move(quad);
    doc["satisfied"] = r.satisfied;
    return doc;
}

IngletonReport ingleton_report_from_json(const GroundSet& ground, const Json& doc)
{
    IngletonReport r;
    r.delta = rational_from_json(field(doc, "delta"));
    const Json& quad = field(doc, "quadruple");
    if (!quad.is_array() || quad.size() != 4)
        throw InputError("\"quadruple\" must hold four subsets");
    for (std::size_t i = 0; i < 4; ++i)
        r.quadruple[i] = subset_from_json(ground, quad[i]);
    r.satisfied = field(doc, "satisfied").get<bool>();
    return r;
}

Json to_json(const GroundSet& ground, const CIWitness& w)
{
    Json doc;
    doc["z"] = w.z;
    doc["x"] = subset_json(ground, w.x);
    doc["y"] = subset_json(ground, w.y);
    doc["gap"] = format_rational(w.gap);
    doc["given_x"] = format_rational(w.given_x);
    doc["given_y"] = format_rational(w.given_y);
    doc["valid"] = w.valid();
    return doc;
}

CIWitness ci_witness_from_json(const GroundSet& ground, const Json& doc)
{
    CIWitness w;
    w.z = field(doc, "z").get<std::string>();
    w.x = subset_from_json(ground, field(doc, "x"));
    w.y = subset_from_json(ground, field(doc, "y"));
    w.gap = rational_from_json(field(doc, "gap"));
    w.given_x = rational_from_json(field(doc, "given_x"));
    w.given_y = rational_from_json(field(doc, "given_y"));
    return w;
}

Json to_json(const GroundSet& base, const TensorVerdict& v)
{
    const GroundSet u = u23().ground();
    Json doc;
    doc["ok"] = v.ok;
    doc["precondition_ok"] = v.precondition_ok;
    doc["polymatroid_failure"] =
        v.polymatroid_failure ? witness_json(product_labels(base, u), *v.polymatroid_failure) : Json(nullptr);
    Json axioms = Json::array();
    for (auto [x, y] : v.axiom_failures)
        axioms.push_back({{"x", subset_json(base, x)}, {"y", subset_json(u, y)}});
    doc["axiom_failures"] = std::move(axioms);
    Json bounds = Json::array();
    for (const auto& t : v.bound_failures)
        bounds.push_back({subset_json(base, t[0]), subset_json(base, t[1]), subset_json(base, t[2])});
    doc["bound_failures"] = std::move(bounds);
    return doc;
}

Json to_json(const GroundSet& ground, const OneCIReport& r)
{
    Json doc;
    doc["ok"] = r.ok;
    Json pairs = Json::array();
    for (const auto& p : r.pairs) {
        Json item;
        item["x"] = subset_json(ground, p.x);
        item["y"] = subset_json(ground, p.y);
        item["ok"] = p.ok();
        item["polymatroid"] = p.polymatroid;
        item["extension"] = p.extension;
        auto ext_labels = ground.labels();
        ext_labels.push_back(p.ci.z);
        item["witness"] = p.witness ? witness_json(ext_labels, *p.witness) : Json(nullptr);
        item["ci"] = to_json(ground, p.ci);
        pairs.push_back(std::move(item));
    }
    doc["pairs"] = std::move(pairs);
    return doc;
}

TensorVerdict tensor_verdict_from_json(const GroundSet& base, const Json& doc)
{
    const GroundSet u = u23().ground();
    TensorVerdict v;
    v.ok = field(doc, "ok").get<bool>();
    v.precondition_ok = field(doc, "precondition_ok").get<bool>();
    const Json& w = field(doc, "polymatroid_failure");
    if (!w.is_null())
        v.polymatroid_failure = witness_from_json(GroundSet(product_labels(base, u)), w);
    for (const auto& item : field(doc, "axiom_failures"))
        v.axiom_failures.emplace_back(subset_from_json(base, field(item, "x")), subset_from_json(u, field(item, "y")));
    for (const auto& item : field(doc, "bound_failures")) {
        if (!item.is_array() || item.size() != 3)
            throw InputError("bound failures must list three subsets");
        v.bound_failures.push_back(
            {subset_from_json(base, item[0]), subset_from_json(base, item[1]), subset_from_json(base, item[2])});
    }
    return v;
}

OneCIReport one_ci_report_from_json(const GroundSet& ground, const Json& doc)
{
    OneCIReport r;
    r.ok = field(doc, "ok").get<bool>();
    for (const auto& item : field(doc, "pairs")) {
        PairResult p;
        p.x = subset_from_json(ground, field(item, "x"));
        p.y = subset_from_json(ground, field(item, "y"));
        p.polymatroid = field(item, "polymatroid").get<bool>();
        p.extension = field(item, "extension").get<bool>();
        p.ci = ci_witness_from_json(ground, field(item, "ci"));
        const Json& w = field(item, "witness");
        if (!w.is_null()) {
            auto labels = ground.labels();
            labels.push_back(p.ci.z);
            p.witness = witness_from_json(GroundSet(std::move(labels)), w);
        }
        r.pairs.push_back(std::move(p));
    }
    return r;
}

std::string fingerprint_hex(std::uint64_t fp)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fp));
    return buf;
}

Json certificate_to_json(const LinearSystem& sys, const FarkasCertificate& cert)
{
    Json doc;
    doc["fingerprint"] = fingerprint_hex(sys.fingerprint());
    doc["rows"] = sys.num_rows();
    Json mult = Json::array();
    for (const auto& m : cert.multipliers)
        mult.push_back(format_rational(m));
    doc["multipliers"] = std::move(mult);
    return doc;
}

FarkasCertificate certificate_from_json(const LinearSystem& sys, const Json& doc)
{
    if (field(doc, "fingerprint").get<std::string>() != fingerprint_hex(sys.fingerprint()))
        throw InputError("certificate fingerprint does not match the system");
    const Json& mult = field(doc, "multipliers");
    if (!mult.is_array() || mult.size() != sys.num_rows())
        throw InputError("certificate multiplier count does not match the system");
    FarkasCertificate cert;
    for (const auto& m : mult)
        cert.multipliers.push_back(rational_from_json(m));
    return cert;
}

Json parse_json(const std::string& text)
{
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
}

std::string read_source(const std::string& path)
{
    if (path == "-")
        return std::string(std::istreambuf_iterator<char>(std::cin), {});
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::string& path, const std::string& text)
{
    std::ofstream out(path);
    if (!out)
        throw InputError("cannot write " + path);
    out << text;
}

} // namespace polymat
