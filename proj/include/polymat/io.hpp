#pragma once

#include "polymat/ci.hpp"
#include "polymat/ingleton.hpp"
#include "polymat/linrep.hpp"
#include "polymat/lp.hpp"
#include "polymat/setfn.hpp"
#include "polymat/tensor.hpp"

#include <json.hpp>

#include <string>

namespace polymat {

using Json = nlohmann::ordered_json;

// {"ground": [...], "ranks": [{"set": [...], "value": "p/q"}, ...]}
Json to_json(const SetFunction& f);
SetFunction set_function_from_json(const Json& doc);

// {"field": p, "ambient_dim": d, "ground": [...], "subspaces": {"x": [[...], ...], ...}}
Json to_json(const LinearRep& rep);
LinearRep linear_rep_from_json(const Json& doc);

Json to_json(const GroundSet& ground, const PolymatroidVerdict& v);
PolymatroidVerdict polymatroid_verdict_from_json(const GroundSet& ground, const Json& doc);

// {"delta": "p/q", "quadruple": [[...], [...], [...], [...]], "satisfied": bool}
Json to_json(const GroundSet& ground, const IngletonReport& r);
IngletonReport ingleton_report_from_json(const GroundSet& ground, const Json& doc);

Json to_json(const GroundSet& ground, const CIWitness& w);
CIWitness ci_witness_from_json(const GroundSet& ground, const Json& doc);

Json to_json(const GroundSet& base, const TensorVerdict& v);
TensorVerdict tensor_verdict_from_json(const GroundSet& base, const Json& doc);

Json to_json(const GroundSet& ground, const OneCIReport& r);
OneCIReport one_ci_report_from_json(const GroundSet& ground, const Json& doc);

// {"fingerprint": "hex", "rows": N, "multipliers": ["p/q", ...]}
Json certificate_to_json(const LinearSystem& sys, const FarkasCertificate& cert);
// Throws InputError when the fingerprint or row count does not match sys.
FarkasCertificate certificate_from_json(const LinearSystem& sys, const Json& doc);

std::string fingerprint_hex(std::uint64_t fp);

Json parse_json(const std::string& text);
// "-" reads standard input.
std::string read_source(const std::string& path);
void write_text(const std::string& path, const std::string& text);

} // namespace polymat
