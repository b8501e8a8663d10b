#ifndef HEDGEHOG_JSON_IO_HPP
#define HEDGEHOG_JSON_IO_HPP

#include <json.hpp>

#include "hedgehog/engine.hpp"

namespace hedgehog {

using Json = nlohmann::ordered_json;

// Schema helpers: every accessor throws SchemaViolation naming the offending
// path, so the CLI can report exactly where a payload went wrong.
const Json& require_member(const Json& j, const std::string& key, const std::string& path);
std::string require_string(const Json& j, const std::string& path);
long require_int(const Json& j, const std::string& path);

FieldDescriptor field_from_json(const Json& j, const std::string& path);
Json field_to_json(const FieldDescriptor& k);

Vec coeffs_from_json(const FieldDescriptor& k, const Json& j, const std::string& path);
Json coeffs_to_json(const FieldDescriptor& k, const Vec& v);

GramMatrix gram_from_json(const FieldDescriptor& k, const Json& j, const std::string& path);
Json gram_to_json(const GramMatrix& g);

GWElem gw_from_json(const FieldDescriptor& k, const Json& j, const std::string& path);
Json gw_to_json(const GWElem& x);

ExtGWElem ext_gw_from_json(const QuadExtension& ext, const Json& j, const std::string& path);

SectionCertificate certificate_from_json(const FieldDescriptor& k, const Json& j,
                                         const std::string& path);
Json certificate_to_json(const SectionCertificate& c);

Json decision_to_json(const FieldDescriptor& k, const Decision& d);

Json invariants_to_json(const FieldDescriptor& k, const GWInvariants& inv);

} // namespace hedgehog

#endif
