#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "splitlab/decompose.hpp"
#include "splitlab/diagram.hpp"
#include "splitlab/matroid.hpp"
#include "splitlab/partition.hpp"
#include "splitlab/polytope.hpp"

namespace splitlab {

// Insertion order is preserved, so emitted key order is fixed by the
// serializers below; golden files depend on it.
using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";

// Sets serialize as arrays of ascending elements; set lists keep the
// canonical ascending word order used everywhere else.
Json set_to_json(SetWord s);
SetWord set_from_json(const Json& j, int n);

// {"n": int, "r": int, "bases": [[int,...],...]} — normative format.
Json family_to_json(const BaseFamily& f);
BaseFamily family_from_json(const Json& j);
Json matroid_to_json(const Matroid& m);

// {"blocks": [[int,...],...], "a": [int,...]}
Json plan_to_json(const SplitPlan& p);
SplitPlan plan_from_json(const Json& j);

// {"n": int, "lines": [[int,...],...]}
Json config_to_json(const PointLineConfig& c);
PointLineConfig config_from_json(const Json& j);

// {"w": [int,...], "c": int, "improper": bool}
Json certificate_to_json(const FaceCertificate& c);
FaceCertificate certificate_from_json(const Json& j);

Json violation_to_json(const ExchangeViolation& v);
Json plan_verdict_to_json(const PlanVerdict& v);
Json face_result_to_json(const FaceResult& r);
Json decomposition_report_to_json(const DecompositionReport& r);
Json sequence_report_to_json(const Matroid& parent, const SplitPlan& plan,
                             const SequenceReport& rep);
Json decomposition_to_json(const Decomposition& d);
Decomposition decomposition_from_json(const Json& j);
Json lift_report_to_json(const LiftReport& r);

std::string canonical_dump(const Json& j);  // 2-space indent, trailing newline

Json load_json_file(const std::filesystem::path& path);  // throws on parse error
void write_text_file(const std::filesystem::path& path, const std::string& text);

std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::filesystem::path& path);

}  // namespace splitlab
