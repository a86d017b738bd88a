#include "splitlab/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <openssl/evp.h>

namespace splitlab {

namespace {

[[noreturn]] void bad(const std::string& what) { throw std::runtime_error(what); }

int require_int(const Json& j, const char* key, int lo, int hi) {
  if (!j.contains(key) || !j[key].is_number_integer())
    bad(std::string("missing or non-integer field \"") + key + "\"");
  const long long v = j[key].get<long long>();
  if (v < lo || v > hi)
    bad(std::string("field \"") + key + "\" out of range");
  return static_cast<int>(v);
}

std::vector<std::vector<int>> require_set_list(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array())
    bad(std::string("missing or non-array field \"") + key + "\"");
  std::vector<std::vector<int>> out;
  for (const Json& s : j[key]) {
    if (!s.is_array()) bad(std::string("entries of \"") + key + "\" must be arrays");
    std::vector<int> elems;
    for (const Json& e : s) {
      if (!e.is_number_integer()) bad("set elements must be integers");
      elems.push_back(e.get<int>());
    }
    out.push_back(std::move(elems));
  }
  return out;
}

}  // namespace

Json set_to_json(SetWord s) { return Json(to_elements(s)); }

SetWord set_from_json(const Json& j, int n) {
  if (!j.is_array()) bad("set must be an array");
  SetWord s = 0;
  for (const Json& e : j) {
    if (!e.is_number_integer()) bad("set elements must be integers");
    const int v = e.get<int>();
    if (v < 1 || v > n) bad("set element " + std::to_string(v) + " outside 1..n");
    s |= element_bit(v);
  }
  return s;
}

Json family_to_json(const BaseFamily& f) {
  Json j;
  j["n"] = f.ground.n;
  j["r"] = f.rank;
  Json bases = Json::array();
  for (SetWord b : f.bases) bases.push_back(set_to_json(b));
  j["bases"] = bases;
  return j;
}

BaseFamily family_from_json(const Json& j) {
  const int n = require_int(j, "n", 1, kMaxGroundSize);
  const int r = require_int(j, "r", 0, kMaxGroundSize);
  auto built = make_base_family(n, r, require_set_list(j, "bases"));
  if (!built.ok()) bad("malformed base family: " + describe(*built.defect));
  return *built.family;
}

Json matroid_to_json(const Matroid& m) { return family_to_json(m.family()); }

Json plan_to_json(const SplitPlan& p) {
  Json j;
  Json blocks = Json::array();
  for (SetWord b : p.blocks) blocks.push_back(set_to_json(b));
  j["blocks"] = blocks;
  j["a"] = p.quotas;
  return j;
}

SplitPlan plan_from_json(const Json& j) {
  SplitPlan p;
  for (const auto& blk : require_set_list(j, "blocks")) {
    SetWord w = 0;
    for (int e : blk) {
      if (e < 1 || e > kMaxGroundSize) bad("block element outside 1..64");
      w |= element_bit(e);
    }
    p.blocks.push_back(w);
  }
  if (!j.contains("a") || !j["a"].is_array()) bad("missing quota array \"a\"");
  for (const Json& q : j["a"]) {
    if (!q.is_number_integer()) bad("quotas must be integers");
    p.quotas.push_back(q.get<int>());
  }
  return p;
}

Json config_to_json(const PointLineConfig& c) {
  Json j;
  j["n"] = c.n;
  Json lines = Json::array();
  for (SetWord l : c.lines) lines.push_back(set_to_json(l));
  j["lines"] = lines;
  return j;
}

PointLineConfig config_from_json(const Json& j) {
  PointLineConfig c;
  c.n = require_int(j, "n", 1, kMaxGroundSize);
  for (const auto& line : require_set_list(j, "lines")) {
    SetWord w = 0;
    for (int e : line) {
      if (e < 1 || e > c.n) bad("line element outside 1..n");
      w |= element_bit(e);
    }
    c.lines.push_back(w);
  }
  if (auto defect = validate_config(c)) bad("invalid configuration: " + defect->note);
  return c;
}

Json certificate_to_json(const FaceCertificate& c) {
  Json j;
  j["w"] = c.w;
  j["c"] = c.c;
  j["improper"] = c.improper;
  return j;
}

FaceCertificate certificate_from_json(const Json& j) {
  FaceCertificate c;
  if (!j.contains("w") || !j["w"].is_array()) bad("certificate needs \"w\"");
  for (const Json& x : j["w"]) c.w.push_back(x.get<long long>());
  if (!j.contains("c")) bad("certificate needs \"c\"");
  c.c = j["c"].get<long long>();
  c.improper = j.value("improper", false);
  return c;
}

Json violation_to_json(const ExchangeViolation& v) {
  Json j;
  j["b1"] = set_to_json(v.b1);
  j["b2"] = set_to_json(v.b2);
  j["e"] = v.element;
  return j;
}

namespace {

Json plan_violation_to_json(const PlanViolation& v) {
  Json j;
  switch (v.clause) {
    case PlanClause::structure: j["clause"] = "structure"; break;
    case PlanClause::rank_sum: j["clause"] = "rank_sum"; break;
    case PlanClause::pair_gluing: j["clause"] = "pair_gluing"; break;
    case PlanClause::triple_gluing: j["clause"] = "triple_gluing"; break;
  }
  if (!v.note.empty()) j["note"] = v.note;
  if (v.clause == PlanClause::pair_gluing || v.clause == PlanClause::triple_gluing) {
    j["j"] = v.j;
    if (v.clause == PlanClause::triple_gluing) j["k"] = v.k;
    j["x"] = set_to_json(v.x);
    j["y"] = set_to_json(v.y);
    if (v.clause == PlanClause::triple_gluing) j["z"] = set_to_json(v.z);
  }
  return j;
}

}  // namespace

Json plan_verdict_to_json(const PlanVerdict& v) {
  Json j;
  j["ok"] = v.ok();
  j["structure_ok"] = v.structure_ok;
  j["rank_sum_ok"] = v.rank_sum_ok;
  j["pair_ok"] = v.pair_ok;
  j["triple_ok"] = v.triple_ok;
  j["block_ranks"] = v.block_ranks;
  j["violation"] = v.violation ? plan_violation_to_json(*v.violation) : Json(nullptr);
  return j;
}

Json face_result_to_json(const FaceResult& r) {
  Json j;
  j["status"] = describe(r.status);
  j["certificate"] = r.certificate ? certificate_to_json(*r.certificate) : Json(nullptr);
  if (r.empty_subset) j["empty_subset"] = true;
  if (r.whole_piece) j["whole_piece"] = true;
  return j;
}

Json decomposition_report_to_json(const DecompositionReport& r) {
  Json j;
  j["pass"] = r.pass();
  j["cover_ok"] = r.cover_ok;
  j["pieces_ok"] = r.pieces_ok;
  j["intersections_matroid_ok"] = r.intersections_matroid_ok;
  j["intersections_face_ok"] = r.intersections_face_ok;
  if (!r.preconditions_ok) j["precondition_error"] = r.precondition_note;
  if (r.missing_base) j["missing_base"] = set_to_json(*r.missing_base);
  if (r.foreign_base) {
    j["foreign_base"] = Json{{"piece", r.foreign_base->first},
                             {"base", set_to_json(r.foreign_base->second)}};
  }
  Json piece_failures = Json::array();
  for (const auto& f : r.piece_failures) {
    Json pf;
    pf["piece"] = f.piece;
    if (f.defect) pf["defect"] = describe(*f.defect);
    if (f.violation) pf["violation"] = violation_to_json(*f.violation);
    piece_failures.push_back(pf);
  }
  j["piece_failures"] = piece_failures;
  Json pairs = Json::array();
  for (const auto& p : r.pairs) {
    Json pj;
    pj["i"] = p.i;
    pj["j"] = p.j;
    Json bases = Json::array();
    for (SetWord b : p.common) bases.push_back(set_to_json(b));
    pj["bases"] = bases;
    pj["empty"] = p.empty;
    pj["matroid_ok"] = p.matroid_ok;
    if (p.violation) pj["violation"] = violation_to_json(*p.violation);
    pj["face_i"] = face_result_to_json(p.face_i);
    pj["face_j"] = face_result_to_json(p.face_j);
    pairs.push_back(pj);
  }
  j["pairs"] = pairs;
  return j;
}

Json sequence_report_to_json(const Matroid& parent, const SplitPlan& plan,
                             const SequenceReport& rep) {
  Json j;
  j["parent"] = matroid_to_json(parent);
  j["plan"] = plan_to_json(plan);
  j["plan_verdict"] = plan_verdict_to_json(rep.plan_verdict);
  if (rep.construction_failure) {
    Json cf;
    cf["piece"] = rep.construction_failure->piece;
    cf["empty_piece"] = rep.construction_failure->empty_piece;
    if (rep.construction_failure->violation)
      cf["violation"] = violation_to_json(*rep.construction_failure->violation);
    j["construction_failure"] = cf;
  } else {
    j["construction_failure"] = nullptr;
  }
  Json pieces = Json::array();
  if (rep.decomposition)
    for (const Matroid& p : rep.decomposition->pieces) pieces.push_back(matroid_to_json(p));
  j["pieces"] = pieces;
  Json closed = Json::array();
  for (const auto& cf : rep.closed_form_pairs) {
    Json cj;
    cj["j"] = cf.j;
    cj["k"] = cf.k;
    cj["match"] = cf.match;
    cj["matroid_ok"] = cf.matroid_ok;
    closed.push_back(cj);
  }
  j["closed_form_pairs"] = closed;
  j["closed_form_ok"] = rep.closed_form_ok;
  Json interfaces = Json::array();
  for (const auto& st : rep.interfaces) {
    Json sj;
    sj["stage"] = st.stage;
    sj["w"] = st.functional;
    sj["c"] = st.value;
    Json ib = Json::array();
    for (SetWord b : st.interface_bases) ib.push_back(set_to_json(b));
    sj["interface_bases"] = ib;
    sj["left_matroid_ok"] = st.left_matroid_ok;
    sj["right_matroid_ok"] = st.right_matroid_ok;
    sj["left_cert_ok"] = st.left_cert_ok;
    sj["right_cert_ok"] = st.right_cert_ok;
    interfaces.push_back(sj);
  }
  j["interfaces"] = interfaces;
  j["stages_ok"] = rep.stages_ok;
  j["polytope"] = decomposition_report_to_json(rep.polytope);
  j["sequence_pass"] = rep.sequence_pass();
  j["strict_pass"] = rep.strict_pass();
  return j;
}

Json decomposition_to_json(const Decomposition& d) {
  Json j;
  j["parent"] = matroid_to_json(d.parent);
  j["plan"] = d.plan ? plan_to_json(*d.plan) : Json(nullptr);
  switch (d.provenance) {
    case Provenance::construction: j["provenance"] = "construction"; break;
    case Provenance::lifted: j["provenance"] = "lifted"; break;
    case Provenance::external: j["provenance"] = "external"; break;
  }
  Json pieces = Json::array();
  for (const Matroid& p : d.pieces) pieces.push_back(matroid_to_json(p));
  j["pieces"] = pieces;
  return j;
}

Decomposition decomposition_from_json(const Json& j) {
  if (!j.contains("parent")) bad("decomposition needs \"parent\"");
  auto parent = validate_base_family(family_from_json(j["parent"]));
  if (!parent.ok()) bad("decomposition parent is not a matroid");
  Decomposition d{std::move(*parent.matroid), std::nullopt, {}, Provenance::external};
  if (j.contains("plan") && !j["plan"].is_null()) d.plan = plan_from_json(j["plan"]);
  const std::string prov = j.value("provenance", "external");
  d.provenance = prov == "construction" ? Provenance::construction
                 : prov == "lifted"     ? Provenance::lifted
                                        : Provenance::external;
  if (!j.contains("pieces") || !j["pieces"].is_array()) bad("decomposition needs \"pieces\"");
  for (const Json& pj : j["pieces"]) {
    auto piece = validate_base_family(family_from_json(pj));
    if (!piece.ok()) bad("decomposition piece is not a matroid");
    d.pieces.push_back(std::move(*piece.matroid));
  }
  if (d.pieces.empty()) bad("decomposition has no pieces");
  return d;
}

Json lift_report_to_json(const LiftReport& r) {
  Json j;
  j["pass"] = r.pass();
  j["lifted"] = decomposition_to_json(r.lifted);
  j["expected_counts"] = r.expected_counts;
  j["counts_ok"] = r.counts_ok;
  Json pcs = Json::array();
  for (const auto& pc : r.pair_checks) {
    Json pj;
    pj["i"] = pc.i;
    pj["j"] = pc.j;
    pj["product_ok"] = pc.product_ok;
    pcs.push_back(pj);
  }
  j["pair_checks"] = pcs;
  j["pair_structure_ok"] = r.pair_structure_ok;
  j["polytope"] = decomposition_report_to_json(r.polytope);
  return j;
}

std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

Json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path.string());
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    bad("parse error in " + path.string() + ": " + e.what());
  }
  return j;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) bad("cannot write " + path.string());
  out << text;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 15]);
  }
  return out;
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return sha256_hex(ss.str());
}

}  // namespace splitlab
