// Command-line front end: validate | decompose | uniform | lift | search |
// geometry. All inputs and outputs are JSON; identical inputs produce
// byte-identical outputs. Exit codes: 0 pass, 1 a check failed (witness in
// the report), 2 usage/parse/precondition error.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "splitlab/decompose.hpp"
#include "splitlab/diagram.hpp"
#include "splitlab/io.hpp"

namespace fs = std::filesystem;
using namespace splitlab;

namespace {

struct OutSink {
  std::string command;
  std::optional<fs::path> dir;
  std::vector<std::pair<std::string, std::string>> inputs;  // path, digest
  std::vector<std::string> written;

  void note_input(const fs::path& p) { inputs.emplace_back(p.string(), sha256_file(p)); }

  void write(const std::string& name, const Json& j) {
    if (!dir) return;
    fs::create_directories(*dir);
    write_text_file(*dir / name, canonical_dump(j));
    written.push_back(name);
  }

  void finish(const Json& outcome) {
    if (!dir) return;
    Json m;
    m["command"] = command;
    m["version"] = kToolVersion;
    Json ins = Json::array();
    for (const auto& [p, d] : inputs) ins.push_back(Json{{"path", p}, {"sha256", d}});
    m["inputs"] = ins;
    m["outputs"] = written;
    m["outcome"] = outcome;
    write_text_file(*dir / "manifest.json", canonical_dump(m));
  }
};

Matroid load_matroid(const fs::path& path) {
  auto val = validate_base_family(family_from_json(load_json_file(path)));
  if (val.defect) throw std::runtime_error("not a valid base family: " + describe(*val.defect));
  if (val.violation)
    throw std::runtime_error("base family fails the exchange axiom: " +
                             describe(*val.violation));
  return std::move(*val.matroid);
}

int cmd_validate(const fs::path& matroid_path, int threads) {
  const BaseFamily family = family_from_json(load_json_file(matroid_path));
  auto val = validate_base_family(family, threads);
  Json out;
  if (val.ok()) {
    out["ok"] = true;
    out["n"] = family.ground.n;
    out["r"] = family.rank;
    out["base_count"] = family.bases.size();
    std::cout << canonical_dump(out);
    return 0;
  }
  out["ok"] = false;
  if (val.defect) {
    out["error"] = describe(*val.defect);
    std::cout << canonical_dump(out);
    return 2;
  }
  out["violation"] = violation_to_json(*val.violation);
  out["replays"] = replay_violation(family, *val.violation);
  std::cout << canonical_dump(out);
  return 1;
}

int cmd_decompose(const std::optional<fs::path>& matroid_path,
                  const std::optional<fs::path>& geometry_path,
                  const fs::path& candidate_path, OutSink& sink, bool strict_p2a,
                  int threads) {
  std::optional<Matroid> m;
  if (matroid_path) {
    sink.note_input(*matroid_path);
    m = load_matroid(*matroid_path);
  } else if (geometry_path) {
    sink.note_input(*geometry_path);
    auto built = matroid_from_diagram(config_from_json(load_json_file(*geometry_path)));
    if (!built.ok()) throw std::runtime_error(built.defect->note);
    m = std::move(*built.matroid);
  } else {
    throw std::runtime_error("decompose needs --matroid or --geometry");
  }
  sink.note_input(candidate_path);
  const SplitPlan plan = plan_from_json(load_json_file(candidate_path));
  const GluingReading reading =
      strict_p2a ? GluingReading::literal_first_two : GluingReading::prefix_sums;

  const SequenceReport rep = verify_split_sequence(*m, plan, reading, threads);
  const Json report = sequence_report_to_json(*m, plan, rep);
  std::cout << canonical_dump(report);
  sink.write("report.json", report);
  Json certs = Json::array();
  for (const auto& p : rep.polytope.pairs) {
    Json cj;
    cj["i"] = p.i;
    cj["j"] = p.j;
    cj["face_i"] = face_result_to_json(p.face_i);
    cj["face_j"] = face_result_to_json(p.face_j);
    certs.push_back(cj);
  }
  sink.write("certificates.json", certs);
  sink.finish(Json{{"strict_pass", rep.strict_pass()}, {"sequence_pass", rep.sequence_pass()}});
  return rep.strict_pass() ? 0 : 1;
}

int cmd_uniform(int n, int r, int t, OutSink& sink, int threads) {
  const auto entries = enumerate_uniform_splits(n, r, t, threads);
  const Matroid m = uniform_matroid(n, r);
  Json table = Json::array();
  bool all_strict = true;
  char name[64];
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    std::snprintf(name, sizeof name, "decomposition_%02zu.json", i);
    sink.write(name, sequence_report_to_json(m, e.plan, e.report));
    Json row;
    row["parts"] = e.parts;
    row["a"] = e.plan.quotas;
    row["piece_counts"] = e.invariant.piece_counts;
    row["rank"] = e.invariant.rank;
    row["sequence_pass"] = e.report.sequence_pass();
    row["strict_pass"] = e.report.strict_pass();
    table.push_back(row);
    all_strict = all_strict && e.report.strict_pass();
  }
  Json summary;
  summary["n"] = n;
  summary["r"] = r;
  summary["t"] = t;
  summary["count"] = entries.size();
  summary["expected_count"] = count_exact_partitions_min2(n, t);
  summary["invariants"] = table;
  std::cout << canonical_dump(summary);
  sink.write("invariants.json", summary);
  sink.finish(Json{{"count", entries.size()}, {"all_strict_pass", all_strict}});
  return all_strict ? 0 : 1;
}

int cmd_lift(const fs::path& decomposition_path, const fs::path& matroid_path,
             OutSink& sink, int threads) {
  sink.note_input(decomposition_path);
  sink.note_input(matroid_path);
  const Decomposition d = decomposition_from_json(load_json_file(decomposition_path));
  const Matroid m2 = load_matroid(matroid_path);
  const LiftReport rep = lift_by_direct_sum(d, m2, threads);
  const Json out = lift_report_to_json(rep);
  std::cout << canonical_dump(out);
  sink.write("lift_report.json", out);
  sink.write("lifted_decomposition.json", decomposition_to_json(rep.lifted));
  sink.finish(Json{{"pass", rep.pass()}});
  return rep.pass() ? 0 : 1;
}

int cmd_search(const fs::path& matroid_path, int t, std::uint64_t budget, OutSink& sink,
               bool strict_p2a, int threads) {
  sink.note_input(matroid_path);
  const Matroid m = load_matroid(matroid_path);
  SearchLimits limits;
  limits.max_candidates = budget;
  limits.threads = threads;
  const GluingReading reading =
      strict_p2a ? GluingReading::literal_first_two : GluingReading::prefix_sums;
  const PlanSearchResult res = search_plans(m, t, limits, reading);
  Json out;
  out["t"] = t;
  out["examined"] = res.examined;
  out["complete"] = res.complete;
  if (!res.complete) out["incomplete"] = true;
  Json plans = Json::array();
  for (const auto& p : res.plans) plans.push_back(plan_to_json(p));
  out["plans"] = plans;
  Json groups = Json::array();
  for (const auto& g : group_by_block_multiset(res.plans)) groups.push_back(g);
  out["block_multiset_groups"] = groups;
  std::cout << canonical_dump(out);
  sink.write("candidates.json", out);
  sink.finish(Json{{"found", res.plans.size()}, {"complete", res.complete}});
  return 0;
}

int cmd_geometry(const fs::path& geometry_path, int t, OutSink& sink) {
  sink.note_input(geometry_path);
  const PointLineConfig cfg = config_from_json(load_json_file(geometry_path));
  auto built = matroid_from_diagram(cfg);
  if (!built.ok()) throw std::runtime_error(built.defect->note);
  const auto plans = search_diagram_partitions(cfg, t);
  Json out;
  out["t"] = t;
  out["matroid"] = matroid_to_json(*built.matroid);
  Json list = Json::array();
  for (const auto& p : plans) {
    Json pj = plan_to_json(p);
    pj["combinatorial_confirmed"] = evaluate_plan(*built.matroid, p).ok();
    list.push_back(pj);
  }
  out["plans"] = list;
  std::cout << canonical_dump(out);
  sink.write("geometric_candidates.json", out);
  sink.finish(Json{{"found", plans.size()}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"matroid base polytope split sequences"};
  app.require_subcommand(1);

  std::string matroid_path, candidate_path, geometry_path, decomposition_path, out_dir;
  int t = 2, n = 0, r = 0, threads = 1;
  std::uint64_t budget = UINT64_MAX;
  bool strict_p2a = false;

  auto* validate = app.add_subcommand("validate", "check a base family against the exchange axiom");
  validate->add_option("--matroid", matroid_path, "matroid JSON file")->required();
  validate->add_option("--threads", threads, "worker threads (results identical)");

  auto* decompose = app.add_subcommand("decompose", "verify a split sequence for a candidate partition");
  decompose->add_option("--matroid", matroid_path, "matroid JSON file");
  decompose->add_option("--geometry", geometry_path, "point-line configuration JSON file");
  decompose->add_option("--candidate", candidate_path, "candidate JSON file")->required();
  decompose->add_option("--out", out_dir, "output directory");
  decompose->add_flag("--strict-p2a", strict_p2a, "literal two-quota reading of the gluing bound");
  decompose->add_option("--threads", threads, "worker threads (results identical)");

  auto* uniform = app.add_subcommand("uniform", "enumerate split sequences of a uniform matroid");
  uniform->add_option("--n", n, "ground set size")->required();
  uniform->add_option("--r", r, "rank")->required();
  uniform->add_option("--t", t, "piece count")->required();
  uniform->add_option("--out", out_dir, "output directory");
  uniform->add_option("--threads", threads, "worker threads (results identical)");

  auto* lift = app.add_subcommand("lift", "lift a decomposition through a direct sum");
  lift->add_option("--decomposition", decomposition_path, "decomposition JSON file")->required();
  lift->add_option("--matroid", matroid_path, "second summand JSON file")->required();
  lift->add_option("--out", out_dir, "output directory");
  lift->add_option("--threads", threads, "worker threads (results identical)");

  auto* search = app.add_subcommand("search", "exhaustive search for admissible block partitions");
  search->add_option("--matroid", matroid_path, "matroid JSON file")->required();
  search->add_option("--t", t, "block count")->required();
  search->add_option("--budget", budget, "max candidates examined");
  search->add_option("--out", out_dir, "output directory");
  search->add_flag("--strict-p2a", strict_p2a, "literal two-quota reading of the gluing bound");
  search->add_option("--threads", threads, "worker threads (results identical)");

  auto* geometry = app.add_subcommand("geometry", "apply the plane-diagram block rules");
  geometry->add_option("--geometry", geometry_path, "point-line configuration JSON file")->required();
  geometry->add_option("--t", t, "2 or 3")->required();
  geometry->add_option("--out", out_dir, "output directory");

  CLI11_PARSE(app, argc, argv);

  if (threads < 1) {
    std::cerr << "error: --threads must be >= 1\n";
    return 2;
  }

  try {
    OutSink sink;
    sink.command = app.get_subcommands().front()->get_name();
    if (!out_dir.empty()) sink.dir = fs::path(out_dir);
    if (validate->parsed()) return cmd_validate(matroid_path, threads);
    if (decompose->parsed()) {
      std::optional<fs::path> mp, gp;
      if (!matroid_path.empty()) mp = matroid_path;
      if (!geometry_path.empty()) gp = geometry_path;
      return cmd_decompose(mp, gp, candidate_path, sink, strict_p2a, threads);
    }
    if (uniform->parsed()) return cmd_uniform(n, r, t, sink, threads);
    if (lift->parsed()) return cmd_lift(decomposition_path, matroid_path, sink, threads);
    if (search->parsed()) return cmd_search(matroid_path, t, budget, sink, strict_p2a, threads);
    if (geometry->parsed()) return cmd_geometry(geometry_path, t, sink);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
