#pragma once

#include <optional>
#include <string>
#include <vector>

#include "splitlab/matroid.hpp"
#include "splitlab/partition.hpp"

namespace splitlab {

// Abstract plane diagram: n points and lines of >= 3 points, two lines
// sharing at most one point. Lines are combinatorial, not coordinates.
struct PointLineConfig {
  int n = 0;
  std::vector<SetWord> lines;
};

struct ConfigDefect {
  std::string note;
};
std::optional<ConfigDefect> validate_config(const PointLineConfig& cfg);

// Rank-3 matroid whose bases are the non-collinear triples. Fails when all
// triples are collinear (rank below 3).
struct DiagramMatroidResult {
  std::optional<Matroid> matroid;
  std::optional<ConfigDefect> defect;
  bool ok() const { return matroid.has_value(); }
};
DiagramMatroidResult matroid_from_diagram(const PointLineConfig& cfg);

// Outcome of one geometric sufficient rule. On a geometric pass the implied
// plan (quotas (1,2) or (1,1,1)) is cross-checked against the combinatorial
// predicate; a disagreement would falsify the rule on the instance.
struct RuleVerdict {
  bool geometric_pass = false;
  std::string reason;  // first failed condition when not passing
  std::optional<SplitPlan> plan;
  bool combinatorial_confirmed = false;
  bool pass() const { return geometric_pass && combinatorial_confirmed; }
};

// Two blocks: r(E1) >= 2, r(E2) = 3, and every line meeting E1 has at most
// one point in E2. Emits quotas (1,2).
RuleVerdict two_block_rule(const PointLineConfig& cfg, SetWord e1, SetWord e2);

// Three blocks: every r(Ei) >= 2, every line meeting E1 has at most one
// point outside E1, and symmetrically for E3. Emits quotas (1,1,1).
RuleVerdict three_block_rule(const PointLineConfig& cfg, SetWord e1, SetWord e2, SetWord e3);

// All ordered block tuples passing the rule for t = 2 or t = 3,
// deterministic order.
std::vector<SplitPlan> search_diagram_partitions(const PointLineConfig& cfg, int t);

}  // namespace splitlab
