#include "splitlab/diagram.hpp"

#include <stdexcept>

namespace splitlab {

std::optional<ConfigDefect> validate_config(const PointLineConfig& cfg) {
  if (cfg.n < 1 || cfg.n > kMaxGroundSize)
    return ConfigDefect{"n must be in 1..64"};
  const SetWord mask = full_mask(cfg.n);
  for (std::size_t i = 0; i < cfg.lines.size(); ++i) {
    const SetWord l = cfg.lines[i];
    if ((l & ~mask) != 0) return ConfigDefect{"line " + format_set(l) + " leaves 1..n"};
    if (set_size(l) < 3)
      return ConfigDefect{"line " + format_set(l) + " has fewer than 3 points"};
    for (std::size_t j = 0; j < i; ++j) {
      if (set_size(l & cfg.lines[j]) > 1)
        return ConfigDefect{"lines " + format_set(cfg.lines[j]) + " and " + format_set(l) +
                            " share two points"};
    }
  }
  return std::nullopt;
}

DiagramMatroidResult matroid_from_diagram(const PointLineConfig& cfg) {
  DiagramMatroidResult out;
  if (auto defect = validate_config(cfg)) {
    out.defect = defect;
    return out;
  }
  if (cfg.n < 3) {
    out.defect = ConfigDefect{"need at least 3 points for rank 3"};
    return out;
  }
  std::vector<SetWord> bases;
  const SetWord limit = full_mask(cfg.n);
  for (SetWord b = full_mask(3); b != 0 && b <= limit; b = next_same_size(b)) {
    bool collinear = false;
    for (SetWord l : cfg.lines)
      if ((b & ~l) == 0) {
        collinear = true;
        break;
      }
    if (!collinear) bases.push_back(b);
  }
  if (bases.empty()) {
    out.defect = ConfigDefect{"every triple is collinear: rank below 3"};
    return out;
  }
  auto fam = make_base_family_words(cfg.n, 3, std::move(bases));
  auto val = validate_base_family(*fam.family);
  if (!val.ok())
    throw std::logic_error("matroid_from_diagram: diagram family failed exchange check");
  out.matroid = std::move(*val.matroid);
  return out;
}

namespace {

RuleVerdict confirm(const Matroid& m, RuleVerdict v) {
  if (v.geometric_pass && v.plan)
    v.combinatorial_confirmed = evaluate_plan(m, *v.plan).ok();
  return v;
}

RuleVerdict two_block_impl(const PointLineConfig& cfg, const Matroid& m, SetWord e1,
                           SetWord e2) {
  RuleVerdict v;
  if (e1 == 0 || e2 == 0 || (e1 & e2) != 0 || (e1 | e2) != m.ground_mask())
    throw std::invalid_argument("two_block_rule: blocks must partition the points");
  if (m.rank_of(e1) < 2) {
    v.reason = "r(E1) < 2";
    return v;
  }
  if (m.rank_of(e2) != 3) {
    v.reason = "r(E2) != 3";
    return v;
  }
  for (SetWord l : cfg.lines) {
    if ((l & e1) != 0 && set_size(l & e2) > 1) {
      v.reason = "line " + format_set(l) + " meets E1 and has two points in E2";
      return v;
    }
  }
  v.geometric_pass = true;
  v.plan = SplitPlan{{e1, e2}, {1, 2}};
  return confirm(m, std::move(v));
}

RuleVerdict three_block_impl(const PointLineConfig& cfg, const Matroid& m, SetWord e1,
                             SetWord e2, SetWord e3) {
  RuleVerdict v;
  if (e1 == 0 || e2 == 0 || e3 == 0 || (e1 & e2) != 0 || (e1 & e3) != 0 || (e2 & e3) != 0 ||
      (e1 | e2 | e3) != m.ground_mask())
    throw std::invalid_argument("three_block_rule: blocks must partition the points");
  for (int i = 0; i < 3; ++i) {
    const SetWord b = i == 0 ? e1 : i == 1 ? e2 : e3;
    if (m.rank_of(b) < 2) {
      v.reason = "r(E" + std::to_string(i + 1) + ") < 2";
      return v;
    }
  }
  for (SetWord l : cfg.lines) {
    if (set_size(l) < 3) continue;  // guarded by config validation already
    if ((l & e1) != 0 && set_size(l & (e2 | e3)) > 1) {
      v.reason = "line " + format_set(l) + " meets E1 and has two points in E2 ∪ E3";
      return v;
    }
    if ((l & e3) != 0 && set_size(l & (e1 | e2)) > 1) {
      v.reason = "line " + format_set(l) + " meets E3 and has two points in E1 ∪ E2";
      return v;
    }
  }
  v.geometric_pass = true;
  v.plan = SplitPlan{{e1, e2, e3}, {1, 1, 1}};
  return confirm(m, std::move(v));
}

Matroid build_or_throw(const PointLineConfig& cfg, const char* who) {
  auto built = matroid_from_diagram(cfg);
  if (!built.ok()) throw std::invalid_argument(std::string(who) + ": " + built.defect->note);
  return std::move(*built.matroid);
}

}  // namespace

RuleVerdict two_block_rule(const PointLineConfig& cfg, SetWord e1, SetWord e2) {
  const Matroid m = build_or_throw(cfg, "two_block_rule");
  return two_block_impl(cfg, m, e1, e2);
}

RuleVerdict three_block_rule(const PointLineConfig& cfg, SetWord e1, SetWord e2, SetWord e3) {
  const Matroid m = build_or_throw(cfg, "three_block_rule");
  return three_block_impl(cfg, m, e1, e2, e3);
}

std::vector<SplitPlan> search_diagram_partitions(const PointLineConfig& cfg, int t) {
  if (t != 2 && t != 3)
    throw std::invalid_argument("search_diagram_partitions: t must be 2 or 3");
  auto built = matroid_from_diagram(cfg);
  if (!built.ok()) return {};
  const Matroid& m = *built.matroid;
  const SetWord ground = full_mask(cfg.n);
  std::vector<SplitPlan> out;
  if (t == 2) {
    for (SetWord e1 = 1; e1 < ground; ++e1) {
      RuleVerdict v = two_block_impl(cfg, m, e1, ground & ~e1);
      if (v.pass()) out.push_back(*v.plan);
    }
    return out;
  }
  for (SetWord e1 = 1; e1 < ground; ++e1) {
    const SetWord rest = ground & ~e1;
    // Nonempty proper subsets of the remainder, ascending.
    for (SetWord e2 = (0 - rest) & rest; e2 != 0; e2 = (e2 - rest) & rest) {
      if (e2 == rest) continue;
      RuleVerdict v = three_block_impl(cfg, m, e1, e2, rest & ~e2);
      if (v.pass()) out.push_back(*v.plan);
    }
  }
  return out;
}

}  // namespace splitlab
