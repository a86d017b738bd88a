#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "splitlab/matroid.hpp"

namespace splitlab {

// Ordered blocks E_1..E_t with split integers a_1..a_t. Block order matters:
// the decomposition pieces are defined by prefix unions.
struct SplitPlan {
  std::vector<SetWord> blocks;
  std::vector<int> quotas;

  int t() const { return static_cast<int>(blocks.size()); }
  SetWord prefix_mask(int j) const;  // E_1 | ... | E_j (1-based, j in 0..t)
  int quota_prefix(int j) const;     // a_1 + ... + a_j
};

// The gluing condition bounds |X| by the quota sums of the two intervals.
// The literal reading instead bounds them by a_1 and a_2 alone; it is kept
// selectable for experimentation and is equivalent when t = 2.
enum class GluingReading { prefix_sums, literal_first_two };

enum class PlanClause { structure, rank_sum, pair_gluing, triple_gluing };

struct PlanViolation {
  PlanClause clause = PlanClause::structure;
  int j = 0;
  int k = 0;
  SetWord x = 0;
  SetWord y = 0;
  SetWord z = 0;
  std::string note;
};

struct PlanVerdict {
  bool structure_ok = false;
  bool rank_sum_ok = false;
  bool pair_ok = false;
  bool triple_ok = false;
  std::vector<int> block_ranks;
  std::optional<PlanViolation> violation;  // first failure in clause order

  bool ok() const { return structure_ok && rank_sum_ok && pair_ok && triple_ok; }
};

// Blocks partition the ground set, t >= 2, and 0 < a_i < r(M|E_i).
std::optional<PlanViolation> check_structure(const Matroid& m, const SplitPlan& plan);

// r(M) == sum of quotas.
bool check_rank_sum(const Matroid& m, const SplitPlan& plan);

// For each boundary j: X independent in the prefix, Y independent in the
// suffix, within the size bounds, forces X ∪ Y independent. Only sets of
// maximal admissible size are enumerated; hereditary independence covers
// the smaller ones. First violating (j, X, Y) returned in word order.
std::optional<PlanViolation> check_pair_gluing(
    const Matroid& m, const SplitPlan& plan,
    GluingReading reading = GluingReading::prefix_sums);

// Three-interval version over boundary pairs j < k; vacuous for t = 2.
std::optional<PlanViolation> check_triple_gluing(const Matroid& m,
                                                 const SplitPlan& plan);

PlanVerdict evaluate_plan(const Matroid& m, const SplitPlan& plan,
                          GluingReading reading = GluingReading::prefix_sums);

struct SearchLimits {
  std::uint64_t max_candidates = UINT64_MAX;
  int threads = 1;
};

struct PlanSearchResult {
  std::vector<SplitPlan> plans;
  bool complete = true;
  std::uint64_t examined = 0;
};

// All ordered block tuples (each block of rank >= 2) with all admissible
// quota vectors, filtered by evaluate_plan. Deterministic order: canonical
// unordered partitions by block minima, then block permutations, then
// quota vectors lexicographically. Block order is not quotiented away.
PlanSearchResult search_plans(const Matroid& m, int t, SearchLimits limits = {},
                              GluingReading reading = GluingReading::prefix_sums);

// Reporting aid: indices of plans sharing the same unordered block multiset.
std::vector<std::vector<std::size_t>> group_by_block_multiset(
    const std::vector<SplitPlan>& plans);

std::string describe(const PlanViolation& v);

}  // namespace splitlab
