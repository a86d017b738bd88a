#pragma once

#include <optional>
#include <string>
#include <vector>

#include "splitlab/matroid.hpp"
#include "splitlab/partition.hpp"
#include "splitlab/polytope.hpp"

namespace splitlab {

enum class Provenance { construction, lifted, external };

// Piece j of a split sequence keeps the bases whose prefix counts reached
// every earlier quota sum and have not passed the j-th one.
struct PieceConditions {
  struct Bound {
    SetWord prefix_mask = 0;
    int at_least = -1;  // -1 means unbounded
    int at_most = -1;
  };
  int piece = 0;  // 1-based
  std::vector<Bound> bounds;

  bool admits(SetWord b) const;
};

PieceConditions piece_conditions(const SplitPlan& plan, int j);

struct Decomposition {
  Matroid parent;
  std::optional<SplitPlan> plan;
  std::vector<Matroid> pieces;
  Provenance provenance = Provenance::construction;
};

// Firing for a verified plan would falsify the piece construction on the
// instance; it is kept as a loud report rather than an assert.
struct ConstructionFailure {
  int piece = 0;
  bool empty_piece = false;
  std::optional<ExchangeViolation> violation;
};

struct PiecesResult {
  std::optional<Decomposition> decomposition;
  std::optional<ConstructionFailure> failure;
  bool ok() const { return decomposition.has_value(); }
};

// The t pieces of the split sequence for a plan that passed evaluate_plan.
PiecesResult build_split_pieces(const Matroid& m, const SplitPlan& plan);

// B(M_j) ∩ B(M_k) two ways: by the closed-form prefix conditions and
// set-theoretically. A mismatch is a hard failure.
struct IntersectionFamilyResult {
  int j = 0;
  int k = 0;
  std::vector<SetWord> by_conditions;
  std::vector<SetWord> set_theoretic;
  bool match = false;
  bool matroid_ok = false;
  std::optional<ExchangeViolation> violation;
  bool ok() const { return match && matroid_ok; }
};
IntersectionFamilyResult intersection_family(const Decomposition& d, int j, int k);

// One hyperplane split step: the remaining region is cut along the j-th
// prefix functional. Both sides must be matroids and the slice must be a
// face of both, certified by the analytic integer functional.
struct StageInterface {
  int stage = 0;  // j in 1..t-1
  std::vector<long long> functional;
  long long value = 0;
  std::vector<SetWord> interface_bases;
  bool left_matroid_ok = false;   // piece M_j
  bool right_matroid_ok = false;  // remaining region
  bool left_cert_ok = false;
  bool right_cert_ok = false;
  bool ok() const {
    return left_matroid_ok && right_matroid_ok && left_cert_ok && right_cert_ok;
  }
};

struct SequenceReport {
  PlanVerdict plan_verdict;
  std::optional<Decomposition> decomposition;
  std::optional<ConstructionFailure> construction_failure;
  std::vector<IntersectionFamilyResult> closed_form_pairs;
  bool closed_form_ok = false;
  std::vector<StageInterface> interfaces;
  bool stages_ok = false;
  DecompositionReport polytope;

  // Full strict validity: cover, matroid pieces, matroid intersections and
  // two-sided face certificates for every pair.
  bool strict_pass() const { return plan_verdict.ok() && polytope.pass(); }
  // What the split-sequence construction guarantees: every stage is a genuine
  // hyperplane split and all pairwise base intersections are matroids.
  bool sequence_pass() const {
    return plan_verdict.ok() && !construction_failure && closed_form_ok && stages_ok &&
           polytope.preconditions_ok && polytope.cover_ok && polytope.pieces_ok &&
           polytope.intersections_matroid_ok;
  }
};

SequenceReport verify_split_sequence(const Matroid& m, const SplitPlan& plan,
                                     GluingReading reading = GluingReading::prefix_sums,
                                     int threads = 1);

// Number of multisets {p_1..p_t}, p_i >= 2, summing to n.
long long count_exact_partitions_min2(int n, int t);
// The multisets themselves as nondecreasing part lists, lexicographic.
std::vector<std::vector<int>> exact_partitions_min2(int n, int t);

// Consecutive-block plan on U_{n,r} for the given part sizes. Quotas are
// chosen canonically: every block first cedes 1 from its restriction rank,
// and the remaining surplus is consumed from the last block backwards.
// Throws std::invalid_argument on violated preconditions and
// std::logic_error if the rank surplus inequality sum(r_i) >= r + t fails.
SplitPlan uniform_split_plan(int n, int r, const std::vector<int>& parts);

// Distinguishing invariant: sorted piece base counts (plus the common rank).
struct SplitInvariant {
  std::vector<long long> piece_counts;
  int rank = 0;
  auto operator<=>(const SplitInvariant&) const = default;
};
SplitInvariant invariant_of(const Decomposition& d);

struct UniformSplitEntry {
  std::vector<int> parts;
  SplitPlan plan;
  SequenceReport report;
  SplitInvariant invariant;
};

// One split sequence per integer partition counted by
// count_exact_partitions_min2(n, t), each fully verified.
std::vector<UniformSplitEntry> enumerate_uniform_splits(int n, int r, int t,
                                                        int threads = 1);

// Re-verifies a plan on the relaxation and runs the pipeline there. The plan
// failing on the relaxation is a hard finding and is reported, not silenced.
struct TransferReport {
  Matroid relaxed;
  PlanVerdict verdict_on_relaxed;
  SequenceReport report;
  std::vector<int> absorbing_pieces;  // pieces of the relaxation containing x
};
struct TransferResult {
  std::optional<TransferReport> report;
  std::optional<RelaxErrorKind> relax_error;        // x not a circuit-hyperplane
  std::optional<PlanViolation> plan_error_on_base;  // plan fails on m itself
  bool ok() const { return report.has_value(); }
};
TransferResult transfer_to_relaxation(const Matroid& m, SetWord x, const SplitPlan& plan,
                                      GluingReading reading = GluingReading::prefix_sums,
                                      int threads = 1);

// Pieces L_i = N_i ⊕ m2 with labels shifted by n(m1).
struct LiftPairCheck {
  int i = 0;
  int j = 0;
  bool product_ok = false;  // B(L_i) ∩ B(L_j) equals (N_i ∩ N_j) ⊕ m2
};
struct LiftReport {
  Decomposition lifted;
  std::vector<long long> expected_counts;
  bool counts_ok = false;
  std::vector<LiftPairCheck> pair_checks;
  bool pair_structure_ok = false;
  DecompositionReport polytope;
  bool pass() const { return counts_ok && pair_structure_ok && polytope.pass(); }
};
LiftReport lift_by_direct_sum(const Decomposition& d, const Matroid& m2, int threads = 1);

}  // namespace splitlab
