#pragma once

#include <optional>
#include <string>
#include <vector>

#include "splitlab/sets.hpp"

namespace splitlab {

struct GroundSet {
  int n = 0;  // elements are 1..n, n <= 64

  SetWord mask() const { return full_mask(n); }
};

// An explicit family of r-subsets of {1..n}, stored sorted by word value.
struct BaseFamily {
  GroundSet ground;
  int rank = 0;
  std::vector<SetWord> bases;

  int n() const { return ground.n; }
  std::size_t size() const { return bases.size(); }
  bool member(SetWord b) const;
};

enum class FamilyDefectKind {
  bad_ground_set,
  bad_rank,
  empty_family,
  wrong_cardinality,
  duplicate_base,
  element_out_of_range,
};

struct FamilyDefect {
  FamilyDefectKind kind;
  std::string detail;
};

// Witness that the exchange axiom fails: e in b1\b2 has no f in b2\b1
// with (b1 - e) + f in the family.
struct ExchangeViolation {
  SetWord b1 = 0;
  SetWord b2 = 0;
  int element = 0;
};

// Builds a canonical family (sorted bases) or reports the first defect.
// Does not check the exchange axiom.
struct FamilyBuildResult {
  std::optional<BaseFamily> family;
  std::optional<FamilyDefect> defect;
  bool ok() const { return family.has_value(); }
};
FamilyBuildResult make_base_family(int n, int rank,
                                   const std::vector<std::vector<int>>& bases);
FamilyBuildResult make_base_family_words(int n, int rank, std::vector<SetWord> bases);

struct ValidationResult;

// A validated base family plus fast oracles. Immutable after construction.
class Matroid {
 public:
  const BaseFamily& family() const { return family_; }
  int n() const { return family_.ground.n; }
  int rank() const { return family_.rank; }
  const std::vector<SetWord>& bases() const { return family_.bases; }
  SetWord ground_mask() const { return family_.ground.mask(); }

  bool is_base(SetWord b) const { return family_.member(b); }
  bool is_independent(SetWord s) const;
  int rank_of(SetWord a) const;
  SetWord closure(SetWord x) const;

  // Documented fast path: trust a constructor output, skip the exchange check.
  static Matroid unchecked(BaseFamily family);

 private:
  friend ValidationResult validate_base_family(const BaseFamily&, int);
  explicit Matroid(BaseFamily family);

  BaseFamily family_;
  // Independence bitmap over all 2^n subsets, built when n small enough.
  std::vector<std::uint64_t> indep_bits_;
  bool has_table_ = false;
};

struct ValidationResult {
  std::optional<Matroid> matroid;
  std::optional<FamilyDefect> defect;          // malformed input
  std::optional<ExchangeViolation> violation;  // axiom failure
  bool ok() const { return matroid.has_value(); }
};

// Full O(|B|^2 * r * n) exchange check; returns the first violation in
// (b1, b2, e) word order. `threads` >= 2 fans the pair loop out with an
// ordered reduction, so the witness is identical regardless.
ValidationResult validate_base_family(const BaseFamily& family, int threads = 1);

// Re-runs a claimed violation against the family.
bool replay_violation(const BaseFamily& family, const ExchangeViolation& v);

// Restriction M|A re-indexed to 1..|A|; labels[i] is the original element
// for new element i+1. masked_bases keeps original labels.
struct Restriction {
  Matroid matroid;
  std::vector<int> labels;
  SetWord support = 0;
  std::vector<SetWord> masked_bases;
};
Restriction restrict(const Matroid& m, SetWord a);

// All sets that are both circuits and rank-(r-1) flats, sorted by
// (cardinality, word value). Requires n <= 24.
std::vector<SetWord> circuit_hyperplanes(const Matroid& m);

enum class RelaxErrorKind { not_dependent, not_minimal, not_a_flat, wrong_rank };
struct RelaxResult {
  std::optional<Matroid> matroid;
  std::optional<RelaxErrorKind> error;
  bool ok() const { return matroid.has_value(); }
};
// Adjoins a circuit-hyperplane to the base family.
RelaxResult relax(const Matroid& m, SetWord x);

enum class Validate { yes, no };

// All r-subsets of 1..n. Guards against families too large for desk use.
Matroid uniform_matroid(int n, int r, Validate v = Validate::yes);

// Ground sets made disjoint by shifting m2's labels by m1.n().
Matroid direct_sum(const Matroid& m1, const Matroid& m2, Validate v = Validate::yes);

std::string describe(const FamilyDefect& d);
std::string describe(const ExchangeViolation& v);
std::string describe(RelaxErrorKind k);

}  // namespace splitlab
