#include "splitlab/matroid.hpp"

#include <algorithm>
#include <stdexcept>

#include "splitlab/parallel.hpp"

namespace splitlab {

bool BaseFamily::member(SetWord b) const {
  return std::binary_search(bases.begin(), bases.end(), b);
}

FamilyBuildResult make_base_family_words(int n, int rank, std::vector<SetWord> bases) {
  FamilyBuildResult out;
  if (n < 1 || n > kMaxGroundSize) {
    out.defect = FamilyDefect{FamilyDefectKind::bad_ground_set,
                              "n must be in 1..64, got " + std::to_string(n)};
    return out;
  }
  if (rank < 0 || rank > n) {
    out.defect = FamilyDefect{FamilyDefectKind::bad_rank,
                              "rank must be in 0..n, got " + std::to_string(rank)};
    return out;
  }
  if (bases.empty()) {
    out.defect = FamilyDefect{FamilyDefectKind::empty_family, "no bases given"};
    return out;
  }
  const SetWord mask = full_mask(n);
  for (SetWord b : bases) {
    if ((b & ~mask) != 0) {
      out.defect = FamilyDefect{FamilyDefectKind::element_out_of_range,
                                "base " + format_set(b) + " leaves 1.." + std::to_string(n)};
      return out;
    }
    if (set_size(b) != rank) {
      out.defect = FamilyDefect{FamilyDefectKind::wrong_cardinality,
                                "base " + format_set(b) + " has " +
                                    std::to_string(set_size(b)) + " elements, want " +
                                    std::to_string(rank)};
      return out;
    }
  }
  std::sort(bases.begin(), bases.end());
  auto dup = std::adjacent_find(bases.begin(), bases.end());
  if (dup != bases.end()) {
    out.defect = FamilyDefect{FamilyDefectKind::duplicate_base,
                              "base " + format_set(*dup) + " listed twice"};
    return out;
  }
  out.family = BaseFamily{GroundSet{n}, rank, std::move(bases)};
  return out;
}

FamilyBuildResult make_base_family(int n, int rank,
                                   const std::vector<std::vector<int>>& bases) {
  std::vector<SetWord> words;
  words.reserve(bases.size());
  for (const auto& b : bases) {
    for (int e : b) {
      if (e < 1 || e > kMaxGroundSize) {
        FamilyBuildResult out;
        out.defect = FamilyDefect{FamilyDefectKind::element_out_of_range,
                                  "element " + std::to_string(e)};
        return out;
      }
    }
    words.push_back(from_elements(std::span<const int>(b)));
    if (set_size(words.back()) != static_cast<int>(b.size())) {
      FamilyBuildResult out;
      out.defect = FamilyDefect{FamilyDefectKind::wrong_cardinality,
                                "repeated element inside one base"};
      return out;
    }
  }
  return make_base_family_words(n, rank, std::move(words));
}

Matroid::Matroid(BaseFamily family) : family_(std::move(family)) {
  const int n = family_.ground.n;
  if (n <= 20) {
    indep_bits_.assign((std::size_t{1} << n) / 64 + 1, 0);
    for (SetWord b : family_.bases) {
      // Mark every subset of b independent.
      SetWord sub = b;
      while (true) {
        indep_bits_[sub >> 6] |= (std::uint64_t{1} << (sub & 63));
        if (sub == 0) break;
        sub = (sub - 1) & b;
      }
    }
    has_table_ = true;
  }
}

Matroid Matroid::unchecked(BaseFamily family) { return Matroid(std::move(family)); }

bool Matroid::is_independent(SetWord s) const {
  if (has_table_)
    return (indep_bits_[s >> 6] >> (s & 63)) & 1;
  for (SetWord b : family_.bases)
    if ((s & ~b) == 0) return true;
  return false;
}

int Matroid::rank_of(SetWord a) const {
  // rank(A) = max over bases of |A ∩ B|: any maximal independent subset of A
  // extends to a base.
  int best = 0;
  for (SetWord b : family_.bases) best = std::max(best, set_size(a & b));
  return best;
}

SetWord Matroid::closure(SetWord x) const {
  const int rx = rank_of(x);
  SetWord cl = x;
  for (int e = 1; e <= n(); ++e) {
    if (contains(x, e)) continue;
    if (rank_of(x | element_bit(e)) == rx) cl |= element_bit(e);
  }
  return cl;
}

namespace {

// First e in b1\b2 (ascending) with no valid swap; 0 if the pair is fine.
int pair_violation(const BaseFamily& f, SetWord b1, SetWord b2) {
  SetWord out = b1 & ~b2;
  SetWord in = b2 & ~b1;
  while (out) {
    const int e = std::countr_zero(out) + 1;
    out &= out - 1;
    const SetWord stripped = b1 & ~element_bit(e);
    bool found = false;
    SetWord cand = in;
    while (cand) {
      const int fbit = std::countr_zero(cand);
      cand &= cand - 1;
      if (f.member(stripped | (SetWord{1} << fbit))) {
        found = true;
        break;
      }
    }
    if (!found) return e;
  }
  return 0;
}

}  // namespace

ValidationResult validate_base_family(const BaseFamily& family, int threads) {
  ValidationResult out;
  auto rebuilt = make_base_family_words(family.ground.n, family.rank, family.bases);
  if (!rebuilt.ok()) {
    out.defect = rebuilt.defect;
    return out;
  }
  const BaseFamily& f = *rebuilt.family;
  const std::size_t nb = f.bases.size();

  // Scans pairs in (b1, b2) word order; the first violation is canonical.
  auto scan_row = [&](std::size_t i) -> std::optional<ExchangeViolation> {
    for (std::size_t j = 0; j < nb; ++j) {
      if (i == j) continue;
      if (int e = pair_violation(f, f.bases[i], f.bases[j]); e != 0)
        return ExchangeViolation{f.bases[i], f.bases[j], e};
    }
    return std::nullopt;
  };

  std::optional<ExchangeViolation> first;
  if (threads <= 1 || nb < 64) {
    for (std::size_t i = 0; i < nb && !first; ++i) first = scan_row(i);
  } else {
    std::vector<std::optional<ExchangeViolation>> row(nb);
    parallel_for(nb, threads, [&](std::size_t i) { row[i] = scan_row(i); });
    for (std::size_t i = 0; i < nb && !first; ++i) first = row[i];
  }

  if (first) {
    out.violation = first;
    return out;
  }
  out.matroid = Matroid(f);
  return out;
}

bool replay_violation(const BaseFamily& family, const ExchangeViolation& v) {
  if (!family.member(v.b1) || !family.member(v.b2)) return false;
  if (!contains(v.b1 & ~v.b2, v.element)) return false;
  const SetWord stripped = v.b1 & ~element_bit(v.element);
  SetWord cand = v.b2 & ~v.b1;
  while (cand) {
    const int fbit = std::countr_zero(cand);
    cand &= cand - 1;
    if (family.member(stripped | (SetWord{1} << fbit))) return false;
  }
  return true;
}

Restriction restrict(const Matroid& m, SetWord a) {
  if (a == 0) throw std::invalid_argument("restrict: empty subset");
  const std::vector<int> labels = to_elements(a);
  const int ra = m.rank_of(a);

  std::vector<SetWord> masked;
  masked.reserve(m.bases().size());
  for (SetWord b : m.bases())
    if (set_size(b & a) == ra) masked.push_back(b & a);
  std::sort(masked.begin(), masked.end());
  masked.erase(std::unique(masked.begin(), masked.end()), masked.end());

  // Re-index to 1..|A|.
  std::vector<SetWord> reindexed;
  reindexed.reserve(masked.size());
  for (SetWord b : masked) {
    SetWord w = 0;
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (contains(b, labels[i])) w |= element_bit(static_cast<int>(i) + 1);
    reindexed.push_back(w);
  }
  std::sort(reindexed.begin(), reindexed.end());

  auto fam = make_base_family_words(static_cast<int>(labels.size()), ra, std::move(reindexed));
  if (!fam.ok()) throw std::logic_error("restrict: malformed restriction family");
  auto val = validate_base_family(*fam.family);
  if (!val.ok()) throw std::logic_error("restrict: restriction failed exchange check");
  return Restriction{std::move(*val.matroid), labels, a, std::move(masked)};
}

namespace {

bool is_circuit(const Matroid& m, SetWord x) {
  if (m.is_independent(x)) return false;
  SetWord rest = x;
  while (rest) {
    const int e = std::countr_zero(rest) + 1;
    rest &= rest - 1;
    if (!m.is_independent(x & ~element_bit(e))) return false;
  }
  return true;
}

}  // namespace

std::vector<SetWord> circuit_hyperplanes(const Matroid& m) {
  if (m.n() > 24)
    throw std::invalid_argument("circuit_hyperplanes: ground set too large for enumeration");
  // A circuit that is a rank-(r-1) flat has exactly r elements, so only
  // r-subsets need scanning.
  std::vector<SetWord> out;
  const int r = m.rank();
  if (r == 0) return out;
  SetWord x = full_mask(r);
  const SetWord limit = full_mask(m.n());
  for (; x != 0 && x <= limit; x = next_same_size(x)) {
    if (m.is_independent(x)) continue;
    if (m.rank_of(x) != r - 1) continue;
    if (!is_circuit(m, x)) continue;
    if (m.closure(x) != x) continue;
    out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

RelaxResult relax(const Matroid& m, SetWord x) {
  RelaxResult out;
  const int r = m.rank();
  if (set_size(x) != r || m.rank_of(x) != r - 1) {
    // Wrong size or wrong flat rank; distinguish independent sets.
    out.error = m.is_independent(x) ? RelaxErrorKind::not_dependent
                                    : RelaxErrorKind::wrong_rank;
    return out;
  }
  if (!is_circuit(m, x)) {
    out.error = m.is_independent(x) ? RelaxErrorKind::not_dependent
                                    : RelaxErrorKind::not_minimal;
    return out;
  }
  if (m.closure(x) != x) {
    out.error = RelaxErrorKind::not_a_flat;
    return out;
  }
  std::vector<SetWord> bases = m.bases();
  bases.push_back(x);
  auto fam = make_base_family_words(m.n(), r, std::move(bases));
  if (!fam.ok()) throw std::logic_error("relax: malformed family");
  auto val = validate_base_family(*fam.family);
  if (!val.ok()) throw std::logic_error("relax: relaxation failed exchange check");
  out.matroid = std::move(val.matroid);
  return out;
}

Matroid uniform_matroid(int n, int r, Validate v) {
  if (n < 1 || n > kMaxGroundSize) throw std::invalid_argument("uniform: bad n");
  if (r < 1 || r > n) throw std::invalid_argument("uniform: need 0 < r <= n");
  // Desk-scale guard: keep the family enumerable in memory.
  long double count = 1.0L;
  for (int i = 1; i <= r; ++i) count = count * (n - r + i) / i;
  if (count > 2e6L) throw std::invalid_argument("uniform: family too large");

  std::vector<SetWord> bases;
  bases.reserve(static_cast<std::size_t>(count + 0.5L));
  const SetWord limit = full_mask(n);
  for (SetWord b = full_mask(r); b != 0 && b <= limit; b = next_same_size(b))
    bases.push_back(b);

  auto fam = make_base_family_words(n, r, std::move(bases));
  if (v == Validate::no) return Matroid::unchecked(std::move(*fam.family));
  auto val = validate_base_family(*fam.family);
  if (!val.ok()) throw std::logic_error("uniform: exchange check failed");
  return std::move(*val.matroid);
}

Matroid direct_sum(const Matroid& m1, const Matroid& m2, Validate v) {
  const int n = m1.n() + m2.n();
  if (n > kMaxGroundSize) throw std::invalid_argument("direct_sum: combined ground set > 64");
  std::vector<SetWord> bases;
  bases.reserve(m1.bases().size() * m2.bases().size());
  for (SetWord b1 : m1.bases())
    for (SetWord b2 : m2.bases()) bases.push_back(b1 | (b2 << m1.n()));
  auto fam = make_base_family_words(n, m1.rank() + m2.rank(), std::move(bases));
  if (!fam.ok()) throw std::logic_error("direct_sum: malformed family");
  if (v == Validate::no) return Matroid::unchecked(std::move(*fam.family));
  auto val = validate_base_family(*fam.family);
  if (!val.ok()) throw std::logic_error("direct_sum: exchange check failed");
  return std::move(*val.matroid);
}

std::string describe(const FamilyDefect& d) {
  const char* kind = "";
  switch (d.kind) {
    case FamilyDefectKind::bad_ground_set: kind = "bad ground set"; break;
    case FamilyDefectKind::bad_rank: kind = "bad rank"; break;
    case FamilyDefectKind::empty_family: kind = "empty family"; break;
    case FamilyDefectKind::wrong_cardinality: kind = "wrong cardinality"; break;
    case FamilyDefectKind::duplicate_base: kind = "duplicate base"; break;
    case FamilyDefectKind::element_out_of_range: kind = "element out of range"; break;
  }
  return std::string(kind) + ": " + d.detail;
}

std::string describe(const ExchangeViolation& v) {
  return "exchange fails for b1=" + format_set(v.b1) + ", b2=" + format_set(v.b2) +
         ", e=" + std::to_string(v.element);
}

std::string describe(RelaxErrorKind k) {
  switch (k) {
    case RelaxErrorKind::not_dependent: return "set is independent, not a circuit";
    case RelaxErrorKind::not_minimal: return "set is dependent but not a circuit";
    case RelaxErrorKind::not_a_flat: return "set is not closed";
    case RelaxErrorKind::wrong_rank: return "set does not have rank r-1 and size r";
  }
  return "unknown";
}

}  // namespace splitlab
