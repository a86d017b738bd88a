#include "splitlab/decompose.hpp"

#include <algorithm>
#include <stdexcept>

#include "splitlab/parallel.hpp"

namespace splitlab {

bool PieceConditions::admits(SetWord b) const {
  for (const Bound& bd : bounds) {
    const int cnt = set_size(b & bd.prefix_mask);
    if (bd.at_least >= 0 && cnt < bd.at_least) return false;
    if (bd.at_most >= 0 && cnt > bd.at_most) return false;
  }
  return true;
}

PieceConditions piece_conditions(const SplitPlan& plan, int j) {
  PieceConditions out;
  out.piece = j;
  for (int i = 1; i < j; ++i)
    out.bounds.push_back({plan.prefix_mask(i), plan.quota_prefix(i), -1});
  out.bounds.push_back({plan.prefix_mask(j), -1, plan.quota_prefix(j)});
  return out;
}

PiecesResult build_split_pieces(const Matroid& m, const SplitPlan& plan) {
  PiecesResult out;
  const int t = plan.t();
  std::vector<Matroid> pieces;
  pieces.reserve(static_cast<std::size_t>(t));
  for (int j = 1; j <= t; ++j) {
    const PieceConditions cond = piece_conditions(plan, j);
    std::vector<SetWord> bases;
    for (SetWord b : m.bases())
      if (cond.admits(b)) bases.push_back(b);
    if (bases.empty()) {
      out.failure = ConstructionFailure{j, true, std::nullopt};
      return out;
    }
    auto fam = make_base_family_words(m.n(), m.rank(), std::move(bases));
    auto val = validate_base_family(*fam.family);
    if (!val.ok()) {
      out.failure = ConstructionFailure{j, false, val.violation};
      return out;
    }
    pieces.push_back(std::move(*val.matroid));
  }
  out.decomposition =
      Decomposition{m, plan, std::move(pieces), Provenance::construction};
  return out;
}

IntersectionFamilyResult intersection_family(const Decomposition& d, int j, int k) {
  if (!d.plan) throw std::invalid_argument("intersection_family: decomposition has no plan");
  const SplitPlan& plan = *d.plan;
  const int t = plan.t();
  if (!(1 <= j && j < k && k <= t))
    throw std::invalid_argument("intersection_family: need 1 <= j < k <= t");
  IntersectionFamilyResult out;
  out.j = j;
  out.k = k;

  // Conditions C_h for h <= k: equality at h = j, upper bound at h = k,
  // lower bounds elsewhere.
  for (SetWord b : d.parent.bases()) {
    bool admit = true;
    for (int h = 1; h <= k && admit; ++h) {
      const int cnt = set_size(b & plan.prefix_mask(h));
      const int q = plan.quota_prefix(h);
      if (h == j)
        admit = cnt == q;
      else if (h == k)
        admit = cnt <= q;
      else
        admit = cnt >= q;
    }
    if (admit) out.by_conditions.push_back(b);
  }

  std::set_intersection(d.pieces[static_cast<std::size_t>(j - 1)].bases().begin(),
                        d.pieces[static_cast<std::size_t>(j - 1)].bases().end(),
                        d.pieces[static_cast<std::size_t>(k - 1)].bases().begin(),
                        d.pieces[static_cast<std::size_t>(k - 1)].bases().end(),
                        std::back_inserter(out.set_theoretic));
  out.match = out.by_conditions == out.set_theoretic;
  if (out.set_theoretic.empty()) {
    out.matroid_ok = true;  // the empty face
  } else {
    auto fam = make_base_family_words(d.parent.n(), d.parent.rank(), out.set_theoretic);
    auto val = validate_base_family(*fam.family);
    out.matroid_ok = val.ok();
    out.violation = val.violation;
  }
  return out;
}

namespace {

std::vector<long long> prefix_indicator(int n, SetWord prefix) {
  std::vector<long long> w(static_cast<std::size_t>(n), 0);
  for (int e = 1; e <= n; ++e)
    if (contains(prefix, e)) w[static_cast<std::size_t>(e - 1)] = 1;
  return w;
}

}  // namespace

SequenceReport verify_split_sequence(const Matroid& m, const SplitPlan& plan,
                                     GluingReading reading, int threads) {
  SequenceReport rep;
  rep.plan_verdict = evaluate_plan(m, plan, reading);
  if (!rep.plan_verdict.structure_ok) return rep;

  auto built = build_split_pieces(m, plan);
  if (!built.ok()) {
    rep.construction_failure = built.failure;
    return rep;
  }
  rep.decomposition = std::move(built.decomposition);
  const Decomposition& d = *rep.decomposition;
  const int t = plan.t();

  // Closed-form description of every pairwise intersection.
  rep.closed_form_ok = true;
  for (int j = 1; j <= t; ++j)
    for (int k = j + 1; k <= t; ++k) {
      rep.closed_form_pairs.push_back(intersection_family(d, j, k));
      rep.closed_form_ok = rep.closed_form_ok && rep.closed_form_pairs.back().ok();
    }

  // Stage-by-stage hyperplane splits of the shrinking region.
  rep.stages_ok = true;
  std::vector<SetWord> region = m.bases();
  for (int j = 1; j <= t - 1; ++j) {
    StageInterface st;
    st.stage = j;
    st.functional = prefix_indicator(m.n(), plan.prefix_mask(j));
    st.value = plan.quota_prefix(j);

    std::vector<SetWord> right;
    for (SetWord b : region) {
      const long long v = dot(st.functional, b);
      if (v == st.value) st.interface_bases.push_back(b);
      if (v >= st.value) right.push_back(b);
    }
    const std::vector<SetWord>& left = d.pieces[static_cast<std::size_t>(j - 1)].bases();

    st.left_matroid_ok = true;  // the left side is piece j, validated at construction
    if (!right.empty()) {
      auto fam = make_base_family_words(m.n(), m.rank(), right);
      st.right_matroid_ok = validate_base_family(*fam.family, threads).ok();
    }
    FaceCertificate cert{st.functional, st.value, false};
    st.left_cert_ok = replay_certificate(m.n(), left, st.interface_bases, cert);
    st.right_cert_ok = replay_certificate(m.n(), right, st.interface_bases, cert);
    rep.stages_ok = rep.stages_ok && st.ok();
    rep.interfaces.push_back(std::move(st));
    region = std::move(right);
  }

  std::vector<std::vector<long long>> hints;
  for (int j = 1; j <= t - 1; ++j) hints.push_back(prefix_indicator(m.n(), plan.prefix_mask(j)));
  rep.polytope = verify_decomposition(m, d.pieces, &hints, threads);
  return rep;
}

long long count_exact_partitions_min2(int n, int t) {
  if (n < 0 || t < 1) return 0;
  const int m = n - t;  // subtract 1 from each part: exactly t parts >= 1
  if (m < 0) return 0;
  std::vector<std::vector<long long>> p(static_cast<std::size_t>(m + 1),
                                        std::vector<long long>(static_cast<std::size_t>(t + 1), 0));
  p[0][0] = 1;
  for (int i = 1; i <= m; ++i)
    for (int k = 1; k <= t; ++k) {
      p[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] =
          p[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(k - 1)] +
          (i >= k ? p[static_cast<std::size_t>(i - k)][static_cast<std::size_t>(k)] : 0);
    }
  return m == 0 ? (t == 0 ? 1 : 0) : p[static_cast<std::size_t>(m)][static_cast<std::size_t>(t)];
}

std::vector<std::vector<int>> exact_partitions_min2(int n, int t) {
  std::vector<std::vector<int>> out;
  std::vector<int> parts;
  auto rec = [&](auto&& self, int left, int k, int minp) -> void {
    if (k == 1) {
      if (left >= minp) {
        parts.push_back(left);
        out.push_back(parts);
        parts.pop_back();
      }
      return;
    }
    for (int p = minp; p * k <= left; ++p) {
      parts.push_back(p);
      self(self, left - p, k - 1, p);
      parts.pop_back();
    }
  };
  if (t >= 1) rec(rec, n, t, 2);
  return out;
}

SplitPlan uniform_split_plan(int n, int r, const std::vector<int>& parts) {
  const int t = static_cast<int>(parts.size());
  if (t < 2 || r < t || n < r + t)
    throw std::invalid_argument("uniform_split_plan: need t >= 2, r >= t, n >= r+t");
  int total = 0;
  for (int p : parts) {
    if (p < 2) throw std::invalid_argument("uniform_split_plan: every part must be >= 2");
    total += p;
  }
  if (total != n) throw std::invalid_argument("uniform_split_plan: parts must sum to n");

  std::vector<int> ranks;
  ranks.reserve(parts.size());
  for (int p : parts) ranks.push_back(std::min(p, r));
  int rank_sum = 0;
  for (int ri : ranks) rank_sum += ri;
  if (rank_sum < r + t)
    throw std::logic_error("uniform_split_plan: rank surplus inequality failed");

  // ceded_i >= 1 everywhere, remainder consumed from the last block backwards.
  std::vector<int> ceded(parts.size(), 1);
  int rem = (rank_sum - r) - t;
  for (int i = t - 1; i >= 0 && rem > 0; --i) {
    const int take = std::min(ranks[static_cast<std::size_t>(i)] - 1 -
                                  ceded[static_cast<std::size_t>(i)],
                              rem);
    ceded[static_cast<std::size_t>(i)] += take;
    rem -= take;
  }
  if (rem != 0) throw std::logic_error("uniform_split_plan: surplus not distributable");

  SplitPlan plan;
  int next = 1;
  for (int i = 0; i < t; ++i) {
    SetWord block = 0;
    for (int e = 0; e < parts[static_cast<std::size_t>(i)]; ++e)
      block |= element_bit(next++);
    plan.blocks.push_back(block);
    plan.quotas.push_back(ranks[static_cast<std::size_t>(i)] -
                          ceded[static_cast<std::size_t>(i)]);
  }
  return plan;
}

SplitInvariant invariant_of(const Decomposition& d) {
  SplitInvariant inv;
  inv.rank = d.parent.rank();
  for (const Matroid& p : d.pieces)
    inv.piece_counts.push_back(static_cast<long long>(p.bases().size()));
  std::sort(inv.piece_counts.begin(), inv.piece_counts.end());
  return inv;
}

std::vector<UniformSplitEntry> enumerate_uniform_splits(int n, int r, int t, int threads) {
  if (t < 2 || r < t || n < r + t)
    throw std::invalid_argument("enumerate_uniform_splits: need t >= 2, r >= t, n >= r+t");
  const Matroid m = uniform_matroid(n, r);
  std::vector<UniformSplitEntry> out;
  for (const auto& parts : exact_partitions_min2(n, t)) {
    UniformSplitEntry e;
    e.parts = parts;
    e.plan = uniform_split_plan(n, r, parts);
    e.report = verify_split_sequence(m, e.plan, GluingReading::prefix_sums, threads);
    if (e.report.decomposition) e.invariant = invariant_of(*e.report.decomposition);
    out.push_back(std::move(e));
  }
  return out;
}

TransferResult transfer_to_relaxation(const Matroid& m, SetWord x, const SplitPlan& plan,
                                      GluingReading reading, int threads) {
  TransferResult out;
  auto relaxed = relax(m, x);
  if (!relaxed.ok()) {
    out.relax_error = relaxed.error;
    return out;
  }
  const PlanVerdict on_base = evaluate_plan(m, plan, reading);
  if (!on_base.ok()) {
    out.plan_error_on_base = on_base.violation;
    return out;
  }

  TransferReport rep{std::move(*relaxed.matroid), {}, {}, {}};
  rep.verdict_on_relaxed = evaluate_plan(rep.relaxed, plan, reading);
  rep.report = verify_split_sequence(rep.relaxed, plan, reading, threads);
  for (int j = 1; j <= plan.t(); ++j)
    if (piece_conditions(plan, j).admits(x)) rep.absorbing_pieces.push_back(j);
  out.report = std::move(rep);
  return out;
}

LiftReport lift_by_direct_sum(const Decomposition& d, const Matroid& m2, int threads) {
  const int n1 = d.parent.n();
  Matroid parent = direct_sum(d.parent, m2);
  std::vector<Matroid> pieces;
  pieces.reserve(d.pieces.size());
  for (const Matroid& p : d.pieces) pieces.push_back(direct_sum(p, m2));

  LiftReport rep{Decomposition{std::move(parent), d.plan, std::move(pieces),
                               Provenance::lifted},
                 {}, false, {}, false, {}};

  rep.counts_ok = true;
  for (std::size_t i = 0; i < d.pieces.size(); ++i) {
    const long long expect = static_cast<long long>(d.pieces[i].bases().size()) *
                             static_cast<long long>(m2.bases().size());
    rep.expected_counts.push_back(expect);
    rep.counts_ok = rep.counts_ok &&
                    expect == static_cast<long long>(rep.lifted.pieces[i].bases().size());
  }

  rep.pair_structure_ok = true;
  for (std::size_t i = 0; i < d.pieces.size(); ++i) {
    for (std::size_t j = i + 1; j < d.pieces.size(); ++j) {
      std::vector<SetWord> small;
      std::set_intersection(d.pieces[i].bases().begin(), d.pieces[i].bases().end(),
                            d.pieces[j].bases().begin(), d.pieces[j].bases().end(),
                            std::back_inserter(small));
      std::vector<SetWord> lifted_small;
      for (SetWord b1 : small)
        for (SetWord b2 : m2.bases()) lifted_small.push_back(b1 | (b2 << n1));
      std::sort(lifted_small.begin(), lifted_small.end());

      std::vector<SetWord> big;
      std::set_intersection(rep.lifted.pieces[i].bases().begin(),
                            rep.lifted.pieces[i].bases().end(),
                            rep.lifted.pieces[j].bases().begin(),
                            rep.lifted.pieces[j].bases().end(), std::back_inserter(big));
      const bool ok = big == lifted_small;
      rep.pair_checks.push_back(
          LiftPairCheck{static_cast<int>(i + 1), static_cast<int>(j + 1), ok});
      rep.pair_structure_ok = rep.pair_structure_ok && ok;
    }
  }

  std::vector<std::vector<long long>> hints;
  if (d.plan)
    for (int j = 1; j <= d.plan->t() - 1; ++j)
      hints.push_back(prefix_indicator(rep.lifted.parent.n(), d.plan->prefix_mask(j)));
  const auto* hints_ptr = hints.empty() ? nullptr : &hints;
  rep.polytope = verify_decomposition(rep.lifted.parent, rep.lifted.pieces, hints_ptr, threads);
  return rep;
}

}  // namespace splitlab
