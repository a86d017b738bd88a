#include "splitlab/partition.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "splitlab/parallel.hpp"

namespace splitlab {

SetWord SplitPlan::prefix_mask(int j) const {
  SetWord m = 0;
  for (int i = 0; i < j; ++i) m |= blocks[static_cast<std::size_t>(i)];
  return m;
}

int SplitPlan::quota_prefix(int j) const {
  int s = 0;
  for (int i = 0; i < j; ++i) s += quotas[static_cast<std::size_t>(i)];
  return s;
}

std::optional<PlanViolation> check_structure(const Matroid& m, const SplitPlan& plan) {
  auto fail = [](std::string note) {
    PlanViolation v;
    v.clause = PlanClause::structure;
    v.note = std::move(note);
    return v;
  };
  const int t = plan.t();
  if (t < 2) return fail("need at least two blocks");
  if (plan.quotas.size() != plan.blocks.size())
    return fail("quota count does not match block count");
  SetWord seen = 0;
  for (int i = 0; i < t; ++i) {
    const SetWord b = plan.blocks[static_cast<std::size_t>(i)];
    if (b == 0) return fail("block " + std::to_string(i + 1) + " is empty");
    if ((b & ~m.ground_mask()) != 0)
      return fail("block " + std::to_string(i + 1) + " leaves the ground set");
    if ((b & seen) != 0)
      return fail("block " + std::to_string(i + 1) + " overlaps an earlier block");
    seen |= b;
  }
  if (seen != m.ground_mask()) return fail("blocks do not cover the ground set");
  for (int i = 0; i < t; ++i) {
    const int ri = m.rank_of(plan.blocks[static_cast<std::size_t>(i)]);
    const int ai = plan.quotas[static_cast<std::size_t>(i)];
    if (!(0 < ai && ai < ri))
      return fail("quota a_" + std::to_string(i + 1) + "=" + std::to_string(ai) +
                  " outside 0 < a < r_i=" + std::to_string(ri));
  }
  return std::nullopt;
}

bool check_rank_sum(const Matroid& m, const SplitPlan& plan) {
  return m.rank() == std::accumulate(plan.quotas.begin(), plan.quotas.end(), 0);
}

namespace {

// Independent s-subsets of `support`, ascending word order. fn returning
// true aborts and propagates.
bool for_each_independent_of_size(const Matroid& m, SetWord support, int s,
                                  const std::function<bool(SetWord)>& fn) {
  const std::vector<int> labels = to_elements(support);
  const int k = static_cast<int>(labels.size());
  if (s < 0 || s > k) return false;
  if (s == 0) return fn(0);
  const SetWord limit = full_mask(k);
  for (SetWord c = full_mask(s); c != 0 && c <= limit; c = next_same_size(c)) {
    SetWord expanded = 0;
    SetWord bits = c;
    while (bits) {
      const int i = std::countr_zero(bits);
      bits &= bits - 1;
      expanded |= element_bit(labels[static_cast<std::size_t>(i)]);
    }
    if (!m.is_independent(expanded)) continue;
    if (fn(expanded)) return true;
  }
  return false;
}

}  // namespace

std::optional<PlanViolation> check_pair_gluing(const Matroid& m, const SplitPlan& plan,
                                               GluingReading reading) {
  const int t = plan.t();
  std::optional<PlanViolation> found;
  for (int j = 1; j <= t - 1 && !found; ++j) {
    const SetWord left = plan.prefix_mask(j);
    const SetWord right = m.ground_mask() & ~left;
    int bound_x = plan.quota_prefix(j);
    int bound_y = plan.quota_prefix(t) - bound_x;
    if (reading == GluingReading::literal_first_two) {
      bound_x = plan.quotas[0];
      bound_y = plan.quotas[1];
    }
    const int sx = std::min(bound_x, m.rank_of(left));
    const int sy = std::min(bound_y, m.rank_of(right));
    for_each_independent_of_size(m, left, sx, [&](SetWord x) {
      return for_each_independent_of_size(m, right, sy, [&](SetWord y) {
        if (m.is_independent(x | y)) return false;
        PlanViolation v;
        v.clause = PlanClause::pair_gluing;
        v.j = j;
        v.x = x;
        v.y = y;
        found = v;
        return true;
      });
    });
  }
  return found;
}

std::optional<PlanViolation> check_triple_gluing(const Matroid& m, const SplitPlan& plan) {
  const int t = plan.t();
  std::optional<PlanViolation> found;
  for (int j = 1; j <= t - 1 && !found; ++j) {
    for (int k = j + 1; k <= t - 1 && !found; ++k) {
      const SetWord left = plan.prefix_mask(j);
      const SetWord mid = plan.prefix_mask(k) & ~left;
      const SetWord right = m.ground_mask() & ~plan.prefix_mask(k);
      const int bx = plan.quota_prefix(j);
      const int by = plan.quota_prefix(k) - bx;
      const int bz = plan.quota_prefix(t) - bx - by;
      const int sx = std::min(bx, m.rank_of(left));
      const int sy = std::min(by, m.rank_of(mid));
      const int sz = std::min(bz, m.rank_of(right));
      for_each_independent_of_size(m, left, sx, [&](SetWord x) {
        return for_each_independent_of_size(m, mid, sy, [&](SetWord y) {
          if (!m.is_independent(x | y)) {
            // Covered by the pair clause; the triple clause still records it.
            PlanViolation v;
            v.clause = PlanClause::triple_gluing;
            v.j = j;
            v.k = k;
            v.x = x;
            v.y = y;
            found = v;
            return true;
          }
          return for_each_independent_of_size(m, right, sz, [&](SetWord z) {
            if (m.is_independent(x | y | z)) return false;
            PlanViolation v;
            v.clause = PlanClause::triple_gluing;
            v.j = j;
            v.k = k;
            v.x = x;
            v.y = y;
            v.z = z;
            found = v;
            return true;
          });
        });
      });
    }
  }
  return found;
}

PlanVerdict evaluate_plan(const Matroid& m, const SplitPlan& plan, GluingReading reading) {
  PlanVerdict out;
  if (auto v = check_structure(m, plan)) {
    out.violation = v;
    return out;
  }
  out.structure_ok = true;
  for (const SetWord b : plan.blocks) out.block_ranks.push_back(m.rank_of(b));
  out.rank_sum_ok = check_rank_sum(m, plan);
  if (!out.rank_sum_ok) {
    PlanViolation v;
    v.clause = PlanClause::rank_sum;
    v.note = "quotas sum to " + std::to_string(plan.quota_prefix(plan.t())) +
             ", rank is " + std::to_string(m.rank());
    out.violation = v;
    return out;
  }
  if (auto v = check_pair_gluing(m, plan, reading)) {
    out.violation = v;
    return out;
  }
  out.pair_ok = true;
  if (auto v = check_triple_gluing(m, plan)) {
    out.violation = v;
    return out;
  }
  out.triple_ok = true;
  return out;
}

namespace {

// Canonical unordered partitions of 1..n into exactly t blocks, every block
// of size >= 2, blocks listed by increasing minimum.
void enumerate_min2_partitions(int n, int t,
                               const std::function<void(const std::vector<SetWord>&)>& emit) {
  std::vector<SetWord> blocks;
  std::vector<int> sizes;
  auto rec = [&](auto&& self, int e) -> void {
    const int remaining = n - e + 1;
    int deficit = 0;
    for (int s : sizes) deficit += std::max(0, 2 - s);
    const int open_slots = t - static_cast<int>(blocks.size());
    if (deficit + 2 * open_slots > remaining) return;
    if (e > n) {
      if (static_cast<int>(blocks.size()) == t) emit(blocks);
      return;
    }
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      blocks[i] |= element_bit(e);
      ++sizes[i];
      self(self, e + 1);
      --sizes[i];
      blocks[i] &= ~element_bit(e);
    }
    if (static_cast<int>(blocks.size()) < t) {
      blocks.push_back(element_bit(e));
      sizes.push_back(1);
      self(self, e + 1);
      blocks.pop_back();
      sizes.pop_back();
    }
  };
  rec(rec, 1);
}

void enumerate_quota_vectors(const std::vector<int>& ranks, int target,
                             const std::function<void(const std::vector<int>&)>& emit) {
  std::vector<int> q(ranks.size(), 0);
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i + 1 == q.size()) {
      if (0 < left && left < ranks[i]) {
        q[i] = left;
        emit(q);
      }
      return;
    }
    int tail_min = 0, tail_max = 0;
    for (std::size_t j = i + 1; j < q.size(); ++j) {
      tail_min += 1;
      tail_max += ranks[j] - 1;
    }
    for (int a = 1; a < ranks[i]; ++a) {
      if (left - a < tail_min || left - a > tail_max) continue;
      q[i] = a;
      self(self, i + 1, left - a);
    }
  };
  if (!ranks.empty()) rec(rec, 0, target);
}

}  // namespace

PlanSearchResult search_plans(const Matroid& m, int t, SearchLimits limits,
                              GluingReading reading) {
  if (t < 2 || t > m.rank())
    throw std::invalid_argument("search_plans: need 2 <= t <= rank");
  PlanSearchResult out;

  std::vector<std::vector<SetWord>> partitions;
  enumerate_min2_partitions(m.n(), t, [&](const std::vector<SetWord>& blocks) {
    partitions.push_back(blocks);
  });

  // Candidate tuples per unordered partition, in canonical order.
  std::vector<std::vector<SplitPlan>> candidates(partitions.size());
  parallel_for(partitions.size(), limits.threads, [&](std::size_t pi) {
    const auto& blocks = partitions[pi];
    std::vector<int> ranks;
    ranks.reserve(blocks.size());
    bool viable = true;
    for (SetWord b : blocks) {
      ranks.push_back(m.rank_of(b));
      viable = viable && ranks.back() >= 2;
    }
    if (!viable) return;
    std::vector<std::size_t> order(blocks.size());
    std::iota(order.begin(), order.end(), 0);
    do {
      std::vector<SetWord> ordered_blocks;
      std::vector<int> ordered_ranks;
      for (std::size_t idx : order) {
        ordered_blocks.push_back(blocks[idx]);
        ordered_ranks.push_back(ranks[idx]);
      }
      enumerate_quota_vectors(ordered_ranks, m.rank(), [&](const std::vector<int>& q) {
        candidates[pi].push_back(SplitPlan{ordered_blocks, q});
      });
    } while (std::next_permutation(order.begin(), order.end()));
  });

  // Evaluate in canonical order with the budget applied to examined tuples.
  for (const auto& group : candidates) {
    for (const SplitPlan& plan : group) {
      if (out.examined >= limits.max_candidates) {
        out.complete = false;
        return out;
      }
      ++out.examined;
      if (evaluate_plan(m, plan, reading).ok()) out.plans.push_back(plan);
    }
  }
  return out;
}

std::vector<std::vector<std::size_t>> group_by_block_multiset(
    const std::vector<SplitPlan>& plans) {
  std::map<std::vector<SetWord>, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < plans.size(); ++i) {
    std::vector<SetWord> key = plans[i].blocks;
    std::sort(key.begin(), key.end());
    groups[key].push_back(i);
  }
  std::vector<std::vector<std::size_t>> out;
  out.reserve(groups.size());
  for (auto& [key, idx] : groups) out.push_back(std::move(idx));
  return out;
}

std::string describe(const PlanViolation& v) {
  std::string out;
  switch (v.clause) {
    case PlanClause::structure: out = "structure"; break;
    case PlanClause::rank_sum: out = "rank_sum"; break;
    case PlanClause::pair_gluing: out = "pair_gluing"; break;
    case PlanClause::triple_gluing: out = "triple_gluing"; break;
  }
  if (!v.note.empty()) out += ": " + v.note;
  if (v.clause == PlanClause::pair_gluing)
    out += ": j=" + std::to_string(v.j) + " X=" + format_set(v.x) + " Y=" + format_set(v.y);
  if (v.clause == PlanClause::triple_gluing)
    out += ": j=" + std::to_string(v.j) + " k=" + std::to_string(v.k) +
           " X=" + format_set(v.x) + " Y=" + format_set(v.y) + " Z=" + format_set(v.z);
  return out;
}

}  // namespace splitlab
