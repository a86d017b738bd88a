#include "splitlab/polytope.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

#include "splitlab/parallel.hpp"

namespace splitlab {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

VertexSet vertices(const Matroid& m) { return VertexSet{m.n(), m.bases()}; }

namespace {

std::vector<Rational> diff_vector(int n, SetWord a, SetWord b) {
  std::vector<Rational> v(static_cast<std::size_t>(n));
  for (int e = 1; e <= n; ++e)
    v[static_cast<std::size_t>(e - 1)] =
        Rational(int(contains(a, e)) - int(contains(b, e)));
  return v;
}

// In-place row reduction; returns pivot columns.
std::vector<int> row_reduce(std::vector<std::vector<Rational>>& rows, int cols) {
  std::vector<int> pivots;
  std::size_t row = 0;
  for (int col = 0; col < cols && row < rows.size(); ++col) {
    std::size_t sel = row;
    while (sel < rows.size() && rows[sel][static_cast<std::size_t>(col)] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[row], rows[sel]);
    const Rational inv = rows[row][static_cast<std::size_t>(col)];
    for (auto& x : rows[row]) x /= inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == row) continue;
      const Rational f = rows[r][static_cast<std::size_t>(col)];
      if (f == 0) continue;
      for (int c2 = 0; c2 < cols; ++c2)
        rows[r][static_cast<std::size_t>(c2)] -=
            f * rows[row][static_cast<std::size_t>(c2)];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

int affine_dimension(const VertexSet& v) {
  if (v.vectors.empty()) throw std::invalid_argument("affine_dimension: empty vertex set");
  std::vector<std::vector<Rational>> rows;
  rows.reserve(v.vectors.size() - 1);
  for (std::size_t i = 1; i < v.vectors.size(); ++i)
    rows.push_back(diff_vector(v.n, v.vectors[i], v.vectors[0]));
  return static_cast<int>(row_reduce(rows, v.n).size());
}

long long dot(const std::vector<long long>& w, SetWord x) {
  long long s = 0;
  SetWord bits = x;
  while (bits) {
    const int i = std::countr_zero(bits);
    bits &= bits - 1;
    s += w[static_cast<std::size_t>(i)];
  }
  return s;
}

bool replay_certificate(int n, const std::vector<SetWord>& piece_vertices,
                        const std::vector<SetWord>& subset, const FaceCertificate& cert) {
  if (static_cast<int>(cert.w.size()) != n) return false;
  std::vector<SetWord> sorted_subset = subset;
  std::sort(sorted_subset.begin(), sorted_subset.end());
  if (cert.improper) {
    if (subset.empty()) return true;
    std::vector<SetWord> sorted_piece = piece_vertices;
    std::sort(sorted_piece.begin(), sorted_piece.end());
    return sorted_subset == sorted_piece;
  }
  for (SetWord x : subset)
    if (dot(cert.w, x) != cert.c) return false;
  bool any_below = false, any_above = false;
  for (SetWord x : piece_vertices) {
    if (std::binary_search(sorted_subset.begin(), sorted_subset.end(), x)) continue;
    const long long v = dot(cert.w, x);
    if (v <= cert.c - 1)
      any_below = true;
    else if (v >= cert.c + 1)
      any_above = true;
    else
      return false;  // ties are never faces
  }
  return !(any_below && any_above);
}

namespace {

struct FmRow {
  std::vector<Rational> coef;
  Rational rhs;
};

// Deterministic normalization for deduplication: scale so the first nonzero
// coefficient has absolute value 1.
void normalize_row(FmRow& r) {
  for (const Rational& c : r.coef) {
    if (c != 0) {
      const Rational s = abs(c);
      for (auto& x : r.coef) x /= s;
      r.rhs /= s;
      return;
    }
  }
}

struct FmStage {
  std::size_t var = 0;
  std::vector<FmRow> rows;  // rows at entry of this stage
};

constexpr std::size_t kFmRowBudget = 200000;

// Feasibility of { z : rows.coef · z <= rows.rhs }, z free. Returns a point
// when feasible; nullopt on infeasible; throws on budget blowout.
std::optional<std::vector<Rational>> fm_solve(std::vector<FmRow> rows, std::size_t dim) {
  std::vector<FmStage> stages;
  std::vector<bool> eliminated(dim, false);

  auto compact = [](std::vector<FmRow>& rs) {
    std::map<std::vector<Rational>, Rational> best;
    for (auto& r : rs) {
      normalize_row(r);
      auto it = best.find(r.coef);
      if (it == best.end())
        best.emplace(std::move(r.coef), std::move(r.rhs));
      else if (r.rhs < it->second)
        it->second = r.rhs;
    }
    rs.clear();
    for (auto& [c, b] : best) rs.push_back(FmRow{c, b});
  };

  compact(rows);
  for (std::size_t step = 0; step < dim; ++step) {
    // Pick the remaining variable with the fewest pos*neg combinations.
    std::size_t best_var = dim;
    std::size_t best_cost = SIZE_MAX;
    for (std::size_t v = 0; v < dim; ++v) {
      if (eliminated[v]) continue;
      std::size_t pos = 0, neg = 0;
      for (const auto& r : rows) {
        if (r.coef[v] > 0) ++pos;
        if (r.coef[v] < 0) ++neg;
      }
      const std::size_t cost = pos * neg;
      if (cost < best_cost) {
        best_cost = cost;
        best_var = v;
      }
    }
    const std::size_t v = best_var;
    eliminated[v] = true;
    stages.push_back(FmStage{v, rows});

    std::vector<FmRow> keep;
    std::vector<const FmRow*> pos, neg;
    for (const auto& r : stages.back().rows) {
      if (r.coef[v] > 0)
        pos.push_back(&r);
      else if (r.coef[v] < 0)
        neg.push_back(&r);
      else
        keep.push_back(r);
    }
    for (const FmRow* p : pos) {
      for (const FmRow* q : neg) {
        FmRow combo;
        combo.coef.resize(dim);
        const Rational lp = -q->coef[v];  // > 0
        const Rational lq = p->coef[v];   // > 0
        for (std::size_t c2 = 0; c2 < dim; ++c2)
          combo.coef[c2] = lp * p->coef[c2] + lq * q->coef[c2];
        combo.rhs = lp * p->rhs + lq * q->rhs;
        keep.push_back(std::move(combo));
        if (keep.size() > kFmRowBudget) throw std::length_error("fm budget");
      }
    }
    rows = std::move(keep);
    compact(rows);
  }

  for (const auto& r : rows)
    if (r.rhs < 0) return std::nullopt;

  // Back-substitute in reverse elimination order.
  std::vector<Rational> z(dim, Rational(0));
  for (std::size_t si = stages.size(); si-- > 0;) {
    const auto& st = stages[si];
    bool has_lo = false, has_hi = false;
    Rational lo, hi;
    for (const auto& r : st.rows) {
      const Rational cv = r.coef[st.var];
      if (cv == 0) continue;
      Rational rest = r.rhs;
      for (std::size_t c2 = 0; c2 < dim; ++c2)
        if (c2 != st.var && r.coef[c2] != 0) rest -= r.coef[c2] * z[c2];
      const Rational bound = rest / cv;
      if (cv > 0) {
        if (!has_hi || bound < hi) hi = bound;
        has_hi = true;
      } else {
        if (!has_lo || bound > lo) lo = bound;
        has_lo = true;
      }
    }
    if (has_lo && has_hi)
      z[st.var] = (lo + hi) / 2;
    else if (has_hi)
      z[st.var] = hi;
    else if (has_lo)
      z[st.var] = lo;
  }
  return z;
}

long long to_ll(const BigInt& v) {
  if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
    throw std::overflow_error("certificate coefficient out of long long range");
  return static_cast<long long>(v);
}

FaceCertificate normalize_certificate(std::vector<BigInt> w, BigInt c) {
  BigInt g = abs(c);
  for (const auto& x : w) g = gcd(g, abs(x));
  if (g > 1) {
    for (auto& x : w) x /= g;
    c /= g;
  }
  for (const auto& x : w) {
    if (x == 0) continue;
    if (x < 0) {
      for (auto& y : w) y = -y;
      c = -c;
    }
    break;
  }
  FaceCertificate out;
  out.w.reserve(w.size());
  for (const auto& x : w) out.w.push_back(to_ll(x));
  out.c = to_ll(c);
  out.improper = false;
  return out;
}

}  // namespace

FaceResult face_certificate_of_vertices(int n, const std::vector<SetWord>& piece_vertices,
                                        const std::vector<SetWord>& subset) {
  FaceResult out;
  std::vector<SetWord> piece = piece_vertices;
  std::vector<SetWord> sub = subset;
  std::sort(piece.begin(), piece.end());
  piece.erase(std::unique(piece.begin(), piece.end()), piece.end());
  std::sort(sub.begin(), sub.end());
  sub.erase(std::unique(sub.begin(), sub.end()), sub.end());

  for (SetWord x : sub) {
    if (!std::binary_search(piece.begin(), piece.end(), x)) {
      out.status = FaceStatus::bad_subset;
      return out;
    }
  }
  if (sub.empty()) {
    out.status = FaceStatus::face;
    out.empty_subset = true;
    out.certificate = FaceCertificate{std::vector<long long>(static_cast<std::size_t>(n), 0),
                                      0, true};
    return out;
  }
  if (sub.size() == piece.size()) {
    out.status = FaceStatus::face;
    out.whole_piece = true;
    out.certificate = FaceCertificate{std::vector<long long>(static_cast<std::size_t>(n), 0),
                                      0, true};
    return out;
  }

  // w must be constant on the subset: w lies in the orthogonal complement of
  // the difference space. Parametrize w = N z and ask each outside vertex to
  // sit at integer margin >= 1 below the face value.
  const SetWord x0 = sub.front();
  std::vector<std::vector<Rational>> diff;
  for (std::size_t i = 1; i < sub.size(); ++i) diff.push_back(diff_vector(n, sub[i], x0));
  std::vector<std::vector<Rational>> reduced = diff;
  const std::vector<int> pivots = row_reduce(reduced, n);

  std::vector<std::vector<Rational>> basis;  // of the complement
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  // Nullspace of the difference matrix: free column f gives w_f = 1,
  // w_pivot = -reduced[row][f].
  for (int f = 0; f < n; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    std::vector<Rational> w(static_cast<std::size_t>(n), Rational(0));
    w[static_cast<std::size_t>(f)] = 1;
    for (std::size_t row = 0; row < pivots.size(); ++row)
      w[static_cast<std::size_t>(pivots[row])] = -reduced[row][static_cast<std::size_t>(f)];
    basis.push_back(std::move(w));
  }

  std::vector<FmRow> rows;
  for (SetWord y : piece) {
    if (std::binary_search(sub.begin(), sub.end(), y)) continue;
    const std::vector<Rational> d = diff_vector(n, y, x0);
    FmRow r;
    r.coef.resize(basis.size());
    bool all_zero = true;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      Rational s = 0;
      for (int c2 = 0; c2 < n; ++c2)
        if (d[static_cast<std::size_t>(c2)] != 0)
          s += basis[k][static_cast<std::size_t>(c2)] * d[static_cast<std::size_t>(c2)];
      r.coef[k] = s;
      all_zero = all_zero && s == 0;
    }
    if (all_zero) {
      // y is affinely tied to the subset: no functional separates it.
      out.status = FaceStatus::not_a_face;
      return out;
    }
    r.rhs = -1;
    rows.push_back(std::move(r));
  }

  std::optional<std::vector<Rational>> z;
  try {
    z = fm_solve(std::move(rows), basis.size());
  } catch (const std::length_error&) {
    out.status = FaceStatus::budget_exceeded;
    return out;
  }
  if (!z) {
    out.status = FaceStatus::not_a_face;
    return out;
  }

  std::vector<Rational> w_rat(static_cast<std::size_t>(n), Rational(0));
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if ((*z)[k] == 0) continue;
    for (int c2 = 0; c2 < n; ++c2)
      w_rat[static_cast<std::size_t>(c2)] += (*z)[k] * basis[k][static_cast<std::size_t>(c2)];
  }
  BigInt scale = 1;
  for (const auto& x : w_rat) scale = lcm(scale, denominator(x));
  std::vector<BigInt> w_int;
  w_int.reserve(w_rat.size());
  for (const auto& x : w_rat) w_int.push_back(numerator(x) * (scale / denominator(x)));
  BigInt c = 0;
  for (int e = 1; e <= n; ++e)
    if (contains(x0, e)) c += w_int[static_cast<std::size_t>(e - 1)];

  FaceCertificate cert = normalize_certificate(std::move(w_int), c);
  if (!replay_certificate(n, piece, sub, cert))
    throw std::logic_error("face_certificate: solver emitted a certificate that fails replay");
  out.status = FaceStatus::face;
  out.certificate = std::move(cert);
  return out;
}

FaceResult face_certificate(const Matroid& piece, const std::vector<SetWord>& subset) {
  return face_certificate_of_vertices(piece.n(), piece.bases(), subset);
}

namespace {

FaceResult face_with_hints(int n, const std::vector<SetWord>& piece,
                           const std::vector<SetWord>& sub,
                           const std::vector<std::vector<long long>>* hints) {
  if (hints && !sub.empty() && sub.size() != piece.size()) {
    for (const auto& w : *hints) {
      if (static_cast<int>(w.size()) != n) continue;
      FaceCertificate cand{w, dot(w, sub.front()), false};
      if (replay_certificate(n, piece, sub, cand)) {
        BigInt c = cand.c;
        std::vector<BigInt> wi(cand.w.begin(), cand.w.end());
        FaceCertificate norm = normalize_certificate(std::move(wi), c);
        FaceResult out;
        out.status = FaceStatus::face;
        out.certificate = std::move(norm);
        return out;
      }
    }
  }
  return face_certificate_of_vertices(n, piece, sub);
}

}  // namespace

DecompositionReport verify_decomposition(const Matroid& parent,
                                         const std::vector<Matroid>& pieces,
                                         const std::vector<std::vector<long long>>* hints,
                                         int threads) {
  DecompositionReport rep;
  if (pieces.empty()) {
    rep.precondition_note = "no pieces";
    return rep;
  }
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (pieces[i].n() != parent.n() || pieces[i].rank() != parent.rank()) {
      rep.precondition_note = "piece " + std::to_string(i + 1) +
                              " does not match the parent ground set and rank";
      return rep;
    }
  }
  rep.preconditions_ok = true;

  // (a) exact cover.
  rep.cover_ok = true;
  std::vector<SetWord> covered;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    for (SetWord b : pieces[i].bases()) {
      if (!parent.is_base(b)) {
        if (!rep.foreign_base) rep.foreign_base = {static_cast<int>(i + 1), b};
        rep.cover_ok = false;
      }
      covered.push_back(b);
    }
  }
  std::sort(covered.begin(), covered.end());
  covered.erase(std::unique(covered.begin(), covered.end()), covered.end());
  for (SetWord b : parent.bases()) {
    if (!std::binary_search(covered.begin(), covered.end(), b)) {
      rep.missing_base = b;
      rep.cover_ok = false;
      break;
    }
  }

  // (b) each piece is a matroid.
  rep.pieces_ok = true;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    auto val = validate_base_family(pieces[i].family(), threads);
    if (!val.ok()) {
      PieceFailure f;
      f.piece = static_cast<int>(i + 1);
      f.defect = val.defect;
      f.violation = val.violation;
      rep.piece_failures.push_back(std::move(f));
      rep.pieces_ok = false;
    }
  }

  // (c)+(d) pairwise intersections.
  std::vector<std::pair<int, int>> idx;
  for (std::size_t i = 0; i < pieces.size(); ++i)
    for (std::size_t j = i + 1; j < pieces.size(); ++j)
      idx.emplace_back(static_cast<int>(i), static_cast<int>(j));
  std::vector<PairCheck> checks(idx.size());
  parallel_for(idx.size(), threads, [&](std::size_t p) {
    const auto [i, j] = idx[p];
    PairCheck chk;
    chk.i = i + 1;
    chk.j = j + 1;
    std::set_intersection(pieces[static_cast<std::size_t>(i)].bases().begin(),
                          pieces[static_cast<std::size_t>(i)].bases().end(),
                          pieces[static_cast<std::size_t>(j)].bases().begin(),
                          pieces[static_cast<std::size_t>(j)].bases().end(),
                          std::back_inserter(chk.common));
    chk.empty = chk.common.empty();
    if (chk.empty) {
      chk.matroid_ok = true;  // the empty face
      chk.face_i.status = FaceStatus::face;
      chk.face_i.empty_subset = true;
      chk.face_i.certificate = FaceCertificate{
          std::vector<long long>(static_cast<std::size_t>(parent.n()), 0), 0, true};
      chk.face_j = chk.face_i;
    } else {
      auto fam = make_base_family_words(parent.n(), parent.rank(), chk.common);
      auto val = validate_base_family(*fam.family);
      chk.matroid_ok = val.ok();
      chk.violation = val.violation;
      chk.face_i = face_with_hints(parent.n(),
                                   pieces[static_cast<std::size_t>(i)].bases(), chk.common,
                                   hints);
      chk.face_j = face_with_hints(parent.n(),
                                   pieces[static_cast<std::size_t>(j)].bases(), chk.common,
                                   hints);
    }
    checks[p] = std::move(chk);
  });

  rep.intersections_matroid_ok = true;
  rep.intersections_face_ok = true;
  for (auto& chk : checks) {
    rep.intersections_matroid_ok = rep.intersections_matroid_ok && chk.matroid_ok;
    rep.intersections_face_ok = rep.intersections_face_ok && chk.face_ok();
    rep.pairs.push_back(std::move(chk));
  }
  return rep;
}

std::string describe(FaceStatus s) {
  switch (s) {
    case FaceStatus::face: return "face";
    case FaceStatus::not_a_face: return "not a face";
    case FaceStatus::bad_subset: return "subset not inside the piece";
    case FaceStatus::budget_exceeded: return "solver budget exceeded";
  }
  return "unknown";
}

}  // namespace splitlab
