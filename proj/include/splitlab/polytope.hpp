#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "splitlab/matroid.hpp"

namespace splitlab {

// Incidence vectors of bases: one 0/1 vector per base, packed as SetWord.
struct VertexSet {
  int n = 0;
  std::vector<SetWord> vectors;
};

VertexSet vertices(const Matroid& m);

// Rank over the rationals of {x - x0}; exact arithmetic, result <= n-1.
int affine_dimension(const VertexSet& v);

// Integer functional w with w·x = c on a vertex subset and, on every other
// vertex of the piece, w·x <= c-1 (or uniformly w·x >= c+1; sign
// normalization may flip the side, and replay accepts either). improper
// marks the empty subset and the whole piece, where strictness is waived.
struct FaceCertificate {
  std::vector<long long> w;
  long long c = 0;
  bool improper = false;
};

long long dot(const std::vector<long long>& w, SetWord x);

// Exact replay of the certificate semantics above.
bool replay_certificate(int n, const std::vector<SetWord>& piece_vertices,
                        const std::vector<SetWord>& subset, const FaceCertificate& cert);

enum class FaceStatus { face, not_a_face, bad_subset, budget_exceeded };

struct FaceResult {
  FaceStatus status = FaceStatus::not_a_face;
  std::optional<FaceCertificate> certificate;
  bool empty_subset = false;
  bool whole_piece = false;
  bool ok() const { return status == FaceStatus::face; }
};

// Decides by exact rational linear feasibility whether `subset` is exactly
// the vertex set of a face of the piece's base polytope, and produces a
// normalized integer certificate when it is. Every returned certificate is
// replay-verified before it leaves this function.
FaceResult face_certificate(const Matroid& piece, const std::vector<SetWord>& subset);
FaceResult face_certificate_of_vertices(int n, const std::vector<SetWord>& piece_vertices,
                                        const std::vector<SetWord>& subset);

struct PieceFailure {
  int piece = 0;  // 1-based
  std::optional<FamilyDefect> defect;
  std::optional<ExchangeViolation> violation;
};

struct PairCheck {
  int i = 0;
  int j = 0;  // 1-based piece indices, i < j
  std::vector<SetWord> common;
  bool empty = false;
  bool matroid_ok = false;
  std::optional<ExchangeViolation> violation;
  FaceResult face_i;
  FaceResult face_j;
  bool face_ok() const { return face_i.ok() && face_j.ok(); }
};

struct DecompositionReport {
  bool preconditions_ok = false;
  std::string precondition_note;
  bool cover_ok = false;
  std::optional<SetWord> missing_base;                 // in parent, in no piece
  std::optional<std::pair<int, SetWord>> foreign_base;  // piece base not in parent
  bool pieces_ok = false;
  std::vector<PieceFailure> piece_failures;
  bool intersections_matroid_ok = false;
  bool intersections_face_ok = false;
  std::vector<PairCheck> pairs;

  bool pass() const {
    return preconditions_ok && cover_ok && pieces_ok && intersections_matroid_ok &&
           intersections_face_ok;
  }
};

// Full validity judgment for a claimed decomposition, construction-agnostic:
// (a) the piece families cover the parent exactly, (b) every piece passes the
// exchange check, (c) every pairwise base intersection is empty or passes the
// exchange check, (d) every pairwise intersection carries a face certificate
// with respect to both pieces. `hints` are integer functionals tried before
// the LP solver (the prefix indicators of a split sequence, typically).
DecompositionReport verify_decomposition(
    const Matroid& parent, const std::vector<Matroid>& pieces,
    const std::vector<std::vector<long long>>* hints = nullptr, int threads = 1);

std::string describe(FaceStatus s);

}  // namespace splitlab
