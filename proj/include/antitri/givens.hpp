#pragma once

// Reduction of a skew-symmetric matrix to lower antitriangular form with
// plane rotations, one antidiagonal at a time, followed by antidiagonal
// deflation which pushes zero antidiagonals out until the first nontrivial
// one is fully nonzero.  Its length is then the rank.

#include "antitri/matcore.hpp"

namespace antitri {

/// Antidiagonals are numbered from the main one: antidiagonal d (1-based)
/// holds the positions with i + j = n + d - 2 (0-based indices).
struct AntidiagonalProfile {
  Index n = 0;
  Index first_nontrivial = 0;  // 0 when every antidiagonal is trivial
  Index nonzero_count = 0;
};

/// Lower antitriangular M = Q^T A Q.  Targets that are already zero are
/// skipped; annihilated entries are stored as exact zeros.
template <typename Derived>
AtfResult<typename Derived::Scalar> reduce_givens(const Eigen::MatrixBase<Derived>& a,
                                                  const AtfOptions& opts = {}) {
  using Real = typename Derived::Scalar;
  AtfResult<Real> out;
  out.m = prepare_skew(a, "reduce_givens");
  const Index n = out.m.rows();
  out.odd_order = n % 2 == 1;
  if (opts.accumulate_q) out.q.setIdentity(n, n);

  Matrix<Real>& m = out.m;
  // Antidiagonal with index sum d; the entries (i, d - i), i < d - i, are
  // annihilated from the outside in, each against its right neighbour.
  for (Index d = 1; d <= n - 2; ++d) {
    for (Index i = 0; i < d - i; ++i) {
      const Index j = d - i;
      const Real target = m(i, j);
      if (target == Real(0)) continue;
      const auto g = givens_from_pair(target, m(i, j + 1), j, j + 1);
      apply_givens_similarity(m, g);
      m(i, j) = Real(0);
      m(j, i) = Real(0);
      if (opts.accumulate_q) accumulate(out.q, g);
      ++out.rotations;
    }
  }
  out.rank = n;  // not rank-revealing; see reveal_rank_givens
  return out;
}

/// Index of the first antidiagonal of a lower antitriangular matrix holding an
/// entry larger than tol (1 = main), and the number of such entries on it.
template <typename Derived>
AntidiagonalProfile antidiagonal_profile(const Eigen::MatrixBase<Derived>& m,
                                         typename Derived::RealScalar tol) {
  const Index n = m.rows();
  AntidiagonalProfile p{n, 0, 0};
  for (Index d = 1; d <= n; ++d) {
    const Index offset = d - 1;
    Index count = 0;
    for (Index i = offset; i < n; ++i)
      if (std::abs(m(i, n - 1 + offset - i)) > tol) ++count;
    if (count > 0) {
      p.first_nontrivial = d;
      p.nonzero_count = count;
      return p;
    }
  }
  return p;
}

template <typename Derived>
Index rank_antitriangular(const Eigen::MatrixBase<Derived>& m,
                          typename Derived::RealScalar tol) {
  return antidiagonal_profile(m, tol).nonzero_count;
}

struct DeflationOutcome {
  AntidiagonalProfile profile;  // profile of the result
  bool deflated = false;        // false: first nontrivial antidiagonal was already fully nonzero
  Index rotations = 0;
};

/// One deflation pass on a lower antitriangular skew-symmetric matrix.
///
/// Let B be the trailing block whose main antidiagonal is the first
/// nontrivial antidiagonal of M.  Entries of that antidiagonal with magnitude
/// <= tol are flushed to zero.  If one is zero (always the case for odd
/// order), starting from the zero pair closest to the centre the antidiagonal
/// is annihilated: first inwards to the centre, then outwards to the corners.
/// B's first row and column become zero and the next antidiagonal becomes the
/// first nontrivial one.  `q`, if given, receives the rotations.
template <typename Real>
DeflationOutcome antidiagonal_deflate(Matrix<Real>& m, Matrix<Real>* q, Real tol) {
  if (m.rows() != m.cols()) throw StructureError("antidiagonal_deflate: matrix is not square");
  const Index n = m.rows();
  DeflationOutcome out;
  const AntidiagonalProfile before = antidiagonal_profile(m, tol);
  if (before.first_nontrivial == 0) {
    m.setZero();
    out.profile = before;
    out.deflated = false;
    return out;
  }

  const Index offset = before.first_nontrivial - 1;
  const Index order = n - offset;
  // local (i, j) of the block -> global (offset + i, offset + j)
  auto at = [&](Index i, Index j) -> Real& { return m(offset + i, offset + j); };

  // earlier antidiagonals are trivial: flush them exactly
  for (Index d = 0; d < offset; ++d)
    for (Index i = d; i < n; ++i) {
      m(i, n - 1 + d - i) = Real(0);
    }
  Index zero_at = -1;  // local row of the zero closest to the centre, upper half
  for (Index i = 0; i <= order - 1 - i; ++i) {
    const Index j = order - 1 - i;
    if (std::abs(at(i, j)) <= tol) {
      at(i, j) = Real(0);
      at(j, i) = Real(0);
      zero_at = i;
    }
  }
  if (zero_at < 0) {
    out.profile = before;
    out.deflated = false;
    return out;
  }

  auto rotate = [&](Index ti, Index tj, Index pi, Index pj, Index plane_lo) {
    const Real target = at(ti, tj);
    if (target == Real(0)) return;
    const auto g = givens_from_pair(target, at(pi, pj), offset + plane_lo, offset + plane_lo + 1);
    apply_givens_similarity(m, g);
    at(ti, tj) = Real(0);
    at(tj, ti) = Real(0);
    if (q != nullptr) accumulate(*q, g);
    ++out.rotations;
  };

  // inwards: (i, order-1-i) against (i, order-i), plane (order-1-i, order-i)
  for (Index i = zero_at + 1; i < order - 1 - i; ++i) {
    const Index j = order - 1 - i;
    rotate(i, j, i, j + 1, j);
  }
  // outwards: (order-1-t, t) against (order-1-t, t+1), plane (t, t+1)
  for (Index t = zero_at - 1; t >= 0; --t) {
    const Index r = order - 1 - t;
    rotate(r, t, r, t + 1, t);
  }
  for (Index i = 0; i < order; ++i) at(i, order - 1 - i) = Real(0);

  out.deflated = true;
  out.profile = antidiagonal_profile(m, tol);
  return out;
}

/// Repeats antidiagonal_deflate until the first nontrivial antidiagonal is
/// fully nonzero (or the matrix is zero).  Returns the rank it reveals.
template <typename Real>
Index reveal_rank_givens(Matrix<Real>& m, Matrix<Real>* q, Real tol, Index* rotations = nullptr) {
  for (;;) {
    const DeflationOutcome step = antidiagonal_deflate(m, q, tol);
    if (rotations != nullptr) *rotations += step.rotations;
    if (step.profile.first_nontrivial == 0) return 0;
    if (!step.deflated) return step.profile.nonzero_count;
  }
}

/// Full Givens path: reduce_givens followed by deflation to a fully nonzero
/// antidiagonal.  `tol` defaults to default_tol(A).
template <typename Derived>
AtfResult<typename Derived::Scalar> atf_givens(
    const Eigen::MatrixBase<Derived>& a, const AtfOptions& opts = {},
    std::optional<typename Derived::Scalar> tol = std::nullopt) {
  using Real = typename Derived::Scalar;
  AtfResult<Real> out = reduce_givens(a, opts);
  out.tol = tol ? *tol : default_tol(a);
  if (out.tol < Real(0)) throw Error("atf_givens: negative tolerance");
  out.rank = reveal_rank_givens(out.m, opts.accumulate_q ? &out.q : nullptr, out.tol,
                                &out.rotations);
  return out;
}

/// Determinant of an antitriangular skew-symmetric matrix: the product of
/// the squared antidiagonal entries of the first n/2 rows for even n, exactly
/// zero for odd n.
template <typename Derived>
typename Derived::Scalar det_antitriangular(const Eigen::MatrixBase<Derived>& m) {
  using Real = typename Derived::Scalar;
  if (m.rows() != m.cols()) throw StructureError("det_antitriangular: matrix is not square");
  if (!is_lower_antitriangular(m) && !is_upper_antitriangular(m))
    throw StructureError("det_antitriangular: matrix is not antitriangular");
  const Index n = m.rows();
  if (n % 2 == 1) return Real(0);
  Real det = 1;
  for (Index i = 0; i < n / 2; ++i) {
    const Real e = m(i, n - 1 - i);
    det *= e * e;
  }
  return det;
}

}  // namespace antitri
