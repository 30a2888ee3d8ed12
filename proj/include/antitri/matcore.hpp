#pragma once

// Dense storage aliases, skew-symmetry utilities and the two orthogonal
// primitives used by every reduction: plane (Givens) rotations and Householder
// reflectors, each with two-sided application and accumulation.
//
// Index convention: all indices are 0-based Eigen indices.  A reduced form M
// and its accumulated orthogonal factor Q always satisfy A = Q * M * Q^T,
// i.e. M = Q^T * A * Q.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "antitri/errors.hpp"

namespace antitri {

using Index = Eigen::Index;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using DenseMatrix = Matrix<double>;
using ComplexDenseMatrix = Matrix<std::complex<double>>;

template <typename Real>
constexpr Real unit_roundoff() {
  return std::numeric_limits<Real>::epsilon();
}

// ---------------------------------------------------------------------------
// Skew-symmetry
// ---------------------------------------------------------------------------

/// Largest deviation from skew-symmetry, |a(i,j) + conj(a(j,i))|, reported at
/// its first maximizing position with row >= col.
template <typename Real>
struct SkewCheck {
  bool ok = true;
  Index row = 0;
  Index col = 0;
  Real magnitude = 0;
};

/// For real input this checks skew-symmetry, for complex input
/// skew-Hermitian structure.
template <typename Derived>
SkewCheck<typename Derived::RealScalar> skew_check(const Eigen::MatrixBase<Derived>& a,
                                                   typename Derived::RealScalar tol) {
  using Real = typename Derived::RealScalar;
  if (a.rows() != a.cols()) throw StructureError("skew_check: matrix is not square");
  SkewCheck<Real> out;
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = j; i < a.rows(); ++i) {
      const Real dev = std::abs(a(i, j) + Eigen::numext::conj(a(j, i)));
      if (dev > out.magnitude) {
        out.magnitude = dev;
        out.row = i;
        out.col = j;
      }
    }
  }
  out.ok = !(out.magnitude > tol);
  return out;
}

/// Replaces the window a(first:first+count, first:first+count) by its
/// skew part (W - W^*)/2.  Mirror entries are written as exact negatives.
template <typename Derived>
void skew_symmetrize_window(Eigen::MatrixBase<Derived>& a, Index first, Index count) {
  if (a.rows() != a.cols()) throw StructureError("skew_symmetrize: matrix is not square");
  if (first < 0 || count < 0 || first + count > a.rows())
    throw IndexError("skew_symmetrize: window out of range");
  using Scalar = typename Derived::Scalar;
  const Index last = first + count;
  for (Index j = first; j < last; ++j) {
    a(j, j) = (a(j, j) - Eigen::numext::conj(a(j, j))) / Scalar(2);
    for (Index i = j + 1; i < last; ++i) {
      const Scalar lower = (a(i, j) - Eigen::numext::conj(a(j, i))) / Scalar(2);
      a(i, j) = lower;
      a(j, i) = -Eigen::numext::conj(lower);
    }
  }
}

template <typename Derived>
Matrix<typename Derived::Scalar> skew_symmetrize(const Eigen::MatrixBase<Derived>& a) {
  Matrix<typename Derived::Scalar> out = a;
  skew_symmetrize_window(out, 0, out.rows());
  return out;
}

template <typename Derived>
typename Derived::RealScalar frobenius_norm(const Eigen::MatrixBase<Derived>& a) {
  return a.size() == 0 ? typename Derived::RealScalar(0) : a.stableNorm();
}

/// Tolerance used to accept an input as skew-symmetric before it is
/// symmetrized: n * eps * ||A||_F.
template <typename Derived>
typename Derived::RealScalar validation_tol(const Eigen::MatrixBase<Derived>& a) {
  using Real = typename Derived::RealScalar;
  return Real(a.rows()) * unit_roundoff<Real>() * frobenius_norm(a);
}

/// Validates skew-symmetry within validation_tol and returns the exactly
/// skew-symmetric copy every factorization works on.
template <typename Derived>
Matrix<typename Derived::Scalar> prepare_skew(const Eigen::MatrixBase<Derived>& a,
                                              const char* who) {
  if (a.rows() != a.cols() || a.rows() == 0)
    throw StructureError(std::string(who) + ": expected a non-empty square matrix");
  if (!a.allFinite()) throw StructureError(std::string(who) + ": matrix has non-finite entries");
  const auto check = skew_check(a, validation_tol(a));
  if (!check.ok) {
    throw NotSkewError(std::string(who) + ": matrix is not skew-symmetric (|a(" +
                           std::to_string(check.row + 1) + "," + std::to_string(check.col + 1) +
                           ") + a(" + std::to_string(check.col + 1) + "," +
                           std::to_string(check.row + 1) +
                           ")| = " + std::to_string(double(check.magnitude)) + ")",
                       check.row, check.col, double(check.magnitude));
  }
  return skew_symmetrize(a);
}

/// Rank tolerance n * eps * max_k ||A(:,k)||_2; zero for the zero matrix.
template <typename Derived>
typename Derived::RealScalar default_tol(const Eigen::MatrixBase<Derived>& a) {
  using Real = typename Derived::RealScalar;
  Real largest = 0;
  for (Index k = 0; k < a.cols(); ++k) largest = std::max(largest, a.col(k).stableNorm());
  return Real(a.rows()) * unit_roundoff<Real>() * largest;
}

// ---------------------------------------------------------------------------
// Antitriangular shape
// ---------------------------------------------------------------------------

/// Zeros strictly above the main antidiagonal: m(i,j) = 0 for i + j < n - 1.
template <typename Derived>
bool is_lower_antitriangular(const Eigen::MatrixBase<Derived>& m,
                             typename Derived::RealScalar tol = 0) {
  const Index n = m.rows();
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i + j < n - 1; ++i)
      if (std::abs(m(i, j)) > tol) return false;
  return true;
}

/// Zeros strictly below the main antidiagonal: m(i,j) = 0 for i + j > n - 1.
template <typename Derived>
bool is_upper_antitriangular(const Eigen::MatrixBase<Derived>& m,
                             typename Derived::RealScalar tol = 0) {
  const Index n = m.rows();
  for (Index j = 0; j < n; ++j)
    for (Index i = std::max<Index>(0, n - j); i < n; ++i)
      if (std::abs(m(i, j)) > tol) return false;
  return true;
}

template <typename Scalar>
struct FlipResult {
  Matrix<Scalar> m;
  Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic> j;
};

/// J * M * J with J the exchange permutation; maps upper antitriangular
/// matrices to lower antitriangular ones and back.  Pure relabeling.
template <typename Derived>
FlipResult<typename Derived::Scalar> flip_antitriangular(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols()) throw StructureError("flip_antitriangular: matrix is not square");
  FlipResult<typename Derived::Scalar> out;
  out.m = m.reverse();
  out.j.resize(m.rows());
  for (Index i = 0; i < m.rows(); ++i) out.j.indices()(i) = int(m.rows() - 1 - i);
  return out;
}

// ---------------------------------------------------------------------------
// Givens rotations
// ---------------------------------------------------------------------------

/// Plane rotation G equal to the identity except
///   G(i,i) = c, G(i,j) = -s, G(j,i) = s, G(j,j) = c.
/// Applied as a similarity A <- G^T A G, it replaces columns i, j by
/// c*col_i + s*col_j and -s*col_i + c*col_j (rows likewise).
template <typename Real>
struct GivensRotation {
  Index i = 0;
  Index j = 1;
  Real c = 1;
  Real s = 0;
};

/// Coefficients with a*c + b*s = 0 and c^2 + s^2 = 1, normalized to s >= 0.
/// In a similarity on plane (i, j) this annihilates the entry a = m(k, i)
/// against its partner b = m(k, j).
template <typename Real>
GivensRotation<Real> givens_from_pair(Real a, Real b, Index i = 0, Index j = 1) {
  if (a == Real(0) && b == Real(0))
    throw DegenerateInputError("givens_from_pair: both entries are zero");
  const Real r = std::hypot(a, b);
  GivensRotation<Real> g{i, j, -b / r, a / r};
  if (g.s < Real(0) || (g.s == Real(0) && std::signbit(g.s))) {
    g.c = -g.c;
    g.s = -g.s;
  }
  return g;
}

namespace detail {
template <typename Derived>
void check_plane(const Eigen::MatrixBase<Derived>& a, Index i, Index j, const char* who) {
  if (!(0 <= i && i < j && j < a.cols()))
    throw IndexError(std::string(who) + ": rotation plane out of range");
}
}  // namespace detail

/// Two-sided similarity A <- G^T A G for skew-symmetric A.  Only rows and
/// columns i and j change; both mirror entries are written from one computed
/// value, so the result is exactly skew-symmetric.  The 2x2 block on the
/// plane itself is invariant for skew-symmetric A.
template <typename Derived>
void apply_givens_similarity(Eigen::MatrixBase<Derived>& a,
                             const GivensRotation<typename Derived::Scalar>& g) {
  detail::check_plane(a, g.i, g.j, "apply_givens_similarity");
  using Real = typename Derived::Scalar;
  const Index n = a.rows();
  for (Index k = 0; k < n; ++k) {
    if (k == g.i || k == g.j) continue;
    const Real aik = a(g.i, k);
    const Real ajk = a(g.j, k);
    const Real ri = g.c * aik + g.s * ajk;
    const Real rj = g.c * ajk - g.s * aik;
    a(g.i, k) = ri;
    a(k, g.i) = -ri;
    a(g.j, k) = rj;
    a(k, g.j) = -rj;
  }
  a(g.i, g.i) = Real(0);
  a(g.j, g.j) = Real(0);
  a(g.j, g.i) = -a(g.i, g.j);
}

/// Q <- Q * G.
template <typename Derived>
void accumulate(Eigen::MatrixBase<Derived>& q, const GivensRotation<typename Derived::Scalar>& g) {
  detail::check_plane(q, g.i, g.j, "accumulate");
  using Real = typename Derived::Scalar;
  for (Index k = 0; k < q.rows(); ++k) {
    const Real qi = q(k, g.i);
    const Real qj = q(k, g.j);
    q(k, g.i) = g.c * qi + g.s * qj;
    q(k, g.j) = g.c * qj - g.s * qi;
  }
}

// ---------------------------------------------------------------------------
// Householder reflectors
// ---------------------------------------------------------------------------

/// H = I - beta * v * v^T acting on indices offset .. offset + v.size() - 1.
/// `alpha` is the value the generating vector is mapped to: H x = alpha e_1.
template <typename Real>
struct HouseholderReflector {
  Index offset = 0;
  Vector<Real> v;
  Real beta = 0;
  Real alpha = 0;

  Index size() const { return v.size(); }
};

/// Reflector mapping x to sigma * ||x|| * e_1 with sigma = -sign(x_1)
/// (sigma = -1 when x_1 = 0).  The norm is computed with scaling.
template <typename Derived>
HouseholderReflector<typename Derived::Scalar> householder_from_column(
    const Eigen::MatrixBase<Derived>& x, Index offset = 0) {
  using Real = typename Derived::Scalar;
  const Real norm = x.size() == 0 ? Real(0) : x.stableNorm();
  if (!(norm > Real(0))) throw DegenerateInputError("householder_from_column: zero vector");
  HouseholderReflector<Real> h;
  h.offset = offset;
  h.alpha = x(0) > Real(0) ? -norm : norm;
  if (x(0) == Real(0)) h.alpha = -norm;
  h.v = x;
  h.v(0) = x(0) - h.alpha;  // x_1 + sign(x_1) ||x||, no cancellation
  // v^T v = 2 ||x|| (||x|| + |x_1|)
  h.beta = Real(1) / (norm * (norm + std::abs(x(0))));
  return h;
}

namespace detail {
template <typename Derived, typename Real>
void check_window(const Eigen::MatrixBase<Derived>& a, const HouseholderReflector<Real>& h,
                  Index first, Index count, bool left) {
  const Index across = left ? a.cols() : a.rows();
  const Index along = left ? a.rows() : a.cols();
  if (h.offset < 0 || h.offset + h.size() > along)
    throw IndexError("householder: reflector window exceeds the matrix");
  if (first < 0 || count < 0 || first + count > across)
    throw IndexError("householder: application range out of bounds");
}
}  // namespace detail

/// Applies H from the left to columns first .. first + count - 1; only rows of
/// the reflector window change.
template <typename Derived>
void apply_householder_left(Eigen::MatrixBase<Derived>& a,
                            const HouseholderReflector<typename Derived::Scalar>& h, Index first,
                            Index count) {
  detail::check_window(a, h, first, count, true);
  if (h.beta == 0 || count == 0) return;
  using Real = typename Derived::Scalar;
  auto block = a.block(h.offset, first, h.size(), count);
  const Vector<Real> w = block.transpose() * h.v;
  block.noalias() -= (h.beta * h.v) * w.transpose();
}

/// Applies H from the right to rows first .. first + count - 1; only columns
/// of the reflector window change.
template <typename Derived>
void apply_householder_right(Eigen::MatrixBase<Derived>& a,
                             const HouseholderReflector<typename Derived::Scalar>& h, Index first,
                             Index count) {
  detail::check_window(a, h, first, count, false);
  if (h.beta == 0 || count == 0) return;
  using Real = typename Derived::Scalar;
  auto block = a.block(first, h.offset, count, h.size());
  const Vector<Real> w = block * h.v;
  block.noalias() -= w * (h.beta * h.v).transpose();
}

/// Q <- Q * H.
template <typename Derived>
void accumulate(Eigen::MatrixBase<Derived>& q,
                const HouseholderReflector<typename Derived::Scalar>& h) {
  apply_householder_right(q, h, 0, q.rows());
}

/// Q <- Q * P where P exchanges indices i and j.
template <typename Derived>
void accumulate_swap(Eigen::MatrixBase<Derived>& q, Index i, Index j) {
  if (i == j) return;
  q.col(i).swap(q.col(j));
}

/// Symmetric exchange of rows and columns i and j.
template <typename Derived>
void swap_symmetric(Eigen::MatrixBase<Derived>& a, Index i, Index j) {
  if (i == j) return;
  a.col(i).swap(a.col(j));
  a.row(i).swap(a.row(j));
}

// ---------------------------------------------------------------------------
// Results
// ---------------------------------------------------------------------------

template <typename Real>
struct PivotRecord {
  Index step = 0;  // 1-based
  Index imax = 0;  // selected pivot column (0-based)
  bool swapped = false;
  Real norm = 0;  // pivot column norm over the unreduced window
};

struct AtfOptions {
  bool accumulate_q = true;
};

template <typename Real>
struct AtfResult {
  Matrix<Real> m;
  Matrix<Real> q;  // empty unless AtfOptions::accumulate_q
  Index rank = 0;
  Real tol = 0;
  std::optional<Index> terminated_step;  // 1-based step of early termination
  bool odd_order = false;

  // Householder path bookkeeping; empty for the Givens path.
  std::vector<PivotRecord<Real>> pivots;
  std::vector<HouseholderReflector<Real>> reflectors;  // one per transforming step
  std::vector<Index> reflector_steps;                  // 1-based step of each reflector
  std::vector<HouseholderReflector<Real>> deflation_reflectors;

  Index rotations = 0;  // Givens path only
};

/// ||Q^T Q - I||_F
template <typename Derived>
typename Derived::RealScalar orthogonality_error(const Eigen::MatrixBase<Derived>& q) {
  using Scalar = typename Derived::Scalar;
  const Matrix<Scalar> e = q.adjoint() * q - Matrix<Scalar>::Identity(q.cols(), q.cols());
  return frobenius_norm(e);
}

/// ||Q M Q^* - A||_F
template <typename DA, typename DQ, typename DM>
typename DA::RealScalar reconstruction_error(const Eigen::MatrixBase<DA>& a,
                                             const Eigen::MatrixBase<DQ>& q,
                                             const Eigen::MatrixBase<DM>& m) {
  using Scalar = typename DA::Scalar;
  const Matrix<Scalar> e = q * m * q.adjoint() - a;
  return frobenius_norm(e);
}

}  // namespace antitri
