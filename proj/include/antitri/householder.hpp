#pragma once

// Pivoted Householder reduction of a skew-symmetric matrix to upper
// antitriangular form, and its rank-revealing variant.
//
// Step s (1-based) works on the window i1 = s-1 .. i2 = n-s (0-based).  The
// window column of largest norm is moved to position i2 by a symmetric
// exchange, then a reflector acting on rows i1 .. i2-1 maps that column to a
// single entry at (i1, i2); applying it from both sides keeps the matrix
// skew-symmetric.  After floor(n/2) steps M(i,j) = 0 for i + j > n - 1.

#include "antitri/matcore.hpp"

namespace antitri {

namespace detail {

template <typename Real>
struct PivotedSweep {
  Index break_step = 0;  // 1-based step whose pivot norm was <= tol, 0 if none
};

/// Runs the main loop of the pivoted reduction on `m` in place.  With
/// `stop_early` a negligible pivot zeroes the window and stops; otherwise the
/// step is skipped.
template <typename Real>
PivotedSweep<Real> pivoted_sweep(Matrix<Real>& m, AtfResult<Real>& out, bool accumulate_q,
                                 bool stop_early) {
  const Index n = m.rows();
  PivotedSweep<Real> sweep;
  for (Index step = 1; step <= n / 2; ++step) {
    const Index i1 = step - 1;
    const Index i2 = n - step;
    const Index len = i2 - i1 + 1;

    Index imax = i1;
    Real best = -1;
    for (Index k = i1; k <= i2; ++k) {
      const Real norm = m.col(k).segment(i1, len).stableNorm();
      if (norm > best) {  // ties keep the smallest index
        best = norm;
        imax = k;
      }
    }
    out.pivots.push_back({step, imax, imax != i2, best});
    if (imax != i2) {
      swap_symmetric(m, imax, i2);
      if (accumulate_q) accumulate_swap(out.q, imax, i2);
    }

    if (!(best > out.tol)) {
      if (stop_early) {
        m.block(i1, i1, len, len).setZero();
        sweep.break_step = step;
        return sweep;
      }
      // every window column has norm <= tol; flush the part of column i2
      // that lies below the antidiagonal so the pattern stays exact
      m.col(i2).segment(i1 + 1, len - 1).setZero();
      m.row(i2).segment(i1 + 1, len - 1).setZero();
      continue;
    }

    // The window's last entry of column i2 is the (zero) diagonal, so the
    // reflector acts on rows i1 .. i2-1 only.
    const auto h = householder_from_column(m.col(i2).segment(i1, len - 1), i1);
    apply_householder_left(m, h, 0, i2 + 1);
    m.col(i2).segment(i1 + 1, len - 1).setZero();
    m(i1, i2) = h.alpha;
    apply_householder_right(m, h, 0, i2 + 1);
    m.row(i2).segment(i1 + 1, len - 1).setZero();
    m(i2, i1) = -h.alpha;
    // The border strips m(i1:i2, 0:i1) and m(0:i1, i1:i2) were updated
    // separately by the two applications, so the whole leading block is
    // re-symmetrized, not only the window.
    skew_symmetrize_window(m, 0, i2 + 1);

    if (accumulate_q) accumulate(out.q, h);
    out.reflectors.push_back(h);
    out.reflector_steps.push_back(step);
  }
  return sweep;
}

}  // namespace detail

/// Reduction to upper antitriangular form with column pivoting.  Steps
/// whose pivot norm is <= tol apply no reflector.  The reported rank is the
/// number of nonzero entries on the main antidiagonal.
template <typename Derived>
AtfResult<typename Derived::Scalar> atf_pivoted(const Eigen::MatrixBase<Derived>& a,
                                                typename Derived::Scalar tol,
                                                const AtfOptions& opts = {}) {
  using Real = typename Derived::Scalar;
  if (tol < Real(0)) throw Error("atf_pivoted: negative tolerance");
  AtfResult<Real> out;
  out.m = prepare_skew(a, "atf_pivoted");
  const Index n = out.m.rows();
  out.tol = tol;
  out.odd_order = n % 2 == 1;
  if (opts.accumulate_q) out.q.setIdentity(n, n);
  detail::pivoted_sweep(out.m, out, opts.accumulate_q, false);
  for (Index i = 0; i < n; ++i)
    if (i != n - 1 - i && std::abs(out.m(i, n - 1 - i)) > tol) ++out.rank;
  return out;
}

/// Rank-revealing reduction.  The pivoted loop stops at the first step s
/// whose pivot norm is <= tol, zeroes the unreduced window, and a second
/// sweep of reflectors (columns s-1 down to 1) moves the remaining entries
/// into the leading 2(s-1) x 2(s-1) block, leaving it upper antitriangular
/// with a fully nonzero antidiagonal.  Odd orders always end with a 1x1 zero
/// window and are treated as stopping at step (n+1)/2.
///
/// tol defaults to n * eps * max_k ||A(:,k)||_2.
template <typename Derived>
AtfResult<typename Derived::Scalar> atf_rank_revealing(
    const Eigen::MatrixBase<Derived>& a, const AtfOptions& opts = {},
    std::optional<typename Derived::Scalar> tol = std::nullopt) {
  using Real = typename Derived::Scalar;
  AtfResult<Real> out;
  out.m = prepare_skew(a, "atf_rank_revealing");
  const Index n = out.m.rows();
  out.tol = tol ? *tol : default_tol(out.m);
  if (out.tol < Real(0)) throw Error("atf_rank_revealing: negative tolerance");
  out.odd_order = n % 2 == 1;
  if (opts.accumulate_q) out.q.setIdentity(n, n);
  Matrix<Real>& m = out.m;

  const auto sweep = detail::pivoted_sweep(m, out, opts.accumulate_q, true);
  Index stop = sweep.break_step;
  if (stop != 0) out.terminated_step = stop;
  if (stop == 0 && out.odd_order) stop = (n + 1) / 2;
  if (stop == 0) {
    out.rank = n;
    return out;
  }

  // Columns 1 .. reduced carry all remaining entries; each is reduced to a
  // single entry on the antidiagonal of the leading 2*reduced block by a
  // reflector of fixed order n - 2*reduced + 1, shifted down one row per
  // column.
  const Index reduced = stop - 1;
  const Index order = n - 2 * reduced + 1;
  for (Index ell = reduced; ell >= 1; --ell) {
    const Index col = ell - 1;
    const Index p1 = 2 * reduced - ell;
    const auto x = m.col(col).segment(p1, order);
    if (x.stableNorm() == Real(0)) continue;
    const auto h = householder_from_column(x, p1);
    apply_householder_left(m, h, 0, ell);
    m.col(col).segment(p1 + 1, order - 1).setZero();
    m(p1, col) = h.alpha;
    m.block(0, p1, ell, order) = -m.block(p1, 0, order, ell).transpose();
    if (opts.accumulate_q) accumulate(out.q, h);
    out.deflation_reflectors.push_back(h);
  }
  out.rank = 2 * reduced;
  return out;
}

/// Reflectors of a pivoted reduction in compact form.  M is skew-symmetric,
/// so its strictly upper triangle is kept and the lower triangle is free:
/// element k (1-based) of the vector of step s goes to packed(s-1+k, s-1),
/// scaled as w = sqrt(beta) * v so that H_s = I - w w^T.
template <typename Real>
struct CompactReflectors {
  Matrix<Real> packed;
  std::vector<Index> pivots;  // imax of each step (0-based), one per step
};

template <typename Real>
CompactReflectors<Real> store_reflectors(const AtfResult<Real>& r) {
  if (!r.deflation_reflectors.empty())
    throw StructureError("store_reflectors: deflation reflectors have no free storage slots");
  const Index n = r.m.rows();
  CompactReflectors<Real> out;
  out.packed = r.m.template triangularView<Eigen::StrictlyUpper>();
  for (const auto& p : r.pivots) out.pivots.push_back(p.imax);
  for (std::size_t k = 0; k < r.reflectors.size(); ++k) {
    const auto& h = r.reflectors[k];
    const Index col = r.reflector_steps[k] - 1;
    if (h.offset != col || col + 1 + h.size() > n)
      throw StructureError("store_reflectors: reflector does not fit its column slot");
    out.packed.col(col).segment(col + 1, h.size()) = std::sqrt(h.beta) * h.v;
  }
  return out;
}

/// Rebuilds Q = P_1 H_1 P_2 H_2 ... from compact storage.
template <typename Real>
Matrix<Real> reconstruct_q(const CompactReflectors<Real>& c) {
  const Index n = c.packed.rows();
  Matrix<Real> q = Matrix<Real>::Identity(n, n);
  for (std::size_t k = 0; k < c.pivots.size(); ++k) {
    const Index step = Index(k) + 1;
    const Index i1 = step - 1;
    const Index i2 = n - step;
    accumulate_swap(q, c.pivots[k], i2);
    HouseholderReflector<Real> h;
    h.offset = i1;
    h.v = c.packed.col(i1).segment(i1 + 1, i2 - i1);
    h.beta = 1;
    if (h.v.squaredNorm() > Real(0)) accumulate(q, h);
  }
  return q;
}

}  // namespace antitri
