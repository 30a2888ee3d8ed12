#pragma once

// Multi-arrowhead form: a symmetric permutation of a lower antitriangular
// skew-symmetric matrix whose nonzeros above the diagonal sit only in the
// "arrowhead" columns 3, 5, 7, ... (odd n) or 2, 4, 6, ... (even n).

#include "antitri/givens.hpp"
#include "antitri/matcore.hpp"

namespace antitri {

/// Column ordering of P: column t of P is e_{map[t]} (0-based).
struct PermutationVector {
  std::vector<Index> map;

  Index size() const { return Index(map.size()); }

  bool is_bijection() const {
    std::vector<bool> seen(map.size(), false);
    for (Index v : map) {
      if (v < 0 || v >= size() || seen[std::size_t(v)]) return false;
      seen[std::size_t(v)] = true;
    }
    return true;
  }

  DenseMatrix to_matrix() const {
    DenseMatrix p = DenseMatrix::Zero(size(), size());
    for (Index t = 0; t < size(); ++t) p(map[std::size_t(t)], t) = 1;
    return p;
  }
};

/// Centre-out ordering e_k, e_{k-1}, e_{k+1}, ... for n = 2k-1 and
/// e_k, e_{k+1}, e_{k-1}, ... for n = 2k (1-based k), ending e_1, e_n.
inline PermutationVector arrowhead_permutation(Index n) {
  if (n < 1) throw IndexError("arrowhead_permutation: order must be positive");
  PermutationVector p;
  p.map.reserve(std::size_t(n));
  if (n % 2 == 1) {
    const Index centre = (n - 1) / 2;
    p.map.push_back(centre);
    for (Index m = 1; m <= centre; ++m) {
      p.map.push_back(centre - m);
      p.map.push_back(centre + m);
    }
  } else {
    const Index lo = n / 2 - 1;
    for (Index m = 0; m < n / 2; ++m) {
      if (m == 0) {
        p.map.push_back(lo);
        p.map.push_back(lo + 1);
      } else {
        p.map.push_back(lo - m);
        p.map.push_back(lo + 1 + m);
      }
    }
  }
  return p;
}

/// True when s(i,j) may be nonzero in the multi-arrowhead pattern of order n
/// (0-based i, j): off the diagonal, the larger index must be an arrowhead,
/// i.e. even (0-based) and >= 2 for odd n, odd (0-based) for even n.
inline bool arrowhead_slot(Index n, Index i, Index j) {
  if (i == j) return false;
  const Index hi = std::max(i, j);
  return n % 2 == 1 ? (hi % 2 == 0 && hi >= 2) : (hi % 2 == 1);
}

template <typename Derived>
bool has_arrowhead_pattern(const Eigen::MatrixBase<Derived>& s) {
  const Index n = s.rows();
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i)
      if (!arrowhead_slot(n, i, j) && s(i, j) != typename Derived::Scalar(0)) return false;
  return true;
}

template <typename Real>
struct ArrowheadResult {
  Matrix<Real> s;
  PermutationVector p;
};

/// S = P^T M P, computed by relabeling entries only, so M = P S P^T.
template <typename Derived>
ArrowheadResult<typename Derived::Scalar> to_multi_arrowhead(const Eigen::MatrixBase<Derived>& m) {
  using Real = typename Derived::Scalar;
  if (m.rows() != m.cols()) throw StructureError("to_multi_arrowhead: matrix is not square");
  if (!is_lower_antitriangular(m))
    throw StructureError("to_multi_arrowhead: matrix is not lower antitriangular");
  if (!skew_check(m, Real(0)).ok)
    throw NotSkewError("to_multi_arrowhead: matrix is not skew-symmetric", 0, 0, 0.0);
  const Index n = m.rows();
  ArrowheadResult<Real> out;
  out.p = arrowhead_permutation(n);
  out.s.resize(n, n);
  for (Index b = 0; b < n; ++b)
    for (Index a = 0; a < n; ++a) out.s(a, b) = m(out.p.map[std::size_t(a)], out.p.map[std::size_t(b)]);
  return out;
}

template <typename Real>
struct FirstRowCleanup {
  Matrix<Real> s;
  Matrix<Real> q;  // S' = Q^T S Q
  Index rotations = 0;
  Real residual = 0;  // largest |S'(0,j)| before it was set to zero
};

/// For odd order: rotations in planes (1,2), (1,4), ..., (1,n-1) (1-based)
/// annihilate s(1,3), s(1,5), ..., s(1,n); rows 1 and 2j share their
/// sparsity pattern when rotation j is applied, so no fill is created.
template <typename Derived>
FirstRowCleanup<typename Derived::Scalar> zero_first_row_odd(
    const Eigen::MatrixBase<Derived>& s,
    std::optional<typename Derived::Scalar> tol = std::nullopt) {
  using Real = typename Derived::Scalar;
  const Index n = s.rows();
  if (s.rows() != s.cols()) throw StructureError("zero_first_row_odd: matrix is not square");
  if (n % 2 == 0) throw StructureError("zero_first_row_odd: only defined for odd order");
  if (!has_arrowhead_pattern(s))
    throw StructureError("zero_first_row_odd: matrix is not in multi-arrowhead form");
  FirstRowCleanup<Real> out;
  out.s = s;
  out.q.setIdentity(n, n);
  const Real skip = tol ? *tol : Real(0);
  for (Index partner = 1; partner + 1 < n; partner += 2) {
    const Index target = partner + 1;
    const Real a = out.s(target, 0);
    if (!(std::abs(a) > skip)) {
      out.s(target, 0) = Real(0);
      out.s(0, target) = Real(0);
      continue;
    }
    const auto g = givens_from_pair(a, out.s(target, partner), 0, partner);
    apply_givens_similarity(out.s, g);
    accumulate(out.q, g);
    out.s(target, 0) = Real(0);
    out.s(0, target) = Real(0);
    ++out.rotations;
  }
  out.residual = out.s.row(0).cwiseAbs().maxCoeff();
  out.s.row(0).setZero();
  out.s.col(0).setZero();
  return out;
}

}  // namespace antitri
