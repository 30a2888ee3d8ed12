#pragma once

// Block antitriangular form of Hermitian and skew-Hermitian matrices.
//
// For Hermitian H with inertia (n-, n0, n+), n1 = min(n-, n+) and
// n2 = max(n-, n+) - n1, a unitary Q gives
//
//            [ 0  0  0  0  ]   n0
//   Q^* H Q = [ 0  0  0  Y^* ]   n1
//            [ 0  0  X  Z^* ]   n2
//            [ 0  Y  Z  W  ]   n1
//
// with Y lower antitriangular and nonsingular and X definite.  Q is built from
// an eigendecomposition: the j-th most negative eigenpair is combined with the
// j-th most positive one into a neutral vector u_j (u_j^* H u_j = 0) and its
// orthogonal complement w_j in the same plane.  With this choice Y is
// antidiagonal, Z = 0 and X, W are diagonal.
//
// A skew-Hermitian A is handled through H = iA and M = -i * (Q^* H Q).

#include <numeric>

#include "antitri/matcore.hpp"

namespace antitri {

struct Inertia {
  Index n_minus = 0;
  Index n_zero = 0;
  Index n_plus = 0;

  Index total() const { return n_minus + n_zero + n_plus; }
  friend bool operator==(const Inertia&, const Inertia&) = default;
};

/// "(n-, n0, n+)"; the skew-Hermitian form is written "i(n-, n0, n+)".
inline std::string to_string(const Inertia& in, bool imaginary_axis = false) {
  return std::string(imaginary_axis ? "i(" : "(") + std::to_string(in.n_minus) + ", " +
         std::to_string(in.n_zero) + ", " + std::to_string(in.n_plus) + ")";
}

template <typename Real>
struct HermitianEigen {
  Vector<Real> values;                  // ascending
  Matrix<std::complex<Real>> vectors;  // unitary, columns match values
  int sweeps = 0;
};

/// max |h(i,j) - conj(h(j,i))| and its position.
template <typename Derived>
SkewCheck<typename Derived::RealScalar> hermitian_check(const Eigen::MatrixBase<Derived>& h,
                                                        typename Derived::RealScalar tol) {
  using Complex = typename Derived::Scalar;
  return skew_check((h * Complex(0, 1)).eval(), tol);
}

template <typename Derived>
Matrix<typename Derived::Scalar> hermitize(const Eigen::MatrixBase<Derived>& h) {
  using Complex = typename Derived::Scalar;
  const Index n = h.rows();
  Matrix<Complex> out(n, n);
  for (Index j = 0; j < n; ++j) {
    out(j, j) = Complex(std::real(h(j, j)), 0);
    for (Index i = j + 1; i < n; ++i) {
      const Complex lower = (h(i, j) + std::conj(h(j, i))) / typename Derived::RealScalar(2);
      out(i, j) = lower;
      out(j, i) = std::conj(lower);
    }
  }
  return out;
}

namespace detail {
template <typename Derived>
Matrix<typename Derived::Scalar> prepare_hermitian(const Eigen::MatrixBase<Derived>& h,
                                                   const char* who) {
  if (h.rows() != h.cols() || h.rows() == 0)
    throw StructureError(std::string(who) + ": expected a non-empty square matrix");
  if (!h.allFinite()) throw StructureError(std::string(who) + ": matrix has non-finite entries");
  const auto check = hermitian_check(h, validation_tol(h));
  if (!check.ok)
    throw NotSkewError(std::string(who) + ": matrix is not Hermitian", check.row, check.col,
                       double(check.magnitude));
  return hermitize(h);
}
}  // namespace detail

/// Cyclic Jacobi method for a Hermitian matrix.  Sweeps stop once the
/// off-diagonal Frobenius mass is <= n * eps * ||H||_F.
template <typename Derived>
HermitianEigen<typename Derived::RealScalar> hermitian_eigensolve(
    const Eigen::MatrixBase<Derived>& h_in, int max_sweeps = 100) {
  using Real = typename Derived::RealScalar;
  using Complex = std::complex<Real>;
  Matrix<Complex> h = detail::prepare_hermitian(h_in, "hermitian_eigensolve");
  const Index n = h.rows();
  Matrix<Complex> v = Matrix<Complex>::Identity(n, n);
  const Real threshold = Real(n) * unit_roundoff<Real>() * frobenius_norm(h);

  auto off_mass = [&] {
    Real sum = 0;
    for (Index j = 0; j < n; ++j)
      for (Index i = 0; i < n; ++i)
        if (i != j) sum += std::norm(h(i, j));
    return std::sqrt(sum);
  };

  HermitianEigen<Real> out;
  while (off_mass() > threshold) {
    if (out.sweeps == max_sweeps) throw NumericalError("hermitian_eigensolve: no convergence");
    ++out.sweeps;
    for (Index p = 0; p < n; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const Real r = std::abs(h(p, q));
        if (r == Real(0)) continue;
        const Complex phase = h(p, q) / r;
        const Real app = std::real(h(p, p));
        const Real aqq = std::real(h(q, q));
        const Real theta = (aqq - app) / (2 * r);
        const Real t = (theta >= 0 ? Real(1) : Real(-1)) /
                       (std::abs(theta) + std::sqrt(theta * theta + Real(1)));
        const Real c = Real(1) / std::sqrt(t * t + Real(1));
        const Real s = t * c;
        // J = diag(1, conj(phase)) * [[c, s], [-s, c]] on the (p, q) plane
        const Complex jpp = c, jpq = s, jqp = -s * std::conj(phase), jqq = c * std::conj(phase);
        for (Index k = 0; k < n; ++k) {
          const Complex hp = h(k, p), hq = h(k, q);
          h(k, p) = hp * jpp + hq * jqp;
          h(k, q) = hp * jpq + hq * jqq;
          const Complex vp = v(k, p), vq = v(k, q);
          v(k, p) = vp * jpp + vq * jqp;
          v(k, q) = vp * jpq + vq * jqq;
        }
        for (Index k = 0; k < n; ++k) {
          const Complex hp = h(p, k), hq = h(q, k);
          h(p, k) = std::conj(jpp) * hp + std::conj(jqp) * hq;
          h(q, k) = std::conj(jpq) * hp + std::conj(jqq) * hq;
        }
        h(p, q) = Complex(0);
        h(q, p) = Complex(0);
        h(p, p) = Complex(std::real(h(p, p)), 0);
        h(q, q) = Complex(std::real(h(q, q)), 0);
      }
    }
  }

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index(0));
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return std::real(h(a, a)) < std::real(h(b, b)); });
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Index k = 0; k < n; ++k) {
    out.values(k) = std::real(h(order[std::size_t(k)], order[std::size_t(k)]));
    out.vectors.col(k) = v.col(order[std::size_t(k)]);
  }
  return out;
}

/// Default tolerance for classifying eigenvalues as zero: n * eps * ||H||_F.
template <typename Derived>
typename Derived::RealScalar inertia_tol(const Eigen::MatrixBase<Derived>& h) {
  return validation_tol(h);
}

template <typename Real>
Inertia inertia_from_values(const Vector<Real>& values, Real tol) {
  Inertia in;
  for (Index k = 0; k < values.size(); ++k) {
    if (values(k) < -tol)
      ++in.n_minus;
    else if (values(k) > tol)
      ++in.n_plus;
    else
      ++in.n_zero;
  }
  return in;
}

template <typename Derived>
Inertia inertia_hermitian(const Eigen::MatrixBase<Derived>& h,
                          std::optional<typename Derived::RealScalar> tol = std::nullopt) {
  const auto eig = hermitian_eigensolve(h);
  return inertia_from_values(eig.values, tol ? *tol : inertia_tol(h));
}

/// Counts eigenvalues on the negative imaginary axis, at zero, and on the
/// positive imaginary axis, computed from the Hermitian matrix iA.
template <typename Derived>
Inertia inertia_skew_hermitian(const Eigen::MatrixBase<Derived>& a,
                               std::optional<typename Derived::RealScalar> tol = std::nullopt) {
  using Complex = typename Derived::Scalar;
  const Matrix<Complex> h = a * Complex(0, 1);
  const Inertia of_h = inertia_hermitian(h, tol);
  // eigenvalues of A are -i times those of iA
  return {of_h.n_plus, of_h.n_zero, of_h.n_minus};
}

template <typename Real>
struct BlockAtfResult {
  using Complex = std::complex<Real>;

  Matrix<Complex> m;
  Matrix<Complex> q;
  Index n0 = 0;
  Index n1 = 0;
  Index n2 = 0;
  Inertia inertia;  // of the input (imaginary-axis counts for skew-Hermitian input)
  Real tol = 0;
  Real neutral_residual = 0;  // largest entry of the zero blocks before flushing

  Index order() const { return m.rows(); }
  Index u_begin() const { return n0; }
  Index x_begin() const { return n0 + n1; }
  Index w_begin() const { return n0 + n1 + n2; }

  auto y() const { return m.block(w_begin(), u_begin(), n1, n1); }
  auto x() const { return m.block(x_begin(), x_begin(), n2, n2); }
  auto z() const { return m.block(w_begin(), x_begin(), n1, n2); }
  auto w() const { return m.block(w_begin(), w_begin(), n1, n1); }
};

/// True when m has the zero blocks of the block antitriangular layout for
/// the given block sizes and its Y block is lower antitriangular.
template <typename Real>
bool has_block_atf_pattern(const Matrix<std::complex<Real>>& m, Index n0, Index n1, Index n2) {
  const Index n = m.rows();
  if (n0 + 2 * n1 + n2 != n) return false;
  const std::complex<Real> zero(0);
  const Index x0 = n0 + n1, w0 = n0 + n1 + n2;
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) {
      const bool kernel = i < n0 || j < n0;
      const bool uu = i < x0 && j < x0;                        // U-U block
      const bool ux = (i < x0 && j >= x0 && j < w0) || (j < x0 && i >= x0 && i < w0);
      if ((kernel || uu || ux) && m(i, j) != zero) return false;
    }
  // Y = m(w0.., n0..) lower antitriangular
  for (Index j = 0; j < n1; ++j)
    for (Index i = 0; i + j < n1 - 1; ++i)
      if (m(w0 + i, n0 + j) != zero || m(n0 + j, w0 + i) != zero) return false;
  return true;
}

template <typename Derived>
BlockAtfResult<typename Derived::RealScalar> block_atf_hermitian(
    const Eigen::MatrixBase<Derived>& h_in,
    std::optional<typename Derived::RealScalar> tol = std::nullopt) {
  using Real = typename Derived::RealScalar;
  using Complex = std::complex<Real>;
  const Matrix<Complex> h = detail::prepare_hermitian(h_in, "block_atf_hermitian");
  const Index n = h.rows();
  const auto eig = hermitian_eigensolve(h);

  BlockAtfResult<Real> out;
  out.tol = tol ? *tol : inertia_tol(h);
  if (out.tol < Real(0)) throw Error("block_atf_hermitian: negative tolerance");
  out.inertia = inertia_from_values(eig.values, out.tol);
  const Inertia& in = out.inertia;
  out.n0 = in.n_zero;
  out.n1 = std::min(in.n_minus, in.n_plus);
  out.n2 = std::max(in.n_minus, in.n_plus) - out.n1;
  if (out.n0 + 2 * out.n1 + out.n2 != n)
    throw NumericalError("block_atf_hermitian: inconsistent inertia");

  // eigenvalues are ascending: negatives first (most negative first),
  // positives last (most positive last)
  const Index first_zero = in.n_minus;
  const Index first_pos = in.n_minus + in.n_zero;
  auto neg = [&](Index j) { return j; };
  auto pos = [&](Index j) { return n - 1 - j; };

  out.q.resize(n, n);
  for (Index k = 0; k < out.n0; ++k) out.q.col(k) = eig.vectors.col(first_zero + k);
  for (Index j = 0; j < out.n1; ++j) {
    const Real lm = eig.values(neg(j));
    const Real lp = eig.values(pos(j));
    const Real gap = lp - lm;
    const Real alpha = std::sqrt(-lm / gap);
    const Real beta = std::sqrt(lp / gap);
    const auto vp = eig.vectors.col(pos(j));
    const auto vm = eig.vectors.col(neg(j));
    // neutral vectors in reverse pair order so that Y lands on the antidiagonal
    out.q.col(out.u_begin() + out.n1 - 1 - j) = alpha * vp + beta * vm;
    out.q.col(out.w_begin() + j) = beta * vp - alpha * vm;
  }
  for (Index k = 0; k < out.n2; ++k) {
    const Index src = in.n_plus > in.n_minus ? first_pos + k : out.n1 + k;
    out.q.col(out.x_begin() + k) = eig.vectors.col(src);
  }

  Matrix<Complex> m = hermitize((out.q.adjoint() * h * out.q).eval());
  const Index x0 = out.x_begin(), w0 = out.w_begin(), n0 = out.n0, n1 = out.n1;
  auto flush = [&](Index i, Index j) {
    out.neutral_residual = std::max(out.neutral_residual, std::abs(m(i, j)));
    m(i, j) = Complex(0);
  };
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) {
      const bool kernel = i < n0 || j < n0;
      const bool uu = i < x0 && j < x0;
      const bool ux = (i < x0 && j >= x0 && j < w0) || (j < x0 && i >= x0 && i < w0);
      if (kernel || uu || ux) flush(i, j);
    }
  for (Index j = 0; j < n1; ++j)
    for (Index i = 0; i + j < n1 - 1; ++i) {
      flush(w0 + i, n0 + j);
      flush(n0 + j, w0 + i);
    }
  out.m = std::move(m);

  for (Index j = 0; j < n1; ++j)
    if (!(std::abs(out.m(w0 + n1 - 1 - j, n0 + j)) > out.tol))
      throw NumericalError("block_atf_hermitian: Y block is numerically singular");
  return out;
}

/// Block antitriangular form of a skew-Hermitian matrix; X then has all its
/// eigenvalues on one half of the imaginary axis.  Throws DefiniteMatrixError
/// when n- = n or n+ = n.
template <typename Derived>
BlockAtfResult<typename Derived::RealScalar> block_atf_skew_hermitian(
    const Eigen::MatrixBase<Derived>& a,
    std::optional<typename Derived::RealScalar> tol = std::nullopt) {
  using Real = typename Derived::RealScalar;
  using Complex = std::complex<Real>;
  const Matrix<Complex> skew = prepare_skew(a, "block_atf_skew_hermitian");
  const Matrix<Complex> h = skew * Complex(0, 1);
  BlockAtfResult<Real> out = block_atf_hermitian(h, tol);
  const Inertia of_h = out.inertia;
  out.inertia = {of_h.n_plus, of_h.n_zero, of_h.n_minus};
  const Index n = skew.rows();
  if (out.inertia.n_minus == n || out.inertia.n_plus == n)
    throw DefiniteMatrixError(
        "block_atf_skew_hermitian: all eigenvalues lie on one half of the imaginary axis " +
        to_string(out.inertia, true) +
        "; a*i*I is unitarily invariant and has no block antitriangular form");
  out.m = out.m * Complex(0, -1);
  return out;
}

}  // namespace antitri
