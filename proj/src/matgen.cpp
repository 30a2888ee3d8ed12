#include "antitri/matgen.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace antitri {

namespace {

// Error-free transformations: a + b = s + e and a * b = p + e exactly.
inline void two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  const double bb = s - a;
  e = (a - (s - bb)) + (b - bb);
}

inline void two_product(double a, double b, double& p, double& e) {
  p = a * b;
  e = std::fma(a, b, -p);
}

struct CompensatedSum {
  double hi = 0;
  double lo = 0;

  void add(double x) {
    double e;
    two_sum(hi, x, hi, e);
    lo += e;
  }
  // adds scale * x * y with the product errors carried along
  void add_product(double scale, double x, double y) {
    double p, e1, q, e2;
    two_product(x, y, p, e1);
    two_product(scale, p, q, e2);
    add(q);
    lo += e2 + scale * e1;
  }
  double value() const { return hi + lo; }
};

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::vector<double> halving_ladder(Index r) {
  std::vector<double> out;
  out.reserve(std::size_t(std::max<Index>(r, 0)));
  for (Index j = 0; j < r; ++j) out.push_back(std::ldexp(1.0, -int(j)));
  return out;
}

DenseMatrix murnaghan(const MurnaghanSpec& spec) {
  const Index r = Index(spec.lambdas.size());
  if (spec.n < 1) throw Error("murnaghan: order must be positive");
  if (2 * r > spec.n) throw Error("murnaghan: 2r exceeds the order");
  DenseMatrix d = DenseMatrix::Zero(spec.n, spec.n);
  for (Index j = 0; j < r; ++j) {
    const double l = spec.lambdas[std::size_t(j)];
    if (!(l > 0) || !std::isfinite(l)) throw Error("murnaghan: eigenvalue moduli must be positive");
    d(2 * j, 2 * j + 1) = l;
    d(2 * j + 1, 2 * j) = -l;
  }
  return d;
}

DenseMatrix random_rotation_product(Index n, int sweeps, std::uint64_t seed) {
  if (n < 1) throw Error("random_rotation_product: order must be positive");
  if (sweeps < 0) throw Error("random_rotation_product: negative sweep count");
  std::mt19937_64 gen(seed);
  DenseMatrix q = DenseMatrix::Identity(n, n);
  std::vector<Index> perm(static_cast<std::size_t>(n));
  for (int sweep = 0; sweep < sweeps; ++sweep) {
    for (Index k = 0; k < n; ++k) perm[std::size_t(k)] = k;
    for (Index k = n - 1; k > 0; --k) {
      const auto pick = Index(gen() % std::uint64_t(k + 1));
      std::swap(perm[std::size_t(k)], perm[std::size_t(pick)]);
    }
    for (Index t = 0; t + 1 < n; ++t) {
      const double angle = double(gen() >> 11) * 0x1.0p-53 * 2 * std::numbers::pi;
      const Index a = perm[std::size_t(t)];
      const Index b = perm[std::size_t(t + 1)];
      const double c = std::cos(angle);
      const double s = std::sin(angle);
      for (Index k = 0; k < n; ++k) {
        const double qa = q(k, a);
        const double qb = q(k, b);
        q(k, a) = c * qa + s * qb;
        q(k, b) = c * qb - s * qa;
      }
    }
  }
  return q;
}

DenseMatrix orthogonal_similarity(const DenseMatrix& q, const DenseMatrix& d) {
  const Index n = d.rows();
  if (q.rows() != n || q.cols() != n || d.cols() != n)
    throw Error("orthogonal_similarity: dimension mismatch");
  struct Term {
    Index k, l;
    double value;
  };
  // one term per strictly-lower nonzero of D; its mirror contributes the
  // same amount with the roles of k and l exchanged
  std::vector<Term> terms;
  for (Index l = 0; l < n; ++l)
    for (Index k = l + 1; k < n; ++k)
      if (d(k, l) != 0) terms.push_back({k, l, d(k, l)});

  DenseMatrix a = DenseMatrix::Zero(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = j + 1; i < n; ++i) {
      // sum_{k,l} q(i,k) d(k,l) q(j,l) with d(l,k) = -d(k,l)
      CompensatedSum sum;
      for (const Term& t : terms) {
        sum.add_product(t.value, q(i, t.k), q(j, t.l));
        sum.add_product(-t.value, q(i, t.l), q(j, t.k));
      }
      a(i, j) = sum.value();
      a(j, i) = -a(i, j);
    }
  }
  return a;
}

DenseMatrix random_orthogonal_similarity(const DenseMatrix& d, int sweeps, std::uint64_t seed) {
  if (d.rows() != d.cols()) throw StructureError("random_orthogonal_similarity: not square");
  if (!skew_check(d, 0.0).ok)
    throw NotSkewError("random_orthogonal_similarity: D is not skew-symmetric", 0, 0, 0.0);
  if (sweeps == 0) return d;
  return orthogonal_similarity(random_rotation_product(d.rows(), sweeps, seed), d);
}

DenseMatrix random_skew_with_spectrum(const MurnaghanSpec& spec) {
  return random_orthogonal_similarity(murnaghan(spec), int(spec.n), spec.seed);
}

std::uint64_t member_seed(std::uint64_t base, Index r) {
  return splitmix64(base ^ splitmix64(std::uint64_t(r)));
}

SuiteMember rank_experiment_member(Index n, Index r, std::uint64_t seed) {
  if (n < 2 || n % 2 != 0) throw Error("rank_experiment_suite: order must be even");
  if (r < 1 || 2 * r > n) throw Error("rank_experiment_suite: member index out of range");
  SuiteMember m;
  m.true_rank = 2 * r;
  m.seed = member_seed(seed, r);
  m.a = random_skew_with_spectrum({n, halving_ladder(r), m.seed});
  return m;
}

std::vector<SuiteMember> rank_experiment_suite(Index n, std::uint64_t seed) {
  if (n < 2 || n % 2 != 0) throw Error("rank_experiment_suite: order must be even");
  std::vector<SuiteMember> out;
  for (Index r = 1; 2 * r <= n; ++r) out.push_back(rank_experiment_member(n, r, seed));
  return out;
}

}  // namespace antitri
