// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "antitri/arrowhead.hpp"
#include "antitri/complex_atf.hpp"
#include "antitri/experiment.hpp"
#include "antitri/givens.hpp"
#include "antitri/householder.hpp"
#include "antitri/matgen.hpp"
#include "oracles.hpp"

using namespace antitri;
using oracle::CMat;
using oracle::Complex;
using oracle::kEps;
using oracle::Mat;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
  int failures = 0;
  std::string first_failure;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (failures++ == 0) first_failure = what;
  }
};

std::vector<double> random_lambdas(Index count, oracle::Rng& rng) {
  std::vector<double> out;
  for (Index j = 0; j < count; ++j) {
    // mix of O(1) and widely spread moduli
    out.push_back(rng.integer(0, 1) ? rng.uniform(0.1, 3.0) : std::pow(10.0, rng.uniform(-6, 0)));
  }
  return out;
}

Mat random_low_rank(Index n, Index r, oracle::Rng& rng, bool own_generator) {
  const auto lambdas = random_lambdas(r, rng);
  if (own_generator)
    return random_skew_with_spectrum({n, lambdas, std::uint64_t(rng.engine()())});
  return oracle::skew_with_spectrum(n, lambdas, rng);
}

std::string trial(int t, Index n) {
  std::ostringstream s;
  s << "trial " << t << ", n = " << n;
  return s.str();
}

// 1. Rank-detection table at order 108.
Verdict criterion_rank_table() {
  Verdict v;
  const auto result = run_rank_experiment(108);
  std::ostringstream d;
  int exact = 0;
  for (const auto& row : result.rows) {
    const auto ok = accepted_ranks(row.true_rank);
    v.require(std::find(ok.begin(), ok.end(), row.detected) != ok.end(),
              "true rank " + std::to_string(row.true_rank) + " detected as " +
                  std::to_string(row.detected));
    if (row.detected == row.true_rank) ++exact;
  }
  v.require(result.rows.size() == 54, "suite size");
  d << result.rows.size() << " members, " << exact << " exact; tail";
  for (std::size_t k = 48; k < result.rows.size(); ++k)
    d << ' ' << result.rows[k].true_rank << "->" << result.rows[k].detected;
  v.detail = d.str();
  return v;
}

// 2. Backward error of both paths on 1000 random matrices.
Verdict criterion_backward_error() {
  Verdict v;
  oracle::Rng rng(1002);
  const Index sizes[] = {4, 8, 16, 32, 64};
  double worst_recon = 0, worst_orth = 0;
  for (int t = 0; t < 1000; ++t) {
    const Index n = sizes[t % 5];
    const Mat a = oracle::random_skew(n, rng);
    const double norm = a.norm();
    for (int path = 0; path < 2; ++path) {
      const auto r = path == 0 ? atf_givens(a) : atf_rank_revealing(a);
      const double recon = reconstruction_error(a, r.q, r.m) / (n * kEps * norm);
      const double orth = orthogonality_error(r.q) / (n * kEps);
      worst_recon = std::max(worst_recon, recon);
      worst_orth = std::max(worst_orth, orth);
      v.require(recon <= 50 && orth <= 50, trial(t, n) + (path ? " householder" : " givens"));
    }
  }
  std::ostringstream d;
  d << "2000 factorizations; worst ||QMQ^T-A||/(n eps ||A||) = " << worst_recon
    << ", worst ||Q^TQ-I||/(n eps) = " << worst_orth;
  v.detail = d.str();
  return v;
}

// 3. Exact zero structure.
Verdict criterion_structure() {
  Verdict v;
  oracle::Rng rng(1003);
  for (int t = 0; t < 500; ++t) {
    const Index n = rng.integer(1, 24);
    const Mat a = t % 2 ? oracle::random_skew(n, rng)
                        : random_low_rank(n, rng.integer(0, int(n / 2)), rng, t % 4 == 0);
    const auto piv = atf_pivoted(a, default_tol(a), AtfOptions{false});
    const auto giv = reduce_givens(a, AtfOptions{false});
    const auto rr = atf_rank_revealing(a, AtfOptions{false});
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) {
        // 0-based: i + j > n - 1 is below the main antidiagonal
        if (i + j > n - 1) v.require(piv.m(i, j) == 0.0, trial(t, n) + " pivoted");
        if (i + j < n - 1) v.require(giv.m(i, j) == 0.0, trial(t, n) + " givens");
        if (i >= rr.rank || j >= rr.rank) v.require(rr.m(i, j) == 0.0, trial(t, n) + " deflated");
      }
  }
  v.detail = "500 instances, three factorizations each";
  return v;
}

// 4. Detected rank against the SVD count.
Verdict criterion_rank_oracle() {
  Verdict v;
  oracle::Rng rng(1004);
  for (int t = 0; t < 500; ++t) {
    const Index n = rng.integer(1, 12);
    const Index r = rng.integer(0, int(n / 2));
    const Mat a = random_low_rank(n, r, rng, t % 2 == 0);
    const Index ref = oracle::svd_rank(a, n * kEps * a.norm());
    const auto g = atf_givens(a, AtfOptions{false});
    const auto h = atf_rank_revealing(a, AtfOptions{false});
    v.require(ref == 2 * r, trial(t, n) + " oracle disagrees with the construction");
    v.require(g.rank == ref, trial(t, n) + " givens rank " + std::to_string(g.rank) + " vs " +
                                 std::to_string(ref));
    v.require(h.rank == ref, trial(t, n) + " householder rank " + std::to_string(h.rank) +
                                 " vs " + std::to_string(ref));
  }
  v.detail = "500 trials, n <= 12, both paths";
  return v;
}

// 5. Determinant from the antidiagonal.
Verdict criterion_determinant() {
  Verdict v;
  oracle::Rng rng(1005);
  double worst = 0;
  int trials = 0;
  for (int t = 0; t < 300; ++t) {
    const Index n = rng.integer(1, 12);
    const Mat a = t % 2 ? oracle::random_skew(n, rng)
                        : oracle::skew_with_spectrum(n, [&] {
                            std::vector<double> l;
                            for (Index j = 0; j < n / 2; ++j) l.push_back(rng.uniform(0.5, 2.0));
                            return l;
                          }(),
                                                     rng);
    const double dg = det_antitriangular(reduce_givens(a, AtfOptions{false}).m);
    const double dh = det_antitriangular(atf_pivoted(a, 0.0, AtfOptions{false}).m);
    if (n % 2 == 1) {
      v.require(dg == 0.0 && dh == 0.0, trial(t, n) + " odd order");
      continue;
    }
    const double ref = oracle::lu_determinant(a);
    const double eg = std::abs(dg - ref) / std::abs(ref);
    const double eh = std::abs(dh - ref) / std::abs(ref);
    worst = std::max({worst, eg, eh});
    ++trials;
    v.require(eg <= 1e-10 && eh <= 1e-10, trial(t, n));
  }
  std::ostringstream d;
  d << "300 matrices (" << trials << " even), worst relative deviation " << worst;
  v.detail = d.str();
  return v;
}

// 6. Multi-arrowhead relabeling and odd-order first-row cleanup.
Verdict criterion_arrowhead() {
  Verdict v;
  oracle::Rng rng(1006);
  double worst = 0;
  for (int t = 0; t < 300; ++t) {
    const Index n = rng.integer(1, 20);
    const Mat a = oracle::random_skew(n, rng);
    const Mat m = reduce_givens(a, AtfOptions{false}).m;
    const auto arrow = to_multi_arrowhead(m);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j)
        if (!arrowhead_slot(n, i, j)) v.require(arrow.s(i, j) == 0.0, trial(t, n) + " pattern");
    // pure relabeling: S(a, b) = M(p_a, p_b)
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j)
        v.require(arrow.s(i, j) == m(arrow.p.map[std::size_t(i)], arrow.p.map[std::size_t(j)]),
                  trial(t, n) + " relabel");
    if (n % 2 == 1) {
      const auto c = zero_first_row_odd(arrow.s);
      v.require(c.s.row(0).isZero(0) && c.s.col(0).isZero(0), trial(t, n) + " first row");
      const auto sm = oracle::singular_values(m);
      const auto ss = oracle::singular_values(c.s);
      worst = std::max(worst, oracle::singular_value_gap(sm, ss));
      v.require(oracle::singular_values_close(sm, ss, 1e-10), trial(t, n) + " singular values");
    }
  }
  std::ostringstream d;
  d << "300 instances; worst singular value change after cleanup " << worst << " (relative to max)";
  v.detail = d.str();
  return v;
}

// 7. Complex skew-Hermitian transfer.
Verdict criterion_complex() {
  Verdict v;
  oracle::Rng rng(1007);
  const Complex I(0, 1);
  double worst = 0;
  for (int t = 0; t < 200; ++t) {
    const Index n = rng.integer(2, 16);
    // mixed inertia: at least one eigenvalue on each half-axis
    std::vector<double> mu;
    mu.push_back(rng.uniform(0.5, 2.0));
    mu.push_back(-rng.uniform(0.5, 2.0));
    for (Index k = 2; k < n; ++k) {
      const int kind = rng.integer(0, 2);
      mu.push_back(kind == 0 ? 0.0 : (kind == 1 ? 1.0 : -1.0) * rng.uniform(0.1, 3.0));
    }
    const CMat h = oracle::hermitian_with_spectrum(mu, rng);
    const CMat a = I * h;  // skew-Hermitian with eigenvalues i mu
    const std::string id = trial(t, n);
    try {
      const auto r = block_atf_skew_hermitian(a);
      const auto hr = block_atf_hermitian(CMat(I * a));
      v.require(has_block_atf_pattern(r.m, r.n0, r.n1, r.n2), id + " pattern");
      v.require(r.m == CMat(hr.m * Complex(0, -1)), id + " transfer");
      const double recon = reconstruction_error(a, r.q, r.m) / (n * kEps * a.norm());
      worst = std::max(worst, recon);
      v.require(recon <= 200, id + " reconstruction");
      v.require(orthogonality_error(r.q) <= 50 * n * kEps, id + " orthogonality");
      if (r.n2 > 0) {
        const Eigen::VectorXd ex = oracle::hermitian_eigenvalues(CMat(I * r.x()));
        const bool all_pos = (ex.array() > 0).all();
        const bool all_neg = (ex.array() < 0).all();
        v.require(all_pos || all_neg, id + " X half-axis");
      }
    } catch (const std::exception& e) {
      v.require(false, id + " threw: " + e.what());
    }
  }
  for (Index n = 1; n <= 8; ++n) {
    bool rejected = false;
    try {
      block_atf_skew_hermitian(CMat(I * CMat::Identity(n, n)));
    } catch (const DefiniteMatrixError&) {
      rejected = true;
    } catch (const std::exception&) {
    }
    v.require(rejected, "i*I of order " + std::to_string(n) + " not rejected");
  }
  std::ostringstream d;
  d << "200 mixed-inertia matrices plus i*I rejection; worst ||QMQ*-A||/(n eps ||A||) = " << worst;
  v.detail = d.str();
  return v;
}

// 8. Givens and Householder paths agree.
Verdict criterion_cross_path() {
  Verdict v;
  oracle::Rng rng(1008);
  double worst = 0;
  for (int t = 0; t < 500; ++t) {
    const Index n = rng.integer(1, 12);
    const Mat a = t % 2 ? oracle::random_skew(n, rng)
                        : random_low_rank(n, rng.integer(0, int(n / 2)), rng, t % 4 == 0);
    const auto g = atf_givens(a, AtfOptions{false});
    const auto h = atf_rank_revealing(a, AtfOptions{false});
    v.require(g.rank == h.rank, trial(t, n) + " rank " + std::to_string(g.rank) + " vs " +
                                    std::to_string(h.rank));
    const auto sg = oracle::singular_values(g.m);
    const auto sh = oracle::singular_values(h.m);
    worst = std::max(worst, oracle::singular_value_gap(sg, sh));
    v.require(oracle::singular_values_close(sg, sh, 1e-10), trial(t, n) + " singular values");
  }
  std::ostringstream d;
  d << "500 trials, n <= 12; worst singular value gap " << worst << " (relative to max)";
  v.detail = d.str();
  return v;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Verdict()>> criteria[] = {
      {"rank-detection table, order 108", criterion_rank_table},
      {"backward error, both paths", criterion_backward_error},
      {"exact zero structure", criterion_structure},
      {"rank equals SVD oracle count", criterion_rank_oracle},
      {"determinant from the antidiagonal", criterion_determinant},
      {"multi-arrowhead relabeling and first-row cleanup", criterion_arrowhead},
      {"complex skew-Hermitian transfer", criterion_complex},
      {"Givens and Householder agreement", criterion_cross_path},
  };
  int failed = 0, k = 0;
  for (const auto& [name, fn] : criteria) {
    ++k;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = fn();
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %d: %s (%s; %.1f s)\n", v.pass ? "PASS" : "FAIL", k, name,
                v.detail.c_str(), secs);
    if (!v.pass) {
      std::printf("  %d failing checks, first: %s\n", v.failures, v.first_failure.c_str());
      ++failed;
    }
    std::fflush(stdout);
  }
  std::printf("%d of %d criteria passed\n", k - failed, k);
  return failed == 0 ? 0 : 1;
}
