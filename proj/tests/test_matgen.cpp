#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "antitri/matgen.hpp"
#include "oracles.hpp"

using namespace antitri;
using oracle::kEps;
using oracle::Mat;

TEST_CASE("murnaghan fixed examples") {
  Mat two(2, 2);
  two << 0, 1, -1, 0;
  CHECK(murnaghan({2, {1.0}, 0}) == two);

  const Mat d5 = murnaghan({5, {1.0, 0.5}, 0});
  CHECK(d5(0, 1) == 1.0);
  CHECK(d5(1, 0) == -1.0);
  CHECK(d5(2, 3) == 0.5);
  CHECK(d5(3, 2) == -0.5);
  CHECK(d5.row(4).isZero(0));
  CHECK(d5.col(4).isZero(0));
  CHECK(d5.cwiseAbs().sum() == 3.0);
  CHECK(oracle::svd_rank(d5, 1e-12) == 4);

  CHECK_THROWS_AS(murnaghan({3, {1.0, 1.0}, 0}), Error);
  CHECK_THROWS_AS(murnaghan({4, {1.0, 0.0}, 0}), Error);
  CHECK_THROWS_AS(murnaghan({4, {-1.0}, 0}), Error);
}

TEST_CASE("halving ladder and the order-108 suite member spectrum") {
  const auto l = halving_ladder(54);
  REQUIRE(l.size() == 54);
  for (std::size_t j = 0; j < l.size(); ++j) CHECK(l[j] == std::ldexp(1.0, -int(j)));
  const Mat d = murnaghan({108, halving_ladder(5), 0});
  // eigenvalues +-i, +-i/2, ..., +-i/16 and zeros: singular values in pairs
  const Eigen::VectorXd s = oracle::singular_values(d);
  for (int j = 0; j < 5; ++j) {
    CHECK(s(2 * j) == std::ldexp(1.0, -j));
    CHECK(s(2 * j + 1) == std::ldexp(1.0, -j));
  }
  CHECK(s.tail(98).isZero(0));
}

TEST_CASE("random_orthogonal_similarity basics") {
  const Mat d = murnaghan({6, {2.0, 1.0}, 0});
  CHECK(random_orthogonal_similarity(d, 0, 1) == d);
  const Mat a = random_orthogonal_similarity(d, 6, 1);
  CHECK(skew_check(a, 0.0).ok);
  CHECK(oracle::exactly_skew(a));
  CHECK(a != d);
  Mat nonskew = Mat::Identity(3, 3);
  CHECK_THROWS_AS(random_orthogonal_similarity(nonskew, 1, 1), NotSkewError);
}

TEST_CASE("generation is deterministic per seed") {
  const MurnaghanSpec spec{12, {1.0, 0.25, 0.125}, 99};
  const Mat a = random_skew_with_spectrum(spec);
  const Mat b = random_skew_with_spectrum(spec);
  CHECK(a == b);
  MurnaghanSpec other = spec;
  other.seed = 100;
  CHECK(random_skew_with_spectrum(other) != a);
  CHECK(random_rotation_product(9, 3, 5) == random_rotation_product(9, 3, 5));
}

TEST_CASE("rotation products are orthogonal") {
  for (Index n = 1; n <= 40; n += 3) {
    const Mat q = random_rotation_product(n, int(n), 17 + std::uint64_t(n));
    CHECK(orthogonality_error(q) <= 50 * n * kEps);
  }
}

TEST_CASE("spectrum fidelity against the SVD oracle") {
  oracle::Rng rng(61);
  for (int t = 0; t < 60; ++t) {
    const Index n = rng.integer(2, 32);
    const Index r = rng.integer(1, int(n / 2));
    // even trials: moduli of one magnitude; odd trials: spread over 2^-30 .. 2
    const bool spread = t % 2 == 1;
    std::vector<double> lambdas;
    for (Index j = 0; j < r; ++j)
      lambdas.push_back(spread ? std::ldexp(rng.uniform(1, 2), -rng.integer(0, 30)) : rng.uniform(1, 2));
    const int sweeps = rng.integer(1, int(n));
    const Mat d = murnaghan({n, lambdas, 0});
    const Mat a = random_orthogonal_similarity(d, sweeps, std::uint64_t(t) + 1);
    const Eigen::VectorXd sd = oracle::singular_values(d);
    const Eigen::VectorXd sa = oracle::singular_values(a);
    // relative to the largest singular value; for one-magnitude spectra this
    // is also relative to each value within a factor 2
    const double gap = oracle::singular_value_gap(sd, sa);
    CHECK(gap <= 1e-12);
    CHECK(gap <= 50 * sweeps * n * kEps);
    if (!spread)
      for (Index k = 0; k < 2 * r; ++k) CHECK(std::abs(sa(k) - sd(k)) <= 1e-12 * sd(k));
    CHECK(oracle::svd_rank(a, n * kEps * a.norm()) == 2 * r);
  }
}

TEST_CASE("compensated similarity keeps tiny eigenvalues relatively accurate") {
  // eigenvalue moduli down to 2^-50 next to 1
  const Mat d = murnaghan({20, {1.0, std::ldexp(1.0, -30), std::ldexp(1.0, -50)}, 0});
  const Mat a = random_orthogonal_similarity(d, 20, 3);
  const Eigen::VectorXd s = oracle::singular_values(a);
  CHECK(s(4) == doctest::Approx(std::ldexp(1.0, -50)).epsilon(1e-6));
  CHECK(s(5) == doctest::Approx(std::ldexp(1.0, -50)).epsilon(1e-6));
  // the zero eigenvalues only carry the rounding of the stored entries
  CHECK(s(6) <= 20 * kEps * a.norm());
}

TEST_CASE("rank experiment suite") {
  CHECK_THROWS_AS(rank_experiment_suite(7), Error);
  const auto small = rank_experiment_suite(10, 5);
  REQUIRE(small.size() == 5);
  for (std::size_t k = 0; k < small.size(); ++k) {
    CHECK(small[k].true_rank == Index(2 * (k + 1)));
    CHECK(skew_check(small[k].a, 0.0).ok);
    CHECK(oracle::svd_rank(small[k].a, 1e-12) == small[k].true_rank);
    CHECK(small[k].seed == member_seed(5, Index(k + 1)));
  }
  CHECK(rank_experiment_member(10, 3, 5).a == small[2].a);
  const auto m1 = rank_experiment_member(108, 1);
  CHECK(m1.true_rank == 2);
  CHECK(oracle::svd_rank(m1.a, 1e-10) == 2);
  CHECK(skew_check(m1.a, 0.0).ok);
}

TEST_CASE("full order-108 suite has 54 skew members") {
  const auto suite = rank_experiment_suite(108);
  REQUIRE(suite.size() == 54);
  for (std::size_t k = 0; k < suite.size(); ++k) {
    CHECK(suite[k].true_rank == Index(2 * (k + 1)));
    CHECK(skew_check(suite[k].a, 0.0).ok);
  }
}
