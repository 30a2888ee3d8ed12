#pragma once

// Skew-symmetric test matrices with prescribed spectrum.
//
// D is the Murnaghan form diag([[0, l1], [-l1, 0]], ..., [[0, lr], [-lr, 0]], 0, ..., 0)
// and A = Q D Q^T for a random orthogonal Q built from plane rotations.  A is
// formed with compensated sums so that small eigenvalues keep their relative
// accuracy, which the rank experiment depends on.

#include <cstdint>
#include <vector>

#include "antitri/matcore.hpp"

namespace antitri {

inline constexpr std::uint64_t kDefaultSeed = 0x9e3779b97f4a7c15ULL;

struct MurnaghanSpec {
  Index n = 0;
  std::vector<double> lambdas;  // r positive values, 2r <= n
  std::uint64_t seed = kDefaultSeed;
};

/// lambda_j = 2^-(j-1), j = 1..r.
std::vector<double> halving_ladder(Index r);

/// Exact block-diagonal Murnaghan form; throws Error for 2r > n or a
/// nonpositive lambda.
DenseMatrix murnaghan(const MurnaghanSpec& spec);

/// Random orthogonal Q of order n: `sweeps` chains of n-1 rotations in
/// planes (p_t, p_t+1) of a random permutation p, angles uniform in
/// [0, 2*pi).  The generator is std::mt19937_64 seeded with `seed`;
/// permutations use a Fisher-Yates shuffle driven by the same stream.
DenseMatrix random_rotation_product(Index n, int sweeps, std::uint64_t seed);

/// Q D Q^T for skew-symmetric D, exactly skew-symmetric; sweeps = 0 returns D.
DenseMatrix random_orthogonal_similarity(const DenseMatrix& d, int sweeps, std::uint64_t seed);

/// Q D Q^T for a given Q, accumulated with compensated sums over the
/// nonzeros of D.
DenseMatrix orthogonal_similarity(const DenseMatrix& q, const DenseMatrix& d);

/// murnaghan(spec) followed by a random similarity with sweeps = n.
DenseMatrix random_skew_with_spectrum(const MurnaghanSpec& spec);

struct SuiteMember {
  Index true_rank = 0;
  std::uint64_t seed = 0;
  DenseMatrix a;
};

/// Seed of suite member r derived from the base seed (splitmix64 step).
std::uint64_t member_seed(std::uint64_t base, Index r);

/// Matrices of order n (even) with ranks 2, 4, ..., n, member r having
/// nonzero eigenvalues +-i*2^-(j-1), j = 1..r.
std::vector<SuiteMember> rank_experiment_suite(Index n = 108, std::uint64_t seed = kDefaultSeed);

/// One suite member, generated independently of the others.
SuiteMember rank_experiment_member(Index n, Index r, std::uint64_t seed = kDefaultSeed);

}  // namespace antitri
