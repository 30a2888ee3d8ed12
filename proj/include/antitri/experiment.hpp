#pragma once

// Rank-detection experiment: factor every member of the rank suite and
// compare the detected rank with the true one.
//
// Acceptance bands (order 108 reference table): true ranks up to 96 must be
// detected exactly; true rank 98 may come out as 96 or 98; true ranks 100 and
// above as 96, 98 or 100.  The smallest eigenvalue moduli there are around
// 2^-50, at the level of the rank tolerance, so rounding decides.

#include <cstdint>
#include <vector>

#include "antitri/matgen.hpp"

namespace antitri {

struct ExperimentRow {
  Index true_rank = 0;
  Index detected = 0;         // rank-revealing Householder path
  Index detected_givens = 0;  // Givens path, informational
  double tol = 0;
  std::uint64_t seed = 0;
  bool pass = false;
};

struct ExperimentResult {
  Index order = 0;
  std::uint64_t seed = 0;
  std::vector<ExperimentRow> rows;
  bool pass = false;
  double seconds = 0;
};

/// Ranks accepted for a suite member of the given true rank.
std::vector<Index> accepted_ranks(Index true_rank);

/// Runs the suite of the given even order; members are shared out over
/// `threads` workers (each owns its matrix).
ExperimentResult run_rank_experiment(Index order = 108, std::uint64_t seed = kDefaultSeed,
                                     int threads = 1);

}  // namespace antitri
