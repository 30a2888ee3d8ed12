#include "antitri/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <thread>

#include "antitri/givens.hpp"
#include "antitri/householder.hpp"

namespace antitri {

std::vector<Index> accepted_ranks(Index true_rank) {
  if (true_rank <= 96) return {true_rank};
  if (true_rank == 98) return {96, 98};
  return {96, 98, 100};
}

ExperimentResult run_rank_experiment(Index order, std::uint64_t seed, int threads) {
  if (order < 2 || order % 2 != 0) throw Error("run_rank_experiment: order must be even");
  const auto start = std::chrono::steady_clock::now();
  ExperimentResult out;
  out.order = order;
  out.seed = seed;
  const Index members = order / 2;
  out.rows.resize(std::size_t(members));

  std::atomic<Index> next{1};
  auto worker = [&] {
    for (Index r = next++; r <= members; r = next++) {
      const SuiteMember m = rank_experiment_member(order, r, seed);
      ExperimentRow& row = out.rows[std::size_t(r - 1)];
      row.true_rank = m.true_rank;
      row.seed = m.seed;
      const auto hh = atf_rank_revealing(m.a, AtfOptions{false});
      row.detected = hh.rank;
      row.tol = hh.tol;
      row.detected_givens = atf_givens(m.a, AtfOptions{false}).rank;
      const auto ok = accepted_ranks(row.true_rank);
      row.pass = std::find(ok.begin(), ok.end(), row.detected) != ok.end();
    }
  };
  const int count = std::max(1, threads);
  std::vector<std::thread> pool;
  for (int t = 1; t < count; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  out.pass = std::all_of(out.rows.begin(), out.rows.end(), [](const auto& r) { return r.pass; });
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace antitri
