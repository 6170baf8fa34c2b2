#include <chrono>
#include <cstdio>

#include "w3sat/csv.hpp"
#include "w3sat/harness.hpp"

namespace w3sat {

std::vector<BenchRow> bench_bounds(std::span<const Var> n_list, std::span<const std::uint64_t> seeds, double density,
                                   const EngineOptions& engine) {
  std::vector<BenchRow> rows;
  for (Var n : n_list) {
    for (std::uint64_t seed : seeds) {
      const GenConfig cfg{n, clauses_for_density(n, density), seed};
      const Instance inst = gen_random(cfg);
      const auto start = std::chrono::steady_clock::now();
      const Verdict verdict = saturate(inst, engine);
      BenchRow row;
      row.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      row.n = n;
      row.seed = seed;
      row.m = cfg.n_clauses;
      row.verdict = verdict.kind;
      row.stats = verdict.stats;
      if (row.stats.db_size > row.stats.db_bound) {
        throw Error(Errc::Internal, "n=" + std::to_string(n) + " seed=" + std::to_string(seed) + ": database exceeded its bound");
      }
      rows.push_back(row);
    }
  }
  return rows;
}

std::string to_csv(std::span<const BenchRow> rows) {
  std::string out = csv::row({"n", "seed", "m", "verdict", "db_size", "db_bound", "db_ratio", "passes",
                              "resolutions_attempted", "clauses_added", "wall_time_ms"});
  char ratio[32];
  char wall[32];
  for (const auto& r : rows) {
    std::snprintf(ratio, sizeof ratio, "%.6f",
                  r.stats.db_bound ? static_cast<double>(r.stats.db_size) / static_cast<double>(r.stats.db_bound) : 0.0);
    std::snprintf(wall, sizeof wall, "%.3f", r.wall_time_ms);
    out += csv::row({std::to_string(r.n), std::to_string(r.seed), std::to_string(r.m),
                     r.verdict == Verdict::Kind::Refuted ? "Refuted" : "Saturated", std::to_string(r.stats.db_size),
                     std::to_string(r.stats.db_bound), ratio, std::to_string(r.stats.passes),
                     std::to_string(r.stats.resolutions_attempted), std::to_string(r.stats.clauses_added), wall});
  }
  return out;
}

}  // namespace w3sat
