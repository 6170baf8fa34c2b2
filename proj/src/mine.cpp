#include <algorithm>

#include "w3sat/harness.hpp"
#include "w3sat/rng.hpp"

namespace w3sat {
namespace {

Instance without_clause(const Instance& inst, std::size_t index) {
  Instance out;
  out.n_vars = inst.n_vars;
  out.clauses.reserve(inst.clauses.size() - 1);
  for (std::size_t i = 0; i < inst.clauses.size(); ++i) {
    if (i != index) out.clauses.push_back(inst.clauses[i]);
  }
  return out;
}

Verdict tracked_saturate(const Instance& inst, const EngineOptions& engine, MineStats* stats) {
  Verdict v = saturate(inst, engine);
  if (stats != nullptr) {
    ++stats->engine_runs;
    const std::uint64_t ppm = v.stats.db_bound == 0 ? 0 : v.stats.db_size * 1000000 / v.stats.db_bound;
    stats->max_db_ratio_ppm = std::max(stats->max_db_ratio_ppm, ppm);
  }
  return v;
}

bool tracked_is_counterexample(const Instance& inst, const EngineOptions& engine, MineStats* stats) {
  // The oracle is cheaper than the engine on almost every instance.
  if (!solve_dpll(inst).is_unsat()) return false;
  return !tracked_saturate(inst, engine, stats).refuted();
}

Instance tracked_minimize(const Instance& inst, const EngineOptions& engine, MineStats* stats) {
  if (!tracked_is_counterexample(inst, engine, stats)) {
    throw Error(Errc::NotACounterexample, "instance is satisfiable or refuted by the engine");
  }
  Instance current = inst;
  bool removed = true;
  while (removed) {
    removed = false;
    std::size_t i = 0;
    while (i < current.clauses.size()) {
      Instance candidate = without_clause(current, i);
      if (tracked_is_counterexample(candidate, engine, stats)) {
        current = std::move(candidate);
        removed = true;
      } else {
        ++i;
      }
    }
  }
  for (std::size_t i = 0; i < current.clauses.size(); ++i) {
    if (tracked_is_counterexample(without_clause(current, i), engine, stats)) {
      throw Error(Errc::Internal, "minimized instance is not 1-minimal at clause " + std::to_string(i));
    }
  }
  return current;
}

}  // namespace

GenConfig mine_config_for_seed(const MineConfig& cfg, std::uint64_t seed) {
  if (cfg.n_lo < 3 || cfg.n_hi < cfg.n_lo) throw Error(Errc::BadConfig, "need 3 <= n_lo <= n_hi");
  Rng rng(mix_seed(seed));
  const Var n = cfg.n_lo + static_cast<Var>(uniform_below(rng, cfg.n_hi - cfg.n_lo + 1));
  return {n, clauses_for_density(n, cfg.density), seed};
}

bool is_counterexample(const Instance& inst, const EngineOptions& engine) {
  return tracked_is_counterexample(inst, engine, nullptr);
}

Instance minimize(const Instance& inst, const EngineOptions& engine) { return tracked_minimize(inst, engine, nullptr); }

MineResult mine_counterexample(const MineConfig& cfg) {
  MineResult result;
  for (std::uint64_t i = 0; i < cfg.budget; ++i) {
    const GenConfig gen = mine_config_for_seed(cfg, cfg.seed_start + i);
    const Instance inst = gen_random(gen);
    ++result.stats.tried;
    if (!solve_dpll(inst).is_unsat()) continue;
    ++result.stats.oracle_unsat;
    if (tracked_saturate(inst, cfg.engine, &result.stats).refuted()) {
      ++result.stats.engine_refuted;
      continue;
    }

    Counterexample found;
    found.origin = gen;
    found.original = inst;
    found.minimized = tracked_minimize(inst, cfg.engine, &result.stats);
    found.minimal_audited = true;

    // Re-verify the minimized instance from scratch with both procedures.
    const Verdict verdict = tracked_saturate(found.minimized, cfg.engine, &result.stats);
    const OracleResult oracle = solve_dpll(found.minimized);
    if (verdict.refuted() || !oracle.is_unsat()) {
      throw Error(Errc::Internal, "minimized counterexample failed re-verification");
    }
    found.engine_stats = verdict.stats;
    found.oracle_status = oracle.status();

    EngineOptions wide = cfg.engine;
    wide.reduce_wide_resolvents = true;
    const Verdict wide_verdict = tracked_saturate(found.minimized, wide, &result.stats);
    if (wide_verdict.refuted() && !check_trace(found.minimized, wide_verdict).ok) {
      throw Error(Errc::SoundnessViolation, "wide-resolvent variant produced an invalid trace");
    }
    found.wide_variant_verdict = wide_verdict.kind;
    result.found = std::move(found);
    break;
  }
  return result;
}

}  // namespace w3sat
