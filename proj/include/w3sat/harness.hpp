#pragma once

// Experiments around the saturation engine: random instances, engine/oracle
// comparison, counterexample mining and minimization, the lemma shape
// checkers, and database-bound benchmarks.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "w3sat/core.hpp"
#include "w3sat/engine.hpp"
#include "w3sat/oracle.hpp"

namespace w3sat {

inline constexpr double kDefaultDensity = 4.27;

// ---------------------------------------------------------------------------
// Generation

struct GenConfig {
  Var n_vars = 3;
  std::size_t n_clauses = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const GenConfig&, const GenConfig&) = default;
};

/// n_clauses width-3 clauses, each over 3 distinct variables drawn
/// uniformly without replacement, polarities uniform. Throws BadConfig
/// for n_vars < 3.
Instance gen_random(const GenConfig& cfg);

/// round(density * n) clauses.
std::size_t clauses_for_density(Var n, double density);

/// count configs with seeds seed_start, seed_start+1, ...; n cycles through
/// [n_lo, n_hi] and the density advances once per full cycle of n.
std::vector<GenConfig> sweep_configs(Var n_lo, Var n_hi, std::span<const double> densities, std::size_t count,
                                     std::uint64_t seed_start);

// ---------------------------------------------------------------------------
// Comparison

enum class OracleKind { Enumerate, Dpll };

struct CompareOptions {
  EngineOptions engine;
  OracleKind oracle = OracleKind::Enumerate;
  Var enumerate_max_vars = kEnumerateMaxVars;
  bool check_traces = true;
  bool timing = false;  // wall times make rows non-reproducible
  unsigned jobs = 1;    // worker threads; rows are merged in input order
};

struct ComparisonRow {
  std::uint64_t seed = 0;
  Var n = 0;
  std::size_t m = 0;
  OracleResult::Status oracle_status = OracleResult::Status::Sat;
  Verdict::Kind engine_verdict = Verdict::Kind::Saturated;
  bool agree = true;
  EngineStats engine_stats;
  std::optional<double> wall_time_ms;
};

struct ComparisonAggregate {
  std::size_t agree_sat = 0;
  std::size_t agree_unsat = 0;
  std::size_t disagreements = 0;         // engine Saturated, oracle Unsat
  std::size_t soundness_violations = 0;  // always 0 in a returned report
  std::size_t traces_checked = 0;
  std::uint64_t max_db_ratio_ppm = 0;    // peak db_size / bound, parts per million
};

struct ComparisonReport {
  std::vector<ComparisonRow> rows;
  ComparisonAggregate aggregate;
};

/// Runs engine and oracle on every instance. An engine refutation that the
/// oracle contradicts, or whose trace fails check_trace, throws
/// SoundnessViolation with a diagnostic. Throws TooLarge if an instance
/// exceeds the enumeration guard.
ComparisonReport compare(std::span<const GenConfig> cfgs, const CompareOptions& opts = {});
ComparisonReport compare_instances(std::span<const Instance> instances, std::span<const std::uint64_t> seeds,
                                   const CompareOptions& opts = {});

/// RFC 4180 CSV with a header row.
std::string to_csv(const ComparisonReport& report);

// ---------------------------------------------------------------------------
// Counterexample mining

struct MineConfig {
  Var n_lo = 10;
  Var n_hi = 40;
  double density = kDefaultDensity;
  std::uint64_t seed_start = 1;
  std::uint64_t budget = 100000;
  EngineOptions engine;
};

/// Instance number i of a mining run uses seed seed_start + i, with n drawn
/// from [n_lo, n_hi] by that seed.
GenConfig mine_config_for_seed(const MineConfig& cfg, std::uint64_t seed);

struct MineStats {
  std::uint64_t tried = 0;
  std::uint64_t oracle_unsat = 0;
  std::uint64_t engine_refuted = 0;
  std::uint64_t engine_runs = 0;        // scan, minimization and re-verification
  std::uint64_t max_db_ratio_ppm = 0;   // peak db_size / bound over engine_runs
};

struct Counterexample {
  GenConfig origin;
  Instance original;
  Instance minimized;
  EngineStats engine_stats;  // on the minimized instance
  OracleResult::Status oracle_status = OracleResult::Status::Unsat;
  bool minimal_audited = false;
  /// Verdict of the reduce_wide_resolvents variant on the minimized instance.
  Verdict::Kind wide_variant_verdict = Verdict::Kind::Saturated;
};

struct MineResult {
  std::optional<Counterexample> found;
  MineStats stats;
};

/// True iff DPLL says Unsat and the engine saturates.
bool is_counterexample(const Instance& inst, const EngineOptions& engine = {});

/// Scans seeds in order and stops at the first counterexample, which is
/// minimized and re-verified before being returned.
MineResult mine_counterexample(const MineConfig& cfg);

/// Greedy clause removal to a fixpoint, keeping the counterexample property;
/// the result is audited to be 1-minimal. Throws NotACounterexample.
Instance minimize(const Instance& inst, const EngineOptions& engine = {});

// ---------------------------------------------------------------------------
// Lemma shape checks

enum class LemmaId { L5_11, L5_12, L5_17, L5_18, L5_19 };

std::string_view to_string(LemmaId id);
std::optional<LemmaId> parse_lemma_id(std::string_view text);
inline constexpr LemmaId kAllLemmas[] = {LemmaId::L5_11, LemmaId::L5_12, LemmaId::L5_17, LemmaId::L5_18, LemmaId::L5_19};

struct LemmaWitness {
  std::uint64_t trial_seed = 0;
  std::vector<Clause> premises;
  Clause target;
};

struct LemmaTrial {
  enum class Outcome { Degenerate, Derived, Failed };
  Outcome outcome = Outcome::Degenerate;
  LemmaWitness witness;  // premises and target are filled for Derived and Failed
};

struct LemmaShapeReport {
  LemmaId lemma = LemmaId::L5_11;
  std::size_t k = 0;
  Var n = 0;
  std::uint64_t trials = 0;
  std::uint64_t degenerate = 0;
  std::uint64_t premise_matches = 0;
  std::uint64_t target_derived_at_reduced_width = 0;
  std::vector<LemmaWitness> failures;
};

/// Closure of `premises` under resolution, storing only clauses of width
/// <= max_width, optionally also under expansion over variables 1..n.
/// Sets *empty_derived when a unit meets its complement.
std::vector<Clause> bounded_closure(std::span<const Clause> premises, Var n, std::size_t max_width, bool with_expansion,
                                    bool* empty_derived = nullptr);

/// Whether target is derived, or subsumed by a derived clause, in the
/// width k-1 closure of premises.
bool derivable_at_width(std::span<const Clause> premises, const Clause& target, Var n, std::size_t max_width,
                        bool with_expansion = false);

/// One sampled trial, reproducible from trial_seed alone.
LemmaTrial run_lemma_trial(LemmaId lemma, std::size_t k, Var n, std::uint64_t trial_seed);

/// Throws BadParams unless 3 <= k <= n <= 10.
LemmaShapeReport check_lemma_shape(LemmaId lemma, std::size_t k, Var n, std::uint64_t trials, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Benchmarks

struct BenchRow {
  Var n = 0;
  std::uint64_t seed = 0;
  std::size_t m = 0;
  Verdict::Kind verdict = Verdict::Kind::Saturated;
  EngineStats stats;
  double wall_time_ms = 0;
};

std::vector<BenchRow> bench_bounds(std::span<const Var> n_list, std::span<const std::uint64_t> seeds,
                                   double density = kDefaultDensity, const EngineOptions& engine = {});

std::string to_csv(std::span<const BenchRow> rows);

}  // namespace w3sat
