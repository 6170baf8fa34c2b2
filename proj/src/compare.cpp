#include <chrono>
#include <exception>
#include <thread>

#include "w3sat/csv.hpp"
#include "w3sat/harness.hpp"

namespace w3sat {
namespace {

ComparisonRow run_one(const Instance& inst, std::uint64_t seed, const CompareOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  ComparisonRow row;
  row.seed = seed;
  row.n = inst.n_vars;
  row.m = inst.clauses.size();

  const OracleResult oracle =
      opts.oracle == OracleKind::Enumerate ? solve_enumerate(inst, opts.enumerate_max_vars) : solve_dpll(inst);
  const Verdict verdict = saturate(inst, opts.engine);
  row.oracle_status = oracle.status();
  row.engine_verdict = verdict.kind;
  row.engine_stats = verdict.stats;

  if (verdict.refuted()) {
    if (oracle.is_sat()) {
      throw Error(Errc::SoundnessViolation, "seed " + std::to_string(seed) + ": engine refuted on variable " +
                                                std::to_string(verdict.var) + " but the oracle found witness " +
                                                oracle.witness()->to_string());
    }
    if (opts.check_traces) {
      const auto report = check_trace(inst, verdict);
      if (!report.ok) {
        throw Error(Errc::SoundnessViolation, "seed " + std::to_string(seed) + ": refutation trace fails at step " +
                                                  std::to_string(report.failing_step.value_or(0)) + ": " + report.reason);
      }
    }
  }
  if (verdict.stats.db_size > verdict.stats.db_bound) {
    throw Error(Errc::SoundnessViolation, "seed " + std::to_string(seed) + ": database exceeded its bound");
  }
  row.agree = verdict.refuted() == oracle.is_unsat();
  if (opts.timing) {
    row.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  return row;
}

template <typename Make>
ComparisonReport run_all(std::size_t count, const CompareOptions& opts, Make make) {
  ComparisonReport report;
  report.rows.resize(count);
  std::vector<std::exception_ptr> errors(count);
  const unsigned jobs = std::max(1u, std::min<unsigned>(opts.jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));

  auto work = [&](unsigned worker) {
    for (std::size_t i = worker; i < count; i += jobs) {
      try {
        auto [inst, seed] = make(i);
        report.rows[i] = run_one(inst, seed, opts);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(work, w);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  auto& agg = report.aggregate;
  for (const auto& row : report.rows) {
    if (row.agree) {
      ++(row.engine_verdict == Verdict::Kind::Refuted ? agg.agree_unsat : agg.agree_sat);
    } else {
      ++agg.disagreements;
    }
    if (row.engine_verdict == Verdict::Kind::Refuted && opts.check_traces) ++agg.traces_checked;
    if (row.engine_stats.db_bound > 0) {
      agg.max_db_ratio_ppm =
          std::max(agg.max_db_ratio_ppm, row.engine_stats.db_size * 1'000'000 / row.engine_stats.db_bound);
    }
  }
  return report;
}

}  // namespace

ComparisonReport compare(std::span<const GenConfig> cfgs, const CompareOptions& opts) {
  return run_all(cfgs.size(), opts, [&](std::size_t i) { return std::pair{gen_random(cfgs[i]), cfgs[i].seed}; });
}

ComparisonReport compare_instances(std::span<const Instance> instances, std::span<const std::uint64_t> seeds,
                                   const CompareOptions& opts) {
  if (!seeds.empty() && seeds.size() != instances.size()) throw Error(Errc::BadConfig, "one seed per instance expected");
  return run_all(instances.size(), opts, [&](std::size_t i) {
    return std::pair{instances[i], seeds.empty() ? std::uint64_t{i} : seeds[i]};
  });
}

std::string to_csv(const ComparisonReport& report) {
  std::string out = csv::row({"seed", "n", "m", "oracle_status", "engine_verdict", "agree", "engine_passes", "db_size",
                              "db_bound", "resolutions_attempted", "wall_time_ms"});
  for (const auto& r : report.rows) {
    out += csv::row({std::to_string(r.seed), std::to_string(r.n), std::to_string(r.m), std::string(to_string(r.oracle_status)),
                     r.engine_verdict == Verdict::Kind::Refuted ? "Refuted" : "Saturated", r.agree ? "true" : "false",
                     std::to_string(r.engine_stats.passes), std::to_string(r.engine_stats.db_size),
                     std::to_string(r.engine_stats.db_bound), std::to_string(r.engine_stats.resolutions_attempted),
                     r.wall_time_ms ? std::to_string(*r.wall_time_ms) : std::string()});
  }
  return out;
}

}  // namespace w3sat
