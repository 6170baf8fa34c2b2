// w3sat: command-line front end for the width-3 saturation engine, its
// oracles and the experiment harness.
//
// Exit codes: 0 satisfiable / saturated / report written, 10 unsatisfiable /
// refuted, 20 counterexample found, 2 usage or input error, 1 internal error.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "w3sat/csv.hpp"
#include "w3sat/harness.hpp"
#include "w3sat/io.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace w3sat;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;
constexpr int kExitUnsat = 10;
constexpr int kExitCounterexample = 20;

constexpr const char* kVersion = "0.1.0";

constexpr const char* kUniverseNote =
    "The variable universe is 1..n. Variables that occur in no clause still count towards n, because they change "
    "which expansions exist; use --vars to widen n for list input.";

// ---------------------------------------------------------------------------
// Options

struct InputOptions {
  std::string path = "-";
  std::string format = "auto";
  std::optional<Var> vars;
};

struct EngineFlags {
  bool no_expand = false;
  bool sweep = false;
  bool wide = false;

  EngineOptions options() const {
    EngineOptions o;
    o.expansion = !no_expand;
    o.conformance_sweep = sweep;
    o.reduce_wide_resolvents = wide;
    return o;
  }
  json to_json() const { return {{"no_expand", no_expand}, {"sweep", sweep}, {"wide", wide}}; }
};

struct VarRange {
  Var lo = 0;
  Var hi = 0;
};

std::string to_string(const VarRange& r) { return std::to_string(r.lo) + ".." + std::to_string(r.hi); }

// Accepts "a..b" or a single value.
VarRange parse_range(const std::string& text) {
  auto number = [&](const std::string& part) -> Var {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != part.size()) throw Error(Errc::BadConfig, "bad range '" + text + "'");
    return static_cast<Var>(v);
  };
  const auto dots = text.find("..");
  VarRange r;
  if (dots == std::string::npos) {
    r.lo = r.hi = number(text);
  } else {
    r.lo = number(text.substr(0, dots));
    r.hi = number(text.substr(dots + 2));
  }
  if (r.lo > r.hi) throw Error(Errc::BadConfig, "empty range '" + text + "'");
  return r;
}

struct Common {
  std::string out;     // report destination; stdout when empty
  std::string record;  // RunRecord destination
};

// ---------------------------------------------------------------------------
// Helpers

struct LoadedInput {
  std::string bytes;
  ParsedInstance parsed;
};

LoadedInput load(const InputOptions& in) {
  LoadedInput loaded;
  loaded.bytes = read_file(in.path);
  InputFormat format;
  if (in.format == "auto") {
    format = detect_format(loaded.bytes);
  } else if (in.format == "dimacs") {
    format = InputFormat::Dimacs;
  } else {
    format = InputFormat::PaperLists;
  }
  const InputDocument doc = format == InputFormat::Dimacs ? read_dimacs(loaded.bytes) : read_paper_lists(loaded.bytes);
  loaded.parsed = to_instance(doc, in.vars);
  if (loaded.parsed.tautologies_dropped > 0) {
    std::cerr << "note: dropped " << loaded.parsed.tautologies_dropped << " tautological clause(s)\n";
  }
  return loaded;
}

void emit(const Common& common, const std::string& text) {
  if (common.out.empty()) {
    std::cout << text;
  } else {
    write_file(common.out, text);
  }
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// The input digest covers the input bytes for commands that read a file and
// the serialized options for generator-driven commands, so it only changes
// when the inputs do. The timestamp is the one field that varies per run.
void write_record(const Common& common, const std::string& command, const json& options, const std::string& input_bytes,
                  const json& payload) {
  if (common.record.empty()) return;
  json record;
  record["command"] = command;
  record["options"] = options;
  record["input_sha256"] = sha256_hex(input_bytes);
  record["payload"] = payload;
  record["version"] = kVersion;
  record["timestamp"] = utc_timestamp();
  write_file(common.record, record.dump(2) + "\n");
}

json stats_json(const EngineStats& s) {
  return {{"passes", s.passes},
          {"resolutions_attempted", s.resolutions_attempted},
          {"clauses_added", s.clauses_added},
          {"db_size", s.db_size},
          {"db_bound", s.db_bound}};
}

std::string verdict_name(Verdict::Kind k) { return k == Verdict::Kind::Refuted ? "Refuted" : "Saturated"; }

void add_input_options(CLI::App* cmd, InputOptions& in) {
  cmd->add_option("input", in.path, "Instance file, or - for standard input")->capture_default_str();
  cmd->add_option("--format", in.format, "Input format")
      ->check(CLI::IsMember({"auto", "dimacs", "lists"}))
      ->capture_default_str();
  cmd->add_option("--vars", in.vars, "Number of variables n (list input; must cover every variable used)")
      ->check(CLI::PositiveNumber);
}

void add_engine_flags(CLI::App* cmd, EngineFlags& e) {
  cmd->add_flag("--no-expand", e.no_expand, "Disable expansion; resolution only");
  cmd->add_flag("--sweep", e.sweep, "Use the all-pairs repeat-until-stable sweep instead of the worklist");
  cmd->add_flag("--wide", e.wide, "Experimental: resolve width-4 resolvents once more and keep results of width <= 3");
}

void add_common(CLI::App* cmd, Common& common, bool with_out = true) {
  if (with_out) cmd->add_option("-o,--out", common.out, "Write the report here instead of standard output");
  cmd->add_option("--record", common.record, "Write a JSON run record (command, options, input digest, payload)");
}

// ---------------------------------------------------------------------------
// solve

struct SolveArgs {
  InputOptions in;
  EngineFlags engine;
  Common common;
  std::string trace;
  std::string database;
};

int run_solve(const SolveArgs& a) {
  const LoadedInput loaded = load(a.in);
  const Instance& inst = loaded.parsed.instance;
  EngineOptions opts = a.engine.options();
  opts.keep_database = !a.database.empty();
  const Verdict v = saturate(inst, opts);

  std::ostringstream out;
  out << verdict_name(v.kind);
  if (v.refuted()) out << ' ' << v.var;
  out << '\n';
  out << "n " << inst.n_vars << "\nm " << inst.clauses.size() << '\n';
  out << "passes " << v.stats.passes << "\nresolutions_attempted " << v.stats.resolutions_attempted << "\nclauses_added "
      << v.stats.clauses_added << "\ndb_size " << v.stats.db_size << "\ndb_bound " << v.stats.db_bound << '\n';
  emit(a.common, out.str());

  if (!a.trace.empty()) {
    if (!v.refuted()) {
      std::cerr << "note: saturated, no trace written\n";
    } else {
      write_file(a.trace, emit_trace(v));
    }
  }
  if (!a.database.empty()) {
    std::string db;
    for (const auto& c : v.database) db += c.to_string() + '\n';
    write_file(a.database, db);
  }

  json payload = {{"verdict", verdict_name(v.kind)}, {"stats", stats_json(v.stats)}};
  if (v.refuted()) payload["var"] = v.var;
  write_record(a.common, "solve",
               {{"format", a.in.format}, {"vars", a.in.vars ? json(*a.in.vars) : json()}, {"engine", a.engine.to_json()}},
               loaded.bytes, payload);
  return v.refuted() ? kExitUnsat : kExitOk;
}

// ---------------------------------------------------------------------------
// oracle

struct OracleArgs {
  InputOptions in;
  Common common;
  std::string method = "enumerate";
  Var max_n = kEnumerateMaxVars;
};

int run_oracle(const OracleArgs& a) {
  const LoadedInput loaded = load(a.in);
  const Instance& inst = loaded.parsed.instance;
  const OracleResult r = a.method == "dpll" ? solve_dpll(inst) : solve_enumerate(inst, a.max_n);
  std::ostringstream out;
  out << (r.is_sat() ? "SAT" : "UNSAT") << '\n';
  if (r.witness()) {
    // DIMACS-style value line: one signed literal per variable.
    out << 'v';
    for (Var v = 1; v <= inst.n_vars; ++v) out << ' ' << (r.witness()->value(v) ? "" : "-") << v;
    out << " 0\n";
  }
  out << "nodes " << r.nodes_explored() << '\n';
  emit(a.common, out.str());
  json payload = {{"status", r.is_sat() ? "SAT" : "UNSAT"}, {"nodes", r.nodes_explored()}};
  if (r.witness()) payload["witness"] = r.witness()->to_string();
  write_record(a.common, "oracle", {{"format", a.in.format}, {"method", a.method}, {"max_n", a.max_n}}, loaded.bytes,
               payload);
  return r.is_sat() ? kExitOk : kExitUnsat;
}

// ---------------------------------------------------------------------------
// compare

struct CompareArgs {
  Common common;
  EngineFlags engine;
  std::string n = "6..14";
  std::vector<double> densities{3.0, 4.27, 5.5};
  std::size_t count = 1000;
  std::uint64_t seed = 1;
  std::string oracle = "enumerate";
  Var max_n = kEnumerateMaxVars;
  bool timing = false;
  unsigned jobs = 1;
};

int run_compare(const CompareArgs& a) {
  const VarRange range = parse_range(a.n);
  const auto cfgs = sweep_configs(range.lo, range.hi, a.densities, a.count, a.seed);
  CompareOptions opts;
  opts.engine = a.engine.options();
  opts.oracle = a.oracle == "dpll" ? OracleKind::Dpll : OracleKind::Enumerate;
  opts.enumerate_max_vars = a.max_n;
  opts.timing = a.timing;
  opts.jobs = a.jobs;
  const ComparisonReport report = compare(cfgs, opts);
  emit(a.common, to_csv(report));
  const auto& g = report.aggregate;
  std::cerr << "instances " << report.rows.size() << " agree_sat " << g.agree_sat << " agree_unsat " << g.agree_unsat
            << " disagreements " << g.disagreements << " soundness_violations " << g.soundness_violations
            << " traces_checked " << g.traces_checked << '\n';
  const json options = {{"n", to_string(range)}, {"densities", a.densities}, {"count", a.count}, {"seed", a.seed},
                        {"oracle", a.oracle},   {"max_n", a.max_n},        {"engine", a.engine.to_json()}};
  write_record(a.common, "compare", options, options.dump(),
               {{"instances", report.rows.size()},
                {"agree_sat", g.agree_sat},
                {"agree_unsat", g.agree_unsat},
                {"disagreements", g.disagreements},
                {"soundness_violations", g.soundness_violations},
                {"traces_checked", g.traces_checked},
                {"max_db_ratio_ppm", g.max_db_ratio_ppm}});
  return kExitOk;
}

// ---------------------------------------------------------------------------
// mine

struct MineArgs {
  Common common;
  EngineFlags engine;
  std::string n = "10..40";
  double density = kDefaultDensity;
  std::uint64_t budget = 100000;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
};

int run_mine(const MineArgs& a) {
  const VarRange range = parse_range(a.n);
  MineConfig cfg;
  cfg.n_lo = range.lo;
  cfg.n_hi = range.hi;
  cfg.density = a.density;
  cfg.seed_start = a.seed;
  cfg.budget = a.budget;
  cfg.engine = a.engine.options();
  const MineResult result = mine_counterexample(cfg);

  json report;
  report["outcome"] = result.found ? "Found" : "NotFound";
  report["tried"] = result.stats.tried;
  report["oracle_unsat"] = result.stats.oracle_unsat;
  report["engine_refuted"] = result.stats.engine_refuted;
  report["engine_runs"] = result.stats.engine_runs;
  report["max_db_ratio_ppm"] = result.stats.max_db_ratio_ppm;
  if (result.found) {
    const Counterexample& ce = *result.found;
    const std::string stem = "counterexample-seed" + std::to_string(ce.origin.seed);
    const auto dir = std::filesystem::path(a.out_dir);
    std::filesystem::create_directories(dir);
    const auto cnf_path = (dir / (stem + ".cnf")).string();
    const auto json_path = (dir / (stem + ".json")).string();
    write_file(cnf_path, emit_dimacs(ce.minimized));
    const json sidecar = {{"seed", ce.origin.seed},
                          {"n", ce.minimized.n_vars},
                          {"m", ce.minimized.clauses.size()},
                          {"original_m", ce.original.clauses.size()},
                          {"engine_stats", stats_json(ce.engine_stats)},
                          {"engine_verdict", "Saturated"},
                          {"oracle_status", std::string(w3sat::to_string(ce.oracle_status))},
                          {"one_minimal_audited", ce.minimal_audited},
                          {"wide_variant_verdict", verdict_name(ce.wide_variant_verdict)}};
    write_file(json_path, sidecar.dump(2) + "\n");
    report["counterexample"] = sidecar;
    report["files"] = {cnf_path, json_path};
  }
  emit(a.common, report.dump(2) + "\n");
  const json options = {{"n", to_string(range)}, {"density", a.density}, {"budget", a.budget}, {"seed", a.seed},
                        {"engine", a.engine.to_json()}};
  write_record(a.common, "mine", options, options.dump(), report);
  return result.found ? kExitCounterexample : kExitOk;
}

// ---------------------------------------------------------------------------
// lemmas

struct LemmaArgs {
  Common common;
  std::vector<std::string> lemmas{"all"};
  std::vector<std::size_t> ks{4, 5};
  Var n = 8;
  std::uint64_t trials = 10000;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> replay;
  std::string witnesses;
};

std::vector<LemmaId> selected_lemmas(const std::vector<std::string>& names) {
  std::vector<LemmaId> out;
  for (const auto& name : names) {
    if (name == "all") {
      out.assign(std::begin(kAllLemmas), std::end(kAllLemmas));
      return out;
    }
    auto id = parse_lemma_id(name);
    if (!id) throw Error(Errc::BadConfig, "unknown lemma '" + name + "'");
    out.push_back(*id);
  }
  return out;
}

json clauses_json(std::span<const Clause> clauses) {
  json arr = json::array();
  for (const auto& c : clauses) {
    json lits = json::array();
    for (Literal l : c) lits.push_back(l.to_int());
    arr.push_back(lits);
  }
  return arr;
}

std::string outcome_name(LemmaTrial::Outcome o) {
  switch (o) {
    case LemmaTrial::Outcome::Degenerate: return "Degenerate";
    case LemmaTrial::Outcome::Derived: return "Derived";
    case LemmaTrial::Outcome::Failed: return "Failed";
  }
  return "Unknown";
}

int run_lemmas(const LemmaArgs& a) {
  const auto lemmas = selected_lemmas(a.lemmas);
  if (a.replay) {
    if (lemmas.size() != 1 || a.ks.size() != 1) throw Error(Errc::BadConfig, "--replay needs exactly one --lemma and one --k");
    const LemmaTrial t = run_lemma_trial(lemmas[0], a.ks[0], a.n, *a.replay);
    const json report = {{"lemma", std::string(w3sat::to_string(lemmas[0]))},
                         {"k", a.ks[0]},
                         {"n", a.n},
                         {"trial_seed", *a.replay},
                         {"outcome", outcome_name(t.outcome)},
                         {"premises", clauses_json(t.witness.premises)},
                         {"target", t.outcome == LemmaTrial::Outcome::Degenerate
                                        ? json()
                                        : clauses_json(std::span<const Clause>(&t.witness.target, 1))[0]}};
    emit(a.common, report.dump(2) + "\n");
    write_record(a.common, "lemmas", {{"replay", *a.replay}}, report["lemma"].get<std::string>(), report);
    return kExitOk;
  }

  std::string csv_text = csv::row({"lemma", "k", "n", "trials", "degenerate", "premise_matches",
                                   "target_derived_at_reduced_width", "failures"});
  json witness_list = json::array();
  json summary = json::array();
  for (LemmaId id : lemmas) {
    for (std::size_t k : a.ks) {
      const LemmaShapeReport r = check_lemma_shape(id, k, a.n, a.trials, a.seed);
      const std::string name(w3sat::to_string(id));
      csv_text += csv::row({name, std::to_string(k), std::to_string(a.n), std::to_string(r.trials),
                            std::to_string(r.degenerate), std::to_string(r.premise_matches),
                            std::to_string(r.target_derived_at_reduced_width), std::to_string(r.failures.size())});
      summary.push_back({{"lemma", name},
                         {"k", k},
                         {"premise_matches", r.premise_matches},
                         {"derived", r.target_derived_at_reduced_width},
                         {"failures", r.failures.size()}});
      for (const auto& w : r.failures) {
        witness_list.push_back({{"lemma", name},
                                {"k", k},
                                {"n", a.n},
                                {"trial_seed", w.trial_seed},
                                {"premises", clauses_json(w.premises)},
                                {"target", clauses_json(std::span<const Clause>(&w.target, 1))[0]},
                                {"replay", "w3sat lemmas --lemma " + name + " --k " + std::to_string(k) + " --n " +
                                               std::to_string(a.n) + " --replay " + std::to_string(w.trial_seed)}});
      }
    }
  }
  emit(a.common, csv_text);
  if (!a.witnesses.empty()) write_file(a.witnesses, witness_list.dump(2) + "\n");
  const json options = {{"lemmas", a.lemmas}, {"k", a.ks}, {"n", a.n}, {"trials", a.trials}, {"seed", a.seed}};
  write_record(a.common, "lemmas", options, options.dump(), summary);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// bench

struct BenchArgs {
  Common common;
  EngineFlags engine;
  std::vector<Var> n_list{5, 10, 15, 20};
  std::size_t seeds = 3;
  std::uint64_t seed = 1;
  double density = kDefaultDensity;
};

int run_bench(const BenchArgs& a) {
  std::vector<std::uint64_t> seeds;
  for (std::size_t i = 0; i < a.seeds; ++i) seeds.push_back(a.seed + i);
  const auto rows = bench_bounds(a.n_list, seeds, a.density, a.engine.options());
  emit(a.common, to_csv(rows));
  const json options = {{"n", a.n_list}, {"seeds", a.seeds}, {"seed", a.seed}, {"density", a.density},
                        {"engine", a.engine.to_json()}};
  json payload = json::array();
  for (const auto& r : rows) {
    payload.push_back({{"n", r.n}, {"seed", r.seed}, {"db_size", r.stats.db_size}, {"db_bound", r.stats.db_bound}});
  }
  write_record(a.common, "bench", options, options.dump(), payload);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// export-dot

struct DotArgs {
  InputOptions in;
  EngineFlags engine;
  Common common;
};

int run_export_dot(const DotArgs& a) {
  const LoadedInput loaded = load(a.in);
  const Verdict v = saturate(loaded.parsed.instance, a.engine.options());
  if (!v.refuted()) {
    std::cerr << "Saturated: there is no refutation to export\n";
    write_record(a.common, "export-dot", {{"engine", a.engine.to_json()}}, loaded.bytes, {{"verdict", "Saturated"}});
    return kExitOk;
  }
  emit(a.common, export_derivation_dag(v));
  write_record(a.common, "export-dot", {{"engine", a.engine.to_json()}}, loaded.bytes,
               {{"verdict", "Refuted"}, {"var", v.var}, {"steps", v.trace.size()}});
  return kExitOk;
}

bool is_usage_error(Errc code) {
  switch (code) {
    case Errc::EmptyClauseInput:
    case Errc::VarOutOfRange:
    case Errc::WidthExceedsN:
    case Errc::WidthTooLarge:
    case Errc::MalformedTrace:
    case Errc::TooLarge:
    case Errc::BadConfig:
    case Errc::BadParams:
    case Errc::SyntaxError:
      return true;
    default:
      return false;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Width-3 clause saturation with oracle cross-checks and experiment harness"};
  app.footer(std::string("Exit codes: 0 SAT/Saturated/report written, 10 UNSAT/Refuted, 20 counterexample found, "
                         "2 usage or input error, 1 internal error.\n") +
             kUniverseNote);
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Run saturation on an instance; prints Refuted <var> or Saturated");
  add_input_options(solve_cmd, solve.in);
  add_engine_flags(solve_cmd, solve.engine);
  add_common(solve_cmd, solve.common);
  solve_cmd->add_option("--trace", solve.trace, "Write the refutation trace here");
  solve_cmd->add_option("--db", solve.database, "Write the final clause database here, one clause per line");
  solve_cmd->footer(kUniverseNote);

  OracleArgs oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "Decide an instance by enumeration or DPLL");
  add_input_options(oracle_cmd, oracle.in);
  add_common(oracle_cmd, oracle.common);
  oracle_cmd->add_option("--method", oracle.method, "Decision procedure")
      ->check(CLI::IsMember({"enumerate", "dpll"}))
      ->capture_default_str();
  oracle_cmd->add_option("--max-n", oracle.max_n, "Enumeration size guard")->envname("W3SAT_MAX_N")->capture_default_str();

  CompareArgs cmp;
  auto* compare_cmd = app.add_subcommand("compare", "Engine versus oracle on seeded random instances; writes CSV");
  add_engine_flags(compare_cmd, cmp.engine);
  add_common(compare_cmd, cmp.common);
  compare_cmd->add_option("--n", cmp.n, "Variable range lo..hi")->capture_default_str();
  compare_cmd->add_option("--density", cmp.densities, "Clause/variable ratios")->delimiter(',')->capture_default_str();
  compare_cmd->add_option("--count", cmp.count, "Number of instances")->capture_default_str();
  compare_cmd->add_option("--seed", cmp.seed, "First seed")->envname("W3SAT_SEED")->capture_default_str();
  compare_cmd->add_option("--oracle", cmp.oracle, "Ground-truth procedure")
      ->check(CLI::IsMember({"enumerate", "dpll"}))
      ->capture_default_str();
  compare_cmd->add_option("--max-n", cmp.max_n, "Enumeration size guard")->envname("W3SAT_MAX_N")->capture_default_str();
  compare_cmd->add_flag("--timing", cmp.timing, "Fill the wall_time_ms column (makes output non-reproducible)");
  compare_cmd->add_option("--jobs", cmp.jobs, "Worker threads; output is identical for any value")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  MineArgs mine;
  auto* mine_cmd = app.add_subcommand("mine", "Search for an unsatisfiable instance the engine fails to refute");
  add_engine_flags(mine_cmd, mine.engine);
  add_common(mine_cmd, mine.common);
  mine_cmd->add_option("--n", mine.n, "Variable range lo..hi")->capture_default_str();
  mine_cmd->add_option("--density", mine.density, "Clause/variable ratio")->capture_default_str();
  mine_cmd->add_option("--budget", mine.budget, "Number of instances to try")->capture_default_str();
  mine_cmd->add_option("--seed", mine.seed, "First seed")->envname("W3SAT_SEED")->capture_default_str();
  mine_cmd->add_option("--out-dir", mine.out_dir, "Directory for the counterexample .cnf and .json")->capture_default_str();

  LemmaArgs lem;
  auto* lemmas_cmd = app.add_subcommand("lemmas", "Sample lemma premise shapes and test the reduced-width conclusion");
  add_common(lemmas_cmd, lem.common);
  lemmas_cmd->add_option("--lemma", lem.lemmas, "5.11, 5.12, 5.17, 5.18, 5.19 or all")->delimiter(',')->capture_default_str();
  lemmas_cmd->add_option("--k", lem.ks, "Clause widths")->delimiter(',')->capture_default_str();
  lemmas_cmd->add_option("--n", lem.n, "Number of variables")->capture_default_str();
  lemmas_cmd->add_option("--trials", lem.trials, "Trials per lemma and k")->capture_default_str();
  lemmas_cmd->add_option("--seed", lem.seed, "Run seed")->envname("W3SAT_SEED")->capture_default_str();
  lemmas_cmd->add_option("--replay", lem.replay, "Re-run a single trial from its trial seed");
  lemmas_cmd->add_option("--witnesses", lem.witnesses, "Write failure witnesses as JSON here");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Database size against its bound; writes CSV");
  add_engine_flags(bench_cmd, bench.engine);
  add_common(bench_cmd, bench.common);
  bench_cmd->add_option("--n", bench.n_list, "Variable counts")->delimiter(',')->capture_default_str();
  bench_cmd->add_option("--seeds", bench.seeds, "Seeds per n")->capture_default_str();
  bench_cmd->add_option("--seed", bench.seed, "First seed")->envname("W3SAT_SEED")->capture_default_str();
  bench_cmd->add_option("--density", bench.density, "Clause/variable ratio")->capture_default_str();

  DotArgs dot;
  auto* dot_cmd = app.add_subcommand("export-dot", "Write the refutation as a Graphviz digraph");
  add_input_options(dot_cmd, dot.in);
  add_engine_flags(dot_cmd, dot.engine);
  add_common(dot_cmd, dot.common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*solve_cmd) return run_solve(solve);
    if (*oracle_cmd) return run_oracle(oracle);
    if (*compare_cmd) return run_compare(cmp);
    if (*mine_cmd) return run_mine(mine);
    if (*lemmas_cmd) return run_lemmas(lem);
    if (*bench_cmd) return run_bench(bench);
    if (*dot_cmd) return run_export_dot(dot);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return is_usage_error(e.code()) ? kExitUsage : kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}
