#pragma once

// Width-3 saturation: closes a clause database under resolution and
// expansion, keeping only clauses of width 1..3, and stops as soon as a
// contradicting unit pair [v], [-v] is present.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "w3sat/core.hpp"

namespace w3sat {

using ClauseId = std::uint32_t;

inline constexpr std::size_t kEngineWidth = 3;

/// Upper bound on the number of distinct clauses of width 1..3 over n
/// variables: 8*C(n,3) + 4*C(n,2) + 2*n.
std::uint64_t db_bound(Var n);

enum class Rule {
  Given,
  Resolve,       // parents: the two resolved clauses
  Expand,        // parents: the subsuming clause
  ResolveChain,  // parents a, b, c: resolve(resolve(a, b), c); the middle clause is wider than 3
};

std::string_view to_string(Rule rule);

struct DerivationStep {
  ClauseId id = 0;
  Rule rule = Rule::Given;
  std::vector<ClauseId> parents;
  Clause clause;

  friend bool operator==(const DerivationStep&, const DerivationStep&) = default;
};

struct EngineOptions {
  bool expansion = true;
  /// Literal repeat-until-stable sweep over all ordered pairs, with the
  /// unit check only at the end of each pass. Quadratic per pass.
  bool conformance_sweep = false;
  /// Defaults to db_bound(n) + 1.
  std::optional<std::uint64_t> max_passes;
  /// Experimental: a width-4 resolvent is resolved once more against the
  /// database and any result of width <= 3 is kept (Rule::ResolveChain).
  bool reduce_wide_resolvents = false;
  /// Copy the final database into Verdict::database.
  bool keep_database = false;
};

struct EngineStats {
  std::uint64_t passes = 0;
  std::uint64_t resolutions_attempted = 0;
  std::uint64_t clauses_added = 0;  // derived, i.e. excluding given clauses
  std::uint64_t db_size = 0;        // final size; the database never shrinks, so also the peak
  std::uint64_t db_bound = 0;

  friend bool operator==(const EngineStats&, const EngineStats&) = default;
};

struct Verdict {
  enum class Kind { Refuted, Saturated };

  Kind kind = Kind::Saturated;
  Var var = 0;                          // Refuted: the contradicting variable
  std::vector<DerivationStep> trace;    // Refuted: ancestry of both units, id order, ending in a unit
  EngineStats stats;
  std::vector<Clause> database;         // with EngineOptions::keep_database, id order

  bool refuted() const { return kind == Kind::Refuted; }
  friend bool operator==(const Verdict&, const Verdict&) = default;
};

/// Deduplicating clause store keyed by canonical form. Ids are dense and
/// follow insertion order.
class ClauseDb {
 public:
  struct Origin {
    Rule rule = Rule::Given;
    std::array<ClauseId, 3> parents{};
    std::uint8_t parent_count = 0;
  };

  explicit ClauseDb(Var n);

  Var n_vars() const { return n_; }
  std::size_t size() const { return clauses_.size(); }
  std::uint64_t bound() const { return bound_; }

  const Clause& clause(ClauseId id) const { return clauses_[id]; }
  const Origin& origin(ClauseId id) const { return origins_[id]; }
  std::optional<ClauseId> find(const Clause& c) const;
  /// Same, for canonical (sorted, tautology-free) literals.
  std::optional<ClauseId> find(std::span<const Literal> sorted) const;

  /// Ids of stored clauses of the given width (1..3), ascending.
  std::span<const ClauseId> by_width(std::size_t width) const { return by_width_.at(width - 1); }
  /// Ids of stored clauses containing l, ascending.
  std::span<const ClauseId> occurrences(Literal l) const { return occurrences_[l.index()]; }
  /// Ids of stored clauses of width 1 or 2 containing l, ascending.
  std::span<const ClauseId> narrow_occurrences(Literal l) const { return narrow_occurrences_[l.index()]; }
  /// Ids of stored width-3 clauses containing both x and y, ascending.
  std::span<const ClauseId> pair_occurrences(Literal x, Literal y) const;
  /// Id of the unit clause [l], if stored.
  std::optional<ClauseId> unit(Literal l) const;

  /// Returns the id and whether the clause was new. Throws WidthTooLarge
  /// for clauses wider than 3, VarOutOfRange for variables beyond n, and
  /// Internal if the size bound would be exceeded.
  std::pair<ClauseId, bool> insert(const Clause& c, const Origin& origin);

  DerivationStep step(ClauseId id) const;

 private:
  static std::uint64_t key(const Clause& c);

  Var n_;
  std::uint64_t bound_;
  std::vector<Clause> clauses_;
  std::vector<Origin> origins_;
  std::unordered_map<std::uint64_t, ClauseId> index_;
  std::array<std::vector<ClauseId>, kEngineWidth> by_width_;
  std::vector<std::vector<ClauseId>> occurrences_;
  std::vector<std::vector<ClauseId>> narrow_occurrences_;
  std::unordered_map<std::uint64_t, std::vector<ClauseId>> pair_occurrences_;
  std::vector<ClauseId> unit_ids_;  // by literal index; kNoClause when absent
};

/// Runs saturation. Throws WidthTooLarge if an input clause is wider than 3.
Verdict saturate(const Instance& inst, const EngineOptions& opts = {});

struct CheckReport {
  bool ok = true;
  std::optional<ClauseId> failing_step;
  std::string reason;
};

/// Replays derivation steps: Given clauses must occur in inst, Resolve and
/// ResolveChain clauses must equal the recomputed resolvent, Expand clauses
/// must be subsumed by their parent. Parents must refer to earlier steps;
/// otherwise throws MalformedTrace.
CheckReport check_steps(const Instance& inst, std::span<const DerivationStep> steps);

/// check_steps plus the refutation shape: the last step is a unit on
/// `var` and the opposite unit also occurs in the trace.
CheckReport check_trace(const Instance& inst, Var var, std::span<const DerivationStep> steps);

/// Throws NotRefuted for a saturated verdict.
CheckReport check_trace(const Instance& inst, const Verdict& verdict);

/// DOT digraph of a refutation: one node per step labelled with its clause,
/// one edge per parent labelled with the rule. Throws NotRefuted.
std::string export_derivation_dag(const Verdict& verdict);
std::string export_derivation_dag(std::span<const DerivationStep> steps);

}  // namespace w3sat
