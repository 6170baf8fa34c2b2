#pragma once

// Ground truth for small instances, plus explicit full-width constructions:
// the set of width-n clauses implied by an instance, its reduction to a
// contradicting unit pair, and the derivation of any clause from such a pair.

#include <cstdint>
#include <optional>
#include <vector>

#include "w3sat/core.hpp"
#include "w3sat/engine.hpp"

namespace w3sat {

inline constexpr Var kEnumerateMaxVars = 24;
inline constexpr Var kFullExpansionMaxVars = 16;

class OracleResult {
 public:
  enum class Status { Sat, Unsat };

  static OracleResult unsat(std::uint64_t nodes) { return OracleResult(Status::Unsat, std::nullopt, nodes); }
  /// Throws Internal if the witness does not satisfy inst.
  static OracleResult sat(const Instance& inst, Assignment witness, std::uint64_t nodes);

  Status status() const { return status_; }
  bool is_sat() const { return status_ == Status::Sat; }
  bool is_unsat() const { return status_ == Status::Unsat; }
  const std::optional<Assignment>& witness() const { return witness_; }
  std::uint64_t nodes_explored() const { return nodes_; }

 private:
  OracleResult(Status s, std::optional<Assignment> w, std::uint64_t nodes) : status_(s), witness_(std::move(w)), nodes_(nodes) {}

  Status status_;
  std::optional<Assignment> witness_;
  std::uint64_t nodes_;
};

std::string_view to_string(OracleResult::Status s);

/// Checks assignments in lexicographic order (x1 most significant) and
/// returns the first satisfying one; nodes_explored counts assignments
/// checked. Throws TooLarge above max_vars.
OracleResult solve_enumerate(const Instance& inst, Var max_vars = kEnumerateMaxVars);

/// Backtracking search with unit propagation. Branches on the lowest
/// unassigned variable, false first; nodes_explored counts decisions.
OracleResult solve_dpll(const Instance& inst);

/// Width-n clauses subsumed by at least one clause of inst, sorted.
/// Throws TooLarge above max_vars.
std::vector<Clause> full_expansion(const Instance& inst, Var max_vars = kFullExpansionMaxVars);

/// All 2^n width-n clauses are implied, i.e. every assignment is blocked.
bool is_unsat_by_full_cover(const Instance& inst, Var max_vars = kFullExpansionMaxVars);

struct UnitReduction {
  Clause positive;  // [keep_var]
  Clause negative;  // [-keep_var]
  std::size_t resolutions = 0;
  /// Given steps for the 2^n clauses (ids 0..2^n-1) followed by one
  /// Resolve step per pairing; replayable with check_trace against
  /// Instance{n, full}.
  std::vector<DerivationStep> steps;
};

/// Eliminates every variable except keep_var, in descending order, by
/// resolving each clause holding the variable positively with its partner
/// that differs only in that literal. Throws IncompleteCover unless full is
/// exactly the 2^n distinct width-n clauses, BadParams for a bad keep_var.
UnitReduction reduce_full_to_units(const std::vector<Clause>& full, Var n, Var keep_var);

/// The premise steps used by units_imply_all: id 0 is Given [a], id 1 is
/// Given [-a].
std::vector<DerivationStep> unit_pair_premises(Var a_var);

/// Derives target from [a_var] and [-a_var] (ids 0 and 1, not included in
/// the result): a direct expansion when target mentions a_var, otherwise
/// [a, b] and [-a, rest...] resolved on a. Derived ids start at 2. Returns
/// no steps when target is one of the premises. Throws BadParams when
/// target or a_var exceed n.
std::vector<DerivationStep> units_imply_all(Var a_var, const Clause& target, Var n);

}  // namespace w3sat
