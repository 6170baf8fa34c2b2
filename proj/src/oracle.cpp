#include "w3sat/oracle.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace w3sat {
namespace {

void guard(const Instance& inst, Var max_vars, const char* what) {
  if (inst.n_vars > max_vars) {
    throw Error(Errc::TooLarge, std::string(what) + ": n=" + std::to_string(inst.n_vars) + " exceeds the limit of " +
                                    std::to_string(max_vars));
  }
  inst.validate();
}

class Dpll {
 public:
  explicit Dpll(const Instance& inst) : inst_(inst), values_(inst.n_vars + 1, kUnassigned) {}

  OracleResult run() {
    if (search()) {
      Assignment a(inst_.n_vars);
      for (Var v = 1; v <= inst_.n_vars; ++v) a.set(v, values_[v] == kTrue);
      return OracleResult::sat(inst_, std::move(a), decisions_);
    }
    return OracleResult::unsat(decisions_);
  }

 private:
  static constexpr std::int8_t kUnassigned = -1;
  static constexpr std::int8_t kFalse = 0;
  static constexpr std::int8_t kTrue = 1;

  std::int8_t eval(Literal l) const {
    auto v = values_[l.var()];
    if (v == kUnassigned) return kUnassigned;
    return (v == kTrue) != l.negated() ? kTrue : kFalse;
  }

  void assign(Literal l) {
    values_[l.var()] = l.negated() ? kFalse : kTrue;
    trail_.push_back(l.var());
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      values_[trail_.back()] = kUnassigned;
      trail_.pop_back();
    }
  }

  // Unit propagation to fixpoint; false on a falsified clause.
  bool propagate() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& c : inst_.clauses) {
        std::size_t open = 0;
        Literal last;
        bool satisfied = false;
        for (Literal l : c) {
          auto e = eval(l);
          if (e == kTrue) {
            satisfied = true;
            break;
          }
          if (e == kUnassigned) {
            ++open;
            last = l;
          }
        }
        if (satisfied) continue;
        if (open == 0) return false;
        if (open == 1) {
          assign(last);
          changed = true;
        }
      }
    }
    return true;
  }

  bool search() {
    const std::size_t mark = trail_.size();
    if (!propagate()) {
      undo(mark);
      return false;
    }
    Var branch = 0;
    for (Var v = 1; v <= inst_.n_vars; ++v) {
      if (values_[v] == kUnassigned) {
        branch = v;
        break;
      }
    }
    if (branch == 0) return true;
    for (bool value : {false, true}) {
      ++decisions_;
      const std::size_t before = trail_.size();
      assign(Literal(branch, !value));
      if (search()) return true;
      undo(before);
    }
    undo(mark);
    return false;
  }

  const Instance& inst_;
  std::vector<std::int8_t> values_;
  std::vector<Var> trail_;
  std::uint64_t decisions_ = 0;
};

Clause complete(const Clause& c, Var n, std::uint64_t polarity_bits) {
  std::vector<Literal> lits;
  lits.reserve(n);
  auto it = c.begin();
  std::size_t free_index = 0;
  for (Var v = 1; v <= n; ++v) {
    if (it != c.end() && it->var() == v) {
      lits.push_back(*it++);
    } else {
      lits.emplace_back(v, ((polarity_bits >> free_index++) & 1u) != 0);
    }
  }
  return Clause::from_canonical(lits);
}

Clause without_var(const Clause& c, Var v) {
  std::vector<Literal> lits;
  for (Literal l : c) {
    if (l.var() != v) lits.push_back(l);
  }
  return Clause::from_canonical(lits);
}

}  // namespace

std::string_view to_string(OracleResult::Status s) { return s == OracleResult::Status::Sat ? "SAT" : "UNSAT"; }

OracleResult OracleResult::sat(const Instance& inst, Assignment witness, std::uint64_t nodes) {
  if (witness.size() != inst.n_vars || !inst.satisfied_by(witness)) {
    throw Error(Errc::Internal, "oracle witness does not satisfy the instance");
  }
  return OracleResult(Status::Sat, std::move(witness), nodes);
}

OracleResult solve_enumerate(const Instance& inst, Var max_vars) {
  guard(inst, std::min(max_vars, Var{62}), "solve_enumerate");
  const Var n = inst.n_vars;
  // Clause blocks assignment a iff (a & mask) == falsifying.
  struct Pattern {
    std::uint64_t mask = 0;
    std::uint64_t falsifying = 0;
  };
  std::vector<Pattern> patterns;
  patterns.reserve(inst.clauses.size());
  for (const auto& c : inst.clauses) {
    Pattern p;
    for (Literal l : c) {
      const std::uint64_t bit = std::uint64_t{1} << (n - l.var());
      p.mask |= bit;
      if (l.negated()) p.falsifying |= bit;
    }
    patterns.push_back(p);
  }
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t a = 0; a < total; ++a) {
    const bool blocked = std::any_of(patterns.begin(), patterns.end(), [a](const Pattern& p) { return (a & p.mask) == p.falsifying; });
    if (!blocked) return OracleResult::sat(inst, Assignment::from_index(n, a), a + 1);
  }
  return OracleResult::unsat(total);
}

OracleResult solve_dpll(const Instance& inst) {
  inst.validate();
  return Dpll(inst).run();
}

std::vector<Clause> full_expansion(const Instance& inst, Var max_vars) {
  guard(inst, std::min(max_vars, Var{30}), "full_expansion");
  const Var n = inst.n_vars;
  std::unordered_set<Clause, ClauseHash> out;
  for (const auto& c : inst.clauses) {
    const std::uint64_t completions = std::uint64_t{1} << (n - c.width());
    for (std::uint64_t bits = 0; bits < completions; ++bits) out.insert(complete(c, n, bits));
  }
  std::vector<Clause> sorted(out.begin(), out.end());
  std::sort(sorted.begin(), sorted.end());
  return sorted;
}

bool is_unsat_by_full_cover(const Instance& inst, Var max_vars) {
  return full_expansion(inst, max_vars).size() == (std::uint64_t{1} << inst.n_vars);
}

UnitReduction reduce_full_to_units(const std::vector<Clause>& full, Var n, Var keep_var) {
  if (keep_var < 1 || keep_var > n) throw Error(Errc::BadParams, "keep_var must lie in 1..n");
  if (n > kFullExpansionMaxVars) throw Error(Errc::TooLarge, "n=" + std::to_string(n));
  const std::uint64_t expected = std::uint64_t{1} << n;
  std::unordered_map<Clause, ClauseId, ClauseHash> current;
  for (const auto& c : full) {
    if (c.width() != n || c.max_var() > n) throw Error(Errc::IncompleteCover, "clause " + c.to_string() + " is not of width n");
    current.emplace(c, 0);
  }
  if (full.size() != expected || current.size() != expected) {
    throw Error(Errc::IncompleteCover, std::to_string(current.size()) + " distinct clauses, expected " + std::to_string(expected));
  }

  UnitReduction out;
  std::vector<Clause> ordered = full;
  std::sort(ordered.begin(), ordered.end());
  for (const auto& c : ordered) {
    const auto id = static_cast<ClauseId>(out.steps.size());
    current[c] = id;
    out.steps.push_back({id, Rule::Given, {}, c});
  }

  for (Var t = n; t >= 1; --t) {
    if (t == keep_var) continue;
    // Round order: ascending id among clauses holding +t.
    std::vector<std::pair<ClauseId, const Clause*>> positives;
    for (const auto& [c, id] : current) {
      if (c.contains(pos(t))) positives.emplace_back(id, &c);
    }
    std::sort(positives.begin(), positives.end());
    std::unordered_map<Clause, ClauseId, ClauseHash> next;
    for (const auto& [id, c] : positives) {
      std::vector<Literal> partner_lits(c->begin(), c->end());
      for (auto& l : partner_lits) {
        if (l.var() == t) l = ~l;
      }
      auto partner = current.find(Clause::from_canonical(partner_lits));
      if (partner == current.end()) throw Error(Errc::IncompleteCover, "no partner for " + c->to_string());
      auto r = resolve(*c, partner->first);
      if (!r.ok() || !(r.clause == without_var(*c, t))) throw Error(Errc::Internal, "unexpected resolvent");
      const auto new_id = static_cast<ClauseId>(out.steps.size());
      const auto [lo, hi] = std::minmax(id, partner->second);
      out.steps.push_back({new_id, Rule::Resolve, {lo, hi}, r.clause});
      next.emplace(r.clause, new_id);
      ++out.resolutions;
    }
    if (next.size() * 2 != current.size()) throw Error(Errc::Internal, "elimination round lost clauses");
    current = std::move(next);
    if (t == 1) break;
  }
  out.positive = make_clause({pos(keep_var)});
  out.negative = make_clause({neg(keep_var)});
  if (current.size() != 2 || !current.contains(out.positive) || !current.contains(out.negative)) {
    throw Error(Errc::Internal, "elimination did not end in the unit pair");
  }
  return out;
}

std::vector<DerivationStep> unit_pair_premises(Var a_var) {
  return {{0, Rule::Given, {}, make_clause({pos(a_var)})}, {1, Rule::Given, {}, make_clause({neg(a_var)})}};
}

std::vector<DerivationStep> units_imply_all(Var a_var, const Clause& target, Var n) {
  if (a_var < 1 || a_var > n || target.max_var() > n) throw Error(Errc::BadParams, "a_var and target must lie within 1..n");
  std::vector<DerivationStep> steps;
  auto add = [&](Rule rule, std::vector<ClauseId> parents, Clause c) {
    const auto id = static_cast<ClauseId>(steps.size() + 2);
    steps.push_back({id, rule, std::move(parents), std::move(c)});
    return id;
  };

  for (ClauseId premise : {ClauseId{0}, ClauseId{1}}) {
    const Literal unit = premise == 0 ? pos(a_var) : neg(a_var);
    if (target.contains(unit)) {
      if (target.width() > 1) add(Rule::Expand, {premise}, target);
      return steps;
    }
  }

  // [a, b] from [a]; [-a, rest...] from [-a] unless rest is empty.
  const Literal b = target[0];
  const ClauseId with_b = add(Rule::Expand, {0}, make_clause({pos(a_var), b}));
  std::vector<Literal> rest(target.begin() + 1, target.end());
  ClauseId with_rest = 1;
  if (!rest.empty()) {
    rest.push_back(neg(a_var));
    with_rest = add(Rule::Expand, {1}, make_clause(std::span<const Literal>(rest)));
  }
  add(Rule::Resolve, {std::min(with_b, with_rest), std::max(with_b, with_rest)}, target);
  return steps;
}

}  // namespace w3sat
