#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "w3sat/engine.hpp"

namespace w3sat {
namespace {

CheckReport fail(ClauseId id, std::string reason) { return {false, id, std::move(reason)}; }

std::size_t expected_parents(Rule rule) {
  switch (rule) {
    case Rule::Given: return 0;
    case Rule::Expand: return 1;
    case Rule::Resolve: return 2;
    case Rule::ResolveChain: return 3;
  }
  return 0;
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out;
}

}  // namespace

CheckReport check_steps(const Instance& inst, std::span<const DerivationStep> steps) {
  const std::unordered_set<Clause, ClauseHash> givens(inst.clauses.begin(), inst.clauses.end());
  std::unordered_map<ClauseId, const Clause*> known;

  for (const auto& step : steps) {
    if (known.contains(step.id)) {
      throw Error(Errc::MalformedTrace, "duplicate step id " + std::to_string(step.id));
    }
    if (step.parents.size() != expected_parents(step.rule)) {
      throw Error(Errc::MalformedTrace, "step " + std::to_string(step.id) + " has " + std::to_string(step.parents.size()) +
                                            " parents for rule " + std::string(to_string(step.rule)));
    }
    std::vector<const Clause*> parents;
    for (ClauseId p : step.parents) {
      auto it = known.find(p);
      if (p >= step.id || it == known.end()) {
        throw Error(Errc::MalformedTrace, "step " + std::to_string(step.id) + " refers to unknown parent " + std::to_string(p));
      }
      parents.push_back(it->second);
    }
    if (step.clause.width() == 0) return fail(step.id, "empty clause");
    if (step.clause.max_var() > inst.n_vars) return fail(step.id, "clause mentions a variable beyond n");

    switch (step.rule) {
      case Rule::Given:
        if (!givens.contains(step.clause)) return fail(step.id, "given clause " + step.clause.to_string() + " is not in the instance");
        break;
      case Rule::Resolve: {
        auto r = resolve(*parents[0], *parents[1]);
        if (!r.ok() || !(r.clause == step.clause)) return fail(step.id, "clause is not the resolvent of its parents");
        break;
      }
      case Rule::ResolveChain: {
        auto mid = resolve(*parents[0], *parents[1]);
        if (!mid.ok()) return fail(step.id, "first resolution of the chain fails");
        auto r = resolve(mid.clause, *parents[2]);
        if (!r.ok() || !(r.clause == step.clause)) return fail(step.id, "clause is not the chained resolvent of its parents");
        break;
      }
      case Rule::Expand:
        if (!subsumes(*parents[0], step.clause) || *parents[0] == step.clause) {
          return fail(step.id, "clause is not a proper expansion of its parent");
        }
        break;
    }
    known.emplace(step.id, &step.clause);
  }
  return {};
}

CheckReport check_trace(const Instance& inst, Var var, std::span<const DerivationStep> steps) {
  if (steps.empty()) throw Error(Errc::MalformedTrace, "empty trace");
  auto report = check_steps(inst, steps);
  if (!report.ok) return report;
  const auto& last = steps.back();
  if (last.clause.width() != 1 || last.clause[0].var() != var) {
    return fail(last.id, "trace does not end in a unit clause on variable " + std::to_string(var));
  }
  const Clause opposite = make_clause({~last.clause[0]});
  for (const auto& s : steps) {
    if (s.clause == opposite) return report;
  }
  return fail(last.id, "opposite unit " + opposite.to_string() + " is missing from the trace");
}

CheckReport check_trace(const Instance& inst, const Verdict& verdict) {
  if (!verdict.refuted()) throw Error(Errc::NotRefuted, "verdict is Saturated");
  return check_trace(inst, verdict.var, verdict.trace);
}

std::string export_derivation_dag(std::span<const DerivationStep> steps) {
  std::ostringstream out;
  out << "digraph derivation {\n";
  out << "  rankdir=TB;\n";
  for (const auto& s : steps) {
    out << "  c" << s.id << " [label=\"" << dot_escape(s.clause.to_string()) << "\""
        << (s.rule == Rule::Given ? ", shape=box" : ", shape=ellipse") << "];\n";
  }
  for (const auto& s : steps) {
    for (ClauseId p : s.parents) {
      out << "  c" << p << " -> c" << s.id << " [label=\"" << to_string(s.rule) << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

std::string export_derivation_dag(const Verdict& verdict) {
  if (!verdict.refuted()) throw Error(Errc::NotRefuted, "only refutations have a derivation DAG");
  return export_derivation_dag(verdict.trace);
}

}  // namespace w3sat
