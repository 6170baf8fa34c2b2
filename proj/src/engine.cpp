#include "w3sat/engine.hpp"

#include <algorithm>
#include <limits>

namespace w3sat {
namespace {

constexpr ClauseId kNoClause = std::numeric_limits<ClauseId>::max();
constexpr Var kMaxEngineVar = (Var{1} << 20) - 1;  // three literal indices packed in 63 bits

std::uint64_t choose(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

ClauseDb::Origin given() { return {}; }

// x must precede y.
std::uint64_t pair_key(Literal x, Literal y) { return (std::uint64_t{x.index()} << 32) | y.index(); }

ClauseDb::Origin derived(Rule rule, std::initializer_list<ClauseId> parents) {
  ClauseDb::Origin o;
  o.rule = rule;
  for (ClauseId p : parents) o.parents[o.parent_count++] = p;
  return o;
}

class Saturator {
 public:
  Saturator(const Instance& inst, const EngineOptions& opts) : inst_(inst), opts_(opts), db_(inst.n_vars) {
    max_passes_ = opts.max_passes.value_or(db_.bound() + 1);
  }

  Verdict run() {
    for (const auto& c : inst_.clauses) {
      if (c.width() > kEngineWidth) {
        throw Error(Errc::WidthTooLarge, "input clause " + c.to_string() + " has width " + std::to_string(c.width()));
      }
    }
    inst_.validate();
    for (const auto& c : inst_.clauses) {
      add(c, given(), !opts_.conformance_sweep);
      if (refuted_) return finish();
    }
    if (opts_.conformance_sweep) {
      sweep();
    } else {
      worklist();
    }
    return finish();
  }

 private:
  // Inserts c; with check_units, a new unit whose complement is present
  // ends the run.
  void add(const Clause& c, const ClauseDb::Origin& origin, bool check_units) {
    auto [id, fresh] = db_.insert(c, origin);
    if (!fresh) return;
    added_in_pass_ = true;
    if (origin.rule != Rule::Given) ++stats_.clauses_added;
    if (check_units && c.width() == 1) {
      if (auto other = db_.unit(~c[0])) {
        refuted_ = true;
        var_ = c[0].var();
        units_ = {*other, id};
      }
    }
  }

  void add(std::span<const Literal> lits, const ClauseDb::Origin& origin, bool check_units) {
    if (db_.find(lits)) return;
    add(Clause::from_canonical(lits), origin, check_units);
  }

  void next_pass() {
    if (++stats_.passes > max_passes_) {
      throw Error(Errc::Internal, "saturation exceeded " + std::to_string(max_passes_) + " passes");
    }
  }

  // Resolves the pair and files the result. `c` is the clause being processed.
  void try_resolve(ClauseId c, ClauseId d, bool check_units) {
    ++stats_.resolutions_attempted;
    const Clause& a = db_.clause(c);
    const Clause& b = db_.clause(d);
    const auto [lo, hi] = std::minmax(c, d);
    Literal buf[kEngineWidth];
    switch (resolve_narrow(a, b, buf)) {
      case Narrow::Fits:
        add(std::span<const Literal>(buf, narrow_width_), derived(Rule::Resolve, {lo, hi}), check_units);
        return;
      case Narrow::Wide:
        if (opts_.reduce_wide_resolvents) {
          auto r = resolve(a, b);
          if (r.ok() && r.clause.width() == kEngineWidth + 1) reduce_wide(r.clause, lo, hi, check_units);
        }
        return;
      case Narrow::None:
        return;  // no pivot, tautology, or empty (both units already stored)
    }
  }

  enum class Narrow { Fits, Wide, None };

  // Merge walk specialised to clauses of width <= 3 that gives up as soon
  // as the resolvent would be wider than 3.
  Narrow resolve_narrow(const Clause& a, const Clause& b, Literal* out) {
    std::size_t i = 0, j = 0, size = 0, clashes = 0;
    const std::size_t na = a.width(), nb = b.width();
    bool wide = false;
    auto push = [&](Literal l) {
      if (size == kEngineWidth) {
        wide = true;
      } else {
        out[size++] = l;
      }
    };
    while (i < na && j < nb) {
      const Var vi = a[i].var(), vj = b[j].var();
      if (vi < vj) {
        push(a[i++]);
      } else if (vj < vi) {
        push(b[j++]);
      } else if (a[i] == b[j]) {
        push(a[i++]);
        ++j;
      } else {
        if (++clashes > 1) return Narrow::None;
        ++i;
        ++j;
      }
    }
    if (clashes == 0) return Narrow::None;
    while (i < na) push(a[i++]);
    while (j < nb) push(b[j++]);
    if (wide) return Narrow::Wide;
    if (size == 0) return Narrow::None;
    narrow_width_ = size;
    return Narrow::Fits;
  }

  void reduce_wide(const Clause& wide, ClauseId a, ClauseId b, bool check_units) {
    std::vector<ClauseId> partners;
    for (Literal l : wide) {
      auto occ = db_.occurrences(~l);
      partners.insert(partners.end(), occ.begin(), occ.end());
    }
    std::sort(partners.begin(), partners.end());
    partners.erase(std::unique(partners.begin(), partners.end()), partners.end());
    for (ClauseId e : partners) {
      ++stats_.resolutions_attempted;
      auto r = resolve(wide, db_.clause(e));
      if (r.ok() && r.clause.width() <= kEngineWidth) {
        add(r.clause, derived(Rule::ResolveChain, {a, b, e}), check_units);
        if (refuted_) return;
      }
    }
  }

  void expand(ClauseId c, bool check_units) {
    if (!opts_.expansion) return;
    const Clause base = db_.clause(c);
    const std::size_t cap = std::min<std::size_t>(kEngineWidth, inst_.n_vars);
    if (base.width() >= cap) return;
    for (const auto& e : expansions(base, inst_.n_vars, cap)) {
      add(e, derived(Rule::Expand, {c}), check_units);
      if (refuted_) return;
    }
  }

  // Each clause is processed once, in id order, against every clause with a
  // smaller id that holds a complementary literal. Every pair is therefore
  // tried exactly once, after both members exist, which yields the same
  // fixpoint as re-scanning all pairs until nothing changes.
  void worklist() {
    std::size_t next = 0;
    std::vector<ClauseId> partners;
    std::vector<ClauseId> stamp;  // stamp[d] == c + 1 once d is collected for c
    while (next < db_.size()) {
      next_pass();
      const std::size_t pass_end = db_.size();
      stamp.resize(pass_end, 0);
      for (; next < pass_end; ++next) {
        const auto c = static_cast<ClauseId>(next);
        collect_partners(c, stamp, partners);
        for (ClauseId d : partners) {
          try_resolve(c, d, true);
          if (refuted_) return;
        }
        expand(c, true);
        if (refuted_) return;
      }
    }
    // The final pass processed clauses but derived nothing new.
  }

  // Clauses older than c that share a complementary literal with it. A
  // width-3 clause can only yield a width <= 3 resolvent with a narrower
  // partner or with a width-3 partner that also shares one of its other
  // literals, so unless wide resolvents are wanted the scan is limited to
  // those.
  void collect_partners(ClauseId c, std::vector<ClauseId>& stamp, std::vector<ClauseId>& partners) const {
    partners.clear();
    auto take = [&](std::span<const ClauseId> ids) {
      for (ClauseId d : ids) {
        if (d >= c) break;
        if (stamp[d] == c + 1) continue;
        stamp[d] = c + 1;
        partners.push_back(d);
      }
    };
    const Clause& clause = db_.clause(c);
    if (clause.width() < kEngineWidth || opts_.reduce_wide_resolvents) {
      for (Literal l : clause) take(db_.occurrences(~l));
      return;
    }
    for (std::size_t i = 0; i < kEngineWidth; ++i) {
      const Literal pivot = ~clause[i];
      take(db_.narrow_occurrences(pivot));
      for (std::size_t j = 0; j < kEngineWidth; ++j) {
        if (j != i) take(db_.pair_occurrences(pivot, clause[j]));
      }
    }
  }

  void sweep() {
    do {
      next_pass();
      added_in_pass_ = false;
      for (std::size_t c = 0; c < db_.size(); ++c) {
        for (std::size_t d = 0; d < db_.size(); ++d) {
          try_resolve(static_cast<ClauseId>(c), static_cast<ClauseId>(d), false);
        }
        expand(static_cast<ClauseId>(c), false);
      }
      check_unit_pairs();
      if (refuted_) return;
    } while (added_in_pass_);
  }

  void check_unit_pairs() {
    auto units = db_.by_width(1);
    for (ClauseId e : units) {
      for (ClauseId f : units) {
        if (db_.clause(e)[0] == ~db_.clause(f)[0]) {
          refuted_ = true;
          var_ = db_.clause(e)[0].var();
          units_ = {std::min(e, f), std::max(e, f)};
          return;
        }
      }
    }
  }

  Verdict finish() {
    Verdict v;
    stats_.db_size = db_.size();
    stats_.db_bound = db_.bound();
    if (refuted_) {
      v.kind = Verdict::Kind::Refuted;
      v.var = var_;
      v.trace = ancestry();
    }
    v.stats = stats_;
    if (opts_.keep_database) {
      v.database.reserve(db_.size());
      for (std::size_t i = 0; i < db_.size(); ++i) v.database.push_back(db_.clause(static_cast<ClauseId>(i)));
    }
    return v;
  }

  std::vector<DerivationStep> ancestry() const {
    std::vector<bool> seen(db_.size(), false);
    std::vector<ClauseId> stack = {units_.first, units_.second};
    while (!stack.empty()) {
      ClauseId id = stack.back();
      stack.pop_back();
      if (seen[id]) continue;
      seen[id] = true;
      const auto& o = db_.origin(id);
      for (std::size_t i = 0; i < o.parent_count; ++i) stack.push_back(o.parents[i]);
    }
    std::vector<DerivationStep> trace;
    for (std::size_t id = 0; id < seen.size(); ++id) {
      if (seen[id]) trace.push_back(db_.step(static_cast<ClauseId>(id)));
    }
    return trace;
  }

  const Instance& inst_;
  EngineOptions opts_;
  ClauseDb db_;
  EngineStats stats_;
  std::uint64_t max_passes_ = 0;
  bool added_in_pass_ = false;
  bool refuted_ = false;
  Var var_ = 0;
  std::pair<ClauseId, ClauseId> units_{};
  std::size_t narrow_width_ = 0;
};

}  // namespace

std::uint64_t db_bound(Var n) { return 8 * choose(n, 3) + 4 * choose(n, 2) + 2 * std::uint64_t{n}; }

std::string_view to_string(Rule rule) {
  switch (rule) {
    case Rule::Given: return "given";
    case Rule::Resolve: return "resolve";
    case Rule::Expand: return "expand";
    case Rule::ResolveChain: return "resolve2";
  }
  return "unknown";
}

ClauseDb::ClauseDb(Var n) : n_(n), bound_(db_bound(n)), occurrences_(2 * (std::size_t{n} + 1)), narrow_occurrences_(2 * (std::size_t{n} + 1)), unit_ids_(2 * (std::size_t{n} + 1), kNoClause) {
  if (n > kMaxEngineVar) throw Error(Errc::TooLarge, "engine supports at most " + std::to_string(kMaxEngineVar) + " variables");
}

std::uint64_t ClauseDb::key(const Clause& c) {
  std::uint64_t k = 0;
  for (Literal l : c) k = (k << 21) | l.index();
  return k;
}

std::optional<ClauseId> ClauseDb::find(const Clause& c) const { return find(c.literals()); }

std::optional<ClauseId> ClauseDb::find(std::span<const Literal> sorted) const {
  if (sorted.size() > kEngineWidth) return std::nullopt;
  std::uint64_t k = 0;
  for (Literal l : sorted) k = (k << 21) | l.index();
  auto it = index_.find(k);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::span<const ClauseId> ClauseDb::pair_occurrences(Literal x, Literal y) const {
  if (y < x) std::swap(x, y);
  auto it = pair_occurrences_.find(pair_key(x, y));
  if (it == pair_occurrences_.end()) return {};
  return it->second;
}

std::optional<ClauseId> ClauseDb::unit(Literal l) const {
  if (l.var() > n_ || unit_ids_[l.index()] == kNoClause) return std::nullopt;
  return unit_ids_[l.index()];
}

std::pair<ClauseId, bool> ClauseDb::insert(const Clause& c, const Origin& origin) {
  if (c.width() > kEngineWidth) {
    throw Error(Errc::WidthTooLarge, "clause " + c.to_string() + " is wider than " + std::to_string(kEngineWidth));
  }
  if (c.max_var() > n_) throw Error(Errc::VarOutOfRange, "clause " + c.to_string() + " exceeds n=" + std::to_string(n_));
  const auto id = static_cast<ClauseId>(clauses_.size());
  auto [it, fresh] = index_.try_emplace(key(c), id);
  if (!fresh) return {it->second, false};
  if (clauses_.size() + 1 > bound_) {
    index_.erase(it);
    throw Error(Errc::Internal, "clause database would exceed its bound of " + std::to_string(bound_));
  }
  for (std::size_t i = 0; i < origin.parent_count; ++i) {
    if (origin.parents[i] >= id) throw Error(Errc::Internal, "parent id not older than child");
  }
  clauses_.push_back(c);
  origins_.push_back(origin);
  by_width_[c.width() - 1].push_back(id);
  for (Literal l : c) occurrences_[l.index()].push_back(id);
  if (c.width() < kEngineWidth) {
    for (Literal l : c) narrow_occurrences_[l.index()].push_back(id);
  } else {
    pair_occurrences_[pair_key(c[0], c[1])].push_back(id);
    pair_occurrences_[pair_key(c[0], c[2])].push_back(id);
    pair_occurrences_[pair_key(c[1], c[2])].push_back(id);
  }
  if (c.width() == 1) unit_ids_[c[0].index()] = id;
  return {id, true};
}

DerivationStep ClauseDb::step(ClauseId id) const {
  const auto& o = origins_.at(id);
  DerivationStep s;
  s.id = id;
  s.rule = o.rule;
  s.parents.assign(o.parents.begin(), o.parents.begin() + o.parent_count);
  s.clause = clauses_[id];
  return s;
}

Verdict saturate(const Instance& inst, const EngineOptions& opts) { return Saturator(inst, opts).run(); }

}  // namespace w3sat
