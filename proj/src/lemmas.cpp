// Shape checkers for the width-reduction lemmas. Each trial builds premise
// clauses of width < k whose derivations pass through a width-k clause,
// then asks whether the same target is reachable (or subsumed) while only
// ever storing clauses of width <= k-1.

#include <algorithm>
#include <unordered_set>

#include "w3sat/harness.hpp"
#include "w3sat/rng.hpp"

namespace w3sat {
namespace {

class Sampler {
 public:
  Sampler(std::uint64_t seed, std::size_t k, Var n) : rng_(seed), k_(k), n_(n) {}

  std::size_t k() const { return k_; }

  Literal literal_of(const Clause& c) { return c[uniform_below(rng_, c.width())]; }

  Var var_other_than(Var avoid) {
    Var v;
    do {
      v = static_cast<Var>(uniform_below(rng_, n_)) + 1;
    } while (v == avoid);
    return v;
  }

  Literal random_literal(Var v) { return Literal(v, coin(rng_)); }

  // Width drawn uniformly from [max(1, |required|), k-1]; the remaining
  // literals use fresh variables with random polarity.
  std::optional<Clause> short_clause(std::vector<Literal> required) {
    const std::size_t lo = std::max<std::size_t>(1, required.size());
    const std::size_t hi = k_ - 1;
    if (lo > hi) return std::nullopt;
    const std::size_t width = lo + uniform_below(rng_, hi - lo + 1);
    return extend(required, width);
  }

  // base plus `extra` literals, padded with random literals on unused
  // variables up to exactly `width`.
  std::optional<Clause> extend(std::vector<Literal> lits, std::size_t width) {
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    for (std::size_t i = 1; i < lits.size(); ++i) {
      if (lits[i - 1].var() == lits[i].var()) return std::nullopt;
    }
    if (lits.size() > width || width > n_) return std::nullopt;
    std::vector<Var> free;
    for (Var v = 1; v <= n_; ++v) {
      if (std::none_of(lits.begin(), lits.end(), [v](Literal l) { return l.var() == v; })) free.push_back(v);
    }
    while (lits.size() < width) {
      const auto pick = uniform_below(rng_, free.size());
      lits.push_back(random_literal(free[pick]));
      free.erase(free.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    return make_clause(std::span<const Literal>(lits));
  }

  std::optional<Clause> expand_to_k(const Clause& base, std::vector<Literal> extra = {}) {
    extra.insert(extra.end(), base.begin(), base.end());
    return extend(std::move(extra), k_);
  }

  std::vector<Literal> shuffled(std::vector<Literal> lits) {
    for (std::size_t i = lits.size(); i > 1; --i) std::swap(lits[i - 1], lits[uniform_below(rng_, i)]);
    return lits;
  }

  // Some variable absent from c, if any.
  std::optional<Var> fresh_var(const Clause& c) {
    if (c.width() >= n_) return std::nullopt;
    Var v;
    do {
      v = static_cast<Var>(uniform_below(rng_, n_)) + 1;
    } while (c.mentions(v));
    return v;
  }

  std::uint64_t below(std::uint64_t bound) { return uniform_below(rng_, bound); }
  bool flip() { return coin(rng_); }

 private:
  Rng rng_;
  std::size_t k_;
  Var n_;
};

struct Shape {
  std::vector<Clause> premises;
  Clause target;
};

// resolve(a, b) with the resulting width in [lo, hi].
std::optional<Clause> resolve_width(const Clause& a, const Clause& b, std::size_t lo, std::size_t hi) {
  auto r = resolve(a, b);
  if (!r.ok() || r.clause.width() < lo || r.clause.width() > hi) return std::nullopt;
  return r.clause;
}

// Splits a width-k clause W into A = S1 + p and B = S2 - p on a fresh
// pivot p, with S1 and S2 covering W and both A and B narrower than k, so
// that resolve(A, B) = W.
std::optional<std::array<Clause, 2>> split_wide(Sampler& s, const Clause& wide) {
  const std::size_t k = s.k();
  if (k < 4) return std::nullopt;  // each side needs at least two of W's literals
  auto pivot_var = s.fresh_var(wide);
  if (!pivot_var) return std::nullopt;
  const Literal pivot = s.random_literal(*pivot_var);
  auto lits = s.shuffled(std::vector<Literal>(wide.begin(), wide.end()));
  const std::size_t a = 2 + s.below(k - 3);  // |S1| in [2, k-2]
  const std::size_t overlap = s.below(a - 1);  // S2 also repeats up to a-2 literals of S1
  std::vector<Literal> s1(lits.begin(), lits.begin() + static_cast<std::ptrdiff_t>(a));
  std::vector<Literal> s2(lits.begin() + static_cast<std::ptrdiff_t>(a), lits.end());
  s2.insert(s2.end(), s1.begin(), s1.begin() + static_cast<std::ptrdiff_t>(overlap));
  s1.push_back(pivot);
  s2.push_back(~pivot);
  return std::array<Clause, 2>{make_clause(std::span<const Literal>(s1)), make_clause(std::span<const Literal>(s2))};
}

// A and B narrower than k resolve to E of width k.
std::optional<std::array<Clause, 3>> wide_pair(Sampler& s) {
  auto e = s.extend({}, s.k());
  if (!e) return std::nullopt;
  auto ab = split_wide(s, *e);
  if (!ab) return std::nullopt;
  return std::array<Clause, 3>{(*ab)[0], (*ab)[1], *e};
}

// A clause clashing with `wide` on one literal and sharing `shared` of its
// other literals, padded with fresh literals to `width`.
std::optional<Clause> clashing_partner(Sampler& s, const Clause& wide, std::size_t shared, std::size_t width) {
  auto lits = s.shuffled(std::vector<Literal>(wide.begin(), wide.end()));
  std::vector<Literal> out{~lits[0]};
  if (shared > lits.size() - 1) return std::nullopt;
  out.insert(out.end(), lits.begin() + 1, lits.begin() + 1 + static_cast<std::ptrdiff_t>(shared));
  return s.extend(std::move(out), width);
}

// A, B <k resolve to E of width k; C <k resolves with E to D of width k-1 or k.
std::optional<Shape> shape_5_11(Sampler& s) {
  auto ab = wide_pair(s);
  if (!ab) return std::nullopt;
  const auto& [a, b, e] = *ab;
  // D = (E - l) + (C's fresh literals), so C may add at most one fresh literal.
  const std::size_t fresh = s.flip() ? 1 : 0;
  const std::size_t shared = s.below(s.k() - 1 - fresh);
  auto c = clashing_partner(s, e, shared, 1 + shared + fresh);
  if (!c) return std::nullopt;
  auto d = resolve_width(*c, e, s.k() - 1, s.k());
  if (!d) return std::nullopt;
  return Shape{{a, b, *c}, *d};
}

// A <k expands to B of width k; B and C <k resolve to D of width k-1 or k.
std::optional<Shape> shape_5_12(Sampler& s) {
  auto a = s.short_clause({});
  if (!a) return std::nullopt;
  auto b = s.expand_to_k(*a);
  if (!b) return std::nullopt;
  auto c = s.short_clause({~s.literal_of(*b)});
  if (!c) return std::nullopt;
  auto d = resolve_width(*b, *c, s.k() - 1, s.k());
  if (!d) return std::nullopt;
  return Shape{{*a, *c}, *d};
}

// A, B -> E and C, D -> F, both of width k; E and F resolve to G of width k-1 or k.
std::optional<Shape> shape_5_17(Sampler& s) {
  auto ab = wide_pair(s);
  if (!ab) return std::nullopt;
  const auto& [a, b, e] = *ab;
  // |G| = 2(k-1) - shared, so F shares k-2 or k-1 literals with E.
  auto f = clashing_partner(s, e, s.k() - 2 + s.below(2), s.k());
  if (!f) return std::nullopt;
  auto cd = split_wide(s, *f);
  if (!cd) return std::nullopt;
  auto g = resolve_width(e, *f, s.k() - 1, s.k());
  if (!g) return std::nullopt;
  return Shape{{a, b, (*cd)[0], (*cd)[1]}, *g};
}

// A, B -> D of width k; C <k expands to E of width k; D and E resolve to F of width k-1 or k.
std::optional<Shape> shape_5_18(Sampler& s) {
  auto ab = wide_pair(s);
  if (!ab) return std::nullopt;
  const auto& [a, b, d] = *ab;
  auto e = clashing_partner(s, d, s.k() - 2 + s.below(2), s.k());
  if (!e) return std::nullopt;
  // C is any proper nonempty subset of E; the clashing literal may or may
  // not be among the expansion literals.
  auto lits = s.shuffled(std::vector<Literal>(e->begin(), e->end()));
  lits.resize(1 + s.below(s.k() - 1));
  const Clause c = make_clause(std::span<const Literal>(lits));
  auto f = resolve_width(d, *e, s.k() - 1, s.k());
  if (!f) return std::nullopt;
  return Shape{{a, b, c}, *f};
}

// A, B <k expand to C, D of width k; C and D resolve to E of width k-1 or k.
std::optional<Shape> shape_5_19(Sampler& s) {
  auto c = s.extend({}, s.k());
  if (!c) return std::nullopt;
  auto d = clashing_partner(s, *c, s.k() - 2 + s.below(2), s.k());
  if (!d) return std::nullopt;
  // A and B are proper nonempty subsets; the clashing variable may lie in
  // both, in one, or only among the expansion literals.
  auto subset = [&](const Clause& full) {
    auto lits = s.shuffled(std::vector<Literal>(full.begin(), full.end()));
    lits.resize(1 + s.below(s.k() - 1));
    return make_clause(std::span<const Literal>(lits));
  };
  const Clause a = subset(*c);
  const Clause b = subset(*d);
  auto e = resolve_width(*c, *d, s.k() - 1, s.k());
  if (!e) return std::nullopt;
  return Shape{{a, b}, *e};
}

std::optional<Shape> sample_shape(LemmaId lemma, Sampler& s) {
  switch (lemma) {
    case LemmaId::L5_11: return shape_5_11(s);
    case LemmaId::L5_12: return shape_5_12(s);
    case LemmaId::L5_17: return shape_5_17(s);
    case LemmaId::L5_18: return shape_5_18(s);
    case LemmaId::L5_19: return shape_5_19(s);
  }
  return std::nullopt;
}

void check_params(std::size_t k, Var n) {
  if (k < 3 || k > n || n > 10) {
    throw Error(Errc::BadParams, "need 3 <= k <= n <= 10, got k=" + std::to_string(k) + ", n=" + std::to_string(n));
  }
}

}  // namespace

std::string_view to_string(LemmaId id) {
  switch (id) {
    case LemmaId::L5_11: return "5.11";
    case LemmaId::L5_12: return "5.12";
    case LemmaId::L5_17: return "5.17";
    case LemmaId::L5_18: return "5.18";
    case LemmaId::L5_19: return "5.19";
  }
  return "?";
}

std::optional<LemmaId> parse_lemma_id(std::string_view text) {
  for (LemmaId id : kAllLemmas) {
    if (to_string(id) == text) return id;
  }
  return std::nullopt;
}

std::vector<Clause> bounded_closure(std::span<const Clause> premises, Var n, std::size_t max_width, bool with_expansion,
                                    bool* empty_derived) {
  std::vector<Clause> clauses;
  std::unordered_set<Clause, ClauseHash> seen;
  bool empty = false;
  auto add = [&](const Clause& c) {
    if (seen.insert(c).second) clauses.push_back(c);
  };
  for (const auto& p : premises) add(p);
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      auto r = resolve(clauses[i], clauses[j]);
      if (r.kind == Resolvent::Kind::Empty) empty = true;
      if (r.ok() && r.clause.width() <= max_width) add(r.clause);
    }
    if (with_expansion && clauses[i].width() < max_width) {
      const Clause base = clauses[i];
      for (const auto& e : expansions(base, n, std::min<std::size_t>(max_width, n))) add(e);
    }
  }
  if (empty_derived) *empty_derived = empty;
  return clauses;
}

bool derivable_at_width(std::span<const Clause> premises, const Clause& target, Var n, std::size_t max_width,
                        bool with_expansion) {
  bool empty = false;
  const auto closure = bounded_closure(premises, n, max_width, with_expansion, &empty);
  // The empty clause subsumes every clause.
  if (empty) return true;
  return std::any_of(closure.begin(), closure.end(), [&](const Clause& c) { return subsumes(c, target); });
}

LemmaTrial run_lemma_trial(LemmaId lemma, std::size_t k, Var n, std::uint64_t trial_seed) {
  check_params(k, n);
  Sampler sampler(trial_seed, k, n);
  LemmaTrial trial;
  trial.witness.trial_seed = trial_seed;
  auto shape = sample_shape(lemma, sampler);
  if (!shape) return trial;
  trial.witness.premises = std::move(shape->premises);
  trial.witness.target = std::move(shape->target);
  trial.outcome = derivable_at_width(trial.witness.premises, trial.witness.target, n, k - 1)
                      ? LemmaTrial::Outcome::Derived
                      : LemmaTrial::Outcome::Failed;
  return trial;
}

LemmaShapeReport check_lemma_shape(LemmaId lemma, std::size_t k, Var n, std::uint64_t trials, std::uint64_t seed) {
  check_params(k, n);
  LemmaShapeReport report;
  report.lemma = lemma;
  report.k = k;
  report.n = n;
  report.trials = trials;
  for (std::uint64_t t = 0; t < trials; ++t) {
    auto trial = run_lemma_trial(lemma, k, n, child_seed(seed, t));
    switch (trial.outcome) {
      case LemmaTrial::Outcome::Degenerate:
        ++report.degenerate;
        break;
      case LemmaTrial::Outcome::Derived:
        ++report.premise_matches;
        ++report.target_derived_at_reduced_width;
        break;
      case LemmaTrial::Outcome::Failed:
        ++report.premise_matches;
        report.failures.push_back(std::move(trial.witness));
        break;
    }
  }
  return report;
}

}  // namespace w3sat
