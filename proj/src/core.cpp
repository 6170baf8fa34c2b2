#include "w3sat/core.hpp"

#include <algorithm>
#include <limits>

namespace w3sat {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::EmptyClauseInput: return "EmptyClauseInput";
    case Errc::VarOutOfRange: return "VarOutOfRange";
    case Errc::WidthExceedsN: return "WidthExceedsN";
    case Errc::WidthTooLarge: return "WidthTooLarge";
    case Errc::MalformedTrace: return "MalformedTrace";
    case Errc::NotRefuted: return "NotRefuted";
    case Errc::TooLarge: return "TooLarge";
    case Errc::IncompleteCover: return "IncompleteCover";
    case Errc::BadConfig: return "BadConfig";
    case Errc::BadParams: return "BadParams";
    case Errc::NotACounterexample: return "NotACounterexample";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::SoundnessViolation: return "SoundnessViolation";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

Literal Literal::from_int(std::int64_t signed_var) {
  if (signed_var == 0 || signed_var > std::numeric_limits<std::int32_t>::max() ||
      signed_var < -std::numeric_limits<std::int32_t>::max()) {
    throw Error(Errc::VarOutOfRange, "literal " + std::to_string(signed_var));
  }
  return signed_var < 0 ? neg(static_cast<Var>(-signed_var)) : pos(static_cast<Var>(signed_var));
}

Clause Clause::from_canonical(std::span<const Literal> sorted) {
  if (sorted.empty()) throw Error(Errc::BadParams, "empty clause");
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i].var() == 0) throw Error(Errc::VarOutOfRange, "variable 0");
    if (i > 0 && sorted[i - 1].var() >= sorted[i].var()) {
      throw Error(Errc::BadParams, "literals not in canonical order");
    }
  }
  Clause c;
  c.lits_.assign(sorted.begin(), sorted.end());
  return c;
}

bool Clause::contains(Literal l) const { return std::binary_search(lits_.begin(), lits_.end(), l); }

bool Clause::mentions(Var v) const {
  return contains(pos(v)) || contains(neg(v));
}

std::string Clause::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < lits_.size(); ++i) {
    if (i > 0) out += ", ";
    out += std::to_string(lits_[i].to_int());
  }
  out += "]";
  return out;
}

std::size_t Clause::hash() const {
  // FNV-1a over literal codes.
  std::uint64_t h = 1469598103934665603ull;
  for (Literal l : lits_) {
    h ^= static_cast<std::uint32_t>(l.to_int());
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

std::variant<Clause, Tautology> canonicalize(std::span<const Literal> raw) {
  if (raw.empty()) throw Error(Errc::EmptyClauseInput, "clause has no literals");
  Clause c;
  c.lits_.assign(raw.begin(), raw.end());
  for (Literal l : c.lits_) {
    if (l.var() == 0) throw Error(Errc::VarOutOfRange, "variable 0");
  }
  std::sort(c.lits_.begin(), c.lits_.end());
  c.lits_.erase(std::unique(c.lits_.begin(), c.lits_.end()), c.lits_.end());
  // After sorting, x and -x are adjacent.
  for (std::size_t i = 1; i < c.lits_.size(); ++i) {
    if (c.lits_[i - 1].var() == c.lits_[i].var()) return Tautology{};
  }
  return c;
}

std::variant<Clause, Tautology> canonicalize(std::initializer_list<Literal> raw) {
  return canonicalize(std::span<const Literal>(raw.begin(), raw.size()));
}

Clause make_clause(std::span<const Literal> raw) {
  auto result = canonicalize(raw);
  if (std::holds_alternative<Tautology>(result)) throw Error(Errc::BadParams, "tautological clause");
  return std::get<Clause>(std::move(result));
}

Clause make_clause(std::initializer_list<Literal> raw) {
  return make_clause(std::span<const Literal>(raw.begin(), raw.size()));
}

Clause make_clause(std::initializer_list<int> signed_vars) {
  std::vector<Literal> lits;
  lits.reserve(signed_vars.size());
  for (int v : signed_vars) lits.push_back(Literal::from_int(v));
  return make_clause(std::span<const Literal>(lits));
}

Assignment Assignment::from_index(Var n, std::uint64_t index) {
  Assignment a(n);
  for (Var v = 1; v <= n; ++v) a.values_[v - 1] = ((index >> (n - v)) & 1u) != 0;
  return a;
}

std::string Assignment::to_string() const {
  std::string out;
  out.reserve(values_.size());
  for (bool b : values_) out += b ? '1' : '0';
  return out;
}

bool blocks(const Clause& c, const Assignment& a) {
  if (c.max_var() > a.size()) {
    throw Error(Errc::VarOutOfRange, "clause " + c.to_string() + " exceeds assignment length " + std::to_string(a.size()));
  }
  return std::none_of(c.begin(), c.end(), [&](Literal l) { return a.satisfies(l); });
}

std::uint64_t blocked_count(const Clause& c, Var n) {
  if (c.width() > n) {
    throw Error(Errc::WidthExceedsN, "width " + std::to_string(c.width()) + " > n=" + std::to_string(n));
  }
  const auto free_vars = n - c.width();
  if (free_vars >= 64) throw Error(Errc::WidthExceedsN, "2^" + std::to_string(free_vars) + " overflows");
  return std::uint64_t{1} << free_vars;
}

bool subsumes(const Clause& c, const Clause& d) {
  return c.width() <= d.width() && std::includes(d.begin(), d.end(), c.begin(), c.end());
}

Resolvent resolve(const Clause& c, const Clause& d) {
  Resolvent out;
  // Merge into a stack buffer; only a genuine resolvent is materialized.
  constexpr std::size_t kStack = 32;
  Literal stack_buf[kStack];
  std::vector<Literal> heap_buf;
  Literal* merged = stack_buf;
  if (c.width() + d.width() > kStack) {
    heap_buf.resize(c.width() + d.width());
    merged = heap_buf.data();
  }
  std::size_t size = 0;
  std::size_t clashes = 0;
  const Literal* i = c.lits_.data();
  const Literal* const i_end = i + c.width();
  const Literal* j = d.lits_.data();
  const Literal* const j_end = j + d.width();
  while (i != i_end && j != j_end) {
    const Var vi = i->var();
    const Var vj = j->var();
    if (vi < vj) {
      merged[size++] = *i++;
    } else if (vj < vi) {
      merged[size++] = *j++;
    } else if (*i == *j) {
      merged[size++] = *i++;
      ++j;
    } else {
      if (++clashes > 1) {
        out.kind = Resolvent::Kind::Tautology;
        return out;
      }
      out.pivot = vi;
      ++i;
      ++j;
    }
  }
  if (clashes == 0) {
    out.kind = Resolvent::Kind::NoPivot;
    return out;
  }
  while (i != i_end) merged[size++] = *i++;
  while (j != j_end) merged[size++] = *j++;
  if (size == 0) {
    out.kind = Resolvent::Kind::Empty;
    return out;
  }
  out.kind = Resolvent::Kind::Clause;
  out.clause.lits_.assign(merged, merged + size);
  return out;
}

std::vector<Clause> expansions(const Clause& c, Var n, std::size_t max_width) {
  if (c.width() > max_width || max_width > n || c.max_var() > n) {
    throw Error(Errc::BadParams, "expansions of " + c.to_string() + " with n=" + std::to_string(n) +
                                     ", max_width=" + std::to_string(max_width));
  }
  std::vector<Var> free_vars;
  for (Var v = 1; v <= n; ++v) {
    if (!c.mentions(v)) free_vars.push_back(v);
  }

  std::vector<Clause> out;
  std::vector<Literal> extra;
  // Choose an increasing run of free variables, each with both polarities.
  auto extend = [&](auto&& self, std::size_t start) -> void {
    if (!extra.empty()) {
      Clause e;
      e.lits_.assign(c.begin(), c.end());
      e.lits_.insert(e.lits_.end(), extra.begin(), extra.end());
      std::sort(e.lits_.begin(), e.lits_.end());
      out.push_back(std::move(e));
    }
    if (c.width() + extra.size() == max_width) return;
    for (std::size_t k = start; k < free_vars.size(); ++k) {
      for (bool negated : {false, true}) {
        extra.push_back(Literal(free_vars[k], negated));
        self(self, k + 1);
        extra.pop_back();
      }
    }
  };
  extend(extend, 0);
  std::sort(out.begin(), out.end());
  return out;
}

WidthBounds resolvent_width_bounds(std::size_t k, std::size_t m) {
  if (k == 0 || m == 0) throw Error(Errc::BadParams, "clause widths must be positive");
  return {std::max(k, m) - 1, k + m - 2};
}

std::size_t Instance::max_width() const {
  std::size_t w = 0;
  for (const auto& c : clauses) w = std::max(w, c.width());
  return w;
}

bool Instance::satisfied_by(const Assignment& a) const {
  return std::none_of(clauses.begin(), clauses.end(), [&](const Clause& c) { return blocks(c, a); });
}

void Instance::validate() const {
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    if (clauses[i].max_var() > n_vars) {
      throw Error(Errc::VarOutOfRange, "clause " + std::to_string(i) + " " + clauses[i].to_string() +
                                           " mentions a variable above n=" + std::to_string(n_vars));
    }
  }
}

Ingested ingest(Var n, const std::vector<std::vector<std::int64_t>>& raw) {
  Ingested out;
  out.instance.n_vars = n;
  std::vector<Literal> lits;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    lits.clear();
    for (auto v : raw[i]) {
      auto l = Literal::from_int(v);
      if (l.var() > n) {
        throw Error(Errc::VarOutOfRange, "clause " + std::to_string(i) + ": variable " + std::to_string(l.var()) +
                                             " exceeds n=" + std::to_string(n));
      }
      lits.push_back(l);
    }
    auto c = canonicalize(lits);
    if (std::holds_alternative<Tautology>(c)) {
      ++out.tautologies_dropped;
    } else {
      out.instance.clauses.push_back(std::get<Clause>(std::move(c)));
    }
  }
  return out;
}

}  // namespace w3sat
