#pragma once

// Clause algebra: literals, canonical clauses, blocking semantics and the
// three derivation primitives (subsumption, expansion, resolution).

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "w3sat/error.hpp"

namespace w3sat {

using Var = std::uint32_t;

/// A variable together with a polarity, stored in the signed DIMACS
/// convention (+v / -v).
class Literal {
 public:
  constexpr Literal() = default;
  constexpr Literal(Var var, bool negated)
      : code_(negated ? -static_cast<std::int32_t>(var) : static_cast<std::int32_t>(var)) {}

  /// Throws VarOutOfRange on 0.
  static Literal from_int(std::int64_t signed_var);

  constexpr Var var() const { return static_cast<Var>(code_ < 0 ? -code_ : code_); }
  constexpr bool negated() const { return code_ < 0; }
  constexpr bool positive() const { return code_ > 0; }
  constexpr std::int32_t to_int() const { return code_; }
  constexpr Literal operator~() const { return from_code(-code_); }

  /// Dense index: 2*var for positive, 2*var+1 for negated.
  constexpr std::size_t index() const { return 2 * static_cast<std::size_t>(var()) + (negated() ? 1 : 0); }

  /// Canonical order: by var, positive before negated.
  friend constexpr std::strong_ordering operator<=>(Literal a, Literal b) { return a.index() <=> b.index(); }
  friend constexpr bool operator==(Literal a, Literal b) = default;

 private:
  static constexpr Literal from_code(std::int32_t code) {
    Literal l;
    l.code_ = code;
    return l;
  }

  std::int32_t code_ = 0;
};

constexpr Literal pos(Var v) { return Literal(v, false); }
constexpr Literal neg(Var v) { return Literal(v, true); }

class Clause;
struct Tautology;
struct Resolvent;

/// Sorted, duplicate-free, tautology-free, nonempty set of literals.
/// The only ways to obtain one are canonicalize() and the checked factories,
/// so two equal clauses always share one representation.
class Clause {
 public:
  using Storage = boost::container::small_vector<Literal, 6>;

  std::size_t width() const { return lits_.size(); }
  std::span<const Literal> literals() const { return {lits_.data(), lits_.size()}; }
  auto begin() const { return lits_.begin(); }
  auto end() const { return lits_.end(); }
  Literal operator[](std::size_t i) const { return lits_[i]; }

  /// Builds a clause from literals already in canonical order (strictly
  /// increasing variables). Throws BadParams otherwise.
  static Clause from_canonical(std::span<const Literal> sorted);

  Var max_var() const { return lits_.back().var(); }
  bool contains(Literal l) const;
  bool mentions(Var v) const;

  /// "[1, -2, 3]" in the bracketed list notation.
  std::string to_string() const;

  friend bool operator==(const Clause& a, const Clause& b) {
    return std::equal(a.lits_.begin(), a.lits_.end(), b.lits_.begin(), b.lits_.end());
  }
  friend bool operator<(const Clause& a, const Clause& b) {
    if (a.width() != b.width()) return a.width() < b.width();
    return std::lexicographical_compare(a.lits_.begin(), a.lits_.end(), b.lits_.begin(), b.lits_.end());
  }

  std::size_t hash() const;

 private:
  friend std::variant<Clause, Tautology> canonicalize(std::span<const Literal> raw);
  friend Resolvent resolve(const Clause& c, const Clause& d);
  friend std::vector<Clause> expansions(const Clause& c, Var n, std::size_t max_width);

  Storage lits_;
};

struct ClauseHash {
  std::size_t operator()(const Clause& c) const { return c.hash(); }
};

/// Tag for clauses containing some variable in both polarities. They block
/// no assignment and are never stored.
struct Tautology {
  friend bool operator==(Tautology, Tautology) = default;
};

/// Collapse duplicate literals and sort. Throws EmptyClauseInput on an empty list.
std::variant<Clause, Tautology> canonicalize(std::span<const Literal> raw);
std::variant<Clause, Tautology> canonicalize(std::initializer_list<Literal> raw);

/// Like canonicalize() but throws BadParams for tautologies. Convenient in
/// tests and in constructions that cannot produce a tautology.
Clause make_clause(std::span<const Literal> raw);
Clause make_clause(std::initializer_list<Literal> raw);
Clause make_clause(std::initializer_list<int> signed_vars);

/// Assignment over variables 1..n. Bit i holds the value of variable i.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(Var n) : values_(n, false) {}

  /// Assignment number `index` in lexicographic order over (x1, ..., xn)
  /// with 0 < 1, so x1 is the most significant bit.
  static Assignment from_index(Var n, std::uint64_t index);

  Var size() const { return static_cast<Var>(values_.size()); }
  bool value(Var v) const { return values_.at(v - 1); }
  void set(Var v, bool value) { values_.at(v - 1) = value; }

  /// Literal is satisfied by this assignment.
  bool satisfies(Literal l) const { return value(l.var()) != l.negated(); }

  std::string to_string() const;  // "001" for x1=0, x2=0, x3=1

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<bool> values_;
};

/// True iff every literal of c evaluates to false under a.
/// Throws VarOutOfRange when c mentions a variable beyond a.size().
bool blocks(const Clause& c, const Assignment& a);

/// 2^(n - width). Throws WidthExceedsN when width(c) > n, or when the
/// count does not fit in 64 bits.
std::uint64_t blocked_count(const Clause& c, Var n);

/// literals(c) is a subset of literals(d).
bool subsumes(const Clause& c, const Clause& d);

struct Resolvent {
  enum class Kind {
    Clause,     // exactly one clashing variable, nonempty remainder
    NoPivot,    // no clashing variable
    Tautology,  // two or more clashing variables
    Empty,      // unit against its complement
  };

  Kind kind = Kind::NoPivot;
  Clause clause;      // valid only for Kind::Clause
  Var pivot = 0;      // valid for Kind::Clause and Kind::Empty

  bool ok() const { return kind == Kind::Clause; }
};

Resolvent resolve(const Clause& c, const Clause& d);

/// All canonical proper superclauses of c over variables 1..n with width at
/// most max_width, in canonical clause order. Throws BadParams unless
/// width(c) <= max_width <= n and c only mentions variables <= n.
std::vector<Clause> expansions(const Clause& c, Var n, std::size_t max_width);

struct WidthBounds {
  std::size_t lo;
  std::size_t hi;
  friend bool operator==(const WidthBounds&, const WidthBounds&) = default;
};

/// Range of possible widths for a non-tautological resolvent of clauses of
/// widths k and m: [max(k,m) - 1, k + m - 2].
WidthBounds resolvent_width_bounds(std::size_t k, std::size_t m);

/// A CNF formula over variables 1..n_vars. Clauses may repeat.
struct Instance {
  Var n_vars = 0;
  std::vector<Clause> clauses;

  std::size_t max_width() const;
  bool satisfied_by(const Assignment& a) const;
  /// Throws VarOutOfRange if any clause mentions a variable > n_vars.
  void validate() const;

  friend bool operator==(const Instance&, const Instance&) = default;
};

struct Ingested {
  Instance instance;
  std::size_t tautologies_dropped = 0;
};

/// Canonicalize raw signed-integer clauses over n variables, dropping
/// tautologies. Throws VarOutOfRange / EmptyClauseInput.
Ingested ingest(Var n, const std::vector<std::vector<std::int64_t>>& raw);

}  // namespace w3sat

template <>
struct std::hash<w3sat::Clause> {
  std::size_t operator()(const w3sat::Clause& c) const { return c.hash(); }
};
