#pragma once

// Boolean relations given by explicit tuple tables, Gamma-formulas built from
// them, and closure-based Schaefer classification.
//
// Tuple encoding: bit i of a Tuple word holds coordinate i. In text, "01"
// means coordinate 0 is 0 and coordinate 1 is 1.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fptenum/errors.hpp"

namespace fptenum {

using Tuple = std::uint32_t;
inline constexpr std::size_t kMaxArity = 16;

class BooleanRelation {
 public:
  BooleanRelation() = default;

  BooleanRelation(std::size_t arity, std::vector<Tuple> tuples) : arity_(arity) {
    if (arity > kMaxArity) throw PreconditionError("relation arity above " + std::to_string(kMaxArity));
    const Tuple limit = Tuple{1} << arity;
    for (auto t : tuples)
      if (t >= limit) throw PreconditionError("tuple wider than relation arity");
    std::ranges::sort(tuples);
    auto dup = std::ranges::unique(tuples);
    tuples.erase(dup.begin(), dup.end());
    tuples_ = std::move(tuples);
  }

  // Tuples as strings of '0'/'1', one character per coordinate.
  static BooleanRelation from_strings(std::size_t arity, const std::vector<std::string>& rows) {
    std::vector<Tuple> tuples;
    for (const auto& row : rows) tuples.push_back(parse_tuple(arity, row));
    return BooleanRelation(arity, std::move(tuples));
  }

  static Tuple parse_tuple(std::size_t arity, std::string_view row) {
    if (row.size() != arity)
      throw PreconditionError("tuple '" + std::string(row) + "' does not have width " + std::to_string(arity));
    Tuple t = 0;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (row[i] == '1')
        t |= Tuple{1} << i;
      else if (row[i] != '0')
        throw PreconditionError("tuple '" + std::string(row) + "' contains a non-binary digit");
    }
    return t;
  }

  static std::string format_tuple(std::size_t arity, Tuple t) {
    std::string s(arity, '0');
    for (std::size_t i = 0; i < arity; ++i)
      if ((t >> i) & 1U) s[i] = '1';
    return s;
  }

  std::size_t arity() const noexcept { return arity_; }
  const std::vector<Tuple>& tuples() const noexcept { return tuples_; }
  std::size_t size() const noexcept { return tuples_.size(); }
  bool empty() const noexcept { return tuples_.empty(); }
  bool contains(Tuple t) const { return std::ranges::binary_search(tuples_, t); }
  Tuple full_mask() const noexcept { return arity_ == 0 ? 0 : static_cast<Tuple>((std::uint64_t{1} << arity_) - 1); }

  friend bool operator==(const BooleanRelation&, const BooleanRelation&) = default;

 private:
  std::size_t arity_ = 0;
  std::vector<Tuple> tuples_;
};

enum class Tristate { no, yes, unknown };

struct ClassFlags {
  bool zero_valid = false;
  bool one_valid = false;
  bool horn = false;
  bool dual_horn = false;
  bool bijunctive = false;
  bool affine = false;
  bool complementive = false;
  Tristate strongly_bijunctive = Tristate::unknown;

  friend bool operator==(const ClassFlags&, const ClassFlags&) = default;
};

namespace detail {

template <class Op>
bool closed_under_binary(const BooleanRelation& r, Op op) {
  for (auto a : r.tuples())
    for (auto b : r.tuples())
      if (!r.contains(op(a, b))) return false;
  return true;
}

template <class Op>
bool closed_under_ternary(const BooleanRelation& r, Op op) {
  const auto& ts = r.tuples();
  for (auto a : ts)
    for (auto b : ts)
      for (auto c : ts)
        if (!r.contains(op(a, b, c))) return false;
  return true;
}

inline bool bit(Tuple t, std::size_t i) { return (t >> i) & 1U; }

// Model set of the conjunction of every clause (u ∨ v), (u ≠ v), (u → v)
// over coordinates u, v (possibly equal) that all tuples of r satisfy.
inline bool defined_by_strong_2_clauses(const BooleanRelation& r) {
  const std::size_t a = r.arity();
  enum class Shape { or_, neq, imp };
  struct Clause {
    Shape shape;
    std::size_t u, v;
  };
  auto holds = [](const Clause& c, Tuple t) {
    bool x = bit(t, c.u), y = bit(t, c.v);
    switch (c.shape) {
      case Shape::or_: return x || y;
      case Shape::neq: return x != y;
      case Shape::imp: return !x || y;
    }
    return false;
  };
  std::vector<Clause> implied;
  for (std::size_t u = 0; u < a; ++u)
    for (std::size_t v = 0; v < a; ++v)
      for (auto shape : {Shape::or_, Shape::neq, Shape::imp}) {
        Clause c{shape, u, v};
        if (std::ranges::all_of(r.tuples(), [&](Tuple t) { return holds(c, t); })) implied.push_back(c);
      }
  const std::uint64_t total = std::uint64_t{1} << a;
  std::size_t models = 0;
  for (std::uint64_t t = 0; t < total; ++t) {
    if (std::ranges::all_of(implied, [&](const Clause& c) { return holds(c, static_cast<Tuple>(t)); })) {
      if (!r.contains(static_cast<Tuple>(t))) return false;
      ++models;
    }
  }
  return models == r.size();
}

}  // namespace detail

inline ClassFlags classify_relation(const BooleanRelation& r) {
  ClassFlags f;
  const Tuple ones = r.full_mask();
  f.zero_valid = r.contains(0);
  f.one_valid = r.contains(ones);
  f.horn = detail::closed_under_binary(r, [](Tuple a, Tuple b) { return a & b; });
  f.dual_horn = detail::closed_under_binary(r, [](Tuple a, Tuple b) { return a | b; });
  f.affine = detail::closed_under_ternary(r, [](Tuple a, Tuple b, Tuple c) { return a ^ b ^ c; });
  f.bijunctive =
      detail::closed_under_ternary(r, [](Tuple a, Tuple b, Tuple c) { return (a & b) | (a & c) | (b & c); });
  f.complementive = std::ranges::all_of(r.tuples(), [&](Tuple t) { return r.contains(t ^ ones); });
  if (!f.bijunctive)
    f.strongly_bijunctive = Tristate::no;
  else
    f.strongly_bijunctive = detail::defined_by_strong_2_clauses(r) ? Tristate::yes : Tristate::unknown;
  return f;
}

// { t without coordinate pos : t ∈ r, t[pos] = val }
inline BooleanRelation condition_relation(const BooleanRelation& r, std::size_t pos, bool val) {
  if (pos >= r.arity()) throw PreconditionError("conditioning position out of range");
  const Tuple low = (Tuple{1} << pos) - 1;
  std::vector<Tuple> out;
  for (auto t : r.tuples()) {
    if (detail::bit(t, pos) != val) continue;
    out.push_back((t & low) | ((t >> (pos + 1)) << pos));
  }
  return BooleanRelation(r.arity() - 1, std::move(out));
}

using RelationPtr = std::shared_ptr<const BooleanRelation>;

// Finite set of named relations. Names are unique; insertion order is kept.
class ConstraintLanguage {
 public:
  const RelationPtr& add(std::string name, BooleanRelation relation) {
    if (index_.contains(name)) throw PreconditionError("duplicate relation name '" + name + "'");
    index_.emplace(name, entries_.size());
    entries_.push_back({std::move(name), std::make_shared<const BooleanRelation>(std::move(relation))});
    return entries_.back().second;
  }

  RelationPtr find(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? nullptr : entries_[it->second].second;
  }

  const std::vector<std::pair<std::string, RelationPtr>>& relations() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::vector<std::pair<std::string, RelationPtr>> entries_;
  std::map<std::string, std::size_t> index_;
};

struct Constraint {
  std::string name;  // language relation this constraint was built from
  RelationPtr relation;
  std::vector<std::size_t> vars;
};

// Conjunction of constraints over variables 0..var_count-1. Substitution
// replaces constraint relations by conditioned copies, so a constraint's
// relation need not be in the language; its name records where it came from.
class GammaFormula {
 public:
  GammaFormula() = default;
  GammaFormula(ConstraintLanguage language, std::size_t var_count)
      : language_(std::make_shared<const ConstraintLanguage>(std::move(language))), var_count_(var_count) {}
  GammaFormula(std::shared_ptr<const ConstraintLanguage> language, std::size_t var_count)
      : language_(std::move(language)), var_count_(var_count) {}

  void add_constraint(const std::string& name, std::vector<std::size_t> vars) {
    auto rel = language_ ? language_->find(name) : nullptr;
    if (!rel) throw PreconditionError("unknown relation '" + name + "'");
    add_constraint(name, std::move(rel), std::move(vars));
  }

  void add_constraint(std::string name, RelationPtr rel, std::vector<std::size_t> vars) {
    if (vars.size() != rel->arity())
      throw PreconditionError("constraint " + name + " expects " + std::to_string(rel->arity()) + " variables, got " +
                              std::to_string(vars.size()));
    for (auto v : vars)
      if (v >= var_count_) throw PreconditionError("variable " + std::to_string(v) + " out of range");
    if (rel->empty()) unsatisfiable_ = true;
    constraints_.push_back({std::move(name), std::move(rel), std::move(vars)});
  }

  const ConstraintLanguage& language() const {
    static const ConstraintLanguage none;
    return language_ ? *language_ : none;
  }
  const std::shared_ptr<const ConstraintLanguage>& language_ptr() const noexcept { return language_; }
  const std::vector<Constraint>& constraints() const noexcept { return constraints_; }
  std::size_t var_count() const noexcept { return var_count_; }
  bool unsatisfiable() const noexcept { return unsatisfiable_; }

  bool satisfied_by(std::uint64_t assignment) const {
    if (unsatisfiable_) return false;
    for (const auto& c : constraints_) {
      Tuple t = 0;
      for (std::size_t i = 0; i < c.vars.size(); ++i)
        if ((assignment >> c.vars[i]) & 1U) t |= Tuple{1} << i;
      if (!c.relation->contains(t)) return false;
    }
    return true;
  }

 private:
  friend GammaFormula substitute(const GammaFormula& phi, std::size_t var, bool val);

  std::shared_ptr<const ConstraintLanguage> language_;
  std::vector<Constraint> constraints_;
  std::size_t var_count_ = 0;
  bool unsatisfiable_ = false;
};

// phi[var = val]. Variables above var shift down by one, lower ones keep
// their index. Constraints that lose all their variables are dropped when
// satisfied; an emptied relation marks the result unsatisfiable.
inline GammaFormula substitute(const GammaFormula& phi, std::size_t var, bool val) {
  if (var >= phi.var_count()) throw PreconditionError("substituted variable out of range");
  GammaFormula out(phi.language_, phi.var_count() - 1);
  out.unsatisfiable_ = phi.unsatisfiable_;
  for (const auto& c : phi.constraints()) {
    if (std::ranges::find(c.vars, var) == c.vars.end()) {
      Constraint copy = c;
      for (auto& v : copy.vars)
        if (v > var) --v;
      out.constraints_.push_back(std::move(copy));
      continue;
    }
    BooleanRelation rel = *c.relation;
    std::vector<std::size_t> vars;
    // Highest positions first so lower positions stay valid.
    for (std::size_t i = c.vars.size(); i-- > 0;)
      if (c.vars[i] == var) rel = condition_relation(rel, i, val);
    for (auto v : c.vars)
      if (v != var) vars.push_back(v > var ? v - 1 : v);
    if (rel.empty()) out.unsatisfiable_ = true;
    if (vars.empty() && !rel.empty()) continue;
    out.constraints_.push_back({c.name, std::make_shared<const BooleanRelation>(std::move(rel)), std::move(vars)});
  }
  return out;
}

inline constexpr std::size_t kBruteForceVarLimit = 24;

// Every model of phi as an assignment word (bit i = variable i), ascending.
inline std::vector<std::uint64_t> brute_models(const GammaFormula& phi) {
  if (phi.var_count() > kBruteForceVarLimit)
    throw GuardError("brute force limited to " + std::to_string(kBruteForceVarLimit) + " variables");
  std::vector<std::uint64_t> models;
  const std::uint64_t total = std::uint64_t{1} << phi.var_count();
  for (std::uint64_t m = 0; m < total; ++m)
    if (phi.satisfied_by(m)) models.push_back(m);
  return models;
}

// Flags that hold for every relation of a language.
inline ClassFlags classify_language(const ConstraintLanguage& lang) {
  ClassFlags all{true, true, true, true, true, true, true, Tristate::yes};
  for (const auto& [name, rel] : lang.relations()) {
    auto f = classify_relation(*rel);
    all.zero_valid &= f.zero_valid;
    all.one_valid &= f.one_valid;
    all.horn &= f.horn;
    all.dual_horn &= f.dual_horn;
    all.bijunctive &= f.bijunctive;
    all.affine &= f.affine;
    all.complementive &= f.complementive;
    if (f.strongly_bijunctive == Tristate::no)
      all.strongly_bijunctive = Tristate::no;
    else if (f.strongly_bijunctive == Tristate::unknown && all.strongly_bijunctive == Tristate::yes)
      all.strongly_bijunctive = Tristate::unknown;
  }
  return all;
}

}  // namespace fptenum
