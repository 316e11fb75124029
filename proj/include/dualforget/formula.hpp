#pragma once

// Formula data model: terms, formulas (propositional, first-order,
// second-order and fixpoint constructs), vocabulary queries and polarity.
//
// Formulas are immutable values sharing structure through shared_ptr.
// Conjunctions and disjunctions are n-ary and flattened on construction.

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dualforget {

struct Term {
  enum class Kind : std::uint8_t { Variable, Constant };

  Kind kind = Kind::Constant;
  std::string name;

  static Term var(std::string n) { return {Kind::Variable, std::move(n)}; }
  static Term constant(std::string n) { return {Kind::Constant, std::move(n)}; }

  bool is_var() const { return kind == Kind::Variable; }

  friend bool operator==(const Term&, const Term&) = default;
  friend auto operator<=>(const Term&, const Term&) = default;
};

enum class Kind : std::uint8_t {
  Top,
  Bottom,
  Prop,
  Atom,
  Equal,
  Not,
  And,
  Or,
  Implies,
  Iff,
  Forall,
  Exists,
  Forall2,
  Exists2,
  Lfp,
  Gfp,
};

enum class Polarity : std::uint8_t { Absent, Positive, Negative, Both };

struct Node;

class Formula {
 public:
  Formula();  // Top

  static Formula top();
  static Formula bottom();
  static Formula prop(std::string name);
  static Formula atom(std::string relation, std::vector<Term> args);
  static Formula equal(Term lhs, Term rhs);
  static Formula negate(Formula f);
  static Formula conj(std::vector<Formula> fs);
  static Formula disj(std::vector<Formula> fs);
  static Formula conj(Formula a, Formula b) { return conj(std::vector<Formula>{std::move(a), std::move(b)}); }
  static Formula disj(Formula a, Formula b) { return disj(std::vector<Formula>{std::move(a), std::move(b)}); }
  static Formula implies(Formula a, Formula b);
  static Formula iff(Formula a, Formula b);
  static Formula forall(std::string var, Formula body);
  static Formula exists(std::string var, Formula body);
  static Formula forall2(std::string symbol, Formula body);
  static Formula exists2(std::string symbol, Formula body);
  // Applied fixpoint literal. Throws std::invalid_argument unless the body is
  // positive in `relation`, argvars are distinct and |argvars| = |args| >= 1.
  static Formula lfp(std::string relation, std::vector<std::string> argvars, Formula body, std::vector<Term> args);
  static Formula gfp(std::string relation, std::vector<std::string> argvars, Formula body, std::vector<Term> args);

  // Quantifier prefixes over several variables/symbols, outermost first.
  static Formula forall(const std::vector<std::string>& vars, Formula body);
  static Formula exists(const std::vector<std::string>& vars, Formula body);
  static Formula forall2(const std::vector<std::string>& symbols, Formula body);
  static Formula exists2(const std::vector<std::string>& symbols, Formula body);

  Kind kind() const;
  // Prop name, Atom relation, bound variable or symbol of a quantifier,
  // relation bound by a fixpoint.
  const std::string& name() const;
  // Atom arguments, Equal sides, fixpoint applied arguments.
  const std::vector<Term>& terms() const;
  // Fixpoint argument variables.
  const std::vector<std::string>& argvars() const;
  const std::vector<Formula>& children() const;
  const Formula& child(std::size_t i = 0) const { return children().at(i); }
  const Formula& body() const { return children().front(); }

  bool is(Kind k) const { return kind() == k; }
  bool is_top() const { return is(Kind::Top); }
  bool is_bottom() const { return is(Kind::Bottom); }
  bool is_quantifier() const;
  bool is_fo_quantifier() const { return is(Kind::Forall) || is(Kind::Exists); }
  bool is_so_quantifier() const { return is(Kind::Forall2) || is(Kind::Exists2); }
  bool is_fixpoint() const { return is(Kind::Lfp) || is(Kind::Gfp); }
  bool is_binary_connective() const;

  std::size_t size() const;  // node count

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

 private:
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Formula make(Node n);
  static Formula fixpoint(Kind k, std::string relation, std::vector<std::string> argvars, Formula body,
                          std::vector<Term> args);

  std::shared_ptr<const Node> node_;
};

struct Node {
  Kind kind = Kind::Top;
  std::string name;
  std::vector<Term> terms;
  std::vector<std::string> params;
  std::vector<Formula> kids;
};

// Vocabulary partition used by the parser and the engines.
struct Signature {
  std::set<std::string> props;
  std::map<std::string, int> relations;
  std::set<std::string> constants;

  bool declares(const std::string& s) const {
    return props.count(s) != 0 || relations.count(s) != 0 || constants.count(s) != 0;
  }
  void merge(const Signature& o) {
    props.insert(o.props.begin(), o.props.end());
    relations.insert(o.relations.begin(), o.relations.end());
    constants.insert(o.constants.begin(), o.constants.end());
  }
};

// A named finite list of closed formulas read conjunctively.
struct Theory {
  std::string name = "theory";
  std::vector<Formula> formulas;
  std::vector<int> lines;  // source line per formula, 0 when built in code

  Formula conjunction() const { return Formula::conj(formulas); }
};

// Free symbols in order of first occurrence (left to right).
struct Vocabulary {
  std::vector<std::string> props;
  std::vector<std::pair<std::string, int>> relations;
  std::vector<std::string> constants;

  bool has_prop(const std::string& s) const;
  bool has_relation(const std::string& s) const;
  int arity(const std::string& s) const;  // -1 if absent, 0 for props
  std::vector<std::string> symbols() const;  // props then relations
};

Vocabulary vocabulary(const Formula& f);
void collect_vocabulary(const Formula& f, Vocabulary& into);

// Free individual variables. Second-order binders bind symbols only.
std::set<std::string> free_vars(const Formula& f);
bool is_closed(const Formula& f);
// Free individual variables in order of first occurrence.
std::vector<std::string> free_vars_ordered(const Formula& f);

// True when the propositional variable or relation symbol occurs free.
bool occurs(const Formula& f, const std::string& symbol);
// True when the symbol occurs free inside some fixpoint body.
bool occurs_in_fixpoint_body(const Formula& f, const std::string& symbol);

// Every identifier appearing anywhere (symbols, variables, constants,
// binders). Used to seed fresh-name generation.
void collect_names(const Formula& f, std::set<std::string>& into);

// Implies/Iff are read through their expansions ¬a∨b and (¬a∨b)∧(a∨¬b).
Polarity polarity(const Formula& f, const std::string& symbol);

bool is_propositional(const Formula& f);  // no atoms, equality, FO quantifiers or fixpoints
bool has_second_order(const Formula& f);
bool has_fixpoint(const Formula& f);

// Literal: Top/Bottom excluded; Prop, Atom, Equal, fixpoint literal, or a
// negation of one.
bool is_literal(const Formula& f);
const Formula& literal_atom(const Formula& f);  // strips one negation

// Top-level conjuncts/disjuncts (a non-And formula is its own single conjunct).
std::vector<Formula> conjuncts(const Formula& f);
std::vector<Formula> disjuncts(const Formula& f);

// ---------------------------------------------------------------------------
// Implementation

namespace detail {

inline const std::shared_ptr<const Node>& top_node() {
  static const auto n = std::make_shared<const Node>(Node{Kind::Top, {}, {}, {}, {}});
  return n;
}
inline const std::shared_ptr<const Node>& bottom_node() {
  static const auto n = std::make_shared<const Node>(Node{Kind::Bottom, {}, {}, {}, {}});
  return n;
}

inline Polarity merge(Polarity a, Polarity b) {
  if (a == Polarity::Absent) return b;
  if (b == Polarity::Absent) return a;
  return a == b ? a : Polarity::Both;
}

inline Polarity flip(Polarity p) {
  switch (p) {
    case Polarity::Positive: return Polarity::Negative;
    case Polarity::Negative: return Polarity::Positive;
    default: return p;
  }
}

// sign: +1 under an even number of negations, -1 under odd, 0 under both
// (inside an Iff).
inline Polarity polarity_rec(const Formula& f, const std::string& s, int sign) {
  auto here = [&]() {
    if (sign > 0) return Polarity::Positive;
    if (sign < 0) return Polarity::Negative;
    return Polarity::Both;
  };
  switch (f.kind()) {
    case Kind::Top:
    case Kind::Bottom:
    case Kind::Equal:
      return Polarity::Absent;
    case Kind::Prop:
    case Kind::Atom:
      return f.name() == s ? here() : Polarity::Absent;
    case Kind::Not:
      return polarity_rec(f.body(), s, -sign);
    case Kind::And:
    case Kind::Or: {
      Polarity p = Polarity::Absent;
      for (const auto& c : f.children()) p = merge(p, polarity_rec(c, s, sign));
      return p;
    }
    case Kind::Implies:
      return merge(polarity_rec(f.child(0), s, -sign), polarity_rec(f.child(1), s, sign));
    case Kind::Iff:
      return merge(polarity_rec(f.child(0), s, 0), polarity_rec(f.child(1), s, 0));
    case Kind::Forall:
    case Kind::Exists:
      return polarity_rec(f.body(), s, sign);
    case Kind::Forall2:
    case Kind::Exists2:
      return f.name() == s ? Polarity::Absent : polarity_rec(f.body(), s, sign);
    case Kind::Lfp:
    case Kind::Gfp:
      // Fixpoint literals are monotone in symbols occurring positively in the body.
      return f.name() == s ? Polarity::Absent : polarity_rec(f.body(), s, sign);
  }
  return Polarity::Absent;
}

inline void free_vars_rec(const Formula& f, std::vector<std::string>& bound, std::vector<std::string>& out,
                          std::set<std::string>& seen) {
  auto add_term = [&](const Term& t) {
    if (!t.is_var()) return;
    for (const auto& b : bound)
      if (b == t.name) return;
    if (seen.insert(t.name).second) out.push_back(t.name);
  };
  switch (f.kind()) {
    case Kind::Atom:
    case Kind::Equal:
      for (const auto& t : f.terms()) add_term(t);
      return;
    case Kind::Forall:
    case Kind::Exists:
      bound.push_back(f.name());
      free_vars_rec(f.body(), bound, out, seen);
      bound.pop_back();
      return;
    case Kind::Lfp:
    case Kind::Gfp: {
      for (const auto& t : f.terms()) add_term(t);
      for (const auto& v : f.argvars()) bound.push_back(v);
      free_vars_rec(f.body(), bound, out, seen);
      bound.resize(bound.size() - f.argvars().size());
      return;
    }
    default:
      for (const auto& c : f.children()) free_vars_rec(c, bound, out, seen);
  }
}

inline void vocab_rec(const Formula& f, std::vector<std::string>& bound, Vocabulary& v,
                      std::set<std::string>& seen_props, std::set<std::string>& seen_rels,
                      std::set<std::string>& seen_consts) {
  auto is_bound = [&](const std::string& s) {
    for (const auto& b : bound)
      if (b == s) return true;
    return false;
  };
  auto add_consts = [&](const std::vector<Term>& ts) {
    for (const auto& t : ts)
      if (!t.is_var() && seen_consts.insert(t.name).second) v.constants.push_back(t.name);
  };
  switch (f.kind()) {
    case Kind::Prop:
      if (!is_bound(f.name()) && seen_props.insert(f.name()).second) v.props.push_back(f.name());
      return;
    case Kind::Atom:
      if (!is_bound(f.name()) && seen_rels.insert(f.name()).second)
        v.relations.emplace_back(f.name(), static_cast<int>(f.terms().size()));
      add_consts(f.terms());
      return;
    case Kind::Equal:
      add_consts(f.terms());
      return;
    case Kind::Forall2:
    case Kind::Exists2:
    case Kind::Lfp:
    case Kind::Gfp:
      if (f.is_fixpoint()) add_consts(f.terms());
      bound.push_back(f.name());
      vocab_rec(f.body(), bound, v, seen_props, seen_rels, seen_consts);
      bound.pop_back();
      return;
    default:
      for (const auto& c : f.children()) vocab_rec(c, bound, v, seen_props, seen_rels, seen_consts);
  }
}

inline bool occurs_rec(const Formula& f, const std::string& s) {
  switch (f.kind()) {
    case Kind::Prop:
    case Kind::Atom:
      return f.name() == s;
    case Kind::Forall2:
    case Kind::Exists2:
    case Kind::Lfp:
    case Kind::Gfp:
      if (f.name() == s) return false;
      return occurs_rec(f.body(), s);
    default:
      for (const auto& c : f.children())
        if (occurs_rec(c, s)) return true;
      return false;
  }
}

inline bool occurs_in_fix_rec(const Formula& f, const std::string& s) {
  if (f.is_fixpoint()) return f.name() != s && occurs_rec(f.body(), s);
  if (f.is_so_quantifier() && f.name() == s) return false;
  for (const auto& c : f.children())
    if (occurs_in_fix_rec(c, s)) return true;
  return false;
}

}  // namespace detail

inline Formula::Formula() : node_(detail::top_node()) {}

inline Formula Formula::make(Node n) { return Formula(std::make_shared<const Node>(std::move(n))); }

inline Formula Formula::top() { return Formula(detail::top_node()); }
inline Formula Formula::bottom() { return Formula(detail::bottom_node()); }

inline Formula Formula::prop(std::string name) { return make(Node{Kind::Prop, std::move(name), {}, {}, {}}); }

inline Formula Formula::atom(std::string relation, std::vector<Term> args) {
  if (args.empty()) throw std::invalid_argument("atom '" + relation + "' needs at least one argument");
  return make(Node{Kind::Atom, std::move(relation), std::move(args), {}, {}});
}

inline Formula Formula::equal(Term lhs, Term rhs) {
  return make(Node{Kind::Equal, {}, {std::move(lhs), std::move(rhs)}, {}, {}});
}

inline Formula Formula::negate(Formula f) { return make(Node{Kind::Not, {}, {}, {}, {std::move(f)}}); }

inline Formula Formula::conj(std::vector<Formula> fs) {
  std::vector<Formula> flat;
  flat.reserve(fs.size());
  for (auto& f : fs) {
    if (f.is(Kind::And))
      flat.insert(flat.end(), f.children().begin(), f.children().end());
    else
      flat.push_back(std::move(f));
  }
  if (flat.empty()) return top();
  if (flat.size() == 1) return flat.front();
  return make(Node{Kind::And, {}, {}, {}, std::move(flat)});
}

inline Formula Formula::disj(std::vector<Formula> fs) {
  std::vector<Formula> flat;
  flat.reserve(fs.size());
  for (auto& f : fs) {
    if (f.is(Kind::Or))
      flat.insert(flat.end(), f.children().begin(), f.children().end());
    else
      flat.push_back(std::move(f));
  }
  if (flat.empty()) return bottom();
  if (flat.size() == 1) return flat.front();
  return make(Node{Kind::Or, {}, {}, {}, std::move(flat)});
}

inline Formula Formula::implies(Formula a, Formula b) {
  return make(Node{Kind::Implies, {}, {}, {}, {std::move(a), std::move(b)}});
}

inline Formula Formula::iff(Formula a, Formula b) {
  return make(Node{Kind::Iff, {}, {}, {}, {std::move(a), std::move(b)}});
}

inline Formula Formula::forall(std::string var, Formula body) {
  return make(Node{Kind::Forall, std::move(var), {}, {}, {std::move(body)}});
}
inline Formula Formula::exists(std::string var, Formula body) {
  return make(Node{Kind::Exists, std::move(var), {}, {}, {std::move(body)}});
}
inline Formula Formula::forall2(std::string symbol, Formula body) {
  return make(Node{Kind::Forall2, std::move(symbol), {}, {}, {std::move(body)}});
}
inline Formula Formula::exists2(std::string symbol, Formula body) {
  return make(Node{Kind::Exists2, std::move(symbol), {}, {}, {std::move(body)}});
}

inline Formula Formula::forall(const std::vector<std::string>& vars, Formula body) {
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = forall(*it, std::move(body));
  return body;
}
inline Formula Formula::exists(const std::vector<std::string>& vars, Formula body) {
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = exists(*it, std::move(body));
  return body;
}
inline Formula Formula::forall2(const std::vector<std::string>& symbols, Formula body) {
  for (auto it = symbols.rbegin(); it != symbols.rend(); ++it) body = forall2(*it, std::move(body));
  return body;
}
inline Formula Formula::exists2(const std::vector<std::string>& symbols, Formula body) {
  for (auto it = symbols.rbegin(); it != symbols.rend(); ++it) body = exists2(*it, std::move(body));
  return body;
}

inline Formula Formula::fixpoint(Kind k, std::string relation, std::vector<std::string> argvars, Formula body,
                                 std::vector<Term> args) {
  if (argvars.empty()) throw std::invalid_argument("fixpoint over '" + relation + "' needs argument variables");
  if (argvars.size() != args.size())
    throw std::invalid_argument("fixpoint over '" + relation + "' applied to wrong number of arguments");
  std::set<std::string> distinct(argvars.begin(), argvars.end());
  if (distinct.size() != argvars.size())
    throw std::invalid_argument("fixpoint argument variables must be pairwise distinct");
  auto p = detail::polarity_rec(body, relation, 1);
  if (p == Polarity::Negative || p == Polarity::Both)
    throw std::invalid_argument("fixpoint body is not positive in '" + relation + "'");
  return make(Node{k, std::move(relation), std::move(args), std::move(argvars), {std::move(body)}});
}

inline Formula Formula::lfp(std::string relation, std::vector<std::string> argvars, Formula body,
                            std::vector<Term> args) {
  return fixpoint(Kind::Lfp, std::move(relation), std::move(argvars), std::move(body), std::move(args));
}
inline Formula Formula::gfp(std::string relation, std::vector<std::string> argvars, Formula body,
                            std::vector<Term> args) {
  return fixpoint(Kind::Gfp, std::move(relation), std::move(argvars), std::move(body), std::move(args));
}

inline Kind Formula::kind() const { return node_->kind; }
inline const std::string& Formula::name() const { return node_->name; }
inline const std::vector<Term>& Formula::terms() const { return node_->terms; }
inline const std::vector<std::string>& Formula::argvars() const { return node_->params; }
inline const std::vector<Formula>& Formula::children() const { return node_->kids; }

inline bool Formula::is_quantifier() const { return is_fo_quantifier() || is_so_quantifier(); }

inline bool Formula::is_binary_connective() const {
  switch (kind()) {
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
    case Kind::Iff:
      return true;
    default:
      return false;
  }
}

inline std::size_t Formula::size() const {
  std::size_t n = 1;
  for (const auto& c : children()) n += c.size();
  return n;
}

inline bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const Node& x = *a.node_;
  const Node& y = *b.node_;
  return x.kind == y.kind && x.name == y.name && x.terms == y.terms && x.params == y.params && x.kids == y.kids;
}

inline bool Vocabulary::has_prop(const std::string& s) const {
  for (const auto& p : props)
    if (p == s) return true;
  return false;
}

inline bool Vocabulary::has_relation(const std::string& s) const {
  for (const auto& [r, k] : relations)
    if (r == s) return true;
  return false;
}

inline int Vocabulary::arity(const std::string& s) const {
  if (has_prop(s)) return 0;
  for (const auto& [r, k] : relations)
    if (r == s) return k;
  return -1;
}

inline std::vector<std::string> Vocabulary::symbols() const {
  std::vector<std::string> out = props;
  for (const auto& [r, k] : relations) out.push_back(r);
  return out;
}

inline void collect_vocabulary(const Formula& f, Vocabulary& into) {
  std::set<std::string> sp(into.props.begin(), into.props.end());
  std::set<std::string> sr;
  for (const auto& [r, k] : into.relations) sr.insert(r);
  std::set<std::string> sc(into.constants.begin(), into.constants.end());
  std::vector<std::string> bound;
  detail::vocab_rec(f, bound, into, sp, sr, sc);
}

inline Vocabulary vocabulary(const Formula& f) {
  Vocabulary v;
  collect_vocabulary(f, v);
  return v;
}

inline std::vector<std::string> free_vars_ordered(const Formula& f) {
  std::vector<std::string> bound, out;
  std::set<std::string> seen;
  detail::free_vars_rec(f, bound, out, seen);
  return out;
}

inline std::set<std::string> free_vars(const Formula& f) {
  auto v = free_vars_ordered(f);
  return {v.begin(), v.end()};
}

inline bool is_closed(const Formula& f) { return free_vars_ordered(f).empty(); }

inline bool occurs(const Formula& f, const std::string& symbol) { return detail::occurs_rec(f, symbol); }

inline bool occurs_in_fixpoint_body(const Formula& f, const std::string& symbol) {
  return detail::occurs_in_fix_rec(f, symbol);
}

inline void collect_names(const Formula& f, std::set<std::string>& into) {
  if (!f.name().empty()) into.insert(f.name());
  for (const auto& t : f.terms()) into.insert(t.name);
  for (const auto& p : f.argvars()) into.insert(p);
  for (const auto& c : f.children()) collect_names(c, into);
}

inline Polarity polarity(const Formula& f, const std::string& symbol) { return detail::polarity_rec(f, symbol, 1); }

inline bool is_propositional(const Formula& f) {
  switch (f.kind()) {
    case Kind::Atom:
    case Kind::Equal:
    case Kind::Forall:
    case Kind::Exists:
    case Kind::Lfp:
    case Kind::Gfp:
      return false;
    default:
      for (const auto& c : f.children())
        if (!is_propositional(c)) return false;
      return true;
  }
}

inline bool has_second_order(const Formula& f) {
  if (f.is_so_quantifier()) return true;
  for (const auto& c : f.children())
    if (has_second_order(c)) return true;
  return false;
}

inline bool has_fixpoint(const Formula& f) {
  if (f.is_fixpoint()) return true;
  for (const auto& c : f.children())
    if (has_fixpoint(c)) return true;
  return false;
}

inline bool is_literal(const Formula& f) {
  const Formula& a = f.is(Kind::Not) ? f.body() : f;
  switch (a.kind()) {
    case Kind::Prop:
    case Kind::Atom:
    case Kind::Equal:
    case Kind::Lfp:
    case Kind::Gfp:
      return true;
    default:
      return false;
  }
}

inline const Formula& literal_atom(const Formula& f) { return f.is(Kind::Not) ? f.body() : f; }

inline std::vector<Formula> conjuncts(const Formula& f) {
  if (f.is(Kind::And)) return f.children();
  if (f.is_top()) return {};
  return {f};
}

inline std::vector<Formula> disjuncts(const Formula& f) {
  if (f.is(Kind::Or)) return f.children();
  if (f.is_bottom()) return {};
  return {f};
}

}  // namespace dualforget
