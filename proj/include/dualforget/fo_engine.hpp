#pragma once

// First-order and fixpoint second-order quantifier elimination.
//
// Ex2 r. F is handled by splitting nnf(F) into universally closed clauses,
// collecting definitional clauses  all y. (D | r(t))  or  all y. (D | ~r(t)),
// and substituting the resulting definiens for r in the rest (Ackermann's
// lemma), or a least/greatest fixpoint of it when the definiens mentions r.
//
// All2 r. F is distributed over conjuncts. Clauses whose r-occurrences are
// all literals go through the closed-form equality rule; other conjuncts are
// negated, handled as Ex2, and negated back.

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dualforget/formula.hpp"
#include "dualforget/normal_forms.hpp"
#include "dualforget/outcome.hpp"
#include "dualforget/printer.hpp"
#include "dualforget/prop_engine.hpp"
#include "dualforget/substitution.hpp"

namespace dualforget {

enum class AckCase { Pos, Neg };

struct AckermannForm {
  AckCase polarity_case = AckCase::Neg;
  std::vector<std::string> params;  // x̄
  Formula definiens;                // A(x̄)
  Formula definitional;             // all x̄. (r(x̄) -> A)  or  all x̄. (A -> r(x̄))
  Formula residual;                 // B
};

// Rewrites nnf(f) into definitional & residual with an r-free definiens.
// nullopt when r occurs with both polarities in a way the clause grouping
// cannot separate.
std::optional<AckermannForm> to_ackermann_form(const std::string& r, const Formula& f);

// B(r(x̄) = A(x̄)), simplified. Throws std::logic_error if A mentions r.
Formula ackermann_fo(const std::string& r, const AckermannForm& form);

// Ex2 r. f where the definiens may mention r positively: the residual with
// r replaced by lfp (negative case) or gfp (positive case).
EliminationOutcome fixpoint_eliminate(const std::string& r, const Formula& f);

// All2 r. all x̄. (r(x̄1) | ... | r(x̄m) | ~r(x̄m+1) | ... | ~r(x̄n) | A)
//   ==  all x̄. (OR_{i>m, j<=m} x̄i = x̄j  |  A)
// with tuple equality expanded componentwise. `f` may carry the leading
// All2 r or not. The result is not simplified. nullopt on any other shape.
std::optional<Formula> clause_form_eliminate_fo(const std::string& r, const Formula& f);

// Ex2 r. f and All2 r. f for a single relation symbol.
EliminationOutcome exists_eliminate_fo(const std::string& r, const Formula& f);
EliminationOutcome forall_eliminate_fo(const std::string& r, const Formula& f);

// Ex2 forget. And(th) / All2 forget. And(th) for a closed theory, symbols
// eliminated in the given order. Propositional symbols are allowed.
EliminationOutcome forget_strong_fo(const Theory& th, const std::vector<std::string>& forget);
EliminationOutcome forget_weak_fo(const Theory& th, const std::vector<std::string>& forget);

// ---------------------------------------------------------------------------
// Implementation

namespace detail {

inline constexpr std::size_t kCnfLimit = 64;

inline bool contains_name(const std::vector<std::string>& xs, const std::string& x) {
  for (const auto& y : xs)
    if (y == x) return true;
  return false;
}

// Quantifies only the variables that occur free in body.
inline Formula close_over(Kind k, const std::vector<std::string>& vars, const Formula& body) {
  std::set<std::string> fv = free_vars(body);
  std::vector<std::string> used;
  for (const auto& v : vars)
    if (fv.count(v) && !contains_name(used, v)) used.push_back(v);
  return k == Kind::Forall ? Formula::forall(used, body) : Formula::exists(used, body);
}

// Clauses of f with every non-And/Or subformula as an item.
inline std::optional<std::vector<std::vector<Formula>>> cnf_items(const Formula& f) {
  using Clauses = std::vector<std::vector<Formula>>;
  if (f.is_top()) return Clauses{};
  if (f.is_bottom()) return Clauses{{}};
  if (f.is(Kind::And)) {
    Clauses out;
    for (const auto& c : f.children()) {
      auto sub = cnf_items(c);
      if (!sub) return std::nullopt;
      out.insert(out.end(), sub->begin(), sub->end());
      if (out.size() > kCnfLimit) return std::nullopt;
    }
    return out;
  }
  if (f.is(Kind::Or)) {
    Clauses acc{{}};
    for (const auto& c : f.children()) {
      auto sub = cnf_items(c);
      if (!sub) return std::nullopt;
      Clauses next;
      for (const auto& a : acc)
        for (const auto& b : *sub) {
          std::vector<Formula> merged = a;
          merged.insert(merged.end(), b.begin(), b.end());
          next.push_back(std::move(merged));
        }
      if (next.size() > kCnfLimit) return std::nullopt;
      acc = std::move(next);
    }
    return acc;
  }
  return Clauses{{f}};
}

struct Pulled {
  std::vector<std::string> vars;
  Formula matrix;
};

// Moves universal quantifiers of an NNF formula to the front, renaming a
// bound variable when it clashes with `avoid`.
inline Pulled pull_universals(const Formula& f, std::set<std::string> avoid, NameSupply& names) {
  if (f.is(Kind::Forall)) {
    std::string z = f.name();
    Formula body = f.body();
    if (avoid.count(z)) {
      std::string z2 = names.fresh(z);
      body = substitute_terms(body, {{z, Term::var(z2)}}, names);
      z = z2;
    }
    avoid.insert(z);
    Pulled inner = pull_universals(body, avoid, names);
    inner.vars.insert(inner.vars.begin(), z);
    return inner;
  }
  if (f.is(Kind::And) || f.is(Kind::Or)) {
    const auto& kids = f.children();
    std::vector<std::set<std::string>> fvs;
    for (const auto& k : kids) fvs.push_back(free_vars(k));
    Pulled out;
    std::vector<Formula> mats;
    for (std::size_t i = 0; i < kids.size(); ++i) {
      std::set<std::string> av = avoid;
      for (std::size_t j = 0; j < kids.size(); ++j)
        if (j != i) av.insert(fvs[j].begin(), fvs[j].end());
      av.insert(out.vars.begin(), out.vars.end());
      Pulled p = pull_universals(kids[i], av, names);
      out.vars.insert(out.vars.end(), p.vars.begin(), p.vars.end());
      mats.push_back(p.matrix);
    }
    out.matrix = f.is(Kind::And) ? Formula::conj(std::move(mats)) : Formula::disj(std::move(mats));
    return out;
  }
  return {{}, f};
}

// Splits an NNF conjunct into universally closed clauses: all over and,
// then the matrix into CNF. With `pull`, universals nested in the matrix
// are moved to the prefix first.
inline void split_conjunct(const Formula& c, std::vector<std::string> prefix, bool pull, NameSupply& names,
                           std::vector<Formula>& out) {
  if (c.is(Kind::Forall)) {
    std::string x = c.name();
    Formula body = c.body();
    if (contains_name(prefix, x)) {
      std::string x2 = names.fresh(x);
      body = substitute_terms(body, {{x, Term::var(x2)}}, names);
      x = x2;
    }
    prefix.push_back(x);
    split_conjunct(body, std::move(prefix), pull, names, out);
    return;
  }
  if (c.is(Kind::And)) {
    for (const auto& k : c.children()) split_conjunct(k, prefix, pull, names, out);
    return;
  }
  Formula m = c;
  if (pull) {
    std::set<std::string> avoid(prefix.begin(), prefix.end());
    auto fv = free_vars(c);
    avoid.insert(fv.begin(), fv.end());
    Pulled p = pull_universals(m, avoid, names);
    if (!p.vars.empty()) {
      prefix.insert(prefix.end(), p.vars.begin(), p.vars.end());
      m = p.matrix;
    }
  }
  auto clauses = cnf_items(m);
  if (!clauses) {
    out.push_back(close_over(Kind::Forall, prefix, m));
    return;
  }
  for (auto& cl : *clauses) out.push_back(close_over(Kind::Forall, prefix, Formula::disj(std::move(cl))));
}

inline std::vector<Formula> prepare(const std::string& r, const Formula& g, bool pull, NameSupply& names) {
  std::vector<Formula> out;
  for (const auto& c : conjuncts(g)) {
    if (!occurs(c, r)) {
      out.push_back(c);
      continue;
    }
    std::vector<Formula> parts;
    split_conjunct(c, {}, pull, names, parts);
    for (auto& p : parts) {
      Formula s = simplify(p);
      if (!s.is_top()) out.push_back(std::move(s));
    }
  }
  return out;
}

struct ClauseView {
  std::vector<std::string> prefix;
  std::vector<Formula> items;
};

inline ClauseView view_clause(const Formula& c) {
  ClauseView v;
  Formula m = c;
  while (m.is(Kind::Forall)) {
    v.prefix.push_back(m.name());
    m = m.body();
  }
  v.items = disjuncts(m);
  return v;
}

inline bool is_r_atom(const Formula& f, const std::string& r) { return f.is(Kind::Atom) && f.name() == r; }
inline bool is_r_literal(const Formula& f, const std::string& r) {
  return is_r_atom(f, r) || (f.is(Kind::Not) && is_r_atom(f.body(), r));
}

// all y. (D | r(t))  (positive = true)  or  all y. (D | ~r(t)).
struct Def {
  std::vector<std::string> prefix;
  std::vector<Term> args;
  Formula rest;  // D
};

enum class DefKind { Ackermann, Fixpoint };

// Reads c as a definitional clause for r with the literal sign `positive`.
// Ackermann: D is r-free. Fixpoint: D mentions r only with the polarity
// that keeps the definiens positive in r.
inline std::optional<Def> as_def(const Formula& c, const std::string& r, bool positive, DefKind kind) {
  ClauseView v = view_clause(c);
  std::optional<std::size_t> at;
  for (std::size_t i = 0; i < v.items.size(); ++i) {
    const Formula& it = v.items[i];
    if (positive ? is_r_atom(it, r) : (it.is(Kind::Not) && is_r_atom(it.body(), r))) {
      if (at) {
        // a second literal of the same sign stays in D
        continue;
      }
      at = i;
    }
  }
  if (!at) return std::nullopt;
  std::vector<Formula> rest;
  for (std::size_t i = 0; i < v.items.size(); ++i)
    if (i != *at) rest.push_back(v.items[i]);
  Formula d = Formula::disj(rest);
  Polarity pol = polarity(d, r);
  if (kind == DefKind::Ackermann) {
    if (pol != Polarity::Absent) return std::nullopt;
  } else {
    Polarity allowed = positive ? Polarity::Negative : Polarity::Positive;
    if (pol != Polarity::Absent && pol != allowed) return std::nullopt;
  }
  const Formula& atom = positive ? v.items[*at] : v.items[*at].body();
  return Def{v.prefix, atom.terms(), d};
}

inline std::vector<std::string> choose_params(const std::vector<Def>& defs, std::size_t arity,
                                              const std::set<std::string>& forbidden, NameSupply& names) {
  if (!defs.empty()) {
    const Def& d = defs.front();
    std::vector<std::string> ps;
    bool ok = true;
    for (const auto& t : d.args) {
      ok = ok && t.is_var() && contains_name(d.prefix, t.name) && !contains_name(ps, t.name) &&
           !forbidden.count(t.name);
      if (!ok) break;
      ps.push_back(t.name);
    }
    if (ok) return ps;
  }
  static const char* const bases[] = {"u", "w", "v"};
  std::vector<std::string> ps;
  for (std::size_t i = 0; i < arity; ++i) ps.push_back(names.fresh(bases[i % 3]));
  return ps;
}

// Definiens contributed by one definitional clause.
//   negative case:  ex y'. (x̄ = t̄ & ~D)
//   positive case:  all y'. (x̄ != t̄ | D)
// Prefix variables occurring as arguments are renamed to the parameters
// instead of producing an equality.
inline Formula def_part(const Def& d, bool negative_case, const std::vector<std::string>& params, NameSupply& names) {
  TermMap m;
  std::vector<std::string> remaining;
  std::vector<std::pair<std::size_t, Term>> guards;
  std::set<std::string> mapped;
  for (std::size_t i = 0; i < d.args.size(); ++i) {
    const Term& t = d.args[i];
    if (t.is_var() && contains_name(d.prefix, t.name) && !mapped.count(t.name)) {
      m[t.name] = Term::var(params[i]);
      mapped.insert(t.name);
    } else {
      guards.emplace_back(i, t);
    }
  }
  for (const auto& y : d.prefix) {
    if (mapped.count(y)) continue;
    if (contains_name(params, y)) {
      std::string y2 = names.fresh(y);
      m[y] = Term::var(y2);
      remaining.push_back(y2);
    } else {
      remaining.push_back(y);
    }
  }
  auto mapped_term = [&](const Term& t) {
    if (!t.is_var()) return t;
    auto it = m.find(t.name);
    return it == m.end() ? t : it->second;
  };
  Formula body = substitute_terms(negative_case ? nnf_negated(d.rest) : d.rest, m, names);
  std::vector<Formula> parts;
  for (const auto& [i, t] : guards) {
    Formula eq = Formula::equal(Term::var(params[i]), mapped_term(t));
    parts.push_back(negative_case ? eq : Formula::negate(eq));
  }
  parts.push_back(body);
  if (negative_case) return close_over(Kind::Exists, remaining, Formula::conj(std::move(parts)));
  return close_over(Kind::Forall, remaining, Formula::disj(std::move(parts)));
}

struct Plan {
  Rule rule;
  AckCase polarity_case;
  std::vector<std::string> params;
  Formula definiens;
  Formula residual;
};

inline std::optional<Plan> plan_defs(const std::string& r, const std::vector<Formula>& cs, bool negative_case,
                                     DefKind kind, std::size_t arity, const std::set<std::string>& forbidden,
                                     NameSupply& names) {
  std::vector<Def> defs;
  std::vector<Formula> rest;
  for (const auto& c : cs) {
    auto d = occurs(c, r) ? as_def(c, r, negative_case, kind) : std::nullopt;
    if (d)
      defs.push_back(*d);
    else
      rest.push_back(c);
  }
  if (defs.empty()) return std::nullopt;
  Formula b = Formula::conj(rest);
  Polarity pol = polarity(b, r);
  Polarity need = negative_case ? Polarity::Negative : Polarity::Positive;
  if (pol != Polarity::Absent && pol != need) return std::nullopt;

  std::vector<std::string> params = choose_params(defs, arity, forbidden, names);
  for (const auto& p : params) names.reserve(p);
  std::vector<Formula> parts;
  for (const auto& d : defs) parts.push_back(simplify(def_part(d, negative_case, params, names)));
  Formula a = simplify(negative_case ? Formula::disj(parts) : Formula::conj(parts));
  Rule rule = kind == DefKind::Ackermann ? (negative_case ? Rule::AckermannNeg : Rule::AckermannPos)
                                         : (negative_case ? Rule::FixpointLfp : Rule::FixpointGfp);
  return Plan{rule, negative_case ? AckCase::Neg : AckCase::Pos, params, a, b};
}

inline std::vector<std::string> default_params(std::size_t arity, NameSupply& names) {
  return choose_params({}, arity, {}, names);
}

// Ackermann plans in order: negative, positive, then the artificial
// tautology conjunct for a residual of uniform polarity.
inline std::optional<Plan> ackermann_plan(const std::string& r, const Formula& g, std::size_t arity,
                                          NameSupply& names) {
  std::vector<Formula> cs = prepare(r, g, false, names);
  std::set<std::string> forbidden = free_vars(g);
  if (auto p = plan_defs(r, cs, true, DefKind::Ackermann, arity, forbidden, names)) return p;
  if (auto p = plan_defs(r, cs, false, DefKind::Ackermann, arity, forbidden, names)) return p;
  Polarity pol = polarity(g, r);
  if (pol == Polarity::Negative)
    return Plan{Rule::ArtificialConjunct, AckCase::Neg, default_params(arity, names), Formula::bottom(), g};
  if (pol == Polarity::Positive)
    return Plan{Rule::ArtificialConjunct, AckCase::Pos, default_params(arity, names), Formula::top(), g};
  return std::nullopt;
}

inline std::optional<Plan> fixpoint_plan(const std::string& r, const Formula& g, std::size_t arity,
                                         NameSupply& names) {
  std::vector<Formula> cs = prepare(r, g, false, names);
  std::set<std::string> forbidden = free_vars(g);
  if (auto p = plan_defs(r, cs, true, DefKind::Fixpoint, arity, forbidden, names)) return p;
  if (auto p = plan_defs(r, cs, false, DefKind::Fixpoint, arity, forbidden, names)) return p;
  return std::nullopt;
}

inline std::vector<Term> param_terms(const std::vector<std::string>& params) {
  std::vector<Term> ts;
  for (const auto& p : params) ts.push_back(Term::var(p));
  return ts;
}

inline Formula apply_plan(const std::string& r, const Plan& plan, NameSupply& names) {
  Formula e = plan.definiens;
  if (plan.rule == Rule::FixpointLfp)
    e = Formula::lfp(r, plan.params, plan.definiens, param_terms(plan.params));
  else if (plan.rule == Rule::FixpointGfp)
    e = Formula::gfp(r, plan.params, plan.definiens, param_terms(plan.params));
  return simplify(nnf(substitute_rel(plan.residual, r, plan.params, e, names)));
}

inline std::size_t relation_arity(const Formula& g, const std::string& r) {
  int k = vocabulary(g).arity(r);
  if (k <= 0) throw std::invalid_argument("'" + r + "' is not a relation symbol of the formula");
  return static_cast<std::size_t>(k);
}

// Ex2 r. f. Steps are appended to `trace`.
inline EliminationOutcome exists_core(const std::string& r, const Formula& f, NameSupply& names) {
  Formula g = simplify(nnf(f));
  Trace trace;
  if (g != f) trace.push_back({Rule::NNF, f, g});
  if (!occurs(g, r)) return EliminationOutcome::success(g, std::move(trace));
  if (occurs_in_fixpoint_body(g, r))
    return EliminationOutcome::failed(Formula::exists2(r, g), r + " occurs inside a fixpoint body", std::move(trace));
  const std::size_t arity = relation_arity(g, r);
  names.reserve(g);

  std::optional<Plan> plan = ackermann_plan(r, g, arity, names);
  if (!plan) plan = fixpoint_plan(r, g, arity, names);
  if (!plan)
    return EliminationOutcome::failed(Formula::exists2(r, g),
                                      "mixed-polarity occurrences of " + r + " not separable", std::move(trace));
  Formula out = apply_plan(r, *plan, names);
  trace.push_back({plan->rule, Formula::exists2(r, g), out});
  return EliminationOutcome::success(out, std::move(trace));
}

// The clause rule on a clause already split into prefix and items.
inline std::optional<Formula> clause_rule(const std::string& r, const ClauseView& v) {
  std::vector<const Formula*> pos, neg;
  std::vector<Formula> rest;
  for (const auto& it : v.items) {
    if (is_r_atom(it, r))
      pos.push_back(&it);
    else if (it.is(Kind::Not) && is_r_atom(it.body(), r))
      neg.push_back(&it.body());
    else if (occurs(it, r))
      return std::nullopt;
    else
      rest.push_back(it);
  }
  std::vector<Formula> eqs;
  for (const Formula* n : neg)
    for (const Formula* p : pos) {
      std::vector<Formula> comps;
      for (std::size_t k = 0; k < n->terms().size(); ++k)
        comps.push_back(Formula::equal(n->terms()[k], p->terms()[k]));
      eqs.push_back(Formula::conj(std::move(comps)));
    }
  eqs.insert(eqs.end(), rest.begin(), rest.end());
  return Formula::forall(v.prefix, Formula::disj(std::move(eqs)));
}

inline EliminationOutcome forall_core(const std::string& r, const Formula& f, NameSupply& names) {
  Formula g = simplify(nnf(f));
  Trace trace;
  if (g != f) trace.push_back({Rule::NNF, f, g});
  if (!occurs(g, r)) return EliminationOutcome::success(g, std::move(trace));
  if (occurs_in_fixpoint_body(g, r))
    return EliminationOutcome::failed(Formula::forall2(r, g), r + " occurs inside a fixpoint body", std::move(trace));
  relation_arity(g, r);
  names.reserve(g);

  std::vector<Formula> cs = prepare(r, g, true, names);
  {
    std::vector<Formula> parts;
    for (const auto& c : cs) parts.push_back(occurs(c, r) ? Formula::forall2(r, c) : c);
    Formula distributed = Formula::conj(parts);
    if (distributed != Formula::forall2(r, g)) trace.push_back({Rule::DistributeForall, Formula::forall2(r, g), distributed});
  }

  std::vector<Formula> out;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const Formula& c = cs[i];
    if (!occurs(c, r)) {
      out.push_back(c);
      continue;
    }
    ClauseView v = view_clause(c);
    if (auto res = clause_rule(r, v)) {
      Formula s = simplify(*res);
      trace.push_back({Rule::ClauseRule, Formula::forall2(r, c), s});
      out.push_back(s);
      continue;
    }
    // All2 r. all y. D  ==  all y. ~Ex2 r. ~D
    Formula matrix = Formula::disj(v.items);
    EliminationOutcome o = exists_core(r, simplify(nnf_negated(matrix)), names);
    if (!o.ok()) {
      std::vector<Formula> residual = out;
      for (std::size_t j = i; j < cs.size(); ++j) residual.push_back(occurs(cs[j], r) ? Formula::forall2(r, cs[j]) : cs[j]);
      return EliminationOutcome::failed(Formula::conj(residual),
                                        "conjunct " + std::to_string(i + 1) + " (" + to_string(c) + "): " + o.reason,
                                        std::move(trace));
    }
    Formula s = simplify(close_over(Kind::Forall, v.prefix, nnf_negated(o.result)));
    Rule rule = Rule::AckermannPos;
    for (const auto& st : o.trace)
      if (st.rule != Rule::NNF && st.rule != Rule::Simplify) rule = st.rule;
    trace.push_back({rule, Formula::forall2(r, c), s});
    out.push_back(s);
  }
  Formula result = simplify(Formula::conj(out));
  return EliminationOutcome::success(result, std::move(trace));
}

inline void require_closed(const Theory& th) {
  for (std::size_t i = 0; i < th.formulas.size(); ++i)
    if (!is_closed(th.formulas[i]))
      throw std::invalid_argument("theory formula " + std::to_string(i + 1) + " is not closed");
}

template <class Core>
EliminationOutcome forget_fo(const Theory& th, const std::vector<std::string>& forget, bool strong, Core core) {
  require_closed(th);
  Formula f = th.conjunction();
  NameSupply names(f);
  Trace trace;
  for (std::size_t i = 0; i < forget.size(); ++i) {
    const std::string& s = forget[i];
    Vocabulary v = vocabulary(f);
    if (v.has_prop(s)) {
      if (strong) {
        EliminationOutcome o = ackermann_prop(s, f);
        if (o.ok()) {
          trace.insert(trace.end(), o.trace.begin(), o.trace.end());
          f = o.result;
        } else {
          Formula out = shannon_eliminate(Quant::Exists, s, f);
          trace.push_back({Rule::ShannonExists, Formula::exists2(s, f), out});
          f = out;
        }
      } else {
        f = forall_eliminate({s}, f, trace);
      }
      continue;
    }
    if (!v.has_relation(s)) continue;
    EliminationOutcome o = core(s, f, names);
    trace.insert(trace.end(), o.trace.begin(), o.trace.end());
    if (!o.ok()) {
      std::vector<std::string> left(forget.begin() + static_cast<std::ptrdiff_t>(i), forget.end());
      Formula residual = strong ? Formula::exists2(left, f) : Formula::forall2(left, f);
      return EliminationOutcome::failed(residual, o.reason, std::move(trace));
    }
    f = o.result;
  }
  Formula out = simplify(f);
  if (out != f) trace.push_back({Rule::Simplify, f, out});
  return EliminationOutcome::success(out, std::move(trace));
}

}  // namespace detail

inline std::optional<AckermannForm> to_ackermann_form(const std::string& r, const Formula& f) {
  Formula g = simplify(nnf(f));
  if (!occurs(g, r)) return std::nullopt;
  NameSupply names(g);
  auto plan = detail::ackermann_plan(r, g, detail::relation_arity(g, r), names);
  if (!plan) return std::nullopt;
  AckermannForm form;
  form.polarity_case = plan->polarity_case;
  form.params = plan->params;
  form.definiens = plan->definiens;
  form.residual = plan->residual;
  Formula atom = Formula::atom(r, detail::param_terms(plan->params));
  form.definitional = Formula::forall(plan->params, plan->polarity_case == AckCase::Pos
                                                         ? Formula::implies(atom, plan->definiens)
                                                         : Formula::implies(plan->definiens, atom));
  return form;
}

inline Formula ackermann_fo(const std::string& r, const AckermannForm& form) {
  if (occurs(form.definiens, r)) throw std::logic_error("definiens mentions " + r);
  NameSupply names(form.residual);
  names.reserve(form.definiens);
  return simplify(nnf(substitute_rel(form.residual, r, form.params, form.definiens, names)));
}

inline EliminationOutcome fixpoint_eliminate(const std::string& r, const Formula& f) {
  Formula g = simplify(nnf(f));
  if (!occurs(g, r)) return EliminationOutcome::success(g);
  if (occurs_in_fixpoint_body(g, r))
    return EliminationOutcome::failed(Formula::exists2(r, g), r + " occurs inside a fixpoint body");
  NameSupply names(g);
  auto plan = detail::fixpoint_plan(r, g, detail::relation_arity(g, r), names);
  if (!plan)
    return EliminationOutcome::failed(Formula::exists2(r, g),
                                      "no definitional clauses positive in " + r + " with a residual of matching polarity");
  Formula out = detail::apply_plan(r, *plan, names);
  return EliminationOutcome::success(out, {{plan->rule, Formula::exists2(r, g), out}});
}

inline std::optional<Formula> clause_form_eliminate_fo(const std::string& r, const Formula& f) {
  Formula g = f;
  if (g.is(Kind::Forall2) && g.name() == r) g = g.body();
  return detail::clause_rule(r, detail::view_clause(g));
}

inline EliminationOutcome exists_eliminate_fo(const std::string& r, const Formula& f) {
  NameSupply names(f);
  return detail::exists_core(r, f, names);
}

inline EliminationOutcome forall_eliminate_fo(const std::string& r, const Formula& f) {
  NameSupply names(f);
  return detail::forall_core(r, f, names);
}

inline EliminationOutcome forget_strong_fo(const Theory& th, const std::vector<std::string>& forget) {
  return detail::forget_fo(th, forget, true, [](const std::string& r, const Formula& f, NameSupply& n) {
    return detail::exists_core(r, f, n);
  });
}

inline EliminationOutcome forget_weak_fo(const Theory& th, const std::vector<std::string>& forget) {
  return detail::forget_fo(th, forget, false, [](const std::string& r, const Formula& f, NameSupply& n) {
    return detail::forall_core(r, f, n);
  });
}

}  // namespace dualforget
