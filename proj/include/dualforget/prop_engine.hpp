#pragma once

// Propositional second-order quantifier elimination: Shannon expansion,
// Ackermann's lemma, the clause rule, and the four operators built on them.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dualforget/formula.hpp"
#include "dualforget/normal_forms.hpp"
#include "dualforget/outcome.hpp"
#include "dualforget/substitution.hpp"

namespace dualforget {

enum class Quant { Exists, Forall };

// A(p=F) | A(p=T) for Exists, A(p=F) & A(p=T) for Forall, simplified.
Formula shannon_eliminate(Quant q, const std::string& p, const Formula& f);

// Eliminates Ex2 p from Ex2 p. f by Ackermann's lemma. The conjuncts of
// nnf(f) are grouped into a definitional part (p -> A) or (A -> p) and a
// residual of matching polarity; without definitional conjuncts the
// tautology (p -> T) or (F -> p) is assumed. NotApplicable when occurrences
// of p cannot be separated this way.
EliminationOutcome ackermann_prop(const std::string& p, const Formula& f);

// The clause rule for All2 vars. clause. Returns nullopt when `clause` is
// not a disjunction of literals (double negations allowed).
std::optional<Formula> clause_forall_eliminate(const std::vector<std::string>& vars, const Formula& clause);
// Same, reading the variables off a leading All2 prefix.
std::optional<Formula> clause_forall_eliminate(const Formula& quantified);

// Ex2 forget. And(th), eliminating variables in the given order.
EliminationOutcome forget_strong_prop(const Theory& th, const std::vector<std::string>& forget);
// All2 forget. And(th), eliminating in each conjunct separately.
EliminationOutcome forget_weak_prop(const Theory& th, const std::vector<std::string>& forget);

// Strongest necessary / weakest sufficient condition of `a` on `keep`
// under `th`: every other propositional variable is forgotten.
EliminationOutcome snc(const Theory& th, const Formula& a, const std::vector<std::string>& keep);
EliminationOutcome wsc(const Theory& th, const Formula& a, const std::vector<std::string>& keep);

// ---------------------------------------------------------------------------
// Implementation

namespace detail {

inline void require_prop_symbol(const Formula& f, const std::string& p) {
  Vocabulary v = vocabulary(f);
  if (v.has_relation(p)) throw std::invalid_argument("'" + p + "' is a relation symbol, not a propositional variable");
}

inline Formula strip_double_negation(Formula f) {
  while (f.is(Kind::Not) && f.body().is(Kind::Not)) f = f.body().body();
  return f;
}

inline bool is_clause(const Formula& f) {
  for (const auto& d : disjuncts(f)) {
    Formula l = strip_double_negation(d);
    if (!l.is_top() && !l.is_bottom() && !is_literal(l)) return false;
  }
  return true;
}

// Ex2 p. f for f in simplified NNF.
inline EliminationOutcome ackermann_prop_nnf(const std::string& p, const Formula& g) {
  const Formula before = Formula::exists2(p, g);
  if (!occurs(g, p)) return EliminationOutcome::success(g, {{Rule::Simplify, before, g}});

  std::vector<Formula> cs = conjuncts(g);
  const Formula bot = Formula::bottom();
  const Formula top = Formula::top();

  // Positive case: conjuncts c with c(p=F) = T are p -> c(p=T).
  {
    std::vector<Formula> defs, rest;
    for (const auto& c : cs) {
      if (occurs(c, p) && simplify(substitute_prop(c, p, bot)).is_top())
        defs.push_back(simplify(substitute_prop(c, p, top)));
      else
        rest.push_back(c);
    }
    Formula b = Formula::conj(rest);
    Polarity pol = polarity(b, p);
    if (!defs.empty() && (pol == Polarity::Positive || pol == Polarity::Absent)) {
      Formula a = Formula::conj(defs);
      Formula out = simplify(nnf(substitute_prop(b, p, a)));
      return EliminationOutcome::success(out, {{Rule::AckermannPos, before, out}});
    }
  }
  // Negative case: conjuncts c with c(p=T) = T are ~c(p=F) -> p.
  {
    std::vector<Formula> defs, rest;
    for (const auto& c : cs) {
      if (occurs(c, p) && simplify(substitute_prop(c, p, top)).is_top())
        defs.push_back(simplify(nnf_negated(substitute_prop(c, p, bot))));
      else
        rest.push_back(c);
    }
    Formula b = Formula::conj(rest);
    Polarity pol = polarity(b, p);
    if (!defs.empty() && (pol == Polarity::Negative || pol == Polarity::Absent)) {
      Formula a = Formula::disj(defs);
      Formula out = simplify(nnf(substitute_prop(b, p, a)));
      return EliminationOutcome::success(out, {{Rule::AckermannNeg, before, out}});
    }
  }
  // No definitional conjunct: assume (p -> T) or (F -> p).
  Polarity pol = polarity(g, p);
  if (pol == Polarity::Positive) {
    Formula out = simplify(substitute_prop(g, p, top));
    return EliminationOutcome::success(out, {{Rule::ArtificialConjunct, before, out}});
  }
  if (pol == Polarity::Negative) {
    Formula out = simplify(substitute_prop(g, p, bot));
    return EliminationOutcome::success(out, {{Rule::ArtificialConjunct, before, out}});
  }
  return EliminationOutcome::not_applicable(g, "mixed-polarity occurrences of " + p + " not separable");
}

inline Formula forall_eliminate(const std::vector<std::string>& vars, const Formula& f, Trace& trace);

// All2 v. c for a single conjunct c mentioning v.
inline Formula forall_one(const std::string& v, const Formula& c, Trace& trace) {
  const Formula before = Formula::forall2(v, c);
  // All2 v. c  ==  ~Ex2 v. ~c
  EliminationOutcome o = ackermann_prop_nnf(v, simplify(nnf_negated(c)));
  if (o.ok()) {
    Formula out = simplify(nnf_negated(o.result));
    trace.push_back({o.trace.empty() ? Rule::AckermannPos : o.trace.back().rule, before, out});
    return out;
  }
  Formula out = shannon_eliminate(Quant::Forall, v, c);
  trace.push_back({Rule::ShannonForall, before, out});
  return out;
}

inline Formula forall_eliminate(const std::vector<std::string>& vars, const Formula& f, Trace& trace) {
  Formula g = simplify(nnf(f));
  std::vector<std::string> present;
  for (const auto& v : vars)
    if (occurs(g, v)) present.push_back(v);
  if (present.empty()) return g;

  std::vector<Formula> cs = conjuncts(g);
  if (cs.size() > 1) {
    std::vector<Formula> parts;
    for (const auto& c : cs) {
      std::vector<std::string> vs;
      for (const auto& v : present)
        if (occurs(c, v)) vs.push_back(v);
      parts.push_back(Formula::forall2(vs, c));
    }
    trace.push_back({Rule::DistributeForall, Formula::forall2(present, g), Formula::conj(parts)});
  }

  std::vector<Formula> out;
  for (const auto& c : cs) {
    std::vector<std::string> vs;
    for (const auto& v : present)
      if (occurs(c, v)) vs.push_back(v);
    if (vs.empty()) {
      out.push_back(c);
      continue;
    }
    if (is_clause(c)) {
      Formula r = *clause_forall_eliminate(vs, c);
      trace.push_back({Rule::ClauseRule, Formula::forall2(vs, c), r});
      out.push_back(r);
      continue;
    }
    Formula r = forall_one(vs.front(), c, trace);
    std::vector<std::string> rest(vs.begin() + 1, vs.end());
    out.push_back(rest.empty() ? r : forall_eliminate(rest, r, trace));
  }
  return simplify(Formula::conj(out));
}

inline std::vector<std::string> forget_list(const Formula& f, const std::vector<std::string>& keep) {
  std::vector<std::string> out;
  for (const auto& p : vocabulary(f).props) {
    bool kept = false;
    for (const auto& k : keep) kept = kept || k == p;
    if (!kept) out.push_back(p);
  }
  return out;
}

}  // namespace detail

inline Formula shannon_eliminate(Quant q, const std::string& p, const Formula& f) {
  Formula lo = substitute_prop(f, p, Formula::bottom());
  Formula hi = substitute_prop(f, p, Formula::top());
  return simplify(q == Quant::Exists ? Formula::disj(lo, hi) : Formula::conj(lo, hi));
}

inline EliminationOutcome ackermann_prop(const std::string& p, const Formula& f) {
  detail::require_prop_symbol(f, p);
  EliminationOutcome o = detail::ackermann_prop_nnf(p, simplify(nnf(f)));
  if (o.ok() && !o.trace.empty()) o.trace.front().before = Formula::exists2(p, f);
  if (!o.ok()) o.result = f;
  return o;
}

inline std::optional<Formula> clause_forall_eliminate(const std::vector<std::string>& vars, const Formula& clause) {
  std::vector<Formula> lits;
  for (const auto& d : disjuncts(clause)) {
    Formula l = detail::strip_double_negation(d);
    if (l.is_top()) return Formula::top();
    if (l.is_bottom()) continue;
    if (!is_literal(l)) return std::nullopt;
    lits.push_back(l);
  }
  for (std::size_t i = 0; i < lits.size(); ++i)
    for (std::size_t j = i + 1; j < lits.size(); ++j)
      if (detail::complementary(lits[i], lits[j])) return Formula::top();
  std::vector<Formula> kept;
  for (const auto& l : lits) {
    const Formula& a = literal_atom(l);
    bool drop = false;
    if (a.is(Kind::Prop))
      for (const auto& v : vars) drop = drop || a.name() == v;
    if (!drop) kept.push_back(l);
  }
  return Formula::disj(std::move(kept));
}

inline std::optional<Formula> clause_forall_eliminate(const Formula& quantified) {
  std::vector<std::string> vars;
  Formula f = quantified;
  while (f.is(Kind::Forall2)) {
    vars.push_back(f.name());
    f = f.body();
  }
  return clause_forall_eliminate(vars, f);
}

inline EliminationOutcome forget_strong_prop(const Theory& th, const std::vector<std::string>& forget) {
  Formula f = th.conjunction();
  Trace trace;
  for (const auto& p : forget) {
    detail::require_prop_symbol(f, p);
    if (!occurs(f, p)) continue;
    EliminationOutcome o = ackermann_prop(p, f);
    if (o.ok()) {
      trace.insert(trace.end(), o.trace.begin(), o.trace.end());
      f = o.result;
    } else {
      Formula out = shannon_eliminate(Quant::Exists, p, f);
      trace.push_back({Rule::ShannonExists, Formula::exists2(p, f), out});
      f = out;
    }
  }
  Formula out = simplify(f);
  if (out != f) trace.push_back({Rule::Simplify, f, out});
  return EliminationOutcome::success(out, std::move(trace));
}

inline EliminationOutcome forget_weak_prop(const Theory& th, const std::vector<std::string>& forget) {
  Formula f = th.conjunction();
  for (const auto& p : forget) detail::require_prop_symbol(f, p);
  std::vector<std::string> present;
  for (const auto& p : forget)
    if (occurs(f, p)) present.push_back(p);
  if (present.empty()) {
    Formula out = simplify(f);
    Trace trace;
    if (out != f) trace.push_back({Rule::Simplify, f, out});
    return EliminationOutcome::success(out, std::move(trace));
  }
  Trace trace;
  Formula g = simplify(nnf(f));
  if (g != f) trace.push_back({Rule::NNF, f, g});
  Formula out = detail::forall_eliminate(present, g, trace);
  return EliminationOutcome::success(out, std::move(trace));
}

inline EliminationOutcome snc(const Theory& th, const Formula& a, const std::vector<std::string>& keep) {
  Formula body = Formula::conj(th.conjunction(), a);
  Theory t;
  t.name = th.name;
  t.formulas = {body};
  return forget_strong_prop(t, detail::forget_list(body, keep));
}

inline EliminationOutcome wsc(const Theory& th, const Formula& a, const std::vector<std::string>& keep) {
  Formula body = Formula::implies(th.conjunction(), a);
  Theory t;
  t.name = th.name;
  t.formulas = {body};
  return forget_weak_prop(t, detail::forget_list(body, keep));
}

}  // namespace dualforget
