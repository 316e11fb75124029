#pragma once

// Negation normal form and the deterministic local simplifier.

#include <vector>

#include "dualforget/formula.hpp"
#include "dualforget/substitution.hpp"

namespace dualforget {

// Pushes negations to literals and expands Implies/Iff. Fixpoint literals are
// treated as atoms (their bodies are normalized in place). Second-order
// quantifiers are dualized like first-order ones.
Formula nnf(const Formula& f);
// nnf(¬f) without building the negation first.
Formula nnf_negated(const Formula& f);

// Applies the following rules bottom-up until nothing changes:
//   ⊤∧A → A, ⊥∧A → ⊥, ⊥∨A → A, ⊤∨A → ⊤, ¬⊤ → ⊥, ¬⊥ → ⊤, ¬¬A → A,
//   A∧A → A, A∨A → A, A∧¬A → ⊥, A∨¬A → ⊤,
//   A∧(A∨B) → A, A∨(A∧B) → A,
//   Implies/Iff with a truth constant or identical sides,
//   t = t → ⊤, vacuous first- and second-order quantifiers dropped,
//   fixpoints whose body does not mention the bound relation unfolded once,
//   flattening of nested And/Or.
// No tautology checking beyond these local rules.
Formula simplify(const Formula& f);

// ---------------------------------------------------------------------------
// Implementation

namespace detail {

inline Formula nnf_pos(const Formula& f);
inline Formula nnf_neg(const Formula& f);

inline Formula nnf_fixpoint(const Formula& f) {
  Formula body = nnf_pos(f.body());
  if (body == f.body()) return f;
  return rebuild(f, {body});
}

inline Formula nnf_pos(const Formula& f) {
  switch (f.kind()) {
    case Kind::Top:
    case Kind::Bottom:
    case Kind::Prop:
    case Kind::Atom:
    case Kind::Equal:
      return f;
    case Kind::Lfp:
    case Kind::Gfp:
      return nnf_fixpoint(f);
    case Kind::Not:
      return nnf_neg(f.body());
    case Kind::And:
    case Kind::Or: {
      std::vector<Formula> kids;
      kids.reserve(f.children().size());
      for (const auto& c : f.children()) kids.push_back(nnf_pos(c));
      return f.is(Kind::And) ? Formula::conj(std::move(kids)) : Formula::disj(std::move(kids));
    }
    case Kind::Implies:
      return Formula::disj(nnf_neg(f.child(0)), nnf_pos(f.child(1)));
    case Kind::Iff:
      return Formula::conj(Formula::disj(nnf_neg(f.child(0)), nnf_pos(f.child(1))),
                           Formula::disj(nnf_pos(f.child(0)), nnf_neg(f.child(1))));
    case Kind::Forall:
    case Kind::Exists:
    case Kind::Forall2:
    case Kind::Exists2:
      return rebuild(f, {nnf_pos(f.body())});
  }
  return f;
}

inline Formula nnf_neg(const Formula& f) {
  switch (f.kind()) {
    case Kind::Top:
      return Formula::bottom();
    case Kind::Bottom:
      return Formula::top();
    case Kind::Prop:
    case Kind::Atom:
    case Kind::Equal:
      return Formula::negate(f);
    case Kind::Lfp:
    case Kind::Gfp:
      return Formula::negate(nnf_fixpoint(f));
    case Kind::Not:
      return nnf_pos(f.body());
    case Kind::And:
    case Kind::Or: {
      std::vector<Formula> kids;
      kids.reserve(f.children().size());
      for (const auto& c : f.children()) kids.push_back(nnf_neg(c));
      return f.is(Kind::And) ? Formula::disj(std::move(kids)) : Formula::conj(std::move(kids));
    }
    case Kind::Implies:
      return Formula::conj(nnf_pos(f.child(0)), nnf_neg(f.child(1)));
    case Kind::Iff:
      return Formula::disj(Formula::conj(nnf_pos(f.child(0)), nnf_neg(f.child(1))),
                           Formula::conj(nnf_neg(f.child(0)), nnf_pos(f.child(1))));
    case Kind::Forall:
      return Formula::exists(f.name(), nnf_neg(f.body()));
    case Kind::Exists:
      return Formula::forall(f.name(), nnf_neg(f.body()));
    case Kind::Forall2:
      return Formula::exists2(f.name(), nnf_neg(f.body()));
    case Kind::Exists2:
      return Formula::forall2(f.name(), nnf_neg(f.body()));
  }
  return f;
}

inline bool contains(const std::vector<Formula>& xs, const Formula& f) {
  for (const auto& x : xs)
    if (x == f) return true;
  return false;
}

inline bool subset_of(const std::vector<Formula>& a, const std::vector<Formula>& b) {
  for (const auto& x : a)
    if (!contains(b, x)) return false;
  return true;
}

inline bool complementary(const Formula& a, const Formula& b) {
  return (a.is(Kind::Not) && a.body() == b) || (b.is(Kind::Not) && b.body() == a);
}

inline Formula simplify_once(const Formula& f);

// Shared And/Or simplification. For And, `unit` is ⊤ and `zero` is ⊥; the
// absorbed parts of a child are its disjuncts. Dually for Or.
inline Formula simplify_junction(const Formula& f, bool is_and) {
  std::vector<Formula> kids;
  for (const auto& c : f.children()) {
    Formula s = simplify_once(c);
    if (is_and ? s.is(Kind::And) : s.is(Kind::Or)) {
      kids.insert(kids.end(), s.children().begin(), s.children().end());
    } else {
      kids.push_back(std::move(s));
    }
  }
  std::vector<Formula> kept;
  for (auto& k : kids) {
    if (is_and ? k.is_top() : k.is_bottom()) continue;
    if (is_and ? k.is_bottom() : k.is_top()) return k;
    kept.push_back(std::move(k));
  }
  for (std::size_t i = 0; i < kept.size(); ++i)
    for (std::size_t j = i + 1; j < kept.size(); ++j)
      if (complementary(kept[i], kept[j])) return is_and ? Formula::bottom() : Formula::top();

  // Duplicates and absorption: child c goes when another kept child d has
  // parts(d) ⊆ parts(c); ties between equal part sets keep the earlier one.
  auto parts = [&](const Formula& x) { return is_and ? disjuncts(x) : conjuncts(x); };
  std::vector<std::vector<Formula>> ps;
  ps.reserve(kept.size());
  for (const auto& k : kept) ps.push_back(parts(k));
  std::vector<bool> removed(kept.size(), false);
  for (std::size_t i = 0; i < kept.size(); ++i) {
    for (std::size_t j = 0; j < kept.size() && !removed[i]; ++j) {
      if (i == j || removed[j]) continue;
      if (!subset_of(ps[j], ps[i])) continue;
      bool same = subset_of(ps[i], ps[j]);
      if (!same || j < i) removed[i] = true;
    }
  }
  std::vector<Formula> out;
  for (std::size_t i = 0; i < kept.size(); ++i)
    if (!removed[i]) out.push_back(kept[i]);
  return is_and ? Formula::conj(std::move(out)) : Formula::disj(std::move(out));
}

inline Formula simplify_not(const Formula& g) {
  if (g.is_top()) return Formula::bottom();
  if (g.is_bottom()) return Formula::top();
  if (g.is(Kind::Not)) return g.body();
  return Formula::negate(g);
}

inline Formula simplify_once(const Formula& f) {
  switch (f.kind()) {
    case Kind::Top:
    case Kind::Bottom:
    case Kind::Prop:
    case Kind::Atom:
      return f;
    case Kind::Equal:
      return f.terms()[0] == f.terms()[1] ? Formula::top() : f;
    case Kind::Not:
      return simplify_not(simplify_once(f.body()));
    case Kind::And:
      return simplify_junction(f, true);
    case Kind::Or:
      return simplify_junction(f, false);
    case Kind::Implies: {
      Formula a = simplify_once(f.child(0));
      Formula b = simplify_once(f.child(1));
      if (a.is_top()) return b;
      if (a.is_bottom() || b.is_top() || a == b) return Formula::top();
      if (b.is_bottom()) return simplify_not(a);
      return Formula::implies(a, b);
    }
    case Kind::Iff: {
      Formula a = simplify_once(f.child(0));
      Formula b = simplify_once(f.child(1));
      if (a == b) return Formula::top();
      if (a.is_top()) return b;
      if (b.is_top()) return a;
      if (a.is_bottom()) return simplify_not(b);
      if (b.is_bottom()) return simplify_not(a);
      if (complementary(a, b)) return Formula::bottom();
      return Formula::iff(a, b);
    }
    case Kind::Forall:
    case Kind::Exists: {
      Formula b = simplify_once(f.body());
      if (!free_vars(b).count(f.name())) return b;
      return rebuild(f, {b});
    }
    case Kind::Forall2:
    case Kind::Exists2: {
      Formula b = simplify_once(f.body());
      if (!occurs(b, f.name())) return b;
      return rebuild(f, {b});
    }
    case Kind::Lfp:
    case Kind::Gfp: {
      Formula b = simplify_once(f.body());
      if (!occurs(b, f.name())) {
        TermMap m;
        for (std::size_t i = 0; i < f.argvars().size(); ++i) m.emplace(f.argvars()[i], f.terms()[i]);
        return substitute_terms(b, m);
      }
      return rebuild(f, {b});
    }
  }
  return f;
}

}  // namespace detail

inline Formula nnf(const Formula& f) { return detail::nnf_pos(f); }
inline Formula nnf_negated(const Formula& f) { return detail::nnf_neg(f); }

inline Formula simplify(const Formula& f) {
  Formula cur = f;
  for (;;) {
    Formula next = detail::simplify_once(cur);
    if (next == cur) return cur;
    cur = std::move(next);
  }
}

}  // namespace dualforget
