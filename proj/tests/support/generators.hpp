#pragma once

// Random formula generators for the property suites. Every generator is
// seeded explicitly, so failures reproduce from the printed seed.
//
// Name pools are disjoint by role: forgettable propositions p1..p3, kept
// propositions q1..q3, constants a/b, variables x/y/z, relations g/1 and
// e/2, fixpoint relations k/2.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "dualforget.hpp"

namespace dftest {

using namespace dualforget;

class Rng {
 public:
  explicit Rng(std::uint32_t seed) : gen_(seed) {}
  int below(int n) { return std::uniform_int_distribution<int>(0, n - 1)(gen_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(gen_); }
  template <class T>
  const T& pick(const std::vector<T>& xs) {
    return xs[static_cast<std::size_t>(below(static_cast<int>(xs.size())))];
  }
  std::mt19937& engine() { return gen_; }

 private:
  std::mt19937 gen_;
};

inline const std::vector<std::string> kForgetPool{"p1", "p2", "p3"};
inline const std::vector<std::string> kKeepPool{"q1", "q2", "q3"};

// Propositional formula of depth <= depth over `vars`.
inline Formula random_prop(Rng& rng, const std::vector<std::string>& vars, int depth) {
  if (depth <= 0 || rng.coin(0.25)) {
    int k = rng.below(20);
    if (k == 0) return Formula::top();
    if (k == 1) return Formula::bottom();
    return Formula::prop(rng.pick(vars));
  }
  switch (rng.below(6)) {
    case 0: return Formula::negate(random_prop(rng, vars, depth - 1));
    case 1:
    case 2: {
      std::vector<Formula> kids;
      int n = 2 + rng.below(2);
      for (int i = 0; i < n; ++i) kids.push_back(random_prop(rng, vars, depth - 1));
      return rng.coin() ? Formula::conj(kids) : Formula::disj(kids);
    }
    case 3:
    case 4: return Formula::implies(random_prop(rng, vars, depth - 1), random_prop(rng, vars, depth - 1));
    default: return Formula::iff(random_prop(rng, vars, depth - 2), random_prop(rng, vars, depth - 2));
  }
}

struct PropCase {
  Theory theory;
  std::vector<std::string> forget;
  std::vector<std::string> keep;
};

// 1..4 conjuncts of depth <= 5 over at most six variables; forgets a
// nonempty subset of p1..p3 in random order.
inline PropCase random_prop_case(Rng& rng) {
  std::vector<std::string> vars = kForgetPool;
  vars.insert(vars.end(), kKeepPool.begin(), kKeepPool.end());
  PropCase c;
  int n = 1 + rng.below(4);
  for (int i = 0; i < n; ++i) c.theory.formulas.push_back(random_prop(rng, vars, 1 + rng.below(5)));
  std::vector<std::string> pool = kForgetPool;
  std::shuffle(pool.begin(), pool.end(), rng.engine());
  c.forget.assign(pool.begin(), pool.begin() + 1 + rng.below(3));
  c.keep = kKeepPool;
  for (const auto& p : kForgetPool)
    if (std::find(c.forget.begin(), c.forget.end(), p) == c.forget.end()) c.keep.push_back(p);
  return c;
}

// Formula over the kept variables of a case only.
inline Formula random_keep_formula(Rng& rng, const PropCase& c) { return random_prop(rng, c.keep, 1 + rng.below(3)); }

// ---------------------------------------------------------------------------
// First-order clause fragment: universally closed disjunctions of
// r-literals and literals over s/1, e/2 and equality.

struct ClauseCase {
  Theory theory;
  std::string r = "r";
  int arity = 1;
};

inline Term random_term(Rng& rng, const std::vector<std::string>& vars) {
  if (rng.coin(0.15)) return Term::constant("a");
  return Term::var(rng.pick(vars));
}

inline Formula random_side_literal(Rng& rng, const std::vector<std::string>& vars) {
  Formula a;
  switch (rng.below(3)) {
    case 0: a = Formula::atom("s", {random_term(rng, vars)}); break;
    case 1: a = Formula::atom("e", {random_term(rng, vars), random_term(rng, vars)}); break;
    default: a = Formula::equal(random_term(rng, vars), random_term(rng, vars)); break;
  }
  return rng.coin() ? Formula::negate(a) : a;
}

inline Formula random_clause(Rng& rng, const std::string& r, int arity) {
  static const std::vector<std::string> all_vars{"x", "y", "z"};
  std::vector<std::string> vars(all_vars.begin(), all_vars.begin() + 1 + rng.below(3));
  std::vector<Formula> items;
  int nr = 1 + rng.below(3);
  for (int i = 0; i < nr; ++i) {
    std::vector<Term> args;
    for (int k = 0; k < arity; ++k) args.push_back(random_term(rng, vars));
    Formula at = Formula::atom(r, args);
    items.push_back(rng.coin() ? Formula::negate(at) : at);
  }
  int ns = rng.below(3);
  for (int i = 0; i < ns; ++i) items.push_back(random_side_literal(rng, vars));
  std::shuffle(items.begin(), items.end(), rng.engine());
  return detail::close_over(Kind::Forall, vars, Formula::disj(items));
}

inline ClauseCase random_clause_case(Rng& rng) {
  ClauseCase c;
  c.arity = 1 + rng.below(2);
  int n = 1 + rng.below(3);
  for (int i = 0; i < n; ++i) c.theory.formulas.push_back(random_clause(rng, c.r, c.arity));
  return c;
}

// ---------------------------------------------------------------------------
// Closed formulas over the whole language, for printer round trips.

class FormulaGen {
 public:
  explicit FormulaGen(Rng& rng) : rng_(rng) {}

  Formula closed(int depth) {
    std::vector<std::string> scope;
    return gen(depth, scope, "", 0, true);
  }

 private:
  Term term(const std::vector<std::string>& scope) {
    if (scope.empty() || rng_.coin(0.3)) return Term::constant(rng_.coin() ? "a" : "b");
    return Term::var(rng_.pick(scope));
  }

  // fix: name of an enclosing fixpoint relation (arity fix_arity) that may
  // occur here only when `positive`.
  Formula leaf(std::vector<std::string>& scope, const std::string& fix, int fix_arity, bool positive) {
    switch (rng_.below(fix.empty() || !positive ? 6 : 8)) {
      case 0: return rng_.coin() ? Formula::top() : Formula::bottom();
      case 1: return Formula::prop(rng_.coin() ? "p" : "q");
      case 2: return Formula::atom("g", {term(scope)});
      case 3: return Formula::atom("e", {term(scope), term(scope)});
      case 4: return Formula::equal(term(scope), term(scope));
      case 5: return Formula::prop("s");
      default: {
        std::vector<Term> args;
        for (int i = 0; i < fix_arity; ++i) args.push_back(term(scope));
        return Formula::atom(fix, args);
      }
    }
  }

  Formula gen(int depth, std::vector<std::string>& scope, const std::string& fix, int fix_arity, bool positive) {
    if (depth <= 0 || rng_.coin(0.2)) return leaf(scope, fix, fix_arity, positive);
    switch (rng_.below(11)) {
      case 0: return Formula::negate(gen(depth - 1, scope, fix, fix_arity, !positive));
      case 1:
      case 2: {
        std::vector<Formula> kids;
        int n = 2 + rng_.below(2);
        for (int i = 0; i < n; ++i) kids.push_back(gen(depth - 1, scope, fix, fix_arity, positive));
        return rng_.coin() ? Formula::conj(kids) : Formula::disj(kids);
      }
      case 3:
        return Formula::implies(gen(depth - 1, scope, fix, fix_arity, !positive),
                                gen(depth - 1, scope, fix, fix_arity, positive));
      case 4: return Formula::iff(gen(depth - 1, scope, "", 0, true), gen(depth - 1, scope, "", 0, true));
      case 5:
      case 6: {
        static const std::vector<std::string> names{"x", "y", "z"};
        std::string v = rng_.pick(names);
        scope.push_back(v);
        Formula body = gen(depth - 1, scope, fix, fix_arity, positive);
        scope.pop_back();
        return rng_.coin() ? Formula::forall(v, body) : Formula::exists(v, body);
      }
      case 7: {
        std::string s = rng_.coin() ? "p" : "g";
        Formula body = gen(depth - 1, scope, fix, fix_arity, positive);
        return rng_.coin() ? Formula::forall2(s, body) : Formula::exists2(s, body);
      }
      case 8: {
        if (!fix.empty()) return leaf(scope, fix, fix_arity, positive);
        std::vector<std::string> params{"x", "y"};
        std::vector<std::string> inner = params;
        Formula body = gen(depth - 1, inner, "k", 2, true);
        std::vector<Term> applied{term(scope), term(scope)};
        return rng_.coin() ? Formula::lfp("k", params, body, applied) : Formula::gfp("k", params, body, applied);
      }
      default: return leaf(scope, fix, fix_arity, positive);
    }
  }

  Rng& rng_;
};

// Byte strings for parser fuzzing: half drawn from the token alphabet,
// half arbitrary bytes.
inline std::string random_bytes(Rng& rng) {
  static const std::string alphabet = "pqrxyzaT F~&|-><=!().,@ \nallexlfpgfpAll2Ex2#";
  int n = rng.below(48);
  std::string s;
  bool tokens = rng.coin();
  for (int i = 0; i < n; ++i)
    s.push_back(tokens ? alphabet[static_cast<std::size_t>(rng.below(static_cast<int>(alphabet.size())))]
                       : static_cast<char>(rng.below(256)));
  return s;
}

}  // namespace dftest
