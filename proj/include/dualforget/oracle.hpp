#pragma once

// Brute-force semantics. Propositional formulas are evaluated by truth
// tables; first-order formulas over finite interpretations with domain
// {0..n-1}. Fixpoints are computed by Knaster-Tarski iteration, second-order
// quantifiers by enumerating every extension of the bound symbol.
//
// Nothing here calls the elimination engines.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dualforget/formula.hpp"

namespace dualforget {

class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kMaxPropVars = 22;
inline constexpr int kMaxSoDomain = 3;
inline constexpr int kMaxSoArity = 2;
inline constexpr int kMaxEquivDomain = 3;
// Upper bound on interpretations visited by one equivalence check.
inline constexpr std::uint64_t kMaxInterpretations = std::uint64_t{1} << 24;

using Valuation = std::map<std::string, bool>;

bool eval_prop(const Formula& f, const Valuation& v);
bool taut_prop(const Formula& f);
bool equiv_prop(const Formula& f, const Formula& g);
// Returns a valuation on which f and g differ, if any.
std::optional<Valuation> prop_counterexample(const Formula& f, const Formula& g);

// A relation over {0..n-1}^arity stored as a bitmask indexed by
// a0 + a1*n + a2*n^2 + ...  (n^arity <= 64).
struct Relation {
  int arity = 1;
  std::uint64_t bits = 0;

  bool contains(std::size_t index) const { return (bits >> index) & 1U; }
};

struct Interpretation {
  int domain_size = 1;
  std::map<std::string, int> constants;
  std::map<std::string, bool> props;
  std::map<std::string, Relation> relations;

  std::size_t tuple_count(int arity) const;
  std::string describe() const;
};

using Env = std::map<std::string, int>;

bool eval_fo(const Formula& f, const Interpretation& m, const Env& env = {});
// Same evaluator; named separately for call sites that quantify over symbols.
bool eval_so(const Formula& f, const Interpretation& m, const Env& env = {});

// Successive approximations R0, R1, ... of the relation defined by the
// fixpoint literal f (lfp starts from the empty relation, gfp from the full
// one); the last entry is the fixpoint.
std::vector<std::uint64_t> fixpoint_iterates(const Formula& f, const Interpretation& m, const Env& env = {});

struct Counterexample {
  Interpretation model;
  Env env;
  bool lhs = false;
  bool rhs = false;

  std::string describe() const;
};

struct Verdict {
  bool equivalent = true;
  std::optional<Counterexample> counterexample;
  std::uint64_t checked = 0;  // interpretations visited
};

// Compares f and g on every interpretation of their joint free vocabulary
// (and free variables) with domain sizes 1..max_domain. Enumeration order:
// domain size, then constants, propositions, relations (in order of first
// occurrence), then free variables; the first difference is reported.
// `sig` may add symbols that appear in neither formula.
Verdict equiv_fo_finite(const Formula& f, const Formula& g, int max_domain, const Signature& sig = {});

// Visits every interpretation of `vocab` with the given domain size.
// The callback returns false to stop early.
void for_each_interpretation(const Vocabulary& vocab, int domain_size,
                             const std::function<bool(const Interpretation&)>& visit);

// ---------------------------------------------------------------------------
// Implementation

inline std::size_t Interpretation::tuple_count(int arity) const {
  std::size_t n = 1;
  for (int i = 0; i < arity; ++i) n *= static_cast<std::size_t>(domain_size);
  return n;
}

inline std::string Interpretation::describe() const {
  std::ostringstream os;
  os << "domain {";
  for (int i = 0; i < domain_size; ++i) os << (i ? "," : "") << i;
  os << "}";
  for (const auto& [c, v] : constants) os << "; " << c << "=" << v;
  for (const auto& [p, v] : props) os << "; " << p << "=" << (v ? "T" : "F");
  for (const auto& [r, rel] : relations) {
    os << "; " << r << "={";
    bool first = true;
    std::size_t count = tuple_count(rel.arity);
    for (std::size_t idx = 0; idx < count; ++idx) {
      if (!rel.contains(idx)) continue;
      os << (first ? "" : ",") << "(";
      std::size_t rest = idx;
      for (int k = 0; k < rel.arity; ++k) {
        os << (k ? "," : "") << rest % static_cast<std::size_t>(domain_size);
        rest /= static_cast<std::size_t>(domain_size);
      }
      os << ")";
      first = false;
    }
    os << "}";
  }
  return os.str();
}

inline std::string Counterexample::describe() const {
  std::string s = model.describe();
  for (const auto& [x, v] : env) s += "; " + x + ":=" + std::to_string(v);
  s += std::string("; lhs=") + (lhs ? "T" : "F") + " rhs=" + (rhs ? "T" : "F");
  return s;
}

namespace detail {

class PropEval {
 public:
  explicit PropEval(const Valuation& v) : v_(v) {}

  bool eval(const Formula& f) {
    switch (f.kind()) {
      case Kind::Top: return true;
      case Kind::Bottom: return false;
      case Kind::Prop: {
        for (auto it = bound_.rbegin(); it != bound_.rend(); ++it)
          if (it->first == f.name()) return it->second;
        auto it = v_.find(f.name());
        if (it == v_.end()) throw OracleError("unmapped propositional variable '" + f.name() + "'");
        return it->second;
      }
      case Kind::Not: return !eval(f.body());
      case Kind::And:
        for (const auto& c : f.children())
          if (!eval(c)) return false;
        return true;
      case Kind::Or:
        for (const auto& c : f.children())
          if (eval(c)) return true;
        return false;
      case Kind::Implies: return !eval(f.child(0)) || eval(f.child(1));
      case Kind::Iff: return eval(f.child(0)) == eval(f.child(1));
      case Kind::Forall2:
      case Kind::Exists2: {
        const bool want = f.is(Kind::Exists2);
        for (bool val : {false, true}) {
          bound_.emplace_back(f.name(), val);
          bool r = eval(f.body());
          bound_.pop_back();
          if (r == want) return want;
        }
        return !want;
      }
      default:
        throw OracleError("not a propositional formula");
    }
  }

 private:
  const Valuation& v_;
  std::vector<std::pair<std::string, bool>> bound_;
};

inline std::vector<std::string> joint_props(const Formula& f, const Formula& g) {
  Vocabulary v = vocabulary(f);
  collect_vocabulary(g, v);
  if (!v.relations.empty() || !v.constants.empty()) throw OracleError("not a propositional formula");
  if (static_cast<int>(v.props.size()) > kMaxPropVars)
    throw OracleError("truth table over " + std::to_string(v.props.size()) + " variables exceeds the limit of " +
                      std::to_string(kMaxPropVars));
  return v.props;
}

inline std::size_t pow_size(std::size_t base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

class FoEval {
 public:
  FoEval(const Interpretation& m, const Env& env) : m_(m), rels_(m.relations), props_(m.props) {
    for (const auto& [x, v] : env) vars_.emplace_back(x, v);
  }

  bool eval(const Formula& f) {
    switch (f.kind()) {
      case Kind::Top: return true;
      case Kind::Bottom: return false;
      case Kind::Prop: {
        auto it = props_.find(f.name());
        if (it == props_.end()) throw OracleError("unmapped propositional variable '" + f.name() + "'");
        return it->second;
      }
      case Kind::Atom: {
        auto it = rels_.find(f.name());
        if (it == rels_.end()) throw OracleError("unmapped relation '" + f.name() + "'");
        if (it->second.arity != static_cast<int>(f.terms().size()))
          throw OracleError("arity mismatch for '" + f.name() + "'");
        return it->second.contains(index_of(f.terms()));
      }
      case Kind::Equal: return value(f.terms()[0]) == value(f.terms()[1]);
      case Kind::Not: return !eval(f.body());
      case Kind::And:
        for (const auto& c : f.children())
          if (!eval(c)) return false;
        return true;
      case Kind::Or:
        for (const auto& c : f.children())
          if (eval(c)) return true;
        return false;
      case Kind::Implies: return !eval(f.child(0)) || eval(f.child(1));
      case Kind::Iff: return eval(f.child(0)) == eval(f.child(1));
      case Kind::Forall:
      case Kind::Exists: {
        const bool want = f.is(Kind::Exists);
        for (int d = 0; d < m_.domain_size; ++d) {
          vars_.emplace_back(f.name(), d);
          bool r = eval(f.body());
          vars_.pop_back();
          if (r == want) return want;
        }
        return !want;
      }
      case Kind::Forall2:
      case Kind::Exists2: return eval_so(f);
      case Kind::Lfp:
      case Kind::Gfp: {
        std::uint64_t fix = iterate(f, nullptr);
        return (fix >> index_of(f.terms())) & 1U;
      }
    }
    return false;
  }

  std::uint64_t iterate(const Formula& f, std::vector<std::uint64_t>* trace) {
    const int k = static_cast<int>(f.argvars().size());
    const std::size_t count = pow_size(static_cast<std::size_t>(m_.domain_size), k);
    if (count > 64) throw OracleError("fixpoint relation too large for the oracle");
    const std::uint64_t full = count == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << count) - 1);
    std::uint64_t cur = f.is(Kind::Lfp) ? 0 : full;
    if (trace) trace->push_back(cur);
    // Monotone operator on a finite lattice: at most count+1 rounds.
    for (std::size_t round = 0; round <= count + 1; ++round) {
      std::uint64_t next = 0;
      for (std::size_t idx = 0; idx < count; ++idx) {
        std::size_t rest = idx;
        for (int i = 0; i < k; ++i) {
          vars_.emplace_back(f.argvars()[static_cast<std::size_t>(i)],
                             static_cast<int>(rest % static_cast<std::size_t>(m_.domain_size)));
          rest /= static_cast<std::size_t>(m_.domain_size);
        }
        bool holds = with_relation(f.name(), Relation{k, cur}, [&] { return eval(f.body()); });
        vars_.resize(vars_.size() - static_cast<std::size_t>(k));
        if (holds) next |= std::uint64_t{1} << idx;
      }
      if (next == cur) return cur;
      cur = next;
      if (trace) trace->push_back(cur);
    }
    throw OracleError("fixpoint iteration did not converge (body not monotone?)");
  }

 private:
  int value(const Term& t) const {
    if (t.is_var()) {
      for (auto it = vars_.rbegin(); it != vars_.rend(); ++it)
        if (it->first == t.name) return it->second;
      throw OracleError("unbound variable '" + t.name + "'");
    }
    auto it = m_.constants.find(t.name);
    if (it == m_.constants.end()) throw OracleError("unmapped constant '" + t.name + "'");
    return it->second;
  }

  std::size_t index_of(const std::vector<Term>& args) const {
    std::size_t idx = 0;
    std::size_t mul = 1;
    for (const auto& t : args) {
      idx += static_cast<std::size_t>(value(t)) * mul;
      mul *= static_cast<std::size_t>(m_.domain_size);
    }
    return idx;
  }

  template <class Fn>
  bool with_relation(const std::string& r, Relation rel, Fn&& fn) {
    auto it = rels_.find(r);
    std::optional<Relation> saved;
    if (it != rels_.end()) saved = it->second;
    rels_[r] = rel;
    bool out = fn();
    if (saved)
      rels_[r] = *saved;
    else
      rels_.erase(r);
    return out;
  }

  template <class Fn>
  bool with_prop(const std::string& p, bool val, Fn&& fn) {
    auto it = props_.find(p);
    std::optional<bool> saved;
    if (it != props_.end()) saved = it->second;
    props_[p] = val;
    bool out = fn();
    if (saved)
      props_[p] = *saved;
    else
      props_.erase(p);
    return out;
  }

  // Arity of the symbol bound by an SO quantifier: 0 for a proposition, -1
  // when the body does not use it.
  static int bound_arity(const Formula& f, const std::string& s) {
    switch (f.kind()) {
      case Kind::Prop: return f.name() == s ? 0 : -1;
      case Kind::Atom: return f.name() == s ? static_cast<int>(f.terms().size()) : -1;
      case Kind::Forall2:
      case Kind::Exists2:
      case Kind::Lfp:
      case Kind::Gfp:
        if (f.name() == s) return -1;
        return bound_arity(f.body(), s);
      default:
        for (const auto& c : f.children()) {
          int a = bound_arity(c, s);
          if (a >= 0) return a;
        }
        return -1;
    }
  }

  bool eval_so(const Formula& f) {
    const bool want = f.is(Kind::Exists2);
    const int arity = bound_arity(f.body(), f.name());
    if (arity < 0) return eval(f.body());
    if (arity == 0) {
      for (bool val : {false, true})
        if (with_prop(f.name(), val, [&] { return eval(f.body()); }) == want) return want;
      return !want;
    }
    if (m_.domain_size > kMaxSoDomain || arity > kMaxSoArity)
      throw OracleError("second-order enumeration of '" + f.name() + "' exceeds the guard (domain <= " +
                        std::to_string(kMaxSoDomain) + ", arity <= " + std::to_string(kMaxSoArity) + ")");
    const std::size_t count = pow_size(static_cast<std::size_t>(m_.domain_size), arity);
    const std::uint64_t extensions = std::uint64_t{1} << count;
    for (std::uint64_t bits = 0; bits < extensions; ++bits)
      if (with_relation(f.name(), Relation{arity, bits}, [&] { return eval(f.body()); }) == want) return want;
    return !want;
  }

  const Interpretation& m_;
  std::map<std::string, Relation> rels_;
  std::map<std::string, bool> props_;
  std::vector<std::pair<std::string, int>> vars_;
};

}  // namespace detail

inline bool eval_prop(const Formula& f, const Valuation& v) {
  detail::PropEval e(v);
  return e.eval(f);
}

inline std::optional<Valuation> prop_counterexample(const Formula& f, const Formula& g) {
  auto vars = detail::joint_props(f, g);
  const std::uint64_t rows = std::uint64_t{1} << vars.size();
  Valuation v;
  for (std::uint64_t row = 0; row < rows; ++row) {
    for (std::size_t i = 0; i < vars.size(); ++i) v[vars[i]] = (row >> i) & 1U;
    if (eval_prop(f, v) != eval_prop(g, v)) return v;
  }
  return std::nullopt;
}

inline bool equiv_prop(const Formula& f, const Formula& g) { return !prop_counterexample(f, g).has_value(); }

inline bool taut_prop(const Formula& f) { return equiv_prop(f, Formula::top()); }

inline bool eval_fo(const Formula& f, const Interpretation& m, const Env& env) {
  if (m.domain_size < 1) throw OracleError("empty domain");
  detail::FoEval e(m, env);
  return e.eval(f);
}

inline bool eval_so(const Formula& f, const Interpretation& m, const Env& env) { return eval_fo(f, m, env); }

inline std::vector<std::uint64_t> fixpoint_iterates(const Formula& f, const Interpretation& m, const Env& env) {
  if (!f.is_fixpoint()) throw OracleError("not a fixpoint literal");
  detail::FoEval e(m, env);
  std::vector<std::uint64_t> out;
  e.iterate(f, &out);
  return out;
}

inline void for_each_interpretation(const Vocabulary& vocab, int domain_size,
                                    const std::function<bool(const Interpretation&)>& visit) {
  Interpretation m;
  m.domain_size = domain_size;
  const std::size_t n = static_cast<std::size_t>(domain_size);
  for (const auto& [r, k] : vocab.relations)
    if (detail::pow_size(n, k) > 63) throw OracleError("relation '" + r + "' too large to enumerate");

  // Mixed-radix counter over constants, props and relations.
  std::vector<std::uint64_t> radix;
  for (std::size_t i = 0; i < vocab.constants.size(); ++i) radix.push_back(n);
  for (std::size_t i = 0; i < vocab.props.size(); ++i) radix.push_back(2);
  for (const auto& [r, k] : vocab.relations) radix.push_back(std::uint64_t{1} << detail::pow_size(n, k));
  std::vector<std::uint64_t> digit(radix.size(), 0);
  for (;;) {
    std::size_t pos = 0;
    for (const auto& c : vocab.constants) m.constants[c] = static_cast<int>(digit[pos++]);
    for (const auto& p : vocab.props) m.props[p] = digit[pos++] != 0;
    for (const auto& [r, k] : vocab.relations) m.relations[r] = Relation{k, digit[pos++]};
    if (!visit(m)) return;
    // Most significant digit first, so the last symbol varies fastest.
    std::size_t i = radix.size();
    while (i > 0) {
      --i;
      if (++digit[i] < radix[i]) break;
      digit[i] = 0;
      if (i == 0) return;
    }
    if (radix.empty()) return;
  }
}

inline Verdict equiv_fo_finite(const Formula& f, const Formula& g, int max_domain, const Signature& sig) {
  if (max_domain < 1 || max_domain > kMaxEquivDomain)
    throw OracleError("domain size must be between 1 and " + std::to_string(kMaxEquivDomain));
  Vocabulary vocab = vocabulary(f);
  collect_vocabulary(g, vocab);
  for (const auto& p : sig.props)
    if (!vocab.has_prop(p)) vocab.props.push_back(p);
  for (const auto& [r, k] : sig.relations)
    if (!vocab.has_relation(r)) vocab.relations.emplace_back(r, k);
  for (const auto& c : sig.constants) {
    bool have = false;
    for (const auto& x : vocab.constants) have = have || x == c;
    if (!have) vocab.constants.push_back(c);
  }
  std::vector<std::string> vars = free_vars_ordered(f);
  for (const auto& x : free_vars_ordered(g)) {
    bool have = false;
    for (const auto& y : vars) have = have || y == x;
    if (!have) vars.push_back(x);
  }

  // Estimate the total work before starting.
  std::uint64_t total = 0;
  for (int n = 1; n <= max_domain; ++n) {
    double count = 1;
    for (std::size_t i = 0; i < vocab.constants.size() + vars.size(); ++i) count *= n;
    count *= static_cast<double>(std::uint64_t{1} << vocab.props.size());
    for (const auto& [r, k] : vocab.relations) {
      std::size_t tuples = detail::pow_size(static_cast<std::size_t>(n), k);
      if (tuples > 40) throw OracleError("relation '" + r + "' too large to enumerate");
      count *= static_cast<double>(std::uint64_t{1} << tuples);
    }
    if (count > static_cast<double>(kMaxInterpretations))
      throw OracleError("finite-model enumeration exceeds the guard of " + std::to_string(kMaxInterpretations) +
                        " interpretations");
    total += static_cast<std::uint64_t>(count);
  }
  if (total > kMaxInterpretations)
    throw OracleError("finite-model enumeration exceeds the guard of " + std::to_string(kMaxInterpretations) +
                      " interpretations");

  Verdict verdict;
  for (int n = 1; n <= max_domain && verdict.equivalent; ++n) {
    for_each_interpretation(vocab, n, [&](const Interpretation& m) {
      const std::uint64_t envs = detail::pow_size(static_cast<std::size_t>(n), static_cast<int>(vars.size()));
      for (std::uint64_t e = 0; e < envs; ++e) {
        Env env;
        std::uint64_t rest = e;
        // First variable most significant.
        for (std::size_t i = vars.size(); i > 0; --i) {
          env[vars[i - 1]] = static_cast<int>(rest % static_cast<std::uint64_t>(n));
          rest /= static_cast<std::uint64_t>(n);
        }
        ++verdict.checked;
        bool a = eval_fo(f, m, env);
        bool b = eval_fo(g, m, env);
        if (a != b) {
          verdict.equivalent = false;
          verdict.counterexample = Counterexample{m, env, a, b};
          return false;
        }
      }
      return true;
    });
  }
  return verdict;
}

}  // namespace dualforget
