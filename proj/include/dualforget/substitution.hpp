#pragma once

// Capture-avoiding substitution of terms, propositional variables and
// relation symbols.

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dualforget/formula.hpp"

namespace dualforget {

class CaptureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Fresh identifiers for one elimination request: x, x_1, x_2, ... with a
// single counter shared by all bases so traces are deterministic.
class NameSupply {
 public:
  NameSupply() = default;
  explicit NameSupply(const Formula& f) { reserve(f); }

  void reserve(const Formula& f) { collect_names(f, used_); }
  void reserve(const std::string& name) { used_.insert(name); }
  bool used(const std::string& name) const { return used_.count(name) != 0; }

  // Returns `base` itself when unused, otherwise base_N.
  std::string fresh(std::string_view base) {
    std::string stem = strip_suffix(base);
    if (!used(stem)) {
      used_.insert(stem);
      return stem;
    }
    return fresh_suffixed(stem);
  }

  // Always returns a suffixed name, never `base`.
  std::string fresh_suffixed(std::string_view base) {
    std::string stem = strip_suffix(base);
    for (;;) {
      std::string candidate = stem + "_" + std::to_string(++counter_);
      if (!used(candidate)) {
        used_.insert(candidate);
        return candidate;
      }
    }
  }

 private:
  static std::string strip_suffix(std::string_view s) {
    auto pos = s.rfind('_');
    if (pos == std::string_view::npos || pos == 0 || pos + 1 == s.size()) return std::string(s);
    for (auto i = pos + 1; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return std::string(s);
    return std::string(s.substr(0, pos));
  }

  std::set<std::string> used_;
  unsigned counter_ = 0;
};

using TermMap = std::map<std::string, Term>;

// Simultaneously replaces free occurrences of variables by terms. Binders
// that would capture a variable of a replacement term are renamed.
Formula substitute_terms(const Formula& f, const TermMap& m, NameSupply& names);
Formula substitute_terms(const Formula& f, const TermMap& m);

// A(p = e). Throws CaptureError if p is bound by a second-order quantifier in f.
Formula substitute_prop(const Formula& f, const std::string& p, const Formula& e, NameSupply& names);
Formula substitute_prop(const Formula& f, const std::string& p, const Formula& e);

// A(r(params) = e): every free atom r(args) becomes e with params replaced by
// args. Throws std::invalid_argument on arity mismatch or repeated params.
Formula substitute_rel(const Formula& f, const std::string& r, const std::vector<std::string>& params,
                       const Formula& e, NameSupply& names);
Formula substitute_rel(const Formula& f, const std::string& r, const std::vector<std::string>& params,
                       const Formula& e);

// Renames free occurrences of a propositional/relation symbol.
Formula rename_symbol(const Formula& f, const std::string& from, const std::string& to);

// Rebuilds a node with new children (same kind, name, terms, argvars).
Formula rebuild(const Formula& f, std::vector<Formula> kids);

// ---------------------------------------------------------------------------
// Implementation

inline Formula rebuild(const Formula& f, std::vector<Formula> kids) {
  switch (f.kind()) {
    case Kind::Not: return Formula::negate(std::move(kids.at(0)));
    case Kind::And: return Formula::conj(std::move(kids));
    case Kind::Or: return Formula::disj(std::move(kids));
    case Kind::Implies: return Formula::implies(std::move(kids.at(0)), std::move(kids.at(1)));
    case Kind::Iff: return Formula::iff(std::move(kids.at(0)), std::move(kids.at(1)));
    case Kind::Forall: return Formula::forall(f.name(), std::move(kids.at(0)));
    case Kind::Exists: return Formula::exists(f.name(), std::move(kids.at(0)));
    case Kind::Forall2: return Formula::forall2(f.name(), std::move(kids.at(0)));
    case Kind::Exists2: return Formula::exists2(f.name(), std::move(kids.at(0)));
    case Kind::Lfp: return Formula::lfp(f.name(), f.argvars(), std::move(kids.at(0)), f.terms());
    case Kind::Gfp: return Formula::gfp(f.name(), f.argvars(), std::move(kids.at(0)), f.terms());
    default: return f;
  }
}

namespace detail {

inline Term map_term(const Term& t, const TermMap& m) {
  if (!t.is_var()) return t;
  auto it = m.find(t.name);
  return it == m.end() ? t : it->second;
}

// Variables appearing in replacement terms for keys that are free in `body`.
inline std::set<std::string> incoming_vars(const TermMap& m, const Formula& body) {
  std::set<std::string> out;
  auto fv = free_vars(body);
  for (const auto& [k, t] : m)
    if (t.is_var() && fv.count(k)) out.insert(t.name);
  return out;
}

inline Formula subst_terms_rec(const Formula& f, const TermMap& m, NameSupply& names) {
  if (m.empty()) return f;
  switch (f.kind()) {
    case Kind::Top:
    case Kind::Bottom:
    case Kind::Prop:
      return f;
    case Kind::Atom: {
      std::vector<Term> ts;
      ts.reserve(f.terms().size());
      for (const auto& t : f.terms()) ts.push_back(map_term(t, m));
      return Formula::atom(f.name(), std::move(ts));
    }
    case Kind::Equal:
      return Formula::equal(map_term(f.terms()[0], m), map_term(f.terms()[1], m));
    case Kind::Forall:
    case Kind::Exists: {
      TermMap inner = m;
      inner.erase(f.name());
      if (inner.empty()) return f;
      std::string v = f.name();
      Formula body = f.body();
      if (incoming_vars(inner, body).count(v)) {
        std::string nv = names.fresh_suffixed(v);
        body = subst_terms_rec(body, TermMap{{v, Term::var(nv)}}, names);
        v = nv;
      }
      body = subst_terms_rec(body, inner, names);
      return f.is(Kind::Forall) ? Formula::forall(v, body) : Formula::exists(v, body);
    }
    case Kind::Lfp:
    case Kind::Gfp: {
      std::vector<Term> args;
      for (const auto& t : f.terms()) args.push_back(map_term(t, m));
      TermMap inner = m;
      for (const auto& p : f.argvars()) inner.erase(p);
      std::vector<std::string> params = f.argvars();
      Formula body = f.body();
      if (!inner.empty()) {
        auto incoming = incoming_vars(inner, body);
        TermMap rename;
        for (auto& p : params) {
          if (incoming.count(p)) {
            std::string np = names.fresh_suffixed(p);
            rename.emplace(p, Term::var(np));
            p = np;
          }
        }
        if (!rename.empty()) body = subst_terms_rec(body, rename, names);
        body = subst_terms_rec(body, inner, names);
      }
      return f.is(Kind::Lfp) ? Formula::lfp(f.name(), params, body, args)
                             : Formula::gfp(f.name(), params, body, args);
    }
    default: {
      std::vector<Formula> kids;
      kids.reserve(f.children().size());
      for (const auto& c : f.children()) kids.push_back(subst_terms_rec(c, m, names));
      return rebuild(f, std::move(kids));
    }
  }
}

inline Formula rename_symbol_rec(const Formula& f, const std::string& from, const std::string& to) {
  switch (f.kind()) {
    case Kind::Prop:
      return f.name() == from ? Formula::prop(to) : f;
    case Kind::Atom:
      return f.name() == from ? Formula::atom(to, f.terms()) : f;
    case Kind::Forall2:
    case Kind::Exists2:
    case Kind::Lfp:
    case Kind::Gfp:
      if (f.name() == from) return f;
      [[fallthrough]];
    default: {
      if (f.children().empty()) return f;
      std::vector<Formula> kids;
      for (const auto& c : f.children()) kids.push_back(rename_symbol_rec(c, from, to));
      return rebuild(f, std::move(kids));
    }
  }
}

// Shared driver for propositional and relational substitution. `replace`
// maps an occurrence (Prop or Atom of the target symbol) to its replacement;
// `e_vars` and `e_symbols` are the free variables/symbols that binders must
// not capture.
template <class Replace>
Formula subst_symbol_rec(const Formula& f, const std::string& s, const Replace& replace,
                         const std::set<std::string>& e_vars, const std::set<std::string>& e_symbols,
                         bool error_on_so_binder, NameSupply& names) {
  switch (f.kind()) {
    case Kind::Prop:
    case Kind::Atom:
      return f.name() == s ? replace(f) : f;
    case Kind::Top:
    case Kind::Bottom:
    case Kind::Equal:
      return f;
    case Kind::Forall:
    case Kind::Exists: {
      if (!occurs(f.body(), s)) return f;
      std::string v = f.name();
      Formula body = f.body();
      if (e_vars.count(v)) {
        std::string nv = names.fresh_suffixed(v);
        body = subst_terms_rec(body, TermMap{{v, Term::var(nv)}}, names);
        v = nv;
      }
      body = subst_symbol_rec(body, s, replace, e_vars, e_symbols, error_on_so_binder, names);
      return f.is(Kind::Forall) ? Formula::forall(v, body) : Formula::exists(v, body);
    }
    case Kind::Forall2:
    case Kind::Exists2: {
      if (f.name() == s) {
        if (error_on_so_binder && occurs(f.body(), s))
          throw CaptureError("'" + s + "' is bound by a second-order quantifier");
        return f;
      }
      if (!occurs(f.body(), s)) return f;
      std::string b = f.name();
      Formula body = f.body();
      if (e_symbols.count(b)) {
        std::string nb = names.fresh_suffixed(b);
        body = rename_symbol_rec(body, b, nb);
        b = nb;
      }
      body = subst_symbol_rec(body, s, replace, e_vars, e_symbols, error_on_so_binder, names);
      return f.is(Kind::Forall2) ? Formula::forall2(b, body) : Formula::exists2(b, body);
    }
    case Kind::Lfp:
    case Kind::Gfp: {
      if (f.name() == s || !occurs(f.body(), s)) return f;
      std::string rel = f.name();
      std::vector<std::string> params = f.argvars();
      Formula body = f.body();
      if (e_symbols.count(rel)) {
        std::string nr = names.fresh_suffixed(rel);
        body = rename_symbol_rec(body, rel, nr);
        rel = nr;
      }
      TermMap rename;
      for (auto& p : params) {
        if (e_vars.count(p)) {
          std::string np = names.fresh_suffixed(p);
          rename.emplace(p, Term::var(np));
          p = np;
        }
      }
      if (!rename.empty()) body = subst_terms_rec(body, rename, names);
      body = subst_symbol_rec(body, s, replace, e_vars, e_symbols, error_on_so_binder, names);
      return f.is(Kind::Lfp) ? Formula::lfp(rel, params, body, f.terms()) : Formula::gfp(rel, params, body, f.terms());
    }
    default: {
      std::vector<Formula> kids;
      kids.reserve(f.children().size());
      for (const auto& c : f.children())
        kids.push_back(subst_symbol_rec(c, s, replace, e_vars, e_symbols, error_on_so_binder, names));
      return rebuild(f, std::move(kids));
    }
  }
}

inline std::set<std::string> free_symbol_set(const Formula& e) {
  auto v = vocabulary(e);
  auto syms = v.symbols();
  return {syms.begin(), syms.end()};
}

}  // namespace detail

inline Formula substitute_terms(const Formula& f, const TermMap& m, NameSupply& names) {
  for (const auto& [k, t] : m) names.reserve(t.name);
  return detail::subst_terms_rec(f, m, names);
}

inline Formula substitute_terms(const Formula& f, const TermMap& m) {
  NameSupply names(f);
  return substitute_terms(f, m, names);
}

inline Formula substitute_prop(const Formula& f, const std::string& p, const Formula& e, NameSupply& names) {
  names.reserve(e);
  auto replace = [&](const Formula& occ) {
    if (occ.is(Kind::Atom)) throw std::invalid_argument("'" + p + "' is used as a relation, not a proposition");
    return e;
  };
  return detail::subst_symbol_rec(f, p, replace, free_vars(e), detail::free_symbol_set(e), true, names);
}

inline Formula substitute_prop(const Formula& f, const std::string& p, const Formula& e) {
  NameSupply names(f);
  return substitute_prop(f, p, e, names);
}

inline Formula substitute_rel(const Formula& f, const std::string& r, const std::vector<std::string>& params,
                              const Formula& e, NameSupply& names) {
  std::set<std::string> distinct(params.begin(), params.end());
  if (distinct.size() != params.size()) throw std::invalid_argument("substitution parameters must be distinct");
  names.reserve(e);
  for (const auto& p : params) names.reserve(p);
  std::set<std::string> e_vars = free_vars(e);
  for (const auto& p : params) e_vars.erase(p);
  auto replace = [&](const Formula& occ) {
    if (occ.terms().size() != params.size())
      throw std::invalid_argument("arity mismatch substituting '" + r + "': expected " +
                                  std::to_string(params.size()) + ", got " + std::to_string(occ.terms().size()));
    TermMap m;
    for (std::size_t i = 0; i < params.size(); ++i) m.emplace(params[i], occ.terms()[i]);
    return detail::subst_terms_rec(e, m, names);
  };
  return detail::subst_symbol_rec(f, r, replace, e_vars, detail::free_symbol_set(e), false, names);
}

inline Formula substitute_rel(const Formula& f, const std::string& r, const std::vector<std::string>& params,
                              const Formula& e) {
  NameSupply names(f);
  return substitute_rel(f, r, params, e, names);
}

inline Formula rename_symbol(const Formula& f, const std::string& from, const std::string& to) {
  return detail::rename_symbol_rec(f, from, to);
}

}  // namespace dualforget
