#pragma once

// ASCII printer. Output parses back to the same formula.
//
//   T F  ~  &  |  ->  <->  all x.  ex x.  All2 p.  Ex2 r.
//   r(x,a)  x = y  x != y  lfp r(x,y). body @(s,t)
//
// Precedence ~ > & > | > -> (right assoc) > <-> (left assoc). Quantifier
// bodies extend as far right as possible, so a quantifier is parenthesized
// whenever something follows it. Binary bodies of quantifiers and fixpoints
// are always parenthesized.

#include <ostream>
#include <string>

#include "dualforget/formula.hpp"

namespace dualforget {

std::string to_string(const Formula& f);
std::string to_string(const Term& t);

inline std::ostream& operator<<(std::ostream& os, const Formula& f) { return os << to_string(f); }

namespace detail {

enum Prec : int { kIff = 1, kImplies = 2, kOr = 3, kAnd = 4, kUnary = 5, kAtomic = 6 };

struct Printed {
  std::string text;
  int prec = kAtomic;
  bool open = false;  // ends with an unbracketed quantifier body
};

inline Printed print_rec(const Formula& f);

inline std::string operand(const Formula& f, int min_prec, bool must_close, bool* open = nullptr) {
  Printed p = print_rec(f);
  if (p.prec < min_prec || (must_close && p.open)) {
    if (open) *open = false;
    return "(" + p.text + ")";
  }
  if (open) *open = p.open;
  return p.text;
}

inline std::string scoped_body(const Formula& body) {
  if (body.is_binary_connective()) return "(" + print_rec(body).text + ")";
  return print_rec(body).text;
}

inline std::string term_list(const std::vector<Term>& ts) {
  std::string s;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (i) s += ',';
    s += ts[i].name;
  }
  return s;
}

inline Printed print_rec(const Formula& f) {
  switch (f.kind()) {
    case Kind::Top: return {"T"};
    case Kind::Bottom: return {"F"};
    case Kind::Prop: return {f.name()};
    case Kind::Atom: return {f.name() + "(" + term_list(f.terms()) + ")"};
    case Kind::Equal: return {f.terms()[0].name + " = " + f.terms()[1].name};
    case Kind::Not: {
      if (f.body().is(Kind::Equal))
        return {f.body().terms()[0].name + " != " + f.body().terms()[1].name};
      bool open = false;
      std::string inner = operand(f.body(), kUnary, false, &open);
      return {"~" + inner, kUnary, open};
    }
    case Kind::And:
    case Kind::Or: {
      const bool is_and = f.is(Kind::And);
      const int child_prec = is_and ? kAnd + 1 : kOr + 1;
      const char* sep = is_and ? " & " : " | ";
      std::string s;
      bool open = false;
      const auto& kids = f.children();
      for (std::size_t i = 0; i < kids.size(); ++i) {
        if (i) s += sep;
        const bool last = i + 1 == kids.size();
        s += operand(kids[i], child_prec, !last, last ? &open : nullptr);
      }
      return {s, is_and ? kAnd : kOr, open};
    }
    case Kind::Implies: {
      bool open = false;
      std::string lhs = operand(f.child(0), kImplies + 1, true);
      std::string rhs = operand(f.child(1), kImplies, false, &open);
      return {lhs + " -> " + rhs, kImplies, open};
    }
    case Kind::Iff: {
      bool open = false;
      std::string lhs = operand(f.child(0), kIff, true);
      std::string rhs = operand(f.child(1), kIff + 1, false, &open);
      return {lhs + " <-> " + rhs, kIff, open};
    }
    case Kind::Forall:
    case Kind::Exists:
    case Kind::Forall2:
    case Kind::Exists2: {
      const char* kw = f.is(Kind::Forall) ? "all " : f.is(Kind::Exists) ? "ex " : f.is(Kind::Forall2) ? "All2 " : "Ex2 ";
      return {kw + f.name() + ". " + scoped_body(f.body()), kAtomic, true};
    }
    case Kind::Lfp:
    case Kind::Gfp: {
      std::string s = f.is(Kind::Lfp) ? "lfp " : "gfp ";
      s += f.name() + "(";
      for (std::size_t i = 0; i < f.argvars().size(); ++i) {
        if (i) s += ',';
        s += f.argvars()[i];
      }
      s += "). " + scoped_body(f.body()) + " @(" + term_list(f.terms()) + ")";
      return {s};
    }
  }
  return {"?"};
}

}  // namespace detail

inline std::string to_string(const Formula& f) { return detail::print_rec(f).text; }
inline std::string to_string(const Term& t) { return t.name; }

}  // namespace dualforget
