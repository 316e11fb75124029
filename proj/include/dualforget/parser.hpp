#pragma once

// Recursive-descent parser for formulas and theory files.
//
// Theory file format, one formula per line:
//
//   #theory name        optional theory name
//   #sig prop p         declare a propositional variable
//   #sig rel r/2        declare a relation with its arity
//   #sig const a        declare a constant
//   #sig var x          declare a free individual variable
//   #closure auto       universally close formulas with free variables
//   #strict             reject undeclared symbols
//   # anything else     comment
//
// Undeclared symbols are inferred from use: a bare lowercase name in formula
// position is a propositional variable, an applied name is a relation. An
// unbound name in argument position is a constant, unless the same formula
// binds that name somewhere (then it is a free variable) or `#closure auto`
// is active (then every undeclared unbound name is a variable).

#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dualforget/formula.hpp"

namespace dualforget {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& msg)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column),
        message_(msg) {}

  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  int line_;
  int column_;
  std::string message_;
};

struct ParseOptions {
  bool strict = false;
  // Unbound undeclared argument names become free variables.
  bool unbound_as_vars = false;
  std::set<std::string> free_vars;
  int line = 1;  // reported line for single-formula input
};

// Parses one formula. Inferred symbols are added to `sig` unless strict.
Formula parse_formula(std::string_view text, Signature& sig, const ParseOptions& opts = {});
Formula parse_formula(std::string_view text);

struct ParsedTheory {
  Signature signature;
  Theory theory;
};

ParsedTheory parse_theory(std::string_view text);

// ---------------------------------------------------------------------------
// Implementation

namespace detail {

enum class Tok : std::uint8_t {
  End,
  Ident,   // lowercase identifier
  Top,     // T
  Bottom,  // F
  All,
  Ex,
  All2,
  Ex2,
  Lfp,
  Gfp,
  Not,
  And,
  Or,
  Implies,
  Iff,
  LParen,
  RParen,
  Comma,
  Dot,
  Eq,
  Neq,
  At,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int col = 1;
};

inline std::vector<Token> lex(std::string_view s, int line) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto col = [&](std::size_t at) { return static_cast<int>(at) + 1; };
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::islower(c) || std::isupper(c)) {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      std::string w(s.substr(start, i - start));
      Token t{Tok::Ident, w, col(start)};
      auto applied = [&] {
        std::size_t j = i;
        while (j < s.size() && (s[j] == ' ' || s[j] == '\t')) ++j;
        return j < s.size() && s[j] == '(';
      };
      if (std::isupper(c)) {
        if (w == "T")
          t.kind = Tok::Top;
        else if (w == "F")
          t.kind = Tok::Bottom;
        else if (w == "All2")
          t.kind = Tok::All2;
        else if (w == "Ex2")
          t.kind = Tok::Ex2;
        else
          throw ParseError(line, col(start), "unknown keyword '" + w + "' (identifiers start with a lowercase letter)");
      } else if (applied()) {
        // all/ex/lfp/gfp directly followed by '(' name a relation
      } else if (w == "all") {
        t.kind = Tok::All;
      } else if (w == "ex") {
        t.kind = Tok::Ex;
      } else if (w == "lfp") {
        t.kind = Tok::Lfp;
      } else if (w == "gfp") {
        t.kind = Tok::Gfp;
      }
      out.push_back(std::move(t));
      continue;
    }
    auto two = [&](char a, char b) { return s[i] == a && i + 1 < s.size() && s[i + 1] == b; };
    if (s.substr(i, 3) == "<->") {
      out.push_back({Tok::Iff, "<->", col(start)});
      i += 3;
    } else if (two('-', '>')) {
      out.push_back({Tok::Implies, "->", col(start)});
      i += 2;
    } else if (two('!', '=')) {
      out.push_back({Tok::Neq, "!=", col(start)});
      i += 2;
    } else {
      Tok k;
      switch (c) {
        case '~': k = Tok::Not; break;
        case '&': k = Tok::And; break;
        case '|': k = Tok::Or; break;
        case '(': k = Tok::LParen; break;
        case ')': k = Tok::RParen; break;
        case ',': k = Tok::Comma; break;
        case '.': k = Tok::Dot; break;
        case '=': k = Tok::Eq; break;
        case '@': k = Tok::At; break;
        default: {
          std::string shown = (c >= 0x20 && c < 0x7f) ? std::string(1, static_cast<char>(c))
                                                      : "\\x" + std::to_string(static_cast<int>(c));
          throw ParseError(line, col(start), "unexpected character '" + shown + "'");
        }
      }
      out.push_back({k, std::string(1, static_cast<char>(c)), col(start)});
      ++i;
    }
  }
  out.push_back({Tok::End, "", col(s.size())});
  return out;
}

class Parser {
 public:
  Parser(std::string_view text, Signature& sig, const ParseOptions& opts)
      : sig_(sig), opts_(opts), line_(opts.line), toks_(lex(text, opts.line)) {
    // Names bound anywhere in this formula; an unbound use of one of them is
    // a free variable rather than a constant.
    for (std::size_t i = 0; i + 1 < toks_.size(); ++i) {
      if (toks_[i].kind == Tok::All || toks_[i].kind == Tok::Ex) {
        for (std::size_t j = i + 1; j < toks_.size() && toks_[j].kind == Tok::Ident; ++j)
          bound_somewhere_.insert(toks_[j].text);
      }
    }
  }

  Formula parse() {
    Formula f = formula();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return f;
  }

 private:
  static constexpr int kMaxDepth = 400;

  struct DepthGuard {
    explicit DepthGuard(Parser& p) : p_(p) {
      if (++p_.depth_ > kMaxDepth) p_.fail("formula nested too deeply");
    }
    ~DepthGuard() { --p_.depth_; }
    Parser& p_;
  };

  // Second-order and fixpoint binders: symbol -> arity (-1 until first use).
  struct SymbolScope {
    std::string name;
    int arity;
  };

  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    next();
    return true;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, peek().col, msg); }
  [[noreturn]] void fail_at(const Token& t, const std::string& msg) const { throw ParseError(line_, t.col, msg); }
  void expect(Tok k, const char* what) {
    if (!accept(k)) fail(std::string("expected ") + what + (peek().kind == Tok::End ? " at end of input" : " before '" + peek().text + "'"));
  }

  Formula formula() {
    DepthGuard g(*this);
    Formula lhs = implication();
    while (accept(Tok::Iff)) lhs = Formula::iff(lhs, implication());
    return lhs;
  }

  Formula implication() {
    DepthGuard g(*this);
    Formula lhs = disjunction();
    if (accept(Tok::Implies)) return Formula::implies(lhs, implication());
    return lhs;
  }

  Formula disjunction() {
    std::vector<Formula> parts{conjunction()};
    while (accept(Tok::Or)) parts.push_back(conjunction());
    return Formula::disj(std::move(parts));
  }

  Formula conjunction() {
    std::vector<Formula> parts{unary()};
    while (accept(Tok::And)) parts.push_back(unary());
    return Formula::conj(std::move(parts));
  }

  Formula unary() {
    DepthGuard g(*this);
    switch (peek().kind) {
      case Tok::Not:
        next();
        return Formula::negate(unary());
      case Tok::All:
      case Tok::Ex:
        return fo_quantifier();
      case Tok::All2:
      case Tok::Ex2:
        return so_quantifier();
      default:
        return primary();
    }
  }

  Formula fo_quantifier() {
    const bool universal = next().kind == Tok::All;
    std::vector<std::string> vars;
    while (peek().kind == Tok::Ident) {
      vars.push_back(next().text);
      accept(Tok::Comma);
    }
    if (vars.empty()) fail("expected a variable after quantifier");
    expect(Tok::Dot, "'.'");
    for (const auto& v : vars) bound_vars_.push_back(v);
    Formula body = formula();
    bound_vars_.resize(bound_vars_.size() - vars.size());
    return universal ? Formula::forall(vars, body) : Formula::exists(vars, body);
  }

  Formula so_quantifier() {
    const bool universal = next().kind == Tok::All2;
    if (peek().kind != Tok::Ident) fail("expected a symbol after second-order quantifier");
    std::string sym = next().text;
    expect(Tok::Dot, "'.'");
    symbols_.push_back({sym, -1});
    Formula body = formula();
    symbols_.pop_back();
    return universal ? Formula::forall2(sym, body) : Formula::exists2(sym, body);
  }

  Formula fixpoint() {
    const bool least = next().kind == Tok::Lfp;
    if (peek().kind != Tok::Ident) fail("expected a relation symbol after fixpoint operator");
    std::string rel = next().text;
    expect(Tok::LParen, "'('");
    std::vector<std::string> vars;
    do {
      if (peek().kind != Tok::Ident) fail("expected a variable");
      vars.push_back(next().text);
    } while (accept(Tok::Comma));
    expect(Tok::RParen, "')'");
    expect(Tok::Dot, "'.'");
    // The body sees only its own argument variables bound, plus any outer
    // variables (they are parameters of the fixpoint).
    symbols_.push_back({rel, static_cast<int>(vars.size())});
    for (const auto& v : vars) bound_vars_.push_back(v);
    Formula body = formula();
    bound_vars_.resize(bound_vars_.size() - vars.size());
    symbols_.pop_back();
    expect(Tok::At, "'@'");
    expect(Tok::LParen, "'('");
    std::vector<Term> args = term_list();
    expect(Tok::RParen, "')'");
    if (args.size() != vars.size()) fail("fixpoint applied to wrong number of arguments");
    try {
      return least ? Formula::lfp(rel, vars, body, args) : Formula::gfp(rel, vars, body, args);
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }

  std::vector<Term> term_list() {
    std::vector<Term> ts;
    do {
      if (peek().kind != Tok::Ident) fail("expected a term");
      ts.push_back(term(next()));
    } while (accept(Tok::Comma));
    return ts;
  }

  bool is_bound_var(const std::string& n) const {
    for (auto it = bound_vars_.rbegin(); it != bound_vars_.rend(); ++it)
      if (*it == n) return true;
    return false;
  }

  SymbolScope* bound_symbol(const std::string& n) {
    for (auto it = symbols_.rbegin(); it != symbols_.rend(); ++it)
      if (it->name == n) return &*it;
    return nullptr;
  }

  Term term(const Token& t) {
    const std::string& n = t.text;
    if (is_bound_var(n)) return Term::var(n);
    if (sig_.constants.count(n)) return Term::constant(n);
    if (opts_.free_vars.count(n) || opts_.unbound_as_vars || bound_somewhere_.count(n)) return Term::var(n);
    if (sig_.props.count(n) || sig_.relations.count(n))
      fail_at(t, "'" + n + "' is declared as a " + std::string(sig_.props.count(n) ? "proposition" : "relation") +
                     ", not a constant");
    if (opts_.strict) fail_at(t, "undeclared constant '" + n + "'");
    sig_.constants.insert(n);
    return Term::constant(n);
  }

  Formula primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Top:
        next();
        return Formula::top();
      case Tok::Bottom:
        next();
        return Formula::bottom();
      case Tok::LParen: {
        next();
        Formula f = formula();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::Lfp:
      case Tok::Gfp:
        return fixpoint();
      case Tok::Ident:
        break;
      case Tok::End:
        fail("unexpected end of input");
      default:
        fail("unexpected '" + t.text + "'");
    }
    Token id = next();
    if (accept(Tok::LParen)) {
      std::vector<Term> args = term_list();
      expect(Tok::RParen, "')'");
      use_relation(id, static_cast<int>(args.size()));
      return Formula::atom(id.text, std::move(args));
    }
    if (peek().kind == Tok::Eq || peek().kind == Tok::Neq) {
      const bool eq = next().kind == Tok::Eq;
      if (peek().kind != Tok::Ident) fail("expected a term after '" + std::string(eq ? "=" : "!=") + "'");
      Term lhs = term(id);
      Term rhs = term(next());
      Formula e = Formula::equal(lhs, rhs);
      return eq ? e : Formula::negate(e);
    }
    use_prop(id);
    return Formula::prop(id.text);
  }

  void use_relation(const Token& t, int arity) {
    const std::string& n = t.text;
    if (SymbolScope* s = bound_symbol(n)) {
      if (s->arity == -1) s->arity = arity;
      if (s->arity != arity)
        fail_at(t, "'" + n + "' used with " + std::to_string(arity) + " arguments, bound with arity " +
                       std::to_string(s->arity));
      return;
    }
    auto it = sig_.relations.find(n);
    if (it != sig_.relations.end()) {
      if (it->second != arity)
        fail_at(t, "arity mismatch for '" + n + "': declared " + std::to_string(it->second) + ", used with " +
                       std::to_string(arity));
      return;
    }
    if (sig_.props.count(n)) fail_at(t, "'" + n + "' is a proposition, not a relation");
    if (sig_.constants.count(n)) fail_at(t, "'" + n + "' is a constant, not a relation");
    if (opts_.strict) fail_at(t, "undeclared relation '" + n + "'");
    sig_.relations.emplace(n, arity);
  }

  void use_prop(const Token& t) {
    const std::string& n = t.text;
    if (SymbolScope* s = bound_symbol(n)) {
      if (s->arity == -1) s->arity = 0;
      if (s->arity != 0) fail_at(t, "'" + n + "' is bound as a relation of arity " + std::to_string(s->arity));
      return;
    }
    if (sig_.props.count(n)) return;
    if (sig_.relations.count(n)) fail_at(t, "relation '" + n + "' used without arguments");
    if (sig_.constants.count(n)) fail_at(t, "'" + n + "' is a constant, not a proposition");
    if (opts_.strict) fail_at(t, "undeclared proposition '" + n + "'");
    sig_.props.insert(n);
  }

  Signature& sig_;
  const ParseOptions& opts_;
  int line_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int depth_ = 0;
  std::vector<std::string> bound_vars_;
  std::vector<SymbolScope> symbols_;
  std::set<std::string> bound_somewhere_;
};

inline bool is_identifier(std::string_view s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

inline std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace detail

inline Formula parse_formula(std::string_view text, Signature& sig, const ParseOptions& opts) {
  detail::Parser p(text, sig, opts);
  return p.parse();
}

inline Formula parse_formula(std::string_view text) {
  Signature sig;
  return parse_formula(text, sig);
}

inline ParsedTheory parse_theory(std::string_view text) {
  ParsedTheory out;
  Signature& sig = out.signature;
  std::set<std::string> declared_vars;
  bool closure_auto = false;
  bool strict = false;

  struct Pending {
    std::string text;
    int line;
  };
  std::vector<Pending> lines;

  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    ++line_no;
    start = end + 1;

    auto words = detail::split_words(raw);
    if (words.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (words[0][0] == '#') {
      const std::string& d = words[0];
      auto need = [&](std::size_t n) {
        if (words.size() != n) throw ParseError(line_no, 1, "malformed directive '" + std::string(raw) + "'");
      };
      if (d == "#sig") {
        if (words.size() < 3) throw ParseError(line_no, 1, "malformed directive '" + std::string(raw) + "'");
        const std::string& what = words[1];
        for (std::size_t i = 2; i < words.size(); ++i) {
          std::string item = words[i];
          if (what == "rel") {
            auto slash = item.find('/');
            if (slash == std::string::npos) throw ParseError(line_no, 1, "relation declaration needs name/arity");
            std::string name = item.substr(0, slash);
            std::string ar = item.substr(slash + 1);
            if (!detail::is_identifier(name) || ar.empty() || ar.size() > 2 ||
                ar.find_first_not_of("0123456789") != std::string::npos || std::stoi(ar) < 1)
              throw ParseError(line_no, 1, "bad relation declaration '" + item + "'");
            if (sig.props.count(name) || sig.constants.count(name))
              throw ParseError(line_no, 1, "'" + name + "' declared twice");
            auto [it, fresh] = sig.relations.emplace(name, std::stoi(ar));
            if (!fresh && it->second != std::stoi(ar))
              throw ParseError(line_no, 1, "conflicting arity for '" + name + "'");
          } else {
            if (!detail::is_identifier(item)) throw ParseError(line_no, 1, "bad identifier '" + item + "'");
            if (what == "prop") {
              if (sig.relations.count(item) || sig.constants.count(item))
                throw ParseError(line_no, 1, "'" + item + "' declared twice");
              sig.props.insert(item);
            } else if (what == "const") {
              if (sig.relations.count(item) || sig.props.count(item))
                throw ParseError(line_no, 1, "'" + item + "' declared twice");
              sig.constants.insert(item);
            } else if (what == "var") {
              declared_vars.insert(item);
            } else {
              throw ParseError(line_no, 1, "unknown declaration kind '" + what + "'");
            }
          }
        }
      } else if (d == "#closure") {
        need(2);
        if (words[1] != "auto") throw ParseError(line_no, 1, "unknown closure mode '" + words[1] + "'");
        closure_auto = true;
      } else if (d == "#strict") {
        need(1);
        strict = true;
      } else if (d == "#theory") {
        need(2);
        out.theory.name = words[1];
      }
      // other '#' lines are comments
      if (end == text.size()) break;
      continue;
    }
    lines.push_back({std::string(raw), line_no});
    if (end == text.size()) break;
  }

  ParseOptions opts;
  opts.strict = strict;
  opts.free_vars = declared_vars;
  opts.unbound_as_vars = closure_auto;
  for (const auto& l : lines) {
    opts.line = l.line;
    Formula f = parse_formula(l.text, sig, opts);
    auto fv = free_vars_ordered(f);
    if (!fv.empty()) {
      if (!closure_auto)
        throw ParseError(l.line, 1, "formula is not closed (free variable '" + fv.front() +
                                        "'); add '#closure auto' to close it universally");
      f = Formula::forall(fv, f);
    }
    out.theory.formulas.push_back(f);
    out.theory.lines.push_back(l.line);
  }
  return out;
}

}  // namespace dualforget
