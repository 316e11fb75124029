// dualforget: strong/weak forgetting, SNC/WSC and equivalence checks.
//
// Exit codes: 0 ok, 1 input error, 2 elimination failed or --emit not
// satisfiable, 3 invariant breach or --verify FAIL, 4 counterexample.
// Formulas go to stdout, everything else to stderr.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dualforget.hpp"

namespace df = dualforget;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

df::ParsedTheory load_theory(const std::string& path) {
  if (path.empty()) return {};
  std::string text = read_file(path);
  try {
    return df::parse_theory(text);
  } catch (const df::ParseError& e) {
    throw UsageError(path + ":" + e.what());
  }
}

df::Formula parse_arg(const std::string& text, df::Signature& sig, const std::string& what) {
  try {
    return df::parse_formula(text, sig);
  } catch (const df::ParseError& e) {
    throw UsageError(what + ":" + e.what());
  }
}

struct Options {
  std::string mode = "strong";
  std::vector<std::string> vars;
  std::vector<std::string> keep;
  std::string file;
  std::string theory;
  std::string query;
  std::string emit;
  bool trace = false;
  bool verify = false;
  int domain = 2;
  std::string out;
  std::string lhs, rhs;
};

void print_trace(const df::Trace& t) {
  for (std::size_t i = 0; i < t.size(); ++i)
    std::cerr << "step " << i + 1 << " " << df::rule_name(t[i].rule) << ": " << df::to_string(t[i].before)
              << "  =>  " << df::to_string(t[i].after) << "\n";
}

void write_formula(const df::Formula& f, const Options& o) {
  std::string text = df::to_string(f) + "\n";
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.out, std::ios::binary);
  if (!out) throw UsageError("cannot write " + o.out);
  out << text;
}

// Ex2/All2 over the symbols of `forget` that occur in f.
df::Formula quantified(bool strong, const std::vector<std::string>& forget, const df::Formula& f) {
  std::vector<std::string> present;
  for (const auto& s : forget)
    if (df::occurs(f, s)) present.push_back(s);
  return strong ? df::Formula::exists2(present, f) : df::Formula::forall2(present, f);
}

// 0 equivalent, 4 counterexample; message on stderr via `tag`.
int compare(const df::Formula& f, const df::Formula& g, int domain, std::ostream& os, const std::string& tag) {
  if (df::is_propositional(f) && df::is_propositional(g)) {
    auto cx = df::prop_counterexample(f, g);
    if (!cx) return 0;
    os << tag << "counterexample:";
    for (const auto& [k, v] : *cx) os << " " << k << "=" << (v ? 1 : 0);
    os << "\n";
    return 4;
  }
  df::Verdict v = df::equiv_fo_finite(f, g, domain);
  if (v.equivalent) return 0;
  os << tag << "counterexample: " << v.counterexample->describe() << "\n";
  return 4;
}

// Shared tail of forget/snc/wsc: emit check, invariants, verify, print.
int finish(const df::EliminationOutcome& o, const df::Formula& original, const std::vector<std::string>& forget,
           bool strong, const Options& opt) {
  if (opt.trace) print_trace(o.trace);
  if (!o.ok()) {
    std::cerr << "elimination failed: " << o.reason << "\n";
    write_formula(o.result, opt);
    return 2;
  }
  for (const auto& s : forget)
    if (df::occurs(o.result, s)) {
      std::cerr << "invariant breach: result mentions forgotten symbol " << s << "\n";
      return 3;
    }
  if (df::has_second_order(o.result)) {
    std::cerr << "invariant breach: result contains a second-order quantifier\n";
    return 3;
  }
  if (opt.emit == "prop" && !df::is_propositional(o.result)) {
    std::cerr << "result is not propositional\n";
    return 2;
  }
  if (opt.emit == "fo" && o.status != df::Status::FirstOrder) {
    std::cerr << "no first-order equivalent found by this procedure\n";
    return 2;
  }
  if (opt.verify) {
    try {
      int rc = compare(o.result, quantified(strong, forget, original), opt.domain, std::cerr, "verify: ");
      if (rc != 0) {
        std::cerr << "verify: FAIL\n";
        return 3;
      }
      std::cerr << "verify: PASS\n";
    } catch (const df::OracleError& e) {
      std::cerr << "verify: not run: " << e.what() << "\n";
    }
  }
  write_formula(o.result, opt);
  return 0;
}

int cmd_forget(const Options& opt) {
  df::ParsedTheory pt = load_theory(opt.file);
  bool strong = opt.mode == "strong";
  df::EliminationOutcome o = df::forget(pt.theory, opt.vars, strong ? df::Mode::Strong : df::Mode::Weak);
  return finish(o, pt.theory.conjunction(), opt.vars, strong, opt);
}

int cmd_condition(const Options& opt, bool strong) {
  df::ParsedTheory pt = load_theory(opt.theory);
  df::Formula a = parse_arg(opt.query, pt.signature, "--query");
  df::Formula th = pt.theory.conjunction();
  df::Formula body = strong ? df::Formula::conj(th, a) : df::Formula::implies(th, a);
  if (df::is_propositional(body)) {
    df::EliminationOutcome o = strong ? df::snc(pt.theory, a, opt.keep) : df::wsc(pt.theory, a, opt.keep);
    return finish(o, body, df::detail::forget_list(body, opt.keep), strong, opt);
  }
  df::Vocabulary v = df::vocabulary(body);
  std::vector<std::string> forget;
  for (const auto& s : v.symbols())
    if (std::find(opt.keep.begin(), opt.keep.end(), s) == opt.keep.end()) forget.push_back(s);
  df::Theory t;
  t.formulas = {body};
  df::EliminationOutcome o = strong ? df::forget_strong_fo(t, forget) : df::forget_weak_fo(t, forget);
  return finish(o, body, forget, strong, opt);
}

df::Formula formula_or_file(const std::string& arg, const std::string& what) {
  if (std::filesystem::is_regular_file(arg)) return load_theory(arg).theory.conjunction();
  df::Signature sig;
  return parse_arg(arg, sig, what);
}

int cmd_check_equiv(const Options& opt) {
  df::Formula f = formula_or_file(opt.lhs, "A");
  df::Formula g = formula_or_file(opt.rhs, "B");
  int rc = compare(f, g, opt.domain, std::cout, "");
  if (rc == 0) std::cout << "equivalent\n";
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dualforget: strong and weak forgetting by second-order quantifier elimination"};
  app.require_subcommand(1);
  Options opt;
  if (const char* t = std::getenv("DF_TRACE"); t && std::string(t) == "1") opt.trace = true;

  auto common = [&](CLI::App* c) {
    c->add_option("--emit", opt.emit, "required result fragment")->check(CLI::IsMember({"prop", "fo", "fixpoint"}));
    c->add_flag("--trace", opt.trace, "print elimination steps on stderr");
    c->add_flag("--verify", opt.verify, "check the result with the finite-model oracle");
    c->add_option("--domain-size", opt.domain, "largest domain for --verify")->check(CLI::Range(1, 3));
    c->add_option("-o,--output", opt.out, "write the formula to a file");
  };

  auto* forget = app.add_subcommand("forget", "forget symbols of a theory file");
  forget->add_option("--mode", opt.mode)->check(CLI::IsMember({"strong", "weak"}));
  forget->add_option("--vars", opt.vars, "symbols to forget")->delimiter(',')->allow_extra_args(false)->required();
  forget->add_option("file", opt.file, "theory file")->required();
  common(forget);

  auto* snc = app.add_subcommand("snc", "strongest necessary condition of a query");
  auto* wsc = app.add_subcommand("wsc", "weakest sufficient condition of a query");
  for (auto* c : {snc, wsc}) {
    c->add_option("--theory", opt.theory, "theory file (default: empty theory)");
    c->add_option("--query", opt.query, "query formula")->required();
    c->add_option("--keep", opt.keep, "symbols to keep")->delimiter(',')->allow_extra_args(false);
    common(c);
  }

  auto* eq = app.add_subcommand("check-equiv", "compare two formulas or theory files");
  eq->add_option("a", opt.lhs)->required();
  eq->add_option("b", opt.rhs)->required();
  eq->add_option("--domain-size", opt.domain, "largest domain size")->check(CLI::Range(1, 3));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*forget) return cmd_forget(opt);
    if (*snc) return cmd_condition(opt, true);
    if (*wsc) return cmd_condition(opt, false);
    if (*eq) return cmd_check_equiv(opt);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const df::OracleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 1;
}
