#pragma once

// Small hand-written reference computations, independent of the engines and
// of the oracle's quantifier code, used to pin down expected values.

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dualforget.hpp"

namespace dftest {

using Edge = std::pair<int, int>;

// Transitive closure by repeated relational composition.
inline std::set<Edge> transitive_closure(const std::set<Edge>& edges) {
  std::set<Edge> tc = edges;
  for (bool grew = true; grew;) {
    grew = false;
    std::set<Edge> next = tc;
    for (const auto& [a, b] : tc)
      for (const auto& [c, d] : edges)
        if (b == c) grew |= next.insert({a, d}).second;
    tc = std::move(next);
  }
  return tc;
}

// Ex2/All2 over `vars` of f at valuation v, by enumerating all 2^n
// assignments of vars and evaluating the quantifier-free f.
inline bool brute_quantified(const dualforget::Formula& f, const std::vector<std::string>& vars,
                             dualforget::Valuation v, bool exists) {
  const std::size_t n = vars.size();
  for (std::size_t bits = 0; bits < (std::size_t{1} << n); ++bits) {
    for (std::size_t i = 0; i < n; ++i) v[vars[i]] = (bits >> i) & 1U;
    bool val = dualforget::eval_prop(f, v);
    if (exists && val) return true;
    if (!exists && !val) return false;
  }
  return !exists;
}

// Relation with the given tuples over domain n (arity 2, index a + b*n).
inline dualforget::Relation binary_relation(int n, const std::set<Edge>& tuples) {
  dualforget::Relation r;
  r.arity = 2;
  for (const auto& [a, b] : tuples) r.bits |= std::uint64_t{1} << (a + b * n);
  return r;
}

}  // namespace dftest
