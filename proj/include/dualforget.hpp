#pragma once

// Umbrella header. forget() picks the propositional engine when the
// theory has no relation symbols and the first-order engine otherwise.

#include <string>
#include <vector>

#include "dualforget/fo_engine.hpp"
#include "dualforget/formula.hpp"
#include "dualforget/normal_forms.hpp"
#include "dualforget/oracle.hpp"
#include "dualforget/outcome.hpp"
#include "dualforget/parser.hpp"
#include "dualforget/printer.hpp"
#include "dualforget/prop_engine.hpp"
#include "dualforget/substitution.hpp"

namespace dualforget {

enum class Mode { Strong, Weak };

inline bool theory_is_propositional(const Theory& th) {
  for (const auto& f : th.formulas)
    if (!is_propositional(f)) return false;
  return true;
}

inline EliminationOutcome forget(const Theory& th, const std::vector<std::string>& symbols, Mode mode) {
  if (theory_is_propositional(th))
    return mode == Mode::Strong ? forget_strong_prop(th, symbols) : forget_weak_prop(th, symbols);
  return mode == Mode::Strong ? forget_strong_fo(th, symbols) : forget_weak_fo(th, symbols);
}

}  // namespace dualforget
