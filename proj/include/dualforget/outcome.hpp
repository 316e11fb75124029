#pragma once

#include <string>
#include <vector>

#include "dualforget/formula.hpp"

namespace dualforget {

enum class Rule {
  ShannonExists,
  ShannonForall,
  AckermannPos,
  AckermannNeg,
  ArtificialConjunct,
  FixpointGfp,
  FixpointLfp,
  NNF,
  Simplify,
  DistributeForall,
  ClauseRule,
};

inline const char* rule_name(Rule r) {
  switch (r) {
    case Rule::ShannonExists: return "ShannonExists";
    case Rule::ShannonForall: return "ShannonForall";
    case Rule::AckermannPos: return "AckermannPos";
    case Rule::AckermannNeg: return "AckermannNeg";
    case Rule::ArtificialConjunct: return "ArtificialConjunct";
    case Rule::FixpointGfp: return "FixpointGfp";
    case Rule::FixpointLfp: return "FixpointLfp";
    case Rule::NNF: return "NNF";
    case Rule::Simplify: return "Simplify";
    case Rule::DistributeForall: return "DistributeForall";
    case Rule::ClauseRule: return "ClauseRule";
  }
  return "?";
}

// `before` and `after` are equivalent. Eliminations record the quantified
// formula as `before` (Ex2 p. A or All2 p. A) and its quantifier-free
// equivalent as `after`.
struct TraceStep {
  Rule rule;
  Formula before;
  Formula after;
};

using Trace = std::vector<TraceStep>;

enum class Status {
  FirstOrder,     // no second-order quantifier, no fixpoint
  Fixpoint,       // contains a fixpoint literal
  NotApplicable,  // the requested rule does not match; result is the input
  Failed,         // no equivalent found; result is the residual
};

inline const char* status_name(Status s) {
  switch (s) {
    case Status::FirstOrder: return "FirstOrder";
    case Status::Fixpoint: return "Fixpoint";
    case Status::NotApplicable: return "NotApplicable";
    case Status::Failed: return "Failed";
  }
  return "?";
}

struct EliminationOutcome {
  Status status = Status::FirstOrder;
  Formula result;
  Trace trace;
  std::string reason;

  bool ok() const { return status == Status::FirstOrder || status == Status::Fixpoint; }

  static EliminationOutcome success(Formula f, Trace t = {}) {
    EliminationOutcome o;
    o.status = has_fixpoint(f) ? Status::Fixpoint : Status::FirstOrder;
    o.result = std::move(f);
    o.trace = std::move(t);
    return o;
  }
  static EliminationOutcome not_applicable(Formula input, std::string why) {
    EliminationOutcome o;
    o.status = Status::NotApplicable;
    o.result = std::move(input);
    o.reason = std::move(why);
    return o;
  }
  static EliminationOutcome failed(Formula residual, std::string why, Trace t = {}) {
    EliminationOutcome o;
    o.status = Status::Failed;
    o.result = std::move(residual);
    o.reason = std::move(why);
    o.trace = std::move(t);
    return o;
  }
};

}  // namespace dualforget
