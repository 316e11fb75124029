#include <gtest/gtest.h>

#include "dualforget.hpp"
#include "support/properties.hpp"

using namespace dualforget;

namespace {

Formula P(const std::string& s) { return parse_formula(s); }

Theory T(const std::string& text) { return parse_theory(text).theory; }

const char* kToy = "mt -> lp | mp\nht -> lp\n";
const char* kTennis = "tc & sp & (bdg | loan | inv)\n";
const char* kConsultant = "(tc | sp) -> (isq & gc)\nisq -> ~loan\ngc -> loan\n";

}  // namespace

TEST(Shannon, Examples) {
  EXPECT_EQ(shannon_eliminate(Quant::Exists, "lt", P("lt | lp")), Formula::top());
  EXPECT_EQ(shannon_eliminate(Quant::Forall, "lt", P("lt | lp")), P("lp"));
  EXPECT_EQ(shannon_eliminate(Quant::Exists, "p", P("q")), P("q"));
}

TEST(AckermannProp, ArtificialConjunctForNegativeOccurrence) {
  // Ex2 pa. ~((fdd -> (~ld | pa)) -> pa); its negation is the wsc fdd & ld
  Formula f = P("~((fdd -> (~ld | pa)) -> pa)");
  EliminationOutcome o = ackermann_prop("pa", f);
  ASSERT_TRUE(o.ok());
  EXPECT_EQ(o.result, P("~fdd | ~ld"));
  ASSERT_FALSE(o.trace.empty());
}

TEST(AckermannProp, GroupsDefinitionalClauses) {
  Formula f = P("(p -> q) & (~p | r)");
  EliminationOutcome o = ackermann_prop("p", f);
  ASSERT_TRUE(o.ok());
  EXPECT_TRUE(equiv_prop(o.result, Formula::exists2("p", f)));
  EXPECT_EQ(o.result, Formula::top());
  EXPECT_EQ(o.trace.front().rule, Rule::AckermannPos);
}

TEST(AckermannProp, BiconditionalSplitsIntoDefinitions) {
  // nnf(p <-> q) = (~p | q) & (p | ~q): the first conjunct is p -> q with a
  // residual negative in p, so the lemma applies and gives T.
  EliminationOutcome o = ackermann_prop("p", P("p <-> q"));
  ASSERT_TRUE(o.ok());
  EXPECT_EQ(o.result, Formula::top());
}

TEST(AckermannProp, InseparableOccurrencesAreNotApplicable) {
  Formula f = P("(p <-> q) | s");
  EliminationOutcome o = ackermann_prop("p", f);
  EXPECT_EQ(o.status, Status::NotApplicable);
  EXPECT_EQ(o.result, f);
  EXPECT_TRUE(equiv_prop(shannon_eliminate(Quant::Exists, "p", f), Formula::top()));
}

TEST(AckermannProp, RejectsRelationSymbols) {
  EXPECT_THROW(ackermann_prop("r", P("r(a) | q")), std::invalid_argument);
}

TEST(ClauseRule, Examples) {
  EXPECT_EQ(clause_forall_eliminate(P("All2 q. All2 r. (~~q | ~r | ~s | t)")), P("~s | t"));
  EXPECT_EQ(clause_forall_eliminate({"p"}, P("p | ~p | s")), Formula::top());
  EXPECT_EQ(clause_forall_eliminate({"p", "p1"}, P("p | ~p1")), Formula::bottom());
  EXPECT_FALSE(clause_forall_eliminate({"p"}, P("(p & q) | s")).has_value());
}

TEST(ForgetStrongProp, Examples) {
  EXPECT_EQ(forget_strong_prop(T(kToy), {"mt", "ht"}).result, Formula::top());
  EXPECT_TRUE(equiv_prop(forget_strong_prop(T(kTennis), {"loan"}).result, P("tc & sp")));
  EXPECT_TRUE(equiv_prop(forget_strong_prop(T(kConsultant), {"loan"}).result,
                         P("((tc | sp) -> (isq & gc)) & (isq -> ~gc)")));
}

TEST(ForgetStrongProp, AbsentSymbolEmptyListEmptyTheory) {
  EXPECT_EQ(forget_strong_prop(T("p | q\n"), {"s"}).result, P("p | q"));
  EXPECT_EQ(forget_strong_prop(T("p & T\n"), {}).result, P("p"));
  EXPECT_EQ(forget_strong_prop(Theory{}, {"p"}).result, Formula::top());
}

TEST(ForgetWeakProp, Examples) {
  EXPECT_EQ(forget_weak_prop(T(kToy), {"mt", "ht"}).result, P("lp"));
  EXPECT_TRUE(equiv_prop(forget_weak_prop(T(kTennis), {"loan"}).result, P("tc & sp & (bdg | inv)")));
  EXPECT_TRUE(equiv_prop(forget_weak_prop(T(kConsultant), {"loan"}).result,
                         P("((tc | sp) -> (isq & gc)) & ~isq & ~gc")));
  EXPECT_EQ(forget_weak_prop(T("lt | lp\n"), {"lt"}).result, P("lp"));
}

TEST(ForgetWeakProp, AbsentSymbolEmptyListEmptyTheory) {
  EXPECT_EQ(forget_weak_prop(T("p | q\n"), {"s"}).result, P("p | q"));
  EXPECT_EQ(forget_weak_prop(T("p | F\n"), {}).result, P("p"));
  EXPECT_EQ(forget_weak_prop(Theory{}, {"p"}).result, Formula::top());
}

TEST(ForgetWeakProp, TraceUsesConjunctwiseSteps) {
  EliminationOutcome o = forget_weak_prop(T(kToy), {"mt", "ht"});
  std::vector<Rule> rules;
  for (const auto& s : o.trace) rules.push_back(s.rule);
  EXPECT_NE(std::find(rules.begin(), rules.end(), Rule::DistributeForall), rules.end());
  EXPECT_NE(std::find(rules.begin(), rules.end(), Rule::ClauseRule), rules.end());
}

TEST(SncWsc, Examples) {
  Theory empty;
  EXPECT_EQ(wsc(empty, P("(fdd -> (~ld | pa)) -> pa"), {"ld", "fdd"}).result, P("fdd & ld"));
  EXPECT_EQ(snc(empty, P("(fdd -> (~ld | pa)) -> pa"), {"ld", "fdd"}).result, Formula::top());
  EXPECT_EQ(snc(empty, P("p & q"), {"q"}).result, P("q"));
  EXPECT_EQ(snc(empty, Formula::bottom(), {"q"}).result, Formula::bottom());
  EXPECT_EQ(wsc(T(kToy), Formula::top(), {"lp", "mp"}).result, Formula::top());
  Theory toy = T(kToy);
  EXPECT_TRUE(equiv_prop(snc(toy, Formula::top(), {"lp", "mp"}).result,
                         forget_strong_prop(toy, {"mt", "ht"}).result));
  Theory neg;
  neg.formulas = {Formula::negate(toy.conjunction())};
  EXPECT_TRUE(equiv_prop(wsc(neg, Formula::bottom(), {"lp", "mp"}).result,
                         forget_weak_prop(toy, {"mt", "ht"}).result));
}

TEST(PropProperties, RandomTheories) {
  dftest::Report r = dftest::check_prop_properties(41, 300, 10);
  EXPECT_TRUE(r.ok()) << r.summary();
}
