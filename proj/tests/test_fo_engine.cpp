#include <gtest/gtest.h>

#include "dualforget.hpp"
#include "support/properties.hpp"

using namespace dualforget;

namespace {

Formula P(const std::string& s) { return parse_formula(s); }

Formula P(const std::string& s, std::set<std::string> free) {
  Signature sig;
  ParseOptions o;
  o.free_vars = std::move(free);
  return parse_formula(s, sig, o);
}

Theory T(const std::string& text) { return parse_theory(text).theory; }

const char* kSymptoms =
    "all x. (ms(x) -> (h(x) & t(x)))\n"
    "all x. ((ss(x) | t(x)) -> ich(x))\n";
const char* kNetwork =
    "all x. all y. ((con(x,y) | ex z. (con(x,z) & r(z,y))) -> r(x,y))\n"
    "all y. ((ex x. (ex(x) & r(x,y))) -> (in(y) -> sec(y)))\n";

const char* kStrongSymptoms = "all x. (ms(x) -> h(x)) & all x. ((ss(x) | ms(x)) -> ich(x))";
const char* kClosureText = "lfp r(x,y). (con(x,y) | ex z. (con(x,z) & r(z,y))) @(x,y)";

bool equiv(const Formula& a, const Formula& b, int dom = 2) { return equiv_fo_finite(a, b, dom).equivalent; }

}  // namespace

TEST(ToAckermannForm, DefinitionalClauseOfSymptoms) {
  Formula f = nnf(T(kSymptoms).conjunction());
  auto form = to_ackermann_form("t", f);
  ASSERT_TRUE(form.has_value());
  EXPECT_EQ(form->polarity_case, AckCase::Neg);
  EXPECT_EQ(form->params, (std::vector<std::string>{"x"}));
  EXPECT_EQ(form->definiens, P("ms(x)", {"x"}));
  EXPECT_EQ(form->definitional, P("all x. (ms(x) -> t(x))"));
  EXPECT_NE(polarity(form->residual, "t"), Polarity::Positive);
}

TEST(ToAckermannForm, IsolatesNegativeLiteralWithEqualityGuards) {
  auto form = to_ackermann_form("r", P("~r(x,y)", {"x", "y"}));
  ASSERT_TRUE(form.has_value());
  EXPECT_EQ(form->polarity_case, AckCase::Pos);
  EXPECT_EQ(form->definitional, P("all u. all w. (r(u,w) -> u != x | w != y)", {"x", "y"}));
  EXPECT_EQ(form->residual, Formula::top());
}

TEST(ToAckermannForm, InseparableOccurrencesGiveNone) {
  EXPECT_FALSE(to_ackermann_form("r", P("r(a) | ~r(b)")).has_value());
  EXPECT_FALSE(to_ackermann_form("r", P("(r(a) | r(b)) & (~r(a) | ~r(b))")).has_value());
}

TEST(ToAckermannForm, BiconditionalWithConstantArgumentSplits) {
  auto form = to_ackermann_form("r", P("r(a) <-> q"));
  ASSERT_TRUE(form.has_value());
  EXPECT_TRUE(equiv(ackermann_fo("r", *form), Formula::exists2("r", P("r(a) <-> q"))));
}

TEST(AckermannFO, SymptomsStrong) {
  Formula f = T(kSymptoms).conjunction();
  auto form = to_ackermann_form("t", f);
  ASSERT_TRUE(form.has_value());
  Formula out = ackermann_fo("t", *form);
  EXPECT_FALSE(occurs(out, "t"));
  EXPECT_TRUE(equiv(out, P(kStrongSymptoms)));
}

TEST(AckermannFO, NetworkConjunctUnderNegatedExistential) {
  // Ex2 r. (~r(x,y) & (con(x,y) | ex z. (con(x,z) & r(z,y)))) with x, y free
  Formula inner = P("~r(x,y) & (con(x,y) | ex z. (con(x,z) & r(z,y)))", {"x", "y"});
  auto form = to_ackermann_form("r", inner);
  ASSERT_TRUE(form.has_value());
  Formula out = ackermann_fo("r", *form);
  EXPECT_TRUE(equiv(out, Formula::exists2("r", inner)));
  Formula closed = simplify(nnf(Formula::negate(Formula::exists(std::vector<std::string>{"x", "y"}, out))));
  EXPECT_TRUE(equiv(closed, P("all x. all y. ~con(x,y)")));
  // the weaker all x. all z. (con(x,z) -> z = x) alone is not equivalent
  EXPECT_FALSE(equiv(closed, P("all x. all z. (con(x,z) -> z = x)"), 1));
}

TEST(AckermannFO, TopResidualAndContractViolation) {
  AckermannForm form;
  form.params = {"x"};
  form.definiens = P("g(x)", {"x"});
  form.residual = Formula::top();
  EXPECT_EQ(ackermann_fo("r", form), Formula::top());
  form.definiens = P("r(x)", {"x"});
  EXPECT_THROW(ackermann_fo("r", form), std::logic_error);
}

TEST(FixpointEliminate, NetworkGivesLeastFixpoint) {
  Formula f = T(kNetwork).conjunction();
  EliminationOutcome o = fixpoint_eliminate("r", f);
  ASSERT_EQ(o.status, Status::Fixpoint) << o.reason;
  EXPECT_NE(to_string(o.result).find(kClosureText), std::string::npos) << to_string(o.result);
  EXPECT_FALSE(has_second_order(o.result));
  EXPECT_TRUE(equiv(o.result, Formula::exists2("r", f)));
}

TEST(FixpointEliminate, RFreeDefiniensDegeneratesToAckermann) {
  Formula f = T(kSymptoms).conjunction();
  EliminationOutcome o = fixpoint_eliminate("t", f);
  ASSERT_EQ(o.status, Status::FirstOrder);
  EXPECT_EQ(o.result, ackermann_fo("t", *to_ackermann_form("t", f)));
}

TEST(FixpointEliminate, GreatestFixpointForPositiveCase) {
  // Ex2 r. (all x. (r(x) -> g(x) & ex y. (e(x,y) & r(y))) & r(a))
  Formula f = P("all x. (r(x) -> g(x) & ex y. (e(x,y) & r(y))) & r(a)");
  EliminationOutcome o = fixpoint_eliminate("r", f);
  ASSERT_EQ(o.status, Status::Fixpoint) << o.reason;
  EXPECT_NE(to_string(o.result).find("gfp"), std::string::npos);
  EXPECT_TRUE(equiv(o.result, Formula::exists2("r", f)));
}

TEST(FixpointEliminate, NoDefinitionalClausesFails) {
  EliminationOutcome o = fixpoint_eliminate("r", P("(r(a) | r(b)) & (~r(a) | ~r(b))"));
  EXPECT_EQ(o.status, Status::Failed);
  EXPECT_FALSE(o.reason.empty());
}

TEST(ClauseFormFO, EqualityDisjunction) {
  auto out = clause_form_eliminate_fo("r", P("All2 r. all x. all y. all z. (r(x) | ~r(y) | ~r(z) | e(y,z))"));
  ASSERT_TRUE(out.has_value());
  EXPECT_EQ(*out, P("all x. all y. all z. (y = x | z = x | e(y,z))"));
  EXPECT_TRUE(equiv(*out, P("All2 r. all x. all y. all z. (r(x) | ~r(y) | ~r(z) | e(y,z))"), 3));
}

TEST(ClauseFormFO, TupleEqualityIsComponentwise) {
  auto out = clause_form_eliminate_fo("r", P("all x. all y. (r(x,y) | ~r(y,x))"));
  ASSERT_TRUE(out.has_value());
  EXPECT_EQ(*out, P("all x. all y. (y = x & x = y)"));
}

TEST(ClauseFormFO, OneSidedClausesDropTheRelation) {
  EXPECT_EQ(*clause_form_eliminate_fo("r", P("all x. (~r(x) | g(x))")), P("all x. g(x)"));
  EXPECT_EQ(*clause_form_eliminate_fo("r", P("all x. (r(x) | g(x))")), P("all x. g(x)"));
}

TEST(ClauseFormFO, ShapeMismatchGivesNone) {
  EXPECT_FALSE(clause_form_eliminate_fo("r", P("all x. (r(x) & g(x))")).has_value());
  EXPECT_FALSE(clause_form_eliminate_fo("r", P("all x. (ex y. r(y) | g(x))")).has_value());
}

TEST(ForgetStrongFO, Examples) {
  EliminationOutcome o = forget_strong_fo(T(kSymptoms), {"t"});
  ASSERT_EQ(o.status, Status::FirstOrder);
  EXPECT_TRUE(equiv(o.result, P(kStrongSymptoms)));

  EliminationOutcome n = forget_strong_fo(T(kNetwork), {"r"});
  ASSERT_EQ(n.status, Status::Fixpoint);
  EXPECT_NE(to_string(n.result).find(kClosureText), std::string::npos);

  Theory th = T(kSymptoms);
  EXPECT_EQ(forget_strong_fo(th, {"zz"}).result, simplify(th.conjunction()));
}

TEST(ForgetWeakFO, Examples) {
  EliminationOutcome o = forget_weak_fo(T(kSymptoms), {"t"});
  ASSERT_EQ(o.status, Status::FirstOrder);
  EXPECT_TRUE(equiv(o.result, P("all x. ~ms(x) & all x. (ms(x) -> h(x)) & all x. ich(x)")));
  EXPECT_TRUE(equiv(o.result, P("all x. ~ms(x) & all x. ich(x)")));
  EXPECT_EQ(forget_weak_fo(Theory{}, {"r"}).result, Formula::top());
}

TEST(ForgetWeakFO, NetworkMatchesSecondOrderSemantics) {
  Theory th = T(kNetwork);
  EliminationOutcome o = forget_weak_fo(th, {"r"});
  ASSERT_EQ(o.status, Status::FirstOrder);
  EXPECT_TRUE(equiv(o.result, Formula::forall2("r", th.conjunction())));
  EXPECT_TRUE(equiv(o.result, P("all x. all y. ~con(x,y) & all y. ((ex x. ex(x)) -> (in(y) -> sec(y)))")));
}

TEST(ForgetFO, FailureReportsPartialProgress) {
  Theory th = T("all x. (g(x) -> t(x))\n(r(a) | r(b)) & (~r(a) | ~r(b))\nall x. (t(x) -> s(x))\n");
  EliminationOutcome o = forget_strong_fo(th, {"t", "r"});
  ASSERT_EQ(o.status, Status::Failed);
  EXPECT_NE(o.reason.find("mixed-polarity occurrences of r not separable"), std::string::npos);
  EXPECT_FALSE(occurs(o.result, "t"));
  EXPECT_TRUE(o.result.is(Kind::Exists2));
  EXPECT_EQ(o.result.name(), "r");
}

TEST(ForgetFO, FixpointsAreTerminal) {
  EliminationOutcome o = forget_strong_fo(T(kNetwork), {"r", "con"});
  EXPECT_EQ(o.status, Status::Failed);
  EXPECT_NE(o.reason.find("fixpoint"), std::string::npos);
}

TEST(ForgetFO, WeakFailureIdentifiesConjunct) {
  Theory th = T("all x. g(x)\nex x. ((~r(a) & ~r(x)) | (r(a) & r(x)))\n");
  EliminationOutcome o = forget_weak_fo(th, {"r"});
  ASSERT_EQ(o.status, Status::Failed);
  EXPECT_NE(o.reason.find("conjunct 2"), std::string::npos) << o.reason;
}

TEST(ForgetFO, OpenTheoryIsRejected) {
  Theory th;
  th.formulas = {P("g(x)", {"x"})};
  EXPECT_THROW(forget_strong_fo(th, {"g"}), std::invalid_argument);
}

TEST(ForgetFO, PropositionalSymbolsInFirstOrderTheories) {
  Theory th = T("all x. (g(x) -> p)\np -> all x. s(x)\n");
  EliminationOutcome s = forget_strong_fo(th, {"p"});
  EliminationOutcome w = forget_weak_fo(th, {"p"});
  ASSERT_TRUE(s.ok());
  ASSERT_TRUE(w.ok());
  EXPECT_TRUE(equiv(s.result, Formula::exists2("p", th.conjunction())));
  EXPECT_TRUE(equiv(w.result, Formula::forall2("p", th.conjunction())));
}

TEST(FOProperties, ClauseFragmentSoundness) {
  dftest::Report r = dftest::check_fo_clause_properties(51, 120, 2);
  EXPECT_TRUE(r.ok()) << r.summary();
}

TEST(FOProperties, TraceStepsAreEquivalences) {
  dftest::Report r = dftest::check_trace_validity(52, 40);
  EXPECT_TRUE(r.ok()) << r.summary();
}
