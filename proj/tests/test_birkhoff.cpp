#include <gtest/gtest.h>

#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace eqlogic;
using namespace eqlogic::testing;

namespace {

template <class F>
ErrorKind error_kind(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorKind::ParseError;
}

const Context kX{{"x", "M"}};
const Context kXY{{"x", "M"}, {"y", "M"}};

}  // namespace

TEST(TermModel, EvaluatesBySubstitution) {
  Theory th = monoid_theory();
  TermModel h(th, kXY);
  Substitution s = make_substitution(th.signature, kX, kXY, {{"x", A("plus", {V("y"), V("x")})}});
  EXPECT_EQ(tm_eval(h, A("plus", {A("e"), V("x")}), s), A("plus", {A("e"), A("plus", {V("y"), V("x")})}));
  Substitution wrong = identity_subst(th.signature, kX);
  EXPECT_EQ(error_kind([&] { tm_eval(h, V("x"), wrong); }), ErrorKind::ContextMismatch);
}

TEST(IdentityDerivation, PlusEX) {
  Theory th = monoid_theory();
  Term t = A("plus", {A("e"), V("x")});
  Derivation d = identity_derivation(th, kX, t);
  EXPECT_EQ(d, Derivation::app("plus", {Derivation::app("e", {}), Derivation::base("x")}));
  EXPECT_EQ(check_derivation(th, d, kX), (Judgment{kX, "M", t, t}));
}

TEST(EvaluationDerivation, RefLAtVariables) {
  Theory th = monoid_theory();
  Substitution s = make_substitution(th.signature, kX, kXY, {{"x", A("plus", {V("x"), V("y")})}});
  Term t = A("plus", {V("x"), A("e")});
  Derivation d = evaluation_derivation(th, t, s);
  EXPECT_EQ(d, Derivation::app("plus", {Derivation::refl(A("plus", {V("x"), V("y")})), Derivation::app("e", {})}));
  Judgment j = check_derivation(th, d, kXY);
  EXPECT_EQ(j.lhs, tm_eval(TermModel(th, kXY), t, s));
  EXPECT_EQ(j.rhs, subst_apply(th.signature, t, s));
}

TEST(SatisfiesDerivation, UnitL) {
  Theory th = monoid_theory();
  Substitution s = make_substitution(th.signature, kX, kXY, {{"x", A("plus", {V("x"), V("y")})}});
  Derivation d = satisfies_derivation(th, "unitL", s);
  Judgment j = check_derivation(th, d, kXY);
  EXPECT_EQ(j.lhs, A("plus", {A("e"), A("plus", {V("x"), V("y")})}));
  EXPECT_EQ(j.rhs, A("plus", {V("x"), V("y")}));
  Substitution wrong = identity_subst(th.signature, kXY);
  EXPECT_EQ(error_kind([&] { satisfies_derivation(th, "unitL", wrong); }), ErrorKind::ContextMismatch);
  EXPECT_EQ(error_kind([&] { satisfies_derivation(th, "comm", s); }), ErrorKind::UnknownHypothesis);
}

TEST(Completeness, RoundTrip) {
  Theory th = monoid_theory();
  Equation goal = th.equation("unitL");
  Derivation evidence = term_model_evidence(th, Derivation::hyp("unitL"), kX);
  Derivation d = completeness(th, goal, evidence);
  EXPECT_EQ(check_derivation(th, d, kX).as_equation(), goal);
}

TEST(Completeness, RejectsWrongEvidence) {
  Theory th = monoid_theory();
  Equation goal = th.equation("unitL");
  EXPECT_EQ(error_kind([&] { completeness(th, goal, Derivation::hyp("unitR")); }), ErrorKind::EvidenceMismatch);
  EXPECT_EQ(error_kind([&] { completeness(th, goal, Derivation::hyp("nope")); }), ErrorKind::UnknownHypothesis);
}

class BirkhoffProperties : public ::testing::Test {
 protected:
  Rng rng{7};
};

TEST_F(BirkhoffProperties, IdentityAndEvaluation) {
  for (const char* file : {"monoid.eq", "semilattice.eq", "action.eq"}) {
    Theory th = load_theory(file);
    std::vector<SortName> sorts(th.signature.sorts().begin(), th.signature.sorts().end());
    for (int i = 0; i < 60; ++i) {
      Context delta = random_context(rng, th.signature, 2, "d");
      Context gamma = random_context(rng, th.signature, 2, "g");
      SortName s = rng.pick(sorts);
      Term t = random_term(rng, th.signature, delta, s, 4);
      EXPECT_EQ(check_derivation(th, identity_derivation(th, delta, t), delta), (Judgment{delta, s, t, t}));

      Substitution sigma = random_substitution(rng, th.signature, delta, gamma, 2);
      Judgment j = check_derivation(th, evaluation_derivation(th, t, sigma), gamma);
      EXPECT_EQ(j, (Judgment{gamma, s, tm_eval(TermModel(th, gamma), t, sigma), subst_apply(th.signature, t, sigma)}));
    }
  }
}

TEST_F(BirkhoffProperties, CompletenessOfRandomProofs) {
  Theory th = load_theory("semilattice.eq");
  DerivationGen gen(th, rng);
  for (int i = 0; i < 80; ++i) {
    Context ctx = random_context(rng, th.signature, 2);
    Derivation d = gen.any(ctx, "L", 1 + rng.below(5));
    Equation goal = check_derivation(th, d, ctx).as_equation();
    Derivation rebuilt = completeness(th, goal, term_model_evidence(th, d, ctx));
    EXPECT_EQ(check_derivation(th, rebuilt, ctx).as_equation(), goal);
  }
}
