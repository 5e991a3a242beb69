#include <gtest/gtest.h>

#include <functional>

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

// Reference semantics over the raw tables, keyed by labels.
struct Oracle {
  const RawModel& raw;

  std::string repr(const SortName& s, const std::string& a) const {
    auto it = raw.repr.find(s);
    if (it == raw.repr.end()) return a;
    auto jt = it->second.find(a);
    return jt == it->second.end() ? a : jt->second;
  }

  std::string eval(const Term& t, const std::map<std::string, std::string>& env) const {
    if (t.is_var()) return env.at(t.name());
    std::vector<std::string> args;
    for (const auto& a : t.args()) args.push_back(eval(a, env));
    for (const auto& row : raw.tables.at(t.name())) {
      if (row.args == args) return row.result;
    }
    throw std::logic_error("missing row");
  }

  // First refuting environment, trying variables in name order with the
  // last one innermost.
  std::optional<std::map<std::string, std::string>> refute(const Equation& eq) const {
    std::vector<std::pair<std::string, SortName>> vars(eq.cxt.begin(), eq.cxt.end());
    std::map<std::string, std::string> env;
    std::optional<std::map<std::string, std::string>> found;
    std::function<bool(std::size_t)> go = [&](std::size_t i) {
      if (i == vars.size()) {
        if (repr(eq.srt, eval(eq.lhs, env)) != repr(eq.srt, eval(eq.rhs, env))) {
          found = env;
          return true;
        }
        return false;
      }
      for (const auto& a : raw.carriers.at(vars[i].second)) {
        env[vars[i].first] = a;
        if (go(i + 1)) return true;
      }
      return false;
    };
    go(0);
    return found;
  }
};

std::map<std::string, std::string> labels_of(const Model& m, const Environment& env) {
  std::map<std::string, std::string> out;
  for (const auto& [x, s] : env.context) out[x] = m.label(s, env.values.at(x));
  return out;
}

RawModel z2_raw() { return z2_model().raw(); }

}  // namespace

TEST(Model, Z2MatchesXor) {
  Model m = z2_model();
  for (Element a = 0; a < 2; ++a) {
    for (Element b = 0; b < 2; ++b) {
      std::vector<Element> args{a, b};
      EXPECT_EQ(m.label("M", m.apply(m.op_id("plus"), args)), std::to_string(a ^ b));
    }
  }
}

TEST(Model, ParsedZ2EqualsBuilt) { EXPECT_EQ(load_model("z2.mdl", monoid_signature()), z2_model()); }

TEST(Model, NonCongruentOperation) {
  Signature sig = validate_signature({{"S"}, {{"f", {"S"}, "S"}}});
  RawModel raw;
  raw.carriers["S"] = {"a", "b", "c"};
  raw.repr["S"] = {{"b", "a"}};
  raw.tables["f"] = {{{"a"}, "a"}, {{"b"}, "c"}, {{"c"}, "c"}};
  try {
    validate_model(sig, raw);
    FAIL() << "expected NonCongruentOp";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonCongruentOp);
    EXPECT_NE(std::string(e.what()).find("(a) and (b)"), std::string::npos) << e.what();
  }
}

TEST(Model, ResultsAreComparedUpToEquivalence) {
  // f(a)=a and f(b)=b agree once b is identified with a.
  Signature sig = validate_signature({{"S"}, {{"f", {"S"}, "S"}}});
  RawModel raw;
  raw.carriers["S"] = {"a", "b"};
  raw.repr["S"] = {{"b", "a"}};
  raw.tables["f"] = {{{"a"}, "a"}, {{"b"}, "b"}};
  EXPECT_NO_THROW(validate_model(sig, raw));
}

TEST(Model, ValidationErrors) {
  Signature sig = monoid_signature();
  RawModel raw = z2_raw();
  raw.carriers["M"].clear();
  EXPECT_EQ(error_kind([&] { validate_model(sig, raw); }), ErrorKind::EmptyCarrier);

  raw = z2_raw();
  raw.carriers["N"] = {"0"};
  EXPECT_EQ(error_kind([&] { validate_model(sig, raw); }), ErrorKind::UndeclaredSort);

  raw = z2_raw();
  raw.carriers["M"].push_back("0");
  EXPECT_EQ(error_kind([&] { validate_model(sig, raw); }), ErrorKind::DuplicateElement);

  raw = z2_raw();
  raw.tables["plus"].pop_back();
  EXPECT_EQ(error_kind([&] { validate_model(sig, raw); }), ErrorKind::PartialTable);

  raw = z2_raw();
  raw.tables["plus"].push_back(raw.tables["plus"].front());
  EXPECT_EQ(error_kind([&] { validate_model(sig, raw); }), ErrorKind::DuplicateRow);

  raw = z2_raw();
  raw.tables["plus"][0].result = "7";
  EXPECT_EQ(error_kind([&] { validate_model(sig, raw); }), ErrorKind::UnknownElement);

  raw = z2_raw();
  raw.tables["minus"] = {};
  EXPECT_EQ(error_kind([&] { validate_model(sig, raw); }), ErrorKind::UnknownOperator);

  raw = z2_raw();
  raw.tables["e"] = {{{"0"}, "0"}};
  EXPECT_EQ(error_kind([&] { validate_model(sig, raw); }), ErrorKind::ArityMismatch);

  raw = z2_raw();
  raw.repr["M"] = {{"1", "0"}, {"0", "1"}};
  EXPECT_EQ(error_kind([&] { validate_model(sig, raw); }), ErrorKind::NonIdempotentRepr);
}

TEST(Eval, Examples) {
  Model m = z2_model();
  Context xy{{"x", "M"}, {"y", "M"}};
  Context x{{"x", "M"}};
  EXPECT_EQ(eval(m, V("x"), make_environment(m, x, {{"x", "1"}})), 1u);
  EXPECT_EQ(eval(m, A("plus", {V("x"), V("y")}), make_environment(m, xy, {{"x", "1"}, {"y", "1"}})), 0u);
  EXPECT_EQ(eval(m, A("plus", {A("e"), V("x")}), make_environment(m, x, {{"x", "1"}})), 1u);
}

TEST(Eval, RejectsBadEnvironments) {
  Model m = z2_model();
  Context x{{"x", "M"}};
  EXPECT_EQ(error_kind([&] { eval(m, V("x"), Environment{x, {}}); }), ErrorKind::MissingBinding);
  EXPECT_EQ(error_kind([&] { eval(m, V("y"), make_environment(m, x, {{"x", "0"}})); }), ErrorKind::UnboundVariable);
  EXPECT_EQ(error_kind([&] { make_environment(m, x, {{"x", "5"}}); }), ErrorKind::UnknownElement);
}

TEST(EvalEnv, Example) {
  Model m = z2_model();
  Signature sig = monoid_signature();
  Context src{{"x", "M"}, {"y", "M"}};
  Context tgt{{"z", "M"}};
  Substitution s = make_substitution(sig, src, tgt, {{"x", A("plus", {V("z"), V("z")})}, {"y", V("z")}});
  Environment out = eval_env(m, s, make_environment(m, tgt, {{"z", "1"}}));
  EXPECT_EQ(out.context, src);
  EXPECT_EQ(out.values, (std::map<std::string, Element>{{"x", 0}, {"y", 1}}));
  EXPECT_EQ(error_kind([&] { eval_env(m, s, make_environment(m, src, {{"x", "1"}, {"y", "0"}})); }),
            ErrorKind::ContextMismatch);
}

TEST(EqualInModel, Examples) {
  Model m = z2_model();
  Signature sig = monoid_signature();
  Context x{{"x", "M"}};
  EXPECT_TRUE(equal_in_model(m, make_equation(sig, x, A("plus", {V("x"), V("x")}), A("e"))).holds);
  EqualityCheck c = equal_in_model(m, make_equation(sig, x, V("x"), A("e")));
  ASSERT_FALSE(c.holds);
  EXPECT_EQ(to_string(m, *c.witness), "{x↦1}");
}

TEST(EqualInModel, UsesRepresentatives) {
  Theory th = load_theory("monoid.eq");
  Model m = load_model("z4mod2.mdl", th.signature);
  Context x{{"x", "M"}};
  EXPECT_TRUE(equal_in_model(m, make_equation(th.signature, x, A("plus", {V("x"), V("x")}), A("e"))).holds);
  EXPECT_TRUE(satisfies_theory(m, th).holds);
}

TEST(Satisfies, BundledModels) {
  Theory monoid = load_theory("monoid.eq");
  EXPECT_TRUE(satisfies_theory(load_model("z2.mdl", monoid.signature), monoid).holds);
  EXPECT_TRUE(satisfies_theory(load_model("z3.mdl", monoid.signature), monoid).holds);
  Theory sl = load_theory("semilattice.eq");
  EXPECT_TRUE(satisfies_theory(load_model("meet2.mdl", sl.signature), sl).holds);
  Theory act = load_theory("action.eq");
  EXPECT_TRUE(satisfies_theory(load_model("swap.mdl", act.signature), act).holds);
}

TEST(Satisfies, ConstantPlusFailsUnitL) {
  RawModel raw = z2_raw();
  for (auto& row : raw.tables["plus"]) row.result = "0";
  Model m = validate_model(monoid_signature(), raw);
  SatisfactionCheck c = satisfies_theory(m, monoid_theory());
  ASSERT_FALSE(c.holds);
  EXPECT_EQ(c.failing_equation, "unitL");
  EXPECT_EQ(to_string(m, *c.witness), "{x↦1}");
}

TEST(Satisfies, SignatureMismatch) {
  Theory sl = load_theory("semilattice.eq");
  EXPECT_EQ(error_kind([&] { satisfies_theory(z2_model(), sl); }), ErrorKind::PreconditionFailed);
}

class ModelProperties : public ::testing::Test {
 protected:
  Rng rng{0xab5e};
};

TEST_F(ModelProperties, EvalAgreesWithOracle) {
  for (int i = 0; i < 200; ++i) {
    Signature sig = random_signature(rng);
    Model m = random_model(rng, sig);
    RawModel raw = m.raw();
    Oracle oracle{raw};
    Context ctx = random_context(rng, sig);
    for (int k = 0; k < 5; ++k) {
      SortName s = rng.pick(std::vector<SortName>(sig.sorts().begin(), sig.sorts().end()));
      Term t = random_term(rng, sig, ctx, s, 4);
      Environment env = random_environment(rng, m, ctx);
      EXPECT_EQ(m.label(s, eval(m, t, env)), oracle.eval(t, labels_of(m, env)));
    }
  }
}

TEST_F(ModelProperties, EqualInModelAgreesWithOracle) {
  int refuted = 0;
  for (int i = 0; i < 300; ++i) {
    Signature sig = random_signature(rng);
    Model m = random_model(rng, sig, 3);
    RawModel raw = m.raw();
    Oracle oracle{raw};
    Context ctx = random_context(rng, sig, 1);
    SortName s = rng.pick(std::vector<SortName>(sig.sorts().begin(), sig.sorts().end()));
    Equation eq = make_equation(sig, ctx, random_term(rng, sig, ctx, s, 3), random_term(rng, sig, ctx, s, 3));
    EqualityCheck got = equal_in_model(m, eq);
    auto expected = oracle.refute(eq);
    ASSERT_EQ(got.holds, !expected.has_value());
    if (expected) {
      ++refuted;
      EXPECT_EQ(labels_of(m, *got.witness), *expected);
    }
  }
  EXPECT_GT(refuted, 0);
}

TEST_F(ModelProperties, SubstitutionLemma) {
  for (int i = 0; i < 200; ++i) {
    Signature sig = random_signature(rng);
    Model m = random_model(rng, sig);
    Context delta = random_context(rng, sig, 2, "d");
    Context gamma = random_context(rng, sig, 2, "g");
    SortName s = rng.pick(std::vector<SortName>(sig.sorts().begin(), sig.sorts().end()));
    Term t = random_term(rng, sig, delta, s, 4);
    Substitution sigma = random_substitution(rng, sig, delta, gamma, 3);
    Environment env = random_environment(rng, m, gamma);
    EXPECT_EQ(eval(m, subst_apply(sig, t, sigma), env), eval(m, t, eval_env(m, sigma, env)));
  }
}

TEST_F(ModelProperties, OperationsRespectEquivalence) {
  for (int i = 0; i < 200; ++i) {
    Signature sig = random_signature(rng);
    Model m = random_model(rng, sig);
    Context ctx = random_context(rng, sig);
    SortName s = rng.pick(std::vector<SortName>(sig.sorts().begin(), sig.sorts().end()));
    Term t = random_term(rng, sig, ctx, s, 4);
    Environment a = random_environment(rng, m, ctx);
    Environment b = a;
    for (auto& [x, v] : b.values) v = m.repr(m.sort_id(ctx.sort_of(x)), v);
    EXPECT_TRUE(m.equivalent(m.sort_id(s), eval(m, t, a), eval(m, t, b)));
  }
}
