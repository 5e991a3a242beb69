#ifndef EQLOGIC_CALCULUS_HPP
#define EQLOGIC_CALCULUS_HPP

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eqlogic/error.hpp"
#include "eqlogic/model.hpp"
#include "eqlogic/term.hpp"
#include "eqlogic/theory.hpp"

namespace eqlogic {

/// A proof tree for `E ⊢ Γ ▷ t ≡ t'`. The context Γ is not stored; it is
/// supplied top-down by check_derivation.
class Derivation {
 public:
  enum class Rule { Hyp, Base, App, Sub, Refl, Sym, Trans };

  /// One `x := t` entry of a substitution node. The sort of x is optional
  /// in the concrete syntax; when absent it is taken from t.
  struct Binding {
    std::string var;
    std::optional<SortName> sort;
    Term term;
    friend bool operator==(const Binding&, const Binding&) = default;
  };

  static Derivation hyp(std::string equation) { return Derivation(Rule::Hyp, std::move(equation)); }
  static Derivation base(std::string var) { return Derivation(Rule::Base, std::move(var)); }
  static Derivation app(std::string op, std::vector<Derivation> premises) {
    Derivation d(Rule::App, std::move(op));
    d.premises_ = std::move(premises);
    return d;
  }
  static Derivation sub(Derivation premise, std::vector<Binding> bindings) {
    Derivation d(Rule::Sub, {});
    d.premises_.push_back(std::move(premise));
    d.bindings_ = std::move(bindings);
    return d;
  }
  /// Records σ with the sorts of its source context.
  static Derivation sub(Derivation premise, const Substitution& sigma) {
    std::vector<Binding> bs;
    for (const auto& [x, s] : sigma.source()) bs.push_back({x, s, sigma(x)});
    return sub(std::move(premise), std::move(bs));
  }
  static Derivation refl(Term t) {
    Derivation d(Rule::Refl, {});
    d.term_ = std::move(t);
    return d;
  }
  static Derivation sym(Derivation premise) {
    Derivation d(Rule::Sym, {});
    d.premises_.push_back(std::move(premise));
    return d;
  }
  static Derivation trans(Derivation left, Derivation right) {
    Derivation d(Rule::Trans, {});
    d.premises_.push_back(std::move(left));
    d.premises_.push_back(std::move(right));
    return d;
  }

  Rule rule() const { return rule_; }
  /// Equation name (hyp), variable (base) or operator (app).
  const std::string& name() const { return name_; }
  const Term& term() const { return *term_; }
  const std::vector<Binding>& bindings() const { return bindings_; }
  const std::vector<Derivation>& premises() const { return premises_; }

  friend bool operator==(const Derivation&, const Derivation&) = default;

 private:
  Derivation(Rule rule, std::string name) : rule_(rule), name_(std::move(name)) {}

  Rule rule_;
  std::string name_;
  std::optional<Term> term_;
  std::vector<Binding> bindings_;
  std::vector<Derivation> premises_;
};

inline std::string_view to_string(Derivation::Rule r) {
  switch (r) {
    case Derivation::Rule::Hyp: return "hyp";
    case Derivation::Rule::Base: return "base";
    case Derivation::Rule::App: return "app";
    case Derivation::Rule::Sub: return "sub";
    case Derivation::Rule::Refl: return "refl";
    case Derivation::Rule::Sym: return "sym";
    case Derivation::Rule::Trans: return "trans";
  }
  return "?";
}

/// Node count.
inline std::size_t derivation_size(const Derivation& d) {
  std::size_t n = 1;
  for (const auto& p : d.premises()) n += derivation_size(p);
  return n;
}

/// `Γ ⊢ lhs ≡ rhs : sort`
struct Judgment {
  Context context;
  SortName sort;
  Term lhs;
  Term rhs;

  Equation as_equation() const { return Equation{context, sort, lhs, rhs}; }
  friend bool operator==(const Judgment&, const Judgment&) = default;
};

inline std::string to_string(const Judgment& j) {
  return "{" + to_string(j.context) + "} ⊢ " + to_string(j.lhs) + " ≡ " + to_string(j.rhs) + " : " + j.sort;
}

namespace detail {

inline Judgment check(const Theory& th, const Derivation& d, const Context& ctx) {
  const Signature& sig = th.signature;
  using Rule = Derivation::Rule;
  switch (d.rule()) {
    case Rule::Hyp: {
      auto it = th.equations.find(d.name());
      if (it == th.equations.end()) {
        throw Error(ErrorKind::UnknownHypothesis, "no equation named '" + d.name() + "'");
      }
      const Equation& eq = it->second;
      if (!(eq.cxt == ctx)) {
        throw Error(ErrorKind::ContextMismatch, "(hyp " + d.name() + ") concludes in context [" + to_string(eq.cxt) +
                                                    "] but is used in context [" + to_string(ctx) + "]");
      }
      return Judgment{ctx, eq.srt, eq.lhs, eq.rhs};
    }
    case Rule::Base: {
      SortName s = ctx.sort_of(d.name());
      return Judgment{ctx, s, Term::var(d.name()), Term::var(d.name())};
    }
    case Rule::App: {
      const OpDecl& decl = sig.op(d.name());
      if (decl.arity() != d.premises().size()) {
        throw Error(ErrorKind::ArityMismatch, "(app " + decl.name + ") has " + std::to_string(d.premises().size()) +
                                                  " premise(s), operator arity is " + std::to_string(decl.arity()));
      }
      std::vector<Term> lhs, rhs;
      for (std::size_t i = 0; i < decl.arity(); ++i) {
        Judgment j = check(th, d.premises()[i], ctx);
        if (j.sort != decl.arg_sorts[i]) {
          throw Error(ErrorKind::SortMismatch, "premise " + std::to_string(i) + " of (app " + decl.name +
                                                   ") has sort " + j.sort + ", expected " + decl.arg_sorts[i]);
        }
        lhs.push_back(std::move(j.lhs));
        rhs.push_back(std::move(j.rhs));
      }
      return Judgment{ctx, decl.result_sort, Term::app(decl.name, std::move(lhs)), Term::app(decl.name, std::move(rhs))};
    }
    case Rule::Sub: {
      Context source;
      Substitution::Map mapping;
      for (const auto& b : d.bindings()) {
        SortName s = sort_of(sig, ctx, b.term);
        if (b.sort && *b.sort != s) {
          throw Error(ErrorKind::SortMismatch, "binding " + b.var + ":" + *b.sort + " := " + to_string(b.term) +
                                                   " maps to a term of sort " + s);
        }
        source.bind(b.var, s);
        mapping.emplace(b.var, b.term);
      }
      Judgment premise = check(th, d.premises().front(), source);
      return Judgment{ctx, premise.sort, substitute(premise.lhs, mapping), substitute(premise.rhs, mapping)};
    }
    case Rule::Refl: {
      SortName s = sort_of(sig, ctx, d.term());
      return Judgment{ctx, s, d.term(), d.term()};
    }
    case Rule::Sym: {
      Judgment j = check(th, d.premises().front(), ctx);
      std::swap(j.lhs, j.rhs);
      return j;
    }
    case Rule::Trans: {
      Judgment left = check(th, d.premises()[0], ctx);
      Judgment right = check(th, d.premises()[1], ctx);
      if (!(left.rhs == right.lhs)) {
        throw Error(ErrorKind::MiddleTermMismatch, "trans: left premise ends in " + to_string(left.rhs) +
                                                       " but right premise starts at " + to_string(right.lhs));
      }
      return Judgment{ctx, left.sort, std::move(left.lhs), std::move(right.rhs)};
    }
  }
  throw Error(ErrorKind::ParseError, "corrupt derivation node");
}

}  // namespace detail

/// Checks `d` in context `ctx` and returns its conclusion. Premises are
/// checked left to right; the first error wins.
inline Judgment check_derivation(const Theory& th, const Derivation& d, const Context& ctx) {
  validate_context(th.signature, ctx);
  return detail::check(th, d, ctx);
}

/// Checks `d`, then evaluates its conclusion in `m`. `m` must satisfy
/// every equation of `th`; under that precondition a false result means
/// the checker or evaluator is wrong.
inline bool sound_check(const Theory& th, const Model& m, const Derivation& d, const Context& ctx) {
  SatisfactionCheck sat = satisfies_theory(m, th);
  if (!sat.holds) {
    throw Error(ErrorKind::PreconditionFailed, "model does not satisfy equation '" + sat.failing_equation + "' at " +
                                                   to_string(m, *sat.witness));
  }
  Judgment j = check_derivation(th, d, ctx);
  return equal_in_model(m, j.as_equation()).holds;
}

}  // namespace eqlogic

#endif  // EQLOGIC_CALCULUS_HPP
