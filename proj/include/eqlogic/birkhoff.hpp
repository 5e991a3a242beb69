#ifndef EQLOGIC_BIRKHOFF_HPP
#define EQLOGIC_BIRKHOFF_HPP

#include <string>
#include <utility>
#include <vector>

#include "eqlogic/calculus.hpp"
#include "eqlogic/term.hpp"
#include "eqlogic/theory.hpp"

// The term model and the derivations that witness its basic properties.
// Each builder below returns a Derivation; none of them decide anything, they
// only assemble proof trees that check_derivation then accepts.

namespace eqlogic {

/// σ0 : Sub Γ Γ, sending every variable to itself.
inline Substitution identity_subst(const Signature& sig, const Context& ctx) {
  Substitution::Map m;
  for (const auto& [x, _] : ctx) m.emplace(x, Term::var(x));
  return make_substitution(sig, ctx, ctx, std::move(m));
}

/// Terms over a fixed context, quotiented by derivable equality. Equality
/// in this model is only semi-decidable, so it is not a Model; what it
/// offers is evaluation, whose results are compared by derivations.
class TermModel {
 public:
  TermModel(Theory theory, Context context) : theory_(std::move(theory)), context_(std::move(context)) {
    validate_theory(theory_);
    validate_context(theory_.signature, context_);
  }

  const Theory& theory() const { return theory_; }
  const Context& context() const { return context_; }

  /// Interprets `t` with σ as the environment: variables are looked up in
  /// σ and every operator is interpreted by itself.
  Term eval(const Term& t, const Substitution& sigma) const {
    if (!(sigma.target() == context_)) {
      throw Error(ErrorKind::ContextMismatch, "environment targets [" + to_string(sigma.target()) +
                                                  "], term model is over [" + to_string(context_) + "]");
    }
    sort_of(theory_.signature, sigma.source(), t);
    return interpret(t, sigma);
  }

 private:
  static Term interpret(const Term& t, const Substitution& sigma) {
    if (t.is_var()) return sigma(t.name());
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (const auto& a : t.args()) args.push_back(interpret(a, sigma));
    return Term::app(t.name(), std::move(args));
  }

  Theory theory_;
  Context context_;
};

inline Term tm_eval(const TermModel& h, const Term& t, const Substitution& sigma) { return h.eval(t, sigma); }

namespace detail {

inline Derivation identity_tree(const Term& t) {
  if (t.is_var()) return Derivation::base(t.name());
  std::vector<Derivation> ps;
  for (const auto& a : t.args()) ps.push_back(identity_tree(a));
  return Derivation::app(t.name(), std::move(ps));
}

inline Derivation evaluation_tree(const Term& t, const Substitution& sigma) {
  if (t.is_var()) return Derivation::refl(sigma(t.name()));
  std::vector<Derivation> ps;
  for (const auto& a : t.args()) ps.push_back(evaluation_tree(a, sigma));
  return Derivation::app(t.name(), std::move(ps));
}

}  // namespace detail

/// Proof of `ctx ⊢ t[σ0] ≡ t`: base at variables, app at applications.
inline Derivation identity_derivation(const Theory& th, const Context& ctx, const Term& t) {
  validate_context(th.signature, ctx);
  sort_of(th.signature, ctx, t);
  return detail::identity_tree(t);
}

/// Proof of `Γ ⊢ tm_eval(t, σ) ≡ t[σ]`: refl (σ x) at variables, app at
/// applications. Both sides coincide syntactically; the tree keeps the
/// congruence structure anyway.
inline Derivation evaluation_derivation(const Theory& th, const Term& t, const Substitution& sigma) {
  sort_of(th.signature, sigma.source(), t);
  return detail::evaluation_tree(t, sigma);
}

/// Proof that the term model validates equation `name` under σ:
///   tm_eval(l,σ) ≡ l[σ] ≡ r[σ] ≡ tm_eval(r,σ).
inline Derivation satisfies_derivation(const Theory& th, const std::string& name, const Substitution& sigma) {
  const Equation& eq = th.equation(name);
  if (!(sigma.source() == eq.cxt)) {
    throw Error(ErrorKind::ContextMismatch, "substitution source [" + to_string(sigma.source()) +
                                                "] differs from the context of '" + name + "' [" + to_string(eq.cxt) +
                                                "]");
  }
  return Derivation::trans(
      evaluation_derivation(th, eq.lhs, sigma),
      Derivation::trans(Derivation::sub(Derivation::hyp(name), sigma),
                        Derivation::sym(evaluation_derivation(th, eq.rhs, sigma))));
}

/// Turns evidence at the term model, a proof of
/// `Γ ⊢ tm_eval(lhs,σ0) ≡ tm_eval(rhs,σ0)`, into a proof of the goal by
/// the chain
///   lhs ≡ lhs[σ0] ≡ tm_eval(lhs,σ0) ≡ tm_eval(rhs,σ0) ≡ rhs[σ0] ≡ rhs.
inline Derivation completeness(const Theory& th, const Equation& goal, const Derivation& evidence) {
  validate_equation(th.signature, goal);
  Substitution sigma0 = identity_subst(th.signature, goal.cxt);
  TermModel model(th, goal.cxt);
  Judgment required{goal.cxt, goal.srt, model.eval(goal.lhs, sigma0), model.eval(goal.rhs, sigma0)};
  Judgment got = check_derivation(th, evidence, goal.cxt);
  if (!(got == required)) {
    throw Error(ErrorKind::EvidenceMismatch, "evidence concludes " + to_string(got) + ", expected " + to_string(required));
  }
  return Derivation::trans(
      Derivation::sym(identity_derivation(th, goal.cxt, goal.lhs)),
      Derivation::trans(
          Derivation::sym(evaluation_derivation(th, goal.lhs, sigma0)),
          Derivation::trans(evidence, Derivation::trans(evaluation_derivation(th, goal.rhs, sigma0),
                                                        identity_derivation(th, goal.cxt, goal.rhs)))));
}

/// Conjugates a proof `d` of `Γ ⊢ lhs ≡ rhs` to the σ0-evaluated forms, the
/// shape of evidence completeness expects.
inline Derivation term_model_evidence(const Theory& th, const Derivation& d, const Context& ctx) {
  Judgment j = check_derivation(th, d, ctx);
  Substitution sigma0 = identity_subst(th.signature, ctx);
  return Derivation::trans(evaluation_derivation(th, j.lhs, sigma0),
                           Derivation::trans(d, Derivation::sym(evaluation_derivation(th, j.rhs, sigma0))));
}

}  // namespace eqlogic

#endif  // EQLOGIC_BIRKHOFF_HPP
