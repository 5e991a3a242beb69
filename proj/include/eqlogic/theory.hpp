#ifndef EQLOGIC_THEORY_HPP
#define EQLOGIC_THEORY_HPP

#include <map>
#include <string>

#include "eqlogic/signature.hpp"
#include "eqlogic/term.hpp"

namespace eqlogic {

/// `cxt ⊢ lhs ≐ rhs : srt`. Each equation carries its own context.
struct Equation {
  Context cxt;
  SortName srt;
  Term lhs;
  Term rhs;

  friend bool operator==(const Equation&, const Equation&) = default;
};

inline std::string to_string(const Equation& eq) {
  return "[" + to_string(eq.cxt) + "] " + to_string(eq.lhs) + " = " + to_string(eq.rhs);
}

/// Builds an equation, inferring its sort; both sides must agree.
inline Equation make_equation(const Signature& sig, Context cxt, Term lhs, Term rhs) {
  validate_context(sig, cxt);
  SortName l = sort_of(sig, cxt, lhs);
  SortName r = sort_of(sig, cxt, rhs);
  if (l != r) throw Error(ErrorKind::SortMismatch, "equation sides have sorts " + l + " and " + r);
  return Equation{std::move(cxt), std::move(l), std::move(lhs), std::move(rhs)};
}

inline void validate_equation(const Signature& sig, const Equation& eq) {
  Equation checked = make_equation(sig, eq.cxt, eq.lhs, eq.rhs);
  if (checked.srt != eq.srt) {
    throw Error(ErrorKind::SortMismatch, "equation declared at sort " + eq.srt + " but its sides have sort " + checked.srt);
  }
}

/// A signature together with a finite family of named equations. The names
/// play the role of the index set.
struct Theory {
  Signature signature;
  std::map<std::string, Equation> equations;

  const Equation& equation(const std::string& name) const {
    auto it = equations.find(name);
    if (it == equations.end()) throw Error(ErrorKind::UnknownHypothesis, "no equation named '" + name + "'");
    return it->second;
  }

  friend bool operator==(const Theory&, const Theory&) = default;
};

inline void validate_theory(const Theory& th) {
  for (const auto& [name, eq] : th.equations) {
    if (!is_identifier(name)) throw Error(ErrorKind::InvalidIdentifier, "invalid equation name '" + name + "'");
    validate_equation(th.signature, eq);
  }
}

}  // namespace eqlogic

#endif  // EQLOGIC_THEORY_HPP
