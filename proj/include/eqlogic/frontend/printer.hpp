#ifndef EQLOGIC_FRONTEND_PRINTER_HPP
#define EQLOGIC_FRONTEND_PRINTER_HPP

#include <sstream>
#include <string>

#include "eqlogic/calculus.hpp"
#include "eqlogic/frontend/parser.hpp"
#include "eqlogic/model.hpp"
#include "eqlogic/theory.hpp"

// Canonical printers. Every printer emits text that the matching parser reads
// back to an equal value; nullary applications are always written `e()`.

namespace eqlogic::frontend {

inline std::string print_theory(const Theory& th) {
  std::ostringstream os;
  for (const auto& s : th.signature.sorts()) os << "sort " << s << '\n';
  for (const auto& [name, decl] : th.signature.ops()) {
    os << "op " << name << " :";
    for (const auto& s : decl.arg_sorts) os << ' ' << s;
    os << " -> " << decl.result_sort << '\n';
  }
  for (const auto& [name, eq] : th.equations) {
    os << "eq " << name << " [" << to_string(eq.cxt) << "] : " << to_string(eq.lhs) << " = " << to_string(eq.rhs)
       << '\n';
  }
  return os.str();
}

inline std::string print_model(const Model& m) {
  RawModel raw = m.raw();
  std::ostringstream os;
  for (const auto& [s, labels] : raw.carriers) {
    os << "carrier " << s << " =";
    for (std::size_t i = 0; i < labels.size(); ++i) os << (i ? ", " : " ") << labels[i];
    os << '\n';
  }
  for (const auto& [s, map] : raw.repr) {
    for (const auto& [from, to] : map) os << "repr " << s << ": " << from << " -> " << to << '\n';
  }
  for (const auto& [op, rows] : raw.tables) {
    for (const auto& row : rows) {
      os << "table " << op << '(';
      for (std::size_t i = 0; i < row.args.size(); ++i) os << (i ? "," : "") << row.args[i];
      os << ") = " << row.result << '\n';
    }
  }
  return os.str();
}

namespace detail {

inline std::string binding_string(const Derivation::Binding& b) {
  std::string out = "(" + b.var;
  if (b.sort) out += ":" + *b.sort;
  return out + " := " + to_string(b.term) + ")";
}

inline std::string flat(const Derivation& d) {
  using Rule = Derivation::Rule;
  std::string out = "(" + std::string(to_string(d.rule()));
  switch (d.rule()) {
    case Rule::Hyp:
    case Rule::Base:
      out += " " + d.name();
      break;
    case Rule::App:
      out += " " + d.name();
      for (const auto& p : d.premises()) out += " " + flat(p);
      break;
    case Rule::Sub: {
      out += " " + flat(d.premises().front()) + " (";
      for (std::size_t i = 0; i < d.bindings().size(); ++i) out += (i ? " " : "") + binding_string(d.bindings()[i]);
      out += ")";
      break;
    }
    case Rule::Refl:
      out += " " + to_string(d.term());
      break;
    case Rule::Sym:
    case Rule::Trans:
      for (const auto& p : d.premises()) out += " " + flat(p);
      break;
  }
  return out + ")";
}

inline void pretty(std::ostringstream& os, const Derivation& d, std::size_t indent, std::size_t width) {
  std::string one_line = flat(d);
  if (indent + one_line.size() <= width || d.premises().empty()) {
    os << one_line;
    return;
  }
  std::string pad(indent + 2, ' ');
  os << '(' << to_string(d.rule());
  if (d.rule() == Derivation::Rule::App) os << ' ' << d.name();
  for (const auto& p : d.premises()) {
    os << '\n' << pad;
    pretty(os, p, indent + 2, width);
  }
  if (d.rule() == Derivation::Rule::Sub) {
    os << '\n' << pad << '(';
    for (std::size_t i = 0; i < d.bindings().size(); ++i) os << (i ? " " : "") << binding_string(d.bindings()[i]);
    os << ')';
  }
  os << ')';
}

}  // namespace detail

/// One-line s-expression.
inline std::string to_sexpr(const Derivation& d) { return detail::flat(d); }

/// Indented s-expression, breaking nodes that do not fit in `width`.
inline std::string print_derivation(const Derivation& d, std::size_t width = 80) {
  std::ostringstream os;
  detail::pretty(os, d, 0, width);
  return os.str();
}

inline std::string print_proof(const ProofScript& p) {
  std::ostringstream os;
  if (p.theory) os << "theory " << *p.theory << '\n';
  os << "prove [" << to_string(p.claim.context) << "] : " << to_string(p.claim.lhs) << " = " << to_string(p.claim.rhs)
     << '\n';
  os << print_derivation(p.derivation) << '\n';
  return os.str();
}

}  // namespace eqlogic::frontend

#endif  // EQLOGIC_FRONTEND_PRINTER_HPP
