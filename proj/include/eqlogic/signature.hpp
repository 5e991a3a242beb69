#ifndef EQLOGIC_SIGNATURE_HPP
#define EQLOGIC_SIGNATURE_HPP

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "eqlogic/error.hpp"

namespace eqlogic {

using SortName = std::string;

/// `[A-Za-z_][A-Za-z0-9_'-]*`
inline bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(s.front())) return false;
  for (char c : s.substr(1)) {
    if (!alpha(c) && !digit(c) && c != '\'' && c != '-') return false;
  }
  return true;
}

/// An operator symbol. Position i of `arg_sorts` is argument index i; the
/// sort stored there is the sort that argument must have.
struct OpDecl {
  std::string name;
  std::vector<SortName> arg_sorts;
  SortName result_sort;

  std::size_t arity() const { return arg_sorts.size(); }
  friend bool operator==(const OpDecl&, const OpDecl&) = default;
};

/// Unvalidated input to validate_signature. Duplicates are allowed here and
/// reported by validation.
struct RawSignature {
  std::vector<SortName> sorts;
  std::vector<OpDecl> ops;
};

/// A closed signature: sorts plus a flat namespace of operator declarations.
/// Immutable once constructed through validate_signature.
class Signature {
 public:
  Signature() = default;

  const std::set<SortName>& sorts() const { return sorts_; }
  const std::map<std::string, OpDecl>& ops() const { return ops_; }

  bool has_sort(std::string_view s) const { return sorts_.find(std::string(s)) != sorts_.end(); }
  bool has_op(std::string_view op) const { return ops_.find(std::string(op)) != ops_.end(); }

  const OpDecl& op(std::string_view name) const {
    auto it = ops_.find(std::string(name));
    if (it == ops_.end()) throw Error(ErrorKind::UnknownOperator, "unknown operator '" + std::string(name) + "'");
    return it->second;
  }

  /// Position of `s` among the sorted sort names.
  std::size_t sort_index(std::string_view s) const {
    auto it = sorts_.find(std::string(s));
    if (it == sorts_.end()) throw Error(ErrorKind::UndeclaredSort, "undeclared sort '" + std::string(s) + "'");
    return static_cast<std::size_t>(std::distance(sorts_.begin(), it));
  }

  RawSignature raw() const {
    RawSignature r;
    r.sorts.assign(sorts_.begin(), sorts_.end());
    for (const auto& [_, decl] : ops_) r.ops.push_back(decl);
    return r;
  }

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  friend Signature validate_signature(const RawSignature& raw);

  std::set<SortName> sorts_;
  std::map<std::string, OpDecl> ops_;
};

inline Signature validate_signature(const RawSignature& raw) {
  Signature sig;
  for (const auto& s : raw.sorts) {
    if (!is_identifier(s)) throw Error(ErrorKind::InvalidIdentifier, "invalid sort name '" + s + "'");
    if (!sig.sorts_.insert(s).second) throw Error(ErrorKind::DuplicateSort, "sort '" + s + "' declared twice");
  }
  for (const auto& decl : raw.ops) {
    if (!is_identifier(decl.name)) throw Error(ErrorKind::InvalidIdentifier, "invalid operator name '" + decl.name + "'");
    if (sig.ops_.count(decl.name)) throw Error(ErrorKind::DuplicateOperator, "operator '" + decl.name + "' declared twice");
    for (const auto& s : decl.arg_sorts) {
      if (!sig.sorts_.count(s)) {
        throw Error(ErrorKind::UndeclaredSort, "undeclared sort '" + s + "' in arguments of operator '" + decl.name + "'");
      }
    }
    if (!sig.sorts_.count(decl.result_sort)) {
      throw Error(ErrorKind::UndeclaredSort,
                  "undeclared sort '" + decl.result_sort + "' as result of operator '" + decl.name + "'");
    }
    sig.ops_.emplace(decl.name, decl);
  }
  return sig;
}

inline const std::vector<SortName>& arity(const Signature& sig, std::string_view op) { return sig.op(op).arg_sorts; }

}  // namespace eqlogic

#endif  // EQLOGIC_SIGNATURE_HPP
