#ifndef EQLOGIC_TERM_HPP
#define EQLOGIC_TERM_HPP

#include <algorithm>
#include <initializer_list>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "eqlogic/error.hpp"
#include "eqlogic/signature.hpp"

namespace eqlogic {

/// A first-order term: a variable, or an operator applied to an ordered
/// argument list. Terms carry no sort; sorting is relative to a signature
/// and a context (see sort_of).
class Term {
 public:
  enum class Kind { Var, App };

  static Term var(std::string name) { return Term(Kind::Var, std::move(name), {}); }
  static Term app(std::string op, std::vector<Term> args = {}) { return Term(Kind::App, std::move(op), std::move(args)); }

  Kind kind() const { return kind_; }
  bool is_var() const { return kind_ == Kind::Var; }
  bool is_app() const { return kind_ == Kind::App; }
  /// Variable name or operator name.
  const std::string& name() const { return name_; }
  const std::vector<Term>& args() const { return args_; }

  std::size_t size() const {
    std::size_t n = 1;
    for (const auto& a : args_) n += a.size();
    return n;
  }

  std::size_t depth() const {
    std::size_t d = 0;
    for (const auto& a : args_) d = std::max(d, a.depth());
    return d + 1;
  }

  friend bool operator==(const Term&, const Term&) = default;

 private:
  Term(Kind kind, std::string name, std::vector<Term> args) : kind_(kind), name_(std::move(name)), args_(std::move(args)) {}

  Kind kind_;
  std::string name_;
  std::vector<Term> args_;
};

inline void print(std::ostream& os, const Term& t) {
  os << t.name();
  if (t.is_var()) return;
  os << '(';
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    if (i) os << ',';
    print(os, t.args()[i]);
  }
  os << ')';
}

inline std::ostream& operator<<(std::ostream& os, const Term& t) {
  print(os, t);
  return os;
}

inline std::string to_string(const Term& t) {
  std::ostringstream os;
  print(os, t);
  return os.str();
}

/// Finite assignment of sorts to variable names. Two contexts are equal iff
/// they bind the same names to the same sorts.
class Context {
 public:
  using Map = std::map<std::string, SortName>;

  Context() = default;
  Context(std::initializer_list<std::pair<const std::string, SortName>> init) : bindings_(init) {}
  explicit Context(Map bindings) : bindings_(std::move(bindings)) {}

  const Map& bindings() const { return bindings_; }
  bool empty() const { return bindings_.empty(); }
  std::size_t size() const { return bindings_.size(); }
  bool contains(const std::string& x) const { return bindings_.count(x) != 0; }

  const SortName& sort_of(const std::string& x) const {
    auto it = bindings_.find(x);
    if (it == bindings_.end()) throw Error(ErrorKind::UnboundVariable, "variable '" + x + "' is not bound in the context");
    return it->second;
  }

  /// Adds a binding; fails on a repeated name.
  void bind(const std::string& x, SortName s) {
    if (!bindings_.emplace(x, std::move(s)).second) {
      throw Error(ErrorKind::DuplicateVariable, "variable '" + x + "' bound twice");
    }
  }

  auto begin() const { return bindings_.begin(); }
  auto end() const { return bindings_.end(); }

  friend bool operator==(const Context&, const Context&) = default;

 private:
  Map bindings_;
};

/// Renders as `x:M, y:N` (no brackets).
inline std::string to_string(const Context& ctx) {
  std::string out;
  bool first = true;
  for (const auto& [x, s] : ctx) {
    if (!first) out += ", ";
    first = false;
    out += x + ":" + s;
  }
  return out;
}

inline void validate_context(const Signature& sig, const Context& ctx) {
  for (const auto& [x, s] : ctx) {
    if (!is_identifier(x)) throw Error(ErrorKind::InvalidIdentifier, "invalid variable name '" + x + "'");
    if (!sig.has_sort(s)) throw Error(ErrorKind::UndeclaredSort, "undeclared sort '" + s + "' for variable '" + x + "'");
  }
}

/// Sort of `t` over `ctx`, or the first sorting error in left-to-right order.
inline SortName sort_of(const Signature& sig, const Context& ctx, const Term& t) {
  if (t.is_var()) return ctx.sort_of(t.name());
  const OpDecl& decl = sig.op(t.name());
  if (decl.arity() != t.args().size()) {
    throw Error(ErrorKind::ArityMismatch, "operator '" + decl.name + "' expects " + std::to_string(decl.arity()) +
                                              " argument(s), got " + std::to_string(t.args().size()));
  }
  for (std::size_t i = 0; i < decl.arity(); ++i) {
    SortName got = sort_of(sig, ctx, t.args()[i]);
    if (got != decl.arg_sorts[i]) {
      throw Error(ErrorKind::SortMismatch, "argument " + std::to_string(i) + " of '" + decl.name + "' expects sort " +
                                               decl.arg_sorts[i] + ", got " + got);
    }
  }
  return decl.result_sort;
}

inline void collect_free_vars(const Term& t, std::set<std::string>& out) {
  if (t.is_var()) {
    out.insert(t.name());
    return;
  }
  for (const auto& a : t.args()) collect_free_vars(a, out);
}

inline std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> out;
  collect_free_vars(t, out);
  return out;
}

/// A parallel substitution from `source` (Δ) to `target` (Γ): a Γ-term for
/// every Δ-variable, preserving sorts.
class Substitution {
 public:
  using Map = std::map<std::string, Term>;

  Substitution() = default;

  const Context& source() const { return source_; }
  const Context& target() const { return target_; }
  const Map& mapping() const { return mapping_; }

  const Term& operator()(const std::string& x) const {
    auto it = mapping_.find(x);
    if (it == mapping_.end()) throw Error(ErrorKind::MissingBinding, "substitution has no binding for '" + x + "'");
    return it->second;
  }

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  friend Substitution make_substitution(const Signature&, Context, Context, Map);

  Context source_;
  Context target_;
  Map mapping_;
};

/// Validates totality on `source`, absence of extra bindings, and sort
/// preservation.
inline Substitution make_substitution(const Signature& sig, Context source, Context target, Substitution::Map mapping) {
  for (const auto& [x, s] : source) {
    auto it = mapping.find(x);
    if (it == mapping.end()) throw Error(ErrorKind::MissingBinding, "substitution has no binding for '" + x + "'");
    SortName got = sort_of(sig, target, it->second);
    if (got != s) {
      throw Error(ErrorKind::SortMismatch,
                  "binding for '" + x + "' must have sort " + s + ", got " + got + " (" + to_string(it->second) + ")");
    }
  }
  for (const auto& [x, _] : mapping) {
    if (!source.contains(x)) throw Error(ErrorKind::UnboundVariable, "substitution binds '" + x + "' outside its source context");
  }
  Substitution sub;
  sub.source_ = std::move(source);
  sub.target_ = std::move(target);
  sub.mapping_ = std::move(mapping);
  return sub;
}

/// Structural `t[σ]` with no sort checking.
inline Term substitute(const Term& t, const Substitution::Map& mapping) {
  if (t.is_var()) {
    auto it = mapping.find(t.name());
    if (it == mapping.end()) throw Error(ErrorKind::MissingBinding, "substitution has no binding for '" + t.name() + "'");
    return it->second;
  }
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) args.push_back(substitute(a, mapping));
  return Term::app(t.name(), std::move(args));
}

inline Term subst_apply(const Signature& sig, const Term& t, const Substitution& sub) {
  sort_of(sig, sub.source(), t);
  return substitute(t, sub.mapping());
}

/// `first` then `second`: x ↦ first(x)[second].
inline Substitution compose(const Signature& sig, const Substitution& first, const Substitution& second) {
  if (!(first.target() == second.source())) {
    throw Error(ErrorKind::ContextMismatch, "cannot compose substitutions: target [" + to_string(first.target()) +
                                                "] differs from source [" + to_string(second.source()) + "]");
  }
  Substitution::Map m;
  for (const auto& [x, t] : first.mapping()) m.emplace(x, substitute(t, second.mapping()));
  return make_substitution(sig, first.source(), second.target(), std::move(m));
}

}  // namespace eqlogic

#endif  // EQLOGIC_TERM_HPP
