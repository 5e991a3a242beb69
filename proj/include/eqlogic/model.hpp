#ifndef EQLOGIC_MODEL_HPP
#define EQLOGIC_MODEL_HPP

#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "eqlogic/error.hpp"
#include "eqlogic/signature.hpp"
#include "eqlogic/term.hpp"
#include "eqlogic/theory.hpp"

namespace eqlogic {

/// Index of an element within its sort's carrier list.
using Element = std::size_t;

/// `[A-Za-z0-9_'-]+`
inline bool is_element_label(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' || c == '\'' ||
              c == '-';
    if (!ok) return false;
  }
  return true;
}

/// Unvalidated model description, as read from a `.mdl` file. Elements are
/// referred to by label. A sort without a repr entry uses the identity.
struct RawModel {
  struct Row {
    std::vector<std::string> args;
    std::string result;
    friend bool operator==(const Row&, const Row&) = default;
  };

  std::map<SortName, std::vector<std::string>> carriers;
  std::map<SortName, std::map<std::string, std::string>> repr;
  std::map<std::string, std::vector<Row>> tables;

  friend bool operator==(const RawModel&, const RawModel&) = default;
};

namespace detail {

/// Mixed-radix index of `args`, last position varying fastest.
inline std::size_t tuple_index(std::span<const std::size_t> radices, std::span<const Element> args) {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < radices.size(); ++i) idx = idx * radices[i] + args[i];
  return idx;
}

/// Advances `digits` to the next tuple in odometer order. Returns false
/// after the last tuple.
inline bool next_tuple(std::span<const std::size_t> radices, std::span<Element> digits) {
  for (std::size_t i = radices.size(); i-- > 0;) {
    if (++digits[i] < radices[i]) return true;
    digits[i] = 0;
  }
  return false;
}

inline std::size_t product(std::span<const std::size_t> radices) {
  std::size_t n = 1;
  for (auto r : radices) n *= r;
  return n;
}

}  // namespace detail

/// A finite setoid model. Each sort has a nonempty list of labelled
/// elements and a canonical-representative map; two elements are
/// equivalent iff they share a representative. Each operator has a total
/// table that respects this equivalence.
class Model {
 public:
  struct Carrier {
    std::vector<std::string> labels;
    std::map<std::string, Element> index;
    std::vector<Element> repr;
  };

  struct Table {
    std::vector<std::size_t> arg_sorts;  // sort ids
    std::size_t result_sort = 0;
    std::vector<std::size_t> radices;
    std::vector<Element> values;  // indexed by detail::tuple_index
  };

  const Signature& signature() const { return sig_; }

  std::size_t sort_id(const SortName& s) const { return sig_.sort_index(s); }
  std::size_t op_id(const std::string& op) const {
    auto it = op_ids_.find(op);
    if (it == op_ids_.end()) throw Error(ErrorKind::UnknownOperator, "unknown operator '" + op + "'");
    return it->second;
  }

  const Carrier& carrier(std::size_t sort) const { return carriers_.at(sort); }
  const Carrier& carrier(const SortName& s) const { return carriers_.at(sort_id(s)); }
  const Table& table(std::size_t op) const { return tables_.at(op); }

  Element element(const SortName& s, const std::string& label) const {
    const Carrier& c = carrier(s);
    auto it = c.index.find(label);
    if (it == c.index.end()) throw Error(ErrorKind::UnknownElement, "'" + label + "' is not an element of sort " + s);
    return it->second;
  }

  const std::string& label(const SortName& s, Element e) const { return carrier(s).labels.at(e); }

  Element repr(std::size_t sort, Element e) const { return carriers_[sort].repr[e]; }
  bool equivalent(std::size_t sort, Element a, Element b) const { return repr(sort, a) == repr(sort, b); }

  Element apply(std::size_t op, std::span<const Element> args) const {
    const Table& t = tables_[op];
    return t.values[detail::tuple_index(t.radices, args)];
  }

  RawModel raw() const;

  friend bool operator==(const Model& a, const Model& b) { return a.raw() == b.raw() && a.sig_ == b.sig_; }

 private:
  friend Model validate_model(const Signature& sig, const RawModel& raw);

  Signature sig_;
  std::map<std::string, std::size_t> op_ids_;
  std::vector<Carrier> carriers_;  // by sort id
  std::vector<Table> tables_;      // by op id
};

inline RawModel Model::raw() const {
  RawModel r;
  std::size_t sid = 0;
  for (const auto& s : sig_.sorts()) {
    const Carrier& c = carriers_[sid++];
    r.carriers[s] = c.labels;
    for (Element e = 0; e < c.labels.size(); ++e) {
      if (c.repr[e] != e) r.repr[s][c.labels[e]] = c.labels[c.repr[e]];
    }
  }
  std::size_t oid = 0;
  for (const auto& [name, decl] : sig_.ops()) {
    const Table& t = tables_[oid++];
    auto& rows = r.tables[name];
    std::vector<Element> digits(t.radices.size(), 0);
    for (std::size_t idx = 0; idx < t.values.size(); ++idx) {
      RawModel::Row row;
      for (std::size_t i = 0; i < digits.size(); ++i) row.args.push_back(carriers_[t.arg_sorts[i]].labels[digits[i]]);
      row.result = carriers_[t.result_sort].labels[t.values[idx]];
      rows.push_back(std::move(row));
      detail::next_tuple(t.radices, digits);
    }
  }
  return r;
}

namespace detail {

inline std::string tuple_string(const Model::Table& t, const std::vector<Model::Carrier>& carriers,
                                std::span<const Element> args) {
  std::string out = "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += ",";
    out += carriers[t.arg_sorts[i]].labels[args[i]];
  }
  return out + ")";
}

}  // namespace detail

/// Checks every model invariant, including congruence of every table by
/// exhaustive enumeration.
inline Model validate_model(const Signature& sig, const RawModel& raw) {
  Model m;
  m.sig_ = sig;

  for (const auto& [s, _] : raw.carriers) {
    if (!sig.has_sort(s)) throw Error(ErrorKind::UndeclaredSort, "carrier given for undeclared sort '" + s + "'");
  }
  for (const auto& s : sig.sorts()) {
    auto it = raw.carriers.find(s);
    if (it == raw.carriers.end() || it->second.empty()) {
      throw Error(ErrorKind::EmptyCarrier, "sort " + s + " has an empty carrier");
    }
    Model::Carrier c;
    for (const auto& label : it->second) {
      if (!is_element_label(label)) throw Error(ErrorKind::InvalidIdentifier, "invalid element label '" + label + "'");
      if (!c.index.emplace(label, c.labels.size()).second) {
        throw Error(ErrorKind::DuplicateElement, "element '" + label + "' listed twice in carrier of " + s);
      }
      c.labels.push_back(label);
    }
    c.repr.resize(c.labels.size());
    for (Element e = 0; e < c.repr.size(); ++e) c.repr[e] = e;
    m.carriers_.push_back(std::move(c));
  }

  for (const auto& [s, map] : raw.repr) {
    if (!sig.has_sort(s)) throw Error(ErrorKind::UndeclaredSort, "repr given for undeclared sort '" + s + "'");
    Model::Carrier& c = m.carriers_[sig.sort_index(s)];
    for (const auto& [from, to] : map) {
      auto f = c.index.find(from);
      if (f == c.index.end()) throw Error(ErrorKind::UnknownElement, "'" + from + "' is not an element of sort " + s);
      auto t = c.index.find(to);
      if (t == c.index.end()) throw Error(ErrorKind::UnknownElement, "'" + to + "' is not an element of sort " + s);
      c.repr[f->second] = t->second;
    }
  }
  std::size_t sid = 0;
  for (const auto& s : sig.sorts()) {
    const Model::Carrier& c = m.carriers_[sid++];
    for (Element e = 0; e < c.repr.size(); ++e) {
      if (c.repr[c.repr[e]] != c.repr[e]) {
        throw Error(ErrorKind::NonIdempotentRepr, "representative of '" + c.labels[e] + "' in sort " + s +
                                                      " is not its own representative");
      }
    }
  }

  for (const auto& [op, _] : raw.tables) {
    if (!sig.has_op(op)) throw Error(ErrorKind::UnknownOperator, "table given for unknown operator '" + op + "'");
  }
  for (const auto& [name, decl] : sig.ops()) {
    m.op_ids_.emplace(name, m.tables_.size());
    Model::Table t;
    for (const auto& s : decl.arg_sorts) {
      t.arg_sorts.push_back(sig.sort_index(s));
      t.radices.push_back(m.carriers_[t.arg_sorts.back()].labels.size());
    }
    t.result_sort = sig.sort_index(decl.result_sort);
    constexpr Element unset = std::numeric_limits<Element>::max();
    t.values.assign(detail::product(t.radices), unset);

    auto rows = raw.tables.find(name);
    if (rows != raw.tables.end()) {
      for (const auto& row : rows->second) {
        if (row.args.size() != decl.arity()) {
          throw Error(ErrorKind::ArityMismatch, "table row for '" + name + "' has " + std::to_string(row.args.size()) +
                                                    " argument(s), expected " + std::to_string(decl.arity()));
        }
        std::vector<Element> args;
        for (std::size_t i = 0; i < row.args.size(); ++i) args.push_back(m.element(decl.arg_sorts[i], row.args[i]));
        Element result = m.element(decl.result_sort, row.result);
        Element& slot = t.values[detail::tuple_index(t.radices, args)];
        if (slot != unset) {
          throw Error(ErrorKind::DuplicateRow, "row " + name + detail::tuple_string(t, m.carriers_, args) + " given twice");
        }
        slot = result;
      }
    }
    std::vector<Element> digits(t.radices.size(), 0);
    for (std::size_t idx = 0; idx < t.values.size(); ++idx) {
      if (t.values[idx] == unset) {
        throw Error(ErrorKind::PartialTable, "table for '" + name + "' has no row for " + name +
                                                 detail::tuple_string(t, m.carriers_, digits));
      }
      detail::next_tuple(t.radices, digits);
    }
    m.tables_.push_back(std::move(t));
  }

  // Congruence: swapping any argument for an equivalent one must give an
  // equivalent result.
  for (const auto& [name, decl] : sig.ops()) {
    const Model::Table& t = m.tables_[m.op_ids_.at(name)];
    std::vector<Element> digits(t.radices.size(), 0);
    for (std::size_t idx = 0; idx < t.values.size(); ++idx) {
      Element r = m.repr(t.result_sort, t.values[idx]);
      for (std::size_t i = 0; i < digits.size(); ++i) {
        const Model::Carrier& c = m.carriers_[t.arg_sorts[i]];
        std::vector<Element> other = digits;
        for (Element b = 0; b < c.labels.size(); ++b) {
          if (b == digits[i] || c.repr[b] != c.repr[digits[i]]) continue;
          other[i] = b;
          if (m.repr(t.result_sort, m.apply(m.op_ids_.at(name), other)) != r) {
            throw Error(ErrorKind::NonCongruentOp, "operator '" + name + "' is not congruent: " +
                                                       detail::tuple_string(t, m.carriers_, digits) + " and " +
                                                       detail::tuple_string(t, m.carriers_, other) +
                                                       " are equivalent but their results are not");
          }
        }
      }
      detail::next_tuple(t.radices, digits);
    }
  }
  return m;
}

/// Values for the variables of `context`.
struct Environment {
  Context context;
  std::map<std::string, Element> values;

  friend bool operator==(const Environment&, const Environment&) = default;
};

inline void validate_environment(const Model& m, const Environment& env) {
  validate_context(m.signature(), env.context);
  for (const auto& [x, s] : env.context) {
    auto it = env.values.find(x);
    if (it == env.values.end()) throw Error(ErrorKind::MissingBinding, "environment has no value for '" + x + "'");
    if (it->second >= m.carrier(s).labels.size()) {
      throw Error(ErrorKind::UnknownElement, "value of '" + x + "' is not an element of sort " + s);
    }
  }
  for (const auto& [x, _] : env.values) {
    if (!env.context.contains(x)) throw Error(ErrorKind::UnboundVariable, "environment binds '" + x + "' outside its context");
  }
}

/// Builds an environment from element labels.
inline Environment make_environment(const Model& m, const Context& ctx, const std::map<std::string, std::string>& labels) {
  Environment env{ctx, {}};
  for (const auto& [x, label] : labels) {
    if (!ctx.contains(x)) throw Error(ErrorKind::UnboundVariable, "variable '" + x + "' is not bound in the context");
    env.values[x] = m.element(ctx.sort_of(x), label);
  }
  validate_environment(m, env);
  return env;
}

/// Renders as `{x↦1, y↦0}` using element labels.
inline std::string to_string(const Model& m, const Environment& env) {
  std::string out = "{";
  bool first = true;
  for (const auto& [x, s] : env.context) {
    if (!first) out += ", ";
    first = false;
    out += x + "↦" + m.label(s, env.values.at(x));
  }
  return out + "}";
}

namespace detail {

constexpr Element kUnknown = std::numeric_limits<Element>::max();

/// A term flattened to postorder with variables resolved to slots and
/// operators to ids, for tight enumeration loops.
struct FlatTerm {
  struct Node {
    bool is_var;
    std::size_t index;  // slot or op id
    std::size_t nargs;
  };
  std::vector<Node> nodes;
};

inline void flatten_into(const Term& t, const std::map<std::string, std::size_t>& slots, const Model& m,
                         FlatTerm& out) {
  if (t.is_var()) {
    out.nodes.push_back({true, slots.at(t.name()), 0});
    return;
  }
  for (const auto& a : t.args()) flatten_into(a, slots, m, out);
  out.nodes.push_back({false, m.op_id(t.name()), t.args().size()});
}

inline FlatTerm flatten(const Term& t, const std::map<std::string, std::size_t>& slots, const Model& m) {
  FlatTerm f;
  flatten_into(t, slots, m, f);
  return f;
}

/// Evaluates with `lookup(op, args)`; kUnknown from a lookup propagates.
template <class Lookup>
Element run(const FlatTerm& f, std::span<const Element> env, Lookup&& lookup, std::vector<Element>& stack) {
  stack.clear();
  for (const auto& n : f.nodes) {
    if (n.is_var) {
      stack.push_back(env[n.index]);
      continue;
    }
    std::span<const Element> args(stack.data() + stack.size() - n.nargs, n.nargs);
    Element v = kUnknown;
    bool known = true;
    for (auto a : args) known = known && a != kUnknown;
    if (known) v = lookup(n.index, args);
    stack.resize(stack.size() - n.nargs);
    stack.push_back(v);
  }
  return stack.back();
}

inline Element eval_unchecked(const Model& m, const Term& t, const std::map<std::string, Element>& values) {
  if (t.is_var()) return values.at(t.name());
  std::vector<Element> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) args.push_back(eval_unchecked(m, a, values));
  return m.apply(m.op_id(t.name()), args);
}

}  // namespace detail

/// Value of `t` under `env`. Variables read the environment; applications
/// apply the operator table to the evaluated arguments.
inline Element eval(const Model& m, const Term& t, const Environment& env) {
  validate_environment(m, env);
  sort_of(m.signature(), env.context, t);
  return detail::eval_unchecked(m, t, env.values);
}

/// The environment over σ's source sending x to the value of σ(x) under `env`.
inline Environment eval_env(const Model& m, const Substitution& sub, const Environment& env) {
  if (!(env.context == sub.target())) {
    throw Error(ErrorKind::ContextMismatch, "environment context [" + to_string(env.context) +
                                                "] differs from substitution target [" + to_string(sub.target()) + "]");
  }
  validate_environment(m, env);
  Environment out{sub.source(), {}};
  for (const auto& [x, _] : sub.source()) out.values[x] = detail::eval_unchecked(m, sub(x), env.values);
  return out;
}

struct EqualityCheck {
  bool holds = true;
  std::optional<Environment> witness;  // first refuting environment
};

/// Whether both sides agree up to equivalence under every environment.
/// Environments are visited with variables in name order, each ranging over
/// its carrier list, the last variable varying fastest.
inline EqualityCheck equal_in_model(const Model& m, const Equation& eq) {
  validate_equation(m.signature(), eq);
  std::map<std::string, std::size_t> slots;
  std::vector<std::size_t> radices;
  for (const auto& [x, s] : eq.cxt) {
    slots.emplace(x, radices.size());
    radices.push_back(m.carrier(s).labels.size());
  }
  detail::FlatTerm lhs = detail::flatten(eq.lhs, slots, m);
  detail::FlatTerm rhs = detail::flatten(eq.rhs, slots, m);
  std::size_t sort = m.sort_id(eq.srt);
  auto lookup = [&m](std::size_t op, std::span<const Element> args) { return m.apply(op, args); };

  std::vector<Element> digits(radices.size(), 0);
  std::vector<Element> stack;
  do {
    Element l = detail::run(lhs, digits, lookup, stack);
    Element r = detail::run(rhs, digits, lookup, stack);
    if (!m.equivalent(sort, l, r)) {
      Environment w{eq.cxt, {}};
      for (const auto& [x, i] : slots) w.values[x] = digits[i];
      return {false, std::move(w)};
    }
  } while (detail::next_tuple(radices, digits));
  return {};
}

struct SatisfactionCheck {
  bool holds = true;
  std::string failing_equation;
  std::optional<Environment> witness;
};

/// Conjunction over all equations, in name order; reports the first failure.
inline SatisfactionCheck satisfies_theory(const Model& m, const Theory& th) {
  if (!(m.signature() == th.signature)) {
    throw Error(ErrorKind::PreconditionFailed, "model and theory have different signatures");
  }
  for (const auto& [name, eq] : th.equations) {
    EqualityCheck c = equal_in_model(m, eq);
    if (!c.holds) return {false, name, std::move(c.witness)};
  }
  return {};
}

}  // namespace eqlogic

#endif  // EQLOGIC_MODEL_HPP
