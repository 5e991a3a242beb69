#ifndef EQLOGIC_COUNTERMODEL_HPP
#define EQLOGIC_COUNTERMODEL_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eqlogic/model.hpp"
#include "eqlogic/theory.hpp"

namespace eqlogic {

struct Countermodel {
  Model model;
  Environment witness;
};

struct CountermodelOptions {
  std::size_t max_size = 1;
  /// Cap on table-entry assignments tried before giving up.
  std::uint64_t budget = 10'000'000;
};

namespace detail {

class CountermodelSearch {
 public:
  CountermodelSearch(const Theory& th, const Equation& goal, std::uint64_t budget)
      : th_(th), goal_(goal), budget_(budget) {}

  std::optional<Countermodel> run(std::size_t max_size) {
    const Signature& sig = th_.signature;
    std::size_t nsorts = sig.sorts().size();
    for (std::size_t n = 1; n <= max_size; ++n) {
      std::vector<std::size_t> radices(nsorts, n);
      std::vector<Element> digits(nsorts, 0);
      do {
        std::vector<std::size_t> sizes(nsorts);
        std::size_t largest = 0;
        for (std::size_t i = 0; i < nsorts; ++i) {
          sizes[i] = digits[i] + 1;
          largest = std::max(largest, sizes[i]);
        }
        if (largest != n && nsorts != 0) continue;
        if (auto found = search_sizes(sizes)) return found;
      } while (detail::next_tuple(radices, digits));
      if (nsorts == 0) break;
    }
    return std::nullopt;
  }

 private:
  struct Compiled {
    FlatTerm lhs, rhs;
    std::vector<std::size_t> radices;
    std::size_t sort = 0;
  };

  struct Entry {
    std::size_t op;
    std::size_t index;
    std::size_t domain;
  };

  // A skeleton model with the right carriers and all-zero tables, used only
  // to resolve operator ids while flattening.
  Model skeleton(const std::vector<std::size_t>& sizes) const {
    RawModel raw;
    std::size_t sid = 0;
    for (const auto& s : th_.signature.sorts()) {
      auto& c = raw.carriers[s];
      for (std::size_t e = 0; e < sizes[sid]; ++e) c.push_back(std::to_string(e));
      ++sid;
    }
    for (const auto& [name, decl] : th_.signature.ops()) {
      std::vector<std::size_t> radices;
      for (const auto& s : decl.arg_sorts) radices.push_back(sizes[th_.signature.sort_index(s)]);
      std::vector<Element> digits(radices.size(), 0);
      auto& rows = raw.tables[name];
      do {
        RawModel::Row row;
        for (auto d : digits) row.args.push_back(std::to_string(d));
        row.result = "0";
        rows.push_back(std::move(row));
      } while (next_tuple(radices, digits));
    }
    return validate_model(th_.signature, raw);
  }

  Compiled compile(const Equation& eq, const Model& m, const std::vector<std::size_t>& sizes) const {
    Compiled c;
    std::map<std::string, std::size_t> slots;
    for (const auto& [x, s] : eq.cxt) {
      slots.emplace(x, c.radices.size());
      c.radices.push_back(sizes[th_.signature.sort_index(s)]);
    }
    c.lhs = flatten(eq.lhs, slots, m);
    c.rhs = flatten(eq.rhs, slots, m);
    c.sort = th_.signature.sort_index(eq.srt);
    return c;
  }

  // False if some fully determined instance of an axiom already fails.
  bool consistent() {
    auto lookup = [this](std::size_t op, std::span<const Element> args) {
      return tables_[op][tuple_index(radices_[op], args)];
    };
    for (const auto& ax : axioms_) {
      std::vector<Element> digits(ax.radices.size(), 0);
      do {
        Element l = eqlogic::detail::run(ax.lhs, digits, lookup, stack_);
        if (l == kUnknown) continue;
        Element r = eqlogic::detail::run(ax.rhs, digits, lookup, stack_);
        if (r != kUnknown && l != r) return false;
      } while (next_tuple(ax.radices, digits));
    }
    return true;
  }

  bool goal_refuted() {
    auto lookup = [this](std::size_t op, std::span<const Element> args) {
      return tables_[op][tuple_index(radices_[op], args)];
    };
    std::vector<Element> digits(goal_c_.radices.size(), 0);
    do {
      Element l = eqlogic::detail::run(goal_c_.lhs, digits, lookup, stack_);
      if (l != eqlogic::detail::run(goal_c_.rhs, digits, lookup, stack_)) return true;
    } while (next_tuple(goal_c_.radices, digits));
    return false;
  }

  bool dfs(std::size_t k) {
    if (k == entries_.size()) return goal_refuted();
    const Entry& e = entries_[k];
    for (Element v = 0; v < e.domain; ++v) {
      if (++visited_ > budget_) {
        throw Error(ErrorKind::BudgetExceeded,
                    "countermodel search exceeded its budget of " + std::to_string(budget_) + " table assignments");
      }
      tables_[e.op][e.index] = v;
      if (consistent() && dfs(k + 1)) return true;
    }
    tables_[e.op][e.index] = kUnknown;
    return false;
  }

  std::optional<Countermodel> search_sizes(const std::vector<std::size_t>& sizes) {
    Model base = skeleton(sizes);
    axioms_.clear();
    for (const auto& [_, eq] : th_.equations) axioms_.push_back(compile(eq, base, sizes));
    goal_c_ = compile(goal_, base, sizes);

    tables_.clear();
    radices_.clear();
    entries_.clear();
    for (std::size_t oid = 0; oid < th_.signature.ops().size(); ++oid) {
      const Model::Table& t = base.table(oid);
      radices_.push_back(t.radices);
      tables_.emplace_back(t.values.size(), kUnknown);
      for (std::size_t i = 0; i < t.values.size(); ++i) entries_.push_back({oid, i, sizes[t.result_sort]});
    }
    if (!consistent() || !dfs(0)) return std::nullopt;

    RawModel raw = base.raw();
    std::size_t oid = 0;
    for (auto& [name, rows] : raw.tables) {
      for (std::size_t i = 0; i < rows.size(); ++i) rows[i].result = std::to_string(tables_[oid][i]);
      ++oid;
    }
    Model m = validate_model(th_.signature, raw);
    EqualityCheck c = equal_in_model(m, goal_);
    return Countermodel{std::move(m), std::move(*c.witness)};
  }

  const Theory& th_;
  const Equation& goal_;
  std::uint64_t budget_;
  std::uint64_t visited_ = 0;

  std::vector<Compiled> axioms_;
  Compiled goal_c_;
  std::vector<std::vector<std::size_t>> radices_;  // by op id
  std::vector<std::vector<Element>> tables_;       // by op id
  std::vector<Entry> entries_;
  std::vector<Element> stack_;
};

}  // namespace detail

/// Looks for a model with discrete carriers of at most `max_size` elements
/// per sort that satisfies every equation of `th` but refutes `goal`.
/// Carrier sizes are tried by increasing largest carrier; for each size
/// assignment, tables are searched in odometer order (operators by name,
/// rows in tuple order, the last entry varying fastest) and the first hit is
/// returned together with its first refuting environment.
inline std::optional<Countermodel> search_countermodel(const Theory& th, const Equation& goal,
                                                       const CountermodelOptions& opts = {}) {
  if (opts.max_size == 0) throw Error(ErrorKind::PreconditionFailed, "max_size must be at least 1");
  validate_theory(th);
  validate_equation(th.signature, goal);
  detail::CountermodelSearch search(th, goal, opts.budget);
  return search.run(opts.max_size);
}

}  // namespace eqlogic

#endif  // EQLOGIC_COUNTERMODEL_HPP
