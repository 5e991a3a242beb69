#ifndef EQLOGIC_CLI_HPP
#define EQLOGIC_CLI_HPP

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "eqlogic/birkhoff.hpp"
#include "eqlogic/calculus.hpp"
#include "eqlogic/countermodel.hpp"
#include "eqlogic/frontend/parser.hpp"
#include "eqlogic/frontend/printer.hpp"
#include "eqlogic/model.hpp"

namespace eqlogic::cli {

enum ExitCode : int { kOk = 0, kProofError = 1, kInputError = 2 };

namespace detail {

using nlohmann::json;

/// Raised for unreadable files; reported as an input error.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An error raised while checking a proof, as opposed to loading one.
struct ProofFailure {
  Error error;
};

template <class F>
decltype(auto) proving(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw ProofFailure{e};
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <class F>
auto in_file(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.detail(), e.pos());
  }
}

inline Theory load_theory(const std::string& path) {
  std::string text = read_file(path);
  return in_file(path, [&] { return frontend::parse_theory(text); });
}

inline Model load_model(const std::string& path, const Signature& sig) {
  std::string text = read_file(path);
  return in_file(path, [&] { return frontend::parse_model(text, sig); });
}

inline frontend::ProofScript load_proof(const std::string& path, const Theory& th) {
  std::string text = read_file(path);
  return in_file(path, [&] { return frontend::parse_proof(text, th); });
}

inline json env_json(const Model& m, const Environment& env) {
  json j = json::object();
  for (const auto& [x, s] : env.context) j[x] = m.label(s, env.values.at(x));
  return j;
}

inline json model_json(const Model& m) {
  RawModel raw = m.raw();
  json j;
  j["carriers"] = raw.carriers;
  j["repr"] = json::object();
  for (const auto& [s, map] : raw.repr) j["repr"][s] = map;
  j["tables"] = json::object();
  for (const auto& [op, rows] : raw.tables) {
    json rs = json::array();
    for (const auto& r : rows) rs.push_back({{"args", r.args}, {"result", r.result}});
    j["tables"][op] = rs;
  }
  return j;
}

/// Sorts of the variables of `t`, read off the argument positions they
/// occupy. A variable standing alone has no such position and is left out.
inline void infer_sorts(const Signature& sig, const Term& t, std::map<std::string, SortName>& out) {
  if (t.is_var()) return;
  const OpDecl& decl = sig.op(t.name());
  for (std::size_t i = 0; i < t.args().size() && i < decl.arity(); ++i) {
    const Term& a = t.args()[i];
    if (a.is_var()) {
      auto [it, fresh] = out.emplace(a.name(), decl.arg_sorts[i]);
      if (!fresh && it->second != decl.arg_sorts[i]) {
        throw Error(ErrorKind::SortMismatch,
                    "variable '" + a.name() + "' is used at sorts " + it->second + " and " + decl.arg_sorts[i]);
      }
    } else {
      infer_sorts(sig, a, out);
    }
  }
}

inline std::map<std::string, std::string> parse_env(const std::string& text) {
  std::map<std::string, std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == item.size()) {
      throw Error(ErrorKind::ParseError, "malformed --env entry '" + item + "', expected name=element");
    }
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err, bool json) : out_(out), err_(err), json_(json) {}

  int ok(json payload, const std::string& text) {
    if (json_) {
      payload["status"] = "ok";
      out_ << payload.dump() << '\n';
    } else {
      out_ << text;
    }
    return kOk;
  }

  int fail(int code, const std::string& kind, const std::string& message, json extra = json::object(),
           std::optional<SourcePos> pos = std::nullopt) {
    err_ << "error: " << message << '\n';
    if (json_) {
      json j = std::move(extra);
      j["status"] = code == kProofError ? "proof-error" : "input-error";
      j["error"] = {{"kind", kind}, {"message", message}};
      if (pos) j["error"]["line"] = pos->line, j["error"]["column"] = pos->column;
      out_ << j.dump() << '\n';
    }
    return code;
  }

  template <class F>
  int guard(F&& body) {
    try {
      return body();
    } catch (const ProofFailure& f) {
      return fail(kProofError, std::string(to_string(f.error.kind())), f.error.what(), json::object(), f.error.pos());
    } catch (const Error& e) {
      return fail(is_proof_error(e.kind()) ? kProofError : kInputError, std::string(to_string(e.kind())), e.what(),
                  json::object(), e.pos());
    } catch (const IoError& e) {
      return fail(kInputError, "IoError", e.what());
    }
  }

  std::ostream& out() { return out_; }
  bool json_mode() const { return json_; }

 private:
  std::ostream& out_;
  std::ostream& err_;
  bool json_;
};

}  // namespace detail

/// Entry point shared by the `eqlogic` binary and the tests. `args` excludes
/// the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using detail::json;

  CLI::App app{"Multi-sorted equational logic workbench"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  app.add_flag("--json", as_json, "Emit a machine-readable JSON object on standard output");

  std::string theory_path, model_path, proof_path, term_text, env_text, ctx_text, eq_text;
  std::size_t max_size = 1;
  std::uint64_t budget = CountermodelOptions{}.budget;

  auto* check = app.add_subcommand("check", "Check a proof script against a theory");
  check->add_option("theory", theory_path, "Theory file (.eq)")->required();
  check->add_option("proof", proof_path, "Proof script (.prf)")->required();

  auto* eval = app.add_subcommand("eval", "Evaluate a term in a finite model");
  eval->add_option("theory", theory_path, "Theory file (.eq)")->required();
  eval->add_option("model", model_path, "Model file (.mdl)")->required();
  eval->add_option("term", term_text, "Term to evaluate")->required();
  eval->add_option("--env", env_text, "Variable values, e.g. x=0,y=1");
  eval->add_option("--ctx", ctx_text, "Context, e.g. \"[x:M, y:M]\" (inferred when omitted)");

  auto* satisfies = app.add_subcommand("satisfies", "Check that a model satisfies every equation of a theory");
  satisfies->add_option("theory", theory_path, "Theory file (.eq)")->required();
  satisfies->add_option("model", model_path, "Model file (.mdl)")->required();

  auto* sound = app.add_subcommand("sound", "Check a proof and evaluate its conclusion in a model");
  sound->add_option("theory", theory_path, "Theory file (.eq)")->required();
  sound->add_option("model", model_path, "Model file (.mdl)")->required();
  sound->add_option("proof", proof_path, "Proof script (.prf)")->required();

  auto* complete = app.add_subcommand("complete", "Rebuild a proof through the term model");
  complete->add_option("theory", theory_path, "Theory file (.eq)")->required();
  complete->add_option("proof", proof_path, "Proof script whose derivation is the term-model evidence")->required();

  auto* counter = app.add_subcommand("countermodel", "Search small finite models for a counterexample");
  counter->add_option("theory", theory_path, "Theory file (.eq)")->required();
  counter->add_option("equation", eq_text, "Equation, e.g. \"[x,y:M] plus(x,y) = plus(y,x)\"")->required();
  counter->add_option("--max-size", max_size, "Largest carrier size to try")->required()->check(CLI::PositiveNumber);
  counter->add_option("--budget", budget, "Cap on table assignments tried");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    if (as_json) out << json{{"status", "input-error"}, {"error", {{"kind", "UsageError"}, {"message", e.what()}}}}.dump() << '\n';
    return kInputError;
  }

  detail::Runner r(out, err, as_json);

  if (check->parsed()) {
    return r.guard([&] {
      Theory th = detail::load_theory(theory_path);
      frontend::ProofScript p = detail::load_proof(proof_path, th);
      Judgment got = detail::proving([&] { return frontend::check_proof(th, p); });
      return r.ok({{"judgment", to_string(got)}, {"size", derivation_size(p.derivation)}}, to_string(got) + "\n");
    });
  }

  if (eval->parsed()) {
    return r.guard([&] {
      Theory th = detail::load_theory(theory_path);
      Model m = detail::load_model(model_path, th.signature);
      Term t = frontend::parse_term(std::string_view(term_text), th.signature);
      std::map<std::string, std::string> labels = detail::parse_env(env_text);
      Context ctx;
      if (!ctx_text.empty()) {
        ctx = frontend::parse_context(std::string_view(ctx_text), th.signature);
      } else {
        std::map<std::string, SortName> sorts;
        detail::infer_sorts(th.signature, t, sorts);
        for (const auto& x : free_vars(t)) {
          if (sorts.count(x)) continue;
          // A lone variable: take the only sort whose carrier has its value.
          auto value = labels.find(x);
          if (value == labels.end()) throw Error(ErrorKind::MissingBinding, "no --env value for '" + x + "'");
          std::vector<SortName> candidates;
          for (const auto& s : th.signature.sorts()) {
            if (m.carrier(s).index.count(value->second)) candidates.push_back(s);
          }
          if (candidates.size() != 1) {
            throw Error(ErrorKind::SortMismatch, "cannot infer the sort of '" + x + "'; pass --ctx");
          }
          sorts[x] = candidates.front();
        }
        ctx = Context(sorts);
      }
      Environment env = make_environment(m, ctx, labels);
      Element v = eqlogic::eval(m, t, env);
      SortName s = sort_of(th.signature, ctx, t);
      const std::string& label = m.label(s, v);
      return r.ok({{"value", label}, {"sort", s}}, label + "\n");
    });
  }

  if (satisfies->parsed()) {
    return r.guard([&] {
      Theory th = detail::load_theory(theory_path);
      Model m = detail::load_model(model_path, th.signature);
      SatisfactionCheck c = satisfies_theory(m, th);
      if (c.holds) {
        return r.ok({{"satisfied", true}}, "satisfied: all " + std::to_string(th.equations.size()) + " equation(s) hold\n");
      }
      std::string w = to_string(m, *c.witness);
      std::string msg = "equation '" + c.failing_equation + "' fails at " + w;
      if (!r.json_mode()) r.out() << "fails: " << c.failing_equation << " at " << w << '\n';
      return r.fail(kProofError, "NotSatisfied", msg,
                    {{"satisfied", false}, {"equation", c.failing_equation}, {"witness", detail::env_json(m, *c.witness)}});
    });
  }

  if (sound->parsed()) {
    return r.guard([&] {
      Theory th = detail::load_theory(theory_path);
      Model m = detail::load_model(model_path, th.signature);
      frontend::ProofScript p = detail::load_proof(proof_path, th);
      Judgment j = detail::proving([&] { return frontend::check_proof(th, p); });
      bool holds = detail::proving([&] { return sound_check(th, m, p.derivation, p.claim.context); });
      if (holds) return r.ok({{"sound", true}, {"judgment", to_string(j)}}, "sound: " + to_string(j) + " holds in the model\n");
      EqualityCheck c = equal_in_model(m, j.as_equation());
      return r.fail(kProofError, "Unsound", "conclusion " + to_string(j) + " fails in the model at " + to_string(m, *c.witness),
                    {{"sound", false}, {"judgment", to_string(j)}, {"witness", detail::env_json(m, *c.witness)}});
    });
  }

  if (complete->parsed()) {
    return r.guard([&] {
      Theory th = detail::load_theory(theory_path);
      frontend::ProofScript p = detail::load_proof(proof_path, th);
      Derivation d = detail::proving([&] { return completeness(th, p.claim.as_equation(), p.derivation); });
      frontend::ProofScript result{p.theory, p.claim, d};
      std::string text = frontend::print_proof(result);
      Judgment rechecked = check_derivation(th, d, p.claim.context);
      if (!(rechecked == p.claim)) {
        throw Error(ErrorKind::ConclusionMismatch, "rebuilt proof concludes " + to_string(rechecked));
      }
      return r.ok({{"judgment", to_string(rechecked)}, {"size", derivation_size(d)}, {"proof", text}}, text);
    });
  }

  if (counter->parsed()) {
    return r.guard([&] {
      Theory th = detail::load_theory(theory_path);
      Equation goal = frontend::parse_equation(eq_text, th.signature);
      std::optional<Countermodel> found = search_countermodel(th, goal, {max_size, budget});
      if (!found) return r.ok({{"model", nullptr}}, "none up to " + std::to_string(max_size) + "\n");
      std::string text = frontend::print_model(found->model) + "# witness: " + to_string(found->model, found->witness) + "\n";
      return r.ok({{"model", detail::model_json(found->model)}, {"witness", detail::env_json(found->model, found->witness)}},
                  text);
    });
  }
  return kInputError;
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, out, err);
}

}  // namespace eqlogic::cli

#endif  // EQLOGIC_CLI_HPP
