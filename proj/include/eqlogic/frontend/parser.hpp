#ifndef EQLOGIC_FRONTEND_PARSER_HPP
#define EQLOGIC_FRONTEND_PARSER_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eqlogic/calculus.hpp"
#include "eqlogic/error.hpp"
#include "eqlogic/frontend/lexer.hpp"
#include "eqlogic/model.hpp"
#include "eqlogic/signature.hpp"
#include "eqlogic/term.hpp"
#include "eqlogic/theory.hpp"

namespace eqlogic::frontend {

inline constexpr std::size_t kMaxNesting = 512;

/// A `.prf` file: an optional theory reference, the claimed judgment, and
/// the derivation that should prove it.
struct ProofScript {
  std::optional<std::string> theory;
  Judgment claim;
  Derivation derivation;

  friend bool operator==(const ProofScript&, const ProofScript&) = default;
};

struct Line {
  std::size_t number;
  std::vector<Token> tokens;
  std::string_view raw;
};

/// Splits into lines, drops comments, lexes, and skips blank lines.
inline std::vector<Line> lex_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    std::string_view raw = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    ++lineno;
    Line line{lineno, {}, raw};
    lex_line(strip_comment(raw), lineno, line.tokens);
    if (!line.tokens.empty()) out.push_back(std::move(line));
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return out;
}

inline TokenStream stream_of(const Line& line) {
  return TokenStream(line.tokens, SourcePos{line.number, line.raw.size() + 1});
}

inline std::string expect_identifier(TokenStream& ts, std::string_view what) {
  if (!ts.at(Tok::Word) || !is_identifier(ts.peek().text)) ts.fail(what);
  return ts.next().text;
}

/// Term := Ident '(' [Term (',' Term)*] ')' | Ident. A bare identifier
/// naming a declared operator is a nullary application; anything else is a
/// variable.
inline Term parse_term(TokenStream& ts, const Signature& sig, std::size_t depth = 0) {
  if (depth > kMaxNesting) throw Error(ErrorKind::ParseError, "term nested too deeply", ts.peek().pos);
  std::string name = expect_identifier(ts, "term");
  if (!ts.at(Tok::LParen)) {
    if (sig.has_op(name)) return Term::app(std::move(name));
    return Term::var(std::move(name));
  }
  ts.next();
  std::vector<Term> args;
  if (!ts.at(Tok::RParen)) {
    args.push_back(parse_term(ts, sig, depth + 1));
    while (ts.at(Tok::Comma)) {
      ts.next();
      args.push_back(parse_term(ts, sig, depth + 1));
    }
  }
  ts.expect(Tok::RParen, "',' or ')'");
  return Term::app(std::move(name), std::move(args));
}

/// '[' [Binder (',' Binder)*] ']' where Binder := Ident [':' Sort]. Names
/// without a sort take the sort of the next sorted binder, so `[x,y:M]`
/// binds both x and y to M.
inline Context parse_context(TokenStream& ts, const Signature& sig) {
  ts.expect(Tok::LBracket);
  Context ctx;
  std::vector<Token> pending;
  auto bind = [&](const Token& name, const std::string& sort, SourcePos sort_pos) {
    if (sig.has_op(name.text)) {
      throw Error(ErrorKind::InvalidIdentifier, "variable '" + name.text + "' clashes with an operator name", name.pos);
    }
    if (!sig.has_sort(sort)) throw Error(ErrorKind::UndeclaredSort, "undeclared sort '" + sort + "'", sort_pos);
    try {
      ctx.bind(name.text, sort);
    } catch (const Error& e) {
      throw e.at(name.pos);
    }
  };
  if (!ts.at(Tok::RBracket)) {
    while (true) {
      if (!ts.at(Tok::Word) || !is_identifier(ts.peek().text)) ts.fail("variable name");
      pending.push_back(ts.next());
      if (ts.at(Tok::Colon)) {
        ts.next();
        Token sort = ts.peek();
        std::string s = expect_identifier(ts, "sort name");
        for (const auto& name : pending) bind(name, s, sort.pos);
        pending.clear();
      }
      if (!ts.at(Tok::Comma)) break;
      ts.next();
    }
  }
  if (!pending.empty()) ts.fail("':' and a sort");
  ts.expect(Tok::RBracket, "',' or ']'");
  return ctx;
}

namespace detail {

inline void expect_end(TokenStream& ts) {
  if (!ts.at(Tok::End)) ts.fail("end of line");
}

// Runs `f`, attaching `pos` to any error that has no position yet.
template <class F>
auto positioned(SourcePos pos, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw e.at(pos);
  }
}

}  // namespace detail

/// Line-oriented theory file:
///   sort <Ident>
///   op <Ident> : <Sort>* -> <Sort>
///   eq <Ident> [<ctx>] : <Term> = <Term>
/// Declarations may appear in any order.
inline Theory parse_theory(std::string_view text) {
  std::vector<Line> lines = lex_lines(text);

  struct SortDecl {
    std::string name;
    SourcePos pos;
  };
  struct OpLine {
    OpDecl decl;
    SourcePos pos;
  };
  std::vector<SortDecl> sorts;
  std::vector<OpLine> ops;
  std::vector<const Line*> eq_lines;

  for (const auto& line : lines) {
    TokenStream ts = stream_of(line);
    if (ts.at_word("sort")) {
      ts.next();
      Token name = ts.peek();
      sorts.push_back({expect_identifier(ts, "sort name"), name.pos});
      detail::expect_end(ts);
    } else if (ts.at_word("op")) {
      ts.next();
      Token name = ts.peek();
      OpLine op{{expect_identifier(ts, "operator name"), {}, {}}, name.pos};
      ts.expect(Tok::Colon);
      while (ts.at(Tok::Word)) op.decl.arg_sorts.push_back(expect_identifier(ts, "sort name"));
      ts.expect(Tok::Arrow, "sort name or '->'");
      op.decl.result_sort = expect_identifier(ts, "result sort");
      detail::expect_end(ts);
      ops.push_back(std::move(op));
    } else if (ts.at_word("eq")) {
      eq_lines.push_back(&line);
    } else {
      ts.fail("'sort', 'op' or 'eq'");
    }
  }

  // Validate incrementally so each error points at the offending line.
  RawSignature raw;
  for (const auto& s : sorts) {
    raw.sorts.push_back(s.name);
    detail::positioned(s.pos, [&] { return validate_signature(raw); });
  }
  for (const auto& op : ops) {
    raw.ops.push_back(op.decl);
    detail::positioned(op.pos, [&] { return validate_signature(raw); });
  }

  Theory th{validate_signature(raw), {}};
  for (const Line* line : eq_lines) {
    TokenStream ts = stream_of(*line);
    ts.expect_word("eq");
    Token name = ts.peek();
    std::string eq_name = expect_identifier(ts, "equation name");
    Context ctx = parse_context(ts, th.signature);
    ts.expect(Tok::Colon);
    Token lhs_tok = ts.peek();
    Term lhs = parse_term(ts, th.signature);
    ts.expect(Tok::Equals, "'='");
    Term rhs = parse_term(ts, th.signature);
    detail::expect_end(ts);
    Equation eq = detail::positioned(lhs_tok.pos, [&] { return make_equation(th.signature, ctx, lhs, rhs); });
    if (!th.equations.emplace(eq_name, std::move(eq)).second) {
      throw Error(ErrorKind::DuplicateEquation, "equation '" + eq_name + "' defined twice", name.pos);
    }
  }
  return th;
}

namespace detail {

inline std::string expect_label(TokenStream& ts) {
  if (!ts.at(Tok::Word) || !is_element_label(ts.peek().text)) ts.fail("element");
  return ts.next().text;
}

}  // namespace detail

/// Model file:
///   carrier <Sort> = <elem>(, <elem>)*
///   repr <Sort>: <elem> -> <elem>
///   table <op>(<elem>,*) = <elem>
inline RawModel parse_raw_model(std::string_view text, const Signature& sig) {
  std::vector<Line> lines = lex_lines(text);
  RawModel raw;
  struct RowLine {
    std::string op;
    RawModel::Row row;
    std::vector<SourcePos> arg_pos;
    SourcePos op_pos, result_pos;
  };
  std::vector<RowLine> rows;

  for (const auto& line : lines) {
    TokenStream ts = stream_of(line);
    if (ts.at_word("carrier")) {
      ts.next();
      Token sort = ts.peek();
      std::string s = expect_identifier(ts, "sort name");
      if (!sig.has_sort(s)) throw Error(ErrorKind::UndeclaredSort, "undeclared sort '" + s + "'", sort.pos);
      if (raw.carriers.count(s)) throw Error(ErrorKind::ParseError, "carrier of " + s + " given twice", sort.pos);
      ts.expect(Tok::Equals, "'='");
      auto& c = raw.carriers[s];
      c.push_back(detail::expect_label(ts));
      while (ts.at(Tok::Comma)) {
        ts.next();
        c.push_back(detail::expect_label(ts));
      }
      detail::expect_end(ts);
    } else if (ts.at_word("repr")) {
      ts.next();
      Token sort = ts.peek();
      std::string s = expect_identifier(ts, "sort name");
      if (!sig.has_sort(s)) throw Error(ErrorKind::UndeclaredSort, "undeclared sort '" + s + "'", sort.pos);
      ts.expect(Tok::Colon);
      Token from = ts.peek();
      std::string a = detail::expect_label(ts);
      ts.expect(Tok::Arrow);
      std::string b = detail::expect_label(ts);
      detail::expect_end(ts);
      if (!raw.repr[s].emplace(a, b).second) {
        throw Error(ErrorKind::ParseError, "repr of '" + a + "' in sort " + s + " given twice", from.pos);
      }
    } else if (ts.at_word("table")) {
      ts.next();
      RowLine r;
      r.op_pos = ts.peek().pos;
      r.op = expect_identifier(ts, "operator name");
      if (ts.at(Tok::LParen)) {
        ts.next();
        if (!ts.at(Tok::RParen)) {
          r.arg_pos.push_back(ts.peek().pos);
          r.row.args.push_back(detail::expect_label(ts));
          while (ts.at(Tok::Comma)) {
            ts.next();
            r.arg_pos.push_back(ts.peek().pos);
            r.row.args.push_back(detail::expect_label(ts));
          }
        }
        ts.expect(Tok::RParen, "',' or ')'");
      }
      ts.expect(Tok::Equals, "'='");
      r.result_pos = ts.peek().pos;
      r.row.result = detail::expect_label(ts);
      detail::expect_end(ts);
      rows.push_back(std::move(r));
    } else {
      ts.fail("'carrier', 'repr' or 'table'");
    }
  }

  // Rows are resolved once every carrier is known.
  for (auto& r : rows) {
    if (!sig.has_op(r.op)) throw Error(ErrorKind::UnknownOperator, "unknown operator '" + r.op + "'", r.op_pos);
    const OpDecl& decl = sig.op(r.op);
    if (decl.arity() != r.row.args.size()) {
      throw Error(ErrorKind::ArityMismatch, "operator '" + r.op + "' expects " + std::to_string(decl.arity()) +
                                                " argument(s), got " + std::to_string(r.row.args.size()),
                  r.op_pos);
    }
    auto check_elem = [&](const SortName& s, const std::string& label, SourcePos pos) {
      auto c = raw.carriers.find(s);
      if (c == raw.carriers.end() || std::find(c->second.begin(), c->second.end(), label) == c->second.end()) {
        throw Error(ErrorKind::UnknownElement, "'" + label + "' is not an element of sort " + s, pos);
      }
    };
    for (std::size_t i = 0; i < r.row.args.size(); ++i) check_elem(decl.arg_sorts[i], r.row.args[i], r.arg_pos[i]);
    check_elem(decl.result_sort, r.row.result, r.result_pos);
    raw.tables[r.op].push_back(std::move(r.row));
  }
  return raw;
}

inline Model parse_model(std::string_view text, const Signature& sig) {
  return validate_model(sig, parse_raw_model(text, sig));
}

namespace detail {

inline Derivation parse_derivation(TokenStream& ts, const Signature& sig, std::size_t depth) {
  if (depth > kMaxNesting) throw Error(ErrorKind::ParseError, "derivation nested too deeply", ts.peek().pos);
  ts.expect(Tok::LParen, "'(' starting a rule");
  if (!ts.at(Tok::Word)) ts.fail("rule name");
  Token rule = ts.next();
  Derivation d = Derivation::refl(Term::var("_"));
  if (rule.text == "hyp") {
    d = Derivation::hyp(expect_identifier(ts, "equation name"));
  } else if (rule.text == "base") {
    d = Derivation::base(expect_identifier(ts, "variable name"));
  } else if (rule.text == "app") {
    std::string op = expect_identifier(ts, "operator name");
    std::vector<Derivation> ps;
    while (ts.at(Tok::LParen)) ps.push_back(parse_derivation(ts, sig, depth + 1));
    d = Derivation::app(std::move(op), std::move(ps));
  } else if (rule.text == "sub") {
    Derivation premise = parse_derivation(ts, sig, depth + 1);
    ts.expect(Tok::LParen, "'(' starting the substitution");
    std::vector<Derivation::Binding> bs;
    while (ts.at(Tok::LParen)) {
      ts.next();
      Token var = ts.peek();
      Derivation::Binding b{expect_identifier(ts, "variable name"), std::nullopt, Term::var("_")};
      if (ts.at(Tok::Colon)) {
        ts.next();
        b.sort = expect_identifier(ts, "sort name");
      }
      ts.expect(Tok::Assign, "':='");
      b.term = parse_term(ts, sig, depth + 1);
      ts.expect(Tok::RParen);
      for (const auto& other : bs) {
        if (other.var == b.var) {
          throw Error(ErrorKind::DuplicateVariable, "variable '" + b.var + "' bound twice in substitution", var.pos);
        }
      }
      bs.push_back(std::move(b));
    }
    ts.expect(Tok::RParen, "'(' or ')'");
    d = Derivation::sub(std::move(premise), std::move(bs));
  } else if (rule.text == "refl") {
    d = Derivation::refl(parse_term(ts, sig, depth + 1));
  } else if (rule.text == "sym") {
    d = Derivation::sym(parse_derivation(ts, sig, depth + 1));
  } else if (rule.text == "trans") {
    Derivation left = parse_derivation(ts, sig, depth + 1);
    Derivation right = parse_derivation(ts, sig, depth + 1);
    d = Derivation::trans(std::move(left), std::move(right));
  } else {
    throw Error(ErrorKind::ParseError, "unknown rule '" + rule.text + "'", rule.pos);
  }
  ts.expect(Tok::RParen);
  return d;
}

/// `[ctx] [:] lhs = rhs`
inline Equation parse_equation_tokens(TokenStream& ts, const Signature& sig) {
  Context ctx = parse_context(ts, sig);
  if (ts.at(Tok::Colon)) ts.next();
  Token lhs_tok = ts.peek();
  Term lhs = parse_term(ts, sig);
  ts.expect(Tok::Equals, "'='");
  Term rhs = parse_term(ts, sig);
  return positioned(lhs_tok.pos, [&] { return make_equation(sig, ctx, lhs, rhs); });
}

}  // namespace detail

/// Proof script:
///   [theory <path>]
///   prove [<ctx>] : <Term> = <Term>
///   <s-expression spanning the remaining lines>
inline ProofScript parse_proof(std::string_view text, const Theory& th) {
  // A leading `theory <path>` line holds a file path, which is not lexed.
  std::optional<std::string> theory;
  std::string body_text(text);
  std::size_t start = 0;
  for (std::size_t lineno = 1; start <= text.size(); ++lineno) {
    std::size_t nl = text.find('\n', start);
    std::string_view raw = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    std::string_view rest = strip_comment(raw);
    auto blank = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v'; };
    std::size_t lead = 0;
    while (lead < rest.size() && blank(rest[lead])) ++lead;
    rest.remove_prefix(lead);
    if (!rest.empty()) {
      if (rest.starts_with("theory") && (rest.size() == 6 || blank(rest[6]))) {
        rest.remove_prefix(6);
        while (!rest.empty() && blank(rest.front())) rest.remove_prefix(1);
        while (!rest.empty() && blank(rest.back())) rest.remove_suffix(1);
        if (rest.empty()) throw Error(ErrorKind::ParseError, "expected theory path", SourcePos{lineno, lead + 7});
        theory = std::string(rest);
        std::fill_n(body_text.begin() + static_cast<std::ptrdiff_t>(start), raw.size(), ' ');
      }
      break;
    }
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }

  std::vector<Line> lines = lex_lines(body_text);
  std::size_t i = 0;
  if (i >= lines.size()) throw Error(ErrorKind::ParseError, "expected 'prove' header", SourcePos{1, 1});
  TokenStream header = stream_of(lines[i]);
  header.expect_word("prove");
  Equation claim = detail::parse_equation_tokens(header, th.signature);
  detail::expect_end(header);
  ++i;

  std::vector<Token> body;
  SourcePos end{lines.empty() ? 1 : lines.back().number, 1};
  for (; i < lines.size(); ++i) {
    body.insert(body.end(), lines[i].tokens.begin(), lines[i].tokens.end());
    end = SourcePos{lines[i].number, lines[i].raw.size() + 1};
  }
  TokenStream ts(std::move(body), end);
  Derivation d = detail::parse_derivation(ts, th.signature, 0);
  if (!ts.at(Tok::End)) ts.fail("end of proof");
  return ProofScript{std::move(theory), Judgment{claim.cxt, claim.srt, claim.lhs, claim.rhs}, std::move(d)};
}

/// Checks the derivation of a script and confirms it proves the claim.
inline Judgment check_proof(const Theory& th, const ProofScript& p) {
  Judgment got = check_derivation(th, p.derivation, p.claim.context);
  if (!(got == p.claim)) {
    throw Error(ErrorKind::ConclusionMismatch,
                "proof concludes " + to_string(got) + " but the script claims " + to_string(p.claim));
  }
  return got;
}

/// A standalone equation such as `[x,y:M] plus(x,y) = plus(y,x)`.
inline Equation parse_equation(std::string_view text, const Signature& sig) {
  std::vector<Token> toks;
  lex_line(text, 1, toks);
  TokenStream ts(std::move(toks), SourcePos{1, text.size() + 1});
  Equation eq = detail::parse_equation_tokens(ts, sig);
  if (!ts.at(Tok::End)) ts.fail("end of equation");
  return eq;
}

/// A standalone term on one line.
inline Term parse_term(std::string_view text, const Signature& sig) {
  std::vector<Token> toks;
  lex_line(text, 1, toks);
  TokenStream ts(std::move(toks), SourcePos{1, text.size() + 1});
  Term t = parse_term(ts, sig);
  if (!ts.at(Tok::End)) ts.fail("end of term");
  return t;
}

/// `[x:M, y:N]` on one line.
inline Context parse_context(std::string_view text, const Signature& sig) {
  std::vector<Token> toks;
  lex_line(text, 1, toks);
  TokenStream ts(std::move(toks), SourcePos{1, text.size() + 1});
  Context ctx = parse_context(ts, sig);
  if (!ts.at(Tok::End)) ts.fail("end of context");
  return ctx;
}

}  // namespace eqlogic::frontend

#endif  // EQLOGIC_FRONTEND_PARSER_HPP
