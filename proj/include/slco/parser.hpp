#pragma once

// Recursive-descent parser for the textual SLCO syntax:
//
//   model ID { classes ClassDef* objects (ID ':' ID)* channels ChannelDef* }
//   ClassDef   = ID '{' ['variables' VarDecl+] ['ports' ID+] 'state' 'machines' SMDef+ '}'
//   VarDecl    = Type ID ['=' Literal]
//   SMDef      = ID '{' ['variables' VarDecl+] 'initial' ID+ ['state' ID+] ['final' ID+]
//                'transitions' TransDef* '}'
//   TransDef   = ID 'from' ID 'to' ID '{' ['trigger' Trigger] ['guard' Expr] ['effect' Stmt+] '}'
//   Trigger    = 'receive' ID '(' RecvArgs? ')' 'from' ID | 'after' NAT 'ms'
//   Stmt       = ID ':=' Expr | 'send' ID '(' Exprs? ')' 'to' ID
//   ChannelDef = ID '(' Types? ')' Kind ('from' ID.ID 'to' ID.ID | 'between' ID.ID 'and' ID.ID)
//   Kind       = 'sync' | 'async' 'lossless' | 'async' 'lossy'

#include <charconv>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "slco/diagnostic.hpp"
#include "slco/lexer.hpp"
#include "slco/model.hpp"

namespace slco {

struct ParseResult {
  std::optional<Model> model;
  Diagnostics diagnostics;

  explicit operator bool() const { return model.has_value(); }
};

namespace detail {

struct SyntaxError {
  Location loc;
  std::string message;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Model parse_model() {
    Model m;
    expect_keyword("model");
    m.name = expect_identifier("model name");
    expect_symbol("{");

    SectionTracker sections(*this, {"classes", "objects", "channels"});
    sections.require("classes");
    while (peek().kind == TokenKind::identifier) m.classes.push_back(parse_class());

    sections.require("objects");
    while (peek().kind == TokenKind::identifier) {
      ObjectDecl o;
      o.pos.loc = peek().loc;
      o.name = expect_identifier("object name");
      expect_symbol(":");
      o.class_name = expect_identifier("class name");
      m.objects.push_back(std::move(o));
    }

    sections.require("channels");
    while (peek().kind == TokenKind::identifier) m.channels.push_back(parse_channel());

    sections.reject_repeat();
    expect_symbol("}");
    if (peek().kind != TokenKind::end) fail(peek().loc, "unexpected " + describe(peek()) + " after end of model");
    return m;
  }

 private:
  // Tracks the fixed-order sections of a block so that a repeated section
  // header is reported as such rather than as a generic syntax error.
  class SectionTracker {
   public:
    SectionTracker(Parser& p, std::vector<std::string_view> order) : p_(p), order_(std::move(order)) {}

    bool optional(std::string_view name) {
      reject_repeat();
      if (!p_.is_keyword(name)) return false;
      p_.next();
      seen_.insert(name);
      return true;
    }
    void require(std::string_view name) {
      reject_repeat();
      p_.expect_keyword(name);
      seen_.insert(name);
    }
    void reject_repeat() {
      const Token& t = p_.peek();
      if (t.kind != TokenKind::keyword) return;
      for (auto s : order_)
        if (s == t.text && seen_.count(s)) p_.fail(t.loc, "duplicate section '" + t.text + "'");
    }

   private:
    Parser& p_;
    std::vector<std::string_view> order_;
    std::set<std::string_view> seen_;
  };

  Class parse_class() {
    Class c;
    c.pos.loc = peek().loc;
    c.name = expect_identifier("class name");
    expect_symbol("{");
    SectionTracker sections(*this, {"variables", "ports", "state"});
    if (sections.optional("variables")) parse_var_decls(c.variables);
    if (sections.optional("ports")) {
      do {
        c.ports.push_back(expect_identifier("port name"));
      } while (peek().kind == TokenKind::identifier);
    }
    sections.require("state");
    expect_keyword("machines");
    do {
      c.machines.push_back(parse_machine(c));
    } while (peek().kind == TokenKind::identifier);
    sections.reject_repeat();
    expect_symbol("}");
    return c;
  }

  void parse_var_decls(std::vector<VarDecl>& out) {
    do {
      VarDecl v;
      v.pos.loc = peek().loc;
      v.type = parse_type();
      v.name = expect_identifier("variable name");
      if (is_symbol("=")) {
        next();
        v.initial = parse_literal();
      }
      out.push_back(std::move(v));
    } while (is_type_keyword());
  }

  bool is_type_keyword() const {
    return is_keyword("Integer") || is_keyword("Boolean") || is_keyword("String");
  }

  Type parse_type() {
    const Token& t = peek();
    if (t.kind == TokenKind::keyword) {
      if (t.text == "Integer") return next(), Type::integer;
      if (t.text == "Boolean") return next(), Type::boolean;
      if (t.text == "String") return next(), Type::string;
    }
    fail(t.loc, "expected a type (Integer, Boolean or String) but found " + describe(t));
  }

  Value parse_literal() {
    const Token& t = peek();
    if (is_symbol("-")) {
      next();
      const Token& n = peek();
      if (n.kind != TokenKind::integer) fail(n.loc, "expected an integer after '-' but found " + describe(n));
      std::int64_t v = parse_integer(n, true);
      return v == std::numeric_limits<std::int64_t>::min() ? v : -v;
    }
    if (t.kind == TokenKind::integer) return parse_integer(t, false);
    if (is_keyword("true")) return next(), Value{true};
    if (is_keyword("false")) return next(), Value{false};
    if (t.kind == TokenKind::string) {
      std::string s = t.text;
      next();
      return s;
    }
    fail(t.loc, "expected a literal but found " + describe(t));
  }

  // Consumes an integer token. With `negated`, the magnitude 2^63 is accepted
  // and returned as INT64_MIN, which the caller keeps as is.
  std::int64_t parse_integer(const Token& t, bool negated) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    constexpr auto max = static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max());
    if (ec != std::errc{} || v > max + (negated ? 1 : 0)) fail(t.loc, "integer literal out of range");
    next();
    if (v == max + 1) return std::numeric_limits<std::int64_t>::min();
    return static_cast<std::int64_t>(v);
  }

  StateMachine parse_machine(const Class& owner) {
    StateMachine sm;
    sm.pos.loc = peek().loc;
    sm.name = expect_identifier("state machine name");
    expect_symbol("{");
    SectionTracker sections(*this, {"variables", "initial", "state", "final", "transitions"});
    if (sections.optional("variables")) parse_var_decls(sm.variables);
    sections.require("initial");
    parse_id_list(sm.initial_states, "state name");
    if (sections.optional("state")) parse_id_list(sm.plain_states, "state name");
    if (sections.optional("final")) parse_id_list(sm.final_states, "state name");
    sections.require("transitions");
    while (peek().kind == TokenKind::identifier) sm.transitions.push_back(parse_transition(owner, sm));
    sections.reject_repeat();
    expect_symbol("}");
    return sm;
  }

  void parse_id_list(std::vector<std::string>& out, const char* what) {
    do {
      out.push_back(expect_identifier(what));
    } while (peek().kind == TokenKind::identifier);
  }

  Transition parse_transition(const Class& owner, const StateMachine& sm) {
    Transition t;
    t.pos.loc = peek().loc;
    t.name = expect_identifier("transition name");
    expect_keyword("from");
    t.source = expect_identifier("source state");
    expect_keyword("to");
    t.target = expect_identifier("target state");
    expect_symbol("{");
    SectionTracker sections(*this, {"trigger", "guard", "effect"});
    if (sections.optional("trigger")) t.trigger = parse_trigger(owner, sm);
    if (sections.optional("guard")) t.guard = parse_expr();
    if (sections.optional("effect")) {
      do {
        t.effect.push_back(parse_statement());
      } while (is_keyword("send") || (peek().kind == TokenKind::identifier && peek(1).text == ":="));
    }
    sections.reject_repeat();
    expect_symbol("}");
    return t;
  }

  static bool in_scope(const Class& owner, const StateMachine& sm, std::string_view name) {
    for (const auto& v : sm.variables)
      if (v.name == name) return true;
    for (const auto& v : owner.variables)
      if (v.name == name) return true;
    return false;
  }

  Trigger parse_trigger(const Class& owner, const StateMachine& sm) {
    if (is_keyword("after")) {
      next();
      const Token& n = peek();
      if (n.kind != TokenKind::integer) fail(n.loc, "expected a delay in milliseconds but found " + describe(n));
      Delay d{parse_integer(n, false)};
      expect_keyword("ms");
      return d;
    }
    expect_keyword("receive");
    SignalReception r;
    r.signal = expect_identifier("signal name");
    expect_symbol("(");
    if (!is_symbol(")")) {
      for (;;) {
        Expr e = parse_expr();
        // A bare identifier naming a variable in scope binds the received value.
        if (auto ref = std::get_if<VarRef>(&e->node); ref && in_scope(owner, sm, ref->name))
          r.args.emplace_back(BindVar{ref->name});
        else
          r.args.emplace_back(MatchExpr{std::move(e)});
        if (!is_symbol(",")) break;
        next();
      }
    }
    expect_symbol(")");
    expect_keyword("from");
    r.port = expect_identifier("port name");
    return r;
  }

  Statement parse_statement() {
    Statement s;
    s.pos.loc = peek().loc;
    if (is_keyword("send")) {
      next();
      SendSignal send;
      send.signal = expect_identifier("signal name");
      expect_symbol("(");
      if (!is_symbol(")")) {
        for (;;) {
          send.args.push_back(parse_expr());
          if (!is_symbol(",")) break;
          next();
        }
      }
      expect_symbol(")");
      expect_keyword("to");
      send.port = expect_identifier("port name");
      s.node = std::move(send);
      return s;
    }
    Assignment a;
    a.target = expect_identifier("assignment target");
    expect_symbol(":=");
    a.value = parse_expr();
    s.node = std::move(a);
    return s;
  }

  Channel parse_channel() {
    Channel ch;
    ch.pos.loc = peek().loc;
    ch.name = expect_identifier("channel name");
    expect_symbol("(");
    if (!is_symbol(")")) {
      for (;;) {
        ch.arg_types.push_back(parse_type());
        if (!is_symbol(",")) break;
        next();
      }
    }
    expect_symbol(")");
    if (is_keyword("sync")) {
      next();
      ch.kind = ChannelKind::sync;
    } else {
      expect_keyword("async");
      if (is_keyword("lossless")) {
        next();
        ch.kind = ChannelKind::async_lossless;
      } else if (is_keyword("lossy")) {
        next();
        ch.kind = ChannelKind::async_lossy;
      } else {
        fail(peek().loc, "expected 'lossless' or 'lossy' but found " + describe(peek()));
      }
    }
    if (is_keyword("between")) {
      next();
      ch.bidirectional = true;
      ch.end1 = parse_object_port();
      expect_keyword("and");
      ch.end2 = parse_object_port();
    } else {
      expect_keyword("from");
      ch.end1 = parse_object_port();
      expect_keyword("to");
      ch.end2 = parse_object_port();
    }
    return ch;
  }

  ObjectPort parse_object_port() {
    ObjectPort op;
    op.object = expect_identifier("object name");
    expect_symbol(".");
    op.port = expect_identifier("port name");
    return op;
  }

  // Expressions, lowest precedence first.
  Expr parse_expr() { return parse_or(); }

  Expr parse_or() {
    Expr lhs = parse_and();
    while (is_keyword("or")) {
      Location loc = next().loc;
      lhs = make_expr(Binary{BinaryOp::logical_or, lhs, parse_and()}, loc);
    }
    return lhs;
  }

  Expr parse_and() {
    Expr lhs = parse_equality();
    while (is_keyword("and")) {
      Location loc = next().loc;
      lhs = make_expr(Binary{BinaryOp::logical_and, lhs, parse_equality()}, loc);
    }
    return lhs;
  }

  Expr parse_equality() {
    Expr lhs = parse_relational();
    while (is_symbol("==") || is_symbol("!=")) {
      const Token& op = next();
      BinaryOp bop = op.text == "==" ? BinaryOp::eq : BinaryOp::ne;
      lhs = make_expr(Binary{bop, lhs, parse_relational()}, op.loc);
    }
    return lhs;
  }

  Expr parse_relational() {
    Expr lhs = parse_additive();
    while (is_symbol("<") || is_symbol("<=") || is_symbol(">") || is_symbol(">=")) {
      const Token& op = next();
      BinaryOp bop = op.text == "<"    ? BinaryOp::lt
                     : op.text == "<=" ? BinaryOp::le
                     : op.text == ">"  ? BinaryOp::gt
                                       : BinaryOp::ge;
      lhs = make_expr(Binary{bop, lhs, parse_additive()}, op.loc);
    }
    return lhs;
  }

  Expr parse_additive() {
    Expr lhs = parse_multiplicative();
    while (is_symbol("+") || is_symbol("-")) {
      const Token& op = next();
      lhs = make_expr(Binary{op.text == "+" ? BinaryOp::add : BinaryOp::sub, lhs, parse_multiplicative()},
                      op.loc);
    }
    return lhs;
  }

  Expr parse_multiplicative() {
    Expr lhs = parse_unary();
    while (is_symbol("*")) {
      Location loc = next().loc;
      lhs = make_expr(Binary{BinaryOp::mul, lhs, parse_unary()}, loc);
    }
    return lhs;
  }

  Expr parse_unary() {
    if (is_keyword("not")) {
      Location loc = next().loc;
      return make_expr(Not{parse_unary()}, loc);
    }
    return parse_primary();
  }

  Expr parse_primary() {
    const Token& t = peek();
    Location loc = t.loc;
    switch (t.kind) {
      case TokenKind::integer: return make_expr(Literal{parse_integer(t, false)}, loc);
      case TokenKind::string: {
        std::string s = t.text;
        next();
        return make_expr(Literal{std::move(s)}, loc);
      }
      case TokenKind::identifier: {
        std::string name = t.text;
        next();
        return make_expr(VarRef{std::move(name)}, loc);
      }
      case TokenKind::keyword:
        if (t.text == "true" || t.text == "false") {
          bool b = t.text == "true";
          next();
          return make_expr(Literal{b}, loc);
        }
        break;
      case TokenKind::symbol:
        if (t.text == "-" && peek(1).kind == TokenKind::integer) {
          next();
          std::int64_t v = parse_integer(peek(), true);
          return make_expr(Literal{v == std::numeric_limits<std::int64_t>::min() ? v : -v}, loc);
        }
        if (t.text == "(") {
          next();
          Expr e = parse_expr();
          expect_symbol(")");
          return e;
        }
        break;
      case TokenKind::end: break;
    }
    fail(loc, "expected an expression but found " + describe(t));
  }

  // Token helpers

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool is_keyword(std::string_view kw) const {
    return peek().kind == TokenKind::keyword && peek().text == kw;
  }
  bool is_symbol(std::string_view s) const { return peek().kind == TokenKind::symbol && peek().text == s; }

  static std::string describe(const Token& t) {
    switch (t.kind) {
      case TokenKind::end: return "end of input";
      case TokenKind::identifier: return "identifier '" + t.text + "'";
      case TokenKind::keyword: return "keyword '" + t.text + "'";
      case TokenKind::integer: return "integer " + t.text;
      case TokenKind::string: return "string literal";
      case TokenKind::symbol: return "'" + t.text + "'";
    }
    return "token";
  }

  [[noreturn]] void fail(Location loc, std::string msg) const { throw SyntaxError{loc, std::move(msg)}; }

  void expect_keyword(std::string_view kw) {
    if (!is_keyword(kw)) fail(peek().loc, "expected '" + std::string(kw) + "' but found " + describe(peek()));
    next();
  }
  void expect_symbol(std::string_view s) {
    if (!is_symbol(s)) fail(peek().loc, "expected '" + std::string(s) + "' but found " + describe(peek()));
    next();
  }
  std::string expect_identifier(const char* what) {
    const Token& t = peek();
    if (t.kind != TokenKind::identifier) fail(t.loc, std::string("expected ") + what + " but found " + describe(t));
    std::string s = t.text;
    next();
    return s;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses SLCO text. On failure the result holds no model and at least one
/// error diagnostic positioned at the offending token.
inline ParseResult parse_model(std::string_view text) {
  ParseResult result;
  try {
    auto tokens = Lexer(text).tokenize();
    result.model = detail::Parser(std::move(tokens)).parse_model();
  } catch (const LexError& e) {
    result.diagnostics.push_back({Severity::error, e.loc, e.message});
  } catch (const detail::SyntaxError& e) {
    result.diagnostics.push_back({Severity::error, e.loc, e.message});
  }
  return result;
}

}  // namespace slco
