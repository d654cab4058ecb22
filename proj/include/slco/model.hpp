#pragma once

// Abstract syntax of SLCO models: classes with ports, variables and state
// machines; objects instantiating classes; channels connecting object ports.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "slco/diagnostic.hpp"

namespace slco {

enum class Type { integer, boolean, string };

inline std::string_view type_name(Type t) {
  switch (t) {
    case Type::integer: return "Integer";
    case Type::boolean: return "Boolean";
    case Type::string: return "String";
  }
  return "?";
}

/// A runtime value; also the representation of literals in the AST.
using Value = std::variant<std::int64_t, bool, std::string>;

inline Type type_of(const Value& v) {
  switch (v.index()) {
    case 0: return Type::integer;
    case 1: return Type::boolean;
    default: return Type::string;
  }
}

inline std::string quote_string(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

inline std::string to_string(const Value& v) {
  if (auto i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
  if (auto b = std::get_if<bool>(&v)) return *b ? "true" : "false";
  return quote_string(std::get<std::string>(v));
}

/// Integer -> 0, Boolean -> true, String -> "".
inline Value default_initial_value(Type t) {
  switch (t) {
    case Type::integer: return std::int64_t{0};
    case Type::boolean: return true;
    case Type::string: return std::string{};
  }
  return std::int64_t{0};
}

/// Source position carried by AST nodes. Positions never take part in
/// structural equality, so a re-parsed pretty-printed model compares equal.
struct SourcePos {
  Location loc;

  friend bool operator==(const SourcePos&, const SourcePos&) { return true; }
};

// ---------------------------------------------------------------------------
// Expressions

enum class BinaryOp { add, sub, mul, lt, le, gt, ge, eq, ne, logical_and, logical_or };

inline std::string_view op_symbol(BinaryOp op) {
  switch (op) {
    case BinaryOp::add: return "+";
    case BinaryOp::sub: return "-";
    case BinaryOp::mul: return "*";
    case BinaryOp::lt: return "<";
    case BinaryOp::le: return "<=";
    case BinaryOp::gt: return ">";
    case BinaryOp::ge: return ">=";
    case BinaryOp::eq: return "==";
    case BinaryOp::ne: return "!=";
    case BinaryOp::logical_and: return "and";
    case BinaryOp::logical_or: return "or";
  }
  return "?";
}

struct Expression;

/// Shared immutable expression node with deep structural equality.
class Expr {
 public:
  Expr() = default;
  explicit Expr(std::shared_ptr<const Expression> node) : node_(std::move(node)) {}

  const Expression& operator*() const { return *node_; }
  const Expression* operator->() const { return node_.get(); }
  explicit operator bool() const { return node_ != nullptr; }

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  std::shared_ptr<const Expression> node_;
};

struct Literal {
  Value value;
  friend bool operator==(const Literal&, const Literal&) = default;
};

struct VarRef {
  std::string name;
  friend bool operator==(const VarRef&, const VarRef&) = default;
};

struct Binary {
  BinaryOp op;
  Expr lhs;
  Expr rhs;
  friend bool operator==(const Binary&, const Binary&) = default;
};

struct Not {
  Expr operand;
  friend bool operator==(const Not&, const Not&) = default;
};

struct Expression {
  std::variant<Literal, VarRef, Binary, Not> node;
  SourcePos pos;
  friend bool operator==(const Expression&, const Expression&) = default;
};

inline bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  return *a.node_ == *b.node_;
}

inline Expr make_expr(decltype(Expression::node) node, Location loc = {}) {
  return Expr(std::make_shared<const Expression>(Expression{std::move(node), SourcePos{loc}}));
}
inline Expr lit(Value v) { return make_expr(Literal{std::move(v)}); }
inline Expr var(std::string name) { return make_expr(VarRef{std::move(name)}); }
inline Expr binary(BinaryOp op, Expr l, Expr r) {
  return make_expr(Binary{op, std::move(l), std::move(r)});
}

// ---------------------------------------------------------------------------
// Statements and triggers

struct Assignment {
  std::string target;
  Expr value;
  friend bool operator==(const Assignment&, const Assignment&) = default;
};

struct SendSignal {
  std::string signal;
  std::vector<Expr> args;
  std::string port;
  friend bool operator==(const SendSignal&, const SendSignal&) = default;
};

struct Statement {
  std::variant<Assignment, SendSignal> node;
  SourcePos pos;
  friend bool operator==(const Statement&, const Statement&) = default;
};

/// Reception argument that stores the received value into a variable.
struct BindVar {
  std::string name;
  friend bool operator==(const BindVar&, const BindVar&) = default;
};

/// Reception argument that only accepts a value equal to the expression.
struct MatchExpr {
  Expr expr;
  friend bool operator==(const MatchExpr&, const MatchExpr&) = default;
};

using RecvArg = std::variant<BindVar, MatchExpr>;

struct SignalReception {
  std::string signal;
  std::vector<RecvArg> args;
  std::string port;
  friend bool operator==(const SignalReception&, const SignalReception&) = default;
};

struct Delay {
  std::int64_t millis = 0;
  friend bool operator==(const Delay&, const Delay&) = default;
};

using Trigger = std::variant<SignalReception, Delay>;

// ---------------------------------------------------------------------------
// Structure

struct VarDecl {
  std::string name;
  Type type = Type::integer;
  std::optional<Value> initial;
  SourcePos pos;
  friend bool operator==(const VarDecl&, const VarDecl&) = default;

  Value initial_value() const { return initial ? *initial : default_initial_value(type); }
};

struct Transition {
  std::string name;
  std::string source;
  std::string target;
  std::optional<Trigger> trigger;
  Expr guard;  // empty when absent
  std::vector<Statement> effect;
  SourcePos pos;
  friend bool operator==(const Transition&, const Transition&) = default;
};

struct StateMachine {
  std::string name;
  std::vector<VarDecl> variables;
  // Well-formed machines have exactly one; the parser keeps every declared
  // one so that validation can report the violation.
  std::vector<std::string> initial_states;
  std::vector<std::string> plain_states;
  std::vector<std::string> final_states;
  std::vector<Transition> transitions;
  SourcePos pos;
  friend bool operator==(const StateMachine&, const StateMachine&) = default;

  const std::string& initial_state() const {
    if (initial_states.empty()) throw std::logic_error("state machine " + name + " has no initial state");
    return initial_states.front();
  }
  bool is_final(std::string_view state) const {
    for (const auto& f : final_states)
      if (f == state) return true;
    return false;
  }
};

struct Class {
  std::string name;
  std::vector<VarDecl> variables;
  std::vector<std::string> ports;
  std::vector<StateMachine> machines;
  SourcePos pos;
  friend bool operator==(const Class&, const Class&) = default;
};

struct ObjectDecl {
  std::string name;
  std::string class_name;
  SourcePos pos;
  friend bool operator==(const ObjectDecl&, const ObjectDecl&) = default;
};

struct ObjectPort {
  std::string object;
  std::string port;
  friend bool operator==(const ObjectPort&, const ObjectPort&) = default;
};

enum class ChannelKind { sync, async_lossless, async_lossy };

inline bool is_async(ChannelKind k) { return k != ChannelKind::sync; }

struct Channel {
  std::string name;
  std::vector<Type> arg_types;
  ChannelKind kind = ChannelKind::sync;
  bool bidirectional = false;
  ObjectPort end1;  // sender end of a unidirectional channel
  ObjectPort end2;  // receiver end of a unidirectional channel
  SourcePos pos;
  friend bool operator==(const Channel&, const Channel&) = default;
};

struct Model {
  std::string name;
  std::vector<Class> classes;
  std::vector<ObjectDecl> objects;
  std::vector<Channel> channels;
  friend bool operator==(const Model&, const Model&) = default;

  const Class* find_class(std::string_view n) const {
    for (const auto& c : classes)
      if (c.name == n) return &c;
    return nullptr;
  }
  const ObjectDecl* find_object(std::string_view n) const {
    for (const auto& o : objects)
      if (o.name == n) return &o;
    return nullptr;
  }
  const Class* class_of(std::string_view object) const {
    const ObjectDecl* o = find_object(object);
    return o ? find_class(o->class_name) : nullptr;
  }
};

/// 0-based index of `t` among all transitions of `sm`, in declaration order.
/// Throws std::invalid_argument when `t` does not belong to `sm`.
inline std::size_t transition_identifier(const StateMachine& sm, const Transition& t) {
  for (std::size_t i = 0; i < sm.transitions.size(); ++i)
    if (&sm.transitions[i] == &t) return i;
  for (std::size_t i = 0; i < sm.transitions.size(); ++i)
    if (sm.transitions[i].name == t.name && sm.transitions[i] == t) return i;
  throw std::invalid_argument("transition " + t.name + " is not part of state machine " + sm.name);
}

}  // namespace slco
