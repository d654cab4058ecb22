#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "slco/diagnostic.hpp"
#include "slco/model.hpp"

namespace slco {

/// Which channel end an (object, port) pair is attached to.
struct PortAttachment {
  std::size_t channel = 0;
  int end = 1;  // 1 or 2
};

/// Maps every attached (object, port) pair to its channel end. Pairs that
/// attach to several ends keep the first one; validation reports the rest.
inline std::map<std::pair<std::string, std::string>, PortAttachment> port_attachments(const Model& m) {
  std::map<std::pair<std::string, std::string>, PortAttachment> out;
  for (std::size_t i = 0; i < m.channels.size(); ++i) {
    const auto& ch = m.channels[i];
    out.try_emplace({ch.end1.object, ch.end1.port}, PortAttachment{i, 1});
    out.try_emplace({ch.end2.object, ch.end2.port}, PortAttachment{i, 2});
  }
  return out;
}

namespace detail {

class Validator {
 public:
  explicit Validator(const Model& m) : m_(m), attach_(port_attachments(m)) {}

  Diagnostics run() {
    check_unique(m_.classes, "class");
    check_unique(m_.objects, "object");
    check_unique(m_.channels, "channel");
    for (const auto& o : m_.objects)
      if (!m_.find_class(o.class_name))
        error(o.pos.loc, "object " + o.name + " references undeclared class " + o.class_name);
    for (const auto& c : m_.classes) check_class(c);
    check_channels();
    return std::move(out_);
  }

 private:
  struct Scope {
    const Class* cls;
    const StateMachine* sm;

    const VarDecl* lookup(std::string_view name) const {
      for (const auto& v : sm->variables)
        if (v.name == name) return &v;
      for (const auto& v : cls->variables)
        if (v.name == name) return &v;
      return nullptr;
    }
  };

  void error(Location loc, std::string msg) { out_.push_back({Severity::error, loc, std::move(msg)}); }
  void warning(Location loc, std::string msg) { out_.push_back({Severity::warning, loc, std::move(msg)}); }

  template <typename T>
  void check_unique(const std::vector<T>& items, const char* what) {
    std::set<std::string> seen;
    for (const auto& it : items)
      if (!seen.insert(it.name).second) error(it.pos.loc, std::string("duplicate ") + what + " name " + it.name);
  }

  void check_vars(const std::vector<VarDecl>& vars) {
    check_unique(vars, "variable");
    for (const auto& v : vars)
      if (v.initial && type_of(*v.initial) != v.type)
        error(v.pos.loc, "initial value of " + v.name + " does not have type " + std::string(type_name(v.type)));
  }

  void check_class(const Class& c) {
    check_vars(c.variables);
    std::set<std::string> ports;
    for (const auto& p : c.ports)
      if (!ports.insert(p).second) error(c.pos.loc, "duplicate port name " + p + " in class " + c.name);
    check_unique(c.machines, "state machine");
    for (const auto& sm : c.machines) check_machine(c, sm);
  }

  void check_machine(const Class& c, const StateMachine& sm) {
    check_vars(sm.variables);
    if (sm.initial_states.size() != 1)
      error(sm.pos.loc, "state machine " + sm.name + " must have exactly one initial state (found " +
                            std::to_string(sm.initial_states.size()) + ")");
    // The initial state may be listed again under `final`; no other repeats.
    std::set<std::string> states(sm.initial_states.begin(), sm.initial_states.end());
    if (states.size() != sm.initial_states.size())
      error(sm.pos.loc, "duplicate initial state in state machine " + sm.name);
    for (const auto& s : sm.plain_states)
      if (!states.insert(s).second) error(sm.pos.loc, "duplicate state name " + s + " in state machine " + sm.name);
    std::set<std::string> finals;
    for (const auto& s : sm.final_states) {
      bool initial_too = std::count(sm.initial_states.begin(), sm.initial_states.end(), s) != 0;
      if (!finals.insert(s).second || (!initial_too && !states.insert(s).second))
        error(sm.pos.loc, "duplicate state name " + s + " in state machine " + sm.name);
    }
    check_unique(sm.transitions, "transition");

    Scope scope{&c, &sm};
    for (const auto& t : sm.transitions) {
      Location loc = t.pos.loc;
      if (!states.count(t.source)) error(loc, "transition " + t.name + " has undeclared source state " + t.source);
      if (!states.count(t.target)) error(loc, "transition " + t.name + " has undeclared target state " + t.target);
      if (t.trigger)
        if (auto r = std::get_if<SignalReception>(&*t.trigger)) check_reception(c, scope, *r, loc);
      if (t.guard) {
        auto ty = type_of_expr(t.guard, scope);
        if (ty && *ty != Type::boolean) error(t.guard->pos.loc, "guard of transition " + t.name + " is not Boolean");
      }
      for (const auto& s : t.effect) check_statement(c, scope, s);
    }
  }

  // Channels attached to `port` for every object of class `c`.
  std::vector<std::pair<const ObjectDecl*, std::optional<PortAttachment>>> attachments_of(const Class& c,
                                                                                        const std::string& port) {
    std::vector<std::pair<const ObjectDecl*, std::optional<PortAttachment>>> res;
    for (const auto& o : m_.objects) {
      if (o.class_name != c.name) continue;
      auto it = attach_.find({o.name, port});
      res.emplace_back(&o, it == attach_.end() ? std::nullopt : std::optional(it->second));
    }
    return res;
  }

  bool check_port(const Class& c, const std::string& port, Location loc) {
    for (const auto& p : c.ports)
      if (p == port) return true;
    error(loc, "class " + c.name + " has no port " + port);
    return false;
  }

  void check_signature(const Channel& ch, const std::vector<std::optional<Type>>& args, const std::string& signal,
                       Location loc) {
    bool ok = args.size() == ch.arg_types.size();
    for (std::size_t i = 0; ok && i < args.size(); ++i)
      if (args[i] && *args[i] != ch.arg_types[i]) ok = false;
    if (!ok)
      error(loc, "signature mismatch: signal " + signal + " with " + std::to_string(args.size()) +
                     " argument(s) does not fit channel " + ch.name + signature_text(ch));
  }

  static std::string signature_text(const Channel& ch) {
    std::string s = "(";
    for (std::size_t i = 0; i < ch.arg_types.size(); ++i) s += (i ? ", " : "") + std::string(type_name(ch.arg_types[i]));
    return s + ")";
  }

  void check_endpoints(const Class& c, const std::string& port, bool sending,
                       const std::vector<std::optional<Type>>& arg_types, const std::string& signal, Location loc) {
    if (!check_port(c, port, loc)) return;
    for (const auto& [obj, att] : attachments_of(c, port)) {
      if (!att) {
        warning(loc, "port " + port + " of object " + obj->name + " is not connected to a channel");
        continue;
      }
      const Channel& ch = m_.channels[att->channel];
      if (!ch.bidirectional && sending && att->end == 2)
        error(loc, "cannot send on port " + port + " of object " + obj->name + ": it is the receiving end of channel " +
                       ch.name);
      if (!ch.bidirectional && !sending && att->end == 1)
        error(loc, "cannot receive on port " + port + " of object " + obj->name + ": it is the sending end of channel " +
                       ch.name);
      check_signature(ch, arg_types, signal, loc);
    }
  }

  void check_reception(const Class& c, const Scope& scope, const SignalReception& r, Location loc) {
    std::vector<std::optional<Type>> types;
    for (const auto& a : r.args) {
      if (auto b = std::get_if<BindVar>(&a)) {
        const VarDecl* v = scope.lookup(b->name);
        if (!v) error(loc, "reception binds undeclared variable " + b->name);
        types.push_back(v ? std::optional(v->type) : std::nullopt);
      } else {
        types.push_back(type_of_expr(std::get<MatchExpr>(a).expr, scope));
      }
    }
    check_endpoints(c, r.port, false, types, r.signal, loc);
  }

  void check_statement(const Class& c, const Scope& scope, const Statement& s) {
    Location loc = s.pos.loc;
    if (auto a = std::get_if<Assignment>(&s.node)) {
      const VarDecl* v = scope.lookup(a->target);
      auto ty = type_of_expr(a->value, scope);
      if (!v)
        error(loc, "assignment to undeclared variable " + a->target);
      else if (ty && *ty != v->type)
        error(loc, "type mismatch: cannot assign " + std::string(type_name(*ty)) + " to " + a->target + " of type " +
                       std::string(type_name(v->type)));
      return;
    }
    const auto& send = std::get<SendSignal>(s.node);
    std::vector<std::optional<Type>> types;
    for (const auto& e : send.args) types.push_back(type_of_expr(e, scope));
    check_endpoints(c, send.port, true, types, send.signal, loc);
  }

  // Returns the expression's type, or nullopt after reporting an error.
  std::optional<Type> type_of_expr(const Expr& e, const Scope& scope) {
    Location loc = e->pos.loc;
    if (auto l = std::get_if<Literal>(&e->node)) return type_of(l->value);
    if (auto r = std::get_if<VarRef>(&e->node)) {
      if (const VarDecl* v = scope.lookup(r->name)) return v->type;
      error(loc, "undeclared variable " + r->name);
      return std::nullopt;
    }
    if (auto n = std::get_if<Not>(&e->node)) {
      auto t = type_of_expr(n->operand, scope);
      if (t && *t != Type::boolean) {
        error(loc, "operand of 'not' must be Boolean");
        return std::nullopt;
      }
      return t ? std::optional(Type::boolean) : std::nullopt;
    }
    const auto& b = std::get<Binary>(e->node);
    auto lt = type_of_expr(b.lhs, scope);
    auto rt = type_of_expr(b.rhs, scope);
    if (!lt || !rt) return std::nullopt;
    auto bad = [&](const char* want) -> std::optional<Type> {
      error(loc, "operator '" + std::string(op_symbol(b.op)) + "' expects " + want + " operands, got " +
                     std::string(type_name(*lt)) + " and " + std::string(type_name(*rt)));
      return std::nullopt;
    };
    switch (b.op) {
      case BinaryOp::add:
      case BinaryOp::sub:
      case BinaryOp::mul:
        if (*lt != Type::integer || *rt != Type::integer) return bad("Integer");
        return Type::integer;
      case BinaryOp::lt:
      case BinaryOp::le:
      case BinaryOp::gt:
      case BinaryOp::ge:
        if (*lt != Type::integer || *rt != Type::integer) return bad("Integer");
        return Type::boolean;
      case BinaryOp::eq:
      case BinaryOp::ne:
        if (*lt != *rt) return bad("same-typed");
        return Type::boolean;
      case BinaryOp::logical_and:
      case BinaryOp::logical_or:
        if (*lt != Type::boolean || *rt != Type::boolean) return bad("Boolean");
        return Type::boolean;
    }
    return std::nullopt;
  }

  void check_channels() {
    std::map<std::pair<std::string, std::string>, std::string> used;
    for (const auto& ch : m_.channels) {
      for (const ObjectPort* end : {&ch.end1, &ch.end2}) {
        const Class* cls = m_.class_of(end->object);
        if (!m_.find_object(end->object)) {
          error(ch.pos.loc, "channel " + ch.name + " references undeclared object " + end->object);
          continue;
        }
        if (cls && std::find(cls->ports.begin(), cls->ports.end(), end->port) == cls->ports.end())
          error(ch.pos.loc, "channel " + ch.name + " references undeclared port " + end->object + "." + end->port);
        auto [it, fresh] = used.try_emplace({end->object, end->port}, ch.name);
        if (!fresh)
          error(ch.pos.loc, "port " + end->object + "." + end->port + " of channel " + ch.name +
                                " is already attached to channel " + it->second);
      }
    }
  }

  const Model& m_;
  std::map<std::pair<std::string, std::string>, PortAttachment> attach_;
  Diagnostics out_;
};

}  // namespace detail

/// Checks well-formedness: unique names, exactly one initial state per
/// machine, channel wiring, signal signatures, expression typing and scoping.
/// The result holds an error iff the model is ill formed. A port that a
/// machine uses but some object leaves unconnected only draws a warning.
inline Diagnostics validate_model(const Model& m) { return detail::Validator(m).run(); }

}  // namespace slco
