#pragma once

#include <sstream>
#include <string>

#include "slco/model.hpp"

namespace slco {

namespace detail {

inline void print_expr(std::ostream& os, const Expr& e, bool nested) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Literal>) {
          os << to_string(n.value);
        } else if constexpr (std::is_same_v<T, VarRef>) {
          os << n.name;
        } else if constexpr (std::is_same_v<T, Binary>) {
          if (nested) os << '(';
          print_expr(os, n.lhs, true);
          os << ' ' << op_symbol(n.op) << ' ';
          print_expr(os, n.rhs, true);
          if (nested) os << ')';
        } else {
          os << "not ";
          print_expr(os, n.operand, true);
        }
      },
      e->node);
}

inline void print_vars(std::ostream& os, const std::vector<VarDecl>& vars, const std::string& indent) {
  if (vars.empty()) return;
  os << indent << "variables";
  for (const auto& v : vars) {
    os << ' ' << type_name(v.type) << ' ' << v.name;
    if (v.initial) os << " = " << to_string(*v.initial);
  }
  os << '\n';
}

inline void print_names(std::ostream& os, const char* keyword, const std::vector<std::string>& names) {
  if (names.empty()) return;
  os << ' ' << keyword;
  for (const auto& n : names) os << ' ' << n;
}

template <typename Range>
void print_args(std::ostream& os, const Range& args) {
  os << '(';
  bool first = true;
  for (const auto& a : args) {
    if (!first) os << ", ";
    first = false;
    print_expr(os, a, false);
  }
  os << ')';
}

}  // namespace detail

inline std::string to_string(const Expr& e) {
  std::ostringstream os;
  detail::print_expr(os, e, false);
  return os.str();
}

inline std::string to_string(const Statement& s) {
  std::ostringstream os;
  if (auto a = std::get_if<Assignment>(&s.node)) {
    os << a->target << " := " << to_string(a->value);
  } else {
    const auto& send = std::get<SendSignal>(s.node);
    os << "send " << send.signal;
    detail::print_args(os, send.args);
    os << " to " << send.port;
  }
  return os.str();
}

/// Renders a model in the textual syntax accepted by parse_model.
inline std::string pretty_print(const Model& m) {
  using detail::print_expr;
  std::ostringstream os;
  os << "model " << m.name << " {\n  classes\n";
  for (const auto& c : m.classes) {
    os << "    " << c.name << " {\n";
    detail::print_vars(os, c.variables, "      ");
    if (!c.ports.empty()) {
      os << "      ports";
      for (const auto& p : c.ports) os << ' ' << p;
      os << '\n';
    }
    os << "      state machines\n";
    for (const auto& sm : c.machines) {
      os << "        " << sm.name << " {\n";
      detail::print_vars(os, sm.variables, "          ");
      os << "         ";
      detail::print_names(os, "initial", sm.initial_states);
      detail::print_names(os, "state", sm.plain_states);
      detail::print_names(os, "final", sm.final_states);
      os << "\n          transitions\n";
      for (const auto& t : sm.transitions) {
        os << "            " << t.name << " from " << t.source << " to " << t.target << " {\n";
        if (t.trigger) {
          os << "              trigger ";
          if (auto r = std::get_if<SignalReception>(&*t.trigger)) {
            os << "receive " << r->signal << '(';
            for (std::size_t i = 0; i < r->args.size(); ++i) {
              if (i) os << ", ";
              if (auto b = std::get_if<BindVar>(&r->args[i]))
                os << b->name;
              else
                print_expr(os, std::get<MatchExpr>(r->args[i]).expr, false);
            }
            os << ") from " << r->port << '\n';
          } else {
            os << "after " << std::get<Delay>(*t.trigger).millis << " ms\n";
          }
        }
        if (t.guard) os << "              guard " << to_string(t.guard) << '\n';
        if (!t.effect.empty()) {
          os << "              effect";
          for (std::size_t i = 0; i < t.effect.size(); ++i)
            os << (i ? "\n                     " : " ") << to_string(t.effect[i]);
          os << '\n';
        }
        os << "            }\n";
      }
      os << "        }\n";
    }
    os << "    }\n";
  }
  os << "  objects";
  for (const auto& o : m.objects) os << ' ' << o.name << ':' << o.class_name;
  os << "\n  channels\n";
  for (const auto& ch : m.channels) {
    os << "    " << ch.name << '(';
    for (std::size_t i = 0; i < ch.arg_types.size(); ++i) os << (i ? ", " : "") << type_name(ch.arg_types[i]);
    os << ") ";
    switch (ch.kind) {
      case ChannelKind::sync: os << "sync"; break;
      case ChannelKind::async_lossless: os << "async lossless"; break;
      case ChannelKind::async_lossy: os << "async lossy"; break;
    }
    os << (ch.bidirectional ? " between " : " from ") << ch.end1.object << '.' << ch.end1.port
       << (ch.bidirectional ? " and " : " to ") << ch.end2.object << '.' << ch.end2.port << '\n';
  }
  os << "}\n";
  return os.str();
}

}  // namespace slco
