#pragma once

// Operational semantics of SLCO: initial configuration, single steps from
// plain and partial active states, successor computation and breadth-first
// exploration of the reachable configurations.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "slco/configuration.hpp"
#include "slco/model.hpp"
#include "slco/validate.hpp"

namespace slco {

struct ExploreLimits {
  std::optional<std::size_t> max_configurations;
  std::size_t buffer_capacity = 1;
};

class ExplorationError : public std::runtime_error {
 public:
  enum class Kind { limit_exceeded, integer_overflow };

  ExplorationError(Kind kind, std::string message, std::size_t frontier = 0)
      : std::runtime_error(std::move(message)), kind_(kind), frontier_(frontier) {}

  Kind kind() const { return kind_; }
  /// Configurations discovered but not yet expanded when exploration stopped.
  std::size_t frontier_size() const { return frontier_; }

 private:
  Kind kind_;
  std::size_t frontier_;
};

/// Variable values received by the trigger of the transition being taken;
/// they shadow stored values during guard evaluation.
using Bindings = std::map<std::string, Value>;

/// One successor produced by a step: the step's label (empty for internal
/// activities) and the resulting configuration.
struct Successor {
  std::optional<std::string> label;
  Configuration configuration;
  friend bool operator==(const Successor&, const Successor&) = default;
};

using Successors = std::vector<Successor>;

namespace detail {

inline std::int64_t checked(std::int64_t a, std::int64_t b, BinaryOp op) {
  std::int64_t r = 0;
  bool overflow = false;
  switch (op) {
    case BinaryOp::add: overflow = __builtin_add_overflow(a, b, &r); break;
    case BinaryOp::sub: overflow = __builtin_sub_overflow(a, b, &r); break;
    case BinaryOp::mul: overflow = __builtin_mul_overflow(a, b, &r); break;
    default: break;
  }
  if (overflow)
    throw ExplorationError(ExplorationError::Kind::integer_overflow,
                           "integer overflow evaluating " + std::to_string(a) + " " + std::string(op_symbol(op)) +
                               " " + std::to_string(b));
  return r;
}

/// Strict evaluation of a well-typed expression; `lookup` resolves variables.
template <typename Lookup>
Value eval(const Expr& e, const Lookup& lookup) {
  return std::visit(
      [&](const auto& n) -> Value {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Literal>) {
          return n.value;
        } else if constexpr (std::is_same_v<T, VarRef>) {
          return lookup(n.name);
        } else if constexpr (std::is_same_v<T, Not>) {
          return !std::get<bool>(eval(n.operand, lookup));
        } else {
          if (n.op == BinaryOp::logical_and)
            return std::get<bool>(eval(n.lhs, lookup)) && std::get<bool>(eval(n.rhs, lookup));
          if (n.op == BinaryOp::logical_or)
            return std::get<bool>(eval(n.lhs, lookup)) || std::get<bool>(eval(n.rhs, lookup));
          Value l = eval(n.lhs, lookup);
          Value r = eval(n.rhs, lookup);
          switch (n.op) {
            case BinaryOp::eq: return l == r;
            case BinaryOp::ne: return l != r;
            case BinaryOp::add:
            case BinaryOp::sub:
            case BinaryOp::mul: return checked(std::get<std::int64_t>(l), std::get<std::int64_t>(r), n.op);
            case BinaryOp::lt: return std::get<std::int64_t>(l) < std::get<std::int64_t>(r);
            case BinaryOp::le: return std::get<std::int64_t>(l) <= std::get<std::int64_t>(r);
            case BinaryOp::gt: return std::get<std::int64_t>(l) > std::get<std::int64_t>(r);
            case BinaryOp::ge: return std::get<std::int64_t>(l) >= std::get<std::int64_t>(r);
            default: break;
          }
          throw std::logic_error("unhandled operator");
        }
      },
      e->node);
}

inline std::string format_signal(const std::string& signal, const std::vector<Value>& args) {
  std::string s = signal + "(";
  for (std::size_t i = 0; i < args.size(); ++i) s += (i ? ", " : "") + to_string(args[i]);
  return s + ")";
}

}  // namespace detail

/// Evaluates `e` in the scope of state machine `scope.machine` of object
/// `scope.object`: bindings first, then machine variables, then class
/// variables. Throws ExplorationError on integer overflow and
/// std::invalid_argument on an unresolvable variable.
inline Value evaluate_expression(const Expr& e, const Valuation& v, const Bindings& bindings, const VarOwner& scope) {
  auto lookup = [&](const std::string& name) -> Value {
    if (auto it = bindings.find(name); it != bindings.end()) return it->second;
    for (const auto& entry : v)
      if (entry.variable == name && entry.owner.object == scope.object && entry.owner.machine == scope.machine)
        return entry.value;
    for (const auto& entry : v)
      if (entry.variable == name && entry.owner.object == scope.object && entry.owner.machine.empty())
        return entry.value;
    throw std::invalid_argument("variable " + name + " is not in scope of " + scope.object);
  };
  return detail::eval(e, lookup);
}

/// Positional view of a validated model: machine instances, variable slots
/// and buffers in canonical order. A Configuration built by the engine lists
/// its parts in exactly this order.
class ModelIndex {
 public:
  struct Instance {
    std::size_t object = 0;
    const ObjectDecl* object_decl = nullptr;
    const Class* cls = nullptr;
    const StateMachine* machine = nullptr;
    std::size_t machine_index = 0;
    std::map<std::string, std::size_t, std::less<>> scope;  // variable name -> valuation slot
  };

  struct PortEnd {
    std::size_t channel = 0;
    int end = 1;
    std::optional<std::size_t> outgoing_buffer;  // buffer written when sending from this end
    std::optional<std::size_t> incoming_buffer;  // buffer read when receiving at this end
  };

  explicit ModelIndex(const Model& m) : model_(&m) {
    for (std::size_t oi = 0; oi < m.objects.size(); ++oi) {
      const auto& o = m.objects[oi];
      const Class* cls = m.find_class(o.class_name);
      if (!cls) throw std::invalid_argument("object " + o.name + " references undeclared class " + o.class_name);
      std::map<std::string, std::size_t, std::less<>> class_scope;
      for (const auto& v : cls->variables) {
        class_scope[v.name] = slots_.size();
        slots_.push_back({VarOwner{o.name, ""}, v.name, v.initial_value()});
      }
      for (std::size_t mi = 0; mi < cls->machines.size(); ++mi) {
        const auto& sm = cls->machines[mi];
        Instance inst{oi, &o, cls, &sm, mi, class_scope};
        for (const auto& v : sm.variables) {
          inst.scope[v.name] = slots_.size();
          slots_.push_back({VarOwner{o.name, sm.name}, v.name, v.initial_value()});
        }
        instances_.push_back(std::move(inst));
      }
    }
    for (std::size_t ci = 0; ci < m.channels.size(); ++ci) {
      const auto& ch = m.channels[ci];
      PortEnd e1{ci, 1, std::nullopt, std::nullopt};
      PortEnd e2{ci, 2, std::nullopt, std::nullopt};
      if (is_async(ch.kind)) {
        e1.outgoing_buffer = e2.incoming_buffer = buffers_.size();
        buffers_.push_back({BufferKey{ch.name, ch.end1.object, ch.end1.port, ch.end2.object, ch.end2.port}, {}});
        if (ch.bidirectional) {
          e2.outgoing_buffer = e1.incoming_buffer = buffers_.size();
          buffers_.push_back({BufferKey{ch.name, ch.end2.object, ch.end2.port, ch.end1.object, ch.end1.port}, {}});
        }
      }
      ports_.try_emplace({ch.end1.object, ch.end1.port}, e1);
      ports_.try_emplace({ch.end2.object, ch.end2.port}, e2);
    }
  }

  const Model& model() const { return *model_; }
  const std::vector<Instance>& instances() const { return instances_; }
  /// Valuation holding every variable at its initial value.
  const Valuation& initial_valuation() const { return slots_; }
  /// Empty buffers, one per direction of every asynchronous channel.
  const std::vector<Buffer>& empty_buffers() const { return buffers_; }

  const PortEnd* port_end(const std::string& object, const std::string& port) const {
    auto it = ports_.find({object, port});
    return it == ports_.end() ? nullptr : &it->second;
  }

  /// The channel end opposite to `end`.
  ObjectPort peer(const PortEnd& end) const {
    const Channel& ch = model_->channels[end.channel];
    return end.end == 1 ? ch.end2 : ch.end1;
  }

  std::optional<std::size_t> object_index(std::string_view name) const {
    for (std::size_t i = 0; i < model_->objects.size(); ++i)
      if (model_->objects[i].name == name) return i;
    return std::nullopt;
  }

 private:
  const Model* model_;
  std::vector<Instance> instances_;
  Valuation slots_;
  std::vector<Buffer> buffers_;
  std::map<std::pair<std::string, std::string>, PortEnd> ports_;
};

/// Step semantics over a fixed model. The model must outlive the engine and
/// pass validate_model without errors.
class Engine {
 public:
  explicit Engine(const Model& m, std::size_t buffer_capacity = 1) : index_(m), capacity_(buffer_capacity) {}

  const ModelIndex& index() const { return index_; }

  Configuration initial_configuration() const {
    Configuration c;
    for (const auto& inst : index_.instances())
      c.active_states.push_back(plain_state(inst.object_decl->name, inst.machine->name, inst.machine->initial_state()));
    c.valuation = index_.initial_valuation();
    c.buffers = index_.empty_buffers();
    c.status.initial = true;
    c.status.final = is_final(c);
    return c;
  }

  /// True iff every machine rests (plain) in one of its final states.
  bool is_final(const Configuration& c) const {
    const auto& insts = index_.instances();
    for (std::size_t i = 0; i < insts.size(); ++i) {
      const auto& a = c.active_states[i];
      if (a.is_partial() || !insts[i].machine->is_final(a.state)) return false;
    }
    return true;
  }

  /// Performs the first basic activity of transition `t` from the plain
  /// active state `a`: trigger consumption, or the first statement of a
  /// trigger-less transition. Disabled transitions yield no successors.
  /// Synchronous receptions yield nothing here; the rendezvous is produced
  /// from the sending side.
  Successors take_step_plain(const Configuration& c, const ActiveState& a, const Transition& t) const {
    std::size_t i = instance_of(c, a);
    if (a.is_partial()) throw std::invalid_argument("take_step_plain requires a plain active state");
    const auto& inst = index_.instances()[i];
    if (t.source != a.state) throw std::invalid_argument("transition " + t.name + " does not leave state " + a.state);
    std::size_t tid = transition_identifier(*inst.machine, t);

    // Active state once the trigger (if any) has been consumed.
    ActiveState after_trigger =
        t.effect.empty() ? plain_state(a.object, a.machine, t.target) : partial_state(a.object, a.machine, a.state, 0, tid);

    if (t.trigger) {
      if (auto delay = std::get_if<Delay>(&*t.trigger)) {
        if (t.guard && !guard_holds(c, i, t.guard, {})) return {};
        Configuration next = advance(c, i, after_trigger);
        return {Successor{"delay(" + std::to_string(delay->millis) + ")", std::move(next)}};
      }
      const auto& r = std::get<SignalReception>(*t.trigger);
      const auto* end = index_.port_end(a.object, r.port);
      if (!end || !end->incoming_buffer) return {};
      const Buffer& buf = c.buffers[*end->incoming_buffer];
      if (buf.contents.empty()) return {};
      const SignalInstance& sig = buf.contents.front();
      auto bindings = match_reception(c, i, r, sig);
      if (!bindings) return {};
      if (t.guard && !guard_holds(c, i, t.guard, *bindings)) return {};
      Configuration next = advance(c, i, after_trigger);
      next.buffers[*end->incoming_buffer].contents.erase(next.buffers[*end->incoming_buffer].contents.begin());
      store_bindings(next, i, *bindings);
      return {Successor{"receiving " + detail::format_signal(sig.signal, sig.args), std::move(next)}};
    }

    if (t.guard && !guard_holds(c, i, t.guard, {})) return {};
    if (t.effect.empty()) return {Successor{std::nullopt, advance(c, i, plain_state(a.object, a.machine, t.target))}};
    ActiveState after = t.effect.size() == 1 ? plain_state(a.object, a.machine, t.target)
                                             : partial_state(a.object, a.machine, a.state, 1, tid);
    return execute(c, i, t.effect.front(), after);
  }

  /// Executes the pending statement of the partial active state `a`, whose
  /// transition is `t`. The guard is not re-evaluated.
  Successors take_step_partial(const Configuration& c, const ActiveState& a, const Transition& t) const {
    std::size_t i = instance_of(c, a);
    if (!a.is_partial()) throw std::invalid_argument("take_step_partial requires a partial active state");
    const auto& inst = index_.instances()[i];
    std::size_t k = a.partial->stmt_index;
    if (transition_identifier(*inst.machine, t) != a.partial->transition_id || k >= t.effect.size())
      throw std::invalid_argument("partial active state does not match transition " + t.name);
    ActiveState after = k + 1 == t.effect.size() ? plain_state(a.object, a.machine, t.target)
                                                 : partial_state(a.object, a.machine, a.state, k + 1,
                                                                 a.partial->transition_id);
    return execute(c, i, t.effect[k], after);
  }

  /// All steps enabled in `c`, in active-state order then transition
  /// declaration order, with identical (label, target) pairs merged.
  Successors successors(const Configuration& c) const {
    Successors out;
    const auto& insts = index_.instances();
    for (std::size_t i = 0; i < insts.size(); ++i) {
      const ActiveState& a = c.active_states[i];
      const StateMachine& sm = *insts[i].machine;
      if (a.is_partial()) {
        append_unique(out, take_step_partial(c, a, sm.transitions.at(a.partial->transition_id)));
        continue;
      }
      for (const auto& t : sm.transitions)
        if (t.source == a.state) append_unique(out, take_step_plain(c, a, t));
    }
    return out;
  }

 private:
  static void append_unique(Successors& out, Successors more) {
    for (auto& s : more) {
      bool dup = std::any_of(out.begin(), out.end(), [&](const Successor& o) {
        return o.label == s.label && same_state(o.configuration, s.configuration);
      });
      if (!dup) out.push_back(std::move(s));
    }
  }

  std::size_t instance_of(const Configuration& c, const ActiveState& a) const {
    const auto& insts = index_.instances();
    for (std::size_t i = 0; i < insts.size() && i < c.active_states.size(); ++i)
      if (insts[i].object_decl->name == a.object && insts[i].machine->name == a.machine) {
        if (c.active_states[i] != a) break;
        return i;
      }
    throw std::invalid_argument("active state " + format_active_state(a) + " is not part of the configuration");
  }

  Configuration advance(const Configuration& c, std::size_t i, ActiveState next) const {
    Configuration out = c;
    out.status = {};
    out.active_states[i] = std::move(next);
    return out;
  }

  Value evaluate(const Configuration& c, std::size_t i, const Expr& e, const Bindings& bindings) const {
    const auto& scope = index_.instances()[i].scope;
    return detail::eval(e, [&](const std::string& name) -> Value {
      if (auto it = bindings.find(name); it != bindings.end()) return it->second;
      return c.valuation[scope.at(name)].value;
    });
  }

  bool guard_holds(const Configuration& c, std::size_t i, const Expr& guard, const Bindings& bindings) const {
    return std::get<bool>(evaluate(c, i, guard, bindings));
  }

  // Bindings produced by accepting `sig` with reception `r`, or nullopt when
  // the signal name, arity or a match argument does not fit.
  std::optional<Bindings> match_reception(const Configuration& c, std::size_t i, const SignalReception& r,
                                          const SignalInstance& sig) const {
    if (sig.signal != r.signal || sig.args.size() != r.args.size()) return std::nullopt;
    Bindings b;
    for (std::size_t k = 0; k < r.args.size(); ++k)
      if (auto bind = std::get_if<BindVar>(&r.args[k])) b[bind->name] = sig.args[k];
    for (std::size_t k = 0; k < r.args.size(); ++k)
      if (auto match = std::get_if<MatchExpr>(&r.args[k]))
        if (evaluate(c, i, match->expr, b) != sig.args[k]) return std::nullopt;
    return b;
  }

  void store_bindings(Configuration& c, std::size_t i, const Bindings& b) const {
    const auto& scope = index_.instances()[i].scope;
    for (const auto& [name, value] : b) c.valuation[scope.at(name)].value = value;
  }

  Successors execute(const Configuration& c, std::size_t i, const Statement& s, const ActiveState& after) const {
    if (auto asg = std::get_if<Assignment>(&s.node)) {
      Value v = evaluate(c, i, asg->value, {});
      Configuration next = advance(c, i, after);
      next.valuation[index_.instances()[i].scope.at(asg->target)].value = std::move(v);
      return {Successor{std::nullopt, std::move(next)}};
    }
    const auto& send = std::get<SendSignal>(s.node);
    std::vector<Value> args;
    for (const auto& e : send.args) args.push_back(evaluate(c, i, e, {}));
    const std::string& object = c.active_states[i].object;
    const auto* end = index_.port_end(object, send.port);
    if (!end) return {};
    const Channel& ch = index_.model().channels[end->channel];
    std::string sig_text = detail::format_signal(send.signal, args);

    if (ch.kind == ChannelKind::sync) return rendezvous(c, i, *end, ch, SignalInstance{send.signal, args}, after);
    if (!end->outgoing_buffer) return {};

    std::size_t b = *end->outgoing_buffer;
    std::string label = "sending " + sig_text + " to " + send.port;
    Successors out;
    if (c.buffers[b].contents.size() < capacity_) {
      Configuration next = advance(c, i, after);
      next.buffers[b].contents.push_back(SignalInstance{send.signal, args});
      out.push_back({label, std::move(next)});
    }
    if (ch.kind == ChannelKind::async_lossy) out.push_back({label, advance(c, i, after)});
    return out;
  }

  // Synchronous communication: one step per co-enabled reception of another
  // machine resting in a plain state at the peer end of the channel.
  Successors rendezvous(const Configuration& c, std::size_t sender, const ModelIndex::PortEnd& end, const Channel& ch,
                        const SignalInstance& sig, const ActiveState& sender_after) const {
    ObjectPort peer = index_.peer(end);
    Successors out;
    const auto& insts = index_.instances();
    for (std::size_t j = 0; j < insts.size(); ++j) {
      if (j == sender || insts[j].object_decl->name != peer.object) continue;
      const ActiveState& a = c.active_states[j];
      if (a.is_partial()) continue;
      const StateMachine& sm = *insts[j].machine;
      for (std::size_t tid = 0; tid < sm.transitions.size(); ++tid) {
        const Transition& t = sm.transitions[tid];
        if (t.source != a.state || !t.trigger) continue;
        auto r = std::get_if<SignalReception>(&*t.trigger);
        if (!r || r->port != peer.port) continue;
        auto bindings = match_reception(c, j, *r, sig);
        if (!bindings) continue;
        if (t.guard && !guard_holds(c, j, t.guard, *bindings)) continue;
        Configuration next = advance(c, sender, sender_after);
        next.active_states[j] = t.effect.empty() ? plain_state(a.object, a.machine, t.target)
                                                 : partial_state(a.object, a.machine, a.state, 0, tid);
        store_bindings(next, j, *bindings);
        out.push_back({"communicating " + detail::format_signal(sig.signal, sig.args) + " over " + ch.name,
                       std::move(next)});
      }
    }
    return out;
  }

  ModelIndex index_;
  std::size_t capacity_;
};

// ---------------------------------------------------------------------------
// Free-function interface

inline Configuration initial_configuration(const Model& m) { return Engine(m).initial_configuration(); }

inline Successors take_step_plain(const Model& m, const Configuration& c, const ActiveState& a, const Transition& t,
                                  std::size_t buffer_capacity = 1) {
  return Engine(m, buffer_capacity).take_step_plain(c, a, t);
}

inline Successors take_step_partial(const Model& m, const Configuration& c, const ActiveState& a, const Transition& t,
                                    std::size_t buffer_capacity = 1) {
  return Engine(m, buffer_capacity).take_step_partial(c, a, t);
}

inline Successors successors(const Model& m, const Configuration& c, std::size_t buffer_capacity = 1) {
  return Engine(m, buffer_capacity).successors(c);
}

/// Sorts the parts of `c` into canonical order: active states by (object,
/// machine) declaration index, valuation entries by (owner, variable)
/// declaration index, buffers by (channel declaration index, direction).
inline Configuration canonicalize_configuration(const Model& m, Configuration c) {
  ModelIndex index(m);
  auto rank_of = [](const auto& canonical, const auto& item, auto same) {
    for (std::size_t k = 0; k < canonical.size(); ++k)
      if (same(canonical[k], item)) return k;
    return canonical.size();
  };

  const auto& insts = index.instances();
  auto sort_by = [&](auto& items, auto rank) {
    using Item = typename std::decay_t<decltype(items)>::value_type;
    std::vector<std::pair<std::size_t, Item>> tagged;
    for (auto& it : items) tagged.emplace_back(rank(it), std::move(it));
    std::stable_sort(tagged.begin(), tagged.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    items.clear();
    for (auto& [r, it] : tagged) items.push_back(std::move(it));
  };
  sort_by(c.active_states, [&](const ActiveState& a) {
    return rank_of(insts, a, [](const ModelIndex::Instance& in, const ActiveState& x) {
      return in.object_decl->name == x.object && in.machine->name == x.machine;
    });
  });
  sort_by(c.valuation, [&](const ValuationEntry& e) {
    return rank_of(index.initial_valuation(), e, [](const ValuationEntry& slot, const ValuationEntry& x) {
      return slot.owner == x.owner && slot.variable == x.variable;
    });
  });
  sort_by(c.buffers, [&](const Buffer& b) {
    return rank_of(index.empty_buffers(), b, [](const Buffer& slot, const Buffer& x) { return slot.key == x.key; });
  });
  return c;
}

/// Breadth-first generation of every reachable configuration and step,
/// followed by final-status marking. Configuration numbers follow discovery
/// order. Throws ExplorationError when `limits.max_configurations` would be
/// exceeded or integer arithmetic overflows, and std::invalid_argument when
/// the model has validation errors.
inline CsGraph explore(const Model& m, const ExploreLimits& limits = {}) {
  auto diags = validate_model(m);
  if (has_errors(diags)) throw std::invalid_argument("model " + m.name + " is not well formed: " + diags.front().message);

  Engine engine(m, limits.buffer_capacity);
  CsGraph g;
  std::unordered_map<Configuration, std::size_t, ConfigurationHash, SameState> ids;

  auto intern = [&](Configuration c, std::size_t processed) {
    auto it = ids.find(c);
    if (it != ids.end()) return it->second;
    if (limits.max_configurations && g.configurations.size() >= *limits.max_configurations)
      throw ExplorationError(ExplorationError::Kind::limit_exceeded,
                             "state space exceeds " + std::to_string(*limits.max_configurations) + " configurations",
                             g.configurations.size() - processed);
    std::size_t id = g.configurations.size();
    c.status = {};
    ids.emplace(c, id);
    g.configurations.push_back(std::move(c));
    return id;
  };

  intern(engine.initial_configuration(), 0);
  for (std::size_t next = 0; next < g.configurations.size(); ++next) {
    // Copy: interning may reallocate the configuration vector.
    Configuration source = g.configurations[next];
    for (auto& s : engine.successors(source)) {
      std::size_t target = intern(std::move(s.configuration), next);
      g.steps.push_back(Step{next, std::move(s.label), target});
    }
  }

  g.configurations[g.initial_index].status.initial = true;
  for (auto& c : g.configurations) c.status.final = engine.is_final(c);
  return g;
}

}  // namespace slco
