#pragma once

// Global system states (configurations) and the steps between them, plus
// the textual CS rendering used for debugging and golden files.

#include <cctype>
#include <cstddef>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "slco/model.hpp"

namespace slco {

/// Progress through a transition's effect: statement `stmt_index` of
/// transition `transition_id` is executed next.
struct PartialProgress {
  std::size_t stmt_index = 0;
  std::size_t transition_id = 0;
  friend bool operator==(const PartialProgress&, const PartialProgress&) = default;
};

/// Current state of one state machine instance; plain when resting in
/// `state`, partial while executing an outgoing transition of `state`.
struct ActiveState {
  std::string object;
  std::string machine;
  std::string state;
  std::optional<PartialProgress> partial;

  bool is_partial() const { return partial.has_value(); }
  friend bool operator==(const ActiveState&, const ActiveState&) = default;
};

inline ActiveState plain_state(std::string object, std::string machine, std::string state) {
  return {std::move(object), std::move(machine), std::move(state), std::nullopt};
}

inline ActiveState partial_state(std::string object, std::string machine, std::string state, std::size_t stmt,
                                 std::size_t transition) {
  return {std::move(object), std::move(machine), std::move(state), PartialProgress{stmt, transition}};
}

/// Owner of a variable: an object (class variable) or an object's state
/// machine (machine-local variable, `machine` non-empty).
struct VarOwner {
  std::string object;
  std::string machine;
  friend bool operator==(const VarOwner&, const VarOwner&) = default;
};

struct ValuationEntry {
  VarOwner owner;
  std::string variable;
  Value value;
  friend bool operator==(const ValuationEntry&, const ValuationEntry&) = default;
};

using Valuation = std::vector<ValuationEntry>;

struct SignalInstance {
  std::string signal;
  std::vector<Value> args;
  friend bool operator==(const SignalInstance&, const SignalInstance&) = default;
};

struct BufferKey {
  std::string channel;
  std::string sender_object;
  std::string sender_port;
  std::string receiver_object;
  std::string receiver_port;
  friend bool operator==(const BufferKey&, const BufferKey&) = default;
};

/// FIFO contents of one direction of an asynchronous channel; front() is the
/// oldest signal.
struct Buffer {
  BufferKey key;
  std::vector<SignalInstance> contents;
  friend bool operator==(const Buffer&, const Buffer&) = default;
};

struct Status {
  bool initial = false;
  bool final = false;
  friend bool operator==(const Status&, const Status&) = default;
};

struct Configuration {
  std::vector<ActiveState> active_states;
  Valuation valuation;
  std::vector<Buffer> buffers;
  Status status;

  friend bool operator==(const Configuration&, const Configuration&) = default;
};

/// Equality of the system state proper; the status annotation is ignored.
inline bool same_state(const Configuration& a, const Configuration& b) {
  return a.active_states == b.active_states && a.valuation == b.valuation && a.buffers == b.buffers;
}

namespace detail {

inline void hash_mix(std::size_t& seed, std::size_t v) {
  seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

inline std::size_t hash_value(const Value& v) {
  return std::visit([](const auto& x) { return std::hash<std::decay_t<decltype(x)>>{}(x); }, v) + v.index();
}

}  // namespace detail

/// Hash consistent with same_state().
struct ConfigurationHash {
  std::size_t operator()(const Configuration& c) const {
    using detail::hash_mix;
    std::hash<std::string> hs;
    std::size_t h = 0;
    for (const auto& a : c.active_states) {
      hash_mix(h, hs(a.object));
      hash_mix(h, hs(a.machine));
      hash_mix(h, hs(a.state));
      if (a.partial) {
        hash_mix(h, a.partial->stmt_index + 1);
        hash_mix(h, a.partial->transition_id);
      }
    }
    for (const auto& e : c.valuation) {
      hash_mix(h, hs(e.variable));
      hash_mix(h, detail::hash_value(e.value));
    }
    for (const auto& b : c.buffers) {
      hash_mix(h, hs(b.key.channel));
      hash_mix(h, b.contents.size());
      for (const auto& s : b.contents) {
        hash_mix(h, hs(s.signal));
        for (const auto& v : s.args) hash_mix(h, detail::hash_value(v));
      }
    }
    return h;
  }
};

struct SameState {
  bool operator()(const Configuration& a, const Configuration& b) const { return same_state(a, b); }
};

/// A labeled edge between two configurations of a CsGraph, by index.
struct Step {
  std::size_t source = 0;
  std::optional<std::string> label;
  std::size_t target = 0;
  friend bool operator==(const Step&, const Step&) = default;
};

/// All reachable configurations in discovery order (index 0 is initial)
/// together with every step between them.
struct CsGraph {
  std::vector<Configuration> configurations;
  std::vector<Step> steps;
  std::size_t initial_index = 0;
  friend bool operator==(const CsGraph&, const CsGraph&) = default;
};

// ---------------------------------------------------------------------------
// CS text

inline std::string format_active_state(const ActiveState& a) {
  std::string s = "<" + a.object + ", " + a.machine + ", " + a.state;
  if (a.partial) s += ", " + std::to_string(a.partial->stmt_index) + ", " + std::to_string(a.partial->transition_id);
  return s + ">";
}

inline std::string format_buffer(const Buffer& b) {
  const auto& k = b.key;
  std::string s = "<<" + k.channel + ", " + k.sender_object + ", " + k.sender_port + ", " + k.receiver_object + ", " +
                  k.receiver_port + ">,";
  for (const auto& sig : b.contents) {
    s += "<" + sig.signal + ", ";
    for (std::size_t i = 0; i < sig.args.size(); ++i) s += (i ? " " : "") + to_string(sig.args[i]);
    s += ">";
  }
  return s + ">";
}

/// Renders `<active states, [valuation], [buffers], status?>` in the layout of
/// the CS language; `indent` prefixes every line.
inline std::string format_configuration(const Configuration& c, const std::string& indent = "") {
  std::ostringstream os;
  os << indent << "<\n" << indent << ' ';
  for (std::size_t i = 0; i < c.active_states.size(); ++i) os << (i ? " " : "") << format_active_state(c.active_states[i]);
  os << ",\n" << indent << " [";
  for (std::size_t i = 0; i < c.valuation.size(); ++i) {
    const auto& e = c.valuation[i];
    os << (i ? ", " : "") << "<<" << e.owner.object << ", ";
    if (!e.owner.machine.empty()) os << e.owner.machine << ", ";
    os << e.variable << ">," << to_string(e.value) << '>';
  }
  os << "],\n" << indent << " [";
  for (std::size_t i = 0; i < c.buffers.size(); ++i) os << (i ? ", " : "") << format_buffer(c.buffers[i]);
  os << ']';
  if (c.status.initial || c.status.final) {
    os << ",\n" << indent << ' ';
    if (c.status.initial) os << "initial";
    if (c.status.initial && c.status.final) os << ' ';
    if (c.status.final) os << "final";
  }
  os << '\n' << indent << '>';
  return os.str();
}

inline std::string format_step(const CsGraph& g, const Step& s) {
  std::string out = "<\n" + format_configuration(g.configurations.at(s.source), " ") + ",\n";
  if (s.label) out += " " + quote_string(*s.label) + ",\n";
  return out + format_configuration(g.configurations.at(s.target), " ") + "\n>";
}

/// Every configuration followed by every step, one item per block.
inline std::string emit_cs(const CsGraph& g) {
  std::string out;
  for (const auto& c : g.configurations) out += format_configuration(c) + "\n";
  for (const auto& s : g.steps) out += format_step(g, s) + "\n";
  return out;
}

/// Removes all whitespace; CS text compares modulo layout.
inline std::string strip_whitespace(std::string_view text) {
  std::string out;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

}  // namespace slco
