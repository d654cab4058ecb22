#pragma once

// Labeled transition systems: conversion from a CsGraph, the `.lts` text
// format, and DOT and AUT export.
//
// `.lts` format:
//
//   states
//     initial 0
//     final 1
//     2
//   transitions
//     0 1
//     0 "a" 2
//
// Every state line is zero or more flags (`initial`, `final`) followed by the
// state index. Transition lines are `SRC DST` (internal) or `SRC "label" DST`.
// Within a label, `"` and `\` are escaped with a backslash and a newline is
// written `\n`. Emitted files indent entries by two spaces; the parser ignores
// indentation and blank lines.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstddef>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "slco/configuration.hpp"
#include "slco/diagnostic.hpp"

namespace slco {

struct LtsTransition {
  std::size_t source = 0;
  std::optional<std::string> label;  // empty = internal action
  std::size_t target = 0;
  friend bool operator==(const LtsTransition&, const LtsTransition&) = default;
  friend auto operator<=>(const LtsTransition&, const LtsTransition&) = default;
};

struct Lts {
  std::size_t num_states = 0;
  std::set<std::size_t> initial_states;
  std::set<std::size_t> final_states;
  std::vector<LtsTransition> transitions;
  friend bool operator==(const Lts&, const Lts&) = default;

  bool is_final(std::size_t s) const { return final_states.count(s) != 0; }

  /// The unique initial state; throws std::invalid_argument otherwise.
  std::size_t initial_state() const {
    if (initial_states.size() != 1)
      throw std::invalid_argument("expected exactly one initial state, found " + std::to_string(initial_states.size()));
    return *initial_states.begin();
  }
};

/// State i is the i-th discovered configuration; transitions mirror steps.
inline Lts cs_to_lts(const CsGraph& g) {
  Lts l;
  l.num_states = g.configurations.size();
  for (std::size_t i = 0; i < g.configurations.size(); ++i) {
    if (g.configurations[i].status.initial) l.initial_states.insert(i);
    if (g.configurations[i].status.final) l.final_states.insert(i);
  }
  l.transitions.reserve(g.steps.size());
  for (const auto& s : g.steps) l.transitions.push_back({s.source, s.label, s.target});
  return l;
}

namespace detail {

inline std::string escape_label(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out;
}

}  // namespace detail

inline std::string emit_lts_text(const Lts& l) {
  std::ostringstream os;
  os << "states\n";
  for (std::size_t s = 0; s < l.num_states; ++s) {
    os << "  ";
    if (l.initial_states.count(s)) os << "initial ";
    if (l.final_states.count(s)) os << "final ";
    os << s << '\n';
  }
  os << "transitions\n";
  for (const auto& t : l.transitions) {
    os << "  " << t.source << ' ';
    if (t.label) os << '"' << detail::escape_label(*t.label) << "\" ";
    os << t.target << '\n';
  }
  return os.str();
}

struct LtsParseResult {
  std::optional<Lts> lts;
  Diagnostics diagnostics;
  explicit operator bool() const { return lts.has_value(); }
};

namespace detail {

class LtsLineReader {
 public:
  LtsLineReader(std::string_view line, int line_no) : s_(line), line_(line_no) {}

  void skip_space() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= s_.size();
  }
  Location here() const { return {line_, static_cast<int>(pos_) + 1}; }

  std::string word() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_])) && s_[pos_] != '"') ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  bool peek_quote() {
    skip_space();
    return pos_ < s_.size() && s_[pos_] == '"';
  }

  std::optional<std::size_t> number() {
    skip_space();
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
    if (ec != std::errc{} || ptr == s_.data() + pos_) return std::nullopt;
    pos_ = static_cast<std::size_t>(ptr - s_.data());
    if (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_])) && s_[pos_] != '"') return std::nullopt;
    return v;
  }

  // Reads a quoted label; returns nullopt on an unterminated or badly escaped label.
  std::optional<std::string> quoted() {
    skip_space();
    ++pos_;
    std::string out;
    while (pos_ < s_.size()) {
      char c = s_[pos_++];
      if (c == '"') return out;
      if (c == '\\') {
        if (pos_ >= s_.size()) return std::nullopt;
        char e = s_[pos_++];
        if (e == 'n')
          out += '\n';
        else if (e == '"' || e == '\\')
          out += e;
        else
          return std::nullopt;
      } else {
        out += c;
      }
    }
    return std::nullopt;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
  int line_;
};

}  // namespace detail

/// Parses the `.lts` text format. Reports the first malformed line, an
/// out-of-range or missing state index, or more than one initial state.
inline LtsParseResult parse_lts_text(std::string_view text) {
  LtsParseResult result;
  auto fail = [&](Location loc, std::string msg) {
    result.diagnostics.push_back({Severity::error, loc, std::move(msg)});
    return result;
  };

  enum class Section { none, states, transitions } section = Section::none;
  Lts l;
  std::set<std::size_t> declared;
  std::size_t max_state = 0;
  std::vector<std::pair<LtsTransition, Location>> pending;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    detail::LtsLineReader r(line, line_no);
    if (r.at_end()) continue;
    Location loc = r.here();

    std::string first = r.peek_quote() ? "" : r.word();
    if (first == "states" && r.at_end()) {
      if (section != Section::none) return fail(loc, "duplicate 'states' section");
      section = Section::states;
      continue;
    }
    if (first == "transitions" && r.at_end()) {
      if (section != Section::states) return fail(loc, "'transitions' must follow the 'states' section");
      section = Section::transitions;
      continue;
    }
    if (section == Section::none) return fail(loc, "expected 'states'");

    detail::LtsLineReader line_reader(line, line_no);
    if (section == Section::states) {
      bool initial = false;
      bool final = false;
      for (;;) {
        Location wloc = (line_reader.skip_space(), line_reader.here());
        if (auto n = line_reader.number()) {
          if (!line_reader.at_end()) return fail(line_reader.here(), "unexpected text after state index");
          if (!declared.insert(*n).second) return fail(wloc, "state " + std::to_string(*n) + " declared twice");
          max_state = std::max(max_state, *n);
          if (initial) l.initial_states.insert(*n);
          if (final) l.final_states.insert(*n);
          break;
        }
        std::string w = line_reader.word();
        if (w == "initial" && !initial)
          initial = true;
        else if (w == "final" && !final)
          final = true;
        else
          return fail(wloc, w.empty() ? "expected a state index" : "unexpected '" + w + "' in state declaration");
      }
      continue;
    }

    LtsTransition t;
    auto src = line_reader.number();
    if (!src) return fail(loc, "expected a source state index");
    t.source = *src;
    if (line_reader.peek_quote()) {
      Location lloc = line_reader.here();
      auto label = line_reader.quoted();
      if (!label) return fail(lloc, "malformed quoted label");
      t.label = std::move(*label);
    }
    Location dloc = (line_reader.skip_space(), line_reader.here());
    auto dst = line_reader.number();
    if (!dst) return fail(dloc, "expected a target state index");
    t.target = *dst;
    if (!line_reader.at_end()) return fail(line_reader.here(), "unexpected text after transition");
    pending.emplace_back(std::move(t), loc);
  }

  if (section == Section::none) return fail({line_no, 1}, "expected 'states'");
  if (section != Section::transitions) return fail({line_no, 1}, "missing 'transitions' section");
  l.num_states = declared.empty() ? 0 : max_state + 1;
  if (declared.size() != l.num_states)
    for (std::size_t s = 0; s < l.num_states; ++s)
      if (!declared.count(s)) return fail({1, 1}, "state " + std::to_string(s) + " is not declared");
  for (auto& [t, loc] : pending) {
    if (t.source >= l.num_states || t.target >= l.num_states)
      return fail(loc, "transition refers to state index out of range");
    l.transitions.push_back(std::move(t));
  }
  if (l.initial_states.size() > 1) return fail({1, 1}, "more than one initial state declared");
  result.lts = std::move(l);
  return result;
}

// ---------------------------------------------------------------------------
// DOT

struct DotOptions {
  std::string graph_name = "lts";
  std::string state_shape = "circle";
  int final_peripheries = 2;
  std::string rankdir = "TB";
  bool number_states = true;  // show the state index inside each node
};

namespace detail {

inline std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

/// One node `sN` per state, an invisible entry node with an arrow into each
/// initial state, final states with a double periphery, and one edge per
/// transition (labeled edges carry a `label` attribute).
inline std::string emit_dot(const Lts& l, const DotOptions& opts = {}) {
  std::ostringstream os;
  os << "digraph " << detail::dot_quote(opts.graph_name) << " {\n";
  os << "  rankdir=" << opts.rankdir << ";\n";
  os << "  node [shape=" << opts.state_shape << "];\n";
  for (std::size_t s : l.initial_states) {
    os << "  init" << s << " [shape=none, label=\"\", width=0, height=0];\n";
    os << "  init" << s << " -> s" << s << ";\n";
  }
  for (std::size_t s = 0; s < l.num_states; ++s) {
    os << "  s" << s << " [label=" << (opts.number_states ? detail::dot_quote(std::to_string(s)) : "\"\"");
    if (l.is_final(s)) os << ", peripheries=" << opts.final_peripheries;
    os << "];\n";
  }
  for (const auto& t : l.transitions) {
    os << "  s" << t.source << " -> s" << t.target;
    if (t.label) os << " [label=" << detail::dot_quote(*t.label) << "]";
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// AUT

struct AutResult {
  std::string text;
  Diagnostics diagnostics;
};

/// Aldebaran format: `des (INIT, NTRANS, NSTATES)` and one `(SRC,"LABEL",DST)`
/// line per transition, internal transitions labeled `tau`. Final states are
/// not representable; a warning is returned when any exist. Throws
/// std::invalid_argument unless there is exactly one initial state.
inline AutResult emit_aut(const Lts& l) {
  AutResult r;
  std::size_t init = l.initial_state();
  std::ostringstream os;
  os << "des (" << init << ", " << l.transitions.size() << ", " << l.num_states << ")\n";
  for (const auto& t : l.transitions)
    os << '(' << t.source << ",\"" << (t.label ? detail::escape_label(*t.label) : "tau") << "\"," << t.target << ")\n";
  r.text = os.str();
  if (!l.final_states.empty())
    r.diagnostics.push_back({Severity::warning, {1, 1},
                             "AUT cannot represent final states; " + std::to_string(l.final_states.size()) +
                                 " final state(s) dropped"});
  return r;
}

}  // namespace slco
