#pragma once

// Label hiding, strong and branching bisimulation reduction, and
// equivalence checking of LTSs. Unlabeled transitions are the internal
// action. Finality is an observation: a final and a non-final state are
// never equivalent. The initial flag is not an observation.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "slco/lts.hpp"

namespace slco {

enum class Relation { strong, branching };

inline std::string_view relation_name(Relation r) { return r == Relation::strong ? "strong" : "branching"; }

/// Which labels become internal: everything except `labels` (keep mode) or
/// exactly `labels` (hide mode).
struct HideSpec {
  enum class Mode { keep, hide };
  Mode mode = Mode::hide;
  std::set<std::string> labels;

  static HideSpec keep(std::set<std::string> l) { return {Mode::keep, std::move(l)}; }
  static HideSpec hide(std::set<std::string> l) { return {Mode::hide, std::move(l)}; }

  bool hides(const std::string& label) const {
    bool listed = labels.count(label) != 0;
    return mode == Mode::keep ? !listed : listed;
  }
};

inline Lts hide_labels(Lts l, const HideSpec& h) {
  for (auto& t : l.transitions)
    if (t.label && h.hides(*t.label)) t.label.reset();
  return l;
}

/// Assignment of states to equivalence classes. Block ids are dense and
/// ordered by the least state of each block.
struct Partition {
  std::vector<std::size_t> block_of;
  std::size_t num_blocks = 0;

  bool related(std::size_t s, std::size_t t) const { return block_of.at(s) == block_of.at(t); }
};

namespace detail {

// Outgoing transitions per state with labels interned as integers;
// label 0 is the internal action.
struct LabeledGraph {
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> out;  // (label, target)

  explicit LabeledGraph(const Lts& l) : out(l.num_states) {
    std::map<std::string, std::size_t> ids;
    for (const auto& t : l.transitions) {
      std::size_t label = 0;
      if (t.label) label = ids.try_emplace(*t.label, ids.size() + 1).first->second;
      out.at(t.source).emplace_back(label, t.target);
    }
  }
};

// Renumbers `key_of(s)` classes by order of first appearance over states.
template <typename Key>
Partition renumber(const std::vector<Key>& keys) {
  Partition p;
  p.block_of.resize(keys.size());
  std::map<Key, std::size_t> ids;
  for (std::size_t s = 0; s < keys.size(); ++s) p.block_of[s] = ids.try_emplace(keys[s], ids.size()).first->second;
  p.num_blocks = ids.size();
  return p;
}

using Signature = std::set<std::pair<std::size_t, std::size_t>>;  // (label, block)

inline Signature strong_signature(const LabeledGraph& g, const Partition& p, std::size_t s) {
  Signature sig;
  for (auto [a, t] : g.out[s]) sig.emplace(a, p.block_of[t]);
  return sig;
}

// Everything observable from `s` after inert internal moves (internal
// transitions that stay inside the block of `s`).
inline Signature branching_signature(const LabeledGraph& g, const Partition& p, std::size_t s) {
  Signature sig;
  std::size_t block = p.block_of[s];
  std::vector<bool> seen(g.out.size(), false);
  std::vector<std::size_t> stack{s};
  seen[s] = true;
  while (!stack.empty()) {
    std::size_t u = stack.back();
    stack.pop_back();
    for (auto [a, t] : g.out[u]) {
      bool inert = a == 0 && p.block_of[t] == block;
      if (!inert) {
        sig.emplace(a, p.block_of[t]);
      } else if (!seen[t]) {
        seen[t] = true;
        stack.push_back(t);
      }
    }
  }
  return sig;
}

}  // namespace detail

/// Coarsest partition of the states of `l` into equivalence classes of the
/// largest `relation`-bisimulation that respects finality, computed by
/// iterated signature refinement.
inline Partition bisimulation_partition(const Lts& l, Relation relation) {
  detail::LabeledGraph g(l);
  std::vector<bool> finals(l.num_states);
  for (std::size_t s = 0; s < l.num_states; ++s) finals[s] = l.is_final(s);
  Partition p = detail::renumber(finals);
  for (;;) {
    std::vector<std::pair<std::size_t, detail::Signature>> keys(l.num_states);
    for (std::size_t s = 0; s < l.num_states; ++s)
      keys[s] = {p.block_of[s], relation == Relation::strong ? detail::strong_signature(g, p, s)
                                                             : detail::branching_signature(g, p, s)};
    Partition next = detail::renumber(keys);
    if (next.num_blocks == p.num_blocks) return next;
    p = std::move(next);
  }
}

/// Quotient of `l` modulo `relation`: one state per equivalence class,
/// duplicate transitions merged and, for branching, internal transitions
/// within a class removed. Throws std::invalid_argument unless `l` has
/// exactly one initial state.
inline Lts reduce(const Lts& l, Relation relation) {
  std::size_t init = l.initial_state();
  Partition p = bisimulation_partition(l, relation);
  Lts q;
  q.num_states = p.num_blocks;
  q.initial_states.insert(p.block_of[init]);
  for (std::size_t s : l.final_states) q.final_states.insert(p.block_of[s]);
  std::set<LtsTransition> edges;
  for (const auto& t : l.transitions) {
    std::size_t from = p.block_of[t.source];
    std::size_t to = p.block_of[t.target];
    if (relation == Relation::branching && !t.label && from == to) continue;
    edges.insert({from, t.label, to});
  }
  q.transitions.assign(edges.begin(), edges.end());
  return q;
}

/// Places `b`'s states after `a`'s; initial states are not carried over.
inline Lts disjoint_union(const Lts& a, const Lts& b) {
  Lts u;
  u.num_states = a.num_states + b.num_states;
  u.final_states = a.final_states;
  for (std::size_t s : b.final_states) u.final_states.insert(s + a.num_states);
  u.transitions = a.transitions;
  for (const auto& t : b.transitions) u.transitions.push_back({t.source + a.num_states, t.label, t.target + a.num_states});
  return u;
}

/// True iff the initial states of `a` and `b` are `relation`-bisimilar.
inline bool equivalent(const Lts& a, const Lts& b, Relation relation) {
  std::size_t ia = a.initial_state();
  std::size_t ib = b.initial_state() + a.num_states;
  return bisimulation_partition(disjoint_union(a, b), relation).related(ia, ib);
}

}  // namespace slco
