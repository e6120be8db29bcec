#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace hsmc {

using Trace = std::vector<int>;  // state indices

// Infinite path stem . loop^omega.
struct Lasso {
  Trace stem;
  Trace loop;
  std::size_t size() const { return stem.size() + loop.size(); }
  bool operator==(const Lasso&) const = default;
};

// Computation-tree trace from node base[0..start] to node base.
struct CtNode {
  Trace base;
  int start = 0;
  bool operator==(const CtNode&) const = default;
};

struct KripkeStructure {
  std::vector<std::string> atoms;      // at most 64
  std::vector<std::string> states;     // ids, index = state
  std::vector<std::uint64_t> labels;   // bit i set iff atoms[i] holds
  std::vector<std::vector<int>> succ;  // sorted
  std::vector<std::vector<int>> pred;  // sorted
  int initial = 0;
  // Only set by unwind: leaves cut at the depth frontier.
  std::vector<bool> frontier;

  int size() const { return static_cast<int>(states.size()); }
  int atom_index(const std::string& name) const;  // -1 if absent
  int state_index(const std::string& id) const;   // -1 if absent
  bool edge(int s, int t) const;
  std::uint64_t atom_mask(const std::vector<std::string>& names) const;
};

struct StateSpec {
  std::string id;
  std::vector<std::string> label;
};

// Validates and builds. Throws std::invalid_argument on a dead-end state,
// an unknown atom or state, a duplicate id, or a missing initial state.
KripkeStructure make_kripke(const std::vector<std::string>& atoms, const std::vector<StateSpec>& states,
                            const std::vector<std::pair<std::string, std::string>>& edges,
                            const std::string& initial);

// JSON document: {"atoms": [...], "states": [{"id", "label"}], "edges": [[from, to]], "initial": id}.
KripkeStructure load_kripke(const std::string& document);
KripkeStructure load_kripke_file(const std::string& path);
std::string dump_kripke(const KripkeStructure& k);

bool is_trace(const KripkeStructure& k, const Trace& t);
// Intersection of the labels of the states of t.
std::uint64_t trace_label(const KripkeStructure& k, const Trace& t);
std::vector<std::string> label_names(const KripkeStructure& k, std::uint64_t mask);

// Length-lexicographic order by state index.
std::vector<Trace> enumerate_traces(const KripkeStructure& k, int max_len, bool initial_only);
// Same order, streamed; return false from fn to stop early.
void for_each_trace(const KripkeStructure& k, int max_len, bool initial_only,
                    const std::function<bool(const Trace&)>& fn);

// Initial lassos with |stem|+|loop| <= max_total, ordered by total size, then
// stem length, then stem.loop lexicographically.
std::vector<Lasso> enumerate_lassos(const KripkeStructure& k, int max_total);
bool is_lasso(const KripkeStructure& k, const Lasso& l, bool initial);
// First n states of stem.loop^omega.
Trace unroll(const Lasso& l, int n);
// State at position i of stem.loop^omega.
int lasso_at(const Lasso& l, long long i);

// Computation tree cut at node depth; node ids are concatenated state ids.
// Frontier nodes have no successors.
KripkeStructure unwind(const KripkeStructure& k, int depth);

// fig1, vending, k1, k2, kn(n), mn(n)
KripkeStructure builtin(const std::string& name);
KripkeStructure builtin_kn(int n);
KripkeStructure builtin_mn(int n);

std::string format_trace(const KripkeStructure& k, const Trace& t);
std::string format_lasso(const KripkeStructure& k, const Lasso& l);

}  // namespace hsmc
