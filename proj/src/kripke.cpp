#include "hsmc/kripke.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace hsmc {

int KripkeStructure::atom_index(const std::string& name) const {
  auto it = std::find(atoms.begin(), atoms.end(), name);
  return it == atoms.end() ? -1 : static_cast<int>(it - atoms.begin());
}

int KripkeStructure::state_index(const std::string& id) const {
  auto it = std::find(states.begin(), states.end(), id);
  return it == states.end() ? -1 : static_cast<int>(it - states.begin());
}

bool KripkeStructure::edge(int s, int t) const {
  return std::binary_search(succ[s].begin(), succ[s].end(), t);
}

std::uint64_t KripkeStructure::atom_mask(const std::vector<std::string>& names) const {
  std::uint64_t m = 0;
  for (const auto& n : names) {
    int i = atom_index(n);
    if (i < 0) throw std::invalid_argument("unknown atom '" + n + "'");
    m |= std::uint64_t{1} << i;
  }
  return m;
}

namespace {

KripkeStructure build(const std::vector<std::string>& atoms, const std::vector<StateSpec>& states,
                      const std::vector<std::pair<std::string, std::string>>& edges,
                      const std::string& initial, bool left_total) {
  if (atoms.size() > 64) throw std::invalid_argument("at most 64 atoms supported");
  KripkeStructure k;
  for (const auto& a : atoms) {
    if (a.empty()) throw std::invalid_argument("empty atom name");
    if (k.atom_index(a) >= 0) throw std::invalid_argument("duplicate atom '" + a + "'");
    k.atoms.push_back(a);
  }
  if (states.empty()) throw std::invalid_argument("structure has no states");
  for (const auto& s : states) {
    if (k.state_index(s.id) >= 0) throw std::invalid_argument("duplicate state '" + s.id + "'");
    k.states.push_back(s.id);
    k.labels.push_back(k.atom_mask(s.label));
  }
  k.succ.assign(states.size(), {});
  k.pred.assign(states.size(), {});
  for (const auto& [from, to] : edges) {
    int a = k.state_index(from), b = k.state_index(to);
    if (a < 0) throw std::invalid_argument("edge from unknown state '" + from + "'");
    if (b < 0) throw std::invalid_argument("edge to unknown state '" + to + "'");
    k.succ[a].push_back(b);
    k.pred[b].push_back(a);
  }
  for (auto* adj : {&k.succ, &k.pred})
    for (auto& v : *adj) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    }
  if (left_total)
    for (int s = 0; s < k.size(); ++s)
      if (k.succ[s].empty())
        throw std::invalid_argument("transition relation is not left-total: state '" + k.states[s] +
                                    "' has no successor");
  k.initial = k.state_index(initial);
  if (k.initial < 0) throw std::invalid_argument("missing initial state '" + initial + "'");
  return k;
}

}  // namespace

KripkeStructure make_kripke(const std::vector<std::string>& atoms, const std::vector<StateSpec>& states,
                            const std::vector<std::pair<std::string, std::string>>& edges,
                            const std::string& initial) {
  return build(atoms, states, edges, initial, true);
}

KripkeStructure load_kripke(const std::string& document) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(document);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed structure document: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("structure document must be an object");
  for (const auto& [key, _] : j.items())
    if (key != "atoms" && key != "states" && key != "edges" && key != "initial")
      throw std::invalid_argument("unknown key '" + key + "'");
  if (!j.contains("initial")) throw std::invalid_argument("missing initial state");
  try {
    auto atoms = j.value("atoms", std::vector<std::string>{});
    std::vector<StateSpec> states;
    for (const auto& s : j.at("states")) {
      for (const auto& [key, _] : s.items())
        if (key != "id" && key != "label") throw std::invalid_argument("unknown state key '" + key + "'");
      states.push_back({s.at("id").get<std::string>(), s.value("label", std::vector<std::string>{})});
    }
    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto& e : j.value("edges", json::array())) {
      if (!e.is_array() || e.size() != 2) throw std::invalid_argument("edge must be [from, to]");
      edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
    }
    return make_kripke(atoms, states, edges, j.at("initial").get<std::string>());
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed structure document: ") + e.what());
  }
}

KripkeStructure load_kripke_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return load_kripke(ss.str());
}

std::string dump_kripke(const KripkeStructure& k) {
  nlohmann::ordered_json j;
  j["atoms"] = k.atoms;
  j["states"] = nlohmann::ordered_json::array();
  for (int s = 0; s < k.size(); ++s)
    j["states"].push_back({{"id", k.states[s]}, {"label", label_names(k, k.labels[s])}});
  j["edges"] = nlohmann::ordered_json::array();
  for (int s = 0; s < k.size(); ++s)
    for (int t : k.succ[s]) j["edges"].push_back({k.states[s], k.states[t]});
  j["initial"] = k.states[k.initial];
  return j.dump(2);
}

bool is_trace(const KripkeStructure& k, const Trace& t) {
  if (t.empty()) return false;
  for (int s : t)
    if (s < 0 || s >= k.size()) return false;
  for (std::size_t i = 0; i + 1 < t.size(); ++i)
    if (!k.edge(t[i], t[i + 1])) return false;
  return true;
}

std::uint64_t trace_label(const KripkeStructure& k, const Trace& t) {
  if (!is_trace(k, t)) throw std::invalid_argument("not a trace: " + format_trace(k, t));
  std::uint64_t m = ~std::uint64_t{0};
  for (int s : t) m &= k.labels[s];
  return m;
}

std::vector<std::string> label_names(const KripkeStructure& k, std::uint64_t mask) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < k.atoms.size(); ++i)
    if (mask >> i & 1) out.push_back(k.atoms[i]);
  return out;
}

void for_each_trace(const KripkeStructure& k, int max_len, bool initial_only,
                    const std::function<bool(const Trace&)>& fn) {
  Trace t;
  bool stop = false;
  // Depth-first per exact length keeps the length-lexicographic order.
  std::function<void(int)> grow = [&](int len) {
    if (stop) return;
    if (static_cast<int>(t.size()) == len) {
      if (!fn(t)) stop = true;
      return;
    }
    for (int s : k.succ[t.back()]) {
      t.push_back(s);
      grow(len);
      t.pop_back();
      if (stop) return;
    }
  };
  for (int len = 1; len <= max_len && !stop; ++len) {
    for (int s = 0; s < k.size() && !stop; ++s) {
      if (initial_only && s != k.initial) continue;
      t.assign(1, s);
      grow(len);
    }
  }
}

std::vector<Trace> enumerate_traces(const KripkeStructure& k, int max_len, bool initial_only) {
  std::vector<Trace> out;
  for_each_trace(k, max_len, initial_only, [&](const Trace& t) {
    out.push_back(t);
    return true;
  });
  return out;
}

bool is_lasso(const KripkeStructure& k, const Lasso& l, bool initial) {
  if (l.loop.empty()) return false;
  Trace t = l.stem;
  t.insert(t.end(), l.loop.begin(), l.loop.end());
  if (!is_trace(k, t)) return false;
  if (!k.edge(l.loop.back(), l.loop.front())) return false;
  return !initial || t[0] == k.initial;
}

std::vector<Lasso> enumerate_lassos(const KripkeStructure& k, int max_total) {
  std::vector<Lasso> out;
  for (int total = 1; total <= max_total; ++total) {
    std::vector<Trace> paths;
    Trace t{k.initial};
    std::function<void()> grow = [&]() {
      if (static_cast<int>(t.size()) == total) {
        paths.push_back(t);
        return;
      }
      for (int s : k.succ[t.back()]) {
        t.push_back(s);
        grow();
        t.pop_back();
      }
    };
    grow();
    for (int stem = 0; stem < total; ++stem)
      for (const auto& p : paths)
        if (k.edge(p.back(), p[stem]))
          out.push_back(Lasso{Trace(p.begin(), p.begin() + stem), Trace(p.begin() + stem, p.end())});
  }
  return out;
}

int lasso_at(const Lasso& l, long long i) {
  long long s = static_cast<long long>(l.stem.size());
  if (i < s) return l.stem[i];
  return l.loop[(i - s) % static_cast<long long>(l.loop.size())];
}

Trace unroll(const Lasso& l, int n) {
  Trace t(n);
  for (int i = 0; i < n; ++i) t[i] = lasso_at(l, i);
  return t;
}

KripkeStructure unwind(const KripkeStructure& k, int depth) {
  if (depth < 1) throw std::invalid_argument("unwind depth must be >= 1");
  std::vector<StateSpec> nodes;
  std::vector<std::pair<std::string, std::string>> edges;
  std::vector<bool> frontier;
  auto node_id = [&](const Trace& t) {
    std::string s;
    for (int x : t) s += k.states[x];
    return s;
  };
  for_each_trace(k, depth, true, [&](const Trace& t) {
    nodes.push_back({node_id(t), label_names(k, k.labels[t.back()])});
    frontier.push_back(static_cast<int>(t.size()) == depth);
    if (t.size() > 1) edges.emplace_back(node_id(Trace(t.begin(), t.end() - 1)), node_id(t));
    return true;
  });
  KripkeStructure tree = build(k.atoms, nodes, edges, nodes[0].id, false);
  tree.frontier = std::move(frontier);
  return tree;
}

KripkeStructure builtin_kn(int n) {
  if (n < 1) throw std::invalid_argument("kn needs n >= 1");
  std::vector<StateSpec> states;
  std::vector<std::pair<std::string, std::string>> edges{{"s0", "s0"}};
  for (int i = 0; i <= 2 * n; ++i) states.push_back({"s" + std::to_string(i), {}});
  states.push_back({"t", {"p"}});
  for (int i = 0; i < 2 * n; ++i) edges.emplace_back("s" + std::to_string(i), "s" + std::to_string(i + 1));
  edges.emplace_back("s" + std::to_string(2 * n), "t");
  edges.emplace_back("t", "t");
  return make_kripke({"p"}, states, edges, "s0");
}

KripkeStructure builtin_mn(int n) {
  KripkeStructure k = builtin_kn(n);
  k.initial = 1;
  return k;
}

KripkeStructure builtin(const std::string& name) {
  if (name == "fig1")
    return make_kripke({"p", "q"}, {{"s0", {"p"}}, {"s1", {"q"}}},
                       {{"s0", "s1"}, {"s1", "s0"}, {"s1", "s1"}}, "s0");
  if (name == "k1") return make_kripke({"p"}, {{"s0", {}}, {"s1", {"p"}}}, {{"s0", "s1"}, {"s1", "s1"}}, "s0");
  if (name == "k2")
    return make_kripke({"p"}, {{"s0'", {}}, {"s1'", {"p"}}, {"s2'", {"p"}}},
                       {{"s0'", "s1'"}, {"s1'", "s2'"}, {"s2'", "s2'"}}, "s0'");
  if (name == "vending") {
    std::vector<std::string> atoms{"p_0",     "p_1",      "p_2",      "p_0_50",    "p_candy",    "p_hotdog",
                                   "p_water", "p_change", "p_maint", "p_maint_end", "p_operative"};
    std::vector<StateSpec> states{
        {"s0", {"p_0", "p_operative"}},      {"s1", {"p_1", "p_operative"}},
        {"s2", {"p_2", "p_operative"}},      {"s3", {"p_0_50", "p_operative"}},
        {"s4", {"p_candy", "p_operative"}},  {"s5", {"p_hotdog", "p_operative"}},
        {"s6", {"p_water", "p_operative"}},  {"s7", {"p_change", "p_operative"}},
        {"s8", {"p_maint"}},                 {"s9", {"p_maint_end"}},
    };
    std::vector<std::pair<std::string, std::string>> edges{
        {"s0", "s1"}, {"s0", "s2"}, {"s0", "s3"}, {"s1", "s4"}, {"s1", "s6"}, {"s2", "s4"},
        {"s2", "s5"}, {"s2", "s6"}, {"s3", "s6"}, {"s4", "s7"}, {"s5", "s7"}, {"s6", "s7"},
        {"s7", "s0"}, {"s7", "s8"}, {"s8", "s9"}, {"s9", "s8"}, {"s9", "s0"},
    };
    return make_kripke(atoms, states, edges, "s0");
  }
  auto param = [&](const char* prefix) -> int {
    std::string p = std::string(prefix) + "(";
    if (name.rfind(p, 0) != 0 || name.back() != ')') return -1;
    try {
      return std::stoi(name.substr(p.size(), name.size() - p.size() - 1));
    } catch (const std::exception&) {
      return -1;
    }
  };
  if (int n = param("kn"); n >= 1) return builtin_kn(n);
  if (int n = param("mn"); n >= 1) return builtin_mn(n);
  throw std::invalid_argument("unknown builtin structure '" + name + "'");
}

std::string format_trace(const KripkeStructure& k, const Trace& t) {
  std::string out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ' ';
    out += t[i] >= 0 && t[i] < k.size() ? k.states[t[i]] : "?";
  }
  return out;
}

std::string format_lasso(const KripkeStructure& k, const Lasso& l) {
  std::string out = format_trace(k, l.stem);
  if (!out.empty()) out += ' ';
  return out + "(" + format_trace(k, l.loop) + ")^w";
}

}  // namespace hsmc
