#include "hsmc/pointwise.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <functional>
#include <optional>
#include <type_traits>
#include <stdexcept>
#include <unordered_map>

#include "parallel.hpp"

namespace hsmc {

namespace {

int atom_bit(const KripkeStructure& k, const std::string& name) {
  int i = k.atom_index(name);
  if (i < 0) throw std::invalid_argument("atom '" + name + "' is not declared by the structure");
  return i;
}

bool holds_at(const KripkeStructure& k, int state, int bit) { return k.labels[state] >> bit & 1; }

std::size_t hash_mix(std::size_t h, std::size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)); }

// ------------------------------------------------------------------ LTL

// Truth of every subformula on positions 0..n-1 of the lasso, where position
// n-1 continues at n-period. Every subformula is periodic from
// |stem| + depth*period, so the table is exact.
class LtlTable {
 public:
  LtlTable(const KripkeStructure& k, const Lasso& pi, const Pt& f) : k_(k), pi_(pi) {
    if (pi.loop.empty()) throw std::invalid_argument("lasso with empty loop");
    period_ = static_cast<long long>(pi.loop.size());
    long long d = static_cast<long long>(temporal_depth(f));
    n_ = static_cast<long long>(pi.stem.size()) + (d + 2) * period_;
    root_ = &table(f);
  }

  bool at(long long i) const { return (*root_)[fold(i)]; }

 private:
  long long fold(long long i) const {
    if (i < n_) return i;
    long long base = n_ - period_;
    return base + (i - base) % period_;
  }
  long long next(long long i) const { return i + 1 < n_ ? i + 1 : n_ - period_; }

  const std::vector<char>& table(const Pt& f) {
    auto it = memo_.find(f.get());
    if (it != memo_.end()) return it->second;
    std::vector<char> v(n_);
    switch (f->kind) {
      case PtKind::Atom: {
        int b = atom_bit(k_, f->name);
        for (long long i = 0; i < n_; ++i) v[i] = holds_at(k_, lasso_at(pi_, i), b);
        break;
      }
      case PtKind::True: std::fill(v.begin(), v.end(), 1); break;
      case PtKind::False: break;
      case PtKind::Not: {
        const auto& a = table(f->a);
        for (long long i = 0; i < n_; ++i) v[i] = !a[i];
        break;
      }
      case PtKind::And:
      case PtKind::Or:
      case PtKind::Implies: {
        const auto& a = table(f->a);
        const auto& b = table(f->b);
        for (long long i = 0; i < n_; ++i)
          v[i] = f->kind == PtKind::And ? (a[i] && b[i]) : f->kind == PtKind::Or ? (a[i] || b[i]) : (!a[i] || b[i]);
        break;
      }
      case PtKind::X: {
        const auto& a = table(f->a);
        for (long long i = 0; i < n_; ++i) v[i] = a[next(i)];
        break;
      }
      case PtKind::U:
      case PtKind::F:
      case PtKind::G: {
        // a U b as a least fixpoint over the folded successor graph.
        bool until = f->kind == PtKind::U;
        const std::vector<char>* a = until ? &table(f->a) : nullptr;
        const auto& b = table(until ? f->b : f->a);
        auto goal = [&](long long i) { return f->kind == PtKind::G ? !b[i] : b[i]; };
        auto keep = [&](long long i) { return until ? (*a)[i] != 0 : true; };
        for (long long i = 0; i < n_; ++i) v[i] = goal(i);
        for (bool changed = true; changed;) {
          changed = false;
          for (long long i = n_ - 1; i >= 0; --i)
            if (!v[i] && keep(i) && v[next(i)]) v[i] = changed = true;
        }
        if (f->kind == PtKind::G)
          for (auto& x : v) x = !x;
        break;
      }
      case PtKind::Y: {
        const auto& a = table(f->a);
        for (long long i = 1; i < n_; ++i) v[i] = a[i - 1];
        break;
      }
      case PtKind::S:
      case PtKind::O:
      case PtKind::H: {
        bool since = f->kind == PtKind::S;
        const std::vector<char>* a = since ? &table(f->a) : nullptr;
        const auto& b = table(since ? f->b : f->a);
        for (long long i = 0; i < n_; ++i) {
          bool goal = f->kind == PtKind::H ? !b[i] : b[i];
          bool keep = since ? (*a)[i] != 0 : true;
          v[i] = goal || (i > 0 && keep && v[i - 1]);
        }
        if (f->kind == PtKind::H)
          for (auto& x : v) x = !x;
        break;
      }
      default: throw std::invalid_argument("LTL evaluation does not accept quantifiers or variables");
    }
    return memo_.emplace(f.get(), std::move(v)).first->second;
  }

  const KripkeStructure& k_;
  const Lasso& pi_;
  long long period_ = 1, n_ = 0;
  std::unordered_map<const PtNode*, std::vector<char>> memo_;
  const std::vector<char>* root_ = nullptr;
};

void require_lasso(const KripkeStructure& k, const Lasso& pi) {
  if (!is_lasso(k, pi, false)) throw std::invalid_argument("not a lasso of the structure");
}

// ---------------------------------------------------------- path logics

enum class QuantMode {
  infinite,         // E over initial lassos agreeing on [0,pos]
  finite_memory,    // E_f over initial traces agreeing on [0,pos]
  finite_fresh,     // E_f over traces starting at the current state
};

struct Path {
  Trace states;
  int loop_start = -1;  // -1: finite
  bool finite() const { return loop_start < 0; }
  long long size() const { return static_cast<long long>(states.size()); }
  int at(long long i) const {
    if (i < size()) return states[i];
    long long period = size() - loop_start;
    return states[loop_start + (i - loop_start) % period];
  }
};

Path path_of(const Lasso& l) {
  Path p;
  p.states = l.stem;
  p.states.insert(p.states.end(), l.loop.begin(), l.loop.end());
  p.loop_start = static_cast<int>(l.stem.size());
  return p;
}

Path path_of(const Trace& t) { return Path{t, -1}; }

class PathEvaluator {
 public:
  PathEvaluator(const KripkeStructure& k, int bound, QuantMode mode) : k_(k), bound_(bound), mode_(mode) {}

  int intern(const Path& p) {
    auto key = std::make_pair(p.states, p.loop_start);
    auto it = ids_.find(key);
    if (it != ids_.end()) return it->second;
    int id = static_cast<int>(paths_.size());
    paths_.push_back(p);
    ids_.emplace(std::move(key), id);
    return id;
  }

  bool eval(int path, const Pt& f, long long pos, const Valuation& g) {
    Key key{path, f.get(), pos, {}};
    for (const auto& v : vars(f)) key.vals.push_back(value(g, v));
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    bool r = compute(path, f, pos, g);
    memo_.emplace(std::move(key), r);
    return r;
  }

 private:
  struct Key {
    int path;
    const PtNode* node;
    long long pos;
    std::vector<long long> vals;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::size_t h = std::hash<int>()(k.path);
      h = hash_mix(h, std::hash<const void*>()(k.node));
      h = hash_mix(h, std::hash<long long>()(k.pos));
      for (long long v : k.vals) h = hash_mix(h, std::hash<long long>()(v));
      return h;
    }
  };
  struct TraceKeyHash {
    std::size_t operator()(const std::pair<Trace, int>& p) const {
      std::size_t h = std::hash<int>()(p.second);
      for (int s : p.first) h = hash_mix(h, std::hash<int>()(s));
      return h;
    }
  };

  static long long value(const Valuation& g, const std::string& v) {
    auto it = g.find(v);
    return it == g.end() ? 0 : it->second;
  }

  const std::vector<std::string>& vars(const Pt& f) {
    auto it = vars_.find(f.get());
    if (it != vars_.end()) return it->second;
    auto s = free_vars(f);
    return vars_.emplace(f.get(), std::vector<std::string>(s.begin(), s.end())).first->second;
  }

  long long depth(const Pt& f) {
    auto it = depth_.find(f.get());
    if (it != depth_.end()) return it->second;
    long long d = static_cast<long long>(temporal_depth(f));
    depth_.emplace(f.get(), d);
    return d;
  }

  // End (exclusive) of the positions a future operator at pos must inspect.
  long long horizon(const Path& p, const Pt& f, long long pos, const Valuation& g) {
    if (p.finite()) return p.size();
    long long period = p.size() - p.loop_start;
    long long start = p.loop_start;
    for (const auto& [_, v] : g) start = std::max(start, v + 1);
    long long settled = start + (depth(f) + 2) * period;
    return std::max(pos, settled) + period;
  }

  const Pt& negation(const Pt& f) {
    auto it = negs_.find(f.get());
    if (it != negs_.end()) return it->second;
    return negs_.emplace(f.get(), pt::neg(f)).first->second;
  }

  const std::vector<Lasso>& lassos() {
    if (!lassos_) lassos_ = enumerate_lassos(k_, bound_);
    return *lassos_;
  }

  // Visits every trace prefix.sigma with |prefix.sigma| <= bound, sigma possibly empty.
  bool extensions(Trace& cur, const std::function<bool(const Trace&)>& visit) {
    if (visit(cur)) return true;
    if (static_cast<int>(cur.size()) >= bound_) return false;
    for (int s : k_.succ[cur.back()]) {
      cur.push_back(s);
      bool hit = extensions(cur, visit);
      cur.pop_back();
      if (hit) return true;
    }
    return false;
  }

  bool exists(int path, const Pt& body, long long pos, const Valuation& g, bool finitary) {
    Path p = paths_[path];
    if (finitary) {
      if (mode_ == QuantMode::infinite) throw std::invalid_argument("finitary quantifier in an infinite-path formula");
      if (mode_ == QuantMode::finite_fresh) {
        int s = p.at(pos);
        auto key = std::make_pair(body.get(), s);
        auto it = fresh_.find(key);
        if (it != fresh_.end()) return it->second;
        Trace cur{s};
        bool r = extensions(cur, [&](const Trace& t) { return eval(intern(path_of(t)), body, 0, g); });
        fresh_.emplace(key, r);
        return r;
      }
      if (pos + 1 > bound_) return false;
      Trace cur(p.states.begin(), p.states.begin() + pos + 1);
      return extensions(cur, [&](const Trace& t) { return eval(intern(path_of(t)), body, pos, g); });
    }
    if (mode_ != QuantMode::infinite) throw std::invalid_argument("infinite-path quantifier in a finitary formula");
    for (const auto& l : lassos()) {
      bool agree = true;
      for (long long j = 0; j <= pos && agree; ++j) agree = lasso_at(l, j) == p.at(j);
      if (agree && eval(intern(path_of(l)), body, pos, g)) return true;
    }
    return false;
  }

  bool compute(int path, const Pt& f, long long pos, const Valuation& g) {
    const Path& p = paths_[path];
    switch (f->kind) {
      case PtKind::Atom: return holds_at(k_, p.at(pos), atom_bit(k_, f->name));
      case PtKind::True: return true;
      case PtKind::False: return false;
      case PtKind::Not: return !eval(path, f->a, pos, g);
      case PtKind::And: return eval(path, f->a, pos, g) && eval(path, f->b, pos, g);
      case PtKind::Or: return eval(path, f->a, pos, g) || eval(path, f->b, pos, g);
      case PtKind::Implies: return !eval(path, f->a, pos, g) || eval(path, f->b, pos, g);
      case PtKind::X:
        if (p.finite() && pos + 1 >= p.size()) return false;
        return eval(path, f->a, pos + 1, g);
      case PtKind::U:
      case PtKind::F:
      case PtKind::G: {
        long long end = horizon(p, f, pos, g);
        for (long long j = pos; j < end; ++j) {
          if (f->kind == PtKind::G) {
            if (!eval(path, f->a, j, g)) return false;
            continue;
          }
          if (eval(path, f->kind == PtKind::U ? f->b : f->a, j, g)) return true;
          if (f->kind == PtKind::U && !eval(path, f->a, j, g)) return false;
        }
        return f->kind == PtKind::G;
      }
      case PtKind::Y: return pos > 0 && eval(path, f->a, pos - 1, g);
      case PtKind::S:
      case PtKind::O:
      case PtKind::H:
        for (long long j = pos; j >= 0; --j) {
          if (f->kind == PtKind::H) {
            if (!eval(path, f->a, j, g)) return false;
            continue;
          }
          if (eval(path, f->kind == PtKind::S ? f->b : f->a, j, g)) return true;
          if (f->kind == PtKind::S && !eval(path, f->a, j, g)) return false;
        }
        return f->kind == PtKind::H;
      case PtKind::Var: return value(g, f->name) == pos;
      case PtKind::Bind: {
        Valuation h = g;
        h[f->name] = pos;
        return eval(path, f->a, pos, h);
      }
      case PtKind::Exists: return exists(path, f->a, pos, g, false);
      case PtKind::Forall: return !exists(path, negation(f->a), pos, g, false);
      case PtKind::ExistsF: return exists(path, f->a, pos, g, true);
      case PtKind::ForallF: return !exists(path, negation(f->a), pos, g, true);
    }
    return false;
  }

  const KripkeStructure& k_;
  int bound_;
  QuantMode mode_;
  std::deque<Path> paths_;  // stable references across intern()
  std::unordered_map<std::pair<Trace, int>, int, TraceKeyHash> ids_;
  std::unordered_map<Key, bool, KeyHash> memo_;
  std::unordered_map<const PtNode*, std::vector<std::string>> vars_;
  std::unordered_map<const PtNode*, long long> depth_;
  std::map<std::pair<const PtNode*, int>, bool> fresh_;
  std::optional<std::vector<Lasso>> lassos_;
  // Negated bodies of universal quantifiers; node identity keys the memo.
  std::unordered_map<const PtNode*, Pt> negs_;
};

bool has_quantifier(const Pt& f) {
  if (!f) return false;
  return is_quantifier(f->kind) || has_quantifier(f->a) || has_quantifier(f->b);
}

void require_bound(const Valuation& g, const Pt& f) {
  for (const auto& v : free_vars(f))
    if (!g.count(v)) throw std::invalid_argument("variable '" + v + "' is not bound by the valuation");
}

template <class Item, class Fails>
Verdict check_items(const std::vector<Item>& items, int jobs, bool exact, Fails fails) {
  std::size_t idx = detail::first_index(items.size(), jobs, [] { return 0; },
                                        [&](int&, std::size_t i) { return fails(items[i]); });
  Verdict v;
  v.bound_hit = true;
  if (idx == items.size()) {
    v.value = VerdictValue::holds_in_bound;
    return v;
  }
  v.value = VerdictValue::fails;
  v.pure = exact;
  if constexpr (std::is_same_v<Item, Lasso>) {
    v.lasso = items[idx];
  } else {
    v.trace = items[idx];
  }
  return v;
}

}  // namespace

// ------------------------------------------------------------------ LTL

bool eval_ltl(const KripkeStructure& k, const Lasso& pi, long long i, const Pt& f) {
  require_lasso(k, pi);
  if (i < 0) throw std::invalid_argument("negative position");
  return LtlTable(k, pi, f).at(i);
}

std::vector<bool> eval_ltl_prefix(const KripkeStructure& k, const Lasso& pi, const Pt& f, long long n) {
  require_lasso(k, pi);
  LtlTable t(k, pi, f);
  std::vector<bool> out(n);
  for (long long i = 0; i < n; ++i) out[i] = t.at(i);
  return out;
}

Verdict check_ltl(const KripkeStructure& k, const Pt& f, int bound, int jobs) {
  if (!is_ltl_with_past(f)) throw std::invalid_argument("check_ltl expects an LTL formula");
  auto ls = enumerate_lassos(k, bound);
  return check_items(ls, jobs, true, [&](const Lasso& l) { return !LtlTable(k, l, f).at(0); });
}

// ------------------------------------------------------ CTL* variants

bool eval_finitary_ctlstar(const KripkeStructure& k, const Trace& rho, long long i, const Pt& f, int bound) {
  if (!is_trace(k, rho)) throw std::invalid_argument("not a trace of the structure");
  if (i < 0 || i >= static_cast<long long>(rho.size())) throw std::invalid_argument("position outside the trace");
  if (!free_vars(f).empty()) throw std::invalid_argument("finitary CTL* formula with variables");
  PathEvaluator ev(k, bound, QuantMode::finite_fresh);
  return ev.eval(ev.intern(path_of(rho)), f, i, {});
}

Verdict check_finitary_ctlstar(const KripkeStructure& k, const Pt& f, int bound, int jobs) {
  if (!free_vars(f).empty()) throw std::invalid_argument("finitary CTL* formula with variables");
  auto ts = enumerate_traces(k, bound, true);
  return check_items(ts, jobs, !has_quantifier(f), [&](const Trace& t) {
    PathEvaluator ev(k, bound, QuantMode::finite_fresh);
    return !ev.eval(ev.intern(path_of(t)), f, 0, {});
  });
}

bool eval_ctlstar(const KripkeStructure& k, const Lasso& pi, long long i, const Pt& f, int bound) {
  return eval_hybrid(k, pi, {}, i, f, bound);
}

Verdict check_ctlstar(const KripkeStructure& k, const Pt& f, int bound, int jobs) {
  return check_hybrid(k, f, bound, false, jobs);
}

bool eval_hybrid(const KripkeStructure& k, const Lasso& pi, const Valuation& g, long long i, const Pt& f,
                 int bound) {
  require_lasso(k, pi);
  require_bound(g, f);
  if (i < 0) throw std::invalid_argument("negative position");
  PathEvaluator ev(k, bound, QuantMode::infinite);
  return ev.eval(ev.intern(path_of(pi)), f, i, g);
}

bool eval_hybrid_finite(const KripkeStructure& k, const Trace& rho, const Valuation& g, long long i,
                        const Pt& f, int bound) {
  if (!is_trace(k, rho)) throw std::invalid_argument("not a trace of the structure");
  require_bound(g, f);
  if (i < 0 || i >= static_cast<long long>(rho.size())) throw std::invalid_argument("position outside the trace");
  PathEvaluator ev(k, bound, QuantMode::finite_memory);
  return ev.eval(ev.intern(path_of(rho)), f, i, g);
}

Verdict check_hybrid(const KripkeStructure& k, const Pt& f, int bound, bool finitary, int jobs) {
  bool exact = !has_quantifier(f);
  if (finitary) {
    auto ts = enumerate_traces(k, bound, true);
    return check_items(ts, jobs, exact, [&](const Trace& t) {
      PathEvaluator ev(k, bound, QuantMode::finite_memory);
      return !ev.eval(ev.intern(path_of(t)), f, 0, {});
    });
  }
  auto ls = enumerate_lassos(k, bound);
  return check_items(ls, jobs, exact, [&](const Lasso& l) {
    PathEvaluator ev(k, bound, QuantMode::infinite);
    return !ev.eval(ev.intern(path_of(l)), f, 0, {});
  });
}

// ------------------------------------------------------------------- FO

struct FoEvaluator::Impl {
  const KripkeStructure& k;
  Lasso pi;
  long long horizon;
  std::unordered_map<const FoNode*, std::vector<std::string>> vars;
  std::map<std::pair<const FoNode*, std::vector<long long>>, bool> memo;

  Impl(const KripkeStructure& k, const Lasso& pi, long long horizon) : k(k), pi(pi), horizon(horizon) {}

  long long get(const std::map<std::string, long long>& g, const std::string& v) {
    auto it = g.find(v);
    if (it == g.end()) throw std::invalid_argument("variable '" + v + "' is not bound by the valuation");
    return it->second;
  }

  const std::vector<std::string>& free(const Fo& f) {
    auto it = vars.find(f.get());
    if (it != vars.end()) return it->second;
    auto s = free_vars(f);
    return vars.emplace(f.get(), std::vector<std::string>(s.begin(), s.end())).first->second;
  }

  bool eval(Valuation& g, const Fo& f) {
    std::vector<long long> vals;
    for (const auto& v : free(f)) vals.push_back(get(g, v));
    auto key = std::make_pair(f.get(), std::move(vals));
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    bool r = compute(g, f);
    memo.emplace(std::move(key), r);
    return r;
  }

  bool compute(Valuation& g, const Fo& f) {
    switch (f->kind) {
      case FoKind::True: return true;
      case FoKind::Pred: return holds_at(k, lasso_at(pi, get(g, f->x)), atom_bit(k, f->name));
      case FoKind::Le: return get(g, f->x) <= get(g, f->y);
      case FoKind::Lt: return get(g, f->x) < get(g, f->y);
      case FoKind::Not: return !eval(g, f->a);
      case FoKind::And: return eval(g, f->a) && eval(g, f->b);
      case FoKind::Or: return eval(g, f->a) || eval(g, f->b);
      case FoKind::Implies: return !eval(g, f->a) || eval(g, f->b);
      case FoKind::Exists:
      case FoKind::Forall: {
        bool want = f->kind == FoKind::Exists;
        auto old = g.find(f->name);
        std::optional<long long> saved;
        if (old != g.end()) saved = old->second;
        bool r = !want;
        for (long long i = 0; i <= horizon; ++i) {
          g[f->name] = i;
          if (eval(g, f->a) == want) {
            r = want;
            break;
          }
        }
        if (saved)
          g[f->name] = *saved;
        else
          g.erase(f->name);
        return r;
      }
    }
    return false;
  }
};

FoEvaluator::FoEvaluator(const KripkeStructure& k, const Lasso& pi, long long horizon)
    : impl_(std::make_unique<Impl>(k, pi, horizon)) {
  require_lasso(k, pi);
  if (horizon < 0) throw std::invalid_argument("negative horizon");
}
FoEvaluator::~FoEvaluator() = default;
FoEvaluator::FoEvaluator(FoEvaluator&&) noexcept = default;

bool FoEvaluator::eval(const Valuation& g, const Fo& f) {
  for (const auto& v : free_vars(f))
    if (!g.count(v)) throw std::invalid_argument("variable '" + v + "' is not bound by the valuation");
  for (const auto& [v, i] : g)
    if (i < 0 || i > impl_->horizon) throw std::invalid_argument("position of '" + v + "' exceeds the horizon");
  Valuation h = g;
  return impl_->eval(h, f);
}

bool eval_fo(const KripkeStructure& k, const Lasso& pi, const Valuation& g, const Fo& f, long long horizon) {
  return FoEvaluator(k, pi, horizon).eval(g, f);
}

// -------------------------------------------------------- finite words

Word word_from_string(std::string_view s) {
  Word w;
  bool spaced = std::any_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
  std::size_t i = 0;
  while (i < s.size()) {
    if (std::isspace(static_cast<unsigned char>(s[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    if (s[i] == '{') {
      j = s.find('}', i);
      if (j == std::string_view::npos) throw std::invalid_argument("unterminated letter set in word");
      ++j;
    } else if (spaced) {
      while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    }
    w.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return w;
}

std::string format_word(const Word& w) {
  bool single = std::all_of(w.begin(), w.end(), [](const std::string& l) { return l.size() == 1; });
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i && !single) out += ' ';
    out += w[i];
  }
  return out;
}

namespace {

void require_alphabet(const Word& w, const std::vector<std::string>& alphabet) {
  if (w.empty()) throw std::invalid_argument("empty word");
  for (const auto& l : w)
    if (std::find(alphabet.begin(), alphabet.end(), l) == alphabet.end())
      throw std::invalid_argument("letter '" + l + "' is not in the alphabet");
}

// Truth of every subformula on every infix w[a..b], stored at a*n+b.
class BeTable {
 public:
  explicit BeTable(const Word& w) : w_(w), n_(static_cast<int>(w.size())) {}

  bool whole(const Hs& f) { return table(f)[n_ - 1]; }

 private:
  const std::vector<char>& table(const Hs& f) {
    auto it = memo_.find(f.get());
    if (it != memo_.end()) return it->second;
    std::vector<char> v(static_cast<std::size_t>(n_) * n_);
    auto idx = [&](int a, int b) { return static_cast<std::size_t>(a) * n_ + b; };
    switch (f->kind) {
      case HsKind::Atom:
        for (int a = 0; a < n_; ++a)
          for (int b = a; b < n_ && w_[b] == f->name; ++b) v[idx(a, b)] = 1;
        break;
      case HsKind::True:
        for (int a = 0; a < n_; ++a)
          for (int b = a; b < n_; ++b) v[idx(a, b)] = 1;
        break;
      case HsKind::False: break;
      case HsKind::Not: {
        const auto& c = table(f->a);
        for (int a = 0; a < n_; ++a)
          for (int b = a; b < n_; ++b) v[idx(a, b)] = !c[idx(a, b)];
        break;
      }
      case HsKind::And:
      case HsKind::Or:
      case HsKind::Implies: {
        const auto& x = table(f->a);
        const auto& y = table(f->b);
        for (int a = 0; a < n_; ++a)
          for (int b = a; b < n_; ++b) {
            bool p = x[idx(a, b)], q = y[idx(a, b)];
            v[idx(a, b)] = f->kind == HsKind::And ? (p && q) : f->kind == HsKind::Or ? (p || q) : (!p || q);
          }
        break;
      }
      case HsKind::Modal: {
        const auto& c = table(f->a);
        bool want = !f->universal;
        for (int a = 0; a < n_; ++a)
          for (int b = a; b < n_; ++b) {
            bool found = false;
            auto probe = [&](int x, int y) {
              if (!found && static_cast<bool>(c[idx(x, y)]) == want) found = true;
            };
            switch (f->rel) {
              case Rel::B:
                for (int y = a; y < b; ++y) probe(a, y);
                break;
              case Rel::E:
                for (int x = a + 1; x <= b; ++x) probe(x, b);
                break;
              case Rel::G:
                for (int x = a; x <= b; ++x)
                  for (int y = x; y <= b; ++y) probe(x, y);
                break;
              default:
                throw std::invalid_argument(std::string("modality ") + rel_name(f->rel) +
                                            " has no finite-word semantics");
            }
            v[idx(a, b)] = found == want;
          }
        break;
      }
    }
    return memo_.emplace(f.get(), std::move(v)).first->second;
  }

  const Word& w_;
  int n_;
  std::unordered_map<const HsNode*, std::vector<char>> memo_;
};

// Finite-word LTL: truth of every subformula at every position.
class LtlWordTable {
 public:
  explicit LtlWordTable(const Word& w) : w_(w), n_(static_cast<int>(w.size())) {}

  bool first(const Pt& f) { return table(f)[0]; }

 private:
  const std::vector<char>& table(const Pt& f) {
    auto it = memo_.find(f.get());
    if (it != memo_.end()) return it->second;
    std::vector<char> v(n_);
    switch (f->kind) {
      case PtKind::Atom:
        for (int i = 0; i < n_; ++i) v[i] = w_[i] == f->name;
        break;
      case PtKind::True: std::fill(v.begin(), v.end(), 1); break;
      case PtKind::False: break;
      case PtKind::Not: {
        const auto& a = table(f->a);
        for (int i = 0; i < n_; ++i) v[i] = !a[i];
        break;
      }
      case PtKind::And:
      case PtKind::Or:
      case PtKind::Implies: {
        const auto& a = table(f->a);
        const auto& b = table(f->b);
        for (int i = 0; i < n_; ++i)
          v[i] = f->kind == PtKind::And ? (a[i] && b[i]) : f->kind == PtKind::Or ? (a[i] || b[i]) : (!a[i] || b[i]);
        break;
      }
      case PtKind::X: {
        const auto& a = table(f->a);
        for (int i = 0; i + 1 < n_; ++i) v[i] = a[i + 1];
        break;
      }
      case PtKind::U:
      case PtKind::F:
      case PtKind::G: {
        bool until = f->kind == PtKind::U;
        const std::vector<char>* a = until ? &table(f->a) : nullptr;
        const auto& b = table(until ? f->b : f->a);
        for (int i = n_ - 1; i >= 0; --i) {
          bool goal = f->kind == PtKind::G ? !b[i] : b[i];
          bool keep = until ? (*a)[i] != 0 : true;
          v[i] = goal || (i + 1 < n_ && keep && v[i + 1]);
        }
        if (f->kind == PtKind::G)
          for (auto& x : v) x = !x;
        break;
      }
      case PtKind::Y: {
        const auto& a = table(f->a);
        for (int i = 1; i < n_; ++i) v[i] = a[i - 1];
        break;
      }
      case PtKind::S:
      case PtKind::O:
      case PtKind::H: {
        bool since = f->kind == PtKind::S;
        const std::vector<char>* a = since ? &table(f->a) : nullptr;
        const auto& b = table(since ? f->b : f->a);
        for (int i = 0; i < n_; ++i) {
          bool goal = f->kind == PtKind::H ? !b[i] : b[i];
          bool keep = since ? (*a)[i] != 0 : true;
          v[i] = goal || (i > 0 && keep && v[i - 1]);
        }
        if (f->kind == PtKind::H)
          for (auto& x : v) x = !x;
        break;
      }
      default: throw std::invalid_argument("finite-word LTL does not accept quantifiers or variables");
    }
    return memo_.emplace(f.get(), std::move(v)).first->second;
  }

  const Word& w_;
  int n_;
  std::unordered_map<const PtNode*, std::vector<char>> memo_;
};

template <class F>
std::vector<Word> enumerate_members(const std::vector<std::string>& alphabet, const F& f, int max_len) {
  if (max_len < 1) throw std::invalid_argument("max_len must be at least 1");
  std::vector<Word> out;
  for (auto& w : all_words(alphabet, max_len))
    if (lact_member(w, alphabet, f)) out.push_back(std::move(w));
  return out;
}

}  // namespace

bool lact_member(const Word& w, const std::vector<std::string>& alphabet, const Hs& f) {
  require_alphabet(w, alphabet);
  return BeTable(w).whole(f);
}

bool lact_member(const Word& w, const std::vector<std::string>& alphabet, const Pt& f) {
  require_alphabet(w, alphabet);
  return LtlWordTable(w).first(f);
}

bool lact_member(const Word& w, const std::vector<std::string>& alphabet, const Formula& f, ActDialect d) {
  if (d == ActDialect::be_action) {
    if (!std::holds_alternative<Hs>(f)) throw std::invalid_argument("be_action expects an HS formula");
    return lact_member(w, alphabet, std::get<Hs>(f));
  }
  if (!std::holds_alternative<Pt>(f)) throw std::invalid_argument("ltl_finite expects a point formula");
  return lact_member(w, alphabet, std::get<Pt>(f));
}

std::vector<Word> all_words(const std::vector<std::string>& alphabet, int max_len) {
  std::vector<Word> out;
  if (alphabet.empty()) return out;
  std::vector<std::size_t> digits;
  for (int len = 1; len <= max_len; ++len) {
    digits.assign(len, 0);
    for (;;) {
      Word w;
      for (auto d : digits) w.push_back(alphabet[d]);
      out.push_back(std::move(w));
      int i = len - 1;
      while (i >= 0 && ++digits[i] == alphabet.size()) digits[i--] = 0;
      if (i < 0) break;
    }
  }
  return out;
}

std::vector<Word> lact_enumerate(const std::vector<std::string>& alphabet, const Hs& f, int max_len) {
  return enumerate_members(alphabet, f, max_len);
}

std::vector<Word> lact_enumerate(const std::vector<std::string>& alphabet, const Pt& f, int max_len) {
  return enumerate_members(alphabet, f, max_len);
}

}  // namespace hsmc
