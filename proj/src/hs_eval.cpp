#include "hsmc/hs_eval.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "parallel.hpp"

namespace hsmc {

const char* semantics_name(Semantics s) {
  switch (s) {
    case Semantics::st: return "st";
    case Semantics::ct: return "ct";
    case Semantics::lin: return "lin";
  }
  return "?";
}

std::optional<Semantics> semantics_from_name(std::string_view s) {
  if (s == "st") return Semantics::st;
  if (s == "ct") return Semantics::ct;
  if (s == "lin") return Semantics::lin;
  return std::nullopt;
}

const char* verdict_name(VerdictValue v) {
  switch (v) {
    case VerdictValue::holds: return "holds";
    case VerdictValue::fails: return "fails";
    case VerdictValue::holds_in_bound: return "holds_in_bound";
  }
  return "?";
}

namespace {

struct TraceHash {
  std::size_t operator()(const Trace& t) const {
    std::size_t h = 0xcbf29ce484222325ull;
    for (int x : t) h = (h ^ static_cast<std::size_t>(x + 1)) * 0x100000001b3ull;
    return h;
  }
};

class NodeIndex {
 public:
  std::uint64_t of(const Hs& f) {
    auto [it, fresh] = idx_.emplace(f.get(), keep_.size());
    if (fresh) keep_.push_back(f);
    return it->second;
  }

 private:
  std::unordered_map<const HsNode*, std::uint64_t> idx_;
  std::vector<Hs> keep_;  // keeps memo keys from being recycled
};

class TraceIds {
 public:
  std::uint64_t of(const Trace& t) {
    auto [it, fresh] = ids_.emplace(t, ids_.size());
    return it->second;
  }

 private:
  std::unordered_map<Trace, std::uint64_t, TraceHash> ids_;
};

// Existential search over a domain, tracking whether cuts could matter.
struct Search {
  bool pure_true = false, cut_true = false, cut_false = false;
  bool add(Truth t) {
    if (t.value) {
      if (!t.truncated) return pure_true = true;
      cut_true = true;
    } else if (t.truncated) {
      cut_false = true;
    }
    return false;
  }
  Truth result(bool domain_cut) const {
    if (pure_true) return {true, false};
    if (cut_true) return {true, true};
    return {false, domain_cut || cut_false};
  }
};

Truth negate(Truth t) { return {!t.value, t.truncated}; }

// a & b, preferring an uncut justification.
Truth conj(Truth a, Truth b) {
  if (a.value && b.value) return {true, a.truncated || b.truncated};
  bool pure_false = (!a.value && !a.truncated) || (!b.value && !b.truncated);
  return {false, !pure_false};
}

Truth disj(Truth a, Truth b) { return negate(conj(negate(a), negate(b))); }

int atom_bit(const KripkeStructure& k, const std::string& name) {
  int i = k.atom_index(name);
  if (i < 0) throw std::invalid_argument("atom '" + name + "' is not declared by the structure");
  return i;
}

// Forward/backward extension walks bounded by a maximum trace length.
class Walker {
 public:
  Walker(const KripkeStructure& k, int limit) : k_(k), limit_(limit) {}

  // Visits cur.sigma for |sigma| >= 1 (>= 0 with self), |cur.sigma| - from <= limit.
  template <class Visit>
  bool forward(Trace& cur, bool self, Visit&& visit, bool& cut, int from = 0) const {
    if (self && visit(cur)) return true;
    return fwd(cur, visit, cut, from);
  }
  // Visits sigma.cur likewise.
  template <class Visit>
  bool backward(const Trace& cur, bool self, Visit&& visit, bool& cut) const {
    Trace rev(cur.rbegin(), cur.rend());
    Trace tmp;
    auto emit = [&](const Trace& r) {
      tmp.assign(r.rbegin(), r.rend());
      return visit(tmp);
    };
    if (self && emit(rev)) return true;
    return bwd(rev, emit, cut);
  }

 private:
  template <class Visit>
  bool fwd(Trace& cur, Visit& visit, bool& cut, int from) const {
    const auto& next = k_.succ[cur.back()];
    if (static_cast<int>(cur.size()) - from >= limit_) {
      if (!next.empty()) cut = true;
      return false;
    }
    for (int s : next) {
      cur.push_back(s);
      bool stop = visit(cur) || fwd(cur, visit, cut, from);
      cur.pop_back();
      if (stop) return true;
    }
    return false;
  }
  template <class Visit>
  bool bwd(Trace& rev, Visit& visit, bool& cut) const {
    const auto& prev = k_.pred[rev.back()];
    if (static_cast<int>(rev.size()) >= limit_) {
      if (!prev.empty()) cut = true;
      return false;
    }
    for (int s : prev) {
      rev.push_back(s);
      bool stop = visit(rev) || bwd(rev, visit, cut);
      rev.pop_back();
      if (stop) return true;
    }
    return false;
  }

  const KripkeStructure& k_;
  int limit_;
};

// States reachable from s in 1..max_steps steps; cut if more steps reach more.
std::vector<int> reach(const std::vector<std::vector<int>>& adj, int s, int max_steps, bool& cut) {
  const std::size_t n = adj.size();
  std::vector<char> within(n, 0), ever(n, 0), level(n, 0);
  level[s] = 1;
  // n extra levels are enough for the union to stabilise.
  for (int step = 1; step <= max_steps + static_cast<int>(n); ++step) {
    std::vector<char> next(n, 0);
    for (std::size_t u = 0; u < n; ++u)
      if (level[u])
        for (int v : adj[u]) next[v] = 1;
    for (std::size_t v = 0; v < n; ++v)
      if (next[v]) {
        ever[v] = 1;
        if (step <= max_steps) within[v] = 1;
      }
    level = std::move(next);
  }
  std::vector<int> out;
  for (std::size_t v = 0; v < n; ++v) {
    if (within[v]) out.push_back(static_cast<int>(v));
    else if (ever[v]) cut = true;
  }
  return out;
}

}  // namespace

// ------------------------------------------------------------------ st

struct StEvaluator::Impl {
  EvalContext ctx;
  int limit;
  Walker walk;
  NodeIndex nodes;
  TraceIds traces;
  std::unordered_map<std::uint64_t, Truth> memo;

  explicit Impl(const EvalContext& c) : ctx(c), limit(c.domain_limit()), walk(ctx.structure, limit) {}

  Truth eval(const Trace& t, const Hs& f) {
    std::uint64_t key = nodes.of(f) << 32 | traces.of(t);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    Truth r = compute(t, f);
    memo.emplace(key, r);
    return r;
  }

  Truth compute(const Trace& t, const Hs& f) {
    const KripkeStructure& k = ctx.structure;
    switch (f->kind) {
      case HsKind::True: return {true, false};
      case HsKind::False: return {false, false};
      case HsKind::Atom: {
        int b = atom_bit(k, f->name);
        for (int s : t)
          if (!(k.labels[s] >> b & 1)) return {false, false};
        return {true, false};
      }
      case HsKind::Not: return negate(eval(t, f->a));
      case HsKind::And: {
        Truth a = eval(t, f->a);
        if (!a.value && !a.truncated) return a;
        return conj(a, eval(t, f->b));
      }
      case HsKind::Or: {
        Truth a = eval(t, f->a);
        if (a.value && !a.truncated) return a;
        return disj(a, eval(t, f->b));
      }
      case HsKind::Implies: {
        Truth a = negate(eval(t, f->a));
        if (a.value && !a.truncated) return a;
        return disj(a, eval(t, f->b));
      }
      case HsKind::Modal: break;
    }
    Search search;
    bool cut = false;
    const bool neg = f->universal;
    auto visit = [&](const Trace& u) {
      Truth c = eval(u, f->a);
      return search.add(neg ? negate(c) : c);
    };
    domain(f->rel, t, visit, cut);
    Truth r = search.result(cut);
    return neg ? negate(r) : r;
  }

  template <class Visit>
  void domain(Rel rel, const Trace& t, Visit& visit, bool& cut) {
    const KripkeStructure& k = ctx.structure;
    const int n = static_cast<int>(t.size());
    auto slice = [&](int a, int b) { return Trace(t.begin() + a, t.begin() + b + 1); };
    switch (rel) {
      case Rel::B:
        for (int len = 1; len < n; ++len)
          if (visit(slice(0, len - 1))) return;
        return;
      case Rel::E:
        for (int len = 1; len < n; ++len)
          if (visit(slice(n - len, n - 1))) return;
        return;
      case Rel::Bbar: {
        Trace cur = t;
        walk.forward(cur, false, visit, cut);
        return;
      }
      case Rel::Ebar: walk.backward(t, false, visit, cut); return;
      case Rel::A: {
        Trace cur{t.back()};
        walk.forward(cur, true, visit, cut);
        return;
      }
      case Rel::Abar: walk.backward(Trace{t.front()}, true, visit, cut); return;
      case Rel::L:
        for (int s : reach(k.succ, t.back(), limit - 1, cut)) {
          Trace cur{s};
          if (walk.forward(cur, true, visit, cut)) return;
        }
        return;
      case Rel::Lbar:
        for (int s : reach(k.pred, t.front(), limit - 1, cut))
          if (walk.backward(Trace{s}, true, visit, cut)) return;
        return;
      case Rel::D:
        for (int a = 1; a <= n - 2; ++a)
          for (int b = a; b <= n - 2; ++b)
            if (visit(slice(a, b))) return;
        return;
      case Rel::Dbar: {
        auto outer = [&](const Trace& st) {
          Trace cur = st;
          return walk.forward(cur, false, visit, cut);
        };
        walk.backward(t, false, outer, cut);
        return;
      }
      case Rel::O:
        for (int a = 1; a <= n - 2; ++a) {
          Trace cur = slice(a, n - 1);
          if (walk.forward(cur, false, visit, cut)) return;
        }
        return;
      case Rel::Obar:
        for (int b = 1; b <= n - 2; ++b)
          if (walk.backward(slice(0, b), false, visit, cut)) return;
        return;
      case Rel::G:
        for (int a = 0; a < n; ++a)
          for (int b = a; b < n; ++b)
            if (visit(slice(a, b))) return;
        return;
    }
  }
};

StEvaluator::StEvaluator(const EvalContext& ctx) : impl_(std::make_unique<Impl>(ctx)) {}
StEvaluator::~StEvaluator() = default;
StEvaluator::StEvaluator(StEvaluator&&) noexcept = default;
Truth StEvaluator::eval(const Trace& t, const Hs& f) { return impl_->eval(t, f); }

bool eval_st(const EvalContext& ctx, const Trace& t, const Hs& f) {
  if (!is_trace(ctx.structure, t)) throw std::invalid_argument("not a trace of the structure");
  if (static_cast<int>(t.size()) > ctx.domain_limit()) throw std::invalid_argument("trace longer than the bound");
  return StEvaluator(ctx).eval(t, f).value;
}

namespace {

bool initial_universe_cut(const KripkeStructure& k, const std::vector<Trace>& traces, int bound) {
  for (const auto& t : traces)
    if (static_cast<int>(t.size()) == bound && !k.succ[t.back()].empty()) return true;
  return false;
}

template <class Evaluator, class Query>
Verdict check_traces(const EvalContext& ctx, const Hs& f, Query query) {
  if (ctx.bound < 1) throw std::invalid_argument("bound must be >= 1");
  std::vector<Trace> traces = enumerate_traces(ctx.structure, ctx.bound, true);
  std::atomic<bool> cut{false};
  std::size_t bad = detail::first_index(
      traces.size(), ctx.jobs, [&] { return Evaluator(ctx); },
      [&](Evaluator& ev, std::size_t i) {
        Truth r = query(ev, traces[i], f);
        if (r.truncated) cut = true;
        return !r.value;
      });
  Verdict v;
  v.bound_hit = cut || initial_universe_cut(ctx.structure, traces, ctx.bound);
  if (bad < traces.size()) {
    Evaluator ev(ctx);
    v.value = VerdictValue::fails;
    v.trace = traces[bad];
    v.pure = !query(ev, traces[bad], f).truncated;
  } else {
    v.value = v.bound_hit ? VerdictValue::holds_in_bound : VerdictValue::holds;
  }
  return v;
}

}  // namespace

Verdict check_st(const EvalContext& ctx, const Hs& f) {
  return check_traces<StEvaluator>(ctx, f, [](StEvaluator& ev, const Trace& t, const Hs& g) { return ev.eval(t, g); });
}

// ------------------------------------------------------------------ ct

struct CtEvaluator::Impl {
  EvalContext ctx;
  int limit;
  Walker walk;
  NodeIndex nodes;
  TraceIds bases;
  std::unordered_map<std::uint64_t, Truth> memo;
  std::unordered_map<const HsNode*, Hs> expansions;

  explicit Impl(const EvalContext& c) : ctx(c), limit(c.domain_limit()), walk(ctx.structure, limit) {}

  Truth eval(const Trace& base, int start, const Hs& f) {
    std::uint64_t key = nodes.of(f) << 44 | bases.of(base) << 12 | static_cast<std::uint64_t>(start);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    Truth r = compute(base, start, f);
    memo.emplace(key, r);
    return r;
  }

  Truth compute(const Trace& base, int start, const Hs& f) {
    const KripkeStructure& k = ctx.structure;
    const int end = static_cast<int>(base.size()) - 1;
    switch (f->kind) {
      case HsKind::True: return {true, false};
      case HsKind::False: return {false, false};
      case HsKind::Atom: {
        int b = atom_bit(k, f->name);
        for (int i = start; i <= end; ++i)
          if (!(k.labels[base[i]] >> b & 1)) return {false, false};
        return {true, false};
      }
      case HsKind::Not: return negate(eval(base, start, f->a));
      case HsKind::And: {
        Truth a = eval(base, start, f->a);
        if (!a.value && !a.truncated) return a;
        return conj(a, eval(base, start, f->b));
      }
      case HsKind::Or: {
        Truth a = eval(base, start, f->a);
        if (a.value && !a.truncated) return a;
        return disj(a, eval(base, start, f->b));
      }
      case HsKind::Implies: {
        Truth a = negate(eval(base, start, f->a));
        if (a.value && !a.truncated) return a;
        return disj(a, eval(base, start, f->b));
      }
      case HsKind::Modal: break;
    }
    if (!is_core(f->rel) && f->rel != Rel::A && f->rel != Rel::Abar) {
      auto it = expansions.find(f.get());
      if (it == expansions.end()) it = expansions.emplace(f.get(), expand_modal(f->rel, f->universal, f->a)).first;
      return eval(base, start, it->second);
    }
    Search search;
    bool cut = false;
    const bool neg = f->universal;
    auto at = [&](const Trace& b, int s) {
      Truth c = eval(b, s, f->a);
      return search.add(neg ? negate(c) : c);
    };
    switch (f->rel) {
      case Rel::B:
        for (int e = start; e < end; ++e)
          if (at(Trace(base.begin(), base.begin() + e + 1), start)) break;
        break;
      case Rel::E:
        for (int s = start + 1; s <= end; ++s)
          if (at(base, s)) break;
        break;
      case Rel::Ebar:
        for (int s = start - 1; s >= 0; --s)
          if (at(base, s)) break;
        break;
      case Rel::Abar: {
        Trace hist(base.begin(), base.begin() + start + 1);
        for (int s = start; s >= 0; --s)
          if (at(hist, s)) break;
        break;
      }
      case Rel::Bbar: {
        Trace cur = base;
        walk.forward(cur, false, [&](const Trace& b) { return at(b, start); }, cut, start);
        break;
      }
      case Rel::A: {
        // Fresh intervals from the end node, bounded like st traces.
        Trace cur = base;
        walk.forward(cur, true, [&](const Trace& b) { return at(b, end); }, cut, end);
        break;
      }
      default: break;
    }
    Truth r = search.result(cut);
    return neg ? negate(r) : r;
  }
};

CtEvaluator::CtEvaluator(const EvalContext& ctx) : impl_(std::make_unique<Impl>(ctx)) {}
CtEvaluator::~CtEvaluator() = default;
CtEvaluator::CtEvaluator(CtEvaluator&&) noexcept = default;
Truth CtEvaluator::eval(const CtNode& n, const Hs& f) { return impl_->eval(n.base, n.start, f); }

bool eval_ct(const EvalContext& ctx, const CtNode& n, const Hs& f) {
  const KripkeStructure& k = ctx.structure;
  if (!is_trace(k, n.base) || n.base[0] != k.initial) throw std::invalid_argument("node base is not an initial trace");
  if (n.start < 0 || n.start >= static_cast<int>(n.base.size())) throw std::invalid_argument("node start out of range");
  if (static_cast<int>(n.base.size()) > ctx.domain_limit()) throw std::invalid_argument("node deeper than the bound");
  return CtEvaluator(ctx).eval(n, f).value;
}

Verdict check_ct(const EvalContext& ctx, const Hs& f) {
  return check_traces<CtEvaluator>(ctx, f, [](CtEvaluator& ev, const Trace& t, const Hs& g) {
    return ev.eval(CtNode{t, 0}, g);
  });
}

// ----------------------------------------------------------------- lin

namespace {
std::atomic<int> g_fold_slack{0};
}

void set_interval_fold_slack(int periods) { g_fold_slack = std::max(0, periods); }
int interval_fold_slack() { return g_fold_slack; }

IntervalTable::Norm IntervalTable::norm(long long i, long long j) const {
  if (mode_ == IntervalMode::exact) {
    if (i >= rows_) {
      long long k = (i - (rows_ - period_)) / period_;
      i -= k * period_;
      j -= k * period_;
    }
    long long l = j - i;
    if (l >= cols_) l = window_ + (l - window_) % period_;
    return {i, l};
  }
  return {i, j - i};
}

IntervalTable::IntervalTable(const KripkeStructure& k, const Lasso& pi, const Hs& f, IntervalMode mode, int horizon)
    : mode_(mode) {
  if (pi.loop.empty()) throw std::invalid_argument("lasso loop is empty");
  Hs g = expand_derived(f);
  if (mode == IntervalMode::exact) {
    long long s = static_cast<long long>(pi.stem.size());
    long long d = static_cast<long long>(modal_depth(g));
    period_ = static_cast<long long>(pi.loop.size());
    rows_ = s + (d + 2 + g_fold_slack) * period_;
    window_ = rows_;
    cols_ = window_ + period_;
  } else {
    if (horizon < 0) throw std::invalid_argument("horizon must be >= 0");
    rows_ = cols_ = window_ = horizon + 1;
  }
  const long long R = rows_, C = cols_;
  const bool exact = mode == IntervalMode::exact;
  auto valid = [&](long long i, long long l) { return exact || i + l < R; };
  std::vector<std::uint64_t> pos(static_cast<std::size_t>(R + C));
  for (long long h = 0; h < R + C; ++h) pos[h] = k.labels[lasso_at(pi, h)];

  using Table = std::vector<unsigned char>;
  std::unordered_map<const HsNode*, Table> done;
  auto cell = [&](long long i, long long l) { return static_cast<std::size_t>(i * C + l); };

  std::function<const Table&(const Hs&)> build = [&](const Hs& h) -> const Table& {
    if (auto it = done.find(h.get()); it != done.end()) return it->second;
    Table out(static_cast<std::size_t>(R * C), 0);
    switch (h->kind) {
      case HsKind::True:
        std::fill(out.begin(), out.end(), 1);
        break;
      case HsKind::False: break;
      case HsKind::Atom: {
        int b = atom_bit(k, h->name);
        for (long long i = 0; i < R; ++i) {
          bool run = true;
          for (long long l = 0; l < C && valid(i, l); ++l) {
            run = run && (pos[i + l] >> b & 1);
            out[cell(i, l)] = run;
          }
        }
        break;
      }
      case HsKind::Not: {
        const Table& a = build(h->a);
        for (std::size_t x = 0; x < out.size(); ++x) out[x] = !a[x];
        break;
      }
      case HsKind::And:
      case HsKind::Or:
      case HsKind::Implies: {
        const Table& a = build(h->a);
        const Table& b = build(h->b);
        for (std::size_t x = 0; x < out.size(); ++x) {
          if (h->kind == HsKind::And) out[x] = a[x] && b[x];
          else if (h->kind == HsKind::Or) out[x] = a[x] || b[x];
          else out[x] = !a[x] || b[x];
        }
        break;
      }
      case HsKind::Modal: {
        const Table& src = build(h->a);
        const bool neg = h->universal;
        auto c = [&](std::size_t x) -> bool { return neg ? !src[x] : src[x]; };
        switch (h->rel) {
          case Rel::B:
            for (long long i = 0; i < R; ++i) {
              bool acc = false;
              for (long long l = 0; l < C && valid(i, l); ++l) {
                out[cell(i, l)] = acc;
                acc = acc || c(cell(i, l));
              }
            }
            break;
          case Rel::Bbar:
            for (long long i = 0; i < R; ++i) {
              long long last = exact ? C - 1 : R - 1 - i;
              bool block = false;
              if (exact)
                for (long long l = window_; l < C; ++l) block = block || c(cell(i, l));
              bool acc = false;
              for (long long l = last; l >= 0; --l) {
                out[cell(i, l)] = acc || block;
                acc = acc || c(cell(i, l));
              }
            }
            break;
          case Rel::E:
            for (long long l = 0; l < C; ++l)
              for (long long i = 0; i < R && valid(i, l); ++i) {
                if (l == 0) continue;
                Norm n = norm(i + 1, i + l);
                std::size_t x = cell(n.i, n.l);
                out[cell(i, l)] = c(x) || out[x];
              }
            break;
          case Rel::Ebar:
            for (long long i = 1; i < R; ++i)
              for (long long l = 0; l < C && valid(i, l); ++l) {
                Norm n = norm(i - 1, i + l);
                std::size_t x = cell(n.i, n.l);
                out[cell(i, l)] = c(x) || out[x];
              }
            break;
          default: throw std::logic_error("derived relation left after expansion");
        }
        if (neg)
          for (auto& v : out) v = !v;
        break;
      }
    }
    return done.emplace(h.get(), std::move(out)).first->second;
  };
  root_ = build(g);
}

bool IntervalTable::at(long long i, long long j) const {
  if (i < 0 || j < i) throw std::invalid_argument("interval needs 0 <= i <= j");
  if (mode_ == IntervalMode::prefix && j >= rows_) throw std::invalid_argument("interval beyond the horizon");
  Norm n = norm(i, j);
  return root_[static_cast<std::size_t>(n.i * cols_ + n.l)];
}

bool eval_interval(const KripkeStructure& k, const Lasso& pi, long long i, long long j, const Hs& f, int horizon,
                   IntervalMode mode) {
  if (mode == IntervalMode::prefix && horizon < j) throw std::invalid_argument("horizon below the interval end");
  return IntervalTable(k, pi, f, mode, horizon).at(i, j);
}

Verdict check_lin(const EvalContext& ctx, const Hs& f) {
  if (ctx.bound < 1) throw std::invalid_argument("bound must be >= 1");
  std::vector<Lasso> lassos = enumerate_lassos(ctx.structure, ctx.bound);
  const IntervalMode mode = ctx.horizon > 0 ? IntervalMode::prefix : IntervalMode::exact;
  const int horizon = std::max(ctx.horizon, ctx.bound);
  auto first_bad = [&](const Lasso& l) {
    IntervalTable tab(ctx.structure, l, f, mode, horizon);
    for (int i = 0; i <= ctx.bound; ++i)
      if (!tab.at(0, i)) return i;
    return -1;
  };
  struct Nothing {};
  std::size_t bad = detail::first_index(
      lassos.size(), ctx.jobs, [] { return Nothing{}; },
      [&](Nothing&, std::size_t i) { return first_bad(lassos[i]) >= 0; });
  Verdict v;
  v.bound_hit = true;  // lassos and interval ends beyond the bound are never inspected
  if (bad < lassos.size()) {
    v.value = VerdictValue::fails;
    v.lasso = lassos[bad];
    v.interval_end = first_bad(lassos[bad]);
    v.pure = mode == IntervalMode::exact;
  }
  return v;
}

Verdict check(const EvalContext& ctx, const Hs& f) {
  switch (ctx.semantics) {
    case Semantics::st: return check_st(ctx, f);
    case Semantics::ct: return check_ct(ctx, f);
    case Semantics::lin: return check_lin(ctx, f);
  }
  throw std::invalid_argument("unknown semantics");
}

}  // namespace hsmc
