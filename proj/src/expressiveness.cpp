#include "hsmc/expressiveness.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace hsmc {

namespace {

bool kn_edge(int n, int a, int b) {
  int t = 2 * n + 1;
  if (a == 0 && b == 0) return true;
  if (a == t && b == t) return true;
  if (a < 2 * n && b == a + 1) return true;
  return a == 2 * n && b == t;
}

using ProfileKey = std::tuple<int, int, int>;
ProfileKey key_of(const TraceProfile& p) { return {p.n_empty, p.n_p, p.d_p}; }
TraceProfile profile_of(const ProfileKey& k) { return {std::get<0>(k), std::get<1>(k), std::get<2>(k)}; }

// Profile -> one trace having it.
using ProfileSet = std::map<ProfileKey, Trace>;

template <class Body>
void parallel_for(std::size_t n, int jobs, Body body) {
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) body(i);
  };
  int threads = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
  if (threads == 1) {
    run();
    return;
  }
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(run);
  for (auto& th : pool) th.join();
}

}  // namespace

// ---------------------------------------------------- K_n profiles

TraceProfile profile(int n, const Trace& t) {
  if (n < 1) throw std::invalid_argument("profile needs n >= 1");
  if (t.empty()) throw std::invalid_argument("empty trace");
  int tstate = 2 * n + 1;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < 0 || t[i] > tstate) throw std::invalid_argument("not a trace of kn");
    if (i && !kn_edge(n, t[i - 1], t[i])) throw std::invalid_argument("not a trace of kn");
  }
  TraceProfile p;
  for (int s : t) (s == tstate ? p.n_p : p.n_empty)++;
  p.d_p = p.n_p > 0 ? 0 : 2 * n - t.back() + 1;
  return p;
}

bool h_compatible(const TraceProfile& a, const TraceProfile& b, int h) {
  if (a.n_p != b.n_p) return false;
  if (a.n_empty != b.n_empty && (a.n_empty < h || b.n_empty < h)) return false;
  if (a.d_p != b.d_p && (a.d_p < h || b.d_p < h)) return false;
  return true;
}

bool h_compatible(int n, const Trace& t1, const Trace& t2, int h) {
  if (h < 1 || h > n) throw std::invalid_argument("h must lie in [1, n]");
  return h_compatible(profile(n, t1), profile(n, t2), h);
}

LemmaReport verify_compatibility_lemma(int n, int h, int bound, const CompatRelation& rel_in) {
  if (h < 2 || h > n) throw std::invalid_argument("h must lie in [2, n]");
  CompatRelation rel = rel_in ? rel_in : CompatRelation([](const TraceProfile& a, const TraceProfile& b, int k) {
    return h_compatible(a, b, k);
  });
  KripkeStructure k = builtin_kn(n);
  // A response may need the whole s_1..t chain plus every t of the challenge.
  int reach = 2 * bound + 2 * n + 2;
  auto traces = enumerate_traces(k, bound, false);

  struct Sets {
    TraceProfile self;
    ProfileSet prefixes, suffixes, fwd, fwd_reach, bwd, bwd_reach;
  };
  auto add = [&](ProfileSet& s, const Trace& t) { s.emplace(key_of(profile(n, t)), t); };
  // Extensions cur.sigma (forward) or sigma.cur (backward), sigma nonempty.
  std::function<void(Trace&, int, bool, ProfileSet&, ProfileSet&)> extend =
      [&](Trace& cur, int depth, bool forward, ProfileSet& within, ProfileSet& beyond) {
        if (static_cast<int>(cur.size()) >= reach) return;
        int end = forward ? cur.back() : cur.front();
        const auto& next = forward ? k.succ[end] : k.pred[end];
        for (int s : next) {
          if (forward)
            cur.push_back(s);
          else
            cur.insert(cur.begin(), s);
          if (static_cast<int>(cur.size()) <= bound) add(within, cur);
          add(beyond, cur);
          extend(cur, depth + 1, forward, within, beyond);
          if (forward)
            cur.pop_back();
          else
            cur.erase(cur.begin());
        }
      };
  std::vector<Sets> sets(traces.size());
  for (std::size_t i = 0; i < traces.size(); ++i) {
    const Trace& t = traces[i];
    Sets& s = sets[i];
    s.self = profile(n, t);
    for (std::size_t l = 1; l < t.size(); ++l) {
      add(s.prefixes, Trace(t.begin(), t.begin() + l));
      add(s.suffixes, Trace(t.end() - l, t.end()));
    }
    Trace cur = t;
    extend(cur, 0, true, s.fwd, s.fwd_reach);
    cur = t;
    extend(cur, 0, false, s.bwd, s.bwd_reach);
  }

  auto matched = [&](const ProfileSet& challenge, const ProfileSet& answers, int level, int prop,
                     std::size_t i, std::size_t j, LemmaReport& rep) {
    for (const auto& [ck, ctrace] : challenge) {
      bool ok = false;
      for (const auto& [ak, _] : answers)
        if (rel(profile_of(ck), profile_of(ak), level)) {
          ok = true;
          break;
        }
      if (!ok) rep.violations.push_back({prop, traces[i], traces[j], ctrace});
    }
  };

  LemmaReport rep;
  int half = h / 2;
  for (std::size_t i = 0; i < traces.size(); ++i)
    for (std::size_t j = 0; j < traces.size(); ++j) {
      if (!rel(sets[i].self, sets[j].self, h)) continue;
      ++rep.pairs;
      matched(sets[i].prefixes, sets[j].prefixes, half, 1, i, j, rep);
      matched(sets[i].fwd, sets[j].fwd_reach, half, 2, i, j, rep);
      matched(sets[i].suffixes, sets[j].suffixes, h - 1, 3, i, j, rep);
      matched(sets[i].bwd, sets[j].bwd_reach, h, 4, i, j, rep);
    }
  return rep;
}

// ------------------------------------------------ balanced formulas

std::vector<Hs> enumerate_balanced(const BalancedSpec& spec) {
  if (spec.max_size < 1) throw std::invalid_argument("max_size must be at least 1");
  std::vector<std::vector<Hs>> by(spec.max_size + 1);
  for (int s = 1; s <= spec.max_size; ++s) {
    auto& out = by[s];
    if (s == 1) {
      for (const auto& a : spec.atoms) out.push_back(hs::atom(a));
      out.push_back(hs::top());
      continue;
    }
    for (const auto& f : by[s - 1]) out.push_back(hs::neg(f));
    for (int a = 1; a <= s - 2; ++a)
      for (const auto& f : by[a])
        for (const auto& g : by[s - 1 - a]) out.push_back(hs::conj(f, g));
    for (Rel r : spec.relations) {
      if (r == Rel::B || r == Rel::Bbar) {
        if ((s - 2) % 2 || s < 4) continue;
        int half = (s - 2) / 2;
        for (const auto& f : by[half])
          for (const auto& g : by[half]) out.push_back(hs::dia(r, hs::conj(f, g)));
      } else {
        for (const auto& f : by[s - 1]) out.push_back(hs::dia(r, f));
      }
    }
  }
  std::vector<Hs> all;
  for (auto& v : by) all.insert(all.end(), v.begin(), v.end());
  return all;
}

bool is_balanced(const Hs& f) {
  if (!f) return true;
  if (f->kind == HsKind::Modal && (f->rel == Rel::B || f->rel == Rel::Bbar)) {
    const Hs& t = f->a;
    if (t->kind != HsKind::And || formula_size(t->a) != formula_size(t->b)) return false;
  }
  return is_balanced(f->a) && is_balanced(f->b);
}

AgreementReport agreement_check(int n, int max_size, int bound, int jobs) {
  if (max_size > n) throw std::invalid_argument("max_size must not exceed n");
  KripkeStructure kn = builtin_kn(n), mn = builtin_mn(n);
  auto formulas = enumerate_balanced({{"p"}, {Rel::B, Rel::Bbar, Rel::E, Rel::Ebar}, max_size});
  auto traces = enumerate_traces(kn, bound, false);
  std::vector<TraceProfile> profs;
  for (const auto& t : traces) profs.push_back(profile(n, t));

  EvalContext kctx{kn, Semantics::st, bound, bound + max_size * (2 * n + 2), 0, 1};
  EvalContext mctx = kctx;
  mctx.structure = mn;

  AgreementReport rep;
  rep.formulas = static_cast<long long>(formulas.size());
  std::mutex mu;
  std::atomic<long long> pairs{0};
  parallel_for(formulas.size(), jobs, [&](std::size_t fi) {
    const Hs& f = formulas[fi];
    int h = static_cast<int>(formula_size(f));
    StEvaluator ev(kctx);
    std::vector<char> val(traces.size());
    for (std::size_t i = 0; i < traces.size(); ++i) val[i] = ev.eval(traces[i], f).value;
    std::vector<std::string> found;
    long long local = 0;
    for (std::size_t i = 0; i < traces.size(); ++i)
      for (std::size_t j = i + 1; j < traces.size(); ++j) {
        if (!h_compatible(profs[i], profs[j], h)) continue;
        ++local;
        if (val[i] != val[j])
          found.push_back(render(f) + ": " + format_trace(kn, traces[i]) + " vs " + format_trace(kn, traces[j]));
      }
    Verdict vk = check_st(kctx, f), vm = check_st(mctx, f);
    if (vk.value != vm.value)
      found.push_back(render(f) + ": kn " + verdict_name(vk.value) + ", mn " + verdict_name(vm.value));
    pairs += local;
    std::lock_guard<std::mutex> lock(mu);
    rep.discrepancies.insert(rep.discrepancies.end(), found.begin(), found.end());
  });
  rep.pairs = pairs;
  std::sort(rep.discrepancies.begin(), rep.discrepancies.end());
  return rep;
}

// ------------------------------------------------ K1 / K2 under st, ct

Hs distinguishing_formula() { return parse_hs("<E>(p & len1) -> <E>(len1 & <Abar>(p & !len1))"); }

DistinguishingReport distinguishing_report(int bound, int jobs) {
  DistinguishingReport rep;
  rep.formula = distinguishing_formula();
  auto run = [&](const char* name, Semantics sem, Verdict& out) {
    EvalContext ctx{builtin(name), sem, bound, 0, 0, jobs};
    out = check(ctx, rep.formula);
    if (out.value == VerdictValue::fails && out.trace) {
      bool again = sem == Semantics::st ? eval_st(ctx, *out.trace, rep.formula)
                                        : eval_ct(ctx, CtNode{*out.trace, 0}, rep.formula);
      if (again) rep.witnesses_recheck = false;
    }
  };
  run("k1", Semantics::st, rep.k1_st);
  run("k2", Semantics::st, rep.k2_st);
  run("k1", Semantics::ct, rep.k1_ct);
  run("k2", Semantics::ct, rep.k2_ct);
  return rep;
}

// ------------------------------------------------ vending machine

const std::vector<VendingProperty>& vending_properties() {
  using V = VerdictValue;
  using S = Semantics;
  static const std::vector<VendingProperty> props = {
      {"items", "(p_operative & len7) -> (<B><E>p_hotdog & <B><E>p_water & <B><E>p_candy)",
       {{S::st, 7, V::fails}, {S::ct, 7, V::fails}, {S::lin, 7, V::fails}}},
      {"credit", "(<E>p_0_50) -> !<A>(len2 & <E>(p_hotdog | p_candy))",
       {{S::st, 8, V::holds_in_bound}, {S::ct, 8, V::holds_in_bound}, {S::lin, 8, V::holds_in_bound}}},
      {"maintenance", "(<E>p_maint_end) -> <A><E>p_operative",
       {{S::st, 8, V::holds_in_bound}, {S::ct, 8, V::holds_in_bound}, {S::lin, 8, V::fails}}},
      {"fairness", "([A]<A><E>p_maint) -> [A]<A><E>p_operative",
       {{S::st, 8, V::holds_in_bound}, {S::ct, 8, V::holds_in_bound}, {S::lin, 8, V::fails}}},
      {"water",
       "(<E>p_water) -> <E>(p_water & <Abar>(len2 & <B>p_2) & <Abar>(len2 & <B>p_1) & <Abar>(len2 & <B>p_0_50))",
       {{S::st, 8, V::holds_in_bound}, {S::ct, 6, V::fails}, {S::lin, 8, V::fails}}},
  };
  return props;
}

}  // namespace hsmc
