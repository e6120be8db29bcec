#include <gtest/gtest.h>

#include <deque>
#include <set>

#include "hsmc/expressiveness.hpp"
#include "hsmc/pointwise.hpp"
#include "support.hpp"

using namespace hsmc;
using namespace hsmc::testing;

namespace {

// States of kn(n): s0..s_{2n} are indices 0..2n, t is 2n+1.
TraceProfile profile_oracle(int n, const Trace& t) {
  KripkeStructure k = builtin_kn(n);
  const int tstate = 2 * n + 1;
  TraceProfile p;
  for (int s : t) (s == tstate ? p.n_p : p.n_empty)++;
  if (p.n_p > 0) return p;
  // BFS over states; the connecting trace counts both of its end states.
  std::vector<int> dist(k.size(), -1);
  std::deque<int> q{t.back()};
  dist[t.back()] = 1;
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    for (int v : k.succ[u])
      if (dist[v] < 0) dist[v] = dist[u] + 1, q.push_back(v);
  }
  p.d_p = dist[2 * n];
  return p;
}

long long balanced_count_oracle(int atoms, int free_rels, int bal_rels, int max_size) {
  std::vector<long long> c(max_size + 1, 0);
  for (int s = 1; s <= max_size; ++s) {
    if (s == 1) {
      c[1] = atoms + 1;
      continue;
    }
    long long v = c[s - 1] + free_rels * c[s - 1];
    for (int i = 1; i + 1 < s; ++i) v += c[i] * c[s - 1 - i];
    const int m = s - 1;  // size of the balanced conjunction under the modality
    if (m >= 3 && m % 2 == 1) v += bal_rels * c[(m - 1) / 2] * c[(m - 1) / 2];
    c[s] = v;
  }
  long long total = 0;
  for (int s = 1; s <= max_size; ++s) total += c[s];
  return total;
}

}  // namespace

TEST(Profile, Examples) {
  EXPECT_EQ(profile(1, {0, 1}), (TraceProfile{2, 0, 2}));
  EXPECT_EQ(profile(1, {3}), (TraceProfile{0, 1, 0}));
  EXPECT_EQ(profile(1, {0, 1, 2, 3}), (TraceProfile{3, 1, 0}));
  EXPECT_THROW(profile(1, {0, 2}), std::invalid_argument);
  EXPECT_THROW(profile(1, {}), std::invalid_argument);
}

TEST(Profile, MatchesOracleAndRange) {
  for (int n = 1; n <= 3; ++n)
    for (const Trace& t : enumerate_traces(builtin_kn(n), 7, false)) {
      TraceProfile p = profile(n, t);
      EXPECT_EQ(p, profile_oracle(n, t));
      EXPECT_EQ(p.d_p == 0, p.n_p > 0);
      EXPECT_GE(p.d_p, 0);
      EXPECT_LE(p.d_p, 2 * n + 1);
    }
}

TEST(Profile, DpDeterminesLastState) {
  for (int n = 1; n <= 3; ++n) {
    std::map<int, std::set<int>> last;
    for (const Trace& t : enumerate_traces(builtin_kn(n), 7, false)) last[profile(n, t).d_p].insert(t.back());
    for (const auto& [d, states] : last) EXPECT_EQ(states.size(), 1u) << "n=" << n << " d_p=" << d;
  }
}

TEST(Compat, Examples) {
  EXPECT_TRUE(h_compatible(2, {0, 0, 0}, {0, 0}, 2));
  EXPECT_FALSE(h_compatible(2, {0, 0, 0}, {0}, 2));
  EXPECT_TRUE(h_compatible(2, {0, 0, 0}, {0}, 1));
  EXPECT_FALSE(h_compatible(2, {5}, {4}, 1));
  EXPECT_THROW(h_compatible(2, {0}, {0}, 0), std::invalid_argument);
  EXPECT_THROW(h_compatible(2, {0}, {0}, 3), std::invalid_argument);
  EXPECT_THROW(h_compatible(2, {0, 5}, {0}, 1), std::invalid_argument);
}

TEST(Compat, EquivalenceAndRefinement) {
  for (int n = 2; n <= 3; ++n) {
    auto ts = enumerate_traces(builtin_kn(n), 5, false);
    std::vector<TraceProfile> ps;
    for (const Trace& t : ts) ps.push_back(profile(n, t));
    for (int h = 1; h <= n; ++h)
      for (std::size_t a = 0; a < ps.size(); ++a) {
        ASSERT_TRUE(h_compatible(ps[a], ps[a], h));
        for (std::size_t b = 0; b < ps.size(); ++b) {
          bool ab = h_compatible(ps[a], ps[b], h);
          ASSERT_EQ(ab, h_compatible(ps[b], ps[a], h));
          if (h > 1 && ab) ASSERT_TRUE(h_compatible(ps[a], ps[b], h - 1));
          if (!ab) continue;
          for (std::size_t c = 0; c < ps.size(); c += 3)
            if (h_compatible(ps[b], ps[c], h)) ASSERT_TRUE(h_compatible(ps[a], ps[c], h));
        }
      }
  }
}

TEST(Compat, InitialTracesMatchTracesFromS1) {
  for (int n = 1; n <= 2; ++n) {
    KripkeStructure k = builtin_kn(n);
    const int bound = 6;
    auto all = enumerate_traces(k, bound + 2 * n + 2, false);
    std::vector<Trace> from0, from1;
    for (const Trace& t : all) (t.front() == 0 ? from0 : t.front() == 1 ? from1 : from0).push_back(t);
    auto matched = [&](const Trace& t, const std::vector<Trace>& pool, int start) {
      for (const Trace& u : pool)
        if (u.front() == start && h_compatible(n, t, u, n)) return true;
      return false;
    };
    for (const Trace& t : all) {
      if (static_cast<int>(t.size()) > bound) continue;
      if (t.front() == 0) EXPECT_TRUE(matched(t, from1, 1)) << format_trace(k, t);
      if (t.front() == 1) EXPECT_TRUE(matched(t, from0, 0)) << format_trace(k, t);
    }
  }
}

TEST(Lemma, ReplayHasNoViolations) {
  LemmaReport r = verify_compatibility_lemma(2, 2, 8);
  EXPECT_GT(r.pairs, 0);
  EXPECT_TRUE(r.violations.empty()) << r.violations.size() << " violations, first property "
                                    << r.violations.front().property;
}

TEST(Lemma, MutatedRelationIsCaught) {
  CompatRelation loose = [](const TraceProfile& a, const TraceProfile& b, int h) {
    bool e = a.n_empty == b.n_empty || (a.n_empty >= h && b.n_empty >= h);
    bool d = a.d_p == b.d_p || (a.d_p >= h && b.d_p >= h);
    return e && d;
  };
  LemmaReport r = verify_compatibility_lemma(2, 2, 6, loose);
  EXPECT_FALSE(r.violations.empty());
  for (const auto& v : r.violations) {
    EXPECT_GE(v.property, 1);
    EXPECT_LE(v.property, 4);
  }
}

TEST(Lemma, HRange) {
  EXPECT_THROW(verify_compatibility_lemma(2, 1, 4), std::invalid_argument);
  EXPECT_THROW(verify_compatibility_lemma(2, 3, 4), std::invalid_argument);
}

TEST(Balanced, SizeOne) {
  auto fs = enumerate_balanced(BalancedSpec{{"p"}, {Rel::B, Rel::Bbar, Rel::E, Rel::Ebar}, 1});
  ASSERT_EQ(fs.size(), 2u);
  EXPECT_TRUE(equal(fs[0], hs::atom("p")));
  EXPECT_TRUE(equal(fs[1], hs::top()));
}

TEST(Balanced, CountsMatchRecursion) {
  const std::vector<Rel> all{Rel::B, Rel::Bbar, Rel::E, Rel::Ebar};
  EXPECT_EQ(enumerate_balanced(BalancedSpec{{"p"}, all, 3}).size(), 30u);
  for (int size = 1; size <= 5; ++size) {
    EXPECT_EQ(static_cast<long long>(enumerate_balanced(BalancedSpec{{"p"}, all, size}).size()),
              balanced_count_oracle(1, 2, 2, size));
    EXPECT_EQ(static_cast<long long>(enumerate_balanced(BalancedSpec{{"p", "q"}, {Rel::B, Rel::E}, size}).size()),
              balanced_count_oracle(2, 1, 1, size));
  }
}

TEST(Balanced, WellFormedOrderedDistinct) {
  auto fs = enumerate_balanced(BalancedSpec{{"p"}, {Rel::B, Rel::Bbar, Rel::E, Rel::Ebar}, 5});
  std::set<std::string> seen;
  std::size_t last = 0;
  for (const Hs& f : fs) {
    EXPECT_TRUE(is_balanced(f)) << render(f);
    EXPECT_TRUE(seen.insert(render(f)).second) << render(f);
    EXPECT_GE(formula_size(f), last);
    last = formula_size(f);
  }
  EXPECT_FALSE(is_balanced(parse_hs("<B> p")));
  EXPECT_FALSE(is_balanced(parse_hs("<Bbar> (p & <E> p)")));
  EXPECT_TRUE(is_balanced(parse_hs("<E> p")));
  EXPECT_TRUE(is_balanced(parse_hs("<B> (p & true)")));
}

TEST(Agreement, SmallInstance) {
  AgreementReport r = agreement_check(2, 2, 8);
  EXPECT_GT(r.formulas, 0);
  EXPECT_GT(r.pairs, 0);
  EXPECT_TRUE(r.discrepancies.empty()) << r.discrepancies.front();
}

TEST(Agreement, FpContrast) {
  Pt fp = parse_point("F p");
  EXPECT_EQ(check_ltl(builtin_kn(2), fp, 6).value, VerdictValue::fails);
  EXPECT_EQ(check_ltl(builtin_mn(2), fp, 10).value, VerdictValue::holds_in_bound);
}

TEST(Distinguishing, Report) {
  DistinguishingReport r = distinguishing_report(6);
  EXPECT_TRUE(equal(r.formula, parse_hs("<E>(p & len1) -> <E>(len1 & <Abar>(p & !len1))")));
  EXPECT_EQ(r.k1_st.value, VerdictValue::holds_in_bound);
  ASSERT_EQ(r.k2_st.value, VerdictValue::fails);
  EXPECT_EQ(*r.k2_st.trace, (Trace{0, 1}));
  EXPECT_EQ(r.k1_ct.value, r.k2_ct.value);
  EXPECT_TRUE(r.witnesses_recheck);
}

TEST(Vending, TableVerdicts) {
  const auto& props = vending_properties();
  ASSERT_EQ(props.size(), 5u);
  KripkeStructure k = builtin("vending");
  for (const auto& p : props) {
    Hs f = parse_hs(p.text);
    for (const auto& e : p.expectations)
      EXPECT_EQ(check(EvalContext{k, e.semantics, e.bound, 0, 0, 1}, f).value, e.expected)
          << p.name << " " << semantics_name(e.semantics);
  }
}
