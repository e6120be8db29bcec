#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "hsmc/kripke.hpp"

using namespace hsmc;

namespace {

// Number of traces of length exactly len, by adjacency-matrix powers.
long long count_by_matrix(const KripkeStructure& k, int len, int from) {
  int n = k.size();
  std::vector<long long> v(n, 0);
  if (from < 0)
    std::fill(v.begin(), v.end(), 1);
  else
    v[from] = 1;
  for (int step = 1; step < len; ++step) {
    std::vector<long long> w(n, 0);
    for (int s = 0; s < n; ++s)
      for (int t = 0; t < n; ++t)
        if (k.edge(s, t)) w[t] += v[s];
    v = w;
  }
  long long total = 0;
  for (long long x : v) total += x;
  return total;
}

bool length_lex_less(const Trace& a, const Trace& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace

TEST(Load, RejectsBadDocuments) {
  const char* dead_end = R"({"atoms":["p"],"states":[{"id":"a","label":[]},{"id":"b","label":[]}],
                            "edges":[["a","b"]],"initial":"a"})";
  const char* unknown_atom = R"({"atoms":["p"],"states":[{"id":"a","label":["q"]}],
                                "edges":[["a","a"]],"initial":"a"})";
  const char* missing_initial = R"({"atoms":[],"states":[{"id":"a","label":[]}],
                                   "edges":[["a","a"]],"initial":"z"})";
  const char* unknown_key = R"({"atoms":[],"states":[{"id":"a","label":[]}],
                               "edges":[["a","a"]],"initial":"a","extra":1})";
  const char* unknown_state = R"({"atoms":[],"states":[{"id":"a","label":[]}],
                                 "edges":[["a","b"]],"initial":"a"})";
  for (const char* doc : {dead_end, unknown_atom, missing_initial, unknown_key, unknown_state})
    EXPECT_THROW(load_kripke(doc), std::invalid_argument) << doc;
}

TEST(Load, DumpRoundTrip) {
  for (const char* name : {"fig1", "vending", "k1", "k2", "kn(2)"}) {
    KripkeStructure k = builtin(name);
    KripkeStructure r = load_kripke(dump_kripke(k));
    EXPECT_EQ(r.atoms, k.atoms);
    EXPECT_EQ(r.states, k.states);
    EXPECT_EQ(r.labels, k.labels);
    EXPECT_EQ(r.succ, k.succ);
    EXPECT_EQ(r.initial, k.initial);
  }
}

TEST(Structure, PredIsInverseOfSucc) {
  KripkeStructure k = builtin("vending");
  for (int s = 0; s < k.size(); ++s)
    for (int t : k.succ[s]) EXPECT_TRUE(std::binary_search(k.pred[t].begin(), k.pred[t].end(), s));
}

TEST(TraceLabel, Intersection) {
  KripkeStructure k = make_kripke({"p", "q"}, {{"a", {"p", "q"}}, {"b", {"p"}}, {"c", {}}},
                                  {{"a", "b"}, {"b", "c"}, {"c", "a"}}, "a");
  EXPECT_EQ(label_names(k, trace_label(k, {0})), (std::vector<std::string>{"p", "q"}));
  EXPECT_EQ(label_names(k, trace_label(k, {0, 1})), (std::vector<std::string>{"p"}));
  EXPECT_TRUE(label_names(k, trace_label(k, {0, 1, 2})).empty());
  EXPECT_TRUE(is_trace(k, {0, 1, 2, 0}));
  EXPECT_FALSE(is_trace(k, {0, 2}));
  EXPECT_FALSE(is_trace(k, {}));
}

TEST(EnumerateTraces, Fig1Examples) {
  KripkeStructure k = builtin("fig1");
  EXPECT_EQ(enumerate_traces(k, 3, false).size(), 10u);
  auto init = enumerate_traces(k, 3, true);
  std::vector<Trace> want{{0}, {0, 1}, {0, 1, 0}, {0, 1, 1}};
  EXPECT_EQ(init, want);
}

TEST(EnumerateTraces, CountsMatchMatrixPowers) {
  for (const char* name : {"fig1", "vending", "k2", "kn(2)"}) {
    KripkeStructure k = builtin(name);
    for (bool initial : {false, true}) {
      auto ts = enumerate_traces(k, 6, initial);
      for (int len = 1; len <= 6; ++len) {
        long long got = std::count_if(ts.begin(), ts.end(), [&](const Trace& t) { return int(t.size()) == len; });
        EXPECT_EQ(got, count_by_matrix(k, len, initial ? k.initial : -1)) << name << " " << len;
      }
    }
  }
}

TEST(EnumerateTraces, OrderedDistinctAndPrefixClosed) {
  KripkeStructure k = builtin("vending");
  auto ts = enumerate_traces(k, 6, true);
  std::set<Trace> seen(ts.begin(), ts.end());
  EXPECT_EQ(seen.size(), ts.size());
  EXPECT_TRUE(std::is_sorted(ts.begin(), ts.end(), length_lex_less));
  for (const auto& t : ts) {
    EXPECT_TRUE(is_trace(k, t));
    EXPECT_EQ(t.front(), k.initial);
    if (t.size() > 1) EXPECT_TRUE(seen.count(Trace(t.begin(), t.end() - 1)));
  }
}

TEST(EnumerateTraces, StreamStopsEarly) {
  KripkeStructure k = builtin("fig1");
  int calls = 0;
  for_each_trace(k, 10, false, [&](const Trace&) { return ++calls < 4; });
  EXPECT_EQ(calls, 4);
}

TEST(Lassos, Examples) {
  KripkeStructure k = builtin_kn(1);
  auto ls = enumerate_lassos(k, 1);
  ASSERT_EQ(ls.size(), 1u);
  EXPECT_TRUE(ls[0].stem.empty());
  EXPECT_EQ(ls[0].loop, Trace{0});

  KripkeStructure f = builtin("fig1");
  for (const auto& l : enumerate_lassos(f, 5)) {
    EXPECT_TRUE(is_lasso(f, l, true));
    EXPECT_LE(l.size(), 5u);
    EXPECT_FALSE(l.loop.empty());
  }
  Lasso l{{0}, {1}};
  EXPECT_EQ(unroll(l, 4), (Trace{0, 1, 1, 1}));
  EXPECT_EQ(lasso_at(Lasso{{0}, {1, 0}}, 1000000001LL), 1);
  EXPECT_EQ(lasso_at(Lasso{{0}, {1, 0}}, 1000000000LL), 0);
}

TEST(Lassos, OrderedBySize) {
  auto ls = enumerate_lassos(builtin("vending"), 8);
  for (std::size_t i = 1; i < ls.size(); ++i) EXPECT_LE(ls[i - 1].size(), ls[i].size());
}

TEST(Unwind, Fig1DepthThree) {
  KripkeStructure k = builtin("fig1");
  KripkeStructure u = unwind(k, 3);
  std::vector<std::string> want{"s0", "s0s1", "s0s1s0", "s0s1s1"};
  EXPECT_EQ(u.states, want);
  EXPECT_EQ(u.frontier, (std::vector<bool>{false, false, true, true}));
  EXPECT_EQ(u.labels[2], k.labels[0]);
}

TEST(Unwind, NodeCountEqualsInitialTraces) {
  for (const char* name : {"fig1", "vending", "k1"}) {
    KripkeStructure k = builtin(name);
    for (int d = 1; d <= 5; ++d) EXPECT_EQ(unwind(k, d).size(), int(enumerate_traces(k, d, true).size()));
  }
}

TEST(Builtins, Shapes) {
  KripkeStructure v = builtin("vending");
  EXPECT_EQ(v.size(), 10);
  EXPECT_EQ(v.atoms.size(), 11u);
  KripkeStructure kn = builtin_kn(3);
  EXPECT_EQ(kn.size(), 8);  // s0..s6, t
  EXPECT_EQ(kn.initial, 0);
  EXPECT_EQ(builtin_mn(3).initial, 1);
  EXPECT_TRUE(kn.edge(0, 0));
  EXPECT_FALSE(builtin_mn(3).edge(1, 1));
  EXPECT_EQ(builtin("kn(3)").states, kn.states);
  EXPECT_THROW(builtin("nope"), std::invalid_argument);
  EXPECT_THROW(builtin_kn(0), std::invalid_argument);
}

TEST(Format, TracesAndLassos) {
  KripkeStructure k = builtin("fig1");
  EXPECT_NE(format_trace(k, {0, 1}).find("s1"), std::string::npos);
  EXPECT_NE(format_lasso(k, Lasso{{0}, {1}}).find("s1"), std::string::npos);
}
