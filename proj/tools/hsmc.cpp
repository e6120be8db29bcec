// hsmc: bounded model checking and translation front end.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "hsmc/expressiveness.hpp"
#include "hsmc/formula.hpp"
#include "hsmc/hs_eval.hpp"
#include "hsmc/kripke.hpp"
#include "hsmc/pointwise.hpp"
#include "hsmc/translate.hpp"

using namespace hsmc;
using json = nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string builtin = "fig1";
  std::string structure;
  std::string formula;
  std::string formula_file;
  std::string format = "text";
  int bound = 5;
  int jobs = 1;
};

void add_common(CLI::App* app, Common& c, bool with_structure) {
  if (with_structure) {
    app->add_option("--builtin", c.builtin, "fig1, vending, k1, k2, kn(N), mn(N)")->capture_default_str();
    app->add_option("--structure", c.structure, "structure JSON file");
  }
  app->add_option("--formula", c.formula, "formula text");
  app->add_option("--formula-file", c.formula_file, "file holding the formula");
  app->add_option("--bound", c.bound, "bound")->capture_default_str()->check(CLI::PositiveNumber);
  app->add_option("--jobs", c.jobs, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  app->add_option("--format", c.format, "text or json")->capture_default_str()->check(CLI::IsMember({"text", "json"}));
}

KripkeStructure load_structure(const Common& c) {
  if (!c.structure.empty()) return load_kripke_file(c.structure);
  return builtin(c.builtin);
}

std::string formula_text(const Common& c) {
  if (!c.formula_file.empty()) {
    std::ifstream in(c.formula_file);
    if (!in) throw UsageError("cannot read " + c.formula_file);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  if (c.formula.empty()) throw UsageError("no formula given (--formula or --formula-file)");
  return c.formula;
}

json trace_json(const KripkeStructure& k, const Trace& t) {
  json out = json::array();
  for (int s : t) out.push_back(k.states[s]);
  return out;
}

Trace parse_trace(const KripkeStructure& k, const std::string& text) {
  std::istringstream in(text);
  Trace t;
  for (std::string id; in >> id;) {
    int s = k.state_index(id);
    if (s < 0) throw UsageError("unknown state " + id);
    t.push_back(s);
  }
  return t;
}

int report_verdict(const KripkeStructure& k, const std::string& sem, const Verdict& v, const std::string& fmt) {
  if (fmt == "json") {
    json out{{"semantics", sem}, {"verdict", verdict_name(v.value)}, {"bound_hit", v.bound_hit}};
    if (v.trace) out["trace"] = trace_json(k, *v.trace);
    if (v.lasso) out["lasso"] = {{"stem", trace_json(k, v.lasso->stem)}, {"loop", trace_json(k, v.lasso->loop)}};
    if (v.interval_end >= 0) out["interval"] = {0, v.interval_end};
    if (v.value == VerdictValue::fails) out["pure"] = v.pure;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "verdict: " << verdict_name(v.value) << "\n";
    if (v.trace) std::cout << "witness: " << format_trace(k, *v.trace) << "\n";
    if (v.lasso) std::cout << "witness: " << format_lasso(k, *v.lasso) << "\n";
    if (v.interval_end >= 0) std::cout << "interval: [0, " << v.interval_end << "]\n";
    std::cout << "bound_hit: " << (v.bound_hit ? "true" : "false") << "\n";
  }
  return v.value == VerdictValue::fails ? 1 : 0;
}

int report_truth(bool value, const std::string& fmt) {
  if (fmt == "json")
    std::cout << json{{"value", value}}.dump() << "\n";
  else
    std::cout << (value ? "true" : "false") << "\n";
  return value ? 0 : 1;
}

// ---------------------------------------------------------------- check

struct CheckArgs {
  Common c;
  std::string semantics = "st";
  int universe = 0;
  int horizon = 0;
  bool finitary_paths = false;
  std::string trace, loop;
};

int cmd_check(const CheckArgs& a) {
  KripkeStructure k = load_structure(a.c);
  std::string text = formula_text(a.c);
  const std::string& sem = a.semantics;
  bool at_path = !a.trace.empty() || !a.loop.empty();

  if (auto s = semantics_from_name(sem)) {
    Hs f = parse_hs(text);
    EvalContext ctx{k, *s, a.c.bound, a.universe, a.horizon, a.c.jobs};
    if (!at_path) return report_verdict(k, sem, check(ctx, f), a.c.format);
    Trace t = parse_trace(k, a.trace);
    if (*s == Semantics::st) return report_truth(eval_st(ctx, t, f), a.c.format);
    if (*s == Semantics::ct) return report_truth(eval_ct(ctx, CtNode{t, 0}, f), a.c.format);
    Lasso l{t, parse_trace(k, a.loop)};
    return report_truth(eval_interval(k, l, 0, static_cast<long long>(l.stem.size() + l.loop.size()) - 1, f,
                                      a.horizon),
                        a.c.format);
  }

  Pt f = parse_point(text);
  if (sem == "ltl") {
    if (!is_ltl_with_past(f)) throw UsageError("not an LTL formula");
    if (!at_path) return report_verdict(k, sem, check_ltl(k, f, a.c.bound, a.c.jobs), a.c.format);
    return report_truth(eval_ltl(k, Lasso{parse_trace(k, a.trace), parse_trace(k, a.loop)}, 0, f), a.c.format);
  }
  if (sem == "ctlstar") {
    if (!is_ctlstar(f)) throw UsageError("not a CTL* formula");
    if (!at_path) return report_verdict(k, sem, check_ctlstar(k, f, a.c.bound, a.c.jobs), a.c.format);
    return report_truth(eval_ctlstar(k, Lasso{parse_trace(k, a.trace), parse_trace(k, a.loop)}, 0, f, a.c.bound),
                        a.c.format);
  }
  if (sem == "finitary") {
    if (!is_finitary_ctlstar(f)) throw UsageError("not a finitary CTL* formula");
    if (!at_path) return report_verdict(k, sem, check_finitary_ctlstar(k, f, a.c.bound, a.c.jobs), a.c.format);
    return report_truth(eval_finitary_ctlstar(k, parse_trace(k, a.trace), 0, f, a.c.bound), a.c.format);
  }
  if (sem == "hybrid") {
    if (!at_path) return report_verdict(k, sem, check_hybrid(k, f, a.c.bound, a.finitary_paths, a.c.jobs), a.c.format);
    Valuation g0;
    for (const auto& v : free_vars(f)) g0[v] = 0;
    if (a.finitary_paths) return report_truth(eval_hybrid_finite(k, parse_trace(k, a.trace), g0, 0, f, a.c.bound), a.c.format);
    return report_truth(
        eval_hybrid(k, Lasso{parse_trace(k, a.trace), parse_trace(k, a.loop)}, g0, 0, f, a.c.bound), a.c.format);
  }
  throw UsageError("unknown semantics " + sem);
}

// ------------------------------------------------------------ translate

struct TranslateArgs {
  Common c;
  std::string map;
  std::string kind = "bL";
  std::string letter = "b";
  std::vector<std::string> alphabet{"a", "c"};
  std::string oracle;
  bool infinite = false;
  int validate = 0;
};

struct Validation {
  long long checked = 0;
  std::vector<std::string> mismatches;
};

bool closure_oracle(const Word& w, const Hs& f, ClosureKind kind, const std::vector<std::string>& gamma,
                    const std::string& b) {
  auto in_gamma = [&](std::size_t from, std::size_t to) {
    for (std::size_t i = from; i < to; ++i)
      if (w[i] == b) return false;
    return true;
  };
  auto in_l = [&](std::size_t from, std::size_t to, bool eps_ok) {
    if (from == to) return eps_ok;
    if (!in_gamma(from, to)) return false;
    return lact_member(Word(w.begin() + from, w.begin() + to), gamma, f);
  };
  std::size_t n = w.size();
  switch (kind) {
    case ClosureKind::bL: return n >= 1 && w[0] == b && in_l(1, n, false);
    case ClosureKind::Lb: return n >= 1 && w[n - 1] == b && in_l(0, n - 1, false);
    case ClosureKind::bLb: return n >= 2 && w[0] == b && w[n - 1] == b && in_l(1, n - 1, false);
    case ClosureKind::sigma_bL:
    case ClosureKind::sigma_bL_eps:
      for (std::size_t i = 0; i < n; ++i)
        if (w[i] == b && in_l(i + 1, n, kind == ClosureKind::sigma_bL_eps)) return true;
      return false;
    case ClosureKind::Lb_sigma:
    case ClosureKind::L_eps_b_sigma:
      for (std::size_t i = 0; i < n; ++i)
        if (w[i] == b && in_l(0, i, kind == ClosureKind::L_eps_b_sigma)) return true;
      return false;
  }
  return false;
}

Validation validate_closure(const Hs& f, const Hs& g, ClosureKind kind, const std::vector<std::string>& gamma,
                            const std::string& b, int n) {
  Validation v;
  auto sigma = gamma;
  sigma.push_back(b);
  for (const auto& w : all_words(sigma, n)) {
    ++v.checked;
    if (lact_member(w, sigma, g) != closure_oracle(w, f, kind, gamma, b)) v.mismatches.push_back(format_word(w));
  }
  return v;
}

std::vector<Lasso> lassos_upto(const KripkeStructure& k, int n) { return enumerate_lassos(k, n); }

int cmd_translate(const TranslateArgs& a) {
  std::string text = formula_text(a.c);
  std::string out;
  Validation val;
  bool validated = a.validate > 0;
  int n = a.validate;
  KripkeStructure k = validated ? load_structure(a.c) : KripkeStructure{};

  if (a.map == "hs2fo") {
    Hs f = expand_derived(parse_hs(text));
    FoTranslation t = hs_to_fo(f);
    out = render(t.sentence);
    if (validated) {
      long long horizon = 2 * n;
      for (const auto& l : lassos_upto(k, n)) {
        FoEvaluator fe(k, l, horizon);
        for (long long i = 0; i <= n; ++i)
          for (long long j = i; j <= n; ++j) {
            ++val.checked;
            bool lhs = eval_interval(k, l, i, j, f, static_cast<int>(horizon), IntervalMode::prefix);
            if (lhs != fe.eval({{"x", i}, {"y", j}}, t.open))
              val.mismatches.push_back(format_lasso(k, l) + " [" + std::to_string(i) + "," + std::to_string(j) + "]");
          }
      }
    }
  } else if (a.map == "ltl2ab") {
    Pt f = parse_point(text);
    Hs g = ltl_to_ab(f);
    out = render(g);
    if (validated)
      for (const auto& l : lassos_upto(k, n))
        for (long long i = 0; i <= n; ++i) {
          ++val.checked;
          if (eval_ltl(k, l, i, f) != eval_interval(k, l, i, i, g))
            val.mismatches.push_back(format_lasso(k, l) + " @" + std::to_string(i));
        }
  } else if (a.map == "ct2hybrid") {
    Hs f = parse_hs(text);
    Pt g = hs_ct_to_hybrid(f, !a.infinite);
    out = render(g);
    if (validated) {
      Pt gf = a.infinite ? hs_ct_to_hybrid(f, true) : g;
      ++val.checked;
      if (!is_well_formed(g)) val.mismatches.push_back("not well formed");
      Verdict vc = check_ct(EvalContext{k, Semantics::ct, n, 0, 0, a.c.jobs}, f);
      Verdict vh = check_hybrid(k, gf, n, true, a.c.jobs);
      if (vc.value != vh.value)
        val.mismatches.push_back(std::string("ct ") + verdict_name(vc.value) + ", hybrid " + verdict_name(vh.value));
    }
  } else if (a.map == "closure") {
    auto kind = closure_kind_from_name(a.kind);
    if (!kind) throw UsageError("unknown closure kind " + a.kind);
    Hs f = parse_hs(text);
    Hs g = closure_formula(f, *kind, a.letter);
    out = render(g);
    if (validated) val = validate_closure(f, g, *kind, a.alphabet, a.letter, n);
  } else if (a.map == "elim-past") {
    Pt f = parse_point(text);
    if (!is_pure_past(f)) throw UsageError("elim-past needs a pure past formula");
    Pt g = eliminate_initial_past(f);
    out = render(g);
    if (validated)
      for (const auto& l : lassos_upto(k, n)) {
        ++val.checked;
        if (eval_ltl(k, l, 0, f) != eval_ltl(k, l, 0, g)) val.mismatches.push_back(format_lasso(k, l));
      }
  } else if (a.map == "ctlstar2abe") {
    if (a.oracle.empty()) throw UsageError("ctlstar2abe needs --oracle");
    Pt f = parse_point(text);
    if (!is_finitary_ctlstar(f)) throw UsageError("not a finitary CTL* formula");
    AbeOptions opt;
    if (validated) opt.validate_len = n;
    Hs g = finitary_ctlstar_to_abe(f, be_oracle_from_file(a.oracle), opt);
    out = render(g);
    if (validated) {
      ++val.checked;
      Verdict vf = check_finitary_ctlstar(k, f, n, a.c.jobs);
      Verdict vs = check_st(EvalContext{k, Semantics::st, n, 0, 0, a.c.jobs}, g);
      if (vf.value != vs.value)
        val.mismatches.push_back(std::string("finitary ") + verdict_name(vf.value) + ", st " + verdict_name(vs.value));
    }
  } else {
    throw UsageError("unknown map " + a.map);
  }

  if (a.c.format == "json") {
    json j{{"map", a.map}, {"result", out}};
    if (validated)
      j["validation"] = {{"checked", val.checked}, {"mismatches", val.mismatches}, {"pass", val.mismatches.empty()}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << out << "\n";
    if (validated) {
      std::cout << "validation: " << (val.mismatches.empty() ? "pass" : "FAIL") << " (" << val.checked
                << " checked, " << val.mismatches.size() << " mismatches)\n";
      for (std::size_t i = 0; i < val.mismatches.size() && i < 10; ++i) std::cout << "  " << val.mismatches[i] << "\n";
    }
  }
  return validated && !val.mismatches.empty() ? 1 : 0;
}

// ---------------------------------------------------------- lang-member

struct MemberArgs {
  Common c;
  std::string word;
  std::vector<std::string> alphabet{"a", "b", "c"};
  std::string dialect = "be";
};

int cmd_member(const MemberArgs& a) {
  std::string text = formula_text(a.c);
  Word w = word_from_string(a.word);
  bool in = a.dialect == "be" ? lact_member(w, a.alphabet, parse_hs(text))
                              : lact_member(w, a.alphabet, parse_point(text));
  if (a.c.format == "json")
    std::cout << json{{"word", format_word(w)}, {"member", in}}.dump() << "\n";
  else
    std::cout << (in ? "member" : "not member") << "\n";
  return in ? 0 : 1;
}

// ----------------------------------------------------------- enumerate

struct EnumerateArgs {
  Common c;
  std::string what = "traces";
  bool initial = false;
  std::vector<std::string> alphabet{"a", "c"};
  std::vector<std::string> atoms{"p"};
};

int cmd_enumerate(const EnumerateArgs& a) {
  std::vector<std::string> lines;
  if (a.what == "traces") {
    KripkeStructure k = load_structure(a.c);
    for (const auto& t : enumerate_traces(k, a.c.bound, a.initial)) lines.push_back(format_trace(k, t));
  } else if (a.what == "lassos") {
    KripkeStructure k = load_structure(a.c);
    for (const auto& l : enumerate_lassos(k, a.c.bound)) lines.push_back(format_lasso(k, l));
  } else if (a.what == "balanced") {
    BalancedSpec spec;
    spec.atoms = a.atoms;
    spec.max_size = a.c.bound;
    for (const auto& f : enumerate_balanced(spec)) lines.push_back(render(f));
  } else if (a.what == "words") {
    for (const auto& w : all_words(a.alphabet, a.c.bound)) lines.push_back(format_word(w));
  } else if (a.what == "members") {
    std::string text = formula_text(a.c);
    for (const auto& w : lact_enumerate(a.alphabet, parse_hs(text), a.c.bound)) lines.push_back(format_word(w));
  } else {
    throw UsageError("unknown enumeration " + a.what);
  }
  if (a.c.format == "json")
    std::cout << json(lines).dump(2) << "\n";
  else
    for (const auto& l : lines) std::cout << l << "\n";
  return 0;
}

// --------------------------------------------------------------- suite

struct SuiteArgs {
  Common c;
  std::string name;
  int n = 2;
  bool bound_given = false;
};

int suite_vending(const SuiteArgs& a) {
  KripkeStructure k = builtin("vending");
  bool ok = true;
  json rows = json::array();
  for (const auto& p : vending_properties()) {
    Hs f = parse_hs(p.text);
    for (const auto& e : p.expectations) {
      int bound = a.bound_given ? a.c.bound : e.bound;
      auto t0 = std::chrono::steady_clock::now();
      Verdict v = check(EvalContext{k, e.semantics, bound, 0, 0, a.c.jobs}, f);
      double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      bool match = v.value == e.expected;
      ok = ok && match;
      std::string witness = v.trace ? format_trace(k, *v.trace) : v.lasso ? format_lasso(k, *v.lasso) : "";
      rows.push_back({{"property", p.name},
                      {"semantics", semantics_name(e.semantics)},
                      {"bound", bound},
                      {"expected", verdict_name(e.expected)},
                      {"computed", verdict_name(v.value)},
                      {"witness", witness},
                      {"seconds", secs}});
      if (a.c.format == "text") {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%-12s %-4s bound %-2d expected %-15s computed %-15s %s", p.name.c_str(),
                      semantics_name(e.semantics), bound, verdict_name(e.expected), verdict_name(v.value),
                      match ? "ok" : "MISMATCH");
        std::cout << buf << (witness.empty() ? "" : "  " + witness) << "\n";
      }
    }
  }
  if (a.c.format == "json") std::cout << json{{"suite", "vending"}, {"rows", rows}, {"pass", ok}}.dump(2) << "\n";
  return ok ? 0 : 1;
}

int suite_fig7(const SuiteArgs& a) {
  int bound = a.bound_given ? a.c.bound : 6;
  DistinguishingReport r = distinguishing_report(bound, a.c.jobs);
  KripkeStructure k1 = builtin("k1"), k2 = builtin("k2");
  auto wit = [](const KripkeStructure& k, const Verdict& v) { return v.trace ? format_trace(k, *v.trace) : std::string(); };
  bool ok = r.k1_st.value == VerdictValue::holds_in_bound && r.k2_st.value == VerdictValue::fails &&
            r.k2_st.trace && format_trace(k2, *r.k2_st.trace) == "s0' s1'" && r.k1_ct.value == r.k2_ct.value &&
            r.witnesses_recheck;
  if (a.c.format == "json") {
    json j{{"formula", render(r.formula)},
           {"k1_st", {verdict_name(r.k1_st.value), wit(k1, r.k1_st)}},
           {"k2_st", {verdict_name(r.k2_st.value), wit(k2, r.k2_st)}},
           {"k1_ct", {verdict_name(r.k1_ct.value), wit(k1, r.k1_ct)}},
           {"k2_ct", {verdict_name(r.k2_ct.value), wit(k2, r.k2_ct)}},
           {"witnesses_recheck", r.witnesses_recheck},
           {"pass", ok}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "formula: " << render(r.formula) << "\n";
    std::cout << "K1 st: " << verdict_name(r.k1_st.value) << " " << wit(k1, r.k1_st) << "\n";
    std::cout << "K2 st: " << verdict_name(r.k2_st.value) << " " << wit(k2, r.k2_st) << "\n";
    std::cout << "K1 ct: " << verdict_name(r.k1_ct.value) << " " << wit(k1, r.k1_ct) << "\n";
    std::cout << "K2 ct: " << verdict_name(r.k2_ct.value) << " " << wit(k2, r.k2_ct) << "\n";
    std::cout << "witness recheck: " << (r.witnesses_recheck ? "ok" : "FAILED") << "\n";
    std::cout << (ok ? "pass" : "MISMATCH") << "\n";
  }
  return ok ? 0 : 1;
}

int suite_fig9(const SuiteArgs& a) {
  int n = a.n;
  if (n < 1) throw UsageError("--n must be at least 1");
  KripkeStructure kn = builtin_kn(n), mn = builtin_mn(n);
  Pt fp = parse_point("F p");
  Verdict vk = check_ltl(kn, fp, 2 * n + 4, a.c.jobs);
  Verdict vm = check_ltl(mn, fp, 2 * n + 4, a.c.jobs);
  int max_size = std::min(n, 3);
  int bound = a.bound_given ? a.c.bound : 2 * n + 6;
  AgreementReport ag = agreement_check(n, max_size, bound, a.c.jobs);
  bool loop_s0 = vk.lasso && vk.lasso->loop == Trace{0};
  bool ok = vk.value == VerdictValue::fails && loop_s0 && vm.value == VerdictValue::holds_in_bound &&
            ag.discrepancies.empty();
  if (a.c.format == "json") {
    json j{{"n", n},
           {"kn_Fp", verdict_name(vk.value)},
           {"kn_witness", vk.lasso ? format_lasso(kn, *vk.lasso) : ""},
           {"mn_Fp", verdict_name(vm.value)},
           {"agreement", {{"max_size", max_size}, {"bound", bound}, {"formulas", ag.formulas}, {"pairs", ag.pairs},
                          {"discrepancies", ag.discrepancies}}},
           {"pass", ok}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "K" << n << " F p: " << verdict_name(vk.value);
    if (vk.lasso) std::cout << " " << format_lasso(kn, *vk.lasso);
    std::cout << "\nM" << n << " F p: " << verdict_name(vm.value) << "\n";
    std::cout << "agreement (max_size " << max_size << ", bound " << bound << "): " << ag.formulas << " formulas, "
              << ag.pairs << " pairs, " << ag.discrepancies.size() << " discrepancies\n";
    for (std::size_t i = 0; i < ag.discrepancies.size() && i < 10; ++i) std::cout << "  " << ag.discrepancies[i] << "\n";
    std::cout << (ok ? "pass" : "MISMATCH") << "\n";
  }
  return ok ? 0 : 1;
}

int cmd_suite(const SuiteArgs& a) {
  if (a.name == "vending") return suite_vending(a);
  if (a.name == "fig7") return suite_fig7(a);
  if (a.name == "fig9") return suite_fig9(a);
  throw UsageError("unknown suite " + a.name);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounded model checking for interval temporal logic"};
  app.require_subcommand(1);

  CheckArgs check_args;
  auto* check_cmd = app.add_subcommand("check", "check a formula on a structure");
  add_common(check_cmd, check_args.c, true);
  check_cmd->add_option("--semantics", check_args.semantics, "st, ct, lin, ltl, ctlstar, finitary, hybrid")
      ->capture_default_str()
      ->check(CLI::IsMember({"st", "ct", "lin", "ltl", "ctlstar", "finitary", "hybrid"}));
  check_cmd->add_option("--universe", check_args.universe, "st/ct: max trace length inside modalities");
  check_cmd->add_option("--horizon", check_args.horizon, "lin: cut interval ends at this position (0 = exact)");
  check_cmd->add_flag("--finitary-paths", check_args.finitary_paths, "hybrid: quantify over finite traces");
  check_cmd->add_option("--trace", check_args.trace, "evaluate on this trace (or lasso stem) instead");
  check_cmd->add_option("--loop", check_args.loop, "lasso loop for --trace");

  TranslateArgs tr;
  auto* tr_cmd = app.add_subcommand("translate", "map a formula into another logic");
  add_common(tr_cmd, tr.c, true);
  tr_cmd->add_option("--map", tr.map, "hs2fo, ltl2ab, ct2hybrid, closure, elim-past, ctlstar2abe")
      ->required()
      ->check(CLI::IsMember({"hs2fo", "ltl2ab", "ct2hybrid", "closure", "elim-past", "ctlstar2abe"}));
  tr_cmd->add_option("--kind", tr.kind, "closure kind")->capture_default_str();
  tr_cmd->add_option("--letter", tr.letter, "closure separator letter")->capture_default_str();
  tr_cmd->add_option("--alphabet", tr.alphabet, "closure base alphabet")->delimiter(',');
  tr_cmd->add_option("--oracle", tr.oracle, "LTL -> BE table (JSON)");
  tr_cmd->add_flag("--infinite", tr.infinite, "ct2hybrid: E instead of E_f");
  tr_cmd->add_option("--validate", tr.validate, "run the brute-force agreement oracle up to N");

  MemberArgs mem;
  auto* mem_cmd = app.add_subcommand("lang-member", "finite-word membership under the action semantics");
  add_common(mem_cmd, mem.c, false);
  mem_cmd->add_option("--word", mem.word, "word, e.g. aab or \"{p} {}\"")->required();
  mem_cmd->add_option("--alphabet", mem.alphabet, "letters")->delimiter(',');
  mem_cmd->add_option("--dialect", mem.dialect, "be or ltl")->capture_default_str()->check(CLI::IsMember({"be", "ltl"}));

  EnumerateArgs en;
  auto* en_cmd = app.add_subcommand("enumerate", "list traces, lassos, balanced formulas, words or members");
  add_common(en_cmd, en.c, true);
  en_cmd->add_option("what", en.what, "traces, lassos, balanced, words, members")
      ->check(CLI::IsMember({"traces", "lassos", "balanced", "words", "members"}));
  en_cmd->add_flag("--initial", en.initial, "traces: only from the initial state");
  en_cmd->add_option("--alphabet", en.alphabet, "letters")->delimiter(',');
  en_cmd->add_option("--atoms", en.atoms, "balanced: atoms")->delimiter(',');

  SuiteArgs su;
  auto* su_cmd = app.add_subcommand("suite", "replay a verdict table");
  add_common(su_cmd, su.c, false);
  su_cmd->add_option("name", su.name, "vending, fig7, fig9")->required()->check(CLI::IsMember({"vending", "fig7", "fig9"}));
  su_cmd->add_option("--n", su.n, "fig9: family index")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*check_cmd) return cmd_check(check_args);
    if (*tr_cmd) return cmd_translate(tr);
    if (*mem_cmd) return cmd_member(mem);
    if (*en_cmd) return cmd_enumerate(en);
    if (*su_cmd) {
      su.bound_given = su_cmd->count("--bound") > 0;
      return cmd_suite(su);
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
