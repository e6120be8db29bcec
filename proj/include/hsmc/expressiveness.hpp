#pragma once

// Replays of the separation results: trace profiles and h-compatibility on
// the K_n / M_n families, balanced formula enumeration, bounded agreement
// checks, the K1/K2 distinguishing formula and the vending machine table.

#include <functional>
#include <string>
#include <vector>

#include "hsmc/formula.hpp"
#include "hsmc/hs_eval.hpp"
#include "hsmc/kripke.hpp"

namespace hsmc {

// ---------------------------------------------------- K_n profiles

// Lengths count states. d_p: states on the shortest trace from lst to
// s_{2n}, 0 when the trace ends in t.
struct TraceProfile {
  int n_empty = 0;
  int n_p = 0;
  int d_p = 0;
  bool operator==(const TraceProfile&) const = default;
};

// Throws std::invalid_argument if t is not a trace of kn(n).
TraceProfile profile(int n, const Trace& t);

// The three h-compatibility conditions on profiles.
bool h_compatible(const TraceProfile& a, const TraceProfile& b, int h);
// Throws std::invalid_argument unless 1 <= h <= n.
bool h_compatible(int n, const Trace& t1, const Trace& t2, int h);

using CompatRelation = std::function<bool(const TraceProfile&, const TraceProfile&, int h)>;

struct LemmaViolation {
  int property = 0;  // 1 prefix, 2 forward extension, 3 suffix, 4 backward extension
  Trace rho, rho2;
  Trace sigma;  // the prefix, suffix or extended trace with no match
};

struct LemmaReport {
  long long pairs = 0;
  std::vector<LemmaViolation> violations;
};

// Checks the four prefix/extension/suffix matching properties for every
// pair of traces of kn(n) with length <= bound related by rel at h.
// Matching extensions may reach 2*bound + 2n + 2 states.
LemmaReport verify_compatibility_lemma(int n, int h, int bound, const CompatRelation& rel = {});

// ------------------------------------------------ balanced formulas

struct BalancedSpec {
  std::vector<std::string> atoms{"p"};
  std::vector<Rel> relations{Rel::B, Rel::Bbar, Rel::E, Rel::Ebar};
  int max_size = 1;
};

// Formulas built from atoms, true, !, &, <R> in which every <B> and <Bbar>
// argument is a conjunction of two equal-size formulas. Ordered by size,
// then by construction (atoms, true, !, &, modalities).
std::vector<Hs> enumerate_balanced(const BalancedSpec& spec);
bool is_balanced(const Hs& f);

struct AgreementReport {
  long long formulas = 0;
  long long pairs = 0;  // trace pairs compared, over all formulas
  std::vector<std::string> discrepancies;
};

// (a) R(|f|)-compatible traces of kn(n) (length <= bound) agree on every
// balanced f with |f| <= max_size; (b) check_st on kn(n) and mn(n) agree.
// Modal domains reach bound + max_size*(2n+2) states.
AgreementReport agreement_check(int n, int max_size, int bound, int jobs = 1);

// ------------------------------------------------ K1 / K2 under st, ct

struct DistinguishingReport {
  Hs formula;
  Verdict k1_st, k2_st, k1_ct, k2_ct;
  bool witnesses_recheck = true;  // every failing witness evaluates to false again
};

Hs distinguishing_formula();
DistinguishingReport distinguishing_report(int bound = 6, int jobs = 1);

// ------------------------------------------------ vending machine

struct Expectation {
  Semantics semantics;
  int bound;
  VerdictValue expected;
};

struct VendingProperty {
  std::string name;
  std::string text;  // HS syntax
  std::vector<Expectation> expectations;
};

const std::vector<VendingProperty>& vending_properties();

}  // namespace hsmc
