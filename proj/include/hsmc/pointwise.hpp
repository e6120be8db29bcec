#pragma once

// Point-based evaluators: LTL with past on lassos, CTL* and finitary CTL*,
// hybrid CTL* with linear past and binders, FO over paths, and the
// action-based finite-word semantics of LTL and BE.

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "hsmc/formula.hpp"
#include "hsmc/hs_eval.hpp"
#include "hsmc/kripke.hpp"

namespace hsmc {

// Variable -> position. Sentences are checked under g0, which maps every
// variable to 0.
using Valuation = std::map<std::string, long long>;

// Exact truth at position i of stem.loop^omega. f may use past operators
// but no quantifiers or variables (std::invalid_argument otherwise).
bool eval_ltl(const KripkeStructure& k, const Lasso& pi, long long i, const Pt& f);
// Truth at every position 0..n-1.
std::vector<bool> eval_ltl_prefix(const KripkeStructure& k, const Lasso& pi, const Pt& f, long long n);
// fails iff some initial lasso with |stem|+|loop| <= bound falsifies f at 0.
Verdict check_ltl(const KripkeStructure& k, const Pt& f, int bound, int jobs = 1);

// E_f ranges over traces from rho(i) with length <= bound, evaluated at 0.
bool eval_finitary_ctlstar(const KripkeStructure& k, const Trace& rho, long long i, const Pt& f, int bound);
// fails iff some initial trace of length <= bound falsifies f at 0.
Verdict check_finitary_ctlstar(const KripkeStructure& k, const Pt& f, int bound, int jobs = 1);

// E ranges over initial lassos of size <= bound that agree with pi on [0,i].
bool eval_ctlstar(const KripkeStructure& k, const Lasso& pi, long long i, const Pt& f, int bound);
Verdict check_ctlstar(const KripkeStructure& k, const Pt& f, int bound, int jobs = 1);

// Memoryful hybrid semantics on an infinite path. Throws on a free variable
// of f missing from g.
bool eval_hybrid(const KripkeStructure& k, const Lasso& pi, const Valuation& g, long long i, const Pt& f,
                 int bound);
// Finitary variant: E_f ranges over initial traces of length <= bound that
// agree with rho on [0,i].
bool eval_hybrid_finite(const KripkeStructure& k, const Trace& rho, const Valuation& g, long long i,
                        const Pt& f, int bound);
// Sentence check with g0; over initial traces when finitary, else initial lassos.
Verdict check_hybrid(const KripkeStructure& k, const Pt& f, int bound, bool finitary, int jobs = 1);

// First-order logic over positions 0..horizon of a lasso.
class FoEvaluator {
 public:
  FoEvaluator(const KripkeStructure& k, const Lasso& pi, long long horizon);
  ~FoEvaluator();
  FoEvaluator(FoEvaluator&&) noexcept;
  bool eval(const Valuation& g, const Fo& f);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Throws std::invalid_argument if a free variable is unbound or a value
// exceeds the horizon.
bool eval_fo(const KripkeStructure& k, const Lasso& pi, const Valuation& g, const Fo& f, long long horizon);

// ------------------------------------------------------ finite words

using Word = std::vector<std::string>;

// "aab" -> {a,a,b}; whitespace-separated input keeps whole tokens.
Word word_from_string(std::string_view s);
std::string format_word(const Word& w);

enum class ActDialect { ltl_finite, be_action };

// Throws std::invalid_argument on a letter outside the alphabet, or on a
// modality other than B, E, G.
bool lact_member(const Word& w, const std::vector<std::string>& alphabet, const Hs& f);
bool lact_member(const Word& w, const std::vector<std::string>& alphabet, const Pt& f);
// Dispatches on the dialect: Hs for be_action, Pt for ltl_finite.
bool lact_member(const Word& w, const std::vector<std::string>& alphabet, const Formula& f, ActDialect d);

// All members of length 1..max_len in length-lexicographic order (by alphabet position).
std::vector<Word> lact_enumerate(const std::vector<std::string>& alphabet, const Hs& f, int max_len);
std::vector<Word> lact_enumerate(const std::vector<std::string>& alphabet, const Pt& f, int max_len);
// Every word of length 1..max_len, same order.
std::vector<Word> all_words(const std::vector<std::string>& alphabet, int max_len);

}  // namespace hsmc
