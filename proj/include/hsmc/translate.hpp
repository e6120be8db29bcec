#pragma once

// Formula mappings between the logics: HS to FO, LTL to AB, the BE
// closure constructions over finite words, finitary CTL* to ABE, HS under
// the computation-tree semantics to hybrid CTL*, and removal of past
// operators evaluated at the initial position.

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hsmc/formula.hpp"
#include "hsmc/pointwise.hpp"

namespace hsmc {

struct TranslationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// ------------------------------------------------------------ HS -> FO

struct FoTranslation {
  Fo open;      // free variables x and y
  Fo sentence;  // exists x ((forall z. z >= x) & forall y. open)
};

// f must only use B, E, Bbar, Ebar (run expand_derived first otherwise).
FoTranslation hs_to_fo(const Hs& f);

// ----------------------------------------------------------- LTL -> AB

// Pure future LTL; F and G are rewritten into U first.
Hs ltl_to_ab(const Pt& f);

// ------------------------------------------------- BE closure formulas

// Languages built from L over Gamma and a fresh letter b:
// bL, Lb, Sigma*bL, Sigma*b(L+eps), LbSigma*, (L+eps)bSigma*, bLb.
enum class ClosureKind { bL, Lb, sigma_bL, sigma_bL_eps, Lb_sigma, L_eps_b_sigma, bLb };
const char* closure_kind_name(ClosureKind k);
std::optional<ClosureKind> closure_kind_from_name(std::string_view s);
const std::vector<ClosureKind>& all_closure_kinds();

// The BE formula whose finite-word language is the chosen closure of
// L_act(f). f must only use B and E and must not mention b.
Hs closure_formula(const Hs& f, ClosureKind kind, const std::string& b);
// The maps used for bL and bLb, exposed for the correspondence tests.
Hs closure_hb(const Hs& f, const std::string& b);
Hs closure_kb(const Hs& f, const std::string& b);
// b Gamma* b with no inner b.
Hs b_block(const std::string& b);

// Each letter d of Delta comes with a BE formula over Sigma defining
// b Lhat_d b, where Lhat_d = { u in Gamma* : block u b maps to d }.
struct LetterTheory {
  std::vector<std::pair<std::string, Hs>> letters;
  const Hs* find(const std::string& d) const;
};

// Separating word (of the form b u b) on which two letter formulas both hold.
std::optional<Word> theory_overlap(const LetterTheory& t, const std::vector<std::string>& gamma,
                                   const std::string& b, int max_len);

// BE formula over Sigma defining Gamma* b h^-1(L_act(f)) Gamma*, f over Delta.
Hs closure_substitute(const Hs& f, const LetterTheory& theory, const std::string& b);

// ------------------------------------------ finitary CTL* -> ABE

// Letters of Sigma = 2^AP are letter-set atoms "{p,q}" with sorted names.
std::string letter_name(const std::vector<std::string>& members);
std::vector<std::string> powerset_letters(const std::vector<std::string>& ap);

// Finite-word LTL over the propositions ap (a pure future formula) ->
// BE formula over powerset_letters(ap) with the same language, or nullopt.
using BeOracle = std::function<std::optional<Hs>(const Pt& ltl, const std::vector<std::string>& ap)>;

// Table keyed by the rendered LTL formula. JSON document:
// {"entries": [{"ltl": "...", "be": "..."}]}; parse errors are reported.
BeOracle be_oracle_from_json(const std::string& document);
BeOracle be_oracle_from_file(const std::string& path);

// LTL over ap read as an action formula over powerset_letters(ap).
Pt ltl_over_letters(const Pt& f, const std::vector<std::string>& ap);

// Maximal E_f subformulas (A_f is read as !E_f!), in first-occurrence order.
std::vector<Pt> maximal_path_formulas(const Pt& f);

// Letter substitution for letter P over propositions ap, given the ABE
// translations of the lifted path formulas (one per entry of lifted).
Hs letter_formula(const std::vector<std::string>& P, const std::vector<std::string>& ap,
                  const std::vector<std::string>& lifted, const std::vector<Hs>& lifted_abe);

struct AbeOptions {
  int validate_len = 5;  // oracle answers are checked on words up to this length
};

// Throws TranslationError when the oracle has no answer or a wrong one
// (the message names a separating word).
Hs finitary_ctlstar_to_abe(const Pt& f, const BeOracle& oracle, const AbeOptions& opt = {});

// --------------------------------------------------- HS_ct -> hybrid

// down x . G f(phi, x); E_f instead of E when finitary.
Pt hs_ct_to_hybrid(const Hs& f, bool finitary);
bool is_well_formed(const Pt& f);

// Y -> false, a S b -> b, homomorphic elsewhere. Exact at position 0 for
// pure past input.
Pt eliminate_initial_past(const Pt& f);

}  // namespace hsmc
