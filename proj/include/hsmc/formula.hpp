#pragma once

// Formula ASTs for the three dialects used throughout the library:
// HS interval formulas, point formulas (LTL, past LTL, CTL*, finitary
// CTL*, hybrid CTL*) and first-order formulas over paths.
//
// Nodes are immutable and shared; builders may reuse subtrees, so a
// formula is a DAG in memory but always denotes a tree.

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace hsmc {

// ---------------------------------------------------------------- HS

enum class Rel { A, Abar, B, Bbar, E, Ebar, L, Lbar, D, Dbar, O, Obar, G };

const char* rel_name(Rel r);
std::optional<Rel> rel_from_name(std::string_view s);
// B<->E, Bbar<->Ebar, A<->Abar, L<->Lbar, O<->Obar; D, Dbar, G fixed.
Rel rel_mirror(Rel r);
bool is_core(Rel r);  // B, Bbar, E, Ebar

enum class HsKind { Atom, True, False, Not, And, Or, Implies, Modal };

struct HsNode;
using Hs = std::shared_ptr<const HsNode>;

struct HsNode {
  HsKind kind;
  std::string name;     // atom
  Rel rel = Rel::B;     // modal
  bool universal = false;
  Hs a, b;
};

namespace hs {
Hs atom(std::string name);
Hs top();
Hs bot();
Hs neg(Hs f);
Hs conj(Hs f, Hs g);
Hs disj(Hs f, Hs g);
Hs impl(Hs f, Hs g);
Hs dia(Rel r, Hs f);
Hs box(Rel r, Hs f);
Hs conj_all(const std::vector<Hs>& fs);  // empty -> true
Hs disj_all(const std::vector<Hs>& fs);  // empty -> false
}  // namespace hs

bool equal(const Hs& f, const Hs& g);
std::size_t formula_size(const Hs& f);
std::size_t modal_depth(const Hs& f);
std::set<Rel> relations(const Hs& f);
std::set<std::string> atoms(const Hs& f);

// (<B>^{n-1} true) & ([B]^n false); size 2n+2.
Hs build_length(int n);
// Rewrites every modality into B, Bbar, E, Ebar.
Hs expand_derived(const Hs& f);
// One-step expansion of <r> child (or [r] child) into core modalities.
Hs expand_modal(Rel r, bool universal, const Hs& child);
// Swaps the roles of begin and end everywhere.
Hs mirror(const Hs& f);
// Replaces atoms by formulas; atoms missing from the map are kept.
Hs substitute_atoms(const Hs& f, const std::vector<std::pair<std::string, Hs>>& map);

std::string render(const Hs& f);

// ------------------------------------------------------------- point

enum class PtKind {
  Atom, True, False, Not, And, Or, Implies,
  X, U, F, G,          // future
  Y, S, O, H,          // past: yesterday, since, once, historically
  Exists, Forall, ExistsF, ForallF,
  Var, Bind
};

struct PtNode;
using Pt = std::shared_ptr<const PtNode>;

struct PtNode {
  PtKind kind;
  std::string name;  // atom, variable, or bound variable of Bind
  Pt a, b;
};

namespace pt {
Pt atom(std::string name);
Pt top();
Pt bot();
Pt neg(Pt f);
Pt conj(Pt f, Pt g);
Pt disj(Pt f, Pt g);
Pt impl(Pt f, Pt g);
Pt next(Pt f);
Pt until(Pt f, Pt g);
Pt eventually(Pt f);
Pt always(Pt f);
Pt yesterday(Pt f);
Pt since(Pt f, Pt g);
Pt once(Pt f);
Pt historically(Pt f);
Pt exists(Pt f);
Pt forall(Pt f);
Pt exists_f(Pt f);
Pt forall_f(Pt f);
Pt var(std::string name);
Pt bind(std::string name, Pt f);
Pt conj_all(const std::vector<Pt>& fs);
Pt disj_all(const std::vector<Pt>& fs);
}  // namespace pt

bool equal(const Pt& f, const Pt& g);
std::size_t formula_size(const Pt& f);
std::size_t temporal_depth(const Pt& f);
std::set<std::string> atoms(const Pt& f);
std::set<std::string> free_vars(const Pt& f);
bool is_future_op(PtKind k);
bool is_past_op(PtKind k);
bool is_quantifier(PtKind k);
bool is_pure_ltl(const Pt& f);     // no quantifiers, past, variables
bool is_ltl_with_past(const Pt& f);  // no quantifiers, variables
bool is_pure_past(const Pt& f);    // no future, no quantifiers, no variables
bool is_ctlstar(const Pt& f);      // no past, variables, finitary quantifiers
bool is_finitary_ctlstar(const Pt& f);
// F, G -> U; O, H -> S.
Pt expand_shorthands(const Pt& f);

std::string render(const Pt& f);

// ---------------------------------------------------------------- FO

enum class FoKind { True, Pred, Le, Lt, Not, And, Or, Implies, Exists, Forall };

struct FoNode;
using Fo = std::shared_ptr<const FoNode>;

struct FoNode {
  FoKind kind;
  std::string name;  // predicate name, or the bound variable
  std::string x, y;  // argument variables
  Fo a, b;
};

namespace fo {
Fo top();
Fo pred(std::string p, std::string x);
Fo le(std::string x, std::string y);
Fo lt(std::string x, std::string y);
Fo neg(Fo f);
Fo conj(Fo f, Fo g);
Fo disj(Fo f, Fo g);
Fo impl(Fo f, Fo g);
Fo exists(std::string v, Fo f);
Fo forall(std::string v, Fo f);
}  // namespace fo

bool equal(const Fo& f, const Fo& g);
std::size_t formula_size(const Fo& f);
std::set<std::string> free_vars(const Fo& f);
std::size_t variable_count(const Fo& f);

std::string render(const Fo& f);

// ------------------------------------------------------------ parsing

enum class Dialect { hs, point, fo };

struct ParseError : std::runtime_error {
  int line, column;
  ParseError(const std::string& msg, int line, int column);
};

Hs parse_hs(std::string_view text);
Pt parse_point(std::string_view text, const std::vector<std::string>& free = {});
Fo parse_fo(std::string_view text, const std::vector<std::string>& free = {});

using Formula = std::variant<Hs, Pt, Fo>;
Formula parse(std::string_view text, Dialect d);
std::string render(const Formula& f);
std::size_t formula_size(const Formula& f);

}  // namespace hsmc
