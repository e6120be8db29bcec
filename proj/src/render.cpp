#include "hsmc/formula.hpp"

namespace hsmc {

namespace {

// Precedence levels shared by the three printers.
constexpr int kBind = 0, kImplies = 1, kOr = 2, kAnd = 3, kTemporal = 4, kUnary = 5, kPrimary = 6;

std::string wrap(const std::string& s, bool paren) { return paren ? "(" + s + ")" : s; }

int hs_level(const Hs& f) {
  switch (f->kind) {
    case HsKind::Implies: return kImplies;
    case HsKind::Or: return kOr;
    case HsKind::And: return kAnd;
    case HsKind::Not:
    case HsKind::Modal: return kUnary;
    default: return kPrimary;
  }
}

std::string hs_at(const Hs& f, int min_level);

std::string hs_plain(const Hs& f) {
  switch (f->kind) {
    case HsKind::Atom: return f->name;
    case HsKind::True: return "true";
    case HsKind::False: return "false";
    case HsKind::Not: return "!" + hs_at(f->a, kUnary);
    case HsKind::Modal: {
      std::string r = rel_name(f->rel);
      return (f->universal ? "[" + r + "] " : "<" + r + "> ") + hs_at(f->a, kUnary);
    }
    case HsKind::And: return hs_at(f->a, kAnd) + " & " + hs_at(f->b, kAnd + 1);
    case HsKind::Or: return hs_at(f->a, kOr) + " | " + hs_at(f->b, kOr + 1);
    case HsKind::Implies: return hs_at(f->a, kImplies + 1) + " -> " + hs_at(f->b, kImplies);
  }
  return "?";
}

std::string hs_at(const Hs& f, int min_level) { return wrap(hs_plain(f), hs_level(f) < min_level); }

int pt_level(const Pt& f) {
  switch (f->kind) {
    case PtKind::Bind: return kBind;
    case PtKind::Implies: return kImplies;
    case PtKind::Or: return kOr;
    case PtKind::And: return kAnd;
    case PtKind::U:
    case PtKind::S: return kTemporal;
    case PtKind::Not:
    case PtKind::X:
    case PtKind::F:
    case PtKind::G:
    case PtKind::Y:
    case PtKind::O:
    case PtKind::H: return kUnary;
    default: return kPrimary;
  }
}

std::string pt_at(const Pt& f, int min_level);

std::string pt_plain(const Pt& f) {
  switch (f->kind) {
    case PtKind::Atom:
    case PtKind::Var: return f->name;
    case PtKind::True: return "true";
    case PtKind::False: return "false";
    case PtKind::Not: return "!" + pt_at(f->a, kUnary);
    case PtKind::X: return "X " + pt_at(f->a, kUnary);
    case PtKind::F: return "F " + pt_at(f->a, kUnary);
    case PtKind::G: return "G " + pt_at(f->a, kUnary);
    case PtKind::Y: return "Y " + pt_at(f->a, kUnary);
    case PtKind::O: return "O " + pt_at(f->a, kUnary);
    case PtKind::H: return "H " + pt_at(f->a, kUnary);
    case PtKind::U: return pt_at(f->a, kTemporal + 1) + " U " + pt_at(f->b, kTemporal);
    case PtKind::S: return pt_at(f->a, kTemporal + 1) + " S " + pt_at(f->b, kTemporal);
    case PtKind::And: return pt_at(f->a, kAnd) + " & " + pt_at(f->b, kAnd + 1);
    case PtKind::Or: return pt_at(f->a, kOr) + " | " + pt_at(f->b, kOr + 1);
    case PtKind::Implies: return pt_at(f->a, kImplies + 1) + " -> " + pt_at(f->b, kImplies);
    case PtKind::Exists: return "E(" + pt_plain(f->a) + ")";
    case PtKind::Forall: return "A(" + pt_plain(f->a) + ")";
    case PtKind::ExistsF: return "Ef(" + pt_plain(f->a) + ")";
    case PtKind::ForallF: return "Af(" + pt_plain(f->a) + ")";
    case PtKind::Bind: return "down " + f->name + " . " + pt_plain(f->a);
  }
  return "?";
}

std::string pt_at(const Pt& f, int min_level) { return wrap(pt_plain(f), pt_level(f) < min_level); }

int fo_level(const Fo& f) {
  switch (f->kind) {
    case FoKind::Exists:
    case FoKind::Forall: return kBind;
    case FoKind::Implies: return kImplies;
    case FoKind::Or: return kOr;
    case FoKind::And: return kAnd;
    case FoKind::Not: return kUnary;
    default: return kPrimary;
  }
}

std::string fo_at(const Fo& f, int min_level);

std::string fo_plain(const Fo& f) {
  switch (f->kind) {
    case FoKind::True: return "true";
    case FoKind::Pred: return f->name + "(" + f->x + ")";
    case FoKind::Le: return f->x + " <= " + f->y;
    case FoKind::Lt: return f->x + " < " + f->y;
    case FoKind::Not: return "!" + fo_at(f->a, kUnary);
    case FoKind::And: return fo_at(f->a, kAnd) + " & " + fo_at(f->b, kAnd + 1);
    case FoKind::Or: return fo_at(f->a, kOr) + " | " + fo_at(f->b, kOr + 1);
    case FoKind::Implies: return fo_at(f->a, kImplies + 1) + " -> " + fo_at(f->b, kImplies);
    case FoKind::Exists: return "exists " + f->name + " . " + fo_plain(f->a);
    case FoKind::Forall: return "forall " + f->name + " . " + fo_plain(f->a);
  }
  return "?";
}

std::string fo_at(const Fo& f, int min_level) { return wrap(fo_plain(f), fo_level(f) < min_level); }

}  // namespace

std::string render(const Hs& f) { return hs_plain(f); }
std::string render(const Pt& f) { return pt_plain(f); }
std::string render(const Fo& f) { return fo_plain(f); }

}  // namespace hsmc
