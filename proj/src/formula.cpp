#include "hsmc/formula.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

namespace hsmc {

namespace {

struct RelInfo {
  Rel rel;
  const char* name;
};

constexpr RelInfo kRels[] = {
    {Rel::A, "A"},     {Rel::Abar, "Abar"}, {Rel::B, "B"},   {Rel::Bbar, "Bbar"},
    {Rel::E, "E"},     {Rel::Ebar, "Ebar"}, {Rel::L, "L"},   {Rel::Lbar, "Lbar"},
    {Rel::D, "D"},     {Rel::Dbar, "Dbar"}, {Rel::O, "O"},   {Rel::Obar, "Obar"},
    {Rel::G, "G"},
};

Hs make_hs(HsKind k, std::string name, Rel r, bool u, Hs a, Hs b) {
  return std::make_shared<const HsNode>(HsNode{k, std::move(name), r, u, std::move(a), std::move(b)});
}

Pt make_pt(PtKind k, std::string name, Pt a, Pt b) {
  return std::make_shared<const PtNode>(PtNode{k, std::move(name), std::move(a), std::move(b)});
}

Fo make_fo(FoKind k, std::string name, std::string x, std::string y, Fo a, Fo b) {
  return std::make_shared<const FoNode>(
      FoNode{k, std::move(name), std::move(x), std::move(y), std::move(a), std::move(b)});
}

}  // namespace

const char* rel_name(Rel r) {
  for (const auto& i : kRels)
    if (i.rel == r) return i.name;
  return "?";
}

std::optional<Rel> rel_from_name(std::string_view s) {
  for (const auto& i : kRels)
    if (s == i.name) return i.rel;
  return std::nullopt;
}

Rel rel_mirror(Rel r) {
  switch (r) {
    case Rel::A: return Rel::Abar;
    case Rel::Abar: return Rel::A;
    case Rel::B: return Rel::E;
    case Rel::E: return Rel::B;
    case Rel::Bbar: return Rel::Ebar;
    case Rel::Ebar: return Rel::Bbar;
    case Rel::L: return Rel::Lbar;
    case Rel::Lbar: return Rel::L;
    case Rel::O: return Rel::Obar;
    case Rel::Obar: return Rel::O;
    default: return r;
  }
}

bool is_core(Rel r) { return r == Rel::B || r == Rel::Bbar || r == Rel::E || r == Rel::Ebar; }

// ------------------------------------------------------------ HS builders

namespace hs {
Hs atom(std::string name) {
  if (name.empty()) throw std::invalid_argument("empty atom name");
  return make_hs(HsKind::Atom, std::move(name), Rel::B, false, nullptr, nullptr);
}
Hs top() {
  static const Hs t = make_hs(HsKind::True, "", Rel::B, false, nullptr, nullptr);
  return t;
}
Hs bot() {
  static const Hs f = make_hs(HsKind::False, "", Rel::B, false, nullptr, nullptr);
  return f;
}
Hs neg(Hs f) { return make_hs(HsKind::Not, "", Rel::B, false, std::move(f), nullptr); }
Hs conj(Hs f, Hs g) { return make_hs(HsKind::And, "", Rel::B, false, std::move(f), std::move(g)); }
Hs disj(Hs f, Hs g) { return make_hs(HsKind::Or, "", Rel::B, false, std::move(f), std::move(g)); }
Hs impl(Hs f, Hs g) { return make_hs(HsKind::Implies, "", Rel::B, false, std::move(f), std::move(g)); }
Hs dia(Rel r, Hs f) { return make_hs(HsKind::Modal, "", r, false, std::move(f), nullptr); }
Hs box(Rel r, Hs f) { return make_hs(HsKind::Modal, "", r, true, std::move(f), nullptr); }
Hs conj_all(const std::vector<Hs>& fs) {
  if (fs.empty()) return top();
  Hs r = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) r = conj(r, fs[i]);
  return r;
}
Hs disj_all(const std::vector<Hs>& fs) {
  if (fs.empty()) return bot();
  Hs r = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) r = disj(r, fs[i]);
  return r;
}
}  // namespace hs

bool equal(const Hs& f, const Hs& g) {
  if (f == g) return true;
  if (!f || !g) return false;
  if (f->kind != g->kind) return false;
  switch (f->kind) {
    case HsKind::Atom: return f->name == g->name;
    case HsKind::True:
    case HsKind::False: return true;
    case HsKind::Modal:
      return f->rel == g->rel && f->universal == g->universal && equal(f->a, g->a);
    case HsKind::Not: return equal(f->a, g->a);
    default: return equal(f->a, g->a) && equal(f->b, g->b);
  }
}

namespace {
template <class N, class F>
std::size_t memo_size(const std::shared_ptr<const N>& f, std::unordered_map<const N*, std::size_t>& m,
                      F&& self) {
  auto it = m.find(f.get());
  if (it != m.end()) return it->second;
  std::size_t s = self(f);
  m.emplace(f.get(), s);
  return s;
}
}  // namespace

std::size_t formula_size(const Hs& f) {
  std::unordered_map<const HsNode*, std::size_t> memo;
  std::function<std::size_t(const Hs&)> rec = [&](const Hs& g) -> std::size_t {
    return memo_size(g, memo, [&](const Hs& h) -> std::size_t {
      std::size_t s = 1;
      if (h->a) s += rec(h->a);
      if (h->b) s += rec(h->b);
      return s;
    });
  };
  return rec(f);
}

std::size_t modal_depth(const Hs& f) {
  std::unordered_map<const HsNode*, std::size_t> memo;
  std::function<std::size_t(const Hs&)> rec = [&](const Hs& g) -> std::size_t {
    return memo_size(g, memo, [&](const Hs& h) -> std::size_t {
      std::size_t d = 0;
      if (h->a) d = std::max(d, rec(h->a));
      if (h->b) d = std::max(d, rec(h->b));
      return h->kind == HsKind::Modal ? d + 1 : d;
    });
  };
  return rec(f);
}

std::set<Rel> relations(const Hs& f) {
  std::set<Rel> out;
  std::unordered_map<const HsNode*, bool> seen;
  std::function<void(const Hs&)> rec = [&](const Hs& g) {
    if (!g || seen[g.get()]) return;
    seen[g.get()] = true;
    if (g->kind == HsKind::Modal) out.insert(g->rel);
    rec(g->a);
    rec(g->b);
  };
  rec(f);
  return out;
}

std::set<std::string> atoms(const Hs& f) {
  std::set<std::string> out;
  std::unordered_map<const HsNode*, bool> seen;
  std::function<void(const Hs&)> rec = [&](const Hs& g) {
    if (!g || seen[g.get()]) return;
    seen[g.get()] = true;
    if (g->kind == HsKind::Atom) out.insert(g->name);
    rec(g->a);
    rec(g->b);
  };
  rec(f);
  return out;
}

Hs build_length(int n) {
  if (n < 1) throw std::invalid_argument("length_n needs n >= 1");
  Hs left = hs::top();
  for (int i = 0; i < n - 1; ++i) left = hs::dia(Rel::B, left);
  Hs right = hs::bot();
  for (int i = 0; i < n; ++i) right = hs::box(Rel::B, right);
  return hs::conj(left, right);
}

namespace {

Hs longer_than_one() { return hs::dia(Rel::B, hs::top()); }

// <A>phi: reach the point interval at the right end, then stay or extend.
Hs expand_meets(const Hs& phi) {
  Hs at_end = hs::conj(hs::box(Rel::E, hs::bot()), hs::disj(phi, hs::dia(Rel::Bbar, phi)));
  return hs::disj(at_end, hs::dia(Rel::E, at_end));
}

Hs expand_met_by(const Hs& phi) {
  Hs at_start = hs::conj(hs::box(Rel::B, hs::bot()), hs::disj(phi, hs::dia(Rel::Ebar, phi)));
  return hs::disj(at_start, hs::dia(Rel::B, at_start));
}

// Existential form of <r>phi, phi already expanded; result only uses core relations.
Hs expand_exists(Rel r, const Hs& phi) {
  switch (r) {
    case Rel::B:
    case Rel::Bbar:
    case Rel::E:
    case Rel::Ebar: return hs::dia(r, phi);
    case Rel::A: return expand_meets(phi);
    case Rel::Abar: return expand_met_by(phi);
    case Rel::L: return expand_meets(hs::conj(longer_than_one(), expand_meets(phi)));
    case Rel::Lbar: return expand_met_by(hs::conj(longer_than_one(), expand_met_by(phi)));
    case Rel::D: return hs::dia(Rel::B, hs::dia(Rel::E, phi));
    case Rel::Dbar: return hs::dia(Rel::Ebar, hs::dia(Rel::Bbar, phi));
    case Rel::O: return hs::dia(Rel::E, hs::conj(longer_than_one(), hs::dia(Rel::Bbar, phi)));
    case Rel::Obar: return hs::dia(Rel::B, hs::conj(longer_than_one(), hs::dia(Rel::Ebar, phi)));
    case Rel::G:
      return hs::disj_all({phi, hs::dia(Rel::B, phi), hs::dia(Rel::E, phi),
                           hs::dia(Rel::B, hs::dia(Rel::E, phi))});
  }
  return nullptr;
}

}  // namespace

Hs expand_modal(Rel r, bool universal, const Hs& child) {
  if (is_core(r)) return universal ? hs::box(r, child) : hs::dia(r, child);
  if (!universal) return expand_exists(r, child);
  return hs::neg(expand_exists(r, hs::neg(child)));
}

Hs expand_derived(const Hs& f) {
  std::unordered_map<const HsNode*, Hs> memo;
  std::function<Hs(const Hs&)> rec = [&](const Hs& g) -> Hs {
    auto it = memo.find(g.get());
    if (it != memo.end()) return it->second;
    Hs out;
    switch (g->kind) {
      case HsKind::Atom:
      case HsKind::True:
      case HsKind::False: out = g; break;
      case HsKind::Not: {
        Hs a = rec(g->a);
        out = a == g->a ? g : hs::neg(a);
        break;
      }
      case HsKind::And:
      case HsKind::Or:
      case HsKind::Implies: {
        Hs a = rec(g->a), b = rec(g->b);
        out = (a == g->a && b == g->b) ? g : make_hs(g->kind, "", Rel::B, false, a, b);
        break;
      }
      case HsKind::Modal: {
        Hs a = rec(g->a);
        if (is_core(g->rel))
          out = a == g->a ? g : make_hs(HsKind::Modal, "", g->rel, g->universal, a, nullptr);
        else
          out = expand_modal(g->rel, g->universal, a);
        break;
      }
    }
    memo.emplace(g.get(), out);
    return out;
  };
  return rec(f);
}

Hs mirror(const Hs& f) {
  std::unordered_map<const HsNode*, Hs> memo;
  std::function<Hs(const Hs&)> rec = [&](const Hs& g) -> Hs {
    auto it = memo.find(g.get());
    if (it != memo.end()) return it->second;
    Hs out;
    switch (g->kind) {
      case HsKind::Atom:
      case HsKind::True:
      case HsKind::False: out = g; break;
      case HsKind::Not: out = hs::neg(rec(g->a)); break;
      case HsKind::Modal:
        out = make_hs(HsKind::Modal, "", rel_mirror(g->rel), g->universal, rec(g->a), nullptr);
        break;
      default: out = make_hs(g->kind, "", Rel::B, false, rec(g->a), rec(g->b));
    }
    memo.emplace(g.get(), out);
    return out;
  };
  return rec(f);
}

Hs substitute_atoms(const Hs& f, const std::vector<std::pair<std::string, Hs>>& map) {
  std::unordered_map<const HsNode*, Hs> memo;
  std::function<Hs(const Hs&)> rec = [&](const Hs& g) -> Hs {
    auto it = memo.find(g.get());
    if (it != memo.end()) return it->second;
    Hs out = g;
    switch (g->kind) {
      case HsKind::Atom:
        for (const auto& [name, repl] : map)
          if (name == g->name) out = repl;
        break;
      case HsKind::True:
      case HsKind::False: break;
      case HsKind::Not: out = hs::neg(rec(g->a)); break;
      case HsKind::Modal:
        out = make_hs(HsKind::Modal, "", g->rel, g->universal, rec(g->a), nullptr);
        break;
      default: out = make_hs(g->kind, "", Rel::B, false, rec(g->a), rec(g->b));
    }
    memo.emplace(g.get(), out);
    return out;
  };
  return rec(f);
}

// ---------------------------------------------------------- point builders

namespace pt {
Pt atom(std::string name) {
  if (name.empty()) throw std::invalid_argument("empty atom name");
  return make_pt(PtKind::Atom, std::move(name), nullptr, nullptr);
}
Pt top() {
  static const Pt t = make_pt(PtKind::True, "", nullptr, nullptr);
  return t;
}
Pt bot() {
  static const Pt f = make_pt(PtKind::False, "", nullptr, nullptr);
  return f;
}
Pt neg(Pt f) { return make_pt(PtKind::Not, "", std::move(f), nullptr); }
Pt conj(Pt f, Pt g) { return make_pt(PtKind::And, "", std::move(f), std::move(g)); }
Pt disj(Pt f, Pt g) { return make_pt(PtKind::Or, "", std::move(f), std::move(g)); }
Pt impl(Pt f, Pt g) { return make_pt(PtKind::Implies, "", std::move(f), std::move(g)); }
Pt next(Pt f) { return make_pt(PtKind::X, "", std::move(f), nullptr); }
Pt until(Pt f, Pt g) { return make_pt(PtKind::U, "", std::move(f), std::move(g)); }
Pt eventually(Pt f) { return make_pt(PtKind::F, "", std::move(f), nullptr); }
Pt always(Pt f) { return make_pt(PtKind::G, "", std::move(f), nullptr); }
Pt yesterday(Pt f) { return make_pt(PtKind::Y, "", std::move(f), nullptr); }
Pt since(Pt f, Pt g) { return make_pt(PtKind::S, "", std::move(f), std::move(g)); }
Pt once(Pt f) { return make_pt(PtKind::O, "", std::move(f), nullptr); }
Pt historically(Pt f) { return make_pt(PtKind::H, "", std::move(f), nullptr); }
Pt exists(Pt f) { return make_pt(PtKind::Exists, "", std::move(f), nullptr); }
Pt forall(Pt f) { return make_pt(PtKind::Forall, "", std::move(f), nullptr); }
Pt exists_f(Pt f) { return make_pt(PtKind::ExistsF, "", std::move(f), nullptr); }
Pt forall_f(Pt f) { return make_pt(PtKind::ForallF, "", std::move(f), nullptr); }
Pt var(std::string name) { return make_pt(PtKind::Var, std::move(name), nullptr, nullptr); }
Pt bind(std::string name, Pt f) { return make_pt(PtKind::Bind, std::move(name), std::move(f), nullptr); }
Pt conj_all(const std::vector<Pt>& fs) {
  if (fs.empty()) return top();
  Pt r = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) r = conj(r, fs[i]);
  return r;
}
Pt disj_all(const std::vector<Pt>& fs) {
  if (fs.empty()) return bot();
  Pt r = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) r = disj(r, fs[i]);
  return r;
}
}  // namespace pt

bool equal(const Pt& f, const Pt& g) {
  if (f == g) return true;
  if (!f || !g) return false;
  if (f->kind != g->kind || f->name != g->name) return false;
  return equal(f->a, g->a) && equal(f->b, g->b);
}

std::size_t formula_size(const Pt& f) {
  std::unordered_map<const PtNode*, std::size_t> memo;
  std::function<std::size_t(const Pt&)> rec = [&](const Pt& g) -> std::size_t {
    return memo_size(g, memo, [&](const Pt& h) -> std::size_t {
      std::size_t s = 1;
      if (h->a) s += rec(h->a);
      if (h->b) s += rec(h->b);
      return s;
    });
  };
  return rec(f);
}

bool is_future_op(PtKind k) {
  return k == PtKind::X || k == PtKind::U || k == PtKind::F || k == PtKind::G;
}
bool is_past_op(PtKind k) {
  return k == PtKind::Y || k == PtKind::S || k == PtKind::O || k == PtKind::H;
}
bool is_quantifier(PtKind k) {
  return k == PtKind::Exists || k == PtKind::Forall || k == PtKind::ExistsF ||
         k == PtKind::ForallF;
}

std::size_t temporal_depth(const Pt& f) {
  std::unordered_map<const PtNode*, std::size_t> memo;
  std::function<std::size_t(const Pt&)> rec = [&](const Pt& g) -> std::size_t {
    return memo_size(g, memo, [&](const Pt& h) -> std::size_t {
      std::size_t d = 0;
      if (h->a) d = std::max(d, rec(h->a));
      if (h->b) d = std::max(d, rec(h->b));
      return (is_future_op(h->kind) || is_past_op(h->kind)) ? d + 1 : d;
    });
  };
  return rec(f);
}

namespace {
template <class Pred>
bool pt_any(const Pt& f, Pred&& p) {
  if (!f) return false;
  if (p(*f)) return true;
  return pt_any(f->a, p) || pt_any(f->b, p);
}
}  // namespace

std::set<std::string> atoms(const Pt& f) {
  std::set<std::string> out;
  pt_any(f, [&](const PtNode& n) {
    if (n.kind == PtKind::Atom) out.insert(n.name);
    return false;
  });
  return out;
}

std::set<std::string> free_vars(const Pt& f) {
  std::set<std::string> out;
  std::function<void(const Pt&, std::vector<std::string>&)> rec = [&](const Pt& g,
                                                                      std::vector<std::string>& bound) {
    if (!g) return;
    if (g->kind == PtKind::Var) {
      if (std::find(bound.begin(), bound.end(), g->name) == bound.end()) out.insert(g->name);
      return;
    }
    if (g->kind == PtKind::Bind) {
      bound.push_back(g->name);
      rec(g->a, bound);
      bound.pop_back();
      return;
    }
    rec(g->a, bound);
    rec(g->b, bound);
  };
  std::vector<std::string> bound;
  rec(f, bound);
  return out;
}

bool is_pure_ltl(const Pt& f) {
  return !pt_any(f, [](const PtNode& n) {
    return is_past_op(n.kind) || is_quantifier(n.kind) || n.kind == PtKind::Var ||
           n.kind == PtKind::Bind;
  });
}

bool is_ltl_with_past(const Pt& f) {
  return !pt_any(f, [](const PtNode& n) {
    return is_quantifier(n.kind) || n.kind == PtKind::Var || n.kind == PtKind::Bind;
  });
}

bool is_pure_past(const Pt& f) {
  return !pt_any(f, [](const PtNode& n) {
    return is_future_op(n.kind) || is_quantifier(n.kind) || n.kind == PtKind::Var ||
           n.kind == PtKind::Bind;
  });
}

bool is_ctlstar(const Pt& f) {
  return !pt_any(f, [](const PtNode& n) {
    return is_past_op(n.kind) || n.kind == PtKind::Var || n.kind == PtKind::Bind ||
           n.kind == PtKind::ExistsF || n.kind == PtKind::ForallF;
  });
}

bool is_finitary_ctlstar(const Pt& f) {
  return !pt_any(f, [](const PtNode& n) {
    return is_past_op(n.kind) || n.kind == PtKind::Var || n.kind == PtKind::Bind ||
           n.kind == PtKind::Exists || n.kind == PtKind::Forall;
  });
}

Pt expand_shorthands(const Pt& f) {
  if (!f) return f;
  Pt a = expand_shorthands(f->a), b = expand_shorthands(f->b);
  switch (f->kind) {
    case PtKind::F: return pt::until(pt::top(), a);
    case PtKind::G: return pt::neg(pt::until(pt::top(), pt::neg(a)));
    case PtKind::O: return pt::since(pt::top(), a);
    case PtKind::H: return pt::neg(pt::since(pt::top(), pt::neg(a)));
    default:
      if (a == f->a && b == f->b) return f;
      return make_pt(f->kind, f->name, a, b);
  }
}

// -------------------------------------------------------------- FO builders

namespace fo {
Fo top() {
  static const Fo t = make_fo(FoKind::True, "", "", "", nullptr, nullptr);
  return t;
}
Fo pred(std::string p, std::string x) {
  return make_fo(FoKind::Pred, std::move(p), std::move(x), "", nullptr, nullptr);
}
Fo le(std::string x, std::string y) {
  return make_fo(FoKind::Le, "", std::move(x), std::move(y), nullptr, nullptr);
}
Fo lt(std::string x, std::string y) {
  return make_fo(FoKind::Lt, "", std::move(x), std::move(y), nullptr, nullptr);
}
Fo neg(Fo f) { return make_fo(FoKind::Not, "", "", "", std::move(f), nullptr); }
Fo conj(Fo f, Fo g) { return make_fo(FoKind::And, "", "", "", std::move(f), std::move(g)); }
Fo disj(Fo f, Fo g) { return make_fo(FoKind::Or, "", "", "", std::move(f), std::move(g)); }
Fo impl(Fo f, Fo g) { return make_fo(FoKind::Implies, "", "", "", std::move(f), std::move(g)); }
Fo exists(std::string v, Fo f) { return make_fo(FoKind::Exists, std::move(v), "", "", std::move(f), nullptr); }
Fo forall(std::string v, Fo f) { return make_fo(FoKind::Forall, std::move(v), "", "", std::move(f), nullptr); }
}  // namespace fo

bool equal(const Fo& f, const Fo& g) {
  if (f == g) return true;
  if (!f || !g) return false;
  if (f->kind != g->kind || f->name != g->name || f->x != g->x || f->y != g->y) return false;
  return equal(f->a, g->a) && equal(f->b, g->b);
}

std::size_t formula_size(const Fo& f) {
  if (!f) return 0;
  return 1 + formula_size(f->a) + formula_size(f->b);
}

std::set<std::string> free_vars(const Fo& f) {
  std::set<std::string> out;
  if (!f) return out;
  switch (f->kind) {
    case FoKind::Pred: out.insert(f->x); break;
    case FoKind::Le:
    case FoKind::Lt:
      out.insert(f->x);
      out.insert(f->y);
      break;
    case FoKind::Exists:
    case FoKind::Forall:
      out = free_vars(f->a);
      out.erase(f->name);
      break;
    default: {
      out = free_vars(f->a);
      auto r = free_vars(f->b);
      out.insert(r.begin(), r.end());
    }
  }
  return out;
}

std::size_t variable_count(const Fo& f) {
  std::set<std::string> vs;
  std::function<void(const Fo&)> rec = [&](const Fo& g) {
    if (!g) return;
    if (!g->x.empty()) vs.insert(g->x);
    if (!g->y.empty()) vs.insert(g->y);
    if (g->kind == FoKind::Exists || g->kind == FoKind::Forall) vs.insert(g->name);
    rec(g->a);
    rec(g->b);
  };
  rec(f);
  return vs.size();
}

std::size_t formula_size(const Formula& f) {
  return std::visit([](const auto& g) { return formula_size(g); }, f);
}

std::string render(const Formula& f) {
  return std::visit([](const auto& g) { return render(g); }, f);
}

}  // namespace hsmc
