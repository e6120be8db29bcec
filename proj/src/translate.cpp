#include "hsmc/translate.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace hsmc {

namespace {

using namespace std::string_literals;

// Same node kind with new children.
Pt rebuild(const Pt& f, Pt a, Pt b) {
  switch (f->kind) {
    case PtKind::Atom: return pt::atom(f->name);
    case PtKind::True: return pt::top();
    case PtKind::False: return pt::bot();
    case PtKind::Not: return pt::neg(a);
    case PtKind::And: return pt::conj(a, b);
    case PtKind::Or: return pt::disj(a, b);
    case PtKind::Implies: return pt::impl(a, b);
    case PtKind::X: return pt::next(a);
    case PtKind::U: return pt::until(a, b);
    case PtKind::F: return pt::eventually(a);
    case PtKind::G: return pt::always(a);
    case PtKind::Y: return pt::yesterday(a);
    case PtKind::S: return pt::since(a, b);
    case PtKind::O: return pt::once(a);
    case PtKind::H: return pt::historically(a);
    case PtKind::Exists: return pt::exists(a);
    case PtKind::Forall: return pt::forall(a);
    case PtKind::ExistsF: return pt::exists_f(a);
    case PtKind::ForallF: return pt::forall_f(a);
    case PtKind::Var: return pt::var(f->name);
    case PtKind::Bind: return pt::bind(f->name, a);
  }
  return f;
}

Pt map_children(const Pt& f, const std::function<Pt(const Pt&)>& g) {
  return rebuild(f, f->a ? g(f->a) : nullptr, f->b ? g(f->b) : nullptr);
}

Hs len(int n) { return build_length(n); }

void require_relations(const Hs& f, std::initializer_list<Rel> allowed, const char* what) {
  for (Rel r : relations(f))
    if (std::find(allowed.begin(), allowed.end(), r) == allowed.end())
      throw TranslationError(std::string(what) + " does not support modality " + rel_name(r));
}

}  // namespace

// ------------------------------------------------------------ HS -> FO

FoTranslation hs_to_fo(const Hs& f) {
  require_relations(f, {Rel::B, Rel::E, Rel::Bbar, Rel::Ebar}, "hs_to_fo");
  int fresh = 0;
  std::function<Fo(const Hs&, const std::string&, const std::string&)> h =
      [&](const Hs& g, const std::string& x, const std::string& y) -> Fo {
    switch (g->kind) {
      case HsKind::Atom: {
        std::string z = "z" + std::to_string(++fresh);
        return fo::forall(z, fo::impl(fo::conj(fo::le(x, z), fo::le(z, y)), fo::pred(g->name, z)));
      }
      case HsKind::True: return fo::top();
      case HsKind::False: return fo::neg(fo::top());
      case HsKind::Not: return fo::neg(h(g->a, x, y));
      case HsKind::And: return fo::conj(h(g->a, x, y), h(g->b, x, y));
      case HsKind::Or: return fo::disj(h(g->a, x, y), h(g->b, x, y));
      case HsKind::Implies: return fo::impl(h(g->a, x, y), h(g->b, x, y));
      case HsKind::Modal: {
        if (g->universal) return fo::neg(h(hs::dia(g->rel, hs::neg(g->a)), x, y));
        std::string z = "z" + std::to_string(++fresh);
        switch (g->rel) {
          case Rel::E: return fo::exists(z, fo::conj(fo::conj(fo::lt(x, z), fo::le(z, y)), h(g->a, z, y)));
          case Rel::B: return fo::exists(z, fo::conj(fo::conj(fo::le(x, z), fo::lt(z, y)), h(g->a, x, z)));
          case Rel::Ebar: return fo::exists(z, fo::conj(fo::lt(z, x), h(g->a, z, y)));
          case Rel::Bbar: return fo::exists(z, fo::conj(fo::lt(y, z), h(g->a, x, z)));
          default: break;
        }
      }
    }
    throw TranslationError("hs_to_fo: unexpected node");
  };
  FoTranslation out;
  out.open = h(f, "x", "y");
  std::string z = "z" + std::to_string(++fresh);
  out.sentence = fo::exists("x", fo::conj(fo::forall(z, fo::le("x", z)), fo::forall("y", out.open)));
  return out;
}

// ----------------------------------------------------------- LTL -> AB

Hs ltl_to_ab(const Pt& f) {
  if (!is_pure_ltl(f)) throw TranslationError("ltl_to_ab expects a pure future LTL formula");
  std::function<Hs(const Pt&)> tr = [&](const Pt& g) -> Hs {
    switch (g->kind) {
      case PtKind::Atom: return hs::atom(g->name);
      case PtKind::True: return hs::top();
      case PtKind::False: return hs::bot();
      case PtKind::Not: return hs::neg(tr(g->a));
      case PtKind::And: return hs::conj(tr(g->a), tr(g->b));
      case PtKind::Or: return hs::disj(tr(g->a), tr(g->b));
      case PtKind::Implies: return hs::impl(tr(g->a), tr(g->b));
      case PtKind::X: return hs::dia(Rel::A, hs::conj(len(2), hs::dia(Rel::A, hs::conj(len(1), tr(g->a)))));
      case PtKind::U:
        return hs::dia(Rel::A, hs::conj(hs::dia(Rel::A, hs::conj(len(1), tr(g->b))),
                                        hs::box(Rel::B, hs::dia(Rel::A, hs::conj(len(1), tr(g->a))))));
      default: break;
    }
    throw TranslationError("ltl_to_ab: unexpected operator");
  };
  return tr(expand_shorthands(f));
}

// ------------------------------------------------- BE closure formulas

const char* closure_kind_name(ClosureKind k) {
  switch (k) {
    case ClosureKind::bL: return "bL";
    case ClosureKind::Lb: return "Lb";
    case ClosureKind::sigma_bL: return "sigma_bL";
    case ClosureKind::sigma_bL_eps: return "sigma_bL_eps";
    case ClosureKind::Lb_sigma: return "Lb_sigma";
    case ClosureKind::L_eps_b_sigma: return "L_eps_b_sigma";
    case ClosureKind::bLb: return "bLb";
  }
  return "?";
}

const std::vector<ClosureKind>& all_closure_kinds() {
  static const std::vector<ClosureKind> kinds = {ClosureKind::bL,           ClosureKind::Lb,
                                                 ClosureKind::sigma_bL,     ClosureKind::sigma_bL_eps,
                                                 ClosureKind::Lb_sigma,     ClosureKind::L_eps_b_sigma,
                                                 ClosureKind::bLb};
  return kinds;
}

std::optional<ClosureKind> closure_kind_from_name(std::string_view s) {
  for (ClosureKind k : all_closure_kinds())
    if (s == closure_kind_name(k)) return k;
  return std::nullopt;
}

Hs closure_hb(const Hs& f, const std::string& b) {
  Hs bb = hs::atom(b);
  std::function<Hs(const Hs&)> m = [&](const Hs& g) -> Hs {
    switch (g->kind) {
      case HsKind::Atom:
        if (g->name == b) throw TranslationError("closure: letter " + b + " occurs in the formula");
        return hs::disj(g, hs::conj_all({hs::dia(Rel::B, bb), hs::dia(Rel::E, g), hs::box(Rel::E, g)}));
      case HsKind::True:
      case HsKind::False: return g;
      case HsKind::Not: return hs::neg(m(g->a));
      case HsKind::And: return hs::conj(m(g->a), m(g->b));
      case HsKind::Or: return hs::disj(m(g->a), m(g->b));
      case HsKind::Implies: return hs::impl(m(g->a), m(g->b));
      case HsKind::Modal: {
        if (g->universal) return hs::neg(m(hs::dia(g->rel, hs::neg(g->a))));
        Hs t = m(g->a);
        if (g->rel == Rel::B)
          return hs::disj(hs::conj(hs::dia(Rel::B, t), hs::neg(hs::dia(Rel::B, bb))),
                          hs::dia(Rel::B, hs::conj(t, hs::dia(Rel::B, bb))));
        if (g->rel == Rel::E)
          return hs::disj(hs::conj(hs::dia(Rel::E, t), hs::neg(hs::dia(Rel::B, bb))),
                          hs::conj(hs::dia(Rel::B, bb), hs::dia(Rel::E, hs::dia(Rel::E, t))));
        throw TranslationError(std::string("closure: modality ") + rel_name(g->rel) + " is not B or E");
      }
    }
    return g;
  };
  return m(f);
}

// Like h_b for a trailing b; b itself is kept.
Hs closure_kb(const Hs& f, const std::string& b) {
  Hs bb = hs::atom(b);
  std::function<Hs(const Hs&)> m = [&](const Hs& g) -> Hs {
    switch (g->kind) {
      case HsKind::Atom:
        if (g->name == b) return g;
        return hs::disj(g, hs::conj_all({hs::dia(Rel::E, bb), hs::dia(Rel::B, g), hs::box(Rel::B, g)}));
      case HsKind::True:
      case HsKind::False: return g;
      case HsKind::Not: return hs::neg(m(g->a));
      case HsKind::And: return hs::conj(m(g->a), m(g->b));
      case HsKind::Or: return hs::disj(m(g->a), m(g->b));
      case HsKind::Implies: return hs::impl(m(g->a), m(g->b));
      case HsKind::Modal: {
        if (g->universal) return hs::neg(m(hs::dia(g->rel, hs::neg(g->a))));
        Hs t = m(g->a);
        if (g->rel == Rel::B)
          return hs::disj(hs::conj(hs::dia(Rel::B, t), hs::neg(hs::dia(Rel::E, bb))),
                          hs::conj(hs::dia(Rel::E, bb), hs::dia(Rel::B, hs::dia(Rel::B, t))));
        if (g->rel == Rel::E)
          return hs::disj(hs::conj(hs::dia(Rel::E, t), hs::neg(hs::dia(Rel::E, bb))),
                          hs::dia(Rel::E, hs::conj(t, hs::dia(Rel::E, bb))));
        throw TranslationError(std::string("closure: modality ") + rel_name(g->rel) + " is not B or E");
      }
    }
    return g;
  };
  return m(f);
}

Hs b_block(const std::string& b) {
  Hs bb = hs::atom(b);
  return hs::conj_all({hs::neg(len(1)), hs::dia(Rel::B, bb), hs::dia(Rel::E, bb),
                       hs::box(Rel::E, hs::box(Rel::B, hs::neg(bb)))});
}

Hs closure_formula(const Hs& f, ClosureKind kind, const std::string& b) {
  require_relations(f, {Rel::B, Rel::E}, "closure_formula");
  if (atoms(f).count(b)) throw TranslationError("closure: letter " + b + " occurs in the formula");
  Hs bb = hs::atom(b);
  auto bl = [&](const Hs& g) {
    Hs guard = hs::conj_all({hs::neg(len(1)), hs::dia(Rel::B, bb),
                             hs::box(Rel::E, hs::conj(hs::neg(bb), hs::box(Rel::B, hs::neg(bb))))});
    return hs::conj(guard, closure_hb(g, b));
  };
  auto sigma_bl = [&](const Hs& g) {
    Hs phi = bl(g);
    return hs::disj(phi, hs::dia(Rel::E, phi));
  };
  auto sigma_b = hs::disj(bb, hs::dia(Rel::E, bb));
  switch (kind) {
    case ClosureKind::bL: return bl(f);
    case ClosureKind::sigma_bL: return sigma_bl(f);
    case ClosureKind::sigma_bL_eps: return hs::disj(sigma_bl(f), sigma_b);
    case ClosureKind::Lb: return mirror(closure_formula(mirror(f), ClosureKind::bL, b));
    case ClosureKind::Lb_sigma: return mirror(closure_formula(mirror(f), ClosureKind::sigma_bL, b));
    case ClosureKind::L_eps_b_sigma: return mirror(closure_formula(mirror(f), ClosureKind::sigma_bL_eps, b));
    case ClosureKind::bLb: {
      Hs guard = hs::conj_all({hs::neg(len(1)), hs::neg(len(2)), hs::dia(Rel::B, bb), hs::dia(Rel::E, bb),
                               hs::box(Rel::E, hs::box(Rel::B, hs::neg(bb)))});
      return hs::conj(guard, closure_kb(bl(f), b));
    }
  }
  return f;
}

const Hs* LetterTheory::find(const std::string& d) const {
  for (const auto& [name, f] : letters)
    if (name == d) return &f;
  return nullptr;
}

std::optional<Word> theory_overlap(const LetterTheory& t, const std::vector<std::string>& gamma,
                                   const std::string& b, int max_len) {
  std::vector<std::string> sigma = gamma;
  sigma.push_back(b);
  std::vector<Word> inner{Word{}};
  if (max_len >= 3) {
    auto more = all_words(gamma, max_len - 2);
    inner.insert(inner.end(), more.begin(), more.end());
  }
  for (const auto& u : inner) {
    if (static_cast<int>(u.size()) + 2 > max_len) continue;
    Word w{b};
    w.insert(w.end(), u.begin(), u.end());
    w.push_back(b);
    int hits = 0;
    for (const auto& [_, f] : t.letters) hits += lact_member(w, sigma, f);
    if (hits > 1) return w;
  }
  return std::nullopt;
}

Hs closure_substitute(const Hs& f, const LetterTheory& theory, const std::string& b) {
  Hs psi = b_block(b);
  std::vector<Hs> all;
  for (const auto& [_, th] : theory.letters) all.push_back(th);
  Hs wellformed = hs::box(Rel::G, hs::impl(psi, hs::disj_all(all)));
  Hs some_block = hs::dia(Rel::G, psi);
  Hs bb = hs::atom(b);
  std::function<Hs(const Hs&)> plus = [&](const Hs& g) -> Hs {
    switch (g->kind) {
      case HsKind::Atom: {
        const Hs* th = theory.find(g->name);
        if (!th) throw TranslationError("closure_substitute: letter " + g->name + " has no theory formula");
        return hs::conj(some_block, hs::box(Rel::G, hs::impl(psi, *th)));
      }
      case HsKind::True: return hs::conj(some_block, wellformed);
      case HsKind::False: return hs::bot();
      case HsKind::Not: return hs::conj_all({some_block, wellformed, hs::neg(plus(g->a))});
      case HsKind::And: return hs::conj(plus(g->a), plus(g->b));
      case HsKind::Or: return plus(hs::neg(hs::conj(hs::neg(g->a), hs::neg(g->b))));
      case HsKind::Implies: return plus(hs::neg(hs::conj(g->a, hs::neg(g->b))));
      case HsKind::Modal: {
        if (g->universal) return plus(hs::neg(hs::dia(g->rel, hs::neg(g->a))));
        Hs t = plus(g->a);
        if (g->rel == Rel::B) {
          Hs xi = hs::conj(hs::dia(Rel::E, bb), hs::dia(Rel::B, hs::conj(t, hs::dia(Rel::E, bb))));
          return hs::conj(wellformed, hs::disj(xi, hs::dia(Rel::B, xi)));
        }
        if (g->rel == Rel::E) {
          Hs xi = hs::conj(hs::dia(Rel::B, bb), hs::dia(Rel::E, hs::conj(t, hs::dia(Rel::B, bb))));
          return hs::conj(wellformed, hs::disj(xi, hs::dia(Rel::E, xi)));
        }
        throw TranslationError(std::string("closure_substitute: modality ") + rel_name(g->rel) + " is not B or E");
      }
    }
    return g;
  };
  return plus(f);
}

// ------------------------------------------ finitary CTL* -> ABE

std::string letter_name(const std::vector<std::string>& members) {
  std::vector<std::string> m = members;
  std::sort(m.begin(), m.end());
  m.erase(std::unique(m.begin(), m.end()), m.end());
  std::string out = "{";
  for (std::size_t i = 0; i < m.size(); ++i) out += (i ? "," : "") + m[i];
  return out + "}";
}

std::vector<std::string> powerset_letters(const std::vector<std::string>& ap) {
  std::vector<std::string> sorted = ap;
  std::sort(sorted.begin(), sorted.end());
  if (sorted.size() > 16) throw TranslationError("too many propositions for a powerset alphabet");
  std::vector<std::string> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << sorted.size()); ++mask) {
    std::vector<std::string> m;
    for (std::size_t i = 0; i < sorted.size(); ++i)
      if (mask >> i & 1) m.push_back(sorted[i]);
    out.push_back(letter_name(m));
  }
  return out;
}

namespace {

std::vector<std::string> letter_members(const std::string& letter) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : letter.substr(1, letter.size() - 2)) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace

Pt ltl_over_letters(const Pt& f, const std::vector<std::string>& ap) {
  auto letters = powerset_letters(ap);
  std::function<Pt(const Pt&)> tr = [&](const Pt& g) -> Pt {
    if (g->kind == PtKind::Atom) {
      if (std::find(ap.begin(), ap.end(), g->name) == ap.end())
        throw TranslationError("proposition " + g->name + " is not in the alphabet");
      std::vector<Pt> ds;
      for (const auto& l : letters) {
        auto m = letter_members(l);
        if (std::find(m.begin(), m.end(), g->name) != m.end()) ds.push_back(pt::atom(l));
      }
      return pt::disj_all(ds);
    }
    if (is_quantifier(g->kind) || g->kind == PtKind::Var || g->kind == PtKind::Bind)
      throw TranslationError("ltl_over_letters expects an LTL formula");
    return map_children(g, tr);
  };
  return tr(f);
}

std::vector<Pt> maximal_path_formulas(const Pt& f) {
  std::vector<Pt> out;
  std::function<void(const Pt&)> walk = [&](const Pt& g) {
    if (!g) return;
    if (g->kind == PtKind::Exists || g->kind == PtKind::Forall)
      throw TranslationError("infinite-path quantifier in a finitary formula");
    if (g->kind == PtKind::ExistsF || g->kind == PtKind::ForallF) {
      Pt e = g->kind == PtKind::ExistsF ? g : pt::exists_f(pt::neg(g->a));
      for (const auto& h : out)
        if (equal(h, e)) return;
      out.push_back(e);
      return;
    }
    walk(g->a);
    walk(g->b);
  };
  walk(f);
  return out;
}

Hs letter_formula(const std::vector<std::string>& P, const std::vector<std::string>& ap,
                  const std::vector<std::string>& lifted, const std::vector<Hs>& lifted_abe) {
  auto in = [&](const std::string& s) { return std::find(P.begin(), P.end(), s) != P.end(); };
  std::vector<Hs> cs;
  for (std::size_t i = 0; i < lifted.size(); ++i) {
    Hs a = hs::dia(Rel::A, lifted_abe[i]);
    cs.push_back(in(lifted[i]) ? a : hs::neg(a));
  }
  for (const auto& p : ap) cs.push_back(in(p) ? hs::atom(p) : hs::neg(hs::atom(p)));
  return hs::box(Rel::G, hs::impl(len(1), hs::conj_all(cs)));
}

namespace {

std::string lifted_name(std::size_t i) { return "#" + std::to_string(i); }

}  // namespace

Hs finitary_ctlstar_to_abe(const Pt& f, const BeOracle& oracle, const AbeOptions& opt) {
  auto lifted = maximal_path_formulas(f);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < lifted.size(); ++i) names.push_back(lifted_name(i));

  std::function<Pt(const Pt&)> lift = [&](const Pt& g) -> Pt {
    if (g->kind == PtKind::ExistsF || g->kind == PtKind::ForallF) {
      Pt e = g->kind == PtKind::ExistsF ? g : pt::exists_f(pt::neg(g->a));
      for (std::size_t i = 0; i < lifted.size(); ++i)
        if (equal(lifted[i], e)) return g->kind == PtKind::ExistsF ? pt::atom(names[i]) : pt::neg(pt::atom(names[i]));
    }
    return map_children(g, lift);
  };
  Pt bar = lift(f);
  if (!is_pure_ltl(bar)) throw TranslationError("finitary_ctlstar_to_abe: path formula is not pure LTL: " + render(bar));

  auto as = atoms(bar);
  std::vector<std::string> ap(as.begin(), as.end());
  for (const auto& n : names)
    if (!as.count(n)) ap.push_back(n);
  std::sort(ap.begin(), ap.end());

  auto be = oracle(bar, ap);
  if (!be) throw TranslationError("no BE formula for " + render(bar));
  auto sigma = powerset_letters(ap);
  for (const auto& a : atoms(*be))
    if (std::find(sigma.begin(), sigma.end(), a) == sigma.end())
      throw TranslationError("BE formula for " + render(bar) + " uses " + a + ", which is not a letter over " +
                             letter_name(ap));
  Pt target = ltl_over_letters(bar, ap);
  for (const auto& w : all_words(sigma, opt.validate_len))
    if (lact_member(w, sigma, *be) != lact_member(w, sigma, target))
      throw TranslationError("BE formula for " + render(bar) + " disagrees on the word " + format_word(w));

  std::vector<Hs> lifted_abe;
  for (const auto& e : lifted) lifted_abe.push_back(finitary_ctlstar_to_abe(e->a, oracle, opt));

  std::vector<std::string> props;
  for (const auto& p : ap)
    if (std::find(names.begin(), names.end(), p) == names.end()) props.push_back(p);
  std::vector<std::pair<std::string, Hs>> subst;
  for (const auto& l : sigma) subst.emplace_back(l, letter_formula(letter_members(l), props, names, lifted_abe));
  return substitute_atoms(*be, subst);
}

BeOracle be_oracle_from_json(const std::string& document) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(document);
  } catch (const nlohmann::json::exception& e) {
    throw TranslationError(std::string("oracle table: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("entries") || !doc["entries"].is_array())
    throw TranslationError("oracle table: expected an object with an 'entries' array");
  auto table = std::make_shared<std::map<std::string, Hs>>();
  for (const auto& e : doc["entries"]) {
    if (!e.is_object() || !e.contains("ltl") || !e.contains("be") || !e["ltl"].is_string() || !e["be"].is_string())
      throw TranslationError("oracle table: every entry needs string fields 'ltl' and 'be'");
    std::string ltl = e["ltl"], be = e["be"];
    try {
      (*table)[render(parse_point(ltl))] = parse_hs(be);
    } catch (const ParseError& err) {
      throw TranslationError("oracle table entry '" + ltl + "': " + err.what());
    }
  }
  return [table](const Pt& ltl, const std::vector<std::string>&) -> std::optional<Hs> {
    auto it = table->find(render(ltl));
    if (it == table->end()) return std::nullopt;
    return it->second;
  };
}

BeOracle be_oracle_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TranslationError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return be_oracle_from_json(ss.str());
}

// --------------------------------------------------- HS_ct -> hybrid

Pt hs_ct_to_hybrid(const Hs& f, bool finitary) {
  require_relations(f, {Rel::B, Rel::E, Rel::Bbar, Rel::Ebar}, "hs_ct_to_hybrid");
  int fresh = 0;
  auto quant = [&](Pt g) { return finitary ? pt::exists_f(g) : pt::exists(g); };
  Pt x = pt::var("x");
  std::function<Pt(const Hs&)> tr = [&](const Hs& g) -> Pt {
    switch (g->kind) {
      case HsKind::Atom: return pt::historically(pt::impl(pt::once(x), pt::atom(g->name)));
      case HsKind::True: return pt::top();
      case HsKind::False: return pt::bot();
      case HsKind::Not: return pt::neg(tr(g->a));
      case HsKind::And: return pt::conj(tr(g->a), tr(g->b));
      case HsKind::Or: return pt::disj(tr(g->a), tr(g->b));
      case HsKind::Implies: return pt::impl(tr(g->a), tr(g->b));
      case HsKind::Modal: {
        if (g->universal) return pt::neg(tr(hs::dia(g->rel, hs::neg(g->a))));
        Pt t = tr(g->a);
        switch (g->rel) {
          case Rel::B: return pt::yesterday(pt::once(pt::conj(t, pt::once(x))));
          case Rel::Bbar: return pt::conj(quant(pt::next(pt::eventually(t))), pt::once(x));
          case Rel::E:
          case Rel::Ebar: {
            std::string y = "y" + std::to_string(fresh++);
            Pt inner = pt::bind("x", pt::eventually(pt::conj(pt::var(y), t)));
            Pt body = g->rel == Rel::E ? pt::conj(x, pt::next(pt::eventually(inner)))
                                       : pt::conj(pt::next(pt::eventually(x)), inner);
            return pt::bind(y, pt::once(body));
          }
          default: break;
        }
      }
    }
    throw TranslationError("hs_ct_to_hybrid: unexpected node");
  };
  return pt::bind("x", pt::always(tr(f)));
}

namespace {

// O v or (true S v) for a variable v.
std::optional<std::string> once_var(const Pt& f) {
  if (f->kind == PtKind::O && f->a->kind == PtKind::Var) return f->a->name;
  if (f->kind == PtKind::S && f->a->kind == PtKind::True && f->b->kind == PtKind::Var) return f->b->name;
  return std::nullopt;
}

}  // namespace

bool is_well_formed(const Pt& f) {
  std::function<bool(const Pt&, const std::optional<std::string>&)> ok =
      [&](const Pt& g, const std::optional<std::string>& guard) -> bool {
    if (!g) return true;
    if (is_quantifier(g->kind)) {
      auto fv = free_vars(g);
      if (fv.size() > 1) return false;
      if (fv.size() == 1 && (!guard || *guard != *fv.begin())) return false;
      return ok(g->a, std::nullopt);
    }
    if (g->kind == PtKind::And) {
      auto la = once_var(g->a), lb = once_var(g->b);
      return ok(g->a, lb) && ok(g->b, la);
    }
    return ok(g->a, std::nullopt) && ok(g->b, std::nullopt);
  };
  return ok(f, std::nullopt);
}

Pt eliminate_initial_past(const Pt& f) {
  switch (f->kind) {
    case PtKind::Y: return pt::bot();
    case PtKind::S: return eliminate_initial_past(f->b);
    case PtKind::O:
    case PtKind::H: return eliminate_initial_past(f->a);
    default: break;
  }
  return map_children(f, eliminate_initial_past);
}

}  // namespace hsmc
