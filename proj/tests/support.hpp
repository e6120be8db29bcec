#pragma once

// Helpers shared by the unit tests and the acceptance binary: seeded
// random formula generators and reference evaluators written directly
// from the inductive definitions.

#include <map>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "hsmc/formula.hpp"
#include "hsmc/kripke.hpp"
#include "hsmc/pointwise.hpp"

namespace hsmc::testing {

using Rng = std::mt19937;

inline int pick(Rng& rng, int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

// Random HS formula of exactly `size` nodes.
inline Hs random_hs(Rng& rng, int size, const std::vector<std::string>& atoms, const std::vector<Rel>& rels) {
  if (size <= 1) {
    int i = pick(rng, static_cast<int>(atoms.size()) + 1);
    return i < static_cast<int>(atoms.size()) ? hs::atom(atoms[i]) : hs::top();
  }
  int choices = size >= 3 ? 4 : 2;
  switch (pick(rng, choices)) {
    case 0: return hs::neg(random_hs(rng, size - 1, atoms, rels));
    case 1: {
      Rel r = rels[pick(rng, static_cast<int>(rels.size()))];
      Hs c = random_hs(rng, size - 1, atoms, rels);
      return pick(rng, 4) ? hs::dia(r, c) : hs::box(r, c);
    }
    default: {
      int left = 1 + pick(rng, size - 2);
      Hs a = random_hs(rng, left, atoms, rels), b = random_hs(rng, size - 1 - left, atoms, rels);
      return pick(rng, 2) ? hs::conj(a, b) : hs::disj(a, b);
    }
  }
}

inline Hs random_hs_upto(Rng& rng, int max_size, const std::vector<std::string>& atoms, const std::vector<Rel>& rels) {
  return random_hs(rng, 1 + pick(rng, max_size), atoms, rels);
}

// Random future LTL (past = false) or pure past formula (past = true).
inline Pt random_pt(Rng& rng, int size, const std::vector<std::string>& atoms, bool past) {
  if (size <= 1) {
    int i = pick(rng, static_cast<int>(atoms.size()) + 1);
    return i < static_cast<int>(atoms.size()) ? pt::atom(atoms[i]) : pt::top();
  }
  int choices = size >= 3 ? 7 : 4;
  int c = pick(rng, choices);
  auto sub = [&](int s) { return random_pt(rng, s, atoms, past); };
  if (c < 4) {
    Pt a = sub(size - 1);
    switch (c) {
      case 0: return pt::neg(a);
      case 1: return past ? pt::yesterday(a) : pt::next(a);
      case 2: return past ? pt::once(a) : pt::eventually(a);
      default: return past ? pt::historically(a) : pt::always(a);
    }
  }
  int left = 1 + pick(rng, size - 2);
  Pt a = sub(left), b = sub(size - 1 - left);
  switch (c) {
    case 4: return pt::conj(a, b);
    case 5: return pt::disj(a, b);
    default: return past ? pt::since(a, b) : pt::until(a, b);
  }
}

inline Pt random_pt_upto(Rng& rng, int max_size, const std::vector<std::string>& atoms, bool past) {
  return random_pt(rng, 1 + pick(rng, max_size), atoms, past);
}

// Every HS formula up to max_size built from atoms, true, !, &, | and the
// diamonds of rels.
inline std::vector<Hs> all_hs(int max_size, const std::vector<std::string>& atoms, const std::vector<Rel>& rels) {
  std::vector<std::vector<Hs>> by(max_size + 1);
  for (int s = 1; s <= max_size; ++s) {
    if (s == 1) {
      for (const auto& a : atoms) by[1].push_back(hs::atom(a));
      by[1].push_back(hs::top());
      continue;
    }
    for (const auto& f : by[s - 1]) {
      by[s].push_back(hs::neg(f));
      for (Rel r : rels) by[s].push_back(hs::dia(r, f));
    }
    for (int l = 1; l <= s - 2; ++l)
      for (const auto& f : by[l])
        for (const auto& g : by[s - 1 - l]) {
          by[s].push_back(hs::conj(f, g));
          by[s].push_back(hs::disj(f, g));
        }
  }
  std::vector<Hs> out;
  for (auto& v : by) out.insert(out.end(), v.begin(), v.end());
  return out;
}

// Action-based reading of B, E, G formulas on a finite word: atoms are
// homogeneous (a^+), B and E pick proper prefixes and suffixes, G any
// infix including the word itself.
class WordEval {
 public:
  explicit WordEval(const Word& w) : w_(w) {}
  bool whole(const Hs& f) { return at(f, 0, static_cast<int>(w_.size()) - 1); }

  bool at(const Hs& f, int i, int j) {
    auto key = std::make_tuple(f.get(), i, j);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool v = false;
    switch (f->kind) {
      case HsKind::Atom:
        v = true;
        for (int k = i; k <= j; ++k) v = v && w_[k] == f->name;
        break;
      case HsKind::True: v = true; break;
      case HsKind::False: v = false; break;
      case HsKind::Not: v = !at(f->a, i, j); break;
      case HsKind::And: v = at(f->a, i, j) && at(f->b, i, j); break;
      case HsKind::Or: v = at(f->a, i, j) || at(f->b, i, j); break;
      case HsKind::Implies: v = !at(f->a, i, j) || at(f->b, i, j); break;
      case HsKind::Modal: {
        bool want = !f->universal;
        v = !want;
        auto test = [&](int a, int b) {
          if (at(f->a, a, b) == want) v = want;
        };
        if (f->rel == Rel::B)
          for (int k = i; k < j; ++k) test(i, k);
        else if (f->rel == Rel::E)
          for (int k = i + 1; k <= j; ++k) test(k, j);
        else if (f->rel == Rel::G)
          for (int a = i; a <= j; ++a)
            for (int b = a; b <= j; ++b) test(a, b);
        else
          throw std::invalid_argument("WordEval: only B, E, G");
        break;
      }
    }
    memo_[key] = v;
    return v;
  }

 private:
  const Word& w_;
  std::map<std::tuple<const HsNode*, int, int>, bool> memo_;
};

inline bool word_member(const Word& w, const Hs& f) {
  if (w.empty()) return false;
  return WordEval(w).whole(f);
}

// Every word over alphabet with length in [1, max_len].
inline std::vector<Word> words_upto(const std::vector<std::string>& alphabet, int max_len) {
  std::vector<Word> out, layer{{}};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<Word> next;
    for (const auto& w : layer)
      for (const auto& a : alphabet) {
        Word x = w;
        x.push_back(a);
        next.push_back(x);
      }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

// Closure languages by splitting w around occurrences of b; L = L_act(f)
// over the letters other than b.
inline bool closure_by_split(const Word& w, const Hs& f, const std::string& kind, const std::string& b) {
  auto in_l = [&](std::size_t from, std::size_t to, bool eps_ok) {
    if (from == to) return eps_ok;
    for (std::size_t i = from; i < to; ++i)
      if (w[i] == b) return false;
    return word_member(Word(w.begin() + from, w.begin() + to), f);
  };
  std::size_t n = w.size();
  if (kind == "bL") return n >= 1 && w[0] == b && in_l(1, n, false);
  if (kind == "Lb") return n >= 1 && w[n - 1] == b && in_l(0, n - 1, false);
  if (kind == "bLb") return n >= 2 && w[0] == b && w[n - 1] == b && in_l(1, n - 1, false);
  bool eps = kind == "sigma_bL_eps" || kind == "L_eps_b_sigma";
  bool right = kind == "sigma_bL" || kind == "sigma_bL_eps";
  for (std::size_t i = 0; i < n; ++i)
    if (w[i] == b && (right ? in_l(i + 1, n, eps) : in_l(0, i, eps))) return true;
  return false;
}

// Gamma* b h^-1(L) Gamma*: the blocks between the first and the last b are
// mapped to letters by h0 (nullptr when a block has no image).
template <class H0>
bool inverse_image_member(const Word& w, const std::string& b, const H0& h0, const Hs& f) {
  std::vector<std::size_t> bs;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] == b) bs.push_back(i);
  if (bs.size() < 2) return false;
  Word image;
  for (std::size_t k = 0; k + 1 < bs.size(); ++k) {
    Word block(w.begin() + bs[k] + 1, w.begin() + bs[k + 1]);
    const char* d = h0(block);
    if (!d) return false;
    image.push_back(d);
  }
  return word_member(image, f);
}

}  // namespace hsmc::testing
