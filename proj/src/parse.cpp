#include <algorithm>
#include <cctype>
#include <functional>

#include "hsmc/formula.hpp"

namespace hsmc {

ParseError::ParseError(const std::string& msg, int line_, int column_)
    : std::runtime_error(std::to_string(line_) + ":" + std::to_string(column_) + ": " + msg),
      line(line_),
      column(column_) {}

namespace {

enum class Tok { Ident, Letters, LParen, RParen, Modal, Not, And, Or, Implies, Dot, Le, Lt, Ge, Gt, End };

struct Token {
  Tok kind;
  std::string text;  // identifier, canonical letter set, or relation name
  bool universal = false;
  int line = 1, col = 1;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '#'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '#'; }

std::vector<Token> lex(std::string_view s, Dialect d) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token t{Tok::End, "", false, line, col};
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < s.size() && ident_char(s[j])) ++j;
      t.kind = Tok::Ident;
      t.text = std::string(s.substr(i, j - i));
      advance(j - i);
    } else if (c == '{') {
      std::size_t j = s.find('}', i);
      if (j == std::string_view::npos) throw ParseError("unterminated letter set", line, col);
      std::vector<std::string> letters;
      std::string cur;
      for (std::size_t k = i + 1; k < j; ++k) {
        char e = s[k];
        if (e == ',') {
          if (cur.empty()) throw ParseError("empty letter in set", line, col);
          letters.push_back(cur);
          cur.clear();
        } else if (ident_char(e)) {
          cur += e;
        } else if (!std::isspace(static_cast<unsigned char>(e))) {
          throw ParseError(std::string("bad character in letter set: ") + e, line, col);
        }
      }
      if (!cur.empty()) letters.push_back(cur);
      else if (!letters.empty()) throw ParseError("empty letter in set", line, col);
      std::sort(letters.begin(), letters.end());
      letters.erase(std::unique(letters.begin(), letters.end()), letters.end());
      t.kind = Tok::Letters;
      t.text = "{";
      for (std::size_t k = 0; k < letters.size(); ++k) t.text += (k ? "," : "") + letters[k];
      t.text += "}";
      advance(j + 1 - i);
    } else if (d == Dialect::hs && (c == '<' || c == '[')) {
      char close = c == '<' ? '>' : ']';
      std::size_t j = i + 1;
      while (j < s.size() && ident_char(s[j])) ++j;
      if (j >= s.size() || s[j] != close) throw ParseError("malformed modality", line, col);
      std::string name(s.substr(i + 1, j - i - 1));
      auto r = rel_from_name(name);
      if (!r) throw ParseError("unknown modality '" + name + "'", line, col);
      t.kind = Tok::Modal;
      t.text = name;
      t.universal = c == '[';
      advance(j + 1 - i);
    } else if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
      t.kind = Tok::Implies;
      advance(2);
    } else if (d == Dialect::fo && (c == '<' || c == '>')) {
      bool eq = i + 1 < s.size() && s[i + 1] == '=';
      t.kind = c == '<' ? (eq ? Tok::Le : Tok::Lt) : (eq ? Tok::Ge : Tok::Gt);
      advance(eq ? 2 : 1);
    } else {
      switch (c) {
        case '(': t.kind = Tok::LParen; break;
        case ')': t.kind = Tok::RParen; break;
        case '!': t.kind = Tok::Not; break;
        case '&': t.kind = Tok::And; break;
        case '|': t.kind = Tok::Or; break;
        case '.': t.kind = Tok::Dot; break;
        default: throw ParseError(std::string("unexpected character '") + c + "'", line, col);
      }
      advance(1);
    }
    out.push_back(std::move(t));
  }
  out.push_back(Token{Tok::End, "", false, line, col});
  return out;
}

class Cursor {
 public:
  explicit Cursor(std::vector<Token> toks) : toks_(std::move(toks)) {}
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_ident(std::string_view s) const { return at(Tok::Ident) && peek().text == s; }
  Token take() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
  Token expect(Tok k, const char* what) {
    if (!at(k)) fail(std::string("expected ") + what);
    return take();
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    std::string near = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    if (t.kind != Tok::End && t.text.empty()) near = "token";
    throw ParseError(msg + " near " + near, t.line, t.col);
  }
  void finish() {
    if (!at(Tok::End)) fail("trailing input");
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// ----------------------------------------------------------------- hs

class HsParser {
 public:
  explicit HsParser(std::string_view s) : c_(lex(s, Dialect::hs)) {}
  Hs run() {
    if (c_.at(Tok::End)) c_.fail("empty formula");
    Hs f = implies();
    c_.finish();
    return f;
  }

 private:
  Hs implies() {
    Hs l = disj();
    if (c_.at(Tok::Implies)) {
      c_.take();
      return hs::impl(l, implies());
    }
    return l;
  }
  Hs disj() {
    Hs l = conj();
    while (c_.at(Tok::Or)) {
      c_.take();
      l = hs::disj(l, conj());
    }
    return l;
  }
  Hs conj() {
    Hs l = unary();
    while (c_.at(Tok::And)) {
      c_.take();
      l = hs::conj(l, unary());
    }
    return l;
  }
  Hs unary() {
    if (c_.at(Tok::Not)) {
      c_.take();
      return hs::neg(unary());
    }
    if (c_.at(Tok::Modal)) {
      Token t = c_.take();
      Rel r = *rel_from_name(t.text);
      Hs a = unary();
      return t.universal ? hs::box(r, a) : hs::dia(r, a);
    }
    return primary();
  }
  Hs primary() {
    if (c_.at(Tok::LParen)) {
      c_.take();
      Hs f = implies();
      c_.expect(Tok::RParen, "')'");
      return f;
    }
    if (c_.at(Tok::Letters)) return hs::atom(c_.take().text);
    if (c_.at(Tok::Ident)) {
      std::string s = c_.take().text;
      if (s == "true") return hs::top();
      if (s == "false") return hs::bot();
      if (s.size() > 3 && s.compare(0, 3, "len") == 0 &&
          std::all_of(s.begin() + 3, s.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
        int n = std::stoi(s.substr(3));
        if (n < 1) c_.fail("len needs n >= 1");
        return build_length(n);
      }
      return hs::atom(s);
    }
    c_.fail("expected formula");
  }

  Cursor c_;
};

// -------------------------------------------------------------- point

bool point_keyword(const std::string& s) {
  static const char* kw[] = {"true", "false", "X", "U", "F", "G", "Y", "S", "O", "H",
                             "E",    "A",     "Ef", "Af", "down"};
  return std::any_of(std::begin(kw), std::end(kw), [&](const char* k) { return s == k; });
}

class PtParser {
 public:
  PtParser(std::string_view s, const std::vector<std::string>& free) : c_(lex(s, Dialect::point)), scope_(free) {}
  Pt run() {
    if (c_.at(Tok::End)) c_.fail("empty formula");
    Pt f = binder();
    c_.finish();
    return f;
  }

 private:
  Pt binder() {
    if (c_.at_ident("down")) {
      c_.take();
      if (!c_.at(Tok::Ident) || point_keyword(c_.peek().text)) c_.fail("expected variable after down");
      std::string v = c_.take().text;
      c_.expect(Tok::Dot, "'.'");
      scope_.push_back(v);
      Pt body = binder();
      scope_.pop_back();
      return pt::bind(v, body);
    }
    return implies();
  }
  Pt implies() {
    Pt l = disj();
    if (c_.at(Tok::Implies)) {
      c_.take();
      return pt::impl(l, c_.at_ident("down") ? binder() : implies());
    }
    return l;
  }
  Pt disj() {
    Pt l = conj();
    while (c_.at(Tok::Or)) {
      c_.take();
      l = pt::disj(l, conj());
    }
    return l;
  }
  Pt conj() {
    Pt l = temporal();
    while (c_.at(Tok::And)) {
      c_.take();
      l = pt::conj(l, temporal());
    }
    return l;
  }
  Pt temporal() {
    Pt l = unary();
    if (c_.at_ident("U")) {
      c_.take();
      return pt::until(l, temporal());
    }
    if (c_.at_ident("S")) {
      c_.take();
      return pt::since(l, temporal());
    }
    return l;
  }
  Pt unary() {
    if (c_.at(Tok::Not)) {
      c_.take();
      return pt::neg(unary());
    }
    if (c_.at(Tok::Ident)) {
      const std::string& s = c_.peek().text;
      using Ctor = Pt (*)(Pt);
      Ctor ctor = nullptr;
      if (s == "X") ctor = pt::next;
      else if (s == "F") ctor = pt::eventually;
      else if (s == "G") ctor = pt::always;
      else if (s == "Y") ctor = pt::yesterday;
      else if (s == "O") ctor = pt::once;
      else if (s == "H") ctor = pt::historically;
      if (ctor) {
        c_.take();
        return ctor(unary());
      }
      if (s == "down") return binder();
    }
    return primary();
  }
  Pt primary() {
    if (c_.at(Tok::LParen)) {
      c_.take();
      Pt f = binder();
      c_.expect(Tok::RParen, "')'");
      return f;
    }
    if (c_.at(Tok::Letters)) return pt::atom(c_.take().text);
    if (c_.at(Tok::Ident)) {
      std::string s = c_.peek().text;
      using Ctor = Pt (*)(Pt);
      Ctor q = nullptr;
      if (s == "E") q = pt::exists;
      else if (s == "A") q = pt::forall;
      else if (s == "Ef") q = pt::exists_f;
      else if (s == "Af") q = pt::forall_f;
      if (q) {
        c_.take();
        c_.expect(Tok::LParen, "'(' after path quantifier");
        Pt f = binder();
        c_.expect(Tok::RParen, "')'");
        return q(f);
      }
      if (point_keyword(s) && s != "true" && s != "false") c_.fail("misplaced operator");
      c_.take();
      if (s == "true") return pt::top();
      if (s == "false") return pt::bot();
      if (std::find(scope_.begin(), scope_.end(), s) != scope_.end()) return pt::var(s);
      return pt::atom(s);
    }
    c_.fail("expected formula");
  }

  Cursor c_;
  std::vector<std::string> scope_;
};

// ----------------------------------------------------------------- fo

class FoParser {
 public:
  FoParser(std::string_view s, const std::vector<std::string>& free) : c_(lex(s, Dialect::fo)), scope_(free) {}
  Fo run() {
    if (c_.at(Tok::End)) c_.fail("empty formula");
    Fo f = quant();
    c_.finish();
    return f;
  }

 private:
  bool at_quant() const { return c_.at_ident("exists") || c_.at_ident("forall"); }
  Fo quant() {
    if (at_quant()) {
      bool ex = c_.take().text == "exists";
      if (!c_.at(Tok::Ident)) c_.fail("expected variable");
      std::string v = c_.take().text;
      c_.expect(Tok::Dot, "'.'");
      scope_.push_back(v);
      Fo body = quant();
      scope_.pop_back();
      return ex ? fo::exists(v, body) : fo::forall(v, body);
    }
    return implies();
  }
  Fo implies() {
    Fo l = disj();
    if (c_.at(Tok::Implies)) {
      c_.take();
      return fo::impl(l, at_quant() ? quant() : implies());
    }
    return l;
  }
  Fo disj() {
    Fo l = conj();
    while (c_.at(Tok::Or)) {
      c_.take();
      l = fo::disj(l, conj());
    }
    return l;
  }
  Fo conj() {
    Fo l = unary();
    while (c_.at(Tok::And)) {
      c_.take();
      l = fo::conj(l, unary());
    }
    return l;
  }
  Fo unary() {
    if (c_.at(Tok::Not)) {
      c_.take();
      return fo::neg(unary());
    }
    if (at_quant()) return quant();
    return primary();
  }
  std::string variable() {
    if (!c_.at(Tok::Ident)) c_.fail("expected variable");
    Token t = c_.peek();
    if (std::find(scope_.begin(), scope_.end(), t.text) == scope_.end())
      throw ParseError("unbound variable '" + t.text + "'", t.line, t.col);
    c_.take();
    return t.text;
  }
  Fo primary() {
    if (c_.at(Tok::LParen)) {
      c_.take();
      Fo f = quant();
      c_.expect(Tok::RParen, "')'");
      return f;
    }
    if (c_.at_ident("true")) {
      c_.take();
      return fo::top();
    }
    if (c_.at_ident("false")) {
      c_.take();
      return fo::neg(fo::top());
    }
    if ((c_.at(Tok::Ident) || c_.at(Tok::Letters)) && c_.peek(1).kind == Tok::LParen) {
      std::string p = c_.take().text;
      c_.take();
      std::string x = variable();
      c_.expect(Tok::RParen, "')'");
      return fo::pred(p, x);
    }
    if (c_.at(Tok::Ident)) {
      std::string x = variable();
      Tok op = c_.peek().kind;
      if (op != Tok::Le && op != Tok::Lt && op != Tok::Ge && op != Tok::Gt) c_.fail("expected comparison");
      c_.take();
      std::string y = variable();
      switch (op) {
        case Tok::Le: return fo::le(x, y);
        case Tok::Lt: return fo::lt(x, y);
        case Tok::Ge: return fo::le(y, x);
        default: return fo::lt(y, x);
      }
    }
    c_.fail("expected formula");
  }

  Cursor c_;
  std::vector<std::string> scope_;
};

}  // namespace

Hs parse_hs(std::string_view text) { return HsParser(text).run(); }

Pt parse_point(std::string_view text, const std::vector<std::string>& free) {
  return PtParser(text, free).run();
}

Fo parse_fo(std::string_view text, const std::vector<std::string>& free) {
  return FoParser(text, free).run();
}

Formula parse(std::string_view text, Dialect d) {
  switch (d) {
    case Dialect::hs: return parse_hs(text);
    case Dialect::point: return parse_point(text);
    case Dialect::fo: return parse_fo(text);
  }
  throw std::invalid_argument("unknown dialect");
}

}  // namespace hsmc
