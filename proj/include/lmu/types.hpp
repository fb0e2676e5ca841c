#ifndef LMU_TYPES_HPP
#define LMU_TYPES_HPP

// Strict intersection types with continuations.
//
//   A     ::= (C)->'p                      basic
//   S,T   ::= w | A1 & ... & An  (n >= 1)  intersection
//   C,D   ::= O | S * C                    continuation
//
// An intersection is kept as a sorted, duplicate-free vector of basics, so
// the empty vector is w and structural equality is semantic equality.  A
// continuation is a vector of intersections; the empty vector is O.
//
// Inclusion: w is the top intersection, S <= T iff every conjunct of T
// occurs in S; O is the top continuation, and products compare covariantly
// componentwise.  Basics only compare equal: inclusion never reaches inside
// an arrow.

#include <algorithm>
#include <cctype>
#include <map>
#include <string>
#include <vector>

#include "lmu/syntax.hpp"  // parse_error

namespace lmu {

struct BasicType;

struct Inter {
  std::vector<BasicType> items;  // invariant: sorted by cmp, no duplicates
};

struct Cont {
  std::vector<Inter> parts;
};

struct BasicType {
  Cont cont;
  std::string head;
};

int cmp(const BasicType& a, const BasicType& b);

inline int cmp(const Inter& a, const Inter& b) {
  size_t n = std::min(a.items.size(), b.items.size());
  for (size_t i = 0; i < n; ++i)
    if (int c = cmp(a.items[i], b.items[i])) return c;
  if (a.items.size() != b.items.size()) return a.items.size() < b.items.size() ? -1 : 1;
  return 0;
}

inline int cmp(const Cont& a, const Cont& b) {
  size_t n = std::min(a.parts.size(), b.parts.size());
  for (size_t i = 0; i < n; ++i)
    if (int c = cmp(a.parts[i], b.parts[i])) return c;
  if (a.parts.size() != b.parts.size()) return a.parts.size() < b.parts.size() ? -1 : 1;
  return 0;
}

inline int cmp(const BasicType& a, const BasicType& b) {
  if (int c = a.head.compare(b.head)) return c < 0 ? -1 : 1;
  return cmp(a.cont, b.cont);
}

inline bool operator==(const BasicType& a, const BasicType& b) { return cmp(a, b) == 0; }
inline bool operator==(const Inter& a, const Inter& b) { return cmp(a, b) == 0; }
inline bool operator==(const Cont& a, const Cont& b) { return cmp(a, b) == 0; }
inline bool operator!=(const BasicType& a, const BasicType& b) { return cmp(a, b) != 0; }
inline bool operator!=(const Inter& a, const Inter& b) { return cmp(a, b) != 0; }
inline bool operator!=(const Cont& a, const Cont& b) { return cmp(a, b) != 0; }
inline bool operator<(const BasicType& a, const BasicType& b) { return cmp(a, b) < 0; }
inline bool operator<(const Inter& a, const Inter& b) { return cmp(a, b) < 0; }
inline bool operator<(const Cont& a, const Cont& b) { return cmp(a, b) < 0; }

inline Inter omega() { return {}; }
inline bool is_omega(const Inter& s) { return s.items.empty(); }
inline bool is_omega(const Cont& c) { return c.parts.empty(); }

inline BasicType basic(Cont c, std::string head) { return {std::move(c), std::move(head)}; }

inline Inter make_inter(std::vector<BasicType> items) {
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  return {std::move(items)};
}

inline Inter single(BasicType a) { return {{std::move(a)}}; }

inline Cont cont_push(Inter s, Cont c) {
  Cont r;
  r.parts.reserve(c.parts.size() + 1);
  r.parts.push_back(std::move(s));
  r.parts.insert(r.parts.end(), c.parts.begin(), c.parts.end());
  return r;
}

inline Inter inter_types(const Inter& a, const Inter& b) {
  std::vector<BasicType> items = a.items;
  items.insert(items.end(), b.items.begin(), b.items.end());
  return make_inter(std::move(items));
}

// Componentwise meet; the tail of the longer continuation is kept as is.
inline Cont inter_cont(const Cont& a, const Cont& b) {
  Cont r;
  size_t n = std::max(a.parts.size(), b.parts.size());
  r.parts.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    if (i >= a.parts.size()) r.parts.push_back(b.parts[i]);
    else if (i >= b.parts.size()) r.parts.push_back(a.parts[i]);
    else r.parts.push_back(inter_types(a.parts[i], b.parts[i]));
  }
  return r;
}

// s <= t: every conjunct of t is a conjunct of s
inline bool subtype(const Inter& s, const Inter& t) {
  return std::includes(s.items.begin(), s.items.end(), t.items.begin(), t.items.end());
}

// c <= d: d is a componentwise weaker prefix of c
inline bool subtype(const Cont& c, const Cont& d) {
  if (d.parts.size() > c.parts.size()) return false;
  for (size_t i = 0; i < d.parts.size(); ++i)
    if (!subtype(c.parts[i], d.parts[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Contexts

using VarContext = std::map<std::string, Inter>;
using NameContext = std::map<std::string, Cont>;

inline VarContext inter_ctx(const VarContext& g1, const VarContext& g2) {
  VarContext r = g1;
  for (auto& [x, s] : g2) {
    auto it = r.find(x);
    if (it == r.end()) r.emplace(x, s);
    else it->second = inter_types(it->second, s);
  }
  return r;
}

inline NameContext inter_nctx(const NameContext& d1, const NameContext& d2) {
  NameContext r = d1;
  for (auto& [a, c] : d2) {
    auto it = r.find(a);
    if (it == r.end()) r.emplace(a, c);
    else it->second = inter_cont(it->second, c);
  }
  return r;
}

// g1 <= g2: every statement in g2 is matched by a stronger one in g1
inline bool ctx_leq(const VarContext& g1, const VarContext& g2) {
  for (auto& [x, s] : g2) {
    auto it = g1.find(x);
    if (it == g1.end() || !subtype(it->second, s)) return false;
  }
  return true;
}

inline bool nctx_leq(const NameContext& d1, const NameContext& d2) {
  for (auto& [a, c] : d2) {
    auto it = d1.find(a);
    if (it == d1.end() || !subtype(it->second, c)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// The w-free fragment: no empty intersection anywhere (O is fine)

inline bool omega_free(const BasicType& a);

inline bool omega_free(const Inter& s) {
  if (s.items.empty()) return false;
  for (auto& a : s.items)
    if (!omega_free(a)) return false;
  return true;
}

inline bool omega_free(const Cont& c) {
  for (auto& s : c.parts)
    if (!omega_free(s)) return false;
  return true;
}

inline bool omega_free(const BasicType& a) { return omega_free(a.cont); }

inline bool omega_free(const VarContext& g) {
  for (auto& [x, s] : g)
    if (!omega_free(s)) return false;
  return true;
}

inline bool omega_free(const NameContext& d) {
  for (auto& [a, c] : d)
    if (!omega_free(c)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Concrete syntax

inline std::string pretty(const BasicType& a);

inline std::string pretty(const Inter& s) {
  if (s.items.empty()) return "w";
  std::string r;
  for (size_t i = 0; i < s.items.size(); ++i) {
    if (i) r += " & ";
    r += pretty(s.items[i]);
  }
  return r;
}

inline std::string pretty(const Cont& c) {
  std::string r;
  for (auto& s : c.parts) {
    r += pretty(s);
    r += " * ";
  }
  r += "O";
  return r;
}

inline std::string pretty(const BasicType& a) {
  return "(" + pretty(a.cont) + ")->'" + a.head;
}

namespace detail {

// tokens: ( ) -> & * w O 'ident
struct TypeLexer {
  enum class Tok { LPar, RPar, Arrow, Amp, Star, Omega, OmegaCont, Const, End };
  std::string_view src;
  size_t pos = 0;
  Tok tok = Tok::End;
  std::string text;

  explicit TypeLexer(std::string_view s) : src(s) { advance(); }

  [[noreturn]] void fail(const std::string& msg) const {
    throw parse_error(msg, 1, static_cast<int>(pos) + 1);
  }

  void advance() {
    while (pos < src.size() && (src[pos] == ' ' || src[pos] == '\t')) ++pos;
    if (pos >= src.size()) {
      tok = Tok::End;
      return;
    }
    char c = src[pos];
    switch (c) {
      case '(': tok = Tok::LPar; ++pos; return;
      case ')': tok = Tok::RPar; ++pos; return;
      case '&': tok = Tok::Amp; ++pos; return;
      case '*': tok = Tok::Star; ++pos; return;
      case '-':
        if (pos + 1 < src.size() && src[pos + 1] == '>') {
          tok = Tok::Arrow;
          pos += 2;
          return;
        }
        fail("expected '->'");
      case 'w': tok = Tok::Omega; ++pos; return;
      case 'O': tok = Tok::OmegaCont; ++pos; return;
      case '\'': {
        size_t start = ++pos;
        while (pos < src.size() && (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
          ++pos;
        if (pos == start) fail("expected a constant after '");
        tok = Tok::Const;
        text.assign(src.substr(start, pos - start));
        return;
      }
      default:
        fail(std::string("unexpected character '") + c + "' in type");
    }
  }
};

struct TypeParser {
  TypeLexer lx;

  explicit TypeParser(std::string_view s) : lx(s) {}

  BasicType parse_basic() {
    if (lx.tok == TypeLexer::Tok::Const) {
      // 'p abbreviates (O)->'p
      BasicType a{Cont{}, lx.text};
      lx.advance();
      return a;
    }
    if (lx.tok != TypeLexer::Tok::LPar) lx.fail("expected a basic type");
    lx.advance();
    Cont c = parse_cont();
    if (lx.tok != TypeLexer::Tok::RPar) lx.fail("expected ')'");
    lx.advance();
    if (lx.tok != TypeLexer::Tok::Arrow) lx.fail("expected '->'");
    lx.advance();
    if (lx.tok != TypeLexer::Tok::Const) lx.fail("expected a type constant");
    BasicType a{std::move(c), lx.text};
    lx.advance();
    return a;
  }

  Inter parse_inter() {
    if (lx.tok == TypeLexer::Tok::Omega) {
      lx.advance();
      return omega();
    }
    std::vector<BasicType> items;
    items.push_back(parse_basic());
    while (lx.tok == TypeLexer::Tok::Amp) {
      lx.advance();
      items.push_back(parse_basic());
    }
    return make_inter(std::move(items));
  }

  Cont parse_cont() {
    if (lx.tok == TypeLexer::Tok::OmegaCont) {
      lx.advance();
      return Cont{};
    }
    Inter s = parse_inter();
    if (lx.tok == TypeLexer::Tok::Star) {
      lx.advance();
      return cont_push(std::move(s), parse_cont());
    }
    // a bare intersection is the one-place continuation S * O
    return cont_push(std::move(s), Cont{});
  }

  void expect_end() {
    if (lx.tok != TypeLexer::Tok::End) lx.fail("unexpected trailing input in type");
  }
};

}  // namespace detail

inline Inter parse_inter_type(std::string_view s) {
  detail::TypeParser p(s);
  Inter r = p.parse_inter();
  p.expect_end();
  return r;
}

inline Cont parse_cont_type(std::string_view s) {
  detail::TypeParser p(s);
  Cont r = p.parse_cont();
  p.expect_end();
  return r;
}

}  // namespace lmu

#endif  // LMU_TYPES_HPP
