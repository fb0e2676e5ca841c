#ifndef LMU_SYNTAX_HPP
#define LMU_SYNTAX_HPP

// Surface syntax for lambda-mu terms.
//
//   term := lam | mu | app
//   lam  := "\" ident "." term
//   mu   := "mu" ident "." "[" ident "]" term
//   app  := atom atom*                      (left-associative)
//   atom := ident | "bot" | "(" term ")"
//   ident := [A-Za-z_][A-Za-z0-9_']*        ("mu" and "bot" are reserved)
//
// Lambda and mu bodies extend as far right as possible; application binds
// tighter.  The printer emits minimal parentheses and never captures a free
// variable or name (binder display names get primed when they would clash).

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lmu/term.hpp"

namespace lmu {

class parse_error : public std::runtime_error {
 public:
  int line, col;
  parse_error(const std::string& msg, int line_, int col_)
      : std::runtime_error(msg + " (line " + std::to_string(line_) + ", column " +
                           std::to_string(col_) + ")"),
        line(line_),
        col(col_) {}
};

namespace detail {

struct Lexer {
  enum class Tok { Ident, Lambda, Mu, Bot, Dot, LPar, RPar, LBrack, RBrack, End };

  std::string_view src;
  size_t pos = 0;
  int line = 1, col = 1;

  Tok tok = Tok::End;
  std::string text;
  int tok_line = 1, tok_col = 1;

  explicit Lexer(std::string_view s) : src(s) { next(); }

  [[noreturn]] void fail(const std::string& msg) const { throw parse_error(msg, tok_line, tok_col); }

  void advance() {
    if (pos < src.size() && src[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  void next() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) advance();
    tok_line = line;
    tok_col = col;
    text.clear();
    if (pos >= src.size()) {
      tok = Tok::End;
      return;
    }
    char c = src[pos];
    switch (c) {
      case '\\': tok = Tok::Lambda; advance(); return;
      case '.': tok = Tok::Dot; advance(); return;
      case '(': tok = Tok::LPar; advance(); return;
      case ')': tok = Tok::RPar; advance(); return;
      case '[': tok = Tok::LBrack; advance(); return;
      case ']': tok = Tok::RBrack; advance(); return;
      default: break;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos < src.size()) {
        char d = src[pos];
        if (std::isalnum(static_cast<unsigned char>(d)) || d == '_' || d == '\'') {
          text += d;
          advance();
        } else {
          break;
        }
      }
      if (text == "mu") tok = Tok::Mu;
      else if (text == "bot") tok = Tok::Bot;
      else tok = Tok::Ident;
      return;
    }
    throw parse_error(std::string("unexpected character '") + c + "'", line, col);
  }
};

struct TermParser {
  Lexer lx;

  explicit TermParser(std::string_view s) : lx(s) {}

  std::string expect_ident(const char* what) {
    if (lx.tok != Lexer::Tok::Ident) lx.fail(std::string("expected ") + what);
    std::string s = lx.text;
    lx.next();
    return s;
  }

  void expect(Lexer::Tok t, const char* what) {
    if (lx.tok != t) lx.fail(std::string("expected ") + what);
    lx.next();
  }

  bool at_atom_start() const {
    return lx.tok == Lexer::Tok::Ident || lx.tok == Lexer::Tok::Bot || lx.tok == Lexer::Tok::LPar;
  }

  TermPtr parse_term() {
    if (lx.tok == Lexer::Tok::Lambda) {
      lx.next();
      std::string x = expect_ident("binder after '\\'");
      expect(Lexer::Tok::Dot, "'.' after lambda binder");
      return bind_lam(x, parse_term());
    }
    if (lx.tok == Lexer::Tok::Mu) {
      lx.next();
      std::string a = expect_ident("binder after 'mu'");
      expect(Lexer::Tok::Dot, "'.' after mu binder");
      expect(Lexer::Tok::LBrack, "'['");
      std::string b = expect_ident("name inside '[...]'");
      expect(Lexer::Tok::RBrack, "']'");
      return bind_mu(a, b, parse_term());
    }
    if (!at_atom_start()) lx.fail("expected a term");
    TermPtr t = parse_atom();
    while (at_atom_start()) t = app(t, parse_atom());
    return t;
  }

  TermPtr parse_atom() {
    switch (lx.tok) {
      case Lexer::Tok::Ident: {
        std::string n = lx.text;
        lx.next();
        return var(n);
      }
      case Lexer::Tok::Bot:
        lx.next();
        return bottom();
      case Lexer::Tok::LPar: {
        lx.next();
        TermPtr t = parse_term();
        expect(Lexer::Tok::RPar, "')'");
        return t;
      }
      default:
        lx.fail("expected a term");
    }
    return nullptr;  // unreachable
  }
};

}  // namespace detail

// Parse a complete term; free identifiers stay free.  Throws parse_error.
inline TermPtr parse_term(std::string_view src) {
  detail::TermParser p(src);
  TermPtr t = p.parse_term();
  if (p.lx.tok != detail::Lexer::Tok::End) p.lx.fail("trailing input after term");
  return t;
}

// ---------------------------------------------------------------------------
// Pretty printer.

namespace detail {

// Display names a fresh binder at the root of `t` must avoid: free variables
// of `t` plus display names of enclosing binders that `t` actually references.
inline void var_conflicts(const Term& t, const std::vector<std::string>& env, int depth,
                          std::set<std::string>& out) {
  switch (t.kind) {
    case TermKind::Var:
      if (t.index < 0) {
        out.insert(t.name);
      } else if (t.index > depth) {
        size_t k = static_cast<size_t>(t.index - depth - 1);
        if (k < env.size()) out.insert(env[env.size() - 1 - k]);
      }
      break;
    case TermKind::Lam:
      var_conflicts(*t.a, env, depth + 1, out);
      break;
    case TermKind::Mu:
      var_conflicts(*t.a, env, depth, out);
      break;
    case TermKind::App:
      var_conflicts(*t.a, env, depth, out);
      var_conflicts(*t.b, env, depth, out);
      break;
    case TermKind::Bottom:
      break;
  }
}

inline void name_conflicts(const Term& t, const std::vector<std::string>& env, int depth,
                           std::set<std::string>& out) {
  switch (t.kind) {
    case TermKind::Mu: {
      if (!t.out.is_bound()) {
        out.insert(t.out.name);
      } else if (t.out.index > depth + 1) {
        size_t k = static_cast<size_t>(t.out.index - depth - 2);
        if (k < env.size()) out.insert(env[env.size() - 1 - k]);
      }
      name_conflicts(*t.a, env, depth + 1, out);
      break;
    }
    case TermKind::Lam:
      name_conflicts(*t.a, env, depth, out);
      break;
    case TermKind::App:
      name_conflicts(*t.a, env, depth, out);
      name_conflicts(*t.b, env, depth, out);
      break;
    default:
      break;
  }
}

struct Printer {
  std::vector<std::string> vars, names;

  std::string binder_name_for_lam(const Term& lam) {
    std::set<std::string> avoid;
    var_conflicts(*lam.a, vars, 0, avoid);
    return fresh_name(lam.hint.empty() ? "x" : lam.hint, avoid);
  }

  std::string binder_name_for_mu(const Term& mu) {
    std::set<std::string> avoid;
    if (!mu.out.is_bound()) {
      avoid.insert(mu.out.name);
    } else if (mu.out.index > 0 && static_cast<size_t>(mu.out.index - 1) < names.size()) {
      avoid.insert(names[names.size() - mu.out.index]);
    }
    name_conflicts(*mu.a, names, 0, avoid);
    return fresh_name(mu.hint.empty() ? "a" : mu.hint, avoid);
  }

  void print(const Term& t, std::string& s, bool in_fun, bool in_arg) {
    switch (t.kind) {
      case TermKind::Var:
        if (t.index < 0) {
          s += t.name;
        } else if (static_cast<size_t>(t.index) < vars.size()) {
          s += vars[vars.size() - 1 - t.index];
        } else {
          s += "?v" + std::to_string(t.index);  // dangling; debugging aid only
        }
        break;
      case TermKind::Bottom:
        s += "bot";
        break;
      case TermKind::Lam: {
        if (in_fun || in_arg) {
          s += '(';
          print(t, s, false, false);
          s += ')';
          break;
        }
        std::string x = binder_name_for_lam(t);
        s += '\\';
        s += x;
        s += '.';
        vars.push_back(x);
        print(*t.a, s, false, false);
        vars.pop_back();
        break;
      }
      case TermKind::Mu: {
        if (in_fun || in_arg) {
          s += '(';
          print(t, s, false, false);
          s += ')';
          break;
        }
        std::string a = binder_name_for_mu(t);
        s += "mu ";
        s += a;
        s += ".[";
        if (t.out.is_bound()) {
          if (t.out.index == 0) {
            s += a;
          } else if (static_cast<size_t>(t.out.index - 1) < names.size()) {
            s += names[names.size() - t.out.index];
          } else {
            s += "?n" + std::to_string(t.out.index);
          }
        } else {
          s += t.out.name;
        }
        s += "] ";
        names.push_back(a);
        print(*t.a, s, false, false);
        names.pop_back();
        break;
      }
      case TermKind::App: {
        if (in_arg) {
          s += '(';
          print(t, s, false, false);
          s += ')';
          break;
        }
        print(*t.a, s, true, false);
        s += ' ';
        print(*t.b, s, false, true);
        break;
      }
    }
  }
};

}  // namespace detail

inline std::string pretty(const TermPtr& t) {
  std::string s;
  detail::Printer p;
  p.print(*t, s, false, false);
  return s;
}

}  // namespace lmu

#endif  // LMU_SYNTAX_HPP
