#ifndef LMU_TERM_HPP
#define LMU_TERM_HPP

// Lambda-mu terms with an explicit bottom constant.
//
// Internally, bound lambda-variables and bound mu-names live in two disjoint
// de Bruijn index spaces; free variables and free names are kept as strings.
// That makes alpha equality plain structural equality and makes all the
// substitution operations capture-free by construction.  The named surface
// syntax lives in syntax.hpp.

#include <cassert>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lmu {

enum class TermKind { Var, Lam, App, Mu, Bottom };

struct Term;
using TermPtr = std::shared_ptr<const Term>;

// Reference to a mu-name: either an index into the enclosing mu binders
// (0 = innermost) or a free name.
struct NameRef {
  int index = -1;
  std::string name;

  bool is_bound() const { return index >= 0; }
  static NameRef bound(int i) { return NameRef{i, {}}; }
  static NameRef free(std::string n) { return NameRef{-1, std::move(n)}; }
};

inline int cmp(const NameRef& a, const NameRef& b) {
  if (a.is_bound() != b.is_bound()) return a.is_bound() ? -1 : 1;
  if (a.is_bound()) return a.index < b.index ? -1 : (a.index > b.index ? 1 : 0);
  return a.name.compare(b.name);
}
inline bool operator==(const NameRef& a, const NameRef& b) { return cmp(a, b) == 0; }

struct Term {
  TermKind kind;
  // Var: index >= 0 for a bound variable, otherwise `name` is a free variable.
  int index = -1;
  std::string name;
  // Lam/Mu: preferred display name for the binder (never affects equality).
  std::string hint;
  // Mu: the named subterm marker [beta]; scoped under the Mu's own binder,
  // so NameRef::bound(0) refers to this very mu.
  NameRef out;
  // Lam/Mu: body in `a`. App: function in `a`, argument in `b`.
  TermPtr a, b;
};

inline TermPtr make(Term&& t) { return std::make_shared<const Term>(std::move(t)); }

inline TermPtr var(std::string n) {
  Term t;
  t.kind = TermKind::Var;
  t.name = std::move(n);
  return make(std::move(t));
}

inline TermPtr bound_var(int i) {
  Term t;
  t.kind = TermKind::Var;
  t.index = i;
  return make(std::move(t));
}

inline TermPtr bottom() {
  Term t;
  t.kind = TermKind::Bottom;
  return make(std::move(t));
}

inline TermPtr app(TermPtr f, TermPtr x) {
  Term t;
  t.kind = TermKind::App;
  t.a = std::move(f);
  t.b = std::move(x);
  return make(std::move(t));
}

// Raw constructors: the body is already expressed with de Bruijn indices.
inline TermPtr lam_raw(std::string hint, TermPtr body) {
  Term t;
  t.kind = TermKind::Lam;
  t.hint = std::move(hint);
  t.a = std::move(body);
  return make(std::move(t));
}

inline TermPtr mu_raw(std::string hint, NameRef out, TermPtr body) {
  Term t;
  t.kind = TermKind::Mu;
  t.hint = std::move(hint);
  t.out = std::move(out);
  t.a = std::move(body);
  return make(std::move(t));
}

// ---------------------------------------------------------------------------
// Structural comparison (ignores binder hints, i.e. decides alpha equality).

inline int term_cmp(const Term& x, const Term& y) {
  if (x.kind != y.kind) return static_cast<int>(x.kind) < static_cast<int>(y.kind) ? -1 : 1;
  switch (x.kind) {
    case TermKind::Var: {
      bool xb = x.index >= 0, yb = y.index >= 0;
      if (xb != yb) return xb ? -1 : 1;
      if (xb) return x.index < y.index ? -1 : (x.index > y.index ? 1 : 0);
      return x.name.compare(y.name);
    }
    case TermKind::Bottom:
      return 0;
    case TermKind::Lam:
      return term_cmp(*x.a, *y.a);
    case TermKind::App: {
      int c = term_cmp(*x.a, *y.a);
      return c != 0 ? c : term_cmp(*x.b, *y.b);
    }
    case TermKind::Mu: {
      int c = cmp(x.out, y.out);
      return c != 0 ? c : term_cmp(*x.a, *y.a);
    }
  }
  return 0;
}

inline int term_cmp(const TermPtr& x, const TermPtr& y) {
  if (x == y) return 0;
  return term_cmp(*x, *y);
}

inline bool alpha_eq(const TermPtr& x, const TermPtr& y) { return term_cmp(x, y) == 0; }

struct TermLess {
  bool operator()(const TermPtr& x, const TermPtr& y) const { return term_cmp(x, y) < 0; }
};

// ---------------------------------------------------------------------------
// Free variables / free names.

inline void collect_free_vars(const Term& t, std::set<std::string>& out) {
  switch (t.kind) {
    case TermKind::Var:
      if (t.index < 0) out.insert(t.name);
      break;
    case TermKind::Lam:
    case TermKind::Mu:
      collect_free_vars(*t.a, out);
      break;
    case TermKind::App:
      collect_free_vars(*t.a, out);
      collect_free_vars(*t.b, out);
      break;
    case TermKind::Bottom:
      break;
  }
}

inline void collect_free_names(const Term& t, std::set<std::string>& out) {
  switch (t.kind) {
    case TermKind::Mu:
      if (!t.out.is_bound()) out.insert(t.out.name);
      collect_free_names(*t.a, out);
      break;
    case TermKind::Lam:
      collect_free_names(*t.a, out);
      break;
    case TermKind::App:
      collect_free_names(*t.a, out);
      collect_free_names(*t.b, out);
      break;
    default:
      break;
  }
}

inline std::set<std::string> free_vars(const TermPtr& t) {
  std::set<std::string> s;
  collect_free_vars(*t, s);
  return s;
}

inline std::set<std::string> free_names(const TermPtr& t) {
  std::set<std::string> s;
  collect_free_names(*t, s);
  return s;
}

// Smallest primed variant of `base` not in `taken`: base, base', base'', ...
inline std::string fresh_name(std::string base, const std::set<std::string>& taken) {
  if (base.empty()) base = "x";
  while (taken.count(base)) base += '\'';
  return base;
}

// ---------------------------------------------------------------------------
// Binding and substitution.
//
// All public operations expect locally closed terms (every index resolves to
// a binder inside the tree) and return locally closed terms.  Binders are
// opened with fresh free names on the way down and closed again on the way
// up, so none of the operations below ever needs index shifting.

namespace detail {

inline TermPtr close_var_at(const TermPtr& t, const std::string& x, int depth) {
  switch (t->kind) {
    case TermKind::Var:
      if (t->index < 0 && t->name == x) return bound_var(depth);
      return t;
    case TermKind::Lam:
      return lam_raw(t->hint, close_var_at(t->a, x, depth + 1));
    case TermKind::App:
      return app(close_var_at(t->a, x, depth), close_var_at(t->b, x, depth));
    case TermKind::Mu:
      return mu_raw(t->hint, t->out, close_var_at(t->a, x, depth));
    case TermKind::Bottom:
      return t;
  }
  return t;
}

inline TermPtr inst_var_at(const TermPtr& t, const TermPtr& v, int depth) {
  switch (t->kind) {
    case TermKind::Var:
      if (t->index == depth) return v;
      assert(t->index < depth && "dangling variable index");
      return t;
    case TermKind::Lam:
      return lam_raw(t->hint, inst_var_at(t->a, v, depth + 1));
    case TermKind::App:
      return app(inst_var_at(t->a, v, depth), inst_var_at(t->b, v, depth));
    case TermKind::Mu:
      return mu_raw(t->hint, t->out, inst_var_at(t->a, v, depth));
    case TermKind::Bottom:
      return t;
  }
  return t;
}

inline TermPtr close_name_at(const TermPtr& t, const std::string& n, int depth) {
  switch (t->kind) {
    case TermKind::Mu: {
      NameRef out = t->out;
      if (!out.is_bound() && out.name == n) out = NameRef::bound(depth + 1);
      return mu_raw(t->hint, out, close_name_at(t->a, n, depth + 1));
    }
    case TermKind::Lam:
      return lam_raw(t->hint, close_name_at(t->a, n, depth));
    case TermKind::App:
      return app(close_name_at(t->a, n, depth), close_name_at(t->b, n, depth));
    default:
      return t;
  }
}

inline TermPtr open_name_at(const TermPtr& t, const std::string& n, int depth) {
  switch (t->kind) {
    case TermKind::Mu: {
      NameRef out = t->out;
      if (out.is_bound() && out.index == depth + 1) out = NameRef::free(n);
      return mu_raw(t->hint, out, open_name_at(t->a, n, depth + 1));
    }
    case TermKind::Lam:
      return lam_raw(t->hint, open_name_at(t->a, n, depth));
    case TermKind::App:
      return app(open_name_at(t->a, n, depth), open_name_at(t->b, n, depth));
    default:
      return t;
  }
}

}  // namespace detail

// Build a lambda binding every free occurrence of `x` in `body`.
inline TermPtr bind_lam(const std::string& x, const TermPtr& body) {
  return lam_raw(x, detail::close_var_at(body, x, 0));
}

// Build mu `a`.[`out_name`] `body`, binding free occurrences of `a` in both
// the marker and the body (out_name == a gives the self-named form).
inline TermPtr bind_mu(const std::string& a, const std::string& out_name, const TermPtr& body) {
  NameRef out = (out_name == a) ? NameRef::bound(0) : NameRef::free(out_name);
  return mu_raw(a, out, detail::close_name_at(body, a, 0));
}

// Body of a lambda with the binder replaced by free variable `x`.
inline TermPtr open_lam(const Term& lam, const std::string& x) {
  assert(lam.kind == TermKind::Lam);
  return detail::inst_var_at(lam.a, var(x), 0);
}

// Body of a lambda with the binder replaced by a whole (locally closed) term.
inline TermPtr instantiate_lam(const Term& lam, const TermPtr& value) {
  assert(lam.kind == TermKind::Lam);
  return detail::inst_var_at(lam.a, value, 0);
}

struct OpenedMu {
  std::string out;  // resolved marker name (equals the chosen binder name for mu a.[a] ...)
  TermPtr body;
};

// Open a mu node, exposing its binder as free name `a`.
inline OpenedMu open_mu(const Term& mu, const std::string& a) {
  assert(mu.kind == TermKind::Mu);
  OpenedMu r;
  if (mu.out.is_bound()) {
    assert(mu.out.index == 0 && "marker must resolve within a locally closed term");
    r.out = a;
  } else {
    r.out = mu.out.name;
  }
  r.body = detail::open_name_at(mu.a, a, 0);
  return r;
}

// M[N/x]: replace every free occurrence of variable x.
inline TermPtr subst_term(const TermPtr& m, const std::string& x, const TermPtr& n) {
  switch (m->kind) {
    case TermKind::Var:
      if (m->index < 0 && m->name == x) return n;
      return m;
    case TermKind::Lam:
      return lam_raw(m->hint, subst_term(m->a, x, n));
    case TermKind::App:
      return app(subst_term(m->a, x, n), subst_term(m->b, x, n));
    case TermKind::Mu:
      return mu_raw(m->hint, m->out, subst_term(m->a, x, n));
    case TermKind::Bottom:
      return m;
  }
  return m;
}

// Structural substitution M[L.g/a]: every named subterm [a]N becomes
// [g]((N[L.g/a]) L).  The caller chooses g fresh for M and L.
inline TermPtr subst_struct(const TermPtr& m, const std::string& a, const TermPtr& l,
                            const std::string& g) {
  switch (m->kind) {
    case TermKind::Mu: {
      TermPtr body = subst_struct(m->a, a, l, g);
      if (!m->out.is_bound() && m->out.name == a)
        return mu_raw(m->hint, NameRef::free(g), app(body, l));
      return mu_raw(m->hint, m->out, body);
    }
    case TermKind::Lam:
      return lam_raw(m->hint, subst_struct(m->a, a, l, g));
    case TermKind::App:
      return app(subst_struct(m->a, a, l, g), subst_struct(m->b, a, l, g));
    default:
      return m;
  }
}

// M[b/g]: rename every free occurrence of name g (in marker position) to b.
inline TermPtr rename_name(const TermPtr& m, const std::string& g, const std::string& b) {
  switch (m->kind) {
    case TermKind::Mu: {
      NameRef out = m->out;
      if (!out.is_bound() && out.name == g) out = NameRef::free(b);
      return mu_raw(m->hint, out, rename_name(m->a, g, b));
    }
    case TermKind::Lam:
      return lam_raw(m->hint, rename_name(m->a, g, b));
    case TermKind::App:
      return app(rename_name(m->a, g, b), rename_name(m->b, g, b));
    default:
      return m;
  }
}

// ---------------------------------------------------------------------------
// Positions: paths from the root to a subterm.

enum class Step { Fun, Arg, Body };
using Position = std::vector<Step>;

inline std::string position_string(const Position& p) {
  if (p.empty()) return "root";
  std::string s;
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) s += '.';
    switch (p[i]) {
      case Step::Fun: s += "fun"; break;
      case Step::Arg: s += "arg"; break;
      case Step::Body: s += "body"; break;
    }
  }
  return s;
}

// Subterm at a position; note the result may reference binders above the
// position, so it is only good for shape inspection.
inline TermPtr subterm_at(TermPtr t, const Position& p) {
  for (Step s : p) {
    switch (s) {
      case Step::Fun:
        if (t->kind != TermKind::App) throw std::invalid_argument("position: fun of non-application");
        t = t->a;
        break;
      case Step::Arg:
        if (t->kind != TermKind::App) throw std::invalid_argument("position: arg of non-application");
        t = t->b;
        break;
      case Step::Body:
        if (t->kind != TermKind::Lam && t->kind != TermKind::Mu)
          throw std::invalid_argument("position: body of non-binder");
        t = t->a;
        break;
    }
  }
  return t;
}

// ---------------------------------------------------------------------------
// Misc helpers.

inline bool is_pure(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Bottom: return false;
    case TermKind::Var: return true;
    case TermKind::Lam:
    case TermKind::Mu: return is_pure(t->a);
    case TermKind::App: return is_pure(t->a) && is_pure(t->b);
  }
  return true;
}

inline int term_size(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Var:
    case TermKind::Bottom: return 1;
    case TermKind::Lam:
    case TermKind::Mu: return 1 + term_size(t->a);
    case TermKind::App: return 1 + term_size(t->a) + term_size(t->b);
  }
  return 1;
}

}  // namespace lmu

#endif  // LMU_TERM_HPP
