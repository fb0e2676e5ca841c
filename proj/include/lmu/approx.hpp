#ifndef LMU_APPROX_HPP
#define LMU_APPROX_HPP

// Finite approximants of lambda-mu-bot terms.
//
//   A ::= bot | x A1 ... An | \x.A (A /= bot) | mu a.[b] A (A /= bot, not a mu)
//
// Every term has a unique largest approximant below it (truncate); the
// approximants of M are the downward closure of the truncations of its
// reducts.  We keep only the maximal truncations: they determine the whole
// set, and their join recovers the best finite picture of M's behaviour.

#include <optional>

#include "lmu/reduction.hpp"

namespace lmu {

inline bool is_approximant(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Bottom:
    case TermKind::Var:
      return true;
    case TermKind::Lam:
      return t->a->kind != TermKind::Bottom && is_approximant(t->a);
    case TermKind::Mu:
      return t->a->kind != TermKind::Bottom && t->a->kind != TermKind::Mu &&
             is_approximant(t->a);
    case TermKind::App: {
      const Term* h = t.get();
      while (h->kind == TermKind::App) {
        if (!is_approximant(h->b)) return false;
        h = h->a.get();
      }
      return h->kind == TermKind::Var;
    }
  }
  return false;
}

// a is below m: a is m with some subterms replaced by bot.  Both sides are
// compared structurally, so the relation is alpha-invariant.
inline bool direct_approx(const TermPtr& a, const TermPtr& m) {
  if (a->kind == TermKind::Bottom) return true;
  if (a->kind != m->kind) return false;
  switch (a->kind) {
    case TermKind::Var:
      return a->index == m->index && a->name == m->name;
    case TermKind::Lam:
      return direct_approx(a->a, m->a);
    case TermKind::Mu:
      return a->out == m->out && direct_approx(a->a, m->a);
    case TermKind::App:
      return direct_approx(a->a, m->a) && direct_approx(a->b, m->b);
    default:
      return true;  // Bottom handled above
  }
}

// The largest approximant below t: keep variable-headed structure, collapse
// anything that still computes (or hides a bot) to bot.
inline TermPtr truncate(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Var:
    case TermKind::Bottom:
      return t;
    case TermKind::Lam: {
      TermPtr b = truncate(t->a);
      if (b->kind == TermKind::Bottom) return bottom();
      return lam_raw(t->hint, b);
    }
    case TermKind::Mu: {
      if (t->a->kind == TermKind::Mu) return bottom();
      TermPtr b = truncate(t->a);
      if (b->kind == TermKind::Bottom) return bottom();
      return mu_raw(t->hint, t->out, b);
    }
    case TermKind::App: {
      const Term* h = t.get();
      while (h->kind == TermKind::App) h = h->a.get();
      if (h->kind != TermKind::Var) return bottom();
      return app(truncate(t->a), truncate(t->b));
    }
  }
  return bottom();
}

// Pointwise least upper bound of two compatible terms; empty when the two
// disagree anywhere outside a bot.
inline std::optional<TermPtr> join(const TermPtr& a, const TermPtr& b) {
  if (a->kind == TermKind::Bottom) return b;
  if (b->kind == TermKind::Bottom) return a;
  if (a->kind != b->kind) return std::nullopt;
  switch (a->kind) {
    case TermKind::Var:
      if (a->index == b->index && a->name == b->name) return a;
      return std::nullopt;
    case TermKind::Lam: {
      auto j = join(a->a, b->a);
      if (!j) return std::nullopt;
      return lam_raw(a->hint.empty() ? b->hint : a->hint, *j);
    }
    case TermKind::Mu: {
      if (!(a->out == b->out)) return std::nullopt;
      auto j = join(a->a, b->a);
      if (!j) return std::nullopt;
      return mu_raw(a->hint.empty() ? b->hint : a->hint, a->out, *j);
    }
    case TermKind::App: {
      auto jf = join(a->a, b->a);
      auto jx = join(a->b, b->b);
      if (!jf || !jx) return std::nullopt;
      return app(*jf, *jx);
    }
    default:
      return std::nullopt;
  }
}

struct ApproxSet {
  std::vector<TermPtr> maximal;  // antichain of maximal approximants found
  bool complete = false;         // every reduct was explored
  bool node_capped = false;      // exploration cut by the node budget

  // a belongs to the set iff it sits below one of the maximal elements
  bool member(const TermPtr& a) const {
    for (auto& p : maximal)
      if (direct_approx(a, p)) return true;
    return false;
  }
};

// Approximants discoverable within `depth` reduction steps.  Deeper
// exploration only grows the set: every reduct of a one-step reduct of M is
// a reduct of M one level further down.
inline ApproxSet approximants(const TermPtr& m, int depth, int max_nodes = 4000) {
  ReductionGraph g = reduction_graph(m, max_nodes, depth);
  ApproxSet s;
  s.complete = g.complete;
  s.node_capped = g.node_capped;
  std::vector<TermPtr> ts;
  ts.reserve(g.nodes.size());
  for (auto& n : g.nodes) ts.push_back(truncate(n));
  for (size_t i = 0; i < ts.size(); ++i) {
    bool keep = true;
    for (size_t j = 0; j < ts.size() && keep; ++j) {
      if (i == j) continue;
      if (!direct_approx(ts[i], ts[j])) continue;
      // dominated, or a duplicate of an earlier element
      if (!alpha_eq(ts[i], ts[j]) || j < i) keep = false;
    }
    if (keep) s.maximal.push_back(ts[i]);
  }
  return s;
}

// Join of everything found: the most informative single approximant for M at
// this depth.  Truncations of reducts of one term are always pairwise
// compatible (confluence), so the fold cannot fail on graph output.
inline std::optional<TermPtr> semantics(const TermPtr& m, int depth, int max_nodes = 4000) {
  ApproxSet s = approximants(m, depth, max_nodes);
  TermPtr acc = bottom();
  for (auto& p : s.maximal) {
    auto j = join(acc, p);
    if (!j) return std::nullopt;
    acc = *j;
  }
  return acc;
}

}  // namespace lmu

#endif  // LMU_APPROX_HPP
