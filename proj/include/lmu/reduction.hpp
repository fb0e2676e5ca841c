#ifndef LMU_REDUCTION_HPP
#define LMU_REDUCTION_HPP

// Reduction for lambda-mu terms.
//
// Four redex shapes:
//   beta   (\x.M) N
//   mu     (mu b.[b] P) Q   -> mu g.[g] (P[Q.g/b]) Q     (g fresh)
//   mu'    (mu b.[d] P) Q   -> mu g.[d]  P[Q.g/b]        (d /= b, g fresh)
//   ren    mu a.[b] mu g.[d] P -> mu a.[.] P[b/g]        (marker [b] when d = g, else [d])
//
// The mu rules introduce a fresh binder even when it ends up unused; the
// contraction below reproduces that shape literally rather than reusing b.

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <random>
#include <stdexcept>
#include <vector>

#include "lmu/term.hpp"

namespace lmu {

enum class RedexKind { Beta, MuNamed, MuOther, Ren };

inline const char* redex_kind_name(RedexKind k) {
  switch (k) {
    case RedexKind::Beta: return "beta";
    case RedexKind::MuNamed: return "mu";
    case RedexKind::MuOther: return "mu'";
    case RedexKind::Ren: return "ren";
  }
  return "?";
}

// The kind is fully determined by the shape of the node; indices make the
// self-named test (out == the mu's own binder) depth-independent.
inline std::optional<RedexKind> redex_at(const Term& t) {
  if (t.kind == TermKind::App) {
    const Term& f = *t.a;
    if (f.kind == TermKind::Lam) return RedexKind::Beta;
    if (f.kind == TermKind::Mu) {
      bool self = f.out.is_bound() && f.out.index == 0;
      return self ? RedexKind::MuNamed : RedexKind::MuOther;
    }
    return std::nullopt;
  }
  if (t.kind == TermKind::Mu && t.a->kind == TermKind::Mu) return RedexKind::Ren;
  return std::nullopt;
}

namespace detail {

inline void collect_redexes(const Term& t, Position& here,
                            std::vector<std::pair<Position, RedexKind>>& out) {
  if (auto k = redex_at(t)) out.emplace_back(here, *k);
  switch (t.kind) {
    case TermKind::App:
      here.push_back(Step::Fun);
      collect_redexes(*t.a, here, out);
      here.back() = Step::Arg;
      collect_redexes(*t.b, here, out);
      here.pop_back();
      break;
    case TermKind::Lam:
    case TermKind::Mu:
      here.push_back(Step::Body);
      collect_redexes(*t.a, here, out);
      here.pop_back();
      break;
    default:
      break;
  }
}

}  // namespace detail

// All redex positions in leftmost-outermost order (prefix order on paths,
// function parts before argument parts).
inline std::vector<std::pair<Position, RedexKind>> redexes(const TermPtr& t) {
  std::vector<std::pair<Position, RedexKind>> out;
  Position here;
  detail::collect_redexes(*t, here, out);
  return out;
}

inline bool is_nf(const TermPtr& t) {
  if (redex_at(*t)) return false;
  switch (t->kind) {
    case TermKind::App: return is_nf(t->a) && is_nf(t->b);
    case TermKind::Lam:
    case TermKind::Mu: return is_nf(t->a);
    default: return true;
  }
}

// Head-normal forms: x M1 ... Mn, \x.H, or mu a.[b] H with H itself in hnf
// and not a mu term.  Bottom and redex-headed spines are excluded.
inline bool is_hnf(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Var:
      return true;
    case TermKind::Bottom:
      return false;
    case TermKind::Lam:
      return is_hnf(t->a);
    case TermKind::Mu:
      return t->a->kind != TermKind::Mu && is_hnf(t->a);
    case TermKind::App: {
      const Term* h = t.get();
      while (h->kind == TermKind::App) h = h->a.get();
      return h->kind == TermKind::Var;
    }
  }
  return false;
}

namespace detail {

inline TermPtr contract_here(const TermPtr& t) {
  auto kind = redex_at(*t);
  if (!kind) throw std::invalid_argument("contract: no redex at position");
  switch (*kind) {
    case RedexKind::Beta:
      return instantiate_lam(*t->a, t->b);

    case RedexKind::MuNamed:
    case RedexKind::MuOther: {
      const TermPtr& q = t->b;
      std::set<std::string> taken = free_names(t->a);
      for (auto& n : free_names(q)) taken.insert(n);
      std::string b = fresh_name(t->a->hint.empty() ? "b" : t->a->hint, taken);
      OpenedMu m = open_mu(*t->a, b);
      taken.insert(b);
      std::string g = fresh_name("g", taken);
      TermPtr body = subst_struct(m.body, b, q, g);
      if (*kind == RedexKind::MuNamed) return bind_mu(g, g, app(body, q));
      return bind_mu(g, m.out, body);
    }

    case RedexKind::Ren: {
      std::set<std::string> taken = free_names(t);
      std::string a = fresh_name(t->hint.empty() ? "a" : t->hint, taken);
      OpenedMu outer = open_mu(*t, a);
      taken.insert(a);
      const Term& inner_node = *outer.body;
      std::string g = fresh_name(inner_node.hint.empty() ? "g" : inner_node.hint, taken);
      OpenedMu inner = open_mu(inner_node, g);
      std::string marker = inner.out == g ? outer.out : inner.out;
      return bind_mu(a, marker, rename_name(inner.body, g, outer.out));
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace detail

// Contract the redex at `p`, rebuilding the path.  Binders along the path are
// opened with fresh names and closed again, so the result is locally closed.
inline TermPtr contract(const TermPtr& t, const Position& p, size_t i = 0) {
  if (i == p.size()) return detail::contract_here(t);
  switch (p[i]) {
    case Step::Fun:
      if (t->kind != TermKind::App) throw std::invalid_argument("contract: bad position");
      return app(contract(t->a, p, i + 1), t->b);
    case Step::Arg:
      if (t->kind != TermKind::App) throw std::invalid_argument("contract: bad position");
      return app(t->a, contract(t->b, p, i + 1));
    case Step::Body:
      if (t->kind == TermKind::Lam) {
        std::string x = fresh_name(t->hint.empty() ? "x" : t->hint, free_vars(t->a));
        return bind_lam(x, contract(open_lam(*t, x), p, i + 1));
      }
      if (t->kind == TermKind::Mu) {
        // avoid the node's own out marker too, or rebinding would capture it
        std::string a = fresh_name(t->hint.empty() ? "a" : t->hint, free_names(t));
        OpenedMu m = open_mu(*t, a);
        return bind_mu(a, m.out, contract(m.body, p, i + 1));
      }
      throw std::invalid_argument("contract: bad position");
  }
  throw std::logic_error("unreachable");
}

inline std::optional<TermPtr> step_lor(const TermPtr& t) {
  auto rs = redexes(t);
  if (rs.empty()) return std::nullopt;
  return contract(t, rs.front().first);
}

// The leftmost-outermost redex, when one exists.
inline std::optional<std::pair<Position, RedexKind>> lor_redex(const TermPtr& t) {
  auto rs = redexes(t);
  if (rs.empty()) return std::nullopt;
  return rs.front();
}

enum class Strategy { Lor, RightmostInnermost, Random };

struct NormalizeResult {
  enum class Status { Normal, FuelExhausted };
  struct StepRecord {
    Position pos;
    RedexKind kind;
    TermPtr term;  // term after this step
  };
  Status status;
  TermPtr final_term;
  std::vector<StepRecord> steps;
};

inline NormalizeResult normalize(TermPtr t, Strategy strategy, int fuel, uint64_t seed = 0) {
  NormalizeResult r;
  std::mt19937_64 rng(seed);
  for (int i = 0; i < fuel; ++i) {
    auto rs = redexes(t);
    if (rs.empty()) {
      r.status = NormalizeResult::Status::Normal;
      r.final_term = t;
      return r;
    }
    size_t pick = 0;
    switch (strategy) {
      case Strategy::Lor: pick = 0; break;
      case Strategy::RightmostInnermost: pick = rs.size() - 1; break;
      case Strategy::Random: pick = static_cast<size_t>(rng() % rs.size()); break;
    }
    t = contract(t, rs[pick].first);
    r.steps.push_back({rs[pick].first, rs[pick].second, t});
  }
  r.final_term = t;
  r.status = redexes(t).empty() ? NormalizeResult::Status::Normal : NormalizeResult::Status::FuelExhausted;
  return r;
}

// ---------------------------------------------------------------------------
// Bounded reduction graphs (nodes are terms up to alpha equality).

struct ReductionGraph {
  struct Edge {
    int from;
    Position pos;
    RedexKind kind;
    int to;
  };
  std::vector<TermPtr> nodes;
  std::vector<Edge> edges;
  std::vector<std::vector<int>> succ;  // indices into `edges`, per node
  std::vector<int> depth;              // bfs level of each node
  bool complete = false;               // every reachable reduct is present and expanded
  bool node_capped = false;            // incomplete specifically because max_nodes was hit

  int find(const TermPtr& t) const {
    for (size_t i = 0; i < nodes.size(); ++i)
      if (alpha_eq(nodes[i], t)) return static_cast<int>(i);
    return -1;
  }
};

// Breadth-first expansion from `root`.  Stops when `max_nodes` distinct terms
// have been discovered or (if max_depth >= 0) when all nodes up to that bfs
// level are expanded; `complete` records whether anything was cut off.
inline ReductionGraph reduction_graph(const TermPtr& root, int max_nodes, int max_depth = -1) {
  ReductionGraph g;
  std::map<TermPtr, int, TermLess> id;
  std::queue<int> todo;

  auto intern = [&](const TermPtr& t) -> int {
    auto it = id.find(t);
    if (it != id.end()) return it->second;
    if (static_cast<int>(g.nodes.size()) >= max_nodes) return -1;
    int n = static_cast<int>(g.nodes.size());
    id.emplace(t, n);
    g.nodes.push_back(t);
    g.succ.emplace_back();
    g.depth.push_back(-1);
    return n;
  };

  g.complete = true;
  int r = intern(root);
  if (r < 0) {
    g.complete = false;
    g.node_capped = true;
    return g;
  }
  g.depth[r] = 0;
  todo.push(r);

  while (!todo.empty()) {
    int n = todo.front();
    todo.pop();
    if (max_depth >= 0 && g.depth[n] >= max_depth) {
      // frontier node left unexpanded on purpose; the cut is only a
      // completeness loss if it still has redexes
      if (!redexes(g.nodes[n]).empty()) g.complete = false;
      continue;
    }
    for (auto& [pos, kind] : redexes(g.nodes[n])) {
      TermPtr next = contract(g.nodes[n], pos);
      int m = intern(next);
      if (m < 0) {
        g.complete = false;
        g.node_capped = true;
        continue;
      }
      if (g.depth[m] < 0) {
        g.depth[m] = g.depth[n] + 1;
        todo.push(m);
      }
      g.succ[n].push_back(static_cast<int>(g.edges.size()));
      g.edges.push_back({n, pos, kind, m});
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// Strong normalisation by exhaustive exploration.

struct SnResult {
  enum class Status { Sn, NotSn, Unknown };
  Status status;
  int max_path_len = -1;        // longest reduction sequence when Sn
  std::vector<TermPtr> cycle;   // witness loop when NotSn
};

namespace detail {

// Depth-first search for a cycle among the explored edges.
inline bool find_cycle(const ReductionGraph& g, std::vector<int>& stack_out) {
  enum { White, Gray, Black };
  std::vector<int> color(g.nodes.size(), White);
  std::vector<int> stack;

  // iterative dfs keeping an explicit edge cursor
  std::vector<std::pair<int, size_t>> frames;
  for (int s = 0; s < static_cast<int>(g.nodes.size()); ++s) {
    if (color[s] != White) continue;
    frames.push_back({s, 0});
    color[s] = Gray;
    stack.push_back(s);
    while (!frames.empty()) {
      auto& [n, cursor] = frames.back();
      if (cursor < g.succ[n].size()) {
        int e = g.succ[n][cursor++];
        int m = g.edges[e].to;
        if (color[m] == Gray) {
          // cycle: suffix of `stack` from m
          auto it = std::find(stack.begin(), stack.end(), m);
          stack_out.assign(it, stack.end());
          return true;
        }
        if (color[m] == White) {
          color[m] = Gray;
          stack.push_back(m);
          frames.push_back({m, 0});
        }
      } else {
        color[n] = Black;
        stack.pop_back();
        frames.pop_back();
      }
    }
  }
  return false;
}

}  // namespace detail

// Explore the reduction graph (node budget `fuel`); report a proven cycle as
// NotSn, a fully explored acyclic graph as Sn with its longest path, and
// anything cut off by the budget as Unknown.
inline SnResult is_sn(const TermPtr& t, int fuel) {
  ReductionGraph g = reduction_graph(t, fuel);
  std::vector<int> loop;
  if (detail::find_cycle(g, loop)) {
    SnResult r;
    r.status = SnResult::Status::NotSn;
    for (int n : loop) r.cycle.push_back(g.nodes[n]);
    return r;
  }
  if (!g.complete) return {SnResult::Status::Unknown, -1, {}};

  // longest path in a dag: post-order gives reverse topological order
  std::vector<int> longest(g.nodes.size(), -1);
  std::vector<int> order;
  {
    std::vector<char> seen(g.nodes.size(), 0);
    std::vector<std::pair<int, size_t>> fs{{0, 0}};
    seen[0] = 1;
    while (!fs.empty()) {
      auto& [n, cur] = fs.back();
      if (cur < g.succ[n].size()) {
        int m = g.edges[g.succ[n][cur++]].to;
        if (!seen[m]) {
          seen[m] = 1;
          fs.push_back({m, 0});
        }
      } else {
        order.push_back(n);
        fs.pop_back();
      }
    }
  }
  for (int n : order) {
    int best = 0;
    for (int e : g.succ[n]) best = std::max(best, 1 + longest[g.edges[e].to]);
    longest[n] = best;
  }
  return {SnResult::Status::Sn, longest[0], {}};
}

}  // namespace lmu

#endif  // LMU_REDUCTION_HPP
