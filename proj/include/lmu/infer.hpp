#ifndef LMU_INFER_HPP
#define LMU_INFER_HPP

// Bounded derivation search for the strict systems S and SN.
//
// The system has no principal typings, so this is an honest enumerator:
// every returned triple carries a derivation that passes check_derivation,
// and completeness only holds within the configured bounds.
//
// The search is demand driven.  A demand is a basic type for a subterm; the
// subterm's shape decides the premise demands, contexts come back minimal
// (each variable and name mapped to exactly the meet of its uses) and are
// widened by rebase when branches merge.  Guesses happen at three points
// only, each from a finite, deterministic candidate list:
//   - the root demand: pooled basics, smallest first;
//   - the operand type of an application: intersections of the basics the
//     operand itself admits (probed against the pool), plus w under S;
//   - the premise continuation D of a mu: weakenings of the demanded
//     continuation for a self-naming mu, pooled continuations otherwise.
// Recursion is structural in the term, so the search always terminates.
// `depth` bounds the size of pooled candidate types (and with it the height
// of useful derivations), `width` bounds intersection arity and continuation
// length.

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lmu/derivation.hpp"
#include "lmu/reduction.hpp"

namespace lmu {

struct InferConfig {
  int depth = 6;   // size budget for pooled candidate types
  int width = 3;   // max intersection arity and continuation length
  int nconsts = 2; // type constants p0..p{nconsts-1}

  // enumeration caps; results stay sound and deterministic, the caps only
  // trade completeness-within-bounds for time
  int max_pool = 4000;        // pooled basic types (root demands and probes)
  int max_args = 64;          // operand candidates per application
  int max_arg_seeds = 16;     // probed operand basics combined into candidates
  int max_lanes = 8;          // operand assumptions merged per application
  int max_arg_variants = 3;   // operand derivations tried per assumption
  int max_conts = 24;         // continuation candidates per mu
  int max_per_node = 24;      // memoised results per (subterm, demand)
  int max_results = 256;      // root triples
  long max_work = 2000000;    // overall search step budget
};

struct InferResult {
  VarContext vctx;
  Inter type;
  NameContext nctx;
  Derivation deriv;
};

namespace detail {

inline int size_of_inter(const Inter& s);

inline int size_of_cont(const Cont& c) {
  int n = 1;
  for (auto& s : c.parts) n += size_of_inter(s);
  return n;
}

inline int size_of_basic(const BasicType& b) { return 1 + size_of_cont(b.cont); }

inline int size_of_inter(const Inter& s) {
  if (s.items.empty()) return 1;
  int n = 0;
  for (auto& b : s.items) n += size_of_basic(b);
  return n;
}

struct TypePool {
  std::vector<BasicType> basics; // size order; root demands and operand probes
  std::vector<Cont> conts;       // mu continuation candidates, Omega first
};

// stratified enumeration by the size measure |w|=|O|=1, |(C)->p|=1+|C|,
// |SxC|=|S|+|C|, |A1&..&An|=sum; intersections are kept canonical by only
// appending a conjunct strictly above the current last one
inline TypePool build_pool(const InferConfig& cfg, bool omega_free_only) {
  TypePool pool;
  int budget = cfg.depth + 1;
  std::vector<std::vector<Inter>> inters(budget + 1);
  std::vector<std::vector<Cont>> conts(budget + 1);
  std::vector<std::vector<BasicType>> basics(budget + 1);
  size_t ninters = 0, nconts = 1, nbasics = 0;
  size_t inter_cap = std::max<size_t>(static_cast<size_t>(cfg.max_args) * 8, 2048);
  size_t cont_cap = std::max<size_t>(static_cast<size_t>(cfg.max_conts) * 8, 1024);
  if (budget >= 1) conts[1].push_back(Cont{});
  for (int s = 2; s <= budget; ++s) {
    for (auto& c : conts[s - 1]) {
      if (nbasics >= static_cast<size_t>(cfg.max_pool)) break;
      for (int k = 0; k < cfg.nconsts; ++k) basics[s].push_back(basic(c, "p" + std::to_string(k)));
      nbasics += cfg.nconsts;
    }
    for (auto& b : basics[s])
      if (ninters < inter_cap) {
        inters[s].push_back(single(b));
        ++ninters;
      }
    for (int a = 2; a < s && ninters < inter_cap; ++a)
      for (auto& rest : inters[s - a]) {
        if (static_cast<int>(rest.items.size()) + 1 > cfg.width) continue;
        for (auto& b : basics[a]) {
          if (cmp(rest.items.back(), b) >= 0) continue;
          Inter t = rest;
          t.items.push_back(b);
          inters[s].push_back(std::move(t));
          if (++ninters >= inter_cap) break;
        }
        if (ninters >= inter_cap) break;
      }
    for (int a = 1; a < s && nconts < cont_cap; ++a) {
      std::vector<Inter> heads;
      if (a == 1 && !omega_free_only) heads.push_back(omega());
      for (auto& t : inters[a]) heads.push_back(t);
      for (auto& part : heads) {
        for (auto& rest : conts[s - a]) {
          if (static_cast<int>(rest.parts.size()) + 1 > cfg.width) continue;
          conts[s].push_back(cont_push(part, rest));
          if (++nconts >= cont_cap) break;
        }
        if (nconts >= cont_cap) break;
      }
    }
  }
  for (int s = 2; s <= budget; ++s)
    for (auto& b : basics[s]) {
      if (static_cast<int>(pool.basics.size()) >= cfg.max_pool) break;
      pool.basics.push_back(b);
    }
  for (int s = 1; s <= budget; ++s)
    for (auto& c : conts[s]) {
      if (static_cast<int>(pool.conts.size()) >= cfg.max_conts) break;
      pool.conts.push_back(c);
    }
  return pool;
}

// the term opened once up front: every binder exposed with a globally fresh
// name, so subterm judgements are plain free-variable judgements
struct SearchNode {
  TermPtr closed; // locally closed subterm as it appears in judgements
  TermKind kind = TermKind::Bottom;
  SearchNode* fun = nullptr;  // App
  SearchNode* arg = nullptr;  // App
  SearchNode* body = nullptr; // Lam and Mu
  std::string binder;         // opened binder name
  std::string out;            // Mu marker name after opening
  bool out_self = false;      // Mu names its own binder
  std::string var;            // Var name
};

// derivation skeleton produced by the search: rule tree with a conclusion
// type per node but no contexts; premise trees are shared, so combining
// results is cheap, and materialize stamps the contexts in one final pass
struct Pre {
  Rule rule = Rule::Ax;
  TermPtr term;
  Inter type;
  std::vector<std::shared_ptr<const Pre>> premises;
  std::optional<std::pair<std::string, Inter>> bind_var;  // Abs premise sees x:S
  std::optional<std::pair<std::string, Cont>> bind_name;  // mu premise sees a:C
};
using PrePtr = std::shared_ptr<const Pre>;

inline Derivation materialize(const Pre& p, const VarContext& g, const NameContext& dn) {
  Derivation d;
  d.rule = p.rule;
  d.conclusion = Judgement{g, p.term, p.type, dn};
  if (p.premises.empty()) return d;
  const VarContext* gp = &g;
  const NameContext* dnp = &dn;
  VarContext gv;
  NameContext dv;
  if (p.bind_var) {
    gv = g;
    gv.insert_or_assign(p.bind_var->first, p.bind_var->second);
    gp = &gv;
  }
  if (p.bind_name) {
    dv = dn;
    dv.insert_or_assign(p.bind_name->first, p.bind_name->second);
    dnp = &dv;
  }
  for (const auto& q : p.premises) d.premises.push_back(materialize(*q, *gp, *dnp));
  return d;
}

struct Search {
  const InferConfig& cfg;
  System sys;
  TypePool pool;
  std::deque<SearchNode> nodes;
  std::set<std::string> taken;
  int counter = 0;
  SearchNode* root = nullptr;

  struct Res {
    VarContext g;
    NameContext dn;
    PrePtr d;
  };
  struct KeyLess {
    bool operator()(const std::pair<const SearchNode*, BasicType>& a,
                    const std::pair<const SearchNode*, BasicType>& b) const {
      if (a.first != b.first) return a.first < b.first;
      return cmp(a.second, b.second) < 0;
    }
  };
  std::map<std::pair<const SearchNode*, BasicType>, std::vector<Res>, KeyLess> memo;
  std::map<const SearchNode*, std::vector<Inter>> argcands;
  long work = 0;

  Search(const InferConfig& c, System s, const TermPtr& m)
      : cfg(c), sys(s), pool(build_pool(c, s == System::SN)) {
    if (s == System::Bot) throw std::invalid_argument("infer: search covers S and SN only");
    for (auto& v : free_vars(m)) taken.insert(v);
    for (auto& n : free_names(m)) taken.insert(n);
    root = build(m);
  }

  std::string fresh(const char* stem) {
    std::string n;
    do {
      n = std::string("_") + stem + std::to_string(++counter);
    } while (taken.count(n));
    taken.insert(n);
    return n;
  }

  SearchNode* build(const TermPtr& t) {
    nodes.push_back(SearchNode{});
    SearchNode* n = &nodes.back();
    n->closed = t;
    n->kind = t->kind;
    switch (t->kind) {
      case TermKind::Var: n->var = t->name; break;
      case TermKind::Bottom: break;
      case TermKind::App:
        n->fun = build(t->a);
        n->arg = build(t->b);
        break;
      case TermKind::Lam:
        n->binder = fresh("x");
        n->body = build(open_lam(*t, n->binder));
        break;
      case TermKind::Mu: {
        n->binder = fresh("a");
        OpenedMu m = open_mu(*t, n->binder);
        n->out = m.out;
        n->out_self = (m.out == n->binder);
        n->body = build(m.body);
        break;
      }
    }
    return n;
  }

  static void push_result(std::vector<Res>& out, Res r, int cap) {
    if (static_cast<int>(out.size()) >= cap) return;
    for (auto& q : out)
      if (q.g == r.g && q.dn == r.dn) return;
    out.push_back(std::move(r));
  }

  // operand candidates for an application: intersections (up to `width`) of
  // the basics the operand itself admits somewhere in the pool, total size
  // ascending, so the guessed type is always one the operand can take
  const std::vector<Inter>& arg_candidates(const SearchNode* arg) {
    auto it = argcands.find(arg);
    if (it != argcands.end()) return it->second;
    std::vector<const BasicType*> seeds;
    for (const BasicType& b : pool.basics) {
      if (work > cfg.max_work) break;
      if (!derive(arg, b).empty()) {
        seeds.push_back(&b);
        if (static_cast<int>(seeds.size()) >= cfg.max_arg_seeds) break;
      }
    }
    std::vector<Inter> cands;
    for (auto* b : seeds) cands.push_back(single(*b));
    if (cfg.width >= 2)
      for (size_t i = 0; i < seeds.size(); ++i)
        for (size_t j = i + 1; j < seeds.size(); ++j) {
          Inter s = make_inter({*seeds[i], *seeds[j]});
          if (s.items.size() == 2) cands.push_back(std::move(s));
          if (cfg.width >= 3)
            for (size_t k = j + 1; k < seeds.size(); ++k) {
              Inter u = make_inter({*seeds[i], *seeds[j], *seeds[k]});
              if (u.items.size() == 3) cands.push_back(std::move(u));
            }
        }
    std::stable_sort(cands.begin(), cands.end(), [](const Inter& a, const Inter& b) {
      int sa = size_of_inter(a), sb = size_of_inter(b);
      return sa != sb ? sa < sb : a < b;
    });
    if (static_cast<int>(cands.size()) > cfg.max_args) cands.resize(cfg.max_args);
    auto& slot = argcands[arg];
    slot = std::move(cands);
    return slot;
  }

  // premise continuations D with C <= D, for a mu naming its own binder:
  // weaker prefixes of C, i.e. componentwise conjunct subsets
  std::vector<Cont> named_conts(const Cont& c) const {
    std::vector<Cont> ds;
    ds.push_back(Cont{});
    for (size_t len = 1; len <= c.parts.size(); ++len) {
      std::vector<std::vector<Inter>> choices(len);
      for (size_t i = 0; i < len; ++i) {
        const auto& items = c.parts[i].items;
        size_t m = items.size();
        for (size_t mask = 0; mask < (size_t{1} << m); ++mask) {
          if (sys == System::SN && mask == 0) continue;
          std::vector<BasicType> sub;
          for (size_t b = 0; b < m; ++b)
            if (mask & (size_t{1} << b)) sub.push_back(items[b]);
          choices[i].push_back(make_inter(std::move(sub)));
        }
        if (choices[i].empty()) return ds;
      }
      std::vector<size_t> idx(len, 0);
      while (true) {
        Cont d;
        for (size_t i = 0; i < len; ++i) d.parts.push_back(choices[i][idx[i]]);
        ds.push_back(std::move(d));
        if (static_cast<int>(ds.size()) >= cfg.max_conts) return ds;
        size_t i = 0;
        while (i < len && ++idx[i] == choices[i].size()) idx[i++] = 0;
        if (i == len) break;
      }
    }
    return ds;
  }

  const std::vector<Res>& derive(const SearchNode* n, const BasicType& a) {
    auto key = std::make_pair(n, a);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    ++work;
    std::vector<Res> out;

    switch (n->kind) {
      case TermKind::Bottom:
        break;

      case TermKind::Var: {
        Res r;
        r.g.emplace(n->var, single(a));
        auto p = std::make_shared<Pre>();
        p->rule = Rule::Ax;
        p->term = n->closed;
        p->type = single(a);
        r.d = std::move(p);
        out.push_back(std::move(r));
        break;
      }

      case TermKind::Lam: {
        if (a.cont.parts.empty()) break;
        const Inter s = a.cont.parts[0];
        if (sys == System::SN && is_omega(s)) break;
        Cont rest;
        rest.parts.assign(a.cont.parts.begin() + 1, a.cont.parts.end());
        for (const Res& r : derive(n->body, basic(rest, a.head))) {
          ++work;
          auto used = r.g.find(n->binder);
          if (used != r.g.end() && !subtype(s, used->second)) continue;
          Res res;
          res.g = r.g;
          res.g.erase(n->binder);
          res.dn = r.dn;
          auto p = std::make_shared<Pre>();
          p->rule = Rule::Abs;
          p->term = n->closed;
          p->type = single(a);
          p->bind_var = {n->binder, s};
          p->premises.push_back(r.d);
          res.d = std::move(p);
          push_result(out, std::move(res), cfg.max_per_node);
        }
        break;
      }

      case TermKind::App: {
        // one lane per operand assumption, round-robin merged afterwards, so
        // the cap keeps argument diversity instead of exhausting itself on
        // whatever the first assumption (usually omega) produces
        std::vector<std::vector<Res>> lanes;
        int lane_cap = cfg.max_per_node;
        auto attach = [&](std::vector<Res>& lane, const Res& rf, const Inter& s,
                          const std::vector<const Res*>& rargs) {
          if (static_cast<int>(lane.size()) >= lane_cap) return;
          ++work;
          VarContext g = rf.g;
          NameContext dn = rf.dn;
          for (auto* ra : rargs) {
            g = inter_ctx(g, ra->g);
            dn = inter_nctx(dn, ra->dn);
          }
          Res res;
          res.g = std::move(g);
          res.dn = std::move(dn);
          auto p = std::make_shared<Pre>();
          p->rule = Rule::App;
          p->term = n->closed;
          p->type = single(a);
          p->premises.push_back(rf.d);
          if (rargs.size() == 1) {
            p->premises.push_back(rargs[0]->d);
          } else {
            // zero or several argument premises sit under an (Inter) node;
            // with none the node types the operand omega by the empty rule
            auto w = std::make_shared<Pre>();
            w->rule = Rule::Inter;
            w->term = n->arg->closed;
            w->type = s;
            for (auto* ra : rargs) w->premises.push_back(ra->d);
            p->premises.push_back(std::move(w));
          }
          res.d = std::move(p);
          push_result(lane, std::move(res), lane_cap);
        };

        if (sys == System::S) {
          lanes.emplace_back();
          for (const Res& rf : derive(n->fun, basic(cont_push(omega(), a.cont), a.head)))
            attach(lanes.back(), rf, omega(), {});
        }
        int nlanes = std::min(cfg.max_lanes, cfg.max_per_node);
        const auto& cands = arg_candidates(n->arg);
        // lanes interleave candidate index with operand-result variant k
        // (variant k pairs each conjunct with its k-th derivation, clamped),
        // so a second derivation of an early operand, which can type the
        // operand's free variables differently, is not buried behind every
        // remaining candidate type
        int maxvar = std::max(1, cfg.max_arg_variants);
        int span = static_cast<int>(cands.size()) + maxvar - 1;
        for (int d = 0; d < span; ++d) {
          // the merge below never reaches past max_per_node lane positions,
          // so lanes beyond the budget would be wasted work
          if (static_cast<int>(lanes.size()) >= nlanes || work > cfg.max_work) break;
          for (int k = 0; k <= std::min(d, maxvar - 1); ++k) {
            int ci = d - k;
            if (ci >= static_cast<int>(cands.size())) continue;
            if (static_cast<int>(lanes.size()) >= nlanes || work > cfg.max_work) break;
            const Inter& s = cands[ci];
            std::vector<const Res*> rargs;
            bool advanced = false;
            bool ok = true;
            for (auto& b : s.items) {
              const auto& rs = derive(n->arg, b);
              if (rs.empty()) { ok = false; break; }
              int i = std::min(k, static_cast<int>(rs.size()) - 1);
              if (i == k) advanced = true;
              rargs.push_back(&rs[i]);
            }
            // a clamped combination repeats an earlier variant exactly
            if (!ok || !advanced) continue;
            lanes.emplace_back();
            lane_cap = cfg.max_per_node - static_cast<int>(lanes.size()) + 1;
            for (const Res& rf : derive(n->fun, basic(cont_push(s, a.cont), a.head)))
              attach(lanes.back(), rf, s, rargs);
            if (lanes.back().empty()) lanes.pop_back();
          }
        }
        // diagonal merge: lane index and position advance together, so
        // neither operand nor function diversity is buried by the other
        size_t maxd = 0;
        for (size_t l = 0; l < lanes.size(); ++l)
          maxd = std::max(maxd, l + lanes[l].size());
        for (size_t d = 0; d < maxd && static_cast<int>(out.size()) < cfg.max_per_node; ++d)
          for (size_t l = 0; l <= d && l < lanes.size(); ++l) {
            size_t i = d - l;
            if (i < lanes[l].size())
              push_result(out, std::move(lanes[l][i]), cfg.max_per_node);
          }
        break;
      }

      case TermKind::Mu: {
        const Cont& c = a.cont;
        std::vector<Cont> ds;
        if (n->out_self) {
          ds = named_conts(c);
        } else {
          ds = pool.conts;
          if (static_cast<int>(ds.size()) > cfg.max_conts) ds.resize(cfg.max_conts);
        }
        for (const Cont& d : ds) {
          if (static_cast<int>(out.size()) >= cfg.max_per_node || work > cfg.max_work) break;
          for (const Res& r : derive(n->body, basic(d, a.head))) {
            ++work;
            auto used = r.dn.find(n->binder);
            if (used != r.dn.end() && !subtype(c, used->second)) continue;
            NameContext dn = r.dn;
            dn.erase(n->binder);
            Res res;
            res.g = r.g;
            if (!n->out_self) {
              // the named name carries the meet of D and its uses in the body
              Cont cprime = d;
              auto bit = dn.find(n->out);
              if (bit != dn.end()) {
                cprime = inter_cont(cprime, bit->second);
                dn.erase(bit);
              }
              dn.emplace(n->out, std::move(cprime));
            }
            res.dn = std::move(dn);
            auto p = std::make_shared<Pre>();
            p->rule = n->out_self ? Rule::Mu : Rule::MuPrime;
            p->term = n->closed;
            p->type = single(a);
            p->bind_name = {n->binder, c};
            p->premises.push_back(r.d);
            res.d = std::move(p);
            push_result(out, std::move(res), cfg.max_per_node);
          }
        }
        break;
      }
    }

    std::sort(out.begin(), out.end(), [](const Res& x, const Res& y) {
      if (x.g != y.g) return x.g < y.g;
      return x.dn < y.dn;
    });
    auto& slot = memo[key];
    slot = std::move(out);
    return slot;
  }
};

inline Derivation omega_derivation(const TermPtr& m) {
  Derivation d;
  d.rule = Rule::Inter;
  d.conclusion = Judgement{{}, m, omega(), {}};
  return d;
}

}  // namespace detail

// enumerate root triples; `stop` (optional) ends the search as soon as a
// result satisfying it has been pushed
inline std::vector<InferResult> infer(
    const TermPtr& m, System sys, const InferConfig& cfg = {},
    const std::function<bool(const InferResult&)>& stop = {}) {
  std::vector<InferResult> rs;
  if (sys == System::S) {
    rs.push_back({{}, omega(), {}, detail::omega_derivation(m)});
    if (stop && stop(rs.back())) return rs;
  }
  detail::Search search(cfg, sys, m);
  for (const BasicType& a : search.pool.basics) {
    if (search.work > cfg.max_work) break;
    for (const auto& r : search.derive(search.root, a)) {
      rs.push_back({r.g, single(a), r.dn, detail::materialize(*r.d, r.g, r.dn)});
      if (stop && stop(rs.back())) return rs;
      if (static_cast<int>(rs.size()) >= cfg.max_results) return rs;
    }
  }
  return rs;
}

// decide one specific judgement: derivable iff some minimal result is covered
// by the supplied contexts; the witness is rebased onto exactly those
inline std::optional<Derivation> derive_at(const TermPtr& m, const VarContext& g,
                                           const Inter& type, const NameContext& dn, System sys,
                                           const InferConfig& cfg = {}) {
  if (is_omega(type)) {
    if (sys != System::S) return std::nullopt;
    Derivation d = detail::omega_derivation(m);
    d.conclusion.vctx = g;
    d.conclusion.nctx = dn;
    return d;
  }
  detail::Search search(cfg, sys, m);
  std::vector<Derivation> premises;
  for (const BasicType& a : type.items) {
    const detail::Search::Res* hit = nullptr;
    for (const auto& r : search.derive(search.root, a))
      if (ctx_leq(g, r.g) && nctx_leq(dn, r.dn)) {
        hit = &r;
        break;
      }
    if (!hit) return std::nullopt;
    premises.push_back(detail::materialize(*hit->d, g, dn));
  }
  Derivation d;
  if (premises.size() == 1) {
    d = std::move(premises[0]);
  } else {
    d.rule = Rule::Inter;
    d.conclusion = Judgement{g, m, type, dn};
    d.premises = std::move(premises);
  }
  if (check_derivation(d, sys)) return std::nullopt;  // defensive: not expected
  return d;
}

// subject reduction probe: contract one redex of the subject and try to
// re-derive the same judgement; a bounded search can never refute, so the
// negative outcome is Unknown rather than a counterexample
enum class SRStatus { Ok, Unknown };

struct SRResult {
  SRStatus status;
  std::optional<Derivation> witness;
};

inline SRResult check_subject_reduction(const Derivation& d, const Position& pos, System sys,
                                        const InferConfig& cfg = {}) {
  TermPtr n = contract(d.conclusion.term, pos);
  auto w = derive_at(n, d.conclusion.vctx, d.conclusion.type, d.conclusion.nctx, sys, cfg);
  if (w) return {SRStatus::Ok, std::move(w)};
  return {SRStatus::Unknown, std::nullopt};
}

// ---------------------------------------------------------------------------
// Classification: both sides of the three characterisation theorems

enum class Tri { Yes, No, Unknown };

inline const char* tri_name(Tri t) {
  switch (t) {
    case Tri::Yes: return "yes";
    case Tri::No: return "no";
    case Tri::Unknown: return "unknown";
  }
  return "?";
}

struct ClassifyReport {
  Tri hnf_by_reduction = Tri::Unknown;
  Tri nf_by_reduction = Tri::Unknown;
  Tri sn_by_graph = Tri::Unknown;
  Tri typeable_nonomega = Tri::Unknown;   // never No: the search is bounded
  Tri typeable_omega_free = Tri::Unknown; // root triple entirely w-free
  Tri typeable_sn = Tri::Unknown;
  std::vector<std::string> violations; // sound positives against proven negatives
};

inline ClassifyReport classify(const TermPtr& m, int fuel = 1000, const InferConfig& cfg = {}) {
  ClassifyReport rep;

  ReductionGraph g = reduction_graph(m, fuel);
  bool hnf_found = false, nf_found = false;
  for (auto& t : g.nodes) {
    hnf_found = hnf_found || is_hnf(t);
    nf_found = nf_found || is_nf(t);
  }
  rep.hnf_by_reduction = hnf_found ? Tri::Yes : (g.complete ? Tri::No : Tri::Unknown);
  rep.nf_by_reduction = nf_found ? Tri::Yes : (g.complete ? Tri::No : Tri::Unknown);
  if (rep.hnf_by_reduction == Tri::Unknown) {
    // a leftmost walk can still certify head normalisation when the full
    // graph blows the node budget
    TermPtr t = m;
    for (int i = 0; i < fuel && !is_hnf(t); ++i) {
      auto s = step_lor(t);
      if (!s) break;
      t = *s;
    }
    if (is_hnf(t)) rep.hnf_by_reduction = Tri::Yes;
  }
  if (rep.nf_by_reduction == Tri::Unknown) {
    if (normalize(m, Strategy::Lor, fuel).status == NormalizeResult::Status::Normal)
      rep.nf_by_reduction = Tri::Yes;
  }

  SnResult sn = is_sn(m, fuel);
  rep.sn_by_graph = sn.status == SnResult::Status::Sn
                        ? Tri::Yes
                        : (sn.status == SnResult::Status::NotSn ? Tri::No : Tri::Unknown);

  auto nonomega_pred = [](const InferResult& r) { return !is_omega(r.type); };
  auto nonomega = infer(m, System::S, cfg, nonomega_pred);
  rep.typeable_nonomega =
      std::any_of(nonomega.begin(), nonomega.end(), nonomega_pred) ? Tri::Yes : Tri::Unknown;

  auto wfree_pred = [](const InferResult& r) {
    return !is_omega(r.type) && omega_free(r.type) && omega_free(r.vctx) && omega_free(r.nctx);
  };
  auto wfree = infer(m, System::S, cfg, wfree_pred);
  rep.typeable_omega_free =
      std::any_of(wfree.begin(), wfree.end(), wfree_pred) ? Tri::Yes : Tri::Unknown;

  rep.typeable_sn =
      infer(m, System::SN, cfg, [](const InferResult&) { return true; }).empty() ? Tri::Unknown
                                                                                 : Tri::Yes;

  if (rep.hnf_by_reduction == Tri::No && rep.typeable_nonomega == Tri::Yes)
    rep.violations.push_back("typed non-omega but provably has no head normal form");
  if (rep.nf_by_reduction == Tri::No && rep.typeable_omega_free == Tri::Yes)
    rep.violations.push_back("typed w-free but provably has no normal form");
  if (rep.sn_by_graph == Tri::No && rep.typeable_sn == Tri::Yes)
    rep.violations.push_back("typed in the SN system but provably not strongly normalising");
  return rep;
}

}  // namespace lmu

#endif  // LMU_INFER_HPP
