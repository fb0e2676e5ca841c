#ifndef LMU_DERIVATION_HPP
#define LMU_DERIVATION_HPP

// Explicit typing derivations and their verification.
//
// A derivation is a rule tree whose every node carries its full judgement
//   ctx |- term : type | nctx
// so each node can be audited locally.  Three systems share the rules:
//
//   S    strict assignment; (Inter) takes 0 or >= 2 premises, w is the
//        empty intersection
//   Bot  as S on lambda-mu-bot, but (InterBot) replaces (Inter): premises
//        type compatible subjects and the conclusion subject is their join,
//        so w is assigned to bot only
//   SN   as S but every type, context entry and premise count is w-free
//        ((Inter) needs n >= 2)
//
// Binders are recorded by their opened names: an Abs premise context always
// contains the bound variable (even at w), and a Mu/MuPrime premise name
// context always contains the bound name, so the opened body is reproducible.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lmu/approx.hpp"
#include "lmu/types.hpp"

namespace lmu {

enum class System { S, Bot, SN };

inline const char* system_name(System s) {
  switch (s) {
    case System::S: return "S";
    case System::Bot: return "bot";
    case System::SN: return "SN";
  }
  return "?";
}

inline std::optional<System> system_from_name(std::string_view s) {
  if (s == "S" || s == "s") return System::S;
  if (s == "bot" || s == "Bot") return System::Bot;
  if (s == "SN" || s == "sn") return System::SN;
  return std::nullopt;
}

enum class Rule { Ax, Inter, Abs, App, Mu, MuPrime, InterBot };

inline const char* rule_name(Rule r) {
  switch (r) {
    case Rule::Ax: return "Ax";
    case Rule::Inter: return "Inter";
    case Rule::Abs: return "Abs";
    case Rule::App: return "App";
    case Rule::Mu: return "Mu";
    case Rule::MuPrime: return "MuPrime";
    case Rule::InterBot: return "InterBot";
  }
  return "?";
}

inline std::optional<Rule> rule_from_name(std::string_view s) {
  if (s == "Ax") return Rule::Ax;
  if (s == "Inter") return Rule::Inter;
  if (s == "Abs") return Rule::Abs;
  if (s == "App") return Rule::App;
  if (s == "Mu") return Rule::Mu;
  if (s == "MuPrime") return Rule::MuPrime;
  if (s == "InterBot") return Rule::InterBot;
  return std::nullopt;
}

struct Judgement {
  VarContext vctx;
  TermPtr term;
  Inter type;
  NameContext nctx;
};

struct Derivation {
  Rule rule;
  Judgement conclusion;
  std::vector<Derivation> premises;
};

struct CheckError {
  std::vector<int> path;  // premise indices from the root
  std::string message;

  std::string path_string() const {
    if (path.empty()) return "root";
    std::string s = "root";
    for (int i : path) {
      s += '.';
      s += std::to_string(i);
    }
    return s;
  }
};

namespace detail {

inline bool teq(const TermPtr& a, const TermPtr& b) { return term_cmp(a, b) == 0; }

inline std::optional<CheckError> err(const std::vector<int>& path, std::string msg) {
  return CheckError{path, std::move(msg)};
}

// premise context must be base plus exactly one new statement
template <typename Ctx>
std::optional<std::pair<std::string, typename Ctx::mapped_type>> one_extra(const Ctx& premise,
                                                                           const Ctx& base) {
  if (premise.size() != base.size() + 1) return std::nullopt;
  std::optional<std::pair<std::string, typename Ctx::mapped_type>> extra;
  for (auto& [k, v] : premise) {
    auto it = base.find(k);
    if (it == base.end()) {
      if (extra) return std::nullopt;
      extra = {k, v};
    } else if (!(it->second == v)) {
      return std::nullopt;
    }
  }
  return extra;
}

inline std::optional<CheckError> check_node(const Derivation& d, System sys,
                                            std::vector<int>& path) {
  const Judgement& c = d.conclusion;
  if (!c.term) return err(path, "missing subject");

  if (sys == System::SN) {
    if (!omega_free(c.type)) return err(path, "type is not w-free");
    if (!omega_free(c.vctx)) return err(path, "variable context is not w-free");
    if (!omega_free(c.nctx)) return err(path, "name context is not w-free");
  }
  if (d.rule == Rule::InterBot && sys != System::Bot)
    return err(path, "rule InterBot belongs to the bot system");
  if (d.rule == Rule::Inter && sys == System::Bot)
    return err(path, "the bot system uses InterBot instead of Inter");

  auto singleton = [](const Inter& s) -> const BasicType* {
    return s.items.size() == 1 ? &s.items[0] : nullptr;
  };

  switch (d.rule) {
    case Rule::Ax: {
      if (!d.premises.empty()) return err(path, "Ax takes no premises");
      if (c.term->kind != TermKind::Var) return err(path, "Ax subject must be a variable");
      const BasicType* a = singleton(c.type);
      if (!a) return err(path, "Ax assigns a basic type");
      auto it = c.vctx.find(c.term->name);
      if (it == c.vctx.end()) return err(path, "variable not in context");
      if (!subtype(it->second, c.type)) return err(path, "context type does not include the assigned type");
      return std::nullopt;
    }

    case Rule::Inter:
    case Rule::InterBot: {
      size_t n = d.premises.size();
      if (n == 1) return err(path, "intersection needs zero or at least two premises");
      if (n == 0 && sys == System::SN) return err(path, "SN has no empty intersection");
      std::vector<BasicType> items;
      TermPtr joined = bottom();
      for (size_t i = 0; i < n; ++i) {
        const Judgement& p = d.premises[i].conclusion;
        const BasicType* a = singleton(p.type);
        if (!a) return err(path, "intersection premises assign basic types");
        items.push_back(*a);
        if (!(p.vctx == c.vctx) || !(p.nctx == c.nctx))
          return err(path, "intersection premises must share the conclusion contexts");
        if (d.rule == Rule::Inter) {
          if (!teq(p.term, c.term)) return err(path, "intersection premises must share the subject");
        } else {
          auto j = join(joined, p.term);
          if (!j) return err(path, "InterBot premise subjects are not compatible");
          joined = *j;
        }
      }
      if (d.rule == Rule::InterBot) {
        if (n == 0 && c.term->kind != TermKind::Bottom)
          return err(path, "w is assigned to bot only");
        if (n > 0 && !teq(joined, c.term))
          return err(path, "InterBot subject must be the join of the premise subjects");
      }
      if (!(c.type == make_inter(std::move(items))))
        return err(path, "conclusion is not the intersection of the premise types");
      break;
    }

    case Rule::Abs: {
      if (d.premises.size() != 1) return err(path, "Abs takes one premise");
      if (c.term->kind != TermKind::Lam) return err(path, "Abs subject must be an abstraction");
      const BasicType* a = singleton(c.type);
      if (!a) return err(path, "Abs assigns a basic type");
      if (a->cont.parts.empty()) return err(path, "Abs type needs an argument component");
      const Judgement& p = d.premises[0].conclusion;
      auto extra = one_extra(p.vctx, c.vctx);
      if (!extra) return err(path, "premise context must add exactly the bound variable");
      auto& [x, s] = *extra;
      if (!(s == a->cont.parts[0])) return err(path, "bound variable type disagrees with the arrow");
      if (free_vars(c.term).count(x)) return err(path, "bound variable name collides with a free variable");
      Cont rest{{a->cont.parts.begin() + 1, a->cont.parts.end()}};
      if (!(p.type == single(basic(rest, a->head)))) return err(path, "premise type disagrees with the arrow");
      if (!(p.nctx == c.nctx)) return err(path, "Abs premise keeps the name context");
      if (!teq(p.term, open_lam(*c.term, x))) return err(path, "premise subject is not the opened body");
      break;
    }

    case Rule::App: {
      if (d.premises.size() != 2) return err(path, "App takes two premises");
      if (c.term->kind != TermKind::App) return err(path, "App subject must be an application");
      const BasicType* a = singleton(c.type);
      if (!a) return err(path, "App assigns a basic type");
      const Judgement& pf = d.premises[0].conclusion;
      const Judgement& px = d.premises[1].conclusion;
      const BasicType* af = singleton(pf.type);
      if (!af) return err(path, "function premise assigns a basic type");
      if (af->head != a->head || af->cont.parts.size() != a->cont.parts.size() + 1)
        return err(path, "function type does not extend the conclusion type");
      for (size_t i = 0; i < a->cont.parts.size(); ++i)
        if (!(af->cont.parts[i + 1] == a->cont.parts[i]))
          return err(path, "function type does not extend the conclusion type");
      if (!(px.type == af->cont.parts[0]))
        return err(path, "argument type is not the operand component of the function type");
      if (!(pf.vctx == c.vctx) || !(px.vctx == c.vctx) || !(pf.nctx == c.nctx) || !(px.nctx == c.nctx))
        return err(path, "App premises must share the conclusion contexts");
      if (!teq(pf.term, c.term->a)) return err(path, "function premise subject mismatch");
      if (!teq(px.term, c.term->b)) return err(path, "argument premise subject mismatch");
      break;
    }

    case Rule::Mu: {
      if (d.premises.size() != 1) return err(path, "Mu takes one premise");
      if (c.term->kind != TermKind::Mu || !c.term->out.is_bound() || c.term->out.index != 0)
        return err(path, "Mu subject must name its own binder");
      const BasicType* a = singleton(c.type);
      if (!a) return err(path, "Mu assigns a basic type");
      const Judgement& p = d.premises[0].conclusion;
      auto extra = one_extra(p.nctx, c.nctx);
      if (!extra) return err(path, "premise name context must add exactly the bound name");
      auto& [al, cc] = *extra;
      if (!(cc == a->cont)) return err(path, "bound name continuation disagrees with the type");
      if (free_names(c.term).count(al)) return err(path, "bound name collides with a free name");
      const BasicType* ap = singleton(p.type);
      if (!ap) return err(path, "Mu premise assigns a basic type");
      if (ap->head != a->head) return err(path, "Mu premise head constant mismatch");
      if (!subtype(a->cont, ap->cont)) return err(path, "bound continuation does not include the premise one");
      if (!(p.vctx == c.vctx)) return err(path, "Mu premise keeps the variable context");
      OpenedMu m = open_mu(*c.term, al);
      if (!teq(p.term, m.body)) return err(path, "premise subject is not the opened body");
      break;
    }

    case Rule::MuPrime: {
      if (d.premises.size() != 1) return err(path, "MuPrime takes one premise");
      if (c.term->kind != TermKind::Mu || c.term->out.is_bound())
        return err(path, "MuPrime subject must name a free name");
      const std::string& beta = c.term->out.name;
      const BasicType* a = singleton(c.type);
      if (!a) return err(path, "MuPrime assigns a basic type");
      auto bit = c.nctx.find(beta);
      if (bit == c.nctx.end()) return err(path, "the named name must appear in the conclusion name context");
      const Cont& cprime = bit->second;
      const Judgement& p = d.premises[0].conclusion;
      auto extra = one_extra(p.nctx, c.nctx);
      if (!extra) return err(path, "premise name context must add exactly the bound name");
      auto& [al, cc] = *extra;
      if (!(cc == a->cont)) return err(path, "bound name continuation disagrees with the type");
      if (free_names(c.term).count(al)) return err(path, "bound name collides with a free name");
      const BasicType* ap = singleton(p.type);
      if (!ap) return err(path, "MuPrime premise assigns a basic type");
      if (ap->head != a->head) return err(path, "MuPrime premise head constant mismatch");
      if (!subtype(cprime, ap->cont)) return err(path, "named continuation does not include the premise one");
      if (!(p.vctx == c.vctx)) return err(path, "MuPrime premise keeps the variable context");
      OpenedMu m = open_mu(*c.term, al);
      if (!teq(p.term, m.body)) return err(path, "premise subject is not the opened body");
      break;
    }
  }

  for (size_t i = 0; i < d.premises.size(); ++i) {
    path.push_back(static_cast<int>(i));
    if (auto e = check_node(d.premises[i], sys, path)) return e;
    path.pop_back();
  }
  return std::nullopt;
}

}  // namespace detail

inline std::optional<CheckError> check_derivation(const Derivation& d, System sys) {
  std::vector<int> path;
  return detail::check_node(d, sys, path);
}

// ---------------------------------------------------------------------------
// Context surgery

// Recompute every context in the tree so the root carries (g, dn).  Sound
// when g and dn refine the old contexts (pointwise stronger or wider), which
// is how merged contexts arise; the caller re-checks afterwards if unsure.
inline Derivation rebase(const Derivation& d, const VarContext& g, const NameContext& dn) {
  Derivation r;
  r.rule = d.rule;
  r.conclusion = d.conclusion;
  r.conclusion.vctx = g;
  r.conclusion.nctx = dn;
  switch (d.rule) {
    case Rule::Ax:
      break;
    case Rule::Inter:
    case Rule::InterBot:
    case Rule::App:
      for (auto& p : d.premises) r.premises.push_back(rebase(p, g, dn));
      break;
    case Rule::Abs: {
      auto extra = detail::one_extra(d.premises[0].conclusion.vctx, d.conclusion.vctx);
      if (!extra) throw std::logic_error("rebase: malformed Abs premise context");
      if (g.count(extra->first)) throw std::logic_error("rebase: bound variable collides");
      VarContext g2 = g;
      g2.emplace(extra->first, extra->second);
      r.premises.push_back(rebase(d.premises[0], g2, dn));
      break;
    }
    case Rule::Mu:
    case Rule::MuPrime: {
      auto extra = detail::one_extra(d.premises[0].conclusion.nctx, d.conclusion.nctx);
      if (!extra) throw std::logic_error("rebase: malformed Mu premise context");
      if (dn.count(extra->first)) throw std::logic_error("rebase: bound name collides");
      NameContext dn2 = dn;
      dn2.emplace(extra->first, extra->second);
      r.premises.push_back(rebase(d.premises[0], g, dn2));
      break;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Moving between the strict and bot presentations

inline bool skeleton_eq(const Derivation& a, const Derivation& b) {
  if (a.rule != b.rule || a.premises.size() != b.premises.size()) return false;
  for (size_t i = 0; i < a.premises.size(); ++i)
    if (!skeleton_eq(a.premises[i], b.premises[i])) return false;
  return true;
}

struct BotResult {
  TermPtr subject;      // the weakened term actually typed
  Derivation derivation;
};

// Rebuild the derivation in the bot system: every w-typed node becomes bot,
// and intersections join what remains of their premise subjects.
inline BotResult to_bot(const Derivation& d) {
  BotResult r;
  r.derivation.rule = d.rule == Rule::Inter ? Rule::InterBot : d.rule;
  r.derivation.conclusion = d.conclusion;
  const TermPtr& t = d.conclusion.term;

  switch (d.rule) {
    case Rule::Ax:
      r.subject = t;
      break;
    case Rule::Inter: {
      TermPtr joined = bottom();
      for (auto& p : d.premises) {
        BotResult pr = to_bot(p);
        auto j = join(joined, pr.subject);
        if (!j) throw std::logic_error("to_bot: premise subjects do not join");
        joined = *j;
        r.derivation.premises.push_back(std::move(pr.derivation));
      }
      r.subject = joined;
      break;
    }
    case Rule::InterBot:
      throw std::logic_error("to_bot: already a bot derivation");
    case Rule::Abs: {
      BotResult body = to_bot(d.premises[0]);
      auto extra = detail::one_extra(d.premises[0].conclusion.vctx, d.conclusion.vctx);
      if (!extra) throw std::logic_error("to_bot: malformed Abs premise context");
      r.subject = bind_lam(extra->first, body.subject);
      r.derivation.premises.push_back(std::move(body.derivation));
      break;
    }
    case Rule::App: {
      BotResult f = to_bot(d.premises[0]);
      BotResult x = to_bot(d.premises[1]);
      r.subject = app(f.subject, x.subject);
      r.derivation.premises.push_back(std::move(f.derivation));
      r.derivation.premises.push_back(std::move(x.derivation));
      break;
    }
    case Rule::Mu:
    case Rule::MuPrime: {
      BotResult body = to_bot(d.premises[0]);
      auto extra = detail::one_extra(d.premises[0].conclusion.nctx, d.conclusion.nctx);
      if (!extra) throw std::logic_error("to_bot: malformed Mu premise context");
      std::string out = d.rule == Rule::Mu ? extra->first : t->out.name;
      r.subject = bind_mu(extra->first, out, body.subject);
      r.derivation.premises.push_back(std::move(body.derivation));
      break;
    }
  }
  r.derivation.conclusion.term = r.subject;
  return r;
}

// Reinterpret a bot derivation in the strict system on a target subject that
// the typed subject approximates: InterBot premises all move to the target.
inline Derivation to_strict(const Derivation& d, const TermPtr& target) {
  Derivation r;
  r.rule = d.rule == Rule::InterBot ? Rule::Inter : d.rule;
  r.conclusion = d.conclusion;
  r.conclusion.term = target;

  switch (d.rule) {
    case Rule::Ax:
      break;
    case Rule::Inter:
      throw std::logic_error("to_strict: expected a bot derivation");
    case Rule::InterBot:
      for (auto& p : d.premises) r.premises.push_back(to_strict(p, target));
      break;
    case Rule::Abs: {
      auto extra = detail::one_extra(d.premises[0].conclusion.vctx, d.conclusion.vctx);
      if (!extra) throw std::logic_error("to_strict: malformed Abs premise context");
      r.premises.push_back(to_strict(d.premises[0], open_lam(*target, extra->first)));
      break;
    }
    case Rule::App:
      r.premises.push_back(to_strict(d.premises[0], target->a));
      r.premises.push_back(to_strict(d.premises[1], target->b));
      break;
    case Rule::Mu:
    case Rule::MuPrime: {
      auto extra = detail::one_extra(d.premises[0].conclusion.nctx, d.conclusion.nctx);
      if (!extra) throw std::logic_error("to_strict: malformed Mu premise context");
      r.premises.push_back(to_strict(d.premises[0], open_mu(*target, extra->first).body));
      break;
    }
  }
  return r;
}

inline Derivation to_strict(const Derivation& d) { return to_strict(d, d.conclusion.term); }

}  // namespace lmu

#endif  // LMU_DERIVATION_HPP
