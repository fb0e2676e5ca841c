#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

#include "lmu/derivation.hpp"
#include "lmu/derivation_json.hpp"
#include "lmu/syntax.hpp"

using namespace lmu;

namespace {

using CtxSpec = std::vector<std::pair<std::string, std::string>>;

Derivation mk(Rule r, const CtxSpec& g, const std::string& term, const std::string& type,
              const CtxSpec& dn = {}, std::vector<Derivation> prems = {}) {
  Derivation d;
  d.rule = r;
  for (auto& [k, v] : g) d.conclusion.vctx.emplace(k, parse_inter_type(v));
  d.conclusion.term = parse_term(term);
  d.conclusion.type = parse_inter_type(type);
  for (auto& [k, v] : dn) d.conclusion.nctx.emplace(k, parse_cont_type(v));
  d.premises = std::move(prems);
  return d;
}

bool ok(const Derivation& d, System sys) {
  auto e = check_derivation(d, sys);
  if (e) MESSAGE(e->path_string(), ": ", e->message);
  return !e;
}

std::string why(const Derivation& d, System sys) {
  auto e = check_derivation(d, sys);
  return e ? e->message : "";
}

// the running example: x applied through two incompatible conjuncts
const CtxSpec kJoinCtx = {
    {"x", "('a * w * O)->'p & (w * 'b * O)->'q"}, {"y", "'a"}, {"z", "'b"}};

Derivation join_left() {
  auto ax_x = mk(Rule::Ax, kJoinCtx, "x", "('a * w * O)->'p");
  auto ax_y = mk(Rule::Ax, kJoinCtx, "y", "'a");
  auto xy = mk(Rule::App, kJoinCtx, "x y", "(w * O)->'p", {}, {ax_x, ax_y});
  auto wbot = mk(Rule::InterBot, kJoinCtx, "bot", "w");
  return mk(Rule::App, kJoinCtx, "x y bot", "(O)->'p", {}, {xy, wbot});
}

Derivation join_right() {
  auto ax_x = mk(Rule::Ax, kJoinCtx, "x", "(w * 'b * O)->'q");
  auto wbot = mk(Rule::InterBot, kJoinCtx, "bot", "w");
  auto xb = mk(Rule::App, kJoinCtx, "x bot", "('b * O)->'q", {}, {ax_x, wbot});
  auto ax_z = mk(Rule::Ax, kJoinCtx, "z", "'b");
  return mk(Rule::App, kJoinCtx, "x bot z", "(O)->'q", {}, {xb, ax_z});
}

}  // namespace

TEST_CASE("axioms select and include") {
  CHECK(ok(mk(Rule::Ax, {{"x", "'a"}}, "x", "'a"), System::S));
  CHECK(ok(mk(Rule::Ax, {{"x", "'a"}}, "x", "'a"), System::SN));
  CHECK(ok(mk(Rule::Ax, {{"x", "'a"}}, "x", "'a"), System::Bot));
  CHECK(ok(mk(Rule::Ax, {{"x", "'a & 'b"}}, "x", "'b"), System::S));
  CHECK(ok(mk(Rule::Ax, {{"x", "('a)->'p & 'q"}, {"y", "'a"}}, "x", "('a)->'p"), System::S));

  CHECK(why(mk(Rule::Ax, {}, "x", "'a"), System::S) == "variable not in context");
  CHECK(why(mk(Rule::Ax, {{"x", "'a"}}, "x", "'b"), System::S) ==
        "context type does not include the assigned type");
  // inclusion never looks under an arrow
  CHECK(why(mk(Rule::Ax, {{"x", "('a & 'b)->'p"}}, "x", "('a)->'p"), System::S) ==
        "context type does not include the assigned type");
  CHECK(why(mk(Rule::Ax, {{"x", "'a & 'b"}}, "x", "'a & 'b"), System::S) ==
        "Ax assigns a basic type");
  CHECK(why(mk(Rule::Ax, {{"x", "'a"}}, "y x", "'a"), System::S) ==
        "Ax subject must be a variable");
  auto extra = mk(Rule::Ax, {{"x", "'a"}}, "x", "'a", {},
                  {mk(Rule::Ax, {{"x", "'a"}}, "x", "'a")});
  CHECK(why(extra, System::S) == "Ax takes no premises");
}

TEST_CASE("identity abstraction") {
  auto d = mk(Rule::Abs, {}, "\\x.x", "('a)->'a", {},
              {mk(Rule::Ax, {{"x", "'a"}}, "x", "'a")});
  CHECK(ok(d, System::S));
  CHECK(ok(d, System::SN));

  // surface name of the binder is irrelevant, the premise context key decides
  auto e = mk(Rule::Abs, {}, "\\v.v", "('a)->'a", {},
              {mk(Rule::Ax, {{"w", "'a"}}, "w", "'a")});
  CHECK(ok(e, System::S));
}

TEST_CASE("abstraction rejections") {
  auto bad_s = mk(Rule::Abs, {}, "\\x.x", "('a)->'a", {},
                  {mk(Rule::Ax, {{"x", "'b"}}, "x", "'b")});
  CHECK(why(bad_s, System::S) == "bound variable type disagrees with the arrow");

  auto bad_body = mk(Rule::Abs, {}, "\\x.x", "('a)->'a", {},
                     {mk(Rule::Ax, {{"x", "'a"}, {"y", "'a"}}, "x", "'a")});
  CHECK(why(bad_body, System::S) == "premise context must add exactly the bound variable");

  auto bad_term = mk(Rule::Abs, {{"y", "'a"}}, "\\x.y", "('a)->'a", {},
                     {mk(Rule::Ax, {{"y", "'a"}, {"x", "'a"}}, "y", "'a")});
  SUBCASE("wrong result component") {
    bad_term.conclusion.type = parse_inter_type("('a)->'b");
    CHECK(why(bad_term, System::S) == "premise type disagrees with the arrow");
  }
  SUBCASE("premise subject must be the opened body") {
    bad_term.premises[0].conclusion.term = parse_term("x");
    bad_term.premises[0].conclusion.type = parse_inter_type("'a");
    CHECK(why(bad_term, System::S) == "premise subject is not the opened body");
  }

  // ignoring the binder: the premise records it at w and never uses it
  auto drop = mk(Rule::Abs, {{"x", "'b"}}, "\\y.x", "(w)->'b", {},
                 {mk(Rule::Ax, {{"x", "'b"}, {"y", "w"}}, "x", "'b")});
  CHECK(ok(drop, System::S));
}

TEST_CASE("binder collision with a free variable is rejected") {
  // claiming the binder of \y.x opened as x would conflate it with the free x,
  // silently discharging an assumption the conclusion no longer records
  auto bad = mk(Rule::Abs, {}, "\\y.x", "('b)->'b", {},
                {mk(Rule::Ax, {{"x", "'b"}}, "x", "'b")});
  CHECK(why(bad, System::S) == "bound variable name collides with a free variable");

  // with a fresh opened name the same judgement honestly fails
  auto honest = mk(Rule::Abs, {}, "\\y.x", "('b)->'b", {},
                   {mk(Rule::Ax, {{"y'", "'b"}}, "x", "'b")});
  CHECK(why(honest, System::S) == "variable not in context");
}

TEST_CASE("application chains") {
  auto ax_x = mk(Rule::Ax, {{"x", "('a)->'p"}, {"y", "'a"}}, "x", "('a)->'p");
  auto ax_y = mk(Rule::Ax, {{"x", "('a)->'p"}, {"y", "'a"}}, "y", "'a");
  auto d = mk(Rule::App, {{"x", "('a)->'p"}, {"y", "'a"}}, "x y", "'p", {}, {ax_x, ax_y});
  CHECK(ok(d, System::S));
  CHECK(ok(d, System::SN));

  SUBCASE("argument type mismatch") {
    auto bad = d;
    bad.premises[1].conclusion.type = parse_inter_type("'b");
    CHECK(why(bad, System::S) ==
          "argument type is not the operand component of the function type");
  }
  SUBCASE("head constant mismatch") {
    auto bad = d;
    bad.conclusion.type = parse_inter_type("'q");
    CHECK(why(bad, System::S) == "function type does not extend the conclusion type");
  }
  SUBCASE("context mismatch across premises") {
    auto bad = d;
    bad.premises[0].conclusion.vctx.erase("y");
    CHECK(why(bad, System::S) == "App premises must share the conclusion contexts");
  }
  SUBCASE("error path points at the broken premise") {
    auto bad = d;
    bad.premises[1].conclusion.type = parse_inter_type("'b");
    bad.premises[1].conclusion.term = parse_term("y");
    auto e = check_derivation(bad, System::S);
    REQUIRE(e.has_value());
    // the App node itself now disagrees, so the root reports first
    CHECK(e->path.empty());

    auto deep = d;
    deep.premises[1].premises.push_back(mk(Rule::Ax, {}, "y", "'a"));
    auto e2 = check_derivation(deep, System::S);
    REQUIRE(e2.has_value());
    CHECK(e2->path == std::vector<int>{1});
    CHECK(e2->message == "Ax takes no premises");
    CHECK(e2->path_string() == "root.1");
  }
}

TEST_CASE("intersection introduction") {
  CtxSpec g = {{"x", "'a & 'b"}};
  auto d = mk(Rule::Inter, g, "x", "'a & 'b", {},
              {mk(Rule::Ax, g, "x", "'a"), mk(Rule::Ax, g, "x", "'b")});
  CHECK(ok(d, System::S));
  CHECK(ok(d, System::SN));

  auto weak = mk(Rule::Inter, {}, "(\\x.x x) (\\x.x x)", "w");
  CHECK(ok(weak, System::S));
  CHECK(why(weak, System::SN) == "type is not w-free");  // w itself is already out
  CHECK(why(weak, System::Bot) == "the bot system uses InterBot instead of Inter");

  // even with a (bogus) w-free conclusion, SN refuses zero premises
  auto weak_sn = mk(Rule::Inter, {}, "x", "'a");
  CHECK(why(weak_sn, System::SN) == "SN has no empty intersection");

  auto single_prem = mk(Rule::Inter, g, "x", "'a", {}, {mk(Rule::Ax, g, "x", "'a")});
  CHECK(why(single_prem, System::S) == "intersection needs zero or at least two premises");

  auto mixed = mk(Rule::Inter, g, "x", "'a & 'b", {},
                  {mk(Rule::Ax, g, "x", "'a"), mk(Rule::Ax, {{"y", "'b"}}, "y", "'b")});
  CHECK(why(mixed, System::S) == "intersection premises must share the conclusion contexts");

  auto wrong = mk(Rule::Inter, g, "x", "'a", {},
                  {mk(Rule::Ax, g, "x", "'a"), mk(Rule::Ax, g, "x", "'b")});
  CHECK(why(wrong, System::S) == "conclusion is not the intersection of the premise types");
}

TEST_CASE("mu rules") {
  // weakening a continuation through mu: C may be longer than the premise D
  auto d = mk(Rule::Mu, {{"x", "'p"}}, "mu a.[a] x", "('a)->'p", {},
              {mk(Rule::Ax, {{"x", "'p"}}, "x", "'p", {{"a", "'a * O"}})});
  CHECK(ok(d, System::S));
  CHECK(ok(d, System::SN));

  auto plain = mk(Rule::Mu, {{"x", "'p"}}, "mu a.[a] x", "'p", {},
                  {mk(Rule::Ax, {{"x", "'p"}}, "x", "'p", {{"a", "O"}})});
  CHECK(ok(plain, System::S));

  SUBCASE("premise continuation must be included") {
    auto bad = mk(Rule::Mu, {{"x", "('b)->'p"}}, "mu a.[a] x", "'p", {},
                  {mk(Rule::Ax, {{"x", "('b)->'p"}}, "x", "('b)->'p", {{"a", "O"}})});
    CHECK(why(bad, System::S) == "bound continuation does not include the premise one");
  }
  SUBCASE("premise must record the bound name") {
    auto bad = mk(Rule::Mu, {{"x", "'p"}}, "mu a.[a] x", "'p", {},
                  {mk(Rule::Ax, {{"x", "'p"}}, "x", "'p")});
    CHECK(why(bad, System::S) == "premise name context must add exactly the bound name");
  }
  SUBCASE("subject must name its own binder") {
    auto bad = mk(Rule::Mu, {{"x", "'p"}}, "mu a.[b] x", "'p", {{"b", "O"}},
                  {mk(Rule::Ax, {{"x", "'p"}}, "x", "'p", {{"a", "O"}, {"b", "O"}})});
    CHECK(why(bad, System::S) == "Mu subject must name its own binder");
  }
  SUBCASE("head constant is preserved") {
    auto bad = mk(Rule::Mu, {{"x", "'q"}}, "mu a.[a] x", "'p", {},
                  {mk(Rule::Ax, {{"x", "'q"}}, "x", "'q", {{"a", "O"}})});
    CHECK(why(bad, System::S) == "Mu premise head constant mismatch");
  }
}

TEST_CASE("mu prime rules") {
  auto d = mk(Rule::MuPrime, {{"x", "'p"}}, "mu a.[b] x", "('a)->'p", {{"b", "O"}},
              {mk(Rule::Ax, {{"x", "'p"}}, "x", "'p", {{"a", "'a * O"}, {"b", "O"}})});
  CHECK(ok(d, System::S));
  CHECK(ok(d, System::SN));

  SUBCASE("named name must appear in the conclusion context") {
    auto bad = d;
    bad.conclusion.nctx.clear();
    bad.premises[0].conclusion.nctx.erase("b");
    CHECK(why(bad, System::S) == "the named name must appear in the conclusion name context");
  }
  SUBCASE("named continuation must be included") {
    auto bad = mk(Rule::MuPrime, {{"x", "('b)->'p"}}, "mu a.[b] x", "'p", {{"b", "O"}},
                  {mk(Rule::Ax, {{"x", "('b)->'p"}}, "x", "('b)->'p",
                      {{"a", "O"}, {"b", "O"}})});
    CHECK(why(bad, System::S) == "named continuation does not include the premise one");
  }
  SUBCASE("self-named subject is the other rule") {
    auto bad = d;
    bad.conclusion.term = parse_term("mu a.[a] x");
    CHECK(why(bad, System::S) == "MuPrime subject must name a free name");
  }
}

TEST_CASE("bot system joins premise subjects") {
  auto d = mk(Rule::InterBot, kJoinCtx, "x y z", "(O)->'p & (O)->'q", {},
              {join_left(), join_right()});
  CHECK(ok(d, System::Bot));

  SUBCASE("the strict rule refuses distinct subjects") {
    auto bad = d;
    bad.rule = Rule::Inter;
    CHECK(why(bad, System::S) == "intersection premises must share the subject");
  }
  SUBCASE("conclusion subject must be the join") {
    auto bad = d;
    bad.conclusion.term = parse_term("x y bot");
    CHECK(why(bad, System::Bot) == "InterBot subject must be the join of the premise subjects");
  }
  SUBCASE("incompatible subjects are rejected") {
    auto l = join_left();
    auto r = mk(Rule::Ax, kJoinCtx, "y", "'a");
    auto bad = mk(Rule::InterBot, kJoinCtx, "x y z", "(O)->'p & 'a", {}, {l, r});
    CHECK(why(bad, System::Bot) == "InterBot premise subjects are not compatible");
  }
  SUBCASE("w is assigned to bot only") {
    CHECK(ok(mk(Rule::InterBot, {}, "bot", "w"), System::Bot));
    CHECK(why(mk(Rule::InterBot, {}, "x", "w"), System::Bot) == "w is assigned to bot only");
    CHECK(why(mk(Rule::InterBot, {}, "bot", "w"), System::S) ==
          "rule InterBot belongs to the bot system");
  }
}

TEST_CASE("SN admits no omega anywhere") {
  auto k = mk(Rule::Abs, {}, "\\x.\\y.x", "('a * w * O)->'a", {},
              {mk(Rule::Abs, {{"x", "'a"}}, "\\y.x", "(w * O)->'a", {},
                  {mk(Rule::Ax, {{"x", "'a"}, {"y", "w"}}, "x", "'a")})});
  CHECK(ok(k, System::S));
  CHECK(why(k, System::SN) == "type is not w-free");

  auto ctx_w = mk(Rule::Ax, {{"x", "'a"}, {"y", "w"}}, "x", "'a");
  CHECK(ok(ctx_w, System::S));
  CHECK(why(ctx_w, System::SN) == "variable context is not w-free");

  auto nctx_w = mk(Rule::Ax, {{"x", "'a"}}, "x", "'a", {{"b", "w * O"}});
  CHECK(ok(nctx_w, System::S));
  CHECK(why(nctx_w, System::SN) == "name context is not w-free");

  // an SN version of K needs a real (if arbitrary) type for the unused binder
  auto k_sn = mk(Rule::Abs, {}, "\\x.\\y.x", "('a * 'b * O)->'a", {},
                 {mk(Rule::Abs, {{"x", "'a"}}, "\\y.x", "('b * O)->'a", {},
                     {mk(Rule::Ax, {{"x", "'a"}, {"y", "'b"}}, "x", "'a")})});
  CHECK(ok(k_sn, System::SN));
}

TEST_CASE("rebase widens and strengthens contexts") {
  CtxSpec g0 = {{"x", "('a)->'p"}, {"y", "'a"}};
  auto d = mk(Rule::App, g0, "x y", "'p", {},
              {mk(Rule::Ax, g0, "x", "('a)->'p"), mk(Rule::Ax, g0, "y", "'a")});
  REQUIRE(ok(d, System::S));

  VarContext g;
  g.emplace("x", parse_inter_type("('a)->'p & 'q"));
  g.emplace("y", parse_inter_type("'a & 'b"));
  g.emplace("z", parse_inter_type("'c"));
  NameContext dn;
  dn.emplace("c", parse_cont_type("'c * O"));
  auto r = rebase(d, g, dn);
  CHECK(ok(r, System::S));
  CHECK(r.conclusion.vctx == g);
  CHECK(r.conclusion.nctx == dn);
  CHECK(r.premises[0].conclusion.vctx == g);
  CHECK(pretty(r.conclusion.type) == pretty(d.conclusion.type));

  // through a binder: the bound variable is re-added on top of the new base
  auto id = mk(Rule::Abs, {}, "\\x.x", "('a)->'a", {},
               {mk(Rule::Ax, {{"x", "'a"}}, "x", "'a")});
  VarContext g2;
  g2.emplace("y", parse_inter_type("'b"));
  auto r2 = rebase(id, g2, {});
  CHECK(ok(r2, System::S));
  CHECK(r2.premises[0].conclusion.vctx.size() == 2);

  VarContext clash;
  clash.emplace("x", parse_inter_type("'b"));
  CHECK_THROWS_AS(rebase(id, clash, {}), std::logic_error);
}

TEST_CASE("strict and bot presentations convert both ways") {
  // (\x.y) Omega typed by ignoring the argument
  auto omega = "(\\u.u u) (\\u.u u)";
  CtxSpec g = {{"y", "'p"}};
  auto fun = mk(Rule::Abs, g, "\\x.y", "(w * O)->'p", {},
                {mk(Rule::Ax, {{"y", "'p"}, {"x", "w"}}, "y", "'p")});
  auto arg = mk(Rule::Inter, g, omega, "w");
  auto d = mk(Rule::App, g, std::string("(\\x.y) (") + omega + ")", "'p", {}, {fun, arg});
  REQUIRE(ok(d, System::S));

  auto tb = to_bot(d);
  CHECK(pretty(tb.subject) == "(\\x.y) bot");
  CHECK(ok(tb.derivation, System::Bot));
  CHECK(direct_approx(tb.subject, d.conclusion.term));
  CHECK(tb.derivation.premises[1].rule == Rule::InterBot);
  CHECK(tb.derivation.premises[1].conclusion.term->kind == TermKind::Bottom);
  CHECK(tb.derivation.conclusion.type == d.conclusion.type);

  auto ts = to_strict(tb.derivation, d.conclusion.term);
  CHECK(ok(ts, System::S));
  CHECK(skeleton_eq(ts, d));
  CHECK(term_cmp(ts.conclusion.term, d.conclusion.term) == 0);
  CHECK(ts.conclusion.type == d.conclusion.type);
  CHECK(ts.conclusion.vctx == d.conclusion.vctx);
  // node for node, the judgement types agree with the original
  std::function<void(const Derivation&, const Derivation&)> walk =
      [&](const Derivation& a, const Derivation& b) {
        CHECK(a.conclusion.type == b.conclusion.type);
        for (size_t i = 0; i < a.premises.size(); ++i) walk(a.premises[i], b.premises[i]);
      };
  walk(ts, d);

  // the join example, strictified onto its own subject
  auto jd = mk(Rule::InterBot, kJoinCtx, "x y z", "(O)->'p & (O)->'q", {},
               {join_left(), join_right()});
  REQUIRE(ok(jd, System::Bot));
  auto js = to_strict(jd);
  CHECK(ok(js, System::S));
  CHECK(pretty(js.conclusion.term) == "x y z");
  CHECK(js.premises[0].conclusion.term->kind == TermKind::App);
  CHECK(pretty(js.premises[0].conclusion.term) == "x y z");
}

TEST_CASE("mu nodes survive the round trip") {
  // mu a.[b] ((\x.y) bot-candidate) keeps its name contexts intact
  CtxSpec g = {{"y", "'p"}};
  auto fun = mk(Rule::Abs, g, "\\x.y", "(w * O)->'p", {},
                {mk(Rule::Ax, {{"y", "'p"}, {"x", "w"}}, "y", "'p")});
  fun.conclusion.nctx.emplace("a", parse_cont_type("O"));
  fun.conclusion.nctx.emplace("b", parse_cont_type("O"));
  fun.premises[0].conclusion.nctx = fun.conclusion.nctx;
  auto arg = mk(Rule::Inter, g, "z z", "w", {{"a", "O"}, {"b", "O"}});
  auto body = mk(Rule::App, g, "(\\x.y) (z z)", "'p", {{"a", "O"}, {"b", "O"}}, {fun, arg});
  auto d = mk(Rule::MuPrime, g, "mu a.[b] ((\\x.y) (z z))", "'p", {{"b", "O"}}, {body});
  REQUIRE(ok(d, System::S));

  auto tb = to_bot(d);
  CHECK(pretty(tb.subject) == "mu a.[b] (\\x.y) bot");
  CHECK(ok(tb.derivation, System::Bot));
  auto ts = to_strict(tb.derivation, d.conclusion.term);
  CHECK(ok(ts, System::S));
  CHECK(skeleton_eq(ts, d));
  CHECK(term_cmp(ts.conclusion.term, d.conclusion.term) == 0);
}

TEST_CASE("derivations round trip through json") {
  auto jd = mk(Rule::InterBot, kJoinCtx, "x y z", "(O)->'p & (O)->'q", {},
               {join_left(), join_right()});
  auto j = derivation_to_json(jd);
  auto back = derivation_from_json(j);
  CHECK(!check_derivation(back, System::Bot));
  CHECK(derivation_to_json(back) == j);

  auto md = mk(Rule::MuPrime, {{"x", "'p"}}, "mu a.[b] x", "('a)->'p", {{"b", "O"}},
               {mk(Rule::Ax, {{"x", "'p"}}, "x", "'p", {{"a", "'a * O"}, {"b", "O"}})});
  auto j2 = derivation_to_json(md);
  CHECK(j2["rule"] == "MuPrime");
  CHECK(j2["premises"][0]["nctx"]["a"] == "(O)->'a * O");
  auto back2 = derivation_from_json(j2);
  CHECK(!check_derivation(back2, System::S));
  CHECK(derivation_to_json(back2) == j2);
}

TEST_CASE("malformed json is reported") {
  auto good = derivation_to_json(mk(Rule::Ax, {{"x", "'a"}}, "x", "'a"));

  auto no_rule = good;
  no_rule.erase("rule");
  CHECK_THROWS_AS(derivation_from_json(no_rule), std::runtime_error);

  auto bad_rule = good;
  bad_rule["rule"] = "Axiom";
  CHECK_THROWS_AS(derivation_from_json(bad_rule), std::runtime_error);

  auto bad_term = good;
  bad_term["term"] = "\\x.";
  CHECK_THROWS_AS(derivation_from_json(bad_term), parse_error);

  auto bad_type = good;
  bad_type["type"] = "('a ->";
  CHECK_THROWS_AS(derivation_from_json(bad_type), parse_error);

  auto bad_prem = good;
  bad_prem["premises"] = 3;
  CHECK_THROWS_AS(derivation_from_json(bad_prem), std::runtime_error);

  auto bad_ctx = good;
  bad_ctx["ctx"]["x"] = 7;
  CHECK_THROWS_AS(derivation_from_json(bad_ctx), std::runtime_error);
}
