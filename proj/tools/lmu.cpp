// shell front end for the workbench: parse, reduce, classify, approximate,
// join, compare types, check derivations, infer types, run the corpus

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "lmu/approx.hpp"
#include "lmu/corpus.hpp"
#include "lmu/derivation.hpp"
#include "lmu/derivation_json.hpp"
#include "lmu/infer.hpp"
#include "lmu/reduction.hpp"
#include "lmu/syntax.hpp"
#include "lmu/term.hpp"
#include "lmu/types.hpp"

using nlohmann::json;
using namespace lmu;

namespace {

// exit code contract, shared by every subcommand
constexpr int exit_ok = 0;        // command ran, answer is positive / neutral
constexpr int exit_negative = 1;  // well formed query answered "no"
constexpr int exit_bad_input = 2; // unparseable term, type or file
constexpr int exit_fuel = 3;      // reduction ran out of fuel
constexpr int exit_mismatch = 4;  // report contradicts an annotation or itself

struct Opts {
  int fuel = 1000;
  int depth = 6;
  int width = 3;
  uint64_t seed = 0;
  bool seeded = false;
  std::string format = "text";

  bool json_out() const { return format == "json"; }

  InferConfig cfg() const {
    InferConfig c;
    c.depth = depth;
    c.width = width;
    return c;
  }
};

bool use_color() {
  static const bool on = [] {
    const char* c = std::getenv("LMU_COLOR");
    if (c && std::string_view(c) == "0") return false;
    return isatty(fileno(stdout)) != 0;
  }();
  return on;
}

std::string paint(const std::string& s, const char* code) {
  if (!use_color()) return s;
  return std::string("\033[") + code + "m" + s + "\033[0m";
}

std::string good(const std::string& s) { return paint(s, "32"); }
std::string loud(const std::string& s) { return paint(s, "1;31"); }
std::string dim(const std::string& s) { return paint(s, "2"); }

void emit(const json& o) { std::cout << o.dump(2) << "\n"; }

// --- parse ------------------------------------------------------------

int run_parse(const Opts& o, const std::string& expr) {
  TermPtr t = parse_term(expr);
  if (o.json_out()) {
    emit({{"term", pretty(t)}});
  } else {
    std::cout << pretty(t) << "\n";
  }
  return exit_ok;
}

// --- reduce -----------------------------------------------------------

int run_reduce(const Opts& o, const std::string& expr, const std::string& strat) {
  TermPtr t = parse_term(expr);
  Strategy s = Strategy::Lor;
  if (strat == "ri") s = Strategy::RightmostInnermost;
  if (strat == "random") s = Strategy::Random;
  NormalizeResult r = normalize(t, s, o.fuel, o.seed);
  bool normal = r.status == NormalizeResult::Status::Normal;
  if (o.json_out()) {
    json steps = json::array();
    for (auto& st : r.steps)
      steps.push_back({{"kind", redex_kind_name(st.kind)},
                       {"pos", position_string(st.pos)},
                       {"term", pretty(st.term)}});
    emit({{"initial", pretty(t)},
          {"steps", steps},
          {"final", pretty(r.final_term)},
          {"status", normal ? "normal" : "fuel-exhausted"}});
  } else {
    std::cout << pretty(t) << "\n";
    for (auto& st : r.steps)
      std::cout << dim("  -" + std::string(redex_kind_name(st.kind)) + "@" +
                       position_string(st.pos) + "-> ") << pretty(st.term) << "\n";
    if (!normal) std::cout << dim("  (fuel exhausted)") << "\n";
    std::cout << pretty(r.final_term) << "\n";
  }
  return normal ? exit_ok : exit_fuel;
}

// --- classify ----------------------------------------------------------

std::vector<std::pair<const char*, Tri>> report_rows(const ClassifyReport& rep) {
  return {{"hnf_by_reduction", rep.hnf_by_reduction},
          {"nf_by_reduction", rep.nf_by_reduction},
          {"sn_by_graph", rep.sn_by_graph},
          {"typeable_S_nonomega", rep.typeable_nonomega},
          {"typeable_omega_free", rep.typeable_omega_free},
          {"typeable_SN", rep.typeable_sn}};
}

int run_classify(const Opts& o, const std::string& expr) {
  TermPtr t = parse_term(expr);
  ClassifyReport rep = classify(t, o.fuel, o.cfg());
  if (o.json_out()) {
    json out;
    for (auto& [k, v] : report_rows(rep)) out[k] = tri_name(v);
    out["violations"] = rep.violations;
    emit(out);
  } else {
    for (auto& [k, v] : report_rows(rep))
      std::cout << k << std::string(21 - std::string(k).size(), ' ')
                << tri_name(v) << "\n";
    for (auto& v : rep.violations) std::cout << loud("violation: " + v) << "\n";
  }
  return rep.violations.empty() ? exit_ok : exit_mismatch;
}

// --- approx ------------------------------------------------------------

int run_approx(const Opts& o, const std::string& expr) {
  TermPtr t = parse_term(expr);
  ApproxSet as = approximants(t, o.fuel);
  if (o.json_out()) {
    json ms = json::array();
    for (auto& a : as.maximal) ms.push_back(pretty(a));
    emit({{"maximal", ms}, {"complete", as.complete}, {"node_capped", as.node_capped}});
  } else {
    for (auto& a : as.maximal) std::cout << pretty(a) << "\n";
    std::cout << dim(as.complete ? "(complete)" : "(incomplete: graph not exhausted)")
              << "\n";
  }
  return exit_ok;
}

// --- join --------------------------------------------------------------

int run_join(const Opts& o, const std::vector<std::string>& exprs) {
  TermPtr a = parse_term(exprs[0]);
  TermPtr b = parse_term(exprs[1]);
  auto j = join(a, b);
  if (o.json_out()) {
    emit({{"defined", j.has_value()}, {"join", j ? json(pretty(*j)) : json(nullptr)}});
  } else {
    std::cout << (j ? pretty(*j) : "undefined") << "\n";
  }
  return j ? exit_ok : exit_negative;
}

// --- subtype -----------------------------------------------------------

int run_subtype(const Opts& o, const std::vector<std::string>& types) {
  bool ans = false;
  try {
    ans = subtype(parse_inter_type(types[0]), parse_inter_type(types[1]));
  } catch (const parse_error&) {
    // not intersection types; compare as continuations instead
    ans = subtype(parse_cont_type(types[0]), parse_cont_type(types[1]));
  }
  if (o.json_out()) {
    emit({{"left", types[0]}, {"right", types[1]}, {"subtype", ans}});
  } else {
    std::cout << (ans ? "true" : "false") << "\n";
  }
  return ans ? exit_ok : exit_negative;
}

// --- check -------------------------------------------------------------

int run_check(const Opts& o, const std::string& file, const std::string& sysname) {
  json doc;
  if (file == "-") {
    doc = json::parse(std::cin);
  } else {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open " + file);
    doc = json::parse(in);
  }
  Derivation d = derivation_from_json(doc);
  System sys = *system_from_name(sysname);
  auto err = check_derivation(d, sys);
  if (o.json_out()) {
    json out{{"system", system_name(sys)}, {"ok", !err.has_value()}};
    if (err) {
      out["path"] = err->path_string();
      out["message"] = err->message;
    }
    emit(out);
  } else {
    if (err)
      std::cout << loud("error at " + err->path_string() + ": " + err->message) << "\n";
    else
      std::cout << good("ok") << "\n";
  }
  return err ? exit_negative : exit_ok;
}

// --- infer -------------------------------------------------------------

std::string show_vctx(const VarContext& g) {
  std::string s;
  for (auto& [x, ty] : g) {
    if (!s.empty()) s += ", ";
    s += x + ":" + pretty(ty);
  }
  return s;
}

std::string show_nctx(const NameContext& dn) {
  std::string s;
  for (auto& [a, c] : dn) {
    if (!s.empty()) s += ", ";
    s += a + ":" + pretty(c);
  }
  return s;
}

int run_infer(const Opts& o, const std::string& expr, const std::string& sysname,
              int max_shown) {
  TermPtr t = parse_term(expr);
  System sys = *system_from_name(sysname);
  auto rs = infer(t, sys, o.cfg());
  bool informative = false;
  for (auto& r : rs) informative = informative || !is_omega(r.type);
  if (max_shown > 0 && static_cast<int>(rs.size()) > max_shown)
    rs.resize(max_shown);
  if (o.json_out()) {
    json triples = json::array();
    for (auto& r : rs) {
      json ctx = json::object(), nctx = json::object();
      for (auto& [x, ty] : r.vctx) ctx[x] = pretty(ty);
      for (auto& [a, c] : r.nctx) nctx[a] = pretty(c);
      triples.push_back({{"ctx", ctx}, {"type", pretty(r.type)}, {"nctx", nctx}});
    }
    emit({{"term", pretty(t)}, {"system", system_name(sys)}, {"triples", triples}});
  } else {
    for (auto& r : rs)
      std::cout << show_vctx(r.vctx) << " |- " << pretty(r.type) << " | "
                << show_nctx(r.nctx) << "\n";
    if (rs.empty()) std::cout << dim("(nothing derivable within bounds)") << "\n";
  }
  return informative ? exit_ok : exit_negative;
}

// --- corpus ------------------------------------------------------------

struct AnnCheck {
  const char* key;       // annotation name in the corpus file
  const char* column;    // report row it is checked against
  Tri got = Tri::Unknown;
  std::optional<bool> want;
};

int run_corpus(const Opts& o, const std::string& file) {
  auto entries = load_corpus_file(file);
  json jterms = json::array();
  int mismatches = 0, violations = 0, unknowns = 0;
  for (auto& e : entries) {
    int fuel = note_int(e, "fuel").value_or(o.fuel);
    ClassifyReport rep = classify(e.term, fuel, o.cfg());
    AnnCheck checks[] = {{"hnf", "hnf_by_reduction", rep.hnf_by_reduction, note_flag(e, "hnf")},
                         {"nf", "nf_by_reduction", rep.nf_by_reduction, note_flag(e, "nf")},
                         {"sn", "sn_by_graph", rep.sn_by_graph, note_flag(e, "sn")}};
    std::vector<std::string> bad_rows;
    bool has_unknown = false;
    for (auto& c : checks) {
      if (!c.want) continue;
      if (c.got == Tri::Unknown) {
        has_unknown = true;
        continue;
      }
      bool got = c.got == Tri::Yes;
      if (got != *c.want)
        bad_rows.push_back(std::string(c.column) + " annotated " +
                           (*c.want ? "yes" : "no") + " but proven " +
                           (got ? "yes" : "no"));
    }
    mismatches += static_cast<int>(bad_rows.size());
    violations += static_cast<int>(rep.violations.size());
    if (has_unknown) ++unknowns;

    if (o.json_out()) {
      json jt{{"line", e.line}, {"term", pretty(e.term)}};
      for (auto& [k, v] : report_rows(rep)) jt[k] = tri_name(v);
      jt["mismatches"] = bad_rows;
      jt["violations"] = rep.violations;
      jterms.push_back(std::move(jt));
    } else {
      std::string status = bad_rows.empty() && rep.violations.empty()
                               ? (has_unknown ? "  ?  " : good("  ok "))
                               : loud(" FAIL");
      std::cout << status << "  line " << e.line << "  " << pretty(e.term) << "\n";
      for (auto& b : bad_rows) std::cout << loud("        " + b) << "\n";
      for (auto& v : rep.violations) std::cout << loud("        violation: " + v) << "\n";
    }
  }
  bool failed = mismatches > 0 || violations > 0;
  if (o.json_out()) {
    emit({{"file", file},
          {"terms", jterms},
          {"summary",
           {{"terms", entries.size()},
            {"with_unknowns", unknowns},
            {"mismatches", mismatches},
            {"violations", violations}}}});
  } else {
    std::cout << entries.size() << " terms, " << unknowns << " with unknowns, "
              << mismatches << " mismatches, " << violations << " violations\n";
  }
  return failed ? exit_mismatch : exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lambda-mu workbench"};
  app.require_subcommand(1);

  Opts o;
  app.add_option("--fuel", o.fuel, "reduction step / graph node budget")
      ->capture_default_str();
  app.add_option("--depth", o.depth, "type search: candidate type size budget")
      ->capture_default_str();
  app.add_option("--width", o.width,
                 "type search: max intersection arity and continuation length")
      ->capture_default_str();
  auto* seed_opt = app.add_option("--seed", o.seed, "rng seed (random strategy)");
  app.add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  std::string expr, strat = "lor", sysname = "s", file;
  std::vector<std::string> exprs, types;
  int max_shown = 0;

  auto* cparse = app.add_subcommand("parse", "parse a term and print it back");
  cparse->add_option("-e,--expr", expr, "term")->required();

  auto* creduce = app.add_subcommand("reduce", "reduce a term to normal form");
  creduce->add_option("-e,--expr", expr, "term")->required();
  creduce->add_option("--strategy", strat, "redex choice")
      ->check(CLI::IsMember({"lor", "ri", "random"}))
      ->capture_default_str();

  auto* cclassify = app.add_subcommand(
      "classify", "reduction behaviour and typeability of one term");
  cclassify->add_option("-e,--expr", expr, "term")->required();

  auto* capprox = app.add_subcommand("approx", "maximal approximants of a term");
  capprox->add_option("-e,--expr", expr, "term")->required();

  auto* cjoin = app.add_subcommand("join", "join of two compatible terms");
  cjoin->add_option("-e,--expr", exprs, "terms (twice)")->expected(2);

  auto* csub = app.add_subcommand("subtype", "decide the subtype order");
  csub->add_option("-t,--type", types, "types (twice)")->expected(2);

  auto* ccheck = app.add_subcommand("check", "check a derivation written as json");
  ccheck->add_option("file", file, "derivation file, - for stdin")->required();
  ccheck->add_option("--system", sysname, "type system")
      ->check(CLI::IsMember({"s", "S", "bot", "Bot", "sn", "SN"}))
      ->capture_default_str();

  auto* cinfer = app.add_subcommand("infer", "enumerate derivable triples");
  cinfer->add_option("-e,--expr", expr, "term")->required();
  cinfer->add_option("--system", sysname, "type system")
      ->check(CLI::IsMember({"s", "S", "sn", "SN"}))
      ->capture_default_str();
  cinfer->add_option("--max", max_shown, "print at most this many triples (0: all)")
      ->capture_default_str();

  auto* ccorpus = app.add_subcommand("corpus", "operations on a corpus file");
  auto* crun = ccorpus->add_subcommand("run", "classify every term, check annotations");
  crun->add_option("file", file, "corpus file")->default_val("corpus/terms.lmu");
  ccorpus->require_subcommand(1);

  for (auto* s : {cparse, creduce, cclassify, capprox, cjoin, csub, ccheck, cinfer})
    s->fallthrough();
  ccorpus->fallthrough();
  crun->fallthrough();

  int rc = exit_ok;
  cparse->callback([&] { rc = run_parse(o, expr); });
  creduce->callback([&] {
    o.seeded = seed_opt->count() > 0;
    if (strat == "random" && !o.seeded)
      throw CLI::ValidationError("--strategy random needs --seed");
    rc = run_reduce(o, expr, strat);
  });
  cclassify->callback([&] { rc = run_classify(o, expr); });
  capprox->callback([&] { rc = run_approx(o, expr); });
  cjoin->callback([&] { rc = run_join(o, exprs); });
  csub->callback([&] { rc = run_subtype(o, types); });
  ccheck->callback([&] { rc = run_check(o, file, sysname); });
  cinfer->callback([&] { rc = run_infer(o, expr, sysname, max_shown); });
  crun->callback([&] { rc = run_corpus(o, file); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return exit_bad_input;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_bad_input;
  }
  return rc;
}
