// drives the installed binary end to end: output shapes and exit codes

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "lmu/derivation.hpp"
#include "lmu/derivation_json.hpp"
#include "lmu/syntax.hpp"
#include "lmu/types.hpp"

using namespace lmu;

namespace {

struct RunOut {
  int code;
  std::string out;
};

RunOut run(const std::string& args) {
  std::string cmd = std::string("LMU_COLOR=0 '") + LMU_CLI_PATH + "' " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string last_line(const std::string& s) {
  size_t end = s.find_last_not_of('\n');
  if (end == std::string::npos) return "";
  size_t start = s.rfind('\n', end);
  return s.substr(start == std::string::npos ? 0 : start + 1, end - (start == std::string::npos ? 0 : start + 1) + 1);
}

std::filesystem::path temp_file(const char* name, const std::string& content) {
  auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << content;
  return p;
}

}  // namespace

TEST_CASE("parse prints terms back and rejects malformed input") {
  auto r = run("parse -e '(\\x.x)y'");
  CHECK(r.code == 0);
  CHECK(last_line(r.out) == "(\\x.x) y");

  r = run("parse -e '(\\x.'");
  CHECK(r.code == 2);

  r = run("parse -e 'mu a.[b] mu g.[d] x'");
  CHECK(r.code == 0);
  CHECK(last_line(r.out) == "mu a.[b] mu g.[d] x");
}

TEST_CASE("reduce traces to the normal form and reports fuel exhaustion") {
  auto r = run("reduce -e '(\\x.x)y' --fuel 10");
  CHECK(r.code == 0);
  CHECK(last_line(r.out) == "y");

  r = run("reduce -e '(\\x.x x)(\\x.x x)' --fuel 10");
  CHECK(r.code == 3);

  r = run("reduce -e '(mu b.[b]x)y'");
  CHECK(r.code == 0);
  CHECK(last_line(r.out) == "mu g.[g] x y");

  r = run("reduce -e '(mu b.[d]x)y'");
  CHECK(r.code == 0);
  CHECK(last_line(r.out) == "mu g.[d] x");

  r = run("reduce -e 'mu a.[b] mu g.[g] x'");
  CHECK(r.code == 0);
  CHECK(last_line(r.out) == "mu a.[b] x");

  // the random strategy insists on a seed
  r = run("reduce -e '(\\x.x)y' --strategy random");
  CHECK(r.code != 0);
  r = run("reduce -e '(\\x.x)y' --strategy random --seed 7");
  CHECK(r.code == 0);
  CHECK(last_line(r.out) == "y");
}

TEST_CASE("reduce emits a json trace that reparses") {
  auto r = run("reduce -e '(\\x.\\y.x) z w' --format json");
  CHECK(r.code == 0);
  auto o = nlohmann::json::parse(r.out);
  CHECK(o["status"] == "normal");
  CHECK(o["final"] == "z");
  CHECK(o["steps"].size() == 2);
  CHECK(o["steps"][0]["kind"] == "beta");
  for (auto& st : o["steps"]) parse_term(st["term"].get<std::string>());
}

TEST_CASE("classify prints the six report rows") {
  auto r = run("classify -e '\\x.x'");
  CHECK(r.code == 0);
  for (const char* key : {"hnf_by_reduction", "nf_by_reduction", "sn_by_graph",
                          "typeable_S_nonomega", "typeable_omega_free", "typeable_SN"})
    CHECK(r.out.find(key) != std::string::npos);
  CHECK(r.out.find(" no\n") == std::string::npos);
  CHECK(r.out.find("unknown") == std::string::npos);

  r = run("classify -e 'mu a.[b] mu g.[d] x' --format json");
  CHECK(r.code == 0);
  auto o = nlohmann::json::parse(r.out);
  CHECK(o["hnf_by_reduction"] == "yes");
  CHECK(o["typeable_S_nonomega"] == "yes");
  CHECK(o["violations"].empty());

  // bounded searches never contradict the proven negatives
  r = run("classify -e '(\\x.x x)(\\x.x x)' --format json --depth 4");
  CHECK(r.code == 0);
  o = nlohmann::json::parse(r.out);
  CHECK(o["hnf_by_reduction"] == "no");
  CHECK(o["nf_by_reduction"] == "no");
  CHECK(o["sn_by_graph"] == "no");
  CHECK(o["typeable_omega_free"] == "unknown");
  CHECK(o["typeable_SN"] == "unknown");
}

TEST_CASE("approx lists maximal approximants") {
  auto r = run("approx -e '(\\x.y) ((\\z.z z) (\\z.z z))' --fuel 50");
  CHECK(r.code == 0);
  CHECK(r.out.find("y\n") != std::string::npos);

  r = run("approx -e '(\\x.x x)(\\x.x x)' --fuel 50");
  CHECK(r.code == 0);
  CHECK(last_line(r.out) == "(complete)");
  CHECK(r.out.find("bot\n") != std::string::npos);
}

TEST_CASE("join returns the least upper bound or reports undefined") {
  auto r = run("join -e 'bot' -e 'x'");
  CHECK(r.code == 0);
  CHECK(last_line(r.out) == "x");

  r = run("join -e '\\x.x bot' -e '\\x.bot y'");
  CHECK(r.code == 0);
  CHECK(last_line(r.out) == "\\x.x y");

  r = run("join -e '\\x.x' -e 'x'");
  CHECK(r.code == 1);
  CHECK(last_line(r.out) == "undefined");
}

TEST_CASE("subtype decides both intersection and continuation types") {
  auto r = run("subtype -t \"('a)->'p & ('b)->'p\" -t \"('a)->'p\"");
  CHECK(r.code == 0);
  CHECK(last_line(r.out) == "true");

  r = run("subtype -t \"('a)->'p\" -t \"('b)->'p\"");
  CHECK(r.code == 1);
  CHECK(last_line(r.out) == "false");

  r = run("subtype -t \"'a * 'b * O\" -t \"'a * O\"");
  CHECK(r.code == 0);
  CHECK(last_line(r.out) == "true");

  r = run("subtype -t \"'a\" -t \"w\"");
  CHECK(r.code == 0);
  CHECK(last_line(r.out) == "true");

  r = run("subtype -t \"not a type\" -t \"w\"");
  CHECK(r.code == 2);
}

TEST_CASE("check accepts derivation files and flags broken ones") {
  Derivation ax;
  ax.rule = Rule::Ax;
  ax.conclusion = Judgement{VarContext{{"x", parse_inter_type("(O)->'p0")}},
                            parse_term("x"), parse_inter_type("(O)->'p0"), {}};
  auto ok = temp_file("lmu_cli_ok.json", derivation_to_json(ax).dump());

  auto r = run("check " + ok.string());
  CHECK(r.code == 0);
  CHECK(last_line(r.out) == "ok");
  r = run("check " + ok.string() + " --system sn");
  CHECK(r.code == 0);

  // an omega leaf is fine in the strict system, not in the sn one
  Derivation om;
  om.rule = Rule::Inter;
  om.conclusion = Judgement{{}, parse_term("x"), omega(), {}};
  auto omf = temp_file("lmu_cli_om.json", derivation_to_json(om).dump());
  r = run("check " + omf.string());
  CHECK(r.code == 0);
  r = run("check " + omf.string() + " --system sn");
  CHECK(r.code == 1);

  Derivation bad = ax;
  bad.conclusion.type = parse_inter_type("(O)->'p1");
  auto badf = temp_file("lmu_cli_bad.json", derivation_to_json(bad).dump());
  r = run("check " + badf.string() + " --format json");
  CHECK(r.code == 1);
  auto o = nlohmann::json::parse(r.out);
  CHECK(o["ok"] == false);
  CHECK(o["path"] == "root");

  auto mal = temp_file("lmu_cli_mal.json", "{\"rule\":\"Ax\"}");
  r = run("check " + mal.string());
  CHECK(r.code == 2);

  r = run("check /no/such/file.json");
  CHECK(r.code == 2);
}

TEST_CASE("infer prints triples and signals when nothing informative exists") {
  auto r = run("infer -e 'x' --max 3");
  CHECK(r.code == 0);
  CHECK(r.out.find("x:(O)->'p0 |- (O)->'p0 |") != std::string::npos);

  r = run("infer -e '\\x.x' --system sn --max 1 --format json");
  CHECK(r.code == 0);
  auto o = nlohmann::json::parse(r.out);
  CHECK(o["system"] == "SN");
  CHECK(o["triples"].size() == 1);

  r = run("infer -e '(\\x.x x)(\\x.x x)' --system sn --depth 4");
  CHECK(r.code == 1);
}

TEST_CASE("corpus run agrees with every annotation in the bundled corpus") {
  auto r = run(std::string("corpus run '") + LMU_CORPUS_PATH + "'");
  CHECK(r.code == 0);
  CHECK(last_line(r.out).find("0 mismatches, 0 violations") != std::string::npos);
}

TEST_CASE("corpus run fails loudly on a wrong annotation") {
  auto f = temp_file("lmu_cli_corpus.lmu", "(\\x.x) y # hnf=yes nf=no sn=yes\n");
  auto r = run(std::string("corpus run '") + f.string() + "' --format json");
  CHECK(r.code == 4);
  auto o = nlohmann::json::parse(r.out);
  CHECK(o["summary"]["mismatches"] == 1);
  CHECK(o["terms"][0]["mismatches"].size() == 1);

  auto g = temp_file("lmu_cli_corpus_bad.lmu", "(\\x. # hnf=yes\n");
  r = run(std::string("corpus run '") + g.string() + "'");
  CHECK(r.code == 2);
}
