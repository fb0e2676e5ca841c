#ifndef LMU_DERIVATION_JSON_HPP
#define LMU_DERIVATION_JSON_HPP

// Derivations as JSON, one object per node:
//   { "rule": "App", "ctx": {"x": "('a)->'p"}, "term": "x y",
//     "type": "(O)->'p", "nctx": {"a": "O"}, "premises": [...] }
// Terms and types use the surface syntax; contexts are string-to-string maps.

#include <string>

#include <json.hpp>

#include "lmu/derivation.hpp"
#include "lmu/syntax.hpp"

namespace lmu {

inline nlohmann::json judgement_to_json(const Judgement& j) {
  nlohmann::json o;
  o["ctx"] = nlohmann::json::object();
  for (auto& [x, s] : j.vctx) o["ctx"][x] = pretty(s);
  o["term"] = pretty(j.term);
  o["type"] = pretty(j.type);
  o["nctx"] = nlohmann::json::object();
  for (auto& [a, c] : j.nctx) o["nctx"][a] = pretty(c);
  return o;
}

inline nlohmann::json derivation_to_json(const Derivation& d) {
  nlohmann::json o = judgement_to_json(d.conclusion);
  o["rule"] = rule_name(d.rule);
  o["premises"] = nlohmann::json::array();
  for (auto& p : d.premises) o["premises"].push_back(derivation_to_json(p));
  return o;
}

namespace detail {

[[noreturn]] inline void bad_derivation(const std::string& what) {
  throw std::runtime_error("bad derivation: " + what);
}

}  // namespace detail

inline Judgement judgement_from_json(const nlohmann::json& o) {
  if (!o.is_object()) detail::bad_derivation("node is not an object");
  for (const char* k : {"ctx", "term", "type", "nctx"})
    if (!o.contains(k)) detail::bad_derivation(std::string("missing field '") + k + "'");
  Judgement j;
  if (!o["ctx"].is_object()) detail::bad_derivation("'ctx' is not an object");
  for (auto& [x, s] : o["ctx"].items()) {
    if (!s.is_string()) detail::bad_derivation("context entry for '" + x + "' is not a string");
    j.vctx.emplace(x, parse_inter_type(s.template get<std::string>()));
  }
  if (!o["term"].is_string()) detail::bad_derivation("'term' is not a string");
  j.term = parse_term(o["term"].template get<std::string>());
  if (!o["type"].is_string()) detail::bad_derivation("'type' is not a string");
  j.type = parse_inter_type(o["type"].template get<std::string>());
  if (!o["nctx"].is_object()) detail::bad_derivation("'nctx' is not an object");
  for (auto& [a, c] : o["nctx"].items()) {
    if (!c.is_string()) detail::bad_derivation("name context entry for '" + a + "' is not a string");
    j.nctx.emplace(a, parse_cont_type(c.template get<std::string>()));
  }
  return j;
}

inline Derivation derivation_from_json(const nlohmann::json& o) {
  Derivation d;
  d.conclusion = judgement_from_json(o);
  if (!o.contains("rule") || !o["rule"].is_string()) detail::bad_derivation("missing rule name");
  auto r = rule_from_name(o["rule"].template get<std::string>());
  if (!r) detail::bad_derivation("unknown rule '" + o["rule"].template get<std::string>() + "'");
  d.rule = *r;
  if (o.contains("premises")) {
    if (!o["premises"].is_array()) detail::bad_derivation("'premises' is not an array");
    for (auto& p : o["premises"]) d.premises.push_back(derivation_from_json(p));
  }
  return d;
}

}  // namespace lmu

#endif  // LMU_DERIVATION_JSON_HPP
