// SPDX-License-Identifier: Apache-2.0
#include <stdexcept>

#include <json.hpp>

#include "wsim/optics.hpp"

namespace wsim::optics {

namespace {

using nlohmann::ordered_json;

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
  throw std::invalid_argument("scheme field '" + field + "': " + what);
}

const ordered_json& require(const ordered_json& j, const std::string& field) {
  if (!j.contains(field)) field_error(field, "missing");
  return j.at(field);
}

cx parse_cx(const ordered_json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    field_error(field, "expected [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

ordered_json dump_cx(const cx& v) {
  return ordered_json::array({v.real(), v.imag()});
}

}  // namespace

OpticalScheme parse_scheme_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("scheme is not valid JSON: ") + e.what());
  }

  OpticalScheme s;
  s.name = require(j, "name").get<std::string>();
  for (const auto& m : require(j, "modes")) {
    if (!m.is_string()) field_error("modes", "expected an array of mode names");
    s.modes.push_back(m.get<std::string>());
  }
  if (s.modes.empty()) field_error("modes", "must not be empty");
  if (j.contains("truncation")) {
    s.truncation = j.at("truncation").get<int>();
    if (s.truncation < 1) field_error("truncation", "must be >= 1");
  }

  const auto& src = require(j, "source");
  s.source.kind = require(src, "kind").get<std::string>();
  if (src.contains("occupations")) {
    for (auto it = src.at("occupations").begin(); it != src.at("occupations").end(); ++it) {
      if (!it.value().is_number_integer())
        field_error("source.occupations", "counts must be integers");
      s.source.occupations[it.key()] = it.value().get<int>();
    }
  }
  if (src.contains("modes"))
    for (const auto& m : src.at("modes")) s.source.modes.push_back(m.get<std::string>());
  if (src.contains("a")) s.source.a = parse_cx(src.at("a"), "source.a");
  if (src.contains("b")) s.source.b = parse_cx(src.at("b"), "source.b");
  if (src.contains("c")) s.source.c = parse_cx(src.at("c"), "source.c");

  if (j.contains("elements")) {
    for (const auto& je : j.at("elements")) {
      SchemeElement e;
      e.type = require(je, "type").get<std::string>();
      for (const auto& t : require(je, "targets")) e.targets.push_back(t.get<std::string>());
      if (je.contains("params"))
        for (auto it = je.at("params").begin(); it != je.at("params").end(); ++it) {
          if (!it.value().is_number())
            field_error("elements.params." + it.key(), "must be a number");
          e.params[it.key()] = it.value().get<double>();
        }
      s.elements.push_back(std::move(e));
    }
  }

  const auto& ps = require(j, "postselect");
  if (ps.contains("modes")) {
    for (const auto& c : ps.at("modes")) {
      if (!c.contains("mode") || !c.contains("count"))
        field_error("postselect.modes", "entries need 'mode' and 'count'");
      s.postselect.mode_counts.emplace_back(c.at("mode").get<std::string>(),
                                            c.at("count").get<int>());
    }
  }
  if (ps.contains("ports")) {
    for (const auto& c : ps.at("ports")) {
      PatternSpec::Port port;
      for (const auto& m : require(c, "modes")) port.modes.push_back(m.get<std::string>());
      if (c.contains("total"))
        port.total = c.at("total").get<int>();
      else if (c.contains("at_least")) {
        port.total = c.at("at_least").get<int>();
        port.at_least = true;
      } else {
        field_error("postselect.ports", "entries need 'total' or 'at_least'");
      }
      s.postselect.ports.push_back(std::move(port));
    }
  }
  if (s.postselect.mode_counts.empty() && s.postselect.ports.empty())
    field_error("postselect", "pattern must not be empty");

  if (j.contains("target_state")) {
    for (const auto& jt : j.at("target_state")) {
      TargetTerm term;
      for (auto it = require(jt, "occupations").begin();
           it != jt.at("occupations").end(); ++it)
        term.occupations[it.key()] = it.value().get<int>();
      term.amplitude = parse_cx(require(jt, "amplitude"), "target_state.amplitude");
      s.target_state.push_back(std::move(term));
    }
  }
  return s;
}

std::string scheme_to_json(const OpticalScheme& s) {
  ordered_json j;
  j["name"] = s.name;
  j["modes"] = s.modes;
  j["truncation"] = s.truncation;
  ordered_json src;
  src["kind"] = s.source.kind;
  if (!s.source.occupations.empty()) {
    ordered_json occ;
    for (const auto& [k, v] : s.source.occupations) occ[k] = v;
    src["occupations"] = occ;
  }
  if (!s.source.modes.empty()) src["modes"] = s.source.modes;
  if (s.source.kind == "two_crystal") {
    src["a"] = dump_cx(s.source.a);
    src["b"] = dump_cx(s.source.b);
    src["c"] = dump_cx(s.source.c);
  }
  j["source"] = src;
  j["elements"] = ordered_json::array();
  for (const auto& e : s.elements) {
    ordered_json je;
    je["type"] = e.type;
    if (!e.params.empty()) {
      ordered_json p;
      for (const auto& [k, v] : e.params) p[k] = v;
      je["params"] = p;
    }
    je["targets"] = e.targets;
    j["elements"].push_back(je);
  }
  ordered_json ps;
  if (!s.postselect.mode_counts.empty()) {
    ps["modes"] = ordered_json::array();
    for (const auto& [m, c] : s.postselect.mode_counts)
      ps["modes"].push_back({{"mode", m}, {"count", c}});
  }
  if (!s.postselect.ports.empty()) {
    ps["ports"] = ordered_json::array();
    for (const auto& port : s.postselect.ports) {
      ordered_json jp;
      jp["modes"] = port.modes;
      if (port.at_least)
        jp["at_least"] = port.total;
      else
        jp["total"] = port.total;
      ps["ports"].push_back(jp);
    }
  }
  j["postselect"] = ps;
  if (!s.target_state.empty()) {
    j["target_state"] = ordered_json::array();
    for (const auto& t : s.target_state) {
      ordered_json jt;
      ordered_json occ;
      for (const auto& [k, v] : t.occupations) occ[k] = v;
      jt["occupations"] = occ;
      jt["amplitude"] = dump_cx(t.amplitude);
      j["target_state"].push_back(jt);
    }
  }
  return j.dump(2) + "\n";
}

std::string report_to_json(const SchemeReport& r) {
  ordered_json j;
  j["schema_version"] = 1;
  j["scheme"] = r.name;
  j["modes"] = r.modes;
  j["probability"] = format_significant(r.probability);
  if (r.fidelity)
    j["fidelity"] = format_significant(*r.fidelity);
  else
    j["fidelity"] = nullptr;
  j["conditional_state"] = ordered_json::array();
  for (const auto& [occ, amp] : r.conditional.terms()) {
    ordered_json jt;
    ordered_json jocc;
    for (size_t k = 0; k < occ.size(); ++k) jocc[r.modes.at(k)] = occ[k];
    jt["occupations"] = jocc;
    jt["re"] = format_significant(amp.real());
    jt["im"] = format_significant(amp.imag());
    j["conditional_state"].push_back(jt);
  }
  return j.dump(2) + "\n";
}

}  // namespace wsim::optics
