#include "qtime_runner/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace qtime::runner {

namespace {

const std::map<std::string, Kind>& kind_table() {
  static const std::map<std::string, Kind> table = {
      {"synthesize", Kind::synthesize},   {"moments", Kind::moments}, {"uncertainty", Kind::uncertainty},
      {"dwell", Kind::dwell},             {"photon", Kind::photon},   {"hamiltonianCheck", Kind::hamiltonian_check},
      {"discrete", Kind::discrete}};
  return table;
}

struct KeyRules {
  std::set<std::string> allowed;
  // Alternatives: the parameters must contain every key of at least one set.
  std::vector<std::vector<std::string>> required;
};

const KeyRules& rules_for(Kind kind) {
  static const std::map<Kind, KeyRules> rules = {
      {Kind::synthesize, {{"e0", "sigma", "x", "time_shift", "representation"}, {{"e0", "sigma", "x"}}}},
      {Kind::moments,
       {{"e0", "sigma", "x", "x2", "time_shift", "chirp", "max_order", "count", "seed"},
        {{"e0", "sigma", "x"}, {"count", "seed"}}}},
      {Kind::uncertainty, {{"count", "seed", "minimal_e0", "minimal_sigma", "minimal_x"}, {{"count", "seed"}}}},
      {Kind::dwell,
       {{"e0", "sigma", "barrier_height", "barrier_width", "barrier_left", "xi", "xf", "time_shift"},
        {{"e0", "sigma", "barrier_height", "barrier_width"}}}},
      {Kind::photon, {{"k0", "width", "x1", "x2", "time_shift"}, {{"k0", "width", "x1", "x2"}}}},
      {Kind::hamiltonian_check, {{"p0", "width", "k", "x", "time_shift"}, {{"p0", "width", "k", "x"}}}},
      {Kind::discrete,
       {{"mode", "catalog", "coefficients", "gammas", "x", "count", "seed", "min_levels", "max_levels",
         "convergence_e0", "convergence_sigma", "convergence_shift"},
        {{"mode"}}}},
  };
  return rules.at(kind);
}

const std::set<std::string> kGridKeys = {"steps_per_sigma", "time_half_widths", "time_per_width", "courant",
                                         "step"};
const std::set<std::string> kTopKeys = {"name", "kind", "parameters", "grids", "constants", "output"};

void require_object(const nlohmann::json& v, const std::string& where) {
  if (!v.is_object()) throw ParseError(where + " must be an object");
}

void check_values(const nlohmann::json& obj, const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    const auto& v = it.value();
    const bool ok = v.is_number() || v.is_string() || v.is_boolean() || v.is_array();
    if (!ok) throw ParseError(where + "." + it.key() + " has an unsupported type");
    if (v.is_array()) {
      for (const auto& item : v) {
        const bool item_ok =
            item.is_number() ||
            (item.is_array() && item.size() == 2 && item[0].is_number() && item[1].is_number());
        if (!item_ok) throw ParseError(where + "." + it.key() + " must hold numbers or [re, im] pairs");
      }
    }
  }
}

void validate_keys(const Scenario& s) {
  const auto& rules = rules_for(s.kind);
  for (auto it = s.parameters.begin(); it != s.parameters.end(); ++it) {
    if (!rules.allowed.count(it.key())) {
      throw ParseError("unknown parameter '" + it.key() + "' for kind " + kind_name(s.kind));
    }
  }
  for (auto it = s.grids.begin(); it != s.grids.end(); ++it) {
    if (!kGridKeys.count(it.key())) throw ParseError("unknown grid key '" + it.key() + "'");
    if (!it.value().is_number()) throw ParseError("grids." + it.key() + " must be a number");
  }

  std::vector<std::string> missing;
  bool satisfied = false;
  for (const auto& option : rules.required) {
    std::vector<std::string> absent;
    for (const auto& key : option) {
      if (!s.parameters.contains(key)) absent.push_back(key);
    }
    if (absent.empty()) {
      satisfied = true;
      break;
    }
    if (missing.empty()) missing = absent;
  }
  if (!satisfied) {
    std::string list;
    for (const auto& k : missing) list += (list.empty() ? "" : ", ") + k;
    throw ParseError("missing required parameter(s) for kind " + kind_name(s.kind) + ": " + list);
  }

  if (s.kind == Kind::discrete) {
    const std::string mode = s.text("mode", "");
    if (mode == "explicit") {
      for (const char* key : {"catalog", "coefficients"}) {
        if (!s.has(key)) throw ParseError(std::string("missing required parameter for explicit mode: ") + key);
      }
      const std::string catalog = s.text("catalog", "");
      if (catalog != "oscillator" && catalog != "box") {
        throw ParseError("parameters.catalog must be \"oscillator\" or \"box\"");
      }
    } else if (mode == "random") {
      for (const char* key : {"count", "seed"}) {
        if (!s.has(key)) throw ParseError(std::string("missing required parameter for random mode: ") + key);
      }
    } else {
      throw ParseError("parameters.mode must be \"explicit\" or \"random\"");
    }
  }
  if (s.kind == Kind::synthesize) {
    const std::string rep = s.text("representation", "energy");
    if (rep != "energy" && rep != "momentum") {
      throw ParseError("parameters.representation must be \"energy\" or \"momentum\"");
    }
  }
}

}  // namespace

Kind parse_kind(const std::string& text) {
  const auto it = kind_table().find(text);
  if (it == kind_table().end()) throw ParseError("unknown scenario kind '" + text + "'");
  return it->second;
}

std::string kind_name(Kind kind) {
  for (const auto& [name, k] : kind_table()) {
    if (k == kind) return name;
  }
  return "?";
}

double Scenario::number(const std::string& key) const {
  if (!parameters.contains(key)) throw ParseError("missing parameter '" + key + "'");
  const auto& v = parameters.at(key);
  if (!v.is_number()) throw ParseError("parameters." + key + " must be a number");
  return v.get<double>();
}

double Scenario::number(const std::string& key, double fallback) const {
  return parameters.contains(key) ? number(key) : fallback;
}

double Scenario::grid(const std::string& key, double fallback) const {
  return grids.contains(key) ? grids.at(key).get<double>() : fallback;
}

std::string Scenario::text(const std::string& key, const std::string& fallback) const {
  if (!parameters.contains(key)) return fallback;
  const auto& v = parameters.at(key);
  if (!v.is_string()) throw ParseError("parameters." + key + " must be a string");
  return v.get<std::string>();
}

std::vector<double> Scenario::numbers(const std::string& key, std::vector<double> fallback) const {
  if (!parameters.contains(key)) return fallback;
  const auto& v = parameters.at(key);
  if (!v.is_array()) throw ParseError("parameters." + key + " must be an array");
  std::vector<double> out;
  for (const auto& item : v) {
    if (!item.is_number()) throw ParseError("parameters." + key + " must hold numbers");
    out.push_back(item.get<double>());
  }
  return out;
}

Scenario parse_scenario(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  require_object(doc, "scenario");
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (!kTopKeys.count(it.key())) throw ParseError("unknown top-level key '" + it.key() + "'");
  }
  for (const char* key : {"name", "kind", "output"}) {
    if (!doc.contains(key)) throw ParseError(std::string("missing required key '") + key + "'");
  }
  if (!doc["name"].is_string() || doc["name"].get<std::string>().empty()) {
    throw ParseError("name must be a non-empty string");
  }
  if (!doc["kind"].is_string()) throw ParseError("kind must be a string");

  Scenario s;
  s.name = doc["name"].get<std::string>();
  s.kind = parse_kind(doc["kind"].get<std::string>());
  if (doc.contains("parameters")) {
    require_object(doc["parameters"], "parameters");
    check_values(doc["parameters"], "parameters");
    s.parameters = doc["parameters"];
  }
  if (doc.contains("grids")) {
    require_object(doc["grids"], "grids");
    s.grids = doc["grids"];
  }
  if (doc.contains("constants")) {
    const auto& c = doc["constants"];
    require_object(c, "constants");
    for (auto it = c.begin(); it != c.end(); ++it) {
      if (it.key() != "hbar" && it.key() != "mass" && it.key() != "c") {
        throw ParseError("unknown constant '" + it.key() + "'");
      }
      if (!it.value().is_number()) throw ParseError("constants." + it.key() + " must be a number");
    }
    s.constants.hbar = c.value("hbar", 1.0);
    s.constants.mass = c.value("mass", 1.0);
    s.constants.c = c.value("c", 1.0);
  }

  const auto& out = doc["output"];
  require_object(out, "output");
  if (!out.contains("path") || !out["path"].is_string() || out["path"].get<std::string>().empty()) {
    throw ParseError("output.path must be a non-empty string");
  }
  s.output_path = out["path"].get<std::string>();
  if (out.contains("format")) {
    if (!out["format"].is_string()) throw ParseError("output.format must be a string");
    try {
      s.format = parse_format(out["format"].get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
  }
  for (auto it = out.begin(); it != out.end(); ++it) {
    if (it.key() != "path" && it.key() != "format") throw ParseError("unknown output key '" + it.key() + "'");
  }

  validate_keys(s);
  s.source = doc;
  return s;
}

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ParseError("cannot read " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

Scenario load_scenario(const std::filesystem::path& path) { return parse_scenario(read_file(path)); }

void override_seed(Scenario& scenario, long long seed) {
  if (scenario.parameters.contains("seed")) {
    scenario.parameters["seed"] = seed;
    scenario.source["parameters"]["seed"] = seed;
  }
}

Suite parse_suite(const std::string& text, const std::filesystem::path& base_dir) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  require_object(doc, "suite");
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (it.key() != "name" && it.key() != "scenarios") throw ParseError("unknown suite key '" + it.key() + "'");
  }
  Suite suite;
  suite.name = doc.value("name", std::string("suite"));
  if (!doc.contains("scenarios") || !doc["scenarios"].is_array()) {
    throw ParseError("suite needs a 'scenarios' array of file paths");
  }
  for (const auto& item : doc["scenarios"]) {
    if (!item.is_string()) throw ParseError("suite entries must be file paths");
    const std::filesystem::path p = item.get<std::string>();
    suite.scenarios.push_back(p.is_absolute() ? p : base_dir / p);
  }
  return suite;
}

Suite load_suite(const std::filesystem::path& path) {
  return parse_suite(read_file(path), path.has_parent_path() ? path.parent_path() : std::filesystem::path("."));
}

}  // namespace qtime::runner
