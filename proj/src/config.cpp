#include "binreg/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "binreg/error.hpp"

namespace binreg {

using nlohmann::json;

namespace {

const json& require(const json& obj, const char* key, const char* where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ParseError(std::string("config: ") + where + " is missing \"" + key + "\"");
  }
  return obj.at(key);
}

std::string as_string(const json& v, const std::string& what) {
  if (!v.is_string()) throw ParseError("config: " + what + " must be a string");
  return v.get<std::string>();
}

std::size_t as_count(const json& v, const std::string& what) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    throw ParseError("config: " + what + " must be a nonnegative integer");
  }
  return v.get<std::size_t>();
}

SimulationSpec parse_simulation(const json& j) {
  SimulationSpec sim;
  if (j.contains("truth")) {
    const json& t = j.at("truth");
    if (!t.is_array()) throw ParseError("config: simulate.truth must be an array");
    for (const auto& v : t) {
      if (!v.is_number()) throw ParseError("config: simulate.truth entries must be numbers");
      sim.truth.push_back(v.get<double>());
    }
  }
  if (j.contains("rows")) sim.rows = as_count(j.at("rows"), "simulate.rows");
  if (j.contains("group_size")) {
    const json& g = j.at("group_size");
    if (g.is_array()) {
      if (g.size() != 2) throw ParseError("config: simulate.group_size range needs two entries");
      sim.min_group = as_count(g[0], "simulate.group_size[0]");
      sim.max_group = as_count(g[1], "simulate.group_size[1]");
    } else {
      sim.min_group = sim.max_group = as_count(g, "simulate.group_size");
    }
  }
  return sim;
}

}  // namespace

std::string_view to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::Text:
      return "text";
    case OutputFormat::Csv:
      return "csv";
    case OutputFormat::Json:
      return "json";
  }
  return "text";
}

std::optional<OutputFormat> parse_format(std::string_view name) {
  for (auto f : {OutputFormat::Text, OutputFormat::Csv, OutputFormat::Json}) {
    if (to_string(f) == name) return f;
  }
  return std::nullopt;
}

void ModelConfig::validate() const {
  if (successes_column.empty() || trials_column.empty()) {
    throw ValidationError("config: response column names must be nonempty");
  }
  if (successes_column == trials_column) {
    throw ValidationError("config: successes and trials columns must differ");
  }
  if (variables.empty()) throw ValidationError("config: at least one variable is required");
  if (links.empty()) throw ValidationError("config: at least one link is required");
  if (max_iter < 1) throw ValidationError("config: max_iter must be >= 1");
  std::set<std::string> names = {successes_column, trials_column};
  for (const auto& v : variables) {
    v.validate();
    if (!names.insert(v.name).second) {
      throw ValidationError("config: column '" + v.name + "' is declared more than once");
    }
  }
  if (simulate && simulate->min_group > simulate->max_group) {
    throw ValidationError("config: simulate.group_size range is inverted");
  }
}

ModelConfig parse_config(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("config: top level must be an object");

  ModelConfig cfg;
  const json& response = require(j, "response", "top level");
  cfg.successes_column = as_string(require(response, "successes", "response"),
                                   "response.successes");
  cfg.trials_column = as_string(require(response, "trials", "response"), "response.trials");

  const json& vars = require(j, "variables", "top level");
  if (!vars.is_array()) throw ParseError("config: variables must be an array");
  for (const auto& v : vars) {
    VariableSpec spec;
    spec.name = as_string(require(v, "name", "variable"), "variable name");
    const json& levels = require(v, "levels", "variable");
    if (!levels.is_array()) throw ParseError("config: levels of '" + spec.name + "' must be an array");
    for (const auto& l : levels) spec.levels.push_back(as_string(l, "level of '" + spec.name + "'"));
    spec.reference = as_string(require(v, "reference", "variable"),
                               "reference of '" + spec.name + "'");
    cfg.variables.push_back(std::move(spec));
  }

  if (j.contains("links")) {
    cfg.links.clear();
    for (const auto& l : j.at("links")) {
      const std::string name = as_string(l, "link");
      const auto kind = parse_link(name);
      if (!kind) throw ParseError("config: unknown link '" + name + "'");
      cfg.links.push_back(*kind);
    }
  }
  if (j.contains("format")) {
    const std::string name = as_string(j.at("format"), "format");
    const auto f = parse_format(name);
    if (!f) throw ParseError("config: unknown format '" + name + "'");
    cfg.format = *f;
  }
  if (j.contains("max_iter")) cfg.max_iter = static_cast<int>(as_count(j.at("max_iter"), "max_iter"));
  if (j.contains("seed")) {
    const json& s = j.at("seed");
    if (!s.is_number_unsigned()) throw ParseError("config: seed must be a nonnegative integer");
    cfg.seed = s.get<std::uint64_t>();
  }
  if (j.contains("simulate")) cfg.simulate = parse_simulation(j.at("simulate"));

  cfg.validate();
  return cfg;
}

ModelConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace binreg
