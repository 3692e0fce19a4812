#pragma once

/**
 * @file config.hpp
 * @brief Run configuration and its line-oriented key = value grammar.
 *
 *   # comment
 *   model = heisenberg            top-level shorthand keys are accepted
 *   [model]
 *   name = gauge
 *   structure_group = gl2
 *   base_dim = 2
 *   [connection]
 *   source = random               random | preset
 *   bound = 3/2
 *   degree = 2
 *   section_degree = 3
 *   [run]
 *   seed = 1
 *   trials = 100
 *   suites = lift, curvature      or "all"
 *   mutation = false
 */

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sdg/models.hpp"
#include "sdg/rational.hpp"

namespace sdg::cli {

class ConfigError : public Error {
 public:
  using Error::Error;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"algebra", "tangent", "lift", "curvature", "forms", "bianchi"};
  return names;
}

struct RunConfig {
  std::string model = "heisenberg";
  std::string structure_group = "scalar";
  std::size_t base_dim = 2;
  std::string connection_source = "random";
  Rational bound = 3;
  std::size_t degree = 2;
  std::size_t section_degree = 3;
  std::uint64_t seed = 0;
  std::size_t trials = 100;
  std::vector<std::string> suites = suite_names();
  bool mutation = false;

  [[nodiscard]] bool runs(std::string_view suite) const {
    return std::find(suites.begin(), suites.end(), suite) != suites.end();
  }
};

namespace detail {

inline std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline std::string at_line(std::size_t line, const std::string& msg) {
  return "line " + std::to_string(line) + ": " + msg;
}

inline std::uint64_t parse_u64(const std::string& v, const std::string& what) {
  if (v.empty() || !std::all_of(v.begin(), v.end(), [](unsigned char c) { return std::isdigit(c); }))
    throw ConfigError("invalid " + what + " '" + v + "': expected a non-negative integer");
  try {
    std::size_t used = 0;
    const unsigned long long n = std::stoull(v, &used, 10);
    return static_cast<std::uint64_t>(n);
  } catch (const std::out_of_range&) {
    throw ConfigError("invalid " + what + " '" + v + "': out of range for 64 bits");
  }
}

inline bool parse_bool(const std::string& v) {
  if (v == "true" || v == "yes" || v == "1" || v == "on") return true;
  if (v == "false" || v == "no" || v == "0" || v == "off") return false;
  throw ConfigError("invalid boolean '" + v + "'");
}

}  // namespace detail

inline std::uint64_t parse_seed(const std::string& v) { return detail::parse_u64(v, "seed"); }

inline std::vector<std::string> parse_suites(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream in(v);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = detail::trim(item);
    if (item == "all") {
      for (const auto& s : suite_names())
        if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
      continue;
    }
    if (std::find(suite_names().begin(), suite_names().end(), item) == suite_names().end()) {
      std::string known = "all";
      for (const auto& s : suite_names()) known += ", " + s;
      throw ConfigError("unknown suite '" + item + "' (choices: " + known + ")");
    }
    if (std::find(out.begin(), out.end(), item) == out.end()) out.push_back(item);
  }
  if (out.empty()) throw ConfigError("empty suite selection");
  std::vector<std::string> ordered;
  for (const auto& s : suite_names())
    if (std::find(out.begin(), out.end(), s) != out.end()) ordered.push_back(s);
  return ordered;
}

/// Checks cross-field constraints and registry membership.
inline void validate_config(const RunConfig& c) {
  try {
    (void)make_model(c.model, c.structure_group, c.base_dim);
  } catch (const PreconditionError& e) {
    throw ConfigError(e.what());
  }
  if (c.connection_source != "random" && c.connection_source != "preset")
    throw ConfigError("unknown connection source '" + c.connection_source + "' (choices: random, preset)");
  if (c.bound <= 0) throw ConfigError("connection bound must be positive");
  if (c.trials == 0) throw ConfigError("trials must be at least 1");
}

inline RunConfig parse_config(std::string_view text) {
  RunConfig c;
  std::string section;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw;
    if (auto hash = s.find('#'); hash != std::string::npos) s.erase(hash);
    s = detail::trim(s);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ConfigError(detail::at_line(line, "unterminated section header"));
      section = detail::trim(std::string_view(s).substr(1, s.size() - 2));
      if (section != "model" && section != "connection" && section != "run")
        throw ConfigError(detail::at_line(line, "unknown section [" + section + "]"));
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError(detail::at_line(line, "expected 'key = value'"));
    const std::string key = detail::trim(std::string_view(s).substr(0, eq));
    const std::string value = detail::trim(std::string_view(s).substr(eq + 1));
    if (key.empty()) throw ConfigError(detail::at_line(line, "missing key"));
    if (value.empty()) throw ConfigError(detail::at_line(line, "missing value for '" + key + "'"));
    const std::string full = section.empty() ? key : section + "." + key;
    try {
      if (full == "model" || full == "model.name")
        c.model = value;
      else if (full == "structure_group" || full == "model.structure_group")
        c.structure_group = value;
      else if (full == "base_dim" || full == "model.base_dim")
        c.base_dim = detail::parse_u64(value, "base_dim");
      else if (full == "connection.source")
        c.connection_source = value;
      else if (full == "connection.bound")
        c.bound = parse_rational(value);
      else if (full == "connection.degree")
        c.degree = detail::parse_u64(value, "degree");
      else if (full == "connection.section_degree")
        c.section_degree = detail::parse_u64(value, "section_degree");
      else if (full == "seed" || full == "run.seed")
        c.seed = parse_seed(value);
      else if (full == "trials" || full == "run.trials")
        c.trials = detail::parse_u64(value, "trials");
      else if (full == "suites" || full == "run.suites")
        c.suites = parse_suites(value);
      else if (full == "mutation" || full == "run.mutation")
        c.mutation = detail::parse_bool(value);
      else
        throw ConfigError("unknown key '" + full + "'");
    } catch (const ConfigError& e) {
      throw ConfigError(detail::at_line(line, e.what()));
    } catch (const PreconditionError& e) {
      throw ConfigError(detail::at_line(line, e.what()));
    }
  }
  validate_config(c);
  return c;
}

}  // namespace sdg::cli
