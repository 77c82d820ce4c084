#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "algorank/chain.hpp"
#include "algorank/errors.hpp"
#include "algorank/synthetic.hpp"

namespace algorank {

// One algorithm of a campaign: a stable id plus whatever bindings the run
// mode needs (a FLOP count for the verdict, a command for live measurement,
// a mixture for synthetic generation; replay data binds by id).
struct AlgorithmSpec {
  std::string id;
  std::optional<long long> flops;
  std::optional<std::string> command;
  std::vector<MixtureComponent> mixture;
};

namespace detail {

inline nlohmann::json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file: " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error("invalid JSON in " + path.string() + ": " + e.what());
  }
}

inline void check_unique_ids(const std::vector<AlgorithmSpec>& specs) {
  std::map<std::string, int> seen;
  for (const auto& s : specs) {
    if (s.id.empty()) throw ConfigError("algorithm id must not be empty");
    if (++seen[s.id] > 1) throw ConfigError("duplicate algorithm id: " + s.id);
  }
}

}  // namespace detail

// Manifest for live measurement: {"algorithms": [{"id", "command", "flops"?}]}.
inline std::vector<AlgorithmSpec> load_manifest(const std::filesystem::path& path) {
  const auto doc = detail::load_json_file(path);
  if (!doc.contains("algorithms") || !doc["algorithms"].is_array())
    throw ConfigError("manifest needs an 'algorithms' array: " + path.string());
  std::vector<AlgorithmSpec> specs;
  for (const auto& item : doc["algorithms"]) {
    AlgorithmSpec spec;
    spec.id = item.value("id", std::string());
    if (!item.contains("command") || !item["command"].is_string())
      throw ConfigError("manifest entry for '" + spec.id + "' needs a 'command' string");
    spec.command = item["command"].get<std::string>();
    if (item.contains("flops")) {
      if (!item["flops"].is_number_integer())
        throw ConfigError("'flops' must be an integer for " + spec.id);
      spec.flops = item["flops"].get<long long>();
      if (*spec.flops < 0) throw ConfigError("'flops' must be non-negative for " + spec.id);
    }
    specs.push_back(std::move(spec));
  }
  if (specs.empty()) throw ConfigError("manifest lists no algorithms: " + path.string());
  detail::check_unique_ids(specs);
  return specs;
}

// Mixture spec for synthetic timings:
// {"algorithms": [{"id", "mixture": [{"weight", "location", "spread"}]}]}.
inline std::vector<AlgorithmSpec> load_mixture_spec(const std::filesystem::path& path) {
  const auto doc = detail::load_json_file(path);
  if (!doc.contains("algorithms") || !doc["algorithms"].is_array())
    throw ConfigError("mixture spec needs an 'algorithms' array: " + path.string());
  std::vector<AlgorithmSpec> specs;
  for (const auto& item : doc["algorithms"]) {
    AlgorithmSpec spec;
    spec.id = item.value("id", std::string());
    if (!item.contains("mixture") || !item["mixture"].is_array())
      throw ConfigError("mixture spec entry for '" + spec.id + "' needs a 'mixture' array");
    for (const auto& comp : item["mixture"]) {
      MixtureComponent c{};
      if (!comp.contains("weight") || !comp.contains("location"))
        throw ConfigError("mixture component needs 'weight' and 'location' (" + spec.id + ")");
      c.weight = comp["weight"].get<double>();
      c.location = comp["location"].get<double>();
      c.spread = comp.value("spread", 0.0);
      spec.mixture.push_back(c);
    }
    validate_mixture(spec.id, spec.mixture);
    specs.push_back(std::move(spec));
  }
  if (specs.empty()) throw ConfigError("mixture spec lists no algorithms: " + path.string());
  detail::check_unique_ids(specs);
  return specs;
}

// Plain id -> FLOP count map: {"alg_a": 135000, "alg_b": 511875}.
inline std::map<std::string, long long> load_flops_map(const std::filesystem::path& path) {
  const auto doc = detail::load_json_file(path);
  if (!doc.is_object()) throw ConfigError("FLOPs file must be a JSON object: " + path.string());
  std::map<std::string, long long> flops;
  for (const auto& [id, value] : doc.items()) {
    if (!value.is_number_integer())
      throw ConfigError("FLOP count must be an integer for " + id);
    flops[id] = value.get<long long>();
  }
  return flops;
}

inline MixtureSpec mixture_spec_of(const std::vector<AlgorithmSpec>& specs) {
  MixtureSpec mix;
  for (const auto& s : specs) {
    if (s.mixture.empty()) throw ConfigError("no mixture defined for " + s.id);
    mix.emplace(s.id, s.mixture);
  }
  return mix;
}

// Shortlist over AlgorithmSpecs; requires a FLOP count on every entry.
inline std::vector<std::string> shortlist_ids(const std::vector<AlgorithmSpec>& specs,
                                              const std::vector<double>& single_run_times,
                                              double rt_threshold) {
  std::vector<long long> flops;
  flops.reserve(specs.size());
  for (const auto& s : specs) {
    if (!s.flops) throw Error("shortlist requires a FLOP count for " + s.id);
    flops.push_back(*s.flops);
  }
  const auto indices = shortlist(flops, single_run_times, rt_threshold);
  std::vector<std::string> ids;
  ids.reserve(indices.size());
  for (std::size_t i : indices) ids.push_back(specs[i].id);
  return ids;
}

}  // namespace algorank
