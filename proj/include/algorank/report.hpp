#pragma once

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

#include "algorank/chain.hpp"
#include "algorank/convergence.hpp"
#include "algorank/errors.hpp"
#include "algorank/rank.hpp"
#include "algorank/verdict.hpp"

namespace algorank {

using InstanceLabel = std::variant<std::monostate, std::string, std::vector<long long>>;

// Campaign parameters echoed into the report for reproducibility.
struct ReportConfig {
  int batch = 3;
  double eps = 0.03;
  int max_measurements = 30;
  std::vector<QuantileRange> quantile_set;
  std::uint64_t seed = 0;
  double rt_threshold = 1.5;
  int warmup = 1;
};

// Listed algorithm: ranked ones carry rank and mean rank; algorithms dropped
// by the shortlist keep null ranks but still report FLOPs and RF.
struct ReportAlgorithm {
  std::string id;
  std::optional<long long> flops;
  std::optional<double> rf;
  std::optional<int> rank_headline;
  std::optional<double> mean_rank;
};

namespace detail {

inline std::string two_decimals(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", value);
  return buf;
}

inline nlohmann::ordered_json range_json(const QuantileRange& r) {
  return nlohmann::ordered_json::array({r.lower, r.upper});
}

inline std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace detail

// Rows for the `algorithms` array: final ranking first (sequence order),
// then any unranked algorithms in their input order. RF is computed over all
// algorithms whose FLOPs are known.
inline std::vector<ReportAlgorithm> report_algorithms(
    const MeanRankTable& table, const std::vector<std::string>& all_ids,
    const std::map<std::string, long long>& flops) {
  std::optional<long long> fmin;
  for (const auto& [id, f] : flops)
    if (!fmin || f < *fmin) fmin = f;

  std::vector<ReportAlgorithm> rows;
  auto make_row = [&](const std::string& id) {
    ReportAlgorithm row;
    row.id = id;
    if (const auto it = flops.find(id); it != flops.end()) {
      row.flops = it->second;
      if (fmin && *fmin > 0)
        row.rf = static_cast<double>(it->second - *fmin) / static_cast<double>(*fmin);
    }
    return row;
  };

  for (const auto& e : table.headline.entries) {
    ReportAlgorithm row = make_row(e.id);
    row.rank_headline = e.rank;
    row.mean_rank = table.mean_of(e.id);
    rows.push_back(std::move(row));
  }
  for (const auto& id : all_ids) {
    bool ranked = false;
    for (const auto& e : table.headline.entries)
      if (e.id == id) ranked = true;
    if (!ranked) rows.push_back(make_row(id));
  }
  return rows;
}

inline nlohmann::ordered_json build_report(const InstanceLabel& instance,
                                           const std::vector<ReportAlgorithm>& algorithms,
                                           const MeanRankTable& table,
                                           const ConvergenceState& state,
                                           const std::optional<Verdict>& verdict,
                                           const ReportConfig& config,
                                           bool with_timestamp = false) {
  if (state.history.empty()) throw Error("cannot report a campaign with no iterations");

  nlohmann::ordered_json report;
  if (std::holds_alternative<std::string>(instance))
    report["instance"] = std::get<std::string>(instance);
  else if (std::holds_alternative<std::vector<long long>>(instance))
    report["instance"] = std::get<std::vector<long long>>(instance);
  else
    report["instance"] = nullptr;

  report["algorithms"] = nlohmann::ordered_json::array();
  for (const auto& row : algorithms) {
    nlohmann::ordered_json a;
    a["id"] = row.id;
    a["flops"] = row.flops ? nlohmann::ordered_json(*row.flops) : nullptr;
    a["rf"] = row.rf ? nlohmann::ordered_json(*row.rf) : nullptr;
    a["rank_q25_75"] = row.rank_headline ? nlohmann::ordered_json(*row.rank_headline) : nullptr;
    a["mean_rank"] = row.mean_rank ? nlohmann::ordered_json(*row.mean_rank) : nullptr;
    a["mean_rank_display"] =
        row.mean_rank ? nlohmann::ordered_json(detail::two_decimals(*row.mean_rank)) : nullptr;
    report["algorithms"].push_back(std::move(a));
  }

  report["sequence"] = table.headline.ids();

  report["iterations"] = nlohmann::ordered_json::array();
  for (const auto& snap : state.history) {
    nlohmann::ordered_json it;
    it["n_measurements"] = snap.n_measurements;
    it["norm"] = snap.norm;
    it["sequence"] = snap.sequence.ids();
    it["ranks"] = snap.sequence.ranks();
    it["mean_ranks"] = snap.mean_ranks;
    report["iterations"].push_back(std::move(it));
  }

  report["converged"] = state.converged;

  if (verdict) {
    nlohmann::ordered_json v;
    v["kind"] = to_string(verdict->kind);
    v["min_flops_ids"] = verdict->min_flops_ids;
    v["evidence"] = nlohmann::ordered_json::array();
    for (const auto& ev : verdict->evidence) {
      nlohmann::ordered_json e;
      e["id"] = ev.id;
      e["rank"] = ev.rank;
      e["mean_rank"] = ev.mean_rank ? nlohmann::ordered_json(*ev.mean_rank) : nullptr;
      e["rf"] = ev.rf;
      v["evidence"].push_back(std::move(e));
    }
    report["verdict"] = std::move(v);
  } else {
    report["verdict"] = nullptr;
  }

  nlohmann::ordered_json cfg;
  cfg["M"] = config.batch;
  cfg["eps"] = config.eps;
  cfg["max"] = config.max_measurements;
  cfg["quantile_set"] = nlohmann::ordered_json::array();
  for (const auto& r : config.quantile_set) cfg["quantile_set"].push_back(detail::range_json(r));
  cfg["headline_range"] = detail::range_json(table.headline_range);
  cfg["seed"] = config.seed;
  cfg["rt_threshold"] = config.rt_threshold;
  cfg["warmup"] = config.warmup;
  cfg["clock_resolution_seconds"] =
      static_cast<double>(std::chrono::steady_clock::period::num) /
      static_cast<double>(std::chrono::steady_clock::period::den);
  report["config"] = std::move(cfg);

  if (with_timestamp) report["timestamp"] = detail::utc_timestamp();
  return report;
}

inline void emit_report(const nlohmann::ordered_json& report, std::ostream& out) {
  out << report.dump(2) << '\n';
}

inline void emit_report(const nlohmann::ordered_json& report, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write report: " + path.string());
  emit_report(report, out);
}

}  // namespace algorank
