#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "algorank/errors.hpp"
#include "algorank/source.hpp"

namespace algorank {

// Timings interchange format: a UTF-8 CSV with the exact header
// `algorithm,run_index,time_seconds` and one measurement per row.
inline constexpr const char* kTimingsCsvHeader = "algorithm,run_index,time_seconds";

// Samples grouped per algorithm, ordered by run_index within each algorithm.
struct TimingTable {
  std::vector<std::string> algorithm_order;  // first-appearance order
  std::map<std::string, std::vector<double>> samples;
};

namespace detail {

inline std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

inline std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t pos = 0;
  while (pos <= line.size()) {
    const std::size_t end = std::min(line.find(',', pos), line.size());
    fields.push_back(line.substr(pos, end - pos));
    pos = end + 1;
  }
  return fields;
}

}  // namespace detail

inline TimingTable load_timings_csv(std::istream& in) {
  std::string line;
  long line_no = 0;
  if (!std::getline(in, line)) throw ParseError("timings file is empty", 1);
  ++line_no;
  if (detail::strip_cr(line) != kTimingsCsvHeader)
    throw ParseError(std::string("expected header '") + kTimingsCsvHeader + "'", line_no);

  struct Row {
    long long run_index;
    double time;
    std::size_t file_order;
  };
  std::map<std::string, std::vector<Row>> rows;
  TimingTable table;
  std::size_t order = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = detail::strip_cr(line);
    if (line.empty()) continue;
    const auto fields = detail::split_csv_row(line);
    if (fields.size() != 3) throw ParseError("expected 3 fields", line_no);
    const std::string& id = fields[0];
    if (id.empty()) throw ParseError("empty algorithm id", line_no);
    long long run_index = 0;
    double time = 0.0;
    try {
      std::size_t used = 0;
      run_index = std::stoll(fields[1], &used);
      if (used != fields[1].size()) throw std::invalid_argument(fields[1]);
      time = std::stod(fields[2], &used);
      if (used != fields[2].size()) throw std::invalid_argument(fields[2]);
    } catch (const std::invalid_argument&) {
      throw ParseError("malformed numeric field", line_no);
    } catch (const std::out_of_range&) {
      throw ParseError("numeric field out of range", line_no);
    }
    if (!(time > 0.0) || !std::isfinite(time))
      throw ParseError("time_seconds must be positive and finite", line_no);
    if (rows.find(id) == rows.end()) table.algorithm_order.push_back(id);
    rows[id].push_back({run_index, time, order++});
  }

  for (auto& [id, vec] : rows) {
    std::sort(vec.begin(), vec.end(), [](const Row& a, const Row& b) {
      return a.run_index != b.run_index ? a.run_index < b.run_index : a.file_order < b.file_order;
    });
    auto& samples = table.samples[id];
    samples.reserve(vec.size());
    for (const auto& r : vec) samples.push_back(r.time);
  }
  return table;
}

inline TimingTable load_timings_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open timings file: " + path.string());
  return load_timings_csv(in);
}

inline void write_timings_csv(std::ostream& out, const TimingTable& table) {
  out << kTimingsCsvHeader << '\n';
  char buf[64];
  for (const auto& id : table.algorithm_order) {
    const auto it = table.samples.find(id);
    if (it == table.samples.end()) continue;
    for (std::size_t i = 0; i < it->second.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g", it->second[i]);
      out << id << ',' << i << ',' << buf << '\n';
    }
  }
}

inline void write_timings_csv(const std::filesystem::path& path, const TimingTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write timings file: " + path.string());
  write_timings_csv(out, table);
}

// Serves recorded samples batch by batch, in run_index order, and reports
// exhaustion once an algorithm's recording runs out.
class ReplaySource : public MeasurementSource {
 public:
  explicit ReplaySource(TimingTable table) : table_(std::move(table)) {}

  std::vector<double> next_batch(const std::string& alg_id, int m) override {
    const auto it = table_.samples.find(alg_id);
    if (it == table_.samples.end()) throw SourceError("no recorded samples for " + alg_id);
    auto& used = cursor_[alg_id];
    if (used + static_cast<std::size_t>(m) > it->second.size())
      throw SourceError("replay exhausted for " + alg_id + ": requested " + std::to_string(m) +
                        ", " + std::to_string(it->second.size() - used) + " left");
    std::vector<double> batch(it->second.begin() + static_cast<std::ptrdiff_t>(used),
                              it->second.begin() + static_cast<std::ptrdiff_t>(used + m));
    used += static_cast<std::size_t>(m);
    return batch;
  }

  std::size_t available(const std::string& alg_id) const {
    const auto it = table_.samples.find(alg_id);
    if (it == table_.samples.end()) return 0;
    const auto used = cursor_.find(alg_id);
    return it->second.size() - (used == cursor_.end() ? 0 : used->second);
  }

  // Fewest remaining samples over all recorded algorithms.
  std::size_t min_available() const {
    std::size_t least = std::numeric_limits<std::size_t>::max();
    for (const auto& [id, samples] : table_.samples) least = std::min(least, available(id));
    return table_.samples.empty() ? 0 : least;
  }

  const TimingTable& table() const { return table_; }

 private:
  TimingTable table_;
  std::map<std::string, std::size_t> cursor_;
};

}  // namespace algorank
