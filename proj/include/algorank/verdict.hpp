#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "algorank/errors.hpp"
#include "algorank/rank.hpp"

namespace algorank {

// Outcome of the FLOPs-discriminant test for one instance.
//  - FlopsValid: every minimum-FLOPs algorithm holds rank 1.
//  - AnomalyOutsideMinFlops: no minimum-FLOPs algorithm holds rank 1; some
//    costlier algorithm is noticeably faster than all of them.
//  - AnomalyWithinMinFlops: the minimum-FLOPs set itself splits across
//    ranks, so one cannot pick from it arbitrarily.
enum class VerdictKind { FlopsValid, AnomalyOutsideMinFlops, AnomalyWithinMinFlops };

inline const char* to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::FlopsValid: return "flops_valid";
    case VerdictKind::AnomalyOutsideMinFlops: return "anomaly_outside_min_flops";
    default: return "anomaly_within_min_flops";
  }
}

struct VerdictEvidence {
  std::string id;
  int rank;
  std::optional<double> mean_rank;
  double rf;
};

struct Verdict {
  VerdictKind kind;
  std::vector<std::string> min_flops_ids;
  std::vector<VerdictEvidence> evidence;  // in sequence order

  bool anomaly() const { return kind != VerdictKind::FlopsValid; }
};

// Applies the two anomaly conditions, in order, to integer ranks at the
// headline range. Mean ranks are advisory evidence only and never affect the
// verdict.
inline Verdict classify(const RankedSequence& ranking,
                        const std::map<std::string, long long>& flops,
                        const std::map<std::string, double>& mean_ranks = {}) {
  ranking.validate();
  long long fmin = std::numeric_limits<long long>::max();
  for (const auto& e : ranking.entries) {
    const auto it = flops.find(e.id);
    if (it == flops.end()) throw Error("missing FLOP count for ranked algorithm: " + e.id);
    fmin = std::min(fmin, it->second);
  }
  if (fmin <= 0) throw Error("FLOP counts must be positive");

  Verdict verdict;
  bool all_min_rank1 = true;
  bool any_min_rank1 = false;
  for (const auto& e : ranking.entries) {
    const long long f = flops.at(e.id);
    if (f == fmin) {
      verdict.min_flops_ids.push_back(e.id);
      if (e.rank == 1)
        any_min_rank1 = true;
      else
        all_min_rank1 = false;
    }
    VerdictEvidence ev{e.id, e.rank, std::nullopt, 0.0};
    if (const auto mr = mean_ranks.find(e.id); mr != mean_ranks.end()) ev.mean_rank = mr->second;
    ev.rf = static_cast<double>(f - fmin) / static_cast<double>(fmin);
    verdict.evidence.push_back(std::move(ev));
  }

  if (all_min_rank1)
    verdict.kind = VerdictKind::FlopsValid;
  else if (!any_min_rank1)
    verdict.kind = VerdictKind::AnomalyOutsideMinFlops;
  else
    verdict.kind = VerdictKind::AnomalyWithinMinFlops;
  return verdict;
}

}  // namespace algorank
