#pragma once

#include <string>
#include <vector>

#include "algorank/errors.hpp"

namespace algorank {

// Supplies execution-time batches for the measurement loop. Implementations
// must return exactly `m` positive samples or throw SourceError (e.g. on
// replay exhaustion or a failed command).
class MeasurementSource {
 public:
  virtual ~MeasurementSource() = default;
  virtual std::vector<double> next_batch(const std::string& alg_id, int m) = 0;
};

}  // namespace algorank
