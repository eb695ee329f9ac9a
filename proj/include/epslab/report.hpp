#pragma once

#include <string>
#include <vector>

#include "epslab/io.hpp"

namespace epslab {

/// One line of a CSV summary.
struct CheckRow {
  std::string check_id;
  long long k_or_n;
  double value;
  double bound;
  double slack;
  bool pass;
};

/// Header plus rows sorted by (check_id, k_or_n). Deterministic formatting (%.17g).
std::string rows_to_csv(std::vector<CheckRow> rows);

/// Common envelope: tool, version, command, plan hash (when a plan is involved), pass flag.
Json report_envelope(const std::string& command, const std::string& plan_hash, bool pass, Json results);

}  // namespace epslab
