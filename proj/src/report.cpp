#include "epslab/report.hpp"

#include <cstdio>
#include <algorithm>

namespace epslab {
namespace {

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::string rows_to_csv(std::vector<CheckRow> rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const CheckRow& a, const CheckRow& b) {
    if (a.check_id != b.check_id) return a.check_id < b.check_id;
    return a.k_or_n < b.k_or_n;
  });
  std::string out = "check_id,k_or_n,value,bound,slack,pass\n";
  for (const auto& r : rows) {
    out += r.check_id + ',' + std::to_string(r.k_or_n) + ',' + fmt_double(r.value) + ',' + fmt_double(r.bound) + ',' +
           fmt_double(r.slack) + ',' + (r.pass ? "true" : "false") + '\n';
  }
  return out;
}

Json report_envelope(const std::string& command, const std::string& plan_hash, bool pass, Json results) {
  Json out{{"tool", kToolName}, {"version", kToolVersion}, {"command", command}, {"pass", pass}};
  out["plan_hash"] = plan_hash.empty() ? Json(nullptr) : Json(plan_hash);
  out["results"] = std::move(results);
  return out;
}

}  // namespace epslab
