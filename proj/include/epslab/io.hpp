#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "epslab/verification.hpp"

namespace epslab {

using Json = nlohmann::json;

inline constexpr const char* kToolName = "epslab";
inline constexpr const char* kToolVersion = "0.1.0";

/// Malformed input file or JSON document.
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json to_json(const NormSpec& spec);
NormSpec norm_spec_from_json(const Json& j);

/// {"coeffs":[{"i":..,"re":..,"im":..}, ...]}
Json to_json(const CoeffVector& v);
/// {"blocks":[{"n":..,"coeffs":[...]}, ...]}
Json to_json(const DirectSumVector& u);
/// Accepts the block form, or a bare {"coeffs":[...]} taken as block 0.
DirectSumVector direct_sum_from_json(const Json& j);
CoeffVector coeff_vector_from_json(const Json& j);

Json to_json(const BlockPlan& plan);
/// Parses and re-validates a plan.
BlockPlan plan_from_json(const Json& j);
/// FNV-1a 64 of the canonical plan JSON, as 16 hex digits.
std::string plan_hash(const BlockPlan& plan);

/// {"targets":[{"k":..,"vector":{...}}, ...]}
std::vector<Target> targets_from_json(const Json& j);
Json to_json(const std::vector<Target>& targets);

Json to_json(const GeoSolution& g);
Json to_json(const WitnessResult& w);
Json to_json(const CriterionReport& r);
Json to_json(const LowerBoundResult& r);
Json to_json(const IntervalReport& r);

Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace epslab
