#pragma once

#include <json.hpp>

#include "duality.hpp"
#include "measure.hpp"
#include "system.hpp"

namespace mcf {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "mcf-lab/1";
inline constexpr const char* kToolVersion = "0.1.0";

const char* method_name(McMethod m);

Json to_json(const MeasureEstimate& e);
Json to_json(const SymmetryVerdict& v);
Json to_json(const CommutationResult& c);
Json to_json(const CellMappingStats& c);
Json to_json(const DualityReport& r);
Json catalogue_json();
Json system_info_json(const FibredSystem& s);

// RFC 4180 CSV of (digits, value, stderr, samples, seed, method) records.
std::string measures_csv(
    const std::vector<std::pair<std::string, MeasureEstimate>>& rows);

}  // namespace mcf
