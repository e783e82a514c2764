#pragma once

#include <string>

#include <json.hpp>

#include "ascpow/ledger.hpp"

namespace ascpow {

using Json = nlohmann::ordered_json;

// Doubles quantized to 15 significant digits so payloads are deterministic
// and byte-stable across runs.
double quant15(double v);
Json j15(double v);

// Report envelope: {schema, command, params, results, timing_ms, version,
// table_provenance}.
Json run_report(const std::string& command, Json params, Json results, double timing_ms,
                const std::string& table_provenance = "");

Json to_json(const StageReport& r);
Json to_json(const std::vector<StageReport>& reports);

} // namespace ascpow
