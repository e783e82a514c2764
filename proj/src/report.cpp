#include "ascpow/report.hpp"

#include <cstdio>
#include <cstdlib>

#include "ascpow/version.hpp"

namespace ascpow {

double quant15(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return std::strtod(buf, nullptr);
}

Json j15(double v) { return Json(quant15(v)); }

Json run_report(const std::string& command, Json params, Json results, double timing_ms,
                const std::string& table_provenance) {
    Json r;
    r["schema"] = kReportSchema;
    r["command"] = command;
    r["params"] = std::move(params);
    r["results"] = std::move(results);
    r["timing_ms"] = j15(timing_ms);
    r["version"] = kVersion;
    if (!table_provenance.empty()) r["table_provenance"] = table_provenance;
    return r;
}

Json to_json(const StageReport& r) {
    Json j;
    j["stage"] = r.name;
    Json inputs;
    for (const auto& [k, v] : r.inputs) inputs[k] = j15(v);
    j["inputs"] = std::move(inputs);
    j["achieved_exponent"] = j15(r.achieved);
    j["required_bound"] = j15(r.required);
    j["margin"] = j15(r.margin);
    j["pass"] = r.pass;
    if (r.conditions.size() > 1) {
        Json cs = Json::array();
        for (const auto& c : r.conditions) {
            Json cj;
            cj["name"] = c.name;
            cj["achieved"] = j15(c.achieved);
            cj["required"] = j15(c.required);
            cj["margin"] = j15(c.margin);
            cj["pass"] = c.pass;
            cs.push_back(std::move(cj));
        }
        j["conditions"] = std::move(cs);
    }
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

Json to_json(const std::vector<StageReport>& reports) {
    Json arr = Json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    return arr;
}

} // namespace ascpow
