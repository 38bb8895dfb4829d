#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "hkq/curvature.hpp"

namespace hkq {

inline constexpr const char* kToolVersion = "0.1.0";

/// One verified inequality: pass iff margin >= -slack.
struct InequalityFlag {
    std::string name;
    double margin = 0.0;
    double slack = 0.0;
    bool pass = true;
};

nlohmann::json flagToJson(const InequalityFlag& f);

/// Recomputes the pass bits from the stored numeric fields: the flags in a
/// report are derived data, never free-standing booleans.
std::vector<InequalityFlag> recomputeFlags(const nlohmann::json& flagArray);

/// Envelope around a command payload: version, config echo, timestamp,
/// flags. The CSV body never contains the timestamp, so identical configs
/// yield identical CSV bytes.
nlohmann::json makeEnvelope(const nlohmann::json& configEcho, const nlohmann::json& payload,
                            const std::vector<InequalityFlag>& flags);

/// Flat sample row for the bulk CSV.
struct SampleRow {
    int pointId = 0;
    int planeId = 0;
    double kQ = 0.0;
    double v = 0.0;
    double f = 0.0;
    double l = 0.0;
    double cNorm = 0.0;
    double kBound = 0.0;
    double margin = 0.0;
};

/// point_id,plane_id,k_q,v,f,l,c_norm,k_bound,margin with 17 significant
/// digits per float.
std::string samplesToCsv(const std::vector<SampleRow>& rows);

std::string formatDouble17(double v);

nlohmann::json estimatorToJson(const EstimatorReport& er);
nlohmann::json boundsToJson(const BoundsReport& br);
nlohmann::json scanToJson(const std::vector<ScanRow>& rows);

void writeTextFile(const std::string& path, const std::string& contents);

}  // namespace hkq
