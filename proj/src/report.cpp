#include "hkq/report.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>

namespace hkq {

std::string formatDouble17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

nlohmann::json flagToJson(const InequalityFlag& f) {
    return {{"name", f.name}, {"margin", f.margin}, {"slack", f.slack}, {"pass", f.pass}};
}

std::vector<InequalityFlag> recomputeFlags(const nlohmann::json& flagArray) {
    std::vector<InequalityFlag> out;
    for (const auto& j : flagArray) {
        InequalityFlag f;
        f.name = j.at("name").get<std::string>();
        f.margin = j.at("margin").get<double>();
        f.slack = j.at("slack").get<double>();
        f.pass = f.margin >= -f.slack;
        out.push_back(std::move(f));
    }
    return out;
}

nlohmann::json makeEnvelope(const nlohmann::json& configEcho, const nlohmann::json& payload,
                            const std::vector<InequalityFlag>& flags) {
    nlohmann::json flagArr = nlohmann::json::array();
    bool allPass = true;
    for (const auto& f : flags) {
        flagArr.push_back(flagToJson(f));
        allPass = allPass && f.pass;
    }
    const auto now = std::chrono::system_clock::now();
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch());
    return {{"tool_version", kToolVersion},
            {"config", configEcho},
            {"timestamp_unix", secs.count()},
            {"payload", payload},
            {"flags", flagArr},
            {"all_pass", allPass}};
}

std::string samplesToCsv(const std::vector<SampleRow>& rows) {
    std::string out = "point_id,plane_id,k_q,v,f,l,c_norm,k_bound,margin\n";
    for (const auto& r : rows) {
        out += std::to_string(r.pointId) + "," + std::to_string(r.planeId) + "," +
               formatDouble17(r.kQ) + "," + formatDouble17(r.v) + "," + formatDouble17(r.f) +
               "," + formatDouble17(r.l) + "," + formatDouble17(r.cNorm) + "," +
               formatDouble17(r.kBound) + "," + formatDouble17(r.margin) + "\n";
    }
    return out;
}

nlohmann::json estimatorToJson(const EstimatorReport& er) {
    return {{"v", er.V},
            {"f", er.F},
            {"l", er.l},
            {"c_norm", er.Cnorm},
            {"norm_choice", er.choice == NormChoice::MetricNorm ? "metricNorm" : "fixedEuclidean"},
            {"l_bound1", er.lBound1},
            {"l_bound2", er.lBound2},
            {"restarts", er.restarts},
            {"iterations", er.iterations}};
}

nlohmann::json boundsToJson(const BoundsReport& br) {
    nlohmann::json j = {{"n_planes", br.nPlanes},
                        {"kahler_mode", br.kahlerMode},
                        {"slack", br.slack},
                        {"v", br.V},
                        {"k_bound", br.kBound},
                        {"max_abs_k", br.maxAbsK},
                        {"k_violations", br.kViolations},
                        {"oneill_violations", br.oneillViolations},
                        {"worst_margin", br.worstMargin}};
    if (br.kahlerMode) {
        j["lower_bound_certified"] = br.lowerBoundCertified;
        j["best_k"] = br.bestK;
        // a certificate can only be found, never refuted, by sampling
        j["lower_bound_note"] =
            br.lowerBoundCertified ? "certified by optimizer plane" : "search inconclusive";
    }
    return j;
}

nlohmann::json scanToJson(const std::vector<ScanRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows)
        arr.push_back({{"radius", r.radius},
                       {"max_abs_k", r.maxAbsK},
                       {"v", r.V},
                       {"f", r.F},
                       {"l", r.l},
                       {"newton_iterations", r.newtonIterations}});
    return arr;
}

void writeTextFile(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open output file: " + path);
    out << contents;
}

}  // namespace hkq
