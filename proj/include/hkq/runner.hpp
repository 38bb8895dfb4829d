#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "hkq/catalog.hpp"
#include "hkq/green.hpp"
#include "hkq/report.hpp"

namespace hkq {

/// Exit codes: 0 all checks pass, 1 inequality violation, 2 configuration
/// error, 3 numerical failure.
enum ExitCode { kExitOk = 0, kExitViolation = 1, kExitConfig = 2, kExitNumerical = 3 };

struct CommandResult {
    nlohmann::json envelope;
    std::string csv;
    int exitCode = kExitOk;
};

/// Inline spec parser for configs that do not reference the catalog:
/// {"d":2,"mode":"hyperkahler","generators":[[[[w,x,y,z],...],...],...],
///  "level":[[..],[..],[..]]}
QuotientExample parseInlineQuotient(const nlohmann::json& j);

/// {"a":0,"b":1,"grid":64,"alpha":[[...],[...],[...]],"beta":[...]}
NahmConfig parseInlineNahm(const nlohmann::json& j);

CommandResult runQuotientVerify(const QuotientExample& ex, const std::string& exampleId,
                                int points, int planes, std::uint64_t seed, double slack);
CommandResult runQuotientCurvature(const QuotientExample& ex, const std::string& exampleId,
                                   int points, int planes, std::uint64_t seed);
CommandResult runQuotientScan(const QuotientExample& ex, const std::string& exampleId,
                              const std::vector<double>& radii,
                              const std::vector<int>& scaleCoords, int planes,
                              std::uint64_t seed);
CommandResult runNahmGreen(double a, double b, const std::string& lambdaKind, double kappa);
CommandResult runNahmBound(double a, double b, int gridSize);

/// Full CLI entry point (subcommands quotient/nahm/catalog); writes report
/// files and returns the exit code.
int runCommand(const std::vector<std::string>& args);

}  // namespace hkq
