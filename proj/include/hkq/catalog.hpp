#pragma once

#include <string>
#include <vector>

#include "hkq/action.hpp"
#include "hkq/levelset.hpp"
#include "hkq/nahm.hpp"

namespace hkq {

struct UnknownExampleError : Error {
    using Error::Error;
};

/// Worked examples shipped with the tool. Quotient examples carry a frozen
/// action spec and level; the Nahm example carries interval defaults.
struct CatalogEntry {
    std::string id;
    std::string description;
    bool isNahm = false;
};

std::vector<CatalogEntry> catalogList();

/// Diagonal circle action on H^2 at a nonzero central level (ALE quotient).
GroupActionSpec eguchiHansonSpec(double metricScale2 = 1.0);
MomentValue eguchiHansonLevel(const GroupActionSpec& spec);

/// Two commuting circles on H^2 x H^2, each acting on its own factor.
GroupActionSpec tp1xtp1Spec();
MomentValue tp1xtp1Level(const GroupActionSpec& spec);

/// Scalar circle action on C^2 in Kahler mode; the reduced space is the
/// round two-sphere of the Hopf fibration.
GroupActionSpec hopfKahlerSpec();
MomentValue hopfKahlerLevel(const GroupActionSpec& spec);

/// Axial interval defaults for the Nahm pipeline.
NahmSolution nahmAxialDefault();

struct QuotientExample {
    GroupActionSpec spec;
    MomentValue level;
    std::vector<bool> fullScaleMask;  // all-true mask of size d
};

/// Loads a quotient example by id; throws UnknownExampleError for Nahm or
/// unknown ids.
QuotientExample loadQuotientExample(const std::string& id);

/// True if the id names a catalog entry at all.
bool catalogHas(const std::string& id);

/// Deterministic level-set point: unit-normalized seeded Gaussian start
/// projected onto the level.
LevelSetPoint randomLevelSetPoint(const GroupActionSpec& spec, const MomentValue& level,
                                  std::uint64_t seed);

}  // namespace hkq
