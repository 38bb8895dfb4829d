#pragma once

#include <vector>

#include <Eigen/Dense>

#include "hkq/action.hpp"

namespace hkq {

constexpr double kProjectionTol = 1e-12;
constexpr int kMaxNewtonIterations = 100;

/// Point of a moment-map level set with its orthogonal splitting
///   T_q M = H + gauge + J_1 gauge [+ J_2 gauge + J_3 gauge]
/// All bases are orthonormal for the spec metric. In Kahler mode there is a
/// single structure block and H has dimension 4d - 2 dim g.
struct LevelSetPoint {
    GroupActionSpec spec;
    QuatVector q;
    MomentValue target;
    double residual = 0.0;
    int newtonIterations = 0;

    std::vector<QuatVector> gaugeBasis;                   // orthonormal basis of gauge directions
    std::vector<std::vector<QuatVector>> structureBasis;  // per structure J_i
    std::vector<QuatVector> horizontalBasis;

    Eigen::MatrixXd gram;  // g(xi_a q, xi_b q)
    Eigen::LLT<Eigen::MatrixXd> gramLLT;

    int horizontalDim() const { return static_cast<int>(horizontalBasis.size()); }
    int dimG() const { return spec.dimG(); }

    /// Largest pairing between vectors of distinct splitting blocks.
    double splittingOrthogonalityDefect() const;

    /// Realize horizontal coordinates as an ambient vector.
    QuatVector horizontalVector(const Eigen::VectorXd& coords) const;

    /// Coordinates of the H-projection of an ambient vector.
    Eigen::VectorXd horizontalCoords(const QuatVector& v) const;

    /// Norm of the projection of v onto the gauge + structure blocks.
    double nonHorizontalNorm(const QuatVector& v) const;
};

struct ProjectionOptions {
    double tol = kProjectionTol;
    int maxIterations = kMaxNewtonIterations;
    double degeneracyTol = 1e-8;
    bool checkLevelInvariance = true;
};

/// Newton projection of q0 onto the level set of the moment map, moving only
/// along the J_i-rotated gauge directions, followed by the splitting build.
LevelSetPoint projectToLevel(const GroupActionSpec& spec, const QuatVector& q0,
                             const MomentValue& c, const ProjectionOptions& opt = {});

/// Rebuild a LevelSetPoint at a point already known to lie on the level set
/// (residual is recomputed, not assumed).
LevelSetPoint makeLevelSetPoint(const GroupActionSpec& spec, const QuatVector& q,
                                const MomentValue& c, const ProjectionOptions& opt = {});

}  // namespace hkq
