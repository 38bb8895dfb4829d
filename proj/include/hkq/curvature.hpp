#pragma once

#include <vector>

#include <Eigen/Dense>

#include "hkq/levelset.hpp"
#include "hkq/rng.hpp"

namespace hkq {

struct NonOrthonormalPlaneError : Error {
    using Error::Error;
};

/// Components of the non-horizontal part of nabla_X Y at a level-set point:
/// rho[0] lies in the gauge block, rho[i] in the J_i blocks. Coordinates are
/// in the generator basis; rhoCheck are the realized fundamental fields.
///
/// For the flat ambient with a linear action the derivative of a fundamental
/// field along X is nu X, and along the level set both g(Y, nu-check) and
/// every moment derivative of Y vanish identically, so pairing the two
/// identities' derivatives gives the Gram systems
///   g(rho_0-check, nu-check) = -g(Y, nu X)
///   g(rho_i-check, nu-check) = -g(Y, J_i(nu X))
/// for all generators nu. This recovers the components without constructing
/// vector-field extensions, and the result is bilinear in (X, Y).
struct PerpComponents {
    std::vector<Eigen::VectorXd> rho;    // size 1 + nStructures
    std::vector<QuatVector> rhoCheck;    // realized fundamental fields
};

PerpComponents perpComponents(const LevelSetPoint& p, const QuatVector& X, const QuatVector& Y,
                              double horizontalityTol = 1e-8);

struct CurvatureSample {
    Eigen::VectorXd xCoords, yCoords;  // plane in the horizontal basis
    double kQ = 0.0;                   // quotient sectional curvature
    double kLevelSet = 0.0;            // before the O'Neill correction
    double rho0NormSq = 0.0;
};

/// Quotient sectional curvature of the plane spanned by orthonormal
/// horizontal X, Y: Gauss equation for the level-set embedding plus the
/// O'Neill term 3|rho_0|^2 (flat ambient, K_M = 0). In Kahler mode the
/// second fundamental form has only the single structure component.
CurvatureSample sectionalCurvature(const LevelSetPoint& p, const QuatVector& X,
                                   const QuatVector& Y);

enum class NormChoice { MetricNorm, FixedEuclidean };

struct BilinearNormResult {
    double value = 0.0;
    Eigen::VectorXd x, y;  // certificate pair
    int iterations = 0;
    int restarts = 0;
};

/// Norm of a bilinear map R^p x R^q -> R^r stored as output slices
/// slices[r](p,q), by alternating maximization over the two unit spheres.
/// Non-certified supremum; use denseBilinearNorm to cross-check.
BilinearNormResult bilinearNorm(const std::vector<Eigen::MatrixXd>& slices, int restarts,
                                Rng& rng, int maxIterations = 200, double tol = 1e-13);

/// Sampling cross-check: draws unit vectors on the second input sphere and
/// maximizes exactly over the first via the singular value decomposition.
double denseBilinearNorm(const std::vector<Eigen::MatrixXd>& slices, int nSamples, Rng& rng);

/// Slices of the restricted O'Neill tensor: inputs are horizontal, the output
/// is the gauge component in an orthonormal gauge frame.
std::vector<Eigen::MatrixXd> oneillTensorSlices(const LevelSetPoint& p);

/// Slices of (X, rho) -> horizontal part of rho X, with the rho coordinates
/// expressed in an orthonormal frame for the chosen norm.
std::vector<Eigen::MatrixXd> bTensorSlices(const LevelSetPoint& p, NormChoice choice);

/// Slices of the second O'Neill tensor (X, U) -> horizontal part of rho X
/// where rho realizes U; assembled from the gauge frame directly.
std::vector<Eigen::MatrixXd> cTensorSlices(const LevelSetPoint& p);

struct VNormReport {
    double value = 0.0;
    Eigen::VectorXd certX, certY;
    int restarts = 0, iterations = 0;
};

/// Pointwise norm of the restricted O'Neill tensor over unit horizontal
/// pairs; zero-dimensional horizontal space gives 0 by convention.
VNormReport vNorm(const LevelSetPoint& p, int restarts = 32, std::uint64_t seed = 1);

double fNorm(const LevelSetPoint& p, NormChoice choice, int restarts = 32,
             std::uint64_t seed = 2);

double cNorm(const LevelSetPoint& p, int restarts = 32, std::uint64_t seed = 3);

struct LNormReport {
    double value = 0.0;
    double bound1 = 0.0;  // sup |rho| / |rho-check|
    double bound2 = 0.0;  // sqrt of sup |rho| / |Lambda(rho-check)|*
};

/// Norm of the inverse of the Lambda form on its image, via generalized
/// eigenproblems on the fundamental Gram matrix, together with the two upper
/// bounds it must not exceed.
LNormReport lNorm(const LevelSetPoint& p, NormChoice choice);

struct EstimatorReport {
    double V = 0.0, F = 0.0, l = 0.0, Cnorm = 0.0;
    NormChoice choice = NormChoice::MetricNorm;
    double lBound1 = 0.0, lBound2 = 0.0;
    int restarts = 0, iterations = 0;
};

EstimatorReport estimate(const LevelSetPoint& p, NormChoice choice, int restarts = 32,
                         std::uint64_t seed = 5);

/// Draw a Haar-uniform orthonormal pair of horizontal coordinate vectors.
void samplePlane(const LevelSetPoint& p, Rng& rng, Eigen::VectorXd& x, Eigen::VectorXd& y);

struct PlaneOptimum {
    Eigen::VectorXd x, y;
    double kQ = 0.0;
};

/// Stochastic hill climb maximizing K_Q over planes (used for the Kahler
/// lower-bound certificate).
PlaneOptimum optimizePlane(const LevelSetPoint& p, std::uint64_t seed, int restarts = 32,
                           int steps = 120);

struct BoundsReport {
    int nPlanes = 0;
    bool kahlerMode = false;
    double slack = 1e-8;
    double V = 0.0;
    double kBound = 0.0;  // 9 V^2 or 5 V^2
    double maxAbsK = 0.0;
    int kViolations = 0;
    int oneillViolations = 0;   // K_Q - K_levelset negative beyond slack
    double worstMargin = 0.0;   // min over planes of kBound - |K_Q|
    double worstOneill = 0.0;   // min over planes of K_Q - K_levelset
    // Kahler lower-bound search. A missing certificate is inconclusive:
    // sampling cannot refute the bound.
    bool lowerBoundCertified = false;
    double bestK = 0.0;
    std::vector<double> kValues;
};

BoundsReport verifyBounds(const LevelSetPoint& p, int nPlanes, std::uint64_t seed,
                          double slack = 1e-8);

struct ScanRow {
    double radius = 0.0;
    double maxAbsK = 0.0;
    double V = 0.0;
    double F = 0.0;  // fixed Euclidean norm choice
    double l = 0.0;  // fixed Euclidean norm choice
    int newtonIterations = 0;
};

/// For each radius: scale the masked coordinates of the base point, project
/// onto the level set, sample planes and record the decay table entries.
std::vector<ScanRow> asymptoticScan(const GroupActionSpec& spec, const QuatVector& base,
                                    const MomentValue& c, const std::vector<double>& radii,
                                    const std::vector<bool>& scaleMask, int nPlanes,
                                    std::uint64_t seed);

}  // namespace hkq
