#pragma once

#include <functional>

#include <Eigen/Dense>

#include "hkq/nahm.hpp"

namespace hkq {

struct WronskianCollapseError : Error {
    using Error::Error;
};

/// Green kernel of u'' - lambda(s)^2 u with Dirichlet conditions on (a, b),
/// built from the two one-sided homogeneous solutions on a graded fine grid.
/// The profile may grow like 1/(s-a) at the ends (the kernel stays bounded);
/// integration starts a clip inside with power-law asymptotics matched to
/// the local 1/(s-a)^2 coefficient.
class GreenKernel {
  public:
    /// lambda2 returns lambda(s)^2 >= 0.
    static GreenKernel build(double a, double b, const std::function<double(double)>& lambda2,
                             int steps = 100000, double clipFraction = 1e-9);

    double a() const { return a_; }
    double b() const { return b_; }
    /// L1 -> C0 operator norm, the kernel supremum.
    double normN() const { return n_; }
    double supS() const { return sStar_; }
    double supTau() const { return tauStar_; }
    double wronskian() const { return w_; }
    double wronskianDrift() const { return wDrift_; }

    /// Kernel value G(s, tau) (negative for real profiles).
    double value(double s, double tau) const;

    /// Quadrature solve of u'' - lambda^2 u = f with Dirichlet conditions.
    double solveAt(double s, const std::function<double(double)>& f) const;

    const Eigen::VectorXd& fineNodes() const { return s_; }

  private:
    double a_ = 0, b_ = 0;
    Eigen::VectorXd s_, uL_, uLp_, uR_, uRp_;
    double w_ = 0, wDrift_ = 0, n_ = 0, sStar_ = 0, tauStar_ = 0;

    double uLat(double s) const;
    double uRat(double s) const;
};

struct GreenEval {
    Eigen::VectorXd lambdaSamples;  // on the config grid
    double N = 0.0;
    double sStar = 0.0, tauStar = 0.0;
    double wronskianDrift = 0.0;
};

/// N(lambda) for a profile sampled on the config grid. The samples are
/// interpolated through h(s) = lambda^2 (s-a)^2 (s-b)^2, which is smooth for
/// pole-bounded profiles, so simple-pole growth at the ends is represented
/// exactly enough for spectral interpolation.
GreenEval computeN(const NahmConfig& config, const Eigen::VectorXd& lambdaSamples);

/// N(lambda) for a callable profile.
GreenEval computeN(double a, double b, const std::function<double(double)>& lambda);

/// N(lambda) with the floor profile of a solution (fields evaluated
/// anywhere, eigenvalue floor pointwise).
GreenEval computeN(const NahmSolution& T);

struct NahmBoundReport {
    double N = 0.0;
    double statedBound = 0.0;    // 18 N^(1/2)
    double composedBound = 0.0;  // 36 N, the composition of the two-step chain
    double coarseBound = 0.0;    // 9 sqrt(b-a)
    double identityGap = 0.0;    // |18 sqrt(N(0)) - coarse|, closed-form N(0)
    double lambdaMin = 0.0, lambdaMax = 0.0;
};

/// The two curvature bounds at a solution plus the flat-profile consistency
/// identity. statedBound and composedBound differ by design: the first is
/// the aggregate constant, the second composes the intermediate estimates
/// with F = 2; both are reported without adjudication.
NahmBoundReport curvatureBound(const NahmSolution& T);

struct VerticalSolution {
    Eigen::Matrix3Xd rho;       // on the config grid
    Eigen::VectorXd fineNodes;  // integrator grid
    Eigen::Matrix3Xd rhoFine;
    double residual = 0.0;   // equation defect at interior checkpoints
    double supRho = 0.0;     // max invariant norm
    double l1f = 0.0;        // integral of the invariant norm of f
};

/// Dirichlet solve of -rho'' + H(s) rho = f for g-valued rho in the T0 = 0
/// gauge, by shooting with the matrix fundamental solution. Requires
/// max |T0| below tolerance (apply killT0Gauge first).
VerticalSolution solveVertical(const NahmSolution& T, const Eigen::Matrix3Xd& fSamples);

}  // namespace hkq
