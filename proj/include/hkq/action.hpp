#pragma once

#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hkq/lie.hpp"
#include "hkq/quat.hpp"
#include "hkq/rng.hpp"

namespace hkq {

enum class QuotientMode { Hyperkahler, Kahler };

struct DegenerateActionError : Error {
    using Error::Error;
};
struct NonInvariantLevelError : Error {
    using Error::Error;
};
struct MaxIterationsError : Error {
    using Error::Error;
};
struct GramSingularError : Error {
    using Error::Error;
};

/// Moment value in generator coordinates, one component per ambient complex
/// structure (three in hyperkahler mode, one in Kahler mode). comp[i] holds
/// the coordinates of the projected moment element in the generator basis.
struct MomentValue {
    std::vector<Eigen::VectorXd> comp;

    static MomentValue zero(int nStruct, int n) {
        MomentValue m;
        m.comp.assign(nStruct, Eigen::VectorXd::Zero(n));
        return m;
    }
};

/// Linear action of a subgroup of Sp(d) on H^d (left matrix action q -> Aq).
/// Kahler-mode specs use a single complex structure (left multiplication by
/// i) and require generators with complex entries.
struct GroupActionSpec {
    int d = 0;
    LieBasis lie;
    QuotientMode mode = QuotientMode::Hyperkahler;
    /// Conformal factor on the flat metric: g = metricScale2 * (flat dot).
    double metricScale2 = 1.0;

    // cached at construction
    Eigen::MatrixXd gramSp;  // pairing spPair(xi_a, xi_b)
    Eigen::LLT<Eigen::MatrixXd> gramSpLLT;

    static GroupActionSpec make(int d, LieBasis lie,
                                QuotientMode mode = QuotientMode::Hyperkahler,
                                double metricScale2 = 1.0);

    int dimG() const { return lie.dim(); }
    int realDim() const { return 4 * d; }
    const std::vector<Cx>& structures() const;
    int nStructures() const { return static_cast<int>(structures().size()); }

    double gdot(const QuatVector& u, const QuatVector& v) const {
        return metricScale2 * dot(u, v);
    }
    double gnorm(const QuatVector& u) const { return std::sqrt(gdot(u, u)); }

    /// Entrywise defect of the structural requirements on the generators
    /// (membership in sp(d), and commutation with the Kahler structure when
    /// in Kahler mode).
    double generatorDefect() const;

    /// Fundamental vector field of the a-th generator at q.
    QuatVector fundamental(int a, const QuatVector& q) const {
        return lie.generators[a] * q;
    }
    /// Fundamental field of an arbitrary coordinate vector.
    QuatVector fundamental(const Eigen::VectorXd& rho, const QuatVector& q) const;
};

/// Fundamental field rho-check at q, i.e. the matrix-vector product rho q.
QuatVector fundamentalField(const GroupActionSpec& spec, const Eigen::VectorXd& rho,
                            const QuatVector& q);

/// Moment map in generator coordinates. Component i pairs the quadratic
/// moment element with the generators through the trace pairing; the value
/// satisfies, for every structure J and generator rho,
///   d/dt mu(q + t v)(rho) = g(v, J rho q),
/// which the tests verify by central differences.
MomentValue moment(const GroupActionSpec& spec, const QuatVector& q);

/// Covector application of one moment component against rho coordinates.
double momentApply(const GroupActionSpec& spec, const Eigen::VectorXd& momentCoords,
                   const Eigen::VectorXd& rho);

/// Directional derivative of the moment coordinates along v (exact; the
/// moment map is quadratic).
MomentValue momentDerivative(const GroupActionSpec& spec, const QuatVector& q,
                             const QuatVector& v);

/// Invariant norm of a moment value difference (trace-pairing norm on g).
double momentDistance(const GroupActionSpec& spec, const MomentValue& m1, const MomentValue& m2);

/// g*-valued one-form: component a is g(v, xi_a q).
Eigen::VectorXd lambdaForm(const GroupActionSpec& spec, const QuatVector& q, const QuatVector& v);

enum class FreenessStatus { Free, LocallyFree, Degenerate };

struct FreenessReport {
    FreenessStatus status = FreenessStatus::Degenerate;
    double sigmaMin = 0.0;
};

/// Smallest singular value of rho -> rho q as a map (g, coordinate norm) ->
/// (T_q M, g). Degenerate below tolerance; freeness beyond the infinitesimal
/// test is not decided here, so the non-degenerate answer is LocallyFree.
FreenessReport localFreeness(const GroupActionSpec& spec, const QuatVector& q,
                             double tol = 1e-8);

/// Checks that the level is fixed by the coadjoint action by conjugating with
/// sampled exponentials of the generators.
bool levelIsCoadjointFixed(const GroupActionSpec& spec, const MomentValue& c,
                           double tol = 1e-8);

/// Ad(exp(xi)) applied to an element in generator coordinates; throws if the
/// conjugated element leaves the span of the basis.
Eigen::VectorXd adjointAction(const GroupActionSpec& spec, const QuatMatrix& groupElement,
                              const Eigen::VectorXd& coords, double* defect = nullptr);

}  // namespace hkq
