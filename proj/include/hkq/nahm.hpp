#pragma once

#include <array>
#include <functional>

#include <Eigen/Dense>

#include "hkq/grid.hpp"
#include "hkq/lie.hpp"

namespace hkq {

/// su(2) values are coordinate vectors in the epsilon basis: the bracket is
/// the cross product and the invariant inner product is kSu2GramScale times
/// the Euclidean one.
inline double su2Norm(const Eigen::Vector3d& v) { return std::sqrt(kSu2GramScale) * v.norm(); }
inline Eigen::Vector3d su2Bracket(const Eigen::Vector3d& u, const Eigen::Vector3d& v) {
    return u.cross(v);
}

/// Interval data for fields with simple poles at both ends. The residue
/// triples both satisfy the su(2) commutation relations; the pole part of
/// the fields is
///   S_i(s) = -alpha_i/(s-a) - beta_i/(s-b),
/// the sign being forced by the orientation of the flow equations (the
/// leading balance of d/ds T_1 = [T_2, T_3] at a pole fixes the relation
/// [p_2, p_3] = -p_1 for the raw pole coefficients p_i).
struct NahmConfig {
    double a = 0.0, b = 1.0;
    std::array<Eigen::Vector3d, 3> alpha{};  // residues at a
    std::array<Eigen::Vector3d, 3> beta{};   // residues at b
    Grid grid;

    static NahmConfig make(double a, double b, const std::array<Eigen::Vector3d, 3>& alpha,
                           const std::array<Eigen::Vector3d, 3>& beta, int gridSize = 64,
                           double tripleTol = kStructuralTol);

    Eigen::Vector3d polePart(int i, double s) const {
        return -alpha[i] / (s - a) - beta[i] / (s - b);
    }
};

/// Solution fields T_0..T_3 as exact pole part plus smooth remainder sampled
/// on the grid (T_0 is pole free).
struct NahmSolution {
    NahmConfig config;
    std::array<Eigen::Matrix3Xd, 4> smooth;
    bool closedFormAxial = false;

    Eigen::Vector3d fieldAt(int i, double s) const {
        Eigen::Vector3d v = config.grid.interpolateCols(smooth[i], s);
        if (i >= 1) v += config.polePart(i - 1, s);
        return v;
    }
    Eigen::Vector3d t0At(double s) const { return fieldAt(0, s); }
    double maxT0() const { return smooth[0].colwise().norm().maxCoeff(); }
};

/// Closed-form axially symmetric solution on (a, b): with c = pi/(b-a),
///   f1 = f2 = -c/sin(c(s-a)),  f3 = -c cot(c(s-a)),  T_i = f_i e_i,  T_0 = 0.
/// Remainders are evaluated through cancellation-free series near the poles.
NahmSolution makeAxialSolution(double a, double b, int gridSize = 64);

/// The raw axial profiles (f1, f3) and their smooth remainders, exposed for
/// tests of the pole extraction.
double axialF1(double a, double b, double s);
double axialF3(double a, double b, double s);

/// Max over interior nodes and i of the invariant norm of
///   d/ds T_i + [T_0, T_i] - (1/2) sum eps_ijk [T_j, T_k].
/// The double-pole parts cancel analytically against the residue relations,
/// so the evaluation stays well conditioned near the endpoints.
double nahmResidual(const NahmSolution& T);

/// Gauge path sampled on the grid as unit quaternions with derivatives.
struct GaugePath {
    Eigen::Matrix4Xd g;     // columns (w,x,y,z) per node
    Eigen::Matrix4Xd gdot;

    /// g(s) = exp(sum_a theta_a(s) e_a); derivatives by high-order central
    /// differences of the closed form.
    static GaugePath fromExponential(const Grid& grid,
                                     const std::function<Eigen::Vector3d(double)>& theta);
};

/// Applies T_0 -> Ad(g) T_0 - gdot g^-1, T_i -> Ad(g) T_i. Requires identity
/// boundary values (checked by extrapolating the sampled path to a and b).
NahmSolution gaugeTransform(const NahmSolution& T, const GaugePath& path);

/// Solves hdot = h T_0 with h(a) = id and applies the resulting gauge, which
/// zeroes T_0; h(b) is generally not the identity, so the residues at b are
/// conjugated accordingly (still a valid su(2) triple).
NahmSolution killT0Gauge(const NahmSolution& T);

/// Tangent quadruple sampled on the grid.
using Quadruple = std::array<Eigen::Matrix3Xd, 4>;

/// L^2 pairing sum_i integral <t_i, t'_i> ds by the grid quadrature.
double nahmMetric(const Grid& grid, const Quadruple& t, const Quadruple& tp);

/// Fundamental field of a gauge-algebra path rho (sampled on the grid,
/// vanishing at the ends): (-rhodot + [rho, T_0], [rho, T_i]).
Quadruple nahmFundamental(const NahmSolution& T, const Eigen::Matrix3Xd& rho);

/// Quaternionic structures on quadruples (right multiplication by the
/// conjugate units, matching the ambient convention).
Quadruple applyQuadrupleCx(int axis, const Quadruple& t);

/// Smallest-eigenvalue floor: lambda(s)^2 = min eig of
/// H(s) = -sum_i (ad T_i(s))^2. Gauge invariant; eigenvalues below -1e-12
/// signal a broken inner product and throw.
Eigen::VectorXd lambdaFloor(const NahmSolution& T);
double lambdaAt(const NahmSolution& T, double s);

/// H(s) as a symmetric 3x3 matrix in the epsilon basis.
Eigen::Matrix3d adjointHamiltonian(const NahmSolution& T, double s);

/// Linearization of the flow equations at T applied to a smooth quadruple
/// perturbation; rows 2..4 of the tangency system. Row 1 is the gauge
/// orthogonality density, returned by nahmLambdaDensity.
std::array<Eigen::Matrix3Xd, 3> linearizedNahmRows(const NahmSolution& T, const Quadruple& t);
Eigen::Matrix3Xd nahmLambdaDensity(const NahmSolution& T, const Quadruple& t);

}  // namespace hkq
