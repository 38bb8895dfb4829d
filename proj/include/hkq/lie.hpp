#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "hkq/quat.hpp"

namespace hkq {

constexpr double kStructuralTol = 1e-10;

/// Gram scale of the default su(2) inner product in the epsilon basis.
/// Fixed so that |[A,B]| <= 2|A||B| holds with equality on orthonormal
/// pairs; see su2Basis() and the corresponding unit test that recovers the
/// value numerically.
constexpr double kSu2GramScale = 0.25;

/// Basis of a Lie subalgebra of sp(d) together with its structure constants
/// and an Ad-invariant inner product on coordinates.
struct LieBasis {
    std::vector<QuatMatrix> generators;
    /// structure[c](a,b) holds c_{ab}^c in [xi_a, xi_b] = sum_c c_{ab}^c xi_c.
    std::vector<Eigen::MatrixXd> structure;
    Eigen::MatrixXd innerProduct;  // Gram matrix on coordinates, SPD
    double closureDefect = 0.0;

    int dim() const { return static_cast<int>(generators.size()); }
    int ambientDim() const { return generators.empty() ? 0 : generators[0].rows; }

    /// Assemble the element with the given coordinates.
    QuatMatrix element(const Eigen::VectorXd& coords) const;

    /// Coordinates of the bracket [u, v] via structure constants.
    Eigen::VectorXd bracket(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const;

    double normOf(const Eigen::VectorXd& coords) const {
        return std::sqrt(coords.dot(innerProduct * coords));
    }

    /// Build structure constants by projecting matrix brackets back onto the
    /// basis with the trace pairing; records the worst closure defect.
    static LieBasis fromGenerators(std::vector<QuatMatrix> gens, Eigen::MatrixXd innerProduct);
};

/// Matrix commutator.
inline QuatMatrix bracket(const QuatMatrix& A, const QuatMatrix& B) { return A * B - B * A; }

/// Standard su(2) basis with [e1,e2] = e3 realized inside sp(1) as i/2, j/2,
/// k/2, carrying the normalized invariant inner product (Gram kSu2GramScale*I).
LieBasis su2Basis();

struct Su2TripleCheck {
    bool ok = false;
    double defect = 0.0;
};

/// Checks [t1,t2]=t3, [t2,t3]=t1, [t3,t1]=t2 in the given basis; the defect
/// is the largest invariant norm of a bracket mismatch.
Su2TripleCheck checkSu2Triple(const LieBasis& basis, const Eigen::VectorXd& t1,
                              const Eigen::VectorXd& t2, const Eigen::VectorXd& t3,
                              double tol = kStructuralTol);

/// Matrix of ad(rho) in the generator basis. Throws if rho is not expressed
/// in basis coordinates of the right size.
Eigen::MatrixXd adOperator(const LieBasis& basis, const Eigen::VectorXd& rho);

}  // namespace hkq
