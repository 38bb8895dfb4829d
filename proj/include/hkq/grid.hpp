#pragma once

#include <vector>

#include <Eigen/Dense>

#include "hkq/quat.hpp"

namespace hkq {

/// Interior quadrature/collocation grid on (a, b). Gauss-Legendre nodes
/// cluster at the endpoints, which is what pole-plus-smooth field
/// representations need.
struct Grid {
    double a = 0.0, b = 1.0;
    Eigen::VectorXd nodes;    // strictly increasing, interior
    Eigen::VectorXd weights;  // quadrature weights for integrals over (a, b)
    Eigen::VectorXd bary;     // barycentric weights for the nodes
    Eigen::MatrixXd diff;     // differentiation matrix on the nodes

    int size() const { return static_cast<int>(nodes.size()); }

    static Grid gaussLegendre(int n, double a, double b);

    /// Barycentric interpolation of samples at an arbitrary point (returns
    /// the sample exactly when s hits a node).
    double interpolate(const Eigen::VectorXd& samples, double s) const;

    /// Row-wise interpolation of multi-component samples (columns = nodes).
    Eigen::VectorXd interpolateCols(const Eigen::MatrixXd& samples, double s) const;

    /// Spectral derivative at the nodes in the difference form
    /// sum_k D_jk (f_k - f_j), which suppresses the roundoff carried by the
    /// large near-diagonal entries of the differentiation matrix.
    Eigen::VectorXd differentiate(const Eigen::VectorXd& samples) const;
    Eigen::MatrixXd differentiateCols(const Eigen::MatrixXd& samples) const;

    double integrate(const Eigen::VectorXd& samples) const { return weights.dot(samples); }
};

}  // namespace hkq
