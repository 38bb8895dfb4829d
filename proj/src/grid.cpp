#include "hkq/grid.hpp"

#include <cmath>

namespace hkq {

Grid Grid::gaussLegendre(int n, double a, double b) {
    if (n < 2) throw Error("Grid: need at least two nodes");
    if (!(b > a)) throw Error("Grid: b must exceed a");

    // Golub-Welsch on the Jacobi matrix of the Legendre recurrence.
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        const double beta = k / std::sqrt(4.0 * k * k - 1.0);
        J(k - 1, k) = beta;
        J(k, k - 1) = beta;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    if (es.info() != Eigen::Success) throw Error("Grid: eigen decomposition failed");

    Grid g;
    g.a = a;
    g.b = b;
    g.nodes.resize(n);
    g.weights.resize(n);
    for (int k = 0; k < n; ++k) {
        const double x = es.eigenvalues()[k];            // in (-1, 1), ascending
        const double w = 2.0 * es.eigenvectors()(0, k) * es.eigenvectors()(0, k);
        g.nodes[k] = a + 0.5 * (b - a) * (x + 1.0);
        g.weights[k] = 0.5 * (b - a) * w;
    }

    // barycentric weights with capacity scaling: each factor is O(1), so the
    // products stay representable and carry only O(n eps) relative error
    const double cap = 4.0 / (b - a);
    g.bary.resize(n);
    for (int j = 0; j < n; ++j) {
        double w = 1.0;
        for (int k = 0; k < n; ++k) {
            if (k == j) continue;
            w /= cap * (g.nodes[j] - g.nodes[k]);
        }
        g.bary[j] = w;
    }

    g.diff.resize(n, n);
    for (int j = 0; j < n; ++j) {
        double rowSum = 0.0;
        for (int k = 0; k < n; ++k) {
            if (k == j) continue;
            g.diff(j, k) = (g.bary[k] / g.bary[j]) / (g.nodes[j] - g.nodes[k]);
            rowSum += g.diff(j, k);
        }
        g.diff(j, j) = -rowSum;
    }
    return g;
}

double Grid::interpolate(const Eigen::VectorXd& samples, double s) const {
    double num = 0.0, den = 0.0;
    for (int j = 0; j < size(); ++j) {
        const double d = s - nodes[j];
        if (d == 0.0) return samples[j];
        const double t = bary[j] / d;
        num += t * samples[j];
        den += t;
    }
    return num / den;
}

Eigen::VectorXd Grid::differentiate(const Eigen::VectorXd& samples) const {
    const int n = size();
    Eigen::VectorXd out(n);
    for (int j = 0; j < n; ++j) {
        double acc = 0.0;
        for (int k = 0; k < n; ++k) {
            if (k == j) continue;
            acc += diff(j, k) * (samples[k] - samples[j]);
        }
        out[j] = acc;
    }
    return out;
}

Eigen::MatrixXd Grid::differentiateCols(const Eigen::MatrixXd& samples) const {
    const int n = size();
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(samples.rows(), n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            if (k == j) continue;
            out.col(j) += diff(j, k) * (samples.col(k) - samples.col(j));
        }
    return out;
}

Eigen::VectorXd Grid::interpolateCols(const Eigen::MatrixXd& samples, double s) const {
    Eigen::VectorXd num = Eigen::VectorXd::Zero(samples.rows());
    double den = 0.0;
    for (int j = 0; j < size(); ++j) {
        const double d = s - nodes[j];
        if (d == 0.0) return samples.col(j);
        const double t = bary[j] / d;
        num += t * samples.col(j);
        den += t;
    }
    return num / den;
}

}  // namespace hkq
