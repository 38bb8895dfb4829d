// Test-only oracles: finite-difference curvature of a metric given in
// coordinates, an implicit-function chart for quotient metrics, a dense
// sampling check for bilinear norms, and a projection-field derivative for
// the connection components. These deliberately avoid the library's own
// curvature code paths.
#pragma once

#include <functional>

#include <Eigen/Dense>

#include "hkq/catalog.hpp"
#include "hkq/curvature.hpp"

namespace hkq::oracle {

using MetricFn = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;

/// Sectional curvature of the plane (X, Y) at x0 for a coordinate metric,
/// via centered second differences of the metric and the curvature tensor
///   R_iklm = 1/2 (g_im,kl + g_kl,im - g_il,km - g_km,il)
///            + g_np (G^n_kl G^p_im - G^n_km G^p_il).
inline double sectionalFromMetric(const MetricFn& metric, const Eigen::VectorXd& x0,
                                  const Eigen::VectorXd& X, const Eigen::VectorXd& Y,
                                  double delta) {
    const int h = static_cast<int>(x0.size());
    auto shift = [&](int i, double si, int j, double sj) {
        Eigen::VectorXd x = x0;
        if (i >= 0) x[i] += si * delta;
        if (j >= 0) x[j] += sj * delta;
        return metric(x);
    };
    const Eigen::MatrixXd g0 = metric(x0);
    std::vector<Eigen::MatrixXd> gp(h), gm(h);
    for (int i = 0; i < h; ++i) {
        gp[i] = shift(i, 1, -1, 0);
        gm[i] = shift(i, -1, -1, 0);
    }
    // first derivatives d[i](a,b) = g_ab,i
    std::vector<Eigen::MatrixXd> d(h);
    for (int i = 0; i < h; ++i) d[i] = (gp[i] - gm[i]) / (2 * delta);
    // second derivatives dd[i][j]
    std::vector<std::vector<Eigen::MatrixXd>> dd(h, std::vector<Eigen::MatrixXd>(h));
    for (int i = 0; i < h; ++i)
        dd[i][i] = (gp[i] - 2 * g0 + gm[i]) / (delta * delta);
    for (int i = 0; i < h; ++i)
        for (int j = i + 1; j < h; ++j) {
            Eigen::MatrixXd mixed = (shift(i, 1, j, 1) - shift(i, 1, j, -1) -
                                     shift(i, -1, j, 1) + shift(i, -1, j, -1)) /
                                    (4 * delta * delta);
            dd[i][j] = mixed;
            dd[j][i] = mixed;
        }

    const Eigen::MatrixXd ginv = g0.inverse();
    // Christoffel symbols of the second kind at x0
    std::vector<Eigen::MatrixXd> gamma(h, Eigen::MatrixXd::Zero(h, h));  // gamma[e](b,c)
    for (int e = 0; e < h; ++e)
        for (int b = 0; b < h; ++b)
            for (int c = 0; c < h; ++c) {
                double s = 0;
                for (int dix = 0; dix < h; ++dix)
                    s += ginv(e, dix) * (d[b](dix, c) + d[c](dix, b) - d[dix](b, c));
                gamma[e](b, c) = 0.5 * s;
            }

    auto riemann = [&](int i, int k, int l, int m) {
        double r = 0.5 * (dd[k][l](i, m) + dd[i][m](k, l) - dd[k][m](i, l) - dd[i][l](k, m));
        for (int n = 0; n < h; ++n)
            for (int pp = 0; pp < h; ++pp)
                r += g0(n, pp) *
                     (gamma[n](k, l) * gamma[pp](i, m) - gamma[n](k, m) * gamma[pp](i, l));
        return r;
    };

    double num = 0;
    for (int i = 0; i < h; ++i)
        for (int k = 0; k < h; ++k)
            for (int l = 0; l < h; ++l)
                for (int m = 0; m < h; ++m)
                    num += riemann(i, k, l, m) * X[i] * Y[k] * X[l] * Y[m];
    const double xx = X.dot(g0 * X), yy = Y.dot(g0 * Y), xy = X.dot(g0 * Y);
    return num / (xx * yy - xy * xy);
}

/// Slice chart for the quotient metric around a level-set point: coordinates
/// x move along the frozen horizontal frame, the moment constraint is
/// restored along the frozen structure frame by Newton, and tangents come
/// from the implicit function theorem (the moment map is quadratic, so all
/// derivatives are exact). The chart metric projects out the gauge
/// directions at the moved point.
class QuotientChart {
  public:
    explicit QuotientChart(const LevelSetPoint& p) : p_(p) {
        const GroupActionSpec& spec = p.spec;
        const int n = spec.dimG();
        for (Cx s : spec.structures())
            for (int a = 0; a < n; ++a)
                frame_.push_back(applyCx(s, spec.fundamental(a, p.q)));
    }

    MetricFn metricFn() const {
        return [this](const Eigen::VectorXd& x) { return metricAt(x); };
    }

    Eigen::MatrixXd metricAt(const Eigen::VectorXd& x) const {
        const GroupActionSpec& spec = p_.spec;
        const int n = spec.dimG();
        const int m = static_cast<int>(frame_.size());
        const int h = p_.horizontalDim();

        QuatVector q = p_.q;
        for (int i = 0; i < h; ++i) q += x[i] * p_.horizontalBasis[i];
        // restore the level along the frozen frame
        Eigen::VectorXd w = Eigen::VectorXd::Zero(m);
        for (int iter = 0; iter < 60; ++iter) {
            Eigen::VectorXd r = residual(q);
            if (r.lpNorm<Eigen::Infinity>() < 1e-13) break;
            Eigen::MatrixXd J(m, m);
            for (int c = 0; c < m; ++c) J.col(c) = momentDirection(q, frame_[c]);
            Eigen::VectorXd dw = J.colPivHouseholderQr().solve(-r);
            w += dw;
            for (int c = 0; c < m; ++c) q += dw[c] * frame_[c];
        }

        // exact tangents via the implicit function theorem
        Eigen::MatrixXd J(m, m);
        for (int c = 0; c < m; ++c) J.col(c) = momentDirection(q, frame_[c]);
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(J);
        std::vector<QuatVector> tangents;
        for (int i = 0; i < h; ++i) {
            Eigen::VectorXd rhs = momentDirection(q, p_.horizontalBasis[i]);
            Eigen::VectorXd dw = lu.solve(-rhs);
            QuatVector u = p_.horizontalBasis[i];
            for (int c = 0; c < m; ++c) u += dw[c] * frame_[c];
            tangents.push_back(u);
        }

        // project out the gauge directions at q
        std::vector<QuatVector> gauge;
        Eigen::MatrixXd G(n, n);
        for (int a = 0; a < n; ++a) gauge.push_back(spec.fundamental(a, q));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) G(a, b) = spec.gdot(gauge[a], gauge[b]);
        Eigen::LLT<Eigen::MatrixXd> llt(G);
        Eigen::MatrixXd B(n, h);
        for (int i = 0; i < h; ++i)
            for (int a = 0; a < n; ++a) B(a, i) = spec.gdot(gauge[a], tangents[i]);
        Eigen::MatrixXd vert = B.transpose() * llt.solve(B);

        Eigen::MatrixXd gm(h, h);
        for (int i = 0; i < h; ++i)
            for (int j = 0; j < h; ++j)
                gm(i, j) = spec.gdot(tangents[i], tangents[j]) - vert(i, j);
        return gm;
    }

  private:
    Eigen::VectorXd residual(const QuatVector& q) const {
        const GroupActionSpec& spec = p_.spec;
        const int n = spec.dimG();
        MomentValue mu = moment(spec, q);
        Eigen::VectorXd r(n * spec.nStructures());
        for (int i = 0; i < spec.nStructures(); ++i)
            r.segment(i * n, n) = mu.comp[i] - p_.target.comp[i];
        return r;
    }
    Eigen::VectorXd momentDirection(const QuatVector& q, const QuatVector& v) const {
        const GroupActionSpec& spec = p_.spec;
        const int n = spec.dimG();
        MomentValue dm = momentDerivative(spec, q, v);
        Eigen::VectorXd r(n * spec.nStructures());
        for (int i = 0; i < spec.nStructures(); ++i) r.segment(i * n, n) = dm.comp[i];
        return r;
    }

    const LevelSetPoint& p_;
    std::vector<QuatVector> frame_;
};

/// Quotient sectional curvature through the chart, for horizontal
/// orthonormal X, Y given as ambient vectors. Richardson extrapolation in
/// the stencil width removes the leading quadratic truncation.
inline double chartSectionalCurvature(const LevelSetPoint& p, const QuatVector& X,
                                      const QuatVector& Y, double delta = 2e-3) {
    QuotientChart chart(p);
    const Eigen::VectorXd x0 = Eigen::VectorXd::Zero(p.horizontalDim());
    const Eigen::VectorXd xc = p.horizontalCoords(X), yc = p.horizontalCoords(Y);
    const double kFull = sectionalFromMetric(chart.metricFn(), x0, xc, yc, delta);
    const double kHalf = sectionalFromMetric(chart.metricFn(), x0, xc, yc, 0.5 * delta);
    return (4.0 * kHalf - kFull) / 3.0;
}

/// Connection components by differentiating the actual projection field
/// Ytilde(m) = (projection of Y onto the horizontal space at m) along X;
/// independent of the tensorial Gram-system route.
struct PerpFD {
    Eigen::VectorXd rho0;
    std::vector<Eigen::VectorXd> rhoStruct;
};

inline PerpFD perpByFieldDerivative(const LevelSetPoint& p, const QuatVector& X,
                                    const QuatVector& Y, double h = 1e-5) {
    const GroupActionSpec& spec = p.spec;
    const int n = spec.dimG();

    auto horizontalProjection = [&](const QuatVector& at, const QuatVector& v) {
        std::vector<QuatVector> blocks;
        for (int a = 0; a < n; ++a) blocks.push_back(spec.fundamental(a, at));
        for (Cx s : spec.structures())
            for (int a = 0; a < n; ++a) blocks.push_back(applyCx(s, spec.fundamental(a, at)));
        const int m = static_cast<int>(blocks.size());
        Eigen::MatrixXd B(spec.realDim(), m);
        for (int c = 0; c < m; ++c) B.col(c) = blocks[c].toReal();
        Eigen::VectorXd vr = v.toReal();
        Eigen::VectorXd coeff = (B.transpose() * B).ldlt().solve(B.transpose() * vr);
        return QuatVector::fromReal(vr - B * coeff);
    };

    QuatVector plus = p.q + h * X, minus = p.q + (-h) * X;
    QuatVector yPlus = horizontalProjection(plus, Y);
    QuatVector yMinus = horizontalProjection(minus, Y);
    QuatVector D = (1.0 / (2 * h)) * (yPlus - yMinus);

    auto solveAgainst = [&](const std::vector<QuatVector>& block) {
        Eigen::VectorXd rhs(n);
        for (int a = 0; a < n; ++a) rhs[a] = spec.gdot(D, block[a]);
        return Eigen::VectorXd(p.gramLLT.solve(rhs));
    };
    std::vector<QuatVector> gauge;
    for (int a = 0; a < n; ++a) gauge.push_back(spec.fundamental(a, p.q));

    PerpFD out;
    out.rho0 = solveAgainst(gauge);
    for (Cx s : spec.structures()) {
        std::vector<QuatVector> rotated;
        for (int a = 0; a < n; ++a) rotated.push_back(applyCx(s, gauge[a]));
        out.rhoStruct.push_back(solveAgainst(rotated));
    }
    return out;
}

}  // namespace hkq::oracle
