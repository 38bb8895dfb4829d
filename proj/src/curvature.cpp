#include "hkq/curvature.hpp"

#include <algorithm>
#include <cmath>

namespace hkq {

PerpComponents perpComponents(const LevelSetPoint& p, const QuatVector& X, const QuatVector& Y,
                              double horizontalityTol) {
    const GroupActionSpec& spec = p.spec;
    const int n = spec.dimG();
    const double scale = std::max(1.0, std::max(spec.gnorm(X), spec.gnorm(Y)));
    if (p.nonHorizontalNorm(X) > horizontalityTol * scale ||
        p.nonHorizontalNorm(Y) > horizontalityTol * scale)
        throw Error("perpComponents: inputs are not horizontal");

    PerpComponents pc;
    std::vector<QuatVector> genX(n);
    for (int a = 0; a < n; ++a) genX[a] = spec.fundamental(a, X);

    auto solveComponent = [&](const QuatVector* rotated) -> Eigen::VectorXd {
        Eigen::VectorXd b(n);
        for (int a = 0; a < n; ++a) b[a] = -spec.gdot(Y, rotated[a]);
        return p.gramLLT.solve(b);
    };

    // gauge component
    pc.rho.push_back(solveComponent(genX.data()));
    // structure components
    std::vector<QuatVector> rotated(n);
    for (Cx s : spec.structures()) {
        for (int a = 0; a < n; ++a) rotated[a] = applyCx(s, genX[a]);
        pc.rho.push_back(solveComponent(rotated.data()));
    }
    for (const auto& coords : pc.rho) pc.rhoCheck.push_back(spec.fundamental(coords, p.q));
    return pc;
}

CurvatureSample sectionalCurvature(const LevelSetPoint& p, const QuatVector& X,
                                   const QuatVector& Y) {
    const GroupActionSpec& spec = p.spec;
    const double tol = 1e-8;
    if (std::abs(spec.gdot(X, X) - 1.0) > tol || std::abs(spec.gdot(Y, Y) - 1.0) > tol ||
        std::abs(spec.gdot(X, Y)) > tol)
        throw NonOrthonormalPlaneError("sectionalCurvature: plane is not orthonormal");

    PerpComponents xx = perpComponents(p, X, X);
    PerpComponents yy = perpComponents(p, Y, Y);
    PerpComponents xy = perpComponents(p, X, Y);

    auto secondForm = [&](const PerpComponents& pc) {
        QuatVector alpha(p.q.dim());
        int i = 1;
        for (Cx s : spec.structures()) alpha += applyCx(s, pc.rhoCheck[i++]);
        return alpha;
    };
    QuatVector aXX = secondForm(xx), aYY = secondForm(yy), aXY = secondForm(xy);

    CurvatureSample cs;
    cs.xCoords = p.horizontalCoords(X);
    cs.yCoords = p.horizontalCoords(Y);
    cs.rho0NormSq = spec.gdot(xy.rhoCheck[0], xy.rhoCheck[0]);
    cs.kLevelSet = spec.gdot(aXX, aYY) - spec.gdot(aXY, aXY);
    cs.kQ = cs.kLevelSet + 3.0 * cs.rho0NormSq;
    return cs;
}

namespace {

Eigen::VectorXd randomUnit(Rng& rng, int n) {
    Eigen::VectorXd v = rng.gaussianVector(n);
    double nv = v.norm();
    while (nv < 1e-12) {
        v = rng.gaussianVector(n);
        nv = v.norm();
    }
    return v / nv;
}

double sliceValue(const std::vector<Eigen::MatrixXd>& slices, const Eigen::VectorXd& x,
                  const Eigen::VectorXd& y) {
    double s = 0.0;
    for (const auto& m : slices) {
        const double c = x.dot(m * y);
        s += c * c;
    }
    return std::sqrt(s);
}

}  // namespace

BilinearNormResult bilinearNorm(const std::vector<Eigen::MatrixXd>& slices, int restarts,
                                Rng& rng, int maxIterations, double tol) {
    BilinearNormResult best;
    if (slices.empty()) return best;
    const int np = static_cast<int>(slices[0].rows());
    const int nq = static_cast<int>(slices[0].cols());
    const int nr = static_cast<int>(slices.size());
    if (np == 0 || nq == 0) return best;
    best.restarts = restarts;

    for (int r = 0; r < restarts; ++r) {
        Eigen::VectorXd x = randomUnit(rng, np);
        Eigen::VectorXd y = randomUnit(rng, nq);
        double value = sliceValue(slices, x, y);
        int it = 0;
        for (; it < maxIterations; ++it) {
            // maximize over x with y fixed: rows of A are slice images
            Eigen::MatrixXd A(nr, np);
            for (int k = 0; k < nr; ++k) A.row(k) = (slices[k] * y).transpose();
            Eigen::JacobiSVD<Eigen::MatrixXd> svdA(A, Eigen::ComputeThinV);
            x = svdA.matrixV().col(0);

            Eigen::MatrixXd B(nr, nq);
            for (int k = 0; k < nr; ++k) B.row(k) = (slices[k].transpose() * x).transpose();
            Eigen::JacobiSVD<Eigen::MatrixXd> svdB(B, Eigen::ComputeThinV);
            y = svdB.matrixV().col(0);

            const double newValue = svdB.singularValues()[0];
            if (std::abs(newValue - value) <= tol * std::max(1.0, newValue)) {
                value = newValue;
                break;
            }
            value = newValue;
        }
        if (value > best.value) {
            best.value = value;
            best.x = x;
            best.y = y;
            best.iterations = it + 1;
        }
    }
    return best;
}

double denseBilinearNorm(const std::vector<Eigen::MatrixXd>& slices, int nSamples, Rng& rng) {
    if (slices.empty()) return 0.0;
    const int np = static_cast<int>(slices[0].rows());
    const int nq = static_cast<int>(slices[0].cols());
    const int nr = static_cast<int>(slices.size());
    if (np == 0 || nq == 0) return 0.0;
    double best = 0.0;
    Eigen::MatrixXd A(nr, np);
    for (int s = 0; s < nSamples; ++s) {
        Eigen::VectorXd y = randomUnit(rng, nq);
        for (int k = 0; k < nr; ++k) A.row(k) = (slices[k] * y).transpose();
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
        best = std::max(best, svd.singularValues()[0]);
    }
    return best;
}

std::vector<Eigen::MatrixXd> oneillTensorSlices(const LevelSetPoint& p) {
    const GroupActionSpec& spec = p.spec;
    const int h = p.horizontalDim();
    const int n = spec.dimG();
    std::vector<Eigen::MatrixXd> slices(n, Eigen::MatrixXd::Zero(h, h));
    for (int alpha = 0; alpha < h; ++alpha) {
        std::vector<QuatVector> genX(n);
        for (int a = 0; a < n; ++a) genX[a] = spec.fundamental(a, p.horizontalBasis[alpha]);
        for (int beta = 0; beta < h; ++beta) {
            Eigen::VectorXd b(n);
            for (int a = 0; a < n; ++a) b[a] = -spec.gdot(p.horizontalBasis[beta], genX[a]);
            Eigen::VectorXd m = p.gramLLT.solve(b);
            QuatVector rc = spec.fundamental(m, p.q);
            for (int c = 0; c < n; ++c) slices[c](alpha, beta) = spec.gdot(rc, p.gaugeBasis[c]);
        }
    }
    return slices;
}

std::vector<Eigen::MatrixXd> bTensorSlices(const LevelSetPoint& p, NormChoice choice) {
    const GroupActionSpec& spec = p.spec;
    const int h = p.horizontalDim();
    const int n = spec.dimG();
    // raw[beta](alpha, a) = g(xi_a X_alpha, H_beta)
    std::vector<Eigen::MatrixXd> raw(h, Eigen::MatrixXd::Zero(h, n));
    for (int alpha = 0; alpha < h; ++alpha)
        for (int a = 0; a < n; ++a) {
            QuatVector img = spec.fundamental(a, p.horizontalBasis[alpha]);
            for (int beta = 0; beta < h; ++beta)
                raw[beta](alpha, a) = spec.gdot(img, p.horizontalBasis[beta]);
        }
    if (choice == NormChoice::FixedEuclidean) return raw;
    // metric norm: reparameterize rho so that unit coordinates mean
    // |rho-check| = 1, via the Cholesky factor of the fundamental Gram
    Eigen::MatrixXd L = p.gramLLT.matrixL();
    Eigen::MatrixXd Linv = L.inverse();
    for (auto& m : raw) m = m * Linv.transpose();
    return raw;
}

std::vector<Eigen::MatrixXd> cTensorSlices(const LevelSetPoint& p) {
    const GroupActionSpec& spec = p.spec;
    const int h = p.horizontalDim();
    const int n = spec.dimG();
    // rho_k realizes the k-th orthonormal gauge vector
    std::vector<Eigen::VectorXd> rhoK(n);
    for (int k = 0; k < n; ++k) {
        Eigen::VectorXd b(n);
        for (int a = 0; a < n; ++a)
            b[a] = spec.gdot(p.gaugeBasis[k], spec.fundamental(a, p.q));
        rhoK[k] = p.gramLLT.solve(b);
    }
    std::vector<Eigen::MatrixXd> slices(h, Eigen::MatrixXd::Zero(h, n));
    for (int alpha = 0; alpha < h; ++alpha)
        for (int k = 0; k < n; ++k) {
            QuatVector img = spec.fundamental(rhoK[k], p.horizontalBasis[alpha]);
            for (int beta = 0; beta < h; ++beta)
                slices[beta](alpha, k) = spec.gdot(img, p.horizontalBasis[beta]);
        }
    return slices;
}

VNormReport vNorm(const LevelSetPoint& p, int restarts, std::uint64_t seed) {
    VNormReport r;
    if (p.horizontalDim() == 0) return r;  // empty sup
    Rng rng(seed);
    auto slices = oneillTensorSlices(p);
    BilinearNormResult b = bilinearNorm(slices, restarts, rng);
    r.value = b.value;
    r.certX = b.x;
    r.certY = b.y;
    r.restarts = b.restarts;
    r.iterations = b.iterations;
    return r;
}

double fNorm(const LevelSetPoint& p, NormChoice choice, int restarts, std::uint64_t seed) {
    if (p.horizontalDim() == 0) return 0.0;
    Rng rng(seed);
    return bilinearNorm(bTensorSlices(p, choice), restarts, rng).value;
}

double cNorm(const LevelSetPoint& p, int restarts, std::uint64_t seed) {
    if (p.horizontalDim() == 0) return 0.0;
    Rng rng(seed);
    return bilinearNorm(cTensorSlices(p), restarts, rng).value;
}

LNormReport lNorm(const LevelSetPoint& p, NormChoice choice) {
    const int n = p.dimG();
    const Eigen::MatrixXd& G = p.gram;
    Eigen::MatrixXd N = choice == NormChoice::MetricNorm
                            ? G
                            : Eigen::MatrixXd::Identity(n, n).eval();
    Eigen::LLT<Eigen::MatrixXd> nllt(N);
    if (nllt.info() != Eigen::Success) throw GramSingularError("lNorm: norm matrix not SPD");
    Eigen::MatrixXd GNinvG = G * nllt.solve(G);

    auto maxGenEig = [](const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
        Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(A, B);
        if (es.info() != Eigen::Success)
            throw GramSingularError("lNorm: generalized eigenproblem failed");
        return es.eigenvalues().maxCoeff();
    };

    LNormReport r;
    r.value = std::sqrt(maxGenEig(G, GNinvG));
    r.bound1 = std::sqrt(maxGenEig(N, G));
    r.bound2 = std::pow(maxGenEig(N, GNinvG), 0.25);
    if (r.value > std::min(r.bound1, r.bound2) + 1e-8)
        throw Error("lNorm: value exceeds its upper bounds");
    return r;
}

EstimatorReport estimate(const LevelSetPoint& p, NormChoice choice, int restarts,
                         std::uint64_t seed) {
    EstimatorReport er;
    er.choice = choice;
    VNormReport v = vNorm(p, restarts, seed);
    er.V = v.value;
    er.restarts = v.restarts;
    er.iterations = v.iterations;
    er.F = fNorm(p, choice, restarts, seed + 1);
    er.Cnorm = cNorm(p, restarts, seed + 2);
    LNormReport l = lNorm(p, choice);
    er.l = l.value;
    er.lBound1 = l.bound1;
    er.lBound2 = l.bound2;
    return er;
}

void samplePlane(const LevelSetPoint& p, Rng& rng, Eigen::VectorXd& x, Eigen::VectorXd& y) {
    const int h = p.horizontalDim();
    if (h < 2) throw Error("samplePlane: horizontal space has no planes");
    x = randomUnit(rng, h);
    y = rng.gaussianVector(h);
    y -= y.dot(x) * x;
    double ny = y.norm();
    while (ny < 1e-10) {
        y = rng.gaussianVector(h);
        y -= y.dot(x) * x;
        ny = y.norm();
    }
    y /= ny;
}

PlaneOptimum optimizePlane(const LevelSetPoint& p, std::uint64_t seed, int restarts, int steps) {
    Rng rng(seed);
    PlaneOptimum best;
    const int h = p.horizontalDim();
    if (h < 2) throw Error("optimizePlane: horizontal space has no planes");
    best.kQ = -std::numeric_limits<double>::infinity();
    for (int r = 0; r < restarts; ++r) {
        Eigen::VectorXd x, y;
        samplePlane(p, rng, x, y);
        double k = sectionalCurvature(p, p.horizontalVector(x), p.horizontalVector(y)).kQ;
        double sigma = 0.5;
        for (int s = 0; s < steps; ++s, sigma *= 0.96) {
            Eigen::VectorXd xc = (x + sigma * rng.gaussianVector(h)).normalized();
            Eigen::VectorXd yc = y + sigma * rng.gaussianVector(h);
            yc -= yc.dot(xc) * xc;
            if (yc.norm() < 1e-10) continue;
            yc.normalize();
            double kc =
                sectionalCurvature(p, p.horizontalVector(xc), p.horizontalVector(yc)).kQ;
            if (kc > k) {
                k = kc;
                x = xc;
                y = yc;
            }
        }
        if (k > best.kQ) {
            best.kQ = k;
            best.x = x;
            best.y = y;
        }
    }
    return best;
}

BoundsReport verifyBounds(const LevelSetPoint& p, int nPlanes, std::uint64_t seed,
                          double slack) {
    BoundsReport rep;
    rep.nPlanes = nPlanes;
    rep.kahlerMode = p.spec.mode == QuotientMode::Kahler;
    rep.slack = slack;
    if (nPlanes == 0) return rep;

    VNormReport v = vNorm(p, 32, seed + 101);
    rep.V = v.value;
    rep.kBound = (rep.kahlerMode ? 5.0 : 9.0) * v.value * v.value;

    Rng rng(seed);
    rep.worstMargin = std::numeric_limits<double>::infinity();
    rep.worstOneill = std::numeric_limits<double>::infinity();
    rep.kValues.reserve(nPlanes);
    for (int i = 0; i < nPlanes; ++i) {
        Eigen::VectorXd x, y;
        samplePlane(p, rng, x, y);
        CurvatureSample cs =
            sectionalCurvature(p, p.horizontalVector(x), p.horizontalVector(y));
        rep.kValues.push_back(cs.kQ);
        rep.maxAbsK = std::max(rep.maxAbsK, std::abs(cs.kQ));
        rep.worstMargin = std::min(rep.worstMargin, rep.kBound - std::abs(cs.kQ));
        rep.worstOneill = std::min(rep.worstOneill, cs.kQ - cs.kLevelSet);
        if (std::abs(cs.kQ) > rep.kBound + slack) ++rep.kViolations;
        if (cs.kQ - cs.kLevelSet < -slack) ++rep.oneillViolations;
    }
    if (rep.kahlerMode) {
        PlaneOptimum po = optimizePlane(p, seed + 202);
        rep.bestK = po.kQ;
        rep.lowerBoundCertified = po.kQ >= rep.V - slack;
    }
    return rep;
}

std::vector<ScanRow> asymptoticScan(const GroupActionSpec& spec, const QuatVector& base,
                                    const MomentValue& c, const std::vector<double>& radii,
                                    const std::vector<bool>& scaleMask, int nPlanes,
                                    std::uint64_t seed) {
    if (scaleMask.size() != base.dim()) throw Error("asymptoticScan: mask size mismatch");
    std::vector<ScanRow> rows;
    for (std::size_t ri = 0; ri < radii.size(); ++ri) {
        const double R = radii[ri];
        QuatVector q0 = base;
        for (std::size_t l = 0; l < q0.dim(); ++l)
            if (scaleMask[l]) q0[l] *= R;
        LevelSetPoint p = projectToLevel(spec, q0, c);

        ScanRow row;
        row.radius = R;
        row.newtonIterations = p.newtonIterations;
        row.V = vNorm(p, 32, seed + 7 * ri).value;
        row.F = fNorm(p, NormChoice::FixedEuclidean, 32, seed + 7 * ri + 1);
        row.l = lNorm(p, NormChoice::FixedEuclidean).value;

        Rng rng(seed + 1000 + ri);
        for (int i = 0; i < nPlanes; ++i) {
            Eigen::VectorXd x, y;
            samplePlane(p, rng, x, y);
            CurvatureSample cs =
                sectionalCurvature(p, p.horizontalVector(x), p.horizontalVector(y));
            row.maxAbsK = std::max(row.maxAbsK, std::abs(cs.kQ));
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace hkq
