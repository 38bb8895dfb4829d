#include "hkq/nahm.hpp"

#include <cmath>

namespace hkq {

namespace {

// (u - sin u)/(u sin u) and (u cos u - sin u)/(u sin u) with series branches
// that avoid the small-u cancellation.
double cscm1(double u) {  // 1/sin(u) - 1/u
    const double au = std::abs(u);
    if (au > 0.5) return 1.0 / std::sin(u) - 1.0 / u;
    const double u2 = u * u;
    const double u4 = u2 * u2, u6 = u4 * u2, u8 = u4 * u4, u10 = u8 * u2, u12 = u8 * u4;
    // u - sin u, factored Taylor series through u^15
    const double num = (u * u2 / 6.0) *
                       (1.0 - u2 / 20.0 + u4 / 840.0 - u6 / 60480.0 + u8 / 6652800.0 -
                        u10 / 1037836800.0 + u12 / 217945728000.0);
    return num / (u * std::sin(u));
}

double cotm1(double u) {  // cot(u) - 1/u
    const double au = std::abs(u);
    if (au > 0.5) return std::cos(u) / std::sin(u) - 1.0 / u;
    const double u2 = u * u;
    const double u4 = u2 * u2, u6 = u4 * u2, u8 = u4 * u4, u10 = u8 * u2, u12 = u8 * u4;
    // u cos u - sin u, factored Taylor series through u^15
    const double num = -(u * u2 / 3.0) *
                       (1.0 - u2 / 10.0 + u4 / 280.0 - u6 / 15120.0 + u8 / 1330560.0 -
                        u10 / 172972800.0 + u12 / 31135104000.0);
    return num / (u * std::sin(u));
}

Eigen::Matrix3d crossMatrix(const Eigen::Vector3d& v) {
    Eigen::Matrix3d m;
    m << 0, -v.z(), v.y(), v.z(), 0, -v.x(), -v.y(), v.x(), 0;
    return m;
}

// unit quaternion utilities on (w,x,y,z) 4-vectors
Eigen::Vector4d quatMul(const Eigen::Vector4d& p, const Eigen::Vector4d& q) {
    return {p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3],
            p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2],
            p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1],
            p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0]};
}

Eigen::Vector4d quatConj(const Eigen::Vector4d& q) { return {q[0], -q[1], -q[2], -q[3]}; }

// exp of the su(2) element with epsilon-basis coordinates v (quaternion v.e/2)
Eigen::Vector4d su2Exp(const Eigen::Vector3d& v) {
    const double half = 0.5 * v.norm();
    Eigen::Vector4d q;
    q[0] = std::cos(half);
    const double sc = half < 1e-12 ? 0.5 : std::sin(half) / v.norm();
    q[1] = sc * v.x();
    q[2] = sc * v.y();
    q[3] = sc * v.z();
    return q;
}

Eigen::Matrix3d rotationOf(const Eigen::Vector4d& q) {
    const double w = q[0], x = q[1], y = q[2], z = q[3];
    Eigen::Matrix3d R;
    R << 1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),
        2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
        2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y);
    return R;
}

// su(2) coordinates of the imaginary quaternion p (inverse of v -> v.e/2)
Eigen::Vector3d quatToSu2(const Eigen::Vector4d& p) {
    return {2.0 * p[1], 2.0 * p[2], 2.0 * p[3]};
}

}  // namespace

NahmConfig NahmConfig::make(double a, double b, const std::array<Eigen::Vector3d, 3>& alpha,
                            const std::array<Eigen::Vector3d, 3>& beta, int gridSize,
                            double tripleTol) {
    if (!(b > a)) throw Error("NahmConfig: b must exceed a");
    LieBasis su2 = su2Basis();
    auto checkTriple = [&](const std::array<Eigen::Vector3d, 3>& t, const char* name) {
        Su2TripleCheck c = checkSu2Triple(su2, t[0], t[1], t[2], tripleTol);
        if (!c.ok) throw Error(std::string("NahmConfig: residue triple ") + name +
                               " fails the su(2) relations");
    };
    checkTriple(alpha, "alpha");
    checkTriple(beta, "beta");
    NahmConfig cfg;
    cfg.a = a;
    cfg.b = b;
    cfg.alpha = alpha;
    cfg.beta = beta;
    cfg.grid = Grid::gaussLegendre(gridSize, a, b);
    return cfg;
}

double axialF1(double a, double b, double s) {
    const double c = M_PI / (b - a);
    return -c / std::sin(c * (s - a));
}

double axialF3(double a, double b, double s) {
    const double c = M_PI / (b - a);
    return -c * (std::cos(c * (s - a)) / std::sin(c * (s - a)));
}

NahmSolution makeAxialSolution(double a, double b, int gridSize) {
    const std::array<Eigen::Vector3d, 3> alpha = {Eigen::Vector3d::UnitX(),
                                                  Eigen::Vector3d::UnitY(),
                                                  Eigen::Vector3d::UnitZ()};
    const std::array<Eigen::Vector3d, 3> beta = {-Eigen::Vector3d::UnitX(),
                                                 -Eigen::Vector3d::UnitY(),
                                                 Eigen::Vector3d::UnitZ()};
    NahmSolution T;
    T.config = NahmConfig::make(a, b, alpha, beta, gridSize);
    T.closedFormAxial = true;

    const Grid& grid = T.config.grid;
    const double c = M_PI / (b - a);
    for (auto& m : T.smooth) m = Eigen::Matrix3Xd::Zero(3, grid.size());
    for (int k = 0; k < grid.size(); ++k) {
        const double s = grid.nodes[k];
        const double u = c * (s - a);
        const double v = c * (b - s);
        double r1, r3;  // remainders of f1 and f3 after the pole subtraction
        if (u <= 0.5) {
            r1 = -c * cscm1(u) - 1.0 / (s - b);
            r3 = -c * cotm1(u) + 1.0 / (s - b);
        } else if (v <= 0.5) {
            r1 = -c * cscm1(v) + 1.0 / (s - a);
            r3 = c * cotm1(v) + 1.0 / (s - a);
        } else {
            r1 = axialF1(a, b, s) + 1.0 / (s - a) - 1.0 / (s - b);
            r3 = axialF3(a, b, s) + 1.0 / (s - a) + 1.0 / (s - b);
        }
        T.smooth[1](0, k) = r1;
        T.smooth[2](1, k) = r1;
        T.smooth[3](2, k) = r3;
    }
    return T;
}

double nahmResidual(const NahmSolution& T) {
    const NahmConfig& cfg = T.config;
    const Grid& grid = cfg.grid;
    const int n = grid.size();

    std::array<Eigen::Matrix3Xd, 4> dSmooth;
    for (int i = 0; i < 4; ++i) dSmooth[i] = grid.differentiateCols(T.smooth[i]);

    // constant numerators of the mixed pole terms
    std::array<Eigen::Vector3d, 3> cross;
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        cross[i] = su2Bracket(cfg.alpha[j], cfg.beta[k]) + su2Bracket(cfg.beta[j], cfg.alpha[k]);
    }

    double worst = 0.0;
    for (int node = 0; node < n; ++node) {
        const double s = grid.nodes[node];
        std::array<Eigen::Vector3d, 3> S, R;
        for (int i = 0; i < 3; ++i) {
            S[i] = cfg.polePart(i, s);
            R[i] = T.smooth[i + 1].col(node);
        }
        const Eigen::Vector3d t0 = T.smooth[0].col(node);
        for (int i = 0; i < 3; ++i) {
            const int j = (i + 1) % 3, k = (i + 2) % 3;
            Eigen::Vector3d res = dSmooth[i + 1].col(node);
            res += su2Bracket(t0, S[i] + R[i]);
            res -= cross[i] / ((s - cfg.a) * (s - cfg.b));
            res -= su2Bracket(S[j], R[k]) + su2Bracket(R[j], S[k]) + su2Bracket(R[j], R[k]);
            worst = std::max(worst, su2Norm(res));
        }
    }
    return worst;
}

GaugePath GaugePath::fromExponential(const Grid& grid,
                                     const std::function<Eigen::Vector3d(double)>& theta) {
    GaugePath p;
    const int n = grid.size();
    p.g.resize(4, n);
    p.gdot.resize(4, n);
    const double h = 1e-4 * (grid.b - grid.a);
    for (int k = 0; k < n; ++k) {
        const double s = grid.nodes[k];
        p.g.col(k) = su2Exp(theta(s));
        // five-point derivative of the closed form
        Eigen::Vector4d d = (-su2Exp(theta(s + 2 * h)) + 8.0 * su2Exp(theta(s + h)) -
                             8.0 * su2Exp(theta(s - h)) + su2Exp(theta(s - 2 * h))) /
                            (12.0 * h);
        p.gdot.col(k) = d;
    }
    return p;
}

namespace {

NahmSolution applyGauge(const NahmSolution& T, const Eigen::Matrix4Xd& g,
                        const Eigen::Matrix4Xd& gdot) {
    const Grid& grid = T.config.grid;
    NahmSolution out;
    out.config = T.config;
    out.closedFormAxial = false;
    for (auto& m : out.smooth) m = Eigen::Matrix3Xd::Zero(3, grid.size());
    for (int k = 0; k < grid.size(); ++k) {
        const double s = grid.nodes[k];
        const Eigen::Matrix3d R = rotationOf(g.col(k));
        const Eigen::Vector3d dgg =
            quatToSu2(quatMul(gdot.col(k), quatConj(g.col(k))));
        out.smooth[0].col(k) = R * T.smooth[0].col(k) - dgg;
        for (int i = 0; i < 3; ++i) {
            const Eigen::Vector3d S = T.config.polePart(i, s);
            out.smooth[i + 1].col(k) = R * (S + T.smooth[i + 1].col(k)) - S;
        }
    }
    return out;
}

}  // namespace

NahmSolution gaugeTransform(const NahmSolution& T, const GaugePath& path) {
    const Grid& grid = T.config.grid;
    // boundary values by extrapolating the sampled path
    Eigen::Vector4d ga, gb;
    for (int c = 0; c < 4; ++c) {
        Eigen::VectorXd row = path.g.row(c).transpose();
        ga[c] = grid.interpolate(row, grid.a);
        gb[c] = grid.interpolate(row, grid.b);
    }
    const Eigen::Vector4d id(1, 0, 0, 0);
    if ((ga - id).norm() > 1e-6 || (gb - id).norm() > 1e-6)
        throw Error("gaugeTransform: boundary values are not the identity");
    return applyGauge(T, path.g, path.gdot);
}

NahmSolution killT0Gauge(const NahmSolution& T) {
    const Grid& grid = T.config.grid;
    const int n = grid.size();
    if (T.maxT0() < 1e-14) return T;

    auto tau0 = [&](double s) { return T.config.grid.interpolateCols(T.smooth[0], s); };
    // hdot = h tau0 as unit quaternions, integrated a -> b with RK4
    const int stepsPerGap = 40;
    Eigen::Matrix4Xd g(4, n), gdot(4, n);
    Eigen::Vector4d h(1, 0, 0, 0);
    auto deriv = [&](const Eigen::Vector4d& q, double s) {
        const Eigen::Vector3d t = tau0(s);
        const Eigen::Vector4d tq(0, 0.5 * t.x(), 0.5 * t.y(), 0.5 * t.z());
        return quatMul(q, tq);
    };
    double sCur = grid.a;
    for (int k = 0; k < n; ++k) {
        const double sNext = grid.nodes[k];
        const double dt = (sNext - sCur) / stepsPerGap;
        for (int m = 0; m < stepsPerGap; ++m) {
            const double s0 = sCur + m * dt;
            const Eigen::Vector4d k1 = deriv(h, s0);
            const Eigen::Vector4d k2 = deriv(h + 0.5 * dt * k1, s0 + 0.5 * dt);
            const Eigen::Vector4d k3 = deriv(h + 0.5 * dt * k2, s0 + 0.5 * dt);
            const Eigen::Vector4d k4 = deriv(h + dt * k3, s0 + dt);
            h += (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4);
            h.normalize();
        }
        sCur = sNext;
        g.col(k) = h;
        gdot.col(k) = deriv(h, sCur);
    }
    // finish to s = b for the residue conjugation there
    {
        const double dt = (grid.b - sCur) / stepsPerGap;
        for (int m = 0; m < stepsPerGap; ++m) {
            const double s0 = sCur + m * dt;
            const Eigen::Vector4d k1 = deriv(h, s0);
            const Eigen::Vector4d k2 = deriv(h + 0.5 * dt * k1, s0 + 0.5 * dt);
            const Eigen::Vector4d k3 = deriv(h + 0.5 * dt * k2, s0 + 0.5 * dt);
            const Eigen::Vector4d k4 = deriv(h + dt * k3, s0 + dt);
            h += (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4);
            h.normalize();
        }
    }

    NahmSolution out = applyGauge(T, g, gdot);
    const Eigen::Matrix3d Rb = rotationOf(h);
    for (int i = 0; i < 3; ++i) out.config.beta[i] = Rb * T.config.beta[i];
    // the pole part changed with beta, so rebase the smooth remainder
    for (int k = 0; k < n; ++k) {
        const double s = grid.nodes[k];
        for (int i = 0; i < 3; ++i)
            out.smooth[i + 1].col(k) += T.config.polePart(i, s) - out.config.polePart(i, s);
    }
    return out;
}

double nahmMetric(const Grid& grid, const Quadruple& t, const Quadruple& tp) {
    double total = 0.0;
    for (int i = 0; i < 4; ++i) {
        Eigen::VectorXd density(grid.size());
        for (int k = 0; k < grid.size(); ++k)
            density[k] = kSu2GramScale * t[i].col(k).dot(tp[i].col(k));
        total += grid.integrate(density);
    }
    return total;
}

Quadruple nahmFundamental(const NahmSolution& T, const Eigen::Matrix3Xd& rho) {
    const Grid& grid = T.config.grid;
    Quadruple out;
    Eigen::Matrix3Xd rhodot = grid.differentiateCols(rho);
    for (auto& m : out) m = Eigen::Matrix3Xd::Zero(3, grid.size());
    for (int k = 0; k < grid.size(); ++k) {
        const double s = grid.nodes[k];
        out[0].col(k) = -rhodot.col(k) + su2Bracket(rho.col(k), T.smooth[0].col(k));
        for (int i = 0; i < 3; ++i)
            out[i + 1].col(k) =
                su2Bracket(rho.col(k), T.config.polePart(i, s) + T.smooth[i + 1].col(k));
    }
    return out;
}

Quadruple applyQuadrupleCx(int axis, const Quadruple& t) {
    Quadruple r;
    switch (axis) {
        case 1: r = {t[1], -t[0], -t[3], t[2]}; break;
        case 2: r = {t[2], t[3], -t[0], -t[1]}; break;
        case 3: r = {t[3], -t[2], t[1], -t[0]}; break;
        default: throw Error("applyQuadrupleCx: axis must be 1..3");
    }
    return r;
}

Eigen::Matrix3d adjointHamiltonian(const NahmSolution& T, double s) {
    Eigen::Matrix3d H = Eigen::Matrix3d::Zero();
    for (int i = 1; i <= 3; ++i) {
        const Eigen::Matrix3d ad = crossMatrix(T.fieldAt(i, s));
        H -= ad * ad;
    }
    return H;
}

double lambdaAt(const NahmSolution& T, double s) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(adjointHamiltonian(T, s));
    const double lo = es.eigenvalues().minCoeff();
    const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    if (lo < -1e-12 * scale)
        throw Error("lambdaAt: negative eigenvalue, inner product is inconsistent");
    return std::sqrt(std::max(lo, 0.0));
}

Eigen::VectorXd lambdaFloor(const NahmSolution& T) {
    const Grid& grid = T.config.grid;
    Eigen::VectorXd out(grid.size());
    for (int k = 0; k < grid.size(); ++k) out[k] = lambdaAt(T, grid.nodes[k]);
    return out;
}

std::array<Eigen::Matrix3Xd, 3> linearizedNahmRows(const NahmSolution& T, const Quadruple& t) {
    const Grid& grid = T.config.grid;
    std::array<Eigen::Matrix3Xd, 3> rows;
    std::array<Eigen::Matrix3Xd, 4> tdot;
    for (int i = 0; i < 4; ++i) tdot[i] = grid.differentiateCols(t[i]);
    for (int i = 0; i < 3; ++i) rows[i] = Eigen::Matrix3Xd::Zero(3, grid.size());
    for (int k = 0; k < grid.size(); ++k) {
        const double s = grid.nodes[k];
        std::array<Eigen::Vector3d, 4> Tv;
        Tv[0] = T.smooth[0].col(k);
        for (int i = 0; i < 3; ++i) Tv[i + 1] = T.config.polePart(i, s) + T.smooth[i + 1].col(k);
        for (int i = 1; i <= 3; ++i) {
            const int j = i % 3 + 1, l = j % 3 + 1;
            Eigen::Vector3d r = tdot[i].col(k);
            r += su2Bracket(Tv[0], t[i].col(k)) - su2Bracket(Tv[i], t[0].col(k));
            r -= su2Bracket(Tv[j], t[l].col(k)) - su2Bracket(Tv[l], t[j].col(k));
            rows[i - 1].col(k) = r;
        }
    }
    return rows;
}

Eigen::Matrix3Xd nahmLambdaDensity(const NahmSolution& T, const Quadruple& t) {
    const Grid& grid = T.config.grid;
    Eigen::Matrix3Xd out = grid.differentiateCols(t[0]);
    for (int k = 0; k < grid.size(); ++k) {
        const double s = grid.nodes[k];
        Eigen::Vector3d r = out.col(k);
        r += su2Bracket(T.smooth[0].col(k), t[0].col(k));
        for (int i = 0; i < 3; ++i)
            r += su2Bracket(T.config.polePart(i, s) + T.smooth[i + 1].col(k), t[i + 1].col(k));
        out.col(k) = r;
    }
    return out;
}

}  // namespace hkq
