#include "hkq/levelset.hpp"

#include <algorithm>

namespace hkq {

namespace {

/// Modified Gram-Schmidt with one re-orthogonalization pass, metric given by
/// the spec. Returns an orthonormal basis of the span (vectors below the drop
/// tolerance are rejected; for locally free points none should drop).
std::vector<QuatVector> orthonormalize(const GroupActionSpec& spec,
                                       const std::vector<QuatVector>& vs) {
    std::vector<QuatVector> basis;
    for (const auto& vIn : vs) {
        QuatVector v = vIn;
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& b : basis) v -= spec.gdot(v, b) * b;
        const double n = spec.gnorm(v);
        if (n < 1e-13) continue;
        basis.push_back((1.0 / n) * v);
    }
    return basis;
}

void buildSplitting(LevelSetPoint& p) {
    const GroupActionSpec& spec = p.spec;
    const int n = spec.dimG();

    std::vector<QuatVector> gauge;
    for (int a = 0; a < n; ++a) gauge.push_back(spec.fundamental(a, p.q));
    p.gaugeBasis = orthonormalize(spec, gauge);
    if (static_cast<int>(p.gaugeBasis.size()) != n)
        throw DegenerateActionError("splitting: gauge directions are dependent");

    p.structureBasis.clear();
    for (Cx s : spec.structures()) {
        std::vector<QuatVector> block;
        for (int a = 0; a < n; ++a) block.push_back(applyCx(s, gauge[a]));
        auto ob = orthonormalize(spec, block);
        if (static_cast<int>(ob.size()) != n)
            throw DegenerateActionError("splitting: structure block is dependent");
        p.structureBasis.push_back(std::move(ob));
    }

    // Horizontal complement from a full QR of all block vectors.
    const int total = n * (1 + spec.nStructures());
    Eigen::MatrixXd B(spec.realDim(), total);
    int col = 0;
    for (const auto& b : p.gaugeBasis) B.col(col++) = b.toReal();
    for (const auto& block : p.structureBasis)
        for (const auto& b : block) B.col(col++) = b.toReal();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(B);
    Eigen::MatrixXd Q = qr.householderQ();
    p.horizontalBasis.clear();
    const double invScale = 1.0 / std::sqrt(spec.metricScale2);
    for (int c = total; c < spec.realDim(); ++c)
        p.horizontalBasis.push_back(QuatVector::fromReal(invScale * Q.col(c)));

    p.gram.resize(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) p.gram(a, b) = spec.gdot(gauge[a], gauge[b]);
    p.gramLLT.compute(p.gram);
    if (p.gramLLT.info() != Eigen::Success)
        throw GramSingularError("splitting: singular fundamental Gram matrix");
}

}  // namespace

double LevelSetPoint::splittingOrthogonalityDefect() const {
    std::vector<const std::vector<QuatVector>*> blocks;
    blocks.push_back(&gaugeBasis);
    for (const auto& b : structureBasis) blocks.push_back(&b);
    blocks.push_back(&horizontalBasis);
    double worst = 0.0;
    for (std::size_t i = 0; i < blocks.size(); ++i)
        for (std::size_t j = i + 1; j < blocks.size(); ++j)
            for (const auto& u : *blocks[i])
                for (const auto& v : *blocks[j])
                    worst = std::max(worst, std::abs(spec.gdot(u, v)));
    return worst;
}

QuatVector LevelSetPoint::horizontalVector(const Eigen::VectorXd& coords) const {
    QuatVector v(q.dim());
    for (int i = 0; i < horizontalDim(); ++i) v += coords[i] * horizontalBasis[i];
    return v;
}

Eigen::VectorXd LevelSetPoint::horizontalCoords(const QuatVector& v) const {
    Eigen::VectorXd c(horizontalDim());
    for (int i = 0; i < horizontalDim(); ++i) c[i] = spec.gdot(v, horizontalBasis[i]);
    return c;
}

double LevelSetPoint::nonHorizontalNorm(const QuatVector& v) const {
    double s = 0.0;
    for (const auto& b : gaugeBasis) {
        const double c = spec.gdot(v, b);
        s += c * c;
    }
    for (const auto& block : structureBasis)
        for (const auto& b : block) {
            const double c = spec.gdot(v, b);
            s += c * c;
        }
    return std::sqrt(s);
}

LevelSetPoint projectToLevel(const GroupActionSpec& spec, const QuatVector& q0,
                             const MomentValue& c, const ProjectionOptions& opt) {
    if (static_cast<int>(c.comp.size()) != spec.nStructures())
        throw Error("projectToLevel: level has wrong number of components");
    if (opt.checkLevelInvariance && !levelIsCoadjointFixed(spec, c))
        throw NonInvariantLevelError("projectToLevel: level not fixed by the coadjoint action");

    const int n = spec.dimG();
    const int nS = spec.nStructures();
    const int m = n * nS;

    QuatVector q = q0;
    auto residualVec = [&](const QuatVector& pt) {
        MomentValue mu = moment(spec, pt);
        Eigen::VectorXd r(m);
        for (int i = 0; i < nS; ++i) r.segment(i * n, n) = mu.comp[i] - c.comp[i];
        return r;
    };
    // residual norm in the invariant pairing, consistent with momentDistance
    auto residualNorm = [&](const Eigen::VectorXd& r) {
        double s = 0;
        for (int i = 0; i < nS; ++i) {
            Eigen::VectorXd seg = r.segment(i * n, n);
            s += seg.dot(spec.gramSp * seg);
        }
        return std::sqrt(s);
    };

    Eigen::VectorXd r = residualVec(q);
    double rn = residualNorm(r);
    int iter = 0;
    while (rn > opt.tol) {
        if (iter >= opt.maxIterations)
            throw MaxIterationsError("projectToLevel: no convergence");
        FreenessReport fr = localFreeness(spec, q, opt.degeneracyTol);
        if (fr.status == FreenessStatus::Degenerate)
            throw DegenerateActionError("projectToLevel: action degenerate along the iteration");

        // step directions J_i xi_a q, Jacobian of the moment coordinates
        std::vector<QuatVector> dirs;
        dirs.reserve(m);
        for (Cx s : spec.structures())
            for (int a = 0; a < n; ++a) dirs.push_back(applyCx(s, spec.fundamental(a, q)));
        Eigen::MatrixXd J(m, m);
        for (int col = 0; col < m; ++col) {
            MomentValue dm = momentDerivative(spec, q, dirs[col]);
            for (int i = 0; i < nS; ++i) J.block(i * n, col, n, 1) = dm.comp[i];
        }
        Eigen::VectorXd step = J.colPivHouseholderQr().solve(-r);

        double damp = 1.0;
        for (int tries = 0; tries < 25; ++tries) {
            QuatVector qNew = q;
            for (int col = 0; col < m; ++col) qNew += (damp * step[col]) * dirs[col];
            Eigen::VectorXd rNew = residualVec(qNew);
            const double rnNew = residualNorm(rNew);
            if (rnNew < rn || rnNew <= opt.tol) {
                q = qNew;
                r = rNew;
                rn = rnNew;
                break;
            }
            damp *= 0.5;
            if (tries == 24)
                throw MaxIterationsError("projectToLevel: line search stalled");
        }
        ++iter;
    }

    LevelSetPoint p;
    p.spec = spec;
    p.q = q;
    p.target = c;
    p.residual = rn;
    p.newtonIterations = iter;
    buildSplitting(p);
    return p;
}

LevelSetPoint makeLevelSetPoint(const GroupActionSpec& spec, const QuatVector& q,
                                const MomentValue& c, const ProjectionOptions& opt) {
    LevelSetPoint p;
    p.spec = spec;
    p.q = q;
    p.target = c;
    p.residual = momentDistance(spec, moment(spec, q), c);
    p.newtonIterations = 0;
    (void)opt;
    buildSplitting(p);
    return p;
}

}  // namespace hkq
