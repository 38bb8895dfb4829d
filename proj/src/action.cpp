#include "hkq/action.hpp"

#include <array>

namespace hkq {

namespace {
const std::vector<Cx> kHyperkahlerStructures = {Cx::I1, Cx::I2, Cx::I3};
const std::vector<Cx> kKahlerStructures = {Cx::IC};
}  // namespace

const std::vector<Cx>& GroupActionSpec::structures() const {
    return mode == QuotientMode::Hyperkahler ? kHyperkahlerStructures : kKahlerStructures;
}

GroupActionSpec GroupActionSpec::make(int d, LieBasis lie, QuotientMode mode,
                                      double metricScale2) {
    GroupActionSpec s;
    s.d = d;
    s.lie = std::move(lie);
    s.mode = mode;
    s.metricScale2 = metricScale2;
    if (s.lie.ambientDim() != d) throw Error("GroupActionSpec: generator size != d");

    const int n = s.lie.dim();
    s.gramSp.resize(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            s.gramSp(i, j) = spPair(s.lie.generators[i], s.lie.generators[j]);
    s.gramSpLLT.compute(s.gramSp);
    if (s.gramSpLLT.info() != Eigen::Success)
        throw Error("GroupActionSpec: degenerate generator pairing");
    return s;
}

double GroupActionSpec::generatorDefect() const {
    double defect = 0.0;
    for (const auto& gen : lie.generators) {
        defect = std::max(defect, spDefect(gen));
        if (mode == QuotientMode::Kahler) {
            // complex entries <=> the generator commutes with left
            // multiplication by i <=> no j,k parts
            for (const auto& q : gen.a)
                defect = std::max(defect, std::hypot(q.y, q.z));
        }
    }
    return defect;
}

QuatVector GroupActionSpec::fundamental(const Eigen::VectorXd& rho, const QuatVector& q) const {
    QuatVector r(q.dim());
    for (int a = 0; a < dimG(); ++a) {
        if (rho[a] == 0.0) continue;
        r += rho[a] * fundamental(a, q);
    }
    return r;
}

QuatVector fundamentalField(const GroupActionSpec& spec, const Eigen::VectorXd& rho,
                            const QuatVector& q) {
    if (rho.size() != spec.dimG()) throw Error("fundamentalField: rho size mismatch");
    if (q.dim() != static_cast<std::size_t>(spec.d))
        throw Error("fundamentalField: point dimension mismatch");
    return spec.fundamental(rho, q);
}

MomentValue moment(const GroupActionSpec& spec, const QuatVector& q) {
    const int n = spec.dimG();
    MomentValue m;
    m.comp.reserve(spec.nStructures());
    for (Cx s : spec.structures()) {
        Eigen::VectorXd p(n);
        for (int a = 0; a < n; ++a) {
            // (1/2) g(J(xi_a q), q); quadratic in q
            p[a] = 0.5 * spec.gdot(applyCx(s, spec.fundamental(a, q)), q);
        }
        m.comp.push_back(spec.gramSpLLT.solve(p));
    }
    return m;
}

double momentApply(const GroupActionSpec& spec, const Eigen::VectorXd& momentCoords,
                   const Eigen::VectorXd& rho) {
    return momentCoords.dot(spec.gramSp * rho);
}

MomentValue momentDerivative(const GroupActionSpec& spec, const QuatVector& q,
                             const QuatVector& v) {
    const int n = spec.dimG();
    MomentValue m;
    m.comp.reserve(spec.nStructures());
    for (Cx s : spec.structures()) {
        Eigen::VectorXd p(n);
        for (int a = 0; a < n; ++a) {
            p[a] = 0.5 * (spec.gdot(applyCx(s, spec.fundamental(a, v)), q) +
                          spec.gdot(applyCx(s, spec.fundamental(a, q)), v));
        }
        m.comp.push_back(spec.gramSpLLT.solve(p));
    }
    return m;
}

double momentDistance(const GroupActionSpec& spec, const MomentValue& m1,
                      const MomentValue& m2) {
    double s = 0;
    for (std::size_t i = 0; i < m1.comp.size(); ++i) {
        Eigen::VectorXd d = m1.comp[i] - m2.comp[i];
        s += d.dot(spec.gramSp * d);
    }
    return std::sqrt(s);
}

Eigen::VectorXd lambdaForm(const GroupActionSpec& spec, const QuatVector& q,
                           const QuatVector& v) {
    Eigen::VectorXd r(spec.dimG());
    for (int a = 0; a < spec.dimG(); ++a) r[a] = spec.gdot(v, spec.fundamental(a, q));
    return r;
}

FreenessReport localFreeness(const GroupActionSpec& spec, const QuatVector& q, double tol) {
    const int n = spec.dimG();
    Eigen::MatrixXd K(spec.realDim(), n);
    for (int a = 0; a < n; ++a)
        K.col(a) = std::sqrt(spec.metricScale2) * spec.fundamental(a, q).toReal();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(K);
    FreenessReport r;
    r.sigmaMin = svd.singularValues().size() > 0 ? svd.singularValues().minCoeff() : 0.0;
    r.status = r.sigmaMin < tol ? FreenessStatus::Degenerate : FreenessStatus::LocallyFree;
    return r;
}

Eigen::VectorXd adjointAction(const GroupActionSpec& spec, const QuatMatrix& groupElement,
                              const Eigen::VectorXd& coords, double* defect) {
    QuatMatrix elem = spec.lie.element(coords);
    QuatMatrix conj = groupElement * elem * groupElement.dagger();
    const int n = spec.dimG();
    Eigen::VectorXd rhs(n);
    for (int a = 0; a < n; ++a) rhs[a] = spPair(conj, spec.lie.generators[a]);
    Eigen::VectorXd out = spec.gramSpLLT.solve(rhs);
    if (defect) {
        QuatMatrix recon = spec.lie.element(out);
        *defect = (conj - recon).frobeniusNorm();
    }
    return out;
}

bool levelIsCoadjointFixed(const GroupActionSpec& spec, const MomentValue& c, double tol) {
    const std::array<double, 2> steps = {0.7, -0.35};
    for (int a = 0; a < spec.dimG(); ++a) {
        for (double t : steps) {
            QuatMatrix g = expm(t * spec.lie.generators[a]);
            for (const auto& comp : c.comp) {
                if (comp.lpNorm<Eigen::Infinity>() == 0.0) continue;
                Eigen::VectorXd moved = adjointAction(spec, g, comp);
                if ((moved - comp).lpNorm<Eigen::Infinity>() > tol) return false;
            }
        }
    }
    return true;
}

}  // namespace hkq
