#include "hkq/lie.hpp"

namespace hkq {

QuatMatrix LieBasis::element(const Eigen::VectorXd& coords) const {
    if (coords.size() != dim()) throw Error("LieBasis::element: coordinate size mismatch");
    QuatMatrix m(ambientDim(), ambientDim());
    for (int a = 0; a < dim(); ++a) m += coords[a] * generators[a];
    return m;
}

Eigen::VectorXd LieBasis::bracket(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const {
    Eigen::VectorXd r = Eigen::VectorXd::Zero(dim());
    for (int c = 0; c < dim(); ++c) r[c] = u.dot(structure[c] * v);
    return r;
}

LieBasis LieBasis::fromGenerators(std::vector<QuatMatrix> gens, Eigen::MatrixXd innerProduct) {
    LieBasis b;
    b.generators = std::move(gens);
    b.innerProduct = std::move(innerProduct);
    const int n = b.dim();

    Eigen::MatrixXd gram(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) gram(i, j) = spPair(b.generators[i], b.generators[j]);
    Eigen::LLT<Eigen::MatrixXd> llt(gram);
    if (llt.info() != Eigen::Success)
        throw Error("LieBasis: generators are not linearly independent");

    b.structure.assign(n, Eigen::MatrixXd::Zero(n, n));
    double defect = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            QuatMatrix br = hkq::bracket(b.generators[i], b.generators[j]);
            Eigen::VectorXd rhs(n);
            for (int k = 0; k < n; ++k) rhs[k] = spPair(br, b.generators[k]);
            Eigen::VectorXd c = llt.solve(rhs);
            QuatMatrix recon(b.ambientDim(), b.ambientDim());
            for (int k = 0; k < n; ++k) {
                b.structure[k](i, j) = c[k];
                recon += c[k] * b.generators[k];
            }
            defect = std::max(defect, (br - recon).frobeniusNorm());
        }
    b.closureDefect = defect;
    return b;
}

LieBasis su2Basis() {
    std::vector<QuatMatrix> gens;
    for (int axis = 1; axis <= 3; ++axis) {
        QuatMatrix m(1, 1);
        m(0, 0) = 0.5 * Quaternion::unit(axis);
        gens.push_back(m);
    }
    Eigen::MatrixXd ip = kSu2GramScale * Eigen::MatrixXd::Identity(3, 3);
    return LieBasis::fromGenerators(std::move(gens), std::move(ip));
}

Su2TripleCheck checkSu2Triple(const LieBasis& basis, const Eigen::VectorXd& t1,
                              const Eigen::VectorXd& t2, const Eigen::VectorXd& t3, double tol) {
    Su2TripleCheck r;
    const Eigen::VectorXd d1 = basis.bracket(t1, t2) - t3;
    const Eigen::VectorXd d2 = basis.bracket(t2, t3) - t1;
    const Eigen::VectorXd d3 = basis.bracket(t3, t1) - t2;
    r.defect = std::max({basis.normOf(d1), basis.normOf(d2), basis.normOf(d3)});
    r.ok = r.defect <= tol;
    return r;
}

Eigen::MatrixXd adOperator(const LieBasis& basis, const Eigen::VectorXd& rho) {
    if (rho.size() != basis.dim()) throw Error("adOperator: rho is not in the basis span");
    const int n = basis.dim();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    // ad(rho) xi_b = sum_a rho_a [xi_a, xi_b]
    for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
            for (int a = 0; a < n; ++a) m(c, b) += rho[a] * basis.structure[c](a, b);
    return m;
}

}  // namespace hkq
