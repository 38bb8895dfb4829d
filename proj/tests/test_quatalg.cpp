#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hkq/lie.hpp"
#include "hkq/quat.hpp"
#include "hkq/rng.hpp"

using namespace hkq;

namespace {

Quaternion randomQuat(Rng& rng) {
    return {rng.gaussian(), rng.gaussian(), rng.gaussian(), rng.gaussian()};
}

QuatVector randomVec(Rng& rng, int d) {
    QuatVector v(d);
    for (int i = 0; i < d; ++i) v[i] = randomQuat(rng);
    return v;
}

}  // namespace

TEST_CASE("hamilton products") {
    const Quaternion i = Quaternion::unit(1), j = Quaternion::unit(2), k = Quaternion::unit(3);
    CHECK((i * j - k).norm() == doctest::Approx(0.0));
    CHECK((j * k - i).norm() == doctest::Approx(0.0));
    CHECK((k * i - j).norm() == doctest::Approx(0.0));
    CHECK((i * i + Quaternion(1, 0, 0, 0)).norm() == doctest::Approx(0.0));
    CHECK(Quaternion(1, 1, 1, 1).norm() == doctest::Approx(2.0));
}

TEST_CASE("unit quaternion rotation: q i q* = j for q = (1+k)/sqrt(2)") {
    const double s = 1.0 / std::sqrt(2.0);
    const Quaternion q(s, 0, 0, s);
    const Quaternion r = q * Quaternion::unit(1) * q.conj();
    CHECK((r - Quaternion::unit(2)).norm() < 1e-15);
}

TEST_CASE("norm is multiplicative and conjugation reverses products") {
    Rng rng(42);
    double worstMul = 0, worstConj = 0;
    for (int t = 0; t < 10000; ++t) {
        const Quaternion p = randomQuat(rng), q = randomQuat(rng);
        worstMul = std::max(worstMul,
                            std::abs((p * q).norm() - p.norm() * q.norm()) /
                                std::max(1e-30, p.norm() * q.norm()));
        worstConj = std::max(worstConj, ((p * q).conj() - q.conj() * p.conj()).norm());
    }
    CHECK(worstMul < 1e-12);
    CHECK(worstConj < 1e-12);
}

TEST_CASE("complex structures: isometries, anticommutation, triple product") {
    Rng rng(7);
    const int d = 3;
    double worst = 0;
    for (int t = 0; t < 200; ++t) {
        QuatVector v = randomVec(rng, d);
        const double nv = norm(v);
        for (Cx s : {Cx::I1, Cx::I2, Cx::I3, Cx::IC}) {
            worst = std::max(worst, std::abs(norm(applyCx(s, v)) - nv));
            // square is minus the identity
            worst = std::max(worst, norm(applyCx(s, applyCx(s, v)) + v));
        }
        const Cx ss[3] = {Cx::I1, Cx::I2, Cx::I3};
        for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b)
                worst = std::max(worst, norm(applyCx(ss[a], applyCx(ss[b], v)) +
                                             applyCx(ss[b], applyCx(ss[a], v))));
        // I1 I2 I3 = -identity
        worst = std::max(worst, norm(applyCx(Cx::I1, applyCx(Cx::I2, applyCx(Cx::I3, v))) + v));
        // I1 I2 = I3
        worst = std::max(
            worst, norm(applyCx(Cx::I1, applyCx(Cx::I2, v)) - applyCx(Cx::I3, v)));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("structures agree with literal right multiplication by conjugate units") {
    Rng rng(11);
    double worst = 0;
    for (int t = 0; t < 500; ++t) {
        const Quaternion q = randomQuat(rng);
        worst = std::max(worst, (applyCx(Cx::I1, q) - q * (-Quaternion::unit(1))).norm());
        worst = std::max(worst, (applyCx(Cx::I2, q) - q * (-Quaternion::unit(2))).norm());
        worst = std::max(worst, (applyCx(Cx::I3, q) - q * (-Quaternion::unit(3))).norm());
        worst = std::max(worst, (applyCx(Cx::IC, q) - Quaternion::unit(1) * q).norm());
    }
    CHECK(worst == doctest::Approx(0.0));
}

TEST_CASE("su(2) basis closure and structure constants") {
    LieBasis su2 = su2Basis();
    CHECK(su2.closureDefect < 1e-10);
    Eigen::Vector3d e1 = Eigen::Vector3d::UnitX(), e2 = Eigen::Vector3d::UnitY();
    CHECK((su2.bracket(e1, e2) - Eigen::Vector3d::UnitZ()).norm() < 1e-14);
}

TEST_CASE("commutator norm bound holds and is tight for the frozen scale") {
    LieBasis su2 = su2Basis();
    Rng rng(5);
    double worstRatio = 0;
    for (int t = 0; t < 10000; ++t) {
        Eigen::VectorXd x = rng.gaussianVector(3), y = rng.gaussianVector(3);
        const double num = su2.normOf(su2.bracket(x, y));
        const double den = 2.0 * su2.normOf(x) * su2.normOf(y);
        worstRatio = std::max(worstRatio, num / den);
    }
    CHECK(worstRatio <= 1.0 + 1e-12);
    // equality on an orthonormal pair
    Eigen::VectorXd a = Eigen::Vector3d::UnitX() / std::sqrt(kSu2GramScale);
    Eigen::VectorXd b = Eigen::Vector3d::UnitY() / std::sqrt(kSu2GramScale);
    CHECK(su2.normOf(a) == doctest::Approx(1.0));
    CHECK(su2.normOf(su2.bracket(a, b)) == doctest::Approx(2.0));
}

TEST_CASE("the frozen Gram scale is the tight one") {
    // with Gram = s I the extremal ratio |[A,B]|/(2|A||B|) over pairs is
    // 1/(2 sqrt(s)); find the scale where it crosses one and compare
    auto extremalRatio = [](double s) {
        double worst = 0;
        Rng rng(17);
        for (int t = 0; t < 2000; ++t) {
            Eigen::Vector3d x = rng.gaussianVector(3), y = rng.gaussianVector(3);
            const double nx = std::sqrt(s) * x.norm(), ny = std::sqrt(s) * y.norm();
            const double num = std::sqrt(s) * x.cross(y).norm();
            worst = std::max(worst, num / (2.0 * nx * ny));
        }
        return worst;
    };
    double lo = 0.01, hi = 4.0;
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        (extremalRatio(mid) > 1.0 ? lo : hi) = mid;
    }
    CHECK(0.5 * (lo + hi) == doctest::Approx(kSu2GramScale).epsilon(1e-3));
}

TEST_CASE("su(2) triple check") {
    LieBasis su2 = su2Basis();
    Eigen::VectorXd e1 = Eigen::Vector3d::UnitX(), e2 = Eigen::Vector3d::UnitY(),
                    e3 = Eigen::Vector3d::UnitZ();
    SUBCASE("standard basis") {
        auto r = checkSu2Triple(su2, e1, e2, e3);
        CHECK(r.ok);
        CHECK(r.defect == doctest::Approx(0.0));
    }
    SUBCASE("zero homomorphism") {
        Eigen::VectorXd z = Eigen::Vector3d::Zero();
        auto r = checkSu2Triple(su2, z, z, z);
        CHECK(r.ok);
        CHECK(r.defect == doctest::Approx(0.0));
    }
    SUBCASE("doubled basis fails with defect 2|e3|") {
        auto r = checkSu2Triple(su2, 2 * e1, 2 * e2, 2 * e3);
        CHECK_FALSE(r.ok);
        CHECK(r.defect == doctest::Approx(2.0 * su2.normOf(e3)));
    }
}

TEST_CASE("adjoint operator") {
    LieBasis su2 = su2Basis();
    Eigen::MatrixXd ad1 = adOperator(su2, Eigen::Vector3d::UnitX());
    Eigen::MatrixXd expected(3, 3);
    expected << 0, 0, 0, 0, 0, -1, 0, 1, 0;
    CHECK((ad1 - expected).norm() < 1e-14);
    Eigen::MatrixXd sq = -(ad1 * ad1);
    Eigen::MatrixXd diag = Eigen::Vector3d(0, 1, 1).asDiagonal();
    CHECK((sq - diag).norm() < 1e-14);

    Rng rng(3);
    double worstSkew = 0;
    for (int t = 0; t < 100; ++t) {
        Eigen::MatrixXd ad = adOperator(su2, Eigen::VectorXd(rng.gaussianVector(3)));
        Eigen::MatrixXd skew = su2.innerProduct * ad + ad.transpose() * su2.innerProduct;
        worstSkew = std::max(worstSkew, skew.cwiseAbs().maxCoeff());
    }
    CHECK(worstSkew < 1e-12);
    CHECK_THROWS_AS(adOperator(su2, Eigen::VectorXd::Zero(2)), Error);
}

TEST_CASE("sp membership and the exponential") {
    Rng rng(23);
    QuatMatrix A(2, 2);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            A(r, c) = {rng.gaussian(), rng.gaussian(), rng.gaussian(), rng.gaussian()};
    QuatMatrix S = 0.5 * (A - A.dagger());
    CHECK(isSp(S, 1e-12));
    CHECK_FALSE(isSp(A + QuatMatrix::identity(2), 1e-6));

    QuatMatrix g = expm(S);
    QuatMatrix shouldBeId = g.dagger() * g;
    CHECK((shouldBeId - QuatMatrix::identity(2)).frobeniusNorm() < 1e-12);
    CHECK((expm(QuatMatrix::zero(2)) - QuatMatrix::identity(2)).frobeniusNorm() == 0.0);
    QuatMatrix gInv = expm(-1.0 * S);
    CHECK((g * gInv - QuatMatrix::identity(2)).frobeniusNorm() < 1e-12);
}
