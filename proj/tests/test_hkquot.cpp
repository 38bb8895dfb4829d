#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hkq/catalog.hpp"
#include "hkq/levelset.hpp"

using namespace hkq;

namespace {

GroupActionSpec sp1Spec() {
    std::vector<QuatMatrix> gens;
    for (int axis = 1; axis <= 3; ++axis) {
        QuatMatrix m(1, 1);
        m(0, 0) = Quaternion::unit(axis);
        gens.push_back(m);
    }
    return GroupActionSpec::make(
        1, LieBasis::fromGenerators(std::move(gens), Eigen::MatrixXd::Identity(3, 3)));
}

QuatVector point2(const Quaternion& a, const Quaternion& b) {
    QuatVector q(2);
    q[0] = a;
    q[1] = b;
    return q;
}

QuatVector randomPoint(Rng& rng, int d) {
    QuatVector q(d);
    for (int i = 0; i < d; ++i)
        q[i] = {rng.gaussian(), rng.gaussian(), rng.gaussian(), rng.gaussian()};
    return q;
}

}  // namespace

TEST_CASE("catalog specs satisfy the structural requirements") {
    for (const auto* id : {"eguchi-hanson", "tp1xtp1", "hopf-kahler"}) {
        QuotientExample ex = loadQuotientExample(id);
        CHECK(ex.spec.generatorDefect() < 1e-12);
        CHECK(ex.spec.lie.closureDefect < 1e-10);
    }
    CHECK(sp1Spec().lie.closureDefect < 1e-10);
}

TEST_CASE("fundamental field") {
    QuotientExample eh = loadQuotientExample("eguchi-hanson");
    QuatVector q = point2({1, 0, 0, 0}, {0, 0, 0, 0});
    QuatVector f = fundamentalField(eh.spec, Eigen::VectorXd::Ones(1), q);
    CHECK((f[0] - Quaternion::unit(1)).norm() < 1e-15);
    CHECK(f[1].norm() == 0.0);

    QuatVector zero(2);
    QuatVector fz = fundamentalField(eh.spec, Eigen::VectorXd::Ones(1), zero);
    CHECK(norm(fz) == 0.0);

    // skewness of the pairing with the rotated field holds pointwise
    Rng rng(9);
    double worst = 0;
    for (int t = 0; t < 100; ++t) {
        QuatVector p = randomPoint(rng, 2);
        QuatVector rf = fundamentalField(eh.spec, Eigen::VectorXd::Ones(1), p);
        worst = std::max(worst, std::abs(eh.spec.gdot(rf, applyCx(Cx::I1, rf))));
    }
    CHECK(worst < 1e-12);

    Eigen::VectorXd wrongSize = Eigen::VectorXd::Ones(2);
    CHECK_THROWS_AS(fundamentalField(eh.spec, wrongSize, q), Error);
}

TEST_CASE("moment map on the unit of the scalar quaternionic line") {
    GroupActionSpec sp1 = sp1Spec();
    QuatVector q(1);
    q[0] = {1, 0, 0, 0};
    MomentValue mu = moment(sp1, q);
    // components of (i, j, k) in the basis (i, j, k)
    for (int i = 0; i < 3; ++i)
        for (int a = 0; a < 3; ++a)
            CHECK(mu.comp[i][a] == doctest::Approx(i == a ? 1.0 : 0.0).epsilon(1e-13));
}

TEST_CASE("moment map golden value for the diagonal circle") {
    QuotientExample eh = loadQuotientExample("eguchi-hanson");
    QuatVector q = point2({1, 0, 0, 0}, {0, 0, 0, 0});
    MomentValue mu = moment(eh.spec, q);

    // independent quaternion-arithmetic evaluation: project q i q^dagger
    // onto the generator by the trace pairing, entry by entry
    const Quaternion i = Quaternion::unit(1);
    double pairing = 0.0, gramDiag = 0.0;
    for (int l = 0; l < 2; ++l) {
        Quaternion qi = q[l] * i * q[l].conj();               // (q i q+)_{ll}
        Quaternion gen = eh.spec.lie.generators[0](l, l);     // i on the diagonal
        pairing += 0.5 * qdot(qi, gen);
        gramDiag += 0.5 * qdot(gen, gen);
    }
    const double expected = pairing / gramDiag;
    CHECK(expected == doctest::Approx(0.5));
    CHECK(mu.comp[0][0] == doctest::Approx(expected).epsilon(1e-14));
    CHECK(std::abs(mu.comp[1][0]) < 1e-14);
    CHECK(std::abs(mu.comp[2][0]) < 1e-14);

    MomentValue muZero = moment(eh.spec, QuatVector(2));
    CHECK(momentDistance(eh.spec, muZero, MomentValue::zero(3, 1)) == doctest::Approx(0.0));
}

TEST_CASE("moment map equivariance") {
    GroupActionSpec sp1 = sp1Spec();
    Rng rng(31);
    double worst = 0;
    for (int t = 0; t < 100; ++t) {
        QuatVector q = randomPoint(rng, 1);
        Eigen::VectorXd xi = rng.gaussianVector(3);
        QuatMatrix g = expm(sp1.lie.element(xi));
        QuatVector gq = g * q;
        MomentValue before = moment(sp1, q);
        MomentValue after = moment(sp1, gq);
        MomentValue moved = before;
        for (auto& comp : moved.comp) comp = adjointAction(sp1, g, comp);
        worst = std::max(worst, momentDistance(sp1, after, moved));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("moment derivative identity by central differences") {
    GroupActionSpec sp1 = sp1Spec();
    QuotientExample eh = loadQuotientExample("eguchi-hanson");
    Rng rng(13);
    const double h = 1e-5;
    double worst = 0;
    auto check = [&](const GroupActionSpec& spec, const QuatVector& q, const QuatVector& v) {
        const int n = spec.dimG();
        for (int sIdx = 0; sIdx < spec.nStructures(); ++sIdx) {
            Cx s = spec.structures()[sIdx];
            for (int a = 0; a < n; ++a) {
                Eigen::VectorXd rho = Eigen::VectorXd::Unit(n, a);
                MomentValue plus = moment(spec, q + h * v);
                MomentValue minus = moment(spec, q + (-h) * v);
                const double fd =
                    (momentApply(spec, plus.comp[sIdx], rho) -
                     momentApply(spec, minus.comp[sIdx], rho)) /
                    (2 * h);
                const double exact =
                    spec.gdot(v, applyCx(s, spec.fundamental(a, q)));
                worst = std::max(worst, std::abs(fd - exact));
            }
        }
    };
    for (int t = 0; t < 20; ++t) {
        check(sp1, randomPoint(rng, 1), randomPoint(rng, 1));
        check(eh.spec, randomPoint(rng, 2), randomPoint(rng, 2));
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("lambda form") {
    QuotientExample eh = loadQuotientExample("eguchi-hanson");
    LevelSetPoint p = randomLevelSetPoint(eh.spec, eh.level, 7);

    SUBCASE("vanishes on horizontal vectors") {
        for (const auto& hvec : p.horizontalBasis)
            CHECK(lambdaForm(eh.spec, p.q, hvec).lpNorm<Eigen::Infinity>() < 1e-10);
    }
    SUBCASE("gram row on fundamental fields") {
        QuatVector rf = eh.spec.fundamental(0, p.q);
        Eigen::VectorXd lam = lambdaForm(eh.spec, p.q, rf);
        CHECK(lam[0] == doctest::Approx(eh.spec.gdot(rf, rf)));
    }
    SUBCASE("matches the rotated moment differentials by central differences") {
        Rng rng(3);
        const double h = 1e-5;
        double worst = 0;
        for (int t = 0; t < 10; ++t) {
            QuatVector v = randomPoint(rng, 2);
            Eigen::VectorXd lam = lambdaForm(eh.spec, p.q, v);
            for (int sIdx = 0; sIdx < 3; ++sIdx) {
                Cx s = eh.spec.structures()[sIdx];
                QuatVector dir = applyCx(s, v);
                MomentValue plus = moment(eh.spec, p.q + h * dir);
                MomentValue minus = moment(eh.spec, p.q + (-h) * dir);
                for (int a = 0; a < 1; ++a) {
                    Eigen::VectorXd rho = Eigen::VectorXd::Unit(1, a);
                    const double fd = (momentApply(eh.spec, plus.comp[sIdx], rho) -
                                       momentApply(eh.spec, minus.comp[sIdx], rho)) /
                                      (2 * h);
                    worst = std::max(worst, std::abs(fd - lam[a]));
                }
            }
        }
        CHECK(worst < 1e-6);
    }
}

TEST_CASE("local freeness") {
    QuotientExample eh = loadQuotientExample("eguchi-hanson");
    QuatVector q = point2({1, 0, 0, 0}, {0, 0, 0, 0});
    FreenessReport fr = localFreeness(eh.spec, q);
    CHECK(fr.status == FreenessStatus::LocallyFree);
    CHECK(fr.sigmaMin == doctest::Approx(1.0));

    FreenessReport fz = localFreeness(eh.spec, QuatVector(2));
    CHECK(fz.status == FreenessStatus::Degenerate);
    CHECK(fz.sigmaMin == doctest::Approx(0.0));

    GroupActionSpec sp1 = sp1Spec();
    Rng rng(5);
    QuatVector base = randomPoint(rng, 1);
    const double n0 = localFreeness(sp1, base).sigmaMin;
    for (double R : {2.0, 4.0}) {
        QuatVector scaled = base;
        scaled *= R;
        CHECK(localFreeness(sp1, scaled).sigmaMin == doctest::Approx(R * n0).epsilon(1e-12));
    }
}

TEST_CASE("projection to the level set") {
    QuotientExample eh = loadQuotientExample("eguchi-hanson");

    SUBCASE("a point already on the level is a fixed point") {
        QuatVector q = point2({1, 0, 0, 0}, {0, 0, 0, 0});  // moment (0.5, 0, 0)
        LevelSetPoint p = projectToLevel(eh.spec, q, eh.level);
        CHECK(p.newtonIterations == 0);
        CHECK(norm(p.q - q) == doctest::Approx(0.0));
        CHECK(p.residual <= momentDistance(eh.spec, moment(eh.spec, q), eh.level) + 1e-15);
    }
    SUBCASE("random unit start converges quickly") {
        Rng rng(1007);  // recorded seed
        Eigen::VectorXd v = rng.gaussianVector(8);
        v.normalize();
        LevelSetPoint p = projectToLevel(eh.spec, QuatVector::fromReal(v), eh.level);
        CHECK(p.residual < 1e-12);
        CHECK(p.newtonIterations <= 30);
    }
    SUBCASE("the origin is a degenerate start") {
        CHECK_THROWS_AS(projectToLevel(eh.spec, QuatVector(2), eh.level),
                        DegenerateActionError);
    }
    SUBCASE("a non-invariant level is rejected") {
        GroupActionSpec sp1 = sp1Spec();
        MomentValue c = MomentValue::zero(3, 3);
        c.comp[0][0] = 1.0;  // not fixed by the coadjoint action
        Rng rng(2);
        CHECK_THROWS_AS(projectToLevel(sp1, randomPoint(rng, 1), c),
                        NonInvariantLevelError);
    }
}

TEST_CASE("splitting structure at level-set points") {
    QuotientExample eh = loadQuotientExample("eguchi-hanson");
    for (std::uint64_t seed : {11u, 12u, 13u}) {
        LevelSetPoint p = randomLevelSetPoint(eh.spec, eh.level, seed);
        CHECK(p.splittingOrthogonalityDefect() < 1e-10);
        CHECK(p.horizontalDim() == 4 * 2 - 4 * 1);
        CHECK(static_cast<int>(p.gaugeBasis.size()) == 1);
        CHECK(static_cast<int>(p.structureBasis.size()) == 3);
    }
    QuotientExample tp = loadQuotientExample("tp1xtp1");
    LevelSetPoint p = randomLevelSetPoint(tp.spec, tp.level, 21);
    CHECK(p.horizontalDim() == 4 * 4 - 4 * 2);
    CHECK(p.splittingOrthogonalityDefect() < 1e-10);
}

TEST_CASE("Kahler-mode splitting") {
    QuotientExample hopf = loadQuotientExample("hopf-kahler");
    LevelSetPoint p = randomLevelSetPoint(hopf.spec, hopf.level, 5);
    CHECK(p.residual < 1e-12);
    CHECK(p.horizontalDim() == 4 * 1 - 2 * 1);
    CHECK(static_cast<int>(p.structureBasis.size()) == 1);
    CHECK(p.splittingOrthogonalityDefect() < 1e-10);
    // the level fixes the sphere radius
    CHECK(norm(p.q) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("equivariance along the circle orbit on the level set") {
    QuotientExample eh = loadQuotientExample("eguchi-hanson");
    LevelSetPoint p = randomLevelSetPoint(eh.spec, eh.level, 77);
    Rng rng(78);
    double worst = 0;
    for (int t = 0; t < 100; ++t) {
        const double theta = 6.0 * rng.uniform() - 3.0;
        QuatMatrix g = expm(theta * eh.spec.lie.generators[0]);
        MomentValue after = moment(eh.spec, g * p.q);
        worst = std::max(worst, momentDistance(eh.spec, after, p.target));
    }
    CHECK(worst < 1e-10);
}
