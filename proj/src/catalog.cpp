#include "hkq/catalog.hpp"

namespace hkq {

namespace {

QuatMatrix diagI(int d, const std::vector<int>& support) {
    QuatMatrix m(d, d);
    for (int idx : support) m(idx, idx) = Quaternion::unit(1);
    return m;
}

}  // namespace

std::vector<CatalogEntry> catalogList() {
    return {
        {"eguchi-hanson", "diagonal circle on H^2 at a nonzero level (ALE space)", false},
        {"tp1xtp1", "two circles on H^2 x H^2 acting separately on the factors", false},
        {"hopf-kahler", "scalar circle on C^2, Kahler reduction to the round sphere", false},
        {"nahm-axial", "axially symmetric interval solution with simple poles", true},
    };
}

bool catalogHas(const std::string& id) {
    for (const auto& e : catalogList())
        if (e.id == id) return true;
    return false;
}

GroupActionSpec eguchiHansonSpec(double metricScale2) {
    std::vector<QuatMatrix> gens = {diagI(2, {0, 1})};
    LieBasis lie = LieBasis::fromGenerators(std::move(gens), Eigen::MatrixXd::Identity(1, 1));
    return GroupActionSpec::make(2, std::move(lie), QuotientMode::Hyperkahler, metricScale2);
}

MomentValue eguchiHansonLevel(const GroupActionSpec& spec) {
    MomentValue c = MomentValue::zero(spec.nStructures(), spec.dimG());
    c.comp[0][0] = 0.5 * spec.metricScale2;
    return c;
}

GroupActionSpec tp1xtp1Spec() {
    std::vector<QuatMatrix> gens = {diagI(4, {0, 1}), diagI(4, {2, 3})};
    LieBasis lie = LieBasis::fromGenerators(std::move(gens), Eigen::MatrixXd::Identity(2, 2));
    return GroupActionSpec::make(4, std::move(lie), QuotientMode::Hyperkahler);
}

MomentValue tp1xtp1Level(const GroupActionSpec& spec) {
    MomentValue c = MomentValue::zero(spec.nStructures(), spec.dimG());
    c.comp[0][0] = 0.5;
    c.comp[0][1] = 0.5;
    return c;
}

GroupActionSpec hopfKahlerSpec() {
    std::vector<QuatMatrix> gens = {diagI(1, {0})};
    LieBasis lie = LieBasis::fromGenerators(std::move(gens), Eigen::MatrixXd::Identity(1, 1));
    return GroupActionSpec::make(1, std::move(lie), QuotientMode::Kahler);
}

MomentValue hopfKahlerLevel(const GroupActionSpec& spec) {
    MomentValue c = MomentValue::zero(spec.nStructures(), spec.dimG());
    c.comp[0][0] = -1.0;  // unit-sphere level
    return c;
}

NahmSolution nahmAxialDefault() { return makeAxialSolution(0.0, 1.0); }

QuotientExample loadQuotientExample(const std::string& id) {
    QuotientExample ex;
    if (id == "eguchi-hanson") {
        ex.spec = eguchiHansonSpec();
        ex.level = eguchiHansonLevel(ex.spec);
    } else if (id == "tp1xtp1") {
        ex.spec = tp1xtp1Spec();
        ex.level = tp1xtp1Level(ex.spec);
    } else if (id == "hopf-kahler") {
        ex.spec = hopfKahlerSpec();
        ex.level = hopfKahlerLevel(ex.spec);
    } else {
        throw UnknownExampleError("unknown catalog example: " + id);
    }
    ex.fullScaleMask.assign(ex.spec.d, true);
    return ex;
}

LevelSetPoint randomLevelSetPoint(const GroupActionSpec& spec, const MomentValue& level,
                                  std::uint64_t seed) {
    Rng rng(seed);
    for (int attempt = 0; attempt < 16; ++attempt) {
        Eigen::VectorXd v = rng.gaussianVector(spec.realDim());
        v.normalize();
        QuatVector q0 = QuatVector::fromReal(v);
        try {
            return projectToLevel(spec, q0, level);
        } catch (const DegenerateActionError&) {
            continue;
        } catch (const MaxIterationsError&) {
            continue;
        }
    }
    throw MaxIterationsError("randomLevelSetPoint: no admissible start found");
}

}  // namespace hkq
