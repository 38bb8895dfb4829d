#include "hkq/runner.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>

namespace hkq {

namespace {

nlohmann::json configEcho(std::initializer_list<std::pair<std::string, nlohmann::json>> kv) {
    nlohmann::json j;
    for (const auto& [k, v] : kv) j[k] = v;
    return j;
}

void accumulateMin(double& slot, double value) { slot = std::min(slot, value); }

}  // namespace

QuotientExample parseInlineQuotient(const nlohmann::json& j) {
    const int d = j.at("d").get<int>();
    QuotientMode mode = QuotientMode::Hyperkahler;
    if (j.contains("mode")) {
        const std::string m = j.at("mode").get<std::string>();
        if (m == "kahler")
            mode = QuotientMode::Kahler;
        else if (m != "hyperkahler")
            throw Error("inline spec: unknown mode " + m);
    }
    std::vector<QuatMatrix> gens;
    for (const auto& gj : j.at("generators")) {
        QuatMatrix m(d, d);
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) {
                const auto& q = gj.at(r).at(c);
                m(r, c) = {q.at(0).get<double>(), q.at(1).get<double>(), q.at(2).get<double>(),
                           q.at(3).get<double>()};
            }
        gens.push_back(std::move(m));
    }
    const int n = static_cast<int>(gens.size());
    Eigen::MatrixXd ip = Eigen::MatrixXd::Identity(n, n);
    if (j.contains("innerProduct")) {
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) ip(r, c) = j.at("innerProduct").at(r).at(c).get<double>();
    }
    QuotientExample ex;
    ex.spec = GroupActionSpec::make(d, LieBasis::fromGenerators(std::move(gens), std::move(ip)),
                                    mode);
    ex.level = MomentValue::zero(ex.spec.nStructures(), n);
    const auto& lv = j.at("level");
    for (int i = 0; i < ex.spec.nStructures(); ++i)
        for (int a = 0; a < n; ++a) ex.level.comp[i][a] = lv.at(i).at(a).get<double>();
    ex.fullScaleMask.assign(d, true);
    return ex;
}

NahmConfig parseInlineNahm(const nlohmann::json& j) {
    const double a = j.at("a").get<double>();
    const double b = j.at("b").get<double>();
    const int gridN = j.value("grid", 64);
    std::array<Eigen::Vector3d, 3> alpha, beta;
    for (int i = 0; i < 3; ++i)
        for (int c = 0; c < 3; ++c) {
            alpha[i][c] = j.at("alpha").at(i).at(c).get<double>();
            beta[i][c] = j.at("beta").at(i).at(c).get<double>();
        }
    return NahmConfig::make(a, b, alpha, beta, gridN);
}

CommandResult runQuotientVerify(const QuotientExample& ex, const std::string& exampleId,
                                int points, int planes, std::uint64_t seed, double slack) {
    CommandResult res;
    const bool kahler = ex.spec.mode == QuotientMode::Kahler;

    double minKMargin = std::numeric_limits<double>::infinity();
    double minOneill = std::numeric_limits<double>::infinity();
    double minVlfMetric = minKMargin, minVlfEuclid = minKMargin;
    double minVC = minKMargin, minLM = minKMargin, minLower = minKMargin;

    nlohmann::json pointReports = nlohmann::json::array();
    std::vector<SampleRow> rows;
    for (int pt = 0; pt < points; ++pt) {
        LevelSetPoint p = randomLevelSetPoint(ex.spec, ex.level, seed + 811 * pt);
        BoundsReport br = verifyBounds(p, planes, seed + 811 * pt + 13, slack);
        EstimatorReport em = estimate(p, NormChoice::MetricNorm, 32, seed + 811 * pt + 29);
        EstimatorReport ee = estimate(p, NormChoice::FixedEuclidean, 32, seed + 811 * pt + 31);

        accumulateMin(minKMargin, br.worstMargin);
        accumulateMin(minOneill, br.worstOneill);
        accumulateMin(minVlfMetric, em.l * em.F - em.V);
        accumulateMin(minVlfEuclid, ee.l * ee.F - ee.V);
        accumulateMin(minVC, em.Cnorm - em.V);
        accumulateMin(minLM, 1.0 - em.l);
        if (kahler) accumulateMin(minLower, br.bestK - 0.9 * br.V);

        nlohmann::json pj = {{"point", pt},
                             {"residual", p.residual},
                             {"newton_iterations", p.newtonIterations},
                             {"bounds", boundsToJson(br)},
                             {"estimators_metric", estimatorToJson(em)},
                             {"estimators_euclidean", estimatorToJson(ee)}};
        pointReports.push_back(pj);

        for (int pl = 0; pl < static_cast<int>(br.kValues.size()); ++pl) {
            SampleRow row;
            row.pointId = pt;
            row.planeId = pl;
            row.kQ = br.kValues[pl];
            row.v = br.V;
            row.f = em.F;
            row.l = em.l;
            row.cNorm = em.Cnorm;
            row.kBound = br.kBound;
            row.margin = br.kBound - std::abs(br.kValues[pl]);
            rows.push_back(row);
        }
    }

    std::vector<InequalityFlag> flags;
    auto addFlag = [&](const std::string& name, double margin) {
        flags.push_back({name, margin, slack, margin >= -slack});
    };
    addFlag(kahler ? "abs_k_le_5v2" : "abs_k_le_9v2", minKMargin);
    addFlag("oneill_term_nonnegative", minOneill);
    addFlag("v_le_lf_metric", minVlfMetric);
    addFlag("v_le_lf_euclidean", minVlfEuclid);
    addFlag("v_le_c_norm", minVC);
    addFlag("l_metric_le_one", minLM);
    if (kahler) addFlag("kahler_lower_certificate", minLower);

    nlohmann::json echo = configEcho({{"command", "quotient verify"},
                                      {"example", exampleId},
                                      {"points", points},
                                      {"planes", planes},
                                      {"seed", seed},
                                      {"slack", slack}});
    res.envelope = makeEnvelope(echo, {{"points", pointReports}}, flags);
    res.csv = samplesToCsv(rows);
    for (const auto& f : flags)
        if (!f.pass) res.exitCode = kExitViolation;
    return res;
}

CommandResult runQuotientCurvature(const QuotientExample& ex, const std::string& exampleId,
                                   int points, int planes, std::uint64_t seed) {
    CommandResult res;
    nlohmann::json pointReports = nlohmann::json::array();
    std::vector<SampleRow> rows;
    for (int pt = 0; pt < points; ++pt) {
        LevelSetPoint p = randomLevelSetPoint(ex.spec, ex.level, seed + 811 * pt);
        EstimatorReport em = estimate(p, NormChoice::MetricNorm, 32, seed + 811 * pt + 29);
        VNormReport v = vNorm(p, 32, seed + 811 * pt + 101);
        Rng rng(seed + 811 * pt + 13);
        nlohmann::json samples = nlohmann::json::array();
        for (int pl = 0; pl < planes; ++pl) {
            Eigen::VectorXd x, y;
            samplePlane(p, rng, x, y);
            CurvatureSample cs =
                sectionalCurvature(p, p.horizontalVector(x), p.horizontalVector(y));
            samples.push_back({{"plane", pl}, {"k_q", cs.kQ}, {"k_level_set", cs.kLevelSet}});
            SampleRow row;
            row.pointId = pt;
            row.planeId = pl;
            row.kQ = cs.kQ;
            row.v = v.value;
            row.f = em.F;
            row.l = em.l;
            row.cNorm = em.Cnorm;
            row.kBound = (ex.spec.mode == QuotientMode::Kahler ? 5.0 : 9.0) * v.value * v.value;
            row.margin = row.kBound - std::abs(cs.kQ);
            rows.push_back(row);
        }
        pointReports.push_back({{"point", pt},
                                {"residual", p.residual},
                                {"estimators_metric", estimatorToJson(em)},
                                {"samples", samples}});
    }
    nlohmann::json echo = configEcho({{"command", "quotient curvature"},
                                      {"example", exampleId},
                                      {"points", points},
                                      {"planes", planes},
                                      {"seed", seed}});
    res.envelope = makeEnvelope(echo, {{"points", pointReports}}, {});
    res.csv = samplesToCsv(rows);
    return res;
}

CommandResult runQuotientScan(const QuotientExample& ex, const std::string& exampleId,
                              const std::vector<double>& radii,
                              const std::vector<int>& scaleCoords, int planes,
                              std::uint64_t seed) {
    CommandResult res;
    std::vector<bool> mask(ex.spec.d, scaleCoords.empty());
    for (int idx : scaleCoords) {
        if (idx < 0 || idx >= ex.spec.d) throw Error("scan: scale coordinate out of range");
        mask[idx] = true;
    }
    LevelSetPoint base = randomLevelSetPoint(ex.spec, ex.level, seed);
    std::vector<ScanRow> table =
        asymptoticScan(ex.spec, base.q, ex.level, radii, mask, planes, seed + 5);

    std::vector<SampleRow> rows;
    for (int i = 0; i < static_cast<int>(table.size()); ++i) {
        SampleRow row;
        row.pointId = i;
        row.planeId = -1;
        row.kQ = table[i].maxAbsK;
        row.v = table[i].V;
        row.f = table[i].F;
        row.l = table[i].l;
        rows.push_back(row);
    }
    nlohmann::json echo = configEcho({{"command", "quotient scan"},
                                      {"example", exampleId},
                                      {"radii", radii},
                                      {"planes", planes},
                                      {"seed", seed}});
    res.envelope = makeEnvelope(echo, {{"scan", scanToJson(table)}}, {});
    res.csv = samplesToCsv(rows);
    return res;
}

CommandResult runNahmGreen(double a, double b, const std::string& lambdaKind, double kappa) {
    CommandResult res;
    GreenEval e;
    if (lambdaKind == "zero") {
        e = computeN(a, b, [](double) { return 0.0; });
    } else if (lambdaKind == "const") {
        e = computeN(a, b, [kappa](double) { return kappa; });
    } else if (lambdaKind == "axial") {
        e = computeN(makeAxialSolution(a, b));
    } else {
        throw Error("nahm green: unknown lambda kind " + lambdaKind);
    }
    std::vector<InequalityFlag> flags;
    if (lambdaKind == "zero") {
        const double gap = std::abs(e.N - (b - a) / 4.0);
        flags.push_back({"n_matches_flat_closed_form", 1e-8 - gap, 0.0, gap <= 1e-8});
    }
    nlohmann::json payload = {{"n", e.N},
                              {"sup_s", e.sStar},
                              {"sup_tau", e.tauStar},
                              {"wronskian_drift", e.wronskianDrift}};
    if (e.lambdaSamples.size() > 0) {
        nlohmann::json ls = nlohmann::json::array();
        for (int i = 0; i < e.lambdaSamples.size(); ++i) ls.push_back(e.lambdaSamples[i]);
        payload["lambda_samples"] = ls;
    }
    nlohmann::json echo = configEcho({{"command", "nahm green"},
                                      {"a", a},
                                      {"b", b},
                                      {"lambda", lambdaKind},
                                      {"kappa", kappa}});
    res.envelope = makeEnvelope(echo, payload, flags);
    res.csv = "quantity,value\nn," + formatDouble17(e.N) + "\n";
    for (const auto& f : flags)
        if (!f.pass) res.exitCode = kExitViolation;
    return res;
}

CommandResult runNahmBound(double a, double b, int gridSize) {
    CommandResult res;
    NahmSolution T = makeAxialSolution(a, b, gridSize);
    const double residual = nahmResidual(T);
    NahmBoundReport br = curvatureBound(T);

    std::vector<InequalityFlag> flags;
    auto addFlag = [&](const std::string& name, double margin, double slack) {
        flags.push_back({name, margin, slack, margin >= -slack});
    };
    addFlag("solution_residual_below_1e8", 1e-8 - residual, 0.0);
    addFlag("stated_below_coarse", br.coarseBound - br.statedBound, 0.0);
    addFlag("composed_below_coarse", br.coarseBound - br.composedBound, 0.0);
    addFlag("flat_profile_identity", 1e-12 - br.identityGap, 0.0);

    nlohmann::json payload = {{"residual", residual},
                              {"n", br.N},
                              {"stated_bound", br.statedBound},
                              {"composed_bound", br.composedBound},
                              {"coarse_bound", br.coarseBound},
                              {"identity_gap", br.identityGap},
                              {"lambda_min", br.lambdaMin},
                              {"lambda_max", br.lambdaMax}};
    nlohmann::json echo = configEcho(
        {{"command", "nahm bound"}, {"a", a}, {"b", b}, {"grid", gridSize}});
    res.envelope = makeEnvelope(echo, payload, flags);
    res.csv = "quantity,value\nn," + formatDouble17(br.N) + "\nstated," +
              formatDouble17(br.statedBound) + "\ncomposed," + formatDouble17(br.composedBound) +
              "\ncoarse," + formatDouble17(br.coarseBound) + "\n";
    for (const auto& f : flags)
        if (!f.pass) res.exitCode = kExitViolation;
    return res;
}

namespace {

std::string resolveOutDir(const std::string& flagValue) {
    if (!flagValue.empty()) return flagValue;
    if (const char* env = std::getenv("HKQ_OUTPUT_DIR")) return env;
    return ".";
}

void writeResult(const CommandResult& res, const std::string& outDir, const std::string& stem) {
    writeTextFile(outDir + "/" + stem + ".json", res.envelope.dump(2) + "\n");
    writeTextFile(outDir + "/" + stem + ".csv", res.csv);
    std::cout << res.envelope["payload"].dump(2) << "\n";
}

QuotientExample loadExampleOrConfig(const std::string& exampleId,
                                    const std::string& configPath) {
    if (!configPath.empty()) {
        std::ifstream in(configPath);
        if (!in) throw Error("cannot open config: " + configPath);
        nlohmann::json j;
        in >> j;
        return parseInlineQuotient(j.contains("spec") ? j.at("spec") : j);
    }
    return loadQuotientExample(exampleId);
}

}  // namespace

int runCommand(const std::vector<std::string>& args) {
    CLI::App app{"curvature estimators for hyperkahler and Kahler quotients"};
    app.require_subcommand(1);

    std::string example, configPath, outDir, lambdaKind = "zero", scaleCoordsCsv;
    int points = 20, planes = 1000, gridSize = 64;
    std::uint64_t seed = 0;
    double slack = 1e-8, a = 0.0, b = 1.0, kappa = 1.0;
    std::vector<double> radii = {2, 4, 8, 16};

    auto* quotient = app.add_subcommand("quotient", "level-set curvature pipelines");
    auto* verify = quotient->add_subcommand("verify", "inequality suite");
    auto* curvature = quotient->add_subcommand("curvature", "sampled curvature report");
    auto* scan = quotient->add_subcommand("scan", "asymptotic decay table");
    for (CLI::App* c : {verify, curvature, scan}) {
        c->add_option("--example", example, "catalog example id");
        c->add_option("--config", configPath, "inline spec JSON file");
        c->add_option("--seed", seed, "sampling seed")->required();
        c->add_option("--out", outDir, "output directory");
    }
    verify->add_option("--points", points, "level-set points");
    verify->add_option("--planes", planes, "planes per point");
    verify->add_option("--slack", slack, "inequality slack");
    curvature->add_option("--points", points, "level-set points");
    curvature->add_option("--planes", planes, "planes per point");
    scan->add_option("--radii", radii, "scan radii");
    scan->add_option("--planes", planes, "planes per radius");
    scan->add_option("--scale-coords", scaleCoordsCsv,
                     "comma list of quaternionic coordinates to scale (default all)");

    auto* nahm = app.add_subcommand("nahm", "interval moduli pipelines");
    auto* bound = nahm->add_subcommand("bound", "curvature bound pipeline");
    auto* green = nahm->add_subcommand("green", "kernel norm evaluation");
    for (CLI::App* c : {bound, green}) {
        c->add_option("--a", a, "left endpoint");
        c->add_option("--b", b, "right endpoint");
        c->add_option("--out", outDir, "output directory");
    }
    bound->add_option("--grid", gridSize, "grid size");
    green->add_option("--lambda", lambdaKind, "zero | const | axial");
    green->add_option("--kappa", kappa, "constant profile value");

    auto* catalog = app.add_subcommand("catalog", "example catalog");
    auto* list = catalog->add_subcommand("list", "list shipped examples");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitConfig;
    }

    try {
        const std::string dir = resolveOutDir(outDir);
        if (list->parsed()) {
            for (const auto& e : catalogList()) std::cout << e.id << "  " << e.description << "\n";
            return kExitOk;
        }
        if (verify->parsed() || curvature->parsed() || scan->parsed()) {
            QuotientExample ex;
            try {
                ex = loadExampleOrConfig(example, configPath);
            } catch (const UnknownExampleError& e) {
                std::cerr << e.what() << "\n";
                return kExitConfig;
            } catch (const nlohmann::json::exception& e) {
                std::cerr << "config parse error: " << e.what() << "\n";
                return kExitConfig;
            }
            CommandResult res;
            if (verify->parsed()) {
                res = runQuotientVerify(ex, example, points, planes, seed, slack);
                writeResult(res, dir, "quotient_verify");
            } else if (curvature->parsed()) {
                if (!curvature->count("--points")) points = 5;
                if (!curvature->count("--planes")) planes = 100;
                res = runQuotientCurvature(ex, example, points, planes, seed);
                writeResult(res, dir, "quotient_curvature");
            } else {
                if (!scan->count("--planes")) planes = 400;
                std::vector<int> coords;
                if (!scaleCoordsCsv.empty()) {
                    std::size_t pos = 0;
                    while (pos < scaleCoordsCsv.size()) {
                        std::size_t comma = scaleCoordsCsv.find(',', pos);
                        if (comma == std::string::npos) comma = scaleCoordsCsv.size();
                        coords.push_back(std::stoi(scaleCoordsCsv.substr(pos, comma - pos)));
                        pos = comma + 1;
                    }
                }
                res = runQuotientScan(ex, example, radii, coords, planes, seed);
                writeResult(res, dir, "quotient_scan");
            }
            return res.exitCode;
        }
        if (green->parsed()) {
            CommandResult res = runNahmGreen(a, b, lambdaKind, kappa);
            writeResult(res, dir, "nahm_green");
            return res.exitCode;
        }
        if (bound->parsed()) {
            CommandResult res = runNahmBound(a, b, gridSize);
            writeResult(res, dir, "nahm_bound");
            return res.exitCode;
        }
        std::cerr << "no command selected\n";
        return kExitConfig;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
}

}  // namespace hkq
