#include "fourbody/fourbody.hpp"

#include "cli_runner.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace fourbody;
using fourbody::support::csv_rows;
using fourbody::support::run_cli;
using nlohmann::json;

namespace {

std::size_t column(const std::vector<std::string>& header, const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    ADD_FAILURE() << "no column " << name;
    return 0;
}

}  // namespace

TEST(CliSolve, FigureOneRecord) {
    const auto r = run_cli("solve --areas 5,6,4,-8 --json");
    ASSERT_EQ(r.status, 0);
    const auto rec = record::parse_record(r.out);
    EXPECT_EQ(rec.config.classification.hull, Hull::Concave);
    EXPECT_LT(rec.config.diagnostics.max(), 1e-9);
    EXPECT_EQ(rec.config, solve({{5, 6, 4, -8}}));
}

TEST(CliSolve, EquilateralRatio) {
    const auto r = run_cli("solve --areas 1,1,1,-1 --json");
    ASSERT_EQ(r.status, 0);
    const auto d = json::parse(r.out).at("outputs").at("distances");
    EXPECT_NEAR(d.at("r12").get<double>() / d.at("r14").get<double>(), std::numbers::sqrt3, 1e-9);
}

TEST(CliSolve, TableOutput) {
    const auto r = run_cli("solve --areas 15,-6,3,-4");
    ASSERT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("hull"), std::string::npos);
    EXPECT_NE(r.out.find("Convex"), std::string::npos);
    EXPECT_NE(r.out.find("central_eq"), std::string::npos);
}

TEST(CliSolve, ExitCodes) {
    const auto same = run_cli("solve --areas 1,1,1,1");
    EXPECT_EQ(same.status, 1);
    EXPECT_EQ(json::parse(same.out).at("error").at("code"), "AllSameSign");

    const auto none = run_cli("solve --areas 1,0.05,1,-1 --json");
    EXPECT_EQ(none.status, 1);
    EXPECT_EQ(json::parse(none.out).at("error").at("code"), "NoRoot");

    EXPECT_EQ(run_cli("solve --areas 1,2,3").status, 2);
    EXPECT_EQ(run_cli("solve --areas 1,x,3,4").status, 2);
    EXPECT_EQ(run_cli("solve").status, 2);
    EXPECT_EQ(run_cli("frobnicate").status, 2);
    EXPECT_EQ(run_cli("--help").status, 0);
}

TEST(CliSolve, WritesOutFile) {
    const auto path = support::temp_file("solve.json");
    ASSERT_EQ(run_cli("solve --areas 15,-6,3,-4 --json --out " + path.string()).status, 0);
    const auto rec = record::parse_record(support::slurp(path));
    EXPECT_EQ(rec.config.classification.hull, Hull::Convex);
    std::filesystem::remove(path);
}

TEST(CliClassify, Json) {
    const auto r = run_cli("classify --areas 1,1,1,-1 --json");
    ASSERT_EQ(r.status, 0);
    const auto j = json::parse(r.out);
    EXPECT_EQ(j.at("hull"), "Concave");
    EXPECT_EQ(j.at("solution_checks").at("equilateral_center"), true);
    EXPECT_EQ(j.at("solution_checks").at("ordering"), true);
    EXPECT_EQ(run_cli("classify --areas 1,1,1,1").status, 1);
}

TEST(CliVerify, FreshAndCorrupted) {
    const auto path = support::temp_file("verify.json");
    ASSERT_EQ(run_cli("solve --areas 5,6,4,-8 --json --out " + path.string()).status, 0);
    const auto good = run_cli("verify " + path.string());
    EXPECT_EQ(good.status, 0);
    EXPECT_EQ(json::parse(good.out).at("ok"), true);

    auto j = json::parse(support::slurp(path));
    j["outputs"]["coordinates"][1][0] = j["outputs"]["coordinates"][1][0].get<double>() * 1.01;
    std::ofstream(path) << j.dump();
    const auto bad = run_cli("verify " + path.string());
    EXPECT_EQ(bad.status, 1);
    const auto failed = json::parse(bad.out).at("failed");
    EXPECT_NE(std::find(failed.begin(), failed.end(), "central_eq"), failed.end());

    std::ofstream(path) << "{ not a record";
    EXPECT_EQ(run_cli("verify " + path.string()).status, 2);
    std::filesystem::remove(path);
}

TEST(CliVerify, CorruptedDistanceFlagged) {
    const auto path = support::temp_file("verify_d.json");
    ASSERT_EQ(run_cli("solve --areas 15,-6,3,-4 --json --out " + path.string()).status, 0);
    auto j = json::parse(support::slurp(path));
    j["outputs"]["distances"]["r13"] = j["outputs"]["distances"]["r13"].get<double>() * 1.01;
    std::ofstream(path) << j.dump();
    const auto r = run_cli("verify " + path.string());
    EXPECT_EQ(r.status, 1);
    EXPECT_EQ(json::parse(r.out).at("ok"), false);
    std::filesystem::remove(path);
}

TEST(CliSweep, EulerBoundaryFlipsStatus) {
    const auto r = run_cli("sweep --areas 1,1,1,-1 --vary a2 --from 1.0 --to 0.05 --step 0.05");
    ASSERT_EQ(r.status, 0);
    const auto rows = csv_rows(r.out);
    ASSERT_EQ(rows.size(), 21u);
    const auto& h = rows[0];
    const auto st = column(h, "status"), m2 = column(h, "m2"), a2 = column(h, "a2");
    const double bound = limits::euler_convex_limit(1, -1).aux.at("x");
    double prev_m2 = 1e300;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double v = std::stod(rows[i][a2]);
        if (v > bound) {
            ASSERT_EQ(rows[i][st], "OK") << v;
            const double m = std::stod(rows[i][m2]);
            EXPECT_LT(m, prev_m2);
            prev_m2 = m;
        } else {
            EXPECT_EQ(rows[i][st], "NoRoot") << v;
            EXPECT_EQ(rows[i][m2], "");
        }
    }
}

TEST(CliSweep, LagrangeConcaveUpward) {
    const auto r = run_cli("sweep --areas 1,1,1,-1 --vary a2 --from 1 --to 1e4 --count 5 --log");
    ASSERT_EQ(r.status, 0);
    const auto rows = csv_rows(r.out);
    ASSERT_EQ(rows.size(), 6u);
    const auto r14 = column(rows[0], "r14"), m2 = column(rows[0], "m2");
    EXPECT_NEAR(std::stod(rows.back()[r14]), 1.0, 1e-3);
    EXPECT_LT(std::stod(rows.back()[m2]), std::stod(rows[1][m2]));
}

TEST(CliSweep, LagrangeConvexProduct) {
    const auto r = run_cli("sweep --areas 1,-1,1,-1 --vary a4 --from -1e2 --to -1e5 --count 4 --log");
    ASSERT_EQ(r.status, 0);
    const auto rows = csv_rows(r.out);
    const auto col = column(rows[0], "lambda_x_vary");
    const double target = limits::lagrange_convex_limit(1, -1).lambda_or_product;
    EXPECT_NEAR(std::stod(rows.back()[col]), target, 1e-4);
    EXPECT_LT(std::abs(std::stod(rows.back()[col]) - target), std::abs(std::stod(rows[1][col]) - target));
}

TEST(CliSweep, UsageErrors) {
    EXPECT_EQ(run_cli("sweep --areas 1,1,1,-1 --vary a5 --from 1 --to 2 --step 0.1").status, 2);
    EXPECT_EQ(run_cli("sweep --areas 1,1,1,-1 --vary a2 --from 1 --to 2").status, 2);
}

TEST(CliLimit, Maxwell) {
    const auto r = run_cli("limit maxwell --json");
    ASSERT_EQ(r.status, 0);
    const auto aux = json::parse(r.out).at("aux");
    EXPECT_NEAR(aux.at("theta1").get<double>(), 0.826602936080376, 1e-12);
    EXPECT_NEAR(aux.at("theta2").get<double>(), 2.4219145305912, 1e-11);
}

TEST(CliLimit, EulerConvex) {
    const auto r = run_cli("limit euler-convex --a1 1 --a4 -1e9 --json");
    ASSERT_EQ(r.status, 0);
    EXPECT_NEAR(json::parse(r.out).at("aux").at("x").get<double>(), 0.077085817, 1e-6);
}

TEST(CliLimit, CoorbitalEqualMasses) {
    const auto r = run_cli("limit coorbital --a1 1 --equal-masses --branch convex --json");
    ASSERT_EQ(r.status, 0);
    EXPECT_NEAR(json::parse(r.out).at("aux").at("theta").get<double>(), 0.826602936080376, 1e-9);
    const auto c = run_cli("limit coorbital --a1 1 --equal-masses --branch concave --json");
    EXPECT_NEAR(json::parse(c.out).at("aux").at("theta").get<double>(), 2.4219145305912, 1e-9);
    EXPECT_EQ(run_cli("limit coorbital --a1 1 --a2 0.5 --json").status, 1);
    EXPECT_EQ(run_cli("limit coorbital --a1 1").status, 2);
}

TEST(CliLimit, General) {
    EXPECT_EQ(run_cli("limit general-lagrange --retained 1,1,-1 --index 2 --sign 1").status, 0);
    EXPECT_EQ(run_cli("limit general-euler --trio 1,1,-1 --index 2").status, 0);
    EXPECT_EQ(run_cli("limit general-coorbital --satellites 1,-1,1 --index 4 --sign -1").status, 0);
    EXPECT_EQ(run_cli("limit general-euler --trio 1,1,-1 --index 7").status, 2);
}

TEST(CliOrbit, FigureRowsAndCircular) {
    const auto r = run_cli("orbit --areas 5,6,4,-8 --ecc 0.72 --samples 360 --periods 1");
    ASSERT_EQ(r.status, 0);
    EXPECT_EQ(csv_rows(r.out).size(), 361u);
    EXPECT_NE(r.out.find("# eccentricity"), std::string::npos);

    const auto c = run_cli("orbit --areas 15,-6,3,-4 --ecc 0 --samples 36");
    ASSERT_EQ(c.status, 0);
    const auto rows = csv_rows(c.out);
    ASSERT_EQ(rows.size(), 37u);
    std::optional<DistanceSet> first;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        std::array<Point2, 4> p{};
        for (std::size_t j = 0; j < 4; ++j) p[j] = {std::stod(rows[i][1 + 2 * j]), std::stod(rows[i][2 + 2 * j])};
        const auto d = geometry::distances_of(p);
        if (!first) first = d;
        for (std::size_t k = 0; k < 6; ++k) EXPECT_NEAR(d.r[k], first->r[k], 1e-12);
    }
    EXPECT_EQ(run_cli("orbit --areas 1,1,1,-1 --ecc 1.5").status, 1);
}
