#include "fourbody/orbits.hpp"

#include "conic.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace fourbody;
using namespace fourbody::orbits;

namespace {

constexpr double kPi = std::numbers::pi;

double max_shape_error(const CentralConfig& c, const std::vector<OrbitSample>& samples) {
    double worst = 0.0;
    for (const auto& s : samples) {
        const auto d = geometry::distances_of(s.positions);
        const double k = d.r[0] / c.distances.r[0];
        for (std::size_t p = 1; p < 6; ++p) worst = std::max(worst, std::abs(d.r[p] / c.distances.r[p] / k - 1.0));
    }
    return worst;
}

}  // namespace

TEST(Kepler, Examples) {
    EXPECT_EQ(kepler_solve(1.3, 0.0), 1.3);
    EXPECT_EQ(kepler_solve(kPi, 0.72), kPi);
    const double e = kepler_solve(1.0, 0.72);
    EXPECT_LT(std::abs(e - 0.72 * std::sin(e) - 1.0), 1e-14);
}

TEST(Kepler, BisectionOracle) {
    for (double e : {0.1, 0.5, 0.72, 0.95, 0.999}) {
        for (double m : {0.01, 0.5, 1.0, 2.0, 3.0, 5.5, -2.0, 40.0}) {
            const double mm = std::remainder(m, 2 * kPi);
            double lo = -kPi, hi = kPi;
            for (int i = 0; i < 200; ++i) {
                const double mid = 0.5 * (lo + hi);
                (mid - e * std::sin(mid) - mm < 0 ? lo : hi) = mid;
            }
            const double got = kepler_solve(m, e);
            EXPECT_NEAR(std::remainder(got - 0.5 * (lo + hi), 2 * kPi), 0.0, 1e-13) << e << " " << m;
            EXPECT_LT(std::abs(got - e * std::sin(got) - m), 1e-13 * std::max(1.0, std::abs(m)));
        }
    }
}

TEST(Kepler, Errors) {
    EXPECT_THROW(kepler_solve(1.0, 1.0), Error);
    EXPECT_THROW(kepler_solve(NAN, 0.5), Error);
}

TEST(Orbit, CircularKeepsDistances) {
    const auto c = solve({{5, 6, 4, -8}});
    const auto samples = generate_orbit(c, {0.0, 90, 1.0, false});
    ASSERT_EQ(samples.size(), 90u);
    for (const auto& s : samples) {
        const auto d = geometry::distances_of(s.positions);
        for (std::size_t p = 0; p < 6; ++p) EXPECT_NEAR(d.r[p], c.distances.r[p], 1e-12);
    }
}

TEST(Orbit, StartsAtSolvedConfiguration) {
    const auto c = solve({{15, -6, 3, -4}});
    const auto s = generate_orbit(c, {0.72, 10, 1.0, false});
    for (std::size_t j = 0; j < 4; ++j) {
        EXPECT_NEAR(s[0].positions[j].x, c.coords[j].x, 1e-15);
        EXPECT_NEAR(s[0].positions[j].y, c.coords[j].y, 1e-15);
    }
}

TEST(Orbit, ShapeAndCenterOfMass) {
    for (const auto& w : {WeightedAreas{{5, 6, 4, -8}}, WeightedAreas{{15, -6, 3, -4}}}) {
        const auto c = solve(w);
        const auto samples = generate_orbit(c, {0.72, 360, 2.0, false});
        ASSERT_EQ(samples.size(), 720u);
        EXPECT_LT(max_shape_error(c, samples), 1e-10);
        for (const auto& s : samples) {
            const auto com = geometry::weighted_center(s.positions, c.masses);
            EXPECT_LT(norm(com), 1e-12);
        }
    }
}

TEST(Orbit, ScaleFactorRange) {
    const auto c = solve({{5, 6, 4, -8}});
    const double e = 0.72;
    const auto k = kepler_elements(c, e);
    EXPECT_NEAR(k.semi_major * (1 - e), 1.0, 1e-15);
    double lo = 1e300, hi = 0;
    int turns = 0;
    double prev = std::abs(kepler_factor(k, 0.0));
    bool rising = true;
    const int n = 4000;
    for (int i = 1; i <= n; ++i) {
        const double r = std::abs(kepler_factor(k, k.period * i / n));
        lo = std::min(lo, r);
        hi = std::max(hi, r);
        if (rising && r < prev) {
            rising = false;
            ++turns;
        } else if (!rising && r > prev) {
            rising = true;
        }
        prev = r;
    }
    EXPECT_NEAR(lo, (1 - e) * k.semi_major, 1e-12);
    EXPECT_NEAR(hi, (1 + e) * k.semi_major, 1e-6);
    EXPECT_EQ(turns, 1);
}

TEST(Orbit, ConicFitRecoversEccentricityAndFocus) {
    const auto c = solve({{5, 6, 4, -8}});
    const auto samples = generate_orbit(c, {0.72, 360, 1.0, false});
    for (std::size_t j = 0; j < 4; ++j) {
        std::vector<Point2> path;
        for (const auto& s : samples) path.push_back(s.positions[j]);
        const auto fit = support::fit_conic(path);
        EXPECT_NEAR(fit.eccentricity, 0.72, 1e-6) << j;
        EXPECT_LT(support::focus_offset(fit), 1e-9) << j;
    }
}

TEST(Orbit, MirrorReflects) {
    const auto c = solve({{15, -6, 3, -4}});
    const auto a = generate_orbit(c, {0.3, 40, 1.0, false});
    const auto b = generate_orbit(c, {0.3, 40, 1.0, true});
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            EXPECT_EQ(a[i].positions[j].x, b[i].positions[j].x);
            EXPECT_EQ(a[i].positions[j].y, -b[i].positions[j].y);
        }
}

TEST(Orbit, SampleCountFollowsPeriods) {
    const auto c = solve({{1, 1, 1, -1}});
    EXPECT_EQ(generate_orbit(c, {0.5, 100, 2.5, false}).size(), 250u);
    const auto s = generate_orbit(c, {0.5, 100, 1.0, false});
    EXPECT_NEAR(s[1].time - s[0].time, kepler_elements(c, 0.5).period / 100, 1e-15);
}

TEST(Orbit, Errors) {
    const auto c = solve({{1, 1, 1, -1}});
    EXPECT_THROW(generate_orbit(c, {1.0, 10, 1.0, false}), Error);
    EXPECT_THROW(generate_orbit(c, {0.5, 1, 1.0, false}), Error);
    EXPECT_THROW(generate_orbit(c, {0.5, 10, 0.0, false}), Error);
    auto bad = c;
    bad.masses[0] *= 1.1;
    try {
        generate_orbit(bad, {});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidConfig);
    }
}

TEST(Orbit, SatisfiesNewtonianDynamics) {
    for (const auto& w : {WeightedAreas{{5, 6, 4, -8}}, WeightedAreas{{15, -6, 3, -4}}}) {
        const auto c = solve(w);
        const auto k = kepler_elements(c, 0.72);
        const double h = k.period / 1e5;
        double worst = 0;
        for (int i = 0; i < 50; ++i) {
            const double t = k.period * (i + 0.37) / 50;
            const auto xm = positions_at(c, k, t - h), x0 = positions_at(c, k, t), xp = positions_at(c, k, t + h);
            const auto acc = newton_accelerations(x0, c.masses);
            for (std::size_t j = 0; j < 4; ++j) {
                const Point2 fd = (1.0 / (h * h)) * (xp[j] - 2.0 * x0[j] + xm[j]);
                worst = std::max(worst, norm(fd - acc[j]) / norm(acc[j]));
            }
        }
        EXPECT_LT(worst, 1e-5);
    }
}
