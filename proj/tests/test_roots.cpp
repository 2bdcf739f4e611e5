#include "fourbody/roots.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace fourbody;
using namespace fourbody::roots;

TEST(Brent, Polynomial) {
    auto f = [](double x) { return x * x * x - 2.0 * x - 5.0; };
    const double r = brent(f, 2.0, 3.0, 1e-15);
    EXPECT_NEAR(r, 2.0945514815423265, 1e-14);
}

TEST(Brent, Transcendental) {
    auto f = [](double x) { return std::cos(x) - x; };
    EXPECT_NEAR(brent(f, 0.0, 1.0, 1e-16), 0.7390851332151607, 1e-15);
}

TEST(Brent, ExactEndpoint) {
    auto f = [](double x) { return x - 1.0; };
    EXPECT_EQ(brent(f, 1.0, 2.0, 1e-12), 1.0);
}

TEST(Brent, RejectsNonBracket) {
    auto f = [](double x) { return x * x + 1.0; };
    EXPECT_THROW(brent(f, -1.0, 1.0, 1e-12), Error);
}

TEST(Brent, SurvivesHoles) {
    // undefined left of 0.3; the root at 0.5 must still be found from [0.3, 1]
    auto f = [](double x) { return x < 0.3 ? std::nan("") : std::log(2.0 * x); };
    EXPECT_NEAR(brent(f, 0.3, 1.0, 1e-15), 0.5, 1e-14);
}

TEST(SignChanges, FindsEveryRoot) {
    auto f = [](double x) { return std::sin(x); };
    const auto b = sign_changes(f, 0.5, 10.0, 100);
    ASSERT_EQ(b.size(), 3u);
    EXPECT_NEAR(brent(f, b[0], 1e-15), std::numbers::pi, 1e-14);
    EXPECT_NEAR(brent(f, b[2], 1e-15), 3 * std::numbers::pi, 1e-14);
}

TEST(SignChanges, RootNextToHole) {
    // root at 0.5 + 1e-7 with the function undefined below 0.5: coarser than any grid cell
    auto f = [](double x) { return x < 0.5 ? std::nan("") : (x - 0.5 - 1e-7); };
    const auto b = sign_changes(f, 0.0, 1.0, 16);
    ASSERT_EQ(b.size(), 1u);
    EXPECT_NEAR(brent(f, b[0], 1e-16), 0.5 + 1e-7, 1e-14);
}

TEST(SignChanges, ExactZeroOnGrid) {
    auto f = [](double x) { return x - 0.25; };
    const auto b = sign_changes(f, 0.0, 1.0, 4);
    ASSERT_EQ(b.size(), 1u);
    EXPECT_EQ(b[0].lo, 0.25);
    EXPECT_EQ(b[0].hi, 0.25);
}

TEST(SignChanges, EmptyInterval) {
    auto f = [](double x) { return x; };
    EXPECT_THROW(sign_changes(f, 1.0, 1.0, 10), Error);
    EXPECT_TRUE(sign_changes([](double) { return 1.0; }, 0.0, 1.0, 10).empty());
}
