#pragma once

// Shared fixtures for the unit and acceptance suites: random inputs and the
// identities every solved configuration must satisfy.

#include "fourbody/fourbody.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace fourbody::support {

/// Magnitudes log-uniform on [1e-2, 1e2]; one or two negative entries at
/// random positions.
inline WeightedAreas random_areas(std::mt19937_64& rng, bool convex) {
    std::uniform_real_distribution<double> expo(-2.0, 2.0);
    WeightedAreas w;
    for (auto& v : w.a) v = std::pow(10.0, expo(rng));
    std::array<int, 4> idx{0, 1, 2, 3};
    std::shuffle(idx.begin(), idx.end(), rng);
    w.a[static_cast<std::size_t>(idx[0])] *= -1.0;
    if (convex) w.a[static_cast<std::size_t>(idx[1])] *= -1.0;
    return w;
}

inline double inv_cube_minus_one(double r) { return 1.0 / (r * r * r) - 1.0; }

/// Worst relative violation of the six lambda-free quotient relations
/// A_i / A_j = (r_ik^-3 - 1) / (r_jk^-3 - 1), checked for both choices of k
/// and cross-multiplied. The scale is the size of the r^-3 terms, which is
/// what bounds the attainable accuracy of r^-3 - 1.
inline double quotient_identity_error(const CentralConfig& c) {
    const auto& a = c.areas_in;
    const auto& d = c.distances;
    double worst = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            for (int k = 0; k < 4; ++k) {
                if (k == i || k == j) continue;
                const double ri = d(i, k), rj = d(j, k);
                const double lhs = a[i] * inv_cube_minus_one(rj);
                const double rhs = a[j] * inv_cube_minus_one(ri);
                const double scale = std::abs(a[i]) / (rj * rj * rj) + std::abs(a[j]) / (ri * ri * ri);
                worst = std::max(worst, std::abs(lhs - rhs) / scale);
            }
    return worst;
}

/// The three products (r_ij^-3 - 1)(r_kl^-3 - 1) over complementary pairs all
/// equal lambda^2 A1 A2 A3 A4.
inline double product_identity_error(const CentralConfig& c) {
    const auto& a = c.areas_in;
    const auto& d = c.distances;
    const double target = c.lambda * c.lambda * a[0] * a[1] * a[2] * a[3];
    constexpr std::array<std::array<int, 4>, 3> pairs{{{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}}};
    double worst = 0.0;
    for (const auto& p : pairs) {
        const double r1 = d(p[0], p[1]), r2 = d(p[2], p[3]);
        const double prod = inv_cube_minus_one(r1) * inv_cube_minus_one(r2);
        const double scale = 1.0 / (r1 * r1 * r1 * r2 * r2 * r2);
        worst = std::max(worst, std::abs(prod - target) / scale);
    }
    return worst;
}

}  // namespace fourbody::support
