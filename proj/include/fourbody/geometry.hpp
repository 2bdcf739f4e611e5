#pragma once

// Pure geometry on four planar points: Heron areas, the two flatness
// residuals, the kite Pythagoras residual and the planar embedding of a
// distance set.

#include "fourbody/errors.hpp"
#include "fourbody/model.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

namespace fourbody::geometry {

inline constexpr double kHeronTol = 1e-12;  // relative to (max side)^4
inline constexpr double kEmbedTol = 1e-9;   // relative to the largest distance
inline constexpr double kKiteTol = 1e-9;

namespace detail {

/// 16 * area^2 in Kahan's factored form (sides sorted a >= b >= c), which
/// equals the quadratic form in the squared sides but keeps its accuracy for
/// needle-like triangles. Negative when the triangle inequality fails.
inline double heron_form(double a, double b, double c) {
    if (a < b) std::swap(a, b);
    if (b < c) std::swap(b, c);
    if (a < b) std::swap(a, b);
    return (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
}

}  // namespace detail

/// Doubled area of the triangle with the given sides, or NaN when the sides
/// violate the triangle inequality beyond tolerance. Degenerate triangles
/// return exactly zero.
inline double heron_doubled_area(double da, double db, double dc) {
    const double q = detail::heron_form(da, db, dc);
    if (q > 0.0) return 0.5 * std::sqrt(q);
    const double scale = std::max({da, db, dc});
    if (q >= -kHeronTol * scale * scale * scale * scale) return 0.0;
    return std::numeric_limits<double>::quiet_NaN();
}

/// Signed doubled area from three sides: sign * sqrt(q) / 2 where
/// q = 16 * area^2. The three sides must form a (possibly degenerate) triangle.
inline double heron_signed_area(double da, double db, double dc, int sign) {
    FOURBODY_REQUIRE(da >= 0.0 && db >= 0.0 && dc >= 0.0, ErrorCode::InvalidArgument, "heron: negative side");
    FOURBODY_REQUIRE(sign == 1 || sign == -1, ErrorCode::InvalidArgument, "heron: sign must be +1 or -1");
    const double area = heron_doubled_area(da, db, dc);
    FOURBODY_REQUIRE(!std::isnan(area), ErrorCode::ImpossibleTriangle, "heron: triangle inequality violated");
    return sign * area;
}

/// Doubled area of the face opposite particle j, unsigned.
inline double face_area(const DistanceSet& d, int j) {
    const auto& f = kFaces[static_cast<std::size_t>(j)];
    return heron_doubled_area(d(f[0], f[1]), d(f[0], f[2]), d(f[1], f[2]));
}

/// Face areas with signs inherited from the weighted areas; NaN entries mark
/// faces that are not triangles.
inline SignedAreas signed_areas_from(const DistanceSet& d, const WeightedAreas& w) {
    SignedAreas s;
    for (int j = 0; j < 4; ++j) s.s[static_cast<std::size_t>(j)] = sign_of(w[j]) * face_area(d, j);
    return s;
}

inline double plane_sum_residual(const SignedAreas& s) { return s.sum(); }

/// sum_i sum_j r_ij^2 S_i S_j with r_ii = 0; vanishes for flat configurations.
inline double quad_planarity_residual(const DistanceSet& d, const SignedAreas& s) {
    double acc = 0.0;
    for (const auto& [i, j] : kPairs) {
        const double r = d(i, j);
        acc += r * r * s[i] * s[j];
    }
    return 2.0 * acc;
}

/// Same sum divided by sum r_ij^2 |S_i||S_j|, so that zero means flat and one
/// means maximal violation independent of scale.
inline double quad_planarity_relative(const DistanceSet& d, const SignedAreas& s) {
    double acc = 0.0;
    double mag = 0.0;
    for (const auto& [i, j] : kPairs) {
        const double r2 = d(i, j) * d(i, j);
        acc += r2 * s[i] * s[j];
        mag += r2 * std::abs(s[i] * s[j]);
    }
    return mag > 0.0 ? std::abs(acc) / mag : 0.0;
}

inline double plane_sum_relative(const SignedAreas& s) {
    const double mag = std::abs(s[0]) + std::abs(s[1]) + std::abs(s[2]) + std::abs(s[3]);
    return mag > 0.0 ? std::abs(s.sum()) / mag : 0.0;
}

/// Kite labelling: the symmetry axis passes through particles 2 and 4, the
/// equal-area pair is (1, 3). Concave: 4 lies between the chord 13 and 2.
/// Returns NaN instead of throwing when a radicand is negative.
inline double kite_pythagoras_unchecked(const DistanceSet& d, Hull hull) {
    const double quarter = 0.25 * d.r13() * d.r13();
    const double rad2 = d.r12() * d.r12() - quarter;
    const double rad4 = d.r14() * d.r14() - quarter;
    const double slack = -kHeronTol * d.max() * d.max();
    if (rad2 < slack || rad4 < slack) return std::numeric_limits<double>::quiet_NaN();
    const double h2 = std::sqrt(std::max(rad2, 0.0));
    const double h4 = std::sqrt(std::max(rad4, 0.0));
    return hull == Hull::Concave ? d.r24() - h2 + h4 : d.r24() - h2 - h4;
}

inline double kite_pythagoras_residual(const DistanceSet& d, Hull hull) {
    FOURBODY_REQUIRE(approx_equal(d.r12(), d.r23(), kKiteTol) && approx_equal(d.r14(), d.r34(), kKiteTol),
                     ErrorCode::NotKite, "kite residual needs r12 = r23 and r14 = r34");
    const double v = kite_pythagoras_unchecked(d, hull);
    FOURBODY_REQUIRE(!std::isnan(v), ErrorCode::NegativeRadicand, "kite residual: r13/2 exceeds a side");
    return v;
}

// ---------------------------------------------------------------------------
// Coordinates

struct PlanarEmbedding {
    std::array<Point2, 4> points{};
};

inline DistanceSet distances_of(const std::array<Point2, 4>& p) {
    DistanceSet d;
    for (std::size_t k = 0; k < kPairs.size(); ++k)
        d.r[k] = distance(p[static_cast<std::size_t>(kPairs[k][0])], p[static_cast<std::size_t>(kPairs[k][1])]);
    return d;
}

/// The four signed 3x3 minors of the coordinate matrix.
inline SignedAreas signed_areas_of(const std::array<Point2, 4>& p) {
    SignedAreas s;
    for (std::size_t j = 0; j < 4; ++j) {
        const auto& f = kFaces[j];
        s.s[j] = orientation(p[static_cast<std::size_t>(f[0])], p[static_cast<std::size_t>(f[1])],
                             p[static_cast<std::size_t>(f[2])]);
    }
    return s;
}

inline Point2 weighted_center(const std::array<Point2, 4>& p, const std::array<double, 4>& w) {
    Point2 acc;
    double total = 0.0;
    for (std::size_t j = 0; j < 4; ++j) {
        acc = acc + w[j] * p[j];
        total += w[j];
    }
    return (1.0 / total) * acc;
}

/// Realizes a flat distance set as planar coordinates with the orientation
/// given by the signs of s, then moves the origin to the center of mass.
inline PlanarEmbedding embed(const DistanceSet& d, const SignedAreas& s, const std::array<double, 4>& masses) {
    const double scale = d.max();
    const double tol = kEmbedTol * scale;
    const double area_tol = kEmbedTol * scale * scale;
    const double r12 = d.r12();
    FOURBODY_REQUIRE(r12 > 0.0 && std::isfinite(scale), ErrorCode::InconsistentDistances, "embed: bad distances");

    std::array<Point2, 4> p{};
    p[1] = {r12, 0.0};

    const double area123 = heron_doubled_area(r12, d.r13(), d.r23());
    const double area124 = heron_doubled_area(r12, d.r14(), d.r24());
    FOURBODY_REQUIRE(!std::isnan(area123) && !std::isnan(area124), ErrorCode::InconsistentDistances,
                     "embed: a triangle through particles 1 and 2 is impossible");

    // S4 = orient(p1, p3, p2) = -r12 * y3
    const double y3 = area123 / r12;
    p[2] = {(d.r13() * d.r13() - d.r23() * d.r23() + r12 * r12) / (2.0 * r12), s[3] > 0.0 ? -y3 : y3};

    const double x4 = (d.r14() * d.r14() - d.r24() * d.r24() + r12 * r12) / (2.0 * r12);
    const double y4 = area124 / r12;
    struct Branch {
        Point2 q;
        double err;
        bool sign_ok;
    };
    std::array<Branch, 2> branches{};
    for (std::size_t b = 0; b < 2; ++b) {
        const Point2 q{x4, b == 0 ? y4 : -y4};
        const double s2 = orientation(p[0], q, p[2]);
        branches[b] = {q, std::abs(distance(q, p[2]) - d.r34()),
                       sign_of(s2) == sign_of(s[1]) || std::abs(s2) <= area_tol};
    }
    if (branches[1].sign_ok && (!branches[0].sign_ok || branches[1].err < branches[0].err))
        std::swap(branches[0], branches[1]);
    FOURBODY_REQUIRE(branches[0].sign_ok && branches[0].err <= tol, ErrorCode::InconsistentDistances,
                     "embed: r34 not reproduced by trilateration; the distance set is not flat");
    p[3] = branches[0].q;

    const auto got = signed_areas_of(p);
    for (std::size_t j = 0; j < 4; ++j)
        FOURBODY_REQUIRE(std::abs(got.s[j] - s.s[j]) <= area_tol, ErrorCode::InconsistentDistances,
                         "embed: coordinate areas disagree with the signed areas");

    const Point2 com = weighted_center(p, masses);
    for (auto& q : p) q = q - com;
    return {p};
}

}  // namespace fourbody::geometry
