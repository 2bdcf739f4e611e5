#pragma once

// Limiting configurations reached when one weighted area diverges or
// vanishes, or when a mass vanishes on a collinear trio. Each case reduces to
// one-dimensional root finds on analytically bracketed intervals; the
// transcendental equations are solved in cross-multiplied form so that the
// endpoint singularities of the quotients never get evaluated.

#include "fourbody/errors.hpp"
#include "fourbody/geometry.hpp"
#include "fourbody/model.hpp"
#include "fourbody/roots.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fourbody::limits {

inline constexpr double kEdge = 1e-8;  // inward offset from singular bracket ends
inline constexpr double kXtol = 1e-15;

namespace detail {

inline constexpr double kSqrt3 = std::numbers::sqrt3;

inline void require_finite(std::initializer_list<double> vs) {
    for (double v : vs) FOURBODY_REQUIRE(std::isfinite(v), ErrorCode::NonFinite, "limit parameters must be finite");
}

inline std::string mass_key(int j) { return "m" + std::to_string(j + 1); }

inline std::array<int, 3> others(int k) {
    std::array<int, 3> out{};
    int n = 0;
    for (int j = 0; j < 4; ++j)
        if (j != k) out[static_cast<std::size_t>(n++)] = j;
    return out;
}

/// Face areas signed by the given signs; NaN when a face is not a triangle.
inline SignedAreas signed_faces(const DistanceSet& d, const std::array<int, 4>& signs) {
    SignedAreas s;
    for (int j = 0; j < 4; ++j) s.s[static_cast<std::size_t>(j)] = signs[static_cast<std::size_t>(j)] * geometry::face_area(d, j);
    return s;
}

inline bool all_finite(const SignedAreas& s) {
    for (double v : s.s)
        if (std::isnan(v)) return false;
    return true;
}

inline bool valid_pattern(const std::array<int, 4>& signs) {
    int neg = 0;
    for (int s : signs) neg += s < 0;
    return neg > 0 && neg < 4;
}

/// Trilateration check of a limit distance set; returns coordinates or nothing.
inline std::optional<std::array<Point2, 4>> realize(const DistanceSet& d, const SignedAreas& s,
                                                    const std::array<double, 4>& weights) {
    try {
        return geometry::embed(d, s, weights).points;
    } catch (const Error&) {
        return std::nullopt;
    }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Kite limits

/// A1 = A3 = a1, A4 = a4 fixed, A2 decreasing until m2 vanishes and 1, 4, 3
/// become collinear with 4 at the midpoint. Returns the closed-form lambda
/// and the smallest admissible ratio x = A2/A1.
inline LimitSolution euler_convex_limit(double a1, double a4) {
    detail::require_finite({a1, a4});
    FOURBODY_REQUIRE(a1 > 0.0 && a4 < 0.0, ErrorCode::InvalidArgument, "euler_convex_limit needs a1 > 0 > a4");
    const double lambda = -7.0 / (8.0 * a1 * a1 - a1 * a4);
    const double u = a4 / a1;
    const double rhs = 8.0 - 8.0 * u;
    // Divided through by (8 A1 - 8 A4)^(-2/3): f(0) = -1 and f(1) = 2 for every u < 0.
    auto f = [&](double x) {
        return std::pow(rhs / (8.0 - u - 7.0 * x), 2.0 / 3.0) - std::pow(rhs / (8.0 - u - 7.0 * u * x), 2.0 / 3.0) -
               1.0;
    };
    const double x = roots::brent(f, 0.0, 1.0, kXtol);

    LimitSolution out;
    out.kind = LimitKind::EulerConvex;
    const WeightedAreas w{{a1, x * a1, a1, a4}};
    DistanceSet d;
    for (std::size_t k = 0; k < kPairs.size(); ++k)
        d.r[k] = 1.0 / std::cbrt(1.0 + lambda * w[kPairs[k][0]] * w[kPairs[k][1]]);
    out.distances = d;
    out.lambda_or_product = lambda;
    out.aux = {{"x", x}, {"a2", x * a1}, {"lambda", lambda}, {"residual", f(x)}};
    return out;
}

/// A1 = A3 = a1, A4 = a4 fixed, A2 -> +inf: 1, 3, 4 form a unit equilateral
/// triangle, lambda -> 0- with lambda*A2 finite and negative.
inline LimitSolution lagrange_concave_limit(double a1, double a4) {
    detail::require_finite({a1, a4});
    FOURBODY_REQUIRE(a1 > 0.0 && a4 < 0.0, ErrorCode::InvalidArgument, "lagrange_concave_limit needs a1 > 0 > a4");
    const double u = a4 / a1;
    // r^3 * [(r^-3 - 1) - u ((1 + r^2 + sqrt3 r)^(-3/2) - 1)]: 1 at r = 0, negative at r = 1
    auto h = [&](double r) {
        const double r3 = r * r * r;
        return (1.0 - r3) - u * r3 * (std::pow(1.0 + r * r + detail::kSqrt3 * r, -1.5) - 1.0);
    };
    const double r42 = roots::brent(h, 0.0, 1.0, kXtol);
    FOURBODY_REQUIRE(r42 > 0.0 && r42 < 1.0, ErrorCode::NoRoot, "lagrange_concave_limit: no root in (0, 1)");
    const double r12 = std::sqrt(1.0 + r42 * r42 + detail::kSqrt3 * r42);
    const double product = (1.0 / (r42 * r42 * r42) - 1.0) / a4;

    DistanceSet d;
    d.at(0, 1) = r12;
    d.at(1, 2) = r12;
    d.at(0, 2) = 1.0;
    d.at(0, 3) = 1.0;
    d.at(2, 3) = 1.0;
    d.at(1, 3) = r42;

    LimitSolution out;
    out.kind = LimitKind::LagrangeConcave;
    out.distances = d;
    out.lambda_or_product = product;
    out.aux = {{"r42", r42}, {"r12", r12}, {"lambda_a2", product}};
    const auto s = detail::signed_faces(d, {1, 1, 1, -1});
    out.aux["m1"] = s[0] / a1;
    out.aux["m3"] = s[2] / a1;
    out.aux["m4"] = s[3] / a4;
    return out;
}

/// A1 = A3 = a1, A2 = a2 < 0 fixed, A4 -> -inf: 1, 2, 3 form a unit
/// equilateral triangle and 4 sits beyond the chord 13 on the axis;
/// lambda*A4 is finite and positive.
inline LimitSolution lagrange_convex_limit(double a1, double a2) {
    detail::require_finite({a1, a2});
    FOURBODY_REQUIRE(a1 > 0.0 && a2 < 0.0, ErrorCode::InvalidArgument, "lagrange_convex_limit needs a1 > 0 > a2");
    const double u = a1 / a2;
    auto r41_of = [](double r42) { return std::sqrt(1.0 + r42 * r42 - detail::kSqrt3 * r42); };
    // r41 < 1 < r42 on (1, sqrt3); positive at r42 = 1, negative at sqrt3
    auto h = [&](double r42) {
        const double r41 = r41_of(r42);
        return (1.0 / (r41 * r41 * r41) - 1.0) - u * (1.0 / (r42 * r42 * r42) - 1.0);
    };
    const double r42 = roots::brent(h, 1.0, detail::kSqrt3, kXtol);
    const double r41 = r41_of(r42);
    const double product = (1.0 / (r42 * r42 * r42) - 1.0) / a2;

    DistanceSet d;
    d.at(0, 1) = 1.0;
    d.at(1, 2) = 1.0;
    d.at(0, 2) = 1.0;
    d.at(0, 3) = r41;
    d.at(2, 3) = r41;
    d.at(1, 3) = r42;

    LimitSolution out;
    out.kind = LimitKind::LagrangeConvex;
    out.distances = d;
    out.lambda_or_product = product;
    out.aux = {{"r42", r42}, {"r41", r41}, {"lambda_a4", product}};
    const auto s = detail::signed_faces(d, {1, -1, 1, -1});
    out.aux["m1"] = s[0] / a1;
    out.aux["m2"] = s[1] / a2;
    out.aux["m3"] = s[2] / a1;
    return out;
}

/// Chord between two satellites at unit distance from the center, given the
/// chord r12 subtending half the angle: r31 = 2 r12 sqrt(1 - r12^2/4).
inline double coorbital_chord(double r12) {
    FOURBODY_REQUIRE(r12 > 0.0 && r12 < 2.0, ErrorCode::DomainError, "coorbital chord needs 0 < r12 < 2");
    return 2.0 * r12 * std::sqrt(1.0 - 0.25 * r12 * r12);
}

/// A1 = A3 = a1, A2 = a2, |A4| -> 0: particle 4 becomes the dominant mass and
/// 1, 2, 3 lie on the unit circle around it. a2 < 0 selects the convex
/// branch (theta in (pi/6, pi/3)), a2 > 0 the concave one (theta in
/// (pi/2, 5pi/6)), where theta is the angle 1-4-2.
inline LimitSolution coorbital_limit(double a1, double a2) {
    detail::require_finite({a1, a2});
    FOURBODY_REQUIRE(a1 > 0.0 && a2 != 0.0, ErrorCode::InvalidArgument, "coorbital_limit needs a1 > 0 and a2 != 0");
    const double u = a2 / a1;
    auto h = [&](double r12) {
        const double r31 = coorbital_chord(r12);
        return (1.0 / (r12 * r12 * r12) - 1.0) - u * (1.0 / (r31 * r31 * r31) - 1.0);
    };
    using std::numbers::pi;
    const double theta_lo = a2 < 0.0 ? pi / 6.0 : pi / 2.0;
    const double theta_hi = a2 < 0.0 ? pi / 3.0 : 5.0 * pi / 6.0;
    const double lo = 2.0 * std::sin(0.5 * theta_lo);
    const double hi = 2.0 * std::sin(0.5 * theta_hi);
    const auto brackets = roots::sign_changes(h, lo, hi, 256);
    FOURBODY_REQUIRE(!brackets.empty(), ErrorCode::NoRoot, "coorbital_limit: no admissible angle for this A2/A1");
    const double r12 = roots::brent(h, brackets.front(), kXtol);
    const double r31 = coorbital_chord(r12);
    const double theta = 2.0 * std::asin(0.5 * r12);
    const double lambda = (1.0 / (r12 * r12 * r12) - 1.0) / (a1 * a2);

    DistanceSet d;
    d.at(0, 1) = r12;
    d.at(1, 2) = r12;
    d.at(0, 2) = r31;
    d.at(0, 3) = 1.0;
    d.at(1, 3) = 1.0;
    d.at(2, 3) = 1.0;

    LimitSolution out;
    out.kind = LimitKind::Coorbital;
    out.distances = d;
    out.lambda_or_product = lambda;
    out.aux = {{"theta", theta}, {"r12", r12}, {"r31", r31}, {"lambda", lambda}};
    const auto s = detail::signed_faces(d, {1, a2 > 0.0 ? 1 : -1, 1, -1});
    out.aux["m1"] = s[0] / a1;
    out.aux["m2"] = s[1] / a2;
    out.aux["m3"] = s[2] / a1;
    return out;
}

/// Left side of the equal-satellite 1+3 restriction as a function of theta.
inline double maxwell_restriction(double theta) {
    const double s_half = std::abs(std::sin(0.5 * theta));
    const double s_full = std::abs(std::sin(theta));
    return 1.0 - 1.0 / (8.0 * s_half * s_half * s_half) +
           2.0 * std::cos(theta) * (1.0 - 1.0 / (8.0 * s_full * s_full * s_full));
}

struct MaxwellRoots {
    double theta1 = 0.0;  // convex
    double theta2 = 0.0;  // concave
};

/// The two non-equilateral roots of the restriction on (0, pi).
inline MaxwellRoots maxwell_1p3_roots() {
    using std::numbers::pi;
    const auto brackets = roots::sign_changes(maxwell_restriction, kEdge, pi - kEdge, 512);
    std::vector<double> found;
    for (const auto& b : brackets) {
        const double t = roots::brent(maxwell_restriction, b, kXtol);
        if (std::abs(t - 2.0 * pi / 3.0) > 1e-6) found.push_back(t);
    }
    FOURBODY_REQUIRE(found.size() == 2, ErrorCode::NoRoot, "maxwell_1p3_roots: expected two non-trivial roots");
    return {found[0], found[1]};
}

inline LimitSolution maxwell_1p3_solution() {
    const auto r = maxwell_1p3_roots();
    LimitSolution out;
    out.kind = LimitKind::Maxwell1p3;
    out.lambda_or_product = std::numeric_limits<double>::quiet_NaN();
    out.aux = {{"theta1", r.theta1},
               {"theta2", r.theta2},
               {"residual1", maxwell_restriction(r.theta1)},
               {"residual2", maxwell_restriction(r.theta2)}};
    return out;
}

// ---------------------------------------------------------------------------
// General-mass limits

namespace detail {

/// Distances with one particle k attached through r_kj^-3 = 1 + t*B_j and the
/// remaining triple through r_ij^-3 = 1 + lambda*A_i*A_j.
struct OpenInterval {
    double lo;
    double hi;
    bool unbounded;  // hi is +inf (or lo is -inf) before mapping
};

/// Maps t in (0, 1) onto (0, bound) or (0, inf) for scanning.
inline double map_unit(double t, double bound, double scale) {
    return std::isfinite(bound) ? t * bound : scale * t / (1.0 - t);
}

struct Candidate {
    DistanceSet d;
    SignedAreas s;
    std::array<Point2, 4> x;
    double param;
};

inline double quad_residual(const DistanceSet& d, const SignedAreas& s) {
    return geometry::quad_planarity_residual(d, s);
}

template <class BuildFn, class ResidualFn = decltype(&quad_residual)>
std::vector<Candidate> scan_candidates(BuildFn&& build, double bound, double scale, std::size_t cells,
                                       ResidualFn residual = &quad_residual) {
    auto g = [&](double t) {
        const double p = map_unit(t, bound, scale);
        auto pr = build(p);
        if (!pr) return std::numeric_limits<double>::quiet_NaN();
        return residual(pr->first, pr->second);
    };
    std::vector<Candidate> out;
    for (const auto& b : roots::sign_changes(g, kEdge, 1.0 - kEdge, cells)) {
        const double t = roots::brent(g, b, kXtol);
        const double p = map_unit(t, bound, scale);
        auto pr = build(p);
        if (!pr) continue;
        out.push_back({pr->first, pr->second, {}, p});
    }
    return out;
}

}  // namespace detail

/// One weighted area A_k -> +-inf with the other three finite: the retained
/// particles form a unit equilateral triangle and the finite product
/// p = lambda*A_k is fixed by the flatness constraint. `retained` lists the
/// constants of the other particles in increasing label order.
inline LimitSolution general_lagrange_limit(const std::array<double, 3>& retained, int vanishing, int vanishing_sign) {
    detail::require_finite({retained[0], retained[1], retained[2]});
    FOURBODY_REQUIRE(vanishing >= 0 && vanishing < 4, ErrorCode::InvalidArgument, "vanishing label out of range");
    FOURBODY_REQUIRE(vanishing_sign == 1 || vanishing_sign == -1, ErrorCode::InvalidArgument, "sign must be +-1");
    const auto idx = detail::others(vanishing);
    std::array<double, 4> a{};
    std::array<int, 4> signs{};
    for (std::size_t n = 0; n < 3; ++n) {
        FOURBODY_REQUIRE(retained[n] != 0.0, ErrorCode::ZeroArea, "retained weighted areas must be nonzero");
        a[static_cast<std::size_t>(idx[n])] = retained[n];
        signs[static_cast<std::size_t>(idx[n])] = sign_of(retained[n]);
    }
    signs[static_cast<std::size_t>(vanishing)] = vanishing_sign;
    FOURBODY_REQUIRE(detail::valid_pattern(signs), ErrorCode::AllSameSign, "no planar configuration for this pattern");

    // lambda < 0 fixes sign(p) = -sign(A_k); work with q = |p|.
    const double p_sign = -vanishing_sign;
    double bound = std::numeric_limits<double>::infinity();
    double scale = 0.0;
    for (int j : idx) {
        const double c = p_sign * a[static_cast<std::size_t>(j)];  // 1 + q*c > 0
        if (c < 0.0) bound = std::min(bound, -1.0 / c);
        scale = std::max(scale, std::abs(c));
    }
    scale = 1.0 / scale;

    auto build = [&](double q) -> std::optional<std::pair<DistanceSet, SignedAreas>> {
        DistanceSet d;
        for (const auto& [i, j] : kPairs) {
            double base = 1.0;
            if (i == vanishing) base += p_sign * q * a[static_cast<std::size_t>(j)];
            if (j == vanishing) base += p_sign * q * a[static_cast<std::size_t>(i)];
            if (!(base > 0.0)) return std::nullopt;
            d.at(i, j) = 1.0 / std::cbrt(base);
        }
        const auto s = detail::signed_faces(d, signs);
        if (!detail::all_finite(s)) return std::nullopt;
        return std::make_pair(d, s);
    };

    for (auto& cand : detail::scan_candidates(build, bound, scale, 1024)) {
        std::array<double, 4> m{};
        bool positive = true;
        for (int j : idx) {
            m[static_cast<std::size_t>(j)] = cand.s[j] / a[static_cast<std::size_t>(j)];
            positive = positive && m[static_cast<std::size_t>(j)] > 0.0;
        }
        if (!positive) continue;
        const auto x = detail::realize(cand.d, cand.s, m);
        if (!x) continue;
        LimitSolution out;
        out.kind = LimitKind::GeneralLagrange;
        out.distances = cand.d;
        out.lambda_or_product = p_sign * cand.param;
        out.aux["product"] = out.lambda_or_product;
        for (int j : idx) out.aux[detail::mass_key(j)] = m[static_cast<std::size_t>(j)];
        out.aux["quad_residual"] = geometry::quad_planarity_relative(cand.d, cand.s);
        return out;
    }
    throw Error(ErrorCode::NoRoot, "general_lagrange_limit: no flat configuration for any finite lambda*A_k");
}

/// A mass vanishes while the other three become collinear. `trio` lists the
/// weighted directed distances of the remaining particles in increasing label
/// order; the middle particle is the one whose sign differs. Stage one fixes
/// lambda by collinearity, stage two fixes the vanishing particle's weighted
/// area by the flatness constraint.
inline LimitSolution general_euler_limit(const std::array<double, 3>& trio, int vanishing) {
    detail::require_finite({trio[0], trio[1], trio[2]});
    FOURBODY_REQUIRE(vanishing >= 0 && vanishing < 4, ErrorCode::InvalidArgument, "vanishing label out of range");
    for (double v : trio) FOURBODY_REQUIRE(v != 0.0, ErrorCode::ZeroArea, "trio weighted distances must be nonzero");
    const auto idx = detail::others(vanishing);

    int positives = 0;
    for (double v : trio) positives += v > 0.0;
    FOURBODY_REQUIRE(positives == 1 || positives == 2, ErrorCode::AllSameSign,
                     "a collinear trio needs a middle particle of opposite sign");
    const double flip = positives == 2 ? 1.0 : -1.0;  // make the outer pair positive
    std::array<double, 4> a{};
    int middle = -1;
    std::array<int, 2> outer{};
    int no = 0;
    for (std::size_t n = 0; n < 3; ++n) {
        const int j = idx[n];
        a[static_cast<std::size_t>(j)] = flip * trio[n];
        if (a[static_cast<std::size_t>(j)] < 0.0)
            middle = j;
        else
            outer[static_cast<std::size_t>(no++)] = j;
    }
    const double a_i = a[static_cast<std::size_t>(outer[0])];
    const double a_k = a[static_cast<std::size_t>(outer[1])];
    const double a_j = a[static_cast<std::size_t>(middle)];

    auto r = [](double base) { return 1.0 / std::cbrt(base); };
    auto collinear = [&](double lam) {
        return r(1.0 + lam * a_i * a_k) - r(1.0 + lam * a_i * a_j) - r(1.0 + lam * a_j * a_k);
    };
    const double width = 1.0 / (a_i * a_k);
    const double lambda = roots::brent(collinear, -(1.0 - kEdge) * width, -kEdge * width, kXtol * width);

    DistanceSet trio_d;
    trio_d.at(outer[0], middle) = r(1.0 + lambda * a_i * a_j);
    trio_d.at(middle, outer[1]) = r(1.0 + lambda * a_j * a_k);
    // exact collinearity; the lambda formula agrees to rounding
    trio_d.at(outer[0], outer[1]) = trio_d(outer[0], middle) + trio_d(middle, outer[1]);

    std::array<int, 4> signs{};
    for (int j = 0; j < 4; ++j) signs[static_cast<std::size_t>(j)] = j == middle ? -1 : 1;

    const double bound = std::min(1.0 / (-lambda * a_i), 1.0 / (-lambda * a_k));
    auto build = [&](double b) -> std::optional<std::pair<DistanceSet, SignedAreas>> {
        DistanceSet d = trio_d;
        for (int j : idx) {
            const double base = 1.0 + lambda * b * a[static_cast<std::size_t>(j)];
            if (!(base > 0.0)) return std::nullopt;
            d.at(vanishing, j) = r(base);
        }
        auto s = detail::signed_faces(d, signs);
        s.s[static_cast<std::size_t>(vanishing)] = 0.0;
        if (!detail::all_finite(s)) return std::nullopt;
        return std::make_pair(d, s);
    };

    // Stewart's theorem for the vanishing particle against the collinear trio
    auto stewart = [&](const DistanceSet& d, const SignedAreas&) {
        const double dij = d(outer[0], middle), djk = d(middle, outer[1]), dik = d(outer[0], outer[1]);
        const double pi = d(vanishing, outer[0]), pj = d(vanishing, middle), pk = d(vanishing, outer[1]);
        return pj * pj * dik - pi * pi * djk - pk * pk * dij + dij * djk * dik;
    };

    for (auto& cand : detail::scan_candidates(build, bound, 1.0, 1024, stewart)) {
        std::array<double, 4> m{};
        bool positive = true;
        for (int j : idx) {
            m[static_cast<std::size_t>(j)] = cand.s[j] / a[static_cast<std::size_t>(j)];
            positive = positive && m[static_cast<std::size_t>(j)] > 0.0;
        }
        if (!positive) continue;
        {
            // trio on the x axis; Heron cannot resolve a zero face to better than sqrt(eps)
            const double x_mid = cand.d(outer[0], middle);
            const double x_end = cand.d(outer[0], outer[1]);
            const double pi = cand.d(vanishing, outer[0]), pj = cand.d(vanishing, middle);
            const double px = (pi * pi - pj * pj + x_mid * x_mid) / (2.0 * x_mid);
            const double py = std::sqrt(std::max(pi * pi - px * px, 0.0));
            const double err = std::hypot(px - x_end, py) - cand.d(vanishing, outer[1]);
            if (!(std::abs(err) <= geometry::kEmbedTol * x_end)) continue;
        }

        LimitSolution out;
        out.kind = LimitKind::GeneralEulerCollinear;
        out.distances = cand.d;
        out.lambda_or_product = lambda;
        out.aux["lambda"] = lambda;
        out.aux["a_vanishing"] = flip * cand.param;
        out.aux["middle"] = middle + 1;
        out.aux["ratio"] = cand.d(outer[0], middle) / cand.d(middle, outer[1]);
        out.aux["collinear_residual"] = collinear(lambda);
        for (int j : idx) out.aux[detail::mass_key(j)] = m[static_cast<std::size_t>(j)];
        return out;
    }
    throw Error(ErrorCode::NoRoot, "general_euler_limit: no weighted area for the vanishing particle makes it flat");
}

/// One weighted area A_k -> 0 (a dominant mass): the three satellites sit on
/// the unit circle around particle k and lambda is fixed by flatness.
/// `satellites` lists the other constants in increasing label order.
inline LimitSolution general_coorbital_limit(const std::array<double, 3>& satellites, int massive, int massive_sign) {
    detail::require_finite({satellites[0], satellites[1], satellites[2]});
    FOURBODY_REQUIRE(massive >= 0 && massive < 4, ErrorCode::InvalidArgument, "massive label out of range");
    FOURBODY_REQUIRE(massive_sign == 1 || massive_sign == -1, ErrorCode::InvalidArgument, "sign must be +-1");
    const auto idx = detail::others(massive);
    std::array<double, 4> a{};
    std::array<int, 4> signs{};
    for (std::size_t n = 0; n < 3; ++n) {
        FOURBODY_REQUIRE(satellites[n] != 0.0, ErrorCode::ZeroArea, "satellite weighted areas must be nonzero");
        a[static_cast<std::size_t>(idx[n])] = satellites[n];
        signs[static_cast<std::size_t>(idx[n])] = sign_of(satellites[n]);
    }
    signs[static_cast<std::size_t>(massive)] = massive_sign;
    FOURBODY_REQUIRE(detail::valid_pattern(signs), ErrorCode::AllSameSign, "no planar configuration for this pattern");

    double p_max = 0.0;
    for (std::size_t n = 0; n < 3; ++n)
        for (std::size_t m = n + 1; m < 3; ++m) p_max = std::max(p_max, satellites[n] * satellites[m]);
    const double bound = 1.0 / p_max;

    auto build = [&](double q) -> std::optional<std::pair<DistanceSet, SignedAreas>> {
        DistanceSet d;
        for (const auto& [i, j] : kPairs) {
            if (i == massive || j == massive) {
                d.at(i, j) = 1.0;
                continue;
            }
            const double base = 1.0 - q * a[static_cast<std::size_t>(i)] * a[static_cast<std::size_t>(j)];
            if (!(base > 0.0)) return std::nullopt;
            const double rij = 1.0 / std::cbrt(base);
            if (!(rij < 2.0)) return std::nullopt;
            d.at(i, j) = rij;
        }
        const auto s = detail::signed_faces(d, signs);
        if (!detail::all_finite(s)) return std::nullopt;
        return std::make_pair(d, s);
    };

    for (auto& cand : detail::scan_candidates(build, bound, 1.0, 1024)) {
        std::array<double, 4> m{};
        std::array<double, 4> weights{};
        weights[static_cast<std::size_t>(massive)] = 1.0;
        bool positive = true;
        for (int j : idx) {
            m[static_cast<std::size_t>(j)] = cand.s[j] / a[static_cast<std::size_t>(j)];
            positive = positive && m[static_cast<std::size_t>(j)] > 0.0;
        }
        if (!positive) continue;
        if (!detail::realize(cand.d, cand.s, weights)) continue;

        LimitSolution out;
        out.kind = LimitKind::GeneralCoorbital;
        out.distances = cand.d;
        out.lambda_or_product = -cand.param;
        out.aux["lambda"] = -cand.param;
        for (std::size_t n = 0; n < 3; ++n)
            for (std::size_t k = n + 1; k < 3; ++k) {
                const int i = idx[n], j = idx[k];
                out.aux["angle" + std::to_string(i + 1) + std::to_string(j + 1)] = 2.0 * std::asin(0.5 * cand.d(i, j));
            }
        for (int j : idx) out.aux[detail::mass_key(j)] = m[static_cast<std::size_t>(j)];
        return out;
    }
    throw Error(ErrorCode::NoRoot, "general_coorbital_limit: no flat configuration on the lambda bracket");
}


/// A2 that makes the three coorbital satellites equal in mass for a given
/// A1 = A3: the Maxwell angles fed back through the coorbital relation.
/// `convex` picks the first Maxwell root (A2 < 0), otherwise the second.
inline double coorbital_equal_mass_a2(double a1, bool convex) {
    detail::require_finite({a1});
    FOURBODY_REQUIRE(a1 > 0.0, ErrorCode::InvalidArgument, "coorbital_equal_mass_a2 needs a1 > 0");
    const auto roots = maxwell_1p3_roots();
    const double r12 = 2.0 * std::sin(0.5 * (convex ? roots.theta1 : roots.theta2));
    const double r31 = coorbital_chord(r12);
    return a1 * (1.0 / (r12 * r12 * r12) - 1.0) / (1.0 / (r31 * r31 * r31) - 1.0);
}

}  // namespace fourbody::limits
