#pragma once

// Central configurations from weighted directed areas.
//
// With sigma = 1 every distance is a function of one unknown,
//     r_jk^-3 = 1 + lambda * A_j * A_k,
// the face areas follow from Heron's formula with signs inherited from the
// A_j, and lambda is the root of a flatness residual on the interval where
// all six distances are defined. Masses are m_j = S_j / A_j.

#include "fourbody/errors.hpp"
#include "fourbody/geometry.hpp"
#include "fourbody/model.hpp"
#include "fourbody/roots.hpp"

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace fourbody {

enum class RootResidual {
    Auto,  // kite Pythagoras residual for kite inputs, quadratic constraint otherwise
    QuadConstraint,
    PlaneSum,
    KitePythagoras,
};

constexpr std::string_view to_string(RootResidual r) {
    switch (r) {
        case RootResidual::Auto: return "auto";
        case RootResidual::QuadConstraint: return "quad";
        case RootResidual::PlaneSum: return "plane";
        case RootResidual::KitePythagoras: return "kite";
    }
    return "auto";
}

struct SolverOptions {
    double tol_root = 1e-13;        // relative to the bracket length 1/P_max
    int max_iter = 200;
    double bracket_margin = 1e-9;   // relative to the bracket length 1/P_max
    RootResidual residual_for_root = RootResidual::Auto;
    std::size_t grid_cells = 1024;
    double accept_residual = 1e-6;  // a root is physical only if every residual is below this

    void validate() const {
        FOURBODY_REQUIRE(tol_root > 0.0 && std::isfinite(tol_root), ErrorCode::InvalidArgument, "tol_root must be > 0");
        FOURBODY_REQUIRE(max_iter >= 1, ErrorCode::InvalidArgument, "max_iter must be >= 1");
        FOURBODY_REQUIRE(bracket_margin > 0.0 && bracket_margin < 0.5, ErrorCode::InvalidArgument,
                         "bracket_margin must lie in (0, 0.5)");
        FOURBODY_REQUIRE(grid_cells >= 2, ErrorCode::InvalidArgument, "grid_cells must be >= 2");
    }

    friend bool operator==(const SolverOptions&, const SolverOptions&) = default;
};

// ---------------------------------------------------------------------------
// Distances as functions of lambda

inline std::optional<DistanceSet> try_distances(const WeightedAreas& a, double lambda) {
    DistanceSet d;
    for (std::size_t k = 0; k < kPairs.size(); ++k) {
        const double base = 1.0 + lambda * a[kPairs[k][0]] * a[kPairs[k][1]];
        if (!(base > 0.0) || !std::isfinite(base)) return std::nullopt;
        d.r[k] = 1.0 / std::cbrt(base);
    }
    return d;
}

inline DistanceSet distances_from_lambda(const WeightedAreas& a, double lambda) {
    auto d = try_distances(a, lambda);
    FOURBODY_REQUIRE(d.has_value(), ErrorCode::OutOfDomain, "1 + lambda*A_j*A_k must be positive for every pair");
    return *d;
}

struct LambdaBracket {
    double lo = 0.0;
    double hi = 0.0;
    double p_max = 0.0;
};

/// Interval of negative lambda on which every distance is defined.
inline LambdaBracket lambda_bracket(const WeightedAreas& a, double margin = SolverOptions{}.bracket_margin) {
    double p_max = 0.0;
    for (const auto& [i, j] : kPairs) p_max = std::max(p_max, a[i] * a[j]);
    FOURBODY_REQUIRE(p_max > 0.0, ErrorCode::EmptyBracket, "no positive product A_j*A_k");
    const double width = 1.0 / p_max;
    return {-(1.0 - margin) * width, -margin * width, p_max};
}

// ---------------------------------------------------------------------------
// Kite relabelling

struct KiteLabels {
    Permutation perm{0, 1, 2, 3};  // new (1,3) = equal pair, new (2,4) = axis
};

/// Finds a relabelling putting an equal pair at (1, 3). For concave inputs the
/// negative particle goes to label 4.
inline std::optional<KiteLabels> kite_labels(const WeightedAreas& a, Hull hull) {
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            if (!approx_equal(a[i], a[j], kAreaEqualityTol)) continue;
            std::array<int, 2> rest{};
            int n = 0;
            for (int k = 0; k < 4; ++k)
                if (k != i && k != j) rest[static_cast<std::size_t>(n++)] = k;
            if (hull == Hull::Concave) {
                // axis particles: the remaining positive one (label 2) and the negative one (label 4)
                if (a[rest[0]] < 0.0) std::swap(rest[0], rest[1]);
                if (!(a[rest[0]] > 0.0 && a[rest[1]] < 0.0)) continue;
            }
            return KiteLabels{{i, rest[0], j, rest[1]}};
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Root residual

namespace detail {

inline double residual_at(const WeightedAreas& a, double lambda, RootResidual kind, Hull hull,
                          const std::optional<KiteLabels>& kite) {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    const auto d = try_distances(a, lambda);
    if (!d) return nan;
    if (kind == RootResidual::KitePythagoras) return geometry::kite_pythagoras_unchecked(permute(*d, kite->perm), hull);
    const auto s = geometry::signed_areas_from(*d, a);
    for (double v : s.s)
        if (std::isnan(v)) return nan;
    if (kind == RootResidual::PlaneSum) return geometry::plane_sum_residual(s);
    return geometry::quad_planarity_residual(*d, s);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Independent verification

namespace detail {

inline double inv_cube(double r) { return 1.0 / (r * r * r); }

/// One Laura-Andoyer condition A_a (u_p - u_q) = A_b (u_s - u_t), u = r^-3.
struct LauraAndoyer {
    int a;
    std::array<int, 2> p, q;
    int b;
    std::array<int, 2> s, t;
};

// 0-based particle indices
inline constexpr std::array<LauraAndoyer, 6> kLauraAndoyer{{
    {3, {2, 0}, {0, 1}, 0, {3, 2}, {3, 1}},
    {3, {0, 1}, {1, 2}, 1, {3, 0}, {3, 2}},
    {3, {1, 2}, {2, 0}, 2, {3, 1}, {3, 0}},
    {2, {3, 1}, {0, 1}, 1, {3, 2}, {2, 0}},
    {0, {3, 2}, {1, 2}, 2, {3, 0}, {0, 1}},
    {1, {3, 0}, {2, 0}, 0, {3, 1}, {1, 2}},
}};

/// The three sigma-from-distances expressions, as pairs of pairs (a,b | c,d):
/// sigma = (u_a u_b - u_c u_d) / (u_a + u_b - u_c - u_d).
inline constexpr std::array<std::array<std::array<int, 2>, 4>, 3> kSigmaExpressions{{
    {{{0, 1}, {3, 2}, {1, 2}, {3, 0}}},
    {{{2, 0}, {3, 1}, {0, 1}, {3, 2}}},
    {{{1, 2}, {3, 0}, {2, 0}, {3, 1}}},
}};

inline constexpr double kSigmaDenominatorFloor = 1e-6;

}  // namespace detail

/// sigma computed from masses and distances; equals 1 in normalized units.
inline double sigma_from_masses(const std::array<double, 4>& m, const DistanceSet& d) {
    double num = 0.0;
    double den = 0.0;
    for (const auto& [j, k] : kPairs) {
        const double mm = m[static_cast<std::size_t>(j)] * m[static_cast<std::size_t>(k)];
        num += mm / d(j, k);
        den += mm * d(j, k) * d(j, k);
    }
    return num / den;
}

/// Residuals of a configuration, computed from its coordinates, masses and
/// recorded distances without reference to lambda or the input constants.
///
///   central_eq      max_i |B r_i - sum_j m_j (r_j - r_i)/r_ij^3| / sum_j m_j/r_ij^2,
///                   with B = -sigma * M and sigma from masses and distances
///   laura_andoyer   max over the six conditions of |lhs - rhs| / (sum of |terms|),
///                   with A_j = (coordinate determinant S_j) / m_j
///   sigma_identity  max of |sigma - 1| for the mass formula and the three
///                   distance-only expressions (ill-conditioned quotients are
///                   compared in cross-multiplied form)
///   plane_sum       |sum S_j| / sum |S_j| on the recorded signed areas
///   quad_constraint |sum r_ij^2 S_i S_j| / sum r_ij^2 |S_i S_j| on the recorded values
inline ResidualReport verify_parts(const std::array<Point2, 4>& x, const std::array<double, 4>& m, const DistanceSet& d,
                                   const SignedAreas& recorded_areas) {
    ResidualReport rep;
    const double sigma = sigma_from_masses(m, d);
    const double total = m[0] + m[1] + m[2] + m[3];
    const double b = -sigma * total;

    for (int i = 0; i < 4; ++i) {
        Point2 force;
        double scale = 0.0;
        for (int j = 0; j < 4; ++j) {
            if (j == i) continue;
            const double r = d(i, j);
            const double mj = m[static_cast<std::size_t>(j)];
            force = force + (mj / (r * r * r)) * (x[static_cast<std::size_t>(j)] - x[static_cast<std::size_t>(i)]);
            scale += mj / (r * r);
        }
        const double res = norm(b * x[static_cast<std::size_t>(i)] - force) / scale;
        rep.central_eq = std::max(rep.central_eq, res);
    }

    const auto s_det = geometry::signed_areas_of(x);
    std::array<double, 4> w{};
    for (std::size_t j = 0; j < 4; ++j) w[j] = s_det.s[j] / m[j];
    auto u = [&](const std::array<int, 2>& pr) { return detail::inv_cube(d(pr[0], pr[1])); };
    for (const auto& c : detail::kLauraAndoyer) {
        const double wa = w[static_cast<std::size_t>(c.a)];
        const double wb = w[static_cast<std::size_t>(c.b)];
        const double lhs = wa * (u(c.p) - u(c.q));
        const double rhs = wb * (u(c.s) - u(c.t));
        const double mag = std::abs(wa) * (u(c.p) + u(c.q)) + std::abs(wb) * (u(c.s) + u(c.t));
        rep.laura_andoyer = std::max(rep.laura_andoyer, std::abs(lhs - rhs) / mag);
    }

    double sig = std::abs(sigma - 1.0);
    for (const auto& e : detail::kSigmaExpressions) {
        const double ua = u(e[0]), ub = u(e[1]), uc = u(e[2]), ud = u(e[3]);
        const double num = ua * ub - uc * ud;
        const double den = ua + ub - uc - ud;
        const double terms = ua + ub + uc + ud;
        const double floor = detail::kSigmaDenominatorFloor * terms;
        sig = std::max(sig, std::abs(num - den) / std::max(std::abs(den), floor));
    }
    rep.sigma_identity = sig;

    rep.plane_sum = geometry::plane_sum_relative(recorded_areas);
    rep.quad_constraint = geometry::quad_planarity_relative(d, recorded_areas);
    return rep;
}

inline ResidualReport verify(const CentralConfig& c) {
    return verify_parts(c.coords, c.masses, c.distances, c.signed_areas);
}

// ---------------------------------------------------------------------------
// Solve

namespace detail {

/// Builds the full record for one lambda, or nothing when the root is not a
/// realizable configuration with positive masses.
inline std::optional<CentralConfig> build_config(const WeightedAreas& a, double lambda, const Classification& cls) {
    const auto d = try_distances(a, lambda);
    if (!d) return std::nullopt;
    const auto s = geometry::signed_areas_from(*d, a);
    std::array<double, 4> m{};
    for (std::size_t j = 0; j < 4; ++j) {
        m[j] = s.s[j] / a.a[j];
        if (!(m[j] > 0.0) || !std::isfinite(m[j])) return std::nullopt;
    }
    CentralConfig c;
    c.areas_in = a;
    c.lambda = lambda;
    c.sigma = 1.0;
    c.distances = *d;
    c.signed_areas = s;
    c.masses = m;
    c.classification = cls;
    try {
        c.coords = geometry::embed(*d, s, m).points;
    } catch (const Error&) {
        return std::nullopt;
    }
    c.diagnostics = verify(c);
    return c;
}

}  // namespace detail

inline RootResidual effective_residual(RootResidual requested, const Classification& cls) {
    if (requested != RootResidual::Auto) return requested;
    return cls.symmetries.contains(Symmetry::Kite) ? RootResidual::KitePythagoras : RootResidual::QuadConstraint;
}

/// All sign changes of the chosen residual on the lambda bracket, refined.
inline std::vector<double> lambda_roots(const WeightedAreas& a, const Classification& cls, const SolverOptions& opts) {
    const RootResidual kind = effective_residual(opts.residual_for_root, cls);
    std::optional<KiteLabels> kite;
    if (kind == RootResidual::KitePythagoras) {
        kite = kite_labels(a, cls.hull);
        FOURBODY_REQUIRE(kite.has_value(), ErrorCode::NotKite, "kite residual requested for a non-kite input");
    }
    const auto br = lambda_bracket(a, opts.bracket_margin);
    auto g = [&](double lam) { return detail::residual_at(a, lam, kind, cls.hull, kite); };

    std::vector<roots::Bracket> brackets = roots::sign_changes(g, br.lo, br.hi, opts.grid_cells);
    if (brackets.empty()) brackets = roots::sign_changes(g, br.lo, br.hi, 2 * opts.grid_cells);

    std::vector<double> out;
    const double xtol = opts.tol_root / br.p_max;
    for (const auto& b : brackets) out.push_back(roots::brent(g, b, xtol, opts.max_iter));
    return out;
}

inline CentralConfig solve(const WeightedAreas& input, const SolverOptions& opts = {}) {
    opts.validate();
    const Classification cls = validate_areas(input);
    const WeightedAreas a = canonical(input);

    const auto candidates = lambda_roots(a, cls, opts);
    std::optional<CentralConfig> best;
    for (double lam : candidates) {
        if (!(lam < 0.0)) continue;
        auto c = detail::build_config(a, lam, cls);
        if (!c || !(c->diagnostics.max() < opts.accept_residual)) continue;
        if (!best || c->diagnostics.central_eq < best->diagnostics.central_eq) best = std::move(c);
    }
    // the kite form loses accuracy next to collinear limits; fall back to the general constraint
    if (!best && opts.residual_for_root == RootResidual::Auto &&
        effective_residual(opts.residual_for_root, cls) != RootResidual::QuadConstraint) {
        SolverOptions general = opts;
        general.residual_for_root = RootResidual::QuadConstraint;
        return solve(input, general);
    }
    FOURBODY_REQUIRE(!candidates.empty(), ErrorCode::NoRoot,
                     "the planarity residual has no sign change on the lambda bracket");
    FOURBODY_REQUIRE(best.has_value(), ErrorCode::NonPhysicalRoot,
                     "roots were found but none is a planar central configuration with positive masses");
    best->candidate_roots = candidates;
    best->sign_flipped = !(a == input);
    return *best;
}

// ---------------------------------------------------------------------------
// Ordering theorems

/// Relabelling to the reference order: concave A1 >= A2 >= A3 > 0 > A4;
/// convex A1 >= A3 > 0 > A2 >= A4 with diagonals (1,3) and (2,4).
inline Permutation reference_labels(const WeightedAreas& a) {
    std::array<int, 4> idx{0, 1, 2, 3};
    std::sort(idx.begin(), idx.end(), [&](int i, int j) { return a[i] > a[j]; });
    const auto negatives = std::count_if(a.a.begin(), a.a.end(), [](double v) { return v < 0.0; });
    if (negatives == 1) return {idx[0], idx[1], idx[2], idx[3]};
    // sorted: pos_big, pos_small, neg_big, neg_small
    return {idx[0], idx[2], idx[1], idx[3]};
}

inline constexpr double kOrderingTol = 1e-9;

/// True when the distance orderings implied by the signs of lambda*A_j*A_k hold.
inline bool ordering_check(const CentralConfig& c) {
    const auto p = reference_labels(c.areas_in);
    const auto d = permute(c.distances, p);
    auto ge = [](double x, double y) { return x >= y - kOrderingTol * std::max(std::abs(x), std::abs(y)); };
    auto chain = [&](std::initializer_list<double> v) {
        const double* prev = nullptr;
        for (const double& x : v) {
            if (prev && !ge(*prev, x)) return false;
            prev = &x;
        }
        return true;
    };
    const double unit = std::cbrt(1.0 / c.sigma);
    if (c.classification.hull == Hull::Concave)
        return chain({d(0, 1), d(2, 0), d(1, 2), unit, d(3, 2), d(3, 1), d(3, 0)});
    return chain({unit, d(1, 2), d(0, 1), d(3, 0)}) && chain({unit, d(1, 2), d(3, 2), d(3, 0)});
}

}  // namespace fourbody
