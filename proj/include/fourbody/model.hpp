#pragma once

// Domain types shared by every module: weighted directed areas, distance
// sets, signed areas, solved configurations and limit solutions.
//
// Particles are indexed 0..3 in code and labelled 1..4 in every external
// surface (record keys r12..r34, CLI flags, CSV headers).

#include "fourbody/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fourbody {

inline constexpr int kBodies = 4;

/// Particle pairs in the order r12, r13, r14, r23, r24, r34.
inline constexpr std::array<std::array<int, 2>, 6> kPairs{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
inline constexpr std::array<std::string_view, 6> kPairNames{"r12", "r13", "r14", "r23", "r24", "r34"};

/// Vertices of the face opposite particle j, ordered so that the orientation
/// determinant of the three points equals S_j.
inline constexpr std::array<std::array<int, 3>, 4> kFaces{{{1, 2, 3}, {0, 3, 2}, {0, 1, 3}, {0, 2, 1}}};

constexpr std::size_t pair_index(int i, int j) {
    if (i > j) std::swap(i, j);
    // (0,1)->0 (0,2)->1 (0,3)->2 (1,2)->3 (1,3)->4 (2,3)->5
    return static_cast<std::size_t>(i == 0 ? j - 1 : i + j);
}

/// Relative comparison used for symmetry predicates and orderings.
inline bool approx_equal(double a, double b, double rel) {
    if (a == b) return true;
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

inline int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Point2 operator*(double k, Point2 p) { return {k * p.x, k * p.y}; }
    friend bool operator==(const Point2&, const Point2&) = default;
};

inline double norm(Point2 p) { return std::hypot(p.x, p.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }

/// Twice the directed area of triangle (p, q, r): positive when counterclockwise.
inline double orientation(Point2 p, Point2 q, Point2 r) {
    return (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
}

/// The four input constants A_j = S_j / m_j.
struct WeightedAreas {
    std::array<double, 4> a{};

    double operator[](int j) const { return a[static_cast<std::size_t>(j)]; }
    friend bool operator==(const WeightedAreas&, const WeightedAreas&) = default;
};

/// Six mutual distances, in units of sigma^(-1/3).
struct DistanceSet {
    std::array<double, 6> r{};

    double operator()(int i, int j) const { return r[pair_index(i, j)]; }
    double& at(int i, int j) { return r[pair_index(i, j)]; }

    double r12() const { return r[0]; }
    double r13() const { return r[1]; }
    double r14() const { return r[2]; }
    double r23() const { return r[3]; }
    double r24() const { return r[4]; }
    double r34() const { return r[5]; }

    double max() const { return *std::max_element(r.begin(), r.end()); }

    friend bool operator==(const DistanceSet&, const DistanceSet&) = default;
};

/// Twice the directed areas of the faces opposite each particle.
struct SignedAreas {
    std::array<double, 4> s{};

    double operator[](int j) const { return s[static_cast<std::size_t>(j)]; }
    double sum() const { return s[0] + s[1] + s[2] + s[3]; }

    friend bool operator==(const SignedAreas&, const SignedAreas&) = default;
};

enum class Hull { Concave, Convex };

enum class Symmetry : unsigned {
    Kite = 1u << 0,
    EquilateralCenter = 1u << 1,
    Rhombus = 1u << 2,
    Square = 1u << 3,
    IsoscelesTrapezium = 1u << 4,
};

inline constexpr std::array<Symmetry, 5> kAllSymmetries{Symmetry::Kite, Symmetry::EquilateralCenter, Symmetry::Rhombus,
                                                        Symmetry::Square, Symmetry::IsoscelesTrapezium};

constexpr std::string_view to_string(Symmetry s) {
    switch (s) {
        case Symmetry::Kite: return "Kite";
        case Symmetry::EquilateralCenter: return "EquilateralCenter";
        case Symmetry::Rhombus: return "Rhombus";
        case Symmetry::Square: return "Square";
        case Symmetry::IsoscelesTrapezium: return "IsoscelesTrapezium";
    }
    return "None";
}

constexpr std::string_view to_string(Hull h) { return h == Hull::Concave ? "Concave" : "Convex"; }

/// Small bit set of symmetry tags; an empty set reads as "None".
class SymmetrySet {
public:
    constexpr SymmetrySet() = default;

    constexpr void insert(Symmetry s) { bits_ |= static_cast<unsigned>(s); }
    constexpr bool contains(Symmetry s) const { return (bits_ & static_cast<unsigned>(s)) != 0; }
    constexpr bool empty() const { return bits_ == 0; }

    std::vector<std::string> names() const {
        std::vector<std::string> out;
        for (auto s : kAllSymmetries)
            if (contains(s)) out.emplace_back(to_string(s));
        if (out.empty()) out.emplace_back("None");
        return out;
    }

    friend constexpr bool operator==(const SymmetrySet&, const SymmetrySet&) = default;

private:
    unsigned bits_ = 0;
};

struct Classification {
    Hull hull = Hull::Concave;
    SymmetrySet symmetries;

    friend bool operator==(const Classification&, const Classification&) = default;
};

/// Independent residual checks of a solved configuration. Every entry is a
/// dimensionless relative quantity (see solver.hpp for the normalizations).
struct ResidualReport {
    double plane_sum = 0.0;
    double quad_constraint = 0.0;
    double laura_andoyer = 0.0;
    double central_eq = 0.0;
    double sigma_identity = 0.0;

    double max() const { return std::max({plane_sum, quad_constraint, laura_andoyer, central_eq, sigma_identity}); }

    friend bool operator==(const ResidualReport&, const ResidualReport&) = default;
};

struct CentralConfig {
    WeightedAreas areas_in;  // canonical orientation
    bool sign_flipped = false;
    double lambda = 0.0;
    double sigma = 1.0;
    DistanceSet distances;
    SignedAreas signed_areas;
    std::array<double, 4> masses{};
    std::array<Point2, 4> coords{};
    Classification classification;
    ResidualReport diagnostics;
    /// Every root of the planarity residual found in the bracket, the chosen one included.
    std::vector<double> candidate_roots;

    double total_mass() const { return masses[0] + masses[1] + masses[2] + masses[3]; }

    friend bool operator==(const CentralConfig&, const CentralConfig&) = default;
};

enum class LimitKind {
    EulerConvex,
    LagrangeConcave,
    LagrangeConvex,
    Coorbital,
    GeneralLagrange,
    GeneralEulerCollinear,
    GeneralCoorbital,
    Maxwell1p3,
};

constexpr std::string_view to_string(LimitKind k) {
    switch (k) {
        case LimitKind::EulerConvex: return "EulerConvex";
        case LimitKind::LagrangeConcave: return "LagrangeConcave";
        case LimitKind::LagrangeConvex: return "LagrangeConvex";
        case LimitKind::Coorbital: return "Coorbital";
        case LimitKind::GeneralLagrange: return "GeneralLagrange";
        case LimitKind::GeneralEulerCollinear: return "GeneralEulerCollinear";
        case LimitKind::GeneralCoorbital: return "GeneralCoorbital";
        case LimitKind::Maxwell1p3: return "Maxwell1p3";
    }
    return "Unknown";
}

struct LimitSolution {
    LimitKind kind = LimitKind::EulerConvex;
    /// Limiting distances; collinear (degenerate) triples are allowed here.
    std::optional<DistanceSet> distances;
    /// Either lambda itself or the finite product lambda * A_k when A_k diverges.
    double lambda_or_product = 0.0;
    std::map<std::string, double> aux;

    friend bool operator==(const LimitSolution&, const LimitSolution&) = default;
};

// ---------------------------------------------------------------------------
// Relabelling

/// new label i carries the data of old label p[i]
using Permutation = std::array<int, 4>;

inline const std::array<Permutation, 24>& all_permutations() {
    static const std::array<Permutation, 24> perms = [] {
        std::array<Permutation, 24> out{};
        Permutation p{0, 1, 2, 3};
        std::size_t k = 0;
        do {
            out[k++] = p;
        } while (std::next_permutation(p.begin(), p.end()));
        return out;
    }();
    return perms;
}

inline WeightedAreas permute(const WeightedAreas& w, const Permutation& p) {
    return {{w[p[0]], w[p[1]], w[p[2]], w[p[3]]}};
}

inline DistanceSet permute(const DistanceSet& d, const Permutation& p) {
    DistanceSet out;
    for (std::size_t k = 0; k < kPairs.size(); ++k) out.r[k] = d(p[kPairs[k][0]], p[kPairs[k][1]]);
    return out;
}

/// Permutes values only; an odd relabelling would flip every determinant sign,
/// which none of the homogeneous relations checked on these values can see.
template <class T>
std::array<T, 4> permute(const std::array<T, 4>& v, const Permutation& p) {
    return {v[static_cast<std::size_t>(p[0])], v[static_cast<std::size_t>(p[1])], v[static_cast<std::size_t>(p[2])],
            v[static_cast<std::size_t>(p[3])]};
}

// ---------------------------------------------------------------------------
// Validation and classification of inputs

inline constexpr double kAreaEqualityTol = 1e-12;

/// Flips the global sign when three of the four constants are negative.
inline WeightedAreas canonical(const WeightedAreas& w) {
    const auto negatives = std::count_if(w.a.begin(), w.a.end(), [](double v) { return v < 0.0; });
    if (negatives < 3) return w;
    return {{-w[0], -w[1], -w[2], -w[3]}};
}

inline bool needs_flip(const WeightedAreas& w) { return !(canonical(w) == w); }

namespace detail {

inline bool eq_area(double a, double b) { return approx_equal(a, b, kAreaEqualityTol); }

inline SymmetrySet detect_symmetries(const WeightedAreas& w, Hull hull) {
    SymmetrySet out;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (eq_area(w[i], w[j])) out.insert(Symmetry::Kite);

    if (hull == Hull::Concave) {
        for (int skip = 0; skip < 4; ++skip) {
            std::array<double, 3> t{};
            int n = 0;
            for (int j = 0; j < 4; ++j)
                if (j != skip) t[static_cast<std::size_t>(n++)] = w[j];
            if (eq_area(t[0], t[1]) && eq_area(t[1], t[2])) out.insert(Symmetry::EquilateralCenter);
        }
        return out;
    }

    std::array<int, 2> pos{};
    std::array<int, 2> neg{};
    int np = 0;
    int nn = 0;
    for (int j = 0; j < 4; ++j) {
        if (w[j] > 0)
            pos[static_cast<std::size_t>(np++)] = j;
        else
            neg[static_cast<std::size_t>(nn++)] = j;
    }
    const bool rhombus = eq_area(w[pos[0]], w[pos[1]]) && eq_area(w[neg[0]], w[neg[1]]);
    const bool trapezium = (eq_area(w[pos[0]], -w[neg[0]]) && eq_area(w[pos[1]], -w[neg[1]])) ||
                           (eq_area(w[pos[0]], -w[neg[1]]) && eq_area(w[pos[1]], -w[neg[0]]));
    if (rhombus) out.insert(Symmetry::Rhombus);
    if (trapezium) out.insert(Symmetry::IsoscelesTrapezium);
    if (rhombus && trapezium) out.insert(Symmetry::Square);
    return out;
}

}  // namespace detail

/// Checks the input constants and classifies the hull and the symmetry
/// pattern implied by equalities among them.
inline Classification validate_areas(const WeightedAreas& w) {
    for (double v : w.a) FOURBODY_REQUIRE(std::isfinite(v), ErrorCode::NonFinite, "weighted areas must be finite");
    for (double v : w.a)
        FOURBODY_REQUIRE(v != 0.0, ErrorCode::ZeroArea,
                         "a zero weighted area is a limiting case; use the limits module");
    const auto c = canonical(w);
    const auto negatives = std::count_if(c.a.begin(), c.a.end(), [](double v) { return v < 0.0; });
    FOURBODY_REQUIRE(negatives > 0, ErrorCode::AllSameSign,
                     "all weighted areas share one sign; no planar configuration exists");
    Classification out;
    out.hull = negatives == 1 ? Hull::Concave : Hull::Convex;
    out.symmetries = detail::detect_symmetries(c, out.hull);
    return out;
}

}  // namespace fourbody
