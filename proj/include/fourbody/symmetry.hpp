#pragma once

// Symmetric families: each predicate fires on the A-level condition and then
// confirms the geometric consequences on the solved configuration. A false
// return with the A-level condition satisfied means the solution disagrees
// with the characterization.

#include "fourbody/model.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace fourbody::symmetry {

inline constexpr double kGeomTol = 1e-9;      // distances, masses, areas
inline constexpr double kProductTol = 1e-12;  // products of the exact inputs

namespace detail {

inline bool eq(double a, double b) { return approx_equal(a, b, kGeomTol); }

inline std::array<int, 2> others(int i, int j) {
    std::array<int, 2> out{};
    int n = 0;
    for (int k = 0; k < 4; ++k)
        if (k != i && k != j) out[static_cast<std::size_t>(n++)] = k;
    return out;
}

inline double at(const std::array<double, 4>& v, int j) { return v[static_cast<std::size_t>(j)]; }

}  // namespace detail

/// Kite: an equal pair A_i = A_j forces equal distances from i and j to each
/// of the two axis particles, S_i = S_j and m_i = m_j.
inline bool check_kite(const CentralConfig& c) {
    const auto& a = c.areas_in;
    const auto& d = c.distances;
    bool any = false;
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            if (!approx_equal(a[i], a[j], kAreaEqualityTol)) continue;
            any = true;
            const auto [k, l] = detail::others(i, j);
            const bool ok = detail::eq(d(i, k), d(j, k)) && detail::eq(d(i, l), d(j, l)) &&
                            detail::eq(c.signed_areas[i], c.signed_areas[j]) &&
                            detail::eq(detail::at(c.masses, i), detail::at(c.masses, j));
            if (!ok) return false;
        }
    }
    return any;
}

/// Three equal constants: particles on an equilateral triangle with the
/// fourth at its center.
inline bool check_equilateral_center(const CentralConfig& c) {
    const auto& a = c.areas_in;
    const auto& d = c.distances;
    for (int center = 0; center < 4; ++center) {
        const auto t = [&] {
            std::array<int, 3> v{};
            int n = 0;
            for (int k = 0; k < 4; ++k)
                if (k != center) v[static_cast<std::size_t>(n++)] = k;
            return v;
        }();
        if (!(approx_equal(a[t[0]], a[t[1]], kAreaEqualityTol) && approx_equal(a[t[1]], a[t[2]], kAreaEqualityTol)))
            continue;
        const double side = d(t[0], t[1]);
        const double spoke = d(center, t[0]);
        const auto& s = c.signed_areas;
        const auto& m = c.masses;
        return detail::eq(side, d(t[1], t[2])) && detail::eq(side, d(t[2], t[0])) &&
               detail::eq(spoke, d(center, t[1])) && detail::eq(spoke, d(center, t[2])) && side > spoke &&
               detail::eq(side / spoke, std::numbers::sqrt3) && detail::eq(s[t[0]], s[t[1]]) &&
               detail::eq(s[t[1]], s[t[2]]) && detail::eq(s[t[0]], -s[center] / 3.0) &&
               detail::eq(detail::at(m, t[0]), detail::at(m, t[1])) &&
               detail::eq(detail::at(m, t[1]), detail::at(m, t[2])) &&
               detail::eq(a[center] / a[t[0]], -3.0 * detail::at(m, t[0]) / detail::at(m, center));
    }
    return false;
}

enum class RhombusKind { NotRhombus, Rhombus, Square };

constexpr std::string_view to_string(RhombusKind k) {
    switch (k) {
        case RhombusKind::NotRhombus: return "NotRhombus";
        case RhombusKind::Rhombus: return "Rhombus";
        case RhombusKind::Square: return "Square";
    }
    return "NotRhombus";
}

/// Rhombus: A1 = A3 > 0 > A2 = A4 up to relabelling; four equal sides and
/// S1 = S3 = -S2 = -S4. Square additionally needs A1 A3 = A2 A4 and then
/// equal diagonals.
inline RhombusKind check_rhombus_square(const CentralConfig& c) {
    const auto& a = c.areas_in;
    std::array<int, 2> pos{}, neg{};
    int np = 0, nn = 0;
    for (int j = 0; j < 4; ++j) {
        if (a[j] > 0 && np < 2) pos[static_cast<std::size_t>(np++)] = j;
        else if (a[j] < 0 && nn < 2) neg[static_cast<std::size_t>(nn++)] = j;
    }
    if (np != 2 || nn != 2) return RhombusKind::NotRhombus;
    if (!approx_equal(a[pos[0]], a[pos[1]], kAreaEqualityTol) || !approx_equal(a[neg[0]], a[neg[1]], kAreaEqualityTol))
        return RhombusKind::NotRhombus;

    const auto& d = c.distances;
    const auto& s = c.signed_areas;
    const double side = d(pos[0], neg[0]);
    const bool rhombus = detail::eq(side, d(pos[0], neg[1])) && detail::eq(side, d(pos[1], neg[0])) &&
                         detail::eq(side, d(pos[1], neg[1])) && detail::eq(s[pos[0]], s[pos[1]]) &&
                         detail::eq(s[pos[0]], -s[neg[0]]) && detail::eq(s[pos[0]], -s[neg[1]]);
    if (!rhombus) return RhombusKind::NotRhombus;

    const bool square_pattern = approx_equal(a[pos[0]] * a[pos[1]], a[neg[0]] * a[neg[1]], kProductTol);
    if (!square_pattern) return RhombusKind::Rhombus;
    return detail::eq(d(pos[0], pos[1]), d(neg[0], neg[1])) ? RhombusKind::Square : RhombusKind::NotRhombus;
}

/// A1 = -A2 and A3 = -A4 up to relabelling: r31 = r42, r23 = r41,
/// S1 = -S2, S3 = -S4, m1 = m2, m3 = m4.
inline bool check_isosceles_trapezium(const CentralConfig& c) {
    const auto& a = c.areas_in;
    const auto& d = c.distances;
    const auto& s = c.signed_areas;
    const auto& m = c.masses;
    // pairings of {0,1,2,3} into two unordered pairs
    constexpr std::array<std::array<int, 4>, 3> pairings{{{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}}};
    for (auto pr : pairings) {
        // orient each pair as (positive, negative)
        if (a[pr[0]] < 0) std::swap(pr[0], pr[1]);
        if (a[pr[2]] < 0) std::swap(pr[2], pr[3]);
        const int l1 = pr[0], l2 = pr[1], l3 = pr[2], l4 = pr[3];
        if (!(a[l1] > 0 && a[l2] < 0 && a[l3] > 0 && a[l4] < 0)) continue;
        if (!approx_equal(a[l1], -a[l2], kAreaEqualityTol) || !approx_equal(a[l3], -a[l4], kAreaEqualityTol)) continue;
        return detail::eq(d(l3, l1), d(l4, l2)) && detail::eq(d(l2, l3), d(l4, l1)) && detail::eq(s[l1], -s[l2]) &&
               detail::eq(s[l3], -s[l4]) && detail::eq(detail::at(m, l1), detail::at(m, l2)) &&
               detail::eq(detail::at(m, l3), detail::at(m, l4));
    }
    return false;
}

// ---------------------------------------------------------------------------
// Constructors of symmetric input families

inline WeightedAreas kite_family(double a13, double a2, double a4) { return {{a13, a2, a13, a4}}; }
inline WeightedAreas equilateral_center_family(double a123, double a4) { return {{a123, a123, a123, a4}}; }
inline WeightedAreas rhombus_family(double a13, double a24) { return {{a13, a24, a13, a24}}; }
inline WeightedAreas trapezium_family(double a1, double a3) { return {{a1, -a1, a3, -a3}}; }

}  // namespace fourbody::symmetry
