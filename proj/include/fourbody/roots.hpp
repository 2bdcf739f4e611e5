#pragma once

// Bracketed scalar root finding shared by the solver and the limit solvers.
// Functions may return NaN where they are undefined (e.g. a triangle
// inequality fails); the scanner treats such points as holes.

#include "fourbody/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

namespace fourbody::roots {

struct Bracket {
    double lo = 0.0;
    double hi = 0.0;
    double f_lo = 0.0;
    double f_hi = 0.0;
};

/// Brent's method on a sign-changing bracket. Stops when the bracket is
/// narrower than xtol or f vanishes exactly.
template <class F>
double brent(F&& f, Bracket b, double xtol, int max_iter = 200) {
    double a = b.lo, fa = b.f_lo;
    double c = b.hi, fc = b.f_hi;
    if (fa == 0.0) return a;
    if (fc == 0.0) return c;
    FOURBODY_REQUIRE(std::signbit(fa) != std::signbit(fc), ErrorCode::NoRoot, "brent: endpoints do not bracket a root");

    // b_ is the best estimate, a_ the previous one, c_ the contrapoint.
    double bb = c, fb = fc;
    c = a;
    fc = fa;
    double d = bb - a;
    double e = d;
    for (int iter = 0; iter < max_iter; ++iter) {
        if (std::signbit(fb) == std::signbit(fc)) {
            c = a;
            fc = fa;
            d = bb - a;
            e = d;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = bb;
            bb = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(bb) + 0.5 * xtol;
        const double m = 0.5 * (c - bb);
        if (std::abs(m) <= tol || fb == 0.0) return bb;

        if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
            double p, q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                const double qa = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (bb - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0)
                q = -q;
            else
                p = -p;
            if (2.0 * p < std::min(3.0 * m * q - std::abs(tol * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = bb;
        fa = fb;
        bb += std::abs(d) > tol ? d : (m > 0 ? tol : -tol);
        fb = f(bb);
        if (std::isnan(fb)) {
            // Interpolation stepped into a hole; fall back to bisection of the valid bracket.
            bb = a + m;
            fb = f(bb);
            if (std::isnan(fb)) return a;
        }
    }
    return bb;
}

template <class F>
double brent(F&& f, double lo, double hi, double xtol, int max_iter = 200) {
    return brent(f, Bracket{lo, hi, f(lo), f(hi)}, xtol, max_iter);
}

/// Samples f on a uniform grid over [lo, hi] and returns every adjacent pair
/// of finite samples with a sign change. Each transition between a finite and
/// a NaN sample is first narrowed by bisection, so a root sitting between the
/// last finite grid point and the edge of the domain is still bracketed.
template <class F>
std::vector<Bracket> sign_changes(F&& f, double lo, double hi, std::size_t cells, int edge_bisections = 60) {
    FOURBODY_REQUIRE(cells >= 1 && lo < hi, ErrorCode::EmptyBracket, "sign_changes: empty interval");
    std::vector<std::pair<double, double>> pts;
    pts.reserve(cells + 8);
    for (std::size_t k = 0; k <= cells; ++k) {
        const double x = k == cells ? hi : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(cells);
        pts.emplace_back(x, f(x));
    }
    std::vector<std::pair<double, double>> edges;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        const bool ok0 = !std::isnan(pts[k].second);
        const bool ok1 = !std::isnan(pts[k + 1].second);
        if (ok0 == ok1) continue;
        double good = ok0 ? pts[k].first : pts[k + 1].first;
        double bad = ok0 ? pts[k + 1].first : pts[k].first;
        double f_good = ok0 ? pts[k].second : pts[k + 1].second;
        for (int it = 0; it < edge_bisections; ++it) {
            const double mid = 0.5 * (good + bad);
            if (mid == good || mid == bad) break;
            const double fm = f(mid);
            if (std::isnan(fm)) {
                bad = mid;
            } else {
                good = mid;
                f_good = fm;
            }
        }
        edges.emplace_back(good, f_good);
    }
    pts.insert(pts.end(), edges.begin(), edges.end());
    std::sort(pts.begin(), pts.end());

    std::vector<Bracket> out;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        const auto [x0, f0] = pts[k];
        const auto [x1, f1] = pts[k + 1];
        if (std::isnan(f0) || std::isnan(f1)) continue;
        if (f0 == 0.0) {
            if (out.empty() || out.back().hi != x0) out.push_back({x0, x0, f0, f0});
            continue;
        }
        if (f1 != 0.0 && std::signbit(f0) != std::signbit(f1)) out.push_back({x0, x1, f0, f1});
    }
    if (!pts.empty() && pts.back().second == 0.0) out.push_back({pts.back().first, pts.back().first, 0.0, 0.0});
    return out;
}

}  // namespace fourbody::roots
