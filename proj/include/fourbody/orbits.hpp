#pragma once

// Homographic elliptic motion: every position is the solved configuration
// multiplied (as a complex number) by the same Kepler orbit f(t), with the
// focus at the center of mass, periapsis at t = 0 and |f(0)| = 1.

#include "fourbody/errors.hpp"
#include "fourbody/model.hpp"
#include "fourbody/solver.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

namespace fourbody::orbits {

struct OrbitParams {
    double eccentricity = 0.0;
    int samples = 360;  // per period
    double periods = 1.0;
    bool mirror = false;  // reflect y, giving the mirror arrangement
};

struct OrbitSample {
    double time = 0.0;
    std::array<Point2, 4> positions{};
};

struct KeplerElements {
    double mu = 0.0;  // sigma * total mass
    double semi_major = 0.0;
    double eccentricity = 0.0;
    double mean_motion = 0.0;
    double period = 0.0;
};

inline void validate(const OrbitParams& p) {
    FOURBODY_REQUIRE(std::isfinite(p.eccentricity) && p.eccentricity >= 0.0 && p.eccentricity < 1.0,
                     ErrorCode::InvalidArgument, "eccentricity must lie in [0, 1)");
    FOURBODY_REQUIRE(p.samples >= 2, ErrorCode::InvalidArgument, "samples must be at least 2");
    FOURBODY_REQUIRE(std::isfinite(p.periods) && p.periods > 0.0, ErrorCode::InvalidArgument, "periods must be positive");
}

/// Solves E - e sin E = M by Newton steps kept inside a shrinking bracket.
inline double kepler_solve(double mean_anomaly, double e) {
    FOURBODY_REQUIRE(e >= 0.0 && e < 1.0, ErrorCode::InvalidArgument, "kepler_solve needs 0 <= e < 1");
    FOURBODY_REQUIRE(std::isfinite(mean_anomaly), ErrorCode::NonFinite, "mean anomaly must be finite");
    if (e == 0.0) return mean_anomaly;
    constexpr double two_pi = 2.0 * std::numbers::pi;
    const double turns = std::round(mean_anomaly / two_pi);
    const double m = mean_anomaly - turns * two_pi;  // in [-pi, pi]

    // E - M = e sin E lies in [-e, e]
    double lo = m - e, hi = m + e;
    double x = m + e * std::sin(m);
    for (int it = 0; it < 100; ++it) {
        const double f = x - e * std::sin(x) - m;
        if (f == 0.0) break;
        if (f < 0.0)
            lo = x;
        else
            hi = x;
        double next = x - f / (1.0 - e * std::cos(x));
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - x) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x))) {
            x = next;
            break;
        }
        x = next;
    }
    return x + turns * two_pi;
}

inline KeplerElements kepler_elements(const CentralConfig& c, double e) {
    KeplerElements k;
    k.mu = c.sigma * c.total_mass();
    FOURBODY_REQUIRE(k.mu > 0.0 && std::isfinite(k.mu), ErrorCode::InvalidConfig, "total mass must be positive");
    k.eccentricity = e;
    k.semi_major = 1.0 / (1.0 - e);
    k.mean_motion = std::sqrt(k.mu / (k.semi_major * k.semi_major * k.semi_major));
    k.period = 2.0 * std::numbers::pi / k.mean_motion;
    return k;
}

/// Complex scale factor f(t) of the homographic motion.
inline std::complex<double> kepler_factor(const KeplerElements& k, double t) {
    const double e = k.eccentricity;
    const double big_e = kepler_solve(k.mean_motion * t, e);
    return {k.semi_major * (std::cos(big_e) - e), k.semi_major * std::sqrt(1.0 - e * e) * std::sin(big_e)};
}

inline std::array<Point2, 4> positions_at(const CentralConfig& c, const KeplerElements& k, double t,
                                          bool mirror = false) {
    const auto f = kepler_factor(k, t);
    std::array<Point2, 4> out{};
    for (std::size_t j = 0; j < 4; ++j) {
        const std::complex<double> z = f * std::complex<double>(c.coords[j].x, c.coords[j].y);
        out[j] = {z.real(), mirror ? -z.imag() : z.imag()};
    }
    return out;
}

/// Samples spaced uniformly in time, round(samples * periods) of them, the
/// first at periapsis.
inline std::vector<OrbitSample> generate_orbit(const CentralConfig& c, const OrbitParams& p) {
    validate(p);
    const auto report = verify(c);
    FOURBODY_REQUIRE(report.central_eq < 1e-8, ErrorCode::InvalidConfig,
                     "generate_orbit needs a configuration whose central equation residual is below 1e-8");
    const auto k = kepler_elements(c, p.eccentricity);
    const auto n = static_cast<std::size_t>(std::llround(static_cast<double>(p.samples) * p.periods));
    const double dt = k.period / static_cast<double>(p.samples);
    std::vector<OrbitSample> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = dt * static_cast<double>(i);
        out.push_back({t, positions_at(c, k, t, p.mirror)});
    }
    return out;
}

/// Newtonian accelerations with G = 1.
inline std::array<Point2, 4> newton_accelerations(const std::array<Point2, 4>& x, const std::array<double, 4>& m) {
    std::array<Point2, 4> acc{};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            if (i == j) continue;
            const Point2 d = x[j] - x[i];
            const double r = norm(d);
            acc[i] = acc[i] + (m[j] / (r * r * r)) * d;
        }
    return acc;
}

}  // namespace fourbody::orbits
