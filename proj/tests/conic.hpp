#pragma once

// Least-squares conic through sampled points, used to recover the
// eccentricity and foci of each particle's path.

#include "fourbody/model.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <vector>

namespace fourbody::support {

struct ConicFit {
    double eccentricity = 0.0;
    Point2 focus1, focus2;
    double max_algebraic_residual = 0.0;
    double scale = 1.0;  // largest |p| among the samples
};

/// Fits A x^2 + B xy + C y^2 + D x + E y + F = 0 through the points as the
/// smallest right singular vector of the design matrix, after scaling the
/// points into the unit disc. The conic must be an ellipse.
inline ConicFit fit_conic(const std::vector<Point2>& pts) {
    ConicFit out;
    out.scale = 0.0;
    for (const auto& p : pts) out.scale = std::max(out.scale, norm(p));
    const double s = out.scale;
    Eigen::MatrixXd m(static_cast<Eigen::Index>(pts.size()), 6);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        const double x = pts[static_cast<std::size_t>(i)].x / s, y = pts[static_cast<std::size_t>(i)].y / s;
        m.row(i) << x * x, x * y, y * y, x, y, 1.0;
    }
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinV);
    const Eigen::VectorXd v = svd.matrixV().col(5);
    out.max_algebraic_residual = (m * v).cwiseAbs().maxCoeff();
    const double a = v(0), b = v(1), c = v(2), d = v(3), e = v(4), f = v(5);

    Eigen::Matrix2d q;
    q << a, b / 2, b / 2, c;
    const Eigen::Vector2d center = q.ldlt().solve(Eigen::Vector2d(-d / 2, -e / 2));
    const double f0 = f + 0.5 * (d * center(0) + e * center(1));
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(q);
    Eigen::Vector2d lam = es.eigenvalues();
    // orient so the ellipse reads lam_i u_i^2 = -f0 with positive right side
    const double sign = f0 < 0 ? 1.0 : -1.0;
    lam *= sign;
    const double f1 = -f0 * sign;
    const int major = lam(0) < lam(1) ? 0 : 1;
    const double big_a2 = f1 / lam(major), small_b2 = f1 / lam(1 - major);
    out.eccentricity = std::sqrt(1.0 - small_b2 / big_a2);
    const Eigen::Vector2d dir = es.eigenvectors().col(major);
    const double cf = std::sqrt(big_a2 - small_b2);
    const Eigen::Vector2d p1 = (center + cf * dir) * s, p2 = (center - cf * dir) * s;
    out.focus1 = {p1(0), p1(1)};
    out.focus2 = {p2(0), p2(1)};
    return out;
}

/// Distance from the origin to the nearer focus.
inline double focus_offset(const ConicFit& f) { return std::min(norm(f.focus1), norm(f.focus2)); }

}  // namespace fourbody::support
