#include "mindoc/polynomial.hpp"

#include "mindoc/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace mindoc {

namespace {

constexpr double kImagRel = 1e-9;    // |Im| tolerance for accepting an eigenvalue as real
constexpr double kDedupeRel = 1e-9;  // merge roots closer than this (relative)

/// Strip exactly-zero leading and trailing coefficients. Trailing strips
/// remove exact roots at x = 0, which the callers never need. Only exact
/// zeros may be dropped: a leading coefficient many orders of magnitude
/// below the constant term still controls the root locations (the cruise
/// quintic routinely spans 13+ decades), so magnitude-based trimming would
/// silently solve a different polynomial.
std::vector<double> trim(const std::vector<double>& coeffs) {
    std::size_t lead = 0;
    while (lead < coeffs.size() && coeffs[lead] == 0.0) ++lead;
    std::size_t tail = coeffs.size();
    while (tail > lead && coeffs[tail - 1] == 0.0) --tail;
    if (lead >= tail) throw RootError("real_roots: all coefficients are zero");
    return {coeffs.begin() + static_cast<std::ptrdiff_t>(lead),
            coeffs.begin() + static_cast<std::ptrdiff_t>(tail)};
}

void newton_polish(const std::vector<double>& coeffs, double& x) {
    // Eigenvalues of an unbalanced companion matrix can start several units
    // off the true root when the constant term dwarfs the leading one, so
    // iterate until the update stalls instead of a fixed short count.
    constexpr int kMaxPolishIters = 16;
    for (int it = 0; it < kMaxPolishIters; ++it) {
        const double f = polyval(coeffs, x);
        const double fp = polyval_derivative(coeffs, x);
        if (fp == 0.0) return;
        const double step = f / fp;
        if (!std::isfinite(step)) return;
        // Reject polish steps that leap away from the eigenvalue estimate.
        if (std::abs(step) > 0.5 * (1.0 + std::abs(x))) return;
        x -= step;
        if (std::abs(step) <= 1e-15 * (1.0 + std::abs(x))) return;
    }
}

} // namespace

double polyval(const std::vector<double>& coeffs_desc, double x) {
    double acc = 0.0;
    for (double c : coeffs_desc) acc = acc * x + c;
    return acc;
}

double polyval_derivative(const std::vector<double>& coeffs_desc, double x) {
    const std::size_t n = coeffs_desc.size();
    if (n < 2) return 0.0;
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double power = static_cast<double>(n - 1 - i);
        acc = acc * x + power * coeffs_desc[i];
    }
    return acc;
}

std::vector<double> real_roots(const std::vector<double>& coeffs_desc) {
    const std::vector<double> p = trim(coeffs_desc);
    const std::size_t degree = p.size() - 1;

    std::vector<double> roots;
    if (degree == 0) {
        return roots; // nonzero constant: no roots
    }
    if (degree == 1) {
        roots.push_back(-p[1] / p[0]);
        return roots;
    }
    if (degree == 2) {
        const double a = p[0];
        const double b = p[1];
        const double c = p[2];
        const double disc = b * b - 4.0 * a * c;
        if (disc < 0.0) return roots;
        // q-form avoids cancellation between -b and the root of the discriminant
        const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
        roots.push_back(q / a);
        if (q != 0.0) roots.push_back(c / q);
        else roots.push_back(0.0);
    } else {
        const auto n = static_cast<Eigen::Index>(degree);
        // Rescale the variable (x = scale * u) so every monic coefficient of
        // the u-polynomial has magnitude <= 1. The companion matrix then has
        // O(1) norm, which keeps the QR eigensolver accurate even when the
        // constant term dwarfs the leading one by many orders of magnitude;
        // Eigen's EigenSolver performs no balancing of its own.
        double scale = 0.0;
        for (std::size_t j = 1; j <= degree; ++j) {
            const double cj = std::abs(p[j] / p[0]);
            if (cj > 0.0)
                scale = std::max(scale, std::pow(cj, 1.0 / static_cast<double>(j)));
        }
        if (scale <= 0.0) scale = 1.0;

        Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
        double scale_pow = scale;
        for (Eigen::Index j = 0; j < n; ++j) {
            companion(0, j) = -p[static_cast<std::size_t>(j) + 1] / (p[0] * scale_pow);
            scale_pow *= scale;
        }
        for (Eigen::Index i = 1; i < n; ++i) companion(i, i - 1) = 1.0;

        Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
        if (solver.info() != Eigen::Success)
            throw RootError("real_roots: companion eigensolver failed to converge");
        for (Eigen::Index i = 0; i < n; ++i) {
            const std::complex<double> lambda = solver.eigenvalues()[i];
            if (std::abs(lambda.imag()) <= kImagRel * std::max(1.0, std::abs(lambda))) {
                double x = lambda.real() * scale;
                newton_polish(p, x);
                roots.push_back(x);
            }
        }
    }

    std::sort(roots.begin(), roots.end());
    std::vector<double> unique;
    for (double r : roots) {
        if (unique.empty() || r - unique.back() > kDedupeRel * (1.0 + std::abs(r)))
            unique.push_back(r);
    }
    return unique;
}

std::vector<double> positive_real_roots(const std::vector<double>& coeffs_desc) {
    std::vector<double> out;
    for (double r : real_roots(coeffs_desc))
        if (r > 0.0) out.push_back(r);
    return out;
}

double positive_root_sparse_quartic(double a, double b, double c) {
    if (a <= 0.0) throw DomainError("sparse_quartic: leading coefficient must be > 0");
    if (c <= 0.0) throw DomainError("sparse_quartic: constant term must be > 0");
    if (b < 0.0) throw DomainError("sparse_quartic: linear coefficient must be >= 0");

    double x;
    if (b == 0.0) {
        return std::pow(c / a, 0.25); // exact: x^4 = c / a
    }
    // Depressed quartic x^4 + q x + r with q = -b/a, r = -c/a. Factoring
    // (x^2 + s x + A)(x^2 - s x + B) yields the resolvent cubic
    // m^3 + P m = 2 R in m = s^2 / 2, with P = c/a, R = b^2 / (16 a^2).
    // P > 0 makes the cubic monotone; the sinh parameterization picks its
    // unique real root without the cancellation Cardano's difference form
    // suffers when R is tiny against P^(3/2).
    const double big_p = c / a;
    const double big_r = b * b / (16.0 * a * a);
    const double arg = (3.0 * big_r / big_p) * std::sqrt(3.0 / big_p);
    const double m = 2.0 * std::sqrt(big_p / 3.0) * std::sinh(std::asinh(arg) / 3.0);
    const double s = std::sqrt(2.0 * m);
    const double quad_a = m - b / (2.0 * a * s);
    const double quad_disc = s * s - 4.0 * quad_a;
    if (!(quad_disc >= 0.0) || !std::isfinite(quad_disc))
        throw RootError("sparse_quartic: factor discriminant is negative");
    x = 0.5 * (s + std::sqrt(quad_disc));

    for (int it = 0; it < 2; ++it) {
        const double f = (a * x * x * x - b) * x - c;
        const double fp = 4.0 * a * x * x * x - b;
        if (fp == 0.0) break;
        x -= f / fp;
    }
    if (!(x > 0.0) || !std::isfinite(x))
        throw RootError("sparse_quartic: no positive root found");
    return x;
}

} // namespace mindoc
