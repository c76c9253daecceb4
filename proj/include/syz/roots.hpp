#pragma once

// Univariate complex root finding: Aberth-Ehrlich simultaneous iteration
// with Newton-polygon (Bini) initial points, falling back to companion
// matrix eigenvalues when the iteration fails its backward-error check.
// Coefficients are normalised by the largest magnitude first, so inputs
// with enormous dynamic range (they arise from patchworking coefficients)
// are handled without overflow.

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "syz/laurent.hpp"

namespace syz {

struct UnivariateRoots {
    std::vector<Complex> roots;  // sorted by (re, im)
    bool used_fallback = false;
};

namespace detail {

inline Complex horner(const std::vector<Complex>& c, Complex z) {
    Complex acc(0.0, 0.0);
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
    return acc;
}

inline Complex horner_derivative(const std::vector<Complex>& c, Complex z) {
    Complex acc(0.0, 0.0);
    for (std::size_t k = c.size(); k-- > 1;)
        acc = acc * z + c[k] * static_cast<double>(k);
    return acc;
}

/// Relative backward error of z as a root of p.
inline double root_residual(const std::vector<Complex>& c, Complex z) {
    double az = std::abs(z);
    double denom = 0.0, powz = 1.0;
    for (std::size_t k = 0; k < c.size(); ++k) {
        denom += std::abs(c[k]) * powz;
        powz *= az;
    }
    if (denom == 0.0) return std::numeric_limits<double>::infinity();
    return std::abs(horner(c, z)) / denom;
}

/// Starting points on circles whose radii come from the upper convex hull
/// of (k, log |c_k|); this places initial guesses near each cluster of root
/// magnitudes even when coefficients span many orders of magnitude.
inline std::vector<Complex> bini_initial_points(const std::vector<Complex>& c) {
    const std::size_t d = c.size() - 1;
    std::vector<double> logc(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) {
        double a = std::abs(c[k]);
        logc[k] = a > 0.0 ? std::log(a) : -1.0e30;
    }
    // Upper convex hull by monotone scan.
    std::vector<std::size_t> hull;
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (logc[k] <= -1.0e29) continue;
        while (hull.size() >= 2) {
            std::size_t a = hull[hull.size() - 2], b = hull[hull.size() - 1];
            double cross = (logc[b] - logc[a]) * static_cast<double>(k - a) -
                           (logc[k] - logc[a]) * static_cast<double>(b - a);
            if (cross <= 0.0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(k);
    }
    std::vector<Complex> z;
    z.reserve(d);
    const double sigma = 0.7;  // fixed phase offset breaks coefficient symmetry
    for (std::size_t e = 0; e + 1 < hull.size(); ++e) {
        std::size_t k1 = hull[e], k2 = hull[e + 1];
        double radius = std::exp((logc[k1] - logc[k2]) / static_cast<double>(k2 - k1));
        std::size_t count = k2 - k1;
        for (std::size_t j = 0; j < count; ++j) {
            double angle = 2.0 * M_PI * (static_cast<double>(j) / static_cast<double>(count) +
                                         static_cast<double>(e) / static_cast<double>(d)) +
                           sigma;
            z.push_back(Complex(radius * std::cos(angle), radius * std::sin(angle)));
        }
    }
    while (z.size() < d) z.push_back(Complex(1.0, 1.0));  // defensive; hull covers d
    return z;
}

inline std::vector<Complex> companion_eigenvalues(const std::vector<Complex>& c) {
    const std::size_t d = c.size() - 1;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(d),
                                                static_cast<Eigen::Index>(d));
    for (std::size_t k = 0; k + 1 < d; ++k)
        m(static_cast<Eigen::Index>(k + 1), static_cast<Eigen::Index>(k)) = 1.0;
    for (std::size_t k = 0; k < d; ++k)
        m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(d - 1)) = -c[k] / c[d];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
    std::vector<Complex> roots(d);
    for (std::size_t k = 0; k < d; ++k)
        roots[k] = solver.eigenvalues()(static_cast<Eigen::Index>(k));
    return roots;
}

}  // namespace detail

/// Roots of c[0] + c[1] t + ... + c[d] t^d.  Requires d >= 1 and a nonzero
/// leading coefficient.  Every returned root satisfies a relative backward
/// error bound of 1e-8; if the Aberth iteration cannot reach it the
/// companion-matrix fallback is used.
inline UnivariateRoots univariate_roots(std::vector<Complex> coeffs) {
    if (coeffs.size() < 2)
        throw std::invalid_argument("root finding requires degree >= 1");
    if (coeffs.back() == Complex(0.0, 0.0))
        throw std::invalid_argument("leading coefficient must be nonzero");

    // Normalise magnitudes to tame the dynamic range.
    double maxmag = 0.0;
    for (const Complex& c : coeffs) maxmag = std::max(maxmag, std::abs(c));
    if (maxmag == 0.0) throw std::invalid_argument("zero polynomial has no roots");
    for (Complex& c : coeffs) c /= maxmag;

    // Exact zero roots: strip trailing zero coefficients.
    std::size_t order = 0;
    while (order < coeffs.size() - 1 && coeffs[order] == Complex(0.0, 0.0)) ++order;
    std::vector<Complex> c(coeffs.begin() + static_cast<std::ptrdiff_t>(order), coeffs.end());

    UnivariateRoots result;
    result.roots.assign(order, Complex(0.0, 0.0));
    const std::size_t d = c.size() - 1;
    if (d == 0) {
        std::sort(result.roots.begin(), result.roots.end(), [](Complex a, Complex b) {
            if (a.real() != b.real()) return a.real() < b.real();
            return a.imag() < b.imag();
        });
        return result;
    }

    std::vector<Complex> z = detail::bini_initial_points(c);
    std::vector<bool> locked(d, false);
    const double eps = 1e-14;
    bool converged = false;
    for (int sweep = 0; sweep < 200 && !converged; ++sweep) {
        converged = true;
        for (std::size_t i = 0; i < d; ++i) {
            if (locked[i]) continue;
            Complex p = detail::horner(c, z[i]);
            Complex dp = detail::horner_derivative(c, z[i]);
            if (dp == Complex(0.0, 0.0)) {
                z[i] += Complex(1e-6, 1e-6) * (1.0 + std::abs(z[i]));
                converged = false;
                continue;
            }
            Complex newton = p / dp;
            Complex deflation(0.0, 0.0);
            for (std::size_t j = 0; j < d; ++j) {
                if (j == i) continue;
                Complex diff = z[i] - z[j];
                if (diff == Complex(0.0, 0.0)) diff = Complex(1e-12, 1e-12);
                deflation += 1.0 / diff;
            }
            Complex denom = 1.0 - newton * deflation;
            Complex step = denom == Complex(0.0, 0.0) ? newton : newton / denom;
            z[i] -= step;
            if (std::abs(step) <= eps * (1.0 + std::abs(z[i])))
                locked[i] = true;
            else
                converged = false;
        }
    }

    bool ok = true;
    for (std::size_t i = 0; i < d; ++i)
        if (detail::root_residual(c, z[i]) > 1e-8) {
            ok = false;
            break;
        }
    if (!ok) {
        z = detail::companion_eigenvalues(c);
        result.used_fallback = true;
        for (std::size_t i = 0; i < d; ++i)
            if (detail::root_residual(c, z[i]) > 1e-8)
                throw std::runtime_error("root finder failed backward-error check");
    }

    result.roots.insert(result.roots.end(), z.begin(), z.end());
    std::sort(result.roots.begin(), result.roots.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return result;
}

}  // namespace syz
