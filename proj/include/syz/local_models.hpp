#pragma once

// Explicit local special-Lagrangian fibration models on C^3: the
// Harvey-Lawson map, its discriminant rays, the diagonal torus action,
// and the piecewise-smooth fibrations F+- with fibers N+-_{a,c}.  A
// finite-difference checker verifies the special-Lagrangian conditions
// (omega restricts to zero, Im of the holomorphic volume restricts to
// zero) on sampled fiber points.

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "syz/common.hpp"
#include "syz/laurent.hpp"

namespace syz {

using C3 = std::array<Complex, 3>;

/// (Im(z1 z2 z3), |z1|^2 - |z2|^2, |z1|^2 - |z3|^2).
inline std::array<double, 3> hl_map(const C3& z) {
    const Complex p = z[0] * z[1] * z[2];
    return {p.imag(), std::norm(z[0]) - std::norm(z[1]),
            std::norm(z[0]) - std::norm(z[2])};
}

/// Diagonal torus with determinant one; the third angle is -t1-t2.
inline C3 torus_act(const C3& z, double t1, double t2) {
    return {z[0] * std::polar(1.0, t1), z[1] * std::polar(1.0, t2),
            z[2] * std::polar(1.0, -t1 - t2)};
}

enum class HLStratum { RayI, RayII, RayIII, Origin, Off };

inline const char* to_string(HLStratum s) {
    switch (s) {
        case HLStratum::RayI: return "ray-i";
        case HLStratum::RayII: return "ray-ii";
        case HLStratum::RayIII: return "ray-iii";
        case HLStratum::Origin: return "origin";
        case HLStratum::Off: return "off";
    }
    return "off";
}

/// The discriminant of the Harvey-Lawson fibration: three rays in the
/// plane x1 = 0, classified within an absolute tolerance.
///   ray I:   x2 = 0,  x3 <= 0     (image of the axis z1 = z2 = 0)
///   ray II:  x2 <= 0, x3 = 0      (image of the axis z1 = z3 = 0)
///   ray III: x2 = x3 >= 0         (image of the axis z2 = z3 = 0)
inline HLStratum hl_discriminant_classify(const std::array<double, 3>& x, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    if (r < tol) return HLStratum::Origin;
    if (std::abs(x[0]) >= tol) return HLStratum::Off;
    if (std::abs(x[1]) < tol && x[2] <= tol) return HLStratum::RayI;
    if (std::abs(x[2]) < tol && x[1] <= tol) return HLStratum::RayII;
    if (std::abs(x[1] - x[2]) < tol && x[1] >= -tol) return HLStratum::RayIII;
    return HLStratum::Off;
}

struct JoyceTarget {
    double a = 0.0;
    Complex c;
};

/// The piecewise-smooth fibration F+- of C^3 over R x C.
inline JoyceTarget joyce_F(int sign, const C3& z) {
    if (sign != 1 && sign != -1)
        throw std::invalid_argument("sign must be +1 or -1");
    const double a = 0.5 * (std::norm(z[0]) - std::norm(z[1]));
    if (z[0] == Complex(0.0, 0.0) && z[1] == Complex(0.0, 0.0)) return {a, z[2]};
    const double denom =
        std::norm(z[1]) <= std::norm(z[0]) ? std::abs(z[0]) : std::abs(z[1]);
    const Complex shift = std::conj(z[0]) * std::conj(z[1]) / denom;
    return {a, z[2] - static_cast<double>(sign) * shift};
}

/// Membership in the fiber N+-_{a,c}: the three moduli combinations
/// agree pairwise, the product z1 z2 (z3 - c) is real, and its sign
/// matches.
inline bool joyce_N_member(int sign, double a, Complex c, const C3& z,
                           double tol = 1e-9) {
    if (sign != 1 && sign != -1)
        throw std::invalid_argument("sign must be +1 or -1");
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    const double q1 = std::norm(z[0]) - a;
    const double q2 = std::norm(z[1]) + a;
    const double q3 = std::norm(z[2] - c) + std::abs(a);
    if (std::abs(q1 - q2) >= tol || std::abs(q2 - q3) >= tol ||
        std::abs(q1 - q3) >= tol)
        return false;
    const Complex w = z[0] * z[1] * (z[2] - c);
    if (std::abs(w.imag()) >= tol) return false;
    return static_cast<double>(sign) * w.real() >= -tol;
}

/// One inclusion of the identity (F+-)^{-1}(a, c) = N+-_{a,c}.
inline bool joyce_roundtrip(int sign, const C3& z, double tol = 1e-9) {
    const JoyceTarget t = joyce_F(sign, z);
    return joyce_N_member(sign, t.a, t.c, z, tol);
}

/// Area of the holomorphic disk whose boundary circle lies on N+-_{a,c}:
/// {|z1|^2 <= 2a} for a > 0 and {|z2|^2 <= -2a} for a < 0, both of
/// Euclidean area 2 pi |a|.  The disks shrink to the singular point as
/// a -> 0.
inline double disk_area(double a) {
    const double pi = 4.0 * std::atan(1.0);
    return 2.0 * pi * std::abs(a);
}

/// Ribbon discriminant of the theory-backed fibration: the strip
/// {(0, x2, x3) : 0 <= x2 <= 1}, with x3 free.
inline bool ribbon_contains(const std::array<double, 3>& x, double tol = 1e-9) {
    return std::abs(x[0]) <= tol && x[1] >= -tol && x[1] <= 1.0 + tol;
}

struct FiberSample {
    std::vector<C3> points;
    int failures = 0;
};

/// Points on a smooth Harvey-Lawson fiber.  The fiber is a torus bundle
/// over a line: radii come from a scan parameter t = |z1|^2 large enough
/// to reach the requested Im(z1 z2 z3), phases from the torus action, so
/// every produced point satisfies the fiber equations to rounding.
inline FiberSample sample_hl_fiber(const std::array<double, 3>& x, int count,
                                   std::uint64_t seed = 1) {
    if (count < 1) throw std::invalid_argument("sample count must be positive");
    if (hl_discriminant_classify(x, 1e-9) != HLStratum::Off)
        throw std::invalid_argument(
            "sample_hl_fiber: target lies on the discriminant; fiber is singular");
    FiberSample out;
    SplitMix64 rng(seed);
    const double t_floor = std::max({0.0, x[1], x[2]});
    for (int k = 0; k < count; ++k) {
        double t = t_floor + rng.uniform(0.3, 2.0);
        auto product = [&](double tt) {
            return std::sqrt(tt * (tt - x[1]) * (tt - x[2]));
        };
        int grow = 0;
        while (product(t) < std::abs(x[0]) * 1.05 && grow < 200) {
            t = t_floor + 2.0 * (t - t_floor) + 0.1;
            ++grow;
        }
        if (product(t) < std::abs(x[0])) {
            ++out.failures;
            continue;
        }
        const double r1 = std::sqrt(t);
        const double r2 = std::sqrt(t - x[1]);
        const double r3 = std::sqrt(t - x[2]);
        double big_phi = std::asin(x[0] / (r1 * r2 * r3));
        if (rng.next_below(2) == 1) {
            const double pi = 4.0 * std::atan(1.0);
            big_phi = pi - big_phi;  // the other sheet of the sine
        }
        const double p1 = rng.uniform(0.0, 8.0 * std::atan(1.0));
        const double p2 = rng.uniform(0.0, 8.0 * std::atan(1.0));
        out.points.push_back({std::polar(r1, p1), std::polar(r2, p2),
                              std::polar(r3, big_phi - p1 - p2)});
    }
    return out;
}

/// Points on the smooth part of N+-_{a,c}, sampled away from the
/// degenerate circles (all radii strictly positive).
inline FiberSample sample_joyce_fiber(int sign, double a, Complex c, int count,
                                      std::uint64_t seed = 1) {
    if (sign != 1 && sign != -1)
        throw std::invalid_argument("sign must be +1 or -1");
    if (count < 1) throw std::invalid_argument("sample count must be positive");
    FiberSample out;
    SplitMix64 rng(seed);
    const double pi = 4.0 * std::atan(1.0);
    for (int k = 0; k < count; ++k) {
        const double s = std::abs(a) + rng.uniform(0.1, 2.0);
        const double r1 = std::sqrt(s + a);
        const double r2 = std::sqrt(s - a);
        const double r3 = std::sqrt(s - std::abs(a));
        const double p1 = rng.uniform(0.0, 2.0 * pi);
        const double p2 = rng.uniform(0.0, 2.0 * pi);
        const double target = sign == 1 ? 0.0 : pi;  // argument of z1 z2 (z3-c)
        const Complex zeta = std::polar(r3, target - p1 - p2);
        out.points.push_back({std::polar(r1, p1), std::polar(r2, p2), c + zeta});
    }
    return out;
}

/// Kaehler form i sum dz_j ^ dzbar_j evaluated on two tangent vectors.
inline double kahler_omega(const C3& u, const C3& v) {
    double total = 0.0;
    for (int j = 0; j < 3; ++j)
        total += 2.0 * (std::conj(u[static_cast<std::size_t>(j)]) *
                        v[static_cast<std::size_t>(j)])
                           .imag();
    return total;
}

/// Holomorphic volume dz1 ^ dz2 ^ dz3 on three tangent vectors.
inline Complex holomorphic_volume(const C3& u, const C3& v, const C3& w) {
    return u[0] * (v[1] * w[2] - v[2] * w[1]) - u[1] * (v[0] * w[2] - v[2] * w[0]) +
           u[2] * (v[0] * w[1] - v[1] * w[0]);
}

struct SlagReport {
    double max_omega = 0.0;           // max |omega(u,v)| over frame pairs
    double max_im_ratio = 0.0;        // max |Im Omega| / |Omega| over frames
    std::size_t samples = 0;
    std::size_t flagged = 0;          // rank-deficient constraint Jacobians
    double step = 1e-5;
};

/// Three real constraints cutting out a fiber locally.
using SlagConstraints = std::function<std::array<double, 3>(const C3&)>;

inline SlagConstraints hl_constraints(const std::array<double, 3>& x) {
    return [x](const C3& z) {
        const std::array<double, 3> v = hl_map(z);
        return std::array<double, 3>{v[0] - x[0], v[1] - x[1], v[2] - x[2]};
    };
}

inline SlagConstraints joyce_constraints(double a, Complex c) {
    return [a, c](const C3& z) {
        const double q1 = std::norm(z[0]) - a;
        const double q2 = std::norm(z[1]) + a;
        const double q3 = std::norm(z[2] - c) + std::abs(a);
        const Complex w = z[0] * z[1] * (z[2] - c);
        return std::array<double, 3>{q1 - q2, q2 - q3, w.imag()};
    };
}

/// Special-Lagrangian residuals on fiber points: builds an orthonormal
/// tangent frame as the kernel of the central-difference Jacobian of the
/// constraints and evaluates the Kaehler form on all frame pairs and the
/// imaginary part of the holomorphic volume on the frame.  Points whose
/// Jacobian loses rank (singular points of the fiber) are flagged and
/// excluded from the residual maxima.
inline SlagReport slag_check(const std::vector<C3>& points,
                             const SlagConstraints& constraints, double h = 1e-5) {
    if (!(h > 0.0)) throw std::invalid_argument("step must be positive");
    for (std::size_t p = 0; p < points.size(); ++p) {
        const std::array<double, 3> g = constraints(points[p]);
        if (std::abs(g[0]) > 1e-6 || std::abs(g[1]) > 1e-6 || std::abs(g[2]) > 1e-6)
            throw std::invalid_argument(
                "slag_check: a point does not satisfy the fiber equations");
    }

    struct PointResult {
        double omega = 0.0;
        double im_ratio = 0.0;
        bool flagged = false;
    };
    std::vector<PointResult> results(points.size());

    parallel_for(points.size(), [&](std::size_t p) {
        const C3& z = points[p];
        Eigen::Matrix<double, 3, 6> jac;
        for (int k = 0; k < 6; ++k) {
            C3 hi = z, lo = z;
            const int cj = k / 2;
            const Complex delta =
                k % 2 == 0 ? Complex(h, 0.0) : Complex(0.0, h);
            hi[static_cast<std::size_t>(cj)] += delta;
            lo[static_cast<std::size_t>(cj)] -= delta;
            const std::array<double, 3> ghi = constraints(hi);
            const std::array<double, 3> glo = constraints(lo);
            for (int r = 0; r < 3; ++r)
                jac(r, k) = (ghi[static_cast<std::size_t>(r)] -
                             glo[static_cast<std::size_t>(r)]) /
                            (2.0 * h);
        }
        Eigen::JacobiSVD<Eigen::Matrix<double, 3, 6>> svd(
            jac, Eigen::ComputeFullU | Eigen::ComputeFullV);
        const double sigma_top = svd.singularValues()(0);
        const double sigma_min = svd.singularValues()(2);
        if (sigma_min < 1e-7 * std::max(1.0, sigma_top)) {
            results[p].flagged = true;
            return;
        }
        C3 frame[3];
        for (int t = 0; t < 3; ++t) {
            const Eigen::Matrix<double, 6, 1> col = svd.matrixV().col(3 + t);
            for (int j = 0; j < 3; ++j)
                frame[t][static_cast<std::size_t>(j)] =
                    Complex(col(2 * j), col(2 * j + 1));
        }
        double omega_max = 0.0;
        for (int s = 0; s < 3; ++s)
            for (int t = s + 1; t < 3; ++t)
                omega_max = std::max(
                    omega_max, std::abs(kahler_omega(frame[s], frame[t])));
        const Complex vol = holomorphic_volume(frame[0], frame[1], frame[2]);
        results[p].omega = omega_max;
        // A vanishing volume means the frame is degenerate for the
        // holomorphic form; report the worst possible phase misalignment.
        results[p].im_ratio =
            std::abs(vol) > 0.0 ? std::abs(vol.imag()) / std::abs(vol) : 1.0;
    });

    SlagReport report;
    report.step = h;
    report.samples = points.size();
    for (const PointResult& r : results) {
        if (r.flagged) {
            ++report.flagged;
            continue;
        }
        report.max_omega = std::max(report.max_omega, r.omega);
        report.max_im_ratio = std::max(report.max_im_ratio, r.im_ratio);
    }
    return report;
}

}  // namespace syz
