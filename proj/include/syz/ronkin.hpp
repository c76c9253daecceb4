#pragma once

// Ronkin function of a Laurent polynomial: the torus average of log|f|
// over the fiber Log^{-1}(x), evaluated by trapezoidal quadrature on an
// angle lattice.  On the complement of the amoeba the function is affine
// with an integer gradient; ronkin_order recovers that lattice vector by
// central differences.

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "syz/common.hpp"
#include "syz/laurent.hpp"
#include "syz/polytope.hpp"

namespace syz {

struct RonkinValue {
    double value = 0.0;
    double error_estimate = 0.0;    // |value(grid) - value(grid/2)|
    std::size_t excluded_nodes = 0; // nodes where |f| underflowed
    std::size_t total_nodes = 0;
    bool low_confidence = false;    // more than 0.1% of nodes excluded
};

namespace detail {

constexpr double kUnderflow = 1e-300;

struct TorusAverage {
    double value = 0.0;
    std::size_t excluded = 0;
    std::size_t total = 0;
};

/// Trapezoidal (= uniform, by periodicity) average of log|f| over the
/// grid^n angle lattice on the torus |z_j| = e^{x_j}.  Rows along the
/// first angle are independent work units merged in index order, so the
/// result is bitwise identical for any worker count.
inline TorusAverage torus_log_average(const LaurentPolynomial& f,
                                      const std::vector<double>& x, int grid) {
    const int n = f.num_vars();
    const auto& terms = f.terms();
    const std::size_t nterms = terms.size();
    const double two_pi = 8.0 * std::atan(1.0);

    // Radial scale of each term and per-variable phase lookup tables:
    // f(e^{x+i theta}) = sum_t scale_t * prod_j table[j][t][k_j].
    std::vector<Complex> scale(nterms);
    for (std::size_t t = 0; t < nterms; ++t) {
        double dot = 0.0;
        for (int j = 0; j < n; ++j)
            dot += x[static_cast<std::size_t>(j)] *
                   static_cast<double>(terms[t].exponent[static_cast<std::size_t>(j)]);
        scale[t] = terms[t].coefficient * std::exp(dot);
    }
    std::vector<std::vector<std::vector<Complex>>> table(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        table[static_cast<std::size_t>(j)].assign(nterms, std::vector<Complex>(
                                                              static_cast<std::size_t>(grid)));
        for (std::size_t t = 0; t < nterms; ++t) {
            double m = static_cast<double>(terms[t].exponent[static_cast<std::size_t>(j)]);
            for (int k = 0; k < grid; ++k)
                table[static_cast<std::size_t>(j)][t][static_cast<std::size_t>(k)] =
                    std::polar(1.0, two_pi * m * static_cast<double>(k) /
                                        static_cast<double>(grid));
        }
    }

    struct RowResult {
        double sum = 0.0;
        std::size_t excluded = 0;
    };
    std::vector<RowResult> rows(static_cast<std::size_t>(grid));
    std::vector<Complex> partial1(nterms), partial2(nterms);

    auto run_row = [&](std::size_t k1, std::vector<Complex>& p1,
                       std::vector<Complex>& p2) {
        NeumaierSum sum;
        std::size_t excluded = 0;
        auto account = [&](const Complex& v) {
            double a = std::abs(v);
            if (a < kUnderflow)
                ++excluded;
            else
                sum.add(std::log(a));
        };
        if (n == 1) {
            Complex v = 0.0;
            for (std::size_t t = 0; t < nterms; ++t) v += scale[t] * table[0][t][k1];
            account(v);
        } else {
            for (std::size_t t = 0; t < nterms; ++t) p1[t] = scale[t] * table[0][t][k1];
            if (n == 2) {
                for (int k2 = 0; k2 < grid; ++k2) {
                    Complex v = 0.0;
                    for (std::size_t t = 0; t < nterms; ++t)
                        v += p1[t] * table[1][t][static_cast<std::size_t>(k2)];
                    account(v);
                }
            } else {
                for (int k2 = 0; k2 < grid; ++k2) {
                    for (std::size_t t = 0; t < nterms; ++t)
                        p2[t] = p1[t] * table[1][t][static_cast<std::size_t>(k2)];
                    for (int k3 = 0; k3 < grid; ++k3) {
                        Complex v = 0.0;
                        for (std::size_t t = 0; t < nterms; ++t)
                            v += p2[t] * table[2][t][static_cast<std::size_t>(k3)];
                        account(v);
                    }
                }
            }
        }
        rows[k1] = RowResult{sum.result(), excluded};
    };

    if (worker_count() > 1 && n > 1) {
        parallel_for(static_cast<std::size_t>(grid), [&](std::size_t k1) {
            std::vector<Complex> p1(nterms), p2(nterms);
            run_row(k1, p1, p2);
        });
    } else {
        for (std::size_t k1 = 0; k1 < static_cast<std::size_t>(grid); ++k1)
            run_row(k1, partial1, partial2);
    }

    TorusAverage out;
    NeumaierSum total;
    for (const RowResult& r : rows) {
        total.add(r.sum);
        out.excluded += r.excluded;
    }
    out.total = 1;
    for (int j = 0; j < n; ++j) out.total *= static_cast<std::size_t>(grid);
    std::size_t included = out.total - out.excluded;
    if (included == 0)
        throw std::runtime_error("ronkin_value: all quadrature nodes excluded");
    out.value = total.result() / static_cast<double>(included);
    return out;
}

}  // namespace detail

/// Ronkin function N_f(x): quadrature value with a grid-halving error
/// estimate.  Away from the amoeba the integrand is analytic and the
/// trapezoid rule converges spectrally; on the amoeba convergence is
/// polynomial and the error estimate reflects that.
inline RonkinValue ronkin_value(const LaurentPolynomial& f,
                                const std::vector<double>& x, int grid = 512) {
    if (f.num_vars() > 3)
        throw std::invalid_argument("ronkin_value supports at most three variables");
    if (x.size() != static_cast<std::size_t>(f.num_vars()))
        throw std::invalid_argument("point dimension does not match the polynomial");
    if (grid < 64) throw std::invalid_argument("quadrature grid must be at least 64");
    detail::TorusAverage full = detail::torus_log_average(f, x, grid);
    detail::TorusAverage half = detail::torus_log_average(f, x, grid / 2);
    RonkinValue out;
    out.value = full.value;
    out.error_estimate = std::abs(full.value - half.value);
    out.excluded_nodes = full.excluded;
    out.total_nodes = full.total;
    out.low_confidence =
        static_cast<double>(full.excluded) > 1e-3 * static_cast<double>(full.total);
    return out;
}

/// Lattice order of the complement component containing x: the gradient
/// of N_f rounded to integers.  Rejects points where the gradient is not
/// within 0.1 of a lattice vector (too close to the amoeba), and checks
/// the result against the Newton polytope.
inline Exponent ronkin_order(const LaurentPolynomial& f, const std::vector<double>& x,
                             int grid = 512) {
    if (x.size() != static_cast<std::size_t>(f.num_vars()))
        throw std::invalid_argument("point dimension does not match the polynomial");
    const double h = 0.25;
    Exponent order(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        std::vector<double> hi = x, lo = x;
        hi[j] += h;
        lo[j] -= h;
        double grad = (ronkin_value(f, hi, grid).value - ronkin_value(f, lo, grid).value) /
                      (2.0 * h);
        double rounded = std::round(grad);
        if (std::abs(grad - rounded) > 0.1)
            throw std::runtime_error(
                "ronkin_order: gradient is not near a lattice vector "
                "(point too close to the amoeba)");
        order[j] = static_cast<std::int64_t>(rounded);
    }
    if (!newton_polytope(f).contains(order))
        throw std::runtime_error(
            "ronkin_order: rounded gradient falls outside the Newton polytope");
    return order;
}

}  // namespace syz
