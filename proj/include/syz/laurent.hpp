#pragma once

// Laurent polynomials with complex coefficients in up to four variables.
// Terms are kept in a canonical form (lexicographically sorted exponents,
// exact duplicates merged, zero coefficients dropped) so that evaluation
// order — and therefore floating point output — is reproducible.

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "syz/common.hpp"

namespace syz {

using Complex = std::complex<double>;
using Exponent = std::vector<std::int64_t>;

struct Term {
    Exponent exponent;
    Complex coefficient;
};

class LaurentPolynomial {
  public:
    LaurentPolynomial(int num_vars, std::vector<Term> terms)
        : num_vars_(num_vars), terms_(std::move(terms)) {
        if (num_vars_ < 1 || num_vars_ > 4)
            throw std::invalid_argument("polynomial must have 1 to 4 variables");
        for (const Term& t : terms_)
            if (static_cast<int>(t.exponent.size()) != num_vars_)
                throw std::invalid_argument("exponent arity does not match variable count");
        canonicalize();
    }

    int num_vars() const { return num_vars_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Exponent-vector list of the support, in canonical (lex) order.
    std::vector<Exponent> support() const {
        std::vector<Exponent> s;
        s.reserve(terms_.size());
        for (const Term& t : terms_) s.push_back(t.exponent);
        return s;
    }

    /// Evaluate at a point of the algebraic torus; all coordinates must be
    /// nonzero since exponents may be negative.  Terms are summed in
    /// canonical order.
    Complex evaluate(const std::vector<Complex>& z) const {
        if (static_cast<int>(z.size()) != num_vars_)
            throw std::invalid_argument("evaluation point arity mismatch");
        for (const Complex& zj : z)
            if (zj == Complex(0.0, 0.0))
                throw std::domain_error("evaluation requires nonzero coordinates");
        Complex sum(0.0, 0.0);
        for (const Term& t : terms_) {
            Complex monomial(1.0, 0.0);
            for (int j = 0; j < num_vars_; ++j)
                monomial *= integer_power(z[j], t.exponent[j]);
            sum += t.coefficient * monomial;
        }
        return sum;
    }

    friend bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b) {
        if (a.num_vars_ != b.num_vars_ || a.terms_.size() != b.terms_.size()) return false;
        for (std::size_t i = 0; i < a.terms_.size(); ++i) {
            if (a.terms_[i].exponent != b.terms_[i].exponent) return false;
            if (a.terms_[i].coefficient != b.terms_[i].coefficient) return false;
        }
        return true;
    }

    static Complex integer_power(Complex base, std::int64_t e) {
        if (e == 0) return Complex(1.0, 0.0);
        bool invert = e < 0;
        std::uint64_t n = invert ? static_cast<std::uint64_t>(-e)
                                 : static_cast<std::uint64_t>(e);
        Complex acc(1.0, 0.0);
        Complex b = base;
        while (n != 0) {
            if (n & 1) acc *= b;
            b *= b;
            n >>= 1;
        }
        return invert ? Complex(1.0, 0.0) / acc : acc;
    }

  private:
    void canonicalize() {
        std::vector<Term> merged;
        // Insertion sort by exponent; supports stay small (tens of terms).
        for (Term& t : terms_) {
            std::size_t pos = 0;
            bool dup = false;
            for (; pos < merged.size(); ++pos) {
                if (merged[pos].exponent == t.exponent) {
                    merged[pos].coefficient += t.coefficient;
                    dup = true;
                    break;
                }
                if (t.exponent < merged[pos].exponent) break;
            }
            if (!dup) merged.insert(merged.begin() + static_cast<std::ptrdiff_t>(pos), t);
        }
        terms_.clear();
        for (Term& t : merged)
            if (t.coefficient != Complex(0.0, 0.0)) terms_.push_back(std::move(t));
    }

    int num_vars_;
    std::vector<Term> terms_;
};

/// Coefficients of the univariate polynomial obtained by fixing every
/// variable except `free_var`.  Returned as (lowest exponent, coefficient
/// list from that exponent upward).
struct UnivariateSlice {
    std::int64_t min_exponent = 0;
    std::vector<Complex> coefficients;  // coefficients[k] multiplies t^(min_exponent+k)
};

inline UnivariateSlice univariate_slice(const LaurentPolynomial& f, int free_var,
                                        const std::vector<Complex>& fixed) {
    const int n = f.num_vars();
    if (free_var < 0 || free_var >= n)
        throw std::invalid_argument("free variable index out of range");
    if (static_cast<int>(fixed.size()) != n)
        throw std::invalid_argument("fixed point arity mismatch");
    if (f.is_zero()) return {};
    std::int64_t lo = 0, hi = 0;
    bool first = true;
    for (const Term& t : f.terms()) {
        std::int64_t e = t.exponent[free_var];
        if (first || e < lo) lo = e;
        if (first || e > hi) hi = e;
        first = false;
    }
    UnivariateSlice slice;
    slice.min_exponent = lo;
    slice.coefficients.assign(static_cast<std::size_t>(hi - lo + 1), Complex(0.0, 0.0));
    for (const Term& t : f.terms()) {
        Complex c = t.coefficient;
        for (int j = 0; j < n; ++j) {
            if (j == free_var) continue;
            c *= LaurentPolynomial::integer_power(fixed[j], t.exponent[j]);
        }
        slice.coefficients[static_cast<std::size_t>(t.exponent[free_var] - lo)] += c;
    }
    return slice;
}

}  // namespace syz
