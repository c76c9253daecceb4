#pragma once

// Exact integer matrix algebra for monodromy representations: unipotent
// invariants, integer fixed spaces (saturated, Hermite-canonical bases),
// vertex classification for torus-fibration degenerations, and the
// transpose-inverse duality that implements mirror symmetry on labels.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "syz/common.hpp"
#include "syz/rational.hpp"

namespace syz {

/// Dense square integer matrix, size 2..4.
struct IntMatrix {
    int size = 0;
    std::vector<std::int64_t> data;  // row major

    IntMatrix() = default;
    IntMatrix(int s, std::vector<std::int64_t> values) : size(s), data(std::move(values)) {
        if (s < 2 || s > 4) throw std::invalid_argument("matrix size must be 2 to 4");
        if (static_cast<int>(data.size()) != s * s)
            throw std::invalid_argument("matrix entry count mismatch");
    }

    static IntMatrix identity(int s) {
        IntMatrix m(s, std::vector<std::int64_t>(static_cast<std::size_t>(s * s), 0));
        for (int i = 0; i < s; ++i) m.at(i, i) = 1;
        return m;
    }

    std::int64_t& at(int r, int c) { return data[static_cast<std::size_t>(r * size + c)]; }
    std::int64_t at(int r, int c) const {
        return data[static_cast<std::size_t>(r * size + c)];
    }

    bool is_identity() const {
        for (int i = 0; i < size; ++i)
            for (int j = 0; j < size; ++j)
                if (at(i, j) != (i == j ? 1 : 0)) return false;
        return true;
    }

    IntMatrix transpose() const {
        IntMatrix t = *this;
        for (int i = 0; i < size; ++i)
            for (int j = 0; j < size; ++j) t.at(i, j) = at(j, i);
        return t;
    }

    friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
        return a.size == b.size && a.data == b.data;
    }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
        if (a.size != b.size) throw std::invalid_argument("matrix size mismatch");
        IntMatrix c(a.size, std::vector<std::int64_t>(a.data.size(), 0));
        for (int i = 0; i < a.size; ++i)
            for (int k = 0; k < a.size; ++k) {
                std::int64_t aik = a.at(i, k);
                if (aik == 0) continue;
                for (int j = 0; j < a.size; ++j) {
                    std::int64_t prod;
                    if (__builtin_mul_overflow(aik, b.at(k, j), &prod) ||
                        __builtin_add_overflow(c.at(i, j), prod, &c.at(i, j)))
                        throw std::overflow_error("integer matrix product overflow");
                    (void)prod;
                }
            }
        return c;
    }
};

inline std::int64_t determinant(const IntMatrix& m) {
    if (m.size == 2) return m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0);
    if (m.size == 3)
        return m.at(0, 0) * (m.at(1, 1) * m.at(2, 2) - m.at(1, 2) * m.at(2, 1)) -
               m.at(0, 1) * (m.at(1, 0) * m.at(2, 2) - m.at(1, 2) * m.at(2, 0)) +
               m.at(0, 2) * (m.at(1, 0) * m.at(2, 1) - m.at(1, 1) * m.at(2, 0));
    // size 4: Laplace expansion along the first row
    std::int64_t det = 0;
    for (int c = 0; c < 4; ++c) {
        IntMatrix minor(3, std::vector<std::int64_t>(9, 0));
        for (int i = 1; i < 4; ++i) {
            int cc = 0;
            for (int j = 0; j < 4; ++j) {
                if (j == c) continue;
                minor.at(i - 1, cc++) = m.at(i, j);
            }
        }
        std::int64_t term = m.at(0, c) * determinant(minor);
        det += (c % 2 == 0) ? term : -term;
    }
    return det;
}

inline bool is_unimodular(const IntMatrix& m) { return determinant(m) == 1; }

/// Inverse of a determinant-one integer matrix (adjugate).
inline IntMatrix inverse(const IntMatrix& m) {
    std::int64_t det = determinant(m);
    if (det != 1 && det != -1)
        throw std::domain_error("integer inverse requires determinant +-1");
    IntMatrix adj(m.size, std::vector<std::int64_t>(m.data.size(), 0));
    if (m.size == 2) {
        adj.at(0, 0) = m.at(1, 1);
        adj.at(0, 1) = -m.at(0, 1);
        adj.at(1, 0) = -m.at(1, 0);
        adj.at(1, 1) = m.at(0, 0);
        if (det == -1)
            for (std::int64_t& v : adj.data) v = -v;
        return adj;
    }
    for (int i = 0; i < m.size; ++i)
        for (int j = 0; j < m.size; ++j) {
            // cofactor C_ij, placed transposed
            IntMatrix minor(m.size - 1,
                            std::vector<std::int64_t>(
                                static_cast<std::size_t>((m.size - 1) * (m.size - 1)), 0));
            int rr = 0;
            for (int r = 0; r < m.size; ++r) {
                if (r == i) continue;
                int cc = 0;
                for (int c = 0; c < m.size; ++c) {
                    if (c == j) continue;
                    minor.at(rr, cc++) = m.at(r, c);
                }
                ++rr;
            }
            adj.at(j, i) = ((i + j) % 2 == 0 ? 1 : -1) * determinant(minor);
        }
    if (det == -1)
        for (std::int64_t& v : adj.data) v = -v;
    return adj;
}

/// Mirror duality on monodromy labels: M -> transpose of M^{-1}.
inline IntMatrix mirror_dual(const IntMatrix& m) {
    if (determinant(m) != 1)
        throw std::domain_error("mirror dual requires a determinant-one matrix");
    return inverse(m).transpose();
}

namespace detail {

/// Saturated integer kernel of an s x s integer matrix: unimodular column
/// operations drive A into column echelon form; columns of the accumulated
/// transform that map to zero give a lattice basis of ker(A) over Z.
inline std::vector<std::vector<std::int64_t>> integer_kernel(const IntMatrix& a) {
    const int s = a.size;
    std::vector<std::vector<std::int64_t>> work(static_cast<std::size_t>(s),
                                                std::vector<std::int64_t>(static_cast<std::size_t>(s)));
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) work[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = a.at(i, j);
    IntMatrix u = IntMatrix::identity(s);

    int fixed = 0;  // columns < fixed hold pivots
    for (int row = 0; row < s && fixed < s; ++row) {
        // Euclidean elimination across the active columns of this row.
        for (;;) {
            int best = -1;
            for (int c = fixed; c < s; ++c) {
                std::int64_t v = work[static_cast<std::size_t>(row)][static_cast<std::size_t>(c)];
                if (v != 0 && (best < 0 ||
                               std::abs(v) < std::abs(work[static_cast<std::size_t>(row)][static_cast<std::size_t>(best)])))
                    best = c;
            }
            if (best < 0) break;  // row already zero on active columns
            bool done = true;
            for (int c = fixed; c < s; ++c) {
                if (c == best) continue;
                std::int64_t v = work[static_cast<std::size_t>(row)][static_cast<std::size_t>(c)];
                if (v == 0) continue;
                std::int64_t q = v / work[static_cast<std::size_t>(row)][static_cast<std::size_t>(best)];
                for (int r = 0; r < s; ++r) {
                    work[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -=
                        q * work[static_cast<std::size_t>(r)][static_cast<std::size_t>(best)];
                    u.at(r, c) -= q * u.at(r, best);
                }
                if (work[static_cast<std::size_t>(row)][static_cast<std::size_t>(c)] != 0) done = false;
            }
            if (done) {
                // move pivot column into the fixed block
                for (int r = 0; r < s; ++r) {
                    std::swap(work[static_cast<std::size_t>(r)][static_cast<std::size_t>(fixed)],
                              work[static_cast<std::size_t>(r)][static_cast<std::size_t>(best)]);
                    std::swap(u.at(r, fixed), u.at(r, best));
                }
                ++fixed;
                break;
            }
        }
    }
    std::vector<std::vector<std::int64_t>> kernel;
    for (int c = fixed; c < s; ++c) {
        std::vector<std::int64_t> v(static_cast<std::size_t>(s));
        for (int r = 0; r < s; ++r) v[static_cast<std::size_t>(r)] = u.at(r, c);
        kernel.push_back(std::move(v));
    }
    return kernel;
}

/// Row-style Hermite normal form of a full-row-rank basis: positive pivots,
/// entries above each pivot reduced into [0, pivot).  Canonicalises the
/// kernel basis so equal lattices compare equal.
inline void hermite_reduce(std::vector<std::vector<std::int64_t>>& rows) {
    if (rows.empty()) return;
    const std::size_t s = rows[0].size();
    std::size_t pivot_row = 0;
    std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, col)
    for (std::size_t col = 0; col < s && pivot_row < rows.size(); ++col) {
        // Euclid on the rows below pivot_row in this column.
        for (;;) {
            std::size_t best = rows.size();
            for (std::size_t r = pivot_row; r < rows.size(); ++r)
                if (rows[r][col] != 0 &&
                    (best == rows.size() || std::abs(rows[r][col]) < std::abs(rows[best][col])))
                    best = r;
            if (best == rows.size()) break;
            bool clean = true;
            for (std::size_t r = pivot_row; r < rows.size(); ++r) {
                if (r == best || rows[r][col] == 0) continue;
                std::int64_t q = rows[r][col] / rows[best][col];
                for (std::size_t j = 0; j < s; ++j) rows[r][j] -= q * rows[best][j];
                if (rows[r][col] != 0) clean = false;
            }
            if (clean) {
                std::swap(rows[pivot_row], rows[best]);
                if (rows[pivot_row][col] < 0)
                    for (std::size_t j = 0; j < s; ++j) rows[pivot_row][j] = -rows[pivot_row][j];
                pivots.emplace_back(pivot_row, col);
                ++pivot_row;
                break;
            }
        }
    }
    // Reduce entries above each pivot into [0, pivot).
    for (const auto& [pr, pc] : pivots) {
        for (std::size_t r = 0; r < pr; ++r) {
            std::int64_t p = rows[pr][pc];
            std::int64_t q = rows[r][pc] / p;
            if (rows[r][pc] - q * p < 0) q -= 1;  // floor division
            if (q != 0)
                for (std::size_t j = 0; j < rows[r].size(); ++j) rows[r][j] -= q * rows[pr][j];
        }
    }
}

}  // namespace detail

/// Primitive integer basis (Hermite-canonical rows) of the fixed space
/// ker(M - I) inside Z^s.
inline std::vector<std::vector<std::int64_t>> fixed_space(const IntMatrix& m) {
    IntMatrix a = m;
    for (int i = 0; i < a.size; ++i) a.at(i, i) -= 1;
    std::vector<std::vector<std::int64_t>> basis = detail::integer_kernel(a);
    detail::hermite_reduce(basis);
    return basis;
}

/// Semistable invariant: for M with (M - I)^2 = 0 and rank(M - I) <= 1,
/// the gcd of the entries of M - I (zero exactly for the identity).
/// This is a conjugation invariant.
inline std::int64_t semistable_k(const IntMatrix& m) {
    IntMatrix a = m;
    for (int i = 0; i < a.size; ++i) a.at(i, i) -= 1;
    IntMatrix square = a * a;
    for (std::int64_t v : square.data)
        if (v != 0) throw std::domain_error("matrix is not unipotent of index 2");
    // rank(M - I) <= 1: all 2x2 minors vanish
    for (int r1 = 0; r1 < a.size; ++r1)
        for (int r2 = r1 + 1; r2 < a.size; ++r2)
            for (int c1 = 0; c1 < a.size; ++c1)
                for (int c2 = c1 + 1; c2 < a.size; ++c2)
                    if (a.at(r1, c1) * a.at(r2, c2) - a.at(r1, c2) * a.at(r2, c1) != 0)
                        throw std::domain_error("matrix is not semistable: rank(M - I) > 1");
    std::int64_t g = 0;
    for (std::int64_t v : a.data) g = gcd64(g, v);
    return g;
}

enum class TripleClass { Positive, Negative, Invalid };

inline const char* to_string(TripleClass c) {
    switch (c) {
        case TripleClass::Positive: return "positive";
        case TripleClass::Negative: return "negative";
        default: return "invalid";
    }
}

/// Dimension of the common integer fixed space of a list of matrices.
inline int common_fixed_dimension(const std::vector<IntMatrix>& ms) {
    if (ms.empty()) throw std::invalid_argument("empty matrix list");
    const int s = ms[0].size;
    // The common fixed space is the kernel of the stacked (M_i - I) rows;
    // its dimension is unchanged by working over the rationals.
    std::vector<std::vector<int128>> rows;
    for (const IntMatrix& m : ms) {
        if (m.size != s) throw std::invalid_argument("matrix size mismatch in list");
        for (int i = 0; i < s; ++i) {
            std::vector<int128> r(static_cast<std::size_t>(s));
            for (int j = 0; j < s; ++j)
                r[static_cast<std::size_t>(j)] = m.at(i, j) - (i == j ? 1 : 0);
            rows.push_back(std::move(r));
        }
    }
    return s - detail::integer_rank(std::move(rows));
}


/// Classify an ordered monodromy triple around a trivalent vertex.  Valid
/// triples multiply to the identity (hence cyclic rotations do too), have
/// each factor semistable with invariant 1, and are separated by the
/// dimension of the common fixed space: 2 for positive, 1 for negative.
inline TripleClass classify_vertex(const std::vector<IntMatrix>& triple) {
    if (triple.size() != 3) throw std::invalid_argument("vertex requires exactly three matrices");
    for (const IntMatrix& m : triple) {
        if (m.size != 3) throw std::invalid_argument("vertex matrices must be 3x3");
        if (determinant(m) != 1)
            throw std::domain_error("vertex matrices must have determinant one");
    }
    if (!(triple[0] * triple[1] * triple[2]).is_identity()) return TripleClass::Invalid;
    for (const IntMatrix& m : triple) {
        try {
            if (semistable_k(m) != 1) return TripleClass::Invalid;
        } catch (const std::domain_error&) {
            return TripleClass::Invalid;
        }
    }
    int d = common_fixed_dimension(triple);
    if (d == 2) return TripleClass::Positive;
    if (d == 1) return TripleClass::Negative;
    return TripleClass::Invalid;
}

/// Mirror duality applied to a triple, preserving order.
inline std::vector<IntMatrix> mirror_dual_triple(const std::vector<IntMatrix>& triple) {
    std::vector<IntMatrix> out;
    out.reserve(triple.size());
    for (const IntMatrix& m : triple) out.push_back(mirror_dual(m));
    return out;
}

/// Report for the semistable-degeneration list of an elliptic K3 fibration.
struct K3ListReport {
    std::size_t count = 0;
    bool count_is_24 = false;
    bool all_k_one = true;              // check 1
    bool product_is_identity = false;   // check 2
    std::vector<std::size_t> bad_k_indices;

    bool pass() const { return count_is_24 && all_k_one && product_is_identity; }
};

/// Validate a list of SL(2,Z) monodromies for a semistable elliptic
/// fibration: every factor must carry invariant k = 1 and the ordered
/// product must be the identity.  A count other than 24 is flagged but is
/// not an error.  Non-unimodular entries are errors.
inline K3ListReport validate_k3_list(const std::vector<IntMatrix>& list) {
    if (list.empty()) throw std::invalid_argument("empty monodromy list");
    K3ListReport report;
    report.count = list.size();
    report.count_is_24 = list.size() == 24;
    IntMatrix product = IntMatrix::identity(list[0].size);
    for (std::size_t i = 0; i < list.size(); ++i) {
        const IntMatrix& m = list[i];
        if (m.size != list[0].size) throw std::invalid_argument("matrix size mismatch in list");
        if (determinant(m) != 1) throw std::domain_error("non-unimodular matrix in list");
        bool ok;
        try {
            ok = semistable_k(m) == 1;
        } catch (const std::domain_error&) {
            ok = false;
        }
        if (!ok) {
            report.all_k_one = false;
            report.bad_k_indices.push_back(i);
        }
        product = product * m;
    }
    report.product_is_identity = product.is_identity();
    return report;
}

/// The standard 24-term semistable list: twelve repetitions of the pair
/// (A, B) with A = [[1,1],[0,1]] and B its conjugate by a quarter turn.
/// The ordered product telescopes to ((AB)^6)^2 = identity.
inline std::vector<IntMatrix> k3_standard_list() {
    IntMatrix a(2, {1, 1, 0, 1});
    IntMatrix b(2, {1, 0, -1, 1});
    std::vector<IntMatrix> list;
    for (int i = 0; i < 12; ++i) {
        list.push_back(a);
        list.push_back(b);
    }
    return list;
}

}  // namespace syz
