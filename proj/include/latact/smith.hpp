#pragma once

#include "latact/matrix.hpp"

#include <cstddef>
#include <vector>

namespace latact {

/// U * A * V = D with U, V unimodular and D diagonal, d_i | d_{i+1} along the
/// nonzero divisors, all divisors nonnegative. Deterministic for fixed input:
/// the pivot rule is "smallest nonzero absolute value, then lexicographic".
struct SmithDecomposition {
    IntegerMatrix left;      // U, rows x rows
    IntegerMatrix diagonal;  // D, same shape as A
    IntegerMatrix right;     // V, cols x cols
    std::vector<Integer> elementary_divisors;  // min(rows, cols) entries, zeros trailing
};

namespace detail {

inline void swap_rows(IntegerMatrix& m, std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

inline void swap_cols(IntegerMatrix& m, std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

inline void add_row(IntegerMatrix& m, std::size_t dst, std::size_t src, const Integer& f) {
    for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) += f * m(src, j);
}

inline void add_col(IntegerMatrix& m, std::size_t dst, std::size_t src, const Integer& f) {
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) += f * m(i, src);
}

inline void negate_row(IntegerMatrix& m, std::size_t r) {
    for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

} // namespace detail

inline SmithDecomposition smith_normal_form(const IntegerMatrix& a) {
    using namespace detail;
    const std::size_t rows = a.rows(), cols = a.cols();
    IntegerMatrix d = a;
    IntegerMatrix u = IntegerMatrix::identity(rows);
    IntegerMatrix v = IntegerMatrix::identity(cols);
    const std::size_t steps = rows < cols ? rows : cols;

    for (std::size_t t = 0; t < steps; ++t) {
        // pivot: minimal |entry| > 0 in the remaining block, ties lexicographic
        std::size_t pi = t, pj = t;
        Integer best = 0;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j) {
                Integer m = abs_int(d(i, j));
                if (m != 0 && (best == 0 || m < best)) {
                    best = m;
                    pi = i;
                    pj = j;
                }
            }
        if (best == 0) break;
        if (pi != t) {
            swap_rows(d, t, pi);
            swap_rows(u, t, pi);
        }
        if (pj != t) {
            swap_cols(d, t, pj);
            swap_cols(v, t, pj);
        }

        for (;;) {
            // clear column t below the pivot
            bool dirty = false;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (d(i, t) == 0) continue;
                Integer q = d(i, t) / d(t, t);
                if (q != 0) {
                    add_row(d, i, t, -q);
                    add_row(u, i, t, -q);
                }
                if (d(i, t) != 0) {  // nonzero remainder: smaller pivot found
                    swap_rows(d, t, i);
                    swap_rows(u, t, i);
                    dirty = true;
                }
            }
            if (dirty) continue;
            // clear row t right of the pivot
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (d(t, j) == 0) continue;
                Integer q = d(t, j) / d(t, t);
                if (q != 0) {
                    add_col(d, j, t, -q);
                    add_col(v, j, t, -q);
                }
                if (d(t, j) != 0) {
                    swap_cols(d, t, j);
                    swap_cols(v, t, j);
                    dirty = true;
                }
            }
            if (dirty) continue;
            // force the pivot to divide the rest of the block; this is what
            // makes the divisibility chain hold with no postprocessing
            bool fixed = false;
            for (std::size_t i = t + 1; i < rows && !fixed; ++i)
                for (std::size_t j = t + 1; j < cols && !fixed; ++j)
                    if (d(i, j) % d(t, t) != 0) {
                        add_row(d, t, i, 1);
                        add_row(u, t, i, 1);
                        fixed = true;
                    }
            if (!fixed) break;
        }
        if (d(t, t) < 0) {
            negate_row(d, t);
            negate_row(u, t);
        }
    }

    SmithDecomposition s;
    s.left = u;
    s.diagonal = d;
    s.right = v;
    s.elementary_divisors.resize(steps);
    for (std::size_t t = 0; t < steps; ++t) s.elementary_divisors[t] = d(t, t);
    return s;
}

inline std::size_t rank_of(const SmithDecomposition& s) {
    std::size_t r = 0;
    for (const auto& x : s.elementary_divisors)
        if (x != 0) ++r;
    return r;
}

inline std::size_t rank_of(const IntegerMatrix& a) { return rank_of(smith_normal_form(a)); }

/// Unique column-style Hermite normal form of the column lattice of `a`:
/// zero columns dropped, pivot rows strictly increasing, pivots positive,
/// entries left of a pivot in its row reduced into [0, pivot). Two generator
/// matrices span the same lattice iff their forms are equal.
inline IntegerMatrix hermite_columns(const IntegerMatrix& a) {
    using namespace detail;
    IntegerMatrix h = a;
    const std::size_t rows = h.rows();
    std::size_t ncols = h.cols();
    std::size_t lead = 0;  // next column to place a pivot in
    std::vector<std::size_t> pivot_row;

    for (std::size_t r = 0; r < rows && lead < ncols; ++r) {
        // gcd-reduce row r across columns lead..ncols-1 using column ops
        for (;;) {
            std::size_t best_j = ncols;
            Integer best = 0;
            for (std::size_t j = lead; j < ncols; ++j) {
                Integer m = abs_int(h(r, j));
                if (m != 0 && (best == 0 || m < best)) {
                    best = m;
                    best_j = j;
                }
            }
            if (best_j == ncols) break;  // row r is zero on the block
            if (best_j != lead) swap_cols(h, lead, best_j);
            bool clean = true;
            for (std::size_t j = lead + 1; j < ncols; ++j) {
                if (h(r, j) == 0) continue;
                Integer q = h(r, j) / h(r, lead);
                if (q != 0) add_col(h, j, lead, -q);
                if (h(r, j) != 0) clean = false;
            }
            if (clean) break;
        }
        if (lead < ncols && h(r, lead) != 0) {
            if (h(r, lead) < 0)
                for (std::size_t i = 0; i < rows; ++i) h(i, lead) = -h(i, lead);
            // reduce earlier columns in the pivot row into [0, pivot)
            for (std::size_t j = 0; j < lead; ++j) {
                Integer q = h(r, j) / h(r, lead);
                if (h(r, j) % h(r, lead) < 0) q -= 1;  // floor division
                if (q != 0) add_col(h, j, lead, -q);
            }
            pivot_row.push_back(r);
            ++lead;
        }
    }

    IntegerMatrix out(rows, lead);
    for (std::size_t j = 0; j < lead; ++j)
        for (std::size_t i = 0; i < rows; ++i) out(i, j) = h(i, j);
    return out;
}

/// Basis of {x : A x = 0} over Z as columns; always a saturated sublattice.
/// Columns of V past the rank of A form the basis since U A V = D.
inline IntegerMatrix kernel_columns(const IntegerMatrix& a) {
    SmithDecomposition s = smith_normal_form(a);
    std::size_t r = rank_of(s);
    std::size_t n = a.cols();
    IntegerMatrix k(n, n - r);
    for (std::size_t j = r; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) k(i, j - r) = s.right(i, j);
    return hermite_columns(k);
}

/// Solve B * X = M over Z where the columns of B are independent. Throws if
/// any column of M is outside the integer column span of B.
inline IntegerMatrix solve_integer(const IntegerMatrix& b, const IntegerMatrix& m) {
    if (b.rows() != m.rows()) throw MathError("solve_integer shape mismatch");
    SmithDecomposition s = smith_normal_form(b);
    std::size_t r = rank_of(s);
    if (r != b.cols()) throw MathError("solve_integer needs independent columns");
    IntegerMatrix um = s.left * m;
    IntegerMatrix y(b.cols(), m.cols());
    for (std::size_t i = 0; i < b.cols(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (um(i, j) % s.diagonal(i, i) != 0)
                throw MathError("solve_integer: column not in the lattice spanned by B");
            y(i, j) = um(i, j) / s.diagonal(i, i);
        }
    for (std::size_t i = b.cols(); i < b.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (um(i, j) != 0) throw MathError("solve_integer: column outside the span of B");
    return s.right * y;
}

} // namespace latact
