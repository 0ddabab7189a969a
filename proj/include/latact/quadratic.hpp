#pragma once

#include "latact/matrix.hpp"

#include <cstddef>

namespace latact {

/// Signature of a symmetric rational matrix: (#positive - #negative) entries
/// after exact congruence diagonalization (Sylvester). No floating point.
inline int signature_of_symmetric(const RationalMatrix& g) {
    const std::size_t n = g.rows();
    if (g.cols() != n) throw MathError("signature of non-square matrix");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (g(i, j) != g(j, i)) throw MathError("signature of non-symmetric matrix");

    RationalMatrix m = g;
    auto swap_sym = [&](std::size_t a, std::size_t b) {
        for (std::size_t j = 0; j < n; ++j) std::swap(m(a, j), m(b, j));
        for (std::size_t i = 0; i < n; ++i) std::swap(m(i, a), m(i, b));
    };
    auto add_sym = [&](std::size_t dst, std::size_t src, const Rational& f) {
        for (std::size_t j = 0; j < n; ++j) m(dst, j) += f * m(src, j);
        for (std::size_t i = 0; i < n; ++i) m(i, dst) += f * m(i, src);
    };

    int sig = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, p) == 0) ++p;
            if (p < n) {
                swap_sym(k, p);
            } else {
                // all remaining diagonal entries vanish; borrow an off-diagonal
                std::size_t q = k + 1;
                while (q < n && m(k, q) == 0) ++q;
                if (q == n) continue;  // zero row contributes nothing
                add_sym(k, q, Rational(1));  // m(k,k) becomes 2*m(k,q) != 0
            }
        }
        Rational piv = m(k, k);
        sig += sign_of(piv);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (m(i, k) == 0) continue;
            add_sym(i, k, -m(i, k) / piv);
        }
    }
    return sig;
}

inline int signature_of_symmetric(const IntegerMatrix& g) { return signature_of_symmetric(to_rational(g)); }

} // namespace latact
