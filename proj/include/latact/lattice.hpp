#pragma once

#include "latact/smith.hpp"

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

namespace latact {

/// A sublattice of Z^n given by generating columns. Construction
/// canonicalizes to the Hermite basis, so rank() == generators().cols() and
/// equal lattices compare equal.
class Sublattice {
public:
    Sublattice() : ambient_rank_(0) {}

    Sublattice(std::size_t ambient_rank, const IntegerMatrix& generators)
        : ambient_rank_(ambient_rank), generators_(hermite_columns(generators)) {
        if (generators.rows() != ambient_rank) throw MathError("sublattice generators have wrong ambient rank");
    }

    static Sublattice zero(std::size_t ambient_rank) {
        return Sublattice(ambient_rank, IntegerMatrix(ambient_rank, 0));
    }

    static Sublattice full(std::size_t ambient_rank) {
        return Sublattice(ambient_rank, IntegerMatrix::identity(ambient_rank));
    }

    static Sublattice span(std::size_t ambient_rank, const std::vector<std::vector<Integer>>& vectors) {
        IntegerMatrix g(ambient_rank, vectors.size());
        for (std::size_t j = 0; j < vectors.size(); ++j) g.set_column(j, vectors[j]);
        return Sublattice(ambient_rank, g);
    }

    std::size_t ambient_rank() const { return ambient_rank_; }
    std::size_t rank() const { return generators_.cols(); }
    const IntegerMatrix& generators() const { return generators_; }

    bool operator==(const Sublattice& o) const {
        return ambient_rank_ == o.ambient_rank_ && generators_ == o.generators_;
    }
    bool operator!=(const Sublattice& o) const { return !(*this == o); }

    bool contains(const std::vector<Integer>& v) const {
        // v is in the lattice iff appending it does not change the Hermite form
        IntegerMatrix g(ambient_rank_, rank() + 1);
        for (std::size_t j = 0; j < rank(); ++j) g.set_column(j, generators_.column(j));
        g.set_column(rank(), v);
        return hermite_columns(g) == generators_;
    }

private:
    std::size_t ambient_rank_;
    IntegerMatrix generators_;
};

/// Def: the sublattice is a direct summand iff every nonzero elementary
/// divisor of its generator matrix is 1.
inline bool is_direct_summand(const Sublattice& s) {
    if (s.rank() == 0) return true;
    SmithDecomposition d = smith_normal_form(s.generators());
    for (const auto& x : d.elementary_divisors)
        if (x != 0 && x != 1) return false;
    return true;
}

/// {f in the dual lattice : f(s) = 0 for all s in S}; saturated of rank
/// n - rank(sat S).
inline Sublattice annihilator(const Sublattice& s) {
    return Sublattice(s.ambient_rank(), kernel_columns(s.generators().transpose()));
}

inline Sublattice saturation(const Sublattice& s) { return annihilator(annihilator(s)); }

inline Sublattice kernel_lattice(const IntegerMatrix& a) { return Sublattice(a.cols(), kernel_columns(a)); }

// ---------------------------------------------------------------------------

/// Finitely generated abelian group in canonical form:
/// Z^free_rank + Z/t_1 + ... with 2 <= t_1 | t_2 | ...
struct FGAbelianGroup {
    std::size_t free_rank = 0;
    std::vector<Integer> torsion;

    bool operator==(const FGAbelianGroup& o) const { return free_rank == o.free_rank && torsion == o.torsion; }
    bool operator!=(const FGAbelianGroup& o) const { return !(*this == o); }

    bool is_zero() const { return free_rank == 0 && torsion.empty(); }
    bool is_free() const { return torsion.empty(); }

    static FGAbelianGroup free(std::size_t rank) { return FGAbelianGroup{rank, {}}; }

    FGAbelianGroup direct_sum(const FGAbelianGroup& o) const {
        FGAbelianGroup r;
        r.free_rank = free_rank + o.free_rank;
        r.torsion = torsion;
        r.torsion.insert(r.torsion.end(), o.torsion.begin(), o.torsion.end());
        std::sort(r.torsion.begin(), r.torsion.end());
        // the sorted merge of two divisibility chains need not be a chain;
        // callers that assemble only free pieces never hit this path
        return r;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string s;
        if (free_rank == 1) s = "Z";
        else if (free_rank > 1) s = "Z^" + std::to_string(free_rank);
        for (const auto& t : torsion) {
            if (!s.empty()) s += " + ";
            s += "Z/" + t.str();
        }
        return s;
    }
};

/// kernel/image as a canonical group: `kernel_basis` holds independent
/// columns spanning K inside Z^N, `image` generates a sublattice of K.
inline FGAbelianGroup subquotient(const IntegerMatrix& kernel_basis, const IntegerMatrix& image) {
    std::size_t k = kernel_basis.cols();
    if (image.cols() == 0 || image.is_zero()) return FGAbelianGroup::free(k);
    IntegerMatrix x = solve_integer(kernel_basis, image);  // throws if image is not inside K
    SmithDecomposition s = smith_normal_form(x);
    FGAbelianGroup g;
    std::size_t r = rank_of(s);
    g.free_rank = k - r;
    for (std::size_t i = 0; i < r; ++i)
        if (s.elementary_divisors[i] > 1) g.torsion.push_back(s.elementary_divisors[i]);
    return g;
}

// ---------------------------------------------------------------------------
// Exterior powers. Basis of Lambda^q(Z^n) is fixed once and for all as the
// lexicographically ordered q-subsets of {0..n-1} wedged in increasing order.

inline std::vector<std::vector<std::size_t>> lex_subsets(std::size_t n, std::size_t q) {
    std::vector<std::vector<std::size_t>> out;
    if (q > n) return out;
    std::vector<std::size_t> idx(q);
    for (std::size_t i = 0; i < q; ++i) idx[i] = i;
    for (;;) {
        out.push_back(idx);
        if (q == 0) break;
        std::size_t i = q;
        while (i > 0 && idx[i - 1] == n - q + (i - 1)) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < q; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

inline Integer minor_of(const IntegerMatrix& m, const std::vector<std::size_t>& rows,
                        const std::vector<std::size_t>& cols) {
    IntegerMatrix sub(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) sub(i, j) = m(rows[i], cols[j]);
    return determinant(sub);
}

/// Matrix of Lambda^q(m) : Lambda^q(Z^cols) -> Lambda^q(Z^rows), entries are
/// the q x q minors. Functorial: Lambda^q(AB) = Lambda^q(A) Lambda^q(B).
inline IntegerMatrix exterior_power(const IntegerMatrix& m, std::size_t q) {
    auto rsets = lex_subsets(m.rows(), q);
    auto csets = lex_subsets(m.cols(), q);
    IntegerMatrix out(rsets.size(), csets.size());
    for (std::size_t i = 0; i < rsets.size(); ++i)
        for (std::size_t j = 0; j < csets.size(); ++j) out(i, j) = minor_of(m, rsets[i], csets[j]);
    return out;
}

/// Action of g on the q-th cohomology of the torus fiber: Lambda^q(g^{-T}) in
/// the wedge of the standard dual basis. Rejects non-invertible g.
inline IntegerMatrix exterior_power_dual_rep(const IntegerMatrix& g, std::size_t q) {
    if (g.rows() != g.cols()) throw MathError("exterior_power_dual_rep wants a square matrix");
    if (q > g.rows()) throw MathError("exterior power degree exceeds rank");
    return exterior_power(inverse_transpose(g), q);
}

/// Generators of Lambda^q(S) inside Lambda^q(Z^n) for a sublattice S; the
/// result is saturated whenever S is.
inline Sublattice exterior_power_sublattice(const Sublattice& s, std::size_t q) {
    std::size_t n = s.ambient_rank();
    std::size_t nq = lex_subsets(n, q).size();
    if (q > s.rank()) return Sublattice::zero(nq);
    return Sublattice(nq, exterior_power(s.generators(), q));
}

} // namespace latact
