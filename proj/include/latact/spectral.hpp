#pragma once

#include "latact/torus_data.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace latact {

/// Twisted cochain coefficients in one degree. Over a cell c the group is the
/// subgroup Lambda^q(Ann(stab c)) of Lambda^q of the dual lattice, with a
/// fixed Hermite basis; `transport[i]` is the restriction of the dual
/// exterior-power action of the i-th incidence word, written in those bases.
///
/// The restriction existing at all (integrally) is exactly the subcomplex
/// property; inconsistent input surfaces as SubcomplexViolation here.
struct CoefficientSystem {
    int q = 0;
    std::size_t fiber_rank = 0;                       // rank of Lambda^q(Z^n)
    std::map<std::string, Sublattice> cell_subgroup;  // cell id -> subgroup with chosen basis
    std::vector<IntegerMatrix> transport;             // parallel to BaseComplex::incidences

    std::size_t rank_over(const std::string& cell) const { return cell_subgroup.at(cell).rank(); }
};

namespace detail {

enum class CoefficientKind { cohomology, k_even, k_odd };

// Fiber-level transport matrix for a monodromy image g.
inline IntegerMatrix fiber_transport(const IntegerMatrix& g, CoefficientKind kind, int q) {
    switch (kind) {
        case CoefficientKind::cohomology:
            return exterior_power_dual_rep(g, q);
        case CoefficientKind::k_even: {
            // K^0 of the torus fiber sits inside H^0 + H^2 (rank two for n=2)
            IntegerMatrix t(2, 2);
            t(0, 0) = 1;
            t(1, 1) = exterior_power_dual_rep(g, 2)(0, 0);
            return t;
        }
        case CoefficientKind::k_odd:
            return exterior_power_dual_rep(g, 1);
    }
    throw MathError("unreachable");
}

// Fiber-level subgroup over a cell with stabilizer s.
inline Sublattice fiber_subgroup(const Sublattice& s, CoefficientKind kind, int q) {
    Sublattice ann = annihilator(s);
    switch (kind) {
        case CoefficientKind::cohomology:
            return exterior_power_sublattice(ann, q);
        case CoefficientKind::k_even: {
            Sublattice top = exterior_power_sublattice(ann, 2);
            IntegerMatrix g(2, 1 + top.rank());
            g(0, 0) = 1;  // Lambda^0 summand, always present
            for (std::size_t j = 0; j < top.rank(); ++j) g(1, 1 + j) = top.generators()(0, j);
            return Sublattice(2, g);
        }
        case CoefficientKind::k_odd:
            return exterior_power_sublattice(ann, 1);
    }
    throw MathError("unreachable");
}

inline CoefficientSystem build_system(const BaseComplex& b, const MonodromyData& m, const CharacteristicData& ch,
                                      CoefficientKind kind, int q, bool section_exists) {
    if (!section_exists)
        throw SectionFlagMissing("spectral pages are only defined under the section-exists hypothesis");
    if (ch.cell_stabilizers.size() != b.cells.size())
        throw MathError("characteristic data has no derived stabilizers; validate it first");

    CoefficientSystem cs;
    cs.q = q;
    for (const auto& c : b.cells) {
        Sublattice sub = fiber_subgroup(ch.cell_stabilizers.at(c.id), kind, q);
        cs.fiber_rank = sub.ambient_rank();
        cs.cell_subgroup.emplace(c.id, sub);
    }

    cs.transport.reserve(b.incidences.size());
    for (const auto& inc : b.incidences) {
        const Sublattice& gf = cs.cell_subgroup.at(inc.coface);
        const Sublattice& ge = cs.cell_subgroup.at(inc.face);
        IntegerMatrix d = fiber_transport(m.evaluate(inc.transport), kind, q);
        IntegerMatrix moved = d * ge.generators();
        if (gf.rank() == 0) {
            if (!moved.is_zero())
                throw SubcomplexViolation("transport along " + inc.coface + "/" + inc.face +
                                          " leaves the coefficient subgroup (target is zero)");
            cs.transport.push_back(IntegerMatrix(0, ge.rank()));
            continue;
        }
        try {
            cs.transport.push_back(solve_integer(gf.generators(), moved));
        } catch (const MathError&) {
            throw SubcomplexViolation("transport along " + inc.coface + "/" + inc.face +
                                      " leaves the coefficient subgroup; characteristic and monodromy data "
                                      "are inconsistent");
        }
    }
    return cs;
}

// Cell offsets of one cochain degree, in declaration order.
struct DegreeLayout {
    std::vector<std::string> cells;
    std::map<std::string, std::size_t> offset;
    std::size_t total = 0;
};

inline DegreeLayout layout(const BaseComplex& b, const CoefficientSystem& cs, int p) {
    DegreeLayout l;
    for (const auto& c : b.cells) {
        if (c.dim != p) continue;
        l.cells.push_back(c.id);
        l.offset[c.id] = l.total;
        l.total += cs.rank_over(c.id);
    }
    return l;
}

} // namespace detail

/// Cochain groups of the coefficient system (ranks of C^p).
inline std::vector<std::size_t> cochain_ranks(const BaseComplex& b, const CoefficientSystem& cs) {
    std::vector<std::size_t> r(static_cast<std::size_t>(b.max_dim()) + 1, 0);
    for (const auto& c : b.cells) r[c.dim] += cs.rank_over(c.id);
    return r;
}

/// Matrix of delta^p : C^p -> C^(p+1) in the chosen per-cell bases.
inline IntegerMatrix twisted_coboundary(const BaseComplex& b, const CoefficientSystem& cs, int p) {
    detail::DegreeLayout src = detail::layout(b, cs, p);
    detail::DegreeLayout dst = detail::layout(b, cs, p + 1);
    IntegerMatrix d(dst.total, src.total);
    for (std::size_t i = 0; i < b.incidences.size(); ++i) {
        const auto& inc = b.incidences[i];
        auto so = src.offset.find(inc.face);
        auto to = dst.offset.find(inc.coface);
        if (so == src.offset.end() || to == dst.offset.end()) continue;
        const IntegerMatrix& r = cs.transport[i];
        for (std::size_t a = 0; a < r.rows(); ++a)
            for (std::size_t c = 0; c < r.cols(); ++c)
                d(to->second + a, so->second + c) += Integer(inc.coefficient) * r(a, c);
    }
    return d;
}

/// All coboundaries of the system, with the exactness check
/// delta^{p+1} o delta^p = 0.
inline std::vector<IntegerMatrix> coboundary_chain(const BaseComplex& b, const CoefficientSystem& cs) {
    int top = b.max_dim();
    std::vector<IntegerMatrix> delta;
    for (int p = 0; p <= top; ++p) delta.push_back(twisted_coboundary(b, cs, p));
    for (int p = 0; p + 1 <= top; ++p)
        if (!(delta[p + 1] * delta[p]).is_zero())
            throw SubcomplexViolation("delta o delta != 0 in twisted degree q=" + std::to_string(cs.q) +
                                      "; monodromy relations do not hold");
    return delta;
}

/// Cohomology of the system in one degree p.
inline FGAbelianGroup twisted_cohomology(const BaseComplex& b, const CoefficientSystem& cs, int p) {
    std::vector<IntegerMatrix> delta = coboundary_chain(b, cs);
    int top = b.max_dim();
    if (p < 0 || p > top) return FGAbelianGroup{};
    IntegerMatrix kernel = kernel_columns(delta[p]);
    if (p == 0) return FGAbelianGroup::free(kernel.cols());
    return subquotient(kernel, delta[p - 1]);
}

// ---------------------------------------------------------------------------

struct E2Page {
    int max_p = 0;
    int max_q = 0;
    std::map<std::pair<int, int>, FGAbelianGroup> table;  // (p, q)
    bool degeneracy_certified = false;
    std::string degeneracy_reason;
    bool k_theory = false;  // when set, the q index is a parity (0 even, 1 odd)

    const FGAbelianGroup& at(int p, int q) const {
        static const FGAbelianGroup zero{};
        auto it = table.find({p, q});
        return it == table.end() ? zero : it->second;
    }
};

struct GradedGroups {
    std::map<int, FGAbelianGroup> groups;                  // total degree -> group (only when assembled)
    std::map<std::pair<int, int>, FGAbelianGroup> pieces;  // the graded pieces, always present
    bool assembled = false;
};

/// Euler characteristic of the total space: the corner count. The E1 rank
/// cross-check lives in e1_euler_sum below.
inline int euler_characteristic(const BaseComplex& b) { return corner_count(b); }

inline long long e1_euler_sum(const BaseComplex& b, const std::vector<CoefficientSystem>& systems) {
    long long sum = 0;
    for (const auto& cs : systems) {
        auto ranks = cochain_ranks(b, cs);
        for (std::size_t p = 0; p < ranks.size(); ++p) {
            long long term = static_cast<long long>(ranks[p]);
            sum += ((static_cast<long long>(p) + cs.q) % 2 == 0) ? term : -term;
        }
    }
    return sum;
}

namespace detail {

// Positional degeneracy: every d_r (r >= 2), E^{p,q} -> E^{p+r, q-r+1}, has a
// zero source or target already on the E2 table. Ranks only shrink on later
// pages, so this certificate is sound.
inline bool positionally_degenerate(const E2Page& page) {
    for (int r = 2; r <= page.max_p + 1; ++r)
        for (const auto& [pq, grp] : page.table) {
            if (grp.is_zero()) continue;
            int tp = pq.first + r, tq = pq.second - r + 1;
            if (!page.at(tp, tq).is_zero()) return false;
        }
    return true;
}

inline bool positionally_degenerate_k(const E2Page& page) {
    // differentials change q by -r+1; on the two-row parity table the target
    // parity of d_r is (q - r + 1) mod 2
    for (int r = 2; r <= page.max_p + 1; ++r)
        for (const auto& [pq, grp] : page.table) {
            if (grp.is_zero()) continue;
            int tp = pq.first + r;
            int tq = ((pq.second - r + 1) % 2 + 2) % 2;
            if (tp <= page.max_p && !page.at(tp, tq).is_zero()) return false;
        }
    return true;
}

} // namespace detail

/// Coefficient system for the cohomology page in fiber degree q.
inline CoefficientSystem coefficient_system(const BaseComplex& b, const MonodromyData& m,
                                            const CharacteristicData& ch, int q, bool section_exists = true) {
    return detail::build_system(b, m, ch, detail::CoefficientKind::cohomology, q, section_exists);
}

/// E2 of the Leray spectral sequence of the orbit map.
inline E2Page e2_page(const BaseComplex& b, const MonodromyData& m, const CharacteristicData& ch,
                      bool section_exists = true) {
    E2Page page;
    page.max_p = b.max_dim();
    page.max_q = static_cast<int>(m.n);
    for (int q = 0; q <= page.max_q; ++q) {
        CoefficientSystem cs = coefficient_system(b, m, ch, q, section_exists);
        for (int p = 0; p <= page.max_p; ++p) page.table[{p, q}] = twisted_cohomology(b, cs, p);
    }

    if (b.n == 2 && !b.boundary.empty() && all_zero_cells_on_boundary(b)) {
        page.degeneracy_certified = true;
        page.degeneracy_reason =
            "surface base with nonempty boundary and all 0-cells on the boundary: E2^{2,0} and E2^{0,2} vanish";
        // those two entries vanish by the certificate; keep ourselves honest
        if (!page.at(2, 0).is_zero() || !page.at(0, 2).is_zero())
            throw MathError("degeneracy certificate contradicted by the computed page");
    } else if (detail::positionally_degenerate(page)) {
        page.degeneracy_certified = true;
        page.degeneracy_reason = "every differential d_r (r >= 2) has zero source or target";
    } else {
        page.degeneracy_reason = "no degeneracy certificate applies";
    }
    return page;
}

/// Total cohomology from a degenerate page. Assembles across the filtration
/// only when every graded piece is free; otherwise only the pieces are
/// reported.
inline GradedGroups assemble(const E2Page& page) {
    if (!page.degeneracy_certified)
        throw DegeneracyNotCertified("cannot pass from E2 to the total group: " + page.degeneracy_reason);
    GradedGroups g;
    g.pieces = page.table;
    bool all_free = true;
    for (const auto& [pq, grp] : page.table) all_free &= grp.is_free();
    if (!all_free) {
        g.assembled = false;
        return g;
    }
    for (const auto& [pq, grp] : page.table) {
        if (grp.is_zero()) continue;
        auto& slot = g.groups[pq.first + pq.second];
        slot = slot.direct_sum(grp);
    }
    g.assembled = true;
    return g;
}

inline GradedGroups total_cohomology(const BaseComplex& b, const MonodromyData& m, const CharacteristicData& ch,
                                     bool section_exists = true) {
    return assemble(e2_page(b, m, ch, section_exists));
}

// ---------------------------------------------------------------------------
// K-theory pages. Restricted to n = 2: the identifications of the fiber
// K-groups with H^0 + H^2 and H^1 need fiber dimension <= 2.

inline CoefficientSystem k_coefficient_system(const BaseComplex& b, const MonodromyData& m,
                                              const CharacteristicData& ch, int parity,
                                              bool section_exists = true) {
    if (m.n != 2) throw UnsupportedRank("K-theory pages are implemented for n = 2 only");
    auto kind = parity % 2 == 0 ? detail::CoefficientKind::k_even : detail::CoefficientKind::k_odd;
    CoefficientSystem cs = detail::build_system(b, m, ch, kind, parity % 2, section_exists);
    return cs;
}

/// Two-periodic E2 table, rows keyed by parity (0 = even q, 1 = odd q).
inline E2Page k_e2_page(const BaseComplex& b, const MonodromyData& m, const CharacteristicData& ch,
                        bool section_exists = true) {
    E2Page page;
    page.k_theory = true;
    page.max_p = b.max_dim();
    page.max_q = 1;
    for (int parity = 0; parity <= 1; ++parity) {
        CoefficientSystem cs = k_coefficient_system(b, m, ch, parity, section_exists);
        for (int p = 0; p <= page.max_p; ++p) page.table[{p, parity}] = twisted_cohomology(b, cs, p);
    }
    if (detail::positionally_degenerate_k(page)) {
        page.degeneracy_certified = true;
        page.degeneracy_reason = "every differential d_r (r >= 2) has zero source or target";
    } else {
        page.degeneracy_reason = "no degeneracy certificate applies";
    }
    return page;
}

/// K^0 and K^1 assembled by total-degree parity, keyed 0 and 1.
inline GradedGroups k_groups(const BaseComplex& b, const MonodromyData& m, const CharacteristicData& ch,
                             bool section_exists = true) {
    E2Page page = k_e2_page(b, m, ch, section_exists);
    if (!page.degeneracy_certified)
        throw DegeneracyNotCertified("cannot pass from the K-theory E2 to K-groups: " + page.degeneracy_reason);
    GradedGroups g;
    g.pieces = page.table;
    bool all_free = true;
    for (const auto& [pq, grp] : page.table) all_free &= grp.is_free();
    if (!all_free) {
        g.assembled = false;
        return g;
    }
    g.groups[0] = FGAbelianGroup{};
    g.groups[1] = FGAbelianGroup{};
    for (const auto& [pq, grp] : page.table) {
        int parity = (pq.first + pq.second) % 2;
        g.groups[parity] = g.groups[parity].direct_sum(grp);
    }
    g.assembled = true;
    return g;
}

} // namespace latact
