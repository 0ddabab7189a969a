#pragma once

#include "latact/base_complex.hpp"
#include "latact/quadratic.hpp"
#include "latact/smith.hpp"
#include "latact/torus_data.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace latact {

/// Monodromies (C1, C2) of two boundary loops of a trinion piece of the
/// interior T^2-bundle, with [c1][c2][c3] = 1.
struct TrinionPair {
    IntegerMatrix c1, c2;
};

/// Meyer cocycle: the signature of the symmetric pairing
///   <(x,y),(x',y')> = t(x+y) J (I - C2) y'
/// on V = {(x,y) : (C1^{-1} - I)x + (C2 - I)y = 0}. The kernel is computed
/// over Z (a saturated basis is a Q-basis), the Gram matrix exactly, and the
/// signature by congruence diagonalization. The orientation convention is
/// pinned by the end-to-end fixtures in the test suite.
inline int meyer_tau1(const IntegerMatrix& c1, const IntegerMatrix& c2) {
    if (c1.rows() != 2 || c1.cols() != 2 || c2.rows() != 2 || c2.cols() != 2)
        throw MathError("meyer_tau1 expects 2x2 matrices");
    if (determinant(c1) != 1 || determinant(c2) != 1)
        throw MathError("meyer_tau1 expects matrices in SL_2(Z)");

    IntegerMatrix i2 = IntegerMatrix::identity(2);
    IntegerMatrix a(2, 4);
    IntegerMatrix c1i = inverse_unimodular(c1);
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) {
            a(r, c) = c1i(r, c) - i2(r, c);
            a(r, 2 + c) = c2(r, c) - i2(r, c);
        }
    IntegerMatrix basis = kernel_columns(a);  // 4 x d

    IntegerMatrix j{{Integer(0), Integer(1)}, {Integer(-1), Integer(0)}};
    IntegerMatrix pairing = j * (i2 - c2);

    std::size_t d = basis.cols();
    IntegerMatrix gram(d, d);
    for (std::size_t rj = 0; rj < d; ++rj) {
        std::vector<Integer> col = basis.column(rj);
        std::vector<Integer> yp{col[2], col[3]};
        std::vector<Integer> py = pairing.apply(yp);
        for (std::size_t ri = 0; ri < d; ++ri) {
            std::vector<Integer> row = basis.column(ri);
            gram(ri, rj) = (row[0] + row[2]) * py[0] + (row[1] + row[3]) * py[1];
        }
    }
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t jj = i + 1; jj < d; ++jj)
            if (gram(i, jj) != gram(jj, i)) throw MathError("Meyer pairing came out non-symmetric");
    return signature_of_symmetric(gram);
}

inline int interior_signature(const std::vector<TrinionPair>& pairs) {
    int s = 0;
    for (const auto& p : pairs) s += meyer_tau1(p.c1, p.c2);
    return s;
}

// ---------------------------------------------------------------------------

/// One sphere of the boundary necklace: its characteristic vector and the
/// neighbors' vectors, all written in one local frame normalized so that
/// det(v_prev, v) = det(v, v_next) = 1.
struct BoundaryFacet {
    std::string id;
    std::vector<Integer> v;
    std::vector<Integer> v_prev;
    std::vector<Integer> v_next;
};

struct BoundaryFacetData {
    std::vector<BoundaryFacet> facets;  // cyclic order
};

/// Intersection matrix of the necklace of k >= 2 spheres: diagonal
/// -det(v_prev, v_next), adjacent entries 1 (2 when k = 2), zero elsewhere.
inline IntegerMatrix necklace_matrix(const BoundaryFacetData& bd) {
    const std::size_t k = bd.facets.size();
    if (k < 2) throw KTooSmall("necklace needs k >= 2 spheres; blow up the corner first when k = 1");
    for (const auto& f : bd.facets) {
        if (f.v.size() != 2 || f.v_prev.size() != 2 || f.v_next.size() != 2)
            throw MathError("boundary facet vectors must have rank 2");
        if (det2(f.v_prev, f.v) != 1 || det2(f.v, f.v_next) != 1)
            throw NormalizationViolation("facet '" + f.id + "': det(v_prev, v) and det(v, v_next) must equal 1");
    }
    IntegerMatrix m(k, k);
    for (std::size_t i = 0; i < k; ++i) m(i, i) = -det2(bd.facets[i].v_prev, bd.facets[i].v_next);
    if (k == 2) {
        m(0, 1) = 2;
        m(1, 0) = 2;
    } else {
        for (std::size_t i = 0; i < k; ++i) {
            std::size_t nxt = (i + 1) % k;
            m(i, nxt) = 1;
            m(nxt, i) = 1;
        }
    }
    return m;
}

namespace detail {

// w with det(w, v) = 1 for primitive v, canonicalized by reduction along v.
inline std::vector<Integer> complement_vector(const std::vector<Integer>& v) {
    // det(w, v) = w0 v1 - w1 v0 = 1: extended gcd on (v1, -v0)
    Integer a = v[1], b = -v[0];
    Integer old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        Integer q = old_r / r;
        Integer tmp;
        tmp = old_r - q * r; old_r = r; r = tmp;
        tmp = old_s - q * s; old_s = s; s = tmp;
        tmp = old_t - q * t; old_t = t; t = tmp;
    }
    if (old_r < 0) { old_r = -old_r; old_s = -old_s; old_t = -old_t; }
    if (old_r != 1) throw MathError("complement of a non-primitive vector");
    std::vector<Integer> w{old_s, old_t};
    Integer vv = v[0] * v[0] + v[1] * v[1];
    Integer wv = w[0] * v[0] + w[1] * v[1];
    Integer q = wv / vv;
    if (wv % vv < 0) q -= 1;
    w[0] -= q * v[0];
    w[1] -= q * v[1];
    return w;
}

} // namespace detail

struct BlowUpResult {
    BoundaryFacetData data;       // two facets: the exceptional sphere, then the survivor
    int correction = 1;           // sigma(X_2) = sigma(blown-up X_2) + correction
    std::vector<Integer> u1, u2;  // raw neighbor vectors of the surviving facet
};

/// Reduce a one-corner boundary component (an immersed sphere) to a genuine
/// two-sphere necklace by blowing up the corner. `bd` holds the single facet
/// whose vector is the exceptional direction in the normalized corner frame
/// (canonically (1,1)); `facet_monodromy` is the holonomy around the
/// component in that frame. The survivor's neighbors are (M v, v); the signs
/// of the emitted v_prev/v_next are flipped where needed so the normalization
/// determinants are exactly +1, which pins the self-intersection signs.
inline BlowUpResult blow_up_corner(const BoundaryFacetData& bd, const IntegerMatrix& facet_monodromy) {
    if (bd.facets.size() != 1) throw MathError("blow_up_corner expects exactly one facet (k = 1)");
    const std::vector<Integer>& ve = bd.facets[0].v;
    if (ve.size() != 2 || !is_primitive(ve)) throw MathError("exceptional vector must be primitive of rank 2");
    if (!is_gl(facet_monodromy)) throw MathError("facet monodromy must lie in GL_2(Z)");

    BlowUpResult out;
    out.u1 = facet_monodromy.apply(ve);
    out.u2 = ve;

    // exceptional sphere: neighbors p, q with p + q = v_e gives
    // det(p, q) = det(p, v_e) = 1, hence self-intersection -1
    std::vector<Integer> p = detail::complement_vector(ve);
    std::vector<Integer> q{ve[0] - p[0], ve[1] - p[1]};
    BoundaryFacet exceptional{bd.facets[0].id + "_exceptional", ve, p, q};

    // surviving sphere: find w with det(u1, w) = +-1 and det(w, u2) = +-1,
    // then absorb the signs into the neighbors
    const std::vector<Integer>&u1 = out.u1, &u2 = out.u2;
    std::vector<Integer> w0 = detail::complement_vector(u1);
    for (auto& x : w0) x = -x;  // det(u1, w0) = 1
    Integer c = det2(w0, u2);
    Integer d = det2(u1, u2);
    std::optional<std::vector<Integer>> w;
    for (int eps : {1, -1}) {
        for (int s : {1, -1}) {
            // candidate w = eps*w0 + t*u1 with det(w, u2) = s
            Integer rhs = Integer(s) - Integer(eps) * c;
            if (d == 0) {
                if (rhs == 0) {
                    w = std::vector<Integer>{Integer(eps) * w0[0], Integer(eps) * w0[1]};
                    break;
                }
                continue;
            }
            if (rhs % d != 0) continue;
            Integer t = rhs / d;
            w = std::vector<Integer>{Integer(eps) * w0[0] + t * u1[0], Integer(eps) * w0[1] + t * u1[1]};
            break;
        }
        if (w) break;
    }
    if (!w) throw NormalizationViolation("cannot normalize the surviving facet after blow-up");
    Integer s1 = det2(u1, *w), s2 = det2(*w, u2);
    BoundaryFacet survivor{bd.facets[0].id, *w,
                           {s1 * u1[0], s1 * u1[1]},
                           {s2 * u2[0], s2 * u2[1]}};
    out.data.facets = {exceptional, survivor};
    out.correction = 1;
    return out;
}

// ---------------------------------------------------------------------------

/// Boundary input of one component for the signature pipeline.
struct SmoothComponent {};
struct BlowUpInput {
    std::vector<Integer> exceptional_vector;
    IntegerMatrix facet_monodromy;
};
using BoundaryInput = std::variant<BoundaryFacetData, BlowUpInput, SmoothComponent>;

struct ComponentSignature {
    std::optional<IntegerMatrix> intersection_matrix;
    int necklace_signature = 0;
    int correction = 0;
    bool smooth_unverified = false;
    std::vector<Integer> u1, u2;  // filled by the blow-up route
};

struct SignatureBreakdown {
    std::vector<int> trinion_values;
    int sigma_interior = 0;
    std::vector<ComponentSignature> components;
    int sigma_boundary = 0;
    int blowup_correction = 0;
    int sigma_total = 0;
    bool multi_component = false;
};

/// sigma(X) = sigma(interior T^2-bundle part) + sigma(boundary neighborhood),
/// by Novikov additivity. Requires oriented data.
inline SignatureBreakdown total_signature(const std::vector<TrinionPair>& pairs,
                                          const std::vector<BoundaryInput>& components, bool oriented) {
    if (!oriented) throw OrientationMissing("signature needs oriented base and total space data");
    SignatureBreakdown out;
    for (const auto& p : pairs) out.trinion_values.push_back(meyer_tau1(p.c1, p.c2));
    for (int v : out.trinion_values) out.sigma_interior += v;

    for (const auto& comp : components) {
        ComponentSignature cshare;
        if (std::holds_alternative<SmoothComponent>(comp)) {
            cshare.smooth_unverified = true;  // no corner: contribution reported as 0, unverified
        } else {
            BoundaryFacetData data;
            if (const auto* blow = std::get_if<BlowUpInput>(&comp)) {
                BoundaryFacetData one;
                one.facets.push_back({"facet", blow->exceptional_vector, {}, {}});
                BlowUpResult r = blow_up_corner(one, blow->facet_monodromy);
                data = r.data;
                cshare.correction = r.correction;
                cshare.u1 = r.u1;
                cshare.u2 = r.u2;
            } else {
                data = std::get<BoundaryFacetData>(comp);
            }
            IntegerMatrix m = necklace_matrix(data);
            cshare.intersection_matrix = m;
            cshare.necklace_signature = signature_of_symmetric(m);
        }
        out.sigma_boundary += cshare.necklace_signature + cshare.correction;
        out.blowup_correction += cshare.correction;
        out.components.push_back(std::move(cshare));
    }
    out.multi_component = components.size() > 1;
    out.sigma_total = out.sigma_interior + out.sigma_boundary;
    return out;
}

// ---------------------------------------------------------------------------

struct Pi1Report {
    bool isomorphism_asserted = false;
    int corner_cells = 0;
    bool free_group = false;
    int free_rank = 0;
    std::string presentation;
    std::string note;
};

/// pi1(X) via the orbit map: an isomorphism onto pi1(B) holds when the
/// section exists and S^(0)B is nonempty; otherwise only the split exact
/// sequence 1 -> ker -> pi1(X) -> pi1(B) -> 1 is reported.
inline Pi1Report fundamental_group_report(const BaseComplex& b, bool section_exists) {
    Pi1Report r;
    r.corner_cells = corner_count(b);
    if (!b.generator_symbols.empty()) {
        r.presentation = "<";
        for (std::size_t i = 0; i < b.generator_symbols.size(); ++i) {
            if (i) r.presentation += ", ";
            r.presentation += b.generator_symbols[i];
        }
        r.presentation += " | ";
        for (std::size_t i = 0; i < b.relation_words.size(); ++i) {
            if (i) r.presentation += ", ";
            r.presentation += word_str(b.relation_words[i]);
        }
        r.presentation += ">";
    }
    if (section_exists && r.corner_cells > 0) {
        r.isomorphism_asserted = true;
        if (!b.boundary.empty()) {
            r.free_group = true;
            r.free_rank = 1 - euler_characteristic_of_complex(b);
            r.note = "pi1(X) = pi1(B), free of rank " + std::to_string(r.free_rank);
        } else {
            r.note = "pi1(X) = pi1(B), presented by the base complex";
        }
    } else if (!section_exists) {
        r.note = "isomorphism not asserted (no section hypothesis); the split exact sequence "
                 "1 -> ker -> pi1(X) -> pi1(B) -> 1 is reported instead";
    } else {
        r.note = "isomorphism not asserted (S^(0)B empty); the split exact sequence "
                 "1 -> ker -> pi1(X) -> pi1(B) -> 1 is reported instead";
    }
    return r;
}

/// One valid trinion splitting of a genus-g base with a single boundary
/// component: g handle pieces and g-1 joining pieces, 2g-1 pairs in all.
/// Any splitting works; this is the chain one.
inline std::vector<TrinionPair> standard_trinion_pairs(const MonodromyData& m, int genus) {
    if (genus < 0) throw InputError("genus must be nonnegative");
    std::vector<TrinionPair> out;
    if (genus == 0) return out;
    auto commutator_word = [](int j) {
        std::string a = "alpha" + std::to_string(j), bb = "beta" + std::to_string(j);
        return Word{{a, false}, {bb, false}, {a, true}, {bb, true}};
    };
    Word w;  // running product of commutators
    for (int j = 1; j <= genus; ++j) {
        auto it = m.images.find("alpha" + std::to_string(j));
        if (it == m.images.end())
            throw InputError("monodromy has no image for generator 'alpha" + std::to_string(j) +
                             "' needed by the trinion splitting");
        IntegerMatrix cj = m.evaluate(commutator_word(j));
        out.push_back({inverse_unimodular(it->second), cj});
        if (j > 1) out.push_back({m.evaluate(w), m.evaluate(commutator_word(j))});
        w = concat(w, commutator_word(j));
    }
    return out;
}

} // namespace latact
