#pragma once

#include "latact/errors.hpp"
#include "latact/matrix.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace latact {

/// One letter of a transport word: a monodromy generator symbol, possibly
/// inverted.
struct SignedLetter {
    std::string symbol;
    bool inverse = false;

    bool operator==(const SignedLetter& o) const { return symbol == o.symbol && inverse == o.inverse; }
};

using Word = std::vector<SignedLetter>;

inline Word inverse_word(const Word& w) {
    Word r;
    for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back({it->symbol, !it->inverse});
    return r;
}

inline Word concat(Word a, const Word& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

inline std::string word_str(const Word& w) {
    if (w.empty()) return "1";
    std::string s;
    for (const auto& l : w) {
        if (!s.empty()) s += ".";
        s += l.symbol;
        if (l.inverse) s += "^-1";
    }
    return s;
}

/// An open cell of the CW decomposition. `stratum_dim` is the dimension k of
/// the stratum S^(k)B containing the cell; the standing hypothesis is that
/// every cell lies in a single stratum.
struct Cell {
    std::string id;
    int dim = 0;
    int stratum_dim = 0;
    std::string label;
};

/// One occurrence of `face` in the attaching of `coface`. A cell pair may
/// carry several records (one per traversal). `transport` is the word whose
/// monodromy carries the face's fiber data into the coface's frame.
struct IncidenceRecord {
    std::string coface;
    std::string face;
    int coefficient = 1;  // +-1 per occurrence
    Word transport;
};

/// Maximal connected piece of S^(n-1)B between two corners (or a full circle
/// when the boundary component is smooth). Lists the cells it consists of.
struct Facet {
    std::string id;
    std::vector<std::string> cells;
};

/// Cyclic boundary structure: corners.size() == facets.size() when there are
/// corners (facet i runs from corner i to corner i+1), otherwise one facet
/// and no corners.
struct BoundaryComponent {
    std::vector<std::string> corners;
    std::vector<Facet> facets;
};

struct BaseComplex {
    int n = 2;
    std::vector<Cell> cells;
    std::vector<IncidenceRecord> incidences;
    std::vector<std::string> generator_symbols;
    std::vector<BoundaryComponent> boundary;
    bool oriented = false;

    // words that must evaluate to the identity in any monodromy data attached
    // to this complex (the attaching words of the 2-cells)
    std::vector<Word> relation_words;

    // set by build_surface_base
    std::optional<int> genus;
    std::optional<std::vector<int>> builder_corners;

    const Cell* find_cell(const std::string& id) const {
        for (const auto& c : cells)
            if (c.id == id) return &c;
        return nullptr;
    }

    std::vector<const Cell*> cells_of_dim(int p) const {
        std::vector<const Cell*> out;
        for (const auto& c : cells)
            if (c.dim == p) out.push_back(&c);
        return out;
    }

    int max_dim() const {
        int d = 0;
        for (const auto& c : cells)
            if (c.dim > d) d = c.dim;
        return d;
    }

    /// facet id -> component index, and cell id -> facet id for facet cells
    std::map<std::string, std::string> facet_of_cell() const {
        std::map<std::string, std::string> m;
        for (const auto& comp : boundary)
            for (const auto& f : comp.facets)
                for (const auto& c : f.cells) m[c] = f.id;
        return m;
    }

    std::vector<std::string> facet_ids() const {
        std::vector<std::string> out;
        for (const auto& comp : boundary)
            for (const auto& f : comp.facets) out.push_back(f.id);
        return out;
    }
};

/// Untwisted cellular coboundary C^p -> C^(p+1): entry = sum of incidence
/// coefficients, transport words erased. Row/column order follows the cell
/// order in `cells`.
inline IntegerMatrix untwisted_coboundary(const BaseComplex& b, int p) {
    auto faces = b.cells_of_dim(p);
    auto cofaces = b.cells_of_dim(p + 1);
    std::map<std::string, std::size_t> fidx, cidx;
    for (std::size_t i = 0; i < faces.size(); ++i) fidx[faces[i]->id] = i;
    for (std::size_t i = 0; i < cofaces.size(); ++i) cidx[cofaces[i]->id] = i;
    IntegerMatrix d(cofaces.size(), faces.size());
    for (const auto& inc : b.incidences) {
        auto ci = cidx.find(inc.coface);
        auto fi = fidx.find(inc.face);
        if (ci == cidx.end() || fi == fidx.end()) continue;
        d(ci->second, fi->second) += inc.coefficient;
    }
    return d;
}

inline int euler_characteristic_of_complex(const BaseComplex& b) {
    int chi = 0;
    for (const auto& c : b.cells) chi += (c.dim % 2 == 0) ? 1 : -1;
    return chi;
}

inline ValidationReport validate_complex(const BaseComplex& b) {
    ValidationReport rep;
    std::set<std::string> ids;
    for (const auto& c : b.cells) {
        if (!ids.insert(c.id).second) rep.add("duplicate-cell", c.id, "cell id declared twice");
        if (c.dim < 0 || c.stratum_dim > b.n)
            rep.add("bad-dimension", c.id, "cell dim or stratum out of range");
        if (c.dim > c.stratum_dim)
            rep.add("cell-exceeds-stratum", c.id,
                    "cell exceeds stratum dimension: dim " + std::to_string(c.dim) + " > stratum " +
                        std::to_string(c.stratum_dim));
    }
    std::set<std::string> gens(b.generator_symbols.begin(), b.generator_symbols.end());
    for (const auto& inc : b.incidences) {
        const Cell* cf = b.find_cell(inc.coface);
        const Cell* fc = b.find_cell(inc.face);
        if (!cf) rep.add("dangling-id", inc.coface, "incidence coface not declared");
        if (!fc) rep.add("dangling-id", inc.face, "incidence face not declared");
        if (cf && fc && cf->dim != fc->dim + 1)
            rep.add("bad-incidence", inc.coface + "/" + inc.face, "incidence dims do not differ by 1");
        for (const auto& l : inc.transport)
            if (!gens.count(l.symbol))
                rep.add("unknown-generator", l.symbol, "transport word uses an undeclared symbol");
    }

    // boundary structure: facet cells exist, have stratum n-1; corners have
    // stratum n-2; together they partition the boundary cells
    std::set<std::string> seen_boundary;
    for (const auto& comp : b.boundary) {
        if (comp.corners.empty() && comp.facets.size() != 1)
            rep.add("bad-boundary", "component", "smooth component must consist of exactly one facet");
        if (!comp.corners.empty() && comp.corners.size() != comp.facets.size())
            rep.add("bad-boundary", "component", "corner and facet counts must agree on a cornered component");
        for (const auto& cid : comp.corners) {
            const Cell* c = b.find_cell(cid);
            if (!c) {
                rep.add("dangling-id", cid, "boundary corner not declared");
                continue;
            }
            if (c->dim != 0 || c->stratum_dim != b.n - 2)
                rep.add("bad-boundary", cid, "corner must be a 0-cell of stratum n-2");
            if (!seen_boundary.insert(cid).second) rep.add("bad-boundary", cid, "cell listed twice on the boundary");
        }
        for (const auto& f : comp.facets) {
            if (f.cells.empty()) rep.add("bad-boundary", f.id, "facet lists no cells");
            for (const auto& cid : f.cells) {
                const Cell* c = b.find_cell(cid);
                if (!c) {
                    rep.add("dangling-id", cid, "facet cell not declared");
                    continue;
                }
                if (c->stratum_dim != b.n - 1)
                    rep.add("bad-boundary", cid, "facet cell must lie in stratum n-1");
                if (!seen_boundary.insert(cid).second)
                    rep.add("bad-boundary", cid, "cell listed twice on the boundary");
            }
        }
    }
    for (const auto& c : b.cells) {
        if (c.stratum_dim <= b.n - 1 && !seen_boundary.count(c.id))
            rep.add("bad-boundary", c.id, "boundary-stratum cell not covered by any declared facet cycle");
    }

    if (!rep.ok()) return rep;

    // delta o delta = 0 with transport erased
    for (int p = 0; p + 2 <= b.max_dim(); ++p) {
        IntegerMatrix d1 = untwisted_coboundary(b, p);
        IntegerMatrix d2 = untwisted_coboundary(b, p + 1);
        if (!(d2 * d1).is_zero())
            rep.add("coboundary-square", "dim " + std::to_string(p), "delta o delta != 0 in the untwisted complex");
    }
    return rep;
}

/// Census of cells per (cell dim, stratum dim).
inline std::map<std::pair<int, int>, int> stratum_census(const BaseComplex& b) {
    std::map<std::pair<int, int>, int> m;
    for (const auto& c : b.cells) m[{c.dim, c.stratum_dim}]++;
    return m;
}

/// Number of points in S^(0)B, i.e. corner cells.
inline int corner_count(const BaseComplex& b) {
    int k = 0;
    for (const auto& c : b.cells)
        if (c.dim == 0 && c.stratum_dim == 0) ++k;
    return k;
}

inline bool all_zero_cells_on_boundary(const BaseComplex& b) {
    for (const auto& c : b.cells)
        if (c.dim == 0 && c.stratum_dim == b.n) return false;
    return true;
}

namespace detail {

// Attaching-word bookkeeping for the polygon 2-cell. Each edge may carry a
// generator letter (non-tree edges); the prefix accumulated before an
// occurrence is the incidence transport word.
struct EdgeOccurrence {
    std::string edge;
    bool reversed;
};

inline void emit_polygon_incidences(BaseComplex& b, const std::string& face_id,
                                    const std::vector<EdgeOccurrence>& word,
                                    const std::map<std::string, std::string>& edge_letter) {
    Word prefix;
    for (const auto& occ : word) {
        auto it = edge_letter.find(occ.edge);
        bool lettered = it != edge_letter.end();
        if (!occ.reversed) {
            b.incidences.push_back({face_id, occ.edge, +1, prefix});
            if (lettered) prefix.push_back({it->second, false});
        } else {
            if (lettered) prefix.push_back({it->second, true});
            b.incidences.push_back({face_id, occ.edge, -1, prefix});
        }
    }
    b.relation_words.push_back(prefix);
}

} // namespace detail

/// Canonical cell decomposition of the orientable genus-g surface with the
/// given corner counts per boundary component (one polygon 2-cell, all
/// 0-cells on the boundary when the boundary is nonempty).
///
/// Exposed generator symbols: alpha_i/beta_i for the handles and gamma_j per
/// boundary component; the attaching word is
///   prod_i [alpha_i, beta_i] * prod_j gamma_j.
inline BaseComplex build_surface_base(int genus, const std::vector<int>& boundary_corners) {
    if (genus < 0) throw InputError("genus must be nonnegative");
    for (int c : boundary_corners)
        if (c < 0) throw InputError("corner counts must be nonnegative");

    BaseComplex b;
    b.n = 2;
    b.oriented = true;
    b.genus = genus;
    b.builder_corners = boundary_corners;
    const int ncomp = static_cast<int>(boundary_corners.size());

    auto add_cell = [&b](const std::string& id, int dim, int k, const std::string& label) {
        b.cells.push_back({id, dim, k, label});
    };

    if (ncomp == 0) {
        // closed base: one interior vertex, standard one-relator structure
        add_cell("v", 0, 2, "interior vertex");
        std::vector<detail::EdgeOccurrence> word;
        std::map<std::string, std::string> letters;
        for (int i = 1; i <= genus; ++i) {
            std::string a = "a" + std::to_string(i), bb = "b" + std::to_string(i);
            add_cell(a, 1, 2, "handle loop");
            add_cell(bb, 1, 2, "handle loop");
            std::string alpha = "alpha" + std::to_string(i), beta = "beta" + std::to_string(i);
            b.generator_symbols.push_back(alpha);
            b.generator_symbols.push_back(beta);
            letters[a] = alpha;
            letters[bb] = beta;
            b.incidences.push_back({a, "v", +1, {{alpha, false}}});
            b.incidences.push_back({a, "v", -1, {}});
            b.incidences.push_back({bb, "v", +1, {{beta, false}}});
            b.incidences.push_back({bb, "v", -1, {}});
            word.push_back({a, false});
            word.push_back({bb, false});
            word.push_back({a, true});
            word.push_back({bb, true});
        }
        add_cell("F", 2, 2, "face");
        detail::emit_polygon_incidences(b, "F", word, letters);
        return b;
    }

    // boundary vertices per component; edge cells come after the handle
    // loops so the cochain bases line up with the standard presentation
    std::vector<std::string> component_anchor(ncomp);
    for (int j = 0; j < ncomp; ++j) {
        int c = boundary_corners[j];
        BoundaryComponent comp;
        std::string js = std::to_string(j + 1);
        if (c == 0) {
            std::string w = "w" + js;
            add_cell(w, 0, 1, "smooth boundary vertex");
            component_anchor[j] = w;
            comp.facets.push_back({"f" + js + "_0", {"s" + js + "_0", w}});
        } else {
            for (int i = 0; i < c; ++i) {
                std::string cid = "c" + js + "_" + std::to_string(i);
                add_cell(cid, 0, 0, "corner");
                comp.corners.push_back(cid);
            }
            component_anchor[j] = comp.corners[0];
            for (int i = 0; i < c; ++i)
                comp.facets.push_back({"f" + js + "_" + std::to_string(i), {"s" + js + "_" + std::to_string(i)}});
        }
        b.boundary.push_back(comp);
    }
    const std::string base_vertex = component_anchor[0];

    std::map<std::string, std::string> letters;
    std::vector<detail::EdgeOccurrence> word;

    // handle loops at the base vertex
    for (int i = 1; i <= genus; ++i) {
        std::string a = "a" + std::to_string(i), bb = "b" + std::to_string(i);
        add_cell(a, 1, 2, "handle loop");
        add_cell(bb, 1, 2, "handle loop");
        std::string alpha = "alpha" + std::to_string(i), beta = "beta" + std::to_string(i);
        b.generator_symbols.push_back(alpha);
        b.generator_symbols.push_back(beta);
        letters[a] = alpha;
        letters[bb] = beta;
        b.incidences.push_back({a, base_vertex, +1, {{alpha, false}}});
        b.incidences.push_back({a, base_vertex, -1, {}});
        b.incidences.push_back({bb, base_vertex, +1, {{beta, false}}});
        b.incidences.push_back({bb, base_vertex, -1, {}});
        word.push_back({a, false});
        word.push_back({bb, false});
        word.push_back({a, true});
        word.push_back({bb, true});
    }

    // connecting arcs to the other components (spanning-tree edges)
    for (int j = 1; j < ncomp; ++j) {
        std::string t = "t" + std::to_string(j + 1);
        add_cell(t, 1, 2, "connecting arc");
        b.incidences.push_back({t, component_anchor[j], +1, {}});
        b.incidences.push_back({t, base_vertex, -1, {}});
    }

    // boundary circuits; the closing edge of each circuit carries gamma_j
    for (int j = 0; j < ncomp; ++j) {
        int c = boundary_corners[j];
        std::string js = std::to_string(j + 1);
        std::string gamma = "gamma" + js;
        b.generator_symbols.push_back(gamma);

        int edges = c == 0 ? 1 : c;
        for (int i = 0; i < edges; ++i) {
            std::string s = "s" + js + "_" + std::to_string(i);
            add_cell(s, 1, 1, "boundary edge");
            std::string head, tail;
            if (c == 0) {
                head = tail = component_anchor[j];
            } else {
                tail = "c" + js + "_" + std::to_string(i);
                head = "c" + js + "_" + std::to_string((i + 1) % c);
            }
            bool closing = (i == edges - 1);
            if (closing) letters[s] = gamma;
            b.incidences.push_back({s, head, +1, closing ? Word{{gamma, false}} : Word{}});
            b.incidences.push_back({s, tail, -1, {}});
        }

        if (j > 0) word.push_back({"t" + js, false});
        for (int i = 0; i < edges; ++i) word.push_back({"s" + js + "_" + std::to_string(i), false});
        if (j > 0) word.push_back({"t" + js, true});
    }

    add_cell("F", 2, 2, "face");
    detail::emit_polygon_incidences(b, "F", word, letters);
    return b;
}

} // namespace latact
