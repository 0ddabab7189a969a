#pragma once

#include "latact/base_complex.hpp"
#include "latact/lattice.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace latact {

/// Gauge-fixed monodromy: a representation of the base's edge-path group into
/// GL_n(Z), one image per declared generator symbol. Words evaluate in the
/// same order they are written.
struct MonodromyData {
    std::size_t n = 2;
    std::map<std::string, IntegerMatrix> images;
    std::vector<Word> relations;

    IntegerMatrix evaluate(const Word& w) const {
        IntegerMatrix m = IntegerMatrix::identity(n);
        for (const auto& l : w) {
            auto it = images.find(l.symbol);
            if (it == images.end()) throw InputError("monodromy has no image for generator '" + l.symbol + "'");
            m = m * (l.inverse ? inverse_unimodular(it->second) : it->second);
        }
        return m;
    }
};

inline ValidationReport validate_monodromy(const MonodromyData& m) {
    ValidationReport rep;
    for (const auto& [sym, img] : m.images) {
        if (img.rows() != m.n || img.cols() != m.n) {
            rep.add("bad-shape", sym, "image is not n x n");
            continue;
        }
        Integer d = determinant(img);
        if (d != 1 && d != -1) rep.add("not-unimodular", sym, "image has determinant " + d.str());
    }
    if (!rep.ok()) return rep;
    for (const auto& w : m.relations) {
        try {
            if (!m.evaluate(w).is_identity())
                rep.add("relation-broken", word_str(w), "relation word does not map to the identity");
        } catch (const Error& e) {
            rep.add("relation-broken", word_str(w), e.what());
        }
    }
    return rep;
}

/// The local-standardness obstruction: the cocycle class is trivial iff the
/// gauge-fixed representation is trivial.
inline bool is_locally_standard(const MonodromyData& m) {
    for (const auto& [sym, img] : m.images)
        if (!img.is_identity()) return false;
    return true;
}

// ---------------------------------------------------------------------------

/// A Cech one-cocycle on a chart graph with values in GL_n(Z). Edge values
/// are stored on ordered pairs; the reversed edge carries the inverse.
struct CechCocycle {
    std::size_t n = 2;
    std::vector<std::string> charts;
    std::map<std::pair<std::string, std::string>, IntegerMatrix> edges;
    std::vector<std::array<std::string, 3>> triangles;  // rho_ab * rho_bc = rho_ac

    bool has_chart(const std::string& c) const {
        return std::find(charts.begin(), charts.end(), c) != charts.end();
    }

    IntegerMatrix value(const std::string& a, const std::string& b) const {
        auto it = edges.find({a, b});
        if (it != edges.end()) return it->second;
        it = edges.find({b, a});
        if (it != edges.end()) return inverse_unimodular(it->second);
        throw InputError("cocycle has no value on edge (" + a + "," + b + ")");
    }
};

inline ValidationReport validate_cocycle(const CechCocycle& c) {
    ValidationReport rep;
    for (const auto& [e, m] : c.edges) {
        if (!c.has_chart(e.first) || !c.has_chart(e.second))
            rep.add("dangling-id", e.first + "," + e.second, "edge references an undeclared chart");
        if (!is_gl(m)) rep.add("not-unimodular", e.first + "," + e.second, "edge value is not in GL_n(Z)");
    }
    if (!rep.ok()) return rep;
    for (const auto& t : c.triangles) {
        try {
            if (c.value(t[0], t[1]) * c.value(t[1], t[2]) != c.value(t[0], t[2]))
                rep.add("cocycle-broken", t[0] + "," + t[1] + "," + t[2],
                        "rho_ab * rho_bc != rho_ac on declared triangle");
        } catch (const Error& e) {
            rep.add("cocycle-broken", t[0] + "," + t[1] + "," + t[2], e.what());
        }
    }
    return rep;
}

/// Gauge-fix a cocycle along a spanning tree: tree edges become the identity,
/// the remaining edges generate the holonomy. With an empty `tree` a
/// deterministic BFS tree over sorted chart names is used.
inline MonodromyData holonomy_from_cocycle(const CechCocycle& c,
                                           std::vector<std::pair<std::string, std::string>> tree = {}) {
    ValidationReport rep = validate_cocycle(c);
    if (!rep.ok()) throw MathError("invalid cocycle:\n" + rep.summary());
    if (c.charts.empty()) throw InputError("cocycle has no charts");

    std::map<std::string, std::vector<std::string>> adj;
    for (const auto& [e, m] : c.edges) {
        adj[e.first].push_back(e.second);
        adj[e.second].push_back(e.first);
    }
    for (auto& [k, v] : adj) std::sort(v.begin(), v.end());

    std::vector<std::string> order = c.charts;
    std::sort(order.begin(), order.end());

    if (tree.empty()) {
        std::set<std::string> seen{order.front()};
        std::vector<std::string> queue{order.front()};
        for (std::size_t i = 0; i < queue.size(); ++i) {
            for (const auto& nb : adj[queue[i]]) {
                if (seen.insert(nb).second) {
                    tree.push_back({queue[i], nb});
                    queue.push_back(nb);
                }
            }
        }
    }

    // gauge g per chart: identity at the root, then g_b = g_a * rho_ab along
    // tree edges, which makes rho'_ab = g_a^{-1} rho_ab g_b the identity there
    std::map<std::string, IntegerMatrix> gauge;
    gauge[order.front()] = IntegerMatrix::identity(c.n);
    std::set<std::pair<std::string, std::string>> tree_set;
    for (std::size_t pass = 0; pass <= tree.size(); ++pass) {
        for (const auto& [a, b] : tree) {
            if (gauge.count(a) && !gauge.count(b)) gauge[b] = inverse_unimodular(c.value(a, b)) * gauge[a];
            if (gauge.count(b) && !gauge.count(a)) gauge[a] = c.value(a, b) * gauge[b];
        }
    }
    for (const auto& [a, b] : tree) {
        tree_set.insert({a, b});
        tree_set.insert({b, a});
    }
    if (gauge.size() != c.charts.size()) throw MathError("chart graph is disconnected (or the tree does not span it)");

    MonodromyData m;
    m.n = c.n;
    for (const auto& [e, val] : c.edges) {
        if (tree_set.count(e)) continue;
        IntegerMatrix fixed = inverse_unimodular(gauge[e.first]) * val * gauge[e.second];
        m.images[e.first + "|" + e.second] = fixed;
    }
    return m;
}

// ---------------------------------------------------------------------------

/// Characteristic data: one primitive vector per facet in the facet's frame.
/// Cell stabilizers are derived against a base complex and monodromy by
/// pulling facet vectors down incidence chains: across an incidence with
/// transport word w, a vector v on the coface is seen by the face as
/// rho(w)^{-1} v. This is the convention that makes the twisted cochain
/// subgroups close under the coboundary.
struct CharacteristicData {
    std::map<std::string, std::vector<Integer>> facet_vectors;
    std::map<std::string, Sublattice> cell_stabilizers;  // derived
};

namespace detail {

inline std::vector<Integer> sign_normalize(std::vector<Integer> v) {
    for (const auto& x : v) {
        if (x > 0) return v;
        if (x < 0) {
            for (auto& y : v) y = -y;
            return v;
        }
    }
    return v;
}

} // namespace detail

/// Validation per the unimodularity definition plus the patching and niceness
/// conditions; on success the derived stabilizers are stored in `ch`.
inline ValidationReport validate_characteristic(const BaseComplex& b, const MonodromyData& m,
                                                CharacteristicData& ch) {
    ValidationReport rep;
    auto cell_facet = b.facet_of_cell();

    // facet vector sanity
    for (const auto& fid : b.facet_ids()) {
        auto it = ch.facet_vectors.find(fid);
        if (it == ch.facet_vectors.end()) {
            rep.add("missing-facet-vector", fid, "no characteristic vector for this facet");
            continue;
        }
        if (it->second.size() != m.n) rep.add("bad-shape", fid, "facet vector has wrong rank");
        else if (!is_primitive(it->second))
            rep.add("not-primitive", fid, "facet vector has gcd " + gcd_vec(it->second).str());
    }
    auto known_facets = b.facet_ids();
    for (const auto& [fid, v] : ch.facet_vectors)
        if (std::find(known_facets.begin(), known_facets.end(), fid) == known_facets.end())
            rep.add("dangling-id", fid, "characteristic vector names an unknown facet");
    if (!rep.ok()) return rep;

    // germ sets per cell, flowing down from facet cells dimension by dimension
    std::map<std::string, std::vector<std::vector<Integer>>> germs;
    for (const auto& [cid, fid] : cell_facet) germs[cid].push_back(ch.facet_vectors.at(fid));
    for (int d = b.max_dim(); d > 0; --d) {
        for (const auto& inc : b.incidences) {
            const Cell* cf = b.find_cell(inc.coface);
            if (!cf || cf->dim != d) continue;
            auto git = germs.find(inc.coface);
            if (git == germs.end()) continue;
            IntegerMatrix t;
            try {
                t = inverse_unimodular(m.evaluate(inc.transport));
            } catch (const Error& e) {
                rep.add("bad-transport", inc.coface + "/" + inc.face, e.what());
                continue;
            }
            for (const auto& v : git->second) germs[inc.face].push_back(t.apply(v));
        }
    }
    if (!rep.ok()) return rep;

    ch.cell_stabilizers.clear();
    for (const auto& c : b.cells) {
        const int expect = b.n - c.stratum_dim;
        std::vector<std::vector<Integer>> cell_germs;
        if (auto it = germs.find(c.id); it != germs.end()) cell_germs = it->second;

        // distinct germ directions (up to sign)
        std::vector<std::vector<Integer>> dirs;
        for (const auto& g : cell_germs) {
            auto s = detail::sign_normalize(g);
            if (std::find(dirs.begin(), dirs.end(), s) == dirs.end()) dirs.push_back(s);
        }

        Sublattice stab = dirs.empty() ? Sublattice::zero(m.n) : Sublattice::span(m.n, dirs);
        if (static_cast<int>(dirs.size()) != expect)
            rep.add("niceness-broken", c.id,
                    "cell in stratum " + std::to_string(c.stratum_dim) + " sees " + std::to_string(dirs.size()) +
                        " facet directions, expected " + std::to_string(expect));
        else if (static_cast<int>(stab.rank()) != expect)
            rep.add("stabilizer-rank", c.id,
                    "stabilizer rank " + std::to_string(stab.rank()) + " != " + std::to_string(expect));
        else if (!is_direct_summand(stab))
            rep.add("not-unimodular", c.id, "stabilizer sublattice is not a direct summand");
        ch.cell_stabilizers[c.id] = stab;
    }
    return rep;
}

/// Stabilizer sublattice of a cell; zero for interior cells.
inline Sublattice stabilizer(const CharacteristicData& ch, const std::string& cell_id) {
    auto it = ch.cell_stabilizers.find(cell_id);
    if (it == ch.cell_stabilizers.end()) throw InputError("unknown cell id '" + cell_id + "'");
    return it->second;
}

/// One-call variant that derives stabilizers on the fly.
inline Sublattice stabilizer(const BaseComplex& b, const MonodromyData& m, CharacteristicData ch,
                             const std::string& cell_id) {
    ValidationReport rep = validate_characteristic(b, m, ch);
    if (!rep.ok()) throw MathError("characteristic data invalid:\n" + rep.summary());
    return stabilizer(ch, cell_id);
}

} // namespace latact
