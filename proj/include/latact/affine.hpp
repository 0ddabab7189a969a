#pragma once

#include "latact/matrix.hpp"
#include "latact/torus_data.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace latact {

/// Overlap map xi -> A xi + c of an integral affine atlas, stored on the
/// ordered chart pair (from, to) as the map from `from` coordinates to `to`
/// coordinates. Translations are exact rationals; they never enter the
/// normal propagation but are validated for cocycle consistency.
struct AffineTransition {
    std::string from, to;
    IntegerMatrix linear;
    std::vector<Rational> translation;
};

struct AffineAtlas {
    std::size_t n = 2;
    std::vector<std::string> charts;
    std::vector<AffineTransition> transitions;
    std::vector<std::array<std::string, 3>> triangles;
    // facet -> (chart, inward primitive normal in that chart)
    std::map<std::string, std::pair<std::string, std::vector<Integer>>> facet_seeds;
    // optional corner declarations: lists of facet ids meeting at a corner
    std::vector<std::vector<std::string>> corners;

    bool has_chart(const std::string& c) const {
        return std::find(charts.begin(), charts.end(), c) != charts.end();
    }

    /// Transition on an ordered pair, deriving the inverse edge when needed.
    std::optional<std::pair<IntegerMatrix, std::vector<Rational>>> edge(const std::string& from,
                                                                        const std::string& to) const {
        for (const auto& t : transitions)
            if (t.from == from && t.to == to) return std::make_pair(t.linear, t.translation);
        for (const auto& t : transitions)
            if (t.from == to && t.to == from) {
                IntegerMatrix ai = inverse_unimodular(t.linear);
                RationalMatrix air = to_rational(ai);
                std::vector<Rational> c(t.translation.size());
                for (std::size_t i = 0; i < air.rows(); ++i) {
                    Rational s = 0;
                    for (std::size_t j = 0; j < air.cols(); ++j) s += air(i, j) * t.translation[j];
                    c[i] = -s;
                }
                return std::make_pair(ai, c);
            }
        return std::nullopt;
    }
};

inline ValidationReport validate_affine_atlas(const AffineAtlas& a) {
    ValidationReport rep;
    for (const auto& t : a.transitions) {
        std::string subject = t.from + "->" + t.to;
        if (!a.has_chart(t.from) || !a.has_chart(t.to))
            rep.add("dangling-id", subject, "transition references an undeclared chart");
        if (t.linear.rows() != a.n || t.linear.cols() != a.n) {
            rep.add("bad-shape", subject, "linear part is not n x n");
            continue;
        }
        if (!is_gl(t.linear))
            rep.add("not-unimodular", subject, "linear part has determinant " + determinant(t.linear).str());
        if (t.translation.size() != a.n) rep.add("bad-shape", subject, "translation has wrong length");
    }
    if (!rep.ok()) return rep;

    for (const auto& tri : a.triangles) {
        std::string subject = tri[0] + "," + tri[1] + "," + tri[2];
        auto ab = a.edge(tri[1], tri[0]);  // phi_{alpha beta}: beta -> alpha
        auto bc = a.edge(tri[2], tri[1]);
        auto ac = a.edge(tri[2], tri[0]);
        if (!ab || !bc || !ac) {
            rep.add("missing-edge", subject, "triangle edge without a declared transition");
            continue;
        }
        if (ab->first * bc->first != ac->first)
            rep.add("cocycle-broken", subject, "linear parts violate A_ab A_bc = A_ac");
        // composed translation: c_ac = A_ab c_bc + c_ab
        RationalMatrix abr = to_rational(ab->first);
        for (std::size_t i = 0; i < a.n; ++i) {
            Rational s = ab->second[i];
            for (std::size_t j = 0; j < a.n; ++j) s += abr(i, j) * bc->second[j];
            if (s != ac->second[i]) {
                rep.add("cocycle-broken", subject, "translations violate c_ac = A_ab c_bc + c_ab");
                break;
            }
        }
    }
    for (const auto& [fid, seed] : a.facet_seeds) {
        if (!a.has_chart(seed.first)) rep.add("dangling-id", fid, "facet seed names an undeclared chart");
        if (seed.second.size() != a.n) rep.add("bad-shape", fid, "facet seed normal has wrong length");
        else if (!is_primitive(seed.second))
            rep.add("not-primitive", fid, "facet seed normal has gcd " + gcd_vec(seed.second).str());
    }
    return rep;
}

/// Propagate each facet's inward normal over the chart graph by
/// u_alpha = A_{alpha beta}^{-T} u_beta and read all of them off in a fixed
/// root chart (the lexicographically smallest). Errors if two propagation
/// paths disagree; checks declared corners for unimodularity.
inline CharacteristicData induced_normals(const AffineAtlas& a) {
    ValidationReport rep = validate_affine_atlas(a);
    if (!rep.ok()) throw MathError("invalid affine atlas:\n" + rep.summary());
    if (a.charts.empty()) throw InputError("affine atlas has no charts");

    std::vector<std::string> order = a.charts;
    std::sort(order.begin(), order.end());
    const std::string root = order.front();

    std::map<std::string, std::vector<std::pair<std::string, std::string>>> adj;
    for (const auto& t : a.transitions) {
        adj[t.from].push_back({t.to, t.from});
        adj[t.to].push_back({t.from, t.from});
    }
    for (auto& [k, v] : adj) std::sort(v.begin(), v.end());

    CharacteristicData ch;
    for (const auto& [fid, seed] : a.facet_seeds) {
        // propagate from the seed chart everywhere, then read off at the root
        std::map<std::string, std::vector<Integer>> value;
        value[seed.first] = seed.second;
        std::vector<std::string> queue{seed.first};
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            const std::string& beta = queue[qi];
            for (const auto& [alpha, _] : adj[beta]) {
                auto e = a.edge(beta, alpha);  // map beta -> alpha
                if (!e) continue;
                std::vector<Integer> u = inverse_transpose(e->first).apply(value[beta]);
                auto it = value.find(alpha);
                if (it == value.end()) {
                    value[alpha] = u;
                    queue.push_back(alpha);
                } else if (it->second != u) {
                    throw InconsistentPropagation("facet '" + fid + "': normals disagree on chart '" + alpha +
                                                  "' along two propagation paths");
                }
            }
        }
        auto rit = value.find(root);
        if (rit == value.end())
            throw InconsistentPropagation("facet '" + fid + "' cannot be propagated to the root chart '" + root +
                                          "' (chart graph disconnected)");
        ch.facet_vectors[fid] = rit->second;
    }

    for (const auto& corner : a.corners) {
        IntegerMatrix g(a.n, corner.size());
        for (std::size_t j = 0; j < corner.size(); ++j) {
            auto it = ch.facet_vectors.find(corner[j]);
            if (it == ch.facet_vectors.end()) throw InputError("corner names unknown facet '" + corner[j] + "'");
            g.set_column(j, it->second);
        }
        if (!is_direct_summand(Sublattice(a.n, g))) {
            std::string subject;
            for (const auto& f : corner) subject += (subject.empty() ? "" : ",") + f;
            throw UnimodularityFailure("corner {" + subject + "}: induced normals are not unimodular");
        }
    }
    return ch;
}

/// Linear-part compatibility: the affine transitions must equal the
/// inverse-transposed monodromies edgewise. The Lagrangian-section half of
/// the full compatibility condition is out of computational scope and is
/// reported as unchecked.
inline bool compatibility_check(const AffineAtlas& a, const CechCocycle& rho) {
    for (const auto& t : a.transitions) {
        IntegerMatrix expected;
        try {
            expected = inverse_transpose(rho.value(t.to, t.from));
        } catch (const Error&) {
            throw InputError("monodromy cocycle has no value on edge (" + t.from + "," + t.to + ")");
        }
        if (t.linear != expected) return false;
    }
    return true;
}

/// Symbol-keyed variant: compare images of a gauge-fixed representation with
/// the linear parts stored under the same keys ("from|to").
inline bool compatibility_check(const AffineAtlas& a, const MonodromyData& m) {
    for (const auto& t : a.transitions) {
        auto it = m.images.find(t.from + "|" + t.to);
        if (it == m.images.end()) it = m.images.find(t.to + "|" + t.from);
        if (it == m.images.end()) throw InputError("no monodromy image for edge (" + t.from + "," + t.to + ")");
        if (t.linear != inverse_transpose(it->second)) return false;
    }
    return true;
}

} // namespace latact
