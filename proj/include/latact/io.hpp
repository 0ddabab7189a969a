#pragma once

#include "latact/affine.hpp"
#include "latact/four_manifold.hpp"
#include "latact/torus_data.hpp"

#include <json.hpp>

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace latact {

using nlohmann::json;

/// Signature block: trinion pairs (or the convenience auto splitting) plus
/// one boundary entry per component.
struct SignatureInput {
    bool present = false;
    bool auto_trinions = false;
    std::vector<TrinionPair> trinions;

    struct Component {
        enum class Kind { necklace, blow_up, smooth } kind = Kind::smooth;
        BoundaryFacetData data;              // necklace
        std::vector<Integer> vector;         // blow_up
        std::optional<Word> monodromy_word;  // blow_up: word in the declared generators
        std::optional<IntegerMatrix> monodromy_matrix;
    };
    std::vector<Component> components;
};

struct AffineInput {
    bool present = false;
    AffineAtlas atlas;
    std::optional<CechCocycle> compare_monodromy;
};

struct InputDocument {
    BaseComplex base;
    MonodromyData monodromy;
    CharacteristicData characteristic;
    bool section_exists = false;
    bool oriented = false;
    SignatureInput signature;
    AffineInput affine;
    std::string raw;  // original text, for the content digest
};

namespace detail {

inline const json& field(const json& j, const char* name, const std::string& ctx) {
    auto it = j.find(name);
    if (it == j.end()) throw InputError("missing field '" + std::string(name) + "' in " + ctx);
    return *it;
}

inline IntegerMatrix parse_matrix(const json& j, const std::string& ctx) {
    if (!j.is_array() || j.empty() || !j[0].is_array()) throw InputError("expected a matrix (array of rows) in " + ctx);
    IntegerMatrix m(j.size(), j[0].size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_array() || j[i].size() != m.cols()) throw InputError("ragged matrix in " + ctx);
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const json& e = j[i][c];
            if (e.is_number_integer()) m(i, c) = Integer(e.get<long long>());
            else if (e.is_string()) m(i, c) = Integer(e.get<std::string>());
            else throw InputError("matrix entry must be an integer in " + ctx);
        }
    }
    return m;
}

inline std::vector<Integer> parse_vector(const json& j, const std::string& ctx) {
    if (!j.is_array()) throw InputError("expected an integer vector in " + ctx);
    std::vector<Integer> v;
    for (const auto& e : j) {
        if (e.is_number_integer()) v.push_back(Integer(e.get<long long>()));
        else if (e.is_string()) v.push_back(Integer(e.get<std::string>()));
        else throw InputError("vector entry must be an integer in " + ctx);
    }
    return v;
}

inline Rational parse_rational(const json& j, const std::string& ctx) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rational(Integer(s));
        return Rational(Integer(s.substr(0, slash)), Integer(s.substr(slash + 1)));
    }
    throw InputError("expected an exact rational (integer or \"p/q\") in " + ctx);
}

inline Word parse_word(const json& j, const std::string& ctx) {
    if (!j.is_array()) throw InputError("expected a word (array of signed symbols) in " + ctx);
    Word w;
    for (const auto& e : j) {
        if (!e.is_string()) throw InputError("word letters must be strings in " + ctx);
        std::string s = e.get<std::string>();
        if (s.empty()) throw InputError("empty word letter in " + ctx);
        if (s[0] == '-') w.push_back({s.substr(1), true});
        else w.push_back({s, false});
    }
    return w;
}

inline json word_to_json(const Word& w) {
    json a = json::array();
    for (const auto& l : w) a.push_back(l.inverse ? "-" + l.symbol : l.symbol);
    return a;
}

inline json matrix_to_json(const IntegerMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const Integer& x = m(i, c);
            // keep small entries as JSON integers for readability
            if (x >= Integer(INT64_MIN) && x <= Integer(INT64_MAX)) row.push_back(x.convert_to<long long>());
            else row.push_back(x.str());
        }
        rows.push_back(row);
    }
    return rows;
}

inline json vector_to_json(const std::vector<Integer>& v) {
    json a = json::array();
    for (const auto& x : v) {
        if (x >= Integer(INT64_MIN) && x <= Integer(INT64_MAX)) a.push_back(x.convert_to<long long>());
        else a.push_back(x.str());
    }
    return a;
}

inline BaseComplex parse_base(const json& j) {
    if (j.contains("builder")) {
        const json& b = j["builder"];
        int genus = field(b, "genus", "base.builder").get<int>();
        std::vector<int> corners;
        for (const auto& c : field(b, "boundary_corners", "base.builder")) corners.push_back(c.get<int>());
        return build_surface_base(genus, corners);
    }
    BaseComplex b;
    b.n = field(j, "n", "base").get<int>();
    for (const auto& cj : field(j, "cells", "base")) {
        Cell c;
        c.id = field(cj, "id", "base.cells").get<std::string>();
        c.dim = field(cj, "dim", "base.cells").get<int>();
        c.stratum_dim = field(cj, "stratum", "base.cells").get<int>();
        if (cj.contains("label")) c.label = cj["label"].get<std::string>();
        b.cells.push_back(c);
    }
    for (const auto& ij : field(j, "incidences", "base")) {
        IncidenceRecord r;
        r.coface = field(ij, "coface", "base.incidences").get<std::string>();
        r.face = field(ij, "face", "base.incidences").get<std::string>();
        r.coefficient = field(ij, "coefficient", "base.incidences").get<int>();
        if (ij.contains("word")) r.transport = parse_word(ij["word"], "base.incidences");
        b.incidences.push_back(r);
    }
    if (j.contains("generators"))
        for (const auto& g : j["generators"]) b.generator_symbols.push_back(g.get<std::string>());
    if (j.contains("relations"))
        for (const auto& w : j["relations"]) b.relation_words.push_back(parse_word(w, "base.relations"));
    if (j.contains("boundary")) {
        for (const auto& compj : j["boundary"]) {
            BoundaryComponent comp;
            if (compj.contains("corners"))
                for (const auto& c : compj["corners"]) comp.corners.push_back(c.get<std::string>());
            for (const auto& fj : field(compj, "facets", "base.boundary")) {
                Facet f;
                f.id = field(fj, "id", "base.boundary.facets").get<std::string>();
                for (const auto& c : field(fj, "cells", "base.boundary.facets")) f.cells.push_back(c.get<std::string>());
                comp.facets.push_back(f);
            }
            b.boundary.push_back(comp);
        }
    }
    return b;
}

inline json base_to_json(const BaseComplex& b) {
    json j;
    if (b.genus && b.builder_corners) {
        j["builder"] = json{{"genus", *b.genus}, {"boundary_corners", *b.builder_corners}};
        return j;
    }
    j["n"] = b.n;
    json cells = json::array();
    for (const auto& c : b.cells) {
        json cj{{"id", c.id}, {"dim", c.dim}, {"stratum", c.stratum_dim}};
        if (!c.label.empty()) cj["label"] = c.label;
        cells.push_back(cj);
    }
    j["cells"] = cells;
    json incs = json::array();
    for (const auto& r : b.incidences) {
        json ij{{"coface", r.coface}, {"face", r.face}, {"coefficient", r.coefficient}};
        if (!r.transport.empty()) ij["word"] = word_to_json(r.transport);
        incs.push_back(ij);
    }
    j["incidences"] = incs;
    j["generators"] = b.generator_symbols;
    json rels = json::array();
    for (const auto& w : b.relation_words) rels.push_back(word_to_json(w));
    j["relations"] = rels;
    json comps = json::array();
    for (const auto& comp : b.boundary) {
        json cj;
        cj["corners"] = comp.corners;
        json facets = json::array();
        for (const auto& f : comp.facets) facets.push_back(json{{"id", f.id}, {"cells", f.cells}});
        cj["facets"] = facets;
        comps.push_back(cj);
    }
    j["boundary"] = comps;
    return j;
}

} // namespace detail

inline InputDocument parse_input_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("document is not valid JSON: ") + e.what());
    }
    using detail::field;

    InputDocument doc;
    doc.raw = text;
    doc.base = detail::parse_base(field(j, "base", "document"));
    doc.base.oriented = field(j, "oriented", "document").get<bool>();
    doc.section_exists = field(j, "section_exists", "document").get<bool>();
    doc.oriented = doc.base.oriented;

    const json& mj = field(j, "monodromy", "document");
    doc.monodromy.n = static_cast<std::size_t>(doc.base.n);
    for (auto it = mj.begin(); it != mj.end(); ++it)
        doc.monodromy.images[it.key()] = detail::parse_matrix(it.value(), "monodromy." + it.key());
    doc.monodromy.relations = doc.base.relation_words;

    if (j.contains("characteristic")) {
        const json& cj = j["characteristic"];
        for (auto it = cj.begin(); it != cj.end(); ++it)
            doc.characteristic.facet_vectors[it.key()] = detail::parse_vector(it.value(), "characteristic." + it.key());
    }

    if (j.contains("signature")) {
        const json& sj = j["signature"];
        doc.signature.present = true;
        const json& tri = field(sj, "trinions", "signature");
        if (tri.is_string() && tri.get<std::string>() == "auto") {
            doc.signature.auto_trinions = true;
        } else if (tri.is_array()) {
            for (const auto& pj : tri) {
                if (!pj.is_array() || pj.size() != 2) throw InputError("each trinion entry must be a pair of matrices");
                doc.signature.trinions.push_back(
                    {detail::parse_matrix(pj[0], "signature.trinions"), detail::parse_matrix(pj[1], "signature.trinions")});
            }
        } else {
            throw InputError("signature.trinions must be \"auto\" or an array of matrix pairs");
        }
        for (const auto& cj : field(sj, "boundary", "signature")) {
            SignatureInput::Component comp;
            if (cj.is_string() && cj.get<std::string>() == "smooth") {
                comp.kind = SignatureInput::Component::Kind::smooth;
            } else if (cj.contains("blow_up")) {
                comp.kind = SignatureInput::Component::Kind::blow_up;
                const json& bj = cj["blow_up"];
                comp.vector = detail::parse_vector(field(bj, "vector", "signature.boundary.blow_up"),
                                                   "signature.boundary.blow_up.vector");
                if (bj.contains("monodromy_word"))
                    comp.monodromy_word = detail::parse_word(bj["monodromy_word"], "signature.boundary.blow_up");
                else if (bj.contains("monodromy"))
                    comp.monodromy_matrix = detail::parse_matrix(bj["monodromy"], "signature.boundary.blow_up");
                else
                    throw InputError("blow_up component needs 'monodromy_word' or 'monodromy'");
            } else if (cj.contains("facets")) {
                comp.kind = SignatureInput::Component::Kind::necklace;
                for (const auto& fj : cj["facets"]) {
                    BoundaryFacet f;
                    f.id = detail::field(fj, "id", "signature.boundary.facets").get<std::string>();
                    f.v = detail::parse_vector(detail::field(fj, "v", "signature.boundary.facets"), "facet v");
                    f.v_prev =
                        detail::parse_vector(detail::field(fj, "v_prev", "signature.boundary.facets"), "facet v_prev");
                    f.v_next =
                        detail::parse_vector(detail::field(fj, "v_next", "signature.boundary.facets"), "facet v_next");
                    comp.data.facets.push_back(f);
                }
            } else {
                throw InputError("each signature.boundary entry must be \"smooth\", a blow_up, or a facet list");
            }
            doc.signature.components.push_back(comp);
        }
    }

    if (j.contains("affine")) {
        const json& aj = j["affine"];
        doc.affine.present = true;
        AffineAtlas& a = doc.affine.atlas;
        a.n = static_cast<std::size_t>(doc.base.n);
        for (const auto& c : field(aj, "charts", "affine")) a.charts.push_back(c.get<std::string>());
        if (aj.contains("transitions")) {
            for (const auto& tj : aj["transitions"]) {
                AffineTransition t;
                t.from = field(tj, "from", "affine.transitions").get<std::string>();
                t.to = field(tj, "to", "affine.transitions").get<std::string>();
                t.linear = detail::parse_matrix(field(tj, "linear", "affine.transitions"), "affine transition");
                if (tj.contains("translation"))
                    for (const auto& e : tj["translation"])
                        t.translation.push_back(detail::parse_rational(e, "affine translation"));
                else
                    t.translation.assign(a.n, Rational(0));
                a.transitions.push_back(t);
            }
        }
        if (aj.contains("triangles"))
            for (const auto& tj : aj["triangles"]) {
                if (!tj.is_array() || tj.size() != 3) throw InputError("affine triangle must list three charts");
                a.triangles.push_back({tj[0].get<std::string>(), tj[1].get<std::string>(), tj[2].get<std::string>()});
            }
        if (aj.contains("facet_seeds")) {
            const json& fj = aj["facet_seeds"];
            for (auto it = fj.begin(); it != fj.end(); ++it) {
                a.facet_seeds[it.key()] = {field(it.value(), "chart", "affine.facet_seeds").get<std::string>(),
                                           detail::parse_vector(field(it.value(), "vector", "affine.facet_seeds"),
                                                                "affine seed vector")};
            }
        }
        if (aj.contains("corners"))
            for (const auto& cj : aj["corners"]) {
                std::vector<std::string> corner;
                for (const auto& f : cj) corner.push_back(f.get<std::string>());
                a.corners.push_back(corner);
            }
        if (aj.contains("compare_monodromy")) {
            CechCocycle c;
            c.n = a.n;
            c.charts = a.charts;
            for (const auto& ej : aj["compare_monodromy"]) {
                const json& edge = field(ej, "edge", "affine.compare_monodromy");
                if (!edge.is_array() || edge.size() != 2) throw InputError("compare_monodromy edge must name two charts");
                c.edges[{edge[0].get<std::string>(), edge[1].get<std::string>()}] =
                    detail::parse_matrix(field(ej, "rho", "affine.compare_monodromy"), "compare_monodromy rho");
            }
            doc.affine.compare_monodromy = c;
        }
    }
    return doc;
}

inline InputDocument parse_input_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open input file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_input_text(ss.str());
}

/// Canonical serialization: parse(serialize(parse(x))) == parse(x).
inline std::string serialize_input(const InputDocument& doc) {
    json j;
    j["base"] = detail::base_to_json(doc.base);
    j["oriented"] = doc.oriented;
    j["section_exists"] = doc.section_exists;
    json mj;
    for (const auto& [k, v] : doc.monodromy.images) mj[k] = detail::matrix_to_json(v);
    j["monodromy"] = mj;
    json cj;
    for (const auto& [k, v] : doc.characteristic.facet_vectors) cj[k] = detail::vector_to_json(v);
    j["characteristic"] = cj;
    if (doc.signature.present) {
        json sj;
        if (doc.signature.auto_trinions) {
            sj["trinions"] = "auto";
        } else {
            json tri = json::array();
            for (const auto& p : doc.signature.trinions)
                tri.push_back(json::array({detail::matrix_to_json(p.c1), detail::matrix_to_json(p.c2)}));
            sj["trinions"] = tri;
        }
        json comps = json::array();
        for (const auto& comp : doc.signature.components) {
            switch (comp.kind) {
                case SignatureInput::Component::Kind::smooth:
                    comps.push_back("smooth");
                    break;
                case SignatureInput::Component::Kind::blow_up: {
                    json bj;
                    bj["vector"] = detail::vector_to_json(comp.vector);
                    if (comp.monodromy_word) bj["monodromy_word"] = detail::word_to_json(*comp.monodromy_word);
                    if (comp.monodromy_matrix) bj["monodromy"] = detail::matrix_to_json(*comp.monodromy_matrix);
                    comps.push_back(json{{"blow_up", bj}});
                    break;
                }
                case SignatureInput::Component::Kind::necklace: {
                    json facets = json::array();
                    for (const auto& f : comp.data.facets)
                        facets.push_back(json{{"id", f.id},
                                              {"v", detail::vector_to_json(f.v)},
                                              {"v_prev", detail::vector_to_json(f.v_prev)},
                                              {"v_next", detail::vector_to_json(f.v_next)}});
                    comps.push_back(json{{"facets", facets}});
                    break;
                }
            }
        }
        sj["boundary"] = comps;
        j["signature"] = sj;
    }
    if (doc.affine.present) {
        const AffineAtlas& a = doc.affine.atlas;
        json aj;
        aj["charts"] = a.charts;
        json trans = json::array();
        for (const auto& t : a.transitions) {
            json tj{{"from", t.from}, {"to", t.to}, {"linear", detail::matrix_to_json(t.linear)}};
            json tr = json::array();
            for (const auto& c : t.translation) tr.push_back(latact::to_string(c));
            tj["translation"] = tr;
            trans.push_back(tj);
        }
        aj["transitions"] = trans;
        json tris = json::array();
        for (const auto& t : a.triangles) tris.push_back(json::array({t[0], t[1], t[2]}));
        aj["triangles"] = tris;
        json seeds;
        for (const auto& [fid, seed] : a.facet_seeds)
            seeds[fid] = json{{"chart", seed.first}, {"vector", detail::vector_to_json(seed.second)}};
        aj["facet_seeds"] = seeds;
        json corners = json::array();
        for (const auto& c : a.corners) corners.push_back(c);
        aj["corners"] = corners;
        if (doc.affine.compare_monodromy) {
            json edges = json::array();
            for (const auto& [e, m] : doc.affine.compare_monodromy->edges)
                edges.push_back(json{{"edge", json::array({e.first, e.second})}, {"rho", detail::matrix_to_json(m)}});
            aj["compare_monodromy"] = edges;
        }
        j["affine"] = aj;
    }
    return j.dump(2) + "\n";
}

/// FNV-1a 64-bit digest of the raw input bytes; embedded in every report so
/// identical inputs are recognizably identical.
inline std::string content_digest(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

} // namespace latact
