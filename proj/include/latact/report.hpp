#pragma once

#include "latact/io.hpp"
#include "latact/spectral.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace latact {

inline constexpr const char* kToolVersion = "0.1.0";

inline const std::array<std::string, 8>& section_names() {
    static const std::array<std::string, 8> names{"validate",  "standardness", "euler",     "pi1",
                                                  "cohomology", "ktheory",      "signature", "affine"};
    return names;
}

struct SectionError {
    std::string code;
    std::string message;
    ErrorKind kind = ErrorKind::validation;
};

struct InvariantReport {
    std::string tool_version = kToolVersion;
    std::string input_digest;

    std::vector<std::string> sections_run;
    std::map<std::string, SectionError> section_errors;

    ValidationReport base_report, monodromy_report, characteristic_report;
    bool data_valid = false;

    std::optional<bool> locally_standard;

    std::optional<int> euler_char;
    std::optional<long long> e1_sum_h, e1_sum_k;

    std::optional<Pi1Report> pi1;

    std::optional<E2Page> h_page;
    std::optional<GradedGroups> h_groups;

    std::optional<E2Page> k_page;
    std::optional<GradedGroups> k_grps;

    std::optional<SignatureBreakdown> sig;

    bool affine_present = false;
    std::optional<ValidationReport> affine_report;
    std::optional<std::map<std::string, std::vector<Integer>>> affine_normals;
    std::optional<bool> affine_compatible;
    std::string affine_note;
};

namespace detail {

inline void record_error(InvariantReport& rep, const std::string& section, const Error& e) {
    rep.section_errors[section] = SectionError{e.code(), e.message(), e.kind()};
}

inline std::vector<BoundaryInput> boundary_inputs(const InputDocument& doc) {
    std::vector<BoundaryInput> out;
    for (const auto& comp : doc.signature.components) {
        switch (comp.kind) {
            case SignatureInput::Component::Kind::smooth:
                out.push_back(SmoothComponent{});
                break;
            case SignatureInput::Component::Kind::necklace:
                out.push_back(comp.data);
                break;
            case SignatureInput::Component::Kind::blow_up: {
                IntegerMatrix m = comp.monodromy_matrix ? *comp.monodromy_matrix
                                                        : doc.monodromy.evaluate(*comp.monodromy_word);
                out.push_back(BlowUpInput{comp.vector, m});
                break;
            }
        }
    }
    return out;
}

} // namespace detail

/// Run one section (or "report" for all applicable ones) over a parsed and
/// resolved document. Failures are recorded per section, never thrown.
inline InvariantReport run(const std::string& requested, InputDocument doc) {
    bool all = requested == "report";
    auto wants = [&](const std::string& s) { return all || requested == s; };
    if (!all) {
        bool known = false;
        for (const auto& s : section_names()) known |= (s == requested);
        if (!known) throw InputError("unknown section '" + requested + "'");
    }

    InvariantReport rep;
    rep.input_digest = content_digest(doc.raw);

    // validation underlies everything and always runs
    rep.sections_run.push_back("validate");
    rep.base_report = validate_complex(doc.base);
    bool base_ok = rep.base_report.ok();
    rep.monodromy_report = validate_monodromy(doc.monodromy);
    bool monodromy_ok = rep.monodromy_report.ok();
    bool char_ok = false;
    if (base_ok && monodromy_ok) {
        rep.characteristic_report = validate_characteristic(doc.base, doc.monodromy, doc.characteristic);
        char_ok = rep.characteristic_report.ok();
    }
    rep.data_valid = base_ok && monodromy_ok && char_ok;
    if (!rep.data_valid)
        rep.section_errors["validate"] =
            SectionError{"ValidationFailed", "input failed mathematical validation", ErrorKind::validation};

    auto require_valid = [&](const std::string& section) {
        if (rep.data_valid) return true;
        rep.section_errors[section] =
            SectionError{"ValidationFailed", "skipped: input failed validation", ErrorKind::validation};
        return false;
    };

    if (wants("standardness")) {
        rep.sections_run.push_back("standardness");
        if (monodromy_ok) rep.locally_standard = is_locally_standard(doc.monodromy);
        else
            rep.section_errors["standardness"] =
                SectionError{"ValidationFailed", "skipped: monodromy invalid", ErrorKind::validation};
    }

    if (wants("euler")) {
        rep.sections_run.push_back("euler");
        if (base_ok) {
            rep.euler_char = euler_characteristic(doc.base);
            if (rep.data_valid && doc.section_exists) {
                try {
                    std::vector<CoefficientSystem> hs, ks;
                    for (int q = 0; q <= static_cast<int>(doc.monodromy.n); ++q)
                        hs.push_back(coefficient_system(doc.base, doc.monodromy, doc.characteristic, q, true));
                    rep.e1_sum_h = e1_euler_sum(doc.base, hs);
                    if (doc.monodromy.n == 2) {
                        for (int parity = 0; parity <= 1; ++parity)
                            ks.push_back(
                                k_coefficient_system(doc.base, doc.monodromy, doc.characteristic, parity, true));
                        rep.e1_sum_k = e1_euler_sum(doc.base, ks);
                    }
                    if ((rep.e1_sum_h && *rep.e1_sum_h != *rep.euler_char) ||
                        (rep.e1_sum_k && *rep.e1_sum_k != *rep.euler_char))
                        throw MathError("E1 alternating rank sum disagrees with the corner count");
                } catch (const Error& e) {
                    detail::record_error(rep, "euler", e);
                }
            }
        } else {
            rep.section_errors["euler"] =
                SectionError{"ValidationFailed", "skipped: base complex invalid", ErrorKind::validation};
        }
    }

    if (wants("pi1")) {
        rep.sections_run.push_back("pi1");
        if (base_ok) rep.pi1 = fundamental_group_report(doc.base, doc.section_exists);
        else
            rep.section_errors["pi1"] =
                SectionError{"ValidationFailed", "skipped: base complex invalid", ErrorKind::validation};
    }

    if (wants("cohomology")) {
        rep.sections_run.push_back("cohomology");
        if (require_valid("cohomology")) {
            try {
                rep.h_page = e2_page(doc.base, doc.monodromy, doc.characteristic, doc.section_exists);
                rep.h_groups = assemble(*rep.h_page);
            } catch (const Error& e) {
                detail::record_error(rep, "cohomology", e);
            }
        }
    }

    if (wants("ktheory")) {
        rep.sections_run.push_back("ktheory");
        if (require_valid("ktheory")) {
            try {
                rep.k_page = k_e2_page(doc.base, doc.monodromy, doc.characteristic, doc.section_exists);
                rep.k_grps = k_groups(doc.base, doc.monodromy, doc.characteristic, doc.section_exists);
            } catch (const Error& e) {
                detail::record_error(rep, "ktheory", e);
            }
        }
    }

    if (wants("signature") && (doc.signature.present || !all)) {
        rep.sections_run.push_back("signature");
        if (!doc.signature.present) {
            rep.section_errors["signature"] =
                SectionError{"InputError", "document has no signature block", ErrorKind::input};
        } else if (require_valid("signature")) {
            try {
                std::vector<TrinionPair> pairs = doc.signature.trinions;
                if (doc.signature.auto_trinions) {
                    if (!doc.base.genus)
                        throw InputError("auto trinion generation needs a builder-generated base");
                    // genus zero: the interior part is planar, no trinions needed
                    if (*doc.base.genus > 0 && doc.base.boundary.size() != 1)
                        throw InputError("auto trinion generation covers a single boundary component");
                    pairs = standard_trinion_pairs(doc.monodromy, *doc.base.genus);
                }
                rep.sig = total_signature(pairs, detail::boundary_inputs(doc), doc.oriented);
            } catch (const Error& e) {
                detail::record_error(rep, "signature", e);
            }
        }
    }

    if (wants("affine") && (doc.affine.present || !all)) {
        rep.sections_run.push_back("affine");
        rep.affine_present = doc.affine.present;
        if (!doc.affine.present) {
            rep.section_errors["affine"] =
                SectionError{"InputError", "document has no affine block", ErrorKind::input};
        } else {
            rep.affine_report = validate_affine_atlas(doc.affine.atlas);
            if (!rep.affine_report->ok()) {
                rep.section_errors["affine"] =
                    SectionError{"ValidationFailed", "affine atlas failed validation", ErrorKind::validation};
            } else {
                try {
                    CharacteristicData normals = induced_normals(doc.affine.atlas);
                    rep.affine_normals = normals.facet_vectors;
                    if (doc.affine.compare_monodromy)
                        rep.affine_compatible =
                            compatibility_check(doc.affine.atlas, *doc.affine.compare_monodromy);
                } catch (const Error& e) {
                    detail::record_error(rep, "affine", e);
                }
            }
            rep.affine_note = "linear-part compatibility checked only; the Lagrangian-section half of the "
                              "compatibility condition is out of computational scope";
        }
    }

    return rep;
}

inline int exit_code_for(const InvariantReport& rep, const std::string& requested) {
    auto code_of = [](const SectionError& e) {
        switch (e.kind) {
            case ErrorKind::input: return 1;
            case ErrorKind::validation: return 2;
            case ErrorKind::scope: return 3;
        }
        return 2;
    };
    if (requested != "report") {
        auto it = rep.section_errors.find(requested);
        if (it != rep.section_errors.end()) return code_of(it->second);
        if (requested != "validate" && !rep.data_valid) return 2;
        return 0;
    }
    for (const auto& s : rep.sections_run) {
        auto it = rep.section_errors.find(s);
        if (it != rep.section_errors.end()) return code_of(it->second);
    }
    return 0;
}

// ---------------------------------------------------------------------------
// rendering

namespace detail {

inline std::string group_str(const FGAbelianGroup& g) { return g.str(); }

inline void render_page(std::ostringstream& out, const E2Page& page) {
    for (int q = page.max_q; q >= 0; --q) {
        out << "  q=" << q << ":";
        for (int p = 0; p <= page.max_p; ++p) out << (p ? ", " : " ") << page.at(p, q).str();
        out << "\n";
    }
    out << "  degenerate at E2: " << (page.degeneracy_certified ? "yes" : "not certified") << " ("
        << page.degeneracy_reason << ")\n";
}

inline void render_validation(std::ostringstream& out, const std::string& name, const ValidationReport& rep) {
    out << name << ": " << (rep.ok() ? "OK" : "FAILED") << "\n";
    for (const auto& i : rep.issues) out << "  - " << i.code << " [" << i.subject << "] " << i.message << "\n";
}

inline std::string vec_str(const std::vector<Integer>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += v[i].str();
    }
    return s + ")";
}

} // namespace detail

inline std::string render_text(const InvariantReport& rep) {
    std::ostringstream out;
    out << "latact " << rep.tool_version << "\n";
    out << "input digest: fnv1a:" << rep.input_digest << "\n";

    auto ran = [&](const std::string& s) {
        return std::find(rep.sections_run.begin(), rep.sections_run.end(), s) != rep.sections_run.end();
    };
    auto error_line = [&](const std::string& s) {
        auto it = rep.section_errors.find(s);
        if (it != rep.section_errors.end()) out << "error: " << it->second.code << ": " << it->second.message << "\n";
    };

    out << "\n[validate]\n";
    detail::render_validation(out, "base complex", rep.base_report);
    detail::render_validation(out, "monodromy", rep.monodromy_report);
    detail::render_validation(out, "characteristic", rep.characteristic_report);
    out << "verdict: " << (rep.data_valid ? "valid characteristic pair data" : "INVALID") << "\n";

    if (ran("standardness")) {
        out << "\n[standardness]\n";
        error_line("standardness");
        if (rep.locally_standard)
            out << "locally standard: " << (*rep.locally_standard ? "yes" : "no")
                << (*rep.locally_standard ? " (monodromy cocycle is trivial)"
                                          : " (nontrivial monodromy obstructs a global action)")
                << "\n";
    }

    if (ran("euler")) {
        out << "\n[euler]\n";
        error_line("euler");
        if (rep.euler_char) {
            out << "corner count |S^(0)B|: " << *rep.euler_char << "\n";
            out << "euler characteristic chi(X): " << *rep.euler_char << "\n";
        }
        if (rep.e1_sum_h) out << "E1 alternating rank sum (cohomology): " << *rep.e1_sum_h << "\n";
        if (rep.e1_sum_k) out << "E1 alternating rank sum (K-theory): " << *rep.e1_sum_k << "\n";
    }

    if (ran("pi1")) {
        out << "\n[pi1]\n";
        error_line("pi1");
        if (rep.pi1) {
            out << "S^(0)B cells: " << rep.pi1->corner_cells << "\n";
            out << "isomorphism pi1(X) = pi1(B): " << (rep.pi1->isomorphism_asserted ? "asserted" : "not asserted")
                << "\n";
            if (rep.pi1->free_group) out << "pi1(X): free of rank " << rep.pi1->free_rank << "\n";
            if (!rep.pi1->presentation.empty()) out << "pi1(B) presentation: " << rep.pi1->presentation << "\n";
            out << "note: " << rep.pi1->note << "\n";
        }
    }

    if (ran("cohomology")) {
        out << "\n[cohomology]\n";
        error_line("cohomology");
        if (rep.h_page) {
            out << "E2 page (q rows top to bottom):\n";
            detail::render_page(out, *rep.h_page);
        }
        if (rep.h_groups) {
            if (rep.h_groups->assembled) {
                int top = 0;
                for (const auto& [k, g] : rep.h_groups->groups) top = std::max(top, k);
                for (int k = 0; k <= top; ++k) {
                    auto it = rep.h_groups->groups.find(k);
                    out << "H^" << k << "(X) = " << (it == rep.h_groups->groups.end() ? "0" : it->second.str())
                        << "\n";
                }
            } else {
                out << "graded pieces carry torsion; total groups left unassembled\n";
            }
        }
    }

    if (ran("ktheory")) {
        out << "\n[ktheory]\n";
        error_line("ktheory");
        if (rep.k_page) {
            out << "K-theory E2 page (two-periodic; rows: q odd, q even):\n";
            detail::render_page(out, *rep.k_page);
        }
        if (rep.k_grps && rep.k_grps->assembled) {
            out << "K^0(X) = " << rep.k_grps->groups.at(0).str() << "\n";
            out << "K^1(X) = " << rep.k_grps->groups.at(1).str() << "\n";
        } else if (rep.k_grps) {
            out << "graded pieces carry torsion; K-groups left unassembled\n";
        }
    }

    if (ran("signature")) {
        out << "\n[signature]\n";
        error_line("signature");
        if (rep.sig) {
            out << "trinion tau_1 values:";
            if (rep.sig->trinion_values.empty()) out << " (none)";
            for (int v : rep.sig->trinion_values) out << " " << v;
            out << "\n";
            out << "sigma(interior) = " << rep.sig->sigma_interior << "\n";
            for (std::size_t i = 0; i < rep.sig->components.size(); ++i) {
                const auto& c = rep.sig->components[i];
                out << "component " << (i + 1) << ":";
                if (c.smooth_unverified) {
                    out << " smooth boundary, contribution 0 (unverified: no corner model applies)\n";
                    continue;
                }
                out << "\n";
                if (!c.u1.empty())
                    out << "  blow-up at the corner: u1 = " << detail::vec_str(c.u1)
                        << ", u2 = " << detail::vec_str(c.u2) << ", correction +" << c.correction << "\n";
                if (c.intersection_matrix) out << "  necklace matrix: " << c.intersection_matrix->str() << "\n";
                out << "  necklace signature: " << c.necklace_signature << "\n";
                if (c.correction != 0)
                    out << "  component contribution: " << (c.necklace_signature + c.correction) << "\n";
            }
            out << "sigma(boundary) = " << rep.sig->sigma_boundary << "\n";
            out << "sigma(X) = " << rep.sig->sigma_total << "\n";
            if (rep.sig->multi_component)
                out << "note: multiple boundary components summed by additivity (extension beyond the "
                       "single-component treatment)\n";
        }
    }

    if (ran("affine")) {
        out << "\n[affine]\n";
        error_line("affine");
        if (rep.affine_report) detail::render_validation(out, "affine atlas", *rep.affine_report);
        if (rep.affine_normals) {
            out << "induced facet normals (root chart frame):\n";
            for (const auto& [fid, v] : *rep.affine_normals) out << "  " << fid << ": " << detail::vec_str(v) << "\n";
        }
        if (rep.affine_compatible)
            out << "monodromy compatibility A = rho^{-T}: " << (*rep.affine_compatible ? "holds" : "fails") << "\n";
        if (!rep.affine_note.empty() && rep.affine_present) out << "note: " << rep.affine_note << "\n";
    }

    return out.str();
}

inline json render_json(const InvariantReport& rep) {
    json j;
    j["tool_version"] = rep.tool_version;
    j["input_digest"] = rep.input_digest;
    j["sections_run"] = rep.sections_run;

    json errs;
    for (const auto& [s, e] : rep.section_errors) errs[s] = json{{"code", e.code}, {"message", e.message}};
    j["errors"] = errs;

    auto validation_json = [](const ValidationReport& v) {
        json issues = json::array();
        for (const auto& i : v.issues)
            issues.push_back(json{{"code", i.code}, {"subject", i.subject}, {"message", i.message}});
        return json{{"ok", v.ok()}, {"issues", issues}};
    };
    j["validate"] = json{{"base", validation_json(rep.base_report)},
                         {"monodromy", validation_json(rep.monodromy_report)},
                         {"characteristic", validation_json(rep.characteristic_report)},
                         {"valid", rep.data_valid}};

    if (rep.locally_standard) j["locally_standard"] = *rep.locally_standard;
    if (rep.euler_char) j["euler_characteristic"] = *rep.euler_char;
    if (rep.e1_sum_h) j["e1_rank_sum_cohomology"] = *rep.e1_sum_h;
    if (rep.e1_sum_k) j["e1_rank_sum_ktheory"] = *rep.e1_sum_k;

    if (rep.pi1) {
        j["pi1"] = json{{"isomorphism_asserted", rep.pi1->isomorphism_asserted},
                        {"corner_cells", rep.pi1->corner_cells},
                        {"free", rep.pi1->free_group},
                        {"free_rank", rep.pi1->free_rank},
                        {"presentation", rep.pi1->presentation},
                        {"note", rep.pi1->note}};
    }

    auto page_json = [](const E2Page& page) {
        json entries = json::array();
        for (const auto& [pq, g] : page.table)
            entries.push_back(json{{"p", pq.first}, {"q", pq.second}, {"group", g.str()}});
        return json{{"entries", entries},
                    {"degeneracy_certified", page.degeneracy_certified},
                    {"degeneracy_reason", page.degeneracy_reason}};
    };
    auto groups_json = [](const GradedGroups& g) {
        json out;
        out["assembled"] = g.assembled;
        json pieces = json::array();
        for (const auto& [pq, grp] : g.pieces)
            pieces.push_back(json{{"p", pq.first}, {"q", pq.second}, {"group", grp.str()}});
        out["pieces"] = pieces;
        if (g.assembled) {
            json tot;
            for (const auto& [k, grp] : g.groups) tot[std::to_string(k)] = grp.str();
            out["groups"] = tot;
        }
        return out;
    };
    if (rep.h_page) j["cohomology_e2"] = page_json(*rep.h_page);
    if (rep.h_groups) j["cohomology"] = groups_json(*rep.h_groups);
    if (rep.k_page) j["ktheory_e2"] = page_json(*rep.k_page);
    if (rep.k_grps) j["ktheory"] = groups_json(*rep.k_grps);

    if (rep.sig) {
        json comps = json::array();
        for (const auto& c : rep.sig->components) {
            json cj;
            cj["smooth_unverified"] = c.smooth_unverified;
            cj["necklace_signature"] = c.necklace_signature;
            cj["correction"] = c.correction;
            if (c.intersection_matrix) cj["intersection_matrix"] = detail::matrix_to_json(*c.intersection_matrix);
            if (!c.u1.empty()) {
                cj["u1"] = detail::vector_to_json(c.u1);
                cj["u2"] = detail::vector_to_json(c.u2);
            }
            comps.push_back(cj);
        }
        j["signature"] = json{{"trinion_values", rep.sig->trinion_values},
                              {"sigma_interior", rep.sig->sigma_interior},
                              {"components", comps},
                              {"sigma_boundary", rep.sig->sigma_boundary},
                              {"blowup_correction", rep.sig->blowup_correction},
                              {"sigma_total", rep.sig->sigma_total},
                              {"multi_component", rep.sig->multi_component}};
    }

    if (rep.affine_present) {
        json aj;
        if (rep.affine_report) aj["valid"] = rep.affine_report->ok();
        if (rep.affine_normals) {
            json normals;
            for (const auto& [fid, v] : *rep.affine_normals) normals[fid] = detail::vector_to_json(v);
            aj["induced_normals"] = normals;
        }
        if (rep.affine_compatible) aj["compatible"] = *rep.affine_compatible;
        aj["note"] = rep.affine_note;
        j["affine"] = aj;
    }
    return j;
}

} // namespace latact
