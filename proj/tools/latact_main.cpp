// latact: validate combinatorial presentations of local torus actions and
// compute their integral invariants (Euler characteristic, spectral-sequence
// pages, cohomology, K-groups, fundamental-group report, signature).

#include "latact/latact.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

namespace {

latact::InputDocument resolve_input(const std::string& source) {
    if (source.rfind("fixture:", 0) == 0) return latact::load_fixture(source.substr(8));
    if (source == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return latact::parse_input_text(ss.str());
    }
    return latact::parse_input_file(source);
}

int run_section(const std::string& section, const std::string& input, bool json_out) {
    latact::InputDocument doc = resolve_input(input);
    latact::InvariantReport rep = latact::run(section, std::move(doc));
    if (json_out) std::cout << latact::render_json(rep).dump(2) << "\n";
    else std::cout << latact::render_text(rep);
    return latact::exit_code_for(rep, section);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"latact: integral invariants of local torus actions from characteristic pair data"};
    app.require_subcommand(0, 1);

    bool list_fixtures = false;
    app.add_flag("--fixtures", list_fixtures, "list bundled example documents and exit");

    struct Cmd {
        CLI::App* sub;
        std::string input;
        bool json = false;
        std::string section;
    };
    std::vector<std::string> commands = {"report",  "validate",  "euler",  "pi1",
                                         "cohomology", "ktheory", "signature", "affine", "standardness"};
    std::map<std::string, Cmd> cmds;
    for (const auto& name : commands) {
        Cmd c;
        c.sub = app.add_subcommand(name, name == "report" ? "run every applicable pipeline"
                                                          : "run the " + name + " pipeline");
        c.sub->add_option("--input,-i", cmds[name].input, "input document: a path, '-' for stdin, or fixture:<name>")
            ->required();
        c.sub->add_flag("--json", cmds[name].json, "emit the machine-readable JSON report");
        if (name == "report")
            c.sub->add_option("--section", cmds[name].section, "restrict the report to one section");
        cmds[name].sub = c.sub;
    }

    CLI11_PARSE(app, argc, argv);

    if (list_fixtures) {
        for (const auto& [name, text] : latact::bundled_fixtures()) std::cout << name << "\n";
        return 0;
    }

    try {
        for (const auto& [name, cmd] : cmds) {
            if (!cmd.sub->parsed()) continue;
            std::string section = name;
            if (name == "report" && !cmd.section.empty()) section = cmd.section;
            return run_section(section, cmd.input, cmd.json);
        }
        std::cerr << app.help();
        return 1;
    } catch (const latact::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.kind()) {
            case latact::ErrorKind::input: return 1;
            case latact::ErrorKind::validation: return 2;
            case latact::ErrorKind::scope: return 3;
        }
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
