#pragma once

#include "latact/io.hpp"

#include <map>
#include <string>
#include <vector>

namespace latact {

/// Bundled example documents, also shipped as files under fixtures/.
inline const std::map<std::string, std::string>& bundled_fixtures() {
    static const std::map<std::string, std::string> fixtures = {
        {"one_corner_torus", R"JSON({
  "base": {"builder": {"genus": 1, "boundary_corners": [1]}},
  "oriented": true,
  "section_exists": true,
  "monodromy": {
    "alpha1": [[1, 0], [-1, 1]],
    "beta1": [[1, -1], [0, 1]],
    "gamma1": [[3, 1], [-1, 0]]
  },
  "characteristic": {"f1_0": [0, 1]},
  "signature": {
    "trinions": "auto",
    "boundary": [{"blow_up": {"vector": [1, 1], "monodromy_word": ["gamma1"]}}]
  }
}
)JSON"},
        {"triangle", R"JSON({
  "base": {"builder": {"genus": 0, "boundary_corners": [3]}},
  "oriented": true,
  "section_exists": true,
  "monodromy": {"gamma1": [[1, 0], [0, 1]]},
  "characteristic": {"f1_0": [1, 0], "f1_1": [0, 1], "f1_2": [-1, -1]},
  "signature": {
    "trinions": "auto",
    "boundary": [{"facets": [
      {"id": "f1_0", "v": [1, 0], "v_prev": [-1, -1], "v_next": [0, 1]},
      {"id": "f1_1", "v": [0, 1], "v_prev": [1, 0], "v_next": [-1, -1]},
      {"id": "f1_2", "v": [-1, -1], "v_prev": [0, 1], "v_next": [1, 0]}
    ]}]
  }
}
)JSON"},
        {"annulus", R"JSON({
  "base": {"builder": {"genus": 0, "boundary_corners": [0, 0]}},
  "oriented": true,
  "section_exists": true,
  "monodromy": {"gamma1": [[1, 0], [0, 1]], "gamma2": [[1, 0], [0, 1]]},
  "characteristic": {"f1_0": [0, 1], "f2_0": [0, 1]},
  "signature": {"trinions": "auto", "boundary": ["smooth", "smooth"]}
}
)JSON"},
        {"closed_torus", R"JSON({
  "base": {"builder": {"genus": 1, "boundary_corners": []}},
  "oriented": true,
  "section_exists": true,
  "monodromy": {"alpha1": [[1, 0], [0, 1]], "beta1": [[1, 0], [0, 1]]},
  "characteristic": {}
}
)JSON"}};
    return fixtures;
}

inline InputDocument load_fixture(const std::string& name) {
    auto it = bundled_fixtures().find(name);
    if (it == bundled_fixtures().end()) throw InputError("no bundled fixture named '" + name + "'");
    return parse_input_text(it->second);
}

} // namespace latact
