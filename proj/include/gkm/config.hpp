/*
  config.hpp — JSON group descriptions.

  A group is either a preset name or a JSON object:

    {
      "name": "affine-a2",
      "generators": ["s", "t", "u"],
      "coxeter_matrix": [[1,3,3],[3,1,3],[3,3,1]],   // 0 = infinite bond
      "dim": 4,
      "roots":   [[2,-1,-1,0], [-1,2,-1,0], [-1,-1,2,1]],  // one row per generator
      "coroots": [[1,0,0,0], [0,1,0,0], [0,0,1,0]]
    }

  "dim", "roots", "coroots" may be omitted together, in which case the
  integral root basis built from the Coxeter matrix is used.
*/
#pragma once

#include <string>

#include "gkm/coxeter.hpp"

namespace gkm {

Realization realization_from_json(const std::string& json_text);
Realization realization_from_file(const std::string& path);

// Preset name, or a path to a JSON file (detected by content / existence).
Realization resolve_group(const std::string& name_or_path);

}  // namespace gkm
