#include "kspace_cli/app.hpp"

namespace kspace::cli {

namespace {

// Point masses, the +-1 dipoles, Moebius maps at a in {0, 0.25, 0.5, 0.75},
// polynomial self-maps, z^2 and two Blaschke products.
constexpr const char* standard_text = R"json({
  "measures": [
    {"name": "delta_1",     "atoms": [{"angle": 0.0, "re": 1.0, "im": 0.0}]},
    {"name": "delta_i",     "atoms": [{"angle": 1.5707963267948966, "re": 1.0, "im": 0.0}]},
    {"name": "dipole_sum",  "atoms": [{"angle": 0.0, "re": 1.0, "im": 0.0},
                                      {"angle": 3.141592653589793, "re": 1.0, "im": 0.0}]},
    {"name": "dipole_diff", "atoms": [{"angle": 0.0, "re": 1.0, "im": 0.0},
                                      {"angle": 3.141592653589793, "re": -1.0, "im": 0.0}]},
    {"name": "half_pair",   "atoms": [{"angle": 0.0, "re": 0.5, "im": 0.0},
                                      {"angle": 3.141592653589793, "re": 0.5, "im": 0.0}]},
    {"name": "mixed",       "atoms": [{"angle": 0.7, "re": 1.0, "im": -0.5},
                                      {"angle": 2.9, "re": 0.3, "im": 0.0},
                                      {"angle": 4.4, "re": 0.0, "im": 0.8}]}
  ],
  "self_maps": [
    {"name": "mobius_0",        "kind": "mobius", "a": [0.0, 0.0]},
    {"name": "mobius_0.25",     "kind": "mobius", "a": [0.25, 0.0]},
    {"name": "mobius_0.5",      "kind": "mobius", "a": [0.5, 0.0]},
    {"name": "mobius_0.75",     "kind": "mobius", "a": [0.75, 0.0]},
    {"name": "identity",        "kind": "polynomial", "coeffs": [[0.0, 0.0], [1.0, 0.0]]},
    {"name": "half_z",          "kind": "polynomial", "coeffs": [[0.0, 0.0], [0.5, 0.0]]},
    {"name": "quad",            "kind": "polynomial", "coeffs": [[0.25, 0.0], [0.0, 0.0], [0.5, 0.0]]},
    {"name": "z_squared",       "kind": "polynomial", "coeffs": [[0.0, 0.0], [0.0, 0.0], [1.0, 0.0]]},
    {"name": "blaschke_0.3",    "kind": "blaschke", "zeros": [[0.3, 0.0]], "rotation": [1.0, 0.0]},
    {"name": "blaschke_origin", "kind": "blaschke", "zeros": [[0.0, 0.0], [0.5, 0.2]], "rotation": [1.0, 0.0]},
    {"name": "tilted_square",   "kind": "composed", "outer": {"a": [-0.3, 0.2]},
                                "inner": {"kind": "polynomial", "coeffs": [[0.0, 0.0], [0.0, 0.0], [0.9, 0.0]]}}
  ],
  "cases": [
    {"command": "verify-lemma1", "measure": "delta_1",     "self_map": "identity"},
    {"command": "verify-lemma1", "measure": "dipole_diff", "self_map": "identity"},
    {"command": "verify-lemma1", "measure": "delta_1",     "self_map": "z_squared"},
    {"command": "verify-lemma1", "measure": "delta_1",     "self_map": "half_z"},
    {"command": "verify-lemma1", "measure": "mixed",       "self_map": "z_squared"},
    {"command": "verify-lemma1", "measure": "half_pair",   "self_map": "blaschke_origin"},
    {"command": "verify-lemma1", "measure": "dipole_sum",  "self_map": "mobius_0"},

    {"command": "verify-lemma2", "measure": "delta_1",     "a": 0.0},
    {"command": "verify-lemma2", "measure": "delta_1",     "a": 0.25},
    {"command": "verify-lemma2", "measure": "delta_1",     "a": 0.5},
    {"command": "verify-lemma2", "measure": "delta_1",     "a": 0.75},
    {"command": "verify-lemma2", "measure": "dipole_diff", "a": 0.5},
    {"command": "verify-lemma2", "measure": "mixed",       "a": [0.3, -0.4]},

    {"command": "kernel-compare", "a": 0.5, "h": [[1.0, 0.0]], "zeta_angle": 0.0, "r": 0.9},
    {"command": "kernel-compare", "a": 0.0, "h": [[1.0, 0.0]], "zeta_angle": 1.0, "r": 0.5},
    {"command": "kernel-compare", "a": [0.25, 0.6], "h": [[0.2, 0.1], [0.0, 0.0], [-0.4, 0.3], [0.1, 0.0]],
     "zeta_angle": 2.0, "r": 0.99},
    {"command": "kernel-compare", "self_map": "mobius_0.75", "h": [[0.0, 0.0], [1.0, 0.0]], "zeta_angle": 3.141592653589793, "r": 0.95},
    {"command": "kernel-compare", "self_map": "quad", "h": [[0.0, 0.0], [0.0, 0.0], [1.0, 0.0]], "zeta_angle": 0.0, "r": 0.7},
    {"command": "kernel-compare", "self_map": "z_squared", "h": [[0.5, 0.0], [0.0, 0.0], [0.5, 0.0]], "zeta_angle": 0.4, "r": 0.9},
    {"command": "kernel-compare", "self_map": "blaschke_origin", "h": [[0.0, 0.0], [0.0, 0.0], [0.0, 0.0], [1.0, 0.0]],
     "zeta_angle": 5.0, "r": 0.8},

    {"command": "sharpness-scan", "a_values": [0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9], "degree_cap": 8}
  ]
})json";

}  // namespace

const json& standard_fixture_document() {
    static const json doc = json::parse(standard_text);
    return doc;
}

}  // namespace kspace::cli
