#pragma once

#include <string>

#include "lcm/chart.hpp"

namespace lcm {

// Chart files are versioned JSON documents, owned by the CLI:
//   { "version": 1, "n": 2, "radii": [0.5, 0.5],
//     "phiL": {"coeffs": ["1/2", "0"], "shift": 0.0},
//     "psi":  {"coeffs": ["1", "2"],   "shift": -1.0},
//     "m0": "0", "m1": "1/2",
//     "sections": [{"exponents": [0, 1], "amplitude": 1.0,
//                   "support_radius": [0.5, 0.5]}] }
// Rationals travel as "p/q" strings, reals as doubles serialized to full
// precision, so a write/read round trip reproduces the in-memory values
// exactly.  Parse failures throw ParseError naming the key (or the byte
// offset for malformed JSON).
SncChart read_chart(const std::string& path);
void write_chart(const std::string& path, const SncChart& chart);

std::string chart_to_json(const SncChart& chart);
SncChart chart_from_json(const std::string& text, const std::string& origin);

}  // namespace lcm
