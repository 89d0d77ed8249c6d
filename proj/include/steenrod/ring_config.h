#pragma once

#include "steenrod/presentations.h"

#include <string>

namespace steenrod {

constexpr int kRingConfigVersion = 1;

/*
 * Ring config files are JSON objects:
 *   {"format": "steenrod-ring", "version": 1, "prime": 3, "degree_bound": 20, "window": 14,
 *    "generators": [{"name": "u", "bidegree": [1, 1], "kind": "exterior"}, ...],
 *    "relations": [{"lhs": "x*z", "rhs": "0"}, ...],
 *    "action": {"beta": {"u": "v"}, "power": {"c1": {"1": "c1^3"}}, "powers_vanish": ["x"]}}
 * or {"format": "steenrod-ring", "version": 1, "prime": 3, "degree_bound": 20, "standard": "bmu:2"}.
 * "window", "relations" and "action" are optional. Errors name the offending field.
 */
StandardRing ring_from_json_text(const std::string& text, const std::string& source);
StandardRing load_ring_config(const std::string& path);

/* Explicit form of a ring, suitable for ring_from_json_text. */
std::string ring_to_json_text(const StandardRing& ring);

}  // namespace steenrod
