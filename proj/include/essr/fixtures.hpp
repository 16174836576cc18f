#pragma once

// Bundled maps: D2 (doubling), L3 (slopes 2, 4, 4), W2 (weights ½ ± 0.1cos2πx).

#include "essr/interval_maps.hpp"

#include <string>
#include <vector>

namespace essr::fixtures {

/// Map-definition JSON text for "d2", "l3" or "w2"; ValidationError otherwise.
const std::string& json_text(const std::string& name);
PiecewiseMap load(const std::string& name);
std::vector<std::string> names();

PiecewiseMap d2();
PiecewiseMap l3();
PiecewiseMap w2();

}  // namespace essr::fixtures
