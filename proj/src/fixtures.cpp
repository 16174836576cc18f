#include "essr/fixtures.hpp"

#include "essr/errors.hpp"
#include "essr/io.hpp"

#include <map>

namespace essr::fixtures {

namespace {

const std::map<std::string, std::string>& table() {
    static const std::map<std::string, std::string> t{
        {"d2", R"json({
  "type": "linear_markov",
  "branches": [
    {"domain": ["0", "1/2"], "slope": "2", "offset": "0"},
    {"domain": ["1/2", "1"], "slope": "2", "offset": "-1"}
  ],
  "smoothness": null
})json"},
        {"l3", R"json({
  "type": "linear_markov",
  "branches": [
    {"domain": ["0", "1/2"], "slope": "2", "offset": "0"},
    {"domain": ["1/2", "3/4"], "slope": "4", "offset": "-2"},
    {"domain": ["3/4", "1"], "slope": "4", "offset": "-3"}
  ],
  "smoothness": null
})json"},
        {"w2", R"json({
  "type": "smooth_weights",
  "weights": [
    {"kind": "fourier", "coeffs": [0.5, 0.1, 0.0]},
    {"kind": "fourier", "coeffs": [0.5, -0.1, 0.0]}
  ],
  "smoothness": null
})json"},
    };
    return t;
}

}  // namespace

const std::string& json_text(const std::string& name) {
    auto it = table().find(name);
    if (it == table().end()) throw ValidationError("unknown fixture '" + name + "' (expected d2, l3 or w2)");
    return it->second;
}

PiecewiseMap load(const std::string& name) { return parse_map(Json::parse(json_text(name))); }

std::vector<std::string> names() { return {"d2", "l3", "w2"}; }

PiecewiseMap d2() { return load("d2"); }
PiecewiseMap l3() { return load("l3"); }
PiecewiseMap w2() { return load("w2"); }

}  // namespace essr::fixtures
