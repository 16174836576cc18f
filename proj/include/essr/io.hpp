#pragma once

// JSON and CSV serialization for maps, step functions and reports.

#include "essr/function_norms.hpp"
#include "essr/interval_maps.hpp"
#include "essr/step_function.hpp"
#include "essr/transfer_operator.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>

namespace essr {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "1.0.0";

/// printf("%.17g"); the fixed float format of every CSV cell.
std::string format_double(double v);

std::uint64_t fnv1a(const std::string& text);
std::string hex64(std::uint64_t v);

/// Map-definition JSON. Throws ValidationError on malformed input.
PiecewiseMap parse_map(const Json& j);
Json map_to_json(const PiecewiseMap& map);

Json step_function_to_json(const StepFunction& f);
StepFunction step_function_from_json(const Json& j);
/// piece_lo,piece_hi,re,im
std::string step_function_csv(const StepFunction& f);

Json atomic_representation_to_json(const AtomicRepresentation& rep);

/// k,theta_sum,fekete_running
std::string theta_csv(const ThetaReport& r);
/// re,im,modulus
std::string spectrum_csv(const SpectrumReport& r);
std::string matrix_csv(const RowMatrix& m);

Json complex_to_json(std::complex<double> z);

}  // namespace essr
