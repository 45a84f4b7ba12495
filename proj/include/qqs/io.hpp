#pragma once

// JSON interchange and fixed numeric formatting for CLI artifacts.

#include <string>

#include <json.hpp>

#include "qqs/qkd.hpp"
#include "qqs/states.hpp"
#include "qqs/tomography.hpp"

namespace qqs {

using Json = nlohmann::ordered_json;

inline constexpr int kSignificantDigits = 9;

// "%.9g" in the C locale; negative zero prints as "0".
std::string format_number(double x);

// x rounded to 9 significant digits, so JSON dumps stay short and stable.
double round_sig(double x);

// {"modes": {"lambda1": .., "lambda2": ..}, "re": [4], "im": [4]} at full
// precision.
Json to_json(const QuquartState& s);
// Re-normalizes when the parsed norm is within 1e-9 of one; throws
// DomainError otherwise or on malformed input.
QuquartState state_from_json(const Json& j);

// {"re": [[4] x 4], "im": [[4] x 4]}, 9 significant digits.
Json to_json(const DensityMatrix& rho);
DensityMatrix density_from_json(const Json& j);

Json to_json(const CoincidenceRecord& r);
CoincidenceRecord record_from_json(const Json& j);

Json to_json(const PlateStep& step);
Json to_json(const SessionRecord& r);
Json to_json(const SessionSummary& s);

}  // namespace qqs
