#pragma once

#include <json.hpp>

#include "omega/classify.hpp"
#include "omega/exact.hpp"
#include "omega/monoid.hpp"
#include "omega/numsgp.hpp"
#include "omega/temperament.hpp"

// JSON forms. Arbitrary-precision integers travel as decimal strings so
// the ExactReal round-trip is bit-exact.

namespace omega {

using Json = nlohmann::json;

Json to_json(const Rational& q);
Json to_json(const ExactReal& x);
Json to_json(const ElementList& el);
Json to_json(const Footprint& fp);
Json to_json(const NumericalSemigroup& s);
Json to_json(const Classification& c);
Json to_json(const Scale& scale);
Json to_json(const GenusCountReport& report, bool timings);

Rational rational_from_json(const Json& j);
ExactReal exact_from_json(const Json& j);
ElementList element_list_from_json(const Json& j);

}  // namespace omega
