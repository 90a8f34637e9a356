#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "moebius_kit/circles.hpp"
#include "moebius_kit/classifier.hpp"
#include "moebius_kit/moebius.hpp"
#include "moebius_kit/sampled_map.hpp"
#include "moebius_kit/tetrad.hpp"

namespace moebius_kit::json {

using Json = nlohmann::ordered_json;

/// Malformed input document (as opposed to a domain error).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Canonical text: insertion-ordered keys, two-space indent, every double
/// printed with 17 significant digits (so it round-trips bit for bit) and
/// always with a decimal point or exponent. Non-finite doubles print as the
/// strings "inf" / "-inf".
std::string dump(const Json& j);

/// Parses text; throws ParseError.
Json parse(const std::string& text);

Json encode(Complex z);
Json encode(const SpherePoint& p);
Json encode(const Tetrad& t);
Json encode(const MoebiusMap& m);
Json encode(const GeneralizedCircle& c);
Json encode(const PhiWitness& w);
Json encode(const PhiTestResult& r);
Json encode(const MidpointResult& r);
Json encode(const CircleTestResult& r);
Json encode(const InjectivityResult& r);
Json encode(const ClassificationReport& r);
/// Rational descriptors and pair lists; callables cannot be encoded.
Json encode(const SampledMap& f);

Complex decode_complex(const Json& j);
/// [re, im] or "inf".
SpherePoint decode_point(const Json& j);
Tetrad decode_tetrad(const Json& j);
MoebiusMap decode_moebius(const Json& j);
GeneralizedCircle decode_circle(const Json& j);
/// {"rational": {...}, "region": {...}} or {"pairs": [[in, out], ...]}.
SampledMap decode_sampled_map(const Json& j);

}  // namespace moebius_kit::json
