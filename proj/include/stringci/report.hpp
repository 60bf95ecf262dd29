#pragma once

// Structured (JSON) forms of the library's results. Field order is fixed and
// rationals are written as exact "p/q" strings, so parsing an emitted report
// and dumping it again reproduces the same bytes.

#include <string>

#include <json.hpp>

#include "stringci/geometry.hpp"
#include "stringci/search.hpp"

namespace stringci {

using Json = nlohmann::ordered_json;

std::string rational_string(const Rational& r);
Json to_json(const QSeries& s);
Json to_json(const CompleteIntersection& ci, const std::string& label = "");
Json to_json(const StringCertificate& cert);
Json to_json(const GenusReport& report);
Json to_json(const Candidate& c);
Json to_json(const SweepEntry& e);
Json to_json(const SweepReport& r);

/// Canonical text form: two-space indentation, trailing newline.
std::string dump(const Json& j);

}  // namespace stringci
