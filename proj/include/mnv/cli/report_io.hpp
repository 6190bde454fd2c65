#pragma once

#include <string>

#include <json.hpp>

#include "mnv/geometry/geometry.hpp"
#include "mnv/numerics/probes.hpp"
#include "mnv/numerics/quadrature.hpp"
#include "mnv/solution/report.hpp"

namespace mnv {

using Json = nlohmann::ordered_json;

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);
/// Fixed 17 significant digits (CSV grids).
std::string format_double17(double v);

/// Flat object {check, status, degree, terms, millis?, failure?, detail?}.
Json to_json(const VerificationReport& r, bool with_millis = true);
VerificationReport verification_from_json(const Json& j);

Json to_json(const QuadratureReport& r);
QuadratureReport quadrature_from_json(const Json& j);

Json to_json(const ProbeSeries& p);
ProbeSeries probe_from_json(const Json& j);

Json to_json(const GeometryReport& g, bool with_millis = true);
GeometryReport geometry_from_json(const Json& j);

}  // namespace mnv
