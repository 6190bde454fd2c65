#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mnv/algebra/rational_fn.hpp"

namespace mnv {

enum class ProbeField { U, V };

/// Samples of a scalar along a ray plus an extrapolated limit.
struct ProbeSeries {
    std::string kind;                 ///< "ray" or "decay"
    std::string field;                ///< "U" or "V"
    double phi = 0.0;
    double s = 0.0;
    std::vector<double> abscissae;    ///< radii, strictly monotone
    std::vector<double> values;
    double extrapolated_limit = 0.0;
    std::string method;               ///< extrapolation used
    std::optional<double> reference;  ///< expected limit when one is known
    double sup = 0.0;                 ///< max |value| over the series

    friend bool operator==(const ProbeSeries&, const ProbeSeries&) = default;
};

/// U(r cos phi, r sin phi, s = 0) for r = 1e-1 ... 1e-4 (7 log-spaced radii),
/// Richardson-extrapolated in r^2 to r -> 0. Reference: -cos 2phi.
ProbeSeries ray_limit_probe(double phi);

/// r^2 * field along the ray for r = 1e2 ... 1e5 (7 log-spaced radii),
/// Richardson-extrapolated in 1/r. For U the values are r^2 U with reference
/// -3 cos 2phi; for V (complex) the values are |r^2 V| and no reference.
ProbeSeries decay_probe(double phi, double s, ProbeField field);

/// Variant over arbitrary fields (perturbation studies).
ProbeSeries decay_probe(const RationalFn& f, double phi, double s, bool magnitude);

}  // namespace mnv
