#include "mnv/numerics/probes.hpp"

#include <cmath>

#include "mnv/numerics/field_eval.hpp"
#include "mnv/solution/solution.hpp"

namespace mnv {

namespace {

const SolutionBundle& bundle() {
    static const SolutionBundle b = build_solution();
    return b;
}

std::vector<double> log_spaced(double from_exp, double to_exp, int n) {
    std::vector<double> r;
    for (int k = 0; k < n; ++k) r.push_back(std::pow(10.0, from_exp + (to_exp - from_exp) * k / (n - 1)));
    return r;
}

// Probe values come from exact evaluation at the (dyadic) sample point so the
// far-field cancellation in expanded numerators costs no accuracy.
std::complex<double> sample(const RationalFn& f, double r, double phi, double s) {
    return eval_field_exact(f, r * std::cos(phi), r * std::sin(phi), s).to_complex();
}

}  // namespace

ProbeSeries ray_limit_probe(double phi) {
    ProbeSeries p;
    p.kind = "ray";
    p.field = "U";
    p.phi = phi;
    p.s = 0.0;
    p.abscissae = log_spaced(-1.0, -4.0, 7);
    for (double r : p.abscissae) p.values.push_back(sample(bundle().U, r, phi, 0.0).real());
    const std::size_t n = p.values.size();
    const double a2 = p.abscissae[n - 2] * p.abscissae[n - 2];
    const double b2 = p.abscissae[n - 1] * p.abscissae[n - 1];
    p.extrapolated_limit = (p.values[n - 1] * a2 - p.values[n - 2] * b2) / (a2 - b2);
    p.method = "richardson r^2 (two smallest radii)";
    p.reference = -std::cos(2.0 * phi);
    for (double v : p.values) p.sup = std::max(p.sup, std::abs(v));
    return p;
}

ProbeSeries decay_probe(const RationalFn& f, double phi, double s, bool magnitude) {
    ProbeSeries p;
    p.kind = "decay";
    p.phi = phi;
    p.s = s;
    p.abscissae = log_spaced(2.0, 5.0, 7);
    for (double r : p.abscissae) {
        const std::complex<double> v = sample(f, r, phi, s) * (r * r);
        p.values.push_back(magnitude ? std::abs(v) : v.real());
    }
    const std::size_t n = p.values.size();
    const double ra = p.abscissae[n - 2];
    const double rb = p.abscissae[n - 1];
    p.extrapolated_limit = (rb * p.values[n - 1] - ra * p.values[n - 2]) / (rb - ra);
    p.method = "richardson 1/r (two largest radii)";
    for (double v : p.values) p.sup = std::max(p.sup, std::abs(v));
    return p;
}

ProbeSeries decay_probe(double phi, double s, ProbeField field) {
    if (field == ProbeField::U) {
        ProbeSeries p = decay_probe(bundle().U, phi, s, false);
        p.field = "U";
        p.reference = -3.0 * std::cos(2.0 * phi);
        return p;
    }
    ProbeSeries p = decay_probe(bundle().V, phi, s, true);
    p.field = "V";
    return p;
}

}  // namespace mnv
