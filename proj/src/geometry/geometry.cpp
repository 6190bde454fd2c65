#include "mnv/geometry/geometry.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "mnv/errors.hpp"
#include "mnv/numerics/field_eval.hpp"

namespace mnv {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

RationalFn dot(const std::array<RationalFn, 3>& a, const std::array<RationalFn, 3>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

std::array<RationalFn, 3> cross(const std::array<RationalFn, 3>& a, const std::array<RationalFn, 3>& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

std::array<RationalFn, 3> partial(const Immersion& r, Derivative d) {
    return {r.c[0].diff(d), r.c[1].diff(d), r.c[2].diff(d)};
}

/// Certificate for lhs - rhs == 0; telemetry covers both sides and the difference.
VerificationReport zero_check(std::string name, const RationalFn& lhs, const RationalFn& rhs, const char* failure,
                              Clock::time_point start) {
    Telemetry t;
    t.observe(lhs);
    t.observe(rhs);
    const RationalFn f = t.observe(lhs - rhs);
    VerificationReport r;
    r.check = std::move(name);
    r.passed = f.is_zero();
    r.degree = t.degree();
    r.terms = t.peak_terms();
    if (!r.passed) {
        r.failure = failure;
        if (auto w = nonzero_witness(f)) r.detail = "nonzero at " + *w;
    }
    r.millis = elapsed_ms(start);
    return r;
}

/// Folds a sub-certificate into an aggregate.
void absorb(VerificationReport& total, const VerificationReport& part) {
    total.degree = std::max(total.degree, part.degree);
    total.terms = std::max(total.terms, part.terms);
    if (!part.passed && total.passed) {
        total.passed = false;
        total.failure = part.failure;
        total.detail = part.check + (part.detail.empty() ? "" : ": " + part.detail);
    }
}

}  // namespace

Immersion translated_enneper(const std::array<SparsePoly, 3>& u0) {
    const SparsePoly X = SparsePoly::variable(Var::x);
    const SparsePoly Y = SparsePoly::variable(Var::y);
    const GaussRational third(mpq_class(1, 3));
    return {{RationalFn(Y * (third * Y * Y - X * X - 1) + u0[0]),
             RationalFn(X * (1 + Y * Y - third * X * X) + u0[1]),
             RationalFn(X * X - Y * Y + u0[2])}};
}

Immersion enneper_immersion() { return translated_enneper({0, -SparsePoly::variable(Var::s), 0}); }

RationalFn norm_sq(const Immersion& u) { return dot(u.c, u.c); }

Immersion invert_immersion(const Immersion& u) {
    const RationalFn scale = RationalFn(-1) / norm_sq(u);
    return {{u.c[0] * scale, u.c[1] * scale, u.c[2] * scale}};
}

FundamentalForm fundamental_form(const Immersion& r) {
    const auto rx = partial(r, Derivative::x);
    const auto ry = partial(r, Derivative::y);
    return {dot(rx, rx), dot(rx, ry), dot(ry, ry)};
}

std::array<VerificationReport, 2> verify_conformal(const FundamentalForm& ff) {
    const auto start = Clock::now();
    auto eg = zero_check("conformal.E-G", ff.E, ff.G, "ConformalityViolation", start);
    auto f = zero_check("conformal.F", ff.F, RationalFn(), "ConformalityViolation", Clock::now());
    return {eg, f};
}

RationalFn laplacian_normal_pairing(const Immersion& r) {
    const auto rx = partial(r, Derivative::x);
    const auto ry = partial(r, Derivative::y);
    std::array<RationalFn, 3> lap;
    for (int k = 0; k < 3; ++k) lap[k] = rx[k].diff(Derivative::x) + ry[k].diff(Derivative::y);
    return dot(lap, cross(rx, ry));
}

RationalFn weierstrass_potential_sq(const Immersion& r, const FundamentalForm& ff) {
    const RationalFn pairing = laplacian_normal_pairing(r);
    return pairing * pairing / (RationalFn(16) * ff.E.pow(3));
}

GeometryReport verify_potential_matches_U(const Immersion& r, const FundamentalForm& ff, const SolutionBundle& b) {
    GeometryReport report;
    report.conformal = verify_conformal(ff);

    const auto start = Clock::now();
    const RationalFn pairing = laplacian_normal_pairing(r);
    report.potential =
        zero_check("potential", RationalFn(16) * b.U.pow(2) * ff.E.pow(3), pairing * pairing, "PotentialMismatch", start);

    // Sign of U relative to <lap r, w> / (4 g^(3/2)) on a fixed lattice that
    // avoids the singular point.
    const FieldEvaluator u_eval(b.U);
    const FieldEvaluator pairing_eval(pairing);
    const FieldEvaluator g_eval(ff.E);
    int sign = 0;
    bool consistent = true;
    std::string conflict;
    for (double s : {-1.0, 0.5}) {
        for (int i = 0; i < 11; ++i) {
            for (int j = 0; j < 11; ++j) {
                const double x = -2.3 + 0.45 * i;
                const double y = -2.1 + 0.43 * j;
                double u, potential;
                try {
                    u = u_eval(x, y, s).real();
                    const double g = g_eval(x, y, s).real();
                    potential = pairing_eval(x, y, s).real() / (4.0 * g * std::sqrt(g));
                } catch (const SingularPoint&) {
                    continue;
                }
                if (std::abs(u) < 1e-9 || std::abs(potential) < 1e-9) continue;
                const int here = (u > 0) == (potential > 0) ? 1 : -1;
                ++report.sign_samples;
                if (sign == 0) {
                    sign = here;
                } else if (here != sign && consistent) {
                    consistent = false;
                    std::ostringstream out;
                    out << "sign flips at (" << x << ", " << y << ", " << s << ")";
                    conflict = out.str();
                }
            }
        }
    }
    report.sign_convention = consistent ? sign : 0;
    if (report.potential.passed && !consistent) {
        report.potential.passed = false;
        report.potential.failure = "SignInconsistency";
        report.potential.detail = conflict;
    } else if (report.potential.passed) {
        report.potential.detail = "sign " + std::to_string(sign) + " over " +
                                  std::to_string(report.sign_samples) + " samples";
    }
    report.potential.millis = elapsed_ms(start);
    return report;
}

VerificationReport verify_geometry_structure(const SolutionBundle& b) {
    const auto start = Clock::now();
    VerificationReport total;
    total.check = "geometry.conformal";
    total.passed = true;

    const Immersion u = enneper_immersion();
    const Immersion inverted = invert_immersion(u);
    const FundamentalForm g0 = fundamental_form(u);
    const FundamentalForm g1 = fundamental_form(inverted);

    for (const auto& part : verify_conformal(g0)) absorb(total, part);
    for (const auto& part : verify_conformal(g1)) absorb(total, part);
    for (int k = 0; k < 3; ++k) {
        const RationalFn lap = u.c[k].diff(Derivative::x).diff(Derivative::x) + u.c[k].diff(Derivative::y).diff(Derivative::y);
        absorb(total, zero_check("harmonic.u" + std::to_string(k + 1), lap, RationalFn(), "HarmonicityViolation", start));
    }
    const RationalFn u2 = norm_sq(u);
    absorb(total, zero_check("9|u|^2-Q", RationalFn(9) * u2, RationalFn(b.Q), "IdentityViolation", start));
    absorb(total, zero_check("g*|u|^4-g0", g1.E * u2.pow(2), g0.E, "IdentityViolation", start));
    if (total.passed) total.detail = "E=G, F=0 (Enneper, inverted); harmonic u; 9|u|^2=Q; g|u|^4=g0";
    total.millis = elapsed_ms(start);
    return total;
}

VerificationReport verify_geometry_potential(const SolutionBundle& b) {
    const auto start = Clock::now();
    const Immersion inverted = invert_immersion(enneper_immersion());
    const GeometryReport g = verify_potential_matches_U(inverted, fundamental_form(inverted), b);
    VerificationReport total = g.potential;
    total.check = "geometry.potential";
    for (const auto& part : g.conformal) absorb(total, part);
    total.millis = elapsed_ms(start);
    return total;
}

}  // namespace mnv
