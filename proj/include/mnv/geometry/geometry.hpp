#pragma once

#include <array>
#include <vector>

#include "mnv/algebra/rational_fn.hpp"
#include "mnv/solution/solution.hpp"

namespace mnv {

/// Surface r(x, y) in R^3 depending on the time parameter s.
struct Immersion {
    std::array<RationalFn, 3> c;
};

/// First fundamental form E dx^2 + 2F dx dy + G dy^2.
struct FundamentalForm {
    RationalFn E, F, G;
};

/// Enneper surface translated so that the origin maps to u0:
///   u1 = y(y^2/3 - x^2 - 1) + u0[0]
///   u2 = x(1 + y^2 - x^2/3) + u0[1]
///   u3 = x^2 - y^2 + u0[2]
Immersion translated_enneper(const std::array<SparsePoly, 3>& u0);

/// The family whose inversion carries U as its potential: u0 = (0, -s, 0),
/// i.e. (0, t - C, 0).
Immersion enneper_immersion();

RationalFn norm_sq(const Immersion& u);

/// u -> -u / |u|^2.
Immersion invert_immersion(const Immersion& u);

FundamentalForm fundamental_form(const Immersion& r);

/// Certificates for E - G = 0 and F = 0; failures carry a witness point.
std::array<VerificationReport, 2> verify_conformal(const FundamentalForm& ff);

/// <r_xx + r_yy, r_x x r_y>.
RationalFn laplacian_normal_pairing(const Immersion& r);

/// (H sqrt(g) / 2)^2 for a conformal immersion with conformal factor g = E.
///
/// With E = G = g and F = 0 the Laplacian of a conformal immersion is normal:
/// r_xx + r_yy = 2 g H N, and |r_x x r_y| = g, so N = w / g for
/// w = r_x x r_y. Hence <r_xx + r_yy, w> = 2 g^2 H and
///   (H sqrt(g) / 2)^2 = <r_xx + r_yy, w>^2 / (16 g^3),
/// which involves no square roots.
RationalFn weierstrass_potential_sq(const Immersion& r, const FundamentalForm& ff);

struct GeometryReport {
    std::array<VerificationReport, 2> conformal;
    VerificationReport potential;       ///< 16 U^2 g^3 - <lap r, w>^2 == 0
    int sign_convention = 0;            ///< U = sign * <lap r, w> / (4 g^(3/2)); 0 if undetermined
    std::size_t sign_samples = 0;

    bool passed() const { return conformal[0].passed && conformal[1].passed && potential.passed; }
    friend bool operator==(const GeometryReport&, const GeometryReport&) = default;
};

/// Exact potential identity plus a floating-point sign probe over a fixed
/// set of nonsingular sample points.
GeometryReport verify_potential_matches_U(const Immersion& r, const FundamentalForm& ff, const SolutionBundle& b);

/// Aggregate certificate: conformality of the Enneper and inverted forms,
/// harmonic Enneper coordinates, 9|u|^2 = Q and g_inverted |u|^4 = g_0.
VerificationReport verify_geometry_structure(const SolutionBundle& b);

/// Aggregate certificate for the potential identity on the inverted family.
VerificationReport verify_geometry_potential(const SolutionBundle& b);

}  // namespace mnv
