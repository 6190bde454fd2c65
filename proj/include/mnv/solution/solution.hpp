#pragma once

#include <optional>

#include "mnv/algebra/rational_fn.hpp"
#include "mnv/solution/report.hpp"

namespace mnv {

/// The explicit singular solution (U, V) of the modified Novikov-Veselov
/// equation together with its building blocks, in the variables (x, y, s)
/// with s = C - t.
///
///   U     = -3((x^2+y^2+3)(x^2-y^2) - 6xs) / Q
///   Q     = (x^2+y^2)^3 + 3(x^4+y^4) + 18x^2y^2 + 9(x^2+y^2) + 9s^2 + (6x^3-18xy^2-18x)s
///   gamma = i(x^2-y^2)
///   delta = y(1+x^2-y^2/3) - i[x(1+y^2-x^2/3) - s]
///   A     = z(conj(gamma)-gamma) - delta z^2 - conj(delta),   D = |gamma|^2 + |delta|^2
///   V     = A^2/D^2 + 2U/(1+|z|^2) + 2i conj(z) A / (D(1+|z|^2))
///
/// Q = 9D, and V is the decaying solution of V_zbar = (U^2)_z.
struct SolutionBundle {
    RationalFn U;
    SparsePoly Q;
    RationalFn V;
    SparsePoly gamma;
    SparsePoly delta;
};

SolutionBundle build_solution();

/// z = x + iy.
SparsePoly z_poly();

VerificationReport verify_dbar_constraint(const SolutionBundle& b);

struct MnvOptions {
    /// Dropping U_t turns the check into a falsifiability probe.
    bool include_time_derivative = true;
};

/// Residual R = U_t - [U_zzz + 3U_z V + 3/2 U V_z] - [U_zbar^3 + 3U_zbar conj(V) + 3/2 U conj(V)_zbar].
RationalFn mnv_residual(const SolutionBundle& b, const MnvOptions& options = {}, Telemetry* telemetry = nullptr);
VerificationReport verify_mnv(const SolutionBundle& b, const MnvOptions& options = {});

VerificationReport verify_denominator_identity(const SolutionBundle& b);
VerificationReport verify_realness(const SolutionBundle& b);
VerificationReport singular_point_audit(const SolutionBundle& b);

/// First point of a fixed small rational probe set at which f is defined
/// and nonzero, formatted as "(x, y, s) -> value".
std::optional<std::string> nonzero_witness(const RationalFn& f);

}  // namespace mnv
