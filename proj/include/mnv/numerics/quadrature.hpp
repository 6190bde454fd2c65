#pragma once

#include <cstddef>
#include <functional>

namespace mnv {

struct QuadratureReport {
    double s = 0.0;
    double tolerance = 0.0;
    double value = 0.0;                 ///< inner integral + tail_correction
    double tail_correction = 0.0;       ///< 9 pi / (2 R^2)
    double inner_estimate_error = 0.0;  ///< sum of per-cell |K15 - G7| estimates
    double radius_used = 0.0;
    std::size_t cells = 0;              ///< accepted leaf cells

    friend bool operator==(const QuadratureReport&, const QuadratureReport&) = default;
};

struct QuadratureOptions {
    unsigned workers = 1;
    unsigned max_depth = 20;
};

/// Smallest tolerance integrate_U2 accepts.
inline constexpr double kMinQuadratureTolerance = 1e-8;

struct PolarIntegral {
    double value = 0.0;
    double error = 0.0;
    std::size_t cells = 0;
};

/// Adaptive tensor Gauss-Kronrod (7/15) integral of f(r, phi) * r over the
/// disk r <= radius. The disk is split into fixed initial cells (geometric
/// radial breakpoints, 8 angular sectors), each refined independently by
/// quadrisection until its |K - G| estimate falls below its share of tol.
/// Nodes are cell-interior, so f is never sampled at r = 0. Cells are
/// distributed over workers and summed in a fixed order with compensation,
/// so the result does not depend on the worker count.
/// Throws ToleranceNotMet if a cell still misses its share at max_depth.
PolarIntegral integrate_polar(const std::function<double(double, double)>& f, double radius, double tol,
                              const QuadratureOptions& options = {});

/// Rigorous bound on |integral of U^2 over r > R - 9 pi / (2 R^2)|, valid for
/// R >= 3 and R^3 >= 16|s| (infinite otherwise). Uses Q >= r^6/2 there and
/// |r^2 U + 3 cos 2phi| <= 2 (9r^4 + 36|s|r^3 + 27r^2 + 54|s|r + 27s^2) / r^6.
double tail_bound(double radius, double s);

/// Smallest radius (to within 0.1%) with tail_bound <= tol / 2.
double choose_radius(double s, double tol);

/// Integral of U^2 over the plane at fixed s = C - t.
QuadratureReport integrate_U2(double s, double tol, const QuadratureOptions& options = {});

}  // namespace mnv
