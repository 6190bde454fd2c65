#pragma once

#include "mnv/algebra/rational_fn.hpp"

namespace mnv {

struct FdResidual {
    double normalized = 0.0;    ///< |R| / largest |term|
    double absolute = 0.0;      ///< |R|
    double largest_term = 0.0;
};

/// mNV residual from central differences of sampled U and V only.
///
/// All partial derivatives come from O(h^2) central stencils in x, y and s
/// (Wirtinger derivatives assembled from x/y stencils, U_t = -U_s). Samples
/// are evaluated exactly at the rational stencil points and the stencils are
/// combined exactly, so the only error is truncation. Preconditions: h in
/// [1e-4, 1e-2] and the point farther than 10h from the origin; violations
/// throw std::invalid_argument, singular samples throw SingularPoint.
FdResidual fd_residual(const RationalFn& U, const RationalFn& V, double x, double y, double s, double h);

/// Normalized residual for the closed-form solution.
double fd_residual_check(double x, double y, double s, double h);

}  // namespace mnv
