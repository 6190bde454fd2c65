#pragma once

#include <complex>
#include <vector>

#include "mnv/algebra/rational_fn.hpp"

namespace mnv {

/// Double-precision evaluator for a RationalFn, compiled once.
///
/// Numerator and each denominator base are summed in the fixed monomial order
/// with Neumaier compensation; the denominator is the product of the base
/// values raised to their powers. Evaluation is deterministic and safe to call
/// concurrently.
class FieldEvaluator {
public:
    explicit FieldEvaluator(const RationalFn& f);

    /// Throws SingularPoint when |denominator| < 1e-300.
    std::complex<double> operator()(double x, double y, double s) const;

private:
    struct CompiledTerm {
        unsigned ex, ey, es;
        double re, im;
    };
    struct CompiledPoly {
        std::vector<CompiledTerm> terms;
        unsigned max_x = 0, max_y = 0, max_s = 0;
        bool real = true;
        std::complex<double> eval(double x, double y, double s) const;
    };
    static CompiledPoly compile(const SparsePoly& p);

    CompiledPoly num_;
    std::vector<std::pair<CompiledPoly, unsigned>> den_;
};

std::complex<double> eval_field(const RationalFn& f, double x, double y, double s);

/// Exact value at the (dyadic) point given by three doubles; throws
/// SingularPoint when the denominator is exactly zero.
GaussRational eval_field_exact(const RationalFn& f, double x, double y, double s);

}  // namespace mnv
