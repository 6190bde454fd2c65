#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mnv/algebra/sparse_poly.hpp"

namespace mnv {

/// One factor base^power of a denominator.
struct DenFactor {
    SparsePoly base;
    unsigned power = 1;

    friend bool operator==(const DenFactor&, const DenFactor&) = default;
};

/// Derivative operators acting on fields of (x, y, s).
///
/// wirtinger_z = (d/dx - i d/dy)/2, wirtinger_zbar = (d/dx + i d/dy)/2, and
/// t = -d/ds because s = C - t.
enum class Derivative { x, y, s, wirtinger_z, wirtinger_zbar, t };

/// Quotient num / den of sparse polynomials with den != 0.
///
/// The denominator is kept as a product of factors base^power. Each base is
/// primitive (Gaussian-integer coefficients with integer content 1) and its
/// leading coefficient has positive real part, or zero real part and positive
/// imaginary part; all scalar content lives in the numerator. Bases are
/// merged only when structurally identical; no GCD is ever taken, so num and
/// den may share factors. Equality of two functions is decided by
/// cross-multiplication: f == g iff the numerator of f - g is zero.
class RationalFn {
public:
    RationalFn() = default;
    RationalFn(SparsePoly num);  // NOLINT: polynomials promote implicitly
    RationalFn(long constant) : RationalFn(SparsePoly(constant)) {}  // NOLINT
    /// Throws DivisionByZeroFunction when den is the zero polynomial.
    RationalFn(SparsePoly num, SparsePoly den);

    const SparsePoly& num() const noexcept { return num_; }
    const std::vector<DenFactor>& den_factors() const noexcept { return den_; }
    /// Expanded denominator (1 for polynomials).
    SparsePoly den() const;
    /// Total degree of the expanded denominator.
    unsigned den_degree() const noexcept;

    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_polynomial() const noexcept { return den_.empty(); }

    RationalFn& operator+=(const RationalFn& o);
    RationalFn& operator-=(const RationalFn& o);
    RationalFn& operator*=(const RationalFn& o);
    /// Throws DivisionByZeroFunction when o is the zero function.
    RationalFn& operator/=(const RationalFn& o);

    friend RationalFn operator+(RationalFn a, const RationalFn& b) { return a += b; }
    friend RationalFn operator-(RationalFn a, const RationalFn& b) { return a -= b; }
    friend RationalFn operator*(RationalFn a, const RationalFn& b) { return a *= b; }
    friend RationalFn operator/(RationalFn a, const RationalFn& b) { return a /= b; }
    RationalFn operator-() const;

    /// Cross-multiplication equality.
    friend bool operator==(const RationalFn& a, const RationalFn& b);
    /// Same normalized representation (stronger than ==).
    bool identical(const RationalFn& o) const { return num_ == o.num_ && den_ == o.den_; }

    RationalFn pow(unsigned e) const;
    RationalFn conj() const;
    RationalFn diff(Derivative d) const;
    RationalFn substitute(Var v, const SparsePoly& replacement) const;
    RationalFn swap_xy() const;
    /// Same function with the denominator expanded into a single base.
    RationalFn flattened() const;

    /// Exact value; throws SingularPoint when the denominator vanishes.
    GaussRational eval(const GaussRational& x, const GaussRational& y, const GaussRational& s) const;

    std::string to_string() const;

private:
    RationalFn(SparsePoly num, std::vector<DenFactor> den);
    void normalize();
    /// Applies D = a*d/dx + b*d/dy + c*d/ds.
    RationalFn derive(const GaussRational& a, const GaussRational& b, const GaussRational& c) const;

    SparsePoly num_;
    std::vector<DenFactor> den_;
};

/// Result of a zero test.
struct ZeroCertificate {
    bool zero = false;
    std::size_t terms = 0;  ///< numerator terms examined
    unsigned degree = 0;    ///< numerator total degree examined
};

ZeroCertificate rf_is_zero(const RationalFn& f);

/// Writes a polynomial as primitive * scale, with the normalization used for
/// denominator bases.
struct PrimitiveSplit {
    GaussRational scale;
    SparsePoly primitive;
};
PrimitiveSplit primitive_part(const SparsePoly& p);

}  // namespace mnv
