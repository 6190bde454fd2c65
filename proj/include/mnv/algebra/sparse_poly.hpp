#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "mnv/algebra/gauss_rational.hpp"
#include "mnv/algebra/monomial.hpp"

namespace mnv {

/// Sparse polynomial in the real variables x, y, s with Gaussian-rational
/// coefficients.
///
/// Terms are stored sorted by descending monomial (leading term first) with no
/// zero coefficients, so the representation is canonical and operator== is
/// structural equality. Values are immutable in practice: every operation
/// returns a new polynomial.
class SparsePoly {
public:
    using Term = std::pair<Monomial, GaussRational>;

    SparsePoly() = default;
    SparsePoly(GaussRational constant);  // NOLINT: constants promote implicitly
    SparsePoly(long constant) : SparsePoly(GaussRational(constant)) {}  // NOLINT

    static SparsePoly variable(Var v);
    static SparsePoly term(Monomial m, GaussRational c);
    /// Sorts, merges duplicate monomials and drops zeros.
    static SparsePoly from_terms(std::vector<Term> terms);

    const std::vector<Term>& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const noexcept;
    /// Total degree; 0 for the zero polynomial.
    unsigned degree() const noexcept;
    unsigned degree_in(Var v) const noexcept;
    /// Precondition: !is_zero().
    const Term& leading_term() const { return terms_.front(); }
    /// Coefficient of m (zero when absent).
    GaussRational coefficient(Monomial m) const;

    SparsePoly& operator+=(const SparsePoly& o);
    SparsePoly& operator-=(const SparsePoly& o);
    SparsePoly& operator*=(const SparsePoly& o);
    SparsePoly& operator*=(const GaussRational& c);

    friend SparsePoly operator+(const SparsePoly& a, const SparsePoly& b);
    friend SparsePoly operator-(const SparsePoly& a, const SparsePoly& b);
    friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b);
    friend SparsePoly operator*(SparsePoly a, const GaussRational& c) { return a *= c; }
    friend SparsePoly operator*(const GaussRational& c, SparsePoly a) { return a *= c; }
    friend SparsePoly operator*(SparsePoly a, long c) { return a *= GaussRational(c); }
    friend SparsePoly operator*(long c, SparsePoly a) { return a *= GaussRational(c); }
    SparsePoly operator-() const;

    friend bool operator==(const SparsePoly& a, const SparsePoly& b);

    SparsePoly pow(unsigned e) const;
    /// Formal partial derivative.
    SparsePoly diff(Var v) const;
    /// Coefficient-wise conjugation (x, y, s are real).
    SparsePoly conj() const;
    SparsePoly real_part() const;
    SparsePoly imag_part() const;
    bool is_real() const noexcept;

    /// Replaces v by an arbitrary polynomial.
    SparsePoly substitute(Var v, const SparsePoly& replacement) const;
    SparsePoly swap_xy() const;
    /// Sum of the terms of total degree d.
    SparsePoly homogeneous_part(unsigned d) const;

    /// Exact value; powers are tabulated once and terms accumulated in
    /// monomial order.
    GaussRational eval(const GaussRational& x, const GaussRational& y, const GaussRational& s) const;

    /// Canonical total order used to sort denominator factors.
    static int compare(const SparsePoly& a, const SparsePoly& b);

    std::string to_string() const;

private:
    std::vector<Term> terms_;
};

}  // namespace mnv
