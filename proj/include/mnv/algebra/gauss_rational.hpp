#pragma once

#include <complex>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace mnv {

/// Nearest double to q (ties to even), including the subnormal range.
/// mpq_class::get_d truncates, which is not enough for round-trip output.
double to_double(const mpq_class& q);

/// Exact complex number re + im*i with arbitrary-precision rational parts.
///
/// Both parts are kept in lowest terms (mpq_class canonical form), so two
/// values compare equal iff their parts are identical.
class GaussRational {
public:
    GaussRational() = default;
    GaussRational(long value) : re_(value) {}  // NOLINT: implicit by design of literals
    GaussRational(mpq_class re, mpq_class im = 0);

    static GaussRational i() { return {0, 1}; }

    /// Parses an integer, a ratio "a/b" or a decimal ("0.25", "-1e-3") exactly.
    static GaussRational parse_real(std::string_view text);
    /// Exact value of a finite double (every double is a dyadic rational).
    static GaussRational from_double(double value);

    const mpq_class& re() const noexcept { return re_; }
    const mpq_class& im() const noexcept { return im_; }

    bool is_zero() const noexcept { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const noexcept { return sgn(im_) == 0; }

    GaussRational conj() const { return {re_, -im_}; }
    /// |a|^2 = re^2 + im^2, exact.
    mpq_class norm() const { return re_ * re_ + im_ * im_; }

    GaussRational& operator+=(const GaussRational& o);
    GaussRational& operator-=(const GaussRational& o);
    GaussRational& operator*=(const GaussRational& o);
    /// Throws std::domain_error on division by zero.
    GaussRational& operator/=(const GaussRational& o);

    friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
    friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
    friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
    friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
    GaussRational operator-() const { return {-re_, -im_}; }

    friend bool operator==(const GaussRational& a, const GaussRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    /// Total order (re first, then im); only used for canonical sorting.
    static int compare(const GaussRational& a, const GaussRational& b);

    std::complex<double> to_complex() const { return {to_double(re_), to_double(im_)}; }

    /// "a/b", "a/b*i", "a/b + c/d*i" or "a/b - c/d*i"; integers drop the "/1".
    std::string to_string() const;

private:
    mpq_class re_;
    mpq_class im_;
};

}  // namespace mnv
