#include "mnv/algebra/gauss_rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace mnv {

double to_double(const mpq_class& q) {
    const int sign = sgn(q);
    if (sign == 0) return 0.0;
    const mpz_class a = abs(q.get_num());
    const mpz_class& b = q.get_den();

    // e = floor(log2 |q|).
    long e = static_cast<long>(mpz_sizeinbase(a.get_mpz_t(), 2)) - static_cast<long>(mpz_sizeinbase(b.get_mpz_t(), 2));
    {
        mpz_class lhs = a, rhs = b;
        if (e >= 0) rhs <<= static_cast<mp_bitcnt_t>(e);
        else lhs <<= static_cast<mp_bitcnt_t>(-e);
        if (lhs < rhs) --e;
    }
    if (e > 1024) return sign * std::numeric_limits<double>::infinity();
    if (e < -1076) return sign * 0.0;

    // Significant bits available at this magnitude (fewer for subnormals).
    const long p = e >= -1022 ? 53 : std::max(1L, 53 - (-1022 - e));
    const long k = p + 1 - e;  // scaled quotient carries p + 2 bits
    mpz_class num = a, den = b;
    if (k >= 0) num <<= static_cast<mp_bitcnt_t>(k);
    else den <<= static_cast<mp_bitcnt_t>(-k);
    mpz_class quot, rem;
    mpz_tdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());

    std::uint64_t m = mpz_get_ui(quot.get_mpz_t());
    const std::uint64_t low = m & 3u;
    m >>= 2;
    const bool half = (low & 2u) != 0, rest = (low & 1u) != 0 || sgn(rem) != 0;
    if (half && (rest || (m & 1u))) ++m;
    return sign * std::ldexp(static_cast<double>(m), static_cast<int>(-(k - 2)));
}

GaussRational::GaussRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
}

GaussRational& GaussRational::operator+=(const GaussRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

GaussRational& GaussRational::operator-=(const GaussRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

GaussRational& GaussRational::operator*=(const GaussRational& o) {
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ *= o.re_;
        return *this;
    }
    mpq_class re = re_ * o.re_ - im_ * o.im_;
    mpq_class im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

GaussRational& GaussRational::operator/=(const GaussRational& o) {
    if (o.is_zero()) throw std::domain_error("GaussRational: division by zero");
    if (sgn(o.im_) == 0) {
        re_ /= o.re_;
        im_ /= o.re_;
        return *this;
    }
    const mpq_class n = o.norm();
    mpq_class re = (re_ * o.re_ + im_ * o.im_) / n;
    mpq_class im = (im_ * o.re_ - re_ * o.im_) / n;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

int GaussRational::compare(const GaussRational& a, const GaussRational& b) {
    if (int c = cmp(a.re_, b.re_); c != 0) return c < 0 ? -1 : 1;
    int c = cmp(a.im_, b.im_);
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

GaussRational GaussRational::from_double(double value) {
    if (!std::isfinite(value)) throw std::domain_error("GaussRational: non-finite double");
    mpq_class q(value);  // exact conversion
    return {q, 0};
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

mpq_class parse_decimal(std::string_view text) {
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    long exponent = 0;
    if (auto e = body.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view exp_text = body.substr(e + 1);
        bool exp_negative = false;
        if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
            exp_negative = exp_text.front() == '-';
            exp_text.remove_prefix(1);
        }
        if (!all_digits(exp_text) || exp_text.size() > 6)
            throw std::invalid_argument("bad exponent in number '" + std::string(text) + "'");
        exponent = std::stol(std::string(exp_text));
        if (exp_negative) exponent = -exponent;
        body = body.substr(0, e);
    }
    std::string digits;
    if (auto dot = body.find('.'); dot != std::string_view::npos) {
        std::string_view whole = body.substr(0, dot);
        std::string_view frac = body.substr(dot + 1);
        if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
            (!frac.empty() && !all_digits(frac)))
            throw std::invalid_argument("bad number '" + std::string(text) + "'");
        digits = std::string(whole) + std::string(frac);
        exponent -= static_cast<long>(frac.size());
    } else {
        if (!all_digits(body)) throw std::invalid_argument("bad number '" + std::string(text) + "'");
        digits = std::string(body);
    }
    mpz_class mantissa(digits, 10);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    mpq_class value = exponent < 0 ? mpq_class(mantissa, scale) : mpq_class(mantissa * scale);
    value.canonicalize();
    return negative ? mpq_class(-value) : value;
}

std::string rational_text(const mpq_class& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace

GaussRational GaussRational::parse_real(std::string_view text) {
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        mpq_class num = parse_decimal(text.substr(0, slash));
        mpq_class den = parse_decimal(text.substr(slash + 1));
        if (sgn(den) == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        return {num / den, 0};
    }
    return {parse_decimal(text), 0};
}

std::string GaussRational::to_string() const {
    if (sgn(im_) == 0) return rational_text(re_);
    if (sgn(re_) == 0) return rational_text(im_) + "*i";
    const mpq_class mag = abs(im_);
    return rational_text(re_) + (sgn(im_) < 0 ? " - " : " + ") + rational_text(mag) + "*i";
}

}  // namespace mnv
