#include "mnv/numerics/field_eval.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "mnv/errors.hpp"

namespace mnv {

namespace {

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v)) {
            carry_ += (sum_ - t) + v;
        } else {
            carry_ += (v - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + carry_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

constexpr unsigned kStackPowers = 96;

template <typename Fn>
void with_powers(double v, unsigned n, Fn&& fn) {
    if (n < kStackPowers) {
        std::array<double, kStackPowers> p;
        p[0] = 1.0;
        for (unsigned k = 1; k <= n; ++k) p[k] = p[k - 1] * v;
        fn(p.data());
    } else {
        std::vector<double> p(n + 1, 1.0);
        for (unsigned k = 1; k <= n; ++k) p[k] = p[k - 1] * v;
        fn(p.data());
    }
}

std::string point_text(double x, double y, double s) {
    std::ostringstream out;
    out.precision(17);
    out << "(" << x << ", " << y << ", " << s << ")";
    return out.str();
}

}  // namespace

FieldEvaluator::CompiledPoly FieldEvaluator::compile(const SparsePoly& p) {
    CompiledPoly c;
    c.terms.reserve(p.size());
    for (const auto& [m, coeff] : p.terms()) {
        c.terms.push_back({m.ex(), m.ey(), m.es(), to_double(coeff.re()), to_double(coeff.im())});
        c.max_x = std::max(c.max_x, m.ex());
        c.max_y = std::max(c.max_y, m.ey());
        c.max_s = std::max(c.max_s, m.es());
        if (!coeff.is_real()) c.real = false;
    }
    return c;
}

std::complex<double> FieldEvaluator::CompiledPoly::eval(double x, double y, double s) const {
    CompensatedSum re, im;
    with_powers(x, max_x, [&](const double* px) {
        with_powers(y, max_y, [&](const double* py) {
            with_powers(s, max_s, [&](const double* ps) {
                for (const auto& t : terms) {
                    const double mono = px[t.ex] * py[t.ey] * ps[t.es];
                    re.add(t.re * mono);
                    if (!real) im.add(t.im * mono);
                }
            });
        });
    });
    return {re.value(), im.value()};
}

FieldEvaluator::FieldEvaluator(const RationalFn& f) : num_(compile(f.num())) {
    for (const auto& factor : f.den_factors()) den_.emplace_back(compile(factor.base), factor.power);
}

std::complex<double> FieldEvaluator::operator()(double x, double y, double s) const {
    std::complex<double> den = 1.0;
    for (const auto& [base, power] : den_) {
        const std::complex<double> v = base.eval(x, y, s);
        for (unsigned k = 0; k < power; ++k) den *= v;
    }
    if (!(std::abs(den) >= 1e-300)) throw SingularPoint("denominator vanishes at " + point_text(x, y, s));
    const std::complex<double> num = num_.eval(x, y, s);
    if (den.imag() == 0.0) return num / den.real();
    return num / den;
}

std::complex<double> eval_field(const RationalFn& f, double x, double y, double s) {
    return FieldEvaluator(f)(x, y, s);
}

GaussRational eval_field_exact(const RationalFn& f, double x, double y, double s) {
    try {
        return f.eval(GaussRational::from_double(x), GaussRational::from_double(y), GaussRational::from_double(s));
    } catch (const SingularPoint&) {
        throw SingularPoint("denominator vanishes at " + point_text(x, y, s));
    }
}

}  // namespace mnv
