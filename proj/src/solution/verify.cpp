#include <array>
#include <chrono>
#include <sstream>

#include "mnv/errors.hpp"
#include "mnv/solution/solution.hpp"

namespace mnv {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string leading_term_text(const SparsePoly& p) {
    if (p.is_zero()) return "0";
    return SparsePoly::from_terms({p.leading_term()}).to_string();
}

VerificationReport zero_report(std::string check, const RationalFn& f, const Telemetry& t, Clock::time_point start,
                               const char* failure_kind) {
    VerificationReport r;
    r.check = std::move(check);
    r.passed = f.is_zero();
    r.degree = t.degree();
    r.terms = t.peak_terms();
    if (!r.passed) {
        r.failure = failure_kind;
        r.detail = "leading term " + leading_term_text(f.num());
    }
    r.millis = elapsed_ms(start);
    return r;
}

}  // namespace

std::optional<std::string> nonzero_witness(const RationalFn& f) {
    static const std::array<std::array<long, 3>, 8> points{{
        {1, 1, 1}, {1, 2, 3}, {2, -1, 1}, {-1, 3, 2}, {3, 1, -2}, {1, 0, 1}, {0, 1, 2}, {2, 2, -1},
    }};
    for (const auto& p : points) {
        try {
            GaussRational v = f.eval(p[0], p[1], p[2]);
            if (!v.is_zero()) {
                std::ostringstream out;
                out << "(" << p[0] << ", " << p[1] << ", " << p[2] << ") -> " << v.to_string();
                return out.str();
            }
        } catch (const SingularPoint&) {
        }
    }
    return std::nullopt;
}

VerificationReport verify_dbar_constraint(const SolutionBundle& b) {
    const auto start = Clock::now();
    Telemetry t;
    const RationalFn lhs = t.observe(b.V.diff(Derivative::wirtinger_zbar));
    const RationalFn rhs = t.observe(b.U.pow(2).diff(Derivative::wirtinger_z));
    const RationalFn diff = t.observe(lhs - rhs);
    return zero_report("dbar", diff, t, start, "ConstraintViolation");
}

RationalFn mnv_residual(const SolutionBundle& b, const MnvOptions& options, Telemetry* telemetry) {
    Telemetry local;
    Telemetry& t = telemetry ? *telemetry : local;
    const RationalFn& U = b.U;
    const RationalFn& V = b.V;
    const RationalFn Vbar = V.conj();
    const RationalFn three(3);
    const RationalFn three_halves(SparsePoly(GaussRational(mpq_class(3, 2))));

    const RationalFn Uz = t.observe(U.diff(Derivative::wirtinger_z));
    const RationalFn Uzzz = t.observe(Uz.diff(Derivative::wirtinger_z).diff(Derivative::wirtinger_z));
    const RationalFn Vz = t.observe(V.diff(Derivative::wirtinger_z));
    const RationalFn holomorphic_block = t.observe(Uzzz + three * Uz * V + three_halves * U * Vz);

    const RationalFn Ub = t.observe(U.diff(Derivative::wirtinger_zbar));
    const RationalFn Ubbb = t.observe(Ub.diff(Derivative::wirtinger_zbar).diff(Derivative::wirtinger_zbar));
    const RationalFn Vbar_b = t.observe(Vbar.diff(Derivative::wirtinger_zbar));
    const RationalFn antiholomorphic_block = t.observe(Ubbb + three * Ub * Vbar + three_halves * U * Vbar_b);

    RationalFn residual = -(holomorphic_block + antiholomorphic_block);
    if (options.include_time_derivative) residual += t.observe(U.diff(Derivative::t));
    t.observe(residual);
    return residual;
}

VerificationReport verify_mnv(const SolutionBundle& b, const MnvOptions& options) {
    const auto start = Clock::now();
    Telemetry t;
    const RationalFn residual = mnv_residual(b, options, &t);
    VerificationReport r = zero_report("pde", residual, t, start, "ResidualNonzero");
    if (!r.passed) {
        if (auto w = nonzero_witness(residual)) r.detail = "residual at " + *w;
    }
    r.millis = elapsed_ms(start);
    return r;
}

VerificationReport verify_denominator_identity(const SolutionBundle& b) {
    const auto start = Clock::now();
    Telemetry t;
    const SparsePoly gap = b.Q - 9 * (b.gamma * b.gamma.conj() + b.delta * b.delta.conj());
    t.observe(RationalFn(b.Q));
    t.observe(RationalFn(gap));
    return zero_report("denominator", RationalFn(gap), t, start, "IdentityViolation");
}

VerificationReport verify_realness(const SolutionBundle& b) {
    const auto start = Clock::now();
    Telemetry t;
    t.observe(b.U);
    const RationalFn gap = t.observe(b.U.conj() - b.U);
    VerificationReport r = zero_report("realness", gap, t, start, "RealnessViolation");
    const bool v_real = (b.V.conj() - b.V).is_zero();
    std::string v_note = std::string("V self-conjugate: ") + (v_real ? "yes" : "no");
    r.detail = r.detail.empty() ? v_note : r.detail + "; " + v_note;
    r.millis = elapsed_ms(start);
    return r;
}

namespace {

/// True when p is a polynomial in one variable with only even powers and
/// positive rational coefficients, hence p >= constant term > 0.
bool even_positive(const SparsePoly& p) {
    if (p.coefficient(Monomial{}).is_zero()) return false;
    for (const auto& [m, c] : p.terms()) {
        if (!c.is_real() || sgn(c.re()) <= 0) return false;
        if (m.ex() % 2 || m.ey() % 2 || m.es() % 2) return false;
    }
    return true;
}

/// p = v * h with h returned, or nullopt when v does not divide p termwise.
std::optional<SparsePoly> divide_by_variable(const SparsePoly& p, Var v) {
    std::vector<SparsePoly::Term> out;
    for (const auto& [m, c] : p.terms()) {
        if (m.exponent(v) == 0) return std::nullopt;
        out.emplace_back(Monomial(m.ex() - (v == Var::x), m.ey() - (v == Var::y), m.es() - (v == Var::s)), c);
    }
    return SparsePoly::from_terms(std::move(out));
}

}  // namespace

// Q = 9(|gamma|^2 + |delta|^2) >= 0, and Q = 0 forces gamma = delta = 0:
//   gamma = 0  <=>  x^2 = y^2
//   Re delta on x = +-y is y*h(y) with h > 0, so y = 0 and then x = 0
//   Im delta at x = y = 0 is a nonzero multiple of s, so s = 0.
VerificationReport singular_point_audit(const SolutionBundle& b) {
    const auto start = Clock::now();
    VerificationReport r;
    r.check = "singularity";
    std::ostringstream trail;
    auto fail = [&](const std::string& why) {
        r.passed = false;
        r.failure = "AuditFailure";
        trail << "FAILED: " << why;
        r.detail = trail.str();
        r.millis = elapsed_ms(start);
        return r;
    };

    const SparsePoly gap = b.Q - 9 * (b.gamma * b.gamma.conj() + b.delta * b.delta.conj());
    r.degree = b.Q.degree();
    r.terms = b.Q.size();
    if (!gap.is_zero()) return fail("Q != 9(|gamma|^2+|delta|^2)");
    trail << "Q = 9(|gamma|^2+|delta|^2); ";

    const SparsePoly X = SparsePoly::variable(Var::x);
    const SparsePoly Y = SparsePoly::variable(Var::y);
    if (!(b.gamma * b.gamma.conj() == (X * X - Y * Y).pow(2))) return fail("|gamma|^2 != (x^2-y^2)^2");
    trail << "gamma = 0 iff x = +-y; ";

    const SparsePoly re_delta = b.delta.real_part();
    for (int sign : {1, -1}) {
        const SparsePoly restricted = re_delta.substitute(Var::x, Y * GaussRational(sign));
        auto h = divide_by_variable(restricted, Var::y);
        if (!h || !even_positive(*h)) return fail("Re delta on x = +-y is not y*(positive even polynomial)");
    }
    trail << "Re delta = y*h(y) with h > 0 on x = +-y, so y = 0 = x; ";

    const SparsePoly im_at_origin = b.delta.imag_part().substitute(Var::x, 0).substitute(Var::y, 0);
    if (im_at_origin.size() != 1 || im_at_origin.leading_term().first != Monomial(0, 0, 1))
        return fail("Im delta(0,0,s) is not a nonzero multiple of s");
    trail << "Im delta(0,0,s) = " << im_at_origin.to_string() << ", so s = 0; ";

    if (!b.Q.eval(0, 0, 0).is_zero()) return fail("Q(0,0,0) != 0");
    trail << "Q(0,0,0) = 0; ";

    // Witness grid [-5,5]^2 in steps of 1/2, s in {-1, 1}.
    mpq_class minimum = -1;
    for (long s : {-1L, 1L}) {
        for (long i = -10; i <= 10; ++i) {
            for (long j = -10; j <= 10; ++j) {
                const GaussRational q = b.Q.eval(GaussRational(mpq_class(i, 2)), GaussRational(mpq_class(j, 2)), s);
                if (!q.is_real() || sgn(q.re()) <= 0) return fail("Q not positive on the witness grid");
                if (sgn(minimum) < 0 || q.re() < minimum) minimum = q.re();
            }
        }
        if (!(b.Q.eval(0, 0, s) == GaussRational(9 * s * s))) return fail("Q(0,0,s) != 9s^2");
    }
    trail << "min Q on witness grid = " << GaussRational(minimum).to_string();
    r.passed = true;
    r.detail = trail.str();
    r.millis = elapsed_ms(start);
    return r;
}

}  // namespace mnv
