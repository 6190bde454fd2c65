#include <doctest.h>

#include <random>

#include "mnv/errors.hpp"
#include "mnv/solution/solution.hpp"
#include "support.hpp"

using namespace mnv;
using namespace mnv::test;

namespace {

// Direct transcription of the closed form in plain mpq arithmetic, kept
// independent of the polynomial kernel.
mpq_class oracle_Q(const mpq_class& x, const mpq_class& y, const mpq_class& s) {
    const mpq_class r2 = x * x + y * y;
    return r2 * r2 * r2 + 3 * (x * x * x * x + y * y * y * y) + 18 * x * x * y * y + 9 * r2 + 9 * s * s +
           (6 * x * x * x - 18 * x * y * y - 18 * x) * s;
}

mpq_class oracle_U(const mpq_class& x, const mpq_class& y, const mpq_class& s) {
    return -3 * ((x * x + y * y + 3) * (x * x - y * y) - 6 * x * s) / oracle_Q(x, y, s);
}

const SolutionBundle& bundle() {
    static const SolutionBundle b = build_solution();
    return b;
}

}  // namespace

TEST_CASE("U spot values") {
    const auto& U = bundle().U;
    CHECK(U.eval(1, 0, 0) == q(-12, 13));
    CHECK(U.eval(0, 0, 1) == GaussRational(0));
    CHECK(U.eval(0, 0, -5) == GaussRational(0));
    CHECK(U.eval(1, 0, 1) == q(3, 5));
    CHECK(U.eval(1, 1, 0) == GaussRational(0));
    CHECK(U.eval(q(1, 2), q(1, 3), 2) == q(774468, 1004113));
    CHECK_THROWS_AS(U.eval(0, 0, 0), SingularPoint);
}

TEST_CASE("U agrees with a direct transcription at random rational points") {
    std::mt19937_64 rng(101);
    for (int k = 0; k < 200; ++k) {
        const GaussRational x = random_point_coord(rng), y = random_point_coord(rng), s = random_point_coord(rng);
        if (x.is_zero() && y.is_zero() && s.is_zero()) continue;
        REQUIRE(bundle().U.eval(x, y, s) == GaussRational(oracle_U(x.re(), y.re(), s.re())));
        REQUIRE(bundle().Q.eval(x, y, s) == GaussRational(oracle_Q(x.re(), y.re(), s.re())));
    }
}

TEST_CASE("V spot values") {
    const auto& V = bundle().V;
    CHECK(V.eval(1, 1, 1) == gq(-45, 841, 726, 841));
    CHECK(V.eval(q(1, 2), 1, 1) == gq(1116612, 654481, -283344, 654481));
    CHECK(V.eval(q(3, 2), q(-1, 4), q(1, 2)) == gq(-31660493712, 40184612521, -10731857472, 40184612521));
    CHECK(bundle().U.eval(q(3, 2), q(-1, 4), q(1, 2)) == q(-87504, 200461));
}

TEST_CASE("bundle invariants") {
    const auto& b = bundle();
    REQUIRE(b.U.den_factors().size() == 1);
    CHECK(b.U.den_factors()[0].base == b.Q);
    CHECK(b.U.den_factors()[0].power == 1);
    CHECK(b.U.num().is_real());
    CHECK(b.Q.is_real());
    CHECK(b.gamma == I() * (X() * X() - Y() * Y()));
    const SparsePoly delta =
        Y() * (1 + X() * X() - q(1, 3) * Y() * Y()) - I() * (X() * (1 + Y() * Y() - q(1, 3) * X() * X()) - S());
    CHECK(b.delta == delta);
}

TEST_CASE("build_solution is deterministic") {
    const SolutionBundle a = build_solution(), c = build_solution();
    CHECK(a.U.identical(c.U));
    CHECK(a.V.identical(c.V));
    CHECK(a.Q == c.Q);
}

TEST_CASE("dbar constraint certificate") {
    const VerificationReport r = verify_dbar_constraint(bundle());
    CHECK(r.check == "dbar");
    CHECK(r.passed);
    CHECK(r.failure.empty());
    CHECK(r.degree > 0);
    CHECK(r.terms > 0);
}

TEST_CASE("dbar constraint falsifiers") {
    SolutionBundle shifted = bundle();
    shifted.V = shifted.V + RationalFn(X() - I() * Y());
    const VerificationReport a = verify_dbar_constraint(shifted);
    CHECK_FALSE(a.passed);
    CHECK(a.failure == "ConstraintViolation");
    CHECK_FALSE(a.detail.empty());

    // A constant shift is invisible to the constraint.
    SolutionBundle constant = bundle();
    constant.V = constant.V + RationalFn(1);
    CHECK(verify_dbar_constraint(constant).passed);

    SolutionBundle doubled = bundle();
    doubled.U = RationalFn(2) * doubled.U;
    CHECK(verify_dbar_constraint(doubled).failure == "ConstraintViolation");
}

TEST_CASE("mNV residual certificate") {
    const VerificationReport r = verify_mnv(bundle());
    CHECK(r.check == "pde");
    CHECK(r.passed);
    // Frozen telemetry: the largest numerator assembled on the way to zero.
    CHECK(r.degree == 23);
    CHECK(r.terms == 470);
    VerificationReport again = verify_mnv(bundle());
    again.millis = r.millis;
    CHECK(again == r);
}

TEST_CASE("mNV residual through flattened denominators") {
    SolutionBundle flat = bundle();
    flat.U = flat.U.flattened();
    flat.V = flat.V.flattened();
    CHECK(flat.V.den_factors().size() == 1);
    CHECK(rf_is_zero(mnv_residual(flat)).zero);
}

TEST_CASE("residual vanishes pointwise before any normalization") {
    // Each derivative is evaluated on its own and the residual is combined in
    // exact arithmetic at the point.
    const auto& b = bundle();
    const RationalFn& U = b.U;
    const RationalFn& V = b.V;
    const RationalFn Vb = V.conj();
    const RationalFn Uz = U.diff(Derivative::wirtinger_z), Uzb = U.diff(Derivative::wirtinger_zbar);
    const RationalFn Uzzz = Uz.diff(Derivative::wirtinger_z).diff(Derivative::wirtinger_z);
    const RationalFn Uzbzbzb = Uzb.diff(Derivative::wirtinger_zbar).diff(Derivative::wirtinger_zbar);
    const RationalFn Ut = U.diff(Derivative::t), Vz = V.diff(Derivative::wirtinger_z),
                     Vbzb = Vb.diff(Derivative::wirtinger_zbar);
    std::mt19937_64 rng(2024);
    int checked = 0;
    while (checked < 20) {
        const GaussRational x = random_point_coord(rng), y = random_point_coord(rng), s = random_point_coord(rng);
        if (x.is_zero() && y.is_zero() && s.is_zero()) continue;
        const auto e = [&](const RationalFn& f) { return f.eval(x, y, s); };
        const GaussRational u = e(U), three(3), half3 = q(3, 2);
        const GaussRational R = e(Ut) - (e(Uzzz) + three * e(Uz) * e(V) + half3 * u * e(Vz)) -
                                (e(Uzbzbzb) + three * e(Uzb) * e(Vb) + half3 * u * e(Vbzb));
        REQUIRE(R == GaussRational(0));
        REQUIRE(e(V.diff(Derivative::wirtinger_zbar)) == e((U * U).diff(Derivative::wirtinger_z)));
        ++checked;
    }
}

TEST_CASE("mNV residual falsifiers") {
    SolutionBundle scaled = bundle();
    scaled.U = RationalFn(2) * scaled.U;
    scaled.V = RationalFn(4) * scaled.V;
    CHECK(verify_dbar_constraint(scaled).passed);  // consistent with the constraint
    const VerificationReport r = verify_mnv(scaled);
    CHECK_FALSE(r.passed);
    CHECK(r.failure == "ResidualNonzero");
    CHECK(r.detail.find("->") != std::string::npos);
    CHECK(mnv_residual(scaled).eval(1, q(1, 2), 1) == q(-12536601984000, 539415333601));

    MnvOptions frozen;
    frozen.include_time_derivative = false;
    CHECK(verify_mnv(bundle(), frozen).failure == "ResidualNonzero");
    CHECK(mnv_residual(bundle(), frozen).eval(1, q(1, 2), 1) == q(935424, 734449));
}

TEST_CASE("denominator identity") {
    CHECK(verify_denominator_identity(bundle()).passed);
    const auto& b = bundle();
    const SparsePoly D = b.gamma * b.gamma.conj() + b.delta * b.delta.conj();
    CHECK(b.Q.eval(1, 0, 0) == GaussRational(13));
    CHECK(D.eval(1, 0, 0) == q(13, 9));
    for (long s0 : {-2L, 0L, 3L}) {
        CHECK(b.Q.eval(0, 1, s0) == GaussRational(13 + 9 * s0 * s0));
        CHECK(9 * D.eval(0, 1, s0) == GaussRational(13 + 9 * s0 * s0));
    }

    SolutionBundle shifted = bundle();
    shifted.delta = shifted.delta + SparsePoly(1);
    const VerificationReport r = verify_denominator_identity(shifted);
    CHECK_FALSE(r.passed);
    CHECK(r.failure == "IdentityViolation");
}

TEST_CASE("realness") {
    const VerificationReport r = verify_realness(bundle());
    CHECK(r.passed);
    CHECK(r.detail.find("V self-conjugate: no") != std::string::npos);
    CHECK_FALSE(bundle().V.eval(1, 1, 1).is_real());

    SolutionBundle imaginary = bundle();
    imaginary.U = RationalFn(bundle().gamma);
    const VerificationReport g = verify_realness(imaginary);
    CHECK_FALSE(g.passed);
    CHECK(g.failure == "RealnessViolation");
    CHECK_FALSE(bundle().gamma.is_real());
}

TEST_CASE("singular point audit") {
    const VerificationReport r = singular_point_audit(bundle());
    CHECK(r.passed);
    CHECK(bundle().Q.eval(0, 0, 0) == GaussRational(0));

    // Independent minimum over the same witness grid.
    mpq_class best = -1;
    for (int s : {-1, 1})
        for (int i = -10; i <= 10; ++i)
            for (int j = -10; j <= 10; ++j) {
                const mpq_class v = oracle_Q(mpq_class(i, 2), mpq_class(j, 2), s);
                if (best < 0 || v < best) best = v;
            }
    CHECK(best > 0);
    CHECK(r.detail.find("min Q on witness grid = " + best.get_str()) != std::string::npos);
}

TEST_CASE("antisymmetry at s = 0") {
    const RationalFn U0 = bundle().U.substitute(Var::s, SparsePoly(0));
    CHECK(U0.swap_xy() == -U0);
    CHECK(bundle().U.swap_xy() != -bundle().U);  // the s-terms break it
}

TEST_CASE("U is invariant under (x, y, s) -> (-x, -y, -s)") {
    const RationalFn& U = bundle().U;
    const RationalFn reflected = U.substitute(Var::x, -X()).substitute(Var::y, -Y()).substitute(Var::s, -S());
    CHECK(reflected == U);
    CHECK(reflected.identical(U));
}

TEST_CASE("nonzero witness") {
    CHECK_FALSE(nonzero_witness(RationalFn(0)).has_value());
    const auto w = nonzero_witness(bundle().U);
    REQUIRE(w.has_value());
    CHECK(w->find("->") != std::string::npos);
}
