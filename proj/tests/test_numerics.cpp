#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "mnv/errors.hpp"
#include "mnv/numerics/field_eval.hpp"
#include "mnv/numerics/finite_difference.hpp"
#include "mnv/numerics/probes.hpp"
#include "mnv/numerics/quadrature.hpp"
#include "mnv/solution/solution.hpp"
#include "support.hpp"

using namespace mnv;
using namespace mnv::test;
using std::numbers::pi;

namespace {

const SolutionBundle& bundle() {
    static const SolutionBundle b = build_solution();
    return b;
}

}  // namespace

TEST_CASE("eval_field spot values") {
    CHECK(eval_field(bundle().U, 1, 0, 0).real() == doctest::Approx(-12.0 / 13.0).epsilon(1e-15));
    CHECK(eval_field(bundle().U, 1, 0, 1).real() == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(eval_field(bundle().U, 1, 0, 1).imag() == 0.0);
    CHECK_THROWS_AS(eval_field(bundle().U, 0, 0, 0), SingularPoint);
    CHECK_THROWS_AS(eval_field_exact(bundle().U, 0, 0, 0), SingularPoint);
    CHECK(eval_field_exact(bundle().U, 1, 0, 1) == q(3, 5));
}

TEST_CASE("double evaluation tracks exact evaluation") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> d(-6.0, 6.0);
    const FieldEvaluator u(bundle().U), v(bundle().V);
    for (int k = 0; k < 300; ++k) {
        const double x = d(rng), y = d(rng), s = d(rng);
        const auto eu = eval_field_exact(bundle().U, x, y, s).to_complex();
        const auto ev = eval_field_exact(bundle().V, x, y, s).to_complex();
        REQUIRE(std::abs(u(x, y, s) - eu) <= 1e-12 * std::max(1.0, std::abs(eu)));
        REQUIRE(std::abs(v(x, y, s) - ev) <= 1e-12 * std::max(1.0, std::abs(ev)));
    }
}

TEST_CASE("integrate_polar on integrals with known values") {
    const double R = 2.0;
    const PolarIntegral one = integrate_polar([](double, double) { return 1.0; }, R, 1e-10);
    CHECK(one.value == doctest::Approx(pi * R * R).epsilon(1e-13));

    const PolarIntegral gauss = integrate_polar([](double r, double) { return std::exp(-r * r); }, R, 1e-10);
    CHECK(gauss.value == doctest::Approx(pi * (1.0 - std::exp(-R * R))).epsilon(1e-11));

    const PolarIntegral aniso =
        integrate_polar([](double r, double phi) { return r * r * std::cos(phi) * std::cos(phi); }, R, 1e-10);
    CHECK(aniso.value == doctest::Approx(pi * std::pow(R, 4) / 4.0).epsilon(1e-11));

    // Bounded, discontinuous at the origin only.
    const PolarIntegral jump = integrate_polar([](double, double phi) { return std::cos(2 * phi) + 1.0; }, R, 1e-10);
    CHECK(jump.value == doctest::Approx(pi * R * R).epsilon(1e-11));
}

TEST_CASE("integrate_polar reports unreachable tolerances") {
    QuadratureOptions shallow;
    shallow.max_depth = 1;
    CHECK_THROWS_AS(integrate_polar([](double r, double) { return 1.0 / std::sqrt(r); }, 1.0, 1e-14, shallow),
                    ToleranceNotMet);
}

TEST_CASE("integrate_U2 examples") {
    const double tol = 1e-7;
    for (double s : {1.0, -2.0, 0.5}) {
        const QuadratureReport r = integrate_U2(s, tol);
        CHECK(std::abs(r.value - 3 * pi) <= std::max(tol, 1e-5));
        CHECK(r.s == s);
        CHECK(r.tolerance == tol);
    }
    const QuadratureReport zero = integrate_U2(0.0, tol);
    CHECK(std::abs(zero.value - 2 * pi) <= std::max(tol, 1e-5));
}

TEST_CASE("quadrature report invariants") {
    const double tol = 1e-6;
    const QuadratureReport r = integrate_U2(1.0, tol);
    CHECK(r.tail_correction == doctest::Approx(9 * pi / (2 * r.radius_used * r.radius_used)));
    CHECK(tail_bound(r.radius_used, 1.0) <= tol / 2);
    CHECK(r.inner_estimate_error <= tol / 2);
    CHECK(r.cells > 0);
    CHECK_THROWS_AS(integrate_U2(1.0, 1e-12), ToleranceNotMet);
}

TEST_CASE("tail bound domain and validity") {
    CHECK(std::isinf(tail_bound(2.0, 0.0)));
    CHECK(std::isinf(tail_bound(4.0, 10.0)));  // R^3 < 16|s|
    CHECK(tail_bound(100.0, 1.0) < tail_bound(50.0, 1.0));

    // The corrected remainder over an annulus must respect the bound.
    const FieldEvaluator u(bundle().U);
    for (double s : {0.0, 1.0, -3.0}) {
        auto f = [&](double r, double phi) {
            const double v = u(r * std::cos(phi), r * std::sin(phi), s).real();
            return v * v;
        };
        const double R = 10.0, big = 400.0;
        const double inner = integrate_polar(f, R, 1e-10).value;
        const double outer = integrate_polar(f, big, 1e-10).value;
        const double remainder = (outer - inner) - (9 * pi / (2 * R * R) - 9 * pi / (2 * big * big));
        CHECK(std::abs(remainder) <= tail_bound(R, s));
    }
    CHECK(choose_radius(1.0, 1e-6) >= 3.0);
    CHECK(tail_bound(choose_radius(1.0, 1e-6), 1.0) <= 0.5e-6);
}

TEST_CASE("quadrature is independent of the worker count") {
    QuadratureOptions one, four;
    four.workers = 4;
    for (double s : {0.0, 1.0, -2.0}) CHECK(integrate_U2(s, 1e-7, one) == integrate_U2(s, 1e-7, four));
}

TEST_CASE("ray limit probe") {
    const std::pair<double, double> cases[] = {{0.0, -1.0}, {pi / 4, 0.0}, {pi / 2, 1.0}, {1.0, -std::cos(2.0)}};
    for (auto [phi, expected] : cases) {
        const ProbeSeries p = ray_limit_probe(phi);
        CHECK(std::abs(p.extrapolated_limit - expected) <= 1e-6);
        REQUIRE(p.reference.has_value());
        CHECK(*p.reference == doctest::Approx(expected).epsilon(1e-15));
        CHECK(p.kind == "ray");
        CHECK_FALSE(p.method.empty());
        CHECK(p.abscissae.size() == 7);
        for (std::size_t i = 1; i < p.abscissae.size(); ++i) CHECK(p.abscissae[i] < p.abscissae[i - 1]);
    }
}

TEST_CASE("decay probe of U against top-degree extraction") {
    // Leading behavior r^2 U -> num_4(cos, sin) / Q_6(cos, sin).
    const RationalFn top(bundle().U.num().homogeneous_part(4), bundle().Q.homogeneous_part(6));
    for (double phi : {0.0, pi / 4, 0.7, 2.0}) {
        const double oracle = eval_field(top, std::cos(phi), std::sin(phi), 0.0).real();
        CHECK(oracle == doctest::Approx(-3 * std::cos(2 * phi)).epsilon(1e-12).scale(1.0));
        for (double s : {0.0, 1.0}) {
            const ProbeSeries p = decay_probe(phi, s, ProbeField::U);
            CHECK(std::abs(p.extrapolated_limit - oracle) <= 1e-2);
            for (std::size_t i = 1; i < p.abscissae.size(); ++i) CHECK(p.abscissae[i] > p.abscissae[i - 1]);
        }
    }
}

TEST_CASE("decay probe of V is bounded") {
    const ProbeSeries p = decay_probe(1.0, 1.0, ProbeField::V);
    CHECK_FALSE(p.reference.has_value());
    CHECK(std::isfinite(p.sup));
    for (double v : p.values) CHECK(std::abs(v) <= p.sup);
    CHECK(std::abs(p.values.back() - p.values[p.values.size() - 2]) <= 1e-2 * p.sup);

    // U itself decays: r^2 U tends to a bounded limit while U does not grow.
    const ProbeSeries scaled = decay_probe(RationalFn(2) * bundle().U, 0.0, 1.0, false);
    CHECK(std::abs(scaled.extrapolated_limit + 6.0) <= 1e-2);
}

TEST_CASE("finite-difference residual") {
    const double a = fd_residual_check(1.0, 0.5, 1.0, 1e-3);
    const double b = fd_residual_check(1.0, 0.5, 1.0, 5e-4);
    // High-precision oracle with the same stencils: 4.1138916e-5 and 1.0284565e-5.
    CHECK(a == doctest::Approx(4.1138916e-5).epsilon(1e-6));
    CHECK(b == doctest::Approx(1.0284565e-5).epsilon(1e-6));
    CHECK(a <= 1e-4);
    CHECK(a / b == doctest::Approx(4.0).epsilon(0.3));

    SolutionBundle scaled = bundle();
    scaled.U = RationalFn(2) * scaled.U;
    scaled.V = RationalFn(4) * scaled.V;
    const FdResidual bad = fd_residual(scaled.U, scaled.V, 1.0, 0.5, 1.0, 1e-3);
    CHECK(bad.normalized > 0.1);
    const FdResidual bad_half = fd_residual(scaled.U, scaled.V, 1.0, 0.5, 1.0, 5e-4);
    CHECK(bad_half.normalized == doctest::Approx(bad.normalized).epsilon(1e-3));  // does not shrink with h
}

TEST_CASE("finite-difference preconditions") {
    CHECK_THROWS_AS(fd_residual_check(1.0, 0.5, 1.0, 1e-1), std::invalid_argument);
    CHECK_THROWS_AS(fd_residual_check(1.0, 0.5, 1.0, 1e-5), std::invalid_argument);
    CHECK_THROWS_AS(fd_residual_check(0.001, 0.0, 0.0, 1e-3), std::invalid_argument);
}
