// Acceptance suite: one PASS/FAIL line per criterion at the pinned tolerances.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mnv/geometry/geometry.hpp"
#include "mnv/numerics/finite_difference.hpp"
#include "mnv/numerics/probes.hpp"
#include "mnv/numerics/quadrature.hpp"
#include "mnv/solution/solution.hpp"

using namespace mnv;
using std::numbers::pi;

namespace {

struct Outcome {
    bool pass = true;
    std::string note;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

const SolutionBundle& bundle() {
    static const SolutionBundle b = build_solution();
    return b;
}

Outcome ac1() {
    const auto t0 = Clock::now();
    const VerificationReport r = verify_mnv(bundle());
    const double secs = seconds_since(t0);
    return {r.passed && secs <= 600.0, "residual numerator zero: degree " + std::to_string(r.degree) + ", peak " +
                                           std::to_string(r.terms) + " terms, " + fmt("%.3f s", secs)};
}

Outcome ac2() {
    const auto t0 = Clock::now();
    const VerificationReport r = verify_dbar_constraint(bundle());
    const double secs = seconds_since(t0);
    return {r.passed && secs <= 60.0, "dbar V - d(U^2) = 0: degree " + std::to_string(r.degree) + ", " +
                                          fmt("%.3f s", secs)};
}

Outcome ac3() {
    const auto t0 = Clock::now();
    const VerificationReport parts[] = {verify_denominator_identity(bundle()), verify_geometry_structure(bundle()),
                                        verify_geometry_potential(bundle())};
    const double secs = seconds_since(t0);
    Outcome o{secs <= 300.0, ""};
    for (const auto& p : parts) {
        o.pass = o.pass && p.passed;
        o.note += p.check + (p.passed ? " ok; " : " FAILED (" + p.failure + "); ");
    }
    o.note += fmt("%.3f s", secs);
    return o;
}

Outcome ac4() {
    Outcome o;
    double worst = 0.0, slowest = 0.0;
    for (double s : {-2.0, -1.0, 0.5, 1.0, 3.0, 0.0}) {
        const auto t0 = Clock::now();
        const QuadratureReport r = integrate_U2(s, 1e-7);
        const double secs = seconds_since(t0);
        const double dev = std::abs(r.value - (s == 0.0 ? 2 * pi : 3 * pi));
        worst = std::max(worst, dev);
        slowest = std::max(slowest, secs);
        if (dev > 1e-5 || secs > 30.0) {
            o.pass = false;
            o.note += "s=" + fmt("%g", s) + " dev " + fmt("%.3g", dev) + "; ";
        }
    }
    o.note += "max deviation " + fmt("%.3g", worst) + " (limit 1e-5), slowest " + fmt("%.3f s", slowest);
    return o;
}

Outcome ac5() {
    const auto t0 = Clock::now();
    double worst = 0.0;
    for (int k = 0; k < 16; ++k) {
        const double phi = 2 * pi * k / 16;
        worst = std::max(worst, std::abs(ray_limit_probe(phi).extrapolated_limit + std::cos(2 * phi)));
    }
    const double secs = seconds_since(t0);
    return {worst <= 1e-6 && secs <= 5.0,
            "16 angles, max |limit + cos 2phi| = " + fmt("%.3g", worst) + " (limit 1e-6), " + fmt("%.3f s", secs)};
}

Outcome ac6() {
    const auto t0 = Clock::now();
    double worst = 0.0, sup = 0.0, drift = 0.0;
    for (int k = 0; k < 8; ++k) {
        const double phi = 2 * pi * k / 8;
        for (double s : {0.0, 1.0}) {
            worst = std::max(worst, std::abs(decay_probe(phi, s, ProbeField::U).extrapolated_limit + 3 * std::cos(2 * phi)));
            const ProbeSeries v = decay_probe(phi, s, ProbeField::V);
            if (!std::isfinite(v.sup)) return {false, "r^2 V unbounded along phi=" + fmt("%g", phi)};
            sup = std::max(sup, v.sup);
            const std::size_t n = v.values.size();
            drift = std::max(drift, std::abs(v.values[n - 1] - v.values[n - 2]) / std::max(1.0, v.sup));
        }
    }
    const double secs = seconds_since(t0);
    return {worst <= 1e-2 && drift <= 1e-2 && secs <= 10.0,
            "max |r^2 U + 3cos 2phi| = " + fmt("%.3g", worst) + " (limit 1e-2); sup |r^2 V| = " + fmt("%.6g", sup) +
                ", outer drift " + fmt("%.3g", drift) + "; " + fmt("%.3f s", secs)};
}

Outcome ac7() {
    Outcome o;
    SolutionBundle scaled = bundle();
    scaled.U = RationalFn(2) * scaled.U;
    scaled.V = RationalFn(4) * scaled.V;
    const VerificationReport pde = verify_mnv(scaled);
    o.note += "2U/4V: " + std::string(pde.passed ? "NOT rejected" : pde.failure) + "; ";
    o.pass = o.pass && !pde.passed;

    const Immersion wrong = invert_immersion(translated_enneper(
        {SparsePoly(0), SparsePoly::variable(Var::s), SparsePoly(1)}));
    const GeometryReport g = verify_potential_matches_U(wrong, fundamental_form(wrong), bundle());
    o.note += "u0=(0,s,1): " + std::string(g.potential.passed ? "NOT rejected" : g.potential.failure) + "; ";
    o.pass = o.pass && !g.potential.passed;

    const Immersion sheared{{RationalFn(SparsePoly::variable(Var::x)),
                             RationalFn(SparsePoly::variable(Var::x) + SparsePoly::variable(Var::y)), RationalFn(0)}};
    const auto c = verify_conformal(fundamental_form(sheared));
    const bool rejected = !c[0].passed || !c[1].passed;
    o.note += "sheared: " + std::string(rejected ? "ConformalityViolation" : "NOT rejected");
    o.pass = o.pass && rejected;
    return o;
}

Outcome ac8() {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    double worst = 0.0, min_order = 1e9;
    int n = 0;
    while (n < 50) {
        const double x = d(rng), y = d(rng), s = d(rng);
        if (std::sqrt(x * x + y * y + s * s) < 0.5) continue;
        const double a = fd_residual_check(x, y, s, 1e-3), b = fd_residual_check(x, y, s, 5e-4);
        worst = std::max(worst, a);
        min_order = std::min(min_order, std::log2(a / b));
        ++n;
    }
    return {worst <= 1e-4 && min_order >= 1.8,
            "50 points, max normalized residual " + fmt("%.3g", worst) + " (limit 1e-4), min order " +
                fmt("%.4f", min_order) + " (limit 1.8)"};
}

std::string capture(const std::string& command, int& status) {
    std::string out;
    FILE* p = popen(command.c_str(), "r");
    if (!p) {
        status = -1;
        return out;
    }
    std::array<char, 4096> buf;
    for (std::size_t n; (n = std::fread(buf.data(), 1, buf.size(), p)) > 0;) out.append(buf.data(), n);
    status = pclose(p);
    return out;
}

Outcome ac9() {
    const std::string exe = MNVCERT_PATH;
    const char* commands[] = {
        "--format json verify --check all",
        "--format json integrate --s 1 --tol 1e-7",
        "--format json integrate --s 0 --tol 1e-7",
        "--format json probe ray --phi 0.7",
        "--format json probe decay --phi 0.7 --s 1 --field V",
        "export --nx 61 --ny 53 --range=-3,3,-2.5,2.5 --s 0 --field U",
        "export --nx 40 --ny 40 --range=-2,2,-2,2 --s 1/3 --field V",
    };
    Outcome o{true, ""};
    int compared = 0;
    for (const char* c : commands) {
        int st = 0;
        const std::string ref = capture(exe + " --jobs 1 " + c, st);
        if (st != 0 || ref.empty()) {
            o.pass = false;
            o.note += std::string("'") + c + "' did not run cleanly; ";
            continue;
        }
        for (const char* jobs : {"1", "4"}) {
            const std::string again = capture(exe + " --jobs " + jobs + " " + c, st);
            ++compared;
            if (again != ref) {
                o.pass = false;
                o.note += std::string("'") + c + "' differs with --jobs " + jobs + "; ";
            }
        }
    }
    o.note += std::to_string(compared) + " byte comparisons across runs and --jobs {1, 4}";
    return o;
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"AC1 exact mNV certificate", ac1},
        {"AC2 exact dbar constraint", ac2},
        {"AC3 exact structural identities", ac3},
        {"AC4 conserved integral", ac4},
        {"AC5 ray limits", ac5},
        {"AC6 decay", ac6},
        {"AC7 falsifiability", ac7},
        {"AC8 finite-difference cross-validation", ac8},
        {"AC9 determinism", ac9},
    };
    int failures = 0;
    for (const auto& [name, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s  %-40s %s\n", o.pass ? "PASS" : "FAIL", name, o.note.c_str());
        std::fflush(stdout);
        failures += !o.pass;
    }
    std::printf("%d/9 criteria pass\n", 9 - failures);
    return failures == 0 ? 0 : 1;
}
