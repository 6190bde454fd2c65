#include "mnv/numerics/quadrature.hpp"

#include <array>
#include <atomic>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>
#include <vector>

#include "mnv/errors.hpp"
#include "mnv/numerics/field_eval.hpp"
#include "mnv/solution/solution.hpp"

namespace mnv {

namespace {

// 15-point Kronrod abscissae/weights with the embedded 7-point Gauss rule
// (QUADPACK qk15). Index 7 is the centre; wg is nonzero on odd indices.
constexpr std::array<double, 8> xgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851, 0.864864423359769072789712788640926,
    0.741531185599394439863864773280788, 0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> wgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204, 0.104790010322250183839876322541518,
    0.140653259715525918745189590510238, 0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 8> wg = {0.0, 0.129484966168869693270611432679082, 0.0, 0.279705391489276667901467771423780,
                                      0.0, 0.381830050505118944950369775488975, 0.0, 0.417959183673469387755102040816327};

struct Rule {
    std::array<double, 15> node;   // on [-1, 1]
    std::array<double, 15> kw;
    std::array<double, 15> gw;
};

constexpr Rule make_rule() {
    Rule r{};
    for (int k = 0; k < 7; ++k) {
        r.node[k] = -xgk[k];
        r.node[14 - k] = xgk[k];
        r.kw[k] = r.kw[14 - k] = wgk[k];
        r.gw[k] = r.gw[14 - k] = wg[k];
    }
    r.node[7] = 0.0;
    r.kw[7] = wgk[7];
    r.gw[7] = wg[7];
    return r;
}

constexpr Rule rule = make_rule();

class CompensatedSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        carry_ += std::abs(sum_) >= std::abs(v) ? (sum_ - t) + v : (v - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + carry_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

struct Cell {
    double r0, r1, p0, p1;
};

struct CellResult {
    double value = 0.0;
    double error = 0.0;
    std::size_t cells = 0;
    bool stalled = false;
};

void refine(const std::function<double(double, double)>& f, const Cell& c, double tol, unsigned depth,
            unsigned max_depth, CellResult& out) {
    const double rc = 0.5 * (c.r0 + c.r1), rh = 0.5 * (c.r1 - c.r0);
    const double pc = 0.5 * (c.p0 + c.p1), ph = 0.5 * (c.p1 - c.p0);
    CompensatedSum k_sum, g_sum;
    for (int i = 0; i < 15; ++i) {
        const double r = rc + rh * rule.node[i];
        for (int j = 0; j < 15; ++j) {
            const double p = pc + ph * rule.node[j];
            const double v = f(r, p) * r;
            k_sum.add(rule.kw[i] * rule.kw[j] * v);
            if (rule.gw[i] != 0.0 && rule.gw[j] != 0.0) g_sum.add(rule.gw[i] * rule.gw[j] * v);
        }
    }
    const double area = rh * ph;
    const double k = k_sum.value() * area;
    const double err = std::abs(k - g_sum.value() * area);
    if (err <= tol || depth >= max_depth) {
        out.value += k;
        out.error += err;
        out.cells += 1;
        if (err > tol) out.stalled = true;
        return;
    }
    const Cell children[4] = {{c.r0, rc, c.p0, pc}, {c.r0, rc, pc, c.p1}, {rc, c.r1, c.p0, pc}, {rc, c.r1, pc, c.p1}};
    for (const auto& child : children) refine(f, child, tol / 4.0, depth + 1, max_depth, out);
}

}  // namespace

PolarIntegral integrate_polar(const std::function<double(double, double)>& f, double radius, double tol,
                              const QuadratureOptions& options) {
    std::vector<double> edges{0.0};
    for (double e = 0.25; e < radius; e *= 2.0) edges.push_back(e);
    edges.push_back(radius);
    constexpr int sectors = 8;
    std::vector<Cell> cells;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        for (int j = 0; j < sectors; ++j)
            cells.push_back({edges[i], edges[i + 1], 2.0 * std::numbers::pi * j / sectors,
                             2.0 * std::numbers::pi * (j + 1) / sectors});

    const double cell_tol = tol / static_cast<double>(cells.size());
    std::vector<CellResult> results(cells.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto work = [&] {
        for (std::size_t k = next++; k < cells.size(); k = next++) {
            try {
                refine(f, cells[k], cell_tol, 0, options.max_depth, results[k]);
            } catch (...) {
                if (!failed.exchange(true)) failure = std::current_exception();
                return;
            }
        }
    };
    const unsigned workers = std::max(1u, options.workers);
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    PolarIntegral total;
    CompensatedSum value, error;
    bool stalled = false;
    for (const auto& r : results) {
        value.add(r.value);
        error.add(r.error);
        total.cells += r.cells;
        stalled = stalled || r.stalled;
    }
    total.value = value.value();
    total.error = error.value();
    if (stalled) {
        std::ostringstream out;
        out << "adaptive refinement stalled: estimated error " << total.error << " above tolerance " << tol;
        throw ToleranceNotMet(out.str());
    }
    return total;
}

double tail_bound(double radius, double s) {
    const double a = std::abs(s);
    if (radius < 3.0 || radius * radius * radius < 16.0 * a) return std::numeric_limits<double>::infinity();
    const double R = radius;
    const double eps = 2.0 * (9.0 / (R * R) + 36.0 * a / std::pow(R, 3) + 27.0 / std::pow(R, 4) +
                              54.0 * a / std::pow(R, 5) + 27.0 * s * s / std::pow(R, 6));
    const double tail_of_eps = 2.0 * (9.0 / (4.0 * std::pow(R, 4)) + 36.0 * a / (5.0 * std::pow(R, 5)) +
                                      27.0 / (6.0 * std::pow(R, 6)) + 54.0 * a / (7.0 * std::pow(R, 7)) +
                                      27.0 * s * s / (8.0 * std::pow(R, 8)));
    return 2.0 * std::numbers::pi * (eps + 6.0) * tail_of_eps;
}

double choose_radius(double s, double tol) {
    double hi = std::max(3.0, std::cbrt(16.0 * std::abs(s)));
    while (tail_bound(hi, s) > tol / 2.0) hi *= 2.0;
    double lo = hi / 2.0;
    if (tail_bound(lo, s) <= tol / 2.0) return lo;
    while (hi - lo > 1e-3 * hi) {
        const double mid = 0.5 * (lo + hi);
        (tail_bound(mid, s) <= tol / 2.0 ? hi : lo) = mid;
    }
    return hi;
}

QuadratureReport integrate_U2(double s, double tol, const QuadratureOptions& options) {
    if (!(tol >= kMinQuadratureTolerance)) {
        std::ostringstream out;
        out << "tolerance " << tol << " is below the supported floor " << kMinQuadratureTolerance;
        throw ToleranceNotMet(out.str());
    }
    static const SolutionBundle bundle = build_solution();
    const FieldEvaluator u(bundle.U);

    QuadratureReport report;
    report.s = s;
    report.tolerance = tol;
    report.radius_used = choose_radius(s, tol);
    const auto integrand = [&](double r, double phi) {
        const double value = u(r * std::cos(phi), r * std::sin(phi), s).real();
        return value * value;
    };
    const PolarIntegral inner = integrate_polar(integrand, report.radius_used, tol / 2.0, options);
    report.tail_correction = 9.0 * std::numbers::pi / (2.0 * report.radius_used * report.radius_used);
    report.value = inner.value + report.tail_correction;
    report.inner_estimate_error = inner.error;
    report.cells = inner.cells;
    return report;
}

}  // namespace mnv
