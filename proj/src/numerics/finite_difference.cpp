#include "mnv/numerics/finite_difference.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <utility>

#include "mnv/solution/solution.hpp"

namespace mnv {

FdResidual fd_residual(const RationalFn& U, const RationalFn& V, double x, double y, double s, double h) {
    if (!(h >= 1e-4 && h <= 1e-2)) throw std::invalid_argument("fd_residual: h must lie in [1e-4, 1e-2]");
    if (!(std::sqrt(x * x + y * y + s * s) > 10.0 * h))
        throw std::invalid_argument("fd_residual: point closer than 10h to the singular point");

    const GaussRational X = GaussRational::from_double(x);
    const GaussRational Y = GaussRational::from_double(y);
    const GaussRational S = GaussRational::from_double(s);
    const GaussRational H = GaussRational::from_double(h);

    std::map<std::pair<int, int>, GaussRational> u_plane;
    auto u_at = [&](int i, int j) -> const GaussRational& {
        auto [it, inserted] = u_plane.try_emplace({i, j});
        if (inserted) it->second = U.eval(X + H * GaussRational(i), Y + H * GaussRational(j), S);
        return it->second;
    };
    auto v_at = [&](int i, int j) { return V.eval(X + H * GaussRational(i), Y + H * GaussRational(j), S); };

    const GaussRational half(mpq_class(1, 2));
    const GaussRational I = GaussRational::i();
    const GaussRational h2 = H * H;
    const GaussRational h3 = h2 * H;

    // Second-order central stencils.
    const GaussRational Ux = (u_at(1, 0) - u_at(-1, 0)) * half / H;
    const GaussRational Uy = (u_at(0, 1) - u_at(0, -1)) * half / H;
    const GaussRational Uxxx = (u_at(2, 0) - 2 * u_at(1, 0) + 2 * u_at(-1, 0) - u_at(-2, 0)) * half / h3;
    const GaussRational Uyyy = (u_at(0, 2) - 2 * u_at(0, 1) + 2 * u_at(0, -1) - u_at(0, -2)) * half / h3;
    const GaussRational Uxxy = ((u_at(1, 1) - 2 * u_at(0, 1) + u_at(-1, 1)) -
                                (u_at(1, -1) - 2 * u_at(0, -1) + u_at(-1, -1))) * half / h3;
    const GaussRational Uxyy = ((u_at(1, 1) - 2 * u_at(1, 0) + u_at(1, -1)) -
                                (u_at(-1, 1) - 2 * u_at(-1, 0) + u_at(-1, -1))) * half / h3;
    const GaussRational Us = (U.eval(X, Y, S + H) - U.eval(X, Y, S - H)) * half / H;

    const GaussRational v0 = v_at(0, 0);
    const GaussRational Vx = (v_at(1, 0) - v_at(-1, 0)) * half / H;
    const GaussRational Vy = (v_at(0, 1) - v_at(0, -1)) * half / H;
    const GaussRational u0 = u_at(0, 0);

    const GaussRational eighth(mpq_class(1, 8));
    const GaussRational Uz = half * (Ux - I * Uy);
    const GaussRational Ub = half * (Ux + I * Uy);
    const GaussRational Uzzz = eighth * (Uxxx - 3 * I * Uxxy - 3 * Uxyy + I * Uyyy);
    const GaussRational Ubbb = eighth * (Uxxx + 3 * I * Uxxy - 3 * Uxyy - I * Uyyy);
    const GaussRational Vz = half * (Vx - I * Vy);
    // conj(V)_zbar = conj(V_z).
    const GaussRational Vbar_b = Vz.conj();
    const GaussRational three_halves(mpq_class(3, 2));

    const GaussRational terms[] = {
        -Us,                      // U_t
        Uzzz,
        3 * Uz * v0,
        three_halves * u0 * Vz,
        Ubbb,
        3 * Ub * v0.conj(),
        three_halves * u0 * Vbar_b,
    };
    const GaussRational residual = terms[0] - terms[1] - terms[2] - terms[3] - terms[4] - terms[5] - terms[6];

    FdResidual out;
    out.absolute = std::abs(residual.to_complex());
    for (const auto& t : terms) out.largest_term = std::max(out.largest_term, std::abs(t.to_complex()));
    out.normalized = out.largest_term > 0.0 ? out.absolute / out.largest_term : out.absolute;
    return out;
}

double fd_residual_check(double x, double y, double s, double h) {
    static const SolutionBundle b = build_solution();
    return fd_residual(b.U, b.V, x, y, s, h).normalized;
}

}  // namespace mnv
