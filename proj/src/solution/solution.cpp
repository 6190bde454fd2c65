#include "mnv/solution/solution.hpp"

namespace mnv {

namespace {

const SparsePoly X = SparsePoly::variable(Var::x);
const SparsePoly Y = SparsePoly::variable(Var::y);
const SparsePoly S = SparsePoly::variable(Var::s);
const GaussRational I = GaussRational::i();
const GaussRational third(mpq_class(1, 3));

}  // namespace

SparsePoly z_poly() { return X + Y * I; }

SolutionBundle build_solution() {
    const SparsePoly r2 = X * X + Y * Y;
    const SparsePoly Q = r2.pow(3) + 3 * (X.pow(4) + Y.pow(4)) + 18 * X * X * Y * Y + 9 * r2 + 9 * S * S +
                         (6 * X.pow(3) - 18 * X * Y * Y - 18 * X) * S;
    const SparsePoly numerator = -3 * ((r2 + 3) * (X * X - Y * Y) - 6 * X * S);
    RationalFn U(numerator, Q);

    const SparsePoly gamma = I * (X * X - Y * Y);
    const SparsePoly delta = Y * (1 + X * X - third * Y * Y) - I * (X * (1 + Y * Y - third * X * X) - S);

    const SparsePoly z = z_poly();
    const SparsePoly zbar = z.conj();
    const SparsePoly A = z * (gamma.conj() - gamma) - delta * z * z - delta.conj();
    const SparsePoly D = gamma * gamma.conj() + delta * delta.conj();
    const SparsePoly P = 1 + r2;

    const RationalFn ratio(A, D);
    const RationalFn inv_p(1, P);
    RationalFn V = ratio * ratio + RationalFn(2) * U * inv_p + RationalFn(2 * I * zbar) * ratio * inv_p;
    return {std::move(U), Q, std::move(V), gamma, delta};
}

}  // namespace mnv
