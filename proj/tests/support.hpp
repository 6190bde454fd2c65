#pragma once

#include <random>

#include "mnv/algebra/rational_fn.hpp"

namespace mnv::test {

inline SparsePoly X() { return SparsePoly::variable(Var::x); }
inline SparsePoly Y() { return SparsePoly::variable(Var::y); }
inline SparsePoly S() { return SparsePoly::variable(Var::s); }
inline GaussRational I() { return GaussRational::i(); }

inline GaussRational q(long num, long den = 1) { return GaussRational(mpq_class(num, den), 0); }
inline GaussRational gq(long re_num, long re_den, long im_num, long im_den) {
    return GaussRational(mpq_class(re_num, re_den), mpq_class(im_num, im_den));
}

/// Small random Gaussian-rational coefficient, never zero.
inline GaussRational random_coeff(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-6, 6), den(1, 4);
    for (;;) {
        mpq_class re(num(rng), den(rng)), im(num(rng), den(rng));
        re.canonicalize();
        im.canonicalize();
        if (rng() % 3 == 0) im = 0;
        if (re != 0 || im != 0) return GaussRational(re, im);
    }
}

/// Random polynomial with up to `terms` terms and exponents up to `max_exp`.
inline SparsePoly random_poly(std::mt19937_64& rng, int terms = 4, unsigned max_exp = 3) {
    std::uniform_int_distribution<unsigned> e(0, max_exp);
    std::uniform_int_distribution<int> n(0, terms);
    SparsePoly p;
    for (int k = n(rng); k > 0; --k) p += SparsePoly::term(Monomial(e(rng), e(rng), e(rng)), random_coeff(rng));
    return p;
}

inline SparsePoly random_nonzero_poly(std::mt19937_64& rng, int terms = 4, unsigned max_exp = 3) {
    for (;;) {
        SparsePoly p = random_poly(rng, terms, max_exp);
        if (!p.is_zero()) return p;
    }
}

/// Random rational in [-4, 4] with denominator up to 7.
inline GaussRational random_point_coord(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-28, 28), den(1, 7);
    mpq_class v(num(rng), den(rng));
    v.canonicalize();
    return GaussRational(v, 0);
}

}  // namespace mnv::test
