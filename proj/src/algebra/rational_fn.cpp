#include "mnv/algebra/rational_fn.hpp"

#include <algorithm>

#include "mnv/errors.hpp"

namespace mnv {

PrimitiveSplit primitive_part(const SparsePoly& p) {
    if (p.is_zero()) return {GaussRational(0), SparsePoly()};
    mpz_class lcm_den = 1;
    for (const auto& [m, c] : p.terms()) {
        mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.re().get_den_mpz_t());
        mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.im().get_den_mpz_t());
    }
    mpz_class content = 0;
    for (const auto& [m, c] : p.terms()) {
        mpz_class re = c.re().get_num() * (lcm_den / c.re().get_den());
        mpz_class im = c.im().get_num() * (lcm_den / c.im().get_den());
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), re.get_mpz_t());
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), im.get_mpz_t());
    }
    const GaussRational& lc = p.leading_term().second;
    const bool flip = sgn(lc.re()) < 0 || (sgn(lc.re()) == 0 && sgn(lc.im()) < 0);
    mpq_class scale(content, lcm_den);
    scale.canonicalize();
    if (flip) scale = -scale;
    GaussRational s(scale);
    SparsePoly prim = p * GaussRational(mpq_class(1) / scale);
    return {s, std::move(prim)};
}

RationalFn::RationalFn(SparsePoly num) : num_(std::move(num)) {}

RationalFn::RationalFn(SparsePoly num, SparsePoly den) : num_(std::move(num)) {
    if (den.is_zero()) throw DivisionByZeroFunction();
    den_.push_back({std::move(den), 1});
    normalize();
}

RationalFn::RationalFn(SparsePoly num, std::vector<DenFactor> den) : num_(std::move(num)), den_(std::move(den)) {
    normalize();
}

void RationalFn::normalize() {
    if (num_.is_zero()) {
        den_.clear();
        return;
    }
    std::vector<DenFactor> bases;
    bases.reserve(den_.size());
    for (auto& f : den_) {
        if (f.power == 0) continue;
        if (f.base.is_zero()) throw DivisionByZeroFunction();
        auto [scale, prim] = primitive_part(f.base);
        if (!(scale == GaussRational(1))) {
            GaussRational s = 1;
            for (unsigned k = 0; k < f.power; ++k) s *= scale;
            num_ *= GaussRational(1) / s;
        }
        if (!prim.is_constant()) bases.push_back({std::move(prim), f.power});
    }
    std::sort(bases.begin(), bases.end(),
              [](const DenFactor& a, const DenFactor& b) { return SparsePoly::compare(a.base, b.base) < 0; });
    den_.clear();
    for (auto& f : bases) {
        if (!den_.empty() && den_.back().base == f.base) {
            den_.back().power += f.power;
        } else {
            den_.push_back(std::move(f));
        }
    }
}

SparsePoly RationalFn::den() const {
    SparsePoly d(1);
    for (const auto& f : den_) d *= f.base.pow(f.power);
    return d;
}

unsigned RationalFn::den_degree() const noexcept {
    unsigned d = 0;
    for (const auto& f : den_) d += f.base.degree() * f.power;
    return d;
}

namespace {

/// Least common multiple of two factored denominators, matching bases
/// structurally. Both inputs are sorted by SparsePoly::compare.
std::vector<DenFactor> factor_lcm(const std::vector<DenFactor>& a, const std::vector<DenFactor>& b) {
    std::vector<DenFactor> out;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() || ib != b.end()) {
        if (ib == b.end()) {
            out.push_back(*ia++);
        } else if (ia == a.end()) {
            out.push_back(*ib++);
        } else {
            const int c = SparsePoly::compare(ia->base, ib->base);
            if (c < 0) {
                out.push_back(*ia++);
            } else if (c > 0) {
                out.push_back(*ib++);
            } else {
                out.push_back({ia->base, std::max(ia->power, ib->power)});
                ++ia;
                ++ib;
            }
        }
    }
    return out;
}

/// lcm / den for a den dividing lcm (factorwise).
SparsePoly cofactor(const std::vector<DenFactor>& lcm, const std::vector<DenFactor>& den) {
    SparsePoly r(1);
    auto id = den.begin();
    for (const auto& f : lcm) {
        unsigned have = 0;
        if (id != den.end() && id->base == f.base) {
            have = id->power;
            ++id;
        }
        if (f.power > have) r *= f.base.pow(f.power - have);
    }
    return r;
}

}  // namespace

RationalFn& RationalFn::operator+=(const RationalFn& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    if (den_ == o.den_) {
        num_ += o.num_;
        normalize();
        return *this;
    }
    auto lcm = factor_lcm(den_, o.den_);
    SparsePoly num = num_ * cofactor(lcm, den_) + o.num_ * cofactor(lcm, o.den_);
    num_ = std::move(num);
    den_ = std::move(lcm);
    normalize();
    return *this;
}

RationalFn& RationalFn::operator-=(const RationalFn& o) { return *this += -o; }

RationalFn RationalFn::operator-() const {
    RationalFn r = *this;
    r.num_ = -r.num_;
    return r;
}

RationalFn& RationalFn::operator*=(const RationalFn& o) {
    num_ *= o.num_;
    den_.insert(den_.end(), o.den_.begin(), o.den_.end());
    normalize();
    return *this;
}

RationalFn& RationalFn::operator/=(const RationalFn& o) {
    if (o.is_zero()) throw DivisionByZeroFunction();
    num_ *= o.den();
    den_.push_back({o.num_, 1});
    normalize();
    return *this;
}

bool operator==(const RationalFn& a, const RationalFn& b) { return (a - b).is_zero(); }

RationalFn RationalFn::pow(unsigned e) const {
    RationalFn r(num_.pow(e));
    r.den_ = den_;
    for (auto& f : r.den_) f.power *= e;
    r.normalize();
    return r;
}

RationalFn RationalFn::conj() const {
    std::vector<DenFactor> den;
    den.reserve(den_.size());
    for (const auto& f : den_) den.push_back({f.base.conj(), f.power});
    return RationalFn(num_.conj(), std::move(den));
}

namespace {

SparsePoly apply(const SparsePoly& p, const GaussRational& a, const GaussRational& b, const GaussRational& c) {
    SparsePoly r;
    if (!a.is_zero()) r += p.diff(Var::x) * a;
    if (!b.is_zero()) r += p.diff(Var::y) * b;
    if (!c.is_zero()) r += p.diff(Var::s) * c;
    return r;
}

}  // namespace

// For f = n / prod b_k^e_k and the set S of bases with D b_k != 0:
//   D f = (D n * prod_S b_k - n * sum_S e_k D b_k prod_{S\k} b_j) / prod b_k^(e_k + [k in S])
RationalFn RationalFn::derive(const GaussRational& a, const GaussRational& b, const GaussRational& c) const {
    std::vector<std::size_t> moving;
    std::vector<SparsePoly> dbase(den_.size());
    for (std::size_t k = 0; k < den_.size(); ++k) {
        dbase[k] = apply(den_[k].base, a, b, c);
        if (!dbase[k].is_zero()) moving.push_back(k);
    }
    SparsePoly dn = apply(num_, a, b, c);
    if (moving.empty()) return RationalFn(std::move(dn), den_);

    SparsePoly all(1);
    for (std::size_t k : moving) all *= den_[k].base;
    SparsePoly num = dn * all;
    SparsePoly sum;
    for (std::size_t k : moving) {
        SparsePoly others(1);
        for (std::size_t j : moving)
            if (j != k) others *= den_[j].base;
        sum += dbase[k] * others * GaussRational(static_cast<long>(den_[k].power));
    }
    num -= num_ * sum;
    std::vector<DenFactor> den = den_;
    for (std::size_t k : moving) den[k].power += 1;
    return RationalFn(std::move(num), std::move(den));
}

RationalFn RationalFn::diff(Derivative d) const {
    const GaussRational half(mpq_class(1, 2));
    const GaussRational half_i(0, mpq_class(1, 2));
    switch (d) {
        case Derivative::x: return derive(1, 0, 0);
        case Derivative::y: return derive(0, 1, 0);
        case Derivative::s: return derive(0, 0, 1);
        case Derivative::wirtinger_z: return derive(half, -half_i, 0);
        case Derivative::wirtinger_zbar: return derive(half, half_i, 0);
        case Derivative::t: return derive(0, 0, -1);
    }
    return {};
}

RationalFn RationalFn::substitute(Var v, const SparsePoly& replacement) const {
    SparsePoly num = num_.substitute(v, replacement);
    std::vector<DenFactor> den;
    for (const auto& f : den_) {
        SparsePoly base = f.base.substitute(v, replacement);
        if (base.is_zero()) throw DivisionByZeroFunction();
        den.push_back({std::move(base), f.power});
    }
    return RationalFn(std::move(num), std::move(den));
}

RationalFn RationalFn::swap_xy() const {
    std::vector<DenFactor> den;
    for (const auto& f : den_) den.push_back({f.base.swap_xy(), f.power});
    return RationalFn(num_.swap_xy(), std::move(den));
}

RationalFn RationalFn::flattened() const {
    if (den_.empty()) return *this;
    return RationalFn(num_, den());
}

GaussRational RationalFn::eval(const GaussRational& x, const GaussRational& y, const GaussRational& s) const {
    GaussRational d(1);
    for (const auto& f : den_) {
        GaussRational v = f.base.eval(x, y, s);
        for (unsigned k = 0; k < f.power; ++k) d *= v;
    }
    if (d.is_zero()) throw SingularPoint("denominator vanishes at the evaluation point");
    return num_.eval(x, y, s) / d;
}

std::string RationalFn::to_string() const {
    if (den_.empty()) return num_.to_string();
    std::string out = "(" + num_.to_string() + ")/(";
    for (std::size_t k = 0; k < den_.size(); ++k) {
        if (k) out += "*";
        out += "(" + den_[k].base.to_string() + ")";
        if (den_[k].power > 1) out += "^" + std::to_string(den_[k].power);
    }
    return out + ")";
}

ZeroCertificate rf_is_zero(const RationalFn& f) {
    return {f.num().is_zero(), f.num().size(), f.num().degree()};
}

}  // namespace mnv
