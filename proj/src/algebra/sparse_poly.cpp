#include "mnv/algebra/sparse_poly.hpp"

#include <algorithm>
#include <unordered_map>

namespace mnv {

namespace {

bool descending(const SparsePoly::Term& a, const SparsePoly::Term& b) { return a.first > b.first; }

/// p scaled to Gaussian-integer coefficients: p = terms / denominator.
struct IntegerForm {
    struct Entry {
        std::uint64_t key;
        mpz_class re;
        mpz_class im;
    };
    std::vector<Entry> entries;
    mpz_class denominator = 1;
    bool real = true;
};

IntegerForm integer_form(const SparsePoly& p) {
    IntegerForm form;
    for (const auto& [m, c] : p.terms()) {
        mpz_lcm(form.denominator.get_mpz_t(), form.denominator.get_mpz_t(), c.re().get_den_mpz_t());
        mpz_lcm(form.denominator.get_mpz_t(), form.denominator.get_mpz_t(), c.im().get_den_mpz_t());
    }
    form.entries.reserve(p.size());
    for (const auto& [m, c] : p.terms()) {
        IntegerForm::Entry e{m.key(), form.denominator / c.re().get_den(), form.denominator / c.im().get_den()};
        e.re *= c.re().get_num();
        e.im *= c.im().get_num();
        if (sgn(e.im) != 0) form.real = false;
        form.entries.push_back(std::move(e));
    }
    return form;
}

}  // namespace

SparsePoly::SparsePoly(GaussRational constant) {
    if (!constant.is_zero()) terms_.emplace_back(Monomial{}, std::move(constant));
}

SparsePoly SparsePoly::variable(Var v) {
    switch (v) {
        case Var::x: return term(Monomial(1, 0, 0), 1);
        case Var::y: return term(Monomial(0, 1, 0), 1);
        case Var::s: return term(Monomial(0, 0, 1), 1);
    }
    return {};
}

SparsePoly SparsePoly::term(Monomial m, GaussRational c) {
    SparsePoly p;
    if (!c.is_zero()) p.terms_.emplace_back(m, std::move(c));
    return p;
}

SparsePoly SparsePoly::from_terms(std::vector<Term> terms) {
    std::stable_sort(terms.begin(), terms.end(), descending);
    SparsePoly p;
    for (auto& t : terms) {
        if (!p.terms_.empty() && p.terms_.back().first == t.first) {
            p.terms_.back().second += t.second;
        } else {
            if (!p.terms_.empty() && p.terms_.back().second.is_zero()) p.terms_.pop_back();
            p.terms_.push_back(std::move(t));
        }
    }
    if (!p.terms_.empty() && p.terms_.back().second.is_zero()) p.terms_.pop_back();
    return p;
}

bool SparsePoly::is_constant() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && terms_.front().first.degree() == 0);
}

unsigned SparsePoly::degree() const noexcept { return terms_.empty() ? 0 : terms_.front().first.degree(); }

unsigned SparsePoly::degree_in(Var v) const noexcept {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max(d, t.first.exponent(v));
    return d;
}

GaussRational SparsePoly::coefficient(Monomial m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, Monomial key) { return t.first > key; });
    if (it != terms_.end() && it->first == m) return it->second;
    return {};
}

namespace {

std::vector<SparsePoly::Term> merge(const std::vector<SparsePoly::Term>& a, const std::vector<SparsePoly::Term>& b,
                                    bool negate_b) {
    std::vector<SparsePoly::Term> out;
    out.reserve(a.size() + b.size());
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() || ib != b.end()) {
        if (ib == b.end() || (ia != a.end() && ia->first > ib->first)) {
            out.push_back(*ia++);
        } else if (ia == a.end() || ib->first > ia->first) {
            out.emplace_back(ib->first, negate_b ? -ib->second : ib->second);
            ++ib;
        } else {
            GaussRational c = negate_b ? ia->second - ib->second : ia->second + ib->second;
            if (!c.is_zero()) out.emplace_back(ia->first, std::move(c));
            ++ia;
            ++ib;
        }
    }
    return out;
}

}  // namespace

SparsePoly& SparsePoly::operator+=(const SparsePoly& o) {
    terms_ = merge(terms_, o.terms_, false);
    return *this;
}

SparsePoly& SparsePoly::operator-=(const SparsePoly& o) {
    terms_ = merge(terms_, o.terms_, true);
    return *this;
}

SparsePoly operator+(const SparsePoly& a, const SparsePoly& b) {
    SparsePoly r = a;
    return r += b;
}

SparsePoly operator-(const SparsePoly& a, const SparsePoly& b) {
    SparsePoly r = a;
    return r -= b;
}

SparsePoly SparsePoly::operator-() const {
    SparsePoly r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
}

SparsePoly& SparsePoly::operator*=(const GaussRational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.second *= c;
    return *this;
}

SparsePoly& SparsePoly::operator*=(const SparsePoly& o) {
    *this = *this * o;
    return *this;
}

// Coefficients are cleared to Gaussian integers first so the inner loop is
// pure mpz multiply-accumulate; the rational scale is divided out once per
// output term.
SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.is_constant()) return b * a.terms().front().second;
    if (b.is_constant()) return a * b.terms().front().second;
    if (a.degree() + b.degree() > Monomial::max_degree) throw std::overflow_error("SparsePoly: degree overflow");

    const IntegerForm fa = integer_form(a);
    const IntegerForm fb = integer_form(b);
    const bool real = fa.real && fb.real;

    struct Acc {
        mpz_class re;
        mpz_class im;
    };
    std::unordered_map<std::uint64_t, std::size_t> index;
    index.reserve(std::min<std::size_t>(a.size() * b.size(), 1u << 22));
    std::vector<std::pair<std::uint64_t, Acc>> acc;
    acc.reserve(index.bucket_count());

    for (const auto& ea : fa.entries) {
        const bool a_re = sgn(ea.re) != 0;
        const bool a_im = sgn(ea.im) != 0;
        for (const auto& eb : fb.entries) {
            const std::uint64_t key = ea.key + eb.key;
            auto [it, inserted] = index.try_emplace(key, acc.size());
            if (inserted) acc.emplace_back(key, Acc{});
            Acc& slot = acc[it->second].second;
            if (real) {
                mpz_addmul(slot.re.get_mpz_t(), ea.re.get_mpz_t(), eb.re.get_mpz_t());
                continue;
            }
            const bool b_re = sgn(eb.re) != 0;
            const bool b_im = sgn(eb.im) != 0;
            if (a_re && b_re) mpz_addmul(slot.re.get_mpz_t(), ea.re.get_mpz_t(), eb.re.get_mpz_t());
            if (a_im && b_im) mpz_submul(slot.re.get_mpz_t(), ea.im.get_mpz_t(), eb.im.get_mpz_t());
            if (a_re && b_im) mpz_addmul(slot.im.get_mpz_t(), ea.re.get_mpz_t(), eb.im.get_mpz_t());
            if (a_im && b_re) mpz_addmul(slot.im.get_mpz_t(), ea.im.get_mpz_t(), eb.re.get_mpz_t());
        }
    }

    const mpz_class scale = fa.denominator * fb.denominator;
    std::vector<SparsePoly::Term> terms;
    terms.reserve(acc.size());
    for (auto& [key, slot] : acc) {
        if (sgn(slot.re) == 0 && sgn(slot.im) == 0) continue;
        mpq_class re(slot.re, scale);
        mpq_class im(slot.im, scale);
        terms.emplace_back(Monomial::from_key(key), GaussRational(std::move(re), std::move(im)));
    }
    std::sort(terms.begin(), terms.end(), descending);
    SparsePoly r;
    r.terms_ = std::move(terms);
    return r;
}

bool operator==(const SparsePoly& a, const SparsePoly& b) { return a.terms_ == b.terms_; }

SparsePoly SparsePoly::pow(unsigned e) const {
    SparsePoly result(1);
    SparsePoly base = *this;
    while (e != 0) {
        if (e & 1u) result = result * base;
        e >>= 1;
        if (e != 0) base = base * base;
    }
    return result;
}

SparsePoly SparsePoly::diff(Var v) const {
    // Lowering one exponent by 1 on every surviving term preserves grlex order.
    SparsePoly r;
    for (const auto& [m, c] : terms_) {
        const unsigned e = m.exponent(v);
        if (e == 0) continue;
        const Monomial lowered(m.ex() - (v == Var::x), m.ey() - (v == Var::y), m.es() - (v == Var::s));
        r.terms_.emplace_back(lowered, c * GaussRational(static_cast<long>(e)));
    }
    return r;
}

SparsePoly SparsePoly::conj() const {
    SparsePoly r = *this;
    for (auto& t : r.terms_) t.second = t.second.conj();
    return r;
}

SparsePoly SparsePoly::real_part() const {
    SparsePoly r;
    for (const auto& [m, c] : terms_)
        if (sgn(c.re()) != 0) r.terms_.emplace_back(m, GaussRational(c.re()));
    return r;
}

SparsePoly SparsePoly::imag_part() const {
    SparsePoly r;
    for (const auto& [m, c] : terms_)
        if (sgn(c.im()) != 0) r.terms_.emplace_back(m, GaussRational(c.im()));
    return r;
}

bool SparsePoly::is_real() const noexcept {
    return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.second.is_real(); });
}

SparsePoly SparsePoly::substitute(Var v, const SparsePoly& replacement) const {
    const unsigned top = degree_in(v);
    std::vector<SparsePoly> powers{SparsePoly(1)};
    for (unsigned k = 1; k <= top; ++k) powers.push_back(powers.back() * replacement);
    std::vector<Term> rest;
    SparsePoly result;
    for (const auto& [m, c] : terms_) {
        const unsigned e = m.exponent(v);
        const Monomial stripped(v == Var::x ? 0 : m.ex(), v == Var::y ? 0 : m.ey(), v == Var::s ? 0 : m.es());
        if (e == 0) {
            rest.emplace_back(stripped, c);
        } else {
            result += term(stripped, c) * powers[e];
        }
    }
    return result + from_terms(std::move(rest));
}

SparsePoly SparsePoly::swap_xy() const {
    std::vector<Term> t;
    t.reserve(terms_.size());
    for (const auto& [m, c] : terms_) t.emplace_back(Monomial(m.ey(), m.ex(), m.es()), c);
    return from_terms(std::move(t));
}

SparsePoly SparsePoly::homogeneous_part(unsigned d) const {
    SparsePoly r;
    for (const auto& t : terms_)
        if (t.first.degree() == d) r.terms_.push_back(t);
    return r;
}

GaussRational SparsePoly::eval(const GaussRational& x, const GaussRational& y, const GaussRational& s) const {
    auto table = [](const GaussRational& v, unsigned n) {
        std::vector<GaussRational> p{GaussRational(1)};
        for (unsigned k = 1; k <= n; ++k) p.push_back(p.back() * v);
        return p;
    };
    const auto px = table(x, degree_in(Var::x));
    const auto py = table(y, degree_in(Var::y));
    const auto ps = table(s, degree_in(Var::s));
    GaussRational sum;
    for (const auto& [m, c] : terms_) sum += c * px[m.ex()] * py[m.ey()] * ps[m.es()];
    return sum;
}

int SparsePoly::compare(const SparsePoly& a, const SparsePoly& b) {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t k = 0; k < n; ++k) {
        const auto& [ma, ca] = a.terms_[k];
        const auto& [mb, cb] = b.terms_[k];
        if (ma != mb) return ma > mb ? 1 : -1;
        if (int c = GaussRational::compare(ca, cb); c != 0) return c;
    }
    if (a.size() == b.size()) return 0;
    return a.size() > b.size() ? 1 : -1;
}

std::string SparsePoly::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        GaussRational coeff = c;
        bool negative = false;
        // Pull a leading minus out of purely real or purely imaginary coefficients.
        if ((c.is_real() && sgn(c.re()) < 0) || (sgn(c.re()) == 0 && sgn(c.im()) < 0)) {
            negative = true;
            coeff = -c;
        }
        if (first) {
            if (negative) out += "-";
        } else {
            out += negative ? " - " : " + ";
        }
        first = false;

        std::string vars;
        auto add_var = [&vars](const char* name, unsigned e) {
            if (e == 0) return;
            if (!vars.empty()) vars += "*";
            vars += name;
            if (e > 1) vars += "^" + std::to_string(e);
        };
        add_var("x", m.ex());
        add_var("y", m.ey());
        add_var("s", m.es());

        const bool compound = sgn(coeff.re()) != 0 && sgn(coeff.im()) != 0;
        std::string ctext = coeff.to_string();
        if (compound) ctext = "(" + ctext + ")";
        if (vars.empty()) {
            out += ctext;
        } else if (coeff == GaussRational(1)) {
            out += vars;
        } else {
            out += ctext + "*" + vars;
        }
    }
    return out;
}

}  // namespace mnv
