#include "kgcert/rational_function.hpp"

#include <algorithm>

namespace kgcert {

QPoly::QPoly(std::vector<Coeff> coeffs) : c_(std::move(coeffs)) { trim(); }

QPoly QPoly::monomial(std::size_t deg, const Coeff& c) {
    std::vector<Coeff> v(deg + 1, Coeff(0));
    v[deg] = c;
    return QPoly(std::move(v));
}

void QPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

std::int64_t QPoly::low_degree() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0) return static_cast<std::int64_t>(i);
    throw DomainError("low degree of the zero polynomial");
}

QPoly QPoly::shift_down(std::size_t k) const {
    for (std::size_t i = 0; i < std::min(k, c_.size()); ++i)
        if (c_[i] != 0) throw DomainError("shift_down would drop a nonzero coefficient");
    if (k >= c_.size()) return {};
    return QPoly(std::vector<Coeff>(c_.begin() + static_cast<std::ptrdiff_t>(k), c_.end()));
}

QPoly QPoly::monic() const {
    if (is_zero()) return {};
    QPoly r = *this;
    Coeff l = lead();
    for (auto& x : r.c_) x /= l;
    return r;
}

QPoly operator+(const QPoly& a, const QPoly& b) {
    std::vector<Coeff> v(std::max(a.c_.size(), b.c_.size()), Coeff(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
    return QPoly(std::move(v));
}

QPoly QPoly::operator-() const {
    QPoly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

QPoly operator-(const QPoly& a, const QPoly& b) { return a + (-b); }

QPoly operator*(const QPoly& a, const QPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Coeff> v(a.c_.size() + b.c_.size() - 1, Coeff(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        if (a.c_[i] != 0)
            for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    return QPoly(std::move(v));
}

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
    if (b.is_zero()) throw DomainError("polynomial division by zero");
    QPoly q, r = a;
    while (!r.is_zero() && r.degree() >= b.degree()) {
        auto shift = static_cast<std::size_t>(r.degree() - b.degree());
        QPoly term = QPoly::monomial(shift, r.lead() / b.lead());
        q = q + term;
        r = r - term * b;
    }
    return {q, r};
}

QPoly gcd(QPoly a, QPoly b) {
    while (!b.is_zero()) {
        QPoly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

// ---------------------------------------------------------------- Q(t)

RationalFunction::RationalFunction(QPoly num, QPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DomainError("zero denominator");
    if (num_.is_zero()) {
        den_ = QPoly::constant(1);
        return;
    }
    QPoly g = gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = divmod(num_, g).first;
        den_ = divmod(den_, g).first;
    }
    Coeff l = den_.lead();
    if (l != 1) {
        num_ = num_ * QPoly::constant(1 / l);
        den_ = den_.monic();
    }
}

RationalFunction RationalFunction::t_power(std::int64_t n) {
    if (n >= 0) return RationalFunction(QPoly::monomial(static_cast<std::size_t>(n), 1), QPoly::constant(1));
    return RationalFunction(QPoly::constant(1), QPoly::monomial(static_cast<std::size_t>(-n), 1));
}

RationalFunction RationalFunction::from_laurent(const LaurentPoly& f) {
    if (f.ring().num_vars() != 1) throw SignatureError("Q(t) needs a univariate polynomial");
    if (f.is_zero()) return {};
    std::int64_t low = kgcert::valuation(f);
    std::int64_t shift = low < 0 ? -low : 0;
    std::vector<Coeff> v(static_cast<std::size_t>(kgcert::degree(f) + shift + 1), Coeff(0));
    for (const auto& [e, c] : f.terms()) v[static_cast<std::size_t>(e[0] + shift)] = c;
    return RationalFunction(QPoly(std::move(v)), QPoly::monomial(static_cast<std::size_t>(shift), 1));
}

std::int64_t RationalFunction::valuation() const {
    if (is_zero()) throw DomainError("valuation of zero is undefined");
    return num_.low_degree() - den_.low_degree();
}

bool RationalFunction::is_laurent() const {
    return den_.degree() == den_.low_degree();
}

LaurentPoly RationalFunction::to_laurent() const {
    if (!is_laurent()) throw DomainError("not a Laurent polynomial: " + to_string(*this));
    Ring q = Ring::univariate(CoeffDomain::Rational);
    LaurentPoly out(q);
    std::int64_t shift = den_.degree();
    for (std::size_t i = 0; i < num_.coeffs().size(); ++i)
        out += LaurentPoly::monomial(q, {static_cast<std::int64_t>(i) - shift}, num_.coeffs()[i]);
    return out;
}

LaurentPoly RationalFunction::expansion_below(std::int64_t bound) const {
    Ring q = Ring::univariate(CoeffDomain::Rational);
    LaurentPoly out(q);
    if (is_zero()) return out;
    std::int64_t v = valuation();
    if (bound <= v) return out;
    QPoly n0 = num_.shift_down(static_cast<std::size_t>(num_.low_degree()));
    QPoly d0 = den_.shift_down(static_cast<std::size_t>(den_.low_degree()));
    auto count = static_cast<std::size_t>(bound - v);
    std::vector<Coeff> s(count, Coeff(0));
    for (std::size_t k = 0; k < count; ++k) {
        Coeff acc = n0.coeff(k);
        for (std::size_t j = 1; j <= k; ++j) acc -= d0.coeff(j) * s[k - j];
        s[k] = acc / d0.coeff(0);
        out += LaurentPoly::monomial(q, {v + static_cast<std::int64_t>(k)}, s[k]);
    }
    return out;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw DomainError("division by zero in Q(t)");
    return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
}

std::string to_string(const RationalFunction& f) {
    auto poly_text = [](const QPoly& p) {
        Ring q = Ring::univariate(CoeffDomain::Rational);
        LaurentPoly l(q);
        for (std::size_t i = 0; i < p.coeffs().size(); ++i)
            l += LaurentPoly::monomial(q, {static_cast<std::int64_t>(i)}, p.coeffs()[i]);
        return to_string(l);
    };
    if (f.den() == QPoly::constant(1)) return poly_text(f.num());
    return "(" + poly_text(f.num()) + ")/(" + poly_text(f.den()) + ")";
}

}  // namespace kgcert
