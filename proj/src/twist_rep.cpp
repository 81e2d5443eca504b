#include "kgcert/twist_rep.hpp"

#include <cctype>

namespace kgcert {

Matrix2::Matrix2(LaurentPoly a, LaurentPoly b, LaurentPoly c, LaurentPoly d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    if (!(a_.ring() == b_.ring() && a_.ring() == c_.ring() && a_.ring() == d_.ring()))
        throw SignatureError("matrix entries must share a ring");
}

Matrix2 Matrix2::identity(const Ring& ring) {
    auto one = LaurentPoly::constant(ring, 1);
    LaurentPoly zero(ring);
    return Matrix2(one, zero, zero, one);
}

Matrix2 Matrix2::inverse() const {
    LaurentPoly det = this->det();
    if (!det.is_unit()) throw DomainError("matrix is not invertible over the Laurent ring");
    LaurentPoly inv = det.pow(-1);
    return Matrix2(inv * d_, -(inv * b_), -(inv * c_), inv * a_);
}

Matrix2 Matrix2::with_domain(CoeffDomain dom) const {
    return Matrix2(a_.with_domain(dom), b_.with_domain(dom), c_.with_domain(dom), d_.with_domain(dom));
}

Matrix2 operator*(const Matrix2& x, const Matrix2& y) {
    return Matrix2(x.a_ * y.a_ + x.b_ * y.c_, x.a_ * y.b_ + x.b_ * y.d_, x.c_ * y.a_ + x.d_ * y.c_,
                   x.c_ * y.b_ + x.d_ * y.d_);
}

std::string to_string(const Matrix2& m) {
    return "[[" + to_string(m.a()) + ", " + to_string(m.b()) + "], [" + to_string(m.c()) + ", " + to_string(m.d()) +
           "]]";
}

Matrix2 parse_matrix(std::string_view text, const Ring& ring) {
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto expect = [&](char c) {
        skip();
        if (pos >= text.size() || text[pos] != c)
            throw ParseError(pos, std::string("expected '") + c + "' in matrix literal");
        ++pos;
    };
    auto entry = [&](char terminator) {
        skip();
        std::size_t start = pos;
        int depth = 0;
        while (pos < text.size()) {
            char c = text[pos];
            if (c == '(') ++depth;
            if (c == ')') --depth;
            if (depth == 0 && (c == ',' || c == ']')) break;
            ++pos;
        }
        if (pos >= text.size() || text[pos] != terminator)
            throw ParseError(pos, std::string("expected '") + terminator + "' in matrix literal");
        try {
            LaurentPoly p = parse_poly(text.substr(start, pos - start), ring);
            ++pos;
            return p;
        } catch (const ParseError& e) {
            throw ParseError(start + e.position(), e.detail());
        }
    };
    expect('[');
    expect('[');
    LaurentPoly a = entry(',');
    LaurentPoly b = entry(']');
    expect(',');
    expect('[');
    LaurentPoly c = entry(',');
    LaurentPoly d = entry(']');
    expect(']');
    skip();
    if (pos != text.size()) throw ParseError(pos, "trailing input after matrix literal");
    return Matrix2(a, b, c, d);
}

Json matrix_to_json(const Matrix2& m) {
    return Json{{"a", to_string(m.a())}, {"b", to_string(m.b())}, {"c", to_string(m.c())}, {"d", to_string(m.d())}};
}

Matrix2 matrix_from_json(const Json& j, const Ring& ring) {
    auto get = [&](const char* key) { return parse_poly(j.at(key).get<std::string>(), ring); };
    return Matrix2(get("a"), get("b"), get("c"), get("d"));
}

Matrix2 multiply(std::span<const Matrix2> ms) {
    if (ms.empty()) throw std::invalid_argument("multiply needs at least one matrix");
    Matrix2 acc = ms.front();
    for (std::size_t i = 1; i < ms.size(); ++i) acc = acc * ms[i];
    return acc;
}

Matrix2 matrix_N() {
    Ring l = Ring::univariate();
    LaurentPoly t = LaurentPoly::variable(l, 0);
    LaurentPoly f = t - LaurentPoly::constant(l, 2) + t.pow(-1);
    return Matrix2(LaurentPoly::constant(l, 1), f, LaurentPoly(l), LaurentPoly::constant(l, 1));
}

Matrix2 matrix_Mk(std::int64_t k) {
    if (k < 1) throw std::invalid_argument("M_k needs k >= 1");
    Ring l = Ring::univariate();
    return Matrix2(LaurentPoly::constant(l, 1), LaurentPoly(l), LaurentPoly::constant(l, Coeff(static_cast<long>(k))),
                   LaurentPoly::constant(l, 1));
}

Matrix2 conjugated_N(std::int64_t k) {
    Matrix2 mk = matrix_Mk(k);
    return mk * matrix_N() * mk.inverse();
}

Matrix2 HFormReport::reconstruct() const {
    auto one = LaurentPoly::constant(p1.ring(), 1);
    return Matrix2(one + p1, q1, q2, one - p2);
}

HFormReport h_form(const Matrix2& m) {
    auto one = LaurentPoly::constant(m.ring(), 1);
    HFormReport r{m.a() - one, m.b(), m.c(), one - m.d(), {}};
    r.balanced = {is_balanced(r.p1), is_balanced(r.q1), is_balanced(r.q2), is_balanced(r.p2)};
    return r;
}

Matrix2 rho_pre_phi(const LiftClass& lift) {
    if (auto v = validate_lift(lift); !v.ok()) throw PreconditionError("invalid lift: " + v.message);
    const LaurentPoly& m = lift.m();
    const LaurentPoly& n = lift.n();
    LaurentPoly mbar = involution(m), nbar = involution(n);
    auto one = LaurentPoly::constant(m.ring(), 1);
    return Matrix2(one + nbar * m, -(mbar * m), nbar * n, one - mbar * n);
}

Matrix2 rho(const LiftClass& lift) {
    Matrix2 pre = rho_pre_phi(lift);
    RingHom phi = phi_hom(lift.genus());
    return Matrix2(phi(pre.a()), phi(pre.b()), phi(pre.c()), phi(pre.d()));
}

Matrix2 rho_via_twist(const LiftClass& lift, const EpsilonTable& eps) {
    int g = lift.genus();
    Ring ring = Ring::genus(g);
    auto one = LaurentPoly::constant(ring, 1);
    CycleClass ia = twist_apply(lift, CycleClass::of(g, Generator::a1(), one), eps);
    CycleClass ib = twist_apply(lift, CycleClass::of(g, Generator::b1(), one), eps);
    RingHom phi = phi_hom(g);
    return Matrix2(phi(ia.coeff(Generator::a1())), phi(ib.coeff(Generator::a1())), phi(ia.coeff(Generator::b1())),
                   phi(ib.coeff(Generator::b1())));
}

}  // namespace kgcert
