#ifndef KGCERT_TESTS_GENERATORS_HPP
#define KGCERT_TESTS_GENERATORS_HPP

#include <random>

#include "kgcert/amalgam.hpp"
#include "kgcert/bt_tree.hpp"

namespace kgtest {

using namespace kgcert;

inline std::int64_t uniform(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline LaurentPoly random_poly(std::mt19937_64& rng, const Ring& ring, int max_terms = 4, std::int64_t span = 2,
                               std::int64_t coeff = 5) {
    LaurentPoly f(ring);
    int terms = static_cast<int>(uniform(rng, 0, max_terms));
    for (int i = 0; i < terms; ++i) {
        ExponentVector e(ring.num_vars());
        for (auto& x : e) x = uniform(rng, -span, span);
        f += LaurentPoly::monomial(ring, e, Coeff(static_cast<long>(uniform(rng, -coeff, coeff))));
    }
    return f;
}

inline LaurentPoly random_rational_poly(std::mt19937_64& rng, const Ring& ring, int max_terms = 4,
                                        std::int64_t lo = -2, std::int64_t hi = 2) {
    LaurentPoly f(ring);
    int terms = static_cast<int>(uniform(rng, 0, max_terms));
    for (int i = 0; i < terms; ++i) {
        ExponentVector e(ring.num_vars());
        for (auto& x : e) x = uniform(rng, lo, hi);
        Coeff c(static_cast<long>(uniform(rng, -6, 6)), static_cast<unsigned long>(uniform(rng, 1, 3)));
        c.canonicalize();
        f += LaurentPoly::monomial(ring, e, c);
    }
    return f;
}

/// Palindromic: involution-invariant.
inline LaurentPoly random_symmetric(std::mt19937_64& rng, const Ring& ring) {
    LaurentPoly f = random_poly(rng, ring, 2, 1, 3);
    return f + involution(f) + LaurentPoly::constant(ring, static_cast<long>(uniform(rng, -2, 2)));
}

inline CycleClass random_w(std::mt19937_64& rng, int genus, int max_terms = 3) {
    CycleClass w(genus);
    auto gens = comm_generators(genus);
    if (gens.empty()) return w;
    int terms = static_cast<int>(uniform(rng, 0, max_terms));
    for (int i = 0; i < terms; ++i) {
        const auto& g = gens[static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(gens.size()) - 1))];
        w.add(g, random_poly(rng, w.ring(), 2, 1, 3));
    }
    return w;
}

/// M = R S, N = R T with R(1) = 0 and S, T involution-invariant, so that
/// M̄N = N̄M and the lift passes validation.
inline LiftClass random_valid_lift(std::mt19937_64& rng, int genus, bool with_w = true) {
    Ring ring = Ring::genus(genus);
    LaurentPoly r = random_poly(rng, ring, 3, 2, 4);
    r -= LaurentPoly::constant(ring, evaluate_at_one(r));
    LaurentPoly s = random_symmetric(rng, ring), t = random_symmetric(rng, ring);
    CycleClass w = with_w ? random_w(rng, genus) : CycleClass(genus);
    return LiftClass(genus, w, r * s, r * t);
}

inline CycleClass random_cycle(std::mt19937_64& rng, int genus) {
    CycleClass x = random_w(rng, genus);
    Ring ring = Ring::genus(genus);
    x.add(Generator::a1(), random_poly(rng, ring, 2, 1, 3));
    x.add(Generator::b1(), random_poly(rng, ring, 2, 1, 3));
    return x;
}

inline EpsilonTable random_eps(std::mt19937_64& rng, int genus) { return EpsilonTable::random(genus, rng); }

// ---------------------------------------------------------------- SL2 samples over Q[t, t^-1]

inline const Ring& qring() {
    static const Ring r = Ring::univariate(CoeffDomain::Rational);
    return r;
}

inline Matrix2 upper(const LaurentPoly& p) {
    const Ring& q = p.ring();
    return Matrix2(LaurentPoly::constant(q, 1), p, LaurentPoly(q), LaurentPoly::constant(q, 1));
}

inline Matrix2 lower(const LaurentPoly& p) {
    const Ring& q = p.ring();
    return Matrix2(LaurentPoly::constant(q, 1), LaurentPoly(q), p, LaurentPoly::constant(q, 1));
}

inline Matrix2 scalar_diag(const Coeff& c) {
    const Ring& q = qring();
    return Matrix2(LaurentPoly::constant(q, c), LaurentPoly(q), LaurentPoly(q), LaurentPoly::constant(q, 1 / c));
}

inline Coeff random_unit_coeff(std::mt19937_64& rng) {
    Coeff c(static_cast<long>(uniform(rng, 1, 3)), static_cast<unsigned long>(uniform(rng, 1, 3)));
    c.canonicalize();
    return uniform(rng, 0, 1) ? c : Coeff(-c);
}

/// Element of A = SL2(Q[t]).
inline Matrix2 random_A(std::mt19937_64& rng, std::int64_t deg = 2) {
    const Ring& q = qring();
    Matrix2 m = scalar_diag(random_unit_coeff(rng));
    m = m * upper(random_rational_poly(rng, q, 3, 0, deg)) * lower(random_rational_poly(rng, q, 3, 0, deg));
    if (uniform(rng, 0, 1)) m = m * upper(random_rational_poly(rng, q, 2, 0, deg));
    return m;
}

/// Element of U: lower-left entry divisible by t.
inline Matrix2 random_U(std::mt19937_64& rng, std::int64_t deg = 2) {
    const Ring& q = qring();
    return scalar_diag(random_unit_coeff(rng)) * upper(random_rational_poly(rng, q, 3, 0, deg)) *
           lower(random_rational_poly(rng, q, 3, 1, deg));
}

/// Element of B = diag(t^-1, 1) A diag(t, 1).
inline Matrix2 random_B(std::mt19937_64& rng, std::int64_t deg = 2) {
    return diag_t(-1) * random_A(rng, deg) * diag_t(1);
}

/// Element of SL2(Q[t, t^-1]) with entries of degree at most about 4.
inline Matrix2 random_sl2(std::mt19937_64& rng) {
    const Ring& q = qring();
    Matrix2 m = upper(random_rational_poly(rng, q, 2, -2, 2)) * lower(random_rational_poly(rng, q, 2, -2, 2));
    std::int64_t e = uniform(rng, -1, 1);
    if (e != 0)
        m = m * Matrix2(LaurentPoly::monomial(q, {e}), LaurentPoly(q), LaurentPoly(q), LaurentPoly::monomial(q, {-e}));
    return m;
}

inline TreeVertex random_vertex(std::mt19937_64& rng) {
    TreeVertex v = act(random_sl2(rng), base_vertex());
    if (uniform(rng, 0, 1)) v = act(random_sl2(rng), v);
    return v;
}

/// Word of `length` letters alternating between random A and B elements.
inline std::vector<Matrix2> random_word(std::mt19937_64& rng, int length) {
    std::vector<Matrix2> w;
    bool a_side = uniform(rng, 0, 1) == 0;
    for (int i = 0; i < length; ++i, a_side = !a_side) w.push_back(a_side ? random_A(rng, 1) : random_B(rng, 1));
    return w;
}

}  // namespace kgtest

#endif
