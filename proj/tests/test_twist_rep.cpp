#include <doctest.h>

#include "kgcert/twist_rep.hpp"
#include "support/generators.hpp"

using namespace kgcert;

namespace {

const Ring L = Ring::univariate();

Matrix2 M(const std::string& s) { return parse_matrix(s, L); }

}  // namespace

TEST_CASE("named matrices") {
    CHECK(matrix_N() == M("[[1, t - 2 + t^-1], [0, 1]]"));
    CHECK(matrix_Mk(1) == M("[[1, 0], [1, 1]]"));
    CHECK(matrix_Mk(7).det() == LaurentPoly::constant(L, 1));
    CHECK_THROWS_AS(matrix_Mk(0), std::invalid_argument);
    CHECK_THROWS_AS(matrix_Mk(-2), std::invalid_argument);
    CHECK(to_string(matrix_N()) == "[[1, -2 + t + t^-1], [0, 1]]");
}

TEST_CASE("products") {
    Matrix2 n = matrix_N();
    CHECK(n * n == M("[[1, 2*(t - 2 + t^-1)], [0, 1]]"));
    CHECK(conjugated_N(2) == M("[[1 - 2*(t - 2 + t^-1), t - 2 + t^-1], [-4*(t - 2 + t^-1), 1 + 2*(t - 2 + t^-1)]]"));
    CHECK(h_form(conjugated_N(2)).all_balanced());
    Matrix2 g = M("[[t, 1 + t^2], [0, t^-1]]");
    CHECK(g * g.inverse() == Matrix2::identity(L));
    std::vector<Matrix2> seq{matrix_Mk(1), n, matrix_Mk(3)};
    CHECK(multiply(seq) == matrix_Mk(1) * n * matrix_Mk(3));
    CHECK(multiply(seq).det() == LaurentPoly::constant(L, 1));
    CHECK_THROWS(multiply(std::vector<Matrix2>{}));
    CHECK_THROWS_AS(M("[[1 + t, 0], [0, 1]]").inverse(), DomainError);
    CHECK_THROWS_AS(n * Matrix2::identity(Ring::genus(2)), SignatureError);
}

TEST_CASE("matrix parsing and JSON") {
    CHECK_THROWS_AS(M("[[1, 0], [0]]"), ParseError);
    CHECK_THROWS_AS(M("[1, 0, 0, 1]"), ParseError);
    CHECK_THROWS_AS(M("[[1, x], [0, 1]]"), ParseError);
    Json j = matrix_to_json(matrix_N());
    CHECK(j.dump() == R"({"a":"1","b":"-2 + t + t^-1","c":"0","d":"1"})");
    CHECK(matrix_from_json(j, L) == matrix_N());
    CHECK(parse_matrix(to_string(conjugated_N(5)), L) == conjugated_N(5));
}

TEST_CASE("h_form") {
    HFormReport n = h_form(matrix_N());
    CHECK(n.all_balanced());
    CHECK(n.p1.is_zero());
    CHECK(n.p2.is_zero());
    CHECK(n.q2.is_zero());
    CHECK(n.q1 == parse_poly("t - 2 + t^-1", L));
    CHECK(n.reconstruct() == matrix_N());
    HFormReport id = h_form(Matrix2::identity(L));
    CHECK(id.all_balanced());
    CHECK(id.p1.is_zero());
    HFormReport bad = h_form(M("[[1, t - 1], [0, 1]]"));
    CHECK_FALSE(bad.balanced[1]);
    CHECK(bad.balanced[0]);
    CHECK_FALSE(bad.all_balanced());
}

TEST_CASE("rho of the canonical curve") {
    for (int g = 2; g <= 5; ++g) {
        LiftClass star = LiftClass::canonical(g);
        Matrix2 pre = rho_pre_phi(star);
        Ring r = Ring::genus(g);
        CHECK(pre == Matrix2(LaurentPoly::constant(r, 1), parse_poly("t2 - 2 + t2^-1", r), LaurentPoly(r),
                             LaurentPoly::constant(r, 1)));
        CHECK(rho(star) == matrix_N());
        CHECK(rho_via_twist(star, {}) == matrix_N());
    }
    CHECK(rho(LiftClass::zero(3)) == Matrix2::identity(L));
    for (int k = 1; k <= 5; ++k) CHECK(rho(pushforward_b1_twist(LiftClass::canonical(2), k)) == conjugated_N(k));
}

TEST_CASE("rho rejects invalid lifts") {
    Ring r = Ring::genus(2);
    LiftClass bad(2, CycleClass(2), parse_poly("1", r), parse_poly("s2", r));
    CHECK_THROWS_AS(rho(bad), PreconditionError);
    CHECK_THROWS_AS(rho_pre_phi(bad), PreconditionError);
    CHECK_THROWS_AS(rho_via_twist(bad, {}), PreconditionError);
}

TEST_CASE("R1 = R2 holds exactly for valid lifts") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        int genus = 2 + trial % 3;
        LiftClass lift = kgtest::random_valid_lift(rng, genus);
        HFormReport pre = h_form(rho_pre_phi(lift));
        CHECK(pre.p1 == pre.p2);
    }
    // negative control: the same formulas on a lift failing the convolution identity
    Ring r = Ring::genus(2);
    LaurentPoly m = parse_poly("1 - s2", r), n = parse_poly("t2 - 1", r);
    CHECK_FALSE(involution(n) * m == involution(m) * n);
}

TEST_CASE("rho properties on random lifts") {
    std::mt19937_64 rng(77);
    std::vector<Matrix2> images;
    for (int trial = 0; trial < 40; ++trial) {
        int genus = 2 + trial % 3;
        LiftClass lift = kgtest::random_valid_lift(rng, genus);
        Matrix2 m = rho(lift);
        CHECK(m.det() == LaurentPoly::constant(L, 1));
        CHECK(h_form(m).all_balanced());
        CHECK(rho_via_twist(lift, {}) == m);
        if (genus > 2) CHECK(rho_via_twist(lift, kgtest::random_eps(rng, genus)) == m);
        images.push_back(m);
    }
    for (std::size_t i = 0; i + 3 < images.size(); i += 3) {
        Matrix2 prod = images[i] * images[i + 1].inverse() * images[i + 2] * images[i + 3];
        CHECK(h_form(prod).all_balanced());
        CHECK(prod.det() == LaurentPoly::constant(L, 1));
    }
}
