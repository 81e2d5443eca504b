#include <doctest.h>

#include "kgcert/amalgam.hpp"
#include "kgcert/bt_tree.hpp"
#include "support/generators.hpp"

using namespace kgcert;

namespace {

const Ring Q = Ring::univariate(CoeffDomain::Rational);

Matrix2 M(const std::string& s) { return parse_matrix(s, Q); }

Matrix2 product(const std::vector<AmalgamLetter>& word) {
    Matrix2 p = Matrix2::identity(Q);
    for (const auto& l : word) p = p * l.matrix;
    return p;
}

void check_normal_form(const Matrix2& g) {
    auto word = amalgam_normal_form(g);
    REQUIRE_FALSE(word.empty());
    CHECK(product(word) == g.with_domain(CoeffDomain::Rational));
    for (std::size_t i = 0; i < word.size(); ++i) {
        CHECK((word[i].side == AmalgamLetter::Side::A ? in_A(word[i].matrix) : in_B(word[i].matrix)));
        if (i > 0) {
            CHECK(word[i].side != word[i - 1].side);
            CHECK_FALSE(in_U(word[i].matrix));
        }
    }
}

}  // namespace

TEST_CASE("membership predicates") {
    for (int k = 1; k <= 20; ++k) {
        CHECK(in_A(matrix_Mk(k)));
        CHECK_FALSE(in_U(matrix_Mk(k)));
        CHECK_FALSE(in_B(matrix_Mk(k)));
    }
    CHECK(in_B(matrix_N()));
    CHECK_FALSE(in_U(matrix_N()));
    CHECK_FALSE(in_A(matrix_N()));
    CHECK(in_U(Matrix2::identity(Q)));
    CHECK(in_U(M("[[1, 3/2 + t^4], [7*t, 1 + 21/2*t + 7*t^5]]")));
    CHECK(in_A(M("[[1/2, 0], [0, 2]]")));
    CHECK_THROWS_AS(in_A(M("[[t, 0], [0, 1]]")), DomainError);
    CHECK_THROWS_AS(in_B(M("[[2, 0], [0, 1]]")), DomainError);
    CHECK_THROWS_AS(in_U(parse_matrix("[[1, 0], [0, 1]]", Ring::genus(2))), SignatureError);
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 60; ++trial) {
        Matrix2 g = trial % 3 == 0 ? kgtest::random_A(rng) : trial % 3 == 1 ? kgtest::random_B(rng) : kgtest::random_sl2(rng);
        CHECK(in_U(g) == (in_A(g) && in_B(g)));
        CHECK(in_B(g) == in_A(diag_t(1) * g * diag_t(-1)));
    }
}

TEST_CASE("H cap A is trivial") {
    HCapAResult id = h_cap_a_forces_identity(Matrix2::identity(Q));
    CHECK(id.proven());
    REQUIRE_FALSE(id.trace.empty());
    CHECK(id.trace.back() == "matrix = I");
    HCapAResult n = h_cap_a_forces_identity(matrix_N());
    CHECK(n.status == HCapAResult::Status::NotInA);
    CHECK(n.trace.front().find("not in Q[t]") != std::string::npos);
    CHECK(h_cap_a_forces_identity(matrix_Mk(3)).status == HCapAResult::Status::NotBalancedForm);
    CHECK(h_cap_a_forces_identity(M("[[1, t], [0, 1]]")).status == HCapAResult::Status::NotBalancedForm);
    CHECK_THROWS_AS(h_cap_a_forces_identity(M("[[t, 0], [0, 1]]")), DomainError);
}

TEST_CASE("double cosets") {
    DoubleCosetWitness w23 = double_cosets_distinct(2, 3);
    CHECK(w23.distinct);
    CHECK_FALSE(w23.forced_u_in_U);
    CHECK(w23.lower_left_at_zero == "-1");
    CHECK_FALSE(double_cosets_distinct(5, 5).distinct);
    CHECK(double_cosets_distinct(5, 5).lower_left_at_zero == "0");
    DoubleCosetWitness w = double_cosets_distinct(1, 20);
    CHECK(w.distinct);
    CHECK(w.lower_left_at_zero == "-19");
    CHECK(w.forced_u == "[[1, 0], [-19, 1]]");
    bool mentions_t0 = false;
    for (const auto& line : w.trace) mentions_t0 = mentions_t0 || line.find("t=0") != std::string::npos;
    CHECK(mentions_t0);
    for (int k = 1; k <= 20; ++k)
        for (int l = 1; l <= 20; ++l) CHECK(double_cosets_distinct(k, l).distinct == (k != l));
    CHECK_THROWS_AS(double_cosets_distinct(0, 3), std::invalid_argument);
}

TEST_CASE("normal form examples") {
    auto id = amalgam_normal_form(Matrix2::identity(Q));
    REQUIRE(id.size() == 1);
    CHECK(id[0].side == AmalgamLetter::Side::A);
    auto n = amalgam_normal_form(matrix_N());
    REQUIRE(n.size() == 1);
    CHECK(n[0].side == AmalgamLetter::Side::B);
    CHECK(n[0].matrix == matrix_N().with_domain(CoeffDomain::Rational));
    for (int k = 1; k <= 5; ++k) {
        auto mk = amalgam_normal_form(matrix_Mk(k));
        REQUIRE(mk.size() == 1);
        CHECK(mk[0].side == AmalgamLetter::Side::A);
    }
    Matrix2 nmn = matrix_N() * matrix_Mk(1) * matrix_N();
    auto w = amalgam_normal_form(nmn);
    CHECK(w.size() == 3);
    CHECK(w[0].side == AmalgamLetter::Side::B);
    check_normal_form(nmn);
    CHECK_THROWS_AS(amalgam_normal_form(M("[[t, 0], [0, 1]]")), DomainError);
}

TEST_CASE("normal form on random words") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 40; ++trial) {
        auto letters = kgtest::random_word(rng, 1 + trial % 6);
        Matrix2 g = multiply(letters);
        check_normal_form(g);
        std::int64_t d = distance(base_vertex(), act(g, base_vertex()));
        CHECK(static_cast<std::int64_t>(amalgam_normal_form(g).size()) <= d + 1);
    }
    for (int trial = 0; trial < 20; ++trial) check_normal_form(kgtest::random_sl2(rng));
}

TEST_CASE("certificate") {
    Certificate c3 = build_certificate(3, 2);
    CHECK(c3.verdict);
    CHECK(c3.records.size() == 3);
    CHECK(c3.pairwise.size() == 3);
    CHECK(c3.first_failure().empty());
    for (const auto& r : c3.records) {
        CHECK(r.passed());
        REQUIRE(r.rho.has_value());
        CHECK(*r.rho == conjugated_N(r.k));
    }
    CHECK(build_certificate(20, 3).verdict);
    CHECK_THROWS_AS(build_certificate(1, 2), std::invalid_argument);
    CHECK_THROWS_AS(build_certificate(3, 1), std::invalid_argument);

    Json j = c3.to_json();
    CHECK(j.at("records").size() == 3);
    CHECK(j.at("records")[0].at("rho") == matrix_to_json(conjugated_N(1)));
    CHECK(j.at("pairwise")[0].at("distinct") == true);
    CHECK(check_certificate(j).ok);

    CertificateOptions serial;
    serial.parallel = false;
    CHECK(build_certificate(6, 3, serial).to_json() == build_certificate(6, 3).to_json());
}

TEST_CASE("certificate with a wrong base lift fails") {
    CertificateOptions opts;
    opts.base_lift = LiftClass::zero(2);
    Certificate c = build_certificate(3, 2, opts);
    CHECK_FALSE(c.verdict);
    CHECK_FALSE(c.base_rho_is_N);
    CHECK_FALSE(c.first_failure().empty());

    Ring r = Ring::genus(2);
    opts.base_lift = LiftClass(2, CycleClass(2), parse_poly("1", r), parse_poly("s2", r));
    Certificate bad = build_certificate(3, 2, opts);
    CHECK_FALSE(bad.verdict);
    CHECK_FALSE(bad.records[0].lift_valid);
    CHECK_FALSE(check_certificate(bad.to_json()).ok);

    opts.base_lift = LiftClass::canonical(3);
    CHECK_THROWS_AS(build_certificate(3, 2, opts), std::invalid_argument);
}

TEST_CASE("certificate checker catches tampering") {
    Json j = build_certificate(4, 2).to_json();
    REQUIRE(check_certificate(j).ok);

    Json m = j;
    m["records"][2]["lift"]["n"]["0,0"] = -4;
    CHECK_FALSE(check_certificate(m).ok);

    m = j;
    m["records"][1]["rho"]["b"] = "t";
    CHECK_FALSE(check_certificate(m).ok);

    m = j;
    m["pairwise"][0]["distinct"] = false;
    CHECK_FALSE(check_certificate(m).ok);

    m = j;
    m["records"].erase(3);
    CHECK_FALSE(check_certificate(m).ok);

    m = j;
    m["verdict"] = false;
    CHECK_FALSE(check_certificate(m).ok);

    m = j;
    m["records"][0]["lift"] = "garbage";
    CHECK_FALSE(check_certificate(m).ok);
}
