#include "kgcert/amalgam.hpp"

#include <future>
#include <sstream>

#include "kgcert/bt_tree.hpp"

namespace kgcert {

namespace {

const Ring kQ = Ring::univariate(CoeffDomain::Rational);

Matrix2 over_q(const Matrix2& m) {
    if (m.ring().num_vars() != 1) throw SignatureError("amalgam matrices must be univariate");
    return m.with_domain(CoeffDomain::Rational);
}

Matrix2 checked_sl2(const Matrix2& m) {
    Matrix2 q = over_q(m);
    if (!(q.det() == LaurentPoly::constant(kQ, 1)))
        throw DomainError("expected determinant 1, got " + to_string(q.det()));
    return q;
}

bool divisible_by_t(const LaurentPoly& f) { return f.is_zero() || valuation(f) >= 1; }

bool times_t_polynomial(const LaurentPoly& f) { return f.is_zero() || valuation(f) >= -1; }

}  // namespace

bool in_A(const Matrix2& m) {
    Matrix2 q = checked_sl2(m);
    return is_polynomial(q.a()) && is_polynomial(q.b()) && is_polynomial(q.c()) && is_polynomial(q.d());
}

bool in_B(const Matrix2& m) {
    Matrix2 q = checked_sl2(m);
    return is_polynomial(q.a()) && is_polynomial(q.d()) && times_t_polynomial(q.b()) && divisible_by_t(q.c());
}

bool in_U(const Matrix2& m) { return in_A(m) && divisible_by_t(over_q(m).c()); }

Matrix2 diag_t(std::int64_t e) {
    return Matrix2(LaurentPoly::monomial(kQ, {e}), LaurentPoly(kQ), LaurentPoly(kQ), LaurentPoly::constant(kQ, 1));
}

// ---------------------------------------------------------------- H ∩ A

HCapAResult h_cap_a_forces_identity(const Matrix2& m) {
    HCapAResult r;
    Matrix2 q = checked_sl2(m);
    const char* names[4] = {"P1", "Q1", "Q2", "P2"};
    const LaurentPoly* entries[4] = {&q.a(), &q.b(), &q.c(), &q.d()};
    for (int i = 0; i < 4; ++i)
        if (!is_polynomial(*entries[i])) {
            r.status = HCapAResult::Status::NotInA;
            r.trace.push_back(std::string("entry ") + "abcd"[i] + " = " + to_string(*entries[i]) + " is not in Q[t]");
            return r;
        }
    r.trace.push_back("all entries lie in Q[t], so the matrix is in A");

    HFormReport hf = h_form(q);
    const LaurentPoly* parts[4] = {&hf.p1, &hf.q1, &hf.q2, &hf.p2};
    if (!hf.all_balanced()) {
        r.status = HCapAResult::Status::NotBalancedForm;
        for (int i = 0; i < 4; ++i)
            if (!hf.balanced[i]) r.trace.push_back(std::string(names[i]) + " = " + to_string(*parts[i]) + " is not balanced");
        return r;
    }
    r.trace.push_back("P1, Q1, Q2, P2 are balanced");

    for (int i = 0; i < 4; ++i) {
        const LaurentPoly& p = *parts[i];
        // symmetric coefficients with no negative exponents leave only a constant
        for (const auto& [e, c] : p.terms())
            if (e[0] != 0) {
                r.status = HCapAResult::Status::Counterexample;
                r.trace.push_back(std::string(names[i]) + " has a nonconstant term despite balance");
                return r;
            }
        Coeff constant = p.coeff({0});
        if (constant != evaluate_at_one(p) || constant != 0) {
            r.status = HCapAResult::Status::Counterexample;
            r.trace.push_back(std::string(names[i]) + " is a nonzero constant despite vanishing at 1");
            return r;
        }
        r.trace.push_back(std::string(names[i]) + ": balanced and in Q[t], so constant, equal to its value at 1, so 0");
    }
    if (!(q == Matrix2::identity(kQ))) {
        r.status = HCapAResult::Status::Counterexample;
        r.trace.push_back("decomposition vanished but the matrix is not the identity");
        return r;
    }
    r.trace.push_back("matrix = I");
    return r;
}

// ---------------------------------------------------------------- double cosets

DoubleCosetWitness double_cosets_distinct(std::int64_t k, std::int64_t l) {
    if (k < 1 || l < 1) throw std::invalid_argument("double coset indices must be >= 1");
    DoubleCosetWitness w;
    w.k = k;
    w.l = l;
    Matrix2 mk = matrix_Mk(k).with_domain(CoeffDomain::Rational);
    Matrix2 ml = matrix_Mk(l).with_domain(CoeffDomain::Rational);

    w.trace.push_back("suppose M_" + std::to_string(k) + " = h M_" + std::to_string(l) + " u, h in H∩A, u in U");
    w.trace.push_back("h has balanced H-form with entries in Q[t], hence h = I");
    Matrix2 u = ml.inverse() * mk;
    w.forced_u = to_string(u);
    w.forced_u_in_U = in_U(u);
    w.trace.push_back("then u = M_l^-1 M_k = " + w.forced_u);

    Coeff u0 = eval_at_zero(u.a()), v0 = eval_at_zero(u.b()), w0 = eval_at_zero(u.c()), z0 = eval_at_zero(u.d());
    w.lower_left_at_zero = coeff_to_string(w0);
    std::ostringstream at0;
    at0 << "at t=0: M_k(0) = [[1, 0], [" << k << ", 1]], (M_l u)(0) = [[" << coeff_to_string(u0) << ", "
        << coeff_to_string(v0) << "], [" << coeff_to_string(Coeff(static_cast<long>(l)) * u0 + w0) << ", "
        << coeff_to_string(Coeff(static_cast<long>(l)) * v0 + z0) << "]]";
    w.trace.push_back(at0.str());
    w.trace.push_back("u in U needs its lower-left entry wt to vanish at t=0; it is " + w.lower_left_at_zero);
    w.distinct = !w.forced_u_in_U;
    w.trace.push_back(w.distinct ? "so k = l would be forced; the double cosets differ"
                                 : "u lies in U; the double cosets coincide");
    return w;
}

// ---------------------------------------------------------------- normal form

std::string to_string(AmalgamLetter::Side s) { return s == AmalgamLetter::Side::A ? "A" : "B"; }

namespace {

// Element of A (constant entries) carrying the adjacent vertex to x, a
// neighbour of the base.
Matrix2 neighbour_mover(const TreeVertex& x) {
    if (x == adjacent_vertex()) return Matrix2::identity(kQ);
    if (x.level != 1 || !x.offset.is_constant())
        throw std::logic_error("not a neighbour of the base vertex: " + to_string(x));
    Coeff c = x.offset.coeff({0});
    Matrix2 g(LaurentPoly::constant(kQ, c), LaurentPoly::constant(kQ, -1), LaurentPoly::constant(kQ, 1), LaurentPoly(kQ));
    if (!(act(g, adjacent_vertex()) == x)) throw std::logic_error("neighbour mover failed for " + to_string(x));
    return g;
}

Matrix2 diag_t_inverse(std::int64_t e) {
    return Matrix2(LaurentPoly::monomial(kQ, {-e}), LaurentPoly(kQ), LaurentPoly(kQ), LaurentPoly::constant(kQ, 1));
}

bool is_identity(const Matrix2& m) { return m == Matrix2::identity(m.ring()); }

void reduce(std::vector<AmalgamLetter>& w) {
    using Side = AmalgamLetter::Side;
    bool changed = true;
    while (changed && w.size() > 1) {
        changed = false;
        for (std::size_t i = 1; i < w.size(); ++i)
            if (in_U(w[i].matrix)) {
                w[i - 1].matrix = w[i - 1].matrix * w[i].matrix;
                w.erase(w.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
            }
        if (changed) continue;
        for (std::size_t i = 1; i < w.size(); ++i)
            if (w[i].side == w[i - 1].side) {
                w[i - 1].matrix = w[i - 1].matrix * w[i].matrix;
                w.erase(w.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
            }
        if (changed) continue;
        if (w.size() > 1 && in_U(w[0].matrix)) {
            w[1].matrix = w[0].matrix * w[1].matrix;
            w.erase(w.begin());
            changed = true;
        }
    }
    if (w.size() == 1) w[0].side = in_A(w[0].matrix) ? Side::A : Side::B;
}

}  // namespace

std::vector<AmalgamLetter> amalgam_normal_form(const Matrix2& m) {
    using Side = AmalgamLetter::Side;
    Matrix2 h = checked_sl2(m);
    const TreeVertex v0 = base_vertex();
    const Matrix2 d = diag_t(1), dinv = diag_t_inverse(1);
    const Matrix2 n0_inv = neighbour_mover(canonical_vertex(RMatrix2::from(d))).inverse();

    std::vector<AmalgamLetter> word;
    std::int64_t remaining = distance(v0, act(h, v0));
    while (remaining > 0) {
        std::vector<TreeVertex> path = geodesic(v0, act(h, v0));
        Matrix2 a = neighbour_mover(path[1]);
        word.push_back({Side::A, a});
        h = a.inverse() * h;

        // the geodesic from the base now leaves through the adjacent vertex
        path = geodesic(v0, act(h, v0));
        TreeVertex dy = canonical_vertex(RMatrix2::from(d) * path[2].matrix());
        Matrix2 b = dinv * neighbour_mover(dy) * n0_inv * d;
        word.push_back({Side::B, b});
        h = b.inverse() * h;

        std::int64_t next = distance(v0, act(h, v0));
        if (next != remaining - 2) throw std::logic_error("normal form walk did not shorten the geodesic");
        remaining = next;
    }
    word.push_back({Side::A, h});
    if (word.size() > 1 && is_identity(word.front().matrix)) word.erase(word.begin());
    reduce(word);
    return word;
}

// ---------------------------------------------------------------- certificate

bool CertificateRecord::passed() const {
    return lift_valid && conjugation_ok && twist_route_ok && det_one && rho_balanced && mk_in_a_minus_u &&
           n_in_b_minus_u;
}

namespace {

CertificateRecord make_record(const LiftClass& base, bool base_valid, std::int64_t k, const EpsilonTable& eps) {
    CertificateRecord r{.k = k, .lift = base_valid ? pushforward_b1_twist(base, k) : base, .rho = std::nullopt, .lift_status = {}};
    LiftValidation v = validate_lift(r.lift);
    r.lift_status = v.message;
    r.lift_valid = v.ok();
    Matrix2 mk = matrix_Mk(k);
    r.mk_in_a_minus_u = in_A(mk) && !in_U(mk);
    r.n_in_b_minus_u = in_B(matrix_N()) && !in_U(matrix_N());
    if (!r.lift_valid) return r;
    Matrix2 image = rho(r.lift);
    r.rho = image;
    r.conjugation_ok = image == conjugated_N(k);
    r.twist_route_ok = rho_via_twist(r.lift, eps) == image;
    r.det_one = image.det() == LaurentPoly::constant(image.ring(), 1);
    r.rho_balanced = h_form(image).all_balanced();
    return r;
}

std::string pairwise_witness(const DoubleCosetWitness& w) {
    return "u = " + w.forced_u + ", lower-left at t=0 = " + w.lower_left_at_zero;
}

Json record_json(const CertificateRecord& r) {
    Json j;
    j["k"] = r.k;
    j["lift"] = r.lift.to_json();
    j["lift_status"] = r.lift_status;
    j["rho"] = r.rho ? matrix_to_json(*r.rho) : Json(nullptr);
    j["target"] = matrix_to_json(conjugated_N(r.k));
    j["conjugation_ok"] = r.conjugation_ok;
    j["memberships"] = Json{{"lift_valid", r.lift_valid},
                            {"det_one", r.det_one},
                            {"rho_balanced", r.rho_balanced},
                            {"twist_route_ok", r.twist_route_ok},
                            {"Mk_in_A_minus_U", r.mk_in_a_minus_u},
                            {"N_in_B_minus_U", r.n_in_b_minus_u}};
    return j;
}

}  // namespace

Certificate build_certificate(std::int64_t kmax, int genus, const CertificateOptions& options) {
    if (kmax < 2) throw std::invalid_argument("kmax must be at least 2 to compare double cosets");
    if (genus < 2) throw std::invalid_argument("genus must be at least 2");
    LiftClass base = options.base_lift.value_or(LiftClass::canonical(genus));
    if (base.genus() != genus) throw std::invalid_argument("base lift genus does not match");

    Certificate cert;
    cert.kmax = kmax;
    cert.genus = genus;
    bool base_valid = validate_lift(base).ok();
    cert.base_rho_is_N = base_valid && rho(base) == matrix_N();

    if (options.parallel) {
        std::vector<std::future<CertificateRecord>> jobs;
        for (std::int64_t k = 1; k <= kmax; ++k)
            jobs.push_back(std::async(std::launch::async, make_record, std::cref(base), base_valid, k,
                                      std::cref(options.eps)));
        for (auto& f : jobs) cert.records.push_back(f.get());
    } else {
        for (std::int64_t k = 1; k <= kmax; ++k) cert.records.push_back(make_record(base, base_valid, k, options.eps));
    }

    for (std::int64_t k = 1; k <= kmax; ++k)
        for (std::int64_t l = k + 1; l <= kmax; ++l) {
            DoubleCosetWitness w = double_cosets_distinct(k, l);
            cert.pairwise.push_back({k, l, w.distinct, pairwise_witness(w)});
        }

    cert.verdict = cert.base_rho_is_N;
    for (const auto& r : cert.records) cert.verdict = cert.verdict && r.passed();
    for (const auto& p : cert.pairwise) cert.verdict = cert.verdict && p.distinct;
    return cert;
}

std::string Certificate::first_failure() const {
    if (!base_rho_is_N) return "base lift does not map to N";
    for (const auto& r : records)
        if (!r.passed()) return "record k=" + std::to_string(r.k) + " failed: " + record_json(r).dump();
    for (const auto& p : pairwise)
        if (!p.distinct) return "double cosets for k=" + std::to_string(p.k) + ", l=" + std::to_string(p.l) + " coincide";
    return {};
}

Json Certificate::to_json() const {
    Json j;
    j["kmax"] = kmax;
    j["genus"] = genus;
    j["base_rho_is_N"] = base_rho_is_N;
    Json recs = Json::array();
    for (const auto& r : records) recs.push_back(record_json(r));
    j["records"] = recs;
    Json pw = Json::array();
    for (const auto& p : pairwise) pw.push_back(Json{{"k", p.k}, {"l", p.l}, {"distinct", p.distinct}, {"witness", p.witness}});
    j["pairwise"] = pw;
    j["verdict"] = verdict;
    return j;
}

CertificateCheck check_certificate(const Json& cert, const EpsilonTable& eps) {
    CertificateCheck out;
    auto fail = [&](std::string msg) { out.failures.push_back(std::move(msg)); };
    try {
        std::int64_t kmax = cert.at("kmax").get<std::int64_t>();
        int genus = cert.at("genus").get<int>();
        if (kmax < 2 || genus < 2) fail("kmax and genus must be at least 2");
        const Json& recs = cert.at("records");
        if (static_cast<std::int64_t>(recs.size()) != kmax) fail("expected " + std::to_string(kmax) + " records");
        Ring z = Ring::univariate();
        for (std::size_t idx = 0; idx < recs.size(); ++idx) {
            const Json& rj = recs[idx];
            std::int64_t k = rj.at("k").get<std::int64_t>();
            std::string tag = "record k=" + std::to_string(k) + ": ";
            if (k != static_cast<std::int64_t>(idx) + 1) fail(tag + "out of sequence");
            LiftClass lift = LiftClass::from_json(rj.at("lift"));
            if (lift.genus() != genus) fail(tag + "lift genus mismatch");
            LiftValidation v = validate_lift(lift);
            if (!v.ok()) {
                fail(tag + "lift invalid: " + v.message);
                continue;
            }
            Matrix2 image = rho(lift);
            if (rj.at("rho").is_null() || !(matrix_from_json(rj.at("rho"), z) == image))
                fail(tag + "stored rho does not match recomputation " + to_string(image));
            if (!(image == conjugated_N(k))) fail(tag + "rho is not M_k N M_k^-1");
            if (!(rho_via_twist(lift, eps) == image)) fail(tag + "twist route disagrees");
            if (!h_form(image).all_balanced()) fail(tag + "rho not in balanced form");
            Matrix2 mk = matrix_Mk(k);
            if (!(in_A(mk) && !in_U(mk))) fail(tag + "M_k not in A minus U");
            if (!(in_B(matrix_N()) && !in_U(matrix_N()))) fail(tag + "N not in B minus U");
            if (!rj.at("conjugation_ok").get<bool>()) fail(tag + "stored conjugation flag is false");
            for (const auto& [key, val] : rj.at("memberships").items())
                if (!val.get<bool>()) fail(tag + "stored membership " + key + " is false");
        }
        std::size_t expected_pairs = static_cast<std::size_t>(kmax * (kmax - 1) / 2);
        const Json& pw = cert.at("pairwise");
        if (pw.size() != expected_pairs) fail("expected " + std::to_string(expected_pairs) + " pairwise records");
        for (const auto& p : pw) {
            std::int64_t k = p.at("k").get<std::int64_t>(), l = p.at("l").get<std::int64_t>();
            bool recomputed = double_cosets_distinct(k, l).distinct;
            if (recomputed != p.at("distinct").get<bool>() || !recomputed)
                fail("pairwise k=" + std::to_string(k) + ", l=" + std::to_string(l) + " not distinct");
        }
        if (!cert.at("verdict").get<bool>()) fail("stored verdict is false");
    } catch (const std::exception& e) {
        fail(std::string("malformed certificate: ") + e.what());
    }
    out.ok = out.failures.empty();
    return out;
}

}  // namespace kgcert
