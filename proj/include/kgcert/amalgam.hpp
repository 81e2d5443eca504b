#ifndef KGCERT_AMALGAM_HPP
#define KGCERT_AMALGAM_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kgcert/cover_homology.hpp"
#include "kgcert/json.hpp"
#include "kgcert/twist_rep.hpp"

namespace kgcert {

// SL_2(Q[t,t^-1]) = A *_U B with A = SL_2(Q[t]), B = diag(t^-1,1) A diag(t,1),
// U = A ∩ B. Integer-coefficient inputs are accepted and compared over Q.

bool in_A(const Matrix2& m);
bool in_B(const Matrix2& m);
bool in_U(const Matrix2& m);

/// diag(t^e, 1) over Q[t, t^-1].
Matrix2 diag_t(std::int64_t e);

struct HCapAResult {
    enum class Status { Identity, NotInA, NotBalancedForm, Counterexample };
    Status status = Status::Identity;
    std::vector<std::string> trace;

    bool proven() const noexcept { return status == Status::Identity; }
};

/// A matrix of balanced H-form with polynomial entries must be the identity:
/// each of P1, Q1, Q2, P2 is a balanced polynomial, hence constant, hence 0.
HCapAResult h_cap_a_forces_identity(const Matrix2& m);

struct DoubleCosetWitness {
    std::int64_t k = 0;
    std::int64_t l = 0;
    bool distinct = false;
    /// u = M_l^-1 M_k, the U-element the coset equality would force.
    std::string forced_u;
    bool forced_u_in_U = false;
    /// Lower-left entry of u at t = 0; membership in U needs it to vanish.
    std::string lower_left_at_zero;
    std::vector<std::string> trace;
};

/// Whether (H∩A) M_k U != (H∩A) M_l U, following the t = 0 argument.
DoubleCosetWitness double_cosets_distinct(std::int64_t k, std::int64_t l);

struct AmalgamLetter {
    enum class Side { A, B };
    Side side;
    Matrix2 matrix;
};

std::string to_string(AmalgamLetter::Side s);

/// Reduced word for m: letters alternate sides, every letter after the first
/// lies outside U, and the product equals m. Built by walking the tree
/// geodesic from the base vertex to m(base).
std::vector<AmalgamLetter> amalgam_normal_form(const Matrix2& m);

// ---------------------------------------------------------------- certificate

struct CertificateRecord {
    std::int64_t k = 0;
    LiftClass lift;
    std::optional<Matrix2> rho;
    std::string lift_status;
    bool lift_valid = false;
    bool conjugation_ok = false;
    bool twist_route_ok = false;
    bool det_one = false;
    bool rho_balanced = false;
    bool mk_in_a_minus_u = false;
    bool n_in_b_minus_u = false;

    bool passed() const;
};

struct PairwiseRecord {
    std::int64_t k = 0;
    std::int64_t l = 0;
    bool distinct = false;
    std::string witness;
};

struct Certificate {
    std::int64_t kmax = 0;
    int genus = 0;
    bool base_rho_is_N = false;
    std::vector<CertificateRecord> records;
    std::vector<PairwiseRecord> pairwise;
    bool verdict = false;

    Json to_json() const;
    /// First failing item, empty when the verdict is true.
    std::string first_failure() const;
};

struct CertificateOptions {
    /// Defaults to LiftClass::canonical(genus).
    std::optional<LiftClass> base_lift;
    EpsilonTable eps;
    bool parallel = true;
};

/// Throws std::invalid_argument for kmax < 2 or genus < 2.
Certificate build_certificate(std::int64_t kmax, int genus, const CertificateOptions& options = {});

struct CertificateCheck {
    bool ok = false;
    std::vector<std::string> failures;
};

/// Re-derives every stored record of a serialized certificate from its lifts
/// and compares against what was stored.
CertificateCheck check_certificate(const Json& cert, const EpsilonTable& eps = {});

}  // namespace kgcert

#endif
