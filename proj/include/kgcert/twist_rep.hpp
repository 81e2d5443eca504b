#ifndef KGCERT_TWIST_REP_HPP
#define KGCERT_TWIST_REP_HPP

#include <array>
#include <span>
#include <string>
#include <string_view>

#include "kgcert/cover_homology.hpp"
#include "kgcert/json.hpp"
#include "kgcert/laurent.hpp"

namespace kgcert {

/// 2x2 matrix [[a, b], [c, d]] over a Laurent ring. Acts on coordinate
/// columns (a1-coefficient, b1-coefficient).
class Matrix2 {
   public:
    Matrix2(LaurentPoly a, LaurentPoly b, LaurentPoly c, LaurentPoly d);

    static Matrix2 identity(const Ring& ring);

    const Ring& ring() const noexcept { return a_.ring(); }
    const LaurentPoly& a() const noexcept { return a_; }
    const LaurentPoly& b() const noexcept { return b_; }
    const LaurentPoly& c() const noexcept { return c_; }
    const LaurentPoly& d() const noexcept { return d_; }

    LaurentPoly det() const { return a_ * d_ - b_ * c_; }
    /// Requires a unit determinant.
    Matrix2 inverse() const;
    Matrix2 with_domain(CoeffDomain dom) const;

    friend Matrix2 operator*(const Matrix2& x, const Matrix2& y);
    friend bool operator==(const Matrix2&, const Matrix2&) = default;

   private:
    LaurentPoly a_, b_, c_, d_;
};

std::string to_string(const Matrix2& m);
/// "[[a, b], [c, d]]" with polynomial entries.
Matrix2 parse_matrix(std::string_view text, const Ring& ring);

Json matrix_to_json(const Matrix2& m);
Matrix2 matrix_from_json(const Json& j, const Ring& ring);

/// Exact product of a non-empty sequence.
Matrix2 multiply(std::span<const Matrix2> ms);

/// [[1, t - 2 + t^-1], [0, 1]]
Matrix2 matrix_N();
/// [[1, 0], [k, 1]], k >= 1
Matrix2 matrix_Mk(std::int64_t k);
/// M_k N M_k^-1
Matrix2 conjugated_N(std::int64_t k);

/// M = [[1 + P1, Q1], [Q2, 1 - P2]].
struct HFormReport {
    LaurentPoly p1, q1, q2, p2;
    std::array<bool, 4> balanced{};  // P1, Q1, Q2, P2

    bool all_balanced() const { return balanced[0] && balanced[1] && balanced[2] && balanced[3]; }
    Matrix2 reconstruct() const;
};

HFormReport h_form(const Matrix2& m);

/// Twist image before specialization, over L_g:
/// [[1 + N̄M, -M̄M], [N̄N, 1 - M̄N]] where X̄ is the involution of X.
Matrix2 rho_pre_phi(const LiftClass& lift);
/// Entrywise specialize_phi of rho_pre_phi; lands in SL_2(Z[t, t^-1]).
Matrix2 rho(const LiftClass& lift);

/// Same matrix computed through the homology twist: the (a1, b1)-coordinates
/// of twist_apply on a1 and b1, specialized. Independent of rho_pre_phi.
Matrix2 rho_via_twist(const LiftClass& lift, const EpsilonTable& eps);

}  // namespace kgcert

#endif
