#ifndef KGCERT_COVER_HOMOLOGY_HPP
#define KGCERT_COVER_HOMOLOGY_HPP

#include <compare>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "kgcert/json.hpp"
#include "kgcert/laurent.hpp"

namespace kgcert {

class PreconditionError : public std::logic_error {
   public:
    using std::logic_error::logic_error;
};

/// Module generator of H_1 of the Z^{2g-2} cover: a1, b1, or the commutator
/// class [c_i, c_j] with 1 <= i < j <= 2g-2 (1-based, c_1..c_{g-1} = a_2..a_g,
/// c_g..c_{2g-2} = b_2..b_g). [a_g, b_g] = [c_{g-1}, c_{2g-2}] is not a
/// generator.
class Generator {
   public:
    enum class Kind { A1, B1, Comm };

    static Generator a1() { return Generator(Kind::A1, 0, 0); }
    static Generator b1() { return Generator(Kind::B1, 0, 0); }
    static Generator comm(int genus, int i, int j);
    /// "a1" | "b1" | "c:i:j"
    static Generator parse(const std::string& text, int genus);

    Kind kind() const noexcept { return kind_; }
    int i() const noexcept { return i_; }
    int j() const noexcept { return j_; }
    bool is_comm() const noexcept { return kind_ == Kind::Comm; }

    friend auto operator<=>(const Generator&, const Generator&) = default;

   private:
    Generator(Kind k, int i, int j) : kind_(k), i_(i), j_(j) {}
    Kind kind_;
    int i_;
    int j_;
};

std::string to_string(const Generator& g);
std::vector<Generator> comm_generators(int genus);

/// Element of H_1(Y) as an L_g-combination of generators.
class CycleClass {
   public:
    explicit CycleClass(int genus) : ring_(Ring::genus(genus)) {}

    static CycleClass of(int genus, const Generator& g, const LaurentPoly& coeff);

    int genus() const noexcept { return ring_.genus(); }
    const Ring& ring() const noexcept { return ring_; }
    const std::map<Generator, LaurentPoly>& coeffs() const noexcept { return coeffs_; }
    LaurentPoly coeff(const Generator& g) const;
    bool is_zero() const noexcept { return coeffs_.empty(); }
    /// No a1/b1 component.
    bool in_w() const;

    void add(const Generator& g, const LaurentPoly& c);
    CycleClass& operator+=(const CycleClass& o);
    CycleClass& operator-=(const CycleClass& o);
    friend CycleClass operator+(CycleClass a, const CycleClass& b) { return a += b; }
    friend CycleClass operator-(CycleClass a, const CycleClass& b) { return a -= b; }
    friend CycleClass operator*(const LaurentPoly& f, const CycleClass& x);

    friend bool operator==(const CycleClass&, const CycleClass&) = default;

   private:
    Ring ring_;
    std::map<Generator, LaurentPoly> coeffs_;
};

std::string to_string(const CycleClass& x);

/// Intersection signs at shift zero between commutator generators.
///
/// Disjoint index pairs: eps(i,j,i',j') = [c_i,c_j] . [c_i',c_j'], skew under
/// swapping the two pairs. Shared index h: eps(h,a,b) = [c_h,c_a] . [c_h,c_b],
/// skew in (a,b). Orientation reversal [c_j,c_i] = -[c_i,c_j] is applied on
/// lookup, so callers may pass indices in any order. Unset entries read as 0.
class EpsilonTable {
   public:
    class Builder;

    static EpsilonTable zero() { return {}; }
    /// Uniformly random skew-consistent table over all index patterns of the genus.
    static EpsilonTable random(int genus, std::mt19937_64& rng);

    int disjoint(int i, int j, int i2, int j2) const;
    int shared(int h, int a, int b) const;

    Json to_json() const;
    static EpsilonTable from_json(const Json& j);

    friend bool operator==(const EpsilonTable&, const EpsilonTable&) = default;

   private:
    using PairKey = std::pair<int, int>;
    std::map<std::pair<PairKey, PairKey>, int> disjoint_;
    std::map<std::tuple<int, int, int>, int> shared_;
};

class EpsilonTable::Builder {
   public:
    Builder& disjoint(int i, int j, int i2, int j2, int value);
    Builder& shared(int h, int a, int b, int value);
    EpsilonTable build() const { return table_; }

   private:
    EpsilonTable table_;
};

/// x . (u^shift y) for generators x, y.
int pair_generators(const Generator& x, const ExponentVector& shift, const Generator& y, const EpsilonTable& eps);

/// All (shift, value) with nonzero x . (u^shift y).
std::vector<std::pair<ExponentVector, int>> pairing_support(const Generator& x, const Generator& y, int genus,
                                                            const EpsilonTable& eps);

/// X . (u^shift Y), extended bilinearly using (u^s x).(u^s y) = x.y.
Coeff pair_cycles(const CycleClass& x, const ExponentVector& shift, const CycleClass& y, const EpsilonTable& eps);

/// Homology class of a lift of a bounding curve: w + M(u) a1 + N(u) b1, where
/// M = sum m_p u^p and N = sum n_p u^p.
class LiftClass {
   public:
    LiftClass(int genus, CycleClass w, LaurentPoly m, LaurentPoly n);

    static LiftClass zero(int genus);
    /// The curve with rho = N: m = {0: -1, e_{t2}: 1}, n = 0, w = 0.
    static LiftClass canonical(int genus);

    int genus() const noexcept { return genus_; }
    const CycleClass& w() const noexcept { return w_; }
    const LaurentPoly& m() const noexcept { return m_; }
    const LaurentPoly& n() const noexcept { return n_; }
    Coeff m_at(const ExponentVector& p) const { return m_.coeff(p); }
    Coeff n_at(const ExponentVector& p) const { return n_.coeff(p); }

    CycleClass as_cycle() const;

    Json to_json() const;
    static LiftClass from_json(const Json& j);

    friend bool operator==(const LiftClass&, const LiftClass&) = default;

   private:
    int genus_;
    CycleClass w_;
    LaurentPoly m_;
    LaurentPoly n_;
};

/// a1 . (u^shift C) = n_{-shift}
Coeff pair_with_a1(const LiftClass& lift, const ExponentVector& shift);
/// b1 . (u^shift C) = -m_{-shift}
Coeff pair_with_b1(const LiftClass& lift, const ExponentVector& shift);

/// First shift p (in graded order) where sum_i m_i n_{i+p} != sum_i n_i m_{i+p}.
std::optional<ExponentVector> check_self_intersection(const LiftClass& lift);

struct LiftValidation {
    enum class Status { Ok, SelfIntersection, NotBounding };
    Status status = Status::Ok;
    std::optional<ExponentVector> shift;
    std::string message;

    bool ok() const noexcept { return status == Status::Ok; }
};

/// Self-intersection identity, then the bounding condition sum m = sum n = 0.
LiftValidation validate_lift(const LiftClass& lift);

/// Image of x under the simultaneous twist about all translates of the lift.
CycleClass twist_apply(const LiftClass& lift, const CycleClass& x, const EpsilonTable& eps);
/// Same transvection with the opposite sign; inverse of twist_apply when the
/// lift's translates are pairwise disjoint in homology.
CycleClass twist_apply_inverse(const LiftClass& lift, const CycleClass& x, const EpsilonTable& eps);

/// k-th power of the twist about all lifts of b1: f a1 + g b1 + w -> f a1 + (g + k f) b1 + w.
CycleClass apply_b1_twist(const CycleClass& x, std::int64_t k);
LiftClass pushforward_b1_twist(const LiftClass& lift, std::int64_t k);

/// Comma-separated exponent tuple, e.g. "0,1".
std::string exponent_key(const ExponentVector& e);
ExponentVector parse_exponent_key(const std::string& key, std::size_t length);

}  // namespace kgcert

#endif
