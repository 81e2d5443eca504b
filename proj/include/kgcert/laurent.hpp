#ifndef KGCERT_LAURENT_HPP
#define KGCERT_LAURENT_HPP

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kgcert {

using Coeff = mpq_class;

/// Exponent of a Laurent monomial; one entry per ring variable.
using ExponentVector = std::vector<std::int64_t>;

ExponentVector operator+(const ExponentVector& a, const ExponentVector& b);
ExponentVector operator-(const ExponentVector& a, const ExponentVector& b);
ExponentVector operator-(const ExponentVector& a);
bool is_zero_vector(const ExponentVector& e);
ExponentVector unit_vector(std::size_t length, std::size_t index);

/// Order used when printing terms and scanning shifts: ascending L1 degree,
/// ties broken by descending lexicographic order (so t comes before t^-1).
bool graded_less(const ExponentVector& a, const ExponentVector& b);

class SignatureError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

class DomainError : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

class ParseError : public std::runtime_error {
   public:
    ParseError(std::size_t position, const std::string& message);
    std::size_t position() const noexcept { return position_; }
    const std::string& detail() const noexcept { return detail_; }

   private:
    std::size_t position_;
    std::string detail_;
};

enum class CoeffDomain { Integer, Rational };

/// Signature of a Laurent polynomial ring: number of variables and
/// coefficient domain.
///
/// A one-variable ring names its variable `t`.  A ring with 2g-2 variables
/// (g >= 2) is L_g with variables u1..u_{2g-2} = s2..sg, t2..tg in that order;
/// both spellings are accepted by the parser, the s/t names are printed.
/// Any other count uses u1..un only.
class Ring {
   public:
    Ring(int num_vars, CoeffDomain domain = CoeffDomain::Integer);

    static Ring univariate(CoeffDomain domain = CoeffDomain::Integer) { return Ring(1, domain); }
    static Ring genus(int g, CoeffDomain domain = CoeffDomain::Integer);

    int num_vars() const noexcept { return num_vars_; }
    CoeffDomain domain() const noexcept { return domain_; }
    /// Genus for an L_g ring, 0 otherwise.
    int genus() const noexcept;

    std::string var_name(int index) const;
    std::optional<int> var_index(std::string_view name) const;

    Ring with_domain(CoeffDomain d) const { return Ring(num_vars_, d); }

    friend bool operator==(const Ring&, const Ring&) = default;

   private:
    int num_vars_;
    CoeffDomain domain_;
};

std::string to_string(const Ring& ring);

/// Exact multivariate Laurent polynomial. Zero coefficients are never stored.
class LaurentPoly {
   public:
    using TermMap = std::map<ExponentVector, Coeff>;

    explicit LaurentPoly(Ring ring) : ring_(ring) {}
    LaurentPoly(Ring ring, TermMap terms);

    static LaurentPoly constant(Ring ring, const Coeff& c);
    static LaurentPoly monomial(Ring ring, ExponentVector e, const Coeff& c = 1);
    static LaurentPoly variable(Ring ring, int index);

    const Ring& ring() const noexcept { return ring_; }
    const TermMap& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const;
    /// Single term with coefficient +1 or -1.
    bool is_unit() const;
    Coeff coeff(const ExponentVector& e) const;
    ExponentVector zero_exponent() const { return ExponentVector(ring_.num_vars(), 0); }

    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    LaurentPoly& operator*=(const LaurentPoly& o);
    LaurentPoly& operator*=(const Coeff& c);

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    friend LaurentPoly operator*(LaurentPoly a, const Coeff& c) { return a *= c; }
    friend LaurentPoly operator*(const Coeff& c, LaurentPoly a) { return a *= c; }
    LaurentPoly operator-() const;

    /// Multiply by the monomial u^shift.
    LaurentPoly shifted(const ExponentVector& shift) const;
    /// Negative powers are only defined for units.
    LaurentPoly pow(std::int64_t n) const;
    /// Exact division by a nonzero constant; only in the rational domain.
    LaurentPoly divided_by(const Coeff& c) const;

    LaurentPoly with_domain(CoeffDomain d) const;

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.ring_ == b.ring_ && a.terms_ == b.terms_;
    }

   private:
    void add_term(const ExponentVector& e, const Coeff& c);
    void check_same_ring(const LaurentPoly& o) const;
    void check_coeff(const Coeff& c) const;

    Ring ring_;
    TermMap terms_;
};

/// Every variable u_i goes to u_i^-1.
LaurentPoly involution(const LaurentPoly& f);
Coeff evaluate_at_one(const LaurentPoly& f);
bool is_balanced(const LaurentPoly& f);

/// Ring homomorphism given by the image of each source variable.
class RingHom {
   public:
    RingHom(Ring source, Ring target, std::vector<LaurentPoly> images);

    const Ring& source() const noexcept { return source_; }
    const Ring& target() const noexcept { return target_; }
    const std::vector<LaurentPoly>& images() const noexcept { return images_; }

    LaurentPoly operator()(const LaurentPoly& f) const;
    /// (this ∘ inner): apply inner first.
    RingHom after(const RingHom& inner) const;

   private:
    Ring source_;
    Ring target_;
    std::vector<LaurentPoly> images_;
};

/// The map L_g -> L: s_i -> 1, t_2 -> t, t_i -> 1 for i >= 3.
RingHom phi_hom(int genus, CoeffDomain domain = CoeffDomain::Integer);
LaurentPoly specialize_phi(const LaurentPoly& f);
/// All variables except `keep` (0-based) go to 1; result stays in f's ring.
LaurentPoly specialize_single(const LaurentPoly& f, int keep);

// Univariate helpers.
std::int64_t valuation(const LaurentPoly& f);
std::int64_t degree(const LaurentPoly& f);
bool is_polynomial(const LaurentPoly& f);
Coeff eval_at_zero(const LaurentPoly& f);

std::string to_string(const LaurentPoly& f);
std::string coeff_to_string(const Coeff& c);
LaurentPoly parse_poly(std::string_view text, const Ring& ring);

}  // namespace kgcert

#endif
