#ifndef KGCERT_RATIONAL_FUNCTION_HPP
#define KGCERT_RATIONAL_FUNCTION_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "kgcert/laurent.hpp"

namespace kgcert {

/// Dense univariate polynomial over Q, coefficients from t^0 upward.
class QPoly {
   public:
    QPoly() = default;
    explicit QPoly(std::vector<Coeff> coeffs);
    static QPoly constant(const Coeff& c) { return QPoly({c}); }
    static QPoly monomial(std::size_t deg, const Coeff& c);

    bool is_zero() const noexcept { return c_.empty(); }
    /// -1 for zero.
    std::int64_t degree() const noexcept { return static_cast<std::int64_t>(c_.size()) - 1; }
    /// Lowest exponent with nonzero coefficient; zero polynomial has none.
    std::int64_t low_degree() const;
    const Coeff& lead() const { return c_.back(); }
    Coeff coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Coeff(0); }
    const std::vector<Coeff>& coeffs() const noexcept { return c_; }

    /// Divide by t^k; the low k coefficients must vanish.
    QPoly shift_down(std::size_t k) const;
    QPoly monic() const;

    friend QPoly operator+(const QPoly& a, const QPoly& b);
    friend QPoly operator-(const QPoly& a, const QPoly& b);
    friend QPoly operator*(const QPoly& a, const QPoly& b);
    QPoly operator-() const;
    friend bool operator==(const QPoly&, const QPoly&) = default;

   private:
    void trim();
    std::vector<Coeff> c_;
};

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);
/// Monic gcd; gcd(0, 0) = 0.
QPoly gcd(QPoly a, QPoly b);

/// Element of Q(t) as a reduced fraction with monic denominator.
class RationalFunction {
   public:
    RationalFunction() : num_(), den_(QPoly::constant(1)) {}
    RationalFunction(QPoly num, QPoly den);
    static RationalFunction constant(const Coeff& c) { return RationalFunction(QPoly::constant(c), QPoly::constant(1)); }
    /// t^n for any integer n.
    static RationalFunction t_power(std::int64_t n);
    static RationalFunction from_laurent(const LaurentPoly& f);

    const QPoly& num() const noexcept { return num_; }
    const QPoly& den() const noexcept { return den_; }
    bool is_zero() const noexcept { return num_.is_zero(); }
    /// t-adic valuation; throws for zero.
    std::int64_t valuation() const;
    /// True when the denominator is a power of t.
    bool is_laurent() const;
    LaurentPoly to_laurent() const;
    /// Terms of the t-adic expansion with exponent < bound.
    LaurentPoly expansion_below(std::int64_t bound) const;

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
    RationalFunction operator-() const { return RationalFunction(-num_, den_); }
    friend bool operator==(const RationalFunction&, const RationalFunction&) = default;

   private:
    QPoly num_;
    QPoly den_;
};

std::string to_string(const RationalFunction& f);

}  // namespace kgcert

#endif
