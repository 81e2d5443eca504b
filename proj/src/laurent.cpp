#include "kgcert/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <sstream>

namespace kgcert {

ExponentVector operator+(const ExponentVector& a, const ExponentVector& b) {
    if (a.size() != b.size()) throw SignatureError("exponent length mismatch");
    ExponentVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

ExponentVector operator-(const ExponentVector& a, const ExponentVector& b) {
    if (a.size() != b.size()) throw SignatureError("exponent length mismatch");
    ExponentVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

ExponentVector operator-(const ExponentVector& a) {
    ExponentVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

bool is_zero_vector(const ExponentVector& e) {
    return std::all_of(e.begin(), e.end(), [](std::int64_t x) { return x == 0; });
}

ExponentVector unit_vector(std::size_t length, std::size_t index) {
    ExponentVector e(length, 0);
    e.at(index) = 1;
    return e;
}

bool graded_less(const ExponentVector& a, const ExponentVector& b) {
    auto l1 = [](const ExponentVector& e) {
        std::int64_t s = 0;
        for (auto x : e) s += x < 0 ? -x : x;
        return s;
    };
    auto la = l1(a), lb = l1(b);
    if (la != lb) return la < lb;
    return b < a;
}

ParseError::ParseError(std::size_t position, const std::string& message)
    : std::runtime_error("parse error at position " + std::to_string(position) + ": " + message),
      position_(position),
      detail_(message) {}

// ---------------------------------------------------------------- Ring

Ring::Ring(int num_vars, CoeffDomain domain) : num_vars_(num_vars), domain_(domain) {
    if (num_vars < 1) throw SignatureError("ring needs at least one variable");
}

Ring Ring::genus(int g, CoeffDomain domain) {
    if (g < 2) throw SignatureError("genus must be at least 2");
    return Ring(2 * g - 2, domain);
}

int Ring::genus() const noexcept {
    if (num_vars_ >= 2 && num_vars_ % 2 == 0) return num_vars_ / 2 + 1;
    return 0;
}

std::string Ring::var_name(int index) const {
    if (index < 0 || index >= num_vars_) throw SignatureError("variable index out of range");
    if (num_vars_ == 1) return "t";
    if (int g = genus(); g != 0) {
        // u_1..u_{g-1} = s_2..s_g, u_g..u_{2g-2} = t_2..t_g
        if (index < g - 1) return "s" + std::to_string(index + 2);
        return "t" + std::to_string(index - (g - 1) + 2);
    }
    return "u" + std::to_string(index + 1);
}

std::optional<int> Ring::var_index(std::string_view name) const {
    if (name.empty()) return std::nullopt;
    if (num_vars_ == 1) {
        if (name == "t") return 0;
        return std::nullopt;
    }
    char head = name.front();
    std::string_view digits = name.substr(1);
    if (digits.empty() || digits.front() == '0') return std::nullopt;
    int value = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) return std::nullopt;
    if (head == 'u') {
        if (value >= 1 && value <= num_vars_) return value - 1;
        return std::nullopt;
    }
    int g = genus();
    if (g == 0 || value < 2 || value > g) return std::nullopt;
    if (head == 's') return value - 2;
    if (head == 't') return (g - 1) + value - 2;
    return std::nullopt;
}

std::string to_string(const Ring& ring) {
    std::string d = ring.domain() == CoeffDomain::Integer ? "Z" : "Q";
    if (ring.num_vars() == 1) return d + "[t,t^-1]";
    if (int g = ring.genus(); g != 0) return d + "-L_" + std::to_string(g);
    return d + "[u1..u" + std::to_string(ring.num_vars()) + "]";
}

// ---------------------------------------------------------------- LaurentPoly

LaurentPoly::LaurentPoly(Ring ring, TermMap terms) : ring_(ring) {
    for (auto& [e, c] : terms) add_term(e, c);
}

LaurentPoly LaurentPoly::constant(Ring ring, const Coeff& c) {
    LaurentPoly p(ring);
    p.add_term(p.zero_exponent(), c);
    return p;
}

LaurentPoly LaurentPoly::monomial(Ring ring, ExponentVector e, const Coeff& c) {
    LaurentPoly p(ring);
    p.add_term(e, c);
    return p;
}

LaurentPoly LaurentPoly::variable(Ring ring, int index) {
    if (index < 0 || index >= ring.num_vars()) throw SignatureError("variable index out of range");
    return monomial(ring, unit_vector(ring.num_vars(), index));
}

void LaurentPoly::check_coeff(const Coeff& c) const {
    if (ring_.domain() == CoeffDomain::Integer && c.get_den() != 1)
        throw DomainError("non-integral coefficient in integer ring");
}

void LaurentPoly::add_term(const ExponentVector& e, const Coeff& c) {
    if (static_cast<int>(e.size()) != ring_.num_vars()) throw SignatureError("exponent length does not match ring");
    if (c == 0) return;
    check_coeff(c);
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

void LaurentPoly::check_same_ring(const LaurentPoly& o) const {
    if (!(ring_ == o.ring_))
        throw SignatureError("ring mismatch: " + to_string(ring_) + " vs " + to_string(o.ring_));
}

bool LaurentPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && is_zero_vector(terms_.begin()->first));
}

bool LaurentPoly::is_unit() const {
    return terms_.size() == 1 && abs(terms_.begin()->second) == 1;
}

Coeff LaurentPoly::coeff(const ExponentVector& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Coeff(0) : it->second;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    check_same_ring(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    check_same_ring(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    a.check_same_ring(b);
    LaurentPoly r(a.ring_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
    return r;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) { return *this = *this * o; }

LaurentPoly& LaurentPoly::operator*=(const Coeff& c) {
    check_coeff(c);
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r(*this);
    for (auto& [e, v] : r.terms_) v = -v;
    return r;
}

LaurentPoly LaurentPoly::shifted(const ExponentVector& shift) const {
    LaurentPoly r(ring_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e + shift, c);
    return r;
}

LaurentPoly LaurentPoly::pow(std::int64_t n) const {
    if (n < 0) {
        if (!is_unit()) throw DomainError("negative power of a non-unit");
        const auto& [e, c] = *terms_.begin();
        return monomial(ring_, -e, c).pow(-n);
    }
    LaurentPoly result = constant(ring_, 1);
    LaurentPoly base = *this;
    while (n > 0) {
        if (n & 1) result *= base;
        n >>= 1;
        if (n > 0) base *= base;
    }
    return result;
}

LaurentPoly LaurentPoly::divided_by(const Coeff& c) const {
    if (c == 0) throw DomainError("division by zero");
    if (ring_.domain() != CoeffDomain::Rational) throw DomainError("division requires rational coefficients");
    LaurentPoly r(*this);
    for (auto& [e, v] : r.terms_) v /= c;
    return r;
}

LaurentPoly LaurentPoly::with_domain(CoeffDomain d) const {
    LaurentPoly r(ring_.with_domain(d));
    for (const auto& [e, c] : terms_) r.add_term(e, c);
    return r;
}

// ---------------------------------------------------------------- predicates

LaurentPoly involution(const LaurentPoly& f) {
    LaurentPoly::TermMap t;
    for (const auto& [e, c] : f.terms()) t.emplace(-e, c);
    return LaurentPoly(f.ring(), std::move(t));
}

Coeff evaluate_at_one(const LaurentPoly& f) {
    Coeff s = 0;
    for (const auto& [e, c] : f.terms()) s += c;
    return s;
}

bool is_balanced(const LaurentPoly& f) { return evaluate_at_one(f) == 0 && involution(f) == f; }

// ---------------------------------------------------------------- homomorphisms

RingHom::RingHom(Ring source, Ring target, std::vector<LaurentPoly> images)
    : source_(source), target_(target), images_(std::move(images)) {
    if (static_cast<int>(images_.size()) != source_.num_vars())
        throw SignatureError("ring homomorphism needs one image per source variable");
    for (const auto& p : images_)
        if (!(p.ring() == target_)) throw SignatureError("image outside target ring");
}

LaurentPoly RingHom::operator()(const LaurentPoly& f) const {
    if (!(f.ring() == source_))
        throw SignatureError("homomorphism source is " + to_string(source_) + ", got " + to_string(f.ring()));
    LaurentPoly out(target_);
    for (const auto& [e, c] : f.terms()) {
        LaurentPoly term = LaurentPoly::constant(target_, c);
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0) term *= images_[i].pow(e[i]);
        out += term;
    }
    return out;
}

RingHom RingHom::after(const RingHom& inner) const {
    if (!(inner.target_ == source_)) throw SignatureError("cannot compose: ring mismatch");
    std::vector<LaurentPoly> imgs;
    imgs.reserve(inner.images_.size());
    for (const auto& p : inner.images_) imgs.push_back((*this)(p));
    return RingHom(inner.source_, target_, std::move(imgs));
}

RingHom phi_hom(int genus, CoeffDomain domain) {
    Ring src = Ring::genus(genus, domain);
    Ring dst = Ring::univariate(domain);
    std::vector<LaurentPoly> imgs(src.num_vars(), LaurentPoly::constant(dst, 1));
    imgs[genus - 1] = LaurentPoly::variable(dst, 0);  // t_2
    return RingHom(src, dst, std::move(imgs));
}

LaurentPoly specialize_phi(const LaurentPoly& f) {
    int g = f.ring().genus();
    if (g == 0) throw SignatureError("specialize_phi expects an L_g ring, got " + to_string(f.ring()));
    return phi_hom(g, f.ring().domain())(f);
}

LaurentPoly specialize_single(const LaurentPoly& f, int keep) {
    if (keep < 0 || keep >= f.ring().num_vars()) throw SignatureError("kept variable index out of range");
    LaurentPoly out(f.ring());
    for (const auto& [e, c] : f.terms()) {
        ExponentVector k(e.size(), 0);
        k[keep] = e[keep];
        out += LaurentPoly::monomial(f.ring(), k, c);
    }
    return out;
}

// ---------------------------------------------------------------- univariate

static void require_univariate(const LaurentPoly& f) {
    if (f.ring().num_vars() != 1) throw SignatureError("univariate ring required");
}

std::int64_t valuation(const LaurentPoly& f) {
    require_univariate(f);
    if (f.is_zero()) throw DomainError("valuation of the zero polynomial is undefined");
    return f.terms().begin()->first[0];
}

std::int64_t degree(const LaurentPoly& f) {
    require_univariate(f);
    if (f.is_zero()) throw DomainError("degree of the zero polynomial is undefined");
    return f.terms().rbegin()->first[0];
}

bool is_polynomial(const LaurentPoly& f) {
    require_univariate(f);
    return f.is_zero() || valuation(f) >= 0;
}

Coeff eval_at_zero(const LaurentPoly& f) {
    if (!is_polynomial(f)) throw DomainError("evaluation at t=0 needs a polynomial, got " + to_string(f));
    return f.coeff({0});
}

// ---------------------------------------------------------------- printing

std::string coeff_to_string(const Coeff& c) { return c.get_str(); }

std::string to_string(const LaurentPoly& f) {
    if (f.is_zero()) return "0";
    std::vector<const LaurentPoly::TermMap::value_type*> order;
    for (const auto& kv : f.terms()) order.push_back(&kv);
    std::sort(order.begin(), order.end(), [](auto* a, auto* b) { return graded_less(a->first, b->first); });

    std::ostringstream os;
    bool first = true;
    for (const auto* kv : order) {
        const auto& [e, c] = *kv;
        bool negative = c < 0;
        Coeff mag = abs(c);
        if (first)
            os << (negative ? "-" : "");
        else
            os << (negative ? " - " : " + ");
        first = false;

        std::string mono;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += f.ring().var_name(static_cast<int>(i));
            if (e[i] != 1) mono += "^" + std::to_string(e[i]);
        }
        if (mono.empty())
            os << coeff_to_string(mag);
        else if (mag == 1)
            os << mono;
        else
            os << coeff_to_string(mag) << "*" << mono;
    }
    return os.str();
}

// ---------------------------------------------------------------- parsing

namespace {

// expr   := term (('+'|'-') term)*
// term   := unary (('*'|'/') unary)*
// unary  := ('-'|'+') unary | power
// power  := atom ('^' exponent)?
// atom   := integer | variable | '(' expr ')'
// exponent := ['-'|'+'] integer | '(' ['-'|'+'] integer ')'
class Parser {
   public:
    Parser(std::string_view text, const Ring& ring) : text_(text), ring_(ring) {}

    LaurentPoly parse() {
        skip_ws();
        if (at_end()) fail("empty expression");
        LaurentPoly p = expr();
        skip_ws();
        if (!at_end()) fail(std::string("unexpected '") + text_[pos_] + "'");
        return p;
    }

   private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }
    bool at_end() const { return pos_ >= text_.size(); }
    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip_ws();
        if (!at_end() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    LaurentPoly expr() {
        LaurentPoly acc = term();
        for (;;) {
            if (accept('+'))
                acc += term();
            else if (accept('-'))
                acc -= term();
            else
                return acc;
        }
    }

    LaurentPoly term() {
        LaurentPoly acc = unary();
        for (;;) {
            if (accept('*')) {
                acc *= unary();
            } else if (accept('/')) {
                std::size_t at = pos_;
                LaurentPoly d = unary();
                if (!d.is_constant() || d.is_zero()) throw ParseError(at, "division only by a nonzero constant");
                if (ring_.domain() != CoeffDomain::Rational)
                    throw ParseError(at, "division requires rational coefficients");
                acc = acc.divided_by(d.coeff(d.zero_exponent()));
            } else {
                return acc;
            }
        }
    }

    LaurentPoly unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    LaurentPoly power() {
        LaurentPoly base = atom();
        if (!accept('^')) return base;
        std::size_t at = pos_;
        std::int64_t n = exponent();
        if (n < 0 && !base.is_unit()) throw ParseError(at, "negative exponent on a non-monomial");
        return base.pow(n);
    }

    std::int64_t exponent() {
        bool paren = accept('(');
        bool neg = false;
        if (accept('-'))
            neg = true;
        else
            accept('+');
        skip_ws();
        std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer exponent");
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
        if (ec != std::errc()) throw ParseError(start, "exponent out of range");
        if (paren && !accept(')')) fail("expected ')'");
        return neg ? -v : v;
    }

    LaurentPoly atom() {
        skip_ws();
        if (at_end()) fail("unexpected end of input");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            LaurentPoly p = expr();
            if (!accept(')')) fail("expected ')'");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            mpz_class z(std::string(text_.substr(start, pos_ - start)));
            return LaurentPoly::constant(ring_, Coeff(z));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (!at_end() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            std::string_view name = text_.substr(start, pos_ - start);
            auto idx = ring_.var_index(name);
            if (!idx)
                throw ParseError(start, "unknown variable '" + std::string(name) + "' in " + to_string(ring_));
            return LaurentPoly::variable(ring_, *idx);
        }
        fail(std::string("unexpected '") + c + "'");
    }

    std::string_view text_;
    const Ring& ring_;
    std::size_t pos_ = 0;
};

}  // namespace

LaurentPoly parse_poly(std::string_view text, const Ring& ring) { return Parser(text, ring).parse(); }

}  // namespace kgcert
