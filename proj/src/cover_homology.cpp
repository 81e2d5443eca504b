#include "kgcert/cover_homology.hpp"

#include <algorithm>
#include <sstream>

namespace kgcert {

// ---------------------------------------------------------------- generators

Generator Generator::comm(int genus, int i, int j) {
    int n = 2 * genus - 2;
    if (genus < 2) throw SignatureError("genus must be at least 2");
    if (!(1 <= i && i < j && j <= n))
        throw std::invalid_argument("commutator generator needs 1 <= i < j <= " + std::to_string(n));
    if (i == genus - 1 && j == n) throw std::invalid_argument("[a_g,b_g] is not a module generator");
    return Generator(Kind::Comm, i, j);
}

Generator Generator::parse(const std::string& text, int genus) {
    if (text == "a1") return a1();
    if (text == "b1") return b1();
    if (text.rfind("c:", 0) == 0) {
        auto colon = text.find(':', 2);
        if (colon != std::string::npos) {
            try {
                std::size_t used1 = 0, used2 = 0;
                int i = std::stoi(text.substr(2, colon - 2), &used1);
                int j = std::stoi(text.substr(colon + 1), &used2);
                if (used1 == colon - 2 && used2 == text.size() - colon - 1) return comm(genus, i, j);
            } catch (const std::logic_error&) {
                // fall through to the generic message
            }
        }
    }
    throw std::invalid_argument("bad generator '" + text + "' (expected a1, b1 or c:i:j)");
}

std::string to_string(const Generator& g) {
    switch (g.kind()) {
        case Generator::Kind::A1:
            return "a1";
        case Generator::Kind::B1:
            return "b1";
        case Generator::Kind::Comm:
            return "c:" + std::to_string(g.i()) + ":" + std::to_string(g.j());
    }
    return {};
}

std::vector<Generator> comm_generators(int genus) {
    std::vector<Generator> out;
    int n = 2 * genus - 2;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            if (!(i == genus - 1 && j == n)) out.push_back(Generator::comm(genus, i, j));
    return out;
}

// ---------------------------------------------------------------- cycles

CycleClass CycleClass::of(int genus, const Generator& g, const LaurentPoly& coeff) {
    CycleClass x(genus);
    x.add(g, coeff);
    return x;
}

LaurentPoly CycleClass::coeff(const Generator& g) const {
    auto it = coeffs_.find(g);
    return it == coeffs_.end() ? LaurentPoly(ring_) : it->second;
}

bool CycleClass::in_w() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const auto& kv) { return kv.first.is_comm(); });
}

void CycleClass::add(const Generator& g, const LaurentPoly& c) {
    if (!(c.ring() == ring_)) throw SignatureError("cycle coefficient outside L_g");
    if (g.is_comm()) Generator::comm(genus(), g.i(), g.j());
    if (c.is_zero()) return;
    auto [it, inserted] = coeffs_.try_emplace(g, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) coeffs_.erase(it);
    }
}

CycleClass& CycleClass::operator+=(const CycleClass& o) {
    if (!(ring_ == o.ring_)) throw SignatureError("cycle genus mismatch");
    for (const auto& [g, c] : o.coeffs_) add(g, c);
    return *this;
}

CycleClass& CycleClass::operator-=(const CycleClass& o) {
    if (!(ring_ == o.ring_)) throw SignatureError("cycle genus mismatch");
    for (const auto& [g, c] : o.coeffs_) add(g, -c);
    return *this;
}

CycleClass operator*(const LaurentPoly& f, const CycleClass& x) {
    CycleClass r(x.genus());
    for (const auto& [g, c] : x.coeffs_) r.add(g, f * c);
    return r;
}

std::string to_string(const CycleClass& x) {
    if (x.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [g, c] : x.coeffs()) {
        if (!first) os << " + ";
        first = false;
        os << "(" << to_string(c) << ")*" << to_string(g);
    }
    return os.str();
}

// ---------------------------------------------------------------- epsilon table

namespace {

void check_sign(int v) {
    if (v < -1 || v > 1) throw std::invalid_argument("intersection sign must be -1, 0 or 1");
}

// Orders (i, j) ascending, returning the orientation sign.
int orient(int& i, int& j) {
    if (i > j) {
        std::swap(i, j);
        return -1;
    }
    return 1;
}

template <class Map, class Key>
void store(Map& m, const Key& k, int v) {
    if (v == 0) return;  // unset entries already read as 0
    auto [it, inserted] = m.try_emplace(k, v);
    if (!inserted && it->second != v) throw std::invalid_argument("conflicting intersection sign");
}

}  // namespace

EpsilonTable::Builder& EpsilonTable::Builder::disjoint(int i, int j, int i2, int j2, int value) {
    check_sign(value);
    if (i == j || i2 == j2 || i == i2 || i == j2 || j == i2 || j == j2)
        throw std::invalid_argument("disjoint sign needs four distinct indices");
    int s = orient(i, j) * orient(i2, j2);
    PairKey p{i, j}, q{i2, j2};
    store(table_.disjoint_, std::pair{p, q}, s * value);
    store(table_.disjoint_, std::pair{q, p}, -s * value);
    return *this;
}

EpsilonTable::Builder& EpsilonTable::Builder::shared(int h, int a, int b, int value) {
    check_sign(value);
    if (a == b || h == a || h == b) throw std::invalid_argument("shared sign needs three distinct indices");
    store(table_.shared_, std::tuple{h, a, b}, value);
    store(table_.shared_, std::tuple{h, b, a}, -value);
    return *this;
}

EpsilonTable EpsilonTable::random(int genus, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> sign(-1, 1);
    int n = 2 * genus - 2;
    Builder b;
    std::vector<PairKey> pairs;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) pairs.emplace_back(i, j);
    for (std::size_t x = 0; x < pairs.size(); ++x)
        for (std::size_t y = x + 1; y < pairs.size(); ++y) {
            auto [i, j] = pairs[x];
            auto [i2, j2] = pairs[y];
            if (i == i2 || i == j2 || j == i2 || j == j2) continue;
            b.disjoint(i, j, i2, j2, sign(rng));
        }
    for (int h = 1; h <= n; ++h)
        for (int a = 1; a <= n; ++a)
            for (int c = a + 1; c <= n; ++c)
                if (a != h && c != h) b.shared(h, a, c, sign(rng));
    return b.build();
}

int EpsilonTable::disjoint(int i, int j, int i2, int j2) const {
    int s = orient(i, j) * orient(i2, j2);
    auto it = disjoint_.find({{i, j}, {i2, j2}});
    return it == disjoint_.end() ? 0 : s * it->second;
}

int EpsilonTable::shared(int h, int a, int b) const {
    auto it = shared_.find({h, a, b});
    return it == shared_.end() ? 0 : it->second;
}

Json EpsilonTable::to_json() const {
    Json d = Json::array(), s = Json::array();
    for (const auto& [k, v] : disjoint_)
        if (k.first < k.second && v != 0) d.push_back({k.first.first, k.first.second, k.second.first, k.second.second, v});
    for (const auto& [k, v] : shared_) {
        auto [h, a, b] = k;
        if (a < b && v != 0) s.push_back({h, a, b, v});
    }
    return Json{{"disjoint", d}, {"shared", s}};
}

EpsilonTable EpsilonTable::from_json(const Json& j) {
    Builder b;
    if (j.contains("disjoint"))
        for (const auto& e : j.at("disjoint")) {
            if (!e.is_array() || e.size() != 5) throw std::invalid_argument("disjoint entry must be [i,j,i2,j2,value]");
            b.disjoint(e[0].get<int>(), e[1].get<int>(), e[2].get<int>(), e[3].get<int>(), e[4].get<int>());
        }
    if (j.contains("shared"))
        for (const auto& e : j.at("shared")) {
            if (!e.is_array() || e.size() != 4) throw std::invalid_argument("shared entry must be [h,a,b,value]");
            b.shared(e[0].get<int>(), e[1].get<int>(), e[2].get<int>(), e[3].get<int>());
        }
    return b.build();
}

// ---------------------------------------------------------------- pairings

namespace {

// r_k for 1-based index k
std::int64_t r(const ExponentVector& shift, int k) { return shift[static_cast<std::size_t>(k - 1)]; }

bool in_set(std::int64_t v, std::initializer_list<std::int64_t> allowed) {
    return std::find(allowed.begin(), allowed.end(), v) != allowed.end();
}

int parity_sign(std::int64_t s) { return (s % 2 == 0) ? 1 : -1; }

int comm_pair(const Generator& x, const ExponentVector& shift, const Generator& y, const EpsilonTable& eps) {
    int i = x.i(), j = x.j(), i2 = y.i(), j2 = y.j();
    if (i == i2 && j == j2) return 0;
    const int n = static_cast<int>(shift.size());
    bool disjoint = i != i2 && i != j2 && j != i2 && j != j2;

    if (disjoint) {
        for (int k = 1; k <= n; ++k) {
            std::int64_t rk = r(shift, k);
            if (k == i || k == j) {
                if (!in_set(rk, {0, 1})) return 0;
            } else if (k == i2 || k == j2) {
                if (!in_set(rk, {0, -1})) return 0;
            } else if (rk != 0) {
                return 0;
            }
        }
        int e = eps.disjoint(i, j, i2, j2);
        return parity_sign(r(shift, i) + r(shift, j) + r(shift, i2) + r(shift, j2)) * e;
    }

    // exactly one shared index h; x = sx [c_h, c_a], y = sy [c_h, c_b]
    int h = (i == i2 || i == j2) ? i : j;
    int a = (h == i) ? j : i;
    int b = (h == i2) ? j2 : i2;
    int sx = (h == i) ? 1 : -1;
    int sy = (h == i2) ? 1 : -1;
    for (int k = 1; k <= n; ++k) {
        std::int64_t rk = r(shift, k);
        if (k == h) {
            if (!in_set(rk, {-1, 0, 1})) return 0;
        } else if (k == a) {
            if (!in_set(rk, {0, 1})) return 0;
        } else if (k == b) {
            if (!in_set(rk, {0, -1})) return 0;
        } else if (rk != 0) {
            return 0;
        }
    }
    return sx * sy * parity_sign(r(shift, h) + r(shift, a) + r(shift, b)) * eps.shared(h, a, b);
}

}  // namespace

int pair_generators(const Generator& x, const ExponentVector& shift, const Generator& y, const EpsilonTable& eps) {
    using K = Generator::Kind;
    if (x.is_comm() && y.is_comm()) return comm_pair(x, shift, y, eps);
    if (x.is_comm() || y.is_comm()) return 0;
    if (!is_zero_vector(shift)) return 0;  // a1, b1 of different translates are disjoint
    if (x.kind() == K::A1 && y.kind() == K::B1) return 1;
    if (x.kind() == K::B1 && y.kind() == K::A1) return -1;
    return 0;
}

std::vector<std::pair<ExponentVector, int>> pairing_support(const Generator& x, const Generator& y, int genus,
                                                            const EpsilonTable& eps) {
    const std::size_t n = static_cast<std::size_t>(2 * genus - 2);
    std::vector<std::pair<ExponentVector, int>> out;
    if (!x.is_comm() || !y.is_comm()) {
        ExponentVector zero(n, 0);
        if (int v = pair_generators(x, zero, y, eps); v != 0) out.emplace_back(zero, v);
        return out;
    }
    // every nonzero shift has entries in {-1,0,1} and vanishes off the four indices
    std::vector<int> idx{x.i(), x.j(), y.i(), y.j()};
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    std::size_t combos = 1;
    for (std::size_t q = 0; q < idx.size(); ++q) combos *= 3;
    for (std::size_t code = 0; code < combos; ++code) {
        ExponentVector s(n, 0);
        std::size_t c = code;
        for (int k : idx) {
            s[static_cast<std::size_t>(k - 1)] = static_cast<std::int64_t>(c % 3) - 1;
            c /= 3;
        }
        if (int v = pair_generators(x, s, y, eps); v != 0) out.emplace_back(std::move(s), v);
    }
    return out;
}

Coeff pair_cycles(const CycleClass& x, const ExponentVector& shift, const CycleClass& y, const EpsilonTable& eps) {
    if (!(x.ring() == y.ring())) throw SignatureError("cycle genus mismatch");
    Coeff total = 0;
    for (const auto& [gx, px] : x.coeffs())
        for (const auto& [gy, py] : y.coeffs())
            for (const auto& [a, ca] : px.terms())
                for (const auto& [b, cb] : py.terms()) {
                    // (u^a gx) . (u^{shift+b} gy) = gx . (u^{shift+b-a} gy)
                    int v = pair_generators(gx, shift + b - a, gy, eps);
                    if (v != 0) total += ca * cb * v;
                }
    return total;
}

// ---------------------------------------------------------------- lifts

LiftClass::LiftClass(int genus, CycleClass w, LaurentPoly m, LaurentPoly n)
    : genus_(genus), w_(std::move(w)), m_(std::move(m)), n_(std::move(n)) {
    Ring ring = Ring::genus(genus);
    if (w_.genus() != genus || !(m_.ring() == ring) || !(n_.ring() == ring))
        throw SignatureError("lift components must live over L_" + std::to_string(genus));
    if (!w_.in_w()) throw std::invalid_argument("W-component of a lift cannot involve a1 or b1");
}

LiftClass LiftClass::zero(int genus) {
    Ring ring = Ring::genus(genus);
    return LiftClass(genus, CycleClass(genus), LaurentPoly(ring), LaurentPoly(ring));
}

LiftClass LiftClass::canonical(int genus) {
    Ring ring = Ring::genus(genus);
    LaurentPoly t2 = LaurentPoly::variable(ring, genus - 1);
    return LiftClass(genus, CycleClass(genus), t2 - LaurentPoly::constant(ring, 1), LaurentPoly(ring));
}

CycleClass LiftClass::as_cycle() const {
    CycleClass c = w_;
    c.add(Generator::a1(), m_);
    c.add(Generator::b1(), n_);
    return c;
}

std::string exponent_key(const ExponentVector& e) {
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(e[i]);
    }
    return s;
}

ExponentVector parse_exponent_key(const std::string& key, std::size_t length) {
    ExponentVector e;
    std::stringstream ss(key);
    std::string part;
    while (std::getline(ss, part, ',')) {
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(part, &used);
        } catch (const std::logic_error&) {
            used = 0;
        }
        if (used == 0 || used != part.size()) throw std::invalid_argument("bad exponent key '" + key + "'");
        e.push_back(v);
    }
    if (e.size() != length)
        throw std::invalid_argument("exponent key '" + key + "' must have " + std::to_string(length) + " entries");
    return e;
}

namespace {

Json coeff_family_to_json(const LaurentPoly& p) {
    Json obj = Json::object();
    for (const auto& [e, c] : p.terms()) {
        mpz_class z = c.get_num();
        if (z.fits_slong_p())
            obj[exponent_key(e)] = z.get_si();
        else
            obj[exponent_key(e)] = z.get_str();
    }
    return obj;
}

LaurentPoly coeff_family_from_json(const Json& j, const Ring& ring) {
    if (!j.is_object()) throw std::invalid_argument("coefficient family must be an object");
    LaurentPoly p(ring);
    for (const auto& [key, val] : j.items()) {
        ExponentVector e = parse_exponent_key(key, static_cast<std::size_t>(ring.num_vars()));
        mpz_class z;
        if (val.is_number_integer())
            z = mpz_class(std::to_string(val.get<long long>()));
        else if (val.is_string())
            z = mpz_class(val.get<std::string>());
        else
            throw std::invalid_argument("coefficient for '" + key + "' must be an integer");
        p += LaurentPoly::monomial(ring, e, Coeff(z));
    }
    return p;
}

}  // namespace

Json LiftClass::to_json() const {
    Json w = Json::array();
    for (const auto& [g, c] : w_.coeffs()) w.push_back({to_string(g), to_string(c)});
    return Json{{"genus", genus_}, {"w", w}, {"m", coeff_family_to_json(m_)}, {"n", coeff_family_to_json(n_)}};
}

LiftClass LiftClass::from_json(const Json& j) {
    int genus = j.at("genus").get<int>();
    Ring ring = Ring::genus(genus);
    CycleClass w(genus);
    if (j.contains("w"))
        for (const auto& entry : j.at("w")) {
            if (!entry.is_array() || entry.size() != 2) throw std::invalid_argument("w entries are [generator, poly]");
            w.add(Generator::parse(entry[0].get<std::string>(), genus),
                  parse_poly(entry[1].get<std::string>(), ring));
        }
    LaurentPoly m = j.contains("m") ? coeff_family_from_json(j.at("m"), ring) : LaurentPoly(ring);
    LaurentPoly n = j.contains("n") ? coeff_family_from_json(j.at("n"), ring) : LaurentPoly(ring);
    return LiftClass(genus, std::move(w), std::move(m), std::move(n));
}

Coeff pair_with_a1(const LiftClass& lift, const ExponentVector& shift) { return lift.n_at(-shift); }

Coeff pair_with_b1(const LiftClass& lift, const ExponentVector& shift) { return -lift.m_at(-shift); }

std::optional<ExponentVector> check_self_intersection(const LiftClass& lift) {
    // coefficient of u^p in involution(M)*N is sum_i m_i n_{i+p}
    LaurentPoly lhs = involution(lift.m()) * lift.n();
    LaurentPoly rhs = involution(lift.n()) * lift.m();
    LaurentPoly diff = lhs - rhs;
    if (diff.is_zero()) return std::nullopt;
    ExponentVector best = diff.terms().begin()->first;
    for (const auto& [e, c] : diff.terms())
        if (graded_less(e, best)) best = e;
    return best;
}

LiftValidation validate_lift(const LiftClass& lift) {
    LiftValidation v;
    if (auto s = check_self_intersection(lift)) {
        v.status = LiftValidation::Status::SelfIntersection;
        v.shift = s;
        v.message = "self-intersection identity fails at shift (" + exponent_key(*s) + ")";
        return v;
    }
    Coeff sm = evaluate_at_one(lift.m()), sn = evaluate_at_one(lift.n());
    if (sm != 0 || sn != 0) {
        v.status = LiftValidation::Status::NotBounding;
        v.message = "projection is " + sm.get_str() + "*a1 + " + sn.get_str() + "*b1, not null-homologous";
        return v;
    }
    v.message = "ok";
    return v;
}

namespace {

void require_valid(const LiftClass& lift) {
    if (auto v = validate_lift(lift); !v.ok()) throw PreconditionError("invalid lift: " + v.message);
}

// D with x . (u^s C) = coefficient of u^s in D
LaurentPoly pairing_profile(const CycleClass& x, const CycleClass& c, const EpsilonTable& eps) {
    LaurentPoly d(x.ring());
    for (const auto& [gx, px] : x.coeffs())
        for (const auto& [gc, pc] : c.coeffs())
            for (const auto& [r, val] : pairing_support(gx, gc, x.genus(), eps))
                for (const auto& [a, ca] : px.terms())
                    for (const auto& [b, cb] : pc.terms())
                        d += LaurentPoly::monomial(x.ring(), r + a - b, ca * cb * val);
    return d;
}

}  // namespace

CycleClass twist_apply(const LiftClass& lift, const CycleClass& x, const EpsilonTable& eps) {
    require_valid(lift);
    if (x.genus() != lift.genus()) throw SignatureError("cycle genus does not match lift");
    CycleClass c = lift.as_cycle();
    return x + pairing_profile(x, c, eps) * c;
}

CycleClass twist_apply_inverse(const LiftClass& lift, const CycleClass& x, const EpsilonTable& eps) {
    require_valid(lift);
    if (x.genus() != lift.genus()) throw SignatureError("cycle genus does not match lift");
    CycleClass c = lift.as_cycle();
    return x - pairing_profile(x, c, eps) * c;
}

CycleClass apply_b1_twist(const CycleClass& x, std::int64_t k) {
    CycleClass r = x;
    r.add(Generator::b1(), x.coeff(Generator::a1()) * Coeff(static_cast<long>(k)));
    return r;
}

LiftClass pushforward_b1_twist(const LiftClass& lift, std::int64_t k) {
    require_valid(lift);
    CycleClass moved = apply_b1_twist(lift.as_cycle(), k);
    CycleClass w(lift.genus());
    for (const auto& [g, c] : moved.coeffs())
        if (g.is_comm()) w.add(g, c);
    return LiftClass(lift.genus(), std::move(w), moved.coeff(Generator::a1()), moved.coeff(Generator::b1()));
}

}  // namespace kgcert
