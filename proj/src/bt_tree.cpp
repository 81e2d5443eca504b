#include "kgcert/bt_tree.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace kgcert {

RMatrix2 RMatrix2::identity() {
    auto one = RationalFunction::constant(1);
    return {one, {}, {}, one};
}

RMatrix2 RMatrix2::from(const Matrix2& m) {
    if (m.ring().num_vars() != 1) throw SignatureError("tree action needs univariate entries");
    return {RationalFunction::from_laurent(m.a()), RationalFunction::from_laurent(m.b()),
            RationalFunction::from_laurent(m.c()), RationalFunction::from_laurent(m.d())};
}

RMatrix2 RMatrix2::inverse() const {
    RationalFunction dt = det();
    if (dt.is_zero()) throw DomainError("singular matrix");
    return {d / dt, -b / dt, -c / dt, a / dt};
}

RMatrix2 operator*(const RMatrix2& x, const RMatrix2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

RMatrix2 TreeVertex::matrix() const {
    RationalFunction r = offset.is_zero() ? RationalFunction() : RationalFunction::from_laurent(offset);
    return {RationalFunction::t_power(level), r, {}, RationalFunction::constant(1)};
}

std::string to_string(const TreeVertex& v) {
    return "(" + std::to_string(v.level) + "; " + to_string(v.offset) + ")";
}

TreeVertex base_vertex() { return {}; }

TreeVertex adjacent_vertex() {
    return canonical_vertex(RMatrix2::diag(RationalFunction::t_power(-1), RationalFunction::constant(1)));
}

TreeVertex canonical_vertex(const RMatrix2& m) {
    if (m.det().is_zero()) throw DomainError("singular matrix has no lattice class");
    // Column operations over O: bring the bottom row to (0, delta).
    RationalFunction m11 = m.a, m12 = m.b, m21 = m.c, m22 = m.d;
    if (!m21.is_zero() && (m22.is_zero() || m21.valuation() < m22.valuation())) {
        std::swap(m11, m12);
        std::swap(m21, m22);
    }
    if (!m21.is_zero()) {
        RationalFunction q = m21 / m22;  // v(q) >= 0
        m11 = m11 - q * m12;
    }
    // [[alpha, beta], [0, delta]] ~ [[alpha/delta, beta/delta], [0, 1]]
    RationalFunction alpha = m11 / m22;
    RationalFunction beta = m12 / m22;
    TreeVertex v;
    v.level = alpha.valuation();
    v.offset = beta.expansion_below(v.level);
    return v;
}

namespace {

void require_unimodular(const RMatrix2& g) {
    if (!(g.det() == RationalFunction::constant(1))) throw DomainError("tree action needs determinant 1");
}

}  // namespace

TreeVertex act(const RMatrix2& g, const TreeVertex& v) {
    require_unimodular(g);
    return canonical_vertex(g * v.matrix());
}

TreeVertex act(const Matrix2& g, const TreeVertex& v) { return act(RMatrix2::from(g), v); }

std::int64_t distance(const TreeVertex& v, const TreeVertex& w) {
    RMatrix2 x = v.matrix().inverse() * w.matrix();
    std::int64_t emin = std::numeric_limits<std::int64_t>::max();
    for (const auto* e : {&x.a, &x.b, &x.c, &x.d})
        if (!e->is_zero()) emin = std::min(emin, e->valuation());
    // elementary divisors t^e1, t^e2 with e1 = emin, e1 + e2 = v(det)
    return x.det().valuation() - 2 * emin;
}

std::vector<TreeVertex> geodesic(const TreeVertex& v, const TreeVertex& w) {
    RMatrix2 x = v.matrix().inverse() * w.matrix();
    RMatrix2 linv = RMatrix2::identity();

    // pivot: entry of least valuation moved to the top-left
    const RationalFunction* entries[4] = {&x.a, &x.b, &x.c, &x.d};
    int best = -1;
    for (int i = 0; i < 4; ++i)
        if (!entries[i]->is_zero() && (best < 0 || entries[i]->valuation() < entries[best]->valuation())) best = i;
    if (best >= 2) {  // row swap, tracked on the left
        std::swap(x.a, x.c);
        std::swap(x.b, x.d);
        std::swap(linv.a, linv.b);
        std::swap(linv.c, linv.d);
        best -= 2;
    }
    if (best == 1) {  // column swap; right factors do not move the path
        std::swap(x.a, x.b);
        std::swap(x.c, x.d);
    }
    // row1 -= q row0, so linv picks up [[1,0],[q,1]]
    RationalFunction q = x.c / x.a;
    x.c = RationalFunction();
    x.d = x.d - q * x.b;
    linv = linv * RMatrix2{RationalFunction::constant(1), {}, q, RationalFunction::constant(1)};
    // column op clears x.b without changing x.d's valuation class

    std::int64_t steps = x.d.valuation() - x.a.valuation();
    RMatrix2 start = v.matrix() * linv;
    std::vector<TreeVertex> path;
    path.reserve(static_cast<std::size_t>(steps) + 1);
    for (std::int64_t j = 0; j <= steps; ++j)
        path.push_back(canonical_vertex(start * RMatrix2::diag(RationalFunction::constant(1), RationalFunction::t_power(j))));
    return path;
}

bool fixes_vertex(const RMatrix2& g, const TreeVertex& v) { return act(g, v) == v; }
bool fixes_vertex(const Matrix2& g, const TreeVertex& v) { return fixes_vertex(RMatrix2::from(g), v); }

bool fixes_edge(const RMatrix2& g, const TreeVertex& v, const TreeVertex& w) {
    if (distance(v, w) != 1) throw std::invalid_argument("fixes_edge needs adjacent vertices");
    return fixes_vertex(g, v) && fixes_vertex(g, w);
}

bool fixes_edge(const Matrix2& g, const TreeVertex& v, const TreeVertex& w) {
    return fixes_edge(RMatrix2::from(g), v, w);
}

TranslationReport translation_length(const RMatrix2& g, std::int64_t radius) {
    require_unimodular(g);
    if (radius < 0) throw std::invalid_argument("radius must be nonnegative");
    TreeVertex base = base_vertex();
    std::vector<TreeVertex> path = geodesic(base, act(g, base));
    TranslationReport best;
    best.length = std::numeric_limits<std::int64_t>::max();
    std::int64_t best_depth = 0;
    for (std::size_t i = 0; i < path.size() && static_cast<std::int64_t>(i) <= radius; ++i) {
        std::int64_t d = distance(path[i], act(g, path[i]));
        if (d < best.length) {
            best.length = d;
            best.witness = path[i];
            best_depth = static_cast<std::int64_t>(i);
        }
    }
    best.truncated = best_depth == radius && static_cast<std::int64_t>(path.size()) - 1 > radius;
    return best;
}

TranslationReport translation_length(const Matrix2& g, std::int64_t radius) {
    return translation_length(RMatrix2::from(g), radius);
}

std::string path_to_dot(std::span<const TreeVertex> path) {
    std::ostringstream os;
    os << "graph geodesic {\n";
    for (std::size_t i = 0; i < path.size(); ++i) os << "  v" << i << " [label=\"" << to_string(path[i]) << "\"];\n";
    for (std::size_t i = 1; i < path.size(); ++i) os << "  v" << i - 1 << " -- v" << i << ";\n";
    os << "}\n";
    return os.str();
}

}  // namespace kgcert
