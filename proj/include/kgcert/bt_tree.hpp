#ifndef KGCERT_BT_TREE_HPP
#define KGCERT_BT_TREE_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "kgcert/laurent.hpp"
#include "kgcert/rational_function.hpp"
#include "kgcert/twist_rep.hpp"

namespace kgcert {

/// 2x2 matrix over Q(t).
struct RMatrix2 {
    RationalFunction a, b, c, d;

    static RMatrix2 identity();
    static RMatrix2 from(const Matrix2& m);
    static RMatrix2 diag(const RationalFunction& x, const RationalFunction& y) { return {x, {}, {}, y}; }

    RationalFunction det() const { return a * d - b * c; }
    RMatrix2 inverse() const;
    friend RMatrix2 operator*(const RMatrix2& x, const RMatrix2& y);
    friend bool operator==(const RMatrix2&, const RMatrix2&) = default;
};

/// Homothety class of an O-lattice in Q(t)^2, O the valuation ring at t = 0,
/// stored as the column span of [[t^level, offset], [0, 1]] where offset is
/// the t-adic expansion of the off-diagonal entry truncated below t^level.
struct TreeVertex {
    std::int64_t level = 0;
    LaurentPoly offset{Ring::univariate(CoeffDomain::Rational)};

    RMatrix2 matrix() const;
    friend bool operator==(const TreeVertex&, const TreeVertex&) = default;
};

/// "(a; r)"
std::string to_string(const TreeVertex& v);

TreeVertex base_vertex();
/// diag(t^-1, 1) applied to the base; stabilized by B.
TreeVertex adjacent_vertex();

TreeVertex canonical_vertex(const RMatrix2& m);
TreeVertex act(const RMatrix2& g, const TreeVertex& v);
TreeVertex act(const Matrix2& g, const TreeVertex& v);

std::int64_t distance(const TreeVertex& v, const TreeVertex& w);
/// Vertices of the unique path from v to w, both ends included.
std::vector<TreeVertex> geodesic(const TreeVertex& v, const TreeVertex& w);

bool fixes_vertex(const RMatrix2& g, const TreeVertex& v);
bool fixes_vertex(const Matrix2& g, const TreeVertex& v);
/// Throws std::invalid_argument unless v and w are adjacent.
bool fixes_edge(const RMatrix2& g, const TreeVertex& v, const TreeVertex& w);
bool fixes_edge(const Matrix2& g, const TreeVertex& v, const TreeVertex& w);

struct TranslationReport {
    std::int64_t length = 0;
    TreeVertex witness;
    /// The best candidate sat on the search boundary, so `length` is only an
    /// upper bound on the true minimal displacement.
    bool truncated = false;
};

/// Minimal displacement over the searched vertices within `radius` of the
/// base. The search runs along the geodesic from the base to g(base), whose
/// midpoint realizes the minimum for any tree isometry.
TranslationReport translation_length(const RMatrix2& g, std::int64_t radius = 8);
TranslationReport translation_length(const Matrix2& g, std::int64_t radius = 8);

/// Graphviz rendering of a vertex path.
std::string path_to_dot(std::span<const TreeVertex> path);

}  // namespace kgcert

#endif
