#pragma once

// Rational lattice polygons, lattice width, and the almost toric base
// triangles attached to Markov triples in normal form.

#include "mbl/capacity.hpp"
#include "mbl/markov.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

namespace mbl {

struct RationalPoint {
    Rational x = 0;
    Rational y = 0;

    friend bool operator==(const RationalPoint& l, const RationalPoint& r) { return l.x == r.x && l.y == r.y; }
    friend bool operator<(const RationalPoint& l, const RationalPoint& r) {
        return l.x != r.x ? l.x < r.x : l.y < r.y;
    }
    friend RationalPoint operator-(const RationalPoint& l, const RationalPoint& r) { return {l.x - r.x, l.y - r.y}; }
    friend RationalPoint operator+(const RationalPoint& l, const RationalPoint& r) { return {l.x + r.x, l.y + r.y}; }
    std::string str() const { return "(" + mbl::to_string(x) + "," + mbl::to_string(y) + ")"; }
};

struct LatticeVector {
    Integer x = 0;
    Integer y = 0;

    bool is_zero() const { return x == 0 && y == 0; }
    friend bool operator==(const LatticeVector& l, const LatticeVector& r) { return l.x == r.x && l.y == r.y; }
    std::string str() const { return "(" + x.str() + "," + y.str() + ")"; }
};

inline Rational dot(const LatticeVector& v, const RationalPoint& p) {
    return Rational(v.x) * p.x + Rational(v.y) * p.y;
}

inline Rational cross(const RationalPoint& u, const RationalPoint& v) { return u.x * v.y - u.y * v.x; }

/// Splits a nonzero rational vector as s * d with d a primitive integer vector and s > 0.
inline std::pair<LatticeVector, Rational> primitive_decomposition(const RationalPoint& v) {
    if (v.x == 0 && v.y == 0) throw DomainError("zero vector has no lattice direction");
    Integer dx = denominator_of(v.x), dy = denominator_of(v.y);
    Integer l = dx / gcd(dx, dy) * dy;
    Integer ix = numerator_of(v.x) * (l / dx);
    Integer iy = numerator_of(v.y) * (l / dy);
    Integer g = gcd(abs(ix), abs(iy));
    LatticeVector d{ix / g, iy / g};
    return {d, Rational(g, l)};
}

/// Integral affine length of the segment pq.
inline Rational affine_length(const RationalPoint& p, const RationalPoint& q) {
    if (p == q) throw DomainError("affine_length: zero-length segment");
    return primitive_decomposition(q - p).second;
}

/// Convex polygon with rational vertices, counterclockwise, no three collinear.
class LatticePolygon {
public:
    /// Takes the convex hull of the given points; fewer than three hull
    /// vertices is a DomainError.
    explicit LatticePolygon(std::vector<RationalPoint> points) {
        std::sort(points.begin(), points.end());
        points.erase(std::unique(points.begin(), points.end()), points.end());
        if (points.size() < 3) throw DomainError("degenerate polygon: fewer than three distinct points");
        std::vector<RationalPoint> hull(2 * points.size());
        std::size_t k = 0;
        for (const auto& p : points) {
            while (k >= 2 && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]).sign() <= 0) --k;
            hull[k++] = p;
        }
        for (std::size_t i = points.size() - 1, lower = k + 1; i-- > 0;) {
            const auto& p = points[i];
            while (k >= lower && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]).sign() <= 0) --k;
            hull[k++] = p;
        }
        hull.resize(k - 1);
        if (hull.size() < 3) throw DomainError("degenerate polygon: all points collinear");
        vertices_ = std::move(hull);
    }

    const std::vector<RationalPoint>& vertices() const noexcept { return vertices_; }
    std::size_t size() const noexcept { return vertices_.size(); }

    Rational area() const {
        Rational twice = 0;
        for (std::size_t i = 0; i < vertices_.size(); ++i)
            twice += cross(vertices_[i], vertices_[(i + 1) % vertices_.size()]);
        return twice / 2;
    }

    /// Sum of integral affine edge lengths.
    Rational affine_perimeter() const {
        Rational total = 0;
        for (std::size_t i = 0; i < vertices_.size(); ++i)
            total += affine_length(vertices_[i], vertices_[(i + 1) % vertices_.size()]);
        return total;
    }

    /// Primitive integer normal of edge i pointing into the polygon.
    LatticeVector inner_normal(std::size_t i) const {
        auto d = primitive_decomposition(vertices_[(i + 1) % size()] - vertices_[i]).first;
        return {-d.y, d.x};
    }

    /// Strict interior test by half-planes.
    bool contains_strictly(const RationalPoint& p) const {
        for (std::size_t i = 0; i < size(); ++i)
            if (cross(vertices_[(i + 1) % size()] - vertices_[i], p - vertices_[i]).sign() <= 0) return false;
        return true;
    }

private:
    std::vector<RationalPoint> vertices_;
};

/// max <x' - x, xi> over the polygon.
inline Rational width_along(const LatticePolygon& P, const LatticeVector& xi) {
    if (xi.is_zero()) throw DomainError("width_along: zero direction");
    Rational lo = dot(xi, P.vertices()[0]), hi = lo;
    for (const auto& v : P.vertices()) {
        Rational s = dot(xi, v);
        if (s < lo) lo = s;
        if (s > hi) hi = s;
    }
    return hi - lo;
}

struct LatticeWidth {
    Capacity width;
    LatticeVector direction;
};

namespace detail {

// Tie-break among minimizing directions: lexicographic on (|x|, |y|, x).
inline bool direction_precedes(const LatticeVector& l, const LatticeVector& r) {
    return std::make_tuple(abs(l.x), abs(l.y), l.x) < std::make_tuple(abs(r.x), abs(r.y), r.x);
}

}  // namespace detail

/// Minimum of width_along over nonzero integer directions, with a minimizer
/// normalized to the upper half-plane. Candidates are pruned by
/// |xi|^2 <= best^2 / W^2 where W is the Euclidean width, attained at an edge normal.
inline LatticeWidth lattice_width(const LatticePolygon& P) {
    LatticeVector best_dir{0, 1};
    Rational best = width_along(P, best_dir);
    if (Rational w = width_along(P, {1, 0}); w < best) {
        best = w;
        best_dir = {1, 0};
    }
    Rational euclid_sq;  // W^2
    for (std::size_t i = 0; i < P.size(); ++i) {
        LatticeVector n = P.inner_normal(i);
        Rational w = width_along(P, n);
        Rational sq = w * w / Rational(n.x * n.x + n.y * n.y);
        if (i == 0 || sq < euclid_sq) euclid_sq = sq;
    }
    auto bound = [&]() -> Rational { return best * best / euclid_sq; };
    Integer radius = isqrt(numerator_of(bound()) / denominator_of(bound()));
    for (Integer y = 0; y <= radius; ++y) {
        for (Integer x = -radius; x <= radius; ++x) {
            if (y == 0 && x <= 0) continue;
            if (Rational(x * x + y * y) > bound()) continue;
            if (gcd(abs(x), y) != 1) continue;
            LatticeVector xi{x, y};
            Rational w = width_along(P, xi);
            if (w < best || (w == best && detail::direction_precedes(xi, best_dir))) {
                best = w;
                best_dir = xi;
            }
        }
    }
    return {Capacity(best), best_dir};
}

/// Integer matrix with determinant +-1 followed by a rational translation.
struct UnimodularMap {
    Integer m00 = 1, m01 = 0, m10 = 0, m11 = 1;
    RationalPoint shift;

    UnimodularMap() = default;
    UnimodularMap(Integer a, Integer b, Integer c, Integer d, RationalPoint t = {})
        : m00(std::move(a)), m01(std::move(b)), m10(std::move(c)), m11(std::move(d)), shift(std::move(t)) {
        Integer det = m00 * m11 - m01 * m10;
        if (det != 1 && det != -1) throw DomainError("UnimodularMap: determinant " + det.str() + " is not +-1");
    }
    /// M_k = (1 k; 0 1).
    static UnimodularMap shear(const Integer& k) { return {1, k, 0, 1}; }

    Integer determinant() const { return m00 * m11 - m01 * m10; }

    RationalPoint operator()(const RationalPoint& p) const {
        return {Rational(m00) * p.x + Rational(m01) * p.y + shift.x, Rational(m10) * p.x + Rational(m11) * p.y + shift.y};
    }
    LatticePolygon operator()(const LatticePolygon& P) const {
        std::vector<RationalPoint> pts;
        for (const auto& v : P.vertices()) pts.push_back((*this)(v));
        return LatticePolygon(std::move(pts));
    }
};

struct TriangleEdge {
    RationalPoint from, to;
    LatticeVector direction;  // primitive
    Rational affine_length;
    Integer weight;  // the triple entry of the opposite vertex
};

/// Base triangle of the almost toric fibration for a Markov triple, in the
/// normal form with the longest edge from (0,0) to (l,0) and apex (t,h).
struct ViannaTriangle {
    MarkovTriple triple;
    std::array<RationalPoint, 3> vertices;
    std::array<TriangleEdge, 3> edges;  // longest edge (weight a), then weight b, then weight c
    Rational ell;     // longest edge length a/(bc)
    Rational height;  // bc/a
    Rational apex_x;  // t
    Rational lambda;  // 1/(abc)
    Integer residue;  // u with u c^2 = a^2 (mod b^2)

    LatticePolygon polygon() const { return LatticePolygon({vertices.begin(), vertices.end()}); }
    Rational area() const { return polygon().area(); }
    Rational affine_perimeter() const {
        return edges[0].affine_length + edges[1].affine_length + edges[2].affine_length;
    }
};

namespace detail {

inline Integer mod_inverse(const Integer& value, const Integer& modulus) {
    Integer r0 = modulus, r1 = value % modulus, t0 = 0, t1 = 1;
    while (r1 != 0) {
        Integer q = r0 / r1;
        Integer r2 = r0 - q * r1;
        r0 = std::move(r1);
        r1 = std::move(r2);
        Integer t2 = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0 != 1) throw DomainError("no modular inverse");
    t0 %= modulus;
    if (t0 < 0) t0 += modulus;
    return t0;
}

inline ViannaTriangle assemble_triangle(const MarkovTriple& t, const std::array<RationalPoint, 3>& v,
                                        Integer residue) {
    ViannaTriangle T;
    T.triple = t;
    T.vertices = v;
    T.residue = std::move(residue);
    T.lambda = Rational(1, t.a() * t.b() * t.c());
    const std::array<Integer, 3> weights{t.a(), t.b(), t.c()};
    for (std::size_t i = 0; i < 3; ++i) {
        const RationalPoint& p = v[i];
        const RationalPoint& q = v[(i + 1) % 3];
        auto [dir, len] = primitive_decomposition(q - p);
        T.edges[i] = {p, q, dir, len, weights[i]};
        if (len != T.lambda * Rational(weights[i] * weights[i]))
            throw VerificationFailure("edge " + std::to_string(i) + " of the triangle for " + t.str() +
                                      " has affine length " + mbl::to_string(len));
    }
    T.ell = v[1].x - v[0].x;
    T.height = v[2].y - v[0].y;
    T.apex_x = v[2].x - v[0].x;
    return T;
}

}  // namespace detail

/// Normal-form triangle with vertices (0,0), (a/(bc), 0), (u c/(ab), bc/a)
/// where u is the least nonnegative residue of a^2 c^-2 mod b^2.
inline ViannaTriangle vianna_triangle(const MarkovTriple& t) {
    const Integer &a = t.a(), &b = t.b(), &c = t.c();
    Integer modulus = b * b;
    Integer u = 0;
    if (modulus > 1) u = (a * a % modulus) * detail::mod_inverse(c * c % modulus, modulus) % modulus;
    Rational ell(a, b * c);
    Rational h(b * c, a);
    Rational apex_x(u * c, a * b);
    return detail::assemble_triangle(t, {RationalPoint{0, 0}, RationalPoint{ell, 0}, RationalPoint{apex_x, h}}, u);
}

/// The point at integral affine distance 1/3 from every edge.
inline RationalPoint central_point(const ViannaTriangle& T) {
    LatticePolygon P = T.polygon();
    std::array<LatticeVector, 3> n;
    std::array<Rational, 3> rhs;
    for (std::size_t i = 0; i < 3; ++i) {
        const auto& e = T.edges[i];
        n[i] = {-e.direction.y, e.direction.x};
        rhs[i] = Rational(1, 3) + dot(n[i], e.from);
    }
    Rational det = Rational(n[0].x * n[1].y - n[0].y * n[1].x);
    if (det == 0) throw VerificationFailure("central_point: parallel edges in " + T.triple.str());
    RationalPoint x{(rhs[0] * Rational(n[1].y) - rhs[1] * Rational(n[0].y)) / det,
                    (Rational(n[0].x) * rhs[1] - Rational(n[1].x) * rhs[0]) / det};
    if (dot(n[2], x) != rhs[2] || !P.contains_strictly(x))
        throw VerificationFailure("central_point: no interior point at distance 1/3 from all edges of " +
                                  T.triple.str());
    return x;
}

/// a/(bc) > 2 bc/a, i.e. a^2 > 2 b^2 c^2.
inline bool check_alg_lemma(const MarkovTriple& t) {
    return t.a() * t.a() > 2 * t.b() * t.b() * t.c() * t.c();
}

/// Applies the shear M_k with smallest |k| (ties to k > 0) that puts the
/// apex strictly over the interior of the horizontal edge.
inline std::pair<ViannaTriangle, UnimodularMap> shear_normalize(const ViannaTriangle& T) {
    if (T.triple.is_root()) throw DomainError("shear_normalize: (1,1,1) does not satisfy a/(bc) > 2bc/a");
    auto inside = [&](const Integer& k) {
        Rational x = T.apex_x + Rational(k) * T.height;
        return x > 0 && x < T.ell;
    };
    // Valid k form the open interval (-t/h, (l - t)/h).
    Rational lo = -T.apex_x / T.height;
    Rational hi = (T.ell - T.apex_x) / T.height;
    Integer k = 0;
    if (lo >= 0) {
        k = numerator_of(lo) / denominator_of(lo) + 1;
    } else if (hi <= 0) {
        Integer n = numerator_of(hi), d = denominator_of(hi);
        Integer ceil = n / d;  // truncation rounds toward zero, i.e. up for negatives
        k = ceil - 1;
    }
    if (!inside(k)) throw VerificationFailure("shear_normalize: no shear centers the apex of " + T.triple.str());
    UnimodularMap M = UnimodularMap::shear(k);
    std::array<RationalPoint, 3> v{M(T.vertices[0]), M(T.vertices[1]), M(T.vertices[2])};
    return {detail::assemble_triangle(T.triple, v, T.residue), M};
}

/// Right isosceles triangle with legs h - eps/2, right angle at (t, eps/4),
/// legs along y = eps/4 and x = t; mirrored when the apex is over the right half.
inline std::array<RationalPoint, 3> inscribed_right_triangle_vertices(const ViannaTriangle& T, const Rational& eps) {
    if (eps <= 0 || eps >= T.height) throw DomainError("inscribed_right_triangle: need 0 < eps < h");
    Rational leg = T.height - eps / 2;
    Rational y0 = eps / 4;
    Rational x0 = T.apex_x;
    bool mirrored = T.apex_x * 2 > T.ell;
    Rational x1 = mirrored ? Rational(x0 - leg) : Rational(x0 + leg);
    return {RationalPoint{x0, y0}, RationalPoint{x1, y0}, RationalPoint{x0, y0 + leg}};
}

/// True iff the right triangle of legs h - eps/2 lies in the interior of the
/// shear-normalized triangle T.
inline bool inscribed_right_triangle(const ViannaTriangle& T, const Rational& eps) {
    if (!(T.apex_x > 0 && T.apex_x < T.ell)) throw DomainError("inscribed_right_triangle: triangle is not shear-normalized");
    LatticePolygon P = T.polygon();
    for (const auto& p : inscribed_right_triangle_vertices(T, eps))
        if (!P.contains_strictly(p)) return false;
    return true;
}

/// Lattice width of the base triangle is below 1 = w_G(CP^2) for every triple but (1,1,1).
inline bool check_width_inequality_failure(const MarkovTriple& t) {
    if (t.is_root()) throw DomainError("check_width_inequality_failure: (1,1,1) is the equality case");
    return lattice_width(vianna_triangle(t).polygon()).width.value() < 1;
}

}  // namespace mbl
