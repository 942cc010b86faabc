#pragma once

// Lattice polytopes in ambient dimension <= 3: Newton polytopes, the Q_F
// polytope (exponents plus origin and standard basis), strict interior
// lattice points, normalized volume (n! times Euclidean volume), and the
// per-axis projection lengths of n*Q_F.

#include <array>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "arithgeo/errors.hpp"
#include "arithgeo/poly.hpp"

namespace arithgeo {

using LatticePoint = std::vector<long long>;

struct Facet {
    std::array<long long, 3> normal; // outward: normal . x <= b for the hull
    long long b;
};

struct LatticePolytope {
    std::size_t ambient = 0;            // n <= 3
    std::size_t affine_rank = 0;        // dimension of the affine hull
    std::vector<LatticePoint> vertices; // exactly the extreme points
    std::vector<Facet> facets;          // populated only when affine_rank == ambient
};

namespace polytope_detail {

using I128 = __int128;

inline I128 dot3(const std::array<long long, 3>& n, const LatticePoint& p) {
    I128 s = 0;
    for (std::size_t i = 0; i < p.size(); ++i) s += static_cast<I128>(n[i]) * p[i];
    return s;
}

// Rank of the set {p - base} by fraction-free elimination.
inline std::size_t affine_rank_of(const std::vector<LatticePoint>& pts) {
    if (pts.empty()) return 0;
    std::size_t dim = pts[0].size();
    std::vector<std::vector<mpq_class>> rows;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        std::vector<mpq_class> r(dim);
        for (std::size_t j = 0; j < dim; ++j) r[j] = static_cast<long>(pts[i][j] - pts[0][j]);
        rows.push_back(std::move(r));
    }
    std::size_t rank = 0;
    for (std::size_t col = 0; col < dim && rank < rows.size(); ++col) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t i = rank + 1; i < rows.size(); ++i) {
            if (rows[i][col] == 0) continue;
            mpq_class f = rows[i][col] / rows[rank][col];
            for (std::size_t j = col; j < dim; ++j) rows[i][j] -= f * rows[rank][j];
        }
        ++rank;
    }
    return rank;
}

inline long long cross2(const LatticePoint& o, const LatticePoint& a, const LatticePoint& b,
                        std::size_t ix, std::size_t iy) {
    I128 v = static_cast<I128>(a[ix] - o[ix]) * (b[iy] - o[iy]) -
             static_cast<I128>(a[iy] - o[iy]) * (b[ix] - o[ix]);
    return static_cast<long long>(v);
}

// Monotone-chain hull over coordinates (ix, iy); strictly extreme points
// only, counterclockwise order.
inline std::vector<LatticePoint> hull2(std::vector<LatticePoint> pts, std::size_t ix,
                                       std::size_t iy) {
    std::sort(pts.begin(), pts.end(), [&](const LatticePoint& a, const LatticePoint& b) {
        return a[ix] != b[ix] ? a[ix] < b[ix] : a[iy] < b[iy];
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() <= 2) return pts;
    std::vector<LatticePoint> h;
    for (const auto& p : pts) { // lower
        while (h.size() >= 2 && cross2(h[h.size() - 2], h.back(), p, ix, iy) <= 0) h.pop_back();
        h.push_back(p);
    }
    std::size_t lower = h.size() + 1;
    for (auto it = pts.rbegin(); it != pts.rend(); ++it) { // upper
        while (h.size() >= lower && cross2(h[h.size() - 2], h.back(), *it, ix, iy) <= 0)
            h.pop_back();
        h.push_back(*it);
    }
    h.pop_back();
    return h;
}

struct FacetKey {
    std::array<long long, 4> v;
    bool operator<(const FacetKey& o) const { return v < o.v; }
};

} // namespace polytope_detail

// Convex hull (vertex + facet representation) of an integer point set.
inline LatticePolytope hull_of(std::size_t ambient, std::vector<LatticePoint> pts) {
    using namespace polytope_detail;
    if (ambient < 1 || ambient > 3) throw DomainError("ambient dimension must be 1..3");
    if (pts.empty()) throw DomainError("empty point set");
    for (auto& p : pts) {
        if (p.size() != ambient) throw DomainError("point dimension mismatch");
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    LatticePolytope P;
    P.ambient = ambient;
    P.affine_rank = affine_rank_of(pts);

    if (P.affine_rank == 0) {
        P.vertices = {pts[0]};
        return P;
    }

    if (ambient == 1) {
        P.vertices = {pts.front(), pts.back()};
        P.facets = {{{-1, 0, 0}, -pts.front()[0]}, {{1, 0, 0}, pts.back()[0]}};
        return P;
    }

    if (P.affine_rank == 1) {
        // Segment: extremes are the lexicographic endpoints along the line.
        std::sort(pts.begin(), pts.end());
        P.vertices = {pts.front(), pts.back()};
        return P;
    }

    if (ambient == 2) {
        auto h = hull2(pts, 0, 1);
        P.vertices = h;
        for (std::size_t i = 0; i < h.size(); ++i) {
            const auto& a = h[i];
            const auto& b = h[(i + 1) % h.size()];
            // CCW polygon: outward normal of edge a->b is (dy, -dx).
            std::array<long long, 3> nrm{b[1] - a[1], -(b[0] - a[0]), 0};
            P.facets.push_back({nrm, static_cast<long long>(dot3(nrm, a))});
        }
        return P;
    }

    // ambient == 3
    if (P.affine_rank == 2) {
        // Planar: project along an axis the plane is not parallel to.
        LatticePoint u(3), w(3);
        bool got_u = false, got_w = false;
        for (std::size_t i = 1; i < pts.size() && !got_w; ++i) {
            LatticePoint d(3);
            for (int j = 0; j < 3; ++j) d[j] = pts[i][j] - pts[0][j];
            if (!got_u) {
                u = d;
                got_u = true;
                continue;
            }
            // independent from u?
            I128 c0 = static_cast<I128>(u[1]) * d[2] - static_cast<I128>(u[2]) * d[1];
            I128 c1 = static_cast<I128>(u[2]) * d[0] - static_cast<I128>(u[0]) * d[2];
            I128 c2 = static_cast<I128>(u[0]) * d[1] - static_cast<I128>(u[1]) * d[0];
            if (c0 != 0 || c1 != 0 || c2 != 0) {
                w = {static_cast<long long>(c0), static_cast<long long>(c1),
                     static_cast<long long>(c2)};
                got_w = true;
            }
        }
        // w is the plane normal; drop the axis with the largest |component|.
        std::size_t drop = 0;
        for (std::size_t j = 1; j < 3; ++j)
            if (std::abs(w[j]) > std::abs(w[drop])) drop = j;
        std::size_t ix = drop == 0 ? 1 : 0, iy = drop == 2 ? 1 : 2;
        auto h = hull2(pts, ix, iy);
        P.vertices = h;
        std::sort(P.vertices.begin(), P.vertices.end());
        return P;
    }

    // Full-dimensional in 3D: supporting planes from point triples.
    std::set<FacetKey> seen;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            for (std::size_t k = j + 1; k < pts.size(); ++k) {
                const auto &a = pts[i], &b = pts[j], &c = pts[k];
                I128 n0 = static_cast<I128>(b[1] - a[1]) * (c[2] - a[2]) -
                          static_cast<I128>(b[2] - a[2]) * (c[1] - a[1]);
                I128 n1 = static_cast<I128>(b[2] - a[2]) * (c[0] - a[0]) -
                          static_cast<I128>(b[0] - a[0]) * (c[2] - a[2]);
                I128 n2 = static_cast<I128>(b[0] - a[0]) * (c[1] - a[1]) -
                          static_cast<I128>(b[1] - a[1]) * (c[0] - a[0]);
                if (n0 == 0 && n1 == 0 && n2 == 0) continue;
                std::array<long long, 3> nrm{static_cast<long long>(n0),
                                             static_cast<long long>(n1),
                                             static_cast<long long>(n2)};
                I128 bb = dot3(nrm, a);
                bool above = false, below = false;
                for (const auto& q : pts) {
                    I128 s = dot3(nrm, q) - bb;
                    if (s > 0) above = true;
                    if (s < 0) below = true;
                    if (above && below) break;
                }
                if (above && below) continue;
                if (above) { // flip to outward
                    for (auto& x : nrm) x = -x;
                    bb = -bb;
                }
                long long g = 0;
                for (auto x : nrm) g = std::gcd(g, std::abs(x));
                g = std::gcd(g, static_cast<long long>(bb < 0 ? -bb : bb));
                if (g == 0) g = 1;
                FacetKey key{{nrm[0] / g, nrm[1] / g, nrm[2] / g, static_cast<long long>(bb) / g}};
                if (seen.insert(key).second)
                    P.facets.push_back({{key.v[0], key.v[1], key.v[2]}, key.v[3]});
            }

    // Vertices: points on >= 3 facets whose normals span rank 3.
    for (const auto& p : pts) {
        std::vector<LatticePoint> normals;
        for (const auto& f : P.facets)
            if (dot3(f.normal, p) == f.b)
                normals.push_back({f.normal[0], f.normal[1], f.normal[2]});
        if (normals.size() < 3) continue;
        normals.push_back({0, 0, 0}); // base point for affine rank = linear rank
        std::swap(normals.front(), normals.back());
        if (affine_rank_of(normals) == 3) P.vertices.push_back(p);
    }
    std::sort(P.vertices.begin(), P.vertices.end());
    return P;
}

inline LatticePolytope newton(const SparsePoly& f) {
    if (f.is_zero()) throw DomainError("Newton polytope of zero polynomial");
    std::vector<LatticePoint> pts;
    for (const auto& [e, c] : f.terms()) {
        LatticePoint p;
        for (auto x : e) p.push_back(static_cast<long long>(x));
        pts.push_back(std::move(p));
    }
    return hull_of(f.vars().size(), std::move(pts));
}

// Q_F: hull of all exponent vectors together with the origin and the
// standard basis vectors.
inline LatticePolytope qf_polytope(const PolySystem& F) {
    std::size_t n = F.n();
    std::vector<LatticePoint> pts;
    pts.push_back(LatticePoint(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        LatticePoint e(n, 0);
        e[i] = 1;
        pts.push_back(std::move(e));
    }
    for (const auto& f : F.polys())
        for (const auto& [e, c] : f.terms()) {
            LatticePoint p;
            for (auto x : e) p.push_back(static_cast<long long>(x));
            pts.push_back(std::move(p));
        }
    return hull_of(n, std::move(pts));
}

// Lexicographically first lattice point strictly inside P, if any. Polytopes
// of deficient dimension have empty interior.
inline std::optional<LatticePoint> interior_lattice_point(const LatticePolytope& P) {
    using namespace polytope_detail;
    if (P.affine_rank < P.ambient) return std::nullopt;
    std::vector<long long> lo(P.ambient), hi(P.ambient);
    for (std::size_t i = 0; i < P.ambient; ++i) {
        lo[i] = hi[i] = P.vertices[0][i];
        for (const auto& v : P.vertices) {
            lo[i] = std::min(lo[i], v[i]);
            hi[i] = std::max(hi[i], v[i]);
        }
    }
    LatticePoint p(P.ambient);
    std::function<std::optional<LatticePoint>(std::size_t)> scan =
        [&](std::size_t i) -> std::optional<LatticePoint> {
        if (i == P.ambient) {
            for (const auto& f : P.facets)
                if (dot3(f.normal, p) >= f.b) return std::nullopt;
            return p;
        }
        for (long long v = lo[i]; v <= hi[i]; ++v) {
            p[i] = v;
            if (auto r = scan(i + 1)) return r;
        }
        return std::nullopt;
    };
    return scan(0);
}

// n! times the Euclidean n-volume (ambient n); 0 for deficient dimension.
inline unsigned long long normalized_volume(const LatticePolytope& P) {
    using namespace polytope_detail;
    if (P.affine_rank < P.ambient) return 0;
    if (P.ambient == 1) return static_cast<unsigned long long>(P.vertices.back()[0] - P.vertices.front()[0]);
    if (P.ambient == 2) {
        // hull2 order is CCW; shoelace gives 2*area.
        auto h = hull2(P.vertices, 0, 1);
        I128 twice = 0;
        for (std::size_t i = 0; i < h.size(); ++i) {
            const auto& a = h[i];
            const auto& b = h[(i + 1) % h.size()];
            twice += static_cast<I128>(a[0]) * b[1] - static_cast<I128>(a[1]) * b[0];
        }
        if (twice < 0) twice = -twice;
        return static_cast<unsigned long long>(twice);
    }
    // 3D: sum of |det| over a fan of tetrahedra from v0 across each facet
    // not containing v0, each facet fan-triangulated in its own hull order.
    const LatticePoint& v0 = P.vertices.front();
    I128 six = 0;
    for (const auto& f : P.facets) {
        if (dot3(f.normal, v0) == f.b) continue;
        std::vector<LatticePoint> on;
        for (const auto& v : P.vertices)
            if (dot3(f.normal, v) == f.b) on.push_back(v);
        std::size_t drop = 0;
        for (std::size_t j = 1; j < 3; ++j)
            if (std::abs(f.normal[j]) > std::abs(f.normal[drop])) drop = j;
        std::size_t ix = drop == 0 ? 1 : 0, iy = drop == 2 ? 1 : 2;
        auto poly = hull2(on, ix, iy);
        for (std::size_t t = 1; t + 1 < poly.size(); ++t) {
            const auto &a = poly[0], &b = poly[t], &c = poly[t + 1];
            I128 m[3][3];
            for (int j = 0; j < 3; ++j) {
                m[0][j] = a[j] - v0[j];
                m[1][j] = b[j] - v0[j];
                m[2][j] = c[j] - v0[j];
            }
            I128 det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                       m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                       m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
            six += det < 0 ? -det : det;
        }
    }
    return static_cast<unsigned long long>(six);
}

// Projection lengths p_i of n*Q_F: n times (max - min) of coordinate i over
// the Q_F vertices.
inline std::vector<unsigned long> projection_lengths(const PolySystem& F) {
    LatticePolytope Q = qf_polytope(F);
    std::size_t n = F.n();
    std::vector<unsigned long> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        long long lo = Q.vertices[0][i], hi = lo;
        for (const auto& v : Q.vertices) {
            lo = std::min(lo, v[i]);
            hi = std::max(hi, v[i]);
        }
        out[i] = static_cast<unsigned long>(n) * static_cast<unsigned long>(hi - lo);
    }
    return out;
}

} // namespace arithgeo
