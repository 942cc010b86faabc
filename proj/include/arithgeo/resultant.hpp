#pragma once

// Sylvester resultants, discriminants, and the per-chart resultants used to
// locate the parameter values where a pencil of plane curves degenerates.
//
// Integer determinants are computed fraction-free: the univariate resultant
// runs the subresultant remainder sequence (Bareiss elimination specialized
// to the Sylvester band structure), and explicit matrices go through Bareiss
// pivoting.  Polynomial-entry resultants are recovered by evaluating the
// matrix entries at integer points and densely interpolating the result.

#include <algorithm>
#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"
#include "numutil.hpp"
#include "poly.hpp"

namespace arithgeo {

// ---------------------------------------------------------------------------
// Square matrices.
// ---------------------------------------------------------------------------

template <class T>
struct SquareMatrix {
    std::vector<std::vector<T>> rows;
    std::size_t dim() const { return rows.size(); }
};

// Sylvester matrix of f and g: (deg f + deg g) square, deg g rows of f's
// coefficients followed by deg f rows of g's, each shifted one column right.
// Entry (i, i+j) of an f-row holds the coefficient of x^(deg f - j).
inline SquareMatrix<mpz_class> sylvester_matrix(const UniPoly& f, const UniPoly& g) {
    if (f.is_zero() || g.is_zero())
        throw DomainError("sylvester matrix of the zero polynomial");
    const long df = f.degree(), dg = g.degree();
    if (df == 0 && dg == 0)
        throw DomainError("sylvester matrix: both polynomials are constant");
    const std::size_t n = static_cast<std::size_t>(df + dg);
    SquareMatrix<mpz_class> m;
    m.rows.assign(n, std::vector<mpz_class>(n, 0));
    for (long i = 0; i < dg; ++i)
        for (long j = 0; j <= df; ++j) m.rows[i][i + j] = f.coeff(df - j);
    for (long i = 0; i < df; ++i)
        for (long j = 0; j <= dg; ++j) m.rows[dg + i][i + j] = g.coeff(dg - j);
    return m;
}

// Fraction-free (Bareiss) determinant; every division below is exact over Z.
inline mpz_class bareiss_det(SquareMatrix<mpz_class> m) {
    const std::size_t n = m.dim();
    if (n == 0) return 1;
    for (const auto& r : m.rows)
        if (r.size() != n) throw DomainError("bareiss determinant: matrix not square");
    int sign = 1;
    mpz_class prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t piv = k;
        while (piv < n && m.rows[piv][k] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != k) {
            std::swap(m.rows[piv], m.rows[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                mpz_class num = m.rows[k][k] * m.rows[i][j] - m.rows[i][k] * m.rows[k][j];
                if (!mpz_divisible_p(num.get_mpz_t(), prev.get_mpz_t()))
                    throw DomainError("bareiss determinant: inexact division");
                mpz_divexact(m.rows[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
            m.rows[i][k] = 0;
        }
        prev = m.rows[k][k];
    }
    mpz_class det = m.rows[n - 1][n - 1];
    return sign < 0 ? mpz_class(-det) : det;
}

namespace resultant_detail {

inline mpz_class divexact_checked(const mpz_class& a, const mpz_class& b, const char* what) {
    if (b == 0 || !mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t())) throw DomainError(what);
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline UniPoly divexact_scalar(const UniPoly& p, const mpz_class& s) {
    if (p.is_zero()) return p;
    std::vector<mpz_class> c(p.coeffs());
    for (auto& x : c)
        x = divexact_checked(x, s, "subresultant sequence: inexact division");
    return UniPoly(std::move(c));
}

}  // namespace resultant_detail

// ---------------------------------------------------------------------------
// Univariate resultant over Z.
// ---------------------------------------------------------------------------

// Determinant of the Sylvester matrix of f and g.  Computed by the
// subresultant pseudo-remainder sequence with integer contents stripped up
// front; Res(f, 0) = 0, and two constants have no Sylvester matrix.
inline mpz_class resultant(const UniPoly& f, const UniPoly& g) {
    if (f.degree() <= 0 && g.degree() <= 0)
        throw DomainError("resultant: both inputs constant");
    if (f.is_zero() || g.is_zero()) return 0;

    UniPoly a = f.primitive_part(), b = g.primitive_part();
    mpz_class scale = pow_mpz(f.content(), static_cast<unsigned long>(g.degree())) *
                      pow_mpz(g.content(), static_cast<unsigned long>(f.degree()));
    int sign = 1;
    if (a.degree() < b.degree()) {
        std::swap(a, b);
        if ((a.degree() & 1) && (b.degree() & 1)) sign = -sign;
    }
    mpz_class gg = 1, h = 1;
    while (b.degree() > 0) {
        const long delta = a.degree() - b.degree();
        if ((a.degree() & 1) && (b.degree() & 1)) sign = -sign;
        UniPoly r = a.prem(b);
        a = b;
        b = resultant_detail::divexact_scalar(
            r, gg * pow_mpz(h, static_cast<unsigned long>(delta)));
        if (b.is_zero()) return 0;
        gg = a.lc();
        if (delta == 1) {
            h = gg;
        } else if (delta > 1) {
            h = resultant_detail::divexact_checked(
                pow_mpz(gg, static_cast<unsigned long>(delta)),
                pow_mpz(h, static_cast<unsigned long>(delta - 1)),
                "subresultant sequence: inexact division");
        }
    }
    const unsigned long da = static_cast<unsigned long>(a.degree());
    mpz_class res = resultant_detail::divexact_checked(
        pow_mpz(b.lc(), da), pow_mpz(h, da - 1),
        "subresultant sequence: inexact division");
    res *= scale;
    return sign < 0 ? mpz_class(-res) : res;
}

// ---------------------------------------------------------------------------
// Discriminant.
// ---------------------------------------------------------------------------

// Discriminant of f of degree D >= 1 with leading coefficient a_D:
// (-1)^(D(D-1)/2) / a_D times the determinant of the (2D-1)-square matrix
// whose first D-1 rows carry f's coefficients and last D rows carry f''s.
// The division is exact; the result vanishes iff f has a repeated root.
inline mpz_class discriminant(const UniPoly& f) {
    const long d = f.degree();
    if (d < 1) throw DomainError("discriminant requires degree >= 1");
    if (d == 1) return 1;
    mpz_class det = bareiss_det(sylvester_matrix(f, f.derivative()));
    if (((d * (d - 1) / 2) & 1) != 0) det = -det;
    return resultant_detail::divexact_checked(
        det, f.lc(), "discriminant: determinant not divisible by leading coefficient");
}

// ---------------------------------------------------------------------------
// Resultants with polynomial entries.
// ---------------------------------------------------------------------------

namespace resultant_detail {

// Newton interpolation through (xs[i], ys[i]), nodes pairwise distinct.
// Returns dense coefficients, constant term first, length xs.size().
inline std::vector<mpq_class> interpolate(const std::vector<mpz_class>& xs,
                                          const std::vector<mpq_class>& ys) {
    const std::size_t n = xs.size();
    if (n == 0 || ys.size() != n) throw DomainError("interpolation: bad node count");
    std::vector<mpq_class> dd = ys;
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t i = n - 1; i >= level; --i) {
            mpq_class step(xs[i] - xs[i - level]);
            dd[i] = (dd[i] - dd[i - 1]) / step;
        }
    std::vector<mpq_class> coef(n, 0), basis(n, 0);
    basis[0] = 1;
    std::size_t blen = 1;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < blen; ++i) coef[i] += dd[k] * basis[i];
        if (k + 1 < n) {
            mpq_class root(xs[k]);
            for (std::size_t i = blen; i-- > 0;) {
                basis[i + 1] += basis[i];
                basis[i] *= -root;
            }
            ++blen;
        }
    }
    return coef;
}

inline mpz_class require_integer(const mpq_class& q, const char* what) {
    if (q.get_den() != 1) throw DomainError(what);
    return q.get_num();
}

// Specialize dense var-coefficients (SparsePoly entries with the eliminated
// variable's exponent zero) at an integer assignment of the remaining vars.
inline UniPoly specialize(const std::vector<SparsePoly>& cs,
                          const std::vector<mpq_class>& point) {
    std::vector<mpz_class> c(cs.size());
    for (std::size_t i = 0; i < cs.size(); ++i)
        c[i] = require_integer(cs[i].eval(point), "specialization not integral");
    return UniPoly(std::move(c));
}

}  // namespace resultant_detail

// Resultant of f and g with respect to var, eliminating it.  The remaining
// entries may involve at most two further variables; the determinant of the
// symbolic Sylvester matrix is recovered by evaluation at integer points and
// dense Newton interpolation.  With one parameter variable the evaluation
// points are consecutive integers from 0, skipping points where a leading
// coefficient vanishes (the specialized matrix would lose rows there); with
// two, the full rectangular grid keeps the matrix shape fixed and Bareiss
// runs on each specialization.  Res(f, 0) = 0 by convention.
inline SparsePoly resultant(const SparsePoly& f, const SparsePoly& g, const std::string& var) {
    if (f.vars() != g.vars())
        throw DomainError("resultant: variable lists differ");
    const std::size_t vi = f.var_index(var);
    const long df = f.degree_in(vi), dg = g.degree_in(vi);
    if (df <= 0 && dg <= 0)
        throw DomainError("resultant: both inputs constant in " + var);
    if (f.is_zero() || g.is_zero()) return SparsePoly(f.vars());
    if (dg <= 0) return g.pow(static_cast<unsigned long>(df));
    if (df <= 0) return f.pow(static_cast<unsigned long>(dg));

    const auto fc = f.coeffs_in(var);
    const auto gc = g.coeffs_in(var);
    const std::size_t nv = f.vars().size();

    std::vector<std::size_t> active;
    std::vector<unsigned long> fmax(nv, 0), gmax(nv, 0);
    for (std::size_t w = 0; w < nv; ++w) {
        if (w == vi) continue;
        for (const auto& e : fc)
            fmax[w] = std::max(fmax[w], static_cast<unsigned long>(std::max(0l, e.degree_in(w))));
        for (const auto& e : gc)
            gmax[w] = std::max(gmax[w], static_cast<unsigned long>(std::max(0l, e.degree_in(w))));
        if (fmax[w] > 0 || gmax[w] > 0) active.push_back(w);
    }

    if (active.empty())
        return SparsePoly::constant(f.vars(), resultant(f.to_unipoly(var), g.to_unipoly(var)));
    if (active.size() > 2)
        throw DomainError("resultant: more than two parameter variables is unsupported");

    // Row-sum degree bound: deg g rows of f-entries plus deg f rows of g-entries.
    auto bound_in = [&](std::size_t w) {
        return static_cast<unsigned long>(dg) * fmax[w] + static_cast<unsigned long>(df) * gmax[w];
    };

    SparsePoly out(f.vars());
    if (active.size() == 1) {
        const std::size_t w = active[0];
        const unsigned long need = bound_in(w) + 1;
        std::vector<mpz_class> nodes;
        std::vector<mpq_class> values;
        std::vector<mpq_class> point(nv, 0);
        for (unsigned long t = 0; nodes.size() < need; ++t) {
            point[w] = mpq_class(t);
            if (fc.back().eval(point) == 0 || gc.back().eval(point) == 0) continue;
            UniPoly sf = resultant_detail::specialize(fc, point);
            UniPoly sg = resultant_detail::specialize(gc, point);
            nodes.emplace_back(t);
            values.emplace_back(resultant(sf, sg));
        }
        const auto coef = resultant_detail::interpolate(nodes, values);
        for (std::size_t k = 0; k < coef.size(); ++k) {
            mpz_class c = resultant_detail::require_integer(
                coef[k], "interpolated resultant not integral");
            Exponents e(nv, 0);
            e[w] = k;
            out.add_term(e, c);
        }
        return out;
    }

    const std::size_t w1 = active[0], w2 = active[1];
    const unsigned long d1 = bound_in(w1), d2 = bound_in(w2);
    // values[a1][a2] = det of the entry-evaluated Sylvester matrix; the
    // determinant commutes with entry evaluation, so no points are skipped.
    std::vector<std::vector<mpq_class>> values(
        d1 + 1, std::vector<mpq_class>(d2 + 1));
    std::vector<mpq_class> point(nv, 0);
    for (unsigned long a1 = 0; a1 <= d1; ++a1) {
        point[w1] = mpq_class(static_cast<unsigned long>(a1));
        for (unsigned long a2 = 0; a2 <= d2; ++a2) {
            point[w2] = mpq_class(static_cast<unsigned long>(a2));
            std::vector<mpz_class> fv(fc.size()), gv(gc.size());
            for (std::size_t i = 0; i < fc.size(); ++i)
                fv[i] = resultant_detail::require_integer(fc[i].eval(point),
                                                          "specialization not integral");
            for (std::size_t i = 0; i < gc.size(); ++i)
                gv[i] = resultant_detail::require_integer(gc[i].eval(point),
                                                          "specialization not integral");
            const std::size_t n = static_cast<std::size_t>(df + dg);
            SquareMatrix<mpz_class> m;
            m.rows.assign(n, std::vector<mpz_class>(n, 0));
            for (long i = 0; i < dg; ++i)
                for (long j = 0; j <= df; ++j) m.rows[i][i + j] = fv[df - j];
            for (long i = 0; i < df; ++i)
                for (long j = 0; j <= dg; ++j) m.rows[dg + i][i + j] = gv[dg - j];
            values[a1][a2] = mpq_class(bareiss_det(std::move(m)));
        }
    }
    std::vector<mpz_class> nodes2(d2 + 1);
    for (unsigned long a2 = 0; a2 <= d2; ++a2) nodes2[a2] = static_cast<unsigned long>(a2);
    std::vector<std::vector<mpq_class>> lines(d1 + 1);
    for (unsigned long a1 = 0; a1 <= d1; ++a1)
        lines[a1] = resultant_detail::interpolate(nodes2, values[a1]);
    std::vector<mpz_class> nodes1(d1 + 1);
    for (unsigned long a1 = 0; a1 <= d1; ++a1) nodes1[a1] = static_cast<unsigned long>(a1);
    for (unsigned long k2 = 0; k2 <= d2; ++k2) {
        std::vector<mpq_class> column(d1 + 1);
        for (unsigned long a1 = 0; a1 <= d1; ++a1) column[a1] = lines[a1][k2];
        const auto coef = resultant_detail::interpolate(nodes1, column);
        for (std::size_t k1 = 0; k1 < coef.size(); ++k1) {
            mpz_class c = resultant_detail::require_integer(
                coef[k1], "interpolated resultant not integral");
            Exponents e(nv, 0);
            e[w1] = k1;
            e[w2] = k2;
            out.add_term(e, c);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Chart resultants of the pencil of plane curves f(v, x, y) = 0.
// ---------------------------------------------------------------------------

// Per-chart eliminant of the projective closure of the slice curves.  Chart 0
// is the affine chart (Z = 1) and charts 1 and 2 the Y = 1 and X = 1 views of
// the closure under the (x, y)-homogenization.  In each chart, with equation
// q(v, s, t) = 0, the eliminant is
//   R(v) = Res_s(Res_t(q, dq/ds), Res_t(q, dq/dt)),
// which vanishes at every v whose slice has a singular point visible in the
// chart.  A chart is degenerate when an elimination step is vacuous (both
// arguments free of the eliminated variable) or R is identically zero; that
// outcome is reported in-band rather than thrown, since the union of integer
// roots of the nonzero charts is only meaningful when no chart degenerates.
struct ChartResultants {
    std::array<UniPoly, 3> r{};
    std::array<bool, 3> degenerate{};

    bool generic() const { return !degenerate[0] && !degenerate[1] && !degenerate[2]; }
    std::vector<std::size_t> degenerate_charts() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < 3; ++i)
            if (degenerate[i]) out.push_back(i);
        return out;
    }
};

inline ChartResultants chart_resultants(const SparsePoly& f0) {
    for (const auto& name : f0.vars())
        if (name != "v" && name != "x" && name != "y")
            throw DomainError("chart resultants expect variables among v, x, y");

    const std::vector<std::string> cv{"v", "s", "t"};
    // Exponent triples (e_v, e_x, e_y) of f on a fixed variable order.
    std::vector<std::pair<std::array<unsigned long, 3>, mpz_class>> tms;
    std::array<long, 3> pos{-1, -1, -1};
    const std::array<std::string, 3> names{"v", "x", "y"};
    for (std::size_t i = 0; i < 3; ++i)
        if (f0.has_var(names[i])) pos[i] = static_cast<long>(f0.var_index(names[i]));
    unsigned long dxy = 0;
    bool involves_xy = false;
    for (const auto& [e, c] : f0.terms()) {
        std::array<unsigned long, 3> t{0, 0, 0};
        for (std::size_t i = 0; i < 3; ++i)
            if (pos[i] >= 0) t[i] = e[static_cast<std::size_t>(pos[i])];
        if (t[1] + t[2] > 0) involves_xy = true;
        dxy = std::max(dxy, t[1] + t[2]);
        tms.emplace_back(t, c);
    }
    if (!involves_xy)
        throw DomainError("chart resultants: polynomial does not involve x or y");

    // Chart equations from the (x, y)-homogenization X^a Y^b Z^(dxy-a-b).
    std::array<SparsePoly, 3> q{SparsePoly(cv), SparsePoly(cv), SparsePoly(cv)};
    for (const auto& [t, c] : tms) {
        const unsigned long zexp = dxy - t[1] - t[2];
        q[0].add_term(Exponents{t[0], t[1], t[2]}, c);
        q[1].add_term(Exponents{t[0], t[1], zexp}, c);
        q[2].add_term(Exponents{t[0], t[2], zexp}, c);
    }

    ChartResultants out;
    for (std::size_t i = 0; i < 3; ++i) {
        bool vacuous = false;
        auto elim = [&vacuous](const SparsePoly& a, const SparsePoly& b,
                               const std::string& w) -> SparsePoly {
            if (a.degree_in(w) <= 0 && b.degree_in(w) <= 0) {
                vacuous = true;
                return SparsePoly(a.vars());
            }
            if (a.is_zero() || b.is_zero()) return SparsePoly(a.vars());
            return resultant(a, b, w);
        };
        const SparsePoly qs = q[i].derivative("s");
        const SparsePoly qt = q[i].derivative("t");
        SparsePoly r1 = elim(q[i], qs, "t");
        SparsePoly r2 = vacuous ? SparsePoly(cv) : elim(q[i], qt, "t");
        SparsePoly r = vacuous ? SparsePoly(cv) : elim(r1, r2, "s");
        out.degenerate[i] = vacuous || r.is_zero();
        if (!out.degenerate[i]) out.r[i] = r.to_unipoly("v");
    }
    return out;
}

}  // namespace arithgeo
