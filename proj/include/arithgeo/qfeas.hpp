#pragma once

// Rational feasibility from prime density statistics: exact root counting
// over scanned primes drives the one-orbit threshold test, divisor
// enumeration certifies explicit rational points, and a bounded Kronecker
// factorizer supplies exact distinct-factor counts for cross-checks.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "arithgeo/bounds.hpp"
#include "arithgeo/density.hpp"
#include "arithgeo/errors.hpp"
#include "arithgeo/numutil.hpp"
#include "arithgeo/poly.hpp"

namespace arithgeo {

// ---------------------------------------------------------------------------
// Rational roots.
// ---------------------------------------------------------------------------

// All rational roots of f, ascending, in lowest terms. Roots at zero are
// recovered by stripping x-powers; the rest satisfy num | a_0 and den | a_D.
inline std::vector<mpq_class> rational_roots(const UniPoly& f) {
    if (f.is_zero()) throw DomainError("rational_roots of the zero polynomial");
    std::vector<mpz_class> c = f.coeffs();
    std::size_t k = 0;
    while (c[k] == 0) ++k;
    std::set<mpq_class> roots;
    if (k > 0) roots.insert(mpq_class(0));
    std::vector<mpz_class> body(c.begin() + static_cast<long>(k), c.end());
    if (body.size() > 1) {
        const mpz_class a0 = abs(body.front()), aD = abs(body.back());
        UniPoly g{std::vector<mpz_class>(body)};
        for (const mpz_class& b : divisors(a0))
            for (const mpz_class& d : divisors(aD)) {
                mpq_class r = make_rational(b, d);
                if (g.eval(r) == 0) roots.insert(r);
                if (g.eval(mpq_class(-r)) == 0) roots.insert(-r);
            }
    }
    return {roots.begin(), roots.end()};
}

namespace qfeas_detail {

// Quotient of f by g over Z, or nullopt when g does not divide f exactly.
inline std::optional<UniPoly> try_divide(const UniPoly& f, const UniPoly& g) {
    if (g.is_zero() || f.degree() < g.degree()) return std::nullopt;
    std::vector<mpq_class> r(f.coeffs().begin(), f.coeffs().end());
    const long dg = g.degree();
    const mpq_class lg(g.lc());
    std::vector<mpz_class> q(static_cast<std::size_t>(f.degree() - dg) + 1);
    for (long i = f.degree(); i >= dg; --i) {
        mpq_class t = r[static_cast<std::size_t>(i)] / lg;
        if (t.get_den() != 1) return std::nullopt;
        q[static_cast<std::size_t>(i - dg)] = t.get_num();
        for (long j = 0; j <= dg; ++j)
            r[static_cast<std::size_t>(i - dg + j)] -= t * mpq_class(g.coeff(static_cast<std::size_t>(j)));
    }
    for (const mpq_class& x : r)
        if (x != 0) return std::nullopt;
    return UniPoly(std::move(q));
}

// Lagrange interpolation through (nodes[i], values[i]), exact over Q.
inline std::vector<mpq_class> lagrange(const std::vector<long>& nodes,
                                       const std::vector<mpz_class>& values) {
    std::vector<mpq_class> acc(nodes.size(), mpq_class(0));
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        std::vector<mpq_class> basis{mpq_class(1)};
        mpz_class denom = 1;
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            if (j == i) continue;
            basis.push_back(0);
            for (std::size_t t = basis.size() - 1; t > 0; --t)
                basis[t] = basis[t - 1] - mpq_class(nodes[j]) * basis[t];
            basis[0] = -mpq_class(nodes[j]) * basis[0];
            denom *= mpz_class(nodes[i]) - mpz_class(nodes[j]);
        }
        mpq_class scale = make_rational(values[i], denom);
        for (std::size_t t = 0; t < basis.size(); ++t) acc[t] += scale * basis[t];
    }
    return acc;
}

// Number of irreducible factors of a primitive squarefree u with no rational
// roots. Kronecker trial division: a degree-k integer factor g interpolates
// signed divisors of the values u(t_j) at k+1 points, so every candidate is
// enumerated; coefficients are pruned by the factor coefficient bound.
inline unsigned long count_irreducible(const UniPoly& u) {
    const long n = u.degree();
    // Degree 2 or 3 without a rational root has no nontrivial factor.
    if (n <= 3) return 1;
    static const long kPoints[] = {0, 1, -1, 2, -2};
    mpz_class height = 0;
    for (const mpz_class& c : u.coeffs()) height = std::max(height, mpz_class(abs(c)));
    const mpz_class bound = mignotte_bound({static_cast<unsigned long>(n)}, height,
                                           {static_cast<unsigned long>(n) / 2});
    for (long k = 2; 2 * k <= n; ++k) {
        std::vector<long> nodes(kPoints, kPoints + k + 1);
        std::vector<std::vector<mpz_class>> choices;
        for (long t : nodes) {
            mpz_class v = u.eval(mpz_class(t));
            std::vector<mpz_class> ds = divisors(v);
            std::vector<mpz_class> signed_ds;
            for (const mpz_class& d : ds) {
                signed_ds.push_back(d);
                if (!choices.empty()) signed_ds.push_back(-d); // factor sign fixed by d_0 > 0
            }
            choices.push_back(std::move(signed_ds));
        }
        std::vector<mpz_class> tuple(nodes.size());
        // Depth-first over divisor tuples; (t_i - t_j) | (d_i - d_j) prunes early.
        auto dfs = [&](auto&& self, std::size_t depth) -> std::optional<UniPoly> {
            if (depth == nodes.size()) {
                std::vector<mpq_class> co = lagrange(nodes, tuple);
                std::vector<mpz_class> gi(co.size());
                for (std::size_t i = 0; i < co.size(); ++i) {
                    if (co[i].get_den() != 1) return std::nullopt;
                    gi[i] = co[i].get_num();
                    if (abs(gi[i]) > bound) return std::nullopt;
                }
                UniPoly g{std::move(gi)};
                if (g.degree() != k) return std::nullopt;
                if (try_divide(u, g)) return g;
                return std::nullopt;
            }
            for (const mpz_class& d : choices[depth]) {
                bool ok = true;
                for (std::size_t i = 0; i < depth && ok; ++i) {
                    mpz_class gap = mpz_class(nodes[i]) - mpz_class(nodes[depth]);
                    ok = mpz_divisible_p(mpz_class(tuple[i] - d).get_mpz_t(), gap.get_mpz_t()) != 0;
                }
                if (!ok) continue;
                tuple[depth] = d;
                if (auto g = self(self, depth + 1)) return g;
            }
            return std::nullopt;
        };
        if (auto g = dfs(dfs, 0)) {
            UniPoly q = try_divide(u, *g).value();
            return count_irreducible(*g) + count_irreducible(q);
        }
    }
    return 1;
}

} // namespace qfeas_detail

// Exact number of distinct irreducible factors of the squarefree part of f.
// Rational-root linear factors are stripped first; the remainder goes through
// exhaustive bounded trial division. Degree is capped at 8.
inline unsigned long factor_count_oracle(const UniPoly& f) {
    if (f.is_zero()) throw DomainError("factor_count_oracle of the zero polynomial");
    if (f.degree() > 8) throw DomainError("factor_count_oracle: degree exceeds 8");
    if (f.degree() == 0) return 0;
    UniPoly u = squarefree_part(f);
    unsigned long count = 0;
    for (const mpq_class& r : rational_roots(u)) {
        UniPoly lin{std::vector<mpz_class>{-r.get_num(), r.get_den()}};
        u = qfeas_detail::try_divide(u, lin).value(); // primitive linear factor divides exactly
        ++count;
    }
    if (u.degree() >= 2) count += qfeas_detail::count_irreducible(u);
    return count;
}

// ---------------------------------------------------------------------------
// Feasibility decision.
// ---------------------------------------------------------------------------

enum class Feasibility { Feasible, Infeasible, PromiseUnknown };
enum class FeasibilityMode { Rigorous, Empirical };

inline const char* to_string(Feasibility v) {
    switch (v) {
        case Feasibility::Feasible: return "Feasible";
        case Feasibility::Infeasible: return "Infeasible";
        default: return "PromiseUnknown";
    }
}
inline const char* to_string(FeasibilityMode m) {
    return m == FeasibilityMode::Rigorous ? "rigorous" : "empirical";
}

struct FeasibilityVerdict {
    Feasibility verdict = Feasibility::PromiseUnknown;
    FeasibilityMode mode = FeasibilityMode::Empirical;
    std::uint64_t x_used = 0;
    unsigned long long N_F = 0, pi = 0;
    long long estimate_rF = 0;
    std::optional<std::vector<mpq_class>> certificate; // exact common zero
};

struct QfeasOptions {
    unsigned long long cap = 0;                  // 0: max total degree + 1
    unsigned threads = 1;
    unsigned long long scan_budget = 10000000ull; // largest x this host will scan
    unsigned long long enum_budget = 200000ull;   // point search evaluations
};

namespace qfeas_detail {

// Smallest common rational zero of a univariate system, if any.
inline std::optional<mpq_class> common_rational_root(const PolySystem& F) {
    const std::string& var = F.vars().front();
    std::vector<mpq_class> common;
    bool first = true;
    for (const SparsePoly& f : F.polys()) {
        if (f.is_zero()) continue; // vanishes everywhere, constrains nothing
        std::vector<mpq_class> ri = rational_roots(f.to_unipoly(var));
        if (first) {
            common = std::move(ri);
            first = false;
        } else {
            std::vector<mpq_class> keep;
            std::set_intersection(common.begin(), common.end(), ri.begin(), ri.end(),
                                  std::back_inserter(keep));
            common = std::move(keep);
        }
        if (common.empty()) return std::nullopt;
    }
    if (first) return mpq_class(0); // all-zero system: every point is a zero
    return common.front();
}

// Grid search over points with numerators and denominators up to h,
// metered against the evaluation budget. Deterministic scan order.
inline std::optional<std::vector<mpq_class>> grid_point(const PolySystem& F,
                                                        unsigned long long budget) {
    const std::size_t n = F.n();
    unsigned long long used = 0;
    for (long h = 1;; ++h) {
        std::set<mpq_class> vals;
        for (long num = -h; num <= h; ++num)
            for (long den = 1; den <= h; ++den) vals.insert(make_rational(num, den));
        std::vector<mpq_class> grid(vals.begin(), vals.end());
        std::vector<std::size_t> idx(n, 0);
        while (true) {
            std::vector<mpq_class> pt(n);
            for (std::size_t i = 0; i < n; ++i) pt[i] = grid[idx[i]];
            if (++used > budget) return std::nullopt;
            bool zero = true;
            for (const SparsePoly& f : F.polys())
                if (f.eval(pt) != 0) {
                    zero = false;
                    break;
                }
            if (zero) return pt;
            std::size_t i = 0;
            while (i < n && ++idx[i] == grid.size()) idx[i++] = 0;
            if (i == n) break;
        }
    }
}

} // namespace qfeas_detail

// Feasibility decision from the density dichotomy: under the promise the
// ratio N_F/pi concentrates near 1 when no rational point exists and near 2
// or more when one does, so the exact-count threshold
// N_F/pi <= (9/8)^4 declares the one-orbit (infeasible) branch. A Feasible
// verdict is upgraded with a certificate by an independent bounded search;
// when the search fails the verdict is an honest PromiseUnknown.
inline FeasibilityVerdict decide_qfeasible(const PolySystem& F, std::uint64_t x,
                                           FeasibilityMode mode, const QfeasOptions& opts = {}) {
    FeasibilityVerdict out;
    out.mode = mode;
    if (mode == FeasibilityMode::Rigorous) {
        BoundContext ctx = make_context(F);
        if (F.m() == 1 && F.n() == 1) {
            const std::string& var = F.vars().front();
            UniPoly sf = squarefree_part(F.polys().front().to_unipoly(var));
            set_zero_dimensional(ctx, static_cast<unsigned long long>(sf.degree()));
        }
        RigorousM m = rigorous_M(ctx);
        if (m.exponent >= 63 || (std::uint64_t(1) << m.exponent) > opts.scan_budget)
            throw BudgetError("rigorous mode needs x = 2^" + std::to_string(m.exponent) + " (" +
                              std::to_string(m.bit_length) +
                              "-bit), beyond the scan budget of " +
                              std::to_string(opts.scan_budget));
        x = std::uint64_t(1) << m.exponent;
    } else {
        if (x < 1000) throw DomainError("empirical mode requires x >= 10^3");
    }
    unsigned long long cap = opts.cap ? opts.cap : sizes(F).d + 1;
    ScanOptions so;
    so.threads = opts.threads;
    DensityReport rep = scan(F, x, cap, so);
    out.x_used = x;
    out.N_F = rep.N_F;
    out.pi = rep.pi;
    out.estimate_rF = estimate_rF(rep);
    // 4096 N_F <= 6561 pi is N_F/pi <= (9/8)^4, exact; ties fall to Infeasible.
    if (4096 * mpz_class(static_cast<unsigned long>(out.N_F)) <=
        6561 * mpz_class(static_cast<unsigned long>(out.pi))) {
        out.verdict = Feasibility::Infeasible;
        return out;
    }
    std::optional<std::vector<mpq_class>> point;
    if (F.n() == 1) {
        if (auto r = qfeas_detail::common_rational_root(F)) point = std::vector<mpq_class>{*r};
    } else {
        point = qfeas_detail::grid_point(F, opts.enum_budget);
    }
    if (point) {
        for (const SparsePoly& f : F.polys())
            if (f.eval(*point) != 0) throw DomainError("certificate verification failed");
        out.verdict = Feasibility::Feasible;
        out.certificate = std::move(point);
    } else {
        out.verdict = Feasibility::PromiseUnknown;
    }
    return out;
}

} // namespace arithgeo
