#pragma once

// Sentence deciders for curves f(x,y) = 0 and pencils f(v,x,y) = 0: the
// forall-exists question reduces to linear-in-y sections over Q[x] plus a
// covering-congruence check, and the outer existential of exists-forall-
// exists reduces to finitely many candidate slices read off the chart
// eliminants of the projective closure.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "arithgeo/errors.hpp"
#include "arithgeo/modular.hpp"
#include "arithgeo/poly.hpp"
#include "arithgeo/polytope.hpp"
#include "arithgeo/qfeas.hpp"
#include "arithgeo/resultant.hpp"

namespace arithgeo {

enum class Domain { N, Z };
inline const char* to_string(Domain d) { return d == Domain::N ? "N" : "Z"; }

struct SentenceBudgets {
    unsigned long long congruence = 10000000ull;  // largest covering modulus
    unsigned long long enumeration = 10000000ull; // largest pointwise range
};

// ---------------------------------------------------------------------------
// Linear-in-y factor analysis.
// ---------------------------------------------------------------------------

struct LinearFactor {
    RatUniPoly fi; // section y = fi(x)
    unsigned long multiplicity = 1;
};

struct JstAnalysis {
    std::vector<LinearFactor> linear_factors;            // all distinct sections
    SparsePoly cofactor_num{std::vector<std::string>{}}; // f0 = cofactor_num / cofactor_den
    mpz_class cofactor_den{1};
    Domain domain = Domain::Z;
    std::vector<std::size_t> admissible; // factors entering alpha, g, x0
    mpz_class alpha{1};                  // lcm of admissible denominators
    std::vector<UniPoly> g;              // alpha * f_i over the admissible set
    mpz_class x0{0};                     // ceil(max admissible sum of squared coeffs)
};

namespace sentences_detail {

using RatPoly = std::vector<mpq_class>; // dense over Q, ascending, trimmed

inline void rp_trim(RatPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}
inline RatPoly rp_add(const RatPoly& a, const RatPoly& b) {
    RatPoly r(std::max(a.size(), b.size()), mpq_class(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    rp_trim(r);
    return r;
}
inline RatPoly rp_mul(const RatPoly& a, const RatPoly& b) {
    if (a.empty() || b.empty()) return {};
    RatPoly r(a.size() + b.size() - 1, mpq_class(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    rp_trim(r);
    return r;
}
inline mpq_class rp_eval(const RatPoly& a, const mpq_class& t) {
    mpq_class acc = 0;
    for (std::size_t i = a.size(); i-- > 0;) acc = acc * t + a[i];
    return acc;
}

// f as dense coefficients in y over Q[x]. Only x and y may carry degree.
using BiPoly = std::vector<RatPoly>;

inline BiPoly to_bipoly(const SparsePoly& f) {
    long ix = -1, iy = -1;
    const auto& vars = f.vars();
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (vars[i] == "x") ix = static_cast<long>(i);
        else if (vars[i] == "y") iy = static_cast<long>(i);
        else if (f.degree_in(i) > 0)
            throw DomainError("expected a polynomial in x and y, found " + vars[i]);
    }
    BiPoly out;
    for (const auto& [e, c] : f.terms()) {
        unsigned long ex = ix >= 0 ? e[static_cast<std::size_t>(ix)] : 0;
        unsigned long ey = iy >= 0 ? e[static_cast<std::size_t>(iy)] : 0;
        if (out.size() <= ey) out.resize(ey + 1);
        if (out[ey].size() <= ex) out[ey].resize(ex + 1, mpq_class(0));
        out[ey][ex] += mpq_class(c);
    }
    for (auto& row : out) rp_trim(row);
    while (!out.empty() && out.back().empty()) out.pop_back();
    return out;
}

// Quotient of f by (y - u), or nullopt when the division has a remainder.
inline std::optional<BiPoly> bp_divide_linear(const BiPoly& c, const RatPoly& u) {
    if (c.size() < 2) return std::nullopt;
    std::size_t dy = c.size() - 1;
    BiPoly q(dy);
    q[dy - 1] = c[dy];
    for (std::size_t j = dy - 1; j >= 1; --j) q[j - 1] = rp_add(c[j], rp_mul(u, q[j]));
    RatPoly rem = rp_add(c[0], rp_mul(u, q[0]));
    if (!rem.empty()) return std::nullopt;
    while (!q.empty() && q.back().empty()) q.pop_back();
    return q;
}

inline mpz_class rp_ceil(const mpq_class& q) {
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

} // namespace sentences_detail

// Finds every f_i in Q[x] with (y - f_i(x)) | f: f is specialized at
// deg_x f + 1 integer points, the rational y-roots of each specialization are
// matched across points, each selection interpolates to a candidate, and
// candidates are kept only when exact division succeeds. The cofactor
// therefore has no roots in Q[x]. The admissible set, alpha, g_i and x0 are
// derived for the requested domain (over N only sections with positive
// leading coefficient can serve large x).
inline JstAnalysis extract_linear_factors(const SparsePoly& f, Domain domain = Domain::Z) {
    using namespace sentences_detail;
    if (f.is_zero()) throw DomainError("extract_linear_factors of the zero polynomial");
    JstAnalysis out;
    out.domain = domain;
    BiPoly F = to_bipoly(f);

    auto finalize = [&](const BiPoly& cof) {
        mpz_class den = 1;
        for (const RatPoly& row : cof)
            for (const mpq_class& c : row) den = lcm(den, c.get_den());
        SparsePoly num(f.vars());
        long ix = -1, iy = -1;
        const auto& vars = f.vars();
        for (std::size_t i = 0; i < vars.size(); ++i) {
            if (vars[i] == "x") ix = static_cast<long>(i);
            if (vars[i] == "y") iy = static_cast<long>(i);
        }
        for (std::size_t j = 0; j < cof.size(); ++j)
            for (std::size_t i = 0; i < cof[j].size(); ++i) {
                if (cof[j][i] == 0) continue;
                Exponents e(vars.size(), 0);
                if (iy >= 0) e[static_cast<std::size_t>(iy)] = j;
                if (ix >= 0) e[static_cast<std::size_t>(ix)] = i;
                mpq_class scaled = cof[j][i] * mpq_class(den);
                num.add_term(e, scaled.get_num());
            }
        out.cofactor_num = std::move(num);
        out.cofactor_den = den;
        for (std::size_t i = 0; i < out.linear_factors.size(); ++i) {
            const RatUniPoly& fi = out.linear_factors[i].fi;
            if (domain == Domain::Z || (!fi.is_zero() && fi.lc() > 0))
                out.admissible.push_back(i);
        }
        out.alpha = 1;
        for (std::size_t i : out.admissible)
            out.alpha = lcm(out.alpha, out.linear_factors[i].fi.den());
        for (std::size_t i : out.admissible) {
            const RatUniPoly& fi = out.linear_factors[i].fi;
            mpz_class scale = out.alpha / fi.den();
            std::vector<mpz_class> gc = fi.num().coeffs();
            for (mpz_class& c : gc) c *= scale;
            out.g.emplace_back(std::move(gc));
        }
        out.x0 = 0;
        for (std::size_t i : out.admissible)
            out.x0 = std::max(out.x0, rp_ceil(out.linear_factors[i].fi.sum_of_coeff_squares()));
    };

    long dy = static_cast<long>(F.size()) - 1;
    if (dy < 1) {
        finalize(F);
        return out;
    }
    long dx = 0;
    for (const RatPoly& row : F) dx = std::max(dx, static_cast<long>(row.size()) - 1);

    // Specialization points t = 0, 1, -1, 2, -2, ... where f(t, .) != 0.
    std::vector<mpz_class> pts;
    std::vector<std::vector<mpq_class>> roots;
    bool barren = false; // some specialization has no rational y-root
    for (long step = 0; static_cast<long>(pts.size()) < dx + 1 && !barren; ++step) {
        long t = (step % 2 == 0) ? step / 2 : -(step / 2 + 1);
        std::vector<mpz_class> spec(static_cast<std::size_t>(dy) + 1, 0);
        bool zero = true;
        for (std::size_t j = 0; j < F.size(); ++j) {
            mpq_class v = rp_eval(F[j], mpq_class(t));
            spec[j] = v.get_num(); // integer input, integer point
            if (spec[j] != 0) zero = false;
        }
        if (zero) continue;
        std::vector<mpq_class> r = rational_roots(UniPoly(std::move(spec)));
        if (r.empty()) barren = true;
        pts.emplace_back(t);
        roots.push_back(std::move(r));
    }

    if (!barren) {
        // Factor coefficient bound for the cleared form a*y - g(x) of any
        // candidate section, used to discard junk selections cheaply.
        const mpz_class fh = f.max_abs_coeff();
        const mpz_class cbound = mignotte_bound(
            {static_cast<unsigned long>(dx), static_cast<unsigned long>(dy)}, fh,
            {static_cast<unsigned long>(dx) / 2, 1});
        std::vector<RatPoly> candidates;
        std::vector<std::size_t> sel(pts.size());
        auto dfs = [&](auto&& self, std::size_t depth) -> void {
            if (depth == pts.size()) {
                std::vector<mpq_class> ys(pts.size());
                for (std::size_t i = 0; i < pts.size(); ++i) ys[i] = roots[i][sel[i]];
                RatPoly u = resultant_detail::interpolate(pts, ys);
                rp_trim(u);
                mpz_class den = 1;
                for (const mpq_class& c : u) den = lcm(den, c.get_den());
                if (den > cbound) return;
                for (const mpq_class& c : u) {
                    mpq_class scaled = c * mpq_class(den);
                    if (abs(scaled.get_num()) > cbound) return;
                }
                candidates.push_back(std::move(u));
                return;
            }
            for (sel[depth] = 0; sel[depth] < roots[depth].size(); ++sel[depth])
                self(self, depth + 1);
        };
        dfs(dfs, 0);

        BiPoly rem = F;
        for (const RatPoly& u : candidates) {
            unsigned long mult = 0;
            while (auto q = bp_divide_linear(rem, u)) {
                rem = std::move(*q);
                ++mult;
            }
            if (mult) {
                LinearFactor lf;
                lf.fi = u.empty() ? RatUniPoly() : RatUniPoly::from_rationals(u);
                lf.multiplicity = mult;
                out.linear_factors.push_back(std::move(lf));
            }
        }
        finalize(rem);
    } else {
        finalize(F);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Covering congruences.
// ---------------------------------------------------------------------------

struct CoveringResult {
    bool covered = false;
    std::optional<unsigned long> witness; // least residue missed by every g_j
    std::vector<std::pair<std::size_t, unsigned long>> failing; // (j, g_j(t) mod alpha)
};

// True iff every residue t mod alpha zeroes some g_j. Exhaustive with early
// exit; a modulus beyond the budget is an error, never a guess.
inline CoveringResult covering_check(const std::vector<UniPoly>& g, const mpz_class& alpha,
                                     unsigned long long budget = 10000000ull) {
    if (alpha < 1) throw DomainError("covering_check requires alpha >= 1");
    if (alpha > mpz_class(static_cast<unsigned long>(budget)))
        throw BudgetError("covering modulus " + alpha.get_str() + " exceeds the budget " +
                          std::to_string(budget));
    const std::uint64_t a = alpha.get_ui();
    std::vector<std::vector<std::uint64_t>> red;
    for (const UniPoly& gj : g) {
        std::vector<std::uint64_t> c;
        for (const mpz_class& x : gj.coeffs()) c.push_back(mpz_fdiv_ui(x.get_mpz_t(), a));
        red.push_back(std::move(c));
    }
    for (std::uint64_t t = 0; t < a; ++t) {
        bool hit = false;
        for (const auto& c : red) {
            std::uint64_t acc = 0;
            for (std::size_t i = c.size(); i-- > 0;)
                acc = (modular_detail::mulmod(acc, t, a) + c[i]) % a;
            if (acc == 0) {
                hit = true;
                break;
            }
        }
        if (!hit) {
            CoveringResult r;
            r.covered = false;
            r.witness = static_cast<unsigned long>(t);
            for (std::size_t j = 0; j < red.size(); ++j) {
                std::uint64_t acc = 0;
                for (std::size_t i = red[j].size(); i-- > 0;)
                    acc = (modular_detail::mulmod(acc, t, a) + red[j][i]) % a;
                r.failing.emplace_back(j, static_cast<unsigned long>(acc));
            }
            return r;
        }
    }
    return {true, std::nullopt, {}};
}

// ---------------------------------------------------------------------------
// Verdicts.
// ---------------------------------------------------------------------------

enum class CertificateType {
    WitnessMap,      // truth: sections + pointwise witnesses
    FailingX,        // falsity: an x with no y-root in the domain
    CoveringWitness, // falsity: a residue class no section serves
    NoLinearFactor,  // falsity: no admissible section exists
    CandidateList,   // falsity: every candidate slice fails
    NotGeneric,      // refusal: hypothesis violation, sentence undecided
};

inline const char* to_string(CertificateType t) {
    switch (t) {
        case CertificateType::WitnessMap: return "WitnessMap";
        case CertificateType::FailingX: return "FailingX";
        case CertificateType::CoveringWitness: return "CoveringWitness";
        case CertificateType::NoLinearFactor: return "NoLinearFactor";
        case CertificateType::CandidateList: return "CandidateList";
        default: return "NotGeneric";
    }
}

struct Certificate {
    CertificateType type = CertificateType::WitnessMap;
    std::optional<mpz_class> witness; // x', covering residue, or v0
    std::string detail;
};

struct SentenceVerdict {
    bool truth = false; // meaningful only when certificate.type != NotGeneric
    Certificate certificate;
    std::optional<mpz_class> v0;       // accepted outer witness
    std::vector<mpz_class> candidates; // outer candidate set, decision order
    std::vector<std::pair<mpz_class, Certificate>> per_candidate; // failures
};

namespace sentences_detail {

// Least y in the domain with f(x', y) = 0, given the y-specialization.
inline std::optional<mpz_class> least_domain_root(const UniPoly& fy, Domain domain) {
    for (const mpq_class& r : rational_roots(fy)) {
        if (r.get_den() != 1) continue;
        if (domain == Domain::N && r.get_num() < 1) continue;
        return r.get_num(); // roots ascend, so the first match is least
    }
    return std::nullopt;
}

inline UniPoly specialize_x(const SparsePoly& f, const mpz_class& xv) {
    if (f.has_var("x")) return f.substitute("x", mpq_class(xv)).poly.to_unipoly("y");
    return f.to_unipoly("y");
}

} // namespace sentences_detail

// Over N a sentence never meets the coordinate hyperplanes, so monomial
// factors in x and y are dropped; v survives as the outer witness variable.
inline SparsePoly strip_xy_monomials(const SparsePoly& f) {
    Exponents m = f.monomial_content();
    Exponents strip(m.size(), 0);
    bool any = false;
    const auto& vars = f.vars();
    for (std::size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == "x" || vars[i] == "y") {
            strip[i] = m[i];
            any = any || m[i] > 0;
        }
    if (!any) return f;
    return f.divide_monomial(strip);
}

struct GenericityReport {
    bool generic = false;
    std::string reason; // empty when generic
};

// Hypothesis check for the outer-existential reduction: the slice curves'
// Newton polygon (the (x,y) exponent projection) needs an interior lattice
// point, and every chart eliminant of the projective closure must be nonzero.
// Callers that go on to use the eliminants pass out_ch to avoid recomputing.
inline GenericityReport check_genericity(const SparsePoly& f,
                                         ChartResultants* out_ch = nullptr) {
    if (f.is_zero()) throw DomainError("genericity check of the zero polynomial");
    std::set<LatticePoint> proj;
    const auto& vars = f.vars();
    long ix = -1, iy = -1;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (vars[i] == "x") ix = static_cast<long>(i);
        if (vars[i] == "y") iy = static_cast<long>(i);
    }
    for (const auto& [e, c] : f.terms()) {
        long long ex = ix >= 0 ? static_cast<long long>(e[static_cast<std::size_t>(ix)]) : 0;
        long long ey = iy >= 0 ? static_cast<long long>(e[static_cast<std::size_t>(iy)]) : 0;
        proj.insert(LatticePoint{ex, ey});
    }
    LatticePolytope P = hull_of(2, std::vector<LatticePoint>(proj.begin(), proj.end()));
    if (!interior_lattice_point(P))
        return {false,
                "Newton polygon of the (x,y) exponents has no interior lattice point"};
    ChartResultants ch = chart_resultants(f);
    if (!ch.generic()) {
        std::string d = "degenerate chart eliminant(s):";
        for (std::size_t i : ch.degenerate_charts()) d += " " + std::to_string(i);
        return {false, d};
    }
    if (out_ch) *out_ch = std::move(ch);
    return {true, ""};
}

// Decides "for all x in the domain there is y in the domain with f(x,y)=0".
// Over N: at least one admissible section, pointwise witnesses on {1..x0},
// and the covering of Z/alpha by the admissible g_i. Over Z: a section
// exists and the covering holds; no sign or pointwise conditions.
inline SentenceVerdict jst_decide(const SparsePoly& f_in, Domain domain,
                                  const SentenceBudgets& budgets = {}) {
    using namespace sentences_detail;
    if (f_in.is_zero()) throw DomainError("jst_decide of the zero polynomial");
    SparsePoly f = domain == Domain::N ? strip_xy_monomials(f_in) : f_in;
    JstAnalysis an = extract_linear_factors(f, domain);
    SentenceVerdict out;
    if (an.admissible.empty()) {
        out.certificate.type = CertificateType::NoLinearFactor;
        out.certificate.detail =
            an.linear_factors.empty()
                ? "no linear factor y - f_i(x) over Q[x]"
                : "no linear factor with positive leading coefficient";
        return out;
    }
    std::string wmap;
    if (domain == Domain::N) {
        if (an.x0 > mpz_class(static_cast<unsigned long>(budgets.enumeration)))
            throw BudgetError("pointwise range 1..sum-of-squares bound " + an.x0.get_str() +
                              " exceeds the enumeration budget");
        for (unsigned long xv = 1; mpz_class(xv) <= an.x0; ++xv) {
            UniPoly fy = specialize_x(f, mpz_class(xv));
            if (fy.is_zero()) {
                wmap += (wmap.empty() ? "" : " ") + std::string("x=") + std::to_string(xv) + ":any";
                continue;
            }
            std::optional<mpz_class> y = least_domain_root(fy, domain);
            if (!y) {
                out.certificate.type = CertificateType::FailingX;
                out.certificate.witness = mpz_class(xv);
                out.certificate.detail = "f(" + std::to_string(xv) +
                                         ", y) has no root with y >= 1";
                return out;
            }
            wmap += (wmap.empty() ? "" : " ") + std::string("x=") + std::to_string(xv) + ":y=" +
                    y->get_str();
        }
    }
    CoveringResult cov = covering_check(an.g, an.alpha, budgets.congruence);
    if (!cov.covered) {
        out.certificate.type = CertificateType::CoveringWitness;
        out.certificate.witness = mpz_class(*cov.witness);
        std::string d = "t=" + std::to_string(*cov.witness) + " mod " + an.alpha.get_str() + ":";
        for (const auto& [j, res] : cov.failing)
            d += " g_" + std::to_string(j) + "=" + std::to_string(res);
        out.certificate.detail = d;
        return out;
    }
    out.truth = true;
    out.certificate.type = CertificateType::WitnessMap;
    std::string d = std::to_string(an.admissible.size()) + " section(s), alpha=" +
                    an.alpha.get_str();
    if (!wmap.empty()) d += "; " + wmap;
    out.certificate.detail = d;
    return out;
}

namespace sentences_detail {

// Integer roots of f. Divisor enumeration is hopeless for chart eliminants
// (constant terms carry thousands of bits), so roots are found modulo a
// small prime that keeps f squarefree and lifted by Newton iteration until
// the modulus passes twice the Cauchy root bound.
inline std::vector<mpz_class> integer_roots(const UniPoly& f) {
    if (f.is_zero()) throw DomainError("integer_roots of the zero polynomial");
    std::vector<mpz_class> out;
    std::vector<mpz_class> c = f.coeffs();
    std::size_t k = 0;
    while (c[k] == 0) ++k;
    if (k > 0) out.push_back(0);
    std::vector<mpz_class> body(c.begin() + static_cast<long>(k), c.end());
    if (body.size() < 2) return out;
    UniPoly s = squarefree_part(UniPoly(std::move(body)));
    if (s.degree() == 1) {
        mpq_class r = make_rational(-s.coeff(0), s.coeff(1));
        if (r.get_den() == 1) out.push_back(r.get_num());
        std::sort(out.begin(), out.end());
        return out;
    }
    mpz_class maxc = 0;
    for (const mpz_class& x : s.coeffs()) maxc = std::max(maxc, mpz_class(abs(x)));
    mpz_class B;
    mpz_cdiv_q(B.get_mpz_t(), maxc.get_mpz_t(), mpz_class(abs(s.lc())).get_mpz_t());
    B += 1; // every root r satisfies |r| <= 1 + max|c_i| / |lc|
    UniPoly ds = s.derivative();
    int attempts = 0;
    for (std::uint64_t p = 101; attempts < 200; p += 2) {
        if (!modular_detail::probable_prime(p)) continue;
        ++attempts;
        ModPoly m = ModPoly::reduce(s, p);
        if (m.degree() != s.degree()) continue; // leading coefficient lost
        ModPoly md = ModPoly::reduce(ds, p);
        auto g = modular_detail::polygcd(m.coeffs, md.coeffs, p);
        if (g.size() > 1) continue; // repeated roots mod p
        for (std::uint64_t r0 = 0; r0 < p; ++r0) {
            if (m.eval(r0) != 0) continue;
            mpz_class M(static_cast<unsigned long>(p));
            mpz_class r(static_cast<unsigned long>(r0));
            auto eval_mod = [](const UniPoly& h, const mpz_class& at, const mpz_class& mod) {
                mpz_class acc = 0;
                const auto& hc = h.coeffs();
                for (std::size_t i = hc.size(); i-- > 0;) acc = (acc * at + hc[i]) % mod;
                return acc;
            };
            while (M <= 2 * B) {
                M = M * M;
                mpz_class fr = eval_mod(s, r, M);
                mpz_class dfr = eval_mod(ds, r, M);
                mpz_class inv;
                // s'(r) is a unit mod p, hence mod every power of p.
                mpz_invert(inv.get_mpz_t(), dfr.get_mpz_t(), M.get_mpz_t());
                r = (r - fr * inv) % M;
                if (r < 0) r += M;
            }
            if (2 * r > M) r -= M;
            if (abs(r) <= B && s.eval(r) == 0) out.push_back(r);
        }
        std::sort(out.begin(), out.end());
        return out;
    }
    throw BudgetError("integer_roots: no prime kept the polynomial squarefree");
}

} // namespace sentences_detail

// Decides "exists v such that for all x there is y with f(v,x,y) = 0" for
// generic f: a slice can carry a section only at the finitely many v where
// the projective closure of the slice curve is singular, and those v are
// integer roots of the chart eliminants.
inline SentenceVerdict eae_decide(const SparsePoly& f_in, Domain domain,
                                  const SentenceBudgets& budgets = {}) {
    using namespace sentences_detail;
    if (f_in.is_zero()) throw DomainError("eae_decide of the zero polynomial");
    SparsePoly f = domain == Domain::N ? strip_xy_monomials(f_in) : f_in;
    SentenceVerdict out;
    ChartResultants ch{};
    GenericityReport gen = check_genericity(f, &ch);
    if (!gen.generic) {
        out.certificate.type = CertificateType::NotGeneric;
        out.certificate.detail = gen.reason;
        return out;
    }
    std::set<mpz_class> cand;
    for (const UniPoly& r : ch.r)
        for (const mpz_class& v : integer_roots(r)) cand.insert(v);
    std::vector<mpz_class> ordered;
    for (const mpz_class& v : cand)
        if (domain == Domain::Z || v >= 1) ordered.push_back(v);
    if (domain == Domain::Z) {
        // Least witness first: by absolute value, positive before negative.
        std::sort(ordered.begin(), ordered.end(), [](const mpz_class& a, const mpz_class& b) {
            mpz_class aa = abs(a), ab = abs(b);
            if (aa != ab) return aa < ab;
            return a > b;
        });
    }
    out.candidates = ordered;
    for (const mpz_class& v0 : ordered) {
        SparsePoly slice = f.has_var("v") ? f.substitute("v", mpq_class(v0)).poly.drop_var("v") : f;
        if (slice.is_zero()) {
            out.truth = true;
            out.v0 = v0;
            out.certificate.type = CertificateType::WitnessMap;
            out.certificate.witness = v0;
            out.certificate.detail = "slice vanishes identically";
            return out;
        }
        SentenceVerdict jv = jst_decide(slice, domain, budgets);
        if (jv.truth) {
            out.truth = true;
            out.v0 = v0;
            out.certificate = jv.certificate;
            out.certificate.witness = v0;
            out.certificate.detail = "v0=" + v0.get_str() + "; " + jv.certificate.detail;
            return out;
        }
        out.per_candidate.emplace_back(v0, jv.certificate);
    }
    out.truth = false;
    out.certificate.type = CertificateType::CandidateList;
    out.certificate.detail = ordered.empty()
                                 ? "no candidate slice in the domain"
                                 : "every candidate slice fails (" +
                                       std::to_string(ordered.size()) + " tried)";
    return out;
}

// ---------------------------------------------------------------------------
// Brute-force oracle.
// ---------------------------------------------------------------------------

enum class Pattern { ForallExists, ExistsForallExists };

struct BruteResult {
    bool falsified = false;           // definitive counterexamples in the box
    std::optional<mpz_class> witness; // forall-exists: the least failing x
    std::optional<mpz_class> surviving_v; // exists-forall-exists: unfalsified v
};

// Exact pointwise decision over a finite box: for each outer value, exists-y
// is settled by rational_roots of the specialization, so every reported
// counterexample is genuine.
inline BruteResult brute_sentence(const SparsePoly& f, unsigned long B, Pattern pattern,
                                  Domain domain) {
    using namespace sentences_detail;
    if (B < 1 || B > 1000) throw DomainError("brute_sentence box bound must be in 1..1000");
    if (f.is_zero()) throw DomainError("brute_sentence of the zero polynomial");
    auto box = [&](auto&& visit) -> std::optional<mpz_class> {
        if (domain == Domain::N) {
            for (unsigned long t = 1; t <= B; ++t)
                if (visit(mpz_class(t))) return mpz_class(t);
        } else {
            for (unsigned long a = 0; a <= B; ++a)
                for (int sgn : {+1, -1}) {
                    if (a == 0 && sgn < 0) continue;
                    mpz_class t = sgn > 0 ? mpz_class(a) : mpz_class(-static_cast<long>(a));
                    if (visit(t)) return t;
                }
        }
        return std::nullopt;
    };
    auto fails_at_x = [&](const SparsePoly& curve, const mpz_class& xv) -> bool {
        UniPoly fy = specialize_x(curve, xv);
        if (fy.is_zero()) return false;
        return !least_domain_root(fy, domain).has_value();
    };
    BruteResult out;
    if (pattern == Pattern::ForallExists) {
        auto w = box([&](const mpz_class& xv) { return fails_at_x(f, xv); });
        if (w) {
            out.falsified = true;
            out.witness = *w;
        }
        return out;
    }
    auto survivor = box([&](const mpz_class& v0) {
        SparsePoly slice =
            f.has_var("v") ? f.substitute("v", mpq_class(v0)).poly.drop_var("v") : f;
        if (slice.is_zero()) return true; // nothing falsifies this v
        auto w = box([&](const mpz_class& xv) { return fails_at_x(slice, xv); });
        return !w.has_value();
    });
    if (survivor) {
        out.surviving_v = *survivor;
    } else {
        out.falsified = true;
    }
    return out;
}

} // namespace arithgeo
