#pragma once

// Explicit height, discriminant, and density-error bounds. Every evaluator
// returns a rigorous enclosure of its closed-form expression: integer inputs
// enter exactly, transcendental steps are outward-rounded intervals.
//
// Size convention: sigma values are bit sizes (1 + ceil(log2(|c|+1)))
// and are fed as-is into the natural-log expressions. Bit size dominates
// the natural-log height, so every bound stays valid.

#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "arithgeo/errors.hpp"
#include "arithgeo/interval.hpp"
#include "arithgeo/numutil.hpp"
#include "arithgeo/poly.hpp"
#include "arithgeo/polytope.hpp"

namespace arithgeo {

// alpha = 2 - 3/(4 ln 2), the sharp constant in the single-variable
// coefficient-size comparison; alpha < 0.91798.
inline RInterval alpha_const(mpfr_prec_t prec = RInterval::kDefaultPrec) {
    RInterval four_ln2 = RInterval::of_long(4, prec) * RInterval::log2_const(prec);
    return RInterval::of_long(2, prec) - RInterval::of_long(3, prec) / four_ln2;
}

// Shape data of a polynomial system, the common input of the bound formulas.
struct BoundContext {
    unsigned long n = 1;              // number of variables
    unsigned long m = 1;              // number of polynomials
    unsigned long d = 0;              // max total degree
    unsigned long sigma = 1;          // max coefficient bit size
    unsigned long long volume = 1;    // normalized volume V_F of Q_F
    unsigned long mu = 1;             // max monomial count of a single f_i
    unsigned long k = 1;              // total monomial count
    mpz_class c{1};                   // max |coefficient|
    unsigned long long delta = 1;     // degree parameter; V_F unless certified
    bool zero_dim_certified = false;  // delta is the finite solution count
    std::vector<unsigned long> proj;  // axis projection lengths of n*Q_F
};

inline BoundContext make_context(const PolySystem& F) {
    BoundContext ctx;
    ctx.n = F.n();
    ctx.m = F.m();
    SizeRecord rec = sizes(F);
    ctx.d = rec.d;
    ctx.sigma = rec.sigma;
    ctx.volume = normalized_volume(qf_polytope(F));
    if (ctx.volume == 0) throw DomainError("system with volume-deficient polytope");
    ctx.mu = 0;
    ctx.k = 0;
    ctx.c = 0;
    for (const SparsePoly& f : F.polys()) {
        unsigned long t = static_cast<unsigned long>(f.terms().size());
        ctx.mu = std::max(ctx.mu, t);
        ctx.k += t;
        mpz_class a = f.max_abs_coeff();
        if (a > ctx.c) ctx.c = a;
    }
    ctx.delta = ctx.volume;
    ctx.proj = projection_lengths(F);
    return ctx;
}

// Certify that the solution set is finite with exactly z points. Tightens
// every degree parameter from V_F to z; only valid when m <= n.
inline void set_zero_dimensional(BoundContext& ctx, unsigned long long z) {
    if (ctx.m > ctx.n) throw DomainError("zero-dimensional certificate requires m <= n");
    if (z == 0) throw DomainError("zero-dimensional certificate with empty solution set");
    ctx.delta = z;
    ctx.zero_dim_certified = true;
}

// A bound enclosure together with the formula it came from and the inputs
// that entered it, so reports can be audited without re-deriving anything.
struct BoundValue {
    RInterval value;
    std::string formula;
    std::vector<std::pair<std::string, std::string>> inputs;
    std::vector<std::string> notes;
};

namespace bounds_detail {

inline void require_finite(const RInterval& v, const char* what) {
    if (!v.is_finite()) throw DomainError(std::string(what) + ": enclosure overflowed");
}

inline void echo(BoundValue& b, const char* key, const std::string& val) {
    b.inputs.emplace_back(key, val);
}
inline void echo(BoundValue& b, const char* key, unsigned long long val) {
    b.inputs.emplace_back(key, std::to_string(val));
}

inline void echo_context(BoundValue& b, const BoundContext& ctx) {
    echo(b, "n", ctx.n);
    echo(b, "m", ctx.m);
    echo(b, "d", ctx.d);
    echo(b, "sigma", ctx.sigma);
    echo(b, "V_F", ctx.volume);
    echo(b, "mu", ctx.mu);
    echo(b, "k", ctx.k);
    echo(b, "c", ctx.c.get_str());
    echo(b, "delta", ctx.delta);
    echo(b, "zero_dim", std::string(ctx.zero_dim_certified ? "yes" : "no"));
}

inline RInterval ln_ulong(unsigned long long v, mpfr_prec_t prec) {
    return RInterval::of_mpz(mpz_class(static_cast<unsigned long>(v)), prec).log();
}

} // namespace bounds_detail

// x(1/ln x + 1/ln^2 x) - 2/ln 2 with the multiplicative windows that bracket
// Li(x) (factor 1 + 6/ln x) and pi(x) (factor 1 + 7/ln x, x > 2).
struct LiBracket {
    RInterval approx;
    RInterval li_factor;
    RInterval pi_factor;
};

inline LiBracket li_bracket(const mpz_class& x, mpfr_prec_t prec = RInterval::kDefaultPrec) {
    if (x <= 2) throw DomainError("li_bracket requires x > 2");
    RInterval xi = RInterval::of_mpz(x, prec);
    RInterval lnx = xi.log();
    RInterval one = RInterval::of_long(1, prec);
    LiBracket out{RInterval(prec), RInterval(prec), RInterval(prec)};
    out.approx = xi * (one / lnx + one / (lnx * lnx)) -
                 RInterval::of_long(2, prec) / RInterval::log2_const(prec);
    out.li_factor = one + RInterval::of_long(6, prec) / lnx;
    out.pi_factor = one + RInterval::of_long(7, prec) / lnx;
    bounds_detail::require_finite(out.approx, "li_bracket");
    return out;
}

// Coefficient bound for a factor of a multivariate polynomial: the exact
// integer ceiling of c * prod_i binom(d_i, j_i) * sqrt(prod_i (d_i + 1)).
inline mpz_class mignotte_bound(const std::vector<unsigned long>& deg,
                                const mpz_class& c,
                                const std::vector<unsigned long>& idx) {
    if (deg.size() != idx.size()) throw DomainError("mignotte_bound: degree/index length mismatch");
    if (deg.empty()) throw DomainError("mignotte_bound: empty degree vector");
    if (c < 0) throw DomainError("mignotte_bound: negative height");
    mpz_class binprod = 1;
    mpz_class dimprod = 1;
    for (std::size_t i = 0; i < deg.size(); ++i) {
        if (idx[i] > deg[i]) throw DomainError("mignotte_bound: index exceeds degree");
        binprod *= binomial_mpz(deg[i], idx[i]);
        dimprod *= mpz_class(deg[i]) + 1;
    }
    // ceil(sqrt(c^2 * binprod^2 * dimprod)) computed on the exact radicand
    mpz_class radicand = c * c * binprod * binprod * dimprod;
    mpz_class root, rem;
    mpz_sqrtrem(root.get_mpz_t(), rem.get_mpz_t(), radicand.get_mpz_t());
    if (rem != 0) root += 1;
    return root;
}

// Bit-size form for a univariate factor: sigma(g) <= sigma(f) + (d1 + alpha) ln 2.
inline BoundValue mignotte_sigma(unsigned long sigma_f, unsigned long d1,
                                 mpfr_prec_t prec = RInterval::kDefaultPrec) {
    BoundValue b;
    b.formula = "factor-sigma";
    bounds_detail::echo(b, "sigma_f", sigma_f);
    bounds_detail::echo(b, "d1", d1);
    RInterval a = alpha_const(prec);
    b.value = RInterval::of_ulong(sigma_f, prec) +
              (RInterval::of_ulong(d1, prec) + a) * RInterval::log2_const(prec);
    bounds_detail::require_finite(b.value, "mignotte_sigma");
    return b;
}

namespace bounds_detail {

// (2d-1) s + ((2d-1)/2) ln(d+1) + (d/2) ln(d(2d+1)/6) on an enclosed height s.
inline RInterval disc_log_core(const RInterval& s, unsigned long long delta, mpfr_prec_t prec) {
    if (delta == 0) throw DomainError("disc_log_bound requires degree >= 1");
    mpz_class dd(static_cast<unsigned long>(delta));
    RInterval two_d1 = RInterval::of_mpz(2 * dd - 1, prec);
    RInterval half = RInterval::of_mpq(mpq_class(1, 2), prec);
    RInterval t1 = two_d1 * s;
    RInterval t2 = two_d1 * half * RInterval::of_mpz(dd + 1, prec).log();
    RInterval t3 = RInterval::of_mpz(dd, prec) * half *
                   RInterval::of_mpq(make_rational(dd * (2 * dd + 1), 6), prec).log();
    return t1 + t2 + t3;
}

} // namespace bounds_detail

// ln|disc(g)| bound for deg g = delta and coefficient bit size sigma_g.
inline BoundValue disc_log_bound(unsigned long sigma_g, unsigned long long delta,
                                 mpfr_prec_t prec = RInterval::kDefaultPrec) {
    BoundValue b;
    b.formula = "disc-log";
    bounds_detail::echo(b, "sigma", sigma_g);
    bounds_detail::echo(b, "delta", delta);
    b.value = bounds_detail::disc_log_core(RInterval::of_ulong(sigma_g, prec), delta, prec);
    bounds_detail::require_finite(b.value, "disc_log_bound");
    return b;
}

// Monomial-count bound for the eliminant:
// e^{1/8} (e^n / sqrt(n+1)) V_F + prod_i (p_i + 2) - prod_i (p_i + 1).
inline BoundValue MF_bound(const BoundContext& ctx, mpfr_prec_t prec = RInterval::kDefaultPrec) {
    if (ctx.proj.size() != ctx.n) throw DomainError("MF_bound: projection lengths missing");
    BoundValue b;
    b.formula = "monomial-count";
    bounds_detail::echo_context(b, ctx);
    RInterval e8 = RInterval::of_mpq(mpq_class(1, 8), prec).exp();
    RInterval en = RInterval::of_ulong(ctx.n, prec).exp();
    RInterval head = e8 * en / RInterval::of_ulong(ctx.n + 1, prec).sqrt() *
                     RInterval::of_mpz(mpz_class(static_cast<unsigned long>(ctx.volume)), prec);
    mpz_class prod2 = 1, prod1 = 1;
    for (unsigned long p : ctx.proj) {
        prod2 *= mpz_class(p) + 2;
        prod1 *= mpz_class(p) + 1;
    }
    b.value = head + RInterval::of_mpz(prod2 - prod1, prec);
    bounds_detail::require_finite(b.value, "MF_bound");
    return b;
}

// Coefficient bit-size bound for the eliminant h_F. For m <= n:
//   sigma(h_F) <= ln[ (16 sqrt2 / e^3) (sqrt(n+1)/(n V_F)) 4^{M_F}
//                     (n^{3/2} ceil(n W(W-1)/4))^{V_F}
//                     (sqrt(mu) (c + ceil(k M_F / 2)))^{M_F - V_F} ]
// where W = V_F, or the certified solution count when one is set (adding
// the summand (V_F + alpha) ln 2). For m > n the last base becomes
// sqrt(mu) (m ceil(m V_F / 2) c + ceil(k M_F / 2)).
inline BoundValue sigma_hF_bound(const BoundContext& ctx,
                                 mpfr_prec_t prec = RInterval::kDefaultPrec) {
    BoundValue b;
    b.formula = "eliminant-sigma";
    bounds_detail::echo_context(b, ctx);
    RInterval MF = MF_bound(ctx, prec).value;
    RInterval ln2 = RInterval::log2_const(prec);
    RInterval half = RInterval::of_mpq(mpq_class(1, 2), prec);
    RInterval VF = RInterval::of_mpz(mpz_class(static_cast<unsigned long>(ctx.volume)), prec);

    // ln(16 sqrt2 / e^3) + (1/2) ln(n+1) - ln(n V_F)
    RInterval head = RInterval::of_long(16, prec).log() + half * ln2 -
                     RInterval::of_long(3, prec) +
                     half * bounds_detail::ln_ulong(ctx.n + 1, prec) -
                     (bounds_detail::ln_ulong(ctx.n, prec) + VF.log());
    RInterval total = head + MF * RInterval::of_long(4, prec).log();

    // middle factor (n^{3/2} ceil(n W (W-1) / 4))^{V_F}
    unsigned long long W = ctx.zero_dim_certified ? ctx.delta : ctx.volume;
    mpz_class wz(static_cast<unsigned long>(W));
    mpz_class ceil_w;
    mpz_class num = mpz_class(ctx.n) * wz * (wz - 1);
    mpz_cdiv_q_ui(ceil_w.get_mpz_t(), num.get_mpz_t(), 4);
    if (ceil_w < 1) {
        ceil_w = 1;
        b.notes.push_back("ceiling term raised to 1");
    }
    RInterval mid = RInterval::of_mpq(mpq_class(3, 2), prec) *
                        bounds_detail::ln_ulong(ctx.n, prec) +
                    RInterval::of_mpz(ceil_w, prec).log();
    total = total + VF * mid;

    // last factor, exponent M_F - V_F
    RInterval ceil_kMF = (RInterval::of_ulong(ctx.k, prec) * MF * half).ceil();
    RInterval inner(prec);
    if (ctx.m <= ctx.n) {
        inner = RInterval::of_mpz(ctx.c, prec) + ceil_kMF;
    } else {
        mpz_class mv = mpz_class(ctx.m) * mpz_class(static_cast<unsigned long>(ctx.volume));
        mpz_class ceil_mv;
        mpz_cdiv_q_ui(ceil_mv.get_mpz_t(), mv.get_mpz_t(), 2);
        inner = RInterval::of_mpz(mpz_class(ctx.m) * ceil_mv * ctx.c, prec) + ceil_kMF;
    }
    RInterval last = half * bounds_detail::ln_ulong(ctx.mu, prec) + inner.log();
    total = total + (MF - VF) * last;

    if (ctx.zero_dim_certified) {
        total = total + (VF + alpha_const(prec)) * ln2;
        b.notes.push_back("degree parameter tightened to solution count");
    }
    if (total.lo_double() < 0) {
        total = RInterval::max(total, RInterval::of_long(0, prec));
        b.notes.push_back("bound raised to 0");
    }
    b.value = total;
    bounds_detail::require_finite(b.value, "sigma_hF_bound");
    return b;
}

// Heights of the primitive-element data derived from the eliminant:
// sigma(h_hat), ln B_1, sigma(r), sigma(h_i), and ln a_i. The degree
// parameter delta is V_F, or the certified solution count when set.
struct PrimBounds {
    BoundValue sigma_hat;  // coefficient bit size of the normalized eliminant
    BoundValue b1_log;     // ln B_1, the root-separation radius
    RInterval b1;          // B_1 itself
    BoundValue sigma_r;    // bit size of the interpolation denominator r
    BoundValue sigma_hi;   // bit size of the coordinate polynomials h_i
    BoundValue log_ai;     // ln a_i for the leading coefficients a_i
};

inline PrimBounds prim_bounds(const BoundContext& ctx,
                              mpfr_prec_t prec = RInterval::kDefaultPrec) {
    unsigned long long delta = ctx.delta;
    unsigned long long dprime = ctx.zero_dim_certified ? ctx.delta : ctx.volume;
    mpz_class dz(static_cast<unsigned long>(delta));
    RInterval ln2 = RInterval::log2_const(prec);
    RInterval half = RInterval::of_mpq(mpq_class(1, 2), prec);
    RInterval a = alpha_const(prec);

    PrimBounds out;

    // sigma(h_hat) <= sigma(h_F) + delta' ln(2n+1) + (V_F + alpha) ln 2
    BoundValue sig_hF = sigma_hF_bound(ctx, prec);
    out.sigma_hat.formula = "normalized-eliminant-sigma";
    out.sigma_hat.inputs = sig_hF.inputs;
    out.sigma_hat.notes = sig_hF.notes;
    out.sigma_hat.value =
        sig_hF.value +
        RInterval::of_mpz(mpz_class(static_cast<unsigned long>(dprime)), prec) *
            bounds_detail::ln_ulong(2 * ctx.n + 1, prec) +
        (RInterval::of_mpz(mpz_class(static_cast<unsigned long>(ctx.volume)), prec) + a) * ln2;
    bounds_detail::require_finite(out.sigma_hat.value, "prim_bounds sigma_hat");
    const RInterval& sh = out.sigma_hat.value;

    // ln B_1 = (delta-1)[ln 4 + (delta+1) ln 16 - 9/4 + (5/2) ln(delta+1)]
    //          + 2 (delta-1) sigma(h_hat)
    RInterval dm1 = RInterval::of_mpz(dz - 1, prec);
    RInterval bracket = RInterval::of_long(4, prec).log() +
                        RInterval::of_mpz(dz + 1, prec) * RInterval::of_long(16, prec).log() -
                        RInterval::of_mpq(mpq_class(9, 4), prec) +
                        RInterval::of_mpq(mpq_class(5, 2), prec) *
                            RInterval::of_mpz(dz + 1, prec).log();
    out.b1_log.formula = "separation-log";
    bounds_detail::echo(out.b1_log, "delta", delta);
    out.b1_log.value = dm1 * bracket + RInterval::of_long(2, prec) * dm1 * sh;
    bounds_detail::require_finite(out.b1_log.value, "prim_bounds b1_log");
    out.b1 = out.b1_log.value.exp();

    // sigma(r) <= ((delta^2 - delta + 2)/2) ln(B_1^2 + delta(delta-1)/2)
    mpz_class d2 = dz * dz;
    RInterval arg = (RInterval::of_long(2, prec) * out.b1_log.value).exp() +
                    RInterval::of_mpq(make_rational(dz * (dz - 1), 2), prec);
    out.sigma_r.formula = "denominator-sigma";
    bounds_detail::echo(out.sigma_r, "delta", delta);
    out.sigma_r.value = RInterval::of_mpq(make_rational(d2 - dz + 2, 2), prec) * arg.log();
    bounds_detail::require_finite(out.sigma_r.value, "prim_bounds sigma_r");
    const RInterval& sr = out.sigma_r.value;

    // sigma(h_i) <= (2 delta^2 - 2 delta + 1) sigma(r) + (2 delta^2 + 1) sigma(h_hat)
    //              + delta^2 ln(delta^2+1) + (delta+1) ln(delta+1) + ln(delta^2-delta+1)
    RInterval ln_d21 = RInterval::of_mpz(d2 + 1, prec).log();
    RInterval ln_d1 = RInterval::of_mpz(dz + 1, prec).log();
    out.sigma_hi.formula = "coordinate-sigma";
    bounds_detail::echo(out.sigma_hi, "delta", delta);
    out.sigma_hi.value = RInterval::of_mpz(2 * d2 - 2 * dz + 1, prec) * sr +
                         RInterval::of_mpz(2 * d2 + 1, prec) * sh +
                         RInterval::of_mpz(d2, prec) * ln_d21 +
                         RInterval::of_mpz(dz + 1, prec) * ln_d1 +
                         RInterval::of_mpz(d2 - dz + 1, prec).log();
    bounds_detail::require_finite(out.sigma_hi.value, "prim_bounds sigma_hi");

    // ln a_i <= delta(delta-1) sigma(r) + (delta^2+1) sigma(h_hat)
    //           + (1/2)[delta^2 ln(delta^2+1) + delta ln(delta+1)]
    out.log_ai.formula = "leading-coeff-log";
    bounds_detail::echo(out.log_ai, "delta", delta);
    out.log_ai.value = RInterval::of_mpz(dz * (dz - 1), prec) * sr +
                       RInterval::of_mpz(d2 + 1, prec) * sh +
                       half * (RInterval::of_mpz(d2, prec) * ln_d21 +
                               RInterval::of_mpz(dz, prec) * ln_d1);
    bounds_detail::require_finite(out.log_ai.value, "prim_bounds log_ai");
    return out;
}

namespace bounds_detail {

// Shared body of the congruence-count error term once ln x and sqrt x are fixed.
inline RInterval bFx_core(const BoundContext& ctx, const RInterval& lnx,
                          const RInterval& sqrtx, mpfr_prec_t prec) {
    PrimBounds pb = prim_bounds(ctx, prec);
    RInterval lnD = disc_log_core(pb.sigma_hat.value, ctx.delta, prec);
    RInterval S = RInterval::of_ulong(ctx.n, prec) * pb.log_ai.value;
    RInterval dlt = RInterval::of_mpz(mpz_class(static_cast<unsigned long>(ctx.delta)), prec);
    RInterval two = RInterval::of_long(2, prec);
    RInterval four = RInterval::of_long(4, prec);
    RInterval n2 = two * RInterval::of_ulong(ctx.n, prec);
    RInterval inner = four * lnD + (two * dlt * (lnD + n2 + two * S)) / sqrtx;
    return (four * dlt * lnx * lnx + inner * lnx) / sqrtx;
}

inline void require_x_range(const mpz_class& x) {
    if (x <= 33766) throw DomainError("error bound valid only for x > 33766");
}

} // namespace bounds_detail

// Error term b(F,x) of the congruence root-count asymptotic:
// [4 d ln^2 x + (4 ln|D| + 2 d (ln|D| + 2n + 2 sum ln a_i)/sqrt x) ln x]/sqrt x
// with d = delta and D the discriminant of the normalized eliminant.
inline BoundValue bFx(const BoundContext& ctx, const mpz_class& x,
                      mpfr_prec_t prec = RInterval::kDefaultPrec) {
    bounds_detail::require_x_range(x);
    BoundValue b;
    b.formula = "count-error";
    bounds_detail::echo_context(b, ctx);
    bounds_detail::echo(b, "x", x.get_str());
    RInterval xi = RInterval::of_mpz(x, prec);
    b.value = bounds_detail::bFx_core(ctx, xi.log(), xi.sqrt(), prec);
    bounds_detail::require_finite(b.value, "bFx");
    return b;
}

// Same bound at x = 2^k2, evaluated from k2 ln 2 so huge exponents stay cheap.
inline BoundValue bFx_pow2(const BoundContext& ctx, unsigned long k2,
                           mpfr_prec_t prec = RInterval::kDefaultPrec) {
    if (k2 < 16) throw DomainError("error bound valid only for x > 33766");
    BoundValue b;
    b.formula = "count-error";
    bounds_detail::echo_context(b, ctx);
    bounds_detail::echo(b, "x", "2^" + std::to_string(k2));
    RInterval lnx = RInterval::of_ulong(k2, prec) * RInterval::log2_const(prec);
    RInterval sqrtx = (lnx * RInterval::of_mpq(mpq_class(1, 2), prec)).exp();
    b.value = bounds_detail::bFx_core(ctx, lnx, sqrtx, prec);
    bounds_detail::require_finite(b.value, "bFx");
    return b;
}

// Density upper-bound factor for a certified solution count z >= 2:
// (1 - 1/z)(1 + [(z!+1) ln^2 x + 2(z! ln|D_g| + (z/(z-1))(sigma(h_F)+1)/sqrt x) ln x]/sqrt x)
// with ln|D_g| <= 2(z-1)(sigma(h_F) + (V_F+alpha) ln 2)
//               + ((2z-1)/2) ln(z+1) + (z/2) ln(z(2z+1)/6).
inline BoundValue assertion1_bound(const BoundContext& ctx, unsigned long long zf,
                                   const mpz_class& x,
                                   mpfr_prec_t prec = RInterval::kDefaultPrec) {
    bounds_detail::require_x_range(x);
    if (zf < 2) throw DomainError("density factor requires solution count >= 2");
    BoundValue b;
    b.formula = "density-factor";
    bounds_detail::echo_context(b, ctx);
    bounds_detail::echo(b, "z", zf);
    bounds_detail::echo(b, "x", x.get_str());

    mpz_class zz(static_cast<unsigned long>(zf));
    RInterval sig = sigma_hF_bound(ctx, prec).value;
    RInterval ln2 = RInterval::log2_const(prec);
    RInterval half = RInterval::of_mpq(mpq_class(1, 2), prec);
    RInterval VF = RInterval::of_mpz(mpz_class(static_cast<unsigned long>(ctx.volume)), prec);
    RInterval lnDg =
        RInterval::of_mpz(2 * (zz - 1), prec) * (sig + (VF + alpha_const(prec)) * ln2) +
        RInterval::of_mpz(2 * zz - 1, prec) * half * RInterval::of_mpz(zz + 1, prec).log() +
        RInterval::of_mpz(zz, prec) * half *
            RInterval::of_mpq(make_rational(zz * (2 * zz + 1), 6), prec).log();

    RInterval xi = RInterval::of_mpz(x, prec);
    RInterval lnx = xi.log();
    RInterval sqrtx = xi.sqrt();
    RInterval fact = RInterval::of_mpz(factorial_mpz(static_cast<unsigned long>(zf)), prec);
    RInterval one = RInterval::of_long(1, prec);
    RInterval ratio = RInterval::of_mpq(make_rational(zz, zz - 1), prec);
    RInterval numer = (fact + one) * lnx * lnx +
                      RInterval::of_long(2, prec) *
                          (fact * lnDg + ratio * (sig + one) / sqrtx) * lnx;
    b.value = (one - one / RInterval::of_mpz(zz, prec)) * (one + numer / sqrtx);
    bounds_detail::require_finite(b.value, "assertion1_bound");
    return b;
}

// Height threshold a*_F = n + n * sigma(h_F)-bound.
inline BoundValue aF_star(const BoundContext& ctx, mpfr_prec_t prec = RInterval::kDefaultPrec) {
    BoundValue b;
    b.formula = "a-star";
    bounds_detail::echo_context(b, ctx);
    RInterval nn = RInterval::of_ulong(ctx.n, prec);
    b.value = nn + nn * sigma_hF_bound(ctx, prec).value;
    bounds_detail::require_finite(b.value, "aF_star");
    return b;
}

// Smallest power of two M > 33766 with b(F, M) < target, found by doubling
// then bisection on the exponent. The error term is strictly decreasing on
// the admissible range, so the exponent search is monotone.
struct RigorousM {
    unsigned long exponent;     // M = 2^exponent
    unsigned long bit_length;   // exponent + 1
    RInterval attained;         // enclosure of b(F, M)
};

inline RigorousM rigorous_M(const BoundContext& ctx, const mpq_class& target = mpq_class(1, 10),
                            mpfr_prec_t start_prec = RInterval::kDefaultPrec) {
    if (target <= 0) throw DomainError("rigorous_M requires a positive target");
    auto below = [&](unsigned long k2) -> bool {
        for (mpfr_prec_t prec = start_prec; prec <= (mpfr_prec_t(1) << 16); prec *= 2) {
            std::optional<bool> cmp = bFx_pow2(ctx, k2, prec).value.less_than(target);
            if (cmp) return *cmp;
        }
        throw DomainError("rigorous_M: threshold comparison undecided at maximum precision");
    };
    unsigned long hi = 16;
    while (!below(hi)) {
        if (hi > (1ul << 24)) throw DomainError("rigorous_M: no admissible exponent found");
        hi *= 2;
    }
    unsigned long lo = (hi == 16) ? 15 : hi / 2;  // 2^15 < 33766: inadmissible sentinel
    while (hi - lo > 1) {
        unsigned long mid = lo + (hi - lo) / 2;
        if (mid < 16) break;
        if (below(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    RigorousM out;
    out.exponent = hi;
    out.bit_length = hi + 1;
    out.attained = bFx_pow2(ctx, hi, start_prec).value;
    return out;
}

} // namespace arithgeo
