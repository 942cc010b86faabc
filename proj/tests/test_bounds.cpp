#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <optional>
#include <random>
#include <vector>

#include "arithgeo/bounds.hpp"
#include "arithgeo/modular.hpp"
#include "arithgeo/poly.hpp"

using namespace arithgeo;

namespace {

// Independent recomputation of every closed form in long double arithmetic.
// The library path goes through outward-rounded MPFR intervals; agreement to
// ten significant digits checks both sides.

constexpr long double kLn2 = 0.69314718055994530942L;
constexpr long double kAlpha = 2.0L - 3.0L / (4.0L * kLn2);

struct CtxLd {
    long double n, m, V, mu, k, c, delta;
    std::vector<long double> proj;
    bool zdim = false;
};

CtxLd mirror(const BoundContext& ctx) {
    CtxLd t;
    t.n = static_cast<long double>(ctx.n);
    t.m = static_cast<long double>(ctx.m);
    t.V = static_cast<long double>(ctx.volume);
    t.mu = static_cast<long double>(ctx.mu);
    t.k = static_cast<long double>(ctx.k);
    t.c = ctx.c.get_d();
    t.delta = static_cast<long double>(ctx.delta);
    for (unsigned long p : ctx.proj) t.proj.push_back(static_cast<long double>(p));
    t.zdim = ctx.zero_dim_certified;
    return t;
}

long double mf_ld(const CtxLd& t) {
    long double head = expl(0.125L) * expl(t.n) / sqrtl(t.n + 1) * t.V;
    long double p2 = 1, p1 = 1;
    for (long double p : t.proj) {
        p2 *= p + 2;
        p1 *= p + 1;
    }
    return head + (p2 - p1);
}

long double sigma_hF_ld(const CtxLd& t) {
    long double MF = mf_ld(t);
    long double W = t.zdim ? t.delta : t.V;
    long double s = logl(16.0L * sqrtl(2.0L)) - 3.0L + 0.5L * logl(t.n + 1) -
                    logl(t.n * t.V) + MF * logl(4.0L);
    long double cw = ceill(t.n * W * (W - 1) / 4);
    if (cw < 1) cw = 1;
    s += t.V * logl(powl(t.n, 1.5L) * cw);
    long double inner = (t.m <= t.n) ? t.c + ceill(t.k * MF / 2)
                                     : t.m * ceill(t.m * t.V / 2) * t.c + ceill(t.k * MF / 2);
    s += (MF - t.V) * logl(sqrtl(t.mu) * inner);
    if (t.zdim) s += (t.V + kAlpha) * kLn2;
    return s < 0 ? 0 : s;
}

struct PrimLd {
    long double sh, b1log, sr, shi, lai;
};

PrimLd prim_ld(const CtxLd& t) {
    long double dl = t.delta;
    long double dp = t.zdim ? t.delta : t.V;
    PrimLd p;
    p.sh = sigma_hF_ld(t) + dp * logl(2 * t.n + 1) + (t.V + kAlpha) * kLn2;
    long double bracket =
        logl(4.0L) + (dl + 1) * logl(16.0L) - 2.25L + 2.5L * logl(dl + 1);
    p.b1log = (dl - 1) * bracket + 2 * (dl - 1) * p.sh;
    p.sr = ((dl * dl - dl + 2) / 2) * logl(expl(2 * p.b1log) + dl * (dl - 1) / 2);
    p.shi = (2 * dl * dl - 2 * dl + 1) * p.sr + (2 * dl * dl + 1) * p.sh +
            dl * dl * logl(dl * dl + 1) + (dl + 1) * logl(dl + 1) +
            logl(dl * dl - dl + 1);
    p.lai = dl * (dl - 1) * p.sr + (dl * dl + 1) * p.sh +
            0.5L * (dl * dl * logl(dl * dl + 1) + dl * logl(dl + 1));
    return p;
}

long double disc_log_ld(long double s, long double d) {
    return (2 * d - 1) * s + ((2 * d - 1) / 2) * logl(d + 1) +
           (d / 2) * logl(d * (2 * d + 1) / 6);
}

long double bfx_ld(const CtxLd& t, long double lnx) {
    PrimLd p = prim_ld(t);
    long double lnD = disc_log_ld(p.sh, t.delta);
    long double S = t.n * p.lai;
    long double sx = expl(lnx / 2);
    return (4 * t.delta * lnx * lnx +
            (4 * lnD + (2 * t.delta * (lnD + 2 * t.n + 2 * S)) / sx) * lnx) /
           sx;
}

long double assertion1_ld(const CtxLd& t, long double z, long double lnx) {
    long double sig = sigma_hF_ld(t);
    long double lnDg = 2 * (z - 1) * (sig + (t.V + kAlpha) * kLn2) +
                       ((2 * z - 1) / 2) * logl(z + 1) +
                       (z / 2) * logl(z * (2 * z + 1) / 6);
    long double fact = 1;
    for (int i = 2; i <= static_cast<int>(z); ++i) fact *= i;
    long double sx = expl(lnx / 2);
    return (1 - 1 / z) *
           (1 + ((fact + 1) * lnx * lnx +
                 2 * (fact * lnDg + (z / (z - 1)) * (sig + 1) / sx) * lnx) /
                    sx);
}

long double rel_err(long double got, long double want) {
    return fabsl(got - want) / std::max(fabsl(want), 1.0L);
}

long double mid(const BoundValue& b) { return b.value.mid_ld(); }

// Sylvester-matrix resultant via rational Gaussian elimination; deliberately
// independent of any library elimination code.
mpq_class det_gauss(std::vector<std::vector<mpq_class>> M) {
    std::size_t nn = M.size();
    mpq_class det = 1;
    for (std::size_t col = 0; col < nn; ++col) {
        std::size_t piv = col;
        while (piv < nn && M[piv][col] == 0) ++piv;
        if (piv == nn) return 0;
        if (piv != col) {
            std::swap(M[piv], M[col]);
            det = -det;
        }
        det *= M[col][col];
        for (std::size_t row = col + 1; row < nn; ++row) {
            if (M[row][col] == 0) continue;
            mpq_class f = M[row][col] / M[col][col];
            for (std::size_t j = col; j < nn; ++j) M[row][j] -= f * M[col][j];
        }
    }
    return det;
}

mpz_class resultant_oracle(const UniPoly& A, const UniPoly& B) {
    long a = A.degree(), b = B.degree();
    REQUIRE(a >= 1);
    REQUIRE(b >= 1);
    std::size_t nn = static_cast<std::size_t>(a + b);
    std::vector<std::vector<mpq_class>> M(nn, std::vector<mpq_class>(nn, mpq_class(0)));
    for (long i = 0; i < b; ++i)
        for (long t = 0; t <= a; ++t)
            M[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + t)] =
                mpq_class(A.coeff(static_cast<std::size_t>(a - t)));
    for (long i = 0; i < a; ++i)
        for (long t = 0; t <= b; ++t)
            M[static_cast<std::size_t>(b + i)][static_cast<std::size_t>(i + t)] =
                mpq_class(B.coeff(static_cast<std::size_t>(b - t)));
    mpq_class d = det_gauss(std::move(M));
    REQUIRE(d.get_den() == 1);
    return d.get_num();
}

mpz_class disc_oracle(const UniPoly& f) {
    mpz_class res = resultant_oracle(f, f.derivative());
    long d = f.degree();
    if (((d * (d - 1)) / 2) % 2 != 0) res = -res;
    REQUIRE(mpz_divisible_p(res.get_mpz_t(), f.lc().get_mpz_t()) != 0);
    return res / f.lc();
}

mpz_class height(const UniPoly& f) {
    mpz_class h = 0;
    for (const mpz_class& c : f.coeffs())
        if (abs(c) > h) h = abs(c);
    return h;
}

unsigned long sigma_of(const UniPoly& f) {
    unsigned long s = 1;
    for (const mpz_class& c : f.coeffs()) s = std::max(s, size_of_int(c));
    return s;
}

BoundContext quad_ctx() { return make_context(PolySystem({parse("x^2+1")})); }

} // namespace

TEST_CASE("interval arithmetic encloses exact values", "[bounds]") {
    RInterval third = RInterval::of_mpq(mpq_class(1, 3));
    REQUIRE(third.less_than(mpq_class(1, 3)) == std::nullopt); // straddles 1/3
    REQUIRE(third.hi_double() - third.lo_double() < 1e-15);

    RInterval one = third * RInterval::of_long(3);
    REQUIRE(one.less_than(mpq_class(1)) == std::nullopt); // straddles exactly 1
    REQUIRE(one.less_than(mpq_class(2)) == std::optional<bool>(true));
    REQUIRE(one.less_than(mpq_class(1, 2)) == std::optional<bool>(false));

    RInterval two = RInterval::of_long(2);
    RInterval s = two.sqrt();
    RInterval back = s * s;
    REQUIRE(back.lo_double() <= 2.0);
    REQUIRE(back.hi_double() >= 2.0);

    RInterval seven = RInterval::of_long(7);
    RInterval roundtrip = seven.log().exp();
    REQUIRE(roundtrip.lo_double() <= 7.0);
    REQUIRE(roundtrip.hi_double() >= 7.0);

    REQUIRE(RInterval::of_long(3).pow_ui(5).less_than(mpq_class(243)) ==
            std::optional<bool>(false));
    REQUIRE(RInterval::of_long(3).pow_ui(5).less_than(mpq_class(244)) ==
            std::optional<bool>(true));
    REQUIRE(RInterval::of_long(5).pow_ui(0).hi_double() == 1.0);

    RInterval half_ceil = RInterval::of_mpq(mpq_class(5, 2)).ceil();
    REQUIRE(half_ceil.lo_double() == 3.0);
    REQUIRE(half_ceil.hi_double() == 3.0);

    REQUIRE(certainly_less(RInterval::of_long(1), RInterval::of_long(2)) ==
            std::optional<bool>(true));
    REQUIRE(certainly_less(RInterval::of_long(2), RInterval::of_long(1)) ==
            std::optional<bool>(false));
    REQUIRE(certainly_less(third, third) == std::nullopt);

    // ln 2 = 0.6931471805599453...
    REQUIRE(RInterval::log2_const().less_than(mpq_class(693147181, 1000000000)) ==
            std::optional<bool>(true));
    REQUIRE(RInterval::log2_const().less_than(mpq_class(693147180, 1000000000)) ==
            std::optional<bool>(false));

    RInterval spanning = RInterval::of_long(-1) + RInterval::of_long(3) * third;
    REQUIRE_THROWS_AS(RInterval::of_long(1) / spanning, DomainError);
    REQUIRE_THROWS_AS(RInterval::of_long(0).log(), DomainError);
    REQUIRE_THROWS_AS(RInterval::of_long(-4).sqrt(), DomainError);
}

TEST_CASE("sharp factor constant", "[bounds]") {
    RInterval a = alpha_const();
    REQUIRE(a.less_than(mpq_class(91798, 100000)) == std::optional<bool>(true));
    REQUIRE(a.less_than(mpq_class(91797, 100000)) == std::optional<bool>(false));
    REQUIRE(rel_err(a.mid_ld(), kAlpha) < 1e-15L);
}

TEST_CASE("prime counting window", "[bounds]") {
    LiBracket b = li_bracket(mpz_class(10000));
    long double lnx = logl(10000.0L);
    long double approx = 10000.0L * (1 / lnx + 1 / (lnx * lnx)) - 2 / kLn2;
    REQUIRE(rel_err(b.approx.mid_ld(), approx) < 1e-12L);
    REQUIRE(rel_err(b.li_factor.mid_ld(), 1 + 6 / lnx) < 1e-12L);
    REQUIRE(rel_err(b.pi_factor.mid_ld(), 1 + 7 / lnx) < 1e-12L);
    REQUIRE_THROWS_AS(li_bracket(mpz_class(2)), DomainError);

    // pi(x) sits inside the multiplicative window at 10^4, 10^5, 10^6
    for (unsigned long long x : {10000ull, 100000ull, 1000000ull}) {
        LiBracket w = li_bracket(mpz_class(static_cast<unsigned long>(x)));
        auto pr = sieve(x);
        double pi = static_cast<double>(pr.primes.size());
        double lo = (w.approx / w.pi_factor).lo_double();
        double hi = (w.approx * w.pi_factor).hi_double();
        REQUIRE(lo <= pi);
        REQUIRE(pi <= hi);
    }
    REQUIRE(sieve(1000000ull).primes.size() == 78498);
}

TEST_CASE("factor coefficient bound matches hand values", "[bounds]") {
    // 10 * binom(4,2) * sqrt(5) = 60 sqrt(5) = 134.16..., ceiling 135
    REQUIRE(mignotte_bound({4}, 10, {2}) == 135);
    // 3 * binom(2,1) binom(1,1) * sqrt(6) = 6 sqrt(6) = 14.69..., ceiling 15
    REQUIRE(mignotte_bound({2, 1}, 3, {1, 1}) == 15);
    // 1 * binom(3,0) * sqrt(4) = 2 exactly
    REQUIRE(mignotte_bound({3}, 1, {0}) == 2);
    REQUIRE_THROWS_AS(mignotte_bound({2, 1}, 1, {1}), DomainError);
    REQUIRE_THROWS_AS(mignotte_bound({2}, 1, {3}), DomainError);
    REQUIRE_THROWS_AS(mignotte_bound({}, 1, {}), DomainError);
    REQUIRE_THROWS_AS(mignotte_bound({2}, -1, {1}), DomainError);

    BoundValue ms = mignotte_sigma(3, 2);
    REQUIRE(rel_err(mid(ms), 3.0L + (2 + kAlpha) * kLn2) < 1e-15L);
    REQUIRE(ms.formula == "factor-sigma");
}

TEST_CASE("factor coefficient bound holds on random factorizations", "[bounds]") {
    std::mt19937 rng(31);
    std::uniform_int_distribution<long> coeff(-10, 10);
    std::uniform_int_distribution<int> deg(1, 2);

    auto random_uni = [&]() {
        while (true) {
            int d = deg(rng);
            std::vector<mpz_class> c(static_cast<std::size_t>(d) + 1);
            for (auto& v : c) v = coeff(rng);
            UniPoly f(std::move(c));
            if (!f.is_zero()) return f;
        }
    };

    for (int iter = 0; iter < 100; ++iter) {
        UniPoly g = random_uni(), h = random_uni();
        UniPoly f = g * h;
        unsigned long d = static_cast<unsigned long>(f.degree());
        mpz_class hf = height(f);
        for (const UniPoly* part : {&g, &h})
            for (std::size_t j = 0; j < part->coeffs().size(); ++j)
                REQUIRE(abs(part->coeff(j)) <=
                        mignotte_bound({d}, hf, {static_cast<unsigned long>(j)}));
    }

    std::uniform_int_distribution<unsigned long> ex(0, 2);
    std::uniform_int_distribution<int> nterms(1, 4);
    auto random_biv = [&]() {
        std::vector<std::string> vars{"x", "y"};
        while (true) {
            SparsePoly f(vars);
            int t = nterms(rng);
            for (int i = 0; i < t; ++i) f.add_term({ex(rng), ex(rng)}, coeff(rng));
            if (!f.terms().empty()) return f;
        }
    };

    for (int iter = 0; iter < 100; ++iter) {
        SparsePoly g = random_biv(), h = random_biv();
        SparsePoly f = g * h;
        unsigned long dx = static_cast<unsigned long>(f.degree_in("x"));
        unsigned long dy = static_cast<unsigned long>(f.degree_in("y"));
        mpz_class hf = f.max_abs_coeff();
        for (const auto& [e, c] : g.terms())
            REQUIRE(abs(c) <= mignotte_bound({dx, dy}, hf, {e[0], e[1]}));
    }
}

TEST_CASE("discriminant log bound", "[bounds]") {
    // degree 1: the two correction terms cancel and the bound is sigma itself
    BoundValue lin = disc_log_bound(7, 1);
    REQUIRE(lin.value.less_than(mpq_class(7)) == std::nullopt);
    REQUIRE(lin.value.hi_double() - lin.value.lo_double() < 1e-14);

    // x^2 - 5: sigma = 4, |disc| = 20
    BoundValue q = disc_log_bound(4, 2);
    REQUIRE(rel_err(mid(q), disc_log_ld(4.0L, 2.0L)) < 1e-14L);
    REQUIRE(certainly_less(RInterval::of_long(20).log(), q.value) ==
            std::optional<bool>(true));
    REQUIRE_THROWS_AS(disc_log_bound(3, 0), DomainError);
}

TEST_CASE("discriminant log bound dominates random discriminants", "[bounds]") {
    std::mt19937 rng(37);
    std::uniform_int_distribution<long> coeff(-50, 50);
    std::uniform_int_distribution<int> deg(2, 6);
    int accepted = 0;
    while (accepted < 100) {
        int d = deg(rng);
        std::vector<mpz_class> c(static_cast<std::size_t>(d) + 1);
        for (auto& v : c) v = coeff(rng);
        UniPoly f(std::move(c));
        if (f.degree() != d) continue;
        if (gcd_poly(f, f.derivative()).degree() != 0) continue; // square-free only
        ++accepted;
        mpz_class D = disc_oracle(f);
        REQUIRE(D != 0);
        BoundValue b = disc_log_bound(sigma_of(f), static_cast<unsigned long long>(d));
        RInterval lnD = RInterval::of_mpz(abs(D)).log();
        REQUIRE(lnD.hi_double() <= b.value.lo_double());
    }
}

TEST_CASE("context extraction", "[bounds]") {
    BoundContext q = quad_ctx();
    REQUIRE(q.n == 1);
    REQUIRE(q.m == 1);
    REQUIRE(q.d == 2);
    REQUIRE(q.sigma == 2);
    REQUIRE(q.volume == 2);
    REQUIRE(q.mu == 2);
    REQUIRE(q.k == 2);
    REQUIRE(q.c == 1);
    REQUIRE(q.delta == 2);
    REQUIRE_FALSE(q.zero_dim_certified);
    REQUIRE(q.proj == std::vector<unsigned long>{2});

    BoundContext circle = make_context(PolySystem({parse("x1^2+x2^2-1")}));
    REQUIRE(circle.n == 2);
    REQUIRE(circle.m == 1);
    REQUIRE(circle.volume == 4);
    REQUIRE(circle.mu == 3);
    REQUIRE(circle.k == 3);
    REQUIRE(circle.proj == std::vector<unsigned long>({4, 4}));

    BoundContext pair = make_context(parse_system({"x^2+1", "x^2+x"}));
    REQUIRE(pair.n == 1);
    REQUIRE(pair.m == 2);
    REQUIRE(pair.mu == 2);
    REQUIRE(pair.k == 4);
    REQUIRE(pair.volume == 2);

    set_zero_dimensional(q, 2);
    REQUIRE(q.delta == 2);
    REQUIRE(q.zero_dim_certified);
    REQUIRE_THROWS_AS(set_zero_dimensional(pair, 2), DomainError); // m > n
    BoundContext q2 = quad_ctx();
    REQUIRE_THROWS_AS(set_zero_dimensional(q2, 0), DomainError);
}

TEST_CASE("eliminant bounds match independent recomputation", "[bounds]") {
    BoundContext q = quad_ctx();
    CtxLd t = mirror(q);

    BoundValue mf = MF_bound(q);
    REQUIRE(rel_err(mid(mf), mf_ld(t)) < 1e-12L);
    REQUIRE(fabsl(mid(mf) - 5.3560844L) < 1e-5L);

    BoundValue sh = sigma_hF_bound(q);
    REQUIRE(rel_err(mid(sh), sigma_hF_ld(t)) < 1e-12L);
    REQUIRE(fabsl(mid(sh) - 14.8914674L) < 1e-5L);
    REQUIRE(sh.notes.empty());

    // certified solution count: same ceiling here, plus the (V_F+alpha) ln 2 summand
    BoundContext qz = quad_ctx();
    set_zero_dimensional(qz, 2);
    CtxLd tz = mirror(qz);
    BoundValue shz = sigma_hF_bound(qz);
    REQUIRE(rel_err(mid(shz), sigma_hF_ld(tz)) < 1e-12L);
    REQUIRE(mid(shz) > mid(sh));
    REQUIRE_FALSE(shz.notes.empty());

    // linear polynomial: ceiling term would vanish and is raised to 1
    BoundContext lin = make_context(PolySystem({parse("x+1")}));
    BoundValue shl = sigma_hF_bound(lin);
    REQUIRE(rel_err(mid(shl), sigma_hF_ld(mirror(lin))) < 1e-12L);
    bool noted = false;
    for (const auto& n : shl.notes) noted = noted || n == "ceiling term raised to 1";
    REQUIRE(noted);
    REQUIRE(shl.value.lo_double() >= 0.0);

    // more polynomials than variables switches the last factor
    BoundContext pair = make_context(parse_system({"x^2+1", "x^2+x"}));
    REQUIRE(rel_err(mid(sigma_hF_bound(pair)), sigma_hF_ld(mirror(pair))) < 1e-12L);

    BoundContext cubic = make_context(PolySystem({parse("x^3-x-1")}));
    REQUIRE(rel_err(mid(sigma_hF_bound(cubic)), sigma_hF_ld(mirror(cubic))) < 1e-12L);

    BoundContext circle = make_context(PolySystem({parse("x1^2+x2^2-1")}));
    REQUIRE(rel_err(mid(sigma_hF_bound(circle)), sigma_hF_ld(mirror(circle))) < 1e-12L);
}

TEST_CASE("primitive element bounds", "[bounds]") {
    BoundContext q = quad_ctx();
    PrimBounds pb = prim_bounds(q);
    PrimLd p = prim_ld(mirror(q));
    REQUIRE(rel_err(pb.sigma_hat.value.mid_ld(), p.sh) < 1e-12L);
    REQUIRE(rel_err(pb.b1_log.value.mid_ld(), p.b1log) < 1e-12L);
    REQUIRE(rel_err(pb.sigma_r.value.mid_ld(), p.sr) < 1e-12L);
    REQUIRE(rel_err(pb.sigma_hi.value.mid_ld(), p.shi) < 1e-12L);
    REQUIRE(rel_err(pb.log_ai.value.mid_ld(), p.lai) < 1e-12L);
    REQUIRE(fabsl(pb.sigma_hat.value.mid_ld() - 19.1112807L) < 1e-5L);
    REQUIRE(fabsl(pb.b1_log.value.mid_ld() - 48.4231526L) < 1e-5L);
    REQUIRE(fabsl(pb.sigma_r.value.mid_ld() - 193.6926106L) < 1e-5L);

    // interval stays sharp through the whole chain
    double w = (pb.log_ai.value.hi_double() - pb.log_ai.value.lo_double()) /
               pb.log_ai.value.hi_double();
    REQUIRE(w < 1e-13);

    // degree parameter 1: B_1 = 1 and sigma(r) = 0 exactly
    BoundContext lin = make_context(PolySystem({parse("x+3")}));
    REQUIRE(lin.delta == 1);
    PrimBounds lb = prim_bounds(lin);
    REQUIRE(lb.b1_log.value.lo_double() == 0.0);
    REQUIRE(lb.b1_log.value.hi_double() == 0.0);
    REQUIRE(lb.b1.lo_double() == 1.0);
    REQUIRE(lb.sigma_r.value.lo_double() <= 0.0);
    REQUIRE(lb.sigma_r.value.hi_double() >= 0.0);
    REQUIRE(lb.sigma_r.value.hi_double() < 1e-30);
}

TEST_CASE("congruence count error term", "[bounds]") {
    BoundContext q = quad_ctx();
    CtxLd t = mirror(q);

    BoundValue b33 = bFx(q, pow_mpz(2, 33));
    BoundValue b34 = bFx(q, pow_mpz(2, 34));
    REQUIRE(rel_err(mid(b33), bfx_ld(t, 33 * kLn2)) < 1e-10L);
    REQUIRE(rel_err(mid(b34), bfx_ld(t, 34 * kLn2)) < 1e-10L);
    REQUIRE(fabsl(mid(b33) - 0.1039040959L) < 1e-8L);
    REQUIRE(fabsl(mid(b34) - 0.0766923727L) < 1e-8L);
    REQUIRE(b33.value.less_than(mpq_class(1, 10)) == std::optional<bool>(false));
    REQUIRE(b34.value.less_than(mpq_class(1, 10)) == std::optional<bool>(true));

    // power-of-two path agrees with the materialized argument
    BoundValue p33 = bFx_pow2(q, 33);
    REQUIRE(rel_err(mid(p33), mid(b33)) < 1e-25L);

    REQUIRE_THROWS_AS(bFx(q, mpz_class(33766)), DomainError);
    REQUIRE_NOTHROW(bFx(q, mpz_class(33767)));
    REQUIRE_THROWS_AS(bFx_pow2(q, 15), DomainError);

    // strictly decreasing over the admissible range
    long double prev = 1e30L;
    for (unsigned long k2 = 16; k2 <= 64; k2 += 4) {
        long double v = mid(bFx_pow2(q, k2));
        REQUIRE(v < prev);
        prev = v;
    }
}

TEST_CASE("density factor", "[bounds]") {
    BoundContext q = quad_ctx();
    CtxLd t = mirror(q);

    BoundValue a = assertion1_bound(q, 2, mpz_class(100000));
    REQUIRE(rel_err(mid(a), assertion1_ld(t, 2.0L, logl(100000.0L))) < 1e-10L);
    REQUIRE(a.value.less_than(mpq_class(1, 2)) == std::optional<bool>(false));

    BoundValue a3 = assertion1_bound(q, 3, mpz_class(100000));
    REQUIRE(rel_err(mid(a3), assertion1_ld(t, 3.0L, logl(100000.0L))) < 1e-10L);

    // x -> infinity: the factor collapses to 1 - 1/z
    BoundValue far = assertion1_bound(q, 2, pow_mpz(2, 128));
    REQUIRE(far.value.lo_double() > 0.5);
    REQUIRE(far.value.hi_double() < 0.500001);

    REQUIRE_THROWS_AS(assertion1_bound(q, 1, mpz_class(100000)), DomainError);
    REQUIRE_THROWS_AS(assertion1_bound(q, 2, mpz_class(33766)), DomainError);
}

TEST_CASE("height threshold", "[bounds]") {
    BoundContext q = quad_ctx();
    BoundValue a = aF_star(q);
    REQUIRE(rel_err(mid(a), 1.0L + sigma_hF_ld(mirror(q))) < 1e-12L);
    REQUIRE(fabsl(mid(a) - 15.8914674L) < 1e-5L);

    BoundContext circle = make_context(PolySystem({parse("x1^2+x2^2-1")}));
    REQUIRE(rel_err(mid(aF_star(circle)), 2 * (1.0L + sigma_hF_ld(mirror(circle)))) <
            1e-12L);
}

TEST_CASE("rigorous threshold search", "[bounds]") {
    auto scan = [](const CtxLd& t, long double target) {
        for (unsigned long k2 = 16; k2 < 200; ++k2)
            if (bfx_ld(t, k2 * kLn2) < target) return k2;
        FAIL("no admissible exponent below 2^200");
        return 0ul;
    };

    BoundContext q = quad_ctx();
    CtxLd t = mirror(q);
    RigorousM m = rigorous_M(q);
    REQUIRE(m.exponent == 34);
    REQUIRE(m.exponent == scan(t, 0.1L));
    REQUIRE(m.bit_length == 35);
    REQUIRE(m.attained.hi_double() < 0.1);

    BoundContext cubic = make_context(PolySystem({parse("x^3-x-1")}));
    CtxLd tc = mirror(cubic);
    RigorousM mc = rigorous_M(cubic);
    REQUIRE(mc.exponent == 36);
    REQUIRE(mc.exponent == scan(tc, 0.1L));

    RigorousM loose = rigorous_M(q, mpq_class(1, 2));
    RigorousM tight = rigorous_M(q, mpq_class(1, 100));
    REQUIRE(loose.exponent == scan(t, 0.5L));
    REQUIRE(tight.exponent == scan(t, 0.01L));
    REQUIRE(loose.exponent <= m.exponent);
    REQUIRE(m.exponent <= tight.exponent);
    REQUIRE(loose.exponent >= 16);

    REQUIRE_THROWS_AS(rigorous_M(q, mpq_class(0)), DomainError);
}

TEST_CASE("bound values carry an audit trail", "[bounds]") {
    BoundContext q = quad_ctx();
    BoundValue b = bFx(q, pow_mpz(2, 33));
    REQUIRE(b.formula == "count-error");
    bool saw_n = false, saw_x = false;
    for (const auto& [k2, v] : b.inputs) {
        if (k2 == "n" && v == "1") saw_n = true;
        if (k2 == "x" && v == pow_mpz(2, 33).get_str()) saw_x = true;
    }
    REQUIRE(saw_n);
    REQUIRE(saw_x);
    REQUIRE(sigma_hF_bound(q).formula == "eliminant-sigma");
    REQUIRE(MF_bound(q).formula == "monomial-count");
    REQUIRE(aF_star(q).formula == "a-star");
    REQUIRE(assertion1_bound(q, 2, mpz_class(100000)).formula == "density-factor");
}
