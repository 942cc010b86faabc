#pragma once

// Exact integer/rational helpers on top of GMP: the bit-size measure used
// throughout, ceiling logs, factorization and divisor enumeration for the
// rational root theorem, and small conveniences.

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include <gmpxx.h>

#include "arithgeo/errors.hpp"

namespace arithgeo {

// size(c) := 1 + ceil(log2(|c| + 1)); size(0) = 1, size(1) = 2.
inline unsigned long size_of_int(const mpz_class& c) {
    mpz_class m = abs(c) + 1;
    // bits = floor(log2(m)) + 1
    std::size_t bits = mpz_sizeinbase(m.get_mpz_t(), 2);
    bool power_of_two = mpz_scan1(m.get_mpz_t(), 0) == bits - 1;
    unsigned long ceil_log2 = power_of_two ? static_cast<unsigned long>(bits - 1)
                                           : static_cast<unsigned long>(bits);
    return 1 + ceil_log2;
}

inline mpz_class pow_mpz(const mpz_class& base, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline mpz_class factorial_mpz(unsigned long n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline mpz_class binomial_mpz(unsigned long n, unsigned long k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline mpq_class make_rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

namespace detail {

inline mpz_class pollard_brent(const mpz_class& n, unsigned long c0) {
    // Brent's cycle variant of Pollard rho; n odd composite, not a prime power
    // guard needed by the caller. Returns a nontrivial factor.
    mpz_class y = 2, r = 1, q = 1, g = 1, x, ys;
    const mpz_class c = c0;
    while (g == 1) {
        x = y;
        for (mpz_class i = 0; i < r; ++i) y = (y * y + c) % n;
        mpz_class k = 0;
        while (k < r && g == 1) {
            ys = y;
            mpz_class lim = std::min(mpz_class(128), mpz_class(r - k));
            for (mpz_class i = 0; i < lim; ++i) {
                y = (y * y + c) % n;
                q = q * abs(x - y) % n;
            }
            g = gcd(q, n);
            k += 128;
        }
        r *= 2;
    }
    if (g == n) {
        do {
            ys = (ys * ys + c) % n;
            g = gcd(abs(x - ys), n);
        } while (g == 1);
    }
    return g;
}

inline void factor_into(mpz_class n, std::map<mpz_class, unsigned>& out) {
    if (n <= 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 32) != 0) {
        ++out[n];
        return;
    }
    for (unsigned long c = 1;; ++c) {
        mpz_class d = pollard_brent(n, c);
        if (d != n && d != 1) {
            factor_into(d, out);
            factor_into(n / d, out);
            return;
        }
    }
}

} // namespace detail

// Prime factorization of |n| (n != 0); keys ascending.
inline std::map<mpz_class, unsigned> factorize(const mpz_class& n_in) {
    if (n_in == 0) throw DomainError("factorize(0)");
    std::map<mpz_class, unsigned> out;
    mpz_class n = abs(n_in);
    for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul}) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            ++out[p];
            n /= static_cast<unsigned long>(p);
        }
    }
    unsigned long d = 17;
    while (n > 1 && mpz_class(d) * d <= n && d < 100000) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
            ++out[d];
            n /= d;
        }
        d += 2;
    }
    if (n > 1) detail::factor_into(n, out);
    return out;
}

// All positive divisors of |n|, ascending.
inline std::vector<mpz_class> divisors(const mpz_class& n) {
    auto fac = factorize(n);
    std::vector<mpz_class> divs{1};
    for (const auto& [p, e] : fac) {
        std::size_t base = divs.size();
        mpz_class pk = 1;
        for (unsigned i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

} // namespace arithgeo
