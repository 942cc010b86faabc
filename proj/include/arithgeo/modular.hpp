#pragma once

// Prime generation (segmented sieve) and exact root counting of polynomials
// and systems modulo p.

#include <cstdint>
#include <map>
#include <vector>

#include "arithgeo/errors.hpp"
#include "arithgeo/poly.hpp"

namespace arithgeo {

struct PrimeRange {
    std::uint64_t lo, hi;               // inclusive range scanned
    std::vector<std::uint64_t> primes;  // ascending, all primes in [lo, hi]
};

namespace modular_detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

// Simple sieve of the block [0, n].
inline std::vector<std::uint64_t> small_primes_upto(std::uint64_t n) {
    std::vector<bool> comp(n + 1, false);
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (comp[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= n; j += i) comp[j] = true;
    }
    return out;
}

} // namespace modular_detail

// All primes in [lo, hi], segmented so memory is O(sqrt(hi) + segment).
inline PrimeRange sieve_range(std::uint64_t lo, std::uint64_t hi) {
    if (hi < 2 || hi < lo) return {lo, hi, {}};
    if (lo < 2) lo = 2;
    std::uint64_t root = 1;
    while ((root + 1) * (root + 1) <= hi) ++root;
    auto base = modular_detail::small_primes_upto(root);
    PrimeRange out{lo, hi, {}};
    constexpr std::uint64_t kSegment = 1u << 16;
    std::vector<bool> comp;
    for (std::uint64_t start = lo; start <= hi; start += kSegment) {
        std::uint64_t end = std::min(hi, start + kSegment - 1);
        comp.assign(end - start + 1, false);
        for (std::uint64_t q : base) {
            if (q * q > end) break;
            std::uint64_t first = std::max(q * q, (start + q - 1) / q * q);
            for (std::uint64_t j = first; j <= end; j += q) comp[j - start] = true;
        }
        for (std::uint64_t v = start; v <= end; ++v)
            if (!comp[v - start] && v >= 2) out.primes.push_back(v);
    }
    return out;
}

// All primes <= x.
inline PrimeRange sieve(std::uint64_t x) {
    if (x < 2) throw DomainError("sieve requires x >= 2");
    return sieve_range(2, x);
}

// f reduced mod p: residues in [0,p), leading zeros trimmed.
struct ModPoly {
    std::uint64_t p;
    std::vector<std::uint64_t> coeffs;

    static ModPoly reduce(const UniPoly& f, std::uint64_t p) {
        ModPoly r{p, {}};
        r.coeffs.reserve(f.coeffs().size());
        for (const auto& c : f.coeffs())
            r.coeffs.push_back(mpz_fdiv_ui(c.get_mpz_t(), p));
        r.trim();
        return r;
    }
    void trim() {
        while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    }
    bool is_zero() const { return coeffs.empty(); }
    long degree() const { return static_cast<long>(coeffs.size()) - 1; }
    std::uint64_t eval(std::uint64_t t) const {
        std::uint64_t acc = 0;
        for (std::size_t i = coeffs.size(); i-- > 0;)
            acc = (modular_detail::mulmod(acc, t, p) + coeffs[i]) % p;
        return acc;
    }
};

namespace modular_detail {

// Product a*b mod (m, p) where m is monic-normalized implicitly via prem-style
// reduction; all polynomials dense over F_p, ascending.
inline std::vector<std::uint64_t> polymulmod(const std::vector<std::uint64_t>& a,
                                             const std::vector<std::uint64_t>& b,
                                             const std::vector<std::uint64_t>& m,
                                             std::uint64_t minv_lead, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::uint64_t> r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
    }
    // reduce mod m
    std::size_t dm = m.size() - 1;
    while (r.size() > dm) {
        std::uint64_t lead = r.back();
        if (lead) {
            std::uint64_t q = mulmod(lead, minv_lead, p);
            std::size_t shift = r.size() - 1 - dm;
            for (std::size_t j = 0; j <= dm; ++j)
                r[shift + j] = (r[shift + j] + p - mulmod(q, m[j], p) % p) % p;
        }
        r.pop_back();
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

inline std::uint64_t invmod(std::uint64_t a, std::uint64_t p) { return powmod(a, p - 2, p); }

inline std::vector<std::uint64_t> polygcd(std::vector<std::uint64_t> a,
                                          std::vector<std::uint64_t> b, std::uint64_t p) {
    auto trim = [](std::vector<std::uint64_t>& v) {
        while (!v.empty() && v.back() == 0) v.pop_back();
    };
    trim(a);
    trim(b);
    while (!b.empty()) {
        // a mod b
        std::uint64_t binv = invmod(b.back(), p);
        while (a.size() >= b.size() && !a.empty()) {
            std::uint64_t q = mulmod(a.back(), binv, p);
            std::size_t shift = a.size() - b.size();
            for (std::size_t j = 0; j < b.size(); ++j)
                a[shift + j] = (a[shift + j] + p - mulmod(q, b[j], p)) % p;
            trim(a);
        }
        std::swap(a, b);
    }
    return a;
}

inline bool probable_prime(std::uint64_t p) {
    mpz_class z(static_cast<unsigned long>(p));
    return mpz_probab_prime_p(z.get_mpz_t(), 32) != 0;
}

} // namespace modular_detail

struct RootCount {
    unsigned long long count;
    bool degenerate; // every coefficient (of every polynomial) divisible by p
};

// Exact number of distinct roots of f in Z/pZ. If f vanishes identically
// mod p the count is p, flagged degenerate. Uses deg gcd(x^p - x, f) over
// F_p with direct enumeration when p <= deg f (or p tiny).
inline RootCount uni_distinct_roots_mod_p(const UniPoly& f, std::uint64_t p) {
    if (!modular_detail::probable_prime(p)) throw DomainError("p is not prime");
    ModPoly m = ModPoly::reduce(f, p);
    if (m.is_zero()) return {p, true};
    long d = m.degree();
    if (d == 0) return {0, false};
    if (p <= static_cast<std::uint64_t>(d) || p <= 3) {
        unsigned long long cnt = 0;
        for (std::uint64_t t = 0; t < p; ++t)
            if (m.eval(t) == 0) ++cnt;
        return {cnt, false};
    }
    // x^p mod m by square-and-multiply, then gcd(x^p - x, m).
    std::uint64_t minv = modular_detail::invmod(m.coeffs.back(), p);
    std::vector<std::uint64_t> acc{1};      // 1
    std::vector<std::uint64_t> base{0, 1};  // x
    std::uint64_t e = p;
    while (e) {
        if (e & 1) acc = modular_detail::polymulmod(acc, base, m.coeffs, minv, p);
        e >>= 1;
        if (e) base = modular_detail::polymulmod(base, base, m.coeffs, minv, p);
    }
    // acc - x
    if (acc.size() < 2) acc.resize(2, 0);
    acc[1] = (acc[1] + p - 1) % p;
    while (!acc.empty() && acc.back() == 0) acc.pop_back();
    auto g = modular_detail::polygcd(m.coeffs, acc, p);
    long dg = static_cast<long>(g.size()) - 1;
    return {static_cast<unsigned long long>(dg < 0 ? 0 : dg), false};
}

// min(#roots of F in (Z/pZ)^n, cap) by exhaustive enumeration over p^n points
// (n = 1 delegates to the univariate counter before capping). Enumerating more
// than `budget` points is an error, never a silent skip.
inline RootCount system_roots_mod_p(const PolySystem& F, std::uint64_t p,
                                    unsigned long long cap,
                                    unsigned long long budget = 1000000000ull) {
    if (!modular_detail::probable_prime(p)) throw DomainError("p is not prime");
    if (cap < 1) throw DomainError("cap must be positive");
    const std::size_t n = F.n();
    if (n == 1) {
        if (F.m() == 1) {
            RootCount rc = uni_distinct_roots_mod_p(F.polys()[0].to_unipoly(F.vars()[0]), p);
            return {std::min<unsigned long long>(rc.count, cap), rc.degenerate};
        }
        // m > 1: common roots are the roots of the gcd over F_p.
        std::vector<std::uint64_t> g;
        bool all_zero = true;
        for (const auto& f : F.polys()) {
            auto mf = ModPoly::reduce(f.to_unipoly(F.vars()[0]), p);
            if (!mf.is_zero()) all_zero = false;
            g = modular_detail::polygcd(g, mf.coeffs, p);
        }
        if (all_zero) return {std::min<unsigned long long>(p, cap), true};
        std::vector<mpz_class> c;
        for (auto v : g) c.emplace_back(static_cast<unsigned long>(v));
        RootCount rc = uni_distinct_roots_mod_p(UniPoly(std::move(c)), p);
        return {std::min<unsigned long long>(rc.count, cap), rc.degenerate};
    }

    // point count p^n against the enumeration budget, exactly
    mpz_class total = pow_mpz(mpz_class(static_cast<unsigned long>(p)), n);
    if (total > mpz_class(static_cast<unsigned long>(budget)))
        throw BudgetError("enumeration budget exceeded: p^n = " + total.get_str() +
                          " points at p = " + std::to_string(p));

    // degenerate iff every polynomial vanishes identically mod p
    bool degenerate = true;
    std::vector<std::vector<std::pair<Exponents, std::uint64_t>>> terms(F.m());
    for (std::size_t i = 0; i < F.m(); ++i) {
        for (const auto& [e, c] : F.polys()[i].terms()) {
            std::uint64_t r = mpz_fdiv_ui(c.get_mpz_t(), p);
            if (r != 0) terms[i].push_back({e, r});
        }
        if (!terms[i].empty()) degenerate = false;
    }
    if (degenerate) {
        mpz_class capped = std::min(total, mpz_class(static_cast<unsigned long>(cap)));
        return {capped.get_ui(), true};
    }

    // power tables: pw[v][t][e] = t^e mod p for e <= deg_v
    std::vector<std::vector<std::vector<std::uint64_t>>> pw(n);
    for (std::size_t v = 0; v < n; ++v) {
        long dv = 0;
        for (const auto& f : F.polys()) dv = std::max(dv, f.degree_in(v));
        pw[v].assign(p, {});
        for (std::uint64_t t = 0; t < p; ++t) {
            auto& row = pw[v][t];
            row.resize(static_cast<std::size_t>(dv) + 1);
            row[0] = 1 % p;
            for (long e = 1; e <= dv; ++e) row[e] = modular_detail::mulmod(row[e - 1], t, p);
        }
    }

    std::vector<std::uint64_t> point(n, 0);
    unsigned long long count = 0;
    while (true) {
        bool all_vanish = true;
        for (std::size_t i = 0; i < F.m() && all_vanish; ++i) {
            std::uint64_t acc = 0;
            for (const auto& [e, c] : terms[i]) {
                std::uint64_t term = c;
                for (std::size_t v = 0; v < n; ++v)
                    if (e[v]) term = modular_detail::mulmod(term, pw[v][point[v]][e[v]], p);
                acc = (acc + term) % p;
            }
            if (acc != 0) all_vanish = false;
        }
        if (all_vanish) {
            if (++count >= cap) return {cap, false};
        }
        // advance odometer
        std::size_t v = 0;
        while (v < n && ++point[v] == p) point[v++] = 0;
        if (v == n) break;
    }
    return {count, false};
}

} // namespace arithgeo
