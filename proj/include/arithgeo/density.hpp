#pragma once

// Accumulates pi(x), pi_F(x), N_F(x) over prime ranges and derives the r_F
// and j_F estimators. Scans may run on several threads; chunking is by fixed
// prime-index blocks and folding is in block order, so results are
// bit-identical for every thread count.

#include <atomic>
#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "arithgeo/errors.hpp"
#include "arithgeo/modular.hpp"
#include "arithgeo/poly.hpp"

namespace arithgeo {

struct DensityRow {
    std::uint64_t p;
    unsigned long long root_count; // contribution to N_F: min(count, cap)
    bool degenerate;
    unsigned long long cum_pi, cum_piF, cum_NF;
};

struct DensityReport {
    std::string fingerprint; // canonical system string
    unsigned long long cap = 1;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> intervals; // disjoint, sorted
    unsigned long long pi = 0, pi_F = 0, N_F = 0;
    std::vector<std::uint64_t> degenerate_primes;
    std::optional<std::vector<DensityRow>> rows;

    mpq_class ratio_piF() const {
        if (pi == 0) throw DomainError("empty report");
        return make_rational(mpz_class(static_cast<unsigned long>(pi_F)),
                             mpz_class(static_cast<unsigned long>(pi)));
    }
    mpq_class ratio_NF() const {
        if (pi == 0) throw DomainError("empty report");
        return make_rational(mpz_class(static_cast<unsigned long>(N_F)),
                             mpz_class(static_cast<unsigned long>(pi)));
    }
};

struct ScanOptions {
    unsigned threads = 1;
    bool trace = false;
    unsigned long long budget = 1000000000ull; // point evaluations, n >= 2 scans
};

// Scan the primes in [lo, hi].
inline DensityReport scan_range(const PolySystem& F, std::uint64_t lo, std::uint64_t hi,
                                unsigned long long cap, const ScanOptions& opts = {}) {
    if (hi < 2) throw DomainError("scan requires x_max >= 2");
    if (cap < 1) throw DomainError("cap must be positive");
    PrimeRange pr = sieve_range(lo, hi);
    const auto& primes = pr.primes;
    const std::size_t n = F.n();

    // Deterministic budget accounting: total enumeration cost, counted before
    // any work starts, must fit the budget. Univariate scans use the gcd
    // method and are not metered.
    if (n >= 2) {
        mpz_class total = 0;
        for (auto p : primes) total += pow_mpz(mpz_class(static_cast<unsigned long>(p)), n);
        if (total > mpz_class(static_cast<unsigned long>(opts.budget)))
            throw BudgetError("enumeration budget exceeded: sum of p^n = " + total.get_str() +
                              " over [" + std::to_string(lo) + "," + std::to_string(hi) + "]");
    }

    struct Partial {
        std::uint64_t p;
        unsigned long long added;
        bool degenerate;
    };
    std::vector<Partial> partial(primes.size());

    constexpr std::size_t kChunk = 1024; // primes per block, thread-count independent
    const std::size_t nchunks = (primes.size() + kChunk - 1) / kChunk;
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::string fail_msg;
    std::mutex fail_mutex;

    auto worker = [&]() {
        while (true) {
            std::size_t ci = next.fetch_add(1);
            if (ci >= nchunks || failed.load()) return;
            std::size_t begin = ci * kChunk, end = std::min(primes.size(), begin + kChunk);
            try {
                for (std::size_t i = begin; i < end; ++i) {
                    std::uint64_t p = primes[i];
                    RootCount rc = n == 1 && F.m() == 1
                                       ? uni_distinct_roots_mod_p(
                                             F.polys()[0].to_unipoly(F.vars()[0]), p)
                                       : system_roots_mod_p(F, p, cap, opts.budget);
                    partial[i] = {p, std::min<unsigned long long>(rc.count, cap), rc.degenerate};
                }
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lk(fail_mutex);
                if (!failed.exchange(true)) fail_msg = e.what();
                return;
            }
        }
    };

    unsigned nthreads = std::max(1u, opts.threads);
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failed.load()) throw BudgetError(fail_msg);

    DensityReport rep;
    rep.fingerprint = F.to_string();
    rep.cap = cap;
    rep.intervals = {{lo < 2 ? 2 : lo, hi}};
    if (opts.trace) rep.rows.emplace();
    for (const auto& pt : partial) {
        rep.pi += 1;
        if (pt.added >= 1) rep.pi_F += 1;
        rep.N_F += pt.added;
        if (pt.degenerate) rep.degenerate_primes.push_back(pt.p);
        if (rep.rows)
            rep.rows->push_back({pt.p, pt.added, pt.degenerate, rep.pi, rep.pi_F, rep.N_F});
    }
    return rep;
}

// Scan all primes <= x_max.
inline DensityReport scan(const PolySystem& F, std::uint64_t x_max, unsigned long long cap,
                          const ScanOptions& opts = {}) {
    if (x_max < 2) throw DomainError("scan requires x_max >= 2");
    return scan_range(F, 2, x_max, cap, opts);
}

// Counter-wise sum over disjoint prime sets of the same system and cap.
inline DensityReport merge(const DensityReport& a, const DensityReport& b) {
    if (a.pi == 0 && a.intervals.empty()) return b;
    if (b.pi == 0 && b.intervals.empty()) return a;
    if (a.fingerprint != b.fingerprint) throw MergeError("different systems");
    if (a.cap != b.cap) throw MergeError("cap mismatch");
    DensityReport r;
    r.fingerprint = a.fingerprint;
    r.cap = a.cap;
    r.intervals = a.intervals;
    r.intervals.insert(r.intervals.end(), b.intervals.begin(), b.intervals.end());
    std::sort(r.intervals.begin(), r.intervals.end());
    for (std::size_t i = 1; i < r.intervals.size(); ++i)
        if (r.intervals[i].first <= r.intervals[i - 1].second)
            throw MergeError("overlapping prime ranges");
    r.pi = a.pi + b.pi;
    r.pi_F = a.pi_F + b.pi_F;
    r.N_F = a.N_F + b.N_F;
    r.degenerate_primes = a.degenerate_primes;
    r.degenerate_primes.insert(r.degenerate_primes.end(), b.degenerate_primes.begin(),
                               b.degenerate_primes.end());
    std::sort(r.degenerate_primes.begin(), r.degenerate_primes.end());
    if (a.rows && b.rows) {
        r.rows.emplace();
        r.rows->insert(r.rows->end(), a.rows->begin(), a.rows->end());
        r.rows->insert(r.rows->end(), b.rows->begin(), b.rows->end());
        std::sort(r.rows->begin(), r.rows->end(),
                  [](const DensityRow& x, const DensityRow& y) { return x.p < y.p; });
        unsigned long long cp = 0, cf = 0, cn = 0;
        for (auto& row : *r.rows) {
            cp += 1;
            if (row.root_count >= 1) cf += 1;
            cn += row.root_count;
            row.cum_pi = cp;
            row.cum_piF = cf;
            row.cum_NF = cn;
        }
    }
    return r;
}

// Nearest integer to N_F/pi, ties rounding up.
inline long long estimate_rF(const DensityReport& rep) {
    if (rep.pi == 0) throw DomainError("empty report");
    mpz_class num = 2 * mpz_class(static_cast<unsigned long>(rep.N_F)) +
                    mpz_class(static_cast<unsigned long>(rep.pi));
    mpz_class den = 2 * mpz_class(static_cast<unsigned long>(rep.pi));
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q.get_si();
}

// pi_F/pi, exact.
inline mpq_class estimate_jF(const DensityReport& rep) { return rep.ratio_piF(); }

} // namespace arithgeo
