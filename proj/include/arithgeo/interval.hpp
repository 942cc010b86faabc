#pragma once

// Outward-rounded real intervals over MPFR. Every operation encloses the
// exact result: lower endpoints round down, upper endpoints round up.
// Comparisons are three-valued; callers double the working precision until
// the comparison they need is decided.

#include <optional>
#include <string>
#include <utility>

#include <gmpxx.h>
#include <mpfr.h>

#include "arithgeo/errors.hpp"

namespace arithgeo {

class RInterval {
public:
    static constexpr mpfr_prec_t kDefaultPrec = 128;

    explicit RInterval(mpfr_prec_t prec = kDefaultPrec) : prec_(prec) {
        mpfr_init2(lo_, prec_);
        mpfr_init2(hi_, prec_);
        mpfr_set_zero(lo_, 1);
        mpfr_set_zero(hi_, 1);
    }
    RInterval(const RInterval& o) : prec_(o.prec_) {
        mpfr_init2(lo_, prec_);
        mpfr_init2(hi_, prec_);
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    RInterval(RInterval&& o) noexcept : prec_(o.prec_) {
        mpfr_init2(lo_, prec_);
        mpfr_init2(hi_, prec_);
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
    }
    RInterval& operator=(RInterval o) noexcept {
        std::swap(prec_, o.prec_);
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
        return *this;
    }
    ~RInterval() {
        mpfr_clear(lo_);
        mpfr_clear(hi_);
    }

    static RInterval of_long(long v, mpfr_prec_t prec = kDefaultPrec) {
        RInterval r(prec);
        mpfr_set_si(r.lo_, v, MPFR_RNDD);
        mpfr_set_si(r.hi_, v, MPFR_RNDU);
        return r;
    }
    static RInterval of_ulong(unsigned long v, mpfr_prec_t prec = kDefaultPrec) {
        RInterval r(prec);
        mpfr_set_ui(r.lo_, v, MPFR_RNDD);
        mpfr_set_ui(r.hi_, v, MPFR_RNDU);
        return r;
    }
    static RInterval of_mpz(const mpz_class& v, mpfr_prec_t prec = kDefaultPrec) {
        RInterval r(prec);
        mpfr_set_z(r.lo_, v.get_mpz_t(), MPFR_RNDD);
        mpfr_set_z(r.hi_, v.get_mpz_t(), MPFR_RNDU);
        return r;
    }
    static RInterval of_mpq(const mpq_class& v, mpfr_prec_t prec = kDefaultPrec) {
        RInterval r(prec);
        mpfr_set_q(r.lo_, v.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(r.hi_, v.get_mpq_t(), MPFR_RNDU);
        return r;
    }
    // ln 2 as a correctly rounded enclosure.
    static RInterval log2_const(mpfr_prec_t prec = kDefaultPrec) {
        RInterval r(prec);
        mpfr_const_log2(r.lo_, MPFR_RNDD);
        mpfr_const_log2(r.hi_, MPFR_RNDU);
        return r;
    }

    mpfr_prec_t prec() const { return prec_; }
    bool is_finite() const { return mpfr_number_p(lo_) && mpfr_number_p(hi_); }
    bool contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }
    double lo_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
    double hi_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }
    long double mid_ld() const {
        return (mpfr_get_ld(lo_, MPFR_RNDN) + mpfr_get_ld(hi_, MPFR_RNDN)) / 2;
    }

    friend RInterval operator+(const RInterval& a, const RInterval& b) {
        RInterval r(std::max(a.prec_, b.prec_));
        mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
        return r;
    }
    friend RInterval operator-(const RInterval& a, const RInterval& b) {
        RInterval r(std::max(a.prec_, b.prec_));
        mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
        mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
        return r;
    }
    RInterval operator-() const {
        RInterval r(prec_);
        mpfr_neg(r.lo_, hi_, MPFR_RNDD);
        mpfr_neg(r.hi_, lo_, MPFR_RNDU);
        return r;
    }
    friend RInterval operator*(const RInterval& a, const RInterval& b) {
        RInterval r(std::max(a.prec_, b.prec_));
        mpfr_t t;
        mpfr_init2(t, r.prec_);
        // lower: min of the four products rounded down
        mpfr_mul(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_mul(t, a.lo_, b.hi_, MPFR_RNDD);
        mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
        mpfr_mul(t, a.hi_, b.lo_, MPFR_RNDD);
        mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
        mpfr_mul(t, a.hi_, b.hi_, MPFR_RNDD);
        mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
        // upper: max of the four products rounded up
        mpfr_mul(r.hi_, a.lo_, b.lo_, MPFR_RNDU);
        mpfr_mul(t, a.lo_, b.hi_, MPFR_RNDU);
        mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
        mpfr_mul(t, a.hi_, b.lo_, MPFR_RNDU);
        mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
        mpfr_mul(t, a.hi_, b.hi_, MPFR_RNDU);
        mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
        mpfr_clear(t);
        return r;
    }
    friend RInterval operator/(const RInterval& a, const RInterval& b) {
        if (b.contains_zero()) throw DomainError("interval division by zero-spanning divisor");
        RInterval r(std::max(a.prec_, b.prec_));
        mpfr_t t;
        mpfr_init2(t, r.prec_);
        mpfr_div(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_div(t, a.lo_, b.hi_, MPFR_RNDD);
        mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
        mpfr_div(t, a.hi_, b.lo_, MPFR_RNDD);
        mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
        mpfr_div(t, a.hi_, b.hi_, MPFR_RNDD);
        mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
        mpfr_div(r.hi_, a.lo_, b.lo_, MPFR_RNDU);
        mpfr_div(t, a.lo_, b.hi_, MPFR_RNDU);
        mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
        mpfr_div(t, a.hi_, b.lo_, MPFR_RNDU);
        mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
        mpfr_div(t, a.hi_, b.hi_, MPFR_RNDU);
        mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
        mpfr_clear(t);
        return r;
    }

    // Natural log; requires a strictly positive interval.
    RInterval log() const {
        if (mpfr_sgn(lo_) <= 0) throw DomainError("log of non-positive interval");
        RInterval r(prec_);
        mpfr_log(r.lo_, lo_, MPFR_RNDD);
        mpfr_log(r.hi_, hi_, MPFR_RNDU);
        return r;
    }
    RInterval exp() const {
        RInterval r(prec_);
        mpfr_exp(r.lo_, lo_, MPFR_RNDD);
        mpfr_exp(r.hi_, hi_, MPFR_RNDU);
        return r;
    }
    RInterval sqrt() const {
        if (mpfr_sgn(lo_) < 0) throw DomainError("sqrt of negative interval");
        RInterval r(prec_);
        mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
        mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
        return r;
    }
    // Componentwise ceiling (monotone, exact up to representation).
    RInterval ceil() const {
        RInterval r(prec_);
        mpfr_rint_ceil(r.lo_, lo_, MPFR_RNDD);
        mpfr_rint_ceil(r.hi_, hi_, MPFR_RNDU);
        return r;
    }
    RInterval pow_ui(unsigned long e) const {
        RInterval acc = of_long(1, prec_);
        RInterval base = *this;
        while (e) {
            if (e & 1ul) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }
    // max(*this, other) componentwise (monotone envelope of the max).
    static RInterval max(const RInterval& a, const RInterval& b) {
        RInterval r(std::max(a.prec_, b.prec_));
        mpfr_max(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
        return r;
    }

    // Three-valued: true if every a < every b, false if every a >= every b.
    friend std::optional<bool> certainly_less(const RInterval& a, const RInterval& b) {
        if (mpfr_cmp(a.hi_, b.lo_) < 0) return true;
        if (mpfr_cmp(a.lo_, b.hi_) >= 0) return false;
        return std::nullopt;
    }
    std::optional<bool> less_than(const mpq_class& q) const {
        mpq_srcptr qq = q.get_mpq_t();
        if (mpfr_cmp_q(hi_, qq) < 0) return true;
        if (mpfr_cmp_q(lo_, qq) >= 0) return false;
        return std::nullopt;
    }

    // enclosure as decimal strings (lower, upper)
    std::pair<std::string, std::string> str(int digits = 25) const {
        char* s = nullptr;
        std::string fmt = "%." + std::to_string(digits) + "RDg";
        mpfr_asprintf(&s, fmt.c_str(), lo_);
        std::string lo(s);
        mpfr_free_str(s);
        fmt = "%." + std::to_string(digits) + "RUg";
        mpfr_asprintf(&s, fmt.c_str(), hi_);
        std::string hi(s);
        mpfr_free_str(s);
        return {lo, hi};
    }

private:
    mpfr_prec_t prec_;
    mpfr_t lo_, hi_;
};

} // namespace arithgeo
