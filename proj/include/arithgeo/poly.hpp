#pragma once

// Exact polynomial data model: sparse multivariate polynomials over Z with a
// graded-lex canonical term order, dense univariate polynomials over Z and Q,
// polynomial systems, the expression parser, and the size measures
// (sparse size, sigma, total degree, dense encoding).

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "arithgeo/errors.hpp"
#include "arithgeo/numutil.hpp"

namespace arithgeo {

using Exponents = std::vector<unsigned long>;

// Graded lexicographic: total degree first, then lexicographic left to right.
struct GradedLex {
    bool operator()(const Exponents& a, const Exponents& b) const {
        unsigned long da = std::accumulate(a.begin(), a.end(), 0ul);
        unsigned long db = std::accumulate(b.begin(), b.end(), 0ul);
        if (da != db) return da < db;
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }
};

// ---------------------------------------------------------------------------
// UniPoly: dense univariate polynomial over Z, coefficient index = degree.
// Invariant: no trailing zero coefficient (zero polynomial has empty coeffs).
// ---------------------------------------------------------------------------
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }
    static UniPoly constant(const mpz_class& v) { return UniPoly(std::vector<mpz_class>{v}); }
    static UniPoly monomial(const mpz_class& v, unsigned long deg) {
        std::vector<mpz_class> c(deg + 1, 0);
        c[deg] = v;
        return UniPoly(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    // Degree of the zero polynomial is -1.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    const std::vector<mpz_class>& coeffs() const { return c_; }
    mpz_class coeff(std::size_t i) const { return i < c_.size() ? c_[i] : mpz_class(0); }
    mpz_class lc() const { return c_.empty() ? mpz_class(0) : c_.back(); }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
        std::vector<mpz_class> r(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
        return UniPoly(std::move(r));
    }
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) {
        std::vector<mpz_class> r(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
        return UniPoly(std::move(r));
    }
    UniPoly operator-() const {
        std::vector<mpz_class> r(c_);
        for (auto& x : r) x = -x;
        return UniPoly(std::move(r));
    }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return UniPoly{};
        std::vector<mpz_class> r(a.c_.size() + b.c_.size() - 1, 0);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return UniPoly(std::move(r));
    }
    friend UniPoly operator*(const mpz_class& s, const UniPoly& a) {
        std::vector<mpz_class> r(a.c_);
        for (auto& x : r) x *= s;
        return UniPoly(std::move(r));
    }
    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

    UniPoly derivative() const {
        if (c_.size() <= 1) return UniPoly{};
        std::vector<mpz_class> r(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = mpz_class(i) * c_[i];
        return UniPoly(std::move(r));
    }

    mpz_class eval(const mpz_class& x) const {
        mpz_class acc = 0;
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }
    mpq_class eval(const mpq_class& x) const {
        mpq_class acc = 0;
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + mpq_class(c_[i]);
        return acc;
    }

    // gcd of |coefficients|; content of the zero polynomial is 0.
    mpz_class content() const {
        mpz_class g = 0;
        for (const auto& x : c_) g = gcd(g, x);
        return abs(g);
    }
    UniPoly primitive_part() const {
        if (is_zero()) return *this;
        mpz_class g = content();
        std::vector<mpz_class> r(c_);
        for (auto& x : r) x /= g;
        return UniPoly(std::move(r));
    }

    // Exact division; throws if the division is not exact over Z.
    UniPoly divexact(const UniPoly& d) const {
        if (d.is_zero()) throw DomainError("division by zero polynomial");
        if (is_zero()) return UniPoly{};
        if (degree() < d.degree()) throw DomainError("inexact polynomial division");
        std::vector<mpz_class> rem(c_);
        std::vector<mpz_class> q(c_.size() - d.c_.size() + 1, 0);
        for (std::size_t i = q.size(); i-- > 0;) {
            mpz_class num = rem[i + d.c_.size() - 1];
            if (num == 0) continue;
            if (!mpz_divisible_p(num.get_mpz_t(), d.lc().get_mpz_t()))
                throw DomainError("inexact polynomial division");
            q[i] = num / d.lc();
            for (std::size_t j = 0; j < d.c_.size(); ++j) rem[i + j] -= q[i] * d.c_[j];
        }
        for (const auto& x : rem)
            if (x != 0) throw DomainError("inexact polynomial division");
        return UniPoly(std::move(q));
    }

    // Pseudo-remainder: lc(d)^(deg(*this)-deg(d)+1) * (*this) = q*d + r.
    // The power of lc(d) is exactly deg(*this)-deg(d)+1 even when an
    // intermediate leading term cancels; subresultant division needs that.
    UniPoly prem(const UniPoly& d) const {
        if (d.is_zero()) throw DomainError("pseudo-remainder by zero");
        UniPoly r = *this;
        long dd = d.degree();
        const mpz_class l = d.lc();
        long owed = degree() - dd + 1;
        while (!r.is_zero() && r.degree() >= dd) {
            long shift = r.degree() - dd;
            UniPoly t = mpz_class(r.lc()) * UniPoly::monomial(1, static_cast<unsigned long>(shift));
            r = l * r - t * d;
            --owed;
        }
        for (; owed > 0; --owed) r = l * r;
        return r;
    }

    std::string to_string(const std::string& var = "x") const;

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<mpz_class> c_;
};

// Primitive gcd over Z (Gauss' lemma), leading coefficient positive.
inline UniPoly gcd_poly(UniPoly a, UniPoly b) {
    if (a.is_zero()) return b.lc() < 0 ? -b : b;
    if (b.is_zero()) return a.lc() < 0 ? -a : a;
    mpz_class ca = a.content(), cb = b.content();
    a = a.primitive_part();
    b = b.primitive_part();
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        UniPoly r = a.prem(b).primitive_part();
        a = b;
        b = r;
        if (a.degree() < b.degree()) std::swap(a, b);
    }
    mpz_class g = gcd(ca, cb);
    UniPoly res = g * a;
    return res.lc() < 0 ? -res : res;
}

// Primitive polynomial with the same distinct roots and no repeated factors;
// divides the input over Q. Leading coefficient positive.
inline UniPoly squarefree_part(const UniPoly& f) {
    if (f.is_zero()) throw DomainError("squarefree_part of zero polynomial");
    if (f.degree() == 0) return UniPoly::constant(1);
    UniPoly pf = f.primitive_part();
    UniPoly g = gcd_poly(pf, pf.derivative());
    UniPoly s = pf.divexact(g).primitive_part();
    return s.lc() < 0 ? -s : s;
}

// ---------------------------------------------------------------------------
// RatUniPoly: dense univariate polynomial over Q as (integer numerator,
// positive denominator) in lowest terms: gcd(content(num), den) = 1.
// ---------------------------------------------------------------------------
class RatUniPoly {
public:
    RatUniPoly() : num_(), den_(1) {}
    RatUniPoly(UniPoly num, mpz_class den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_ == 0) throw DomainError("zero denominator");
        normalize();
    }
    static RatUniPoly from_rationals(const std::vector<mpq_class>& coeffs) {
        mpz_class den = 1;
        for (const auto& q : coeffs) den = lcm(den, q.get_den());
        std::vector<mpz_class> num(coeffs.size());
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            mpq_class scaled = coeffs[i] * mpq_class(den);
            num[i] = scaled.get_num();
        }
        return RatUniPoly(UniPoly(std::move(num)), den);
    }

    const UniPoly& num() const { return num_; }
    const mpz_class& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    long degree() const { return num_.degree(); }
    mpq_class coeff(std::size_t i) const { return make_rational(num_.coeff(i), den_); }
    mpq_class lc() const { return make_rational(num_.lc(), den_); }
    mpq_class eval(const mpq_class& x) const { return num_.eval(x) / mpq_class(den_); }

    // Sum of the squares of the coefficients, exact.
    mpq_class sum_of_coeff_squares() const {
        mpq_class s = 0;
        for (long i = 0; i <= degree(); ++i) {
            mpq_class c = coeff(static_cast<std::size_t>(i));
            s += c * c;
        }
        return s;
    }

    friend bool operator==(const RatUniPoly& a, const RatUniPoly& b) {
        return a.den_ == b.den_ && a.num_ == b.num_;
    }
    friend bool operator<(const RatUniPoly& a, const RatUniPoly& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        for (long i = a.degree(); i >= 0; --i) {
            mpq_class ca = a.coeff(static_cast<std::size_t>(i)), cb = b.coeff(static_cast<std::size_t>(i));
            if (ca != cb) return ca < cb;
        }
        return false;
    }

private:
    void normalize() {
        if (den_ < 0) {
            den_ = -den_;
            num_ = -num_;
        }
        mpz_class g = gcd(num_.content(), den_);
        if (g > 1) {
            std::vector<mpz_class> c(num_.coeffs());
            for (auto& x : c) x /= g;
            num_ = UniPoly(std::move(c));
            den_ /= g;
        }
        if (num_.is_zero()) den_ = 1;
    }
    UniPoly num_;
    mpz_class den_;
};

// ---------------------------------------------------------------------------
// SparsePoly: exponent-vector -> nonzero coefficient map over an ordered
// variable list. Deterministic graded-lex term order.
// ---------------------------------------------------------------------------
class SparsePoly {
public:
    using TermMap = std::map<Exponents, mpz_class, GradedLex>;

    SparsePoly() = default;
    explicit SparsePoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}
    SparsePoly(std::vector<std::string> vars, TermMap terms)
        : vars_(std::move(vars)), terms_(std::move(terms)) {
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (it->first.size() != vars_.size()) throw DomainError("exponent vector length mismatch");
            it = it->second == 0 ? terms_.erase(it) : std::next(it);
        }
    }

    static SparsePoly constant(std::vector<std::string> vars, const mpz_class& c) {
        SparsePoly p(std::move(vars));
        if (c != 0) p.terms_[Exponents(p.vars_.size(), 0)] = c;
        return p;
    }
    static SparsePoly variable(std::vector<std::string> vars, const std::string& name) {
        SparsePoly p(std::move(vars));
        Exponents e(p.vars_.size(), 0);
        e[p.var_index(name)] = 1;
        p.terms_[e] = 1;
        return p;
    }

    const std::vector<std::string>& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t var_index(const std::string& name) const {
        auto it = std::find(vars_.begin(), vars_.end(), name);
        if (it == vars_.end()) throw DomainError("unknown variable: " + name);
        return static_cast<std::size_t>(it - vars_.begin());
    }
    bool has_var(const std::string& name) const {
        return std::find(vars_.begin(), vars_.end(), name) != vars_.end();
    }

    void add_term(const Exponents& e, const mpz_class& c) {
        if (e.size() != vars_.size()) throw DomainError("exponent vector length mismatch");
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            if (c != 0) terms_[e] = c;
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    unsigned long total_degree() const {
        unsigned long d = 0;
        for (const auto& [e, c] : terms_)
            d = std::max(d, std::accumulate(e.begin(), e.end(), 0ul));
        return d;
    }
    long degree_in(std::size_t vi) const {
        long d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, static_cast<long>(e[vi]));
        return is_zero() ? -1 : d;
    }
    long degree_in(const std::string& name) const { return degree_in(var_index(name)); }

    friend SparsePoly operator+(const SparsePoly& a, const SparsePoly& b) {
        a.check_compatible(b);
        SparsePoly r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }
    friend SparsePoly operator-(const SparsePoly& a, const SparsePoly& b) {
        a.check_compatible(b);
        SparsePoly r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
        return r;
    }
    SparsePoly operator-() const {
        SparsePoly r(vars_);
        for (const auto& [e, c] : terms_) r.terms_[e] = -c;
        return r;
    }
    friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
        a.check_compatible(b);
        SparsePoly r(a.vars_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e(ea.size());
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }
    friend SparsePoly operator*(const mpz_class& s, const SparsePoly& a) {
        SparsePoly r(a.vars_);
        if (s == 0) return r;
        for (const auto& [e, c] : a.terms_) r.terms_[e] = s * c;
        return r;
    }
    friend bool operator==(const SparsePoly& a, const SparsePoly& b) {
        return a.vars_ == b.vars_ && a.terms_ == b.terms_;
    }

    SparsePoly pow(unsigned long e) const {
        SparsePoly acc = constant(vars_, 1);
        SparsePoly base = *this;
        while (e > 0) {
            if (e & 1ul) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

    SparsePoly derivative(const std::string& name) const {
        std::size_t vi = var_index(name);
        SparsePoly r(vars_);
        for (const auto& [e, c] : terms_) {
            if (e[vi] == 0) continue;
            Exponents ne = e;
            ne[vi] -= 1;
            r.add_term(ne, c * mpz_class(e[vi]));
        }
        return r;
    }

    // Substitute var := value (rational), clearing denominators: returns the
    // integer polynomial den^deg_var(f) * f|_{var=value} together with the
    // scalar multiplier den^deg_var(f) that was applied.
    struct Substitution;
    Substitution substitute(const std::string& name, const mpq_class& value) const;

    // Remove a variable the polynomial no longer uses.
    SparsePoly drop_var(const std::string& name) const {
        std::size_t vi = var_index(name);
        if (degree_in(vi) > 0) throw DomainError("drop_var: variable still in use: " + name);
        std::vector<std::string> nv;
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (i != vi) nv.push_back(vars_[i]);
        SparsePoly r(nv);
        for (const auto& [e, c] : terms_) {
            Exponents ne;
            for (std::size_t i = 0; i < e.size(); ++i)
                if (i != vi) ne.push_back(e[i]);
            r.terms_[ne] = c;
        }
        return r;
    }

    mpq_class eval(const std::vector<mpq_class>& point) const {
        if (point.size() != vars_.size()) throw DomainError("evaluation point arity mismatch");
        mpq_class acc = 0;
        for (const auto& [e, c] : terms_) {
            mpq_class t(c);
            for (std::size_t i = 0; i < e.size(); ++i)
                for (unsigned long k = 0; k < e[i]; ++k) t *= point[i];
            acc += t;
        }
        return acc;
    }

    // Dense coefficient list with respect to one variable; index = degree in
    // that variable, entries over the same variable list with that exponent 0.
    std::vector<SparsePoly> coeffs_in(const std::string& name) const {
        std::size_t vi = var_index(name);
        long dv = degree_in(vi);
        std::vector<SparsePoly> out(static_cast<std::size_t>(dv < 0 ? 0 : dv + 1), SparsePoly(vars_));
        if (dv < 0) return out;
        for (const auto& [e, c] : terms_) {
            Exponents ne = e;
            unsigned long k = ne[vi];
            ne[vi] = 0;
            out[k].add_term(ne, c);
        }
        return out;
    }

    // View as univariate in the single variable it actually uses (or in `name`).
    UniPoly to_unipoly(const std::string& name) const {
        std::size_t vi = var_index(name);
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (i != vi && degree_in(i) > 0)
                throw DomainError("polynomial is not univariate in " + name);
        long dv = degree_in(vi);
        std::vector<mpz_class> c(static_cast<std::size_t>(dv < 0 ? 0 : dv + 1), 0);
        for (const auto& [e, k] : terms_) c[e[vi]] = k;
        return UniPoly(std::move(c));
    }

    // Largest monomial dividing every term (zero vector for the zero poly).
    Exponents monomial_content() const {
        if (is_zero()) return Exponents(vars_.size(), 0);
        Exponents m = terms_.begin()->first;
        for (const auto& [e, c] : terms_)
            for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::min(m[i], e[i]);
        return m;
    }
    SparsePoly divide_monomial(const Exponents& m) const {
        SparsePoly r(vars_);
        for (const auto& [e, c] : terms_) {
            Exponents ne(e.size());
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] < m[i]) throw DomainError("monomial does not divide polynomial");
                ne[i] = e[i] - m[i];
            }
            r.terms_[ne] = c;
        }
        return r;
    }

    mpz_class max_abs_coeff() const {
        mpz_class m = 0;
        for (const auto& [e, c] : terms_) m = std::max(m, mpz_class(abs(c)));
        return m;
    }

    std::string to_string() const;

private:
    void check_compatible(const SparsePoly& other) const {
        if (vars_ != other.vars_) throw DomainError("incompatible variable lists");
    }
    std::vector<std::string> vars_;
    TermMap terms_;
};

struct SparsePoly::Substitution {
    SparsePoly poly;
    mpz_class multiplier;
};

inline SparsePoly::Substitution SparsePoly::substitute(const std::string& name,
                                                       const mpq_class& value) const {
    std::size_t vi = var_index(name);
    long dv = degree_in(vi);
    unsigned long d = dv < 0 ? 0 : static_cast<unsigned long>(dv);
    const mpz_class num = value.get_num(), den = value.get_den();
    SparsePoly r(vars_);
    for (const auto& [e, c] : terms_) {
        // c * num^e[vi] * den^(d - e[vi]), exponent vi zeroed.
        mpz_class k = c * pow_mpz(num, e[vi]) * pow_mpz(den, d - e[vi]);
        Exponents ne = e;
        ne[vi] = 0;
        r.add_term(ne, k);
    }
    return {std::move(r), pow_mpz(den, d)};
}

// ---------------------------------------------------------------------------
// PolySystem: m >= 1 polynomials over one shared variable list of length n.
// ---------------------------------------------------------------------------
class PolySystem {
public:
    explicit PolySystem(std::vector<SparsePoly> polys) : polys_(std::move(polys)) {
        if (polys_.empty()) throw DomainError("empty polynomial system");
        for (const auto& p : polys_)
            if (p.vars() != polys_.front().vars()) throw DomainError("system variable lists differ");
        if (polys_.front().vars().empty()) throw DomainError("system has no variables");
    }
    const std::vector<SparsePoly>& polys() const { return polys_; }
    const std::vector<std::string>& vars() const { return polys_.front().vars(); }
    std::size_t m() const { return polys_.size(); }
    std::size_t n() const { return vars().size(); }

    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < polys_.size(); ++i) {
            if (i) s += "; ";
            s += polys_[i].to_string();
        }
        return s;
    }

private:
    std::vector<SparsePoly> polys_;
};

// ---------------------------------------------------------------------------
// Size measures.
// ---------------------------------------------------------------------------
struct SizeRecord {
    unsigned long sparse_size; // sum of size(c) over coefficients and size(e) over every exponent entry
    unsigned long sigma;       // max coefficient bit-length: max size(c)
    unsigned long d;           // max total degree of any polynomial
    unsigned long dense_size;  // d + sigma
};

inline SizeRecord sizes(const PolySystem& F) {
    SizeRecord r{0, 0, 0, 0};
    for (const auto& f : F.polys()) {
        for (const auto& [e, c] : f.terms()) {
            r.sparse_size += size_of_int(c);
            for (unsigned long ei : e) r.sparse_size += size_of_int(mpz_class(ei));
            r.sigma = std::max(r.sigma, size_of_int(c));
        }
        r.d = std::max(r.d, f.total_degree());
    }
    r.dense_size = r.d + r.sigma;
    return r;
}

inline SizeRecord sizes(const SparsePoly& f) { return sizes(PolySystem({f})); }

// ---------------------------------------------------------------------------
// Printing. Canonical form: terms in descending graded-lex order, explicit
// '*' and '^' so that parse(print(f)) == f.
// ---------------------------------------------------------------------------
inline std::string SparsePoly::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        mpz_class a = abs(c);
        bool negative = c < 0;
        if (out.empty()) {
            if (negative) out += "-";
        } else {
            out += negative ? "-" : "+";
        }
        std::vector<std::string> factors;
        bool all_zero = std::all_of(e.begin(), e.end(), [](unsigned long x) { return x == 0; });
        if (a != 1 || all_zero) factors.push_back(a.get_str());
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            factors.push_back(e[i] == 1 ? vars_[i] : vars_[i] + "^" + std::to_string(e[i]));
        }
        for (std::size_t i = 0; i < factors.size(); ++i) {
            if (i) out += "*";
            out += factors[i];
        }
    }
    return out;
}

inline std::string UniPoly::to_string(const std::string& var) const {
    SparsePoly p({var});
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0) p.add_term({static_cast<unsigned long>(i)}, c_[i]);
    return p.to_string();
}

// ---------------------------------------------------------------------------
// Parser. Grammar (ASCII): integers with optional sign; variables from
// {v, x, y} or x1..x9; operators + - * ^ and parentheses; no implicit
// multiplication; ^ binds tighter than *, which binds tighter than + and -;
// whitespace ignored. Exponents are nonnegative integer literals.
// ---------------------------------------------------------------------------
namespace parser_detail {

inline const std::vector<std::string>& master_var_order() {
    static const std::vector<std::string> order = {"v", "x", "y", "x1", "x2", "x3",
                                                   "x4", "x5", "x6", "x7", "x8", "x9"};
    return order;
}

struct Token {
    enum Kind { Int, Var, Plus, Minus, Star, Caret, LParen, RParen, End } kind;
    std::string text;
    std::size_t pos;
};

inline std::vector<Token> tokenize(const std::string& s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        char ch = s[i];
        if (ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n') {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (ch >= '0' && ch <= '9') {
            while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
            out.push_back({Token::Int, s.substr(start, i - start), start});
        } else if (ch >= 'a' && ch <= 'z') {
            ++i;
            if (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
            std::string name = s.substr(start, i - start);
            const auto& order = master_var_order();
            if (std::find(order.begin(), order.end(), name) == order.end())
                throw ParseError(start, "unknown variable: " + name);
            out.push_back({Token::Var, name, start});
        } else {
            Token::Kind k;
            switch (ch) {
                case '+': k = Token::Plus; break;
                case '-': k = Token::Minus; break;
                case '*': k = Token::Star; break;
                case '^': k = Token::Caret; break;
                case '(': k = Token::LParen; break;
                case ')': k = Token::RParen; break;
                default: throw ParseError(start, std::string("unexpected character: ") + ch);
            }
            out.push_back({k, std::string(1, ch), start});
            ++i;
        }
    }
    out.push_back({Token::End, "", s.size()});
    return out;
}

class Parser {
public:
    Parser(std::vector<Token> toks, std::vector<std::string> vars)
        : toks_(std::move(toks)), vars_(std::move(vars)) {}

    SparsePoly parse_expr() {
        SparsePoly acc = parse_term();
        while (peek().kind == Token::Plus || peek().kind == Token::Minus) {
            bool minus = next().kind == Token::Minus;
            SparsePoly t = parse_term();
            acc = minus ? acc - t : acc + t;
        }
        return acc;
    }

    void expect_end() {
        if (peek().kind != Token::End) throw ParseError(peek().pos, "unexpected token: " + peek().text);
    }

private:
    SparsePoly parse_term() {
        SparsePoly acc = parse_factor();
        while (peek().kind == Token::Star) {
            next();
            acc = acc * parse_factor();
        }
        return acc;
    }

    // factor := ('+'|'-')* primary ('^' INT)?   (unary sign binds looser than ^)
    SparsePoly parse_factor() {
        bool negative = false;
        while (peek().kind == Token::Plus || peek().kind == Token::Minus) {
            if (next().kind == Token::Minus) negative = !negative;
        }
        SparsePoly base = parse_primary();
        if (peek().kind == Token::Caret) {
            std::size_t cpos = next().pos;
            if (peek().kind != Token::Int)
                throw ParseError(peek().kind == Token::End ? cpos : peek().pos,
                                 "exponent must be a nonnegative integer literal");
            Token t = next();
            unsigned long e = 0;
            try {
                e = std::stoul(t.text);
            } catch (const std::exception&) {
                throw ParseError(t.pos, "exponent out of range");
            }
            if (e > 100000) throw ParseError(t.pos, "exponent out of range");
            base = base.pow(e);
        }
        return negative ? -base : base;
    }

    SparsePoly parse_primary() {
        Token t = peek();
        switch (t.kind) {
            case Token::Int:
                next();
                return SparsePoly::constant(vars_, mpz_class(t.text));
            case Token::Var: {
                next();
                if (std::find(vars_.begin(), vars_.end(), t.text) == vars_.end())
                    throw ParseError(t.pos, "unknown variable: " + t.text);
                return SparsePoly::variable(vars_, t.text);
            }
            case Token::LParen: {
                next();
                SparsePoly e = parse_expr();
                if (peek().kind != Token::RParen) throw ParseError(peek().pos, "expected ')'");
                next();
                return e;
            }
            case Token::End:
                throw ParseError(t.pos, "unexpected end of input");
            default:
                throw ParseError(t.pos, "unexpected token: " + t.text);
        }
    }

    const Token& peek() const { return toks_[idx_]; }
    const Token& next() { return toks_[idx_++]; }

    std::vector<Token> toks_;
    std::vector<std::string> vars_;
    std::size_t idx_ = 0;
};

} // namespace parser_detail

// Parse an expression. If vars is empty, the variable list is inferred as the
// set of variables appearing, ordered v, x, y, x1..x9.
inline SparsePoly parse(const std::string& text, std::vector<std::string> vars = {}) {
    auto toks = parser_detail::tokenize(text);
    if (vars.empty()) {
        std::set<std::string> seen;
        for (const auto& t : toks)
            if (t.kind == parser_detail::Token::Var) seen.insert(t.text);
        for (const auto& name : parser_detail::master_var_order())
            if (seen.count(name)) vars.push_back(name);
        if (vars.empty()) vars = {"x"};
    }
    parser_detail::Parser p(std::move(toks), vars);
    SparsePoly r = p.parse_expr();
    p.expect_end();
    return r;
}

// Parse one polynomial per line into a system over the shared inferred
// variable list (union over lines, master order).
inline PolySystem parse_system(const std::vector<std::string>& lines) {
    if (lines.empty()) throw DomainError("empty polynomial system");
    std::set<std::string> seen;
    for (const auto& line : lines) {
        auto toks = parser_detail::tokenize(line);
        for (const auto& t : toks)
            if (t.kind == parser_detail::Token::Var) seen.insert(t.text);
    }
    std::vector<std::string> vars;
    for (const auto& name : parser_detail::master_var_order())
        if (seen.count(name)) vars.push_back(name);
    if (vars.empty()) vars = {"x"};
    std::vector<SparsePoly> polys;
    for (const auto& line : lines) polys.push_back(parse(line, vars));
    return PolySystem(std::move(polys));
}

} // namespace arithgeo
