#pragma once

// Command-line surface. Every subcommand is a pure function from a parsed
// RunConfig to a report object; run_cli only registers flags, dispatches,
// and maps exceptions to exit codes. The binary and the test suite drive
// the same in-process entry point against caller-owned streams.
//
// Exit codes: 0 success (false verdicts included), 1 invalid input or
// flags, 2 exhausted budget, 3 refusal (decider hypotheses not met:
// PromiseUnknown, NotGeneric). Refusals still print their full report.
//
// Rationals serialize as {"num", "den"} decimal strings, never as floats.
// Reports are byte-identical for every --threads value.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <ostream>
#include <set>
#include <random>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "arithgeo/bounds.hpp"
#include "arithgeo/density.hpp"
#include "arithgeo/errors.hpp"
#include "arithgeo/poly.hpp"
#include "arithgeo/polytope.hpp"
#include "arithgeo/qfeas.hpp"
#include "arithgeo/resultant.hpp"
#include "arithgeo/sentences.hpp"

namespace arithgeo {

struct RunConfig {
    std::string subcommand;
    std::string expr;     // inline polynomial (resultant: first of two)
    std::string expr2;    // resultant only: second polynomial
    std::string file;     // alternative input, one polynomial per line
    std::uint64_t x_max = 100000;
    unsigned long long cap = 0; // 0: max total degree + 1
    FeasibilityMode mode = FeasibilityMode::Empirical;
    Domain domain = Domain::N;
    std::string format = "text"; // json | csv | text
    bool trace = false;
    unsigned threads = 1;
    std::uint64_t seed = 0;
    SentenceBudgets budgets;                        // jst / eae
    unsigned long long scan_budget = 1000000000ull; // density prime scan
    unsigned long long point_budget = 200000ull;    // qfeas point search
    std::string elim_var;                           // resultant: eliminate symbolically
    unsigned degree = 2;                            // survey
    long coeff_bound = 10;                          // survey
    unsigned samples = 500;                         // survey
};

namespace cli_detail {

using json = nlohmann::ordered_json;

inline json jrat(const mpq_class& q) {
    return json{{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
}

inline json jinterval(const RInterval& v) {
    auto enc = v.str();
    return json{{"lo", enc.first}, {"hi", enc.second}};
}

inline json jbound(const BoundValue& b) {
    auto enc = b.value.str();
    json j{{"formula", b.formula}, {"lo", enc.first}, {"hi", enc.second}};
    if (!b.inputs.empty()) {
        json in = json::object();
        for (const auto& [k, v] : b.inputs) in[k] = v;
        j["inputs"] = in;
    }
    if (!b.notes.empty()) j["notes"] = b.notes;
    return j;
}

inline json jcert(const Certificate& c) {
    json j{{"type", to_string(c.type)}};
    if (c.witness) j["witness"] = c.witness->get_str();
    if (!c.detail.empty()) j["detail"] = c.detail;
    return j;
}

inline std::string section_str(const RatUniPoly& s) {
    if (s.is_zero()) return "0";
    std::string num = s.num().to_string("x");
    if (s.den() == 1) return num;
    return "(" + num + ") / " + s.den().get_str();
}

inline json jsection(const LinearFactor& lf, bool admissible) {
    json coeffs = json::array();
    if (lf.fi.is_zero())
        coeffs.push_back(jrat(mpq_class(0)));
    else
        for (unsigned long i = 0; i <= lf.fi.degree(); ++i) coeffs.push_back(jrat(lf.fi.coeff(i)));
    return json{{"section", section_str(lf.fi)},
                {"coeffs", coeffs},
                {"multiplicity", lf.multiplicity},
                {"admissible", admissible}};
}

// --- rendering -------------------------------------------------------------

inline std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
        q += ch;
        if (ch == '"') q += '"';
    }
    q += '"';
    return q;
}

inline void flatten(const json& j, const std::string& prefix,
                    std::vector<std::pair<std::string, std::string>>& out) {
    if (j.is_object()) {
        if (j.empty()) {
            out.emplace_back(prefix, "{}");
            return;
        }
        for (auto it = j.begin(); it != j.end(); ++it)
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    } else if (j.is_array()) {
        if (j.empty()) {
            out.emplace_back(prefix, "[]");
            return;
        }
        std::size_t i = 0;
        for (const auto& el : j) flatten(el, prefix + "[" + std::to_string(i++) + "]", out);
    } else if (j.is_string()) {
        out.emplace_back(prefix, j.get<std::string>());
    } else {
        out.emplace_back(prefix, j.dump());
    }
}

// csv_rows, when given, is the ready-made table for the csv format; json and
// text always render the full report object.
inline void emit(std::ostream& out, const std::string& format, const json& j,
                 const std::vector<std::string>* csv_rows = nullptr) {
    if (format == "json") {
        out << j.dump(2) << "\n";
        return;
    }
    if (format == "csv") {
        if (csv_rows) {
            for (const auto& line : *csv_rows) out << line << "\n";
        } else {
            std::vector<std::pair<std::string, std::string>> kv;
            flatten(j, "", kv);
            out << "key,value\n";
            for (const auto& [k, v] : kv) out << csv_quote(k) << "," << csv_quote(v) << "\n";
        }
        return;
    }
    std::vector<std::pair<std::string, std::string>> kv;
    flatten(j, "", kv);
    std::size_t w = 0;
    for (const auto& [k, v] : kv) w = std::max(w, k.size());
    for (const auto& [k, v] : kv) out << k << std::string(w - k.size() + 2, ' ') << v << "\n";
}

inline int fail(std::ostream& err, const char* code, const std::string& message, int rc) {
    err << json{{"error", code}, {"message", message}}.dump() << "\n";
    return rc;
}

// --- input -----------------------------------------------------------------

inline std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open file: " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (!line.empty()) lines.push_back(line);
    }
    if (lines.empty()) throw DomainError("no polynomials in file: " + path);
    return lines;
}

inline PolySystem load_system(const RunConfig& cfg) {
    if (!cfg.file.empty()) return parse_system(read_lines(cfg.file));
    if (cfg.expr.empty()) throw DomainError("no polynomial given: pass an expression or --file");
    return parse_system({cfg.expr});
}

inline SparsePoly load_single(const RunConfig& cfg) {
    PolySystem F = load_system(cfg);
    if (F.m() != 1) throw DomainError("this subcommand takes exactly one polynomial");
    return F.polys()[0];
}

inline UniPoly load_unipoly(const RunConfig& cfg) {
    SparsePoly f = load_single(cfg);
    if (f.vars().size() != 1) throw DomainError("univariate polynomial required");
    return f.to_unipoly(f.vars()[0]);
}

// --- subcommands -----------------------------------------------------------

inline int run_density(const RunConfig& cfg, std::ostream& out) {
    PolySystem F = load_system(cfg);
    unsigned long long cap = cfg.cap ? cfg.cap : sizes(F).d + 1;
    ScanOptions opts;
    opts.threads = cfg.threads;
    opts.trace = cfg.trace;
    opts.budget = cfg.scan_budget;
    DensityReport rep = scan(F, cfg.x_max, cap, opts);

    json j;
    j["system"] = rep.fingerprint;
    j["x_max"] = cfg.x_max;
    j["cap"] = rep.cap;
    j["pi"] = rep.pi;
    j["pi_F"] = rep.pi_F;
    j["N_F"] = rep.N_F;
    j["ratio_NF"] = jrat(rep.ratio_NF());
    j["ratio_piF"] = jrat(rep.ratio_piF());
    j["estimate_rF"] = estimate_rF(rep);
    j["estimate_jF"] = jrat(estimate_jF(rep));
    j["degenerate_primes"] = rep.degenerate_primes;
    json iv = json::array();
    for (const auto& [lo, hi] : rep.intervals) iv.push_back(json::array({lo, hi}));
    j["intervals"] = iv;

    std::vector<std::string> rows_csv;
    const std::vector<std::string>* csv = nullptr;
    if (rep.rows) {
        json rows = json::array();
        rows_csv.push_back("p,root_count,degenerate,cum_pi,cum_piF,cum_NF");
        for (const DensityRow& r : *rep.rows) {
            rows.push_back(json{{"p", r.p},
                                {"root_count", r.root_count},
                                {"degenerate", r.degenerate},
                                {"cum_pi", r.cum_pi},
                                {"cum_piF", r.cum_piF},
                                {"cum_NF", r.cum_NF}});
            rows_csv.push_back(std::to_string(r.p) + "," + std::to_string(r.root_count) + "," +
                               (r.degenerate ? "1" : "0") + "," + std::to_string(r.cum_pi) + "," +
                               std::to_string(r.cum_piF) + "," + std::to_string(r.cum_NF));
        }
        j["rows"] = rows;
        csv = &rows_csv;
    }
    emit(out, cfg.format, j, csv);
    return 0;
}

inline int run_qfeas(const RunConfig& cfg, std::ostream& out) {
    PolySystem F = load_system(cfg);
    QfeasOptions opts;
    opts.cap = cfg.cap;
    opts.threads = cfg.threads;
    opts.enum_budget = cfg.point_budget;
    FeasibilityVerdict v = decide_qfeasible(F, cfg.x_max, cfg.mode, opts);

    json j;
    j["system"] = F.to_string();
    j["verdict"] = to_string(v.verdict);
    j["mode"] = to_string(v.mode);
    j["x_used"] = v.x_used;
    j["pi"] = v.pi;
    j["N_F"] = v.N_F;
    j["estimate_rF"] = v.estimate_rF;
    if (v.certificate) {
        json pt = json::array();
        for (const mpq_class& c : *v.certificate) pt.push_back(jrat(c));
        j["certificate"] = pt;
    }
    emit(out, cfg.format, j);
    return v.verdict == Feasibility::PromiseUnknown ? 3 : 0;
}

inline int run_jst(const RunConfig& cfg, std::ostream& out) {
    SparsePoly f0 = load_single(cfg);
    SentenceVerdict v = jst_decide(f0, cfg.domain, cfg.budgets);

    // Rebuild the analysis the decider ran so the report can show each of
    // the three conditions on its own line.
    SparsePoly f = cfg.domain == Domain::N ? strip_xy_monomials(f0) : f0;
    JstAnalysis an = extract_linear_factors(f, cfg.domain);
    const bool have_sections = !an.admissible.empty();

    json j;
    j["sentence"] = "forall x exists y: f(x, y) = 0";
    j["domain"] = to_string(cfg.domain);
    j["polynomial"] = f0.to_string();
    j["truth"] = v.truth;
    j["certificate"] = jcert(v.certificate);

    json sections = json::array();
    std::set<std::size_t> adm(an.admissible.begin(), an.admissible.end());
    for (std::size_t i = 0; i < an.linear_factors.size(); ++i)
        sections.push_back(jsection(an.linear_factors[i], adm.count(i) > 0));
    j["sections"] = sections;
    j["alpha"] = an.alpha.get_str();
    if (cfg.domain == Domain::N) j["x0"] = an.x0.get_str();

    json conds;
    json c1{{"requirement", cfg.domain == Domain::N
                                ? "a rational section y = f_i(x) with positive leading coefficient"
                                : "a rational section y = f_i(x)"},
            {"status", have_sections ? "holds" : "fails"},
            {"admissible_sections", an.admissible.size()}};
    conds["1"] = c1;

    // The decider checks (2) before (3); any covering or witness-map
    // certificate therefore implies the pointwise stage passed.
    json c2{{"requirement", "a witness y >= 1 for every x in {1..x0}"}};
    if (cfg.domain == Domain::Z) {
        c2["status"] = "not applicable";
    } else if (!have_sections) {
        c2["status"] = "not evaluated";
    } else if (v.certificate.type == CertificateType::FailingX) {
        c2["status"] = "fails";
        c2["witness_x"] = v.certificate.witness->get_str();
    } else {
        c2["status"] = "holds";
    }
    if (cfg.domain == Domain::N) c2["x0"] = an.x0.get_str();
    conds["2"] = c2;

    json c3{{"requirement", "the congruences g_i(t) = 0 mod alpha cover Z/alpha"}};
    if (!have_sections) {
        c3["status"] = "not evaluated";
    } else {
        CoveringResult cov = covering_check(an.g, an.alpha, cfg.budgets.congruence);
        c3["status"] = cov.covered ? "holds" : "fails";
        c3["alpha"] = an.alpha.get_str();
        if (cov.witness) c3["witness_t"] = *cov.witness;
    }
    conds["3"] = c3;
    j["conditions"] = conds;

    emit(out, cfg.format, j);
    return 0;
}

inline int run_eae(const RunConfig& cfg, std::ostream& out) {
    SparsePoly f = load_single(cfg);
    SentenceVerdict v = eae_decide(f, cfg.domain, cfg.budgets);

    json j;
    j["sentence"] = "exists v forall x exists y: f(v, x, y) = 0";
    j["domain"] = to_string(cfg.domain);
    j["polynomial"] = f.to_string();
    if (v.certificate.type == CertificateType::NotGeneric) {
        j["generic"] = false;
        j["certificate"] = jcert(v.certificate);
        emit(out, cfg.format, j);
        return 3;
    }
    j["generic"] = true;
    j["truth"] = v.truth;
    if (v.v0) j["v0"] = v.v0->get_str();
    json cands = json::array();
    for (const mpz_class& c : v.candidates) cands.push_back(c.get_str());
    j["candidates"] = cands;
    j["certificate"] = jcert(v.certificate);
    if (!v.per_candidate.empty()) {
        json pcs = json::array();
        for (const auto& [c, cert] : v.per_candidate)
            pcs.push_back(json{{"v", c.get_str()}, {"certificate", jcert(cert)}});
        j["per_candidate"] = pcs;
    }
    emit(out, cfg.format, j);
    return 0;
}

inline int run_bounds(const RunConfig& cfg, std::ostream& out) {
    PolySystem F = load_system(cfg);
    BoundContext ctx = make_context(F);
    unsigned long long z = 0;
    if (ctx.m == 1 && ctx.n == 1) {
        const SparsePoly& f = F.polys()[0];
        UniPoly u = squarefree_part(f.to_unipoly(f.vars()[0]));
        if (u.degree() >= 1) {
            z = u.degree();
            set_zero_dimensional(ctx, z);
        }
    }

    json j;
    j["system"] = F.to_string();
    j["context"] = json{{"n", ctx.n},
                        {"m", ctx.m},
                        {"d", ctx.d},
                        {"sigma", ctx.sigma},
                        {"volume", ctx.volume},
                        {"mu", ctx.mu},
                        {"k", ctx.k},
                        {"max_abs_coeff", ctx.c.get_str()},
                        {"delta", ctx.delta},
                        {"zero_dim_certified", ctx.zero_dim_certified}};
    j["M_F"] = jbound(MF_bound(ctx));
    j["sigma_hF"] = jbound(sigma_hF_bound(ctx));
    PrimBounds pb = prim_bounds(ctx);
    j["sigma_hat"] = jbound(pb.sigma_hat);
    j["ln_B1"] = jbound(pb.b1_log);
    j["B1"] = jinterval(pb.b1);
    j["sigma_r"] = jbound(pb.sigma_r);
    j["sigma_hi"] = jbound(pb.sigma_hi);
    j["ln_ai"] = jbound(pb.log_ai);
    j["a_star"] = jbound(aF_star(ctx));
    if (cfg.x_max > 33766) {
        mpz_class x(static_cast<unsigned long>(cfg.x_max));
        j["count_error_at_x"] = jbound(bFx(ctx, x));
        if (ctx.zero_dim_certified && z >= 2)
            j["density_factor_at_x"] = jbound(assertion1_bound(ctx, z, x));
    }
    if (ctx.zero_dim_certified) {
        RigorousM M = rigorous_M(ctx);
        j["rigorous_M"] = json{{"exponent", M.exponent},
                               {"bit_length", M.bit_length},
                               {"error_at_M", jinterval(M.attained)}};
    }
    emit(out, cfg.format, j);
    return 0;
}

inline int run_disc(const RunConfig& cfg, std::ostream& out) {
    UniPoly f = load_unipoly(cfg);
    mpz_class D = discriminant(f);
    json j{{"polynomial", f.to_string()},
           {"degree", f.degree()},
           {"discriminant", D.get_str()}};
    emit(out, cfg.format, j);
    return 0;
}

inline int run_resultant(const RunConfig& cfg, std::ostream& out) {
    std::vector<std::string> exprs;
    if (!cfg.file.empty()) {
        exprs = read_lines(cfg.file);
        if (exprs.size() != 2) throw DomainError("resultant needs exactly two polynomials");
    } else {
        if (cfg.expr.empty() || cfg.expr2.empty())
            throw DomainError("resultant needs two polynomial arguments");
        exprs = {cfg.expr, cfg.expr2};
    }
    PolySystem F = parse_system(exprs);
    const SparsePoly& a = F.polys()[0];
    const SparsePoly& b = F.polys()[1];

    json j;
    j["f"] = a.to_string();
    j["g"] = b.to_string();
    if (!cfg.elim_var.empty()) {
        SparsePoly r = resultant(a, b, cfg.elim_var);
        j["variable"] = cfg.elim_var;
        j["resultant"] = r.to_string();
    } else if (F.n() == 1) {
        mpz_class r = resultant(a.to_unipoly(F.vars()[0]), b.to_unipoly(F.vars()[0]));
        j["variable"] = F.vars()[0];
        j["resultant"] = r.get_str();
    } else {
        throw DomainError("two or more variables: pass --var to choose the one to eliminate");
    }
    emit(out, cfg.format, j);
    return 0;
}

inline int run_volume(const RunConfig& cfg, std::ostream& out) {
    PolySystem F = load_system(cfg);
    LatticePolytope P = qf_polytope(F);
    json j;
    j["system"] = F.to_string();
    j["ambient"] = P.ambient;
    j["affine_rank"] = P.affine_rank;
    json vs = json::array();
    for (const LatticePoint& v : P.vertices) vs.push_back(v);
    j["vertices"] = vs;
    j["normalized_volume"] = normalized_volume(P);
    emit(out, cfg.format, j);
    return 0;
}

inline int run_genericity(const RunConfig& cfg, std::ostream& out) {
    SparsePoly f0 = load_single(cfg);
    SparsePoly f = cfg.domain == Domain::N ? strip_xy_monomials(f0) : f0;
    GenericityReport g = check_genericity(f);
    json j;
    j["polynomial"] = f0.to_string();
    j["domain"] = to_string(cfg.domain);
    j["generic"] = g.generic;
    if (!g.generic) j["reason"] = g.reason;
    emit(out, cfg.format, j);
    return g.generic ? 0 : 3;
}

// One sample: a degree-fixed integer polynomial with coefficients uniform in
// {-c..c} and nonzero leading coefficient, judged transitive-looking when the
// prime census settles at r_F = 1. Seeding is per-index so partitioning the
// index range across threads cannot change any draw.
inline bool survey_sample_transitive(unsigned degree, long c, std::uint64_t x_max,
                                     std::uint64_t seed, unsigned index) {
    std::mt19937_64 gen(seed ^ (0x9E3779B97F4A7C15ull * (index + 1)));
    std::uniform_int_distribution<long> coeff(-c, c);
    std::vector<long> a(degree + 1);
    for (auto& ai : a) ai = coeff(gen);
    while (a[degree] == 0) a[degree] = coeff(gen);
    SparsePoly f(std::vector<std::string>{"x"});
    for (unsigned k = 0; k <= degree; ++k)
        if (a[k] != 0) f.add_term({k}, mpz_class(a[k]));
    DensityReport rep = scan(PolySystem({f}), x_max, degree + 1, ScanOptions{});
    return estimate_rF(rep) == 1;
}

inline unsigned long survey_count(unsigned degree, long c, unsigned samples,
                                  std::uint64_t x_max, std::uint64_t seed, unsigned threads) {
    if (threads <= 1) {
        unsigned long n1 = 0;
        for (unsigned i = 0; i < samples; ++i)
            n1 += survey_sample_transitive(degree, c, x_max, seed, i) ? 1 : 0;
        return n1;
    }
    unsigned nt = std::min(threads, samples);
    std::vector<unsigned long> part(nt, 0);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nt; ++t)
        pool.emplace_back([&, t] {
            for (unsigned i = t; i < samples; i += nt)
                part[t] += survey_sample_transitive(degree, c, x_max, seed, i) ? 1 : 0;
        });
    for (auto& th : pool) th.join();
    unsigned long n1 = 0;
    for (unsigned long p : part) n1 += p;
    return n1;
}

inline int run_survey(const RunConfig& cfg, std::ostream& out) {
    if (cfg.degree < 1 || cfg.degree > 6) throw BudgetError("survey supports degrees 1 through 6");
    if (cfg.samples < 1 || cfg.samples > 10000)
        throw BudgetError("survey supports 1 through 10000 samples");
    if (cfg.coeff_bound < 1) throw DomainError("coefficient bound must be >= 1");

    auto fraction = [&](long c) {
        unsigned long n1 =
            survey_count(cfg.degree, c, cfg.samples, cfg.x_max, cfg.seed, cfg.threads);
        return std::pair<unsigned long, mpq_class>(n1, make_rational(n1, cfg.samples));
    };
    auto [n1, frac] = fraction(cfg.coeff_bound);

    json j;
    j["degree"] = cfg.degree;
    j["coeff_bound"] = cfg.coeff_bound;
    j["samples"] = cfg.samples;
    j["x_max"] = cfg.x_max;
    j["seed"] = cfg.seed;
    j["transitive_count"] = n1;
    j["fraction_transitive_estimate"] = jrat(frac);

    json table = json::array();
    std::vector<std::string> csv_rows{"coeff_bound,transitive_count,samples,fraction_num,fraction_den"};
    auto add_row = [&](long c, unsigned long k, const mpq_class& fr) {
        table.push_back(json{{"coeff_bound", c}, {"transitive_count", k}, {"fraction", jrat(fr)}});
        csv_rows.push_back(std::to_string(c) + "," + std::to_string(k) + "," +
                           std::to_string(cfg.samples) + "," + fr.get_num().get_str() + "," +
                           fr.get_den().get_str());
    };
    for (long c : {10L, 100L, 1000L}) {
        if (c == cfg.coeff_bound) {
            add_row(c, n1, frac);
        } else {
            auto [k, fr] = fraction(c);
            add_row(c, k, fr);
        }
    }
    j["table"] = table;
    emit(out, cfg.format, j, &csv_rows);
    return 0;
}

} // namespace cli_detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    using namespace cli_detail;
    RunConfig cfg;
    std::string mode_s = "empirical";
    std::string domain_s = "N";

    CLI::App app{"arithmetic statistics of polynomial systems: prime root censuses, "
                 "feasibility verdicts, sentence deciders, and size-based bounds",
                 "arithgeo"};
    app.require_subcommand(1);

    auto add_input = [&](CLI::App* c) {
        c->add_option("expr", cfg.expr, "polynomial expression, e.g. \"x^2 + 1\"");
        c->add_option("--file", cfg.file, "read the input from a file, one polynomial per line");
    };
    auto add_format = [&](CLI::App* c) {
        c->add_option("--format", cfg.format, "json, csv, or text")
            ->check(CLI::IsMember({"json", "csv", "text"}));
    };
    auto add_domain = [&](CLI::App* c) {
        c->add_option("--domain", domain_s, "N (positive integers) or Z")
            ->check(CLI::IsMember({"N", "Z"}));
    };
    auto add_xmax = [&](CLI::App* c) {
        c->add_option("--xmax", cfg.x_max, "prime scan limit")->check(CLI::PositiveNumber);
    };
    auto add_threads = [&](CLI::App* c) {
        c->add_option("--threads", cfg.threads,
                      "worker threads; reports are identical for any count")
            ->check(CLI::Range(1, 64));
    };
    auto add_sentence_budgets = [&](CLI::App* c) {
        c->add_option("--budget-enum", cfg.budgets.enumeration, "pointwise enumeration budget")
            ->check(CLI::PositiveNumber);
        c->add_option("--budget-cong", cfg.budgets.congruence, "covering modulus budget")
            ->check(CLI::PositiveNumber);
    };

    CLI::App* density = app.add_subcommand("density", "prime-by-prime root census and estimators");
    add_input(density);
    add_xmax(density);
    density->add_option("--cap", cfg.cap, "root-count cap per prime (default: degree + 1)")
        ->check(CLI::PositiveNumber);
    density->add_flag("--trace", cfg.trace, "include the per-prime cumulative table");
    add_threads(density);
    add_format(density);
    density->add_option("--budget-enum", cfg.scan_budget, "largest admissible scan limit")
        ->check(CLI::PositiveNumber);

    CLI::App* qfeas = app.add_subcommand("qfeas", "rational feasibility verdict for a system");
    add_input(qfeas);
    add_xmax(qfeas);
    qfeas->add_option("--cap", cfg.cap, "root-count cap per prime (default: degree + 1)")
        ->check(CLI::PositiveNumber);
    qfeas->add_option("--mode", mode_s, "rigorous or empirical")
        ->check(CLI::IsMember({"rigorous", "empirical"}));
    add_threads(qfeas);
    add_format(qfeas);
    qfeas->add_option("--budget-enum", cfg.point_budget, "point search budget")
        ->check(CLI::PositiveNumber);

    CLI::App* jst =
        app.add_subcommand("jst", "decide: for all x there is y with f(x, y) = 0");
    add_input(jst);
    add_domain(jst);
    add_sentence_budgets(jst);
    add_format(jst);

    CLI::App* eae = app.add_subcommand(
        "eae", "decide: some v makes f(v, x, y) = 0 a true forall-exists sentence");
    add_input(eae);
    add_domain(eae);
    add_sentence_budgets(eae);
    add_format(eae);

    CLI::App* bounds = app.add_subcommand("bounds", "size-based bound table for a system");
    add_input(bounds);
    add_xmax(bounds);
    add_format(bounds);

    CLI::App* disc = app.add_subcommand("disc", "univariate discriminant");
    add_input(disc);
    add_format(disc);

    CLI::App* res = app.add_subcommand("resultant", "resultant of two polynomials");
    res->add_option("f", cfg.expr, "first polynomial");
    res->add_option("g", cfg.expr2, "second polynomial");
    res->add_option("--file", cfg.file, "read the two polynomials from a file");
    res->add_option("--var", cfg.elim_var, "variable to eliminate (multivariate input)");
    add_format(res);

    CLI::App* volume =
        app.add_subcommand("volume", "mixed support polytope and its normalized volume");
    add_input(volume);
    add_format(volume);

    CLI::App* genericity = app.add_subcommand(
        "genericity", "hypothesis pre-check for the outer-existential decider");
    add_input(genericity);
    add_domain(genericity);
    add_format(genericity);

    CLI::App* survey =
        app.add_subcommand("survey", "random-sample census of transitive-looking polynomials");
    survey->add_option("--degree", cfg.degree, "sample degree (1..6)");
    survey->add_option("--coeff-bound", cfg.coeff_bound,
                       "coefficients drawn uniformly from {-c..c}");
    survey->add_option("--samples", cfg.samples, "sample count (<= 10000)");
    add_xmax(survey);
    survey->add_option("--seed", cfg.seed, "RNG seed; echoed in the report");
    add_threads(survey);
    add_format(survey);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(std::move(rev));
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        return fail(err, "usage", e.what(), 1);
    }

    cfg.mode = mode_s == "rigorous" ? FeasibilityMode::Rigorous : FeasibilityMode::Empirical;
    cfg.domain = domain_s == "Z" ? Domain::Z : Domain::N;
    cfg.subcommand = app.get_subcommands().front()->get_name();

    try {
        if (density->parsed()) return run_density(cfg, out);
        if (qfeas->parsed()) return run_qfeas(cfg, out);
        if (jst->parsed()) return run_jst(cfg, out);
        if (eae->parsed()) return run_eae(cfg, out);
        if (bounds->parsed()) return run_bounds(cfg, out);
        if (disc->parsed()) return run_disc(cfg, out);
        if (res->parsed()) return run_resultant(cfg, out);
        if (volume->parsed()) return run_volume(cfg, out);
        if (genericity->parsed()) return run_genericity(cfg, out);
        if (survey->parsed()) return run_survey(cfg, out);
    } catch (const ParseError& e) {
        return fail(err, "parse", e.what(), 1);
    } catch (const BudgetError& e) {
        return fail(err, "budget", e.what(), 2);
    } catch (const MergeError& e) {
        return fail(err, "merge", e.what(), 1);
    } catch (const DomainError& e) {
        return fail(err, "domain", e.what(), 1);
    }
    return fail(err, "usage", "no subcommand given", 1);
}

} // namespace arithgeo
