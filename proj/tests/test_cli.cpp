#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "arithgeo/cli.hpp"

using arithgeo::run_cli;
using json = arithgeo::cli_detail::json;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

bool decimal_string(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = s[0] == '-' ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') return false;
    return true;
}

// Exact irreducible-factor count of the squarefree part of a quadratic:
// 2 exactly when the discriminant is a nonzero perfect square.
int quad_factor_count(long a2, long a1, long a0) {
    mpz_class D = mpz_class(a1) * a1 - 4 * mpz_class(a2) * a0;
    if (D <= 0) return 1;
    mpz_class r = sqrt(D);
    return r * r == D ? 2 : 1;
}

} // namespace

TEST_CASE("pinned subcommand examples", "[cli]") {
    auto density = cli({"density", "x^2+1", "--xmax", "100000", "--format", "json"});
    REQUIRE(density.code == 0);
    json d = json::parse(density.out);
    double nf = d["N_F"].get<double>();
    double pi = d["pi"].get<double>();
    CHECK(std::abs(nf / pi - 1.0) < 0.05);
    CHECK(d["estimate_rF"] == 1);

    auto jst = cli({"jst", "(y-x)*(y-x-1)", "--domain", "N", "--format", "json"});
    REQUIRE(jst.code == 0);
    json j = json::parse(jst.out);
    CHECK(j["truth"] == true);
    CHECK(j["conditions"]["1"]["status"] == "holds");
    CHECK(j["conditions"]["2"]["status"] == "holds");
    CHECK(j["conditions"]["3"]["status"] == "holds");
    CHECK(j["sections"].size() == 2);

    auto disc = cli({"disc", "x^2-5", "--format", "json"});
    REQUIRE(disc.code == 0);
    CHECK(json::parse(disc.out)["discriminant"] == "20");

    auto res = cli({"resultant", "x^2-5", "x^2-3", "--format", "json"});
    REQUIRE(res.code == 0);
    CHECK(json::parse(res.out)["resultant"] == "4");

    auto vol = cli({"volume", "x^2+y^2-1", "--format", "json"});
    REQUIRE(vol.code == 0);
    CHECK(json::parse(vol.out)["normalized_volume"] == 4);
}

TEST_CASE("json reports round-trip with exact rationals", "[cli]") {
    auto r = cli({"density", "x^2-2", "--xmax", "20000", "--format", "json"});
    REQUIRE(r.code == 0);
    json d = json::parse(r.out);
    CHECK(d.dump(2) + "\n" == r.out);
    for (const char* key : {"ratio_NF", "ratio_piF", "estimate_jF"}) {
        CHECK(decimal_string(d[key]["num"].get<std::string>()));
        CHECK(decimal_string(d[key]["den"].get<std::string>()));
        CHECK(!d[key].contains("value"));
    }
    mpq_class ratio(d["ratio_NF"]["num"].get<std::string>() + "/" +
                    d["ratio_NF"]["den"].get<std::string>());
    ratio.canonicalize();
    CHECK(ratio == arithgeo::make_rational(d["N_F"].get<long>(), d["pi"].get<long>()));

    auto s = cli({"survey", "--degree", "1", "--samples", "25", "--xmax", "2000",
                  "--seed", "5", "--format", "json"});
    REQUIRE(s.code == 0);
    json sv = json::parse(s.out);
    CHECK(sv.dump(2) + "\n" == s.out);
    CHECK(sv["seed"] == 5);
    CHECK(decimal_string(sv["fraction_transitive_estimate"]["num"].get<std::string>()));
}

TEST_CASE("exit codes are stable", "[cli]") {
    SECTION("invalid input and flags exit 1") {
        auto bad_expr = cli({"density", "x^", "--xmax", "100"});
        CHECK(bad_expr.code == 1);
        CHECK(json::parse(bad_expr.err)["error"] == "parse");

        auto bad_flag = cli({"density", "x^2+1", "--nope"});
        CHECK(bad_flag.code == 1);
        CHECK(json::parse(bad_flag.err)["error"] == "usage");

        auto no_sub = cli({});
        CHECK(no_sub.code == 1);

        auto no_input = cli({"density"});
        CHECK(no_input.code == 1);
        CHECK(json::parse(no_input.err)["error"] == "domain");

        auto bad_xmax = cli({"density", "x^2+1", "--xmax", "1"});
        CHECK(bad_xmax.code == 1);
    }

    SECTION("exhausted budgets exit 2") {
        auto r = cli({"jst", "(y-x)*(y-x-1)", "--domain", "N", "--budget-enum", "1"});
        CHECK(r.code == 2);
        CHECK(json::parse(r.err)["error"] == "budget");

        auto s = cli({"survey", "--degree", "9"});
        CHECK(s.code == 2);
    }

    SECTION("refusals exit 3 and still print the report") {
        auto ng = cli({"eae", "y-x", "--format", "json"});
        CHECK(ng.code == 3);
        json j = json::parse(ng.out);
        CHECK(j["generic"] == false);
        CHECK(j["certificate"]["type"] == "NotGeneric");

        auto gen = cli({"genericity", "y-x", "--format", "json"});
        CHECK(gen.code == 3);
        CHECK(json::parse(gen.out)["generic"] == false);

        auto pu = cli({"qfeas", "(x^2-2)*(x^2-7)*(x^2-14)", "--xmax", "20000",
                       "--format", "json"});
        CHECK(pu.code == 3);
        CHECK(json::parse(pu.out)["verdict"] == "PromiseUnknown");
    }

    SECTION("help exits 0") {
        auto h = cli({"--help"});
        CHECK(h.code == 0);
        CHECK(h.out.find("density") != std::string::npos);

        auto hd = cli({"jst", "--help"});
        CHECK(hd.code == 0);
        CHECK(hd.out.find("--domain") != std::string::npos);
    }
}

TEST_CASE("verdict subcommands agree with the library", "[cli]") {
    auto z = cli({"jst", "(2*y-x)*(2*y-x+1)", "--domain", "Z", "--format", "json"});
    REQUIRE(z.code == 0);
    CHECK(json::parse(z.out)["truth"] == true);

    auto n = cli({"jst", "(2*y-x)*(2*y-x+1)", "--domain", "N", "--format", "json"});
    REQUIRE(n.code == 0);
    json jn = json::parse(n.out);
    CHECK(jn["truth"] == false);
    CHECK(jn["certificate"]["type"] == "FailingX");
    CHECK(jn["conditions"]["2"]["status"] == "fails");
    CHECK(jn["conditions"]["2"]["witness_x"] == "1");
    CHECK(jn["conditions"]["3"]["status"] == "holds");

    auto planted = cli({"eae", "(y-x)*(y-2*x) + (v-3)*(x^4+y^4+1)", "--domain", "N",
                        "--format", "json"});
    REQUIRE(planted.code == 0);
    json jp = json::parse(planted.out);
    CHECK(jp["truth"] == true);
    CHECK(jp["v0"] == "3");
    REQUIRE(jp["candidates"].size() >= 1);

    auto barren = cli({"eae", "x^4+y^4+v^4+1", "--domain", "N", "--format", "json"});
    REQUIRE(barren.code == 0);
    json jb = json::parse(barren.out);
    CHECK(jb["truth"] == false);
    CHECK(jb["certificate"]["type"] == "CandidateList");
}

TEST_CASE("file input and csv rendering", "[cli]") {
    const std::string path = "cli_test_system.txt";
    {
        std::ofstream f(path);
        f << "x^2 - 2\n\nx^2 - 3\n";
    }
    auto r = cli({"qfeas", "--file", path, "--xmax", "5000", "--format", "json"});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["system"] == "x^2-2; x^2-3");
    CHECK(j["verdict"] == "Infeasible");

    auto res = cli({"resultant", "--file", path, "--format", "json"});
    REQUIRE(res.code == 0);
    CHECK(json::parse(res.out)["resultant"] == "1");

    auto missing = cli({"density", "--file", "no_such_file.txt"});
    CHECK(missing.code == 1);
    std::remove(path.c_str());

    auto kv = cli({"disc", "x^2-5", "--format", "csv"});
    REQUIRE(kv.code == 0);
    CHECK(kv.out.find("key,value\n") == 0);
    CHECK(kv.out.find("discriminant,20\n") != std::string::npos);

    auto rows = cli({"density", "x^2+1", "--xmax", "100", "--trace", "--format", "csv"});
    REQUIRE(rows.code == 0);
    CHECK(rows.out.find("p,root_count,degenerate,cum_pi,cum_piF,cum_NF\n") == 0);
    CHECK(rows.out.find("\n2,") != std::string::npos);

    auto sv = cli({"survey", "--degree", "1", "--samples", "10", "--xmax", "2000",
                   "--format", "csv"});
    REQUIRE(sv.code == 0);
    CHECK(sv.out.find("coeff_bound,transitive_count,samples,fraction_num,fraction_den\n") == 0);
}

TEST_CASE("threaded runs are byte-identical", "[cli]") {
    std::vector<std::string> base = {"density", "(x^2-2)*(x^2-7)*(x^2-14)", "--xmax",
                                     "20000",  "--trace",                  "--format",
                                     "json"};
    auto one = cli(base);
    base.insert(base.end(), {"--threads", "8"});
    auto eight = cli(base);
    REQUIRE(one.code == 0);
    REQUIRE(eight.code == 0);
    CHECK(one.out == eight.out);

    std::vector<std::string> sbase = {"survey", "--degree", "2",      "--samples", "50",
                                      "--xmax", "4000",     "--seed", "11",        "--format",
                                      "json"};
    auto s1 = cli(sbase);
    sbase.insert(sbase.end(), {"--threads", "8"});
    auto s8 = cli(sbase);
    REQUIRE(s1.code == 0);
    REQUIRE(s8.code == 0);
    CHECK(s1.out == s8.out);
}

TEST_CASE("survey statistics match ground truth", "[cli]") {
    SECTION("degree 1 is always transitive") {
        auto r = cli({"survey", "--degree", "1", "--samples", "50", "--xmax", "2000",
                      "--seed", "3", "--format", "json"});
        REQUIRE(r.code == 0);
        json j = json::parse(r.out);
        CHECK(j["transitive_count"] == 50);
        for (const auto& row : j["table"]) CHECK(row["transitive_count"] == 50);
    }

    SECTION("degree 2 agrees with the exact factor count") {
        const unsigned samples = 500;
        const std::uint64_t seed = 42;
        auto r = cli({"survey", "--degree", "2", "--coeff-bound", "10", "--samples",
                      std::to_string(samples), "--xmax", "10000", "--seed",
                      std::to_string(seed), "--format", "json"});
        REQUIRE(r.code == 0);
        json j = json::parse(r.out);
        long counted = j["transitive_count"].get<long>();

        // Replay the documented per-index draws and count exactly.
        long oracle = 0;
        for (unsigned i = 0; i < samples; ++i) {
            std::mt19937_64 gen(seed ^ (0x9E3779B97F4A7C15ull * (i + 1)));
            std::uniform_int_distribution<long> coeff(-10, 10);
            long a0 = coeff(gen), a1 = coeff(gen), a2 = coeff(gen);
            while (a2 == 0) a2 = coeff(gen);
            oracle += quad_factor_count(a2, a1, a0) == 1 ? 1 : 0;
        }
        double tol = 2.0 / std::sqrt(static_cast<double>(samples));
        CHECK(std::abs(counted - oracle) <= tol * samples);
    }

    SECTION("larger coefficient boxes look more transitive") {
        auto r = cli({"survey", "--degree", "3", "--samples", "300", "--xmax", "10000",
                      "--seed", "9", "--format", "json"});
        REQUIRE(r.code == 0);
        json j = json::parse(r.out);
        REQUIRE(j["table"].size() == 3);
        CHECK(j["table"][2]["transitive_count"].get<long>() >=
              j["table"][0]["transitive_count"].get<long>());
    }
}
