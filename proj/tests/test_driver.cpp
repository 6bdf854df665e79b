#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "helpers.hpp"

#include "lambda0/driver.hpp"

using namespace lambda0;

TEST_SUITE_BEGIN("driver");

TEST_CASE("discriminant enumeration")
{
    std::vector<uint64_t> want{5,  8,  12, 13, 17, 21, 24, 28, 29, 33, 37, 40, 41, 44, 53,
                               56, 57, 60, 61, 65, 69, 73, 76, 77, 85, 88, 89, 92, 93, 97};
    CHECK(enumerate_discriminants(0, 100) == want);
    CHECK(enumerate_discriminants(5, 6) == std::vector<uint64_t>{5});
    CHECK(enumerate_discriminants(6, 8) == std::vector<uint64_t>{});
    // full-range count used by the published survey
    CHECK(enumerate_discriminants(0, 100'000).size() == 30394);
}

TEST_CASE("polynomial and golden-file parsing")
{
    CHECK(parse_poly("T^3+3") == std::vector<int64_t>{3, 0, 0, 1});
    CHECK(parse_poly("3T-90") == std::vector<int64_t>{-90, 3});
    CHECK(parse_poly("T-996") == std::vector<int64_t>{-996, 1});
    CHECK(parse_poly("2187") == std::vector<int64_t>{2187});
    CHECK(parse_poly("T^5+9T+9") == std::vector<int64_t>{9, 9, 0, 0, 0, 1});
    CHECK(parse_poly(" 3T^2 + 18 ") == std::vector<int64_t>{18, 0, 3});
    CHECK(parse_poly("-T+2") == std::vector<int64_t>{2, -1});

    std::istringstream is("# comment\n61629; T^3, 3; 1; 3\n\n80056; T^5+9T+9, 3T^2+18, 27; 3; 5\n");
    auto es = parse_golden(is);
    REQUIRE(es.size() == 2);
    CHECK(es[0].f == 61629);
    CHECK(es[0].gens == std::vector<std::vector<int64_t>>{{0, 0, 0, 1}, {3}});
    CHECK(es[0].n == 1);
    CHECK(es[0].k == 3);
    CHECK(es[1].f == 80056);
    CHECK(es[1].gens.size() == 3);
    CHECK(es[1].k == 5);
}

TEST_CASE("bundled expectation list is well formed")
{
    std::ifstream gf("data/golden_modules.txt");
    REQUIRE(gf.good());
    auto es = parse_golden(gf);
    CHECK(es.size() == 29);
    for (const auto& e : es) {
        CHECK(is_fundamental_discriminant(e.f));
        CHECK(e.n >= 1);
        CHECK(e.k >= 1);
        REQUIRE(!e.gens.empty());
        // k never exceeds the level degree bound 3^n
        CHECK(e.k <= pow3(e.n));
    }
}

TEST_CASE("journal round trip preserves every field")
{
    RunConfig cfg;
    cfg.f_min = 5;
    cfg.f_max = 30;
    auto rs = scan_range(cfg);
    REQUIRE(!rs.empty());
    std::ostringstream os;
    write_journal(os, cfg, rs);
    std::istringstream is(os.str());
    std::string fp;
    auto back = read_journal(is, &fp);
    CHECK(fp == cfg.fingerprint());
    REQUIRE(back.size() == rs.size());
    for (size_t i = 0; i < rs.size(); ++i) {
        CHECK(back[i].f == rs[i].f);
        CHECK(back[i].resolved == rs[i].resolved);
        CHECK(back[i].status == rs[i].status);
        CHECK(back[i].j_generators == rs[i].j_generators);
        CHECK(back[i].e == rs[i].e);
        CHECK(back[i].n_stab == rs[i].n_stab);
        CHECK(back[i].tk == rs[i].tk);
        CHECK(back[i].order_log3 == rs[i].order_log3);
        CHECK(back[i].orientation == rs[i].orientation);
        CHECK(back[i].cert.a == rs[i].cert.a);
        CHECK(back[i].cert.exact == rs[i].cert.exact);
        CHECK(back[i].cert.certified == rs[i].cert.certified);
        CHECK(back[i].cert.lemma_applied == rs[i].cert.lemma_applied);
        CHECK(back[i].cert.witness.n == rs[i].cert.witness.n);
        CHECK(back[i].cert.lower == rs[i].cert.lower);
    }
}

TEST_CASE("parallel scan is deterministic and resumable")
{
    RunConfig cfg;
    cfg.f_min = 5;
    cfg.f_max = 120;
    cfg.jobs = 4;
    auto rs1 = scan_range(cfg);
    auto rs2 = scan_range(cfg);
    REQUIRE(rs1.size() == rs2.size());
    for (size_t i = 0; i < rs1.size(); ++i) {
        CHECK(rs1[i].f == rs2[i].f);
        auto a = rs1[i], b = rs2[i];
        a.seconds = b.seconds = 0;  // wall time is the only nondeterministic field
        CHECK(result_to_json(a) == result_to_json(b));
    }
    // ascending order
    for (size_t i = 1; i < rs1.size(); ++i) CHECK(rs1[i].f > rs1[i - 1].f);

    // resume: seed a journal with the first half, complete the range
    std::string path = "test_resume_journal.tmp";
    {
        std::ofstream os(path);
        std::vector<FieldResult> half(rs1.begin(), rs1.begin() + rs1.size() / 2);
        write_journal(os, cfg, half);
    }
    RunConfig rcfg = cfg;
    rcfg.out = path;
    rcfg.resume = true;
    auto rs3 = scan_range(rcfg);
    REQUIRE(rs3.size() == rs1.size());
    for (size_t i = 0; i < rs1.size(); ++i) CHECK(rs3[i].f == rs1[i].f);
    std::remove(path.c_str());

    // resume refuses a journal produced under different parameters
    {
        std::ofstream os(path);
        RunConfig other = cfg;
        other.primes = cfg.primes + 1;
        write_journal(os, other, {});
    }
    CHECK_THROWS(scan_range(rcfg));
    std::remove(path.c_str());
}

TEST_CASE("aggregation layout")
{
    RunConfig cfg;
    cfg.f_min = 5;
    cfg.f_max = 400;
    cfg.jobs = 4;
    auto rs = scan_range(cfg);
    auto tabs = aggregate_tables(rs);
    unsigned total = 0;
    for (auto& [res, tab] : tabs) {
        total += tab.total;
        CHECK(tab.zero + tab.nonzero + tab.unresolved == tab.total);
        unsigned cells = 0;
        for (auto& [key, cnt] : tab.cells) {
            auto [n, k] = key;
            CHECK(k >= 1);
            CHECK(k <= pow3(n));     // structural zero: k cannot exceed 3^n
            if (res == 1) CHECK(n >= 1);  // no level-0 row in the f = 1 mod 3 class
            cells += cnt;
        }
        CHECK(cells == tab.nonzero);
        CHECK(tab.maximal <= tab.nonzero);
    }
    CHECK(total == rs.size());
    std::ostringstream os;
    print_tables(os, tabs);
    CHECK(os.str().find("residue class f == 2 (mod 3)") != std::string::npos);

    // every nonzero module in this small range is certified with an exact order
    for (const auto& r : rs) {
        CHECK(r.resolved);
        CHECK(r.cert.certified);
    }
}

TEST_CASE("compute_field reproduces a published exotic module end to end")
{
    RunConfig cfg;
    auto r = compute_field(validate_discriminant(61629), cfg);
    REQUIRE(r.resolved);
    CHECK(r.n_stab == 1);
    CHECK(r.tk == 3);
    CHECK(r.order_log3 == 3);
    CHECK(r.cert.certified);
    auto I = r.rebuild_ideal();
    auto ctx = I.context();
    CHECK(I == TruncatedLambdaIdeal::from_generators(
                   ctx, {P(ctx, {0, 0, 0, 1}), P(ctx, {3})}));

    std::ifstream gf("data/golden_modules.txt");
    REQUIRE(gf.good());
    auto verdicts = golden_check({r}, parse_golden(gf));
    unsigned found = 0;
    for (const auto& v : verdicts)
        if (v.found) {
            ++found;
            CHECK(v.f == 61629);
            CHECK(v.pass());
        }
    CHECK(found == 1);
}

TEST_CASE("compute_field: embedding-verified lower bound on a deep f = 1 mod 3 module")
{
    RunConfig cfg;
    auto r = compute_field(validate_discriminant(15217), cfg);
    REQUIRE(r.resolved);
    CHECK(r.n_stab == 2);
    CHECK(r.tk == 4);
    CHECK(r.order_log3 == 5);
    CHECK(r.cert.certified);
    CHECK(r.cert.exact);
    CHECK(r.cert.lower.substr(0, 11) == "embeddings@");
    CHECK(r.cert.verify_level <= 2);
}

TEST_SUITE_END();
