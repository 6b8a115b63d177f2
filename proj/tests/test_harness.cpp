#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "crossres/errors.hpp"
#include "crossres/harness.hpp"
#include "common.hpp"

using namespace crossres;

TEST_CASE("matching: identity, shift, injectivity, symmetry") {
    std::vector<cplx> A = {cplx(0.4, -0.01), cplx(0.45, -0.012), cplx(0.5, -0.011)};

    Pairing same = match_sets(A, A, 0.05);
    CHECK(same.pairs.size() == 3);
    CHECK(same.max_dist() == 0.0);
    CHECK(same.unmatched_a.empty());
    CHECK(same.unmatched_b.empty());

    std::vector<cplx> B;
    for (cplx a : A) B.push_back(a + cplx(1e-3, -2e-3));
    Pairing shifted = match_sets(A, B, 0.05);
    CHECK(shifted.pairs.size() == 3);
    for (const auto& p : shifted.pairs)
        CHECK(p.dist == doctest::Approx(std::abs(cplx(1e-3, -2e-3))));

    // cap: far-away points stay unmatched on both sides
    B.push_back(cplx(2.0, 0.0));
    Pairing capped = match_sets(A, B, 0.05);
    CHECK(capped.pairs.size() == 3);
    CHECK(capped.unmatched_b.size() == 1);

    // injective even when one set is smaller
    Pairing inj = match_sets(std::vector<cplx>{A[0]}, B, 0.05);
    CHECK(inj.pairs.size() == 1);
    CHECK(inj.unmatched_b.size() == 3);

    // symmetry: the pair set is the same with the arguments swapped
    Pairing ab = match_sets(A, B, 0.05);
    Pairing ba = match_sets(B, A, 0.05);
    REQUIRE(ab.pairs.size() == ba.pairs.size());
    for (size_t k = 0; k < ab.pairs.size(); ++k) {
        bool found = false;
        for (const auto& q : ba.pairs)
            if (q.j == ab.pairs[k].i && q.i == ab.pairs[k].j) found = true;
        CHECK(found);
    }
}

TEST_CASE("17-significant-digit formatting round-trips") {
    for (double v : {0.1, -0.046051701859880914, 3.2967330891443107, 1e-17}) {
        std::string s = fmt17(v);
        CHECK(std::stod(s) == v);
    }
}

TEST_CASE("sweep config validation") {
    nlohmann::json good = {{"problem", TANH1_CONFIG},
                           {"h_list", {0.2, 0.1}},
                           {"methods", {"pseudo"}}};
    SweepConfig cfg = SweepConfig::parse(good);
    CHECK(cfg.h_list.size() == 2);
    CHECK(cfg.r == 2.0);

    nlohmann::json bad = good;
    bad["h_list"] = {0.1, 0.2}; // increasing
    CHECK_THROWS_AS(SweepConfig::parse(bad), Error);
    bad["h_list"] = {0.1, 1.5};
    CHECK_THROWS_AS(SweepConfig::parse(bad), Error);
    bad = good;
    bad["methods"] = {"pseudo", "magic"};
    CHECK_THROWS_AS(SweepConfig::parse(bad), Error);
}

TEST_CASE("pseudo-only sweep: report content, CSV determinism, conservation") {
    SweepConfig cfg;
    cfg.problem_path = TANH1_CONFIG;
    cfg.h_list = {0.1, 0.05};
    cfg.methods = {"pseudo"};
    const ProblemSetup& s = testutil::tanh1();

    MatchReport rep = run_sweep(s, cfg);
    CHECK(rep.T0 == doctest::Approx(testutil::kT0).epsilon(1e-10));
    CHECK(rep.K == doctest::Approx(testutil::kK).epsilon(1e-12));
    REQUIRE(rep.cells.size() == 2);
    for (const auto& cell : rep.cells) {
        REQUIRE(cell.methods.size() == 1);
        CHECK(cell.methods[0].ok);
        CHECK(!cell.methods[0].energies.empty());
        CHECK_FALSE(cell.has_ps);
        CHECK_FALSE(cell.has_psh);
        CHECK(cell.width_ratio_crude.size() == cell.methods[0].energies.size());
    }

    std::ostringstream csv1, csv2;
    write_csv(rep, csv1);
    write_csv(run_sweep(s, cfg), csv2);
    CHECK(csv1.str() == csv2.str()); // byte-identical rerun

    // conservation: one row per resonance plus the header
    size_t rows = 0;
    for (const auto& cell : rep.cells) rows += cell.methods[0].energies.size();
    std::string text = csv1.str();
    size_t lines = 0;
    for (char c : text)
        if (c == '\n') ++lines;
    CHECK(lines == rows + 1);
}

TEST_CASE("json report and plot data files") {
    SweepConfig cfg;
    cfg.problem_path = TANH1_CONFIG;
    cfg.h_list = {0.1};
    cfg.methods = {"pseudo"};
    MatchReport rep = run_sweep(testutil::tanh1(), cfg);
    nlohmann::json j = report_to_json(rep);
    CHECK(j.at("cells").size() == 1);
    CHECK(j["cells"][0]["methods"][0]["method"] == "pseudo");

    std::string dir = "plotdata_test_out";
    std::remove((dir + "/maxdist.csv").c_str());
    std::filesystem::create_directories(dir);
    write_plotdata(j, dir);
    std::ifstream maxd(dir + "/maxdist.csv");
    REQUIRE(maxd.good());
    std::string header;
    std::getline(maxd, header);
    CHECK(header == "h,maxdist_pseudo_spectral_over_h,maxdist_pseudo_shooting_over_h");
    std::ifstream wr(dir + "/width_ratio.csv");
    CHECK(wr.good());
    std::ifstream sc(dir + "/scatter_h0.1.csv");
    CHECK(sc.good());
}
