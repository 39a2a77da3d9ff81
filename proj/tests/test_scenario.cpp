#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "p2pmarket/io.hpp"
#include "p2pmarket/scenario.hpp"
#include "support.hpp"

using namespace p2pmarket;
using testsupport::Approx;

TEST_SUITE_BEGIN("scenario");

TEST_CASE("defaults cover the reference scenario") {
    Scenario s = parse_scenario("");
    CHECK(s.market.xi_cp == Approx(0.75));
    CHECK(s.market.xi_user == Approx(0.25));
    CHECK(s.market.b_isp == Approx(100.0));
    CHECK(s.profile.alpha == Approx(0.6));
    CHECK(s.profile.beta == Approx(0.3));
    CHECK(s.stackelberg.coarse_n == 101);
    CHECK(s.stackelberg.refine_levels == 4);
    CHECK_FALSE(s.coalition.has_value());
    CHECK_FALSE(s.strict);
}

TEST_CASE("key parsing") {
    Scenario s = parse_scenario(
        "# comment\n"
        "market.xi_user = 0.2\n"
        "profile.alpha=0.5\n"
        "family.k5=6\n"
        "solver.grid_refine_levels=5\n"
        "cooperation.starting_point=3.5180,5.6450\n"
        "sweep.alpha.steps=7\n"
        "strict=true\n"
        "output.dir=/tmp/somewhere\n");
    CHECK(s.market.xi_user == Approx(0.2));
    CHECK(s.profile.alpha == Approx(0.5));
    CHECK(s.family_params.k5 == Approx(6.0));
    CHECK(s.stackelberg.refine_levels == 5);
    REQUIRE(s.starting_point_override.has_value());
    CHECK(s.starting_point_override->first == Approx(3.5180));
    CHECK(s.alpha_range.steps == 7);
    CHECK(s.strict);
    CHECK(s.output_dir == "/tmp/somewhere");
}

TEST_CASE("rejects malformed input") {
    CHECK_THROWS_AS(parse_scenario("nonsense\n"), Error);
    CHECK_THROWS_AS(parse_scenario("market.xi_user=abc\n"), Error);
    CHECK_THROWS_AS(parse_scenario("unknown.key=1\n"), Error);
    CHECK_THROWS_AS(parse_scenario("profile.alpha=0.5\nprofile.alpha=0.6\n"), Error);
    CHECK_THROWS_AS(parse_scenario("market.xi_user=0.9\n"), Error);  // > xi_cp
    CHECK_THROWS_AS(parse_scenario("family.preset=mystery\n"), Error);
    CHECK_THROWS_AS(parse_scenario("sweep.alpha.steps=0\n"), Error);
}

TEST_CASE("coalition section validation") {
    CHECK_THROWS_AS(parse_scenario("coalition.isp_count=3\n"), Error);
    CHECK_THROWS_AS(parse_scenario("coalition.isp_count=3\n"
                                   "coalition.pcp_count=2\n"),
                    Error);  // neither matrices nor synthesis
    CHECK_THROWS_AS(parse_scenario("coalition.isp_count=3\n"
                                   "coalition.pcp_count=2\n"
                                   "coalition.pcp.1.matrix=a.csv\n"),
                    Error);  // one matrix missing
    CHECK_THROWS_AS(parse_scenario("coalition.isp_count=3\n"
                                   "coalition.pcp_count=1\n"
                                   "coalition.synthesize.user_counts=2:3:5\n"),
                    Error);  // sigma missing

    Scenario s = parse_scenario(
        "coalition.isp_count=3\n"
        "coalition.pcp_count=2\n"
        "coalition.synthesize.user_counts=2:3:5\n"
        "coalition.synthesize.sigma=1.0,1.5\n"
        "coalition.v_p2p=56.014\n");
    REQUIRE(s.coalition.has_value());
    CHECK(s.coalition->synth_user_counts == std::vector<double>{2.0, 3.0, 5.0});
    CHECK(s.coalition->v_p2p_override == Approx(56.014));
    CHECK(s.coalition->side_ratio.size() == 3);
}

TEST_CASE("matrix files resolve relative to the scenario") {
    Scenario s = parse_scenario(
        "coalition.isp_count=3\n"
        "coalition.pcp_count=1\n"
        "coalition.pcp.1.matrix=t1.csv\n",
        "/data/run");
    REQUIRE(s.coalition.has_value());
    CHECK(s.coalition->matrix_paths.front() == "/data/run/t1.csv");
}

TEST_CASE("traffic matrix round trip") {
    PcpTraffic original({{0.8255, 1.6509, 2.4764},
                         {1.6509, 1.6509, 3.3019},
                         {0.8255, 1.6509, 1.6509}},
                        {1.4151, 2.1226, 3.1840});
    std::string path =
        (std::filesystem::temp_directory_path() / "p2pmarket_t1.csv").string();
    write_traffic_csv(path, original);
    PcpTraffic loaded = read_traffic_csv(path);
    CHECK(loaded.user_to_user == original.user_to_user);
    CHECK(loaded.server_to_user == original.server_to_user);
    std::remove(path.c_str());
}

TEST_CASE("traffic matrix format errors") {
    auto write_and_read = [](const std::string& content) {
        std::string path =
            (std::filesystem::temp_directory_path() / "p2pmarket_bad.csv")
                .string();
        {
            std::ofstream out(path);
            out << content;
        }
        PcpTraffic t = read_traffic_csv(path);
        std::remove(path.c_str());
        return t;
    };
    CHECK_THROWS_AS(write_and_read("to_isp_1\n1.0\n"), Error);  // no server row
    CHECK_THROWS_AS(write_and_read("to_isp_1,to_isp_2\n1,2\n3,4\nserver,1\n"),
                    Error);  // short server row
    CHECK_THROWS_AS(write_and_read("to_isp_1\nx\nserver,1\n"), Error);
    CHECK_THROWS_AS(read_traffic_csv("/nonexistent/t.csv"), Error);
}

TEST_CASE("fixed-point formatting") {
    CHECK(format_fixed(19.4287) == "19.428700");
    CHECK(format_fixed(19.4287, 4) == "19.4287");
    CHECK(format_fixed(-0.5, 2) == "-0.50");
    CHECK(format_fixed(std::nan(""), 2) == "nan");
}

TEST_SUITE_END();
