#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "vbl/cli.hpp"

using namespace vbl;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "vbl");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(int(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

nlohmann::json json_of(const Run& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST_CASE("range parsing") {
    CHECK(cli::parse_range("1.5") == std::vector<double>{1.5});
    CHECK(cli::parse_range("1,2,3") == std::vector<double>{1, 2, 3});
    const auto step = cli::parse_range("0:5:0.25");
    REQUIRE(step.size() == 21);
    CHECK(step.back() == 5.0);
    const auto log = cli::parse_range("0.1:10:log");
    REQUIRE(log.size() == 21);
    CHECK(log.front() == 0.1);
    CHECK(log.back() == 10.0);
    CHECK(std::abs(log[10] - 1.0) < 1e-12);
    CHECK(cli::parse_range("1:100:log5").size() == 5);
    CHECK(cli::parse_range("0:1:0.5,3").size() == 4);
    for (const char* bad : {"", "x", "1:2", "1:2:0", "2:1:0.5", "0:1:log", "1,,2", "1:10:log1"})
        CHECK_THROWS_AS(cli::parse_range(bad), std::invalid_argument);
}

TEST_CASE("mean command") {
    const auto corner = run({"mean", "--corner"});
    REQUIRE(corner.code == 0);
    const auto j = json_of(corner);
    CHECK(j["command"] == "mean");
    CHECK(j["tool_version"] == cli::tool_version());
    CHECK(j["rng_seed"].is_null());
    CHECK(std::abs(j["rows"][0]["mean"].get<double>() - 0.36351) < 1e-5);

    const auto sweep = json_of(run({"mean", "--corner-offset", "0:5:0.25"}));
    REQUIRE(sweep["rows"].size() == 21);
    for (const auto& row : sweep["rows"]) {
        CHECK(row["lower_bound"].get<double>() < row["mean"].get<double>());
        CHECK(row["mean"].get<double>() <= row["upper_bound"].get<double>() + 1e-9);
        CHECK(row["converged"] == true);
    }

    const auto half = json_of(run({"mean", "--halfplane-offset", "1"}));
    CHECK(half["rows"][0]["mean"].get<double>() > 1.0);
    CHECK(half["rows"][0]["upper_bound"].is_null());

    CHECK(run({"mean"}).code == 2);
    CHECK(run({"mean", "--corner", "--edge"}).code == 2);
    CHECK(run({"mean", "--corner-offset", "-1"}).code == 2);
    CHECK(run({"mean", "--edge", "--tol", "0.5"}).code == 2);
    CHECK(run({"mean", "--edge", "--format", "xml"}).code == 2);
    CHECK(run({"bogus"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("table1 command") {
    const auto r = run({"table1"});
    REQUIRE(r.code == 0);
    const auto rows = json_of(r)["rows"];
    REQUIRE(rows.size() == 3);
    const double expect[3][4] = {{0.36351, 0.10567, 1.25052, 0.29069},
                                 {0.61082, 0.17198, 2.16935, 0.28157},
                                 {1.0, 0.28018, 3.56918, 0.28018}};
    for (int i = 0; i < 3; ++i) {
        CHECK(std::abs(rows[i]["mean"].get<double>() - expect[i][0]) <= 1e-4);
        CHECK(std::abs(rows[i]["variance"].get<double>() - expect[i][1]) <= 1e-4);
        CHECK(std::abs(rows[i]["k"].get<double>() - expect[i][2]) <= 1e-4);
        CHECK(std::abs(rows[i]["nu"].get<double>() - expect[i][3]) <= 1e-4);
    }
}

TEST_CASE("secrecy command") {
    const auto iso = json_of(run({"secrecy", "isolation", "--lambda-l", "10", "--lambda-e", "0.1:10:log"}));
    CHECK(iso["rows"].size() == 3 * 21);

    const auto cdf = json_of(
        run({"secrecy", "cdf", "--location", "bulk", "--lambda-l", "10", "--lambda-e", "1", "--n-max", "25"}));
    REQUIRE(cdf["rows"].size() == 26);
    double prev = 0.0;
    for (const auto& row : cdf["rows"]) {
        CHECK(row["in_cdf"].get<double>() >= prev);
        prev = row["in_cdf"].get<double>();
    }
    CHECK(prev > 0.97);
    const auto longer = json_of(
        run({"secrecy", "cdf", "--location", "bulk", "--lambda-l", "10", "--lambda-e", "1", "--n-max", "45"}));
    CHECK(longer["rows"].back()["in_cdf"].get<double>() > 0.999);

    const auto pmf = json_of(run({"secrecy", "pmf", "--location", "corner", "--lambda-e", "1", "--n-max", "0"}));
    REQUIRE(pmf["rows"].size() == 1);
    const double k = iso["rows"][0]["k"].get<double>();
    const double nu = iso["rows"][0]["nu"].get<double>();
    CHECK(std::abs(pmf["rows"][0]["in_pmf"].get<double>() - std::pow(1 + 10 * nu, -k)) < 1e-14);

    CHECK(run({"secrecy", "pmf", "--location", "middle"}).code == 2);
    CHECK(run({"secrecy", "pmf", "--lambda-e", "0"}).code == 2);
    CHECK(run({"secrecy"}).code == 2);
}

TEST_CASE("simulate command") {
    const auto grid = run({"simulate", "grid", "--delta", "0.3", "--n", "11", "--trials", "20", "--format", "csv"});
    REQUIRE(grid.code == 0);
    std::istringstream lines(grid.out);
    std::string header;
    std::getline(lines, header);
    CHECK(header.rfind("position_x,position_y,mean,variance,std_err,trials", 0) == 0);
    int count = 0;
    for (std::string line; std::getline(lines, line);) ++count;
    CHECK(count == 121);

    const auto j = json_of(run({"simulate", "cell", "--at", "edge", "--trials", "100", "--rng-seed", "3"}));
    CHECK(j["rng_seed"] == 3);
    CHECK(j["rows"][0]["position_x"] == 5.0);

    CHECK(run({"simulate", "cell", "--at", "11,1"}).code == 2);
    CHECK(run({"simulate", "cell", "--at", "nowhere"}).code == 2);
    CHECK(run({"simulate", "cell", "--trials", "0"}).code == 2);
}

TEST_CASE("simulate output is byte-identical across thread counts") {
    for (const char* sub : {"cell", "degree"}) {
        const auto a = run({"simulate", sub, "--trials", "3000", "--rng-seed", "17", "--threads", "1", "--format", "csv"});
        const auto b = run({"simulate", sub, "--trials", "3000", "--rng-seed", "17", "--threads", "8", "--format", "csv"});
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
        const auto c = run({"simulate", sub, "--trials", "3000", "--rng-seed", "17", "--threads", "8"});
        const auto d = run({"simulate", sub, "--trials", "3000", "--rng-seed", "17", "--threads", "1"});
        CHECK(c.out == d.out);
    }
}

TEST_CASE("csv and json carry the same numbers") {
    const auto j = json_of(run({"mean", "--corner-offset", "0,1,2"}));
    const auto csv = run({"mean", "--corner-offset", "0,1,2", "--format", "csv"}).out;
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    for (const auto& row : j["rows"]) {
        REQUIRE(std::getline(lines, line));
        std::istringstream cells(line);
        std::string geometry, pos, mean;
        std::getline(cells, geometry, ',');
        std::getline(cells, pos, ',');
        std::getline(cells, mean, ',');
        CHECK(geometry == row["geometry"].get<std::string>());
        CHECK(std::abs(std::stod(mean) / row["mean"].get<double>() - 1.0) < 1e-5);
    }
}

TEST_CASE("output file") {
    const std::string path = "vbl_cli_test_out.json";
    const auto r = run({"table1", "--out", path});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    CHECK(nlohmann::json::parse(in)["rows"].size() == 3);
    std::remove(path.c_str());
    CHECK(run({"table1", "--out", "/nonexistent-dir/x.json"}).code == 2);
}
