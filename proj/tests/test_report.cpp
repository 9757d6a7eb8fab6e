#include <cstdio>
#include <filesystem>
#include <fstream>

#include <catch2/catch_amalgamated.hpp>
#include <json.hpp>

#include "heis/report.hpp"

using namespace heis;

namespace {

Report sample_report() {
    Report rep;
    rep.config = {{"suite", "core"}, {"seed", "7"}};
    CheckRecord a;
    a.suite = "core";
    a.name = "associativity";
    a.ref = "group-structure";
    a.residual = 3.5e-15;
    a.tolerance = 1e-12;
    a.pass = true;
    a.values = {{"samples", 2000.0}};
    rep.checks.push_back(a);
    CheckRecord b;
    b.suite = "solver";
    b.name = "dirichlet_recovery";
    b.ref = "bubble-equation";
    b.residual = 0.2;
    b.tolerance = 0.05;
    b.pass = false;
    b.note = "coarse grid, expected to fail";
    rep.checks.push_back(b);
    return rep;
}

}  // namespace

TEST_CASE("doubles are printed with seventeen significant digits") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(-8.0) == "-8");
    CHECK(format_double(std::nan("")) == "nan");
    CHECK(format_double(INFINITY) == "inf");
    CHECK(format_double(-INFINITY) == "-inf");
    const double v = 0.12345678901234567;
    CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("summaries group checks by suite in first-appearance order") {
    const Report rep = sample_report();
    const auto sums = rep.summaries();
    REQUIRE(sums.size() == 2);
    CHECK(sums[0].name == "core");
    CHECK(sums[0].total == 1);
    CHECK(sums[0].passed == 1);
    CHECK(sums[1].name == "solver");
    CHECK(sums[1].passed == 0);
    CHECK_FALSE(rep.all_pass());
}

TEST_CASE("json export round-trips through a conforming parser") {
    const Report rep = sample_report();
    const nlohmann::json j = nlohmann::json::parse(json_string(rep));
    CHECK(j["tool"] == "heis");
    CHECK(j["version"] == "1.0.0");
    CHECK(j["config"]["suite"] == "core");
    CHECK(j["config"]["seed"] == "7");
    CHECK(j["summary"]["total"] == 2);
    CHECK(j["summary"]["passed"] == 1);
    CHECK(j["summary"]["failed"] == 1);
    REQUIRE(j["summary"]["suites"].size() == 2);
    CHECK(j["summary"]["suites"][0]["name"] == "core");
    REQUIRE(j["checks"].size() == 2);
    CHECK(j["checks"][0]["name"] == "associativity");
    CHECK(j["checks"][0]["ref"] == "group-structure");
    CHECK(j["checks"][0]["residual"].get<double>() == 3.5e-15);
    CHECK(j["checks"][0]["values"]["samples"].get<double>() == 2000.0);
    CHECK(j["checks"][0]["pass"] == true);
    CHECK(j["checks"][1]["pass"] == false);
    CHECK(j["checks"][1]["note"] == "coarse grid, expected to fail");
}

TEST_CASE("json escapes control characters and quotes") {
    Report rep;
    CheckRecord c;
    c.suite = "s";
    c.name = "quoted \"name\" with\nnewline";
    c.ref = "plumbing";
    rep.checks.push_back(c);
    const nlohmann::json j = nlohmann::json::parse(json_string(rep));
    CHECK(j["checks"][0]["name"] == "quoted \"name\" with\nnewline");
}

TEST_CASE("non-finite values become quoted strings in json") {
    Report rep;
    CheckRecord c;
    c.suite = "s";
    c.name = "n";
    c.ref = "plumbing";
    c.residual = std::nan("");
    rep.checks.push_back(c);
    const nlohmann::json j = nlohmann::json::parse(json_string(rep));
    CHECK(j["checks"][0]["residual"] == "nan");
}

TEST_CASE("csv export has the contract header and quotes embedded commas") {
    Report rep;
    CheckRecord c;
    c.suite = "core";
    c.name = "check, with comma";
    c.ref = "plumbing";
    c.residual = 0.5;
    c.tolerance = 1.0;
    c.pass = true;
    rep.checks.push_back(c);
    const std::string csv = csv_string(rep);
    CHECK(csv.rfind("suite,check,ref,residual,tolerance,pass\n", 0) == 0);
    CHECK(csv.find("\"check, with comma\"") != std::string::npos);
    CHECK(csv.find(",0.5,1,true\n") != std::string::npos);
}

TEST_CASE("atomic writes land complete files and clean up the staging name") {
    const auto dir = std::filesystem::temp_directory_path() / "heis_report_test";
    std::filesystem::create_directories(dir);
    const auto path = (dir / "out.json").string();
    write_text_atomic(path, "first");
    write_text_atomic(path, "second");
    std::ifstream in(path);
    std::string content((std::istreambuf_iterator<char>(in)),
                        std::istreambuf_iterator<char>());
    CHECK(content == "second");
    CHECK_FALSE(std::filesystem::exists(path + ".tmp"));
    CHECK_THROWS(write_text_atomic((dir / "nodir" / "x.json").string(), "y"));
    std::filesystem::remove_all(dir);
}
