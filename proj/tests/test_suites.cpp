#include <catch2/catch_amalgamated.hpp>

#include "heis/suites.hpp"

using namespace heis;

TEST_CASE("suite registry lists the seven suites") {
    const auto& names = suite_names();
    REQUIRE(names.size() == 7);
    CHECK(names.front() == "core");
    CHECK(names.back() == "ordercalc");
    CHECK_THROWS_AS(run_suite("nope", SuiteOptions{}), std::invalid_argument);
}

TEST_CASE("fast suites pass wholesale") {
    SuiteOptions opts;
    for (const std::string name : {"core", "calculus", "quadrature", "ordercalc"}) {
        const auto checks = run_suite(name, opts);
        CHECK_FALSE(checks.empty());
        for (const auto& c : checks) {
            INFO(name << "/" << c.name << " residual " << c.residual << " tolerance "
                      << c.tolerance);
            CHECK(c.pass);
            CHECK(c.suite == name);
            CHECK_FALSE(c.ref.empty());
        }
    }
}

TEST_CASE("every check carries a claim reference or is marked plumbing") {
    SuiteOptions opts;
    for (const auto& c : run_suite("core", opts)) CHECK_FALSE(c.ref.empty());
    for (const auto& c : run_suite("ordercalc", opts)) CHECK_FALSE(c.ref.empty());
}

TEST_CASE("tolerance overrides reach the checks") {
    SuiteOptions opts;
    opts.tolerances["associativity"] = 0.0;
    const auto checks = run_suite("core", opts);
    bool found = false;
    for (const auto& c : checks)
        if (c.name == "associativity") {
            found = true;
            CHECK(c.tolerance == 0.0);
            CHECK_FALSE(c.pass);
        }
    CHECK(found);
}

TEST_CASE("identical options give identical records") {
    SuiteOptions opts;
    const auto a = run_suite("core", opts);
    const auto b = run_suite("core", opts);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].name == b[i].name);
        CHECK(a[i].residual == b[i].residual);
    }
}

TEST_CASE("seed changes move the sampled residuals without breaking the checks") {
    SuiteOptions a, b;
    b.seed = 1234;
    const auto ra = run_suite("core", a);
    const auto rb = run_suite("core", b);
    bool any_different = false;
    for (std::size_t i = 0; i < ra.size(); ++i) {
        CHECK(rb[i].pass);
        any_different = any_different || ra[i].residual != rb[i].residual;
    }
    CHECK(any_different);
}
