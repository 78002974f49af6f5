#include "doctest.h"

#include "dendro/harness.hpp"

#include "json.hpp"

using namespace dendro;

TEST_CASE("shrinker lowers every knob while the property still fails") {
    CaseParams start{7, 3, 6, 3, 4, 1.0};
    // Fails whenever the tree may have at least 3 vertices in dimension >= 2.
    auto fails = [](const CaseParams& p) { return p.max_vertices >= 3 && p.dim >= 2; };
    CaseParams small = shrink_case(start, fails);
    CHECK(small.seed == 7);
    CHECK(small.max_vertices == 3);
    CHECK(small.dim == 2);
    CHECK(small.max_arity == 0);
    CHECK(small.max_length == 1);
    CHECK(small.scale == 1.0 / 64);
    CHECK(fails(small));
    // A case that only fails as given is returned unchanged.
    CHECK(shrink_case(start, [&](const CaseParams& p) { return p == start; }) == start);
    CHECK(describe(small) == "seed=7 dim=2 max_vertices=3 max_arity=0 max_length=1 scale=0.015625");
}

TEST_CASE("modes") {
    CHECK(to_string(Mode::rational) == "rational");
    CHECK(to_string(Mode::floating) == "float");
    CHECK(parse_mode("float") == Mode::floating);
    CHECK_FALSE(parse_mode("double"));
}

TEST_CASE("every suite passes on a small run") {
    for (const auto& name : suite_names()) {
        SuiteOptions opts;
        opts.cases = 20;
        opts.seed = 5;
        opts.max_vertices = 3;
        auto report = run_suite(name, opts);
        CAPTURE(name);
        CAPTURE(format_report(report));
        CHECK(report.passed());
        CHECK(report.suite == name);
        CHECK(report.cases >= 20);
    }
}

TEST_CASE("suite errors") {
    CHECK_THROWS_AS(run_suite("nosuch", {}), SuiteError);
    SuiteOptions floating;
    floating.mode = Mode::floating;
    CHECK_THROWS_AS(run_suite("lemma_hat", floating), SuiteError);
    SuiteOptions exact;
    exact.mode = Mode::rational;
    CHECK_THROWS_AS(run_suite("retraction_homotopy", exact), SuiteError);
}

TEST_CASE("reports") {
    SuiteOptions opts;
    opts.cases = 10;
    auto report = run_suite("eq2", opts);
    auto text = format_report(report);
    CHECK(text.find("suite: eq2\n") == 0);
    CHECK(text.find("status: PASS\n") != std::string::npos);
    auto json = nlohmann::json::parse(report_json(report));
    CHECK(json["suite"] == "eq2");
    CHECK(json["cases"] == 10);
    CHECK(json["failures"] == 0);

    CheckReport failed;
    failed.suite = "x";
    failed.failures = 1;
    failed.witnesses = {"line one\nline two"};
    auto bad = format_report(failed);
    CHECK(bad.find("status: FAIL\n") != std::string::npos);
    CHECK(bad.find("line two") != std::string::npos);
}
