#include "fqcycles.h"

#include <doctest.h>

#include <json.hpp>

#include <memory>
#include <string>

namespace {

struct Context {
    fqc_context* ctx = nullptr;
    Context() { REQUIRE(fqc_context_create(&ctx) == FQC_OK); }
    ~Context() { fqc_context_destroy(ctx); }
};

struct Report {
    fqc_report* r = nullptr;
    ~Report() { fqc_report_destroy(r); }
    nlohmann::json json() const { return nlohmann::json::parse(fqc_report_string(r, FQC_FORMAT_JSON)); }
};

} // namespace

TEST_CASE("context lifecycle and settings") {
    Context c;
    CHECK(fqc_context_set_threads(c.ctx, 0) == FQC_INVALID_ARGUMENT);
    CHECK(std::string(fqc_context_last_error(c.ctx)).size() > 0);
    CHECK(fqc_context_set_threads(c.ctx, 3) == FQC_OK);
    CHECK(fqc_context_set_max_states(c.ctx, 0) == FQC_INVALID_ARGUMENT);
    CHECK(fqc_context_create(nullptr) == FQC_INVALID_ARGUMENT);
    CHECK(std::string(fqc_status_name(FQC_BUDGET_EXCEEDED)) == "budget exceeded");
    CHECK(fqc_report_string(nullptr, FQC_FORMAT_JSON) == nullptr);
    CHECK(fqc_report_passed(nullptr) == -1);
    fqc_context_destroy(nullptr);
    fqc_report_destroy(nullptr);
}

TEST_CASE("joint probability through the C API") {
    Context c;
    Report r;
    const fqc_constraint cons[] = {{2, 1}};
    REQUIRE(fqc_joint(c.ctx, 2, 2, cons, 1, FQC_METHOD_BOTH, &r.r) == FQC_OK);
    const auto j = r.json();
    CHECK(j["cycle_index"]["exact"] == "1/8");
    CHECK(j["brute"]["exact"] == "1/8");
    CHECK(j["agree"] == true);
    CHECK(fqc_report_passed(r.r) == 1);
    CHECK(std::string(fqc_report_string(r.r, FQC_FORMAT_CSV)).rfind("method,exact,float\n", 0) == 0);
}

TEST_CASE("status codes") {
    Context c;
    const fqc_constraint cons[] = {{1, 0}};
    fqc_report* r = nullptr;
    CHECK(fqc_joint(c.ctx, 2, 6, cons, 1, FQC_METHOD_FORMULA, &r) == FQC_INVALID_ARGUMENT);
    CHECK(r == nullptr);
    CHECK(fqc_joint(c.ctx, 2, 2, nullptr, 1, FQC_METHOD_FORMULA, &r) == FQC_INVALID_ARGUMENT);
    CHECK(fqc_joint(c.ctx, 2, 2, cons, 1, FQC_METHOD_FORMULA, nullptr) == FQC_INVALID_ARGUMENT);
    REQUIRE(fqc_context_set_max_states(c.ctx, 100) == FQC_OK);
    CHECK(fqc_joint(c.ctx, 3, 2, cons, 1, FQC_METHOD_BRUTE, &r) == FQC_BUDGET_EXCEEDED);
    CHECK(std::string(fqc_context_last_error(c.ctx)).find("budget") != std::string::npos);
    const fqc_constraint dup[] = {{1, 0}, {1, 1}};
    CHECK(fqc_perm(c.ctx, 4, dup, 2, FQC_METHOD_FORMULA, &r) == FQC_INVALID_ARGUMENT);
}

TEST_CASE("other reports") {
    Context c;
    {
        Report r;
        const fqc_constraint cons[] = {{2, 1}};
        REQUIRE(fqc_perm(c.ctx, 6, cons, 1, FQC_METHOD_BOTH, &r.r) == FQC_OK);
        CHECK(r.json()["cycle_index"]["exact"] == "5/16");
        CHECK(fqc_report_passed(r.r) == 1);
    }
    {
        Report r;
        const uint64_t ns[] = {1000, 1000000};
        REQUIRE(fqc_jordan_landau(c.ctx, 2, ns, 2, &r.r) == FQC_OK);
        const auto rows = r.json()["rows"];
        CHECK(rows[1]["distance_from_1"].get<double>() < rows[0]["distance_from_1"].get<double>());
        CHECK(fqc_report_passed(r.r) == 1);
    }
    {
        Report r;
        const unsigned zero[] = {1};
        REQUIRE(fqc_shepp_lloyd(c.ctx, zero, 1, nullptr, 0, 4, &r.r) == FQC_OK);
        CHECK(r.json()["coefficients"][2]["exact"] == "1/2");
        CHECK(r.json()["limit"]["expression"] == "1/1*e^(-1/1)");
    }
    {
        Report r;
        REQUIRE(fqc_irreducibles(c.ctx, 2, 4, &r.r) == FQC_OK);
        CHECK(r.json()["count"] == 3);
        CHECK(fqc_report_passed(r.r) == 1);
    }
    {
        Report r;
        const uint32_t coeffs[] = {1, 0, 1, 0, 1};
        REQUIRE(fqc_factor_profile(c.ctx, 2, coeffs, 5, &r.r) == FQC_OK);
        CHECK(r.json()["profile"]["2"] == 2);
    }
    {
        Report r;
        const uint32_t entries[] = {0, 1, 1, 1};
        REQUIRE(fqc_char_poly(c.ctx, 2, 2, entries, &r.r) == FQC_OK);
        CHECK(r.json()["char_poly"] == nlohmann::json::array({1, 1, 1}));
    }
    {
        Report r;
        const fqc_sampler s{5, 3, 1, 5000, 42};
        const unsigned degrees[] = {1};
        REQUIRE(fqc_cokernel(c.ctx, &s, degrees, 1, &r.r) == FQC_OK);
        CHECK(r.json()["exact"] == "768/3125");
    }
}

TEST_CASE("verify through the C API") {
    Context c;
    Report r;
    const char* only[] = {"sf"};
    const fqc_verify_options opt{only, 1, nullptr, 0, 0, 0, 42, "squarefree"};
    REQUIRE(fqc_verify(c.ctx, &opt, &r.r) == FQC_OK);
    CHECK(fqc_report_passed(r.r) == 0);
    CHECK(std::string(fqc_report_string(r.r, FQC_FORMAT_TEXT)).rfind("FAIL sf: ", 0) == 0);
}
