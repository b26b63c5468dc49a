#include <catch2/catch_amalgamated.hpp>

#include "riesz/checks.hpp"

using namespace riesz;

TEST_CASE("every named lemma check passes a smoke run") {
    for (const auto& check : checks::registry()) {
        auto result = checks::run_lemma(check, 7, 25);
        INFO(check.name << (result.first_failure
                                ? ": " + result.first_failure->assertion + " " +
                                      result.first_failure->instance.dump()
                                : ""));
        CHECK(result.ok());
        CHECK(result.passed == 25);
    }
}

TEST_CASE("lemma runs are deterministic per seed and thread count") {
    auto serialize = [](const checks::RunResult& r) {
        io::Json j{{"lemma", r.lemma},
                   {"passed", r.passed},
                   {"failed", r.failed},
                   {"regression_ok", r.regression_ok}};
        if (r.first_failure)
            j["failure"] = io::Json{{"assertion", r.first_failure->assertion},
                                    {"instance", r.first_failure->instance}};
        return j.dump();
    };
    auto a = checks::run_named("YY2-H", 42, 60, 1);
    auto b = checks::run_named("YY2-H", 42, 60, 1);
    auto c = checks::run_named("YY2-H", 42, 60, 4);
    CHECK(serialize(a) == serialize(b));
    CHECK(serialize(a) == serialize(c));
}

TEST_CASE("unknown lemma names are rejected") {
    CHECK_THROWS_AS(checks::run_named("nope", 1, 1), UnknownLemma);
}

TEST_CASE("the registry carries the full lemma ledger") {
    auto names = checks::lemma_names();
    CHECK(names.size() == 25);
    for (const char* expected :
         {"YY2-A", "YY2-Q", "YY2-H", "YY2-k", "YY2-T", "YY2-E", "X1", "X4", "YY2-Jm",
          "YY2-q", "YY2-r", "L1", "YY2-t", "YY3-a", "YY2-P", "YY2-g", "YY2-B", "M1", "M2",
          "M3", "M4", "M5", "M6", "M7-cert", "BC"})
        CHECK(std::find(names.begin(), names.end(), expected) != names.end());
}
