#include <catch2/catch_amalgamated.hpp>

#include "riesz/io.hpp"
#include "riesz/rng.hpp"

using namespace riesz;

TEST_CASE("rational parsing") {
    CHECK(parse_rational("3") == Rational(3));
    CHECK(parse_rational("-7") == Rational(-7));
    CHECK(parse_rational("2/4") == Rational(1, 2));
    CHECK(parse_rational("-1/3") == Rational(-1, 3));
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("1/-2"), ParseError);
    CHECK_THROWS_AS(parse_rational("x"), ParseError);
    CHECK_THROWS_AS(parse_rational(""), ParseError);
    CHECK_THROWS_AS(parse_rational("1.5"), ParseError);
}

TEST_CASE("extended value forms") {
    CHECK(parse_ext_value("inf").is_infinite());
    CHECK(parse_ext_value("1/2") == ExtValue(Rational(1, 2)));
    CHECK_THROWS_AS(parse_ext_value("-inf"), ParseError);
    CHECK(ExtValue::infinity().str() == "inf");
    CHECK(ExtValue(Rational(-1, 3)).str() == "-1/3");
    CHECK(ExtValue(Rational(4, 2)).str() == "2");
}

TEST_CASE("element textual form") {
    io::Json j = io::Json::array({"1/2", "inf", "3"});
    Element x = io::element_from_json(j);
    CHECK(x.dim() == 3);
    CHECK(x[1].is_infinite());
    CHECK(io::to_json(x) == j);

    CHECK_THROWS_AS(io::element_from_json(io::Json::array()), ParseError);
    CHECK_THROWS_AS(io::element_from_json(io::Json::array({1, 2})), ParseError);
}

TEST_CASE("round trips are exact") {
    Rng rng(173);
    for (int t = 0; t < 200; ++t) {
        std::size_t d = 1 + rng.uniform(6);
        Element x = gen::signed_element(rng, d);
        CHECK(io::element_from_json(io::to_json(x)) == x);

        BandProjection B = gen::band(rng, d);
        CHECK(io::band_from_json(io::to_json(B), d) == B);

        auto seq = gen::cone_seq(rng, d);
        auto back = io::element_seq_from_json(io::to_json(seq));
        CHECK(back.prefix() == seq.prefix());
        CHECK(back.cycle() == seq.cycle());

        CondExp T = gen::cond_exp(rng, d);
        CondExp T2 = io::cond_exp_from_json(io::to_json(T));
        CHECK(T2.space().weights() == T.space().weights());
        CHECK(T2.partition() == T.partition());
    }
}

TEST_CASE("bound document parsing") {
    io::Json doc{{"space", {"1/4", "1/4", "1/4", "1/4"}},
                 {"partition", {{0, 1, 2, 3}}},
                 {"weights_seq", {{"prefix", io::Json::array()},
                                  {"cycle", {{"1", "1", "1", "1"}}}}},
                 {"events_seq", {{"prefix", io::Json::array()},
                                 {"cycle", {{0, 1}, {0, 2}}}}},
                 {"checkpoints", {1, 3, 5}}};
    auto parsed = io::bound_document_from_json(doc);
    CHECK(parsed.T.dim() == 4);
    REQUIRE(parsed.weights_seq);
    CHECK(parsed.weights_seq->cycle().size() == 1);
    CHECK(parsed.events_seq.cycle().size() == 2);
    CHECK(parsed.checkpoints == std::vector<std::size_t>{1, 3, 5});

    io::Json missing = doc;
    missing.erase("events_seq");
    CHECK_THROWS_AS(io::bound_document_from_json(missing), ParseError);

    io::Json no_weights = doc;
    no_weights.erase("weights_seq");
    CHECK_THROWS_AS(io::bound_document_from_json(no_weights, true), ParseError);
    CHECK_NOTHROW(io::bound_document_from_json(no_weights, false));

    io::Json bad_band = doc;
    bad_band["events_seq"]["cycle"][0] = {0, 9};
    CHECK_THROWS_AS(io::bound_document_from_json(bad_band), ParseError);
}
