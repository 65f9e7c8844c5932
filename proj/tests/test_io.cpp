#include "doctest.h"

#include "dami/core/enumerate.hpp"
#include "dami/core/io.hpp"
#include "dami/core/synth.hpp"
#include "golden.hpp"

using namespace dami;

TEST_CASE("object CSV round-trips through text") {
    auto obj = synth_object(3, 3, 12, 404);
    auto text = object_csv_string(obj, "seed=404 mode=counting version=test");
    CHECK(text.rfind("# seed=404", 0) == 0);
    auto back = parse_object_csv(text, 3, 3);
    REQUIRE(back.point_count() == obj.point_count());
    for (std::size_t i = 0; i < obj.coord_data().size(); ++i)
        CHECK(back.coord_data()[i] == obj.coord_data()[i]);
    for (std::size_t i = 0; i < obj.channel_data().size(); ++i)
        CHECK(back.channel_data()[i] == obj.channel_data()[i]);
}

TEST_CASE("weighted objects keep their weight column") {
    ObjectMN obj(2, 1, {0, 0, 1, 0, 0, 1}, {1, 2, 3}, {1.0, 2.0, 0.5});
    auto text = object_csv_string(obj);
    CHECK(text.find(",w") != std::string::npos);
    auto back = parse_object_csv(text, 2, 1);
    CHECK(back.weight(1) == 2.0);
}

TEST_CASE("CSV errors name the row and column") {
    std::string bad = "x,y,z,r,g,b\n1,2,3,4,5,banana\n";
    try {
        parse_object_csv(bad, 3, 3, "obj.csv");
        FAIL("expected a parse error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Parse);
        std::string msg = e.what();
        CHECK(msg.find("obj.csv:2") != std::string::npos);
        CHECK(msg.find("column 6") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_object_csv("x,y\n1,2\n", 3, 3), Error);  // wrong column count
    CHECK_THROWS_AS(parse_object_csv("x,y,z,r,g,b\n", 3, 3), Error);  // no data rows
}

TEST_CASE("expression JSON round-trips structurally for every enumerated kernel") {
    EnumerateOptions opt;
    for (const auto& spec : enumerate_kernels(3, 3, opt)) {
        auto expr = build_invariant(spec, NormalizationMode::PaperDensity);
        if (!expr) continue;
        auto text = expr_to_json(*expr);
        auto back = expr_from_json(text);
        INFO(spec.str());
        CHECK(back.kernel == expr->kernel);
        CHECK(back.numerator == expr->numerator);
        CHECK(back.normalization.mode == expr->normalization.mode);
        REQUIRE(back.normalization.factors.size() == expr->normalization.factors.size());
        for (std::size_t i = 0; i < back.normalization.factors.size(); ++i) {
            CHECK(back.normalization.factors[i].kind == expr->normalization.factors[i].kind);
            CHECK(back.normalization.factors[i].base == expr->normalization.factors[i].base);
            CHECK(back.normalization.factors[i].exponent == expr->normalization.factors[i].exponent);
        }
    }
}

TEST_CASE("expression JSON coefficients are [numerator, denominator] pairs") {
    auto expr = golden::build33("S(1,2,3)*C(1,2,3)", NormalizationMode::PaperDensity);
    auto text = expr_to_json(expr, -1);               // compact form
    CHECK(text.find("\"coeff\":[6,1]") != std::string::npos);  // numerator coefficient 6
    CHECK(text.find("\"exp\":[5,2]") != std::string::npos);    // mass exponent 5/2
    CHECK(text.find("\"mode\":\"paper\"") != std::string::npos);
}

TEST_CASE("malformed expression JSON reports the offending field") {
    CHECK_THROWS_AS(expr_from_json("not json"), Error);
    CHECK_THROWS_AS(expr_from_json("{\"M\":3}"), Error);
    std::string bad_coeff =
        R"({"M":2,"N":2,"kernel":[{"kind":"S","points":[1,2],"exp":1},{"kind":"C","points":[1,2],"exp":1}],)"
        R"("numerator":[{"coeff":[1],"moments":[[1,0,1,0],[0,1,0,1]]}],)"
        R"("normalization":{"mode":"counting","factors":[]}})";
    try {
        expr_from_json(bad_coeff);
        FAIL("expected a parse error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("coeff") != std::string::npos);
    }
}
