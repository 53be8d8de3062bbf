#include <catch2/catch_amalgamated.hpp>

#include "sclforge/json_io.hpp"

using namespace sclforge;

namespace {
Marking height() { return Marking(2, {{1, 0}}); }
}  // namespace

TEST_CASE("marking round trip") {
    Marking m(3, {{1, 1, 0}, {0, 2, -1}}, {'x', 'y', 'z'});
    Json j = marking_to_json(m);
    Marking back = marking_from_json(j);
    CHECK(back.rank() == 3);
    CHECK(back.labels() == m.labels());
    CHECK(back.quotient_matrix() == m.quotient_matrix());
    CHECK(marking_to_json(back) == j);

    CHECK_THROWS_AS(marking_from_json(Json{{"rank", "two"}}), ParseError);
    Json torsionish = marking_to_json(height());
    torsionish["quotient_matrix"] = Json::array({Json::array({0.5, 1.0})});
    CHECK_THROWS_AS(marking_from_json(torsionish), ParseError);
}

TEST_CASE("chain round trips") {
    Marking m = height();
    Chain1 c;
    c.add(m.parse("abAB"), parse_rational("3/2"));
    c.add(m.parse("b"), parse_rational("-2"));
    Json j = chain1_to_json(m, c);
    CHECK(chain1_from_json(m, j) == c);

    Chain2 c2;
    c2.add(m.parse("a"), m.parse("b"), parse_rational("1/3"));
    c2.add(m.parse("ab"), m.parse("B"), parse_rational("-1"));
    Json j2 = chain2_to_json(m, c2);
    CHECK(chain2_from_json(m, j2) == c2);

    // coefficients serialize canonically
    CHECK(rational_str(parse_rational("4/6")) == "2/3");
    CHECK(rational_str(parse_rational("-8/2")) == "-4");
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("x"), ParseError);
}

TEST_CASE("certificate schema") {
    Marking m = height();
    Json j = Json::parse(R"({
        "atoms": [{"word": "ab", "weight": "1"}, {"word": "aab", "weight": "-1/2"}],
        "defect_bound": "4",
        "window": 6
    })");
    BrooksCombination q = brooks_from_json(m, j);
    CHECK(q.atoms.size() == 2);
    CHECK(q.defect_bound == 4);
    CHECK(q.window == 6);
    Json back = brooks_to_json(m, q);
    CHECK(back["defect_bound"] == "4");
    CHECK(brooks_from_json(m, back).atoms == q.atoms);
}

TEST_CASE("decimal rendering is display-only and deterministic") {
    CHECK(rational_decimal(parse_rational("1/2")) == "0.500000");
    CHECK(rational_decimal(parse_rational("-3/7"), 4) == "-0.4285");
    CHECK(rational_decimal(parse_rational("5"), 0) == "5");
}

TEST_CASE("interval JSON embeds certificates") {
    Marking ord = Marking::ordinary(2);
    auto certs = default_certificate_set(2);
    defect_window_check_all(certs, 2, 4);
    BoundsBudget bb;
    bb.k_max = 2;
    auto iv = scl_interval(ord, parse_word("[a,b]", 2), Mode::ordinary, bb, certs);
    Json j = interval_to_json(ord, iv);
    CHECK(j["lower"] == "1/4");
    CHECK(j.contains("lower_cert"));
    CHECK(j["lower_cert"].contains("certificate"));
    CHECK(j.contains("upper_cert"));
    CHECK(j["stabilization"].is_array());

    // the embedded lower certificate re-verifies against the word
    BrooksCombination q = brooks_from_json(ord, j["lower_cert"]["certificate"]);
    defect_window_check(q, 2);
    REQUIRE(q.validated);
    CHECK(bavard_lower_bound(q, Chain1(parse_word("[a,b]", 2)), ord) == iv.lower);
}
