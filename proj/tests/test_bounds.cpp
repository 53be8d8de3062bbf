#include <catch2/catch_amalgamated.hpp>

#include "sclforge/bounds.hpp"

using namespace sclforge;

namespace {
Word W(const std::string& s) { return parse_word(s, 2); }
const Marking& ord() {
    static Marking m = Marking::ordinary(2);
    return m;
}
const Marking& full_ab() {
    static Marking m(2, {{1, 0}, {0, 1}});
    return m;
}

std::vector<BrooksCombination>& certs() {
    static std::vector<BrooksCombination> cs = [] {
        auto c = default_certificate_set(2);
        defect_window_check_all(c, 2, 4);
        return c;
    }();
    return cs;
}
}  // namespace

TEST_CASE("stabilization sequence for powers of [a,b]") {
    auto seq = stabilization_sequence(ord(), W("[a,b]"), Mode::ordinary, 3);
    REQUIRE(seq.size() == 3);
    REQUIRE(seq[0].value.has_value());
    CHECK(*seq[0].value == 1);
    REQUIRE(seq[2].value.has_value());
    CHECK(*seq[2].value == make_rational(2, 3));

    auto zero = stabilization_sequence(ord(), W(""), Mode::ordinary, 3);
    for (const auto& e : zero) {
        REQUIRE(e.value.has_value());
        CHECK(*e.value == 0);
    }

    CHECK_THROWS_AS(stabilization_sequence(ord(), W("a"), Mode::ordinary, 2), NotInSubgroupError);
}

TEST_CASE("interval for the basic commutator") {
    BoundsBudget bb;  // defaults: kmax 5, L 4, gen_len 6
    auto iv = scl_interval(ord(), W("[a,b]"), Mode::ordinary, bb, certs());
    CHECK(iv.lower == make_rational(1, 4));
    REQUIRE(iv.upper.is_finite());
    CHECK(iv.upper.value == make_rational(3, 5));
    // contains the true value 1/2
    CHECK(iv.lower <= make_rational(1, 2));
    CHECK(make_rational(1, 2) <= iv.upper.value);
    // width within the budgeted target
    CHECK(iv.upper.value - iv.lower <= make_rational(35, 100));
    CHECK(iv.lower_cert.has_value());
}

TEST_CASE("interval invariants") {
    BoundsBudget bb;
    bb.k_max = 2;
    auto iv = scl_interval(ord(), Chain1{}, Mode::ordinary, bb, certs());
    CHECK(iv.lower == 0);
    REQUIRE(iv.upper.is_finite());
    CHECK(iv.upper.value == 0);

    CHECK_THROWS_AS(scl_interval(full_ab(), W("b"), Mode::mixed, bb, certs()), NotInSubgroupError);

    // empty certificate set: lower = 0 by the empty-supremum convention
    auto none = scl_interval(ord(), W("[a,b]"), Mode::ordinary, bb, {});
    CHECK(none.lower == 0);
}

TEST_CASE("chain intervals use the h normal form") {
    BoundsBudget bb;
    bb.k_max = 2;
    // (ab)^3 * 1/2 h-normalizes to (3/2) ab, which is not in C_Q; use a
    // boundary-shaped chain instead
    Chain1 c;
    Word u = W("a"), v = W("b");
    c.add(u, 1);
    c.add(v, 1);
    c.add(multiply(u, v), -1);
    auto iv = scl_interval(ord(), c, Mode::ordinary, bb, certs());
    REQUIRE(iv.upper.is_finite());
    CHECK(iv.upper.value <= make_rational(1, 2));
    CHECK(iv.lower <= iv.upper.value);
}

TEST_CASE("mode comparison") {
    BoundsBudget bb;
    bb.k_max = 2;
    bb.search.max_terms = 2;
    Word y = multiply(W("[a,b]"), W("[a,B]"));
    auto cmp = compare_modes(full_ab(), y, bb, certs());
    CHECK(cmp.lower_ordinary_le_upper_mixed);
    CHECK(cmp.intervals_intersect);
    CHECK(cmp.amenable_doubling_consistent);
    CHECK(cmp.ordinary.upper <= cmp.mixed.upper);

    // marked pair with a -> 1, b -> 0: [a,b] is a simple mixed commutator
    Marking height(2, {{1, 0}});
    auto cmph = compare_modes(height, W("[a,b]"), bb, certs());
    CHECK(cmph.lower_ordinary_le_upper_mixed);
    CHECK(cmph.intervals_intersect);
    REQUIRE(cmph.mixed.upper.is_finite());
    CHECK(cmph.mixed.upper.value <= 1);

    auto cmp2 = compare_modes(full_ab(), W(""), bb, certs());
    CHECK(cmp2.ordinary.lower == 0);
    REQUIRE(cmp2.ordinary.upper.is_finite());
    CHECK(cmp2.ordinary.upper.value == 0);
    REQUIRE(cmp2.mixed.upper.is_finite());
    CHECK(cmp2.mixed.upper.value == 0);

    CHECK_THROWS_AS(compare_modes(full_ab(), W("[a,b]"), bb, certs()), NotInSubgroupError);
}

TEST_CASE("upper certificates re-verify") {
    BoundsBudget bb;
    auto iv = scl_interval(ord(), W("[a,b]"), Mode::ordinary, bb, certs());
    if (const auto* sw = std::get_if<StabilizationWitness>(&iv.upper_cert)) {
        CHECK(verify_cl_certificate(ord(), sw->cert));
        CHECK(sw->cert.target == power(W("[a,b]"), sw->k));
    } else if (const auto* fc = std::get_if<FillingCertificate>(&iv.upper_cert)) {
        CHECK(verify_filling_certificate(ord(), *fc));
    } else {
        FAIL("interval carries no upper certificate");
    }
}
