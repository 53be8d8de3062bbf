#include <catch2/catch_amalgamated.hpp>

#include "sclforge/lp.hpp"

using namespace sclforge;

namespace {
Word W(const std::string& s) { return parse_word(s, 2); }
const Marking& ord() {
    static Marking m = Marking::ordinary(2);
    return m;
}
const Marking& height() {
    static Marking m(2, {{1, 0}});
    return m;
}
}  // namespace

TEST_CASE("boundary of a single cell fills its own boundary") {
    Word x1 = W("a"), x2 = W("b");
    Chain1 c;
    c.add(x2, 1);
    c.add(multiply(x1, x2), -1);
    c.add(x1, 1);
    FillingNormOptions opt;
    opt.length_budget = 2;
    auto res = truncated_filling_norm(ord(), c, opt);
    REQUIRE(res.status == LpStatus::solved);
    CHECK(res.certificate->value <= 1);
    CHECK(verify_filling_certificate(ord(), *res.certificate));
}

TEST_CASE("conjugation difference fills with two cells") {
    Word g = W("a"), v = W("b");
    Chain1 c;
    c.add(conjugated(g, v), 1);
    c.add(v, -1);
    FillingNormOptions opt;
    opt.length_budget = 4;
    auto res = truncated_filling_norm(ord(), c, opt);
    REQUIRE(res.status == LpStatus::solved);
    CHECK(res.certificate->value <= 2);
    CHECK(verify_filling_certificate(ord(), *res.certificate));
}

TEST_CASE("zero chain fills for free") {
    FillingNormOptions opt;
    opt.length_budget = 2;
    auto res = truncated_filling_norm(ord(), Chain1{}, opt);
    REQUIRE(res.status == LpStatus::solved);
    CHECK(res.certificate->value == 0);
    CHECK(res.certificate->filling.is_zero());
}

TEST_CASE("mixed support restricts the dictionary") {
    // full abelianization: every admissible cell at L = 4 has one entry in
    // N = [F,F], and no cell reaches the target word, so the instance is
    // infeasible rather than erroneous.
    Marking full(2, {{1, 0}, {0, 1}});
    Chain1 c(W("[a,b]"));
    FillingNormOptions opt;
    opt.length_budget = 4;
    opt.allow_h = true;
    auto res = truncated_filling_norm(full, c, opt);
    CHECK(res.status == LpStatus::infeasible);
}

TEST_CASE("budget errors versus infeasibility") {
    Chain1 c(W("[a,b]^2"));  // length 8
    FillingNormOptions opt;
    opt.length_budget = 4;
    CHECK_THROWS_AS(truncated_filling_norm(ord(), c, opt), BudgetError);

    Chain1 notN(W("a"));
    CHECK_THROWS_AS(truncated_filling_norm(height(), notN, opt), PreconditionError);
}

TEST_CASE("certificate verification rejects tampering") {
    Word x1 = W("a"), x2 = W("b");
    Chain1 c;
    c.add(x2, 1);
    c.add(multiply(x1, x2), -1);
    c.add(x1, 1);
    FillingNormOptions opt;
    opt.length_budget = 2;
    auto res = truncated_filling_norm(ord(), c, opt);
    REQUIRE(res.status == LpStatus::solved);

    FillingCertificate wrong_value = *res.certificate;
    wrong_value.value += 1;
    CHECK_FALSE(verify_filling_certificate(ord(), wrong_value));

    FillingCertificate wrong_target = *res.certificate;
    wrong_target.target.add(W("b"), 1);
    CHECK_FALSE(verify_filling_certificate(ord(), wrong_target));

    // a filling with a pair outside the mixed-support condition
    FillingCertificate bad_pair;
    bad_pair.target = Chain1{};
    bad_pair.filling.add(W("a"), W("ab"), 1);
    bad_pair.value = bad_pair.filling.l1_norm();
    CHECK_FALSE(verify_filling_certificate(height(), bad_pair));
}

TEST_CASE("scl upper bound from fillings") {
    // x1 + x2 - x1 x2 <= 1/2
    Word x1 = W("a"), x2 = W("b");
    Chain1 c;
    c.add(x1, 1);
    c.add(x2, 1);
    c.add(multiply(x1, x2), -1);
    auto up = scl_upper_from_filling(ord(), c, 3);
    REQUIRE(up.has_value());
    CHECK(up->first <= make_rational(1, 2));
    CHECK(verify_filling_certificate(ord(), up->second));

    CHECK(scl_upper_from_filling(ord(), Chain1{}, 2)->first == 0);

    // y1 + y2 - y1 y2 <= 1/2 for other pairs within budget
    for (auto [s1, s2] : std::vector<std::pair<const char*, const char*>>{
             {"a", "B"}, {"b", "A"}, {"ab", "A"}}) {
        Chain1 cc;
        Word y1 = W(s1), y2 = W(s2);
        cc.add(y1, 1);
        cc.add(y2, 1);
        cc.add(multiply(y1, y2), -1);
        auto u = scl_upper_from_filling(ord(), cc, 3);
        REQUIRE(u.has_value());
        CHECK(u->first <= make_rational(1, 2));
    }
}

TEST_CASE("h relaxation can only help") {
    // [a,b] has an h-relaxed filling at L = 4 in the ordinary marking
    Chain1 c(W("[a,b]"));
    FillingNormOptions no_h;
    no_h.length_budget = 4;
    FillingNormOptions with_h = no_h;
    with_h.allow_h = true;
    auto rh = truncated_filling_norm(ord(), c, with_h);
    REQUIRE(rh.status == LpStatus::solved);
    CHECK(verify_filling_certificate(ord(), *rh.certificate));
    CHECK(rh.certificate->value >= 1);  // scl >= 1/2 forces the h-norm >= 1

    auto rn = truncated_filling_norm(ord(), c, no_h);
    if (rn.status == LpStatus::solved) CHECK(rh.certificate->value <= rn.certificate->value);

    // [a,b] is not indexable below its own length
    FillingNormOptions l3 = with_h;
    l3.length_budget = 3;
    CHECK_THROWS_AS(truncated_filling_norm(ord(), c, l3), BudgetError);

    // budget monotonicity on a short chain
    Word g = W("a"), v = W("b");
    Chain1 cc;
    cc.add(conjugated(g, v), 1);
    cc.add(v, -1);
    FillingNormOptions m3, m4;
    m3.length_budget = 3;
    m3.allow_h = true;
    m4.length_budget = 4;
    m4.allow_h = true;
    auto a3 = truncated_filling_norm(ord(), cc, m3);
    auto a4 = truncated_filling_norm(ord(), cc, m4);
    REQUIRE(a3.status == LpStatus::solved);
    REQUIRE(a4.status == LpStatus::solved);
    CHECK(a4.certificate->value <= a3.certificate->value);
}

TEST_CASE("strong duality bookkeeping") {
    long before = lp_instances_solved();
    Chain1 c(W("[a,b]"));
    FillingNormOptions opt;
    opt.length_budget = 4;
    opt.allow_h = true;
    auto res = truncated_filling_norm(ord(), c, opt);
    REQUIRE(res.status == LpStatus::solved);
    CHECK(res.stats.duality_checked);
    CHECK(res.stats.primal_value == res.stats.dual_value);
    CHECK(lp_instances_solved() > before);
    CHECK(lp_duality_failure_count() == 0);
}
