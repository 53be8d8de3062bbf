#include <catch2/catch_amalgamated.hpp>

#include "sclforge/qm.hpp"

using namespace sclforge;

namespace {
Word W(const std::string& s) { return parse_word(s, 2); }

BrooksCombination atom(const std::string& w, long bound, int window = 6) {
    return BrooksCombination({{W(w), Rational(1)}}, Rational(bound), window, w);
}

Word random_reduced(Rng& rng, int maxlen) {
    std::vector<Letter> raw;
    int len = static_cast<int>(rng.below(static_cast<std::uint64_t>(maxlen + 1)));
    for (int i = 0; i < len; ++i) {
        int idx = 1 + static_cast<int>(rng.below(2));
        raw.push_back(static_cast<Letter>(rng.below(2) ? idx : -idx));
    }
    return reduce(2, raw);
}
}  // namespace

TEST_CASE("homogenized values") {
    // single-letter atom is the exponent-sum homomorphism
    auto qa = BrooksCombination({{W("a"), Rational(1)}}, Rational(1), 3);
    CHECK(homogenized_value(qa, W("a")) == 1);
    CHECK(homogenized_value(qa, W("bab")) == 1);
    CHECK(homogenized_value(qa, W("a^-4")) == -4);

    auto qab = atom("ab", 2);
    // slope oracle: raw counts of "ab" and "BA" in ([a,b])^m for m = 3, 4
    Word c = W("[a,b]");
    long count3 = 0, count4 = 0;
    {
        Word p3 = power(c, 3), p4 = power(c, 4);
        auto count = [](const std::string& pat, const std::string& s) {
            long n = 0;
            for (std::size_t i = 0; i + pat.size() <= s.size(); ++i)
                if (s.compare(i, pat.size(), pat) == 0) ++n;
            return n;
        };
        std::string s3 = format_word(p3), s4 = format_word(p4);
        count3 = count("ab", s3) - count("BA", s3);
        count4 = count("ab", s4) - count("BA", s4);
    }
    CHECK(homogenized_value(qab, c) == Rational(count4 - count3));
    CHECK(homogenized_value(qab, c) == 1);

    CHECK(homogenized_value(qab, W("")) == 0);
    CHECK(homogenized_value(qab, W("ab")) == 1);

    // fast cyclic route agrees with the slope route
    Rng rng(41);
    auto certs = default_certificate_set(2);
    for (int it = 0; it < 500; ++it) {
        Word y = random_reduced(rng, 10);
        const auto& q = certs[rng.below(certs.size())];
        CHECK(homogenized_value(q, y) == homogenized_value_cyclic(q, y));
    }
}

TEST_CASE("semi-homogeneity and conjugation invariance") {
    Rng rng(42);
    auto certs = default_certificate_set(2);
    for (int it = 0; it < 200; ++it) {
        Word y = random_reduced(rng, 8);
        const auto& q = certs[rng.below(certs.size())];
        Rational v = homogenized_value(q, y);
        for (long k = -3; k <= 3; ++k)
            CHECK(homogenized_value(q, power(y, k)) == Rational(k) * v);
        Word g = random_reduced(rng, 6);
        CHECK(homogenized_value(q, conjugated(g, y)) == v);
    }
}

TEST_CASE("chain evaluation") {
    auto qab = atom("ab", 2);
    Chain1 empty;
    CHECK(evaluate_chain(qab, empty) == 0);

    Chain1 hgen;
    hgen.add(power(W("ba"), 3), 1);
    hgen.add(W("ba"), -3);
    CHECK(evaluate_chain(qab, hgen) == 0);

    CHECK(evaluate_chain(qab, Chain1(W("[a,b]"))) == 1);

    // invariance under h normal form
    Rng rng(43);
    for (int it = 0; it < 100; ++it) {
        Chain1 c;
        for (int t = 0; t < 3; ++t)
            c.add(random_reduced(rng, 8), make_rational(rng.range(-3, 3), rng.range(1, 4)));
        CHECK(evaluate_chain(qab, c) == evaluate_chain(qab, h_normal_form(c)));
    }
}

TEST_CASE("windowed defect validation") {
    auto qa = BrooksCombination({{W("a"), Rational(1)}}, Rational(1), 4);
    auto r1 = defect_window_check(qa, 2);
    CHECK(r1.empirical_max == 0);
    CHECK(r1.pass);

    auto qab = atom("ab", 2);
    auto r2 = defect_window_check(qab, 2, 4);
    CHECK(r2.pass);
    CHECK(r2.empirical_max <= 2);
    CHECK(qab.validated);

    // disqualification path: nonzero empirical defect with a zero-ish bound
    auto tight = BrooksCombination({{W("ab"), Rational(1)}}, make_rational(1, 100), 5);
    auto r3 = defect_window_check(tight, 2, 4);
    CHECK_FALSE(r3.pass);
    CHECK(r3.worst_pair.has_value());
    CHECK_FALSE(tight.validated);

    auto small_window = BrooksCombination({{W("aab"), Rational(1)}}, Rational(4), 2);
    CHECK_THROWS_AS(defect_window_check(small_window, 2), PreconditionError);

    // default set passes at its configured bounds
    auto certs = default_certificate_set(2);
    auto results = defect_window_check_all(certs, 2, 4);
    for (std::size_t i = 0; i < certs.size(); ++i) {
        CHECK(results[i].pass);
        CHECK(certs[i].validated);
    }
}

TEST_CASE("duality lower bounds") {
    Marking ord = Marking::ordinary(2);
    auto qab = atom("ab", 2);
    defect_window_check(qab, 2, 4);
    REQUIRE(qab.validated);

    CHECK(bavard_lower_bound(qab, Chain1(W("[a,b]")), ord) == make_rational(1, 4));
    CHECK(bavard_lower_bound(qab, Chain1{}, ord) == 0);
    for (long k = 1; k <= 4; ++k)
        CHECK(bavard_lower_bound(qab, Chain1(power(W("[a,b]"), k)), ord) == make_rational(k, 4));

    auto unvalidated = atom("ab", 2);
    CHECK_THROWS_AS(bavard_lower_bound(unvalidated, Chain1(W("[a,b]")), ord), PreconditionError);

    Marking full(2, {{1, 0}, {0, 1}});
    CHECK_THROWS_AS(bavard_lower_bound(qab, Chain1(W("[a,b]")), full), NotInSubgroupError);
}

TEST_CASE("construction validation") {
    CHECK_THROWS_AS(BrooksCombination({{W(""), Rational(1)}}, Rational(1), 3), PreconditionError);
    CHECK_THROWS_AS(BrooksCombination({{W("ab"), Rational(0)}}, Rational(1), 3), PreconditionError);
    CHECK_THROWS_AS(BrooksCombination({{W("ab"), Rational(1)}}, Rational(0), 3), PreconditionError);
    CHECK_THROWS_AS(BrooksCombination({{W("ab"), Rational(1)}}, Rational(2), 0), PreconditionError);
}
