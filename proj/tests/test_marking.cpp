#include <catch2/catch_amalgamated.hpp>

#include "sclforge/chains.hpp"
#include "sclforge/marking.hpp"
#include "sclforge/oracles.hpp"

using namespace sclforge;

namespace {
const Marking& full_ab() {
    static Marking m(2, {{1, 0}, {0, 1}});
    return m;
}
const Marking& height() {  // a -> 1, b -> 0
    static Marking m(2, {{1, 0}});
    return m;
}
Word W(const std::string& s) { return parse_word(s, 2); }

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

TEST_CASE("abelianization") {
    CHECK(full_ab().abelianize(W("abAB")) == std::vector<long long>{0, 0});
    CHECK(full_ab().abelianize(W("aaB")) == std::vector<long long>{2, -1});
    CHECK(full_ab().abelianize(W("(ab)^3")) == std::vector<long long>{3, 3});
    CHECK_THROWS_AS(full_ab().abelianize(parse_word("abc", 3)), RankMismatchError);
}

TEST_CASE("kernel membership") {
    CHECK(height().in_N(W("b")));
    CHECK_FALSE(height().in_N(W("a")));
    CHECK(full_ab().in_N(W("abAB")));
    CHECK(Marking::ordinary(2).in_N(W("a")));  // k = 0: N = G
}

TEST_CASE("area class") {
    CHECK(full_ab().area_class(W("[a,b]")) == std::vector<long long>{1});
    CHECK(full_ab().area_class(W("[a,b]^2")) == std::vector<long long>{2});
    CHECK(full_ab().area_class(multiply(W("[a,b]"), W("[b,a]"))) == std::vector<long long>{0});
    CHECK_THROWS_AS(full_ab().area_class(W("a")), PreconditionError);

    // against the winding-number oracle, on random kernel words
    Rng rng(21);
    int checked = 0;
    while (checked < 200) {
        Word w = random_reduced(rng, 12);
        if (!full_ab().in_N(w)) continue;
        ++checked;
        CHECK(full_ab().area_class(w)[0] == winding_area_of_word(full_ab(), w, 0, 1));
    }

    // additivity on N
    Rng rng2(22);
    int done = 0;
    while (done < 100) {
        Word u = random_reduced(rng2, 10), v = random_reduced(rng2, 10);
        if (!full_ab().in_N(u) || !full_ab().in_N(v)) continue;
        ++done;
        CHECK(full_ab().area_class(multiply(u, v))[0] ==
              full_ab().area_class(u)[0] + full_ab().area_class(v)[0]);
    }
}

TEST_CASE("mixed commutator membership") {
    CHECK(height().in_mixed_commutator(W("[a,b]")));
    CHECK_FALSE(full_ab().in_mixed_commutator(W("[a,b]")));
    CHECK(full_ab().in_mixed_commutator(W("")));
    CHECK(full_ab().in_mixed_commutator(multiply(W("[a,b]"), W("[a,B]"))));

    // simple mixed commutators always land in [G,N]
    Rng rng(23);
    int done = 0;
    while (done < 200) {
        Word g = random_reduced(rng, 8), x = random_reduced(rng, 8);
        const Marking& m = (done % 2 == 0) ? full_ab() : height();
        if (!m.in_N(x)) continue;
        ++done;
        CHECK(m.in_mixed_commutator(commutator(g, x)));
    }

    // conjugation invariance and multiplicativity
    Rng rng2(24);
    for (int it = 0; it < 300; ++it) {
        Word w = random_reduced(rng2, 10), g = random_reduced(rng2, 6);
        CHECK(full_ab().in_mixed_commutator(w) == full_ab().in_mixed_commutator(conjugated(g, w)));
        CHECK(height().in_mixed_commutator(w) == height().in_mixed_commutator(conjugated(g, w)));
    }
    Rng rng3(25);
    int both = 0;
    while (both < 50) {
        Word u = random_reduced(rng3, 10), v = random_reduced(rng3, 10);
        if (!height().in_mixed_commutator(u) || !height().in_mixed_commutator(v)) continue;
        ++both;
        CHECK(height().in_mixed_commutator(multiply(u, v)));
    }
}

TEST_CASE("membership oracle equivalence on short words") {
    // decision vs exhaustive products of <= 3 simple commutators, pieces <= 4
    BruteCommutatorOracle oracle(full_ab(), 4, 3);
    for (const Word& w : words_up_to(2, 6))
        CHECK(full_ab().in_mixed_commutator(w) == oracle.contains(w));
}

TEST_CASE("chain membership in C_Z") {
    const Marking& m = height();
    Word x1 = W("b"), x2 = W("abA");
    Chain1 c;
    c.add(x1, 1);
    c.add(x2, 1);
    c.add(multiply(x1, x2), -1);
    CHECK(chain_in_CZ(m, c));

    Chain1 single(W("[a,b]"));
    CHECK_FALSE(chain_in_CZ(full_ab(), single));
    CHECK(chain_in_CZ(full_ab(), Chain1(multiply(W("[a,b]"), W("[a,B]")))));

    Chain1 bad(W("a"));
    CHECK_THROWS_AS(chain_in_CZ(height(), bad), PreconditionError);

    // agreement with the arrangement/conjugation oracle on tiny chains
    std::vector<Word> support;
    for (const Word& w : words_up_to(2, 3))
        if (!w.empty() && m.in_N(w)) support.push_back(w);
    REQUIRE(support.size() == 10);
    for (std::size_t i = 0; i < support.size(); ++i) {
        for (std::size_t j = i + 1; j < support.size(); ++j) {
            for (int ci : {-1, 1}) {
                for (int cj : {-1, 1}) {
                    Chain1 c2;
                    c2.add(support[i], ci);
                    c2.add(support[j], cj);
                    if (c2.is_zero()) continue;
                    CHECK(chain_in_CZ(m, c2) == arrangement_oracle(m, c2, 2));
                }
            }
        }
    }
}

TEST_CASE("marking construction errors") {
    CHECK_THROWS_AS(Marking(0, {}), ParseError);
    CHECK_THROWS_AS(Marking(2, {{1}}), ParseError);
    CHECK_THROWS_AS(Marking(2, {}, {'a', 'a'}), ParseError);
    CHECK_THROWS_AS(Marking(2, {}, {'a', 'Z'}), ParseError);
}
