#include <catch2/catch_amalgamated.hpp>

#include "sclforge/word.hpp"

using namespace sclforge;

namespace {
Word W(const std::string& s, int rank = 2) { return parse_word(s, rank); }
}  // namespace

TEST_CASE("free reduction") {
    CHECK(W("aA").empty());
    CHECK(W("abBA").empty());
    CHECK(format_word(W("abAB")) == "abAB");

    // idempotence on raw letter sequences
    Rng rng(11);
    for (int it = 0; it < 200; ++it) {
        std::vector<Letter> raw;
        int len = static_cast<int>(rng.below(40));
        for (int i = 0; i < len; ++i) {
            int idx = 1 + static_cast<int>(rng.below(2));
            raw.push_back(static_cast<Letter>(rng.below(2) ? idx : -idx));
        }
        Word once = reduce(2, raw);
        Word twice = Word::from_letters(2, once.letters());
        CHECK(once == twice);
    }
}

TEST_CASE("multiplication") {
    CHECK(multiply(W("a"), W("A")).empty());
    CHECK(format_word(multiply(W("ab"), W("Ba"))) == "aa");
    // product of abab with (ab)^-1, against plain reduction of the concatenation
    Word lhs = multiply(W("abab"), inverse(W("ab")));
    std::vector<Letter> concat = W("abab").letters();
    Word abinv = inverse(W("ab"));
    for (Letter l : abinv.letters()) concat.push_back(l);
    CHECK(lhs == reduce(2, concat));
    CHECK(format_word(lhs) == "ab");

    CHECK_THROWS_AS(multiply(W("a", 2), W("c", 3)), RankMismatchError);

    Rng rng(12);
    for (int it = 0; it < 1000; ++it) {
        std::vector<Letter> raw;
        int len = static_cast<int>(rng.below(65));
        for (int i = 0; i < len; ++i) {
            int idx = 1 + static_cast<int>(rng.below(2));
            raw.push_back(static_cast<Letter>(rng.below(2) ? idx : -idx));
        }
        Word w = reduce(2, raw);
        CHECK(multiply(w, inverse(w)).empty());
    }

    // associativity spot check
    Rng rng2(13);
    for (int it = 0; it < 100; ++it) {
        auto rand_word = [&](Rng& r) {
            std::vector<Letter> raw;
            int len = static_cast<int>(r.below(12));
            for (int i = 0; i < len; ++i) {
                int idx = 1 + static_cast<int>(r.below(2));
                raw.push_back(static_cast<Letter>(r.below(2) ? idx : -idx));
            }
            return reduce(2, raw);
        };
        Word a = rand_word(rng2), b = rand_word(rng2), c = rand_word(rng2);
        CHECK(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)));
    }
}

TEST_CASE("commutator") {
    CHECK(format_word(commutator(W("a"), W("b"))) == "abAB");
    CHECK(commutator(W(""), W("ab")).empty());
    CHECK(commutator(W("a"), W("aaa")).empty());
}

TEST_CASE("cyclic reduction") {
    auto [core1, conj1] = cyclic_reduce(W("abA"));
    CHECK(format_word(core1) == "b");
    CHECK(format_word(conj1) == "a");

    auto [core2, conj2] = cyclic_reduce(W("abab"));
    CHECK(core2 == W("abab"));
    CHECK(conj2.empty());

    Word w = multiply(multiply(W("B"), W("abAB")), W("b"));
    auto [core3, conj3] = cyclic_reduce(w);
    CHECK(multiply(multiply(conj3, core3), inverse(conj3)) == w);
    CHECK(core3.size() == 4);

    Rng rng(14);
    for (int it = 0; it < 300; ++it) {
        std::vector<Letter> raw;
        int len = static_cast<int>(rng.below(24));
        for (int i = 0; i < len; ++i) {
            int idx = 1 + static_cast<int>(rng.below(2));
            raw.push_back(static_cast<Letter>(rng.below(2) ? idx : -idx));
        }
        Word v = reduce(2, raw);
        auto [core, conj] = cyclic_reduce(v);
        CHECK(multiply(multiply(conj, core), inverse(conj)) == v);
        if (core.size() >= 2) CHECK(core.letters().front() != static_cast<Letter>(-core.letters().back()));
    }
}

TEST_CASE("primitive root") {
    auto r1 = primitive_root(W("abab"));
    CHECK(format_word(r1.root) == "ab");
    CHECK(r1.exponent == 2);

    auto r2 = primitive_root(W("AAA"));
    CHECK(format_word(r2.root) == "a");
    CHECK(r2.exponent == -3);

    auto r3 = primitive_root(W(""));
    CHECK(r3.exponent == 0);
    CHECK(r3.root.empty());

    // hidden behind a conjugator: a b^2 a^-1 = (a b a^-1)^2
    auto r4 = primitive_root(W("abbA"));
    CHECK(format_word(r4.root) == "abA");
    CHECK(r4.exponent == 2);

    // maximality of [a,b] root, against a brute scan over all candidate roots
    auto r5 = primitive_root(W("abAB"));
    CHECK(r5.root == W("abAB"));
    CHECK(r5.exponent == 1);
    for (const Word& cand : words_up_to(2, 4))
        for (long k = 2; k <= 4; ++k) CHECK(power(cand, k) != W("abAB"));

    // round trip on random words
    Rng rng(15);
    for (int it = 0; it < 500; ++it) {
        std::vector<Letter> raw;
        int len = static_cast<int>(rng.below(20));
        for (int i = 0; i < len; ++i) {
            int idx = 1 + static_cast<int>(rng.below(2));
            raw.push_back(static_cast<Letter>(rng.below(2) ? idx : -idx));
        }
        Word base = reduce(2, raw);
        long k = static_cast<long>(rng.below(7)) - 3;
        Word w = power(base, k);
        auto rd = primitive_root(w);
        CHECK(power(rd.root, rd.exponent) == w);
        if (!w.empty()) {
            Word ri = inverse(rd.root);
            CHECK(rd.root <= ri);
        }
    }
}

TEST_CASE("parser and formatting") {
    CHECK(W("[a,b]") == commutator(W("a"), W("b")));
    CHECK(W("[a,b^8]") == commutator(W("a"), power(W("b"), 8)));
    CHECK(W("(ab)^3") == power(W("ab"), 3));
    CHECK(W("a^-2") == power(W("a"), -2));
    CHECK(W(" a b ") == W("ab"));
    CHECK(W("b^0").empty());
    CHECK_THROWS_AS(W("c"), ParseError);
    CHECK_THROWS_AS(W("(ab"), ParseError);
    CHECK_THROWS_AS(W("[a b]"), ParseError);
    CHECK_THROWS_AS(W("a^"), ParseError);

    // round trip through the serialization
    Rng rng(16);
    for (int it = 0; it < 200; ++it) {
        std::vector<Letter> raw;
        int len = static_cast<int>(rng.below(30));
        for (int i = 0; i < len; ++i) {
            int idx = 1 + static_cast<int>(rng.below(2));
            raw.push_back(static_cast<Letter>(rng.below(2) ? idx : -idx));
        }
        Word w = reduce(2, raw);
        CHECK(parse_word(format_word(w), 2) == w);
    }
}

TEST_CASE("word ordering is length-lexicographic") {
    CHECK(W("") < W("a"));
    CHECK(W("a") < W("A"));
    CHECK(W("A") < W("b"));
    CHECK(W("b") < W("B"));
    CHECK(W("B") < W("aa"));
    auto all = words_up_to(2, 3);
    for (std::size_t i = 1; i < all.size(); ++i) CHECK(all[i - 1] < all[i]);
}
