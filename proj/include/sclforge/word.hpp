#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sclforge/core.hpp"

namespace sclforge {

// Letter encoding: +i is generator i (1-based), -i its inverse.
using Letter = std::int8_t;

// Total order on letters: generator index ascending, '+' before '-'.
inline int letter_key(Letter l) {
    int idx = l > 0 ? l : -l;
    return (idx - 1) * 2 + (l < 0 ? 1 : 0);
}

// Freely reduced word in a free group of the given rank. Immutable by
// convention: every operation returns a fresh value.
class Word {
  public:
    Word() = default;
    explicit Word(int rank) : rank_(check_rank(rank)) {}

    static Word from_letters(int rank, const std::vector<Letter>& raw) {
        Word w(rank);
        for (Letter l : raw) w.push(l);
        return w;
    }

    int rank() const { return rank_; }
    const std::vector<Letter>& letters() const { return letters_; }
    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    Letter at(std::size_t i) const { return letters_[i]; }

    // Incremental reduction: cancels against the current last letter.
    void push(Letter l) {
        int idx = l > 0 ? l : -l;
        if (idx < 1 || idx > rank_)
            throw Error("generator index out of range: " + std::to_string(idx) +
                        " for rank " + std::to_string(rank_));
        if (!letters_.empty() && letters_.back() == static_cast<Letter>(-l))
            letters_.pop_back();
        else
            letters_.push_back(l);
    }

    friend bool operator==(const Word& a, const Word& b) {
        return a.rank_ == b.rank_ && a.letters_ == b.letters_;
    }
    friend bool operator!=(const Word& a, const Word& b) { return !(a == b); }

    // Length-lexicographic; deterministic tie-break everywhere downstream.
    friend bool operator<(const Word& a, const Word& b) {
        if (a.letters_.size() != b.letters_.size()) return a.letters_.size() < b.letters_.size();
        for (std::size_t i = 0; i < a.letters_.size(); ++i) {
            int ka = letter_key(a.letters_[i]), kb = letter_key(b.letters_[i]);
            if (ka != kb) return ka < kb;
        }
        return a.rank_ < b.rank_;
    }
    friend bool operator<=(const Word& a, const Word& b) { return !(b < a); }
    friend bool operator>(const Word& a, const Word& b) { return b < a; }
    friend bool operator>=(const Word& a, const Word& b) { return !(a < b); }

  private:
    static int check_rank(int rank) {
        if (rank < 0 || rank > 26) throw Error("rank out of range: " + std::to_string(rank));
        return rank;
    }

    int rank_ = 0;
    std::vector<Letter> letters_;
};

inline void require_same_rank(const Word& a, const Word& b) {
    if (a.rank() != b.rank())
        throw RankMismatchError("rank mismatch: " + std::to_string(a.rank()) + " vs " +
                                std::to_string(b.rank()));
}

inline Word reduce(int rank, const std::vector<Letter>& raw) { return Word::from_letters(rank, raw); }

inline Word multiply(const Word& u, const Word& v) {
    require_same_rank(u, v);
    Word w = u;
    for (Letter l : v.letters()) w.push(l);
    return w;
}

inline Word inverse(const Word& w) {
    Word r(w.rank());
    for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it)
        r.push(static_cast<Letter>(-*it));
    return r;
}

// g w g^{-1}
inline Word conjugated(const Word& g, const Word& w) {
    return multiply(multiply(g, w), inverse(g));
}

inline Word power(const Word& w, long k) {
    Word base = k < 0 ? inverse(w) : w;
    long n = k < 0 ? -k : k;
    Word r(w.rank());
    for (long i = 0; i < n; ++i) r = multiply(r, base);
    return r;
}

// [g, x] = g x g^{-1} x^{-1}
inline Word commutator(const Word& g, const Word& x) {
    require_same_rank(g, x);
    return multiply(multiply(g, x), multiply(inverse(g), inverse(x)));
}

// w = conjugator . core . conjugator^{-1} with core cyclically reduced.
inline std::pair<Word, Word> cyclic_reduce(const Word& w) {
    const auto& ls = w.letters();
    std::size_t i = 0, j = ls.size();
    while (j - i >= 2 && ls[i] == static_cast<Letter>(-ls[j - 1])) {
        ++i;
        --j;
    }
    Word core(w.rank()), conj(w.rank());
    for (std::size_t t = i; t < j; ++t) core.push(ls[t]);
    for (std::size_t t = 0; t < i; ++t) conj.push(ls[t]);
    return {core, conj};
}

struct RootDecomposition {
    Word root;       // primitive, canonically oriented
    long exponent;   // root^exponent == original word; 0 only for the identity
};

// Maximal-root extraction. Conjugation is peeled off first, so proper powers
// hidden behind a conjugator (e.g. a b^2 a^{-1}) are still detected; on the
// cyclically reduced core a power decomposes without cancellation, which makes
// divisor enumeration complete there.
inline RootDecomposition primitive_root(const Word& w) {
    if (w.empty()) return {Word(w.rank()), 0};
    auto [core, conj] = cyclic_reduce(w);
    const auto& ls = core.letters();
    std::size_t n = ls.size();
    std::size_t root_len = n;
    for (std::size_t d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        bool ok = true;
        for (std::size_t i = d; i < n && ok; ++i) ok = ls[i] == ls[i % d];
        if (ok) {
            root_len = d;
            break;
        }
    }
    Word root_core(w.rank());
    for (std::size_t i = 0; i < root_len; ++i) root_core.push(ls[i]);
    long exp = static_cast<long>(n / root_len);
    Word root = multiply(multiply(conj, root_core), inverse(conj));
    Word rinv = inverse(root);
    if (rinv < root) {
        root = rinv;
        exp = -exp;
    }
    return {root, exp};
}

inline char default_label(int index) { return static_cast<char>('a' + index - 1); }

// Serialization: generator names as lowercase letters, case flip = inverse.
inline std::string format_word(const Word& w, const std::vector<char>& labels = {}) {
    std::string out;
    out.reserve(w.size());
    for (Letter l : w.letters()) {
        int idx = l > 0 ? l : -l;
        char c = labels.empty() ? default_label(idx) : labels[static_cast<std::size_t>(idx - 1)];
        out += l > 0 ? c : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
    return out;
}

namespace detail {

inline int label_index(char c, int rank, const std::vector<char>& labels) {
    char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (labels.empty()) {
        int idx = lower - 'a' + 1;
        if (idx < 1 || idx > rank) return 0;
        return idx;
    }
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == lower) return static_cast<int>(i) + 1;
    return 0;
}

struct WordParser {
    const std::string& s;
    std::size_t pos = 0;
    int rank;
    const std::vector<char>& labels;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    long parse_int() {
        skip_ws();
        bool neg = eat('-');
        skip_ws();
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
            throw ParseError("expected integer at position " + std::to_string(pos) + " in \"" + s + "\"");
        long v = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            v = v * 10 + (s[pos] - '0');
            if (v > 1000000) throw ParseError("exponent too large in \"" + s + "\"");
            ++pos;
        }
        return neg ? -v : v;
    }

    // word := factor*; factor := atom ('^' int)?;
    // atom := letter | '(' word ')' | '[' word ',' word ']'
    Word parse_word(bool top) {
        Word acc(rank);
        while (true) {
            skip_ws();
            if (pos >= s.size()) break;
            char c = s[pos];
            if (c == ')' || c == ',' || c == ']') {
                if (top) throw ParseError("unexpected '" + std::string(1, c) + "' in \"" + s + "\"");
                break;
            }
            Word atom(rank);
            if (eat('(')) {
                atom = parse_word(false);
                if (!eat(')')) throw ParseError("missing ')' in \"" + s + "\"");
            } else if (eat('[')) {
                Word g = parse_word(false);
                if (!eat(',')) throw ParseError("missing ',' in commutator in \"" + s + "\"");
                Word x = parse_word(false);
                if (!eat(']')) throw ParseError("missing ']' in \"" + s + "\"");
                atom = commutator(g, x);
            } else if (std::isalpha(static_cast<unsigned char>(c))) {
                ++pos;
                int idx = label_index(c, rank, labels);
                if (idx == 0) throw ParseError("unknown generator '" + std::string(1, c) + "' in \"" + s + "\"");
                bool inv = std::isupper(static_cast<unsigned char>(c));
                atom.push(static_cast<Letter>(inv ? -idx : idx));
            } else {
                throw ParseError("unexpected character '" + std::string(1, c) + "' in \"" + s + "\"");
            }
            if (eat('^')) atom = power(atom, parse_int());
            acc = multiply(acc, atom);
        }
        return acc;
    }
};

}  // namespace detail

// Accepts "abAB", "(ab)^3", "[a,b^8]", "a^-2".
inline Word parse_word(const std::string& s, int rank, const std::vector<char>& labels = {}) {
    detail::WordParser p{s, 0, rank, labels};
    Word w = p.parse_word(true);
    p.skip_ws();
    if (p.pos != s.size()) throw ParseError("trailing input in \"" + s + "\"");
    return w;
}

// All reduced words of length <= n, in length-lexicographic order.
inline std::vector<Word> words_up_to(int rank, int n) {
    std::vector<Word> res;
    res.push_back(Word(rank));
    std::size_t level_begin = 0, level_end = 1;
    for (int len = 1; len <= n; ++len) {
        for (std::size_t i = level_begin; i < level_end; ++i) {
            Word base = res[i];  // copy; push_back below may reallocate
            for (int idx = 1; idx <= rank; ++idx) {
                for (int sign = 0; sign < 2; ++sign) {
                    Letter l = static_cast<Letter>(sign == 0 ? idx : -idx);
                    if (!base.empty() && base.letters().back() == static_cast<Letter>(-l)) continue;
                    Word w = base;
                    w.push(l);
                    res.push_back(std::move(w));
                }
            }
        }
        level_begin = level_end;
        level_end = res.size();
    }
    return res;
}

}  // namespace sclforge
