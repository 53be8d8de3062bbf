#pragma once

// Independent brute-force oracles used by the property suite and the tests.
// Everything here recomputes from first principles and must stay independent
// of the decision procedures it cross-checks.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "sclforge/chains.hpp"
#include "sclforge/core.hpp"
#include "sclforge/marking.hpp"
#include "sclforge/word.hpp"

namespace sclforge {

// Signed area of a closed rectilinear lattice loop, computed by summing the
// winding number of every unit square the loop touches (ray casting to the
// right along y = center). Independent route to the shoelace value.
inline long long winding_area(const std::vector<std::pair<long long, long long>>& steps) {
    long long x = 0, y = 0;
    long long minx = 0, maxx = 0, miny = 0, maxy = 0;
    std::vector<std::pair<long long, long long>> pos{{0, 0}};
    for (auto [dx, dy] : steps) {
        x += dx;
        y += dy;
        pos.push_back({x, y});
        minx = std::min(minx, x);
        maxx = std::max(maxx, x);
        miny = std::min(miny, y);
        maxy = std::max(maxy, y);
    }
    if (x != 0 || y != 0) throw PreconditionError("winding oracle needs a closed loop");
    long long total = 0;
    for (long long sy = miny - 1; sy <= maxy; ++sy) {
        for (long long sx = minx - 1; sx <= maxx; ++sx) {
            // winding of the square with center (sx + 1/2, sy + 1/2):
            // count signed crossings of vertical segments to the right of it
            long long wind = 0;
            for (std::size_t i = 0; i + 1 < pos.size(); ++i) {
                auto [x0, y0] = pos[i];
                auto [x1, y1] = pos[i + 1];
                if (x0 != x1) continue;  // horizontal step, no vertical crossing
                if (x0 <= sx) continue;  // segment not to the right
                long long lo = std::min(y0, y1), hi = std::max(y0, y1);
                if (lo <= sy && sy + 1 <= hi) wind += (y1 > y0) ? 1 : -1;
            }
            total += wind;
        }
    }
    return total;
}

// Winding-number area of the quotient path of w projected to coordinates
// (i, j) of Z^k; oracle counterpart of Marking::area_class.
inline long long winding_area_of_word(const Marking& m, const Word& w, int i, int j) {
    std::vector<std::pair<long long, long long>> steps;
    const auto& q = m.quotient_matrix();
    for (Letter l : w.letters()) {
        int idx = (l > 0 ? l : -l) - 1;
        long long s = l > 0 ? 1 : -1;
        steps.push_back({s * q[static_cast<std::size_t>(i)][static_cast<std::size_t>(idx)],
                         s * q[static_cast<std::size_t>(j)][static_cast<std::size_t>(idx)]});
    }
    return winding_area(steps);
}

namespace detail {

// 2-bit packing of rank-2 words up to 29 letters; used to keep the brute
// oracle's product sets small.
inline std::optional<std::uint64_t> pack_word2(const Word& w) {
    if (w.rank() != 2 || w.size() > 29) return std::nullopt;
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        Letter l = w.letters()[i];
        std::uint64_t code = l == 1 ? 0 : l == -1 ? 1 : l == 2 ? 2 : 3;
        bits |= code << (2 * i);
    }
    return (static_cast<std::uint64_t>(w.size()) << 58) | bits;
}

}  // namespace detail

// Exhaustive products of at most `max_terms` simple mixed commutators [g, x]
// with |g|, |x| <= piece_len and x in N. Sound and complete within those
// budgets; rank-2 markings only.
class BruteCommutatorOracle {
  public:
    BruteCommutatorOracle(const Marking& m, int piece_len, int max_terms)
        : max_terms_(max_terms) {
        if (m.rank() != 2) throw PreconditionError("brute oracle supports rank 2 only");
        if (max_terms < 1 || max_terms > 3) throw PreconditionError("brute oracle supports 1..3 terms");
        std::vector<Word> gs = words_up_to(2, piece_len);
        std::vector<Word> xs;
        for (const Word& x : gs)
            if (!x.empty() && m.in_N(x)) xs.push_back(x);
        std::vector<std::uint64_t> vals;
        values_.push_back(Word(2));
        for (const Word& g : gs) {
            for (const Word& x : xs) {
                Word v = commutator(g, x);
                auto key = detail::pack_word2(v);
                if (key) vals.push_back(*key);
            }
        }
        std::sort(vals.begin(), vals.end());
        vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
        v1_ = std::move(vals);
        for (std::uint64_t k : v1_) values_.push_back(unpack(k));

        if (max_terms >= 2) {
            std::vector<std::uint64_t> vv;
            vv.reserve(v1_.size() * v1_.size() / 4);
            for (const Word& a : values_) {
                for (const Word& b : values_) {
                    auto key = detail::pack_word2(multiply(a, b));
                    if (key) vv.push_back(*key);
                }
            }
            std::sort(vv.begin(), vv.end());
            vv.erase(std::unique(vv.begin(), vv.end()), vv.end());
            v2_ = std::move(vv);
        }
    }

    // Is w a product of at most max_terms simple mixed commutators (within
    // the piece budget)?
    bool contains(const Word& w) const {
        if (w.empty()) return true;
        auto key = detail::pack_word2(w);
        if (key && std::binary_search(v1_.begin(), v1_.end(), *key)) return true;
        if (max_terms_ >= 2 && key && std::binary_search(v2_.begin(), v2_.end(), *key)) return true;
        if (max_terms_ >= 3) {
            for (const Word& v : values_) {
                auto k2 = detail::pack_word2(multiply(inverse(v), w));
                if (k2 && std::binary_search(v2_.begin(), v2_.end(), *k2)) return true;
            }
        }
        return false;
    }

  private:
    static Word unpack(std::uint64_t key) {
        std::size_t len = key >> 58;
        Word w(2);
        for (std::size_t i = 0; i < len; ++i) {
            std::uint64_t code = (key >> (2 * i)) & 3;
            Letter l = code == 0 ? 1 : code == 1 ? -1 : code == 2 ? 2 : -2;
            w.push(l);
        }
        return w;
    }

    int max_terms_;
    std::vector<std::uint64_t> v1_, v2_;
    std::vector<Word> values_;  // identity + single-commutator values
};

// Arrangement/conjugation oracle for integral chains: expand the multiset,
// try every ordering of the positive and negative blocks and every conjugator
// assignment up to the given length, and ask whether some assembled product
// lands in [G, N].
inline bool arrangement_oracle(const Marking& m, const Chain1& c, int conj_len) {
    std::vector<Word> pos, neg;
    for (const auto& [w, coeff] : c.terms()) {
        if (coeff.get_den() != 1) throw PreconditionError("arrangement oracle needs an integral chain");
        long n = coeff.get_num().get_si();
        for (long i = 0; i < n; ++i) pos.push_back(w);
        for (long i = 0; i < -n; ++i) neg.push_back(w);
        if (!m.in_N(w)) throw PreconditionError("arrangement oracle needs support in N");
    }
    std::vector<Word> conjs = words_up_to(m.rank(), conj_len);
    std::size_t total = pos.size() + neg.size();
    if (total == 0) return m.in_mixed_commutator(Word(m.rank()));

    std::sort(pos.begin(), pos.end());
    std::sort(neg.begin(), neg.end());
    bool found = false;
    do {
        do {
            // conjugator assignment loop, odometer-style
            std::vector<std::size_t> idx(total, 0);
            while (true) {
                Word p(m.rank());
                for (std::size_t i = 0; i < pos.size(); ++i)
                    p = multiply(p, conjugated(conjs[idx[i]], pos[i]));
                for (std::size_t i = 0; i < neg.size(); ++i)
                    p = multiply(p, inverse(conjugated(conjs[idx[pos.size() + i]], neg[i])));
                if (m.in_mixed_commutator(p)) {
                    found = true;
                    break;
                }
                std::size_t d = 0;
                while (d < total && ++idx[d] == conjs.size()) idx[d++] = 0;
                if (d == total) break;
            }
            if (found) break;
        } while (std::next_permutation(neg.begin(), neg.end()));
        if (found) break;
    } while (std::next_permutation(pos.begin(), pos.end()));
    return found;
}

}  // namespace sclforge
