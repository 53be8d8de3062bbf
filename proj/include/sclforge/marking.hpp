#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "sclforge/core.hpp"
#include "sclforge/word.hpp"

namespace sclforge {

// Obstruction class of a word in N modulo [G,N]: full abelianization plus the
// pairwise signed areas of the quotient-image loop. Vanishes exactly on [G,N]
// when the quotient is Z^k.
struct MixedClass {
    std::vector<long long> abelian;  // Z^rank
    std::vector<long long> area;     // Z^(k(k-1)/2), pairs (i,j) with i<j in row-major order

    bool is_zero() const {
        auto z = [](long long v) { return v == 0; };
        return std::all_of(abelian.begin(), abelian.end(), z) &&
               std::all_of(area.begin(), area.end(), z);
    }

    MixedClass& operator+=(const MixedClass& o) {
        for (std::size_t i = 0; i < abelian.size(); ++i) abelian[i] += o.abelian[i];
        for (std::size_t i = 0; i < area.size(); ++i) area[i] += o.area[i];
        return *this;
    }

    MixedClass& add_scaled(const MixedClass& o, long long s) {
        for (std::size_t i = 0; i < abelian.size(); ++i) abelian[i] += s * o.abelian[i];
        for (std::size_t i = 0; i < area.size(); ++i) area[i] += s * o.area[i];
        return *this;
    }

    friend bool operator==(const MixedClass& a, const MixedClass& b) {
        return a.abelian == b.abelian && a.area == b.area;
    }
};

// The pair (G, N): a free group of the given rank with a homomorphism p onto a
// subgroup of Z^k, N = ker p. k = 0 encodes the ordinary pair (G, G).
class Marking {
  public:
    Marking(int rank, std::vector<std::vector<long long>> quotient_matrix,
            std::vector<char> labels = {})
        : rank_(rank), quotient_(std::move(quotient_matrix)), labels_(std::move(labels)) {
        if (rank_ < 1 || rank_ > 26) throw ParseError("marking rank must be in 1..26");
        if (labels_.empty())
            for (int i = 1; i <= rank_; ++i) labels_.push_back(default_label(i));
        if (static_cast<int>(labels_.size()) != rank_)
            throw ParseError("marking needs one label per generator");
        for (std::size_t i = 0; i < labels_.size(); ++i) {
            char c = labels_[i];
            if (c < 'a' || c > 'z') throw ParseError("generator labels must be lowercase letters");
            for (std::size_t j = 0; j < i; ++j)
                if (labels_[j] == c) throw ParseError("duplicate generator label");
        }
        for (const auto& row : quotient_)
            if (static_cast<int>(row.size()) != rank_)
                throw ParseError("quotient matrix row width must equal rank");
    }

    static Marking ordinary(int rank) { return Marking(rank, {}); }

    int rank() const { return rank_; }
    int quotient_rank() const { return static_cast<int>(quotient_.size()); }
    const std::vector<std::vector<long long>>& quotient_matrix() const { return quotient_; }
    const std::vector<char>& labels() const { return labels_; }
    bool is_ordinary() const { return quotient_.empty(); }

    // The same generators with the pair (G, G); ordinary scl is mixed scl of this view.
    Marking ordinary_view() const { return Marking(rank_, {}, labels_); }

    int area_dim() const {
        int k = quotient_rank();
        return k * (k - 1) / 2;
    }

    Word parse(const std::string& s) const { return parse_word(s, rank_, labels_); }
    std::string format(const Word& w) const { return format_word(w, labels_); }

    void require_rank(const Word& w) const {
        if (w.rank() != rank_)
            throw RankMismatchError("word rank " + std::to_string(w.rank()) +
                                    " does not match marking rank " + std::to_string(rank_));
    }

    std::vector<long long> abelianize(const Word& w) const {
        require_rank(w);
        std::vector<long long> v(static_cast<std::size_t>(rank_), 0);
        for (Letter l : w.letters()) {
            int idx = l > 0 ? l : -l;
            v[static_cast<std::size_t>(idx - 1)] += l > 0 ? 1 : -1;
        }
        return v;
    }

    std::vector<long long> quotient_image(const Word& w) const {
        auto ab = abelianize(w);
        std::vector<long long> img(quotient_.size(), 0);
        for (std::size_t r = 0; r < quotient_.size(); ++r)
            img[r] = std::inner_product(quotient_[r].begin(), quotient_[r].end(), ab.begin(), 0LL);
        return img;
    }

    bool in_N(const Word& w) const {
        auto img = quotient_image(w);
        return std::all_of(img.begin(), img.end(), [](long long v) { return v == 0; });
    }

    // Signed shoelace areas of the closed lattice path traced by the quotient
    // images of the prefixes of w, one entry per coordinate pair i<j.
    std::vector<long long> area_class(const Word& w) const {
        if (!in_N(w)) throw PreconditionError("area class requires a word in N");
        int k = quotient_rank();
        std::vector<long long> twice(static_cast<std::size_t>(area_dim()), 0);
        std::vector<long long> pos(static_cast<std::size_t>(k), 0);
        for (Letter l : w.letters()) {
            int idx = (l > 0 ? l : -l) - 1;
            long long sign = l > 0 ? 1 : -1;
            std::size_t t = 0;
            for (int i = 0; i < k; ++i) {
                for (int j = i + 1; j < k; ++j, ++t) {
                    long long di = sign * quotient_[static_cast<std::size_t>(i)][static_cast<std::size_t>(idx)];
                    long long dj = sign * quotient_[static_cast<std::size_t>(j)][static_cast<std::size_t>(idx)];
                    twice[t] += pos[static_cast<std::size_t>(i)] * dj - pos[static_cast<std::size_t>(j)] * di;
                }
            }
            for (int i = 0; i < k; ++i)
                pos[static_cast<std::size_t>(i)] +=
                    sign * quotient_[static_cast<std::size_t>(i)][static_cast<std::size_t>(idx)];
        }
        for (auto& v : twice) {
            if (v % 2 != 0) throw InternalSoundnessError("shoelace area of a closed loop must be an integer");
            v /= 2;
        }
        return twice;
    }

    // Defined for w in N only; the class is additive and conjugation-invariant there.
    MixedClass mixed_class(const Word& w) const {
        MixedClass c;
        c.abelian = abelianize(w);
        c.area = area_class(w);
        return c;
    }

    // Membership in the mixed commutator subgroup [G, N].
    bool in_mixed_commutator(const Word& w) const {
        auto ab = abelianize(w);
        if (!std::all_of(ab.begin(), ab.end(), [](long long v) { return v == 0; })) return false;
        auto ar = area_class(w);
        return std::all_of(ar.begin(), ar.end(), [](long long v) { return v == 0; });
    }

  private:
    int rank_;
    std::vector<std::vector<long long>> quotient_;
    std::vector<char> labels_;
};

}  // namespace sclforge
