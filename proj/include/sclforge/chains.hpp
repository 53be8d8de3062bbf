#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "sclforge/core.hpp"
#include "sclforge/marking.hpp"
#include "sclforge/word.hpp"

namespace sclforge {

// Finitely supported rational 1-chain. Stored zero-free; support words are
// freely reduced by construction of Word. Deterministic iteration order.
class Chain1 {
  public:
    using Terms = std::map<Word, Rational>;

    Chain1() = default;
    explicit Chain1(const Word& w) { add(w, 1); }

    void add(const Word& w, const Rational& coeff) {
        if (coeff == 0) return;
        auto [it, inserted] = terms_.try_emplace(w, coeff);
        if (!inserted) {
            it->second += coeff;
            if (it->second == 0) terms_.erase(it);
        }
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t support_size() const { return terms_.size(); }

    Rational coeff(const Word& w) const {
        auto it = terms_.find(w);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    Chain1& operator+=(const Chain1& o) {
        for (const auto& [w, c] : o.terms_) add(w, c);
        return *this;
    }
    friend Chain1 operator+(Chain1 a, const Chain1& b) { return a += b; }
    friend Chain1 operator-(const Chain1& a, const Chain1& b) { return a + (b * Rational(-1)); }
    friend Chain1 operator*(const Chain1& a, const Rational& s) {
        Chain1 r;
        if (s != 0)
            for (const auto& [w, c] : a.terms_) r.terms_.emplace(w, c * s);
        return r;
    }
    friend Chain1 operator*(const Rational& s, const Chain1& a) { return a * s; }

    friend bool operator==(const Chain1& a, const Chain1& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Chain1& a, const Chain1& b) { return !(a == b); }

    Rational l1_norm() const {
        Rational s = 0;
        for (const auto& [w, c] : terms_) s += abs(c);
        return s;
    }

    bool is_integral() const {
        for (const auto& [w, c] : terms_)
            if (c.get_den() != 1) return false;
        return true;
    }

    // Least l >= 1 with l*this integral.
    mpz_class denominator_lcm() const {
        mpz_class l = 1;
        for (const auto& [w, c] : terms_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
        return l;
    }

    // Support words raised to the k-th power, coefficients kept.
    Chain1 power_support(long k) const {
        Chain1 r;
        for (const auto& [w, c] : terms_) r.add(power(w, k), c);
        return r;
    }

  private:
    Terms terms_;
};

// Finitely supported rational 2-chain on ordered pairs of group elements.
class Chain2 {
  public:
    using Key = std::pair<Word, Word>;
    using Terms = std::map<Key, Rational>;

    Chain2() = default;

    void add(const Word& g1, const Word& g2, const Rational& coeff) {
        if (coeff == 0) return;
        Key k{g1, g2};
        auto [it, inserted] = terms_.try_emplace(k, coeff);
        if (!inserted) {
            it->second += coeff;
            if (it->second == 0) terms_.erase(it);
        }
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Chain2& operator+=(const Chain2& o) {
        for (const auto& [k, c] : o.terms_) add(k.first, k.second, c);
        return *this;
    }
    friend Chain2 operator+(Chain2 a, const Chain2& b) { return a += b; }
    friend Chain2 operator*(const Chain2& a, const Rational& s) {
        Chain2 r;
        if (s != 0)
            for (const auto& [k, c] : a.terms_) r.terms_.emplace(k, c * s);
        return r;
    }

    friend bool operator==(const Chain2& a, const Chain2& b) { return a.terms_ == b.terms_; }

    Rational l1_norm() const {
        Rational s = 0;
        for (const auto& [k, c] : terms_) s += abs(c);
        return s;
    }

  private:
    Terms terms_;
};

// d((g1,g2)) = g2 - g1 g2 + g1, extended linearly.
inline Chain1 boundary(const Chain2& c2) {
    Chain1 out;
    for (const auto& [k, c] : c2.terms()) {
        out.add(k.second, c);
        out.add(multiply(k.first, k.second), -c);
        out.add(k.first, c);
    }
    return out;
}

// Every support pair must have at least one component in N.
inline bool validate_mixed_support(const Marking& m, const Chain2& c2) {
    for (const auto& [k, c] : c2.terms())
        if (!m.in_N(k.first) && !m.in_N(k.second)) return false;
    return true;
}

// Collapse every support word to (exponent * primitive root). This is a
// complete normal form for the span of { x^k - k x }: every element of a free
// group has a unique primitive root, so two finitely supported chains are
// congruent modulo that span iff their collapsed forms agree.
inline Chain1 h_normal_form(const Chain1& c) {
    Chain1 out;
    for (const auto& [w, coeff] : c.terms()) {
        RootDecomposition rd = primitive_root(w);
        if (rd.exponent == 0) continue;
        out.add(rd.root, coeff * Rational(rd.exponent));
    }
    return out;
}

// Sum of coefficient-weighted obstruction classes of an integral chain
// supported in N. Throws if a support word is outside N or a coefficient is
// not an integer.
inline MixedClass chain_class_sum(const Marking& m, const Chain1& c) {
    MixedClass sum;
    sum.abelian.assign(static_cast<std::size_t>(m.rank()), 0);
    sum.area.assign(static_cast<std::size_t>(m.area_dim()), 0);
    for (const auto& [w, coeff] : c.terms()) {
        if (coeff.get_den() != 1) throw PreconditionError("chain_in_CZ needs integer coefficients");
        if (!m.in_N(w)) throw PreconditionError("chain support word not in N: " + m.format(w));
        if (!coeff.get_num().fits_slong_p()) throw PreconditionError("chain coefficient too large");
        sum.add_scaled(m.mixed_class(w), coeff.get_num().get_si());
    }
    return sum;
}

// Integral-chain membership in C_Z(G, N): the class of any arranged,
// conjugated product of the support multiset is the coefficient-weighted sum
// of classes, so the chain admits a product in [G,N] iff that sum vanishes.
inline bool chain_in_CZ(const Marking& m, const Chain1& c) {
    return chain_class_sum(m, c).is_zero();
}

// Rational-chain membership in C_Q(G, N), by clearing denominators.
inline bool chain_in_CQ(const Marking& m, const Chain1& c) {
    Rational l(c.denominator_lcm());
    return chain_in_CZ(m, c * l);
}

struct ScaleApproximation {
    long k = 0;          // scaling factor, k = l * t
    Word witness;        // y in [G,N]
    long l = 0;          // denominator clearing factor
    long t = 0;          // power applied to each multiset entry
    long block_count = 0;  // m + m' in the multiset expansion of l*c
};

// Scaling-up approximation of a rational chain by a single group element:
// clear denominators, expand the multiset, choose the least t with
// m + m' <= eps*l*t, and return k = l*t with y the t-th-power product.
// For every homogeneous quasimorphism with defect bound D this guarantees
// |mu(k c) - mu(y)| <= (m + m') * D <= eps * k * D; the inequality is
// mechanically re-checked against every certificate passed in.
inline ScaleApproximation scale_approximate(const Marking& m, const Chain1& c, const Rational& eps) {
    if (eps <= 0) throw PreconditionError("scale_approximate needs eps > 0");
    mpz_class lz = c.denominator_lcm();
    if (!lz.fits_slong_p()) throw PreconditionError("denominator lcm too large");
    long l = lz.get_si();
    Chain1 lc = c * Rational(lz);
    if (!chain_in_CZ(m, lc))
        throw NotInSubgroupError("chain is not in C_Q(G,N); scaling approximation undefined");

    std::vector<Word> pos, neg;
    for (const auto& [w, coeff] : lc.terms()) {
        long n = coeff.get_num().get_si();
        for (long i = 0; i < n; ++i) pos.push_back(w);
        for (long i = 0; i < -n; ++i) neg.push_back(w);
    }
    long blocks = static_cast<long>(pos.size() + neg.size());

    // least t >= 1 with blocks <= eps * l * t
    Rational lhs(blocks);
    Rational per = eps * Rational(l);
    Rational tq = lhs / per;
    mpz_class tz;
    mpz_cdiv_q(tz.get_mpz_t(), tq.get_num().get_mpz_t(), tq.get_den().get_mpz_t());
    long t = std::max(1L, static_cast<long>(tz.get_si()));

    Word y(m.rank());
    for (const Word& x : pos) y = multiply(y, power(x, t));
    for (const Word& x : neg) y = multiply(y, power(x, -t));
    if (!m.in_mixed_commutator(y))
        throw InternalSoundnessError("scaling approximation produced a witness outside [G,N]");

    return ScaleApproximation{l * t, y, l, t, blocks};
}

}  // namespace sclforge
