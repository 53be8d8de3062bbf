#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sclforge/chains.hpp"
#include "sclforge/core.hpp"
#include "sclforge/lp.hpp"
#include "sclforge/qm.hpp"
#include "sclforge/search.hpp"

namespace sclforge {

struct BoundsBudget {
    int k_max = 5;
    int length_budget = 4;  // filling-norm truncation
    SearchBudget search;
    ChainClBudget chain;
};

struct StabilizationEntry {
    long k = 0;
    std::optional<Rational> value;  // cl_upper(y^k) / k when the search succeeded
    std::optional<ClCertificate> cert;
};

// Entries are valid upper bounds for scl individually (scl(y) = inf_k cl(y^k)/k
// by subadditivity); the sequence is reported even when budget effects make it
// non-monotone.
inline std::vector<StabilizationEntry> stabilization_sequence(const Marking& m, const Word& y,
                                                              Mode mode, int k_max,
                                                              const SearchBudget& budget = {}) {
    Marking em = effective_marking(m, mode);
    if (!em.in_mixed_commutator(y))
        throw NotInSubgroupError("stabilization needs y in the subgroup");
    std::vector<StabilizationEntry> out;
    for (long k = 1; k <= k_max; ++k) {
        StabilizationEntry e;
        e.k = k;
        auto cert = cl_upper_search(m, power(y, k), mode, budget);
        if (cert) {
            e.value = Rational(static_cast<long>(cert->pairs.size())) / Rational(k);
            e.cert = std::move(cert);
        }
        out.push_back(std::move(e));
    }
    return out;
}

struct StabilizationWitness {
    long k = 0;
    ClCertificate cert;
};
using UpperWitness = std::variant<std::monostate, StabilizationWitness, FillingCertificate>;

// Carries the full combination so the bound re-verifies independently of the
// interval computation.
struct LowerWitness {
    BrooksCombination certificate;
    Rational evaluated;  // q(c), whose |.| / (2 defect_bound) is the bound
};

struct BoundInterval {
    Rational lower = 0;
    ExtRational upper = ExtRational::inf();
    Mode mode = Mode::ordinary;
    std::optional<LowerWitness> lower_cert;
    UpperWitness upper_cert;
    std::vector<StabilizationEntry> stabilization;
    std::optional<Rational> filling_upper;  // 2 * this bounds the h-relaxed norm
};

namespace detail {

inline void enforce_order(const BoundInterval& iv) {
    if (ExtRational(iv.lower) > iv.upper)
        throw InternalSoundnessError("certified lower bound exceeds certified upper bound");
}

inline Rational best_lower(const std::vector<BrooksCombination>& certs, const Chain1& c,
                           const Marking& em, std::optional<LowerWitness>& witness) {
    Rational best = 0;
    for (const auto& q : certs) {
        if (!q.validated) continue;
        Rational v = bavard_lower_bound(q, c, em);
        if (v > best) {
            best = v;
            witness = LowerWitness{q, evaluate_chain(q, c)};
        }
    }
    return best;
}

}  // namespace detail

// Certified two-sided bounds: Bavard-duality certificates below, the minimum
// of stabilized search bounds and the truncated filling norm above. A lower
// bound crossing an upper bound is a fatal soundness failure, never clamped.
inline BoundInterval scl_interval(const Marking& m, const Word& y, Mode mode,
                                  const BoundsBudget& budget,
                                  const std::vector<BrooksCombination>& certs) {
    Marking em = effective_marking(m, mode);
    if (mode == Mode::mixed && !m.in_N(y)) throw NotInSubgroupError("mixed scl needs y in N");
    if (!em.in_mixed_commutator(y))
        throw NotInSubgroupError("y is outside the subgroup for this mode");

    BoundInterval iv;
    iv.mode = mode;
    iv.lower = detail::best_lower(certs, Chain1(y), em, iv.lower_cert);

    iv.stabilization = stabilization_sequence(m, y, mode, budget.k_max, budget.search);
    for (const auto& e : iv.stabilization) {
        if (!e.value) continue;
        if (ExtRational(*e.value) < iv.upper) {
            iv.upper = *e.value;
            iv.upper_cert = StabilizationWitness{e.k, *e.cert};
        }
    }
    try {
        auto lp = scl_upper_from_filling(em, Chain1(y), budget.length_budget);
        if (lp) {
            iv.filling_upper = lp->first;
            if (ExtRational(lp->first) < iv.upper) {
                iv.upper = lp->first;
                iv.upper_cert = lp->second;
            }
        }
    } catch (const BudgetError&) {
        // support longer than the truncation can index; no filling bound
    }

    detail::enforce_order(iv);
    return iv;
}

// Chain intervals. Upper bounds come from the truncated filling norm alone:
// powering the support of a multi-term chain is not subadditive in k (a chain
// like u + v - uv assembles to the identity at k = 1 while its scl is 1/2),
// so cl-based stabilization entries certify nothing here. For a single
// support word with unit coefficient the word overload applies and does
// stabilize.
inline BoundInterval scl_interval(const Marking& m, const Chain1& c, Mode mode,
                                  const BoundsBudget& budget,
                                  const std::vector<BrooksCombination>& certs) {
    Marking em = effective_marking(m, mode);
    if (!chain_in_CQ(em, c)) throw NotInSubgroupError("chain is not in C_Q for this mode");

    Chain1 ch = h_normal_form(c);  // scl is invariant and the instances shrink
    BoundInterval iv;
    iv.mode = mode;
    iv.lower = detail::best_lower(certs, ch, em, iv.lower_cert);

    if (ch.support_size() == 1 && abs(ch.terms().begin()->second) == 1) {
        Word y = ch.terms().begin()->first;
        if (ch.terms().begin()->second < 0) y = inverse(y);  // scl(-y) = scl(y^-1)
        bool ok = mode == Mode::ordinary || m.in_N(y);
        if (ok && em.in_mixed_commutator(y)) {
            iv.stabilization = stabilization_sequence(m, y, mode, budget.k_max, budget.search);
            for (const auto& e : iv.stabilization) {
                if (!e.value) continue;
                if (ExtRational(*e.value) < iv.upper) {
                    iv.upper = *e.value;
                    iv.upper_cert = StabilizationWitness{e.k, *e.cert};
                }
            }
        }
    }
    try {
        auto lp = scl_upper_from_filling(em, ch, budget.length_budget);
        if (lp) {
            iv.filling_upper = lp->first;
            if (ExtRational(lp->first) < iv.upper) {
                iv.upper = lp->first;
                iv.upper_cert = lp->second;
            }
        }
    } catch (const BudgetError&) {
    }

    detail::enforce_order(iv);
    return iv;
}

struct ModeComparison {
    BoundInterval ordinary;
    BoundInterval mixed;
    bool lower_ordinary_le_upper_mixed = false;  // always required
    bool intervals_intersect = false;            // required here: the quotient is abelian
    bool amenable_doubling_consistent = false;   // lower_mixed <= 2 * upper_ordinary
};

// Ordinary versus mixed intervals for the same element, with the consistency
// checks the implemented markings must satisfy. Any mixed upper certificate
// is transferred to the ordinary side before comparison: simple mixed
// commutators are simple commutators.
inline ModeComparison compare_modes(const Marking& m, const Word& y, const BoundsBudget& budget,
                                    const std::vector<BrooksCombination>& certs) {
    ModeComparison cmp;
    cmp.mixed = scl_interval(m, y, Mode::mixed, budget, certs);
    cmp.ordinary = scl_interval(m, y, Mode::ordinary, budget, certs);
    if (cmp.mixed.upper < cmp.ordinary.upper) {
        cmp.ordinary.upper = cmp.mixed.upper;
        if (auto* sw = std::get_if<StabilizationWitness>(&cmp.mixed.upper_cert)) {
            StabilizationWitness moved = *sw;
            moved.cert.mode = Mode::ordinary;
            cmp.ordinary.upper_cert = moved;
        } else {
            cmp.ordinary.upper_cert = cmp.mixed.upper_cert;
        }
        detail::enforce_order(cmp.ordinary);
    }
    cmp.lower_ordinary_le_upper_mixed = ExtRational(cmp.ordinary.lower) <= cmp.mixed.upper;
    ExtRational lo = ExtRational(cmp.ordinary.lower > cmp.mixed.lower ? cmp.ordinary.lower
                                                                      : cmp.mixed.lower);
    ExtRational hi = min(cmp.ordinary.upper, cmp.mixed.upper);
    cmp.intervals_intersect = lo <= hi;
    cmp.amenable_doubling_consistent =
        cmp.ordinary.upper.infinite ||
        Rational(cmp.mixed.lower) <= Rational(2) * cmp.ordinary.upper.value;
    return cmp;
}

}  // namespace sclforge
