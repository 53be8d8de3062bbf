#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "sclforge/chains.hpp"
#include "sclforge/core.hpp"
#include "sclforge/marking.hpp"
#include "sclforge/word.hpp"

namespace sclforge {

// Weighted family of antisymmetrized counting functions C_w - C_{w^-1} with a
// declared defect bound. A combination may only back a certificate after its
// window check has passed.
struct BrooksCombination {
    std::map<Word, Rational> atoms;  // base word -> weight
    Rational defect_bound;
    int window = 6;
    bool validated = false;
    std::string name;  // display only

    BrooksCombination(std::map<Word, Rational> atoms_, Rational bound, int window_,
                      std::string name_ = {})
        : atoms(std::move(atoms_)), defect_bound(std::move(bound)), window(window_),
          name(std::move(name_)) {
        if (defect_bound <= 0) throw PreconditionError("defect bound must be positive");
        if (window < 1) throw PreconditionError("window must be positive");
        for (const auto& [w, wt] : atoms) {
            if (w.empty()) throw PreconditionError("atom words must be nonempty");
            if (wt == 0) throw PreconditionError("atom weights must be nonzero");
        }
    }

    int max_atom_length() const {
        std::size_t m = 0;
        for (const auto& [w, wt] : atoms) m = std::max(m, w.size());
        return static_cast<int>(m);
    }
};

namespace detail {

inline long count_occurrences(const std::vector<Letter>& pat, const std::vector<Letter>& text) {
    if (pat.empty() || pat.size() > text.size()) return 0;
    long n = 0;
    for (std::size_t i = 0; i + pat.size() <= text.size(); ++i) {
        bool hit = true;
        for (std::size_t j = 0; j < pat.size() && hit; ++j) hit = text[i + j] == pat[j];
        if (hit) ++n;
    }
    return n;
}

inline std::vector<Letter> inverse_letters(const std::vector<Letter>& ls) {
    std::vector<Letter> out;
    out.reserve(ls.size());
    for (auto it = ls.rbegin(); it != ls.rend(); ++it) out.push_back(static_cast<Letter>(-*it));
    return out;
}

// Occurrences of atom minus its inverse, per period, in the bi-infinite
// periodic word core^infinity. Equals the slope of the counts on powers;
// the two routes are checked against each other in the property suite.
inline long cyclic_atom_slope(const std::vector<Letter>& atom, const Word& core) {
    if (core.empty()) return 0;
    std::size_t need = core.size() + atom.size();
    std::vector<Letter> rep;
    rep.reserve(need + core.size());
    while (rep.size() < need) rep.insert(rep.end(), core.letters().begin(), core.letters().end());
    auto count_start_in_period = [&](const std::vector<Letter>& pat) {
        long n = 0;
        if (pat.empty() || pat.size() > rep.size()) return n;
        for (std::size_t i = 0; i < core.size(); ++i) {
            if (i + pat.size() > rep.size()) break;
            bool hit = true;
            for (std::size_t j = 0; j < pat.size() && hit; ++j) hit = rep[i + j] == pat[j];
            if (hit) ++n;
        }
        return n;
    };
    return count_start_in_period(atom) - count_start_in_period(inverse_letters(atom));
}

}  // namespace detail

// Raw (unhomogenized) value: weighted antisymmetrized occurrence counts on the
// linear reduced word.
inline Rational raw_value(const BrooksCombination& q, const Word& w) {
    Rational v = 0;
    for (const auto& [atom, wt] : q.atoms) {
        long c = detail::count_occurrences(atom.letters(), w.letters()) -
                 detail::count_occurrences(detail::inverse_letters(atom.letters()), w.letters());
        v += wt * Rational(c);
    }
    return v;
}

// Exact homogenization by the slope method: counts on y^m become affine in m
// once m |core| exceeds twice the longest atom, and the value is the slope.
// Two consecutive slopes are compared so the affine regime is certified
// rather than assumed.
inline Rational homogenized_value(const BrooksCombination& q, const Word& y) {
    if (y.empty() || q.atoms.empty()) return 0;
    auto [core, conj] = cyclic_reduce(y);
    long core_len = static_cast<long>(core.size());
    long max_atom = q.max_atom_length();
    long m0 = (2 * max_atom + core_len - 1) / core_len + 2;

    auto build_power = [&](long m) {
        std::vector<Letter> ls;
        ls.reserve(conj.size() * 2 + core.size() * static_cast<std::size_t>(m));
        ls.insert(ls.end(), conj.letters().begin(), conj.letters().end());
        for (long i = 0; i < m; ++i) ls.insert(ls.end(), core.letters().begin(), core.letters().end());
        auto ci = detail::inverse_letters(conj.letters());
        ls.insert(ls.end(), ci.begin(), ci.end());
        return ls;
    };

    auto raw_at = [&](long m) {
        auto text = build_power(m);
        Rational v = 0;
        for (const auto& [atom, wt] : q.atoms) {
            long c = detail::count_occurrences(atom.letters(), text) -
                     detail::count_occurrences(detail::inverse_letters(atom.letters()), text);
            v += wt * Rational(c);
        }
        return v;
    };

    Rational r0 = raw_at(m0), r1 = raw_at(m0 + 1), r2 = raw_at(m0 + 2);
    Rational s1 = r1 - r0, s2 = r2 - r1;
    if (s1 != s2)
        throw InternalSoundnessError("slope did not stabilize at threshold for " + format_word(y));
    return s1;
}

// Fast equivalent of homogenized_value used in bulk scans.
inline Rational homogenized_value_cyclic(const BrooksCombination& q, const Word& y) {
    if (y.empty() || q.atoms.empty()) return 0;
    auto [core, conj] = cyclic_reduce(y);
    Rational v = 0;
    for (const auto& [atom, wt] : q.atoms)
        v += wt * Rational(detail::cyclic_atom_slope(atom.letters(), core));
    return v;
}

// Linear extension to 1-chains; invariant under h_normal_form by homogeneity.
inline Rational evaluate_chain(const BrooksCombination& q, const Chain1& c) {
    Rational v = 0;
    for (const auto& [w, coeff] : c.terms()) v += coeff * homogenized_value(q, w);
    return v;
}

struct DefectCheck {
    Rational empirical_max;
    bool pass = false;
    std::optional<std::pair<Word, Word>> worst_pair;
};

namespace detail {

// Shared windowed defect scan. Evaluates all combinations in one pass over
// the pairs (g1, g2) with |g1|, |g2| <= window; parallel over g1 buckets.
inline std::vector<DefectCheck> window_scan(const std::vector<BrooksCombination>& qs, int rank,
                                            int window, unsigned threads) {
    std::vector<Word> ws = words_up_to(rank, window);
    const std::size_t n = ws.size(), m = qs.size();

    // Flattened atom table with weights scaled to integers per combination,
    // so the hot loop stays in int64; results are descaled at the end.
    struct AtomRef {
        std::vector<Letter> pat, ipat;
        long long weight;
        std::size_t owner;
    };
    std::vector<AtomRef> atoms;
    std::vector<mpz_class> scale(m, 1);
    std::size_t max_atom = 1;
    for (std::size_t k = 0; k < m; ++k)
        for (const auto& [w, wt] : qs[k].atoms)
            mpz_lcm(scale[k].get_mpz_t(), scale[k].get_mpz_t(), wt.get_den().get_mpz_t());
    for (std::size_t k = 0; k < m; ++k)
        for (const auto& [w, wt] : qs[k].atoms) {
            Rational s = wt * Rational(scale[k]);
            if (s.get_den() != 1 || !s.get_num().fits_slong_p())
                throw PreconditionError("atom weight out of range for the window scan");
            atoms.push_back({w.letters(), inverse_letters(w.letters()), s.get_num().get_si(), k});
            max_atom = std::max(max_atom, w.size());
        }

    std::vector<std::vector<long long>> base(n, std::vector<long long>(m));
    auto value_vec = [&](const Word& w, std::vector<long long>& out) {
        for (auto& v : out) v = 0;
        auto [core, conj] = cyclic_reduce(w);
        if (core.empty()) return;
        std::size_t need = core.size() + max_atom;
        std::vector<Letter> rep;
        rep.reserve(need + core.size());
        while (rep.size() < need) rep.insert(rep.end(), core.letters().begin(), core.letters().end());
        auto per_period = [&](const std::vector<Letter>& pat) {
            long cnt = 0;
            for (std::size_t i = 0; i < core.size(); ++i) {
                if (i + pat.size() > rep.size()) break;
                bool hit = true;
                for (std::size_t j = 0; j < pat.size() && hit; ++j) hit = rep[i + j] == pat[j];
                if (hit) ++cnt;
            }
            return cnt;
        };
        for (const AtomRef& a : atoms) {
            long s = per_period(a.pat) - per_period(a.ipat);
            if (s != 0) out[a.owner] += a.weight * s;
        }
    };

    if (threads == 0) threads = 1;
    threads = std::min<unsigned>(threads, 16);

    auto run_chunks = [&](auto fn) {
        if (threads <= 1) {
            fn(std::size_t(0), n);
            return;
        }
        std::vector<std::thread> pool;
        std::size_t chunk = (n + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            std::size_t lo = t * chunk, hi = std::min(n, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(fn, lo, hi);
        }
        for (auto& th : pool) th.join();
    };

    run_chunks([&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) value_vec(ws[i], base[i]);
    });

    struct Acc {
        std::vector<long long> best;
        std::vector<std::pair<std::size_t, std::size_t>> arg;
    };
    std::vector<Acc> accs(threads);
    for (auto& a : accs) {
        a.best.assign(m, 0);
        a.arg.assign(m, {0, 0});
    }

    std::vector<std::thread> pool;
    std::size_t chunk = (n + threads - 1) / threads;
    auto scan = [&](std::size_t lo, std::size_t hi, Acc& acc) {
        std::vector<long long> pv(m);
        for (std::size_t i = lo; i < hi; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                Word prod = multiply(ws[i], ws[j]);
                value_vec(prod, pv);
                for (std::size_t k = 0; k < m; ++k) {
                    long long d = pv[k] - base[i][k] - base[j][k];
                    if (d < 0) d = -d;
                    if (d > acc.best[k]) {
                        acc.best[k] = d;
                        acc.arg[k] = {i, j};
                    }
                }
            }
        }
    };
    if (threads <= 1) {
        scan(0, n, accs[0]);
    } else {
        for (unsigned t = 0; t < threads; ++t) {
            std::size_t lo = t * chunk, hi = std::min(n, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(scan, lo, hi, std::ref(accs[t]));
        }
        for (auto& th : pool) th.join();
    }

    std::vector<DefectCheck> out(m);
    for (std::size_t k = 0; k < m; ++k) {
        long long best = 0;
        for (const auto& a : accs) {
            if (a.best.empty()) continue;
            if (a.best[k] > best) {
                best = a.best[k];
                out[k].worst_pair = {ws[a.arg[k].first], ws[a.arg[k].second]};
            }
        }
        out[k].empirical_max = Rational(static_cast<long>(best)) / Rational(scale[k]);
        out[k].pass = out[k].empirical_max <= qs[k].defect_bound;
    }
    return out;
}

}  // namespace detail

// Exhaustive windowed defect validation. A pass certifies the enforced
// contract |val(g1 g2) - val(g1) - val(g2)| <= defect_bound on the window; a
// fail disqualifies the combination from all certificates.
inline DefectCheck defect_window_check(BrooksCombination& q, int rank, unsigned threads = 1) {
    if (q.window < q.max_atom_length())
        throw PreconditionError("validation window smaller than the longest atom");
    auto res = detail::window_scan({q}, rank, q.window, threads);
    q.validated = res[0].pass;
    return res[0];
}

inline std::vector<DefectCheck> defect_window_check_all(std::vector<BrooksCombination>& qs, int rank,
                                                        unsigned threads = 1) {
    int window = 0;
    for (auto& q : qs) {
        if (q.window < q.max_atom_length())
            throw PreconditionError("validation window smaller than the longest atom");
        window = std::max(window, q.window);
    }
    if (qs.empty()) return {};
    auto res = detail::window_scan(qs, rank, window, threads);
    for (std::size_t i = 0; i < qs.size(); ++i) qs[i].validated = res[i].pass;
    return res;
}

// Duality certificate value |q(c)| / (2 D). Valid lower bound for both the
// mixed and the ordinary stable commutator length of c: the restriction of a
// homogeneous quasimorphism on G to N is G-invariant with no larger defect.
inline Rational bavard_lower_bound(const BrooksCombination& q, const Chain1& c, const Marking& m) {
    if (!q.validated) throw PreconditionError("certificate disqualified: window check not passed");
    if (!chain_in_CQ(m, c)) throw NotInSubgroupError("chain is not in C_Q(G,N)");
    Rational v = evaluate_chain(q, c);
    if (v == 0) return 0;
    return abs(v) / (2 * q.defect_bound);
}

// Scaling-up approximation with the quasimorphism inequality mechanically
// checked against every validated certificate loaded at call time:
// |q(k c) - q(y)| <= (m + m') D <= eps k D.
inline ScaleApproximation scale_approximate(const Marking& m, const Chain1& c, const Rational& eps,
                                            const std::vector<BrooksCombination>& certs) {
    ScaleApproximation res = scale_approximate(m, c, eps);
    for (const auto& q : certs) {
        if (!q.validated) continue;
        Rational gap =
            abs(evaluate_chain(q, c * Rational(res.k)) - homogenized_value(q, res.witness));
        Rational blocks_bound = Rational(res.block_count) * q.defect_bound;
        if (gap > blocks_bound || blocks_bound > eps * Rational(res.k) * q.defect_bound)
            throw InternalSoundnessError("scaling approximation violates the certificate inequality");
    }
    return res;
}

// Canonical antisymmetrized atom words: lexicographically smaller of w, w^-1.
// Length-1 atoms are genuine homomorphisms (defect 0); they vanish on every
// boundary chain and cannot carry a positive defect bound, so the default set
// starts at length 2.
inline std::vector<BrooksCombination> default_certificate_set(int rank, int max_len = 3,
                                                              int window = 6) {
    std::vector<BrooksCombination> out;
    for (const Word& w : words_up_to(rank, max_len)) {
        if (w.size() < 2) continue;
        Word wi = inverse(w);
        if (wi < w) continue;  // keep the canonical orientation only
        std::map<Word, Rational> atoms{{w, Rational(1)}};
        Rational bound(2 * (static_cast<long>(w.size()) - 1));
        out.emplace_back(std::move(atoms), bound, window, format_word(w));
    }
    return out;
}

}  // namespace sclforge
