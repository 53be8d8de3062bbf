#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_set>
#include <utility>
#include <vector>

#include "sclforge/chains.hpp"
#include "sclforge/core.hpp"
#include "sclforge/marking.hpp"
#include "sclforge/word.hpp"

namespace sclforge {

enum class Mode { ordinary, mixed };

inline const char* mode_name(Mode m) { return m == Mode::ordinary ? "ordinary" : "mixed"; }

// The marking whose [G,N] matches the requested mode: ordinary mode works in
// the pair (G, G) of the same free group.
inline Marking effective_marking(const Marking& m, Mode mode) {
    return mode == Mode::ordinary ? m.ordinary_view() : m;
}

struct SearchBudget {
    int max_terms = 3;
    int gen_len = 6;
    long node_budget = 200000;
    int slack = 0;  // allowed length growth per move; 0 = strictly non-increasing
};

// Witness that target is a product of the listed simple commutators, in order.
struct ClCertificate {
    std::vector<std::pair<Word, Word>> pairs;  // (g, x), product of [g, x]
    Mode mode = Mode::ordinary;
    Word target;
};

// Independent of the search path: recompute the product and the membership
// side conditions.
inline bool verify_cl_certificate(const Marking& m, const ClCertificate& cert) {
    Word prod(cert.target.rank());
    for (const auto& [g, x] : cert.pairs) {
        if (cert.mode == Mode::mixed && !m.in_N(x)) return false;
        prod = multiply(prod, commutator(g, x));
    }
    return prod == cert.target;
}

namespace detail {

// Deduplicated values of simple commutators [g, x] with |g|, |x| <= gen_len
// (x restricted to N), indexed by value suffix for cancellation-driven moves.
class CommutatorPool {
  public:
    CommutatorPool(const Marking& m, int gen_len) : rank_(m.rank()) {
        std::vector<Word> gs = words_up_to(rank_, gen_len);
        std::vector<const Word*> xs;
        for (const Word& x : gs)
            if (!x.empty() && m.in_N(x)) xs.push_back(&x);
        if (gs.size() * xs.size() > 8'000'000)
            throw BudgetError("commutator pool too large; lower gen_len");

        struct Tmp {
            Letter val[26];
            std::uint8_t len;
            std::uint32_t g_idx, x_idx;
        };
        std::vector<Tmp> tmp;
        tmp.reserve(gs.size() * xs.size() / 2);
        Word scratch(rank_);
        for (std::uint32_t gi = 0; gi < gs.size(); ++gi) {
            if (gs[gi].empty()) continue;
            for (std::uint32_t xi = 0; xi < xs.size(); ++xi) {
                Word v = commutator(gs[gi], *xs[xi]);
                if (v.empty() || v.size() > 26) continue;
                Tmp t;
                t.len = static_cast<std::uint8_t>(v.size());
                std::copy(v.letters().begin(), v.letters().end(), t.val);
                t.g_idx = gi;
                t.x_idx = static_cast<std::uint32_t>(xs[xi] - gs.data());
                tmp.push_back(t);
            }
        }
        auto val_less = [](const Tmp& a, const Tmp& b) {
            if (a.len != b.len) return a.len < b.len;
            for (std::uint8_t i = 0; i < a.len; ++i) {
                int ka = letter_key(a.val[i]), kb = letter_key(b.val[i]);
                if (ka != kb) return ka < kb;
            }
            if (a.g_idx != b.g_idx) return a.g_idx < b.g_idx;
            return a.x_idx < b.x_idx;
        };
        std::sort(tmp.begin(), tmp.end(), val_less);
        auto val_eq = [](const Tmp& a, const Tmp& b) {
            return a.len == b.len && std::equal(a.val, a.val + a.len, b.val);
        };
        tmp.erase(std::unique(tmp.begin(), tmp.end(), val_eq), tmp.end());

        words_ = std::move(gs);
        entries_.reserve(tmp.size());
        arena_.reserve(tmp.size() * 12);
        for (const Tmp& t : tmp) {
            Entry e;
            e.off = static_cast<std::uint32_t>(arena_.size());
            e.len = t.len;
            e.g_idx = t.g_idx;
            e.x_idx = t.x_idx;
            arena_.insert(arena_.end(), t.val, t.val + t.len);
            entries_.push_back(e);
        }
        by_suffix_.resize(entries_.size());
        for (std::uint32_t i = 0; i < by_suffix_.size(); ++i) by_suffix_[i] = i;
        std::sort(by_suffix_.begin(), by_suffix_.end(), [&](std::uint32_t a, std::uint32_t b) {
            return suffix_less(entries_[a], entries_[b]);
        });
    }

    std::size_t size() const { return entries_.size(); }

    Word value(std::uint32_t i) const {
        const Entry& e = entries_[i];
        Word w(rank_);
        for (std::uint16_t t = 0; t < e.len; ++t) w.push(arena_[e.off + t]);
        return w;
    }

    std::pair<Word, Word> pair_of(std::uint32_t i) const {
        return {words_[entries_[i].g_idx], words_[entries_[i].x_idx]};
    }

    // Entries whose value ends with the last d letters of target, for every d,
    // filtered to |value| <= 2d + slack so the product target * value^{-1}
    // cannot grow beyond slack.
    void collect_moves(const Word& target, int slack, std::vector<std::uint32_t>& out) const {
        out.clear();
        const auto& tl = target.letters();
        std::size_t maxd = tl.size();
        for (std::size_t d = 1; d <= maxd; ++d) {
            const Letter* suf = tl.data() + (tl.size() - d);
            auto [lo, hi] = suffix_range(suf, d);
            for (std::uint32_t idx = lo; idx < hi; ++idx) {
                const Entry& e = entries_[by_suffix_[idx]];
                if (static_cast<int>(e.len) <= static_cast<int>(2 * d) + slack)
                    out.push_back(by_suffix_[idx]);
            }
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
    }

  private:
    struct Entry {
        std::uint32_t off;
        std::uint16_t len;
        std::uint32_t g_idx, x_idx;
    };

    // lexicographic on the reversed value
    bool suffix_less(const Entry& a, const Entry& b) const {
        std::uint16_t n = std::min(a.len, b.len);
        for (std::uint16_t i = 0; i < n; ++i) {
            int ka = letter_key(arena_[a.off + a.len - 1 - i]);
            int kb = letter_key(arena_[b.off + b.len - 1 - i]);
            if (ka != kb) return ka < kb;
        }
        return a.len < b.len;
    }

    // entries (in by_suffix_ order) whose reversed value starts with the
    // reversal of suf[0..d)
    std::pair<std::uint32_t, std::uint32_t> suffix_range(const Letter* suf, std::size_t d) const {
        auto cmp_rev_prefix = [&](std::uint32_t ei, int bound_kind) {
            // -1 if entry < prefix, 0 if entry starts with prefix, +1 if >
            const Entry& e = entries_[ei];
            std::size_t n = std::min<std::size_t>(e.len, d);
            for (std::size_t i = 0; i < n; ++i) {
                int ka = letter_key(arena_[e.off + e.len - 1 - i]);
                int kb = letter_key(suf[d - 1 - i]);
                if (ka != kb) return ka < kb ? -1 : 1;
            }
            if (e.len < d) return -1;
            (void)bound_kind;
            return 0;
        };
        std::uint32_t lo = 0, hi = static_cast<std::uint32_t>(by_suffix_.size());
        // lower bound
        std::uint32_t a = lo, b = hi;
        while (a < b) {
            std::uint32_t mid = a + (b - a) / 2;
            if (cmp_rev_prefix(by_suffix_[mid], 0) < 0)
                a = mid + 1;
            else
                b = mid;
        }
        std::uint32_t first = a;
        // upper bound
        b = hi;
        while (a < b) {
            std::uint32_t mid = a + (b - a) / 2;
            if (cmp_rev_prefix(by_suffix_[mid], 1) <= 0)
                a = mid + 1;
            else
                b = mid;
        }
        return {first, a};
    }

    int rank_;
    std::vector<Word> words_;
    std::vector<Letter> arena_;
    std::vector<Entry> entries_;
    std::vector<std::uint32_t> by_suffix_;
};

inline std::shared_ptr<const CommutatorPool> pool_for(const Marking& m, int gen_len) {
    static std::mutex mu;
    static std::map<std::string, std::shared_ptr<const CommutatorPool>> cache;
    std::string key = std::to_string(m.rank()) + "|" + std::to_string(gen_len) + "|";
    for (const auto& row : m.quotient_matrix()) {
        for (long long v : row) key += std::to_string(v) + ",";
        key += ";";
    }
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto pool = std::make_shared<CommutatorPool>(m, gen_len);
    cache.emplace(key, pool);
    return pool;
}

// Single-commutator test with piece budget: scans cyclic rotations of the
// cyclically reduced core for a decomposition core_rot = x y z x' y' z'
// (primes = inverses), which rewrites as [xy, z x^{-1}] conjugated back.
// Sound and complete as a commutator test; the piece-length budget prunes
// which witnesses are accepted.
inline std::optional<std::pair<Word, Word>> wicks_commutator(const Marking& em, Mode mode,
                                                             const Word& t, int piece_len) {
    if (t.empty()) return std::nullopt;
    if (t.size() % 2 != 0) return std::nullopt;
    auto [core, conj] = cyclic_reduce(t);
    if (core.size() % 2 != 0) return std::nullopt;
    const std::size_t n = core.size(), half = n / 2;
    std::vector<Letter> doubled(core.letters());
    doubled.insert(doubled.end(), core.letters().begin(), core.letters().end());

    auto try_form = [&](const Word& g, const Word& x) -> std::optional<std::pair<Word, Word>> {
        if (g.size() > static_cast<std::size_t>(piece_len) ||
            x.size() > static_cast<std::size_t>(piece_len))
            return std::nullopt;
        if (mode == Mode::mixed && !em.in_N(x)) return std::nullopt;
        return std::make_pair(g, x);
    };

    for (std::size_t rot = 0; rot < n; ++rot) {
        const Letter* w = doubled.data() + rot;
        // pieces X = w[0..p), Y = w[p..p+q), Z = w[p+q..half)
        for (std::size_t p = 0; p <= half; ++p) {
            bool x_ok = true;
            for (std::size_t i = 0; i < p && x_ok; ++i)
                x_ok = w[half + i] == static_cast<Letter>(-w[p - 1 - i]);
            if (!x_ok) continue;
            for (std::size_t q = 0; p + q <= half; ++q) {
                std::size_t r = half - p - q;
                bool ok = true;
                for (std::size_t i = 0; i < q && ok; ++i)
                    ok = w[half + p + i] == static_cast<Letter>(-w[p + q - 1 - i]);
                for (std::size_t i = 0; i < r && ok; ++i)
                    ok = w[half + p + q + i] == static_cast<Letter>(-w[half - 1 - i]);
                if (!ok) continue;

                Word h = conj;
                for (std::size_t i = 0; i < rot; ++i) h = multiply(h, Word::from_letters(t.rank(), {core.letters()[i]}));
                Word xy(t.rank()), zxinv(t.rank());
                for (std::size_t i = 0; i < p + q; ++i) xy.push(w[i]);
                for (std::size_t i = 0; i < r; ++i) zxinv.push(w[p + q + i]);
                for (std::size_t i = 0; i < p; ++i) zxinv.push(static_cast<Letter>(-w[p - 1 - i]));

                Word g = multiply(multiply(h, xy), inverse(h));
                Word x = multiply(multiply(h, zxinv), inverse(h));
                if (auto res = try_form(g, x)) return res;
                // flips that move the N-side membership without changing the value
                if (auto res = try_form(multiply(g, x), inverse(g))) return res;
                if (auto res = try_form(inverse(x), conjugated(x, g))) return res;
            }
        }
    }
    return std::nullopt;
}

struct SearchState {
    const CommutatorPool* pool;
    const Marking* em;
    Mode mode;
    SearchBudget budget;
    long nodes = 0;
    bool aborted = false;
    std::vector<std::unordered_set<std::string>> visited;  // per remaining-depth

    static std::string key_of(const Word& w) {
        if (w.empty()) return {};
        return std::string(reinterpret_cast<const char*>(w.letters().data()), w.size());
    }

    bool dfs(const Word& target, int remaining, std::vector<std::pair<Word, Word>>& out) {
        if (++nodes > budget.node_budget) {
            aborted = true;
            return false;
        }
        if (target.empty()) return true;
        if (remaining <= 0) return false;
        if (auto single = wicks_commutator(*em, mode, target, budget.gen_len)) {
            out.push_back(*single);
            return true;
        }
        if (remaining == 1) return false;

        auto& seen = visited[static_cast<std::size_t>(remaining)];
        auto [it, fresh] = seen.insert(key_of(target));
        if (!fresh) return false;

        std::vector<std::uint32_t> moves;
        pool->collect_moves(target, budget.slack, moves);
        // deterministic: shortest successor first, then value order
        std::vector<std::pair<Word, std::uint32_t>> next;
        next.reserve(moves.size());
        for (std::uint32_t mi : moves) {
            Word rest = multiply(target, inverse(pool->value(mi)));
            next.emplace_back(std::move(rest), mi);
        }
        std::stable_sort(next.begin(), next.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        for (auto& [rest, mi] : next) {
            if (dfs(rest, remaining - 1, out)) {
                out.push_back(pool->pair_of(mi));
                return true;
            }
            if (aborted) return false;
        }
        return false;
    }
};

}  // namespace detail

// Bounded search for a decomposition of y into at most max_terms simple
// commutators with piece length at most gen_len. Upper-bound semantics: a
// nullopt return means only that the budget was exhausted.
inline std::optional<ClCertificate> cl_upper_search(const Marking& m, const Word& y, Mode mode,
                                                    const SearchBudget& budget = {}) {
    Marking em = effective_marking(m, mode);
    em.require_rank(y);
    if (mode == Mode::mixed && !m.in_N(y))
        throw NotInSubgroupError("mixed commutator length needs y in N");
    if (!em.in_mixed_commutator(y))
        throw NotInSubgroupError("abelianization or area obstruction: y is outside the subgroup");

    ClCertificate cert;
    cert.mode = mode;
    cert.target = y;
    if (y.empty()) return cert;

    auto pool = detail::pool_for(em, budget.gen_len);
    for (int depth = 1; depth <= budget.max_terms; ++depth) {
        detail::SearchState st{pool.get(), &em, mode, budget, 0, false, {}};
        st.visited.resize(static_cast<std::size_t>(depth) + 1);
        std::vector<std::pair<Word, Word>> pairs;
        if (st.dfs(y, depth, pairs)) {
            cert.pairs = std::move(pairs);
            if (!verify_cl_certificate(m, cert))
                throw InternalSoundnessError("search produced a certificate that fails verification");
            return cert;
        }
    }
    return std::nullopt;
}

// One conjugated arrangement of the multiset expansion of an integral chain.
struct ArrangedProduct {
    std::vector<std::pair<Word, Word>> pos;  // (support word, conjugator)
    std::vector<std::pair<Word, Word>> neg;
    Word assembled;
};

struct ChainClBudget {
    int conj_len = 2;
    long max_assemblies = 2000;
    long max_searches = 12;  // distinct cyclic classes handed to the commutator search
    SearchBudget search;
};

struct ChainClUpper {
    int terms = 0;
    ArrangedProduct arrangement;
    ClCertificate cert;
};

inline bool verify_arranged_product(const Marking& m, const Chain1& c, const ArrangedProduct& ap) {
    Chain1 recount;
    Word prod(m.rank());
    for (const auto& [w, conj] : ap.pos) {
        recount.add(w, 1);
        prod = multiply(prod, conjugated(conj, w));
    }
    for (const auto& [w, conj] : ap.neg) {
        recount.add(w, -1);
        prod = multiply(prod, inverse(conjugated(conj, w)));
    }
    return recount == c && prod == ap.assembled;
}

// Upper bound for the commutator length of an integral chain: the infimum
// over arrangements and bounded conjugations of the commutator length of the
// assembled product, each assembly searched within the shared budget.
inline std::optional<ChainClUpper> chain_cl_upper(const Marking& m, const Chain1& c, Mode mode,
                                                  const ChainClBudget& budget = {}) {
    Marking em = effective_marking(m, mode);
    if (!chain_in_CZ(em, c)) throw NotInSubgroupError("chain is not in C_Z for the requested mode");

    std::vector<Word> pos, neg;
    for (const auto& [w, coeff] : c.terms()) {
        long n = coeff.get_num().get_si();
        for (long i = 0; i < n; ++i) pos.push_back(w);
        for (long i = 0; i < -n; ++i) neg.push_back(w);
    }
    std::sort(pos.begin(), pos.end());
    std::sort(neg.begin(), neg.end());

    std::vector<Word> conjs = words_up_to(m.rank(), budget.conj_len);
    const std::size_t total = pos.size() + neg.size();

    // deterministic assembly enumeration, capped
    std::map<Word, ArrangedProduct> assemblies;
    long count = 0;
    std::vector<Word> p = pos, ng = neg;
    bool done = false;
    do {
        do {
            std::vector<std::size_t> idx(total, 0);
            while (true) {
                ArrangedProduct ap;
                Word prod(m.rank());
                for (std::size_t i = 0; i < p.size(); ++i) {
                    ap.pos.emplace_back(p[i], conjs[idx[i]]);
                    prod = multiply(prod, conjugated(conjs[idx[i]], p[i]));
                }
                for (std::size_t i = 0; i < ng.size(); ++i) {
                    ap.neg.emplace_back(ng[i], conjs[idx[p.size() + i]]);
                    prod = multiply(prod, inverse(conjugated(conjs[idx[p.size() + i]], ng[i])));
                }
                ap.assembled = prod;
                assemblies.try_emplace(prod, std::move(ap));
                if (++count >= budget.max_assemblies) {
                    done = true;
                    break;
                }
                std::size_t d = 0;
                while (d < total && ++idx[d] == conjs.size()) idx[d++] = 0;
                if (d == total) break;
            }
            if (done) break;
        } while (std::next_permutation(ng.begin(), ng.end()));
        if (done) break;
    } while (std::next_permutation(p.begin(), p.end()));

    // Assemblies in the same cyclic class have equal commutator length; search
    // one representative per class, shortest assembled word first (map order).
    auto cyclic_key = [](const Word& w) {
        auto [core, conj] = cyclic_reduce(w);
        Word best_rot = core;
        const auto& ls = core.letters();
        for (std::size_t r = 1; r < ls.size(); ++r) {
            Word rot(w.rank());
            for (std::size_t i = 0; i < ls.size(); ++i) rot.push(ls[(r + i) % ls.size()]);
            if (rot < best_rot) best_rot = rot;
        }
        return best_rot;
    };
    std::optional<ChainClUpper> best;
    std::unordered_set<std::string> seen_classes;
    long searches = 0;
    for (const auto& [prod, ap] : assemblies) {
        if (best && best->terms == 0) break;
        if (searches >= budget.max_searches) break;
        if (!em.in_mixed_commutator(prod)) continue;
        Word key = cyclic_key(prod);
        std::string ks(reinterpret_cast<const char*>(key.letters().data()), key.size());
        if (!seen_classes.insert(ks).second) continue;
        ++searches;
        SearchBudget sb = budget.search;
        if (best) sb.max_terms = std::min(sb.max_terms, best->terms - 1);
        if (sb.max_terms < 0) break;
        auto cert = cl_upper_search(m, prod, mode, sb);
        if (!cert) continue;
        int terms = static_cast<int>(cert->pairs.size());
        if (!best || terms < best->terms) {
            best = ChainClUpper{terms, ap, *cert};
        }
    }
    return best;
}

}  // namespace sclforge
