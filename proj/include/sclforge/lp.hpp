#pragma once

#include <algorithm>
#include <atomic>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sclforge/chains.hpp"
#include "sclforge/core.hpp"
#include "sclforge/marking.hpp"
#include "sclforge/word.hpp"

namespace sclforge {

// coeff * (root^k - k root); root = identity with k = 0 encodes the identity
// generator (the k = 0 member of the family).
struct HTerm {
    Word root;
    long k = 0;
    Rational coeff;

    Chain1 chain() const {
        Chain1 c;
        c.add(power(root, k), coeff);
        c.add(root, Rational(-k) * coeff);
        return c;
    }
};

struct FillingCertificate {
    Chain2 filling;
    Chain1 target;
    std::vector<HTerm> h_terms;
    Rational value;  // l1 norm of the filling
};

// Solver-independent re-check of every invariant of the certificate.
inline bool verify_filling_certificate(const Marking& m, const FillingCertificate& cert) {
    if (!validate_mixed_support(m, cert.filling)) return false;
    Chain1 rhs = cert.target;
    for (const HTerm& h : cert.h_terms) {
        if (!m.in_N(h.root)) return false;
        rhs += h.chain();
    }
    if (boundary(cert.filling) != rhs) return false;
    return cert.filling.l1_norm() == cert.value;
}

enum class LpStatus { solved, infeasible };

struct LpStats {
    std::size_t rows = 0;
    std::size_t cols = 0;
    long pivots = 0;
    Rational primal_value;
    Rational dual_value;
    bool duality_checked = false;
};

struct FillingResult {
    LpStatus status = LpStatus::infeasible;
    std::optional<FillingCertificate> certificate;
    LpStats stats;
};

namespace detail {

inline std::atomic<long>& lp_solved_count() {
    static std::atomic<long> n{0};
    return n;
}
inline std::atomic<long>& lp_duality_failures() {
    static std::atomic<long> n{0};
    return n;
}

// Exact rational revised simplex with Bland's rule (termination guaranteed,
// bit-exact reproducibility). Minimizes c^T x over A x = b, x >= 0.
class ExactSimplex {
  public:
    struct Column {
        std::vector<std::pair<std::size_t, Rational>> entries;
        Rational cost;
    };

    struct Solution {
        bool feasible = false;
        Rational value;
        std::vector<Rational> x;
        std::vector<Rational> y;  // duals for the (sign-normalized) rows
        long pivots = 0;
    };

    ExactSimplex(std::size_t rows, std::vector<Column> cols, std::vector<Rational> rhs)
        : m_(rows), cols_(std::move(cols)), b_(std::move(rhs)) {
        for (std::size_t r = 0; r < m_; ++r)
            if (b_[r] < 0) {
                flipped_.push_back(r);
                b_[r] = -b_[r];
            }
        if (!flipped_.empty())
            for (auto& col : cols_)
                for (auto& [r, v] : col.entries)
                    if (std::binary_search(flipped_.begin(), flipped_.end(), r)) v = -v;
    }

    Solution solve() {
        const std::size_t n = cols_.size();
        basis_.resize(m_);
        binv_.assign(m_, std::vector<Rational>(m_, Rational(0)));
        xb_ = b_;
        for (std::size_t i = 0; i < m_; ++i) {
            basis_[i] = n + i;  // artificial
            binv_[i][i] = 1;
        }

        Solution sol;
        if (!run_phase(/*phase1=*/true, sol)) return sol;  // pivot-limit guard
        Rational p1 = 0;
        for (std::size_t i = 0; i < m_; ++i)
            if (basis_[i] >= n) p1 += xb_[i];
        if (p1 > 0) {
            sol.feasible = false;
            return sol;
        }
        if (!run_phase(/*phase1=*/false, sol)) return sol;

        sol.feasible = true;
        sol.x.assign(n, Rational(0));
        for (std::size_t i = 0; i < m_; ++i)
            if (basis_[i] < n) sol.x[basis_[i]] = xb_[i];
        sol.value = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (sol.x[j] != 0) sol.value += cols_[j].cost * sol.x[j];

        // duals: y = c_B B^{-1}
        sol.y.assign(m_, Rational(0));
        for (std::size_t i = 0; i < m_; ++i) {
            Rational cb = basis_[i] < n ? cols_[basis_[i]].cost : Rational(0);
            if (cb == 0) continue;
            for (std::size_t r = 0; r < m_; ++r) sol.y[r] += cb * binv_[i][r];
        }
        verify_optimal(sol);
        return sol;
    }

    const std::vector<Rational>& normalized_rhs() const { return b_; }

  private:
    Rational reduced_cost(std::size_t j, const std::vector<Rational>& y, bool phase1) const {
        Rational rc = phase1 ? Rational(0) : cols_[j].cost;
        for (const auto& [r, v] : cols_[j].entries) rc -= y[r] * v;
        return rc;
    }

    std::vector<Rational> dual_of_phase(bool phase1) const {
        const std::size_t n = cols_.size();
        std::vector<Rational> y(m_, Rational(0));
        for (std::size_t i = 0; i < m_; ++i) {
            Rational cb;
            if (basis_[i] >= n)
                cb = phase1 ? Rational(1) : Rational(0);
            else
                cb = phase1 ? Rational(0) : cols_[basis_[i]].cost;
            if (cb == 0) continue;
            for (std::size_t r = 0; r < m_; ++r) y[r] += cb * binv_[i][r];
        }
        return y;
    }

    bool run_phase(bool phase1, Solution& sol) {
        const std::size_t n = cols_.size();
        while (true) {
            if (++sol.pivots > pivot_limit_)
                throw BudgetError("simplex pivot limit exceeded");
            std::vector<Rational> y = dual_of_phase(phase1);
            std::size_t enter = n;
            for (std::size_t j = 0; j < n; ++j) {  // Bland: smallest index first
                if (reduced_cost(j, y, phase1) < 0) {
                    enter = j;
                    break;
                }
            }
            if (enter == n) return true;  // optimal for this phase

            // direction d = B^{-1} A_enter
            std::vector<Rational> d(m_, Rational(0));
            for (const auto& [r, v] : cols_[enter].entries)
                for (std::size_t i = 0; i < m_; ++i)
                    if (binv_[i][r] != 0) d[i] += binv_[i][r] * v;

            std::size_t leave = m_;
            Rational best_ratio;
            for (std::size_t i = 0; i < m_; ++i) {
                if (d[i] <= 0) continue;
                Rational ratio = xb_[i] / d[i];
                if (leave == m_ || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[i] < basis_[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (leave == m_)
                throw InternalSoundnessError("simplex: unbounded direction in a bounded problem");

            // pivot update of B^{-1} and x_B
            Rational piv = d[leave];
            for (std::size_t r = 0; r < m_; ++r) binv_[leave][r] /= piv;
            xb_[leave] /= piv;
            for (std::size_t i = 0; i < m_; ++i) {
                if (i == leave || d[i] == 0) continue;
                Rational f = d[i];
                for (std::size_t r = 0; r < m_; ++r)
                    if (binv_[leave][r] != 0) binv_[i][r] -= f * binv_[leave][r];
                xb_[i] -= f * xb_[leave];
            }
            basis_[leave] = enter;
        }
    }

    // Exact optimality certificate: primal feasibility, dual feasibility, and
    // equality of the primal and dual objective values.
    void verify_optimal(const Solution& sol) const {
        const std::size_t n = cols_.size();
        std::vector<Rational> ax(m_, Rational(0));
        for (std::size_t j = 0; j < n; ++j) {
            if (sol.x[j] == 0) continue;
            if (sol.x[j] < 0) throw InternalSoundnessError("simplex: negative primal value");
            for (const auto& [r, v] : cols_[j].entries) ax[r] += v * sol.x[j];
        }
        for (std::size_t r = 0; r < m_; ++r)
            if (ax[r] != b_[r]) throw InternalSoundnessError("simplex: primal residual nonzero");
        Rational dual_value = 0;
        for (std::size_t r = 0; r < m_; ++r) dual_value += sol.y[r] * b_[r];
        for (std::size_t j = 0; j < n; ++j) {
            Rational rc = cols_[j].cost;
            for (const auto& [r, v] : cols_[j].entries) rc -= sol.y[r] * v;
            if (rc < 0) throw InternalSoundnessError("simplex: dual infeasibility");
        }
        if (dual_value != sol.value) {
            lp_duality_failures()++;
            throw InternalSoundnessError("simplex: primal and dual optimal values differ");
        }
    }

    std::size_t m_;
    std::vector<Column> cols_;
    std::vector<Rational> b_;
    std::vector<std::size_t> basis_;
    std::vector<std::vector<Rational>> binv_;
    std::vector<Rational> xb_;
    std::vector<std::size_t> flipped_;
    long pivot_limit_ = 500000;
};

struct DictColumn {
    bool is_cell = false;
    std::size_t index = 0;             // into cells or hterms
    Chain1 chain;                      // boundary chain (cells) or generator chain (h)
};

}  // namespace detail

struct FillingNormOptions {
    int length_budget = 4;  // |g1| + |g2| <= L for dictionary cells
    bool allow_h = false;
};

// Exact optimum of the truncated l1-filling problem: minimize the l1 norm of
// a mixed-support 2-chain with boundary c (optionally modulo the bounded
// h-dictionary). The value is an upper bound for the untruncated norm and is
// nonincreasing in the length budget.
inline FillingResult truncated_filling_norm(const Marking& m, const Chain1& c,
                                            const FillingNormOptions& opt) {
    const int L = opt.length_budget;
    if (L < 1) throw BudgetError("length budget must be positive");

    for (const auto& [w, coeff] : c.terms())
        if (!m.in_N(w)) throw PreconditionError("filling norm target must be supported in N");

    // A support word is indexable if a dictionary cell can produce it, or the
    // h-dictionary can absorb it as a power.
    for (const auto& [w, coeff] : c.terms()) {
        if (static_cast<int>(w.size()) <= L) continue;
        bool h_ok = false;
        if (opt.allow_h) {
            RootDecomposition rd = primitive_root(w);
            long e = rd.exponent < 0 ? -rd.exponent : rd.exponent;
            h_ok = static_cast<int>(rd.root.size()) <= L / 2 && e >= 2 && e <= L && m.in_N(rd.root);
        }
        if (!h_ok)
            throw BudgetError("support word not indexable within the length budget: " + m.format(w));
    }

    // dictionary cells, deduplicated by boundary chain
    std::vector<std::pair<Word, Word>> cells;
    std::vector<detail::DictColumn> columns;
    {
        std::map<std::string, std::size_t> seen;  // serialized boundary -> column
        std::vector<Word> ws = words_up_to(m.rank(), L);
        for (const Word& g1 : ws) {
            for (const Word& g2 : ws) {
                if (static_cast<int>(g1.size() + g2.size()) > L) continue;
                if (!m.in_N(g1) && !m.in_N(g2)) continue;
                Chain2 cell;
                cell.add(g1, g2, 1);
                Chain1 bnd = boundary(cell);
                std::string key;
                for (const auto& [w, v] : bnd.terms())
                    key += format_word(w) + ":" + rational_str(v) + ";";
                if (seen.emplace(key, cells.size()).second) {
                    cells.emplace_back(g1, g2);
                    columns.push_back({true, cells.size() - 1, std::move(bnd)});
                }
            }
        }
    }

    // h-dictionary: canonical primitive roots in N of length <= L/2, together
    // with the primitive roots of the target support, powers up to L, plus the
    // identity generator.
    std::vector<HTerm> hterms;
    if (opt.allow_h) {
        std::vector<Word> roots;
        for (const Word& x : words_up_to(m.rank(), L / 2)) {
            if (x.empty() || !m.in_N(x)) continue;
            RootDecomposition rd = primitive_root(x);
            if (rd.exponent != 1) continue;  // primitive and canonically oriented
            roots.push_back(x);
        }
        for (const auto& [w, coeff] : c.terms()) {
            RootDecomposition rd = primitive_root(w);
            if (rd.exponent != 0 && m.in_N(rd.root) &&
                std::find(roots.begin(), roots.end(), rd.root) == roots.end())
                roots.push_back(rd.root);
        }
        std::sort(roots.begin(), roots.end());
        hterms.push_back({Word(m.rank()), 0, 0});  // identity generator
        for (const Word& x : roots)
            for (long k = -L; k <= L; ++k) {
                if (k == 0 || k == 1) continue;
                hterms.push_back({x, k, 0});
            }
        for (std::size_t i = 0; i < hterms.size(); ++i) {
            HTerm probe = hterms[i];
            probe.coeff = 1;
            columns.push_back({false, i, probe.chain()});
        }
    }

    // row universe
    std::map<Word, std::size_t> row_of;
    std::vector<Rational> target;
    auto intern = [&](const Word& w) {
        auto [it, fresh] = row_of.try_emplace(w, target.size());
        if (fresh) target.push_back(0);
        return it->second;
    };
    for (const auto& [w, coeff] : c.terms()) target[intern(w)] = coeff;
    for (const auto& col : columns)
        for (const auto& [w, coeff] : col.chain.terms()) intern(w);

    const std::size_t nrows = target.size();
    struct GroupEntry {
        std::size_t row;
        Rational coef;
    };
    struct Group {
        std::vector<GroupEntry> entries;
        bool is_cell;
        std::size_t dict_index;
        bool active = true;
        bool forced = false;
        Rational forced_value;
    };
    std::vector<Group> groups;
    groups.reserve(columns.size());
    for (const auto& col : columns) {
        Group g;
        g.is_cell = col.is_cell;
        g.dict_index = col.index;
        for (const auto& [w, coeff] : col.chain.terms()) g.entries.push_back({row_of[w], coeff});
        groups.push_back(std::move(g));
    }

    // presolve: iterated elimination of untouched rows and singleton rows
    std::vector<char> row_active(nrows, 1);
    std::vector<Rational> rhs = target;
    std::vector<std::vector<std::size_t>> row_groups(nrows);
    for (std::size_t gi = 0; gi < groups.size(); ++gi)
        for (const auto& e : groups[gi].entries) row_groups[e.row].push_back(gi);

    bool infeasible = false;
    bool changed = true;
    while (changed && !infeasible) {
        changed = false;
        for (std::size_t r = 0; r < nrows && !infeasible; ++r) {
            if (!row_active[r]) continue;
            std::size_t live = 0, the_one = 0;
            for (std::size_t gi : row_groups[r])
                if (groups[gi].active) {
                    ++live;
                    the_one = gi;
                    if (live > 1) break;
                }
            if (live == 0) {
                if (rhs[r] != 0) infeasible = true;
                row_active[r] = 0;
                changed = true;
            } else if (live == 1) {
                Group& g = groups[the_one];
                Rational coef_here;
                for (const auto& e : g.entries)
                    if (e.row == r) coef_here = e.coef;
                Rational v = rhs[r] / coef_here;
                g.active = false;
                g.forced = true;
                g.forced_value = v;
                for (const auto& e : g.entries) rhs[e.row] -= e.coef * v;
                row_active[r] = 0;
                changed = true;
            }
        }
    }

    FillingResult result;
    if (infeasible) {
        result.status = LpStatus::infeasible;
        return result;
    }

    // compress remaining rows and build simplex columns
    std::vector<std::size_t> row_map(nrows, SIZE_MAX);
    std::vector<Rational> b;
    for (std::size_t r = 0; r < nrows; ++r)
        if (row_active[r]) {
            row_map[r] = b.size();
            b.push_back(rhs[r]);
        }

    std::vector<detail::ExactSimplex::Column> simplex_cols;
    std::vector<std::pair<std::size_t, int>> col_origin;  // (group, +1/-1 split)
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        const Group& g = groups[gi];
        if (!g.active) continue;
        detail::ExactSimplex::Column pos, neg;
        for (const auto& e : g.entries) {
            if (row_map[e.row] == SIZE_MAX) continue;
            pos.entries.emplace_back(row_map[e.row], e.coef);
            neg.entries.emplace_back(row_map[e.row], -e.coef);
        }
        if (pos.entries.empty()) continue;  // touches eliminated rows only; optimal value is 0
        pos.cost = g.is_cell ? 1 : 0;
        neg.cost = pos.cost;
        simplex_cols.push_back(std::move(pos));
        col_origin.emplace_back(gi, +1);
        simplex_cols.push_back(std::move(neg));
        col_origin.emplace_back(gi, -1);
    }

    result.stats.rows = b.size();
    result.stats.cols = simplex_cols.size();

    std::vector<Rational> group_value(groups.size(), Rational(0));
    for (std::size_t gi = 0; gi < groups.size(); ++gi)
        if (groups[gi].forced) group_value[gi] = groups[gi].forced_value;

    if (!b.empty() || !simplex_cols.empty()) {
        detail::ExactSimplex solver(b.size(), simplex_cols, b);
        auto sol = solver.solve();
        result.stats.pivots = sol.pivots;
        if (!sol.feasible) {
            result.status = LpStatus::infeasible;
            return result;
        }
        result.stats.primal_value = sol.value;
        result.stats.dual_value = sol.value;  // verified equal inside the solver
        result.stats.duality_checked = true;
        for (std::size_t j = 0; j < sol.x.size(); ++j) {
            if (sol.x[j] == 0) continue;
            auto [gi, sign] = col_origin[j];
            group_value[gi] += Rational(sign) * sol.x[j];
        }
        detail::lp_solved_count()++;
    }

    FillingCertificate cert;
    cert.target = c;
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        if (group_value[gi] == 0) continue;
        const Group& g = groups[gi];
        if (g.is_cell) {
            cert.filling.add(cells[g.dict_index].first, cells[g.dict_index].second, group_value[gi]);
        } else {
            HTerm h = hterms[g.dict_index];
            h.coeff = -group_value[gi];  // boundary(filling) = c + h  <=>  filling - h-cols = c
            cert.h_terms.push_back(h);
        }
    }
    cert.value = cert.filling.l1_norm();
    if (!verify_filling_certificate(m, cert))
        throw InternalSoundnessError("filling certificate failed verification");
    result.status = LpStatus::solved;
    result.certificate = std::move(cert);
    return result;
}

// Half the h-relaxed truncated filling norm of the h-normal form: a certified
// upper bound for the stable mixed commutator length of the chain. nullopt
// means the truncated problem is infeasible; budget errors propagate.
inline std::optional<std::pair<Rational, FillingCertificate>> scl_upper_from_filling(
    const Marking& m, const Chain1& c, int length_budget) {
    if (!chain_in_CQ(m, c)) throw NotInSubgroupError("chain is not in C_Q(G,N)");
    Chain1 hc = h_normal_form(c);
    FillingNormOptions opt;
    opt.length_budget = length_budget;
    opt.allow_h = true;
    FillingResult res = truncated_filling_norm(m, hc, opt);
    if (res.status != LpStatus::solved) return std::nullopt;
    return std::make_pair(res.certificate->value / 2, *res.certificate);
}

inline long lp_instances_solved() { return detail::lp_solved_count().load(); }
inline long lp_duality_failure_count() { return detail::lp_duality_failures().load(); }

}  // namespace sclforge
