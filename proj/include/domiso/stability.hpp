#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "domiso/graph.hpp"
#include "domiso/interval.hpp"

namespace domiso {

namespace detail {
// balanced, part counts non-increasing, smallest at least min_tn
inline long stability_tn(const ProductGraph& g, long min_tn) {
    if (!g.spec().balanced()) throw std::domain_error("stability results require balanced factors");
    if (!g.spec().is_t_descending())
        throw std::domain_error("stability results require t-descending factor order");
    long tn = g.parts(g.n() - 1);
    if (tn < min_tn)
        throw std::domain_error("stability results require at least " + std::to_string(min_tn) +
                                " parts per factor");
    return tn;
}
}  // namespace detail

// lower bound for the defect eps in terms of the mass delta outside one fiber
inline Interval prop2_lower_bound(long t_j, long t_n, const Rat& delta,
                                  mpfr_prec_t bits = kDefaultBits) {
    if (t_n < 3 || t_j < t_n) throw std::domain_error("prop2 requires t_j >= t_n >= 3");
    if (delta < 0 || delta > 1) throw std::domain_error("delta must lie in [0,1]");
    Rat base = rat(1) - rat(t_n, t_j) - delta * t_n;
    if (delta == 0) return Interval::of(base, bits);
    Interval p = pow_i(Interval::of(delta / (t_j - 1), bits), inv_eta(t_n, bits));
    return base + rat(t_n, t_j - 1) * p;
}

struct StabilityReport {
    Rat mu;         // measure of I
    Rat eps;        // mu = (1/t_n)(1 - eps)
    bool has_witness = false;
    long j = 0;     // 1-based coordinate
    long a = 0;     // 1-based part
    Rat delta;      // mu(I \ J_{a,j})
    Interval bound; // 4 eps^{eta(t_n)}
    Rat t_threshold;  // t_n/(1-eps)
    enum class Status { Ok, Extremal, Fail } status = Status::Fail;
};

inline const char* to_string(StabilityReport::Status s) {
    switch (s) {
        case StabilityReport::Status::Ok: return "ok";
        case StabilityReport::Status::Extremal: return "extremal";
        default: return "fail";
    }
}

// Verifies the stability guarantee for one independent set: some fiber J_{a,j}
// with t_j < t_n/(1-eps) carries all but < 4 eps^eta of I. At eps = 0 the
// strict inequalities are unsatisfiable, so containment in a fiber of a
// smallest-part-count coordinate is reported as "extremal" rather than a
// failure.
inline StabilityReport thm6_verify(const VertexSet& I, mpfr_prec_t bits = kDefaultBits) {
    const ProductGraph& g = I.graph();
    long tn = detail::stability_tn(g, 3);
    if (!is_independent(I)) throw std::domain_error("stability verification needs an independent set");
    StabilityReport rep;
    rep.mu = I.measure();
    if (!exceeds_omega(rep.mu, tn, bits))
        throw std::domain_error("independent set below the omega density threshold");
    rep.eps = rat(1) - rat(tn) * rep.mu;
    if (rep.eps < 0) throw std::logic_error("independent set larger than the independence number");
    rep.t_threshold = rat(tn) / (rat(1) - rep.eps);
    rep.bound = Interval::of(rat(0), bits);

    if (rep.eps == 0) {
        // exactly maximal: look for a containing fiber with t_j = t_n
        for (long j = 0; j < g.n(); ++j) {
            if (g.parts(j) != tn) continue;
            for (long a = 1; a <= g.parts(j); ++a) {
                if (I.minus(fiber(g, j, a)).empty()) {
                    rep.has_witness = true;
                    rep.j = j + 1;
                    rep.a = a;
                    rep.delta = 0;
                    rep.status = StabilityReport::Status::Extremal;
                    return rep;
                }
            }
        }
        rep.status = StabilityReport::Status::Fail;
        return rep;
    }

    // among coordinates satisfying the part-count condition, minimize delta
    bool found = false;
    Rat best_delta;
    long bj = 0, ba = 0;
    for (long j = 0; j < g.n(); ++j) {
        if (rat(g.parts(j)) >= rep.t_threshold) continue;
        for (long a = 1; a <= g.parts(j); ++a) {
            Rat d = I.minus(fiber(g, j, a)).measure();
            if (!found || d < best_delta) {
                found = true;
                best_delta = d;
                bj = j + 1;
                ba = a;
            }
        }
    }
    if (!found) {
        rep.status = StabilityReport::Status::Fail;
        return rep;
    }
    rep.has_witness = true;
    rep.j = bj;
    rep.a = ba;
    rep.delta = best_delta;
    for (mpfr_prec_t p = bits;; p *= 2) {
        Interval b = rat(4) * pow_i(Interval::of(rep.eps, p), eta(tn, p));
        int c = b.compare_rat(rep.delta);
        if (c == -1) {  // delta certainly below the bound
            rep.bound = b;
            rep.status = StabilityReport::Status::Ok;
            return rep;
        }
        if (c == 1) {  // delta certainly above
            rep.bound = b;
            rep.status = StabilityReport::Status::Fail;
            return rep;
        }
        if (p >= kMaxBits)
            throw IndeterminateComparison("stability bound comparison undecided at precision cap");
    }
}

// Every independent set with measure strictly above the threshold, each
// exactly once: maximal independent sets by pivoting clique enumeration on
// the complement, then qualifying subsets with global deduplication.
inline std::vector<VertexSet> enumerate_large_independent_sets(const ProductGraph& g,
                                                               const Rat& threshold,
                                                               std::uint64_t budget = 64) {
    std::uint64_t U = g.size();
    if (U > budget || U > 64)
        throw BudgetExceeded("enumeration supports at most min(budget, 64) vertices");
    std::vector<std::uint64_t> co(U, 0);  // complement adjacency = can coexist
    for (std::uint64_t v = 0; v < U; ++v)
        for (std::uint64_t u = 0; u < U; ++u)
            if (u != v && !g.adjacent(u, v)) co[v] |= 1ull << u;
    std::uint64_t all = U == 64 ? ~0ull : (1ull << U) - 1;

    std::vector<std::uint64_t> maximal;
    auto bk = [&](auto&& self, std::uint64_t R, std::uint64_t P, std::uint64_t X) -> void {
        if (!P && !X) {
            maximal.push_back(R);
            return;
        }
        std::uint64_t PX = P | X, pivot = 0, best = 0;
        bool first = true;
        while (PX) {
            std::uint64_t v = __builtin_ctzll(PX);
            PX &= PX - 1;
            std::uint64_t deg = __builtin_popcountll(co[v] & P);
            if (first || deg > best) {
                first = false;
                best = deg;
                pivot = v;
            }
        }
        std::uint64_t ext = P & ~co[pivot];
        while (ext) {
            std::uint64_t v = __builtin_ctzll(ext);
            ext &= ext - 1;
            std::uint64_t bit = 1ull << v;
            self(self, R | bit, P & co[v], X & co[v]);
            P &= ~bit;
            X |= bit;
        }
    };
    bk(bk, 0, all, 0);

    // minimal member weight sum achieving measure > threshold
    auto den64 = to_i64(g.weight_den());
    if (!den64) throw BudgetExceeded("weights too large for enumeration");
    std::int64_t need = static_cast<std::int64_t>(rat_floor(threshold * rat(Int(*den64), 1)).get_si()) + 1;

    std::set<std::uint64_t> out;
    for (std::uint64_t M : maximal) {
        std::vector<std::uint64_t> vs;
        std::vector<std::int64_t> w;
        std::uint64_t m = M;
        while (m) {
            std::uint64_t v = __builtin_ctzll(m);
            m &= m - 1;
            vs.push_back(v);
            w.push_back(g.weight_num(v));
        }
        std::vector<std::int64_t> suffix(vs.size() + 1, 0);
        for (long i = static_cast<long>(vs.size()) - 1; i >= 0; --i) suffix[i] = suffix[i + 1] + w[i];
        auto rec = [&](auto&& self, std::size_t i, std::uint64_t cur, std::int64_t cw) -> void {
            if (cw >= need) out.insert(cur);
            if (i == vs.size() || cw + suffix[i] < need) return;
            self(self, i + 1, cur | (1ull << vs[i]), cw + w[i]);
            self(self, i + 1, cur, cw);
        };
        rec(rec, 0, 0, 0);
    }
    std::vector<VertexSet> res;
    for (std::uint64_t m : out) {
        VertexSet s(g);
        std::uint64_t mm = m;
        while (mm) {
            std::uint64_t v = __builtin_ctzll(mm);
            mm &= mm - 1;
            s.set(v);
        }
        res.push_back(std::move(s));
    }
    return res;
}

// a rational cut equivalent to "measure > omega(t_n)" on this graph's measure
// lattice (weights are integers over a common denominator)
inline Rat omega_cut(const ProductGraph& g, mpfr_prec_t bits = kDefaultBits) {
    long tn = detail::stability_tn(g, 3);
    auto den64 = to_i64(g.weight_den());
    if (!den64) throw BudgetExceeded("weights too large for the omega cut");
    std::int64_t lo = 0, hi = *den64;  // smallest w with w/den > omega
    while (lo < hi) {
        std::int64_t mid = lo + (hi - lo) / 2;
        if (exceeds_omega(rat(Int(mid), Int(*den64)), tn, bits))
            hi = mid;
        else
            lo = mid + 1;
    }
    return rat(Int(lo - 1), Int(*den64));
}

enum class DeltaZone { Small, Large, Middle };

struct DichotomyEntry {
    long j;  // 1-based coordinate
    Rat delta;
    Rat small_bound;  // (t_j - 1)/t_j^5
    Rat large_bound;  // (2 t_j - 1)(t_j - 1)/t_j^4
    DeltaZone zone;
};

// for sorted large independent sets, the mass outside the heaviest fiber of
// each coordinate avoids the middle zone between the two printed bounds
inline std::vector<DichotomyEntry> lemma4_dichotomy_check(const VertexSet& I,
                                                          mpfr_prec_t bits = kDefaultBits) {
    const ProductGraph& g = I.graph();
    long tn = detail::stability_tn(g, 3);
    if (!is_sorted_set(I)) throw std::domain_error("dichotomy check requires a sorted set");
    if (!is_independent(I)) throw std::domain_error("dichotomy check requires an independent set");
    if (!exceeds_omega(I.measure(), tn, bits))
        throw std::domain_error("independent set below the omega density threshold");
    std::vector<DichotomyEntry> out;
    for (long j = 0; j < g.n(); ++j) {
        long t = g.parts(j);
        Rat tj = rat(t);
        DichotomyEntry e;
        e.j = j + 1;
        e.delta = I.minus(fiber(g, j, 1)).measure();
        e.small_bound = rat(t - 1) / pow_rat(tj, 5);
        e.large_bound = rat(2 * t - 1) * rat(t - 1) / pow_rat(tj, 4);
        e.zone = e.delta < e.small_bound  ? DeltaZone::Small
                 : e.delta > e.large_bound ? DeltaZone::Large
                                           : DeltaZone::Middle;
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace domiso
