#pragma once

#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

#include "domiso/graph.hpp"
#include "domiso/interval.hpp"
#include "domiso/spec.hpp"

namespace domiso {

struct HypothesisCheck {
    bool ok;
    std::vector<long> witness;  // 1-based violating subset of [n-1] when !ok
};

struct HypothesisViolated : std::runtime_error {
    std::vector<long> witness;
    explicit HypothesisViolated(std::vector<long> w)
        : std::runtime_error("profile recursion hypothesis fails"), witness(std::move(w)) {}
};

// checks prod_{k in A} (1-beta_k)/beta_k >= (1-beta_n)/beta_n for all nonempty
// A within the first n-1 factors; the minimum over A is attained by the set of
// ratios below one (or a singleton when none are), so one exact product decides
inline HypothesisCheck check_recursion_hypothesis(const ProductSpec& spec) {
    if (!spec.is_beta_ascending())
        throw std::domain_error("hypothesis check requires beta-ascending factor order");
    long n = spec.n();
    if (n == 1) return {true, {}};
    auto ratio = [&](long i) -> Rat {
        Rat b = spec.factors[i].beta();
        return (rat(1) - b) / b;
    };
    Rat rn = ratio(n - 1);
    std::vector<long> small;
    Rat prod = 1;
    for (long k = 0; k < n - 1; ++k) {
        Rat r = ratio(k);
        if (r < 1) {
            small.push_back(k + 1);
            prod *= r;
        }
    }
    if (small.empty()) {
        // ratios are non-increasing, so the singleton {n-1} is the minimum
        if (ratio(n - 2) >= rn) return {true, {}};
        return {false, {n - 1}};
    }
    if (prod >= rn) return {true, {}};
    return {false, small};
}

namespace detail {
inline void require_profile_pre(const ProductSpec& spec, const Rat& nu) {
    if (nu < 0 || nu > 1) throw std::domain_error("nu must lie in [0,1]");
    auto h = check_recursion_hypothesis(spec);
    if (!h.ok) throw HypothesisViolated(h.witness);
}
}  // namespace detail

// exact evaluation of the recursive profile formula
inline Rat profile_eval(const ProductSpec& spec, const Rat& nu) {
    detail::require_profile_pre(spec, nu);
    auto betas = spec.betas();
    auto rec = [&](auto&& self, long k, Rat v) -> Rat {
        if (v == 0) return rat(0);
        const Rat& b = betas[k];
        if (k == 0) return v <= b ? rat(1) - b : rat(1);
        if (v <= b) return (rat(1) - b) * self(self, k - 1, v / b);
        return rat(1) - b + b * self(self, k - 1, (v - b) / (rat(1) - b));
    };
    return rec(rec, spec.n() - 1, nu);
}

// step representation: value holds on (prev threshold, threshold]; profile is 0 at 0
using ProfileStep = std::vector<std::pair<Rat, Rat>>;

inline ProfileStep profile_steps(const ProductSpec& spec) {
    detail::require_profile_pre(spec, rat(0));
    auto betas = spec.betas();
    auto merge_push = [](ProfileStep& steps, Rat thr, Rat val) {
        if (!steps.empty() && steps.back().second == val)
            steps.back().first = thr;
        else
            steps.emplace_back(std::move(thr), std::move(val));
    };
    ProfileStep cur;
    {
        const Rat& b = betas[0];
        merge_push(cur, b, rat(1) - b);
        if (b < 1) merge_push(cur, rat(1), rat(1));
    }
    for (long k = 1; k < spec.n(); ++k) {
        const Rat& b = betas[k];
        ProfileStep next;
        for (const auto& [thr, val] : cur) merge_push(next, b * thr, (rat(1) - b) * val);
        if (b < 1)
            for (const auto& [thr, val] : cur)
                merge_push(next, b + (rat(1) - b) * thr, rat(1) - b + b * val);
        cur = std::move(next);
    }
    return cur;
}

inline Rat profile_step_lookup(const ProfileStep& steps, const Rat& nu) {
    if (nu == 0) return rat(0);
    for (const auto& [thr, val] : steps)
        if (nu <= thr) return val;
    throw std::domain_error("nu beyond the last threshold");
}

// ---------------------------------------------------------------------------
// exhaustive oracle over the collapsed graph

struct OracleResult {
    Rat value;
    VertexSet witness;
};

// Enumerates every subset of the collapsed universe once; per-subset boundary
// masks and weights are built by dynamic programming on the lowest bit.
// Witness selection: min boundary, then max rho(S), then lexicographic.
class ProfileOracle {
  public:
    explicit ProfileOracle(const ProductSpec& spec, std::uint64_t budget = 22)
        : g_(ProductGraph::collapsed(spec, 1ull << 25)) {
        std::uint64_t U = g_.size();
        if (U > budget)
            throw BudgetExceeded("collapsed universe " + std::to_string(U) +
                                 " exceeds the oracle budget " + std::to_string(budget));
        if (U > 24) throw BudgetExceeded("oracle budget cannot exceed 24 vertices");
        auto d = to_i64(g_.weight_den());
        if (!d) throw BudgetExceeded("weights too large for the oracle");
        den_ = *d;
        std::vector<std::uint32_t> nbr(U, 0);
        for (std::uint64_t v = 0; v < U; ++v)
            for (std::uint64_t u = 0; u < U; ++u)
                if (u != v && g_.adjacent(u, v)) nbr[v] |= 1u << u;
        std::uint64_t total = 1ull << U;
        bmask_.assign(total, 0);
        wsum_.assign(total, 0);
        for (std::uint64_t s = 1; s < total; ++s) {
            std::uint32_t low = __builtin_ctzll(s);
            std::uint64_t rest = s & (s - 1);
            bmask_[s] = bmask_[rest] | nbr[low];
            wsum_[s] = wsum_[rest] + g_.weight_num(low);
        }
    }

    const ProductGraph& graph() const { return g_; }
    std::int64_t weight_den() const { return den_; }
    void set_threads(long k) { threads_ = std::max(1L, k); }

    // smallest total weight a qualifying set must reach: ceil(nu * den)
    std::int64_t min_weight(const Rat& nu) const {
        return static_cast<std::int64_t>(rat_ceil(nu * rat(Int(den_), 1)).get_si());
    }

    OracleResult eval(const Rat& nu) const {
        if (nu < 0 || nu > 1) throw std::domain_error("nu must lie in [0,1]");
        if (nu == 0) return {rat(0), VertexSet(g_)};
        std::int64_t need = min_weight(nu);
        std::uint64_t total = bmask_.size();
        struct Best {
            bool found = false;
            std::int64_t b = 0, w = 0;
            std::uint64_t s = 0;
        };
        auto scan = [&](std::uint64_t from, std::uint64_t to) {
            Best loc;
            for (std::uint64_t s = from; s < to; ++s) {
                if (wsum_[s] < need) continue;
                std::int64_t b = wsum_[bmask_[s]];
                if (!loc.found || b < loc.b || (b == loc.b && wsum_[s] > loc.w) ||
                    (b == loc.b && wsum_[s] == loc.w && lex_less_mask(s, loc.s))) {
                    loc = {true, b, wsum_[s], s};
                }
            }
            return loc;
        };
        Best best;
        auto merge = [&](const Best& o) {
            if (!o.found) return;
            if (!best.found || o.b < best.b || (o.b == best.b && o.w > best.w) ||
                (o.b == best.b && o.w == best.w && lex_less_mask(o.s, best.s)))
                best = o;
        };
        if (threads_ <= 1 || total < (1u << 16)) {
            best = scan(0, total);
        } else {
            long k = threads_;
            std::vector<Best> parts(k);
            std::vector<std::thread> pool;
            for (long i = 0; i < k; ++i) {
                std::uint64_t from = total / k * i;
                std::uint64_t to = i + 1 == k ? total : total / k * (i + 1);
                pool.emplace_back([&, i, from, to] { parts[i] = scan(from, to); });
            }
            for (auto& th : pool) th.join();
            for (const auto& p : parts) merge(p);  // chunk order; the order is total anyway
        }
        if (!best.found) throw std::domain_error("no subset reaches the requested measure");
        OracleResult res{rat(Int(best.b), Int(den_)), VertexSet(g_)};
        for (std::uint64_t v = 0; v < g_.size(); ++v)
            if (best.s >> v & 1) res.witness.set(v);
        return res;
    }

    // min boundary weight per achieved set weight, suffix-minimized, so
    // lookup(nu) = table[min_weight(nu)]
    std::vector<std::int64_t> boundary_by_weight() const {
        std::vector<std::int64_t> best(den_ + 1, -1);
        std::uint64_t total = bmask_.size();
        for (std::uint64_t s = 0; s < total; ++s) {
            std::int64_t w = wsum_[s], b = wsum_[bmask_[s]];
            if (best[w] < 0 || b < best[w]) best[w] = b;
        }
        for (std::int64_t w = den_ - 1; w >= 0; --w)
            if (best[w + 1] >= 0 && (best[w] < 0 || best[w + 1] < best[w])) best[w] = best[w + 1];
        return best;
    }

    // optimum with the same measure and boundary as the max-measure optimum,
    // nested with the heaviest fiber of the last coordinate
    VertexSet nested_witness(const Rat& nu) const {
        OracleResult opt = eval(nu);
        std::int64_t bstar = opt.value.get_num().get_si() * (den_ / opt.value.get_den().get_si());
        std::int64_t wstar = 0;
        opt.witness.for_each([&](std::uint64_t v) { wstar += g_.weight_num(v); });
        std::uint32_t jmask = 0;
        for (std::uint64_t v = 0; v < g_.size(); ++v)
            if (g_.label(v, g_.n() - 1) == 1) jmask |= 1u << v;
        std::uint64_t total = bmask_.size();
        bool found = false;
        std::uint64_t best_s = 0;
        for (std::uint64_t s = 0; s < total; ++s) {
            if (wsum_[s] != wstar || wsum_[bmask_[s]] != bstar) continue;
            std::uint32_t m = static_cast<std::uint32_t>(s);
            bool nested = (m & ~jmask) == 0 || (jmask & ~m) == 0;
            if (!nested) continue;
            if (!found || lex_less_mask(s, best_s)) {
                found = true;
                best_s = s;
            }
        }
        if (!found)
            throw std::logic_error("no nested optimum exists; the nesting claim failed here");
        VertexSet out(g_);
        for (std::uint64_t v = 0; v < g_.size(); ++v)
            if (best_s >> v & 1) out.set(v);
        return out;
    }

  private:
    static bool lex_less_mask(std::uint64_t a, std::uint64_t b) {
        std::uint64_t d = a ^ b;
        if (!d) return false;
        return a & (d & (~d + 1));
    }

    ProductGraph g_;
    long threads_ = 1;
    std::int64_t den_;
    std::vector<std::uint32_t> bmask_;
    std::vector<std::int64_t> wsum_;
};

inline OracleResult profile_oracle(const ProductSpec& spec, const Rat& nu, std::uint64_t budget = 22) {
    return ProfileOracle(spec, budget).eval(nu);
}

inline VertexSet nested_optimum_witness(const ProductSpec& spec, const Rat& nu,
                                        std::uint64_t budget = 22) {
    detail::require_profile_pre(spec, nu);
    return ProfileOracle(spec, budget).nested_witness(nu);
}

// ---------------------------------------------------------------------------

// certified enclosure of nu^c with c = log(1-beta)/log(beta); both logs are of
// numbers below one, so c lies in (0,1] and the bound is below the profile
inline Interval corollary1_bound(const Rat& nu, const Rat& beta, mpfr_prec_t bits = kDefaultBits) {
    if (beta <= 0 || beta > rat(1, 2))
        throw std::domain_error("profile lower bound requires 0 < beta <= 1/2");
    if (nu < 0 || nu > 1) throw std::domain_error("nu must lie in [0,1]");
    if (nu == 0) return Interval::of(rat(0), bits);
    if (nu == 1) return Interval::of(rat(1), bits);
    for (mpfr_prec_t p = bits;; p *= 2) {
        Interval c = log_i(Interval::of(rat(1) - beta, p)) / log_i(Interval::of(beta, p));
        Interval out = exp_i(c * log_i(Interval::of(nu, p)));
        if (out.width_d() <= 1e-12 || p >= kMaxBits) return out;
    }
}

}  // namespace domiso
