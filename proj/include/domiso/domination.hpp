#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "domiso/graph.hpp"

namespace domiso {

// ---------------------------------------------------------------------------
// irredundance certificates

struct IrredundantCertificate {
    struct Member {
        std::uint64_t v;
        bool lonely;
        std::uint64_t private_neighbor;  // valid when !lonely
    };
    std::vector<Member> members;  // in vertex index order
    VertexSet lon, soc;
};

struct RedundancyWitness {
    std::uint64_t v;  // N[S \ {v}] = N[S]
};

// Per-member check: lonely, or the smallest-index outside vertex whose unique
// neighbor in S is the member. Fails with the smallest redundant vertex.
inline std::variant<IrredundantCertificate, RedundancyWitness> irredundance_certificate(
    const VertexSet& S) {
    const ProductGraph& g = S.graph();
    if (S.empty()) throw std::domain_error("irredundance certificate of an empty set");
    auto counts = adjacency_counts(S);
    IrredundantCertificate cert{{}, VertexSet(g), VertexSet(g)};
    std::optional<RedundancyWitness> fail;
    S.for_each([&](std::uint64_t v) {
        if (fail) return;
        if (counts[g.label_index(v)] == 0) {
            cert.members.push_back({v, true, 0});
            cert.lon.set(v);
            return;
        }
        for (std::uint64_t w = 0; w < g.size(); ++w) {
            if (S.test(w) || counts[g.label_index(w)] != 1 || !g.adjacent(v, w)) continue;
            cert.members.push_back({v, false, w});
            cert.soc.set(v);
            return;
        }
        fail = RedundancyWitness{v};
    });
    if (fail) return *fail;
    return cert;
}

inline bool is_irredundant(const VertexSet& S) {
    if (S.empty()) return true;
    return std::holds_alternative<IrredundantCertificate>(irredundance_certificate(S));
}

inline bool is_dominating(const VertexSet& S) {
    return closed_neighborhood(S) == full_set(S.graph());
}

// rank of the multilinear polynomials attached to the chosen private
// neighbors; equals |Soc| and so certifies |Soc| <= 2^n
inline long soc_rank_certificate(const IrredundantCertificate& cert) {
    const ProductGraph& g = cert.lon.graph();
    long n = g.n();
    if (n > 20) throw std::domain_error("too many coordinates for the polynomial certificate");
    std::size_t cols = std::size_t(1) << n;
    std::vector<std::vector<Int>> M;
    for (const auto& m : cert.members) {
        if (m.lonely) continue;
        std::vector<long> c(n);
        for (long i = 0; i < n; ++i) c[i] = g.label(m.private_neighbor, i);
        // coefficient of prod_{i in B} x_i in prod_i (x_i - c_i)
        std::vector<Int> row(cols);
        for (std::size_t B = 0; B < cols; ++B) {
            Int coef = 1;
            for (long i = 0; i < n; ++i)
                if (!(B >> i & 1)) coef *= -c[i];
            row[B] = coef;
        }
        M.push_back(std::move(row));
    }
    long r = 0;
    for (std::size_t col = 0; col < cols && r < static_cast<long>(M.size()); ++col) {
        long pivot = -1;
        for (long row = r; row < static_cast<long>(M.size()); ++row)
            if (M[row][col] != 0) {
                pivot = row;
                break;
            }
        if (pivot < 0) continue;
        std::swap(M[r], M[pivot]);
        for (long row = r + 1; row < static_cast<long>(M.size()); ++row) {
            if (M[row][col] == 0) continue;
            Int a = M[r][col], b = M[row][col];
            for (std::size_t k = col; k < cols; ++k) M[row][k] = M[row][k] * a - M[r][k] * b;
        }
        ++r;
    }
    return r;
}

// ---------------------------------------------------------------------------
// exact solvers

struct SolveReport {
    std::string param;  // "alpha" | "gamma" | "ir"
    Int value;
    VertexSet witness;
    bool optimal;
    std::uint64_t nodes;
    std::int64_t millis;
};

struct SolveOptions {
    std::uint64_t budget = 64;  // max vertices; beyond 64 still exact, just slower
    double timeout_seconds = 60.0;
};

namespace detail {

constexpr std::uint64_t kSolverHardCap = 4096;

struct Bits {
    std::vector<std::uint64_t> w;
    explicit Bits(std::uint64_t n = 0) : w((n + 63) / 64, 0) {}
    void set(std::uint64_t v) { w[v >> 6] |= 1ull << (v & 63); }
    bool test(std::uint64_t v) const { return w[v >> 6] >> (v & 63) & 1; }
    bool empty() const {
        for (auto x : w)
            if (x) return false;
        return true;
    }
    long lowest() const {
        for (std::size_t i = 0; i < w.size(); ++i)
            if (w[i]) return static_cast<long>(i * 64 + __builtin_ctzll(w[i]));
        return -1;
    }
    void clear_below(std::uint64_t v) {  // clear bits < v
        std::size_t wi = v >> 6;
        for (std::size_t i = 0; i < wi; ++i) w[i] = 0;
        if (wi < w.size()) w[wi] &= ~((1ull << (v & 63)) - 1);
    }
    Bits and_not(const Bits& o) const {
        Bits r = *this;
        for (std::size_t i = 0; i < w.size(); ++i) r.w[i] &= ~o.w[i];
        return r;
    }
    Bits operator&(const Bits& o) const {
        Bits r = *this;
        for (std::size_t i = 0; i < w.size(); ++i) r.w[i] &= o.w[i];
        return r;
    }
    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t i = 0; i < w.size(); ++i) {
            std::uint64_t x = w[i];
            while (x) {
                f(static_cast<std::uint64_t>(i * 64 + __builtin_ctzll(x)));
                x &= x - 1;
            }
        }
    }
};

// partition of the vertices into cliques; an independent set meets each class
// at most once, so the number of classes among candidates bounds the search
inline std::vector<std::uint32_t> clique_cover(const ProductGraph& g) {
    std::vector<std::uint32_t> cls(g.size());
    if (g.spec().balanced()) {
        // diagonal classes stepped by the coordinate with fewest parts
        long m = 0;
        for (long i = 1; i < g.n(); ++i)
            if (g.parts(i) < g.parts(m)) m = i;
        bool fullmode = g.mode() == ProductGraph::Mode::Full;
        for (std::uint64_t v = 0; v < g.size(); ++v) {
            auto d = g.decode(v);
            long n = g.n();
            std::vector<long> rep(n);
            long k = g.label(v, m) - 1;
            for (long i = 0; i < n; ++i) {
                long t = g.parts(i);
                long part = g.label(v, i) - 1;
                long np = ((part - k) % t + t) % t;
                if (fullmode) {
                    long u = g.part_size(i, 1);
                    long within = (d[i] - 1) - part * u;
                    rep[i] = np * u + within + 1;
                } else {
                    rep[i] = np + 1;
                }
            }
            cls[v] = static_cast<std::uint32_t>(g.encode(rep));
        }
    } else {
        // first-fit greedy: valid cover, not necessarily tight
        std::vector<std::vector<std::uint64_t>> cliques;
        for (std::uint64_t v = 0; v < g.size(); ++v) {
            bool placed = false;
            for (std::size_t c = 0; c < cliques.size() && !placed; ++c) {
                bool all = true;
                for (auto u : cliques[c])
                    if (!g.adjacent(u, v)) {
                        all = false;
                        break;
                    }
                if (all) {
                    cliques[c].push_back(v);
                    cls[v] = static_cast<std::uint32_t>(c);
                    placed = true;
                }
            }
            if (!placed) {
                cliques.push_back({v});
                cls[v] = static_cast<std::uint32_t>(cliques.size() - 1);
            }
        }
    }
    return cls;
}

struct Deadline {
    std::chrono::steady_clock::time_point end;
    bool expired = false;
    std::uint64_t tick = 0;
    bool check() {
        if (expired) return true;
        ++tick;
        if ((tick == 1 || (tick & 1023) == 0) && std::chrono::steady_clock::now() > end)
            expired = true;
        return expired;
    }
};

}  // namespace detail

// Exact maximum independent set. The search visits vertices grouped by the
// part label of a smallest-part-count coordinate, so an include-first descent
// reaches a heaviest fiber immediately; for balanced products the clique
// cover bound then closes the rest of the tree at once. Deterministic:
// include-first over the fixed order, strict improvement only.
inline SolveReport max_independent_set(const ProductGraph& g, const SolveOptions& opt = {}) {
    using detail::Bits;
    std::uint64_t U = g.size();
    if (U > opt.budget) throw BudgetExceeded("graph exceeds solver budget of " +
                                             std::to_string(opt.budget) + " vertices");
    if (U > detail::kSolverHardCap) throw BudgetExceeded("graph exceeds solver hard cap");
    auto t0 = std::chrono::steady_clock::now();
    detail::Deadline dl{t0 + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                 std::chrono::duration<double>(opt.timeout_seconds))};

    long m = 0;
    for (long i = 1; i < g.n(); ++i)
        if (g.parts(i) < g.parts(m)) m = i;
    std::vector<std::uint64_t> order(U);
    for (std::uint64_t v = 0; v < U; ++v) order[v] = v;
    std::stable_sort(order.begin(), order.end(), [&](std::uint64_t a, std::uint64_t b) {
        return g.label(a, m) < g.label(b, m);
    });

    long n = g.n();
    std::vector<std::uint16_t> lab(U * n);  // label vectors in slot space
    for (std::uint64_t i = 0; i < U; ++i)
        for (long k = 0; k < n; ++k)
            lab[i * n + k] = static_cast<std::uint16_t>(g.label(order[i], k));

    // adjacency rows built on demand; only include-chain vertices need them
    std::vector<Bits> adj(U);
    std::vector<char> have_row(U, 0);
    auto row = [&](std::uint64_t v) -> const Bits& {
        if (!have_row[v]) {
            Bits r(U);
            for (std::uint64_t u = 0; u < U; ++u) {
                if (u == v) continue;
                bool a = true;
                for (long k = 0; k < n; ++k)
                    if (lab[u * n + k] == lab[v * n + k]) {
                        a = false;
                        break;
                    }
                if (a) r.set(u);
            }
            adj[v] = std::move(r);
            have_row[v] = 1;
        }
        return adj[v];
    };

    auto cover = detail::clique_cover(g);
    std::vector<std::uint32_t> cls(U);
    for (std::uint64_t i = 0; i < U; ++i) cls[i] = cover[order[i]];

    std::vector<std::uint64_t> cur, best;
    std::uint64_t nodes = 0;
    std::vector<std::uint32_t> stamp(U, 0);
    std::uint32_t epoch = 0;

    auto distinct = [&](const Bits& cand) {
        ++epoch;
        std::uint64_t k = 0;
        cand.for_each([&](std::uint64_t v) {
            if (stamp[cls[v]] != epoch) {
                stamp[cls[v]] = epoch;
                ++k;
            }
        });
        return k;
    };

    auto rec = [&](auto&& self, Bits cand) -> void {
        ++nodes;
        if (dl.check()) return;
        if (cur.size() + distinct(cand) <= best.size()) return;
        long v = cand.lowest();
        if (v < 0) {
            if (cur.size() > best.size()) best = cur;
            return;
        }
        Bits inc = cand.and_not(row(v));
        inc.clear_below(v + 1);
        cur.push_back(v);
        self(self, std::move(inc));
        cur.pop_back();
        cand.clear_below(v + 1);
        self(self, std::move(cand));
    };

    Bits all(U);
    for (std::uint64_t v = 0; v < U; ++v) all.set(v);
    rec(rec, std::move(all));

    SolveReport rep{"alpha", Int(best.size()), VertexSet(g), !dl.expired, nodes, 0};
    for (auto v : best) rep.witness.set(order[v]);
    rep.millis = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
                     .count();
    return rep;
}

enum class UpperMode { IR, Gamma };

// exact IR (or Gamma, restricting records to dominating sets); irredundant
// sets are downward closed, so plain hereditary DFS with upper-bound caps
inline SolveReport upper_irredundance(const ProductGraph& g, UpperMode mode,
                                      const SolveOptions& opt = {}) {
    std::uint64_t U = g.size();
    if (U > opt.budget) throw BudgetExceeded("graph exceeds solver budget of " +
                                             std::to_string(opt.budget) + " vertices");
    if (U > detail::kSolverHardCap) throw BudgetExceeded("graph exceeds solver hard cap");
    auto t0 = std::chrono::steady_clock::now();
    detail::Deadline dl{t0 + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                 std::chrono::duration<double>(opt.timeout_seconds))};

    // caps: |Soc| <= 2^n gives IR <= alpha + 2^n; balanced products with
    // t_n >= 2 additionally satisfy the two-term minimum below
    SolveOptions alpha_opt = opt;
    SolveReport alpha_rep = max_independent_set(g, alpha_opt);
    Int cap = Int(U);
    if (alpha_rep.optimal && g.n() <= 40) {
        Int c1 = alpha_rep.value + (Int(1) << g.n());
        if (c1 < cap) cap = c1;
        if (g.spec().balanced()) {
            auto td = g.spec().canonical_t_desc();
            long tn = td.factors.back().part_count();
            if (tn >= 2) {
                Int c2 = alpha_rep.value + 2 * (g.spec().collapsed_count() / td.factors.front().part_count());
                Int c3 = rat_floor(rat(Int(tn) * tn, 2 * tn - 1) * Rat(alpha_rep.value));
                if (c2 < cap) cap = c2;
                if (c3 < cap) cap = c3;
            }
        }
    }

    std::vector<std::vector<std::uint64_t>> nbrs(U);
    for (std::uint64_t v = 0; v < U; ++v)
        for (std::uint64_t u = 0; u < U; ++u)
            if (u != v && g.adjacent(u, v)) nbrs[v].push_back(u);

    // closed neighborhoods of suffixes, for the domination feasibility prune
    std::vector<detail::Bits> suffix_closed;
    if (mode == UpperMode::Gamma) {
        suffix_closed.assign(U + 1, detail::Bits(U));
        for (long v = static_cast<long>(U) - 1; v >= 0; --v) {
            suffix_closed[v] = suffix_closed[v + 1];
            suffix_closed[v].set(v);
            for (auto u : nbrs[v]) suffix_closed[v].set(u);
        }
    }

    std::vector<std::uint64_t> cur, best;
    std::vector<long> scount(U, 0);  // neighbors in current set
    detail::Bits in_set(U), dominated(U);
    std::vector<long> dom_hits(U, 0);
    std::uint64_t nodes = 0;
    bool have_best = false;

    auto irredundant_with = [&](std::uint64_t v) {
        // counts as if v were added
        auto cnt = [&](std::uint64_t w) {
            long c = scount[w];
            if (g.adjacent(v, w)) ++c;
            return c;
        };
        auto has_private = [&](std::uint64_t u) {
            if (cnt(u) == 0) return true;  // lonely
            for (auto w : nbrs[u])
                if (w != v && !in_set.test(w) && cnt(w) == 1) return true;
            return false;
        };
        if (!has_private(v)) return false;
        for (auto u : cur)
            if (!has_private(u)) return false;
        return true;
    };

    auto record = [&]() {
        if (mode == UpperMode::Gamma) {
            for (std::uint64_t w = 0; w < U; ++w)
                if (!in_set.test(w) && dom_hits[w] == 0) return;
        }
        if (!have_best || cur.size() > best.size()) {
            best = cur;
            have_best = true;
        }
    };

    auto rec = [&](auto&& self, std::uint64_t pos) -> void {
        ++nodes;
        if (dl.check()) return;
        record();
        if (have_best && Int(best.size()) >= cap) return;
        if (have_best && cur.size() + (U - pos) <= best.size()) return;
        if (mode == UpperMode::Gamma) {
            // even taking every remaining vertex must dominate
            for (std::uint64_t w = 0; w < U; ++w)
                if (!in_set.test(w) && dom_hits[w] == 0 && !suffix_closed[pos].test(w)) return;
        }
        for (std::uint64_t v = pos; v < U; ++v) {
            if (have_best && cur.size() + (U - v) <= best.size()) break;
            if (!irredundant_with(v)) continue;
            cur.push_back(v);
            in_set.set(v);
            dom_hits[v] += 1;
            for (auto u : nbrs[v]) {
                ++scount[u];
                ++dom_hits[u];
            }
            self(self, v + 1);
            for (auto u : nbrs[v]) {
                --scount[u];
                --dom_hits[u];
            }
            dom_hits[v] -= 1;
            in_set.w[v >> 6] &= ~(1ull << (v & 63));
            cur.pop_back();
            if (have_best && Int(best.size()) >= cap) return;
        }
    };
    rec(rec, 0);

    SolveReport rep{mode == UpperMode::IR ? "ir" : "gamma", Int(best.size()), VertexSet(g),
                    !dl.expired, nodes, 0};
    for (auto v : best) rep.witness.set(v);
    rep.millis = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
                     .count();
    return rep;
}

}  // namespace domiso
