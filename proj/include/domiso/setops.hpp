#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "domiso/graph.hpp"

namespace domiso {

namespace detail {
inline void require_collapsed(const ProductGraph& g, const char* op) {
    if (g.mode() != ProductGraph::Mode::Collapsed)
        throw std::domain_error(std::string(op) + " is defined on collapsed graphs");
}
}  // namespace detail

// c_i(T): within every fiber along coordinate i, replace the members by the
// first k part labels, k = member count of the fiber
inline VertexSet compress(const VertexSet& T, long i) {
    const ProductGraph& g = T.graph();
    detail::require_collapsed(g, "compress");
    if (i < 0 || i >= g.n()) throw std::out_of_range("compress coordinate out of range");
    std::uint64_t t = g.radix(i);
    std::uint64_t stride = 1;
    for (long k = g.n() - 1; k > i; --k) stride *= g.radix(k);
    std::uint64_t block = stride * t;
    VertexSet out(g);
    for (std::uint64_t base = 0; base < g.size(); base += block)
        for (std::uint64_t off = 0; off < stride; ++off) {
            std::uint64_t cnt = 0;
            for (std::uint64_t a = 0; a < t; ++a)
                if (T.test(base + off + a * stride)) ++cnt;
            for (std::uint64_t a = 0; a < cnt; ++a) out.set(base + off + a * stride);
        }
    return out;
}

inline bool is_compressed(const VertexSet& T) {
    for (long i = 0; i < T.graph().n(); ++i)
        if (!(compress(T, i) == T)) return false;
    return true;
}

struct CompressionRun {
    VertexSet fixed_point;
    std::vector<long> applied;  // 1-based coordinates, in application order
};

// round-robin sweeps until a full pass changes nothing; the sum of member
// indices strictly decreases at each effective step, which bounds the run
inline CompressionRun compress_fully(const VertexSet& T) {
    const ProductGraph& g = T.graph();
    detail::require_collapsed(g, "compress_fully");
    auto potential = [](const VertexSet& s) {
        std::uint64_t p = 0;
        s.for_each([&](std::uint64_t v) { p += v; });
        return p;
    };
    CompressionRun run{T, {}};
    std::uint64_t pot = potential(run.fixed_point);
    bool changed = true;
    while (changed) {
        changed = false;
        for (long i = 0; i < g.n(); ++i) {
            VertexSet next = compress(run.fixed_point, i);
            if (!(next == run.fixed_point)) {
                std::uint64_t np = potential(next);
                if (np >= pot) throw std::logic_error("compression potential failed to decrease");
                pot = np;
                run.fixed_point = std::move(next);
                run.applied.push_back(i + 1);
                changed = true;
            }
        }
    }
    return run;
}

using Pattern = std::uint32_t;  // bit i set <=> coordinate i+1 lies outside part 1

// Pi(x): 0 where the coordinate label is 1, 1 otherwise
inline Pattern pattern_of(const ProductGraph& g, std::uint64_t v) {
    Pattern z = 0;
    for (long i = 0; i < g.n(); ++i)
        if (g.label(v, i) != 1) z |= Pattern(1) << i;
    return z;
}

inline std::set<Pattern> pi_image(const VertexSet& T) {
    const ProductGraph& g = T.graph();
    detail::require_collapsed(g, "pi_image");
    if (g.n() > 30) throw std::domain_error("too many coordinates for pattern sets");
    std::set<Pattern> out;
    T.for_each([&](std::uint64_t v) { out.insert(pattern_of(g, v)); });
    return out;
}

inline VertexSet pattern_preimage(const ProductGraph& g, Pattern z) {
    detail::require_collapsed(g, "pattern_preimage");
    VertexSet out(g);
    for (std::uint64_t v = 0; v < g.size(); ++v)
        if (pattern_of(g, v) == z) out.set(v);
    return out;
}

inline VertexSet patterns_preimage(const ProductGraph& g, const std::set<Pattern>& zs) {
    detail::require_collapsed(g, "patterns_preimage");
    VertexSet out(g);
    for (std::uint64_t v = 0; v < g.size(); ++v)
        if (zs.count(pattern_of(g, v))) out.set(v);
    return out;
}

// rho of one pattern class: product of beta or (1-beta) per coordinate
inline Rat pattern_rho(const ProductGraph& g, Pattern z) {
    Rat r = 1;
    for (long i = 0; i < g.n(); ++i) {
        Rat b = g.spec().factors[i].beta();
        r *= (z >> i & 1) ? rat(1) - b : b;
    }
    return r;
}

struct CompressedBoundary {
    VertexSet set;
    Rat rho;
};

// boundary of a compressed set as the union of complemented pattern classes
inline CompressedBoundary compressed_boundary(const VertexSet& T) {
    const ProductGraph& g = T.graph();
    detail::require_collapsed(g, "compressed_boundary");
    if (!is_compressed(T)) throw std::domain_error("compressed_boundary requires a compressed set");
    Pattern all = (Pattern(1) << g.n()) - 1;
    std::set<Pattern> complements;
    for (Pattern z : pi_image(T)) complements.insert(~z & all);
    Rat r = 0;
    for (Pattern z : complements) r += pattern_rho(g, z);
    return {patterns_preimage(g, complements), r};
}

// folding toward the first part of the distinguished last coordinate;
// A is a set of 1-based coordinates, none equal to n
inline VertexSet fold(const VertexSet& T, const std::vector<long>& A) {
    const ProductGraph& g = T.graph();
    detail::require_collapsed(g, "fold");
    if (!g.spec().is_beta_ascending())
        throw std::domain_error("fold requires factors in beta-ascending order");
    long n = g.n();
    Pattern amask = 0;
    for (long c : A) {
        if (c < 1 || c >= n) throw std::out_of_range("fold coordinate set must lie in [1, n-1]");
        amask |= Pattern(1) << (c - 1);
    }
    Pattern nbit = Pattern(1) << (n - 1);
    Pattern flip = amask | nbit;
    std::set<Pattern> zs = pi_image(T);
    std::set<Pattern> out;
    for (Pattern z : zs) {
        bool moves = (z & amask) == 0 && (z & nbit) && !zs.count(z ^ flip);
        out.insert(moves ? z ^ flip : z);
    }
    return patterns_preimage(g, out);
}

}  // namespace domiso
