#pragma once

#include <cstdint>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "domiso/rational.hpp"
#include "domiso/spec.hpp"

namespace domiso {

constexpr std::uint64_t kDenseLimit = 1ull << 24;  // bit-indexed subset fits in 2 MiB

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A materialized product graph, in one of two views of the same spec:
//   Collapsed: vertices are part-index tuples, weight rho(v) = prod s_i(a_i)/|V(H_i)|
//   Full:      vertices are (part, within-part) tuples per coordinate, uniform measure
// In both views two vertices are adjacent iff their part labels differ in every
// coordinate, so subset machinery is shared.
class ProductGraph {
  public:
    enum class Mode { Collapsed, Full };

    static ProductGraph collapsed(const ProductSpec& s, std::uint64_t limit = kDenseLimit) {
        return ProductGraph(s, Mode::Collapsed, limit);
    }
    static ProductGraph full(const ProductSpec& s, std::uint64_t limit = kDenseLimit) {
        return ProductGraph(s, Mode::Full, limit);
    }

    const ProductSpec& spec() const { return spec_; }
    Mode mode() const { return mode_; }
    long n() const { return static_cast<long>(radix_.size()); }
    std::uint64_t size() const { return size_; }
    std::uint64_t label_universe() const { return label_size_; }
    long radix(long i) const { return radix_[i]; }
    long parts(long i) const { return spec_.factors[i].part_count(); }
    long part_size(long i, long a) const { return spec_.factors[i].parts[a - 1]; }

    // 1-based part label of vertex v in coordinate i
    long label(std::uint64_t v, long i) const {
        long d = static_cast<long>((v / stride_[i]) % static_cast<std::uint64_t>(radix_[i]));
        return mode_ == Mode::Collapsed ? d + 1 : part_of_[i][d];
    }

    std::uint64_t encode(const std::vector<long>& digits) const {
        std::uint64_t v = 0;
        for (long i = 0; i < n(); ++i) {
            if (digits[i] < 1 || digits[i] > radix_[i]) throw std::out_of_range("digit out of range");
            v += static_cast<std::uint64_t>(digits[i] - 1) * stride_[i];
        }
        return v;
    }

    std::vector<long> decode(std::uint64_t v) const {
        std::vector<long> d(n());
        for (long i = 0; i < n(); ++i)
            d[i] = static_cast<long>((v / stride_[i]) % static_cast<std::uint64_t>(radix_[i])) + 1;
        return d;
    }

    bool adjacent(std::uint64_t u, std::uint64_t v) const {
        for (long i = 0; i < n(); ++i)
            if (label(u, i) == label(v, i)) return false;
        return true;
    }

    // mixed-radix index over part labels (equals the vertex index when collapsed)
    std::uint64_t label_index(std::uint64_t v) const {
        if (mode_ == Mode::Collapsed) return v;
        std::uint64_t x = 0;
        for (long i = 0; i < n(); ++i)
            x += static_cast<std::uint64_t>(label(v, i) - 1) * label_stride_[i];
        return x;
    }

    const Int& weight_den() const { return weight_den_; }

    std::int64_t weight_num(std::uint64_t v) const {
        if (mode_ == Mode::Full) return 1;
        if (!weights_.empty()) return weights_[v];
        std::int64_t w = 1;
        for (long i = 0; i < n(); ++i) w *= part_size(i, label(v, i));
        return w;
    }

    bool same_graph(const ProductGraph& o) const {
        return mode_ == o.mode_ && spec_.factors == o.spec_.factors;
    }

  private:
    ProductGraph(const ProductSpec& s, Mode m, std::uint64_t limit) : spec_(s), mode_(m) {
        std::uint64_t sz = 1, lsz = 1;
        Int max_w = 1;
        for (const auto& f : spec_.factors) {
            std::uint64_t r = m == Mode::Collapsed ? f.part_count() : f.vertex_count().get_ui();
            if (f.vertex_count() > Int(std::numeric_limits<long>::max()))
                throw std::domain_error("factor too large for dense representation");
            if (sz > limit / r || lsz > limit / static_cast<std::uint64_t>(f.part_count()))
                throw std::domain_error("too large for dense representation (limit " +
                                        std::to_string(limit) + " vertices)");
            sz *= r;
            lsz *= f.part_count();
            radix_.push_back(static_cast<long>(r));
            max_w *= f.parts.front();
        }
        if (max_w > Int(std::numeric_limits<std::int64_t>::max() / 4))
            throw std::domain_error("vertex weights too large for dense representation");
        size_ = sz;
        label_size_ = lsz;
        stride_.assign(radix_.size(), 1);
        for (long i = n() - 2; i >= 0; --i) stride_[i] = stride_[i + 1] * radix_[i + 1];
        label_stride_.assign(radix_.size(), 1);
        for (long i = n() - 2; i >= 0; --i)
            label_stride_[i] = label_stride_[i + 1] * spec_.factors[i + 1].part_count();
        weight_den_ = spec_.vertex_count();
        if (m == Mode::Full) {
            for (long i = 0; i < n(); ++i) {
                std::vector<long> pof;
                long a = 1;
                for (long s : spec_.factors[i].parts) {
                    for (long k = 0; k < s; ++k) pof.push_back(a);
                    ++a;
                }
                part_of_.push_back(std::move(pof));
            }
        } else if (size_ <= (1u << 20)) {
            weights_.resize(size_);
            for (std::uint64_t v = 0; v < size_; ++v) {
                std::int64_t w = 1;
                for (long i = 0; i < n(); ++i) w *= part_size(i, label(v, i));
                weights_[v] = w;
            }
        }
    }

    ProductSpec spec_;
    Mode mode_;
    std::uint64_t size_ = 0, label_size_ = 0;
    std::vector<long> radix_;
    std::vector<std::uint64_t> stride_, label_stride_;
    std::vector<std::vector<long>> part_of_;
    std::vector<std::int64_t> weights_;
    Int weight_den_;
};

// dense bit-indexed subset of a product graph's vertices, mixed-radix order
class VertexSet {
  public:
    VertexSet() : g_(nullptr) {}
    explicit VertexSet(const ProductGraph& g)
        : g_(&g), words_((g.size() + 63) / 64, 0) {}

    const ProductGraph& graph() const {
        if (!g_) throw std::logic_error("vertex set without a graph");
        return *g_;
    }

    bool test(std::uint64_t v) const { return (words_[v >> 6] >> (v & 63)) & 1; }
    void set(std::uint64_t v) {
        if (v >= g_->size()) throw std::out_of_range("vertex index beyond universe");
        words_[v >> 6] |= 1ull << (v & 63);
    }
    void reset(std::uint64_t v) { words_[v >> 6] &= ~(1ull << (v & 63)); }

    std::uint64_t count() const {
        std::uint64_t c = 0;
        for (auto w : words_) c += __builtin_popcountll(w);
        return c;
    }
    bool empty() const {
        for (auto w : words_)
            if (w) return false;
        return true;
    }

    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t wi = 0; wi < words_.size(); ++wi) {
            std::uint64_t w = words_[wi];
            while (w) {
                unsigned b = __builtin_ctzll(w);
                f(static_cast<std::uint64_t>(wi) * 64 + b);
                w &= w - 1;
            }
        }
    }

    std::vector<std::uint64_t> members() const {
        std::vector<std::uint64_t> m;
        for_each([&](std::uint64_t v) { m.push_back(v); });
        return m;
    }

    Rat measure() const {
        Int num = 0;
        std::int64_t acc = 0;
        for_each([&](std::uint64_t v) {
            std::int64_t w = g_->weight_num(v);
            if (acc > std::numeric_limits<std::int64_t>::max() - w) {
                num += acc;
                acc = 0;
            }
            acc += w;
        });
        num += acc;
        return rat(num, g_->weight_den());
    }

    VertexSet operator|(const VertexSet& o) const {
        VertexSet r = *this;
        check(o);
        for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] |= o.words_[i];
        return r;
    }
    VertexSet operator&(const VertexSet& o) const {
        VertexSet r = *this;
        check(o);
        for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= o.words_[i];
        return r;
    }
    VertexSet minus(const VertexSet& o) const {
        VertexSet r = *this;
        check(o);
        for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= ~o.words_[i];
        return r;
    }
    bool operator==(const VertexSet& o) const { return words_ == o.words_; }
    bool subset_of(const VertexSet& o) const {
        check(o);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }
    // for equal-size sets: contains the smaller first differing vertex
    bool lex_less(const VertexSet& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            if (words_[i] == o.words_[i]) continue;
            std::uint64_t d = words_[i] ^ o.words_[i];
            std::uint64_t bit = d & (~d + 1);
            return words_[i] & bit;
        }
        return false;
    }

    // little-endian hex: byte j holds vertices 8j..8j+7, bit k%8 = vertex k
    std::string to_hex() const {
        static const char* digits = "0123456789abcdef";
        std::uint64_t nbytes = (g_->size() + 7) / 8;
        std::string s;
        s.reserve(nbytes * 2);
        for (std::uint64_t j = 0; j < nbytes; ++j) {
            unsigned byte = (words_[j >> 3] >> ((j & 7) * 8)) & 0xff;
            s += digits[byte >> 4];
            s += digits[byte & 0xf];
        }
        return s;
    }

    static VertexSet from_hex(const ProductGraph& g, const std::string& hex) {
        std::uint64_t nbytes = (g.size() + 7) / 8;
        if (hex.size() != nbytes * 2)
            throw std::domain_error("bitmask length mismatch: expected " +
                                    std::to_string(nbytes * 2) + " hex digits");
        auto nib = [](char c) -> unsigned {
            if (c >= '0' && c <= '9') return c - '0';
            if (c >= 'a' && c <= 'f') return c - 'a' + 10;
            throw std::domain_error("invalid hex digit in bitmask");
        };
        VertexSet s(g);
        for (std::uint64_t j = 0; j < nbytes; ++j) {
            unsigned byte = (nib(hex[2 * j]) << 4) | nib(hex[2 * j + 1]);
            s.words_[j >> 3] |= static_cast<std::uint64_t>(byte) << ((j & 7) * 8);
        }
        std::uint64_t spare = nbytes * 8 - g.size();
        if (spare) {
            std::uint64_t last = g.size() - 1;
            std::uint64_t mask = (~0ull) >> (63 - (last & 63));
            if ((s.words_.back() & ~mask) != 0)
                throw std::domain_error("bitmask has bits beyond the universe");
        }
        return s;
    }

  private:
    void check(const VertexSet& o) const {
        if (!g_ || !o.g_ || !g_->same_graph(*o.g_))
            throw std::domain_error("vertex sets over different graphs");
    }

    const ProductGraph* g_;
    std::vector<std::uint64_t> words_;
};

inline VertexSet full_set(const ProductGraph& g) {
    VertexSet s(g);
    for (std::uint64_t v = 0; v < g.size(); ++v) s.set(v);
    return s;
}

// J_{a,j}: all vertices whose coordinate j lies in part a (0-based j, 1-based a)
inline VertexSet fiber(const ProductGraph& g, long j, long a) {
    if (j < 0 || j >= g.n() || a < 1 || a > g.parts(j)) throw std::out_of_range("fiber out of range");
    VertexSet s(g);
    for (std::uint64_t v = 0; v < g.size(); ++v)
        if (g.label(v, j) == a) s.set(v);
    return s;
}

// per-label count of members of S adjacent to that label class; the tensor
// transform (sum minus own slice) applied coordinate by coordinate
inline std::vector<std::int64_t> adjacency_counts(const VertexSet& S) {
    const ProductGraph& g = S.graph();
    std::vector<std::int64_t> d(g.label_universe(), 0);
    S.for_each([&](std::uint64_t v) { d[g.label_index(v)] += 1; });
    std::uint64_t stride = 1;
    for (long i = g.n() - 1; i >= 0; --i) {
        std::uint64_t t = g.parts(i);
        std::uint64_t block = stride * t;
        for (std::uint64_t base = 0; base < d.size(); base += block) {
            for (std::uint64_t off = 0; off < stride; ++off) {
                std::int64_t sum = 0;
                for (std::uint64_t a = 0; a < t; ++a) sum += d[base + off + a * stride];
                for (std::uint64_t a = 0; a < t; ++a) {
                    auto& cell = d[base + off + a * stride];
                    cell = sum - cell;
                }
            }
        }
        stride = block;
    }
    return d;
}

// vertex boundary: all vertices adjacent to at least one element of S
inline VertexSet boundary(const VertexSet& S) {
    const ProductGraph& g = S.graph();
    VertexSet out(g);
    if (S.empty()) return out;
    auto counts = adjacency_counts(S);
    for (std::uint64_t v = 0; v < g.size(); ++v)
        if (counts[g.label_index(v)] > 0) out.set(v);
    return out;
}

inline VertexSet closed_neighborhood(const VertexSet& S) { return S | boundary(S); }

inline bool is_independent(const VertexSet& S) {
    auto counts = adjacency_counts(S);
    const ProductGraph& g = S.graph();
    bool ok = true;
    S.for_each([&](std::uint64_t v) {
        if (counts[g.label_index(v)] > 0) ok = false;
    });
    return ok;
}

struct RelabelResult {
    VertexSet sorted;                     // over the same graph
    std::vector<std::vector<long>> perm;  // perm[j][k] = old part label at new position k+1
};

// permutes part labels per coordinate so fiber measures become non-increasing;
// refuses when the permutation would move unequal part sizes (it would change rho)
inline RelabelResult sort_relabel(const VertexSet& S) {
    const ProductGraph& g = S.graph();
    std::vector<std::vector<long>> perm(g.n());
    for (long j = 0; j < g.n(); ++j) {
        long t = g.parts(j);
        std::vector<Int> w(t, 0);
        S.for_each([&](std::uint64_t v) { w[g.label(v, j) - 1] += g.weight_num(v); });
        std::vector<long> order(t);
        for (long a = 0; a < t; ++a) order[a] = a + 1;
        std::stable_sort(order.begin(), order.end(),
                         [&](long a, long b) { return w[a - 1] > w[b - 1]; });
        for (long k = 0; k < t; ++k)
            if (g.part_size(j, order[k]) != g.part_size(j, k + 1))
                throw std::domain_error(
                    "sorting coordinate " + std::to_string(j + 1) +
                    " would permute parts of unequal size and change the weight");
        perm[j] = order;
    }
    // old label -> new label tables
    std::vector<std::vector<long>> new_of(g.n());
    for (long j = 0; j < g.n(); ++j) {
        new_of[j].assign(g.parts(j) + 1, 0);
        for (long k = 0; k < g.parts(j); ++k) new_of[j][perm[j][k]] = k + 1;
    }
    VertexSet out(g);
    if (g.mode() == ProductGraph::Mode::Collapsed) {
        S.for_each([&](std::uint64_t v) {
            auto dig = g.decode(v);
            for (long j = 0; j < g.n(); ++j) dig[j] = new_of[j][dig[j]];
            out.set(g.encode(dig));
        });
    } else {
        // part starts are invariant because the permutation preserves sizes
        std::vector<std::vector<long>> start(g.n());
        for (long j = 0; j < g.n(); ++j) {
            start[j].assign(g.parts(j) + 1, 0);
            long acc = 0;
            for (long a = 1; a <= g.parts(j); ++a) {
                start[j][a] = acc;
                acc += g.part_size(j, a);
            }
        }
        S.for_each([&](std::uint64_t v) {
            auto dig = g.decode(v);
            for (long j = 0; j < g.n(); ++j) {
                long a = g.label(v, j);
                long within = dig[j] - 1 - start[j][a];
                long na = new_of[j][a];
                dig[j] = start[j][na] + within + 1;
            }
            out.set(g.encode(dig));
        });
    }
    return {out, perm};
}

inline bool is_sorted_set(const VertexSet& S) {
    const ProductGraph& g = S.graph();
    for (long j = 0; j < g.n(); ++j) {
        long t = g.parts(j);
        std::vector<Int> w(t, 0);
        S.for_each([&](std::uint64_t v) { w[g.label(v, j) - 1] += g.weight_num(v); });
        for (long a = 0; a + 1 < t; ++a)
            if (w[a] < w[a + 1]) return false;
    }
    return true;
}

// image of a full-graph subset under the part-label collapsing map
inline VertexSet collapse_set(const VertexSet& S, const ProductGraph& collapsed_g) {
    const ProductGraph& g = S.graph();
    if (g.mode() != ProductGraph::Mode::Full || collapsed_g.mode() != ProductGraph::Mode::Collapsed ||
        !(g.spec().factors == collapsed_g.spec().factors))
        throw std::domain_error("collapse_set needs a full-graph set and the matching collapsed graph");
    VertexSet out(collapsed_g);
    S.for_each([&](std::uint64_t v) { out.set(g.label_index(v)); });
    return out;
}

// full preimage of a collapsed subset; mu(preimage) = rho(T) exactly
inline VertexSet fiber_preimage(const VertexSet& T, const ProductGraph& full_g) {
    const ProductGraph& g = T.graph();
    if (g.mode() != ProductGraph::Mode::Collapsed || full_g.mode() != ProductGraph::Mode::Full ||
        !(g.spec().factors == full_g.spec().factors))
        throw std::domain_error("fiber_preimage needs a collapsed set and the matching full graph");
    VertexSet out(full_g);
    for (std::uint64_t v = 0; v < full_g.size(); ++v)
        if (T.test(full_g.label_index(v))) out.set(v);
    return out;
}

// subset file format: line 1 spec string, line 2 "collapsed"|"full", line 3 hex bitmask
inline void write_subset(std::ostream& os, const VertexSet& S) {
    const ProductGraph& g = S.graph();
    os << g.spec().to_string() << "\n"
       << (g.mode() == ProductGraph::Mode::Collapsed ? "collapsed" : "full") << "\n"
       << S.to_hex() << "\n";
}

struct LoadedSubset {
    ProductGraph graph;
    VertexSet set;
};

inline LoadedSubset read_subset(std::istream& is, std::uint64_t limit = kDenseLimit) {
    std::string spec_line, mode_line, hex_line;
    if (!std::getline(is, spec_line) || !std::getline(is, mode_line) || !std::getline(is, hex_line))
        throw std::domain_error("subset file must have 3 lines: spec, mode, hex bitmask");
    ProductSpec spec = parse_spec(spec_line);
    ProductGraph g = mode_line == "collapsed" ? ProductGraph::collapsed(spec, limit)
                     : mode_line == "full"
                         ? ProductGraph::full(spec, limit)
                         : throw std::domain_error("subset mode must be 'collapsed' or 'full'");
    LoadedSubset out{std::move(g), VertexSet()};
    out.set = VertexSet::from_hex(out.graph, hex_line);
    return out;
}

inline LoadedSubset read_subset_file(const std::string& path, std::uint64_t limit = kDenseLimit) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open subset file: " + path);
    return read_subset(f, limit);
}

}  // namespace domiso
