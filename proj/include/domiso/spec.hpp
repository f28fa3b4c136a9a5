#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "domiso/rational.hpp"

namespace domiso {

struct SpecParseError : std::runtime_error {
    std::size_t offset;
    SpecParseError(const std::string& msg, std::size_t at)
        : std::runtime_error("spec syntax error at byte " + std::to_string(at) + ": " + msg),
          offset(at) {}
};

// one complete multipartite factor; part sizes kept sorted descending
struct PartiteFactor {
    std::vector<long> parts;

    explicit PartiteFactor(std::vector<long> p) : parts(std::move(p)) {
        if (parts.empty()) throw std::domain_error("factor with zero part count");
        for (long s : parts)
            if (s <= 0) throw std::domain_error("factor with zero part size");
        std::sort(parts.rbegin(), parts.rend());
    }

    long part_count() const { return static_cast<long>(parts.size()); }

    Int vertex_count() const {
        Int n = 0;
        for (long s : parts) n += s;
        return n;
    }

    bool balanced() const { return parts.front() == parts.back(); }

    // largest part fraction, in (0, 1]
    Rat beta() const { return rat(Int(parts.front()), vertex_count()); }

    bool operator==(const PartiteFactor& o) const { return parts == o.parts; }
    bool operator<(const PartiteFactor& o) const { return parts < o.parts; }

    std::string to_string() const {
        if (balanced()) {
            if (parts.front() == 1) return "K_" + std::to_string(parts.size());
            return "K[" + std::to_string(parts.front()) + "," + std::to_string(parts.size()) + "]";
        }
        std::string s = "K(";
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(parts[i]);
        }
        return s + ")";
    }
};

enum class FactorOrder { Written, TDescending, BetaAscending };

struct ProductSpec {
    std::vector<PartiteFactor> factors;

    explicit ProductSpec(std::vector<PartiteFactor> f) : factors(std::move(f)) {
        if (factors.empty()) throw std::domain_error("empty product");
    }

    long n() const { return static_cast<long>(factors.size()); }

    bool balanced() const {
        for (const auto& f : factors)
            if (!f.balanced()) return false;
        return true;
    }

    Int vertex_count() const {
        Int v = 1;
        for (const auto& f : factors) v *= f.vertex_count();
        return v;
    }

    Int collapsed_count() const {
        Int v = 1;
        for (const auto& f : factors) v *= f.part_count();
        return v;
    }

    std::vector<Rat> betas() const {
        std::vector<Rat> b;
        for (const auto& f : factors) b.push_back(f.beta());
        return b;
    }

    // part counts t1 >= ... >= tn (the balanced-results convention)
    ProductSpec canonical_t_desc() const {
        auto f = factors;
        std::stable_sort(f.begin(), f.end(), [](const PartiteFactor& a, const PartiteFactor& b) {
            if (a.part_count() != b.part_count()) return a.part_count() > b.part_count();
            return a.parts > b.parts;  // larger parts first among equal counts
        });
        return ProductSpec(std::move(f));
    }

    // beta(H1) <= ... <= beta(Hn) (the profile/folding convention)
    ProductSpec canonical_beta_asc() const {
        auto f = factors;
        std::stable_sort(f.begin(), f.end(), [](const PartiteFactor& a, const PartiteFactor& b) {
            Rat ba = a.beta(), bb = b.beta();
            if (ba != bb) return ba < bb;
            return a.parts > b.parts;
        });
        return ProductSpec(std::move(f));
    }

    bool is_t_descending() const {
        for (long i = 0; i + 1 < n(); ++i)
            if (factors[i].part_count() < factors[i + 1].part_count()) return false;
        return true;
    }

    bool is_beta_ascending() const {
        for (long i = 0; i + 1 < n(); ++i)
            if (factors[i].beta() > factors[i + 1].beta()) return false;
        return true;
    }

    // multiset equality of factors; product order is immaterial
    bool operator==(const ProductSpec& o) const {
        auto a = factors, b = o.factors;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        return a == b;
    }

    std::string to_string() const {
        std::string s;
        std::size_t i = 0;
        while (i < factors.size()) {
            std::size_t j = i;
            while (j < factors.size() && factors[j] == factors[i]) ++j;
            if (i) s += "x";
            s += factors[i].to_string();
            if (j - i > 1) s += "^" + std::to_string(j - i);
            i = j;
        }
        return s;
    }
};

// grammar:  spec := factor ( "x" factor )*
//           factor := atom ( "^" uint )?
//           atom := "K_" uint | "K[" uint "," uint "]" | "K(" uint ("," uint)+ ")"
inline ProductSpec parse_spec(const std::string& text) {
    std::size_t pos = 0;
    auto fail = [&](const std::string& m, std::size_t at) -> void { throw SpecParseError(m, at); };
    auto read_uint = [&]() -> long {
        std::size_t start = pos;
        if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
            fail("expected unsigned integer", pos);
        long v = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            v = v * 10 + (text[pos] - '0');
            if (v > 100000000L) fail("integer too large", start);
            ++pos;
        }
        return v;
    };
    auto expect = [&](char c) {
        if (pos >= text.size() || text[pos] != c)
            fail(std::string("expected '") + c + "'", pos);
        ++pos;
    };

    std::vector<PartiteFactor> out;
    while (true) {
        std::size_t atom_at = pos;
        if (pos >= text.size() || text[pos] != 'K') fail("expected factor 'K...'", pos);
        ++pos;
        std::vector<long> parts;
        if (pos < text.size() && text[pos] == '_') {
            ++pos;
            long t = read_uint();
            if (t == 0) fail("zero part count", atom_at);
            parts.assign(t, 1);
        } else if (pos < text.size() && text[pos] == '[') {
            ++pos;
            long u = read_uint();
            expect(',');
            long t = read_uint();
            expect(']');
            if (u == 0) fail("zero part size", atom_at);
            if (t == 0) fail("zero part count", atom_at);
            parts.assign(t, u);
        } else if (pos < text.size() && text[pos] == '(') {
            ++pos;
            parts.push_back(read_uint());
            expect(',');
            parts.push_back(read_uint());
            while (pos < text.size() && text[pos] == ',') {
                ++pos;
                parts.push_back(read_uint());
            }
            expect(')');
            for (long s : parts)
                if (s == 0) fail("zero part size", atom_at);
        } else {
            fail("expected '_', '[' or '(' after 'K'", pos);
        }
        long reps = 1;
        if (pos < text.size() && text[pos] == '^') {
            ++pos;
            std::size_t at = pos;
            reps = read_uint();
            if (reps == 0) fail("power of zero", at);
            if (reps > 64) fail("power too large", at);
        }
        for (long r = 0; r < reps; ++r) out.emplace_back(parts);
        if (pos >= text.size()) break;
        expect('x');
    }
    return ProductSpec(std::move(out));
}

// |V(G)| / t_n for balanced products in t-descending order
inline Int alpha_formula(const ProductSpec& spec) {
    if (!spec.balanced())
        throw std::domain_error("alpha formula asserted for balanced products only; use the exact solver");
    long tn = spec.canonical_t_desc().factors.back().part_count();
    return spec.vertex_count() / tn;
}

}  // namespace domiso
