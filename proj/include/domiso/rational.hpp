#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace domiso {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat rat(const Int& num, const Int& den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// canonical "p/q" rendering, q > 0, gcd(p,q)=1; always carries the denominator
inline std::string rat_str(const Rat& r) {
    Rat c = r;
    c.canonicalize();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

// accepts "p", "p/q", optional leading '-'
inline Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            Int n(s);
            return Rat(n);
        }
        Int n(s.substr(0, slash));
        Int d(s.substr(slash + 1));
        if (d == 0) throw std::domain_error("zero denominator");
        Rat r(n, d);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw std::domain_error("cannot parse rational: '" + s + "'");
    }
}

inline Int rat_floor(const Rat& r) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q;
}

inline Int rat_ceil(const Rat& r) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q;
}

inline Rat pow_rat(const Rat& base, unsigned long e) {
    Rat r = 1;
    Rat b = base;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

inline std::optional<std::int64_t> to_i64(const Int& v) {
    if (!v.fits_slong_p()) return std::nullopt;
    return static_cast<std::int64_t>(v.get_si());
}

}  // namespace domiso
