#pragma once

#include <mpfr.h>

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

#include "domiso/rational.hpp"

namespace domiso {

// raised when an interval comparison cannot be decided at the precision cap
struct IndeterminateComparison : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr mpfr_prec_t kDefaultBits = 128;
constexpr mpfr_prec_t kMaxBits = 1024;

// Closed interval [lo, hi] with MPFR endpoints, rounded outward by every
// operation, so the exact value of any expression is always enclosed.
class Interval {
  public:
    explicit Interval(mpfr_prec_t prec = kDefaultBits) : prec_(prec) {
        mpfr_init2(lo_, prec_);
        mpfr_init2(hi_, prec_);
        mpfr_set_zero(lo_, 1);
        mpfr_set_zero(hi_, 1);
    }

    Interval(const Interval& o) : prec_(o.prec_) {
        mpfr_init2(lo_, prec_);
        mpfr_init2(hi_, prec_);
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }

    Interval(Interval&& o) noexcept : prec_(o.prec_) {
        mpfr_init2(lo_, prec_);
        mpfr_init2(hi_, prec_);
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
    }

    Interval& operator=(Interval o) noexcept {
        std::swap(prec_, o.prec_);
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
        return *this;
    }

    ~Interval() {
        mpfr_clear(lo_);
        mpfr_clear(hi_);
    }

    static Interval of(long v, mpfr_prec_t prec = kDefaultBits) {
        Interval r(prec);
        mpfr_set_si(r.lo_, v, MPFR_RNDD);
        mpfr_set_si(r.hi_, v, MPFR_RNDU);
        return r;
    }

    static Interval of(const Rat& v, mpfr_prec_t prec = kDefaultBits) {
        Interval r(prec);
        mpfr_set_q(r.lo_, v.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(r.hi_, v.get_mpq_t(), MPFR_RNDU);
        return r;
    }

    // hull of two rationals (for cover-mode cells)
    static Interval hull(const Rat& a, const Rat& b, mpfr_prec_t prec = kDefaultBits) {
        Interval r(prec);
        const Rat& lo = (a <= b) ? a : b;
        const Rat& hi = (a <= b) ? b : a;
        mpfr_set_q(r.lo_, lo.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(r.hi_, hi.get_mpq_t(), MPFR_RNDU);
        return r;
    }

    mpfr_prec_t prec() const { return prec_; }
    mpfr_srcptr lo() const { return lo_; }
    mpfr_srcptr hi() const { return hi_; }
    double lo_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
    double hi_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }

    bool certainly_pos() const { return mpfr_sgn(lo_) > 0; }
    bool certainly_neg() const { return mpfr_sgn(hi_) < 0; }
    bool contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }

    // -1: r < lo (interval certainly above), +1: r > hi (certainly below), 0: undecided
    int compare_rat(const Rat& r) const {
        if (mpfr_cmp_q(lo_, r.get_mpq_t()) > 0) return -1;
        if (mpfr_cmp_q(hi_, r.get_mpq_t()) < 0) return 1;
        return 0;
    }

    bool certainly_lt(const Interval& o) const { return mpfr_cmp(hi_, o.lo_) < 0; }
    bool certainly_gt(const Interval& o) const { return mpfr_cmp(lo_, o.hi_) > 0; }

    double width_d() const {
        mpfr_t w;
        mpfr_init2(w, 64);
        mpfr_sub(w, hi_, lo_, MPFR_RNDU);
        double d = mpfr_get_d(w, MPFR_RNDU);
        mpfr_clear(w);
        return d;
    }

    friend Interval operator+(const Interval& a, const Interval& b) {
        Interval r(std::max(a.prec_, b.prec_));
        mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
        return r;
    }

    friend Interval operator-(const Interval& a) {
        Interval r(a.prec_);
        mpfr_neg(r.lo_, a.hi_, MPFR_RNDD);
        mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
        return r;
    }

    friend Interval operator-(const Interval& a, const Interval& b) { return a + (-b); }

    friend Interval operator*(const Interval& a, const Interval& b) {
        Interval r(std::max(a.prec_, b.prec_));
        mpfr_t t;
        mpfr_init2(t, r.prec_);
        bool first = true;
        auto consider = [&](mpfr_srcptr x, mpfr_srcptr y) {
            mpfr_mul(t, x, y, MPFR_RNDD);
            if (first || mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
            mpfr_mul(t, x, y, MPFR_RNDU);
            if (first || mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
            first = false;
        };
        consider(a.lo_, b.lo_);
        consider(a.lo_, b.hi_);
        consider(a.hi_, b.lo_);
        consider(a.hi_, b.hi_);
        mpfr_clear(t);
        return r;
    }

    friend Interval operator/(const Interval& a, const Interval& b) {
        if (b.contains_zero()) throw std::domain_error("interval division by interval containing 0");
        Interval r(std::max(a.prec_, b.prec_));
        mpfr_t t;
        mpfr_init2(t, r.prec_);
        bool first = true;
        auto consider = [&](mpfr_srcptr x, mpfr_srcptr y) {
            mpfr_div(t, x, y, MPFR_RNDD);
            if (first || mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
            mpfr_div(t, x, y, MPFR_RNDU);
            if (first || mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
            first = false;
        };
        consider(a.lo_, b.lo_);
        consider(a.lo_, b.hi_);
        consider(a.hi_, b.lo_);
        consider(a.hi_, b.hi_);
        mpfr_clear(t);
        return r;
    }

    friend Interval log_i(const Interval& a) {
        if (mpfr_sgn(a.lo_) <= 0) throw std::domain_error("interval log of non-positive value");
        Interval r(a.prec_);
        mpfr_log(r.lo_, a.lo_, MPFR_RNDD);
        mpfr_log(r.hi_, a.hi_, MPFR_RNDU);
        return r;
    }

    friend Interval exp_i(const Interval& a) {
        Interval r(a.prec_);
        mpfr_exp(r.lo_, a.lo_, MPFR_RNDD);
        mpfr_exp(r.hi_, a.hi_, MPFR_RNDU);
        return r;
    }

    // x^y for x > 0; exact 0^y = 0 must be short-circuited by the caller
    friend Interval pow_i(const Interval& x, const Interval& y) { return exp_i(y * log_i(x)); }

    std::string lo_str(int digits = 40) const { return fmt(lo_, MPFR_RNDD, digits); }
    std::string hi_str(int digits = 40) const { return fmt(hi_, MPFR_RNDU, digits); }

  private:
    static std::string fmt(mpfr_srcptr v, mpfr_rnd_t rnd, int digits) {
        char buf[128];
        std::string f = "%." + std::to_string(digits) + "R*e";
        mpfr_snprintf(buf, sizeof(buf), f.c_str(), rnd, v);
        return buf;
    }

    mpfr_prec_t prec_;
    mpfr_t lo_, hi_;
};

inline Interval operator*(const Rat& a, const Interval& b) { return Interval::of(a, b.prec()) * b; }
inline Interval operator+(const Rat& a, const Interval& b) { return Interval::of(a, b.prec()) + b; }
inline Interval operator-(const Rat& a, const Interval& b) { return Interval::of(a, b.prec()) - b; }
inline Interval operator-(const Interval& a, const Rat& b) { return a - Interval::of(b, a.prec()); }

// stability exponent: log t / log(t/(t-1)); exactly 1 at t = 2
inline Interval eta(long t, mpfr_prec_t prec = kDefaultBits) {
    if (t < 2) throw std::domain_error("eta requires t >= 2");
    if (t == 2) return Interval::of(1L, prec);
    Interval lt = log_i(Interval::of(t, prec));
    Interval lt1 = log_i(Interval::of(t - 1, prec));
    return lt / (lt - lt1);
}

// 1/eta(t) = log(t/(t-1)) / log t, the exponent in the profile lower bound
inline Interval inv_eta(long t, mpfr_prec_t prec = kDefaultBits) {
    if (t < 2) throw std::domain_error("inv_eta requires t >= 2");
    if (t == 2) return Interval::of(1L, prec);
    Interval lt = log_i(Interval::of(t, prec));
    Interval lt1 = log_i(Interval::of(t - 1, prec));
    return (lt - lt1) / lt;
}

// density threshold above which the stability theorem applies; exact rational for t >= 5
inline std::optional<Rat> omega_rational(long t) {
    if (t < 3) throw std::domain_error("omega requires t >= 3");
    if (t < 5) return std::nullopt;
    return rat(4 * t - 3) / rat(t * t * t);
}

inline Interval omega(long t, mpfr_prec_t prec = kDefaultBits) {
    if (t < 3) throw std::domain_error("omega requires t >= 3");
    if (t == 3)
        return rat(37, 81) - rat(1, 2) * pow_i(Interval::of(rat(5, 81), prec), inv_eta(3, prec));
    if (t == 4)
        return rat(85, 256) - rat(1, 3) * pow_i(Interval::of(rat(7, 256), prec), inv_eta(4, prec));
    return Interval::of(*omega_rational(t), prec);
}

// decides r > omega(t); escalates precision, throws IndeterminateComparison at the cap
inline bool exceeds_omega(const Rat& r, long t, mpfr_prec_t bits = kDefaultBits) {
    if (auto w = omega_rational(t)) return r > *w;
    for (mpfr_prec_t p = bits; p <= kMaxBits; p *= 2) {
        int c = omega(t, p).compare_rat(r);
        if (c == 1) return true;
        if (c == -1) return false;
    }
    throw IndeterminateComparison("omega(" + std::to_string(t) + ") comparison undecided at precision cap");
}

}  // namespace domiso
