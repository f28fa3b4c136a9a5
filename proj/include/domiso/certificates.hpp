#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "domiso/interval.hpp"
#include "domiso/spec.hpp"

namespace domiso {

// ---------------------------------------------------------------------------
// dual-track expression values: exact rational when the whole subtree stays
// rational, certified interval always

struct Val {
    std::optional<Rat> exact;
    Interval box;

    static Val of(const Rat& r, mpfr_prec_t p) { return {r, Interval::of(r, p)}; }
};

using Env = std::map<std::string, Val>;

struct Xpr {
    std::function<Val(const Env&, mpfr_prec_t)> f;
};

inline Xpr xconst(const Rat& r) {
    return {[r](const Env&, mpfr_prec_t p) { return Val::of(r, p); }};
}
inline Xpr xconst(long v) { return xconst(rat(v)); }

inline Xpr xparam(const std::string& name) {
    return {[name](const Env& e, mpfr_prec_t) {
        auto it = e.find(name);
        if (it == e.end()) throw std::logic_error("unbound parameter " + name);
        return it->second;
    }};
}

inline Xpr operator+(const Xpr& a, const Xpr& b) {
    return {[a, b](const Env& e, mpfr_prec_t p) {
        Val x = a.f(e, p), y = b.f(e, p);
        Val r{std::nullopt, x.box + y.box};
        if (x.exact && y.exact) r.exact = Rat(*x.exact + *y.exact);
        return r;
    }};
}

inline Xpr operator-(const Xpr& a, const Xpr& b) {
    return {[a, b](const Env& e, mpfr_prec_t p) {
        Val x = a.f(e, p), y = b.f(e, p);
        Val r{std::nullopt, x.box - y.box};
        if (x.exact && y.exact) r.exact = Rat(*x.exact - *y.exact);
        return r;
    }};
}

inline Xpr operator*(const Xpr& a, const Xpr& b) {
    return {[a, b](const Env& e, mpfr_prec_t p) {
        Val x = a.f(e, p), y = b.f(e, p);
        Val r{std::nullopt, x.box * y.box};
        if (x.exact && y.exact) r.exact = Rat(*x.exact * *y.exact);
        return r;
    }};
}

inline Xpr operator/(const Xpr& a, const Xpr& b) {
    return {[a, b](const Env& e, mpfr_prec_t p) {
        Val x = a.f(e, p), y = b.f(e, p);
        Val r{std::nullopt, x.box / y.box};
        if (x.exact && y.exact && *y.exact != 0) r.exact = Rat(*x.exact / *y.exact);
        return r;
    }};
}

inline Xpr operator-(const Xpr& a) { return xconst(0) - a; }

inline Xpr operator*(const Rat& a, const Xpr& b) { return xconst(a) * b; }
inline Xpr operator+(const Rat& a, const Xpr& b) { return xconst(a) + b; }
inline Xpr operator-(const Rat& a, const Xpr& b) { return xconst(a) - b; }

// x^y; exact when the exponent is a small integer, 0^positive = 0
inline Xpr xpow(const Xpr& a, const Xpr& b) {
    return {[a, b](const Env& e, mpfr_prec_t p) -> Val {
        Val x = a.f(e, p), y = b.f(e, p);
        if (x.exact && *x.exact == 0 && y.box.certainly_pos()) return Val::of(rat(0), p);
        if (x.exact && y.exact && y.exact->get_den() == 1 && y.exact->get_num().fits_sint_p()) {
            long k = y.exact->get_num().get_si();
            if (std::abs(k) <= 64) {
                Rat r = pow_rat(*x.exact, static_cast<unsigned long>(std::abs(k)));
                if (k < 0) {
                    if (r == 0) throw std::domain_error("zero to a negative power");
                    r = rat(1) / r;
                }
                return Val::of(r, p);
            }
        }
        return {std::nullopt, pow_i(x.box, y.box)};
    }};
}

inline Xpr xlog(const Xpr& a) {
    return {[a](const Env& e, mpfr_prec_t p) { return Val{std::nullopt, log_i(a.f(e, p).box)}; }};
}

inline Xpr xexp(const Xpr& a) {
    return {[a](const Env& e, mpfr_prec_t p) { return Val{std::nullopt, exp_i(a.f(e, p).box)}; }};
}

namespace detail {
inline long exact_long(const Val& v, const char* what) {
    if (!v.exact || v.exact->get_den() != 1 || !v.exact->get_num().fits_slong_p())
        throw std::domain_error(std::string(what) + " needs an exact integer argument");
    return v.exact->get_num().get_si();
}
}  // namespace detail

inline Xpr xeta(const Xpr& t) {
    return {[t](const Env& e, mpfr_prec_t p) -> Val {
        long tv = detail::exact_long(t.f(e, p), "eta");
        if (tv == 2) return Val::of(rat(1), p);
        return {std::nullopt, eta(tv, p)};
    }};
}

inline Xpr xinv_eta(const Xpr& t) {
    return {[t](const Env& e, mpfr_prec_t p) -> Val {
        long tv = detail::exact_long(t.f(e, p), "inv_eta");
        if (tv == 2) return Val::of(rat(1), p);
        return {std::nullopt, inv_eta(tv, p)};
    }};
}

inline Xpr xomega(const Xpr& t) {
    return {[t](const Env& e, mpfr_prec_t p) -> Val {
        long tv = detail::exact_long(t.f(e, p), "omega");
        if (auto w = omega_rational(tv)) return Val::of(*w, p);
        return {std::nullopt, omega(tv, p)};
    }};
}

// ---------------------------------------------------------------------------
// registered inequalities: every case asserts expr > 0 on its point or,
// when a cover range is present, on the whole closed interval of the axis

struct IneqCase {
    Env fixed;
    std::optional<std::pair<Rat, Rat>> cover;  // range for the cover axis
};

struct InequalityDef {
    std::string id;
    std::string suite;
    std::string doc;  // which reduction this case list relies on
    Xpr expr;
    std::string cover_axis;  // used when a case carries a cover range
    int cover_depth = 36;
    std::vector<IneqCase> cases;
};

struct InequalityCert {
    std::string id;
    std::string suite;
    std::string region;
    enum class Verdict { Verified, Failed, Indeterminate } verdict;
    // [lowest certified lower bound, lowest certified upper bound] of the margin
    double margin_lo = 0, margin_hi = 0;
    std::string counterexample;  // set when failed (re-checked at doubled precision)
    mpfr_prec_t bits = kDefaultBits;
    std::uint64_t points = 0;
};

inline const char* to_string(InequalityCert::Verdict v) {
    switch (v) {
        case InequalityCert::Verdict::Verified: return "verified";
        case InequalityCert::Verdict::Failed: return "failed";
        default: return "indeterminate";
    }
}

namespace detail {

inline std::string render_env(const Env& e) {
    std::string s;
    for (const auto& [k, v] : e) {
        if (!s.empty()) s += ", ";
        s += k + "=";
        s += v.exact ? rat_str(*v.exact) : ("[" + v.box.lo_str(8) + "," + v.box.hi_str(8) + "]");
    }
    return s;
}

struct RunState {
    bool any_indeterminate = false;
    bool failed = false;
    std::string counterexample;
    double margin_lo = 1e300, margin_hi = 1e300;
    std::uint64_t points = 0;

    void note_margin(const Interval& m) {
        margin_lo = std::min(margin_lo, m.lo_d());
        margin_hi = std::min(margin_hi, m.hi_d());
    }
};

// one fixed point, escalating precision until the sign is certain
inline void run_point(const InequalityDef& def, Env env, mpfr_prec_t bits, RunState& st) {
    ++st.points;
    for (mpfr_prec_t p = bits;; p *= 2) {
        Val v = def.expr.f(env, p);
        if (v.exact) {
            st.note_margin(Interval::of(*v.exact, p));
            if (*v.exact <= 0) {
                st.failed = true;
                st.counterexample = render_env(env);
            }
            return;
        }
        if (v.box.certainly_pos()) {
            st.note_margin(v.box);
            return;
        }
        if (v.box.hi_d() <= 0) {
            // confirmed on the wrong side; re-check at doubled precision
            Val again = def.expr.f(env, p * 2);
            if (again.box.hi_d() <= 0) {
                st.note_margin(v.box);
                st.failed = true;
                st.counterexample = render_env(env);
                return;
            }
        }
        if (p >= kMaxBits) {
            st.any_indeterminate = true;
            st.note_margin(v.box);
            st.counterexample = render_env(env);
            return;
        }
    }
}

// prove expr > 0 over the whole cover cell by bisection
inline void run_cover(const InequalityDef& def, Env env, Rat lo, Rat hi, int depth,
                      mpfr_prec_t bits, RunState& st) {
    ++st.points;
    env[def.cover_axis] = Val{std::nullopt, Interval::hull(lo, hi, bits)};
    Val v = def.expr.f(env, bits);
    if (v.box.certainly_pos()) {
        st.note_margin(v.box);
        return;
    }
    if (v.box.hi_d() <= 0) {
        st.failed = true;
        env[def.cover_axis] = Val::of(lo, bits);
        st.counterexample = render_env(env);
        return;
    }
    if (depth <= 0) {
        st.any_indeterminate = true;
        st.counterexample = render_env(env);
        return;
    }
    Rat mid = (lo + hi) / 2;
    run_cover(def, env, lo, mid, depth - 1, bits, st);
    if (st.failed) return;
    run_cover(def, env, mid, hi, depth - 1, bits, st);
}

}  // namespace detail

inline InequalityCert run_inequality(const InequalityDef& def, mpfr_prec_t bits = kDefaultBits) {
    detail::RunState st;
    for (const auto& c : def.cases) {
        if (c.cover)
            detail::run_cover(def, c.fixed, c.cover->first, c.cover->second, def.cover_depth, bits, st);
        else
            detail::run_point(def, c.fixed, bits, st);
        if (st.failed) break;
    }
    InequalityCert cert;
    cert.id = def.id;
    cert.suite = def.suite;
    cert.region = def.doc;
    cert.bits = bits;
    cert.points = st.points;
    cert.margin_lo = st.margin_lo;
    cert.margin_hi = st.margin_hi;
    cert.counterexample = st.counterexample;
    cert.verdict = st.failed              ? InequalityCert::Verdict::Failed
                   : st.any_indeterminate ? InequalityCert::Verdict::Indeterminate
                                          : InequalityCert::Verdict::Verified;
    return cert;
}

// ---------------------------------------------------------------------------
// the catalog

namespace detail {

inline Env env1(const std::string& a, const Rat& va, mpfr_prec_t p = kDefaultBits) {
    Env e;
    e[a] = Val::of(va, p);
    return e;
}

inline Env env2(const std::string& a, const Rat& va, const std::string& b, const Rat& vb,
                mpfr_prec_t p = kDefaultBits) {
    Env e = env1(a, va, p);
    e[b] = Val::of(vb, p);
    return e;
}

inline Env env3(const std::string& a, const Rat& va, const std::string& b, const Rat& vb,
                const std::string& c, const Rat& vc, mpfr_prec_t p = kDefaultBits) {
    Env e = env2(a, va, b, vb, p);
    e[c] = Val::of(vc, p);
    return e;
}

// smallest integer X >= from with dominator(X) < limit; dominator must be
// eventually below the limit
inline long tail_start(long from, const std::function<Rat(long)>& dominator, const Rat& limit) {
    for (long x = from; x < 1000000; ++x)
        if (dominator(x) < limit) return x;
    throw std::logic_error("tail start not found");
}

}  // namespace detail

inline const std::vector<InequalityDef>& inequality_catalog() {
    static const std::vector<InequalityDef> defs = [] {
        std::vector<InequalityDef> v;
        Xpr T = xparam("t"), X = xparam("x"), NU = xparam("nu"), TJ = xparam("tj"),
            TH = xparam("theta"), B = xparam("beta");
        Xpr one = xconst(1);

        // ---- cor1-eq1 -------------------------------------------------
        {
            // x^c + beta ((1-x)/(1-beta))^c - 1 > 0 strictly inside the range;
            // x = beta and x = 1 are equality points, checked as identities in
            // the unit tests, and beta = 1/2 makes the whole expression flat
            Xpr c = xlog(one - B) / xlog(B);
            InequalityDef d{"eq1",
                            "cor1-eq1",
                            "interior grid of 0<beta<1/2, beta<x<1; endpoints are equality cases; "
                            "the continuum claim follows from concavity in x",
                            xpow(X, c) + B * xpow((one - X) / (one - B), c) - one,
                            "",
                            36,
                            {}};
            std::vector<Rat> betas;
            for (long t = 3; t <= 12; ++t) betas.push_back(rat(1, t));
            for (long k = 1; k <= 19; ++k) betas.push_back(rat(k, 40));
            std::sort(betas.begin(), betas.end());
            betas.erase(std::unique(betas.begin(), betas.end()), betas.end());
            for (const Rat& b : betas)
                for (long m = 1; m <= 31; ++m) {
                    Rat x = b + rat(m, 32) * (rat(1) - b);
                    d.cases.push_back({detail::env2("beta", b, "x", x), std::nullopt});
                }
            v.push_back(std::move(d));
        }

        // ---- lemma4-eqs6-8 ---------------------------------------------
        Xpr eta_t = xeta(T), ie_t = xinv_eta(T), om_t = xomega(T);
        Xpr lhs7 = one / X + (X - one) / xpow(X, xconst(5)) -
                   (one / (X - one)) * xpow(one / xpow(X, xconst(5)), ie_t);
        Xpr lhs8 = one / X + ((xconst(2) * X - one) * (X - one)) / xpow(X, xconst(4)) -
                   (one / (X - one)) * xpow((xconst(2) * X - one) / xpow(X, xconst(4)), ie_t);
        auto dom7 = [](long x) -> Rat { return rat(1, x) + rat(x - 1) / pow_rat(rat(x), 5); };
        auto dom8 = [](long x) -> Rat {
            return rat(1, x) + rat(2 * x - 1) * rat(x - 1) / pow_rat(rat(x), 4);
        };
        {
            InequalityDef d{"eq6-nu-convexity",
                            "lemma4-eqs6-8",
                            "convexity coefficient of the delta-dependence; justifies checking the "
                            "two endpoints of the delta interval",
                            ie_t * (one - ie_t),
                            "",
                            36,
                            {}};
            for (long t = 3; t <= 80; ++t) d.cases.push_back({detail::env1("t", rat(t)), std::nullopt});
            v.push_back(std::move(d));
        }
        {
            InequalityDef d{"eq7-t3", "lemma4-eqs6-8",
                            "cover of x in [3,16] at t=3; eq7-t3-tail dominates x >= 16",
                            om_t - lhs7, "x", 36, {}};
            auto e = detail::env1("t", rat(3));
            d.cases.push_back({e, std::make_pair(rat(3), rat(16))});
            v.push_back(std::move(d));
        }
        {
            InequalityDef d{"eq7-t3-tail", "lemma4-eqs6-8",
                            "dropped the negative term; the remaining sum of positive powers of 1/x "
                            "decreases, so one boundary value covers the tail",
                            om_t - (one / X + (X - one) / xpow(X, xconst(5))), "", 36, {}};
            d.cases.push_back({detail::env2("t", rat(3), "x", rat(16)), std::nullopt});
            v.push_back(std::move(d));
        }
        {
            InequalityDef d{"eq7-t4", "lemma4-eqs6-8",
                            "cover of x in [4,12] at t=4; eq7-t4-tail dominates x >= 12",
                            om_t - lhs7, "x", 36, {}};
            d.cases.push_back({detail::env1("t", rat(4)), std::make_pair(rat(4), rat(12))});
            v.push_back(std::move(d));
        }
        {
            InequalityDef d{"eq7-t4-tail", "lemma4-eqs6-8", "as eq7-t3-tail, at t=4",
                            om_t - (one / X + (X - one) / xpow(X, xconst(5))), "", 36, {}};
            d.cases.push_back({detail::env2("t", rat(4), "x", rat(12)), std::nullopt});
            v.push_back(std::move(d));
        }
        {
            InequalityDef d{"eq7-t5plus", "lemma4-eqs6-8",
                            "cover of x in [t, X_t] for 5<=t<=80; eq7-t5plus-tail dominates beyond; "
                            "t > 80 follows from the factored diagonal margin (3t-2)(t-1)/t^5",
                            om_t - lhs7, "x", 40, {}};
            InequalityDef tail{"eq7-t5plus-tail", "lemma4-eqs6-8",
                               "decreasing dominator at the per-t tail start",
                               om_t - (one / X + (X - one) / xpow(X, xconst(5))), "", 36, {}};
            for (long t = 5; t <= 80; ++t) {
                long Xt = detail::tail_start(t, dom7, *omega_rational(t));
                d.cases.push_back({detail::env1("t", rat(t)), std::make_pair(rat(t), rat(Xt))});
                tail.cases.push_back({detail::env2("t", rat(t), "x", rat(Xt)), std::nullopt});
            }
            v.push_back(std::move(d));
            v.push_back(std::move(tail));
        }
        {
            InequalityDef d{"eq7-diagonal", "lemma4-eqs6-8",
                            "exact rational margin (3t-2)(t-1)/t^5 of the x=t boundary value, "
                            "positive for every t >= 2",
                            om_t - (one / T + (T - one) / xpow(T, xconst(5)) -
                                    xpow(T - one, xconst(4)) / xpow(T, xconst(5))),
                            "", 36, {}};
            for (long t = 5; t <= 80; ++t) d.cases.push_back({detail::env1("t", rat(t)), std::nullopt});
            v.push_back(std::move(d));
        }
        {
            InequalityDef d{"eq8-t3", "lemma4-eqs6-8",
                            "cover of x in [3+1/32,16] at t=3; x=3 is the defining equality of the "
                            "density threshold; eq8-t3-tail dominates x >= 16",
                            om_t - lhs8, "x", 36, {}};
            d.cases.push_back({detail::env1("t", rat(3)), std::make_pair(rat(3) + rat(1, 32), rat(16))});
            v.push_back(std::move(d));
        }
        {
            InequalityDef d{"eq8-t3-tail", "lemma4-eqs6-8",
                            "dropped the negative term; dominator decreasing for x >= 2",
                            om_t - (one / X + ((xconst(2) * X - one) * (X - one)) / xpow(X, xconst(4))),
                            "", 36, {}};
            d.cases.push_back({detail::env2("t", rat(3), "x", rat(16)), std::nullopt});
            v.push_back(std::move(d));
        }
        {
            InequalityDef d{"eq8-t4", "lemma4-eqs6-8",
                            "cover of x in [4+1/32,16] at t=4; x=4 is the defining equality",
                            om_t - lhs8, "x", 36, {}};
            d.cases.push_back({detail::env1("t", rat(4)), std::make_pair(rat(4) + rat(1, 32), rat(16))});
            v.push_back(std::move(d));
        }
        {
            InequalityDef d{"eq8-t4-tail", "lemma4-eqs6-8", "as eq8-t3-tail, at t=4",
                            om_t - (one / X + ((xconst(2) * X - one) * (X - one)) / xpow(X, xconst(4))),
                            "", 36, {}};
            d.cases.push_back({detail::env2("t", rat(4), "x", rat(16)), std::nullopt});
            v.push_back(std::move(d));
        }
        {
            InequalityDef d{"eq8-t5plus", "lemma4-eqs6-8",
                            "cover of x in [t, X_t] for 5<=t<=80 plus per-t dominating tails",
                            om_t - lhs8, "x", 40, {}};
            InequalityDef tail{"eq8-t5plus-tail", "lemma4-eqs6-8",
                               "decreasing dominator at the per-t tail start",
                               om_t - (one / X + ((xconst(2) * X - one) * (X - one)) / xpow(X, xconst(4))),
                               "", 36, {}};
            for (long t = 5; t <= 80; ++t) {
                long Xt = detail::tail_start(t, dom8, *omega_rational(t));
                d.cases.push_back({detail::env1("t", rat(t)), std::make_pair(rat(t), rat(Xt))});
                tail.cases.push_back({detail::env2("t", rat(t), "x", rat(Xt)), std::nullopt});
            }
            v.push_back(std::move(d));
            v.push_back(std::move(tail));
        }
        {
            InequalityDef d{"eq8-diagonal-slack", "lemma4-eqs6-8",
                            "exact rational slack (t-1)/t^4 at x=t after dropping the power factor "
                            "above one (eq8-pow-gt-1); positive for every t >= 2",
                            (T - one) / xpow(T, xconst(4)), "", 36, {}};
            for (long t = 5; t <= 80; ++t) d.cases.push_back({detail::env1("t", rat(t)), std::nullopt});
            v.push_back(std::move(d));
        }
        {
            InequalityDef d{"eq8-pow-gt-1", "lemma4-eqs6-8",
                            "(2-1/t)^{1/eta(t)} exceeds one because the base does",
                            xpow(xconst(2) - one / T, ie_t) - one, "", 36, {}};
            for (long t = 5; t <= 80; ++t) d.cases.push_back({detail::env1("t", rat(t)), std::nullopt});
            v.push_back(std::move(d));
        }

        // ---- lemma5-eq17 -----------------------------------------------
        Xpr lhs17 = TJ * (xconst(2) * T - one) / xpow(T, xconst(3)) - one / xpow(TJ, xconst(3)) +
                    (TJ * T / ((TJ - one) * (T - one))) * xpow(one / xpow(TJ, xconst(3)), ie_t);
        {
            InequalityDef d{"eq17-small-tn", "lemma5-eq17",
                            "integer t_j from t to twice the tail start, for each t in 3..21",
                            lhs17 - one, "", 36, {}};
            InequalityDef tail{"eq17-tj-tail", "lemma5-eq17",
                               "dominated from below by t_j(2t-1)/t^3 - 1/27, increasing in t_j, "
                               "already above one at the tail start",
                               TJ * (xconst(2) * T - one) / xpow(T, xconst(3)) - rat(1, 27) * one -
                                   one,
                               "", 36, {}};
            for (long t = 3; t <= 21; ++t) {
                auto dom = [&](long tj) -> Rat {
                    return rat(tj) * rat(2 * t - 1) / pow_rat(rat(t), 3) - rat(1, 27) - rat(1);
                };
                long J = t;
                while (!(dom(J) > 0)) ++J;
                for (long tj = t; tj <= 2 * J; ++tj)
                    d.cases.push_back({detail::env2("t", rat(t), "tj", rat(tj)), std::nullopt});
                tail.cases.push_back({detail::env2("t", rat(t), "tj", rat(J)), std::nullopt});
            }
            v.push_back(std::move(d));
            v.push_back(std::move(tail));
        }
        {
            InequalityDef d{"eq17-diagonal-tn22", "lemma5-eq17",
                            "exact cleared form (t^2-t-1)/t^3 at t_j = t; combined with the "
                            "increasing-in-t_j certificate this settles t >= 22; positive and "
                            "increasing for every t >= 2",
                            (T * T - T - one) / xpow(T, xconst(3)), "", 36, {}};
            for (long t = 22; t <= 80; ++t) d.cases.push_back({detail::env1("t", rat(t)), std::nullopt});
            v.push_back(std::move(d));
        }
        {
            InequalityDef d{"eq17-dQdx-final", "lemma5-eq17",
                            "the x-derivative lower bound at x=t reduces exactly to "
                            "(t-1)/t^2 (1/t - 3/eta(t)); 1/t - 3/eta(t) > 0 from t = 22 on, with "
                            "eta(t) >= (t-1) log t dominating the tail",
                            one / T - xconst(3) / eta_t, "", 36, {}};
            for (long t = 22; t <= 160; ++t) d.cases.push_back({detail::env1("t", rat(t)), std::nullopt});
            v.push_back(std::move(d));
        }

        // ---- lemma7-eqs24-27 --------------------------------------------
        {
            InequalityDef d{"eq24-nu-convexity", "lemma7-eqs24-27",
                            "the nu-dependence nu - c nu^{1/eta} is convex, so the two nu endpoints "
                            "decide the whole interval",
                            ie_t * (one - ie_t), "", 36, {}};
            for (long t = 3; t <= 80; ++t) d.cases.push_back({detail::env1("t", rat(t)), std::nullopt});
            v.push_back(std::move(d));
        }
        Xpr nu0 = (xconst(2) * T - one) / xpow(T, xconst(3));
        {
            InequalityDef d{"eq24-caseA-diagonal", "lemma7-eqs24-27",
                            "case nu >= (2t-1)/t^3 reduces via m >= 2 nu, monotonicity in nu and the "
                            "structural decrease in x to the x=t boundary value",
                            nu0 - (one / T) * (one - xpow(nu0, ie_t)) - one / xpow(T, xconst(4)),
                            "", 36, {}};
            for (long t = 3; t <= 80; ++t) d.cases.push_back({detail::env1("t", rat(t)), std::nullopt});
            v.push_back(std::move(d));
        }
        {
            InequalityDef d{"eq24-caseA-scaled", "lemma7-eqs24-27",
                            "t^4 times the diagonal margin stays above one; with "
                            "eq24-caseA-scaled-monotone this dominates every t beyond the grid",
                            xpow(T, xconst(4)) * (nu0 - (one / T) * (one - xpow(nu0, ie_t)) -
                                                  one / xpow(T, xconst(4))) -
                                one,
                            "", 36, {}};
            for (long t = 3; t <= 80; ++t) d.cases.push_back({detail::env1("t", rat(t)), std::nullopt});
            v.push_back(std::move(d));
        }
        {
            Xpr Tn = T + one;
            Xpr nu0n = (xconst(2) * Tn - one) / xpow(Tn, xconst(3));
            Xpr scaled = xpow(T, xconst(4)) * (nu0 - (one / T) * (one - xpow(nu0, xinv_eta(T))) -
                                               one / xpow(T, xconst(4)));
            Xpr scaledn = xpow(Tn, xconst(4)) * (nu0n - (one / Tn) * (one - xpow(nu0n, xinv_eta(Tn))) -
                                                 one / xpow(Tn, xconst(4)));
            InequalityDef d{"eq24-caseA-scaled-monotone", "lemma7-eqs24-27",
                            "consecutive differences of the scaled diagonal margin", scaledn - scaled,
                            "", 36, {}};
            for (long t = 3; t <= 79; ++t) d.cases.push_back({detail::env1("t", rat(t)), std::nullopt});
            v.push_back(std::move(d));
        }
        Xpr lhs25 = one / X + one / xpow(X, xconst(4)) + NU - (one / (X - one)) * xpow(NU, ie_t);
        {
            InequalityDef hi3{"eq25-nu-hi-t3", "lemma7-eqs24-27",
                              "nu fixed at (2t-1)/t^3, cover of x in [3,11]; tail dominated",
                              om_t - lhs25, "x", 36, {}};
            hi3.cases.push_back(
                {detail::env2("t", rat(3), "nu", rat(5, 27)), std::make_pair(rat(3), rat(11))});
            v.push_back(std::move(hi3));
            InequalityDef ta3{"eq25-nu-hi-t3-tail", "lemma7-eqs24-27",
                              "dropped negative term; 1/x + 1/x^4 + nu decreasing in x",
                              om_t - (one / X + one / xpow(X, xconst(4)) + NU), "", 36, {}};
            ta3.cases.push_back({detail::env3("t", rat(3), "nu", rat(5, 27), "x", rat(11)), std::nullopt});
            v.push_back(std::move(ta3));
            InequalityDef hi4{"eq25-nu-hi-t4", "lemma7-eqs24-27",
                              "nu fixed at (2t-1)/t^3, cover of x in [4,16]; tail dominated",
                              om_t - lhs25, "x", 36, {}};
            hi4.cases.push_back(
                {detail::env2("t", rat(4), "nu", rat(7, 64)), std::make_pair(rat(4), rat(16))});
            v.push_back(std::move(hi4));
            InequalityDef ta4{"eq25-nu-hi-t4-tail", "lemma7-eqs24-27", "as eq25-nu-hi-t3-tail",
                              om_t - (one / X + one / xpow(X, xconst(4)) + NU), "", 36, {}};
            ta4.cases.push_back({detail::env3("t", rat(4), "nu", rat(7, 64), "x", rat(16)), std::nullopt});
            v.push_back(std::move(ta4));
        }
        Xpr lhs25lo = one / X + one / xpow(X, xconst(4)) +
                      (xconst(2) * X - one) / xpow(X, xconst(4)) -
                      (one / (X - one)) * xpow((xconst(2) * X - one) / xpow(X, xconst(4)), ie_t);
        {
            InequalityDef lo3{"eq25-nu-lo-t3", "lemma7-eqs24-27",
                              "nu coupled to (2x-1)/x^4, cover of x in [3,5]; beyond, 1/x + 2/x^3 "
                              "dominates",
                              om_t - lhs25lo, "x", 36, {}};
            lo3.cases.push_back({detail::env1("t", rat(3)), std::make_pair(rat(3), rat(5))});
            v.push_back(std::move(lo3));
            InequalityDef lt3{"eq25-nu-lo-t3-tail", "lemma7-eqs24-27",
                              "1/x^4 + (2x-1)/x^4 collapses to 2/x^3 exactly; decreasing",
                              om_t - (one / X + xconst(2) / xpow(X, xconst(3))), "", 36, {}};
            lt3.cases.push_back({detail::env2("t", rat(3), "x", rat(5)), std::nullopt});
            v.push_back(std::move(lt3));
            InequalityDef lo4{"eq25-nu-lo-t4", "lemma7-eqs24-27", "as eq25-nu-lo-t3 with cover [4,7]",
                              om_t - lhs25lo, "x", 36, {}};
            lo4.cases.push_back({detail::env1("t", rat(4)), std::make_pair(rat(4), rat(7))});
            v.push_back(std::move(lo4));
            InequalityDef lt4{"eq25-nu-lo-t4-tail", "lemma7-eqs24-27", "as eq25-nu-lo-t3-tail",
                              om_t - (one / X + xconst(2) / xpow(X, xconst(3))), "", 36, {}};
            lt4.cases.push_back({detail::env2("t", rat(4), "x", rat(7)), std::nullopt});
            v.push_back(std::move(lt4));
        }
        {
            InequalityDef d{"eq26-diagonal", "lemma7-eqs24-27",
                            "the strengthened form at nu = (2t-1)/t^3 and x = t, for t >= 5",
                            om_t - (one / T + one / xpow(T, xconst(4)) + nu0 - (one / T) * xpow(nu0, ie_t)),
                            "", 36, {}};
            for (long t = 5; t <= 80; ++t) d.cases.push_back({detail::env1("t", rat(t)), std::nullopt});
            v.push_back(std::move(d));
        }
        {
            InequalityDef d{"eq26-diagonal-scaled", "lemma7-eqs24-27",
                            "t^3 times the eq26 margin stays above 1/10 across the grid",
                            xpow(T, xconst(3)) * (om_t - (one / T + one / xpow(T, xconst(4)) + nu0 -
                                                          (one / T) * xpow(nu0, ie_t))) -
                                rat(1, 10) * one,
                            "", 36, {}};
            for (long t = 5; t <= 80; ++t) d.cases.push_back({detail::env1("t", rat(t)), std::nullopt});
            v.push_back(std::move(d));
        }
        {
            InequalityDef d{"eq26-x-dec", "lemma7-eqs24-27",
                            "1 - nu^{1/eta} > 0 makes the 1/x coefficient positive, so the "
                            "strengthened form decreases in x",
                            one - xpow(nu0, ie_t), "", 36, {}};
            for (long t = 5; t <= 80; ++t) d.cases.push_back({detail::env1("t", rat(t)), std::nullopt});
            v.push_back(std::move(d));
        }
        {
            InequalityDef d{"eq27-diagonal", "lemma7-eqs24-27",
                            "exact cleared form (t^2-2t-1)/t^4 of the x=t boundary, positive for "
                            "t >= 3; eq27-x-dec settles x > t",
                            (T * T - xconst(2) * T - one) / xpow(T, xconst(4)), "", 36, {}};
            for (long t = 5; t <= 80; ++t) d.cases.push_back({detail::env1("t", rat(t)), std::nullopt});
            v.push_back(std::move(d));
        }
        {
            InequalityDef d{"eq27-x-dec", "lemma7-eqs24-27",
                            "(1+3/eta)^eta stays below e^3 < 125 <= x^3, making the derivative "
                            "negative for x >= t >= 5",
                            xconst(125) - xpow(one + xconst(3) / eta_t, eta_t), "", 36, {}};
            for (long t = 5; t <= 80; ++t) d.cases.push_back({detail::env1("t", rat(t)), std::nullopt});
            v.push_back(std::move(d));
        }

        // ---- thm6-derivatives-eqs28-31 -----------------------------------
        {
            InequalityDef d{"eq28-f-deriv-final", "thm6-derivatives-eqs28-31",
                            "f'(x) > 0 on (0, 1/t_j^4) reduces to (t-1)^5/t^2 > eta(t) via the exact "
                            "power identity t^{1/eta} = t/(t-1)",
                            xpow(T - one, xconst(5)) / (T * T) - eta_t, "", 36, {}};
            for (long t = 3; t <= 80; ++t) d.cases.push_back({detail::env1("t", rat(t)), std::nullopt});
            v.push_back(std::move(d));
        }
        {
            Xpr TN = xparam("tn"), D = xparam("delta");
            InequalityDef d{"eq28-f-grid", "thm6-derivatives-eqs28-31",
                            "f itself is positive on a grid of (t_n, t_j, delta) with delta below "
                            "1/t_j^4",
                            -D * TN + (TN / (TJ - one)) * xpow(D / (TJ - one), xinv_eta(TN)),
                            "", 36, {}};
            for (long tn = 3; tn <= 8; ++tn)
                for (long tj = tn; tj <= 14; ++tj) {
                    Rat cap = rat(1) / pow_rat(rat(tj), 4);
                    for (int num : {1, 2, 6, 7}) {
                        Rat delta = rat(num, 8) * cap;
                        d.cases.push_back(
                            {detail::env3("tn", rat(tn), "tj", rat(tj), "delta", delta), std::nullopt});
                    }
                }
            v.push_back(std::move(d));
        }
        {
            InequalityDef d{"eq30-pow-gt", "thm6-derivatives-eqs28-31",
                            "(t-1)^{1/eta} >= 1 > (t-1)/t, the middle comparison of the g' chain",
                            xpow(T - one, ie_t) - (T - one) / T, "", 36, {}};
            for (long t = 3; t <= 80; ++t) d.cases.push_back({detail::env1("t", rat(t)), std::nullopt});
            v.push_back(std::move(d));
        }
        {
            InequalityDef d{"eq30-final", "thm6-derivatives-eqs28-31",
                            "1/(t-1) - 1/eta(t) > 0, the last line of the g' chain",
                            eta_t - (T - one), "", 36, {}};
            for (long t = 3; t <= 80; ++t) d.cases.push_back({detail::env1("t", rat(t)), std::nullopt});
            v.push_back(std::move(d));
        }
        {
            Xpr R = xpow(X - one, xconst(2) + ie_t) / xpow(X, xconst(2) - xconst(4) * ie_t);
            // the shift by one puts x itself in the numerator base
            Xpr Rn = xpow(X, xconst(2) + ie_t) / xpow(X + one, xconst(2) - xconst(4) * ie_t);
            InequalityDef d{"eq30-ratio-increasing", "thm6-derivatives-eqs28-31",
                            "(x-1)^{2+1/eta} / x^{2-4/eta} increases along integer steps",
                            Rn - R, "", 36, {}};
            for (long t = 3; t <= 8; ++t)
                for (long x = t; x <= 14; ++x)
                    d.cases.push_back({detail::env2("t", rat(t), "x", rat(x)), std::nullopt});
            v.push_back(std::move(d));
        }
        {
            Xpr TN = xparam("tn"), D = xparam("delta");
            auto g_at = [&](const Xpr& xx) {
                return one - TN / xx - D * TN + (TN / (xx - one)) * xpow(D / (xx - one), xinv_eta(TN));
            };
            InequalityDef d{"eq31-g-monotone", "thm6-derivatives-eqs28-31",
                            "g(t_j) - g(t_n) > 0 on a grid, the step that lowers the bound to the "
                            "diagonal",
                            g_at(TJ) - g_at(TN), "", 36, {}};
            for (long tn = 3; tn <= 8; ++tn)
                for (long tj = tn + 1; tj <= 14; ++tj)
                    for (int num : {1, 7}) {
                        Rat delta = rat(num, 8) / pow_rat(rat(tj), 4);
                        d.cases.push_back(
                            {detail::env3("tn", rat(tn), "tj", rat(tj), "delta", delta), std::nullopt});
                    }
            v.push_back(std::move(d));
        }

        // ---- thm7-numerics-eqs33-41 ---------------------------------------
        {
            InequalityDef d{"eq33-tn4", "thm7-numerics-eqs33-41",
                            "1/t - (2/t)^4 > omega(t) at t = 4", rat(3, 16) * one - om_t, "", 36, {}};
            d.cases.push_back({detail::env1("t", rat(4)), std::nullopt});
            v.push_back(std::move(d));
        }
        {
            InequalityDef d{"eq33-tn5plus", "thm7-numerics-eqs33-41",
                            "exact cleared form (t^3-4t^2+3t-16)/t^4 > 0 for t >= 5; the cubic "
                            "increases, so the grid prefix dominates the tail",
                            (xpow(T, xconst(3)) - xconst(4) * T * T + xconst(3) * T - xconst(16)) /
                                xpow(T, xconst(4)),
                            "", 36, {}};
            for (long t = 5; t <= 80; ++t) d.cases.push_back({detail::env1("t", rat(t)), std::nullopt});
            v.push_back(std::move(d));
        }
        Xpr thr3 = one - xconst(3) * xomega(xconst(3));
        {
            InequalityDef d{"eq35-n8", "thm7-numerics-eqs33-41",
                            "2^n/3^{n-1} drops below the threshold at n = 8 and shrinks by 2/3 per "
                            "extra coordinate",
                            thr3 - rat(256, 2187) * one, "", 36, {}};
            d.cases.push_back({Env{}, std::nullopt});
            v.push_back(std::move(d));
        }
        {
            InequalityDef d{"eq35-k37-exceeds", "thm7-numerics-eqs33-41",
                            "2^7/3^6 lies above the threshold, which is why that product is the "
                            "special case",
                            rat(128, 729) * one - thr3, "", 36, {}};
            d.cases.push_back({Env{}, std::nullopt});
            v.push_back(std::move(d));
        }
        {
            InequalityDef d{"eq35-printed-digits", "thm7-numerics-eqs33-41",
                            "0.166285 is an upper bound for the threshold, so substituting it into "
                            "the increasing eq41 expression is conservative",
                            rat(166285, 1000000) * one - thr3, "", 36, {}};
            d.cases.push_back({Env{}, std::nullopt});
            v.push_back(std::move(d));
        }
        {
            Xpr e5 = xeta(xconst(5)), ie5 = xinv_eta(xconst(5));
            InequalityDef d{"eq38-tn5", "thm7-numerics-eqs33-41",
                            "the t_n >= 5 chain value stays below 1 - 16/125",
                            (one - rat(16, 125) * one) -
                                xpow(rat(16, 25) * one + xconst(100) * xpow(rat(16, 125) * one, e5),
                                     one - ie5),
                            "", 36, {}};
            d.cases.push_back({Env{}, std::nullopt});
            v.push_back(std::move(d));
        }
        {
            Xpr e4 = xeta(xconst(4)), ie4 = xinv_eta(xconst(4));
            InequalityDef d{"eq38-tn4", "thm7-numerics-eqs33-41",
                            "the t_n = 4 chain value stays below (1 - 1/4)/4",
                            rat(3, 16) * one -
                                xpow(rat(1, 16) * one + xconst(4) * xpow(rat(1, 4) * one, e4),
                                     one - ie4),
                            "", 36, {}};
            d.cases.push_back({Env{}, std::nullopt});
            v.push_back(std::move(d));
        }
        Xpr e3 = xeta(xconst(3)), ie3 = xinv_eta(xconst(3));
        {
            InequalityDef d{"eq41-k37", "thm7-numerics-eqs33-41",
                            "the special-case contradiction value stays below 1/3",
                            rat(1, 3) * one -
                                xpow(rat(128, 2187) * one +
                                         xconst(4) * xpow(rat(128, 729) * one, e3),
                                     one - ie3),
                            "", 36, {}};
            d.cases.push_back({Env{}, std::nullopt});
            v.push_back(std::move(d));
        }
        {
            InequalityDef d{"eq41-at-threshold", "thm7-numerics-eqs33-41",
                            "the contradiction value at theta = 0.166285; the expression increases "
                            "in theta and eq35-printed-digits makes the substitution conservative",
                            rat(1, 3) * one - xpow(TH / xconst(3) + xconst(4) * xpow(TH, e3), one - ie3),
                            "", 36, {}};
            d.cases.push_back({detail::env1("theta", rat(166285, 1000000)), std::nullopt});
            v.push_back(std::move(d));
        }
        {
            Xpr et = xeta(T), iet = xinv_eta(T);
            Xpr Vt = xpow(rat(16, 1) * one / (T * T) +
                              xconst(4) * T * T * xpow(xconst(16) / xpow(T, xconst(3)), et),
                          one - iet);
            Xpr Tn = T + one;
            Xpr etn = xeta(Tn), ietn = xinv_eta(Tn);
            Xpr Vtn = xpow(rat(16, 1) * one / (Tn * Tn) +
                               xconst(4) * Tn * Tn * xpow(xconst(16) / xpow(Tn, xconst(3)), etn),
                           one - ietn);
            InequalityDef d{"thm7-chain-t5-decreasing", "thm7-numerics-eqs33-41",
                            "the combined chain expression decreases in t along integer steps",
                            Vt - Vtn, "", 36, {}};
            for (long t = 5; t <= 40; ++t) d.cases.push_back({detail::env1("t", rat(t)), std::nullopt});
            v.push_back(std::move(d));
        }

        // ---- demonstration id outside the suites ---------------------------
        {
            InequalityDef d{"eq35-k37", "",
                            "the threshold comparison that fails precisely for the special case: "
                            "2^7/3^6 < 1 - 3 omega(3) is false",
                            thr3 - rat(128, 729) * one, "", 36, {}};
            d.cases.push_back({Env{}, std::nullopt});
            v.push_back(std::move(d));
        }
        return v;
    }();
    return defs;
}

inline const InequalityDef& find_inequality(const std::string& id) {
    for (const auto& d : inequality_catalog())
        if (d.id == id) return d;
    throw std::domain_error("unknown inequality id: " + id);
}

inline InequalityCert verify_inequality(const std::string& id, mpfr_prec_t bits = kDefaultBits) {
    return run_inequality(find_inequality(id), bits);
}

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "cor1-eq1",         "lemma4-eqs6-8",           "lemma5-eq17",
        "lemma7-eqs24-27",  "thm6-derivatives-eqs28-31", "thm7-numerics-eqs33-41"};
    return names;
}

inline std::vector<InequalityCert> run_suite(const std::string& name, mpfr_prec_t bits = kDefaultBits) {
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), name) == names.end())
        throw std::domain_error("unknown suite: " + name);
    std::vector<InequalityCert> out;
    for (const auto& d : inequality_catalog())
        if (d.suite == name) out.push_back(run_inequality(d, bits));
    return out;
}

// ---------------------------------------------------------------------------
// the exceptional balanced products

// 2^n t_n / |V| for balanced products in t-descending order
inline Rat epsilon0(const ProductSpec& spec) {
    if (!spec.balanced()) throw std::domain_error("epsilon0 is defined for balanced products");
    ProductSpec td = spec.canonical_t_desc();
    long n = td.n();
    if (n > 62) throw std::domain_error("too many factors");
    Rat denom = 1;
    for (long i = 0; i < n; ++i) {
        denom *= td.factors[i].parts.front();  // u_i
        if (i + 1 < n) denom *= td.factors[i].part_count();
    }
    Rat direct = rat(Int(1) << n, 1) / denom;
    Rat via_count = rat(Int(1) << n, 1) * rat(td.factors.back().part_count()) /
                    Rat(spec.vertex_count());
    if (direct != via_count) throw std::logic_error("epsilon0 forms disagree");
    return direct;
}

struct ExceptionRecord {
    ProductSpec spec;
    long n;
    Rat eps0;
    enum class Verdict { Exceptional, SpecialCase } verdict;
};

struct ExceptionEnumeration {
    std::vector<ExceptionRecord> exceptional;  // listing order
    std::optional<ExceptionRecord> special;    // the n=7 all-threes product
    Interval threshold;                        // 1 - 3 omega(3)
    long max_n = 0;                            // first n whose minimal candidate passes
    std::uint64_t candidates = 0;
    std::vector<std::string> notes;
};

// All balanced products with n >= 4 factors, every part count >= 3, whose
// eps0 reaches the threshold 1 - t_n omega(t_n). Only t_n = 3 can qualify
// (eq33-tn4 / eq33-tn5plus), eps0 strictly decreases in every u_i and every
// t_i with i < n, and the minimal candidate falls below the threshold from
// n = 8 on, so the search box is finite.
inline ExceptionEnumeration enumerate_exceptions(mpfr_prec_t bits = kDefaultBits) {
    ExceptionEnumeration out;
    out.threshold = rat(1) - rat(3) * omega(3, bits);

    // certified strict comparison of an exact candidate against the threshold
    auto above_threshold = [&](const Rat& e0) {
        for (mpfr_prec_t p = bits; p <= kMaxBits; p *= 2) {
            Interval thr = rat(1) - rat(3) * omega(3, p);
            int c = thr.compare_rat(e0);
            if (c == 1) return true;
            if (c == -1) return false;
        }
        throw IndeterminateComparison("threshold comparison undecided at precision cap");
    };

    // largest product u1...un * t1...t_{n-1} that can still reach the
    // threshold; anything beyond is certainly below it
    auto box_limit = [&](long n) -> Int {
        Int lim = 1;
        Rat p2n = rat(Int(1) << n, 1);
        while (above_threshold(p2n / Rat(lim + 1))) {
            lim += 1;
            if (lim > (Int(1) << 20)) throw std::logic_error("runaway search box");
        }
        return lim;
    };

    long n = 4;
    for (;; ++n) {
        Rat minimal = rat(Int(1) << n, 1) / Rat(pow_rat(rat(3), n - 1));
        if (!above_threshold(minimal)) {
            out.max_n = n - 1;
            out.notes.push_back("n >= " + std::to_string(n) +
                                ": even all-threes with unit parts falls below the threshold, and "
                                "each extra factor scales eps0 by at most 2/3");
            break;
        }
    }

    std::vector<ExceptionRecord> found;
    for (n = 4; n <= out.max_n; ++n) {
        Int limit = box_limit(n);
        out.notes.push_back("n = " + std::to_string(n) + ": u1..un * t1..t_" + std::to_string(n - 1) +
                            " <= " + limit.get_str());
        // t-tuples t1 >= ... >= t_{n-1} >= t_n = 3, pruned by the box
        std::vector<long> ts(n, 3);
        auto rec_t = [&](auto&& self, long pos, Int prod) -> void {
            if (pos == n - 1) {
                // u assignments: non-increasing within runs of equal t
                Int room = limit / prod;
                std::vector<long> us(n, 1);
                auto rec_u = [&](auto&& uself, long upos, Int uprod) -> void {
                    if (upos == n) {
                        ++out.candidates;
                        Rat e0 = rat(Int(1) << n, 1) / Rat(prod * uprod);
                        if (!above_threshold(e0)) return;
                        std::vector<PartiteFactor> fs;
                        for (long i = 0; i < n; ++i)
                            fs.emplace_back(std::vector<long>(ts[i], us[i]));
                        ExceptionRecord rec{ProductSpec(std::move(fs)), n, e0,
                                            ExceptionRecord::Verdict::Exceptional};
                        bool k37 = n == 7 && uprod == 1 && prod == 729;
                        if (k37) {
                            rec.verdict = ExceptionRecord::Verdict::SpecialCase;
                            out.special = std::move(rec);
                        } else {
                            found.push_back(std::move(rec));
                        }
                        return;
                    }
                    for (long u = 1;; ++u) {
                        if (uprod * u > room) break;
                        // equal part counts: keep u non-increasing for canonical multisets
                        if (upos > 0 && ts[upos] == ts[upos - 1] && u > us[upos - 1]) break;
                        us[upos] = u;
                        uself(uself, upos + 1, uprod * u);
                    }
                    us[upos] = 1;
                };
                rec_u(rec_u, 0, Int(1));
                return;
            }
            long hi_t = pos == 0 ? std::numeric_limits<long>::max() : ts[pos - 1];
            for (long t = 3; t <= hi_t; ++t) {
                Int p = prod * t;
                // remaining coordinates contribute at least 3 each
                Int min_rest = 1;
                for (long k = pos + 1; k < n - 1; ++k) min_rest *= 3;
                if (p * min_rest > limit) break;
                ts[pos] = t;
                self(self, pos + 1, p);
                ts[pos] = 3;
            }
        };
        rec_t(rec_t, 0, Int(1));
    }

    // listing order: n, then the descending t-tuple compared ascending, then
    // total part size, then the u-vector (aligned with the sorted t's) descending
    auto key = [](const ExceptionRecord& r) {
        std::vector<long> tvec, uvec;
        for (const auto& f : r.spec.factors) {
            tvec.push_back(f.part_count());
            uvec.push_back(f.parts.front());
        }
        Int uprod = 1;
        for (long u : uvec) uprod *= u;
        return std::make_tuple(r.n, tvec, uprod, [&] {
            std::vector<long> neg;
            for (long u : uvec) neg.push_back(-u);
            return neg;
        }());
    };
    std::sort(found.begin(), found.end(),
              [&](const ExceptionRecord& a, const ExceptionRecord& b) { return key(a) < key(b); });
    out.exceptional = std::move(found);
    return out;
}

}  // namespace domiso
