#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "domiso/certificates.hpp"

using namespace domiso;

static const char* kExpectedExceptional[37] = {
    "K_3^4",           "K[2,3]xK_3^3",      "K[3,3]xK_3^3",      "K_4xK_3^3",
    "K[2,4]xK_3^3",    "K_4xK[2,3]xK_3^2",  "K_4^2xK_3^2",       "K[2,4]xK_4xK_3^2",
    "K_4^2xK[2,3]xK_3", "K_4^3xK_3",        "K_5xK_3^3",         "K[2,5]xK_3^3",
    "K_5xK[2,3]xK_3^2", "K_5xK_4xK_3^2",    "K_5xK_4^2xK_3",     "K_5^2xK_3^2",
    "K_6xK_3^3",       "K_6xK_4xK_3^2",     "K_6xK_4^2xK_3",     "K_6xK_5xK_3^2",
    "K_7xK_3^3",       "K_7xK_4xK_3^2",     "K_8xK_3^3",         "K_8xK_4xK_3^2",
    "K_9xK_3^3",       "K_10xK_3^3",        "K_3^5",             "K[2,3]xK_3^4",
    "K_4xK_3^4",       "K_4^2xK_3^3",       "K_4^3xK_3^2",       "K_5xK_3^4",
    "K_5xK_4xK_3^3",   "K_6xK_3^4",         "K_7xK_3^4",         "K_3^6",
    "K_4xK_3^5"};

TEST_CASE("expression engine basics") {
    Env e;
    e["x"] = Val::of(rat(2, 3), 128);
    Xpr f = xparam("x") * xparam("x") - xconst(rat(1, 3));
    Val v = f.f(e, 128);
    REQUIRE(v.exact.has_value());
    CHECK(*v.exact == rat(1, 9));
    CHECK(v.box.compare_rat(rat(1, 9)) == 0);

    // integer powers stay exact, transcendental ones do not
    Val p = xpow(xparam("x"), xconst(3)).f(e, 128);
    CHECK(p.exact == rat(8, 27));
    Val q = xpow(xparam("x"), xconst(rat(1, 2))).f(e, 128);
    CHECK(!q.exact.has_value());
    CHECK(q.box.compare_rat(rat(2, 3)) == -1);  // sqrt(2/3) certainly above 2/3

    // 0^positive = 0 exactly
    Env z;
    z["d"] = Val::of(rat(0), 128);
    Val zz = xpow(xparam("d"), xinv_eta(xconst(3))).f(z, 128);
    CHECK(zz.exact == rat(0));
}

TEST_CASE("epsilon0 values") {
    CHECK(epsilon0(parse_spec("K_3^4")) == rat(16, 27));
    CHECK(epsilon0(parse_spec("K_3^7")) == rat(128, 729));
    CHECK(epsilon0(parse_spec("K_4^3xK_3^2")) == rat(1, 6));
    CHECK(epsilon0(parse_spec("K[2,4]xK_4xK_3^2")) == rat(1, 6));
    CHECK(epsilon0(parse_spec("K_10xK_3^3")) == rat(16, 90));
    CHECK(epsilon0(parse_spec("K_11xK_3^3")) == rat(16, 99));
    // order-insensitive
    CHECK(epsilon0(parse_spec("K_3^3xK_10")) == rat(8, 45));
    CHECK_THROWS_AS(epsilon0(parse_spec("K(3,1)xK_3")), std::domain_error);
}

TEST_CASE("epsilon0 strict monotonicity") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 300; ++trial) {
        long n = 4 + static_cast<long>(rng() % 3);
        std::vector<long> ts, us;
        for (long i = 0; i < n; ++i) {
            ts.push_back(3 + static_cast<long>(rng() % 5));
            us.push_back(1 + static_cast<long>(rng() % 3));
        }
        std::sort(ts.rbegin(), ts.rend());
        auto build = [&](const std::vector<long>& t, const std::vector<long>& u) {
            std::vector<PartiteFactor> fs;
            for (long i = 0; i < n; ++i) fs.emplace_back(std::vector<long>(t[i], u[i]));
            return ProductSpec(std::move(fs));
        };
        Rat base = epsilon0(build(ts, us));
        for (long i = 0; i < n; ++i) {
            auto u2 = us;
            u2[i] += 1;
            CHECK(epsilon0(build(ts, u2)) < base);
            if (i < n - 1) {  // t bump keeps descending order for i < n-1... keep sorted
                auto t2 = ts;
                t2[i] += 1;
                std::sort(t2.rbegin(), t2.rend());
                CHECK(epsilon0(build(t2, us)) < base);
            }
        }
    }
}

TEST_CASE("exceptional enumeration reproduces the 37-product list") {
    auto e = enumerate_exceptions();
    REQUIRE(e.exceptional.size() == 37);
    CHECK(e.max_n == 7);

    // multiset equality, order-insensitive
    std::vector<ProductSpec> expected;
    for (const char* s : kExpectedExceptional) expected.push_back(parse_spec(s));
    for (const auto& exp : expected) {
        bool found = false;
        for (const auto& rec : e.exceptional)
            if (rec.spec == exp) found = true;
        CHECK_MESSAGE(found, exp.to_string());
    }

    // and the listing order itself
    for (int i = 0; i < 37; ++i)
        CHECK(e.exceptional[i].spec.to_string() == kExpectedExceptional[i]);

    // the special case is flagged, never listed
    REQUIRE(e.special.has_value());
    CHECK(e.special->spec == parse_spec("K_3^7"));
    CHECK(e.special->eps0 == rat(128, 729));
    CHECK(e.special->verdict == ExceptionRecord::Verdict::SpecialCase);
    for (const auto& rec : e.exceptional) CHECK(!(rec.spec == e.special->spec));

    // tight case certified with a narrow interval
    CHECK(e.threshold.width_d() <= 1e-6);
    for (const auto& rec : e.exceptional)
        if (rec.spec == parse_spec("K_4^3xK_3^2")) {
            CHECK(rec.eps0 == rat(1, 6));
            CHECK(e.threshold.compare_rat(rec.eps0) == 1);
        }

    // known passes stay out
    for (const char* s : {"K_11xK_3^3", "K_8xK_3^4", "K[2,3]^2xK_3^2", "K_5xK_3^5"}) {
        ProductSpec p = parse_spec(s);
        for (const auto& rec : e.exceptional) CHECK(!(rec.spec == p));
    }
}

TEST_CASE("no record sits on the search box boundary") {
    auto e = enumerate_exceptions();
    auto bumped_spec = [](const ProductSpec& spec, std::size_t idx, bool bump_t) {
        auto fs = spec.factors;
        std::vector<long> parts = fs[idx].parts;
        if (bump_t)
            parts.push_back(parts.front());  // one more part of the same size
        else
            for (auto& s : parts) s += 1;  // larger parts
        fs[idx] = PartiteFactor(parts);
        return ProductSpec(fs);
    };
    for (const auto& rec : e.exceptional) {
        for (std::size_t i = 0; i < rec.spec.factors.size(); ++i) {
            // growing any u strictly lowers eps0
            CHECK(epsilon0(bumped_spec(rec.spec, i, false)) < rec.eps0);
            // growing a part count either strictly lowers eps0 (another
            // smallest factor remains) or leaves a product with every part
            // count at least 4, which the tn>=4 certificates exclude
            ProductSpec bt = bumped_spec(rec.spec, i, true);
            long min_t = bt.canonical_t_desc().factors.back().part_count();
            if (min_t == 3)
                CHECK(epsilon0(bt) < rec.eps0);
            else
                CHECK(min_t >= 4);
        }
    }
}

TEST_CASE("printed decimals reproduce") {
    auto close_to = [](const Interval& iv, double v, double tol) {
        return iv.lo_d() >= v - tol && iv.hi_d() <= v + tol;
    };
    CHECK(close_to(omega(3), 0.2779, 5e-5));
    CHECK(close_to(omega(4), 0.1741, 5e-5));
    Interval thr = rat(1) - rat(3) * omega(3);
    CHECK(close_to(thr, 0.166285, 5e-7));

    // chain values
    Interval v5 = exp_i((Interval::of(1L) - inv_eta(5)) *
                        log_i(Interval::of(rat(16, 25)) +
                              rat(100) * pow_i(Interval::of(rat(16, 125)), eta(5))));
    CHECK(close_to(v5, 0.6809, 5e-5));
    Interval v4 = exp_i((Interval::of(1L) - inv_eta(4)) *
                        log_i(Interval::of(rat(1, 16)) +
                              rat(4) * pow_i(Interval::of(rat(1, 4)), eta(4))));
    CHECK(close_to(v4, 0.1181, 5e-5));
    Interval k37 = exp_i((Interval::of(1L) - inv_eta(3)) *
                         log_i(Interval::of(rat(128, 2187)) +
                               rat(4) * pow_i(Interval::of(rat(128, 729)), eta(3))));
    CHECK(close_to(k37, 0.2256, 5e-5));
}

TEST_CASE("all six suites verify with positive margins") {
    for (const auto& name : suite_names()) {
        auto certs = run_suite(name, 128);
        CHECK(!certs.empty());
        for (const auto& c : certs) {
            std::string msg = c.id + ": " + std::string(to_string(c.verdict)) + " at " + c.counterexample;
            CHECK_MESSAGE(c.verdict == InequalityCert::Verdict::Verified, msg);
            CHECK_MESSAGE(c.margin_lo > 0, c.id);
            CHECK(c.points > 0);
        }
    }
    CHECK_THROWS_AS(run_suite("nonsense"), std::domain_error);
}

TEST_CASE("the special-case threshold comparison fails as expected") {
    auto cert = verify_inequality("eq35-k37");
    CHECK(cert.verdict == InequalityCert::Verdict::Failed);
    CHECK((!cert.counterexample.empty() || cert.points == 1));
    // reproduces at doubled precision
    auto again = verify_inequality("eq35-k37", 256);
    CHECK(again.verdict == InequalityCert::Verdict::Failed);
}

TEST_CASE("boundary equalities of the omega definition") {
    // at x = t the eq8 boundary value equals omega(t) for t = 3, 4
    for (long t : {3L, 4L}) {
        Interval x = Interval::of(t, 256);
        Interval ie = inv_eta(t, 256);
        Interval lhs = Interval::of(rat(1, t), 256) +
                       Interval::of(rat((2 * t - 1) * (t - 1)), 256) /
                           Interval::of(pow_rat(rat(t), 4), 256) -
                       pow_i(Interval::of(rat(2 * t - 1) / pow_rat(rat(t), 4), 256), ie) /
                           Interval::of(rat(t - 1), 256);
        Interval diff = lhs - omega(t, 256);
        CHECK(diff.contains_zero());
        CHECK(diff.width_d() < 1e-60);
        (void)x;
    }

    // eq1 at x = beta: beta^c + beta * 1^c = (1-beta) + beta = 1 exactly
    for (const Rat& beta : {rat(1, 3), rat(2, 5), rat(1, 7)}) {
        Interval c = log_i(Interval::of(rat(1) - beta, 256)) / log_i(Interval::of(beta, 256));
        Interval lhs = pow_i(Interval::of(beta, 256), c) +
                       beta * pow_i(Interval::of(rat(1), 256), c);
        Interval diff = lhs - Interval::of(rat(1), 256);
        CHECK(diff.contains_zero());
        CHECK(diff.width_d() < 1e-60);
    }
}

TEST_CASE("engine detects failures and near-equalities in cover mode") {
    // false in the interior: x^2 - 2 > 0 fails inside [1,2]
    InequalityDef bad{"ad-hoc-bad", "", "engine property test",
                      xparam("x") * xparam("x") - xconst(2), "x", 20, {}};
    bad.cases.push_back({Env{}, std::make_pair(rat(1), rat(2))});
    auto cert = run_inequality(bad);
    CHECK(cert.verdict == InequalityCert::Verdict::Failed);
    CHECK(!cert.counterexample.empty());

    // true with comfortable margin: verified over the whole cover
    InequalityDef good{"ad-hoc-good", "", "engine property test",
                       xparam("x") * xparam("x") + xconst(1), "x", 20, {}};
    good.cases.push_back({Env{}, std::make_pair(rat(-3), rat(3))});
    auto ok = run_inequality(good);
    CHECK(ok.verdict == InequalityCert::Verdict::Verified);
    CHECK(ok.margin_lo >= 1.0 - 1e-12);

    // equality at an endpoint: cannot be strictly verified, never falsely passes
    InequalityDef edge{"ad-hoc-edge", "", "engine property test", xparam("x"), "x", 12, {}};
    edge.cases.push_back({Env{}, std::make_pair(rat(0), rat(1))});
    auto ind = run_inequality(edge);
    CHECK(ind.verdict == InequalityCert::Verdict::Indeterminate);

    // exact rational family: failure is decided exactly, not by interval width
    InequalityDef exact_bad{"ad-hoc-exact", "", "engine property test",
                            xconst(rat(1, 3)) - xparam("q"), "", 12, {}};
    exact_bad.cases.push_back({detail::env1("q", rat(1, 3)), std::nullopt});
    CHECK(run_inequality(exact_bad).verdict == InequalityCert::Verdict::Failed);
}

TEST_CASE("suites stay verified at doubled precision") {
    for (const auto& c : run_suite("thm7-numerics-eqs33-41", 256)) {
        CHECK(c.verdict == InequalityCert::Verdict::Verified);
        CHECK(c.margin_lo > 0);
    }
    // enumeration agrees at doubled precision too
    auto e1 = enumerate_exceptions(128);
    auto e2 = enumerate_exceptions(256);
    REQUIRE(e1.exceptional.size() == e2.exceptional.size());
    for (std::size_t i = 0; i < e1.exceptional.size(); ++i)
        CHECK(e1.exceptional[i].spec == e2.exceptional[i].spec);
}

TEST_CASE("derivative expressions cross-checked by finite differences") {
    // the eq30 ratio really increases: compare against direct evaluation deltas
    auto R = [](long t, double x) {
        double ie = 1.0 / (std::log(t) / std::log(double(t) / (t - 1)));
        return std::pow(x - 1, 2 + ie) / std::pow(x, 2 - 4 * ie);
    };
    for (long t : {3L, 5L}) {
        for (double x = t; x < 12; x += 1)
            CHECK(R(t, x + 1) > R(t, x));
    }
}
