#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "domiso/interval.hpp"
#include "domiso/rational.hpp"

using namespace domiso;

static bool encloses(const Interval& iv, double v, double tol) {
    return iv.lo_d() <= v + tol && iv.hi_d() >= v - tol;
}

TEST_CASE("rational plumbing") {
    CHECK(rat_str(rat(4, 6)) == "2/3");
    CHECK(rat_str(rat(-4, 6)) == "-2/3");
    CHECK(parse_rat("5/27") == rat(5, 27));
    CHECK(parse_rat("-3") == rat(-3));
    CHECK_THROWS_AS(parse_rat("1/0"), std::domain_error);
    CHECK(rat_floor(rat(7, 3)) == 2);
    CHECK(rat_ceil(rat(7, 3)) == 3);
    CHECK(rat_floor(rat(-7, 3)) == -3);
    CHECK(pow_rat(rat(2, 3), 3) == rat(8, 27));
}

TEST_CASE("interval arithmetic encloses exact results") {
    Interval a = Interval::of(rat(1, 3));
    Interval b = Interval::of(rat(1, 6));
    Interval s = a + b;
    CHECK(s.compare_rat(rat(1, 2)) == 0);  // 1/2 inside
    CHECK(s.width_d() < 1e-30);

    Interval p = a * b;
    CHECK(p.compare_rat(rat(1, 18)) == 0);
    Interval q = a / b;
    CHECK(q.compare_rat(rat(2)) == 0);
    CHECK((-a).compare_rat(rat(-1, 3)) == 0);

    // signed products stay enclosing
    Interval m = Interval::hull(rat(-2), rat(3)) * Interval::hull(rat(-1), rat(5));
    CHECK(m.compare_rat(rat(-10)) == 0);
    CHECK(m.compare_rat(rat(15)) == 0);
    CHECK(m.compare_rat(rat(16)) == 1);

    CHECK_THROWS_AS(a / Interval::hull(rat(-1), rat(1)), std::domain_error);
    CHECK_THROWS_AS(log_i(Interval::of(rat(0))), std::domain_error);
}

TEST_CASE("eta values") {
    CHECK(eta(2).lo_d() == 1.0);
    CHECK(eta(2).hi_d() == 1.0);

    Interval e3 = eta(3);
    CHECK(e3.lo_d() >= 2.70951);
    CHECK(e3.hi_d() <= 2.70952);

    Interval e4 = eta(4);
    CHECK(e4.lo_d() >= 4.81884);
    CHECK(e4.hi_d() <= 4.81885);

    CHECK_THROWS_AS(eta(1), std::domain_error);

    // inv_eta is the reciprocal
    Interval prod = eta(7) * inv_eta(7);
    CHECK(prod.compare_rat(rat(1)) == 0);
    CHECK(prod.width_d() < 1e-30);
}

TEST_CASE("omega values match printed decimals") {
    CHECK(encloses(omega(3), 0.2779, 5e-5));
    CHECK(encloses(omega(4), 0.1741, 5e-5));
    CHECK(omega(3).width_d() < 1e-30);
    CHECK(omega_rational(5).value() == rat(17, 125));
    CHECK(!omega_rational(3).has_value());
    CHECK(omega(5).compare_rat(rat(17, 125)) == 0);
    CHECK_THROWS_AS(omega(2), std::domain_error);

    Interval thr = rat(1) - rat(3) * omega(3);
    CHECK(encloses(thr, 0.166285, 5e-7));
    CHECK(thr.width_d() < 1e-12);
}

TEST_CASE("power identities") {
    // (1/9)^(1/eta(3)) = 4/9 exactly
    Interval v = pow_i(Interval::of(rat(1, 9)), inv_eta(3));
    CHECK(v.compare_rat(rat(4, 9)) == 0);
    CHECK(v.width_d() < 1e-30);

    // t^(1/eta(t)) = t/(t-1) exactly
    for (long t : {3L, 4L, 7L, 22L}) {
        Interval w = pow_i(Interval::of(t), inv_eta(t));
        CHECK(w.compare_rat(rat(t, t - 1)) == 0);
    }

    // beta^(log_beta(1-beta)) = 1-beta: exponent c built from logs of numbers < 1
    Rat beta = rat(2, 7);
    Interval c = log_i(Interval::of(rat(1) - beta)) / log_i(Interval::of(beta));
    Interval w = pow_i(Interval::of(beta), c);
    CHECK(w.compare_rat(rat(5, 7)) == 0);
}

TEST_CASE("omega threshold comparisons") {
    CHECK(exceeds_omega(rat(8, 27), 3));    // 8/27 > omega(3)
    CHECK(!exceeds_omega(rat(7, 27), 3));   // 7/27 < omega(3)
    CHECK(!exceeds_omega(rat(1, 4), 3));    // the K4-fiber density 1/4 is below
    CHECK(exceeds_omega(rat(14, 100), 5));  // exact branch: 0.14 > 17/125
    CHECK(!exceeds_omega(rat(17, 125), 5));
}

TEST_CASE("interval string rendering is directed") {
    Interval t = Interval::of(rat(1, 3));
    std::string lo = t.lo_str(20), hi = t.hi_str(20);
    CHECK(lo.substr(0, 6) == "3.3333");
    CHECK(hi.substr(0, 6) == "3.3333");
    CHECK(lo <= hi);
}
