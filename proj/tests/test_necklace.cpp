#include <doctest.h>

#include "wbr/errors.hpp"
#include "wbr/necklace.hpp"
#include "wbr/verify.hpp"

using namespace wbr;

namespace {

QPoly q1() { return QPoly::q_power(1); }

}  // namespace

TEST_CASE("univariate orbit sums on divisor posets") {
    CHECK(mq_cyclic(1) == MultiPoly::variable("x"));

    MultiPoly x = MultiPoly::variable("x");
    CHECK(mq_cyclic(2) == (x.pow(2) - x).scaled(q1().scaled(Rat(1) / 2)));

    MultiPoly m6 = x.scaled(QPoly::q_power(3, Rat(2)) - QPoly::q_power(5)) -
                   x.pow(2).scaled(QPoly::q_power(3)) - x.pow(3).scaled(QPoly::q_power(3)) +
                   x.pow(6).scaled(QPoly::q_power(5));
    CHECK(mq_cyclic(6) == m6.scaled(Rat(1) / 6));
}

TEST_CASE("multivariate orbit sums are symmetric") {
    auto poset = GroupPoset::cyclic({1, 2, 3, 6});
    for (int v = 0; v < poset->size(); ++v) {
        MultiPoly p = orbit_sum(poset, v).multivariate(2);
        MultiPoly swapped = p.subst("x1", MultiPoly::variable("tmp"))
                                .subst("x2", MultiPoly::variable("x1"))
                                .subst("tmp", MultiPoly::variable("x2"));
        CHECK(p == swapped);
    }
    // M^q({x1,x2}, 2) = q x1 x2
    auto c2 = GroupPoset::cyclic({1, 2});
    CHECK(orbit_sum(c2, 1).multivariate(2) ==
          (MultiPoly::variable("x1") * MultiPoly::variable("x2")).scaled(q1()));
}

TEST_CASE("orbit sum on one-element poset and errors") {
    auto trivial = GroupPoset::cyclic({1});
    CHECK(orbit_sum(trivial, 0).univariate() == MultiPoly::variable("x"));
    CHECK_THROWS_AS(orbit_sum(trivial, 3), ValidationError);
}

TEST_CASE("aperiodic q-word oracle, frozen small cases") {
    CHECK(qword_aperiodic_count(1, 2, 3) == 2);  // classical binary aperiodic necklaces
    CHECK(qword_aperiodic_count(2, 1, 2) == 0);
    CHECK(qword_aperiodic_count(3, 2, 1) == 2);
    CHECK(qword_aperiodic_count(2, 2, 2) == 2);
    CHECK_THROWS_AS(qword_aperiodic_count(10, 10, 9), GuardError);
}

TEST_CASE("oracle agrees with the closed form") {
    for (long long q = 1; q <= 3; ++q)
        for (long long m = 1; m <= 3; ++m)
            for (long long n = 1; n <= 6; ++n) {
                Rat closed = mq_cyclic(n).eval(Rat(q), {{"x", Rat(m)}});
                CHECK(Rat(qword_aperiodic_count(q, m, n)) == closed);
            }
}

TEST_CASE("first main formula") {
    auto c2 = GroupPoset::cyclic({1, 2});
    CHECK(verify_first_main_formula(c2, 1, 2));
    CHECK(verify_first_main_formula(c2, 0, 3));  // V = G: both sides are x1+..+xm

    auto klein = GroupPoset::finite_abelian({2, 2});
    for (int v = 0; v < klein->size(); ++v) CHECK(verify_first_main_formula(klein, v, 2));

    auto s3 = GroupPoset::from_marks(s3_marks_document());
    for (int v = 0; v < s3->size(); ++v) CHECK(verify_first_main_formula(s3, v, 2));
}

TEST_CASE("orbit sums are numerical in q and x") {
    for (long long n = 1; n <= 16; ++n) CHECK(mq_cyclic(n).is_numerical_multi());
}

TEST_CASE("(1/q) M^q(q^s, n) is numerical") {
    for (long long n = 1; n <= 12; ++n)
        for (long long s = 1; s <= 3; ++s)
            CHECK(mq_cyclic_at(n, QPoly::q_power(s)).divided_by_q(1).is_numerical());
}

TEST_CASE("classical limit of the necklace polynomial") {
    for (long long n = 1; n <= 24; ++n) {
        MultiPoly classical;
        for (long long d = 1; d <= n; ++d)
            if (n % d == 0) classical += MultiPoly::variable("x", d).scaled(Rat(moebius(n / d)) / Rat(n));
        CHECK(mq_cyclic(n).at_q(Rat(1)) == classical);
    }
}
