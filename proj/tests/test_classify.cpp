#include <doctest.h>

#include "wbr/classify.hpp"

using namespace wbr;

TEST_CASE("transfer solution on the two-element chain") {
    auto c2 = GroupPoset::cyclic({1, 2});
    // Y_2 = X_2 + (q-r)/2 X_1^2
    for (long long q : {-3LL, 0LL, 2LL, 5LL}) {
        for (long long r : {-2LL, 1LL, 4LL}) {
            TransferSolution sol = solve_transfer(c2, q, r);
            MultiPoly x1 = MultiPoly::variable("X:1"), x2 = MultiPoly::variable("X:2");
            CHECK(sol.y[0] == x1);
            CHECK(sol.y[1] == x2 + x1.pow(2).scaled(Rat(q - r) / 2));
        }
    }
    TransferSolution s24 = solve_transfer(c2, 2, 4);
    CHECK(s24.y[1] == MultiPoly::variable("X:2") - MultiPoly::variable("X:1").pow(2));
    CHECK(s24.integral());
}

TEST_CASE("q = r gives the identity transfer") {
    for (auto poset : {GroupPoset::cyclic({1, 2, 4}), GroupPoset::finite_abelian({2, 2})}) {
        for (long long q : {-6LL, 0LL, 1LL, 6LL}) {
            TransferSolution sol = solve_transfer(poset, q, q);
            for (int u = 0; u < poset->size(); ++u)
                CHECK(sol.y[u] == MultiPoly::variable("X:" + poset->label(u)));
            CHECK(sol.integral());
            IsoDecision d = strict_iso_over_Z(poset, q, q);
            CHECK(d.exists);
            CHECK(d.obstruction_primes.empty());
        }
    }
}

TEST_CASE("classification witnesses on divisors of 4") {
    auto c4 = GroupPoset::cyclic({1, 2, 4});
    IsoDecision d1 = strict_iso_over_Z(c4, 2, 1);
    CHECK_FALSE(d1.exists);
    CHECK(d1.obstruction_primes == std::set<Int>{Int(2)});
    CHECK_FALSE(solve_transfer(c4, 2, 1).integral());

    IsoDecision d2 = strict_iso_over_Z(c4, 2, 6);
    CHECK(d2.exists);
    CHECK(d2.obstruction_primes.empty());
    CHECK(solve_transfer(c4, 2, 6).integral());
}

TEST_CASE("decision agrees with solver integrality over the full grid") {
    for (long long p : {2LL, 3LL}) {
        auto poset = GroupPoset::cyclic({1, p, p * p});
        for (long long q = -6; q <= 6; ++q) {
            for (long long r = -6; r <= 6; ++r) {
                TransferSolution sol = solve_transfer(poset, q, r);
                IsoDecision d = strict_iso_over_Z(poset, q, r);
                CHECK(d.exists == sol.integral());
                // denominator support lies inside the predicted obstruction set
                for (const Int& pr : sol.denominator_primes) CHECK(d.obstruction_primes.count(pr) == 1);
                // and on this family it is exactly the predicted set
                CHECK(sol.denominator_primes == d.obstruction_primes);
            }
        }
    }
}

TEST_CASE("denominator primes divide relative indices and exactly one of q, r") {
    auto klein = GroupPoset::finite_abelian({2, 2});
    for (long long q = -4; q <= 4; ++q) {
        for (long long r = -4; r <= 4; ++r) {
            TransferSolution sol = solve_transfer(klein, q, r);
            for (const Int& p : sol.denominator_primes) {
                CHECK(poset_prime_support(*klein).count(p) == 1);
                bool div_q = (q == 0) || (Int(q < 0 ? -q : q) % p == 0);
                bool div_r = (r == 0) || (Int(r < 0 ? -r : r) % p == 0);
                CHECK(div_q != div_r);
            }
        }
    }
}

TEST_CASE("prime support conventions") {
    std::set<Int> universe = {Int(2), Int(3), Int(5)};
    CHECK(prime_support_within(0, universe) == universe);  // every prime divides 0
    CHECK(prime_support_within(1, universe).empty());
    CHECK(prime_support_within(-12, universe) == std::set<Int>{Int(2), Int(3)});
}
