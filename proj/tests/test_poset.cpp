#include <doctest.h>

#include <algorithm>

#include "wbr/errors.hpp"
#include "wbr/poset.hpp"
#include "wbr/verify.hpp"

using namespace wbr;

namespace {

// Brute-force table of marks for S3 acting on coset spaces, the oracle for
// the built-in marks document. Permutations of {0,1,2} are composed directly.
std::vector<std::vector<long long>> s3_marks_oracle() {
    using Perm = std::array<int, 3>;
    std::vector<Perm> g;
    Perm p = {0, 1, 2};
    do { g.push_back(p); } while (std::next_permutation(p.begin(), p.end()));
    auto compose = [](const Perm& a, const Perm& b) {  // a after b
        return Perm{a[b[0]], a[b[1]], a[b[2]]};
    };
    auto inverse = [](const Perm& a) {
        Perm r{};
        for (int i = 0; i < 3; ++i) r[a[i]] = i;
        return r;
    };
    auto find = [&](const Perm& x) {
        return (int)(std::find(g.begin(), g.end(), x) - g.begin());
    };
    // subgroup class representatives: S3, A3, <(01)>, 1  (as index sets into g)
    std::vector<std::vector<int>> subs;
    std::vector<int> all, a3, c2 = {find({0, 1, 2}), find({1, 0, 2})}, triv = {find({0, 1, 2})};
    for (int i = 0; i < 6; ++i) all.push_back(i);
    for (int i = 0; i < 6; ++i) {
        // even permutations
        int inv = 0;
        const Perm& q = g[i];
        for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b) inv += q[a] > q[b];
        if (inv % 2 == 0) a3.push_back(i);
    }
    subs = {all, a3, c2, triv};
    std::vector<std::vector<long long>> marks(4, std::vector<long long>(4, 0));
    for (int vi = 0; vi < 4; ++vi) {
        for (int wi = 0; wi < 4; ++wi) {
            // phi_V(G/W): cosets gW with g^-1 V g inside W
            std::set<std::set<int>> cosets;
            for (int i = 0; i < 6; ++i) {
                std::set<int> coset;
                for (int w : subs[wi]) coset.insert(find(compose(g[i], g[w])));
                cosets.insert(coset);
            }
            long long fixed = 0;
            for (const auto& coset : cosets) {
                // a coset gW is V-fixed iff g^-1 V g lies inside W
                int gi = *coset.begin();
                std::set<int> ws(subs[wi].begin(), subs[wi].end());
                bool ok = true;
                for (int v : subs[vi]) {
                    Perm conj = compose(inverse(g[gi]), compose(g[v], g[gi]));
                    if (!ws.count(find(conj))) {
                        ok = false;
                        break;
                    }
                }
                if (ok) ++fixed;
            }
            marks[vi][wi] = fixed;
        }
    }
    return marks;
}

}  // namespace

TEST_CASE("cyclic poset construction") {
    auto p = GroupPoset::cyclic({1, 2});
    CHECK(p->size() == 2);
    CHECK(p->marks(0, 0) == 1);
    CHECK(p->marks(1, 0) == 1);
    CHECK(p->marks(0, 1) == 0);
    CHECK(p->marks(1, 1) == 2);

    auto single = GroupPoset::cyclic({1});
    CHECK(single->size() == 1);
    CHECK(single->marks(0, 0) == 1);

    auto chain = GroupPoset::cyclic({1, 2, 4});
    CHECK(chain->index(0) == 1);
    CHECK(chain->index(1) == 2);
    CHECK(chain->index(2) == 4);
    CHECK(chain->leq(1, 2));
    CHECK_FALSE(chain->leq(2, 1));

    CHECK_THROWS_AS(GroupPoset::cyclic({1, 4}), ValidationError);
    CHECK_THROWS_AS(GroupPoset::cyclic({2}), ValidationError);
}

TEST_CASE("finite abelian subgroup enumeration") {
    auto klein = GroupPoset::finite_abelian({2, 2});
    REQUIRE(klein->size() == 5);
    std::vector<long long> idx;
    for (int i = 0; i < 5; ++i) idx.push_back(klein->index(i));
    CHECK(idx == std::vector<long long>{1, 2, 2, 2, 4});

    auto z4 = GroupPoset::finite_abelian({4});
    REQUIRE(z4->size() == 3);
    CHECK(z4->index(0) == 1);
    CHECK(z4->index(1) == 2);
    CHECK(z4->index(2) == 4);

    auto z2 = GroupPoset::finite_abelian({2});
    auto c2 = GroupPoset::cyclic({1, 2});
    for (int v = 0; v < 2; ++v)
        for (int w = 0; w < 2; ++w) CHECK(z2->marks(v, w) == c2->marks(v, w));

    CHECK_THROWS_AS(GroupPoset::finite_abelian({5000}), GuardError);
}

TEST_CASE("klein meet and join are intersection and generated subgroup") {
    auto klein = GroupPoset::finite_abelian({2, 2});
    // positions 1,2,3 are the three order-2 subgroups, 4 the trivial one
    CHECK(klein->meet(1, 2) == 4);
    CHECK(klein->join(1, 2) == 0);
    CHECK(klein->meet(1, 1) == 1);
    CHECK(klein->join(4, 2) == 2);
}

TEST_CASE("S3 table of marks loads and matches the brute-force oracle") {
    auto doc = s3_marks_document();
    auto oracle = s3_marks_oracle();
    CHECK(doc.at("marks").get<std::vector<std::vector<long long>>>() == oracle);

    auto s3 = GroupPoset::from_marks(doc);
    CHECK(s3->size() == 4);
    CHECK_FALSE(s3->abelian());
    std::vector<long long> diag;
    for (int v = 0; v < 4; ++v) diag.push_back(s3->marks(v, v));
    CHECK(diag == std::vector<long long>{1, 2, 1, 6});  // (N_G(V):V)
}

TEST_CASE("marks document validation errors") {
    nlohmann::json bad1{{"labels", {"G", "U"}}, {"index", {1, 2}}, {"marks", {{1, 5}, {1, 2}}}};
    CHECK_THROWS_AS(GroupPoset::from_marks(bad1), ValidationError);  // above-diagonal entry

    nlohmann::json bad2{{"labels", {"G", "U"}}, {"index", {1, 3}}, {"marks", {{1, 0}, {1, 2}}}};
    CHECK_NOTHROW(GroupPoset::from_marks(bad2));  // 3 divisible by 1 is fine
    nlohmann::json bad3{{"labels", {"G", "U", "V"}},
                        {"index", {1, 2, 3}},
                        {"marks", {{1, 0, 0}, {1, 2, 0}, {1, 1, 3}}}};
    CHECK_THROWS_AS(GroupPoset::from_marks(bad3), ValidationError);  // 2 does not divide 3

    nlohmann::json bad4{{"labels", {"G", "U"}}, {"index", {1, 2}}, {"marks", {{1, 0}, {0, 2}}}};
    CHECK_THROWS_AS(GroupPoset::from_marks(bad4), ValidationError);  // marks[V][G] must be 1

    nlohmann::json bad5{{"labels", {"G", "U"}}, {"index", {1, 2}}, {"marks", {{1, 0}}}};
    CHECK_THROWS_AS(GroupPoset::from_marks(bad5), ValidationError);  // not square
}

TEST_CASE("zeta matrix") {
    auto c2 = GroupPoset::cyclic({1, 2});
    TwistedMatrix z = zeta_q(*c2, false);
    CHECK(z.get(0, 0)->coeff == QPoly(Rat(1)));
    CHECK(z.get(1, 0)->coeff == QPoly::q_power(1));
    CHECK(z.get(1, 1)->coeff == QPoly(Rat(2)));
    CHECK(z.get(0, 1) == nullptr);

    auto c6 = GroupPoset::cyclic({1, 2, 3, 6});
    TwistedMatrix z6 = zeta_q(*c6, true);
    int row = c6->position("6");
    CHECK(z6.get(row, c6->position("1"))->coeff == QPoly::q_power(5));
    CHECK(z6.get(row, c6->position("2"))->coeff == QPoly::q_power(2, Rat(2)));
    CHECK(z6.get(row, c6->position("3"))->coeff == QPoly::q_power(1, Rat(3)));
    CHECK(z6.get(row, c6->position("6"))->coeff == QPoly(Rat(6)));
    CHECK(z6.get(row, c6->position("2"))->adams == 3);  // (W:V) = 6/2

    for (int v = 0; v < c6->size(); ++v)
        CHECK(zeta_q(*c6, false).get(v, v)->coeff == QPoly(Rat(c6->marks(v, v))));
}

TEST_CASE("mu inverts zeta exactly") {
    for (auto poset : {GroupPoset::cyclic({1, 2, 3, 4, 6, 12}), GroupPoset::finite_abelian({2, 2}),
                       GroupPoset::from_marks(s3_marks_document())}) {
        TwistedMatrix z = zeta_q(*poset, false);
        TwistedMatrix m = mu_q(*poset, false);  // construction re-verifies both products
        CHECK(m.rows() == poset->size());
        for (int v = 0; v < poset->size(); ++v)
            CHECK(mu_coeff(m, v, v) == QPoly(Rat(1) / Rat(poset->marks(v, v))));
        (void)z;
    }
}

TEST_CASE("mu inversion scales to a 16-element poset") {
    std::set<long long> ds;
    for (long long d = 1; d <= 120; ++d)
        if (120 % d == 0) ds.insert(d);
    auto poset = GroupPoset::cyclic(ds);
    REQUIRE(poset->size() == 16);
    CHECK_NOTHROW(mu_q(*poset, false));  // the constructor re-verifies both products
}

TEST_CASE("mu worked examples") {
    auto c2 = GroupPoset::cyclic({1, 2});
    TwistedMatrix m = mu_q(*c2, false);
    CHECK(mu_coeff(m, 1, 0) == QPoly::q_power(1, Rat(-1) / 2));
    CHECK(mu_coeff(m, 1, 1) == QPoly(Rat(1) / 2));

    auto c6 = GroupPoset::cyclic({1, 2, 3, 6});
    TwistedMatrix m6 = mu_q(*c6, false);
    // bold mu(6,1) = 6 * mu(6,1) = 2q^3 - q^5
    QPoly bold = mu_coeff(m6, c6->position("6"), c6->position("1")).scaled(Rat(6));
    CHECK(bold == QPoly::q_power(3, Rat(2)) - QPoly::q_power(5));
    CHECK(bold.eval(Rat(1)) == Rat(1));  // classical moebius mu(6)
}

TEST_CASE("bold mu at q=1 is the classical moebius function") {
    for (long long n : {6LL, 12LL, 18LL, 24LL}) {
        std::set<long long> ds;
        for (long long d = 1; d <= n; ++d)
            if (n % d == 0) ds.insert(d);
        auto poset = GroupPoset::cyclic(ds);
        TwistedMatrix m = mu_q(*poset, false);
        for (long long d = 1; d <= n; ++d) {
            if (n % d != 0) continue;
            QPoly bold = mu_coeff(m, poset->position(std::to_string(n)), poset->position(std::to_string(d)))
                             .scaled(Rat(n));
            CHECK(bold.eval(Rat(1)) == Rat(moebius(n / d)));
        }
    }
}

TEST_CASE("bold mu has integer coefficients on the tested posets") {
    CHECK(bold_mu_integer_coeffs(*GroupPoset::cyclic({1, 2, 3, 4, 6, 12})));
    CHECK(bold_mu_integer_coeffs(*GroupPoset::finite_abelian({2, 2})));
}

TEST_CASE("sub poset of a Klein order-2 subgroup") {
    auto klein = GroupPoset::finite_abelian({2, 2});
    SubPoset sp = sub_poset(klein, 1);
    REQUIRE(sp.poset->size() == 2);
    CHECK(sp.poset->index(0) == 1);
    CHECK(sp.poset->index(1) == 2);
    CHECK(sp.parent_pos[0] == 1);
    CHECK(sp.parent_pos[1] == 4);
    CHECK(sp.poset->label(0) == klein->label(1));
}

TEST_CASE("poset json round-trip") {
    for (auto poset : {GroupPoset::cyclic({1, 2, 3, 6}), GroupPoset::finite_abelian({2, 2}),
                       GroupPoset::from_marks(s3_marks_document())}) {
        auto again = GroupPoset::from_json(poset->to_json());
        CHECK(again->to_json() == poset->to_json());
        CHECK(again->content_key() == poset->content_key());
    }
}
