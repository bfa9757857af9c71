#pragma once

#include "wbr/poset.hpp"

namespace wbr {

// Solution of the ghost-transfer system: polynomials Y_U in the variables
// X_S (S strictly above U) with Y_G = X_G, determined uniquely over Q by
//   sum_V (G:V) q^{(V:U)-1} X_V^{(V:U)} = sum_V (G:V) r^{(V:U)-1} Y_V^{(V:U)}.
struct TransferSolution {
    PosetPtr poset;
    long long q = 0, r = 0;
    std::vector<MultiPoly> y;      // variables "X:<label>"
    std::set<Int> denominator_primes;

    bool integral() const { return denominator_primes.empty(); }
    nlohmann::json to_json() const;
};

// Forward substitution down an abelian poset; records the prime support of
// every coefficient denominator and re-verifies the solution by substitution.
TransferSolution solve_transfer(const PosetPtr& poset, long long q, long long r);

struct IsoDecision {
    bool exists = false;
    std::set<Int> obstruction_primes;
    nlohmann::json to_json() const;
};

// Prime divisors of n within a finite set; n = 0 means every prime.
std::set<Int> prime_support_within(long long n, const std::set<Int>& universe);

// Classification decision: the strict isomorphism over Z exists iff the
// symmetric difference of the prime supports of q and r inside D^pr(G) is
// empty. Cross-validated against the observed denominators of the solver.
IsoDecision strict_iso_over_Z(const PosetPtr& poset, long long q, long long r);

}  // namespace wbr
