#pragma once

#include <random>

#include "wbr/rings.hpp"

namespace wbr {

// Transfer maps between a group and an open subgroup, abelian posets only.

// Induction is q-free: the 0/1 identity-embedding matrix O(U) -> O(G)
// (rows over the parent, columns over the sub-poset).
TwistedMatrix induction_matrix(const SubPoset& sub);

// q-restriction O(G) -> O(U): entries (Q_{V,W}(q), Adams power (W:V)) with
//   Q_{V,W}(q) = sum_S mu_U^q(V,S) phi_S(G/W) q^{(W:S)-1},
// S running over subgroups of U between V and W. Every Q_{V,W} is asserted
// numerical, and the ghost identity zeta~_U o qRes = R o zeta~_G is
// re-verified symbolically at construction.
TwistedMatrix restriction_matrix(const SubPoset& sub);

// Apply a transfer matrix to a vector at integer q; Adams powers act through
// the ring only for kind Nr.
RingVector apply_transfer(const TwistedMatrix& m, long long q, const RingVector& x, PosetPtr out_poset);

// Embed a vector on O(U) into O(G) (classical induction on vectors).
RingVector induce_vector(const SubPoset& sub, const RingVector& y);

// M^q_G(arg, V) for a symbolic one-dimensional argument (Psi^k raises every
// vector variable of arg to the k-th power).
MultiPoly mq_adams_symbolic(const PosetPtr& poset, int v, const MultiPoly& arg);

// q-Teichmueller map and its inverse (abelian posets).
RingVector tau(long long q, const RingVector& witt);
RingVector tau_inverse(long long q, const RingVector& nr);
// tau applied to the vector of variables (x_U), symbolically in q.
std::vector<MultiPoly> tau_symbolic(const PosetPtr& poset);

// Frobenius and Verschiebung on Witt vectors, transported through tau.
RingVector witt_induction(long long q, const SubPoset& sub, const RingVector& a);
RingVector witt_restriction(long long q, const SubPoset& sub, const RingVector& a);

// Cyclic Frobenius: q-restriction to the subgroup of index r on a divisor
// poset of N (requires r | N); the result lives on divisors(N/r).
RingVector frobenius_cyclic(long long q, long long r, const RingVector& v);

// Lenart coefficients. r = 1 gives the Kronecker delta; for r >= 2,
//   Q_{r,n,d}(q) = q * sum_{i|n} P^n_{i,d}(q) M^q(q^{r-2}, i),
// asserted numerical.
QPoly lenart_Q(long long r, long long n, long long d);

// The n-th component of f^q_r applied to (M^q(x, m))_m equals
// sum_{d|n} Q_{r,n,d}(q) M^q(x^r, d), exactly in Q[x,q].
bool verify_lenart_identity(long long r, long long n);

// f^q_r M^q(x) = M^q(q^{r-1} x^r) on the n-th component; checked with the
// plain (binomial) substitution and, when twisted, with Adams-powered x.
bool verify_frobenius_identity(long long r, long long n, bool twisted);

struct MackeyReport {
    bool frobenius_reciprocity = false;
    bool mackey_decomposition = false;
    bool ghost_projection = false;
    bool all() const { return frobenius_reciprocity && mackey_decomposition && ghost_projection; }
    nlohmann::json to_json() const;
};

// Checks, for a pair of open subgroups (U, V):
//  (a) Ind_U(y) . x = Ind_U(y . qRes_U(x)) on random integer vectors,
//  (b) qRes_U o Ind_V = (G : U+V) Ind_{U/\V}^U o qRes_{U/\V}^V as matrices,
//  (c) ghost_U o Ind_V = [U<=V] (G:V) ghost_U o qRes_U^V as twisted rows.
MackeyReport verify_mackey(const PosetPtr& poset, int u, int v, long long q, std::mt19937_64& rng);

}  // namespace wbr
