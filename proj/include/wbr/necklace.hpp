#pragma once

#include "wbr/poset.hpp"

namespace wbr {

// Orbit-sum polynomial of a poset element V, kept internally in the
// power-sum basis: a sum of terms coeff(q) * p_k(X)^e with p_k = sum x_i^k.
// Expansion to monomials happens only on demand.
class OrbitSumPoly {
public:
    struct Term {
        QPoly coeff;
        long long k;  // power-sum index (W:V)
        long long e;  // outer exponent (G:W)
    };

    OrbitSumPoly(int element, std::vector<Term> terms)
        : element_(element), terms_(std::move(terms)) {}

    int element() const { return element_; }
    const std::vector<Term>& terms() const { return terms_; }

    // Specialize every x_i to 1 and replace the alphabet size by the single
    // variable "x": p_k^e becomes x^e.
    MultiPoly univariate() const;
    // Expand over the alphabet {x1, .., xm}.
    MultiPoly multivariate(int m) const;
    // Substitute a q-polynomial for x in the univariate form.
    QPoly eval_at(const QPoly& x_value) const;

private:
    int element_;
    std::vector<Term> terms_;
};

OrbitSumPoly orbit_sum(const PosetPtr& poset, int v);

// M^q(x, n) over the divisor poset of n (the cyclic specialization).
MultiPoly mq_cyclic(long long n);
QPoly mq_cyclic_at(long long n, const QPoly& x_value);

// Brute-force count of aperiodic q-words of length n over an m-letter
// alphabet, up to rotation. Words carry residues mod q; two words are the
// same q-word when one is a global residue shift of the other, and a period
// k | n means every k-block is a residue shift of the first.
long long qword_aperiodic_count(long long q, long long m, long long n);

// Exact identity: q^{(G:V)-1}(x_1+..+x_m)^{(G:V)} equals
// sum_{[W] preceq [V]} phi_V(G/W) q^{(W:V)-1} Psi^{(W:V)}(M^q_G(X,W)).
bool verify_first_main_formula(const PosetPtr& poset, int v, int m);

}  // namespace wbr
