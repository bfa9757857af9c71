#pragma once

#include "wbr/coeffring.hpp"
#include "wbr/necklace.hpp"
#include "wbr/poset.hpp"

namespace wbr {

enum class VecKind { Witt, Nr, NrHat, Ghost };

std::string vec_kind_name(VecKind k);
VecKind vec_kind_from_name(const std::string& s);

// A vector indexed by the poset with entries in a coefficient ring, tagged
// with the ring structure it carries.
struct RingVector {
    PosetPtr poset;
    CoeffRing ring;
    VecKind kind;
    std::vector<RElem> entries;

    static RingVector zero(PosetPtr poset, CoeffRing ring, VecKind kind);
    // The epsilon vector: 1 at position pos, 0 elsewhere.
    static RingVector unit(PosetPtr poset, CoeffRing ring, VecKind kind, int pos);

    RingVector with_kind(VecKind k) const;
    bool equals(const RingVector& o) const;
    nlohmann::json to_json() const;
    static RingVector from_json(const nlohmann::json& j);
};

// Componentwise sum/product (the ghost ring, and Nr addition).
RingVector componentwise_add(const RingVector& a, const RingVector& b);
RingVector componentwise_mul(const RingVector& a, const RingVector& b);
RingVector componentwise_neg(const RingVector& a);
// Reduce an integer vector mod m (the functoriality oracle).
RingVector reduce_mod(const RingVector& a, long long m);

// Ghost maps at an integer q.
RingVector ghost_witt(long long q, const RingVector& v);
RingVector ghost_necklace(long long q, const RingVector& v);
// Symbolic-q ghosts; entries land in the polynomial extension (variables: the
// carrier generator "t" when present), unsupported over IntegersMod.
std::vector<MultiPoly> ghost_witt_symbolic(const RingVector& v);
std::vector<MultiPoly> ghost_necklace_symbolic(const RingVector& v);

// Exact inverse of the requested ghost map by forward substitution along the
// poset order; for Witt this solves the nonlinear triangular system.
RingVector ghost_invert(long long q, const RingVector& ghost, VecKind target);

// The scaling identity Phi^q(a) = (1/q) Phi(q a), checked on demand (q != 0).
bool verify_phi_scaling(long long q, const RingVector& v);

// Universal structure polynomials over Q[q][x_V, y_V], computed once per
// poset by inverting the ghost symbolically. Every coefficient is a
// numerical polynomial in q and the polynomials have no constant term; both
// facts are asserted at construction (a failure would falsify the theory and
// is reported, never accepted).
struct StructureTable {
    PosetPtr poset;
    std::vector<MultiPoly> sum;      // s_U in x/y variables
    std::vector<MultiPoly> product;  // p_U in x/y variables
    std::vector<MultiPoly> inverse;  // iota_U in x variables only

    nlohmann::json to_json() const;
};

// Symbolic table, memoized in memory and in the on-disk cache.
const StructureTable& structure_table(const PosetPtr& poset);
// Specialization at an integer q (coefficients evaluated).
StructureTable structure_table_at(const PosetPtr& poset, long long q);

// Witt operations via the universal polynomials; valid over any coefficient
// ring, including IntegersMod.
RingVector witt_add(long long q, const RingVector& a, const RingVector& b);
RingVector witt_mul(long long q, const RingVector& a, const RingVector& b);
RingVector witt_neg(long long q, const RingVector& a);

// Necklace-ring operations. Addition is componentwise; multiplication runs
// through the P-coefficient table, with Adams twists for kind Nr and plain
// products for kind NrHat.
RingVector nr_mul(long long q, const RingVector& a, const RingVector& b);

// P^U_{V,W}(q) table (symmetric in V,W); every entry is asserted numerical
// and the recursion
//   sum_{V,W preceq Z preceq U} phi_U(G/Z) q^{(Z:U)-1} P^Z_{V,W}
//     = phi_U(G/V) phi_U(G/W) q^{(V:U)+(W:U)-2}
// is verified at construction.
struct PCoeffTable {
    PosetPtr poset;
    std::map<std::tuple<int, int, int>, QPoly> entries;  // (U, min(V,W), max(V,W))

    const QPoly& at(int u, int v, int w) const;
    nlohmann::json to_json() const;
};

const PCoeffTable& p_coeffs(const PosetPtr& poset);  // memoized

// Closed form on abelian posets through the meet/join lattice:
//   P^U_{V,W} = (1/q) (G:V+W) M^q_{V /\ W}(q^{(V:Z)+(W:Z)-1}, U),  Z = V /\ W.
// An independent route to the same table; zero when U is not inside Z.
QPoly p_coeff_meetjoin(const PosetPtr& poset, int u, int v, int w);

}  // namespace wbr
