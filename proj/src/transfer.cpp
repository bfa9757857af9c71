#include "wbr/transfer.hpp"

#include "wbr/errors.hpp"

namespace wbr {

TwistedMatrix induction_matrix(const SubPoset& sub) {
    TwistedMatrix m(sub.parent->size(), sub.poset->size());
    for (int j = 0; j < sub.poset->size(); ++j) m.set(sub.parent_pos[j], j, QPoly(Rat(1)), 1);
    return m;
}

TwistedMatrix restriction_matrix(const SubPoset& sub) {
    const GroupPoset& G = *sub.parent;
    const GroupPoset& U = *sub.poset;
    TwistedMatrix mu = mu_q(U, false);
    TwistedMatrix d(U.size(), G.size());
    for (int v = 0; v < U.size(); ++v) {
        for (int w = 0; w < G.size(); ++w) {
            int pv = sub.parent_pos[v];
            if (!G.leq(w, pv)) continue;
            QPoly qvw;
            for (int s = 0; s < U.size(); ++s) {
                int ps = sub.parent_pos[s];
                if (!U.leq(s, v) || !G.leq(w, ps)) continue;
                qvw += mu_coeff(mu, v, s) * QPoly::q_power(G.rel_index(w, ps) - 1, Rat(G.marks(ps, w)));
            }
            if (qvw.is_zero()) continue;
            if (!qvw.is_numerical())
                throw IntegralityError("Q_{V,W} is not a numerical polynomial at (" + G.label(pv) + "," +
                                       G.label(w) + "): " + qvw.str());
            d.set(v, w, qvw, G.rel_index(w, pv));
        }
    }
    // ghost identity: zeta~_U o qRes equals the row selection of zeta~_G
    TwistedMatrix lhs = zeta_q(U, true).compose(d);
    TwistedMatrix rhs(U.size(), G.size());
    TwistedMatrix zg = zeta_q(G, true);
    for (int v = 0; v < U.size(); ++v)
        for (int w = 0; w < G.size(); ++w)
            if (const auto* e = zg.get(sub.parent_pos[v], w)) rhs.set(v, w, e->coeff, e->adams);
    if (lhs != rhs) throw Error("restriction_matrix: ghost identity failed");
    return d;
}

RingVector apply_transfer(const TwistedMatrix& m, long long q, const RingVector& x, PosetPtr out_poset) {
    if (m.cols() != (int)x.entries.size()) throw Error("apply_transfer: shape mismatch");
    if (m.rows() != out_poset->size()) throw Error("apply_transfer: target poset mismatch");
    bool use_psi = x.kind == VecKind::Nr;
    RingVector out = RingVector::zero(std::move(out_poset), x.ring, x.kind);
    for (int r = 0; r < m.rows(); ++r) {
        RElem acc = x.ring.zero();
        for (int c = 0; c < m.cols(); ++c) {
            const auto* e = m.get(r, c);
            if (!e) continue;
            RElem t = use_psi ? x.ring.psi(e->adams, x.entries[c]) : x.entries[c];
            acc = x.ring.add(acc, x.ring.scale(t, e->coeff.eval(Rat(q))));
        }
        out.entries[r] = acc;
    }
    return out;
}

RingVector induce_vector(const SubPoset& sub, const RingVector& y) {
    if ((int)y.entries.size() != sub.poset->size()) throw Error("induce_vector: shape mismatch");
    RingVector out = RingVector::zero(sub.parent, y.ring, y.kind);
    for (int j = 0; j < sub.poset->size(); ++j) out.entries[sub.parent_pos[j]] = y.entries[j];
    return out;
}

MultiPoly mq_adams_symbolic(const PosetPtr& poset, int v, const MultiPoly& arg) {
    TwistedMatrix mu = mu_q(*poset, false);
    MultiPoly out;
    for (int w = 0; w <= v; ++w) {
        if (!poset->leq(w, v)) continue;
        long long inner = poset->rel_index(w, v);  // (W:V)
        long long outer = poset->index(w);         // (G:W)
        out += arg.adams(inner).pow(outer).scaled(mu_coeff(mu, v, w) * QPoly::q_power(outer - 1));
    }
    return out;
}

namespace {

// M^q_U(r, V) for a ring element r, through the rational shadow of the ring.
RElem mq_ring(const SubPoset& sub, int v, const RElem& r, long long q, const CoeffRing& ring,
              const TwistedMatrix& mu_sub) {
    const GroupPoset& U = *sub.poset;
    RElem acc = ring.zero();
    for (int w = 0; w <= v; ++w) {
        if (!U.leq(w, v)) continue;
        long long inner = U.rel_index(w, v);
        long long outer = U.index(w);
        Rat c = mu_coeff(mu_sub, v, w).eval(Rat(q)) * rat_pow(Rat(q), outer - 1);
        if (c == 0) continue;
        acc = ring.add(acc, ring.scale(ring.pow(ring.psi(inner, r), outer), c));
    }
    return acc;
}

struct SubPosetSet {
    std::vector<SubPoset> subs;        // one per poset element
    std::vector<TwistedMatrix> mus;    // untwisted mu of each sub-poset
};

SubPosetSet all_sub_posets(const PosetPtr& poset) {
    SubPosetSet out;
    for (int u = 0; u < poset->size(); ++u) {
        out.subs.push_back(sub_poset(poset, u));
        out.mus.push_back(mu_q(*out.subs.back().poset, false));
    }
    return out;
}

}  // namespace

RingVector tau(long long q, const RingVector& witt) {
    if (witt.kind != VecKind::Witt) throw Error("tau: witt vector expected");
    if (!witt.poset->abelian()) throw Error("tau: abelian poset required");
    if (witt.ring.kind() == RingKind::IntegersMod) throw Error("tau: unsupported over IntegersMod");
    const GroupPoset& G = *witt.poset;
    SubPosetSet sp = all_sub_posets(witt.poset);
    RingVector out = RingVector::zero(witt.poset, witt.ring, VecKind::Nr);
    for (int w = 0; w < G.size(); ++w) {
        RElem acc = witt.ring.zero();
        for (int u = 0; u < G.size(); ++u) {
            int wi = sp.subs[u].from_parent[w];
            if (wi < 0) continue;  // W not inside U
            acc = witt.ring.add(acc, mq_ring(sp.subs[u], wi, witt.entries[u], q, witt.ring, sp.mus[u]));
        }
        witt.ring.check(acc, "tau");
        out.entries[w] = acc;
    }
    return out;
}

RingVector tau_inverse(long long q, const RingVector& nr) {
    if (nr.kind != VecKind::Nr) throw Error("tau_inverse: nr vector expected");
    if (!nr.poset->abelian()) throw Error("tau_inverse: abelian poset required");
    const GroupPoset& G = *nr.poset;
    SubPosetSet sp = all_sub_posets(nr.poset);
    RingVector out = RingVector::zero(nr.poset, nr.ring, VecKind::Witt);
    for (int u = 0; u < G.size(); ++u) {
        RElem acc = nr.entries[u];
        for (int v = 0; v < u; ++v) {
            int ui = sp.subs[v].from_parent[u];
            if (ui < 0) continue;
            acc = nr.ring.sub(acc, mq_ring(sp.subs[v], ui, out.entries[v], q, nr.ring, sp.mus[v]));
        }
        nr.ring.check(acc, "tau_inverse");
        out.entries[u] = acc;
    }
    return out;
}

std::vector<MultiPoly> tau_symbolic(const PosetPtr& poset) {
    if (!poset->abelian()) throw Error("tau_symbolic: abelian poset required");
    const GroupPoset& G = *poset;
    std::vector<MultiPoly> out(G.size());
    for (int u = 0; u < G.size(); ++u) {
        SubPoset sub = sub_poset(poset, u);
        MultiPoly xu = MultiPoly::variable("x:" + G.label(u));
        for (int wi = 0; wi < sub.poset->size(); ++wi)
            out[sub.parent_pos[wi]] += mq_adams_symbolic(sub.poset, wi, xu);
    }
    return out;
}

RingVector witt_induction(long long q, const SubPoset& sub, const RingVector& a) {
    return tau_inverse(q, induce_vector(sub, tau(q, a)));
}

RingVector witt_restriction(long long q, const SubPoset& sub, const RingVector& a) {
    return tau_inverse(q, apply_transfer(restriction_matrix(sub), q, tau(q, a), sub.poset));
}

RingVector frobenius_cyclic(long long q, long long r, const RingVector& v) {
    if (!v.poset->is_cyclic()) throw Error("frobenius_cyclic: cyclic poset required");
    if (v.kind != VecKind::Nr && v.kind != VecKind::NrHat)
        throw Error("frobenius_cyclic: necklace vector expected");
    long long n_top = v.poset->index(v.poset->size() - 1);
    if (r < 1 || n_top % r != 0)
        throw GuardError("frobenius_cyclic: truncation too small for r=" + std::to_string(r));
    SubPoset sub = sub_poset(v.poset, v.poset->position(std::to_string(r)));
    std::set<long long> divisors;
    for (int i = 0; i < sub.poset->size(); ++i) divisors.insert(sub.poset->index(i));
    PosetPtr target = GroupPoset::cyclic(divisors);
    RingVector moved = apply_transfer(restriction_matrix(sub), q, v, sub.poset);
    RingVector out = RingVector::zero(target, v.ring, v.kind);
    for (int i = 0; i < sub.poset->size(); ++i)
        out.entries[target->position(std::to_string(sub.poset->index(i)))] = moved.entries[i];
    return out;
}

namespace {

PosetPtr divisor_poset(long long n) {
    std::set<long long> ds;
    for (long long d = 1; d <= n; ++d)
        if (n % d == 0) ds.insert(d);
    return GroupPoset::cyclic(ds);
}

}  // namespace

QPoly lenart_Q(long long r, long long n, long long d) {
    if (r < 1 || n < 1 || d < 1 || n % d != 0) throw ValidationError("lenart_Q: need r >= 1 and d | n");
    if (r == 1) return d == n ? QPoly(Rat(1)) : QPoly();
    PosetPtr poset = divisor_poset(n);
    const PCoeffTable& tab = p_coeffs(poset);
    int dpos = poset->position(std::to_string(d));
    QPoly out;
    for (long long i = 1; i <= n; ++i) {
        if (n % i != 0) continue;
        const QPoly& p = tab.at(poset->position(std::to_string(n)), poset->position(std::to_string(i)), dpos);
        if (p.is_zero()) continue;
        out += p * mq_cyclic_at(i, QPoly::q_power(r - 2));
    }
    out = out * QPoly::q_power(1);
    if (!out.is_numerical())
        throw IntegralityError("Q_{r,n,d} is not a numerical polynomial: " + out.str());
    return out;
}

namespace {

// n-th component of f^q_r applied to a vector of orbit-sum polynomials, on
// the divisor poset of r*n. Untwisted: the components are the univariate
// M^q(x, w) and the matrix acts without Adams powers (the binomial reading).
// Twisted: the components are Teichmueller images M^q_G(x, w) of a
// one-dimensional x, and the matrix Adams powers act on x.
MultiPoly frobenius_of_necklace_vector(long long r, long long n, bool twisted) {
    PosetPtr poset = divisor_poset(r * n);
    SubPoset sub = sub_poset(poset, poset->position(std::to_string(r)));
    TwistedMatrix d = restriction_matrix(sub);
    int row = sub.from_parent[poset->position(std::to_string(r * n))];
    MultiPoly x = MultiPoly::variable("x");
    MultiPoly out;
    for (int w = 0; w < poset->size(); ++w) {
        const auto* e = d.get(row, w);
        if (!e) continue;
        MultiPoly m = twisted ? mq_adams_symbolic(poset, w, x).adams(e->adams)
                              : orbit_sum(poset, w).univariate();
        out += m.scaled(e->coeff);
    }
    return out;
}

}  // namespace

bool verify_lenart_identity(long long r, long long n) {
    MultiPoly lhs = frobenius_of_necklace_vector(r, n, /*twisted=*/false);
    MultiPoly xr = MultiPoly::variable("x", r);
    MultiPoly rhs;
    for (long long dd = 1; dd <= n; ++dd) {
        if (n % dd != 0) continue;
        rhs += mq_cyclic(dd).subst("x", xr).scaled(lenart_Q(r, n, dd));
    }
    return lhs == rhs;
}

bool verify_frobenius_identity(long long r, long long n, bool twisted) {
    MultiPoly lhs = frobenius_of_necklace_vector(r, n, twisted);
    MultiPoly arg = MultiPoly::variable("x", r).scaled(QPoly::q_power(r - 1));
    if (!twisted) return lhs == mq_cyclic(n).subst("x", arg);
    PosetPtr pn = divisor_poset(n);
    return lhs == mq_adams_symbolic(pn, pn->size() - 1, arg);
}

nlohmann::json MackeyReport::to_json() const {
    return nlohmann::json{{"frobenius_reciprocity", frobenius_reciprocity},
                          {"mackey_decomposition", mackey_decomposition},
                          {"ghost_projection", ghost_projection}};
}

MackeyReport verify_mackey(const PosetPtr& poset, int u, int v, long long q, std::mt19937_64& rng) {
    if (!poset->abelian()) throw Error("verify_mackey: abelian poset required");
    MackeyReport rep;
    SubPoset spU = sub_poset(poset, u);
    SubPoset spV = sub_poset(poset, v);
    CoeffRing Z = CoeffRing::integers();

    // (a) Frobenius reciprocity on random integer vectors
    std::uniform_int_distribution<long long> small(-4, 4);
    rep.frobenius_reciprocity = true;
    TwistedMatrix res_u = restriction_matrix(spU);
    for (int trial = 0; trial < 8 && rep.frobenius_reciprocity; ++trial) {
        RingVector x = RingVector::zero(poset, Z, VecKind::Nr);
        for (auto& e : x.entries) e = RElem(Rat(small(rng)));
        RingVector y = RingVector::zero(spU.poset, Z, VecKind::Nr);
        for (auto& e : y.entries) e = RElem(Rat(small(rng)));
        RingVector lhs = nr_mul(q, induce_vector(spU, y), x);
        RingVector res_x = apply_transfer(res_u, q, x, spU.poset);
        RingVector rhs = induce_vector(spU, nr_mul(q, y, res_x));
        rep.frobenius_reciprocity = lhs.equals(rhs);
    }

    // (b) Mackey decomposition as an exact matrix identity
    int m = poset->meet(u, v);
    SubPoset spUM = sub_poset(spU.poset, spU.from_parent[m]);
    SubPoset spVM = sub_poset(spV.poset, spV.from_parent[m]);
    TwistedMatrix lhs_mat = res_u.compose(induction_matrix(spV));
    TwistedMatrix rhs_mat = induction_matrix(spUM)
                                .compose(restriction_matrix(spVM))
                                .scaled(QPoly(Rat(poset->index(poset->join(u, v)))));
    rep.mackey_decomposition = lhs_mat == rhs_mat;

    // (c) ghost projection
    TwistedMatrix lhs_row = zeta_q(*poset, true).row(u).compose(induction_matrix(spV));
    TwistedMatrix rhs_row(1, spV.poset->size());
    if (poset->leq(v, u)) {  // U contained in V
        SubPoset spVU = sub_poset(spV.poset, spV.from_parent[u]);
        rhs_row = zeta_q(*spVU.poset, true)
                      .row(0)
                      .compose(restriction_matrix(spVU))
                      .scaled(QPoly(Rat(poset->index(v))));
    }
    rep.ghost_projection = lhs_row == rhs_row;
    return rep;
}

}  // namespace wbr
