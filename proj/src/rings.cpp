#include "wbr/rings.hpp"

#include <mutex>

#include "wbr/cache.hpp"
#include "wbr/errors.hpp"

namespace wbr {

std::string vec_kind_name(VecKind k) {
    switch (k) {
        case VecKind::Witt: return "witt";
        case VecKind::Nr: return "nr";
        case VecKind::NrHat: return "nr_hat";
        case VecKind::Ghost: return "ghost";
    }
    return "?";
}

VecKind vec_kind_from_name(const std::string& s) {
    if (s == "witt") return VecKind::Witt;
    if (s == "nr") return VecKind::Nr;
    if (s == "nr_hat") return VecKind::NrHat;
    if (s == "ghost") return VecKind::Ghost;
    throw ValidationError("unknown vector kind '" + s + "'");
}

RingVector RingVector::zero(PosetPtr poset, CoeffRing ring, VecKind kind) {
    RingVector v{poset, ring, kind, {}};
    v.entries.assign(poset->size(), ring.zero());
    return v;
}

RingVector RingVector::unit(PosetPtr poset, CoeffRing ring, VecKind kind, int pos) {
    RingVector v = zero(std::move(poset), ring, kind);
    v.entries.at(pos) = ring.one();
    return v;
}

RingVector RingVector::with_kind(VecKind k) const {
    RingVector v = *this;
    v.kind = k;
    return v;
}

bool RingVector::equals(const RingVector& o) const {
    if (entries.size() != o.entries.size()) return false;
    for (size_t i = 0; i < entries.size(); ++i)
        if (!ring.eq(entries[i], o.entries[i])) return false;
    return true;
}

nlohmann::json RingVector::to_json() const {
    nlohmann::json e = nlohmann::json::object();
    for (int i = 0; i < poset->size(); ++i) e[poset->label(i)] = ring.to_json(entries[i]);
    return nlohmann::json{{"poset", poset->to_json()},
                          {"kind", vec_kind_name(kind)},
                          {"ring", ring.name()},
                          {"entries", e}};
}

RingVector RingVector::from_json(const nlohmann::json& j) {
    PosetPtr poset = GroupPoset::from_json(j.at("poset"));
    CoeffRing ring = CoeffRing::from_name(j.at("ring").get<std::string>());
    RingVector v = zero(poset, ring, vec_kind_from_name(j.at("kind").get<std::string>()));
    for (auto it = j.at("entries").begin(); it != j.at("entries").end(); ++it)
        v.entries.at(poset->position(it.key())) = ring.from_json(it.value());
    return v;
}

RingVector componentwise_add(const RingVector& a, const RingVector& b) {
    RingVector out = a;
    for (size_t i = 0; i < out.entries.size(); ++i) out.entries[i] = a.ring.add(a.entries[i], b.entries[i]);
    return out;
}

RingVector componentwise_mul(const RingVector& a, const RingVector& b) {
    RingVector out = a;
    for (size_t i = 0; i < out.entries.size(); ++i) out.entries[i] = a.ring.mul(a.entries[i], b.entries[i]);
    return out;
}

RingVector componentwise_neg(const RingVector& a) {
    RingVector out = a;
    for (size_t i = 0; i < out.entries.size(); ++i) out.entries[i] = a.ring.neg(a.entries[i]);
    return out;
}

RingVector reduce_mod(const RingVector& a, long long m) {
    if (a.ring.kind() != RingKind::Integers) throw Error("reduce_mod: integer vector expected");
    RingVector out{a.poset, CoeffRing::integers_mod(m), a.kind, {}};
    for (const RElem& e : a.entries) out.entries.push_back(out.ring.from_rat(e.scalar()));
    return out;
}

namespace {

Rat ghost_scalar(const GroupPoset& poset, int u, int v, long long q) {
    long long k = poset.rel_index(v, u);
    return Rat(poset.marks(u, v)) * rat_pow(Rat(q), k - 1);
}

}  // namespace

RingVector ghost_witt(long long q, const RingVector& v) {
    if (v.kind != VecKind::Witt) throw Error("ghost_witt: witt vector expected");
    RingVector out = RingVector::zero(v.poset, v.ring, VecKind::Ghost);
    const GroupPoset& P = *v.poset;
    for (int u = 0; u < P.size(); ++u) {
        RElem acc = v.ring.zero();
        for (int w = 0; w <= u; ++w) {
            if (!P.leq(w, u)) continue;
            RElem t = v.ring.pow(v.entries[w], P.rel_index(w, u));
            acc = v.ring.add(acc, v.ring.scale(t, ghost_scalar(P, u, w, q)));
        }
        out.entries[u] = acc;
    }
    return out;
}

RingVector ghost_necklace(long long q, const RingVector& v) {
    if (v.kind != VecKind::Nr && v.kind != VecKind::NrHat)
        throw Error("ghost_necklace: necklace vector expected");
    bool twisted = v.kind == VecKind::Nr;
    RingVector out = RingVector::zero(v.poset, v.ring, VecKind::Ghost);
    const GroupPoset& P = *v.poset;
    for (int u = 0; u < P.size(); ++u) {
        RElem acc = v.ring.zero();
        for (int w = 0; w <= u; ++w) {
            if (!P.leq(w, u)) continue;
            long long k = P.rel_index(w, u);
            RElem t = twisted ? v.ring.psi(k, v.entries[w]) : v.entries[w];
            acc = v.ring.add(acc, v.ring.scale(t, ghost_scalar(P, u, w, q)));
        }
        out.entries[u] = acc;
    }
    return out;
}

namespace {

MultiPoly embed_symbolic(const CoeffRing& ring, const RElem& e) {
    if (ring.kind() == RingKind::IntegersMod)
        throw Error("symbolic ghost: unsupported over IntegersMod");
    if (!ring.is_poly() || e.is_scalar()) return MultiPoly(QPoly(e.scalar()));
    MultiPoly out;
    for (const auto& [ex, c] : e.tpoly())
        out += (ex == 0 ? MultiPoly(QPoly(c)) : MultiPoly::variable("t", ex).scaled(QPoly(c)));
    return out;
}

}  // namespace

std::vector<MultiPoly> ghost_witt_symbolic(const RingVector& v) {
    if (v.kind != VecKind::Witt) throw Error("ghost_witt_symbolic: witt vector expected");
    const GroupPoset& P = *v.poset;
    std::vector<MultiPoly> out(P.size());
    for (int u = 0; u < P.size(); ++u) {
        for (int w = 0; w <= u; ++w) {
            if (!P.leq(w, u)) continue;
            long long k = P.rel_index(w, u);
            out[u] += embed_symbolic(v.ring, v.entries[w])
                          .pow(k)
                          .scaled(QPoly::q_power(k - 1, Rat(P.marks(u, w))));
        }
    }
    return out;
}

std::vector<MultiPoly> ghost_necklace_symbolic(const RingVector& v) {
    if (v.kind != VecKind::Nr && v.kind != VecKind::NrHat)
        throw Error("ghost_necklace_symbolic: necklace vector expected");
    bool twisted = v.kind == VecKind::Nr && !v.ring.binomial();
    const GroupPoset& P = *v.poset;
    std::vector<MultiPoly> out(P.size());
    for (int u = 0; u < P.size(); ++u) {
        for (int w = 0; w <= u; ++w) {
            if (!P.leq(w, u)) continue;
            long long k = P.rel_index(w, u);
            MultiPoly e = embed_symbolic(v.ring, v.entries[w]);
            if (twisted) e = e.adams(k);
            out[u] += e.scaled(QPoly::q_power(k - 1, Rat(P.marks(u, w))));
        }
    }
    return out;
}

RingVector ghost_invert(long long q, const RingVector& ghost, VecKind target) {
    if (ghost.kind != VecKind::Ghost) throw Error("ghost_invert: ghost vector expected");
    if (target == VecKind::Ghost) throw Error("ghost_invert: target must be witt/nr/nr_hat");
    const GroupPoset& P = *ghost.poset;
    const CoeffRing& R = ghost.ring;
    RingVector out = RingVector::zero(ghost.poset, R, target);
    for (int u = 0; u < P.size(); ++u) {
        RElem acc = ghost.entries[u];
        for (int w = 0; w < u; ++w) {
            if (!P.leq(w, u)) continue;
            long long k = P.rel_index(w, u);
            RElem t;
            switch (target) {
                case VecKind::Witt: t = R.pow(out.entries[w], k); break;
                case VecKind::Nr: t = R.psi(k, out.entries[w]); break;
                default: t = out.entries[w];
            }
            acc = R.sub(acc, R.scale(t, ghost_scalar(P, u, w, q)));
        }
        out.entries[u] = R.divide_exact(acc, P.marks(u, u));
        R.check(out.entries[u], "ghost_invert");
    }
    return out;
}

bool verify_phi_scaling(long long q, const RingVector& v) {
    if (q == 0) throw Error("verify_phi_scaling: q must be nonzero");
    RingVector lhs = ghost_witt(q, v);
    RingVector qv = v;
    for (RElem& e : qv.entries) e = v.ring.scale(e, Rat(q));
    RingVector rhs = ghost_witt(1, qv);
    for (RElem& e : rhs.entries) e = v.ring.scale(e, Rat(1) / q);
    return lhs.equals(rhs);
}

namespace {

std::vector<MultiPoly> symbolic_ghost_of_vars(const GroupPoset& P, const std::string& prefix) {
    std::vector<MultiPoly> out(P.size());
    for (int u = 0; u < P.size(); ++u)
        for (int w = 0; w <= u; ++w) {
            if (!P.leq(w, u)) continue;
            long long k = P.rel_index(w, u);
            out[u] += MultiPoly::variable(prefix + P.label(w), k)
                          .scaled(QPoly::q_power(k - 1, Rat(P.marks(u, w))));
        }
    return out;
}

std::vector<MultiPoly> phi_inverse_symbolic(const GroupPoset& P, const std::vector<MultiPoly>& target) {
    std::vector<MultiPoly> s(P.size());
    for (int u = 0; u < P.size(); ++u) {
        MultiPoly acc = target[u];
        for (int w = 0; w < u; ++w) {
            if (!P.leq(w, u)) continue;
            long long k = P.rel_index(w, u);
            acc -= s[w].pow(k).scaled(QPoly::q_power(k - 1, Rat(P.marks(u, w))));
        }
        s[u] = acc.scaled(Rat(1) / P.marks(u, u));
    }
    return s;
}

void assert_structure_poly(const MultiPoly& p, const std::string& what) {
    if (!p.constant_term().is_zero())
        throw IntegralityError("structure table: " + what + " has a constant term");
    for (const auto& [m, c] : p.terms())
        if (!c.is_numerical())
            throw IntegralityError("structure table: coefficient of " + what +
                                   " is not a numerical polynomial: " + c.str());
}

StructureTable compute_structure_table(const PosetPtr& poset) {
    if (poset->size() > 12) throw GuardError("structure table: poset size exceeds the symbolic guard (12)");
    const GroupPoset& P = *poset;
    auto gx = symbolic_ghost_of_vars(P, "x:");
    auto gy = symbolic_ghost_of_vars(P, "y:");
    std::vector<MultiPoly> gsum(P.size()), gprod(P.size()), gneg(P.size());
    for (int u = 0; u < P.size(); ++u) {
        gsum[u] = gx[u] + gy[u];
        gprod[u] = gx[u] * gy[u];
        gneg[u] = -gx[u];
    }
    StructureTable t{poset, phi_inverse_symbolic(P, gsum), phi_inverse_symbolic(P, gprod),
                     phi_inverse_symbolic(P, gneg)};
    for (int u = 0; u < P.size(); ++u) {
        assert_structure_poly(t.sum[u], "s[" + P.label(u) + "]");
        assert_structure_poly(t.product[u], "p[" + P.label(u) + "]");
        assert_structure_poly(t.inverse[u], "iota[" + P.label(u) + "]");
        // scaling cross-checks against the q=1 specialization:
        //   s^q(x,y) = (1/q) s^1(q x, q y)   and   iota^q(x) = (1/q) iota^1(q x)
        if (t.sum[u].at_q(Rat(1)).q_graded_scale(1) != t.sum[u])
            throw IntegralityError("structure table: s scaling identity failed");
        if (t.inverse[u].at_q(Rat(1)).q_graded_scale(1) != t.inverse[u])
            throw IntegralityError("structure table: iota scaling identity failed");
    }
    return t;
}

nlohmann::json polys_to_json(const GroupPoset& P, const std::vector<MultiPoly>& v) {
    nlohmann::json out = nlohmann::json::object();
    for (int u = 0; u < P.size(); ++u) out[P.label(u)] = v[u].to_json();
    return out;
}

std::vector<MultiPoly> polys_from_json(const GroupPoset& P, const nlohmann::json& j) {
    std::vector<MultiPoly> out(P.size());
    for (int u = 0; u < P.size(); ++u) out[u] = MultiPoly::from_json(j.at(P.label(u)));
    return out;
}

std::mutex& registry_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

nlohmann::json StructureTable::to_json() const {
    return nlohmann::json{{"poset", poset->to_json()},
                          {"s", polys_to_json(*poset, sum)},
                          {"p", polys_to_json(*poset, product)},
                          {"iota", polys_to_json(*poset, inverse)}};
}

const StructureTable& structure_table(const PosetPtr& poset) {
    static std::map<std::string, std::unique_ptr<StructureTable>> registry;
    std::lock_guard<std::mutex> lock(registry_mutex());
    std::string key = "structure-" + poset->content_key();
    auto it = registry.find(key);
    if (it != registry.end()) return *it->second;

    if (auto doc = cache_load(key)) {
        try {
            if (doc->at("poset") == poset->to_json()) {
                auto t = std::make_unique<StructureTable>(StructureTable{
                    poset, polys_from_json(*poset, doc->at("s")), polys_from_json(*poset, doc->at("p")),
                    polys_from_json(*poset, doc->at("iota"))});
                return *registry.emplace(key, std::move(t)).first->second;
            }
        } catch (const std::exception&) {
            // fall through and recompute
        }
    }
    auto t = std::make_unique<StructureTable>(compute_structure_table(poset));
    cache_store(key, t->to_json());
    return *registry.emplace(key, std::move(t)).first->second;
}

StructureTable structure_table_at(const PosetPtr& poset, long long q) {
    const StructureTable& sym = structure_table(poset);
    StructureTable out{poset, {}, {}, {}};
    for (int u = 0; u < poset->size(); ++u) {
        out.sum.push_back(sym.sum[u].at_q(Rat(q)));
        out.product.push_back(sym.product[u].at_q(Rat(q)));
        out.inverse.push_back(sym.inverse[u].at_q(Rat(q)));
    }
    return out;
}

namespace {

RElem eval_structure_poly(const MultiPoly& poly, const GroupPoset& P, const CoeffRing& R, long long q,
                          const RingVector* xs, const RingVector* ys) {
    RElem acc = R.zero();
    for (const auto& [mono, coeff] : poly.terms()) {
        Rat c = coeff.eval(Rat(q));
        if (!is_integer(c))
            throw IntegralityError("structure polynomial coefficient is not integral at q=" +
                                   std::to_string(q));
        RElem term = R.one();
        for (const auto& [var, e] : mono) {
            const RingVector* src = nullptr;
            std::string label;
            if (var.rfind("x:", 0) == 0) {
                src = xs;
                label = var.substr(2);
            } else if (var.rfind("y:", 0) == 0) {
                src = ys;
                label = var.substr(2);
            }
            if (!src) throw Error("structure polynomial: unexpected variable '" + var + "'");
            term = R.mul(term, R.pow(src->entries[P.position(label)], e));
        }
        acc = R.add(acc, R.scale(term, c));
    }
    return acc;
}

void require_same_shape(const RingVector& a, const RingVector& b) {
    if (!(a.ring == b.ring) || a.poset->content_key() != b.poset->content_key())
        throw Error("vectors live over different posets or rings");
}

}  // namespace

RingVector witt_add(long long q, const RingVector& a, const RingVector& b) {
    require_same_shape(a, b);
    const StructureTable& t = structure_table(a.poset);
    RingVector out = RingVector::zero(a.poset, a.ring, VecKind::Witt);
    for (int u = 0; u < a.poset->size(); ++u)
        out.entries[u] = eval_structure_poly(t.sum[u], *a.poset, a.ring, q, &a, &b);
    return out;
}

RingVector witt_mul(long long q, const RingVector& a, const RingVector& b) {
    require_same_shape(a, b);
    const StructureTable& t = structure_table(a.poset);
    RingVector out = RingVector::zero(a.poset, a.ring, VecKind::Witt);
    for (int u = 0; u < a.poset->size(); ++u)
        out.entries[u] = eval_structure_poly(t.product[u], *a.poset, a.ring, q, &a, &b);
    return out;
}

RingVector witt_neg(long long q, const RingVector& a) {
    const StructureTable& t = structure_table(a.poset);
    RingVector out = RingVector::zero(a.poset, a.ring, VecKind::Witt);
    for (int u = 0; u < a.poset->size(); ++u)
        out.entries[u] = eval_structure_poly(t.inverse[u], *a.poset, a.ring, q, &a, nullptr);
    return out;
}

const QPoly& PCoeffTable::at(int u, int v, int w) const {
    auto it = entries.find({u, std::min(v, w), std::max(v, w)});
    static const QPoly zero;
    return it == entries.end() ? zero : it->second;
}

nlohmann::json PCoeffTable::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [key, p] : entries) {
        auto [u, v, w] = key;
        arr.push_back({{"U", poset->label(u)},
                       {"V", poset->label(v)},
                       {"W", poset->label(w)},
                       {"P", p.to_json()}});
    }
    return nlohmann::json{{"poset", poset->to_json()}, {"entries", arr}};
}

const PCoeffTable& p_coeffs(const PosetPtr& poset) {
    static std::map<std::string, std::unique_ptr<PCoeffTable>> registry;
    std::lock_guard<std::mutex> lock(registry_mutex());
    std::string key = poset->content_key();
    auto it = registry.find(key);
    if (it != registry.end()) return *it->second;

    const GroupPoset& P = *poset;
    TwistedMatrix mu = mu_q(P, false);
    auto table = std::make_unique<PCoeffTable>();
    table->poset = poset;
    for (int u = 0; u < P.size(); ++u) {
        for (int v = 0; v <= u; ++v) {
            if (!P.leq(v, u)) continue;
            for (int w = v; w <= u; ++w) {
                if (!P.leq(w, u)) continue;
                QPoly p;
                for (int z = 0; z <= u; ++z) {
                    if (!P.leq(z, u) || !P.leq(v, z) || !P.leq(w, z)) continue;
                    long long ev = P.rel_index(v, z), ew = P.rel_index(w, z);
                    p += mu_coeff(mu, u, z) *
                         QPoly::q_power(ev + ew - 2, Rat(P.marks(z, v)) * Rat(P.marks(z, w)));
                }
                if (!p.is_numerical())
                    throw IntegralityError("P^U_{V,W} is not a numerical polynomial at (" + P.label(u) +
                                           "," + P.label(v) + "," + P.label(w) + "): " + p.str());
                if (!p.is_zero()) table->entries[{u, v, w}] = p;
            }
        }
    }
    // recursion check: expanding the product of two ghost rows must reproduce
    // the weighted sum of P over intermediate levels
    for (int u = 0; u < P.size(); ++u) {
        for (int v = 0; v <= u; ++v) {
            if (!P.leq(v, u)) continue;
            for (int w = v; w <= u; ++w) {
                if (!P.leq(w, u)) continue;
                QPoly lhs;
                for (int z = 0; z <= u; ++z) {
                    if (!P.leq(z, u) || !P.leq(v, z) || !P.leq(w, z)) continue;
                    lhs += QPoly::q_power(P.rel_index(z, u) - 1, Rat(P.marks(u, z))) * table->at(z, v, w);
                }
                QPoly rhs = QPoly::q_power(P.rel_index(v, u) + P.rel_index(w, u) - 2,
                                           Rat(P.marks(u, v)) * Rat(P.marks(u, w)));
                if (lhs != rhs) throw Error("P-coefficient recursion failed");
            }
        }
    }
    return *registry.emplace(key, std::move(table)).first->second;
}

QPoly p_coeff_meetjoin(const PosetPtr& poset, int u, int v, int w) {
    if (!poset->abelian()) throw Error("p_coeff_meetjoin: abelian poset required");
    int z = poset->meet(v, w);
    if (!poset->leq(z, u)) return QPoly();
    long long s = poset->rel_index(v, z) + poset->rel_index(w, z) - 1;
    SubPoset sp = sub_poset(poset, z);
    QPoly m = orbit_sum(sp.poset, sp.from_parent[u]).eval_at(QPoly::q_power(s));
    return m.scaled(Rat(poset->index(poset->join(v, w)))).divided_by_q(1);
}

RingVector nr_mul(long long q, const RingVector& a, const RingVector& b) {
    require_same_shape(a, b);
    if (a.kind != b.kind || (a.kind != VecKind::Nr && a.kind != VecKind::NrHat))
        throw Error("nr_mul: necklace vectors of one kind expected");
    bool twisted = a.kind == VecKind::Nr;
    const GroupPoset& P = *a.poset;
    const CoeffRing& R = a.ring;
    const PCoeffTable& tab = p_coeffs(a.poset);
    RingVector out = RingVector::zero(a.poset, R, a.kind);
    for (int u = 0; u < P.size(); ++u) {
        RElem acc = R.zero();
        for (int v = 0; v <= u; ++v) {
            if (!P.leq(v, u)) continue;
            for (int w = 0; w <= u; ++w) {
                if (!P.leq(w, u)) continue;
                const QPoly& p = tab.at(u, v, w);
                if (p.is_zero()) continue;
                Rat c = p.eval(Rat(q));
                if (!is_integer(c)) throw IntegralityError("P coefficient not integral at integer q");
                if (c == 0) continue;
                RElem xa = twisted ? R.psi(P.rel_index(v, u), a.entries[v]) : a.entries[v];
                RElem yb = twisted ? R.psi(P.rel_index(w, u), b.entries[w]) : b.entries[w];
                acc = R.add(acc, R.scale(R.mul(xa, yb), c));
            }
        }
        out.entries[u] = acc;
    }
    return out;
}

}  // namespace wbr
