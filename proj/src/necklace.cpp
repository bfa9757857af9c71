#include "wbr/necklace.hpp"

#include "wbr/errors.hpp"

namespace wbr {

MultiPoly OrbitSumPoly::univariate() const {
    MultiPoly out;
    for (const Term& t : terms_) out += MultiPoly::variable("x", t.e).scaled(t.coeff);
    return out;
}

MultiPoly OrbitSumPoly::multivariate(int m) const {
    if (m < 1) throw Error("orbit sum: alphabet must be non-empty");
    MultiPoly out;
    for (const Term& t : terms_) {
        MultiPoly ps;
        for (int i = 1; i <= m; ++i) ps += MultiPoly::variable("x" + std::to_string(i), t.k);
        out += ps.pow(t.e).scaled(t.coeff);
    }
    return out;
}

QPoly OrbitSumPoly::eval_at(const QPoly& x_value) const {
    QPoly out;
    for (const Term& t : terms_) out += x_value.pow(t.e) * t.coeff;
    return out;
}

OrbitSumPoly orbit_sum(const PosetPtr& poset, int v) {
    if (v < 0 || v >= poset->size()) throw ValidationError("orbit_sum: unknown poset element");
    TwistedMatrix mu = mu_q(*poset, false);
    std::vector<OrbitSumPoly::Term> terms;
    for (int w = 0; w <= v; ++w) {
        if (!poset->leq(w, v)) continue;
        QPoly c = mu_coeff(mu, v, w) * QPoly::q_power(poset->index(w) - 1);
        if (c.is_zero()) continue;
        terms.push_back({c, poset->rel_index(w, v), poset->index(w)});
    }
    return OrbitSumPoly(v, std::move(terms));
}

MultiPoly mq_cyclic(long long n) {
    std::set<long long> ds;
    for (long long d = 1; d <= n; ++d)
        if (n % d == 0) ds.insert(d);
    auto poset = GroupPoset::cyclic(ds);
    return orbit_sum(poset, poset->position(std::to_string(n))).univariate();
}

QPoly mq_cyclic_at(long long n, const QPoly& x_value) {
    std::set<long long> ds;
    for (long long d = 1; d <= n; ++d)
        if (n % d == 0) ds.insert(d);
    auto poset = GroupPoset::cyclic(ds);
    return orbit_sum(poset, poset->position(std::to_string(n))).eval_at(x_value);
}

long long qword_aperiodic_count(long long q, long long m, long long n) {
    if (q < 1 || m < 1 || n < 1) throw ValidationError("qword count: q, m, n must be >= 1");
    double steps = 1;
    for (long long i = 0; i < n; ++i) steps *= (double)(q * m);
    if (steps > 1e8) throw GuardError("qword count: enumeration bound exceeded");

    // One representative per q-word: the shift with first residue 0.
    std::vector<long long> res(n, 0), sym(n, 0);
    long long count = 0;
    while (true) {
        bool aperiodic = true;
        for (long long k = 1; k < n && aperiodic; ++k) {
            if (n % k != 0) continue;
            bool period = true;
            for (long long j = 1; j * k < n && period; ++j) {
                long long shift = (res[j * k] - res[0] % q + q) % q;
                for (long long i = 0; i < k; ++i) {
                    if (sym[j * k + i] != sym[i] || (res[i] + shift) % q != res[j * k + i]) {
                        period = false;
                        break;
                    }
                }
            }
            if (period) aperiodic = false;
        }
        if (aperiodic) ++count;

        // odometer: position 0 has residue pinned to 0
        long long pos = n - 1;
        while (pos >= 0) {
            if (pos == 0) {
                if (++sym[0] < m) break;
                sym[0] = 0;
                pos = -1;
            } else {
                if (++sym[pos] < m) break;
                sym[pos] = 0;
                if (++res[pos] < q) break;
                res[pos] = 0;
                --pos;
            }
        }
        if (pos < 0) break;
    }
    // Rotation acts freely on aperiodic q-words.
    if (count % n != 0) throw Error("qword count: rotation orbits did not partition evenly");
    return count / n;
}

bool verify_first_main_formula(const PosetPtr& poset, int v, int m) {
    MultiPoly ps;
    for (int i = 1; i <= m; ++i) ps += MultiPoly::variable("x" + std::to_string(i));
    MultiPoly lhs = ps.pow(poset->index(v)).scaled(QPoly::q_power(poset->index(v) - 1));
    MultiPoly rhs;
    for (int w = 0; w <= v; ++w) {
        if (!poset->leq(w, v)) continue;
        long long k = poset->rel_index(w, v);
        QPoly c = QPoly::q_power(k - 1, Rat(poset->marks(v, w)));
        rhs += orbit_sum(poset, w).multivariate(m).adams(k).scaled(c);
    }
    return lhs == rhs;
}

}  // namespace wbr
