#include "wbr/classify.hpp"

#include "wbr/errors.hpp"

namespace wbr {

namespace {

// The abelian ghost in the X-variables at an integer deformation parameter.
std::vector<MultiPoly> ghost_in_vars(const GroupPoset& P, long long q,
                                     const std::vector<MultiPoly>& vals) {
    std::vector<MultiPoly> out(P.size());
    for (int u = 0; u < P.size(); ++u) {
        for (int w = 0; w <= u; ++w) {
            if (!P.leq(w, u)) continue;
            long long k = P.rel_index(w, u);
            out[u] += vals[w].pow(k).scaled(Rat(P.marks(u, w)) * rat_pow(Rat(q), k - 1));
        }
    }
    return out;
}

}  // namespace

TransferSolution solve_transfer(const PosetPtr& poset, long long q, long long r) {
    if (!poset->abelian()) throw Error("solve_transfer: abelian poset required");
    const GroupPoset& P = *poset;
    TransferSolution sol;
    sol.poset = poset;
    sol.q = q;
    sol.r = r;
    sol.y.resize(P.size());
    for (int u = 0; u < P.size(); ++u) {
        MultiPoly yu = MultiPoly::variable("X:" + P.label(u));
        for (int v = 0; v < u; ++v) {
            if (!P.leq(v, u)) continue;
            long long k = P.rel_index(v, u);
            MultiPoly xv = MultiPoly::variable("X:" + P.label(v));
            MultiPoly diff = xv.pow(k).scaled(rat_pow(Rat(q), k - 1)) -
                             sol.y[v].pow(k).scaled(rat_pow(Rat(r), k - 1));
            yu += diff.scaled(Rat(1) / k);
        }
        sol.y[u] = yu;
        for (const auto& [m, c] : yu.terms())
            for (const auto& [e, coef] : c.coeffs())
                for (const Int& p : prime_divisors(denominator(coef))) sol.denominator_primes.insert(p);
    }
    // uniqueness/consistency: substituting Y back must reproduce the q-ghost
    std::vector<MultiPoly> xs;
    for (int u = 0; u < P.size(); ++u) xs.push_back(MultiPoly::variable("X:" + P.label(u)));
    if (ghost_in_vars(P, q, xs) != ghost_in_vars(P, r, sol.y))
        throw Error("solve_transfer: re-substitution check failed");
    return sol;
}

nlohmann::json TransferSolution::to_json() const {
    nlohmann::json transfer = nlohmann::json::object();
    for (int u = 0; u < poset->size(); ++u) transfer[poset->label(u)] = y[u].to_json();
    nlohmann::json primes = nlohmann::json::array();
    for (const Int& p : denominator_primes) primes.push_back(p.str());
    return nlohmann::json{{"poset", poset->to_json()}, {"q", q},      {"r", r},
                          {"transfer", transfer},      {"denominator_primes", primes}};
}

std::set<Int> prime_support_within(long long n, const std::set<Int>& universe) {
    if (n == 0) return universe;  // every prime divides 0
    std::set<Int> out;
    for (const Int& p : prime_divisors(Int(n)))
        if (universe.count(p)) out.insert(p);
    return out;
}

IsoDecision strict_iso_over_Z(const PosetPtr& poset, long long q, long long r) {
    if (!poset->abelian()) throw Error("strict_iso_over_Z: abelian poset required");
    std::set<Int> dg = poset_prime_support(*poset);
    std::set<Int> dq = prime_support_within(q, dg);
    std::set<Int> dr = prime_support_within(r, dg);
    IsoDecision out;
    for (const Int& p : dq)
        if (!dr.count(p)) out.obstruction_primes.insert(p);
    for (const Int& p : dr)
        if (!dq.count(p)) out.obstruction_primes.insert(p);
    out.exists = out.obstruction_primes.empty();
    // the solver's observed denominator support never escapes the prediction
    TransferSolution sol = solve_transfer(poset, q, r);
    for (const Int& p : sol.denominator_primes)
        if (!out.obstruction_primes.count(p))
            throw Error("strict_iso_over_Z: denominator prime outside the predicted obstruction set");
    return out;
}

nlohmann::json IsoDecision::to_json() const {
    nlohmann::json primes = nlohmann::json::array();
    for (const Int& p : obstruction_primes) primes.push_back(p.str());
    return nlohmann::json{{"exists", exists}, {"obstruction_primes", primes}};
}

}  // namespace wbr
