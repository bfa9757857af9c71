#include "wbr/multipoly.hpp"

#include <sstream>

#include "wbr/errors.hpp"

namespace wbr {

long long monomial_degree(const Monomial& m) {
    long long d = 0;
    for (const auto& [v, e] : m) d += e;
    return d;
}

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const {
    long long da = monomial_degree(a), db = monomial_degree(b);
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

void MultiPoly::add_term(const Monomial& m, const QPoly& c) {
    for (const auto& [v, e] : m)
        if (e <= 0) throw ValidationError("MultiPoly: non-positive exponent for '" + v + "'");
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        if (!c.is_zero()) terms_.emplace(m, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

MultiPoly MultiPoly::variable(const std::string& name, long long e) {
    MultiPoly p;
    if (e == 0) return MultiPoly(QPoly(Rat(1)));
    p.add_term({{name, e}}, QPoly(Rat(1)));
    return p;
}

MultiPoly MultiPoly::term(const Monomial& m, const QPoly& c) {
    MultiPoly p;
    p.add_term(m, c);
    return p;
}

QPoly MultiPoly::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? QPoly() : it->second;
}

long long MultiPoly::total_degree() const {
    long long d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, monomial_degree(m));
    return d;
}

std::set<std::string> MultiPoly::variables() const {
    std::set<std::string> out;
    for (const auto& [m, c] : terms_)
        for (const auto& [v, e] : m) out.insert(v);
    return out;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
    MultiPoly out = *this;
    for (const auto& [m, c] : o.terms_) out.add_term(m, c);
    return out;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
    MultiPoly out = *this;
    for (const auto& [m, c] : o.terms_) out.add_term(m, -c);
    return out;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly out;
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    MultiPoly out;
    for (const auto& [m1, c1] : terms_) {
        for (const auto& [m2, c2] : o.terms_) {
            Monomial m = m1;
            for (const auto& [v, e] : m2) m[v] += e;
            out.add_term(m, c1 * c2);
        }
    }
    return out;
}

MultiPoly MultiPoly::scaled(const QPoly& c) const {
    MultiPoly out;
    if (c.is_zero()) return out;
    for (const auto& [m, v] : terms_) out.add_term(m, v * c);
    return out;
}

MultiPoly MultiPoly::pow(long long e) const {
    if (e < 0) throw Error("MultiPoly::pow: negative exponent");
    MultiPoly out(QPoly(Rat(1)));
    MultiPoly b = *this;
    while (e > 0) {
        if (e & 1) out *= b;
        b *= b;
        e >>= 1;
    }
    return out;
}

MultiPoly MultiPoly::adams(long long k) const {
    if (k < 1) throw Error("MultiPoly::adams: exponent must be positive");
    MultiPoly out;
    for (const auto& [m, c] : terms_) {
        Monomial mk;
        for (const auto& [v, e] : m) mk[v] = e * k;
        out.add_term(mk, c);
    }
    return out;
}

MultiPoly MultiPoly::subst(const std::string& var, const MultiPoly& value) const {
    MultiPoly out;
    for (const auto& [m, c] : terms_) {
        auto it = m.find(var);
        if (it == m.end()) {
            out.add_term(m, c);
            continue;
        }
        Monomial rest = m;
        long long e = it->second;
        rest.erase(var);
        out += MultiPoly::term(rest, c) * value.pow(e);
    }
    return out;
}

MultiPoly MultiPoly::q_graded_scale(long long shift) const {
    MultiPoly out;
    for (const auto& [m, c] : terms_) {
        long long d = monomial_degree(m);
        if (d < shift) throw IntegralityError("q_graded_scale: term of degree below shift");
        out.add_term(m, c * QPoly::q_power(d - shift));
    }
    return out;
}

Rat MultiPoly::eval(const Rat& q, const std::map<std::string, Rat>& assign) const {
    Rat out = 0;
    for (const auto& [m, c] : terms_) {
        Rat v = c.eval(q);
        for (const auto& [var, e] : m) {
            auto it = assign.find(var);
            if (it == assign.end()) throw Error("MultiPoly::eval: unassigned variable '" + var + "'");
            v *= rat_pow(it->second, e);
        }
        out += v;
    }
    return out;
}

QPoly MultiPoly::eval_q(const std::map<std::string, Rat>& assign) const {
    QPoly out;
    for (const auto& [m, c] : terms_) {
        Rat v = 1;
        for (const auto& [var, e] : m) {
            auto it = assign.find(var);
            if (it == assign.end()) throw Error("MultiPoly::eval_q: unassigned variable '" + var + "'");
            v *= rat_pow(it->second, e);
        }
        out += c.scaled(v);
    }
    return out;
}

MultiPoly MultiPoly::at_q(const Rat& q) const {
    MultiPoly out;
    for (const auto& [m, c] : terms_) out.add_term(m, QPoly(c.eval(q)));
    return out;
}

bool MultiPoly::is_numerical_multi() const {
    // Iterated binomial expansion: x^e = sum_j S2(e,j) j! C(x,j), applied per
    // variable, with the q-part expanded by QPoly::binomial_basis.
    std::map<std::pair<Monomial, long long>, Rat> basis;
    for (const auto& [m, c] : terms_) {
        std::vector<std::pair<Monomial, Rat>> partial = {{Monomial{}, Rat(1)}};
        for (const auto& [var, e] : m) {
            std::vector<std::pair<Monomial, Rat>> next;
            for (long long j = 1; j <= e; ++j) {
                Rat w(stirling2(e, j) * factorial(j));
                for (const auto& [pm, pc] : partial) {
                    Monomial nm = pm;
                    nm[var] = j;
                    next.emplace_back(nm, pc * w);
                }
            }
            partial = std::move(next);
        }
        std::vector<Rat> qb = c.binomial_basis();
        for (const auto& [pm, pc] : partial)
            for (size_t k = 0; k < qb.size(); ++k)
                if (qb[k] != 0) basis[{pm, (long long)k}] += pc * qb[k];
    }
    for (const auto& [key, v] : basis)
        if (!is_integer(v)) return false;
    return true;
}

std::string MultiPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        QPoly c = it->second;
        bool simple = c.coeffs().size() == 1;
        bool neg = simple && c.coeffs().begin()->second < 0;
        if (!first) {
            os << (neg ? " - " : " + ");
            if (neg) c = -c;
        }
        first = false;
        if (it->first.empty()) {
            os << (simple ? c.str() : "(" + c.str() + ")");
            continue;
        }
        if (c != QPoly(Rat(1))) os << (simple ? c.str() + "*" : "(" + c.str() + ")*");
        bool fv = true;
        for (const auto& [v, e] : it->first) {
            if (!fv) os << "*";
            fv = false;
            os << v;
            if (e > 1) os << "^" << e;
        }
    }
    return os.str();
}

nlohmann::json MultiPoly::to_json() const {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [m, c] : terms_) {
        nlohmann::json mono = nlohmann::json::object();
        for (const auto& [v, e] : m) mono[v] = e;
        terms.push_back({{"monomial", mono}, {"coeff", c.to_json()}});
    }
    return nlohmann::json{{"terms", terms}};
}

MultiPoly MultiPoly::from_json(const nlohmann::json& j) {
    MultiPoly out;
    for (const auto& t : j.at("terms")) {
        Monomial m;
        for (auto it = t.at("monomial").begin(); it != t.at("monomial").end(); ++it)
            m[it.key()] = it.value().get<long long>();
        const auto& cj = t.at("coeff");
        QPoly c = cj.contains("terms") ? QPoly::from_json(cj) : QPoly(rat_from_json(cj));
        out.add_term(m, c);
    }
    return out;
}

}  // namespace wbr
