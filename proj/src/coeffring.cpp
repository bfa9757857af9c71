#include "wbr/coeffring.hpp"

#include <numeric>
#include <sstream>

#include "wbr/errors.hpp"

namespace wbr {

CoeffRing CoeffRing::integers_mod(long long m) {
    if (m < 2) throw ValidationError("IntegersMod: modulus must be >= 2");
    return CoeffRing(RingKind::IntegersMod, m);
}

std::string CoeffRing::name() const {
    switch (kind_) {
        case RingKind::Integers: return "Z";
        case RingKind::Rationals: return "Q";
        case RingKind::IntegersMod: return "Zmod:" + std::to_string(modulus_);
        case RingKind::PolyInt: return "Zt";
        case RingKind::PolyPower: return "Zt_power";
    }
    return "?";
}

CoeffRing CoeffRing::from_name(const std::string& name) {
    if (name == "Z") return integers();
    if (name == "Q") return rationals();
    if (name == "Zt") return poly_int();
    if (name == "Zt_power") return poly_power();
    if (name.rfind("Zmod:", 0) == 0) return integers_mod(std::stoll(name.substr(5)));
    throw ValidationError("unknown coefficient ring '" + name + "'");
}

Rat CoeffRing::reduce_scalar(const Rat& r) const {
    if (kind_ != RingKind::IntegersMod) return r;
    if (!is_integer(r)) throw NonUnitError("IntegersMod: non-integral value");
    Int m(modulus_);
    Int x = numerator(r) % m;
    if (x < 0) x += m;
    return Rat(x);
}

RElem CoeffRing::from_rat(const Rat& r) const { return RElem(reduce_scalar(r)); }

RElem CoeffRing::t() const {
    if (!is_poly()) throw Error("ring " + name() + " has no generator t");
    RElem::TPoly p;
    p[1] = 1;
    return RElem(std::move(p));
}

namespace {

RElem::TPoly as_tpoly(const RElem& a) {
    if (!a.is_scalar()) return a.tpoly();
    RElem::TPoly p;
    if (a.scalar() != 0) p[0] = a.scalar();
    return p;
}

void strip_zeros(RElem::TPoly& p) {
    for (auto it = p.begin(); it != p.end();)
        it = (it->second == 0) ? p.erase(it) : std::next(it);
}

}  // namespace

RElem CoeffRing::add(const RElem& a, const RElem& b) const {
    if (is_poly()) {
        RElem::TPoly p = as_tpoly(a);
        for (const auto& [e, c] : as_tpoly(b)) p[e] += c;
        strip_zeros(p);
        return RElem(std::move(p));
    }
    return from_rat(a.scalar() + b.scalar());
}

RElem CoeffRing::sub(const RElem& a, const RElem& b) const { return add(a, neg(b)); }

RElem CoeffRing::neg(const RElem& a) const {
    if (is_poly()) {
        RElem::TPoly p = as_tpoly(a);
        for (auto& [e, c] : p) c = -c;
        return RElem(std::move(p));
    }
    return from_rat(-a.scalar());
}

RElem CoeffRing::mul(const RElem& a, const RElem& b) const {
    if (is_poly()) {
        RElem::TPoly out;
        for (const auto& [e1, c1] : as_tpoly(a))
            for (const auto& [e2, c2] : as_tpoly(b)) out[e1 + e2] += c1 * c2;
        strip_zeros(out);
        return RElem(std::move(out));
    }
    return from_rat(a.scalar() * b.scalar());
}

RElem CoeffRing::pow(const RElem& a, long long e) const {
    if (e < 0) throw Error("RElem pow: negative exponent");
    RElem out = one();
    RElem b = a;
    while (e > 0) {
        if (e & 1) out = mul(out, b);
        b = mul(b, b);
        e >>= 1;
    }
    return out;
}

RElem CoeffRing::psi(long long n, const RElem& a) const {
    if (n < 1) throw Error("psi: exponent must be positive");
    if (kind_ != RingKind::PolyPower || n == 1 || a.is_scalar()) return a;
    RElem::TPoly out;
    for (const auto& [e, c] : a.tpoly()) out[e * n] = c;
    return RElem(std::move(out));
}

RElem CoeffRing::scale(const RElem& a, const Rat& c) const {
    if (kind_ == RingKind::IntegersMod) {
        if (!is_integer(c)) throw NonUnitError("IntegersMod: rational scalar");
        return from_rat(a.scalar() * c);
    }
    if (is_poly()) {
        RElem::TPoly p = as_tpoly(a);
        for (auto& [e, v] : p) v *= c;
        strip_zeros(p);
        return RElem(std::move(p));
    }
    return RElem(a.scalar() * c);
}

RElem CoeffRing::divide_exact(const RElem& a, long long d) const {
    if (d == 0) throw Error("division by zero");
    switch (kind_) {
        case RingKind::Rationals:
            return RElem(a.scalar() / d);
        case RingKind::Integers: {
            Rat v = a.scalar() / d;
            if (!is_integer(v))
                throw NonUnitError("inexact division by " + std::to_string(d) +
                                   ": the coefficient ring has {" + std::to_string(d) + "}-torsion obstruction"
                                   " (A has no (N_G(U):U)-torsion hypothesis violated)");
            return RElem(v);
        }
        case RingKind::IntegersMod: {
            long long m = modulus_;
            long long dd = ((d % m) + m) % m;
            if (std::gcd(dd, m) != 1)
                throw NonUnitError(std::to_string(d) + " is not a unit mod " + std::to_string(m) +
                                   " (A has no (N_G(U):U)-torsion hypothesis violated)");
            // modular inverse via the extended Euclid relation d*inv = 1 (mod m)
            long long t0 = 0, t1 = 1, r0 = m, r1 = dd;
            while (r1 != 0) {
                long long qq = r0 / r1;
                std::tie(t0, t1) = std::make_pair(t1, t0 - qq * t1);
                std::tie(r0, r1) = std::make_pair(r1, r0 - qq * r1);
            }
            long long dinv = ((t0 % m) + m) % m;
            return from_rat(a.scalar() * Rat(dinv));
        }
        case RingKind::PolyInt:
        case RingKind::PolyPower: {
            RElem::TPoly p = as_tpoly(a);
            for (auto& [ex, c] : p) {
                c /= d;
                if (!is_integer(c))
                    throw NonUnitError("inexact polynomial division by " + std::to_string(d));
            }
            return RElem(std::move(p));
        }
    }
    throw Error("unreachable");
}

bool CoeffRing::eq(const RElem& a, const RElem& b) const {
    if (is_poly()) return as_tpoly(a) == as_tpoly(b);
    return a.scalar() == b.scalar();
}

void CoeffRing::check(const RElem& a, const std::string& where) const {
    if (kind_ == RingKind::Integers && !is_integer(a.scalar()))
        throw NonUnitError(where + ": value " + a.scalar().str() + " is not an integer");
    if (is_poly()) {
        for (const auto& [e, c] : as_tpoly(a))
            if (!is_integer(c)) throw NonUnitError(where + ": polynomial coefficient is not an integer");
    }
}

nlohmann::json CoeffRing::to_json(const RElem& a) const {
    if (is_poly()) {
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& [e, c] : as_tpoly(a)) {
            nlohmann::json mono = nlohmann::json::object();
            if (e != 0) mono["t"] = e;
            terms.push_back({{"monomial", mono}, {"coeff", rat_to_json(c)}});
        }
        return nlohmann::json{{"terms", terms}};
    }
    if (kind_ == RingKind::Rationals) return rat_to_json(a.scalar());
    return numerator(a.scalar()).str();
}

RElem CoeffRing::from_json(const nlohmann::json& j) const {
    if (is_poly()) {
        RElem::TPoly p;
        for (const auto& t : j.at("terms")) {
            long long e = 0;
            for (auto it = t.at("monomial").begin(); it != t.at("monomial").end(); ++it) {
                if (it.key() != "t") throw ValidationError("ring element: unexpected variable");
                e = it.value().get<long long>();
            }
            p[e] += rat_from_json(t.at("coeff"));
        }
        strip_zeros(p);
        return RElem(std::move(p));
    }
    return from_rat(rat_from_json(j));
}

std::string CoeffRing::str(const RElem& a) const {
    if (!is_poly()) return a.scalar().str();
    const auto p = as_tpoly(a);
    if (p.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        if (!first) os << " + ";
        first = false;
        if (it->first == 0 || it->second != 1) os << it->second.str();
        if (it->first > 0) {
            if (it->second != 1) os << "*";
            os << "t";
            if (it->first > 1) os << "^" << it->first;
        }
    }
    return os.str();
}

}  // namespace wbr
