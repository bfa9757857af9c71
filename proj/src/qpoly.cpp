#include "wbr/qpoly.hpp"

#include <sstream>

#include "wbr/errors.hpp"

namespace wbr {

void QPoly::set_coeff(long long e, const Rat& c) {
    if (e < 0) throw ValidationError("QPoly: negative exponent");
    if (c == 0)
        coeffs_.erase(e);
    else
        coeffs_[e] = c;
}

QPoly QPoly::q_power(long long e, const Rat& c) {
    QPoly p;
    p.set_coeff(e, c);
    return p;
}

Rat QPoly::coeff(long long e) const {
    auto it = coeffs_.find(e);
    return it == coeffs_.end() ? Rat(0) : it->second;
}

QPoly QPoly::operator+(const QPoly& o) const {
    QPoly out = *this;
    for (const auto& [e, c] : o.coeffs_) out.set_coeff(e, out.coeff(e) + c);
    return out;
}

QPoly QPoly::operator-(const QPoly& o) const {
    QPoly out = *this;
    for (const auto& [e, c] : o.coeffs_) out.set_coeff(e, out.coeff(e) - c);
    return out;
}

QPoly QPoly::operator-() const {
    QPoly out;
    for (const auto& [e, c] : coeffs_) out.coeffs_[e] = -c;
    return out;
}

QPoly QPoly::operator*(const QPoly& o) const {
    QPoly out;
    for (const auto& [e1, c1] : coeffs_)
        for (const auto& [e2, c2] : o.coeffs_) out.set_coeff(e1 + e2, out.coeff(e1 + e2) + c1 * c2);
    return out;
}

QPoly QPoly::scaled(const Rat& c) const {
    QPoly out;
    if (c == 0) return out;
    for (const auto& [e, v] : coeffs_) out.coeffs_[e] = v * c;
    return out;
}

QPoly QPoly::pow(long long e) const {
    if (e < 0) throw Error("QPoly::pow: negative exponent");
    QPoly out(Rat(1));
    QPoly b = *this;
    while (e > 0) {
        if (e & 1) out *= b;
        b *= b;
        e >>= 1;
    }
    return out;
}

QPoly QPoly::divided_by_q(long long k) const {
    QPoly out;
    for (const auto& [e, c] : coeffs_) {
        if (e < k) throw IntegralityError("QPoly: division by q^" + std::to_string(k) + " is inexact");
        out.coeffs_[e - k] = c;
    }
    return out;
}

Rat QPoly::eval(const Rat& v) const {
    Rat out = 0;
    for (const auto& [e, c] : coeffs_) out += (e == 0) ? c : c * rat_pow(v, e);
    return out;
}

QPoly QPoly::compose(const QPoly& inner) const {
    QPoly out;
    for (const auto& [e, c] : coeffs_) out += inner.pow(e).scaled(c);
    return out;
}

std::vector<Rat> QPoly::binomial_basis() const {
    // c_k = (Delta^k p)(0) with (Delta p)(q) = p(q+1) - p(q).
    std::vector<Rat> out;
    QPoly p = *this;
    const QPoly q_plus_1 = QPoly::q_power(1) + QPoly(1);
    long long len = degree() + 1;
    for (long long k = 0; k < len; ++k) {
        out.push_back(p.constant_term());
        p = p.compose(q_plus_1) - p;
    }
    return out;
}

bool QPoly::is_numerical() const {
    for (const Rat& c : binomial_basis())
        if (!is_integer(c)) return false;
    return true;
}

bool QPoly::integer_coeffs() const {
    for (const auto& [e, c] : coeffs_)
        if (!is_integer(c)) return false;
    return true;
}

std::string QPoly::str(const std::string& var) const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        Rat c = it->second;
        if (!first)
            os << (c < 0 ? " - " : " + ");
        else if (c < 0)
            os << "-";
        first = false;
        Rat a = c < 0 ? Rat(-c) : c;
        long long e = it->first;
        if (e == 0) {
            os << a.str();
        } else {
            if (a != 1) os << a.str() << "*";
            os << var;
            if (e > 1) os << "^" << e;
        }
    }
    return os.str();
}

nlohmann::json rat_to_json(const Rat& r) {
    return nlohmann::json{{"num", numerator(r).str()}, {"den", denominator(r).str()}};
}

Rat rat_from_json(const nlohmann::json& j) {
    if (j.is_string()) return Rat(Int(j.get<std::string>()));
    if (j.is_number_integer()) return Rat(j.get<long long>());
    if (!j.is_object() || !j.contains("num"))
        throw ValidationError("rational: expected {\"num\",\"den\"} or a decimal string");
    Int n = int_from_str(j.at("num").get<std::string>());
    Int d = j.contains("den") ? int_from_str(j.at("den").get<std::string>()) : Int(1);
    if (d == 0) throw ValidationError("rational: zero denominator");
    return Rat(n) / Rat(d);
}

nlohmann::json QPoly::to_json() const {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [e, c] : coeffs_) {
        nlohmann::json mono = nlohmann::json::object();
        if (e != 0) mono["q"] = e;
        terms.push_back({{"monomial", mono}, {"coeff", rat_to_json(c)}});
    }
    return nlohmann::json{{"terms", terms}};
}

QPoly QPoly::from_json(const nlohmann::json& j) {
    QPoly out;
    for (const auto& t : j.at("terms")) {
        long long e = 0;
        const auto& mono = t.at("monomial");
        for (auto it = mono.begin(); it != mono.end(); ++it) {
            if (it.key() != "q") throw ValidationError("QPoly: unexpected variable '" + it.key() + "'");
            e = it.value().get<long long>();
        }
        out.set_coeff(e, out.coeff(e) + rat_from_json(t.at("coeff")));
    }
    return out;
}

}  // namespace wbr
