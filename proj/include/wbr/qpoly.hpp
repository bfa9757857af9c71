#pragma once

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

#include "wbr/rational.hpp"

namespace wbr {

// Exact univariate polynomial in q over the rationals.
//
// No zero coefficients are ever stored; the zero polynomial has an empty map.
// A term with exponent 0 is the constant 1, so evaluation never forms 0^0:
// the q^0 term contributes its coefficient at every point, including q = 0.
class QPoly {
public:
    QPoly() = default;
    explicit QPoly(const Rat& c) { set_coeff(0, c); }
    explicit QPoly(long long c) { set_coeff(0, Rat(c)); }

    static QPoly q_power(long long e, const Rat& c = Rat(1));

    const std::map<long long, Rat>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    long long degree() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }
    Rat coeff(long long e) const;
    Rat constant_term() const { return coeff(0); }

    QPoly operator+(const QPoly& o) const;
    QPoly operator-(const QPoly& o) const;
    QPoly operator-() const;
    QPoly operator*(const QPoly& o) const;
    QPoly& operator+=(const QPoly& o) { return *this = *this + o; }
    QPoly& operator-=(const QPoly& o) { return *this = *this - o; }
    QPoly& operator*=(const QPoly& o) { return *this = *this * o; }
    bool operator==(const QPoly& o) const { return coeffs_ == o.coeffs_; }
    bool operator!=(const QPoly& o) const { return !(*this == o); }

    QPoly scaled(const Rat& c) const;
    QPoly pow(long long e) const;
    // Exact division by q^k; throws unless every exponent is >= k.
    QPoly divided_by_q(long long k = 1) const;

    Rat eval(const Rat& v) const;
    // Substitute q -> inner (polynomial composition).
    QPoly compose(const QPoly& inner) const;

    // Coefficients c_k with p(q) = sum_k c_k * C(q,k), computed by forward
    // differences; length is degree+1 (the zero polynomial yields [0]).
    std::vector<Rat> binomial_basis() const;
    // True iff the polynomial takes an integer value at every integer,
    // equivalently all binomial-basis coefficients are integers.
    bool is_numerical() const;
    bool integer_coeffs() const;

    std::string str(const std::string& var = "q") const;
    nlohmann::json to_json() const;
    static QPoly from_json(const nlohmann::json& j);

private:
    void set_coeff(long long e, const Rat& c);
    std::map<long long, Rat> coeffs_;
};

nlohmann::json rat_to_json(const Rat& r);
Rat rat_from_json(const nlohmann::json& j);

}  // namespace wbr
