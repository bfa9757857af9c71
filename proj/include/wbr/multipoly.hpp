#pragma once

#include <json.hpp>

#include <map>
#include <set>
#include <string>

#include "wbr/qpoly.hpp"

namespace wbr {

// Monomial in named vector variables; exponents are strictly positive,
// the empty map is the constant monomial.
using Monomial = std::map<std::string, long long>;

long long monomial_degree(const Monomial& m);

// Graded lexicographic order on monomials (total degree first, then the
// variable-name/exponent sequence). Canonical printing order of all
// polynomial output goes through this comparator.
struct MonomialOrder {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

// Sparse multivariate polynomial over QPoly coefficients: an element of
// Q[q][x_1, x_2, ...] with opaque string variable names.
class MultiPoly {
public:
    MultiPoly() = default;
    explicit MultiPoly(const QPoly& c) { add_term({}, c); }
    explicit MultiPoly(const Rat& c) { add_term({}, QPoly(c)); }
    explicit MultiPoly(long long c) { add_term({}, QPoly(c)); }

    static MultiPoly variable(const std::string& name, long long e = 1);
    static MultiPoly term(const Monomial& m, const QPoly& c);

    const std::map<Monomial, QPoly, MonomialOrder>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    QPoly coeff(const Monomial& m) const;
    QPoly constant_term() const { return coeff({}); }
    long long total_degree() const;
    std::set<std::string> variables() const;

    MultiPoly operator+(const MultiPoly& o) const;
    MultiPoly operator-(const MultiPoly& o) const;
    MultiPoly operator-() const;
    MultiPoly operator*(const MultiPoly& o) const;
    MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
    MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }
    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }
    bool operator==(const MultiPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    MultiPoly scaled(const QPoly& c) const;
    MultiPoly scaled(const Rat& c) const { return scaled(QPoly(c)); }
    MultiPoly pow(long long e) const;

    // Adams operation: every vector variable x is sent to x^k (q is fixed).
    MultiPoly adams(long long k) const;
    // Substitute one variable by a polynomial.
    MultiPoly subst(const std::string& var, const MultiPoly& value) const;
    // Multiply the coefficient of each term by q^(deg-shift), deg = monomial
    // degree. Requires deg >= shift on every term.
    MultiPoly q_graded_scale(long long shift) const;

    // Full evaluation; assignment must cover every variable that occurs.
    Rat eval(const Rat& q, const std::map<std::string, Rat>& assign) const;
    // Evaluate the vector variables, leave q symbolic.
    QPoly eval_q(const std::map<std::string, Rat>& assign) const;
    // Substitute an integer (or rational) q into every coefficient.
    MultiPoly at_q(const Rat& q) const;

    // Joint integer-valuedness in q and all vector variables: expand in the
    // mixed binomial basis C(q,i) * prod C(x_v, j_v) and test integrality of
    // every coefficient.
    bool is_numerical_multi() const;

    std::string str() const;
    nlohmann::json to_json() const;
    static MultiPoly from_json(const nlohmann::json& j);

private:
    void add_term(const Monomial& m, const QPoly& c);
    std::map<Monomial, QPoly, MonomialOrder> terms_;
};

}  // namespace wbr
