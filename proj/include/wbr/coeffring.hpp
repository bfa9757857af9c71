#pragma once

#include <json.hpp>

#include <map>
#include <string>
#include <variant>

#include "wbr/qpoly.hpp"

namespace wbr {

// Coefficient rings bundled with Adams operations Psi^n (ring endomorphisms
// with Psi^1 = id and Psi^m Psi^n = Psi^{mn}).
//
//   Integers, Rationals, IntegersMod(m), PolyInt  --  binomial: Psi^n = id
//   PolyPower  --  same carrier as PolyInt (Z[t]) but Psi^n: f(t) -> f(t^n)
//
// Scalar and polynomial elements are carried over the rationals internally;
// rings with integrality constraints (Z, Z[t]) enforce them via check().
enum class RingKind { Integers, Rationals, IntegersMod, PolyInt, PolyPower };

class RElem {
public:
    using TPoly = std::map<long long, Rat>;  // polynomial in t

    RElem() : v_(Rat(0)) {}
    explicit RElem(Rat r) : v_(std::move(r)) {}
    explicit RElem(TPoly p) : v_(std::move(p)) {}

    bool is_scalar() const { return std::holds_alternative<Rat>(v_); }
    const Rat& scalar() const { return std::get<Rat>(v_); }
    const TPoly& tpoly() const { return std::get<TPoly>(v_); }

    std::variant<Rat, TPoly> v_;
};

class CoeffRing {
public:
    static CoeffRing integers() { return CoeffRing(RingKind::Integers, 0); }
    static CoeffRing rationals() { return CoeffRing(RingKind::Rationals, 0); }
    static CoeffRing integers_mod(long long m);
    static CoeffRing poly_int() { return CoeffRing(RingKind::PolyInt, 0); }
    static CoeffRing poly_power() { return CoeffRing(RingKind::PolyPower, 0); }

    RingKind kind() const { return kind_; }
    long long modulus() const { return modulus_; }
    bool binomial() const { return kind_ != RingKind::PolyPower; }
    bool is_poly() const { return kind_ == RingKind::PolyInt || kind_ == RingKind::PolyPower; }
    bool rational_division() const { return kind_ == RingKind::Rationals; }

    std::string name() const;
    static CoeffRing from_name(const std::string& name);
    bool operator==(const CoeffRing& o) const { return kind_ == o.kind_ && modulus_ == o.modulus_; }

    RElem zero() const { return from_rat(Rat(0)); }
    RElem one() const { return from_rat(Rat(1)); }
    RElem from_rat(const Rat& r) const;
    RElem t() const;  // the generator of the polynomial carriers

    RElem add(const RElem& a, const RElem& b) const;
    RElem sub(const RElem& a, const RElem& b) const;
    RElem mul(const RElem& a, const RElem& b) const;
    RElem neg(const RElem& a) const;
    RElem pow(const RElem& a, long long e) const;
    RElem psi(long long n, const RElem& a) const;
    // Multiply by an exact rational scalar (used by ghost/Teichmueller sums,
    // which pass through Q before integrality is re-checked).
    RElem scale(const RElem& a, const Rat& c) const;
    // Division by a positive integer. Exactness is mandatory outside of
    // Rationals; IntegersMod requires the divisor to be a unit.
    RElem divide_exact(const RElem& a, long long d) const;
    bool eq(const RElem& a, const RElem& b) const;
    bool is_zero(const RElem& a) const { return eq(a, zero()); }

    // Enforce membership (Z: integer; Z[t]: integer coefficients); throws
    // NonUnitError naming the torsion hypothesis otherwise.
    void check(const RElem& a, const std::string& where) const;

    nlohmann::json to_json(const RElem& a) const;
    RElem from_json(const nlohmann::json& j) const;
    std::string str(const RElem& a) const;

private:
    CoeffRing(RingKind k, long long m) : kind_(k), modulus_(m) {}
    Rat reduce_scalar(const Rat& r) const;
    RingKind kind_;
    long long modulus_;
};

}  // namespace wbr
