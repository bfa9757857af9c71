#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <set>
#include <string>
#include <vector>

namespace wbr {

// All arithmetic in this library is exact; there is no floating point anywhere.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int numerator(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int denominator(const Rat& r) { return boost::multiprecision::denominator(r); }
inline bool is_integer(const Rat& r) { return denominator(r) == 1; }

Int int_pow(const Int& base, long long exp);
Rat rat_pow(const Rat& base, long long exp);

Int binomial(long long n, long long k);
Int factorial(long long n);
// Stirling numbers of the second kind; stirling2(e,j)*j! is the coefficient of
// C(x,j) in the binomial-basis expansion of x^e.
Int stirling2(long long e, long long j);

// Distinct prime divisors of |n| (empty for n in {-1,0,1}).
std::set<Int> prime_divisors(Int n);

// Classical Moebius function mu(n), n >= 1.
int moebius(long long n);

std::string int_str(const Int& v);
Int int_from_str(const std::string& s);

}  // namespace wbr
