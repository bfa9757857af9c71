#include "wbr/rational.hpp"

#include <map>

#include "wbr/errors.hpp"

namespace wbr {

Int int_pow(const Int& base, long long exp) {
    if (exp < 0) throw Error("int_pow: negative exponent");
    Int result = 1;
    Int b = base;
    long long e = exp;
    while (e > 0) {
        if (e & 1) result *= b;
        b *= b;
        e >>= 1;
    }
    return result;
}

Rat rat_pow(const Rat& base, long long exp) {
    if (exp < 0) {
        if (base == 0) throw Error("rat_pow: division by zero");
        return Rat(1) / rat_pow(base, -exp);
    }
    Rat result = 1;
    Rat b = base;
    long long e = exp;
    while (e > 0) {
        if (e & 1) result *= b;
        b *= b;
        e >>= 1;
    }
    return result;
}

Int binomial(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    Int result = 1;
    for (long long i = 0; i < k; ++i) {
        result *= (n - i);
        result /= (i + 1);  // exact: product of j consecutive integers is divisible by j!
    }
    return result;
}

Int factorial(long long n) {
    Int result = 1;
    for (long long i = 2; i <= n; ++i) result *= i;
    return result;
}

Int stirling2(long long e, long long j) {
    if (e == 0 && j == 0) return 1;
    if (e <= 0 || j <= 0 || j > e) return 0;
    static std::map<std::pair<long long, long long>, Int> memo;
    auto it = memo.find({e, j});
    if (it != memo.end()) return it->second;
    Int v = stirling2(e - 1, j - 1) + Int(j) * stirling2(e - 1, j);
    memo.emplace(std::make_pair(e, j), v);
    return v;
}

std::set<Int> prime_divisors(Int n) {
    std::set<Int> out;
    if (n < 0) n = -n;
    if (n <= 1) return out;
    for (Int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            out.insert(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) out.insert(n);
    return out;
}

int moebius(long long n) {
    if (n <= 0) throw Error("moebius: argument must be positive");
    int sign = 1;
    for (long long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            sign = -sign;
        }
    }
    if (n > 1) sign = -sign;
    return sign;
}

std::string int_str(const Int& v) { return v.str(); }

Int int_from_str(const std::string& s) {
    try {
        return Int(s);
    } catch (const std::exception&) {
        throw ValidationError("not a decimal integer: '" + s + "'");
    }
}

}  // namespace wbr
