#pragma once

/**
 * Machine-integer number theory helpers and the arbitrary-precision scalar
 * types shared by every other header.
 *
 * BigInt and BigRat are GMP's C++ classes. Every BigRat produced by this
 * library is canonical: lowest terms, positive denominator, zero as 0/1.
 */

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lzero/errors.hpp"

namespace lzero {

using BigInt = mpz_class;
using BigRat = mpq_class;

inline BigRat make_rat(const BigInt& num, const BigInt& den) {
    if (den == 0) throw DivisionByZero();
    BigRat r(num, den);
    r.canonicalize();
    return r;
}

inline BigRat make_rat(long num, long den = 1) { return make_rat(BigInt(num), BigInt(den)); }

/// Always "num/den", including integers ("3/1") and zero ("0/1").
inline std::string to_fraction_string(const BigRat& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Accepts "num/den" or a bare integer.
inline BigRat parse_fraction(std::string_view s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string_view::npos) return BigRat(BigInt(std::string(s)));
        return make_rat(BigInt(std::string(s.substr(0, slash))),
                        BigInt(std::string(s.substr(slash + 1))));
    } catch (const std::invalid_argument&) {
        throw InvalidArgument("malformed rational '" + std::string(s) + "'");
    }
}

inline bool is_integer(const BigRat& q) { return q.get_den() == 1; }

inline std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

inline std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

inline std::int64_t lcm64(std::int64_t a, std::int64_t b) {
    if (a == 0 || b == 0) return 0;
    return a / std::gcd(a, b) * b;
}

inline std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m) {
    return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % m);
}

inline std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t m) {
    if (m == 1) return 0;
    std::int64_t result = 1;
    base = floor_mod(base, m);
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

/// Inverse of a modulo m; throws when gcd(a, m) != 1.
inline std::int64_t inv_mod(std::int64_t a, std::int64_t m) {
    std::int64_t g = m, x = 0, x1 = 1, a1 = floor_mod(a, m);
    while (a1 != 0) {
        std::int64_t q = g / a1;
        std::tie(g, a1) = std::make_pair(a1, g - q * a1);
        std::tie(x, x1) = std::make_pair(x1, x - q * x1);
    }
    if (g != 1) throw InvalidArgument("not invertible modulo " + std::to_string(m));
    return floor_mod(x, m);
}

inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline bool is_odd_prime(std::int64_t n) { return n > 2 && is_prime(n); }

/// Ascending prime factorization as (prime, exponent) pairs.
inline std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
    std::vector<std::pair<std::int64_t, int>> out;
    for (std::int64_t d = 2; d * d <= n; ++d) {
        if (n % d != 0) continue;
        int e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        out.emplace_back(d, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline std::int64_t ipow(std::int64_t b, int e) {
    std::int64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

inline std::int64_t euler_phi(std::int64_t n) {
    std::int64_t r = n;
    for (auto [q, e] : factorize(n)) r = r / q * (q - 1);
    return r;
}

inline std::vector<std::int64_t> divisors(std::int64_t n) {
    std::vector<std::int64_t> out;
    for (std::int64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        out.push_back(d);
        if (d * d != n) out.push_back(n / d);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<std::int64_t> primes_up_to(std::int64_t n) {
    std::vector<std::int64_t> out;
    for (std::int64_t q = 2; q <= n; ++q)
        if (is_prime(q)) out.push_back(q);
    return out;
}

/// If n = p^e for a prime p and e >= 1, returns (p, e); otherwise (0, 0).
inline std::pair<std::int64_t, int> prime_power(std::int64_t n) {
    if (n < 2) return {0, 0};
    auto f = factorize(n);
    if (f.size() != 1) return {0, 0};
    return f.front();
}

/// Multiplicative order of a modulo m (gcd(a, m) = 1 required).
inline std::int64_t multiplicative_order(std::int64_t a, std::int64_t m) {
    if (m == 1) return 1;
    if (gcd64(a, m) != 1) throw InvalidArgument("order of a non-unit");
    std::int64_t order = euler_phi(m);
    for (auto [q, e] : factorize(order)) {
        for (int i = 0; i < e && order % q == 0 && pow_mod(a, order / q, m) == 1; ++i) order /= q;
    }
    return order;
}

/// x with x = a mod m and x = b mod n, for coprime m, n; result in [0, mn).
inline std::int64_t crt_pair(std::int64_t a, std::int64_t m, std::int64_t b, std::int64_t n) {
    std::int64_t t = mul_mod(floor_mod(b - a, n), inv_mod(m % n, n), n);
    return floor_mod(a + m * t, m * n);
}

inline int valuation_p(BigInt n, std::int64_t p) {
    if (n == 0) throw InvalidArgument("valuation of zero");
    int v = 0;
    BigInt q = static_cast<unsigned long>(p);
    while (mpz_divisible_p(n.get_mpz_t(), q.get_mpz_t())) {
        mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), q.get_mpz_t());
        ++v;
    }
    return v;
}

inline BigInt big_pow(std::int64_t base, unsigned long exp) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), exp);
    return r;
}

/// Least nonnegative residue of a rational whose denominator is a unit mod m.
inline std::int64_t rat_mod(const BigRat& q, std::int64_t m) {
    BigInt mm = static_cast<unsigned long>(m);
    BigInt den = q.get_den();
    BigInt inv;
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mm.get_mpz_t()) == 0)
        throw DivisionByZero("denominator not invertible modulo " + std::to_string(m));
    BigInt r = q.get_num() * inv;
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), mm.get_mpz_t());
    return r.get_si();
}

} // namespace lzero
