#pragma once

// Prime sieving, primality testing and primitive roots mod p.
// Everything here is plain integer arithmetic feeding the character tables.

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace critline {

// Primes <= limit, ascending. Plain Eratosthenes; limits here are desk scale.
inline std::vector<std::uint32_t> sieve_primes(std::uint64_t limit) {
    std::vector<std::uint32_t> primes;
    if (limit < 2) return primes;
    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t p = 2; p <= limit; ++p) {
        if (composite[p]) continue;
        primes.push_back(static_cast<std::uint32_t>(p));
        for (std::uint64_t m = p * p; m <= limit; m += p) composite[m] = true;
    }
    return primes;
}

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
    // mod stays below 2^32 here, so 64-bit products cannot overflow.
    std::uint64_t result = 1;
    base %= mod;
    while (exp > 0) {
        if (exp & 1) result = result * base % mod;
        base = base * base % mod;
        exp >>= 1;
    }
    return result;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> factors;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            factors.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) factors.push_back(n);
    return factors;
}

inline bool is_primitive_root(std::uint32_t g, std::uint32_t q,
                              const std::vector<std::uint64_t>& phi_factors) {
    if (g % q == 0) return false;
    for (auto p : phi_factors)
        if (pow_mod(g, (q - 1) / p, q) == 1) return false;
    return true;
}

// Smallest generator of (Z/qZ)^* for prime q. Deterministic by construction.
inline std::uint32_t primitive_root(std::uint32_t q) {
    if (!is_prime(q)) throw std::invalid_argument("primitive_root: q must be prime");
    if (q == 2) return 1;
    const auto factors = prime_factors(q - 1);
    for (std::uint32_t g = 2; g < q; ++g)
        if (is_primitive_root(g, q, factors)) return g;
    throw std::logic_error("primitive_root: no generator found");  // unreachable for prime q
}

// Next primitive root strictly greater than `after`; used to cross-check
// that nothing downstream depends on the generator choice.
inline std::uint32_t next_primitive_root(std::uint32_t q, std::uint32_t after) {
    if (!is_prime(q)) throw std::invalid_argument("next_primitive_root: q must be prime");
    const auto factors = prime_factors(q - 1);
    for (std::uint32_t g = after + 1; g < q; ++g)
        if (is_primitive_root(g, q, factors)) return g;
    throw std::invalid_argument("next_primitive_root: none past given value");
}

}  // namespace critline
