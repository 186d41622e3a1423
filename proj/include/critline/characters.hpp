#pragma once

// Dirichlet characters of prime modulus q, addressed through a fixed
// primitive root g.  Index j in [0, q-2] names the character with
//
//     chi_j(g^a) = exp(2*pi*i * j*a / (q-1)),   chi_j(n) = 0 for q | n.
//
// j = 0 is the principal character; every other index is primitive because
// q is prime.  The full discrete-log table costs O(q) memory and makes each
// character value an O(1) lookup; simultaneous sums over all characters are
// one length-(q-1) cyclic DFT of the dlog-reindexed coefficients.

#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "critline/fft.hpp"
#include "critline/primes.hpp"

namespace critline {

using cd = std::complex<double>;

struct PrimeModulus {
    std::uint32_t q = 0;
    std::uint32_t g = 0;                // generator used for indexing
    std::vector<std::uint32_t> dlog;    // dlog[n] = a with g^a = n (mod q), n in [1, q-1]
    std::uint64_t phi = 0;              // q - 1
    std::uint64_t phi_star = 0;         // number of primitive characters: q - 2

    static constexpr std::uint32_t default_q_max = 2'000'000;
};

struct CharacterIndex {
    std::uint32_t j = 0;
};

inline PrimeModulus build_modulus_with_root(std::uint32_t q, std::uint32_t g,
                                            std::uint32_t q_max = PrimeModulus::default_q_max) {
    if (!is_prime(q)) throw std::invalid_argument("build_modulus: q must be prime");
    if (q < 5) throw std::invalid_argument("build_modulus: q must be at least 5");
    if (q > q_max) throw std::invalid_argument("build_modulus: q exceeds table budget");
    const auto factors = prime_factors(q - 1);
    if (!is_primitive_root(g, q, factors))
        throw std::invalid_argument("build_modulus: g is not a primitive root of q");

    PrimeModulus mod;
    mod.q = q;
    mod.g = g;
    mod.phi = q - 1;
    mod.phi_star = q - 2;
    mod.dlog.assign(q, 0);
    std::uint64_t x = 1;
    for (std::uint32_t a = 0; a < q - 1; ++a) {
        mod.dlog[x] = a;
        x = x * g % q;
    }
    return mod;
}

inline PrimeModulus build_modulus(std::uint32_t q,
                                  std::uint32_t q_max = PrimeModulus::default_q_max) {
    if (!is_prime(q)) throw std::invalid_argument("build_modulus: q must be prime");
    return build_modulus_with_root(q, primitive_root(q), q_max);
}

// Root of unity exp(2*pi*i * num/den) with num already reduced mod den.
inline cd unit_phase(std::uint64_t num, std::uint64_t den) {
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(den));
}

inline cd char_value(const PrimeModulus& mod, CharacterIndex chi, std::uint64_t n) {
    const std::uint64_t r = n % mod.q;
    if (r == 0) return cd{0.0, 0.0};
    const std::uint64_t a = mod.dlog[r];
    return unit_phase(static_cast<std::uint64_t>(chi.j) * a % mod.phi, mod.phi);
}

// All sums S_j = sum_n coeffs[n] * chi_j(n) at once, j = 0..q-2.
// Coefficients are binned by residue; terms with q | n are dropped.
inline std::vector<cd> all_character_sums(const PrimeModulus& mod,
                                          const std::vector<cd>& by_residue) {
    if (by_residue.size() != mod.q)
        throw std::invalid_argument("all_character_sums: residue array must have size q");
    const std::size_t n = mod.phi;
    std::vector<cd> by_dlog(n, cd{0.0, 0.0});
    for (std::uint32_t r = 1; r < mod.q; ++r) by_dlog[mod.dlog[r]] += by_residue[r];
    // chi_j(g^a) = exp(+2*pi*i*ja/(q-1)): a forward transform with positive sign.
    return fft::dft(by_dlog, +1);
}

inline std::vector<cd> all_character_sums(const PrimeModulus& mod,
                                          const std::map<std::uint64_t, cd>& coeffs) {
    std::vector<cd> by_residue(mod.q, cd{0.0, 0.0});
    for (const auto& [n, c] : coeffs) {
        const std::uint64_t r = n % mod.q;
        if (r == 0) continue;
        by_residue[r] += c;
    }
    return all_character_sums(mod, by_residue);
}

// Index of the conjugate character: chi_j conj = chi_{q-1-j}, principal fixed.
inline std::uint32_t conjugate_index(const PrimeModulus& mod, std::uint32_t j) {
    return j == 0 ? 0 : static_cast<std::uint32_t>(mod.phi) - j;
}

}  // namespace critline
