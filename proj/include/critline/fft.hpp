#pragma once

// Complex DFT of arbitrary length.
//
// Character sums over (Z/qZ)^* reduce to a cyclic DFT of length q-1, which is
// almost never a power of two.  Power-of-two sizes go through an iterative
// radix-2 transform; everything else goes through Bluestein's chirp-z
// reduction to a padded radix-2 convolution.  The quadratic chirp phase is
// reduced mod 2N in exact integer arithmetic before touching floating point,
// so the twiddles stay accurate for transform lengths in the millions.

#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace critline::fft {

using cd = std::complex<double>;

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline std::size_t next_pow2(std::size_t n) {
    std::size_t m = 1;
    while (m < n) m <<= 1;
    return m;
}

// In-place radix-2 transform: a[j] <- sum_k a[k] exp(sign*2*pi*i*j*k/n).
// No normalization on either direction.
inline void fft_pow2(std::vector<cd>& a, int sign) {
    const std::size_t n = a.size();
    if (!is_pow2(n)) throw std::invalid_argument("fft_pow2: size must be a power of two");
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double angle = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
        const cd wlen = std::polar(1.0, angle);
        for (std::size_t i = 0; i < n; i += len) {
            cd w{1.0, 0.0};
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cd u = a[i + k];
                const cd v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

// Chirp factor exp(sign*pi*i*m^2/n) with m^2 reduced mod 2n exactly.
inline cd chirp(std::uint64_t m, std::uint64_t n, int sign) {
    const std::uint64_t r = (m % (2 * n)) * (m % (2 * n)) % (2 * n);
    return std::polar(1.0, sign * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n));
}

// DFT of arbitrary length: out[j] = sum_k in[k] exp(sign*2*pi*i*j*k/n).
inline std::vector<cd> dft(const std::vector<cd>& in, int sign) {
    const std::size_t n = in.size();
    if (n == 0) return {};
    if (n == 1) return in;
    if (is_pow2(n)) {
        std::vector<cd> a = in;
        fft_pow2(a, sign);
        return a;
    }

    // Bluestein: jk = (j^2 + k^2 - (j-k)^2) / 2 turns the transform into a
    // convolution of the chirped input with the conjugate chirp.
    const std::size_t m = next_pow2(2 * n - 1);
    std::vector<cd> u(m, cd{0.0, 0.0}), v(m, cd{0.0, 0.0});
    for (std::size_t k = 0; k < n; ++k) u[k] = in[k] * chirp(k, n, sign);
    v[0] = cd{1.0, 0.0};
    for (std::size_t k = 1; k < n; ++k) {
        const cd c = std::conj(chirp(k, n, sign));
        v[k] = c;
        v[m - k] = c;
    }
    fft_pow2(u, -1);
    fft_pow2(v, -1);
    for (std::size_t i = 0; i < m; ++i) u[i] *= v[i];
    fft_pow2(u, +1);

    std::vector<cd> out(n);
    const double inv_m = 1.0 / static_cast<double>(m);
    for (std::size_t j = 0; j < n; ++j) out[j] = u[j] * inv_m * chirp(j, n, sign);
    return out;
}

}  // namespace critline::fft
