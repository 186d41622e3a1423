#pragma once

// Complex special functions in binary64: Gamma, digamma, Hurwitz zeta,
// Riemann zeta and the q-deprived zeta.  Target accuracy is ~1e-12 relative
// for |Im s| <= 50, which covers every use in this library; no arbitrary
// precision anywhere.
//
//  - Gamma uses the Lanczos approximation (g = 607/128, 15 terms) with
//    reflection for Re s < 1/2.
//  - digamma shifts by recurrence until |s| clears a threshold, then applies
//    the Bernoulli asymptotic series.
//  - Hurwitz zeta is Euler-Maclaurin: an explicit head sum to push the base
//    point past max(shift_threshold, |Im s|), then the B_{2r} tail.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>

namespace critline {

using cd = std::complex<double>;

struct PrecisionPolicy {
    int euler_maclaurin_terms = 12;   // Bernoulli tail terms, >= 8, <= 15
    double shift_threshold = 12.0;    // minimum base point / recurrence target, >= 10
    double target_rel_error = 1e-12;  // documented goal for |Im s| <= 50
};

namespace detail {

// B_{2r} for r = 1..15.
inline constexpr double bernoulli2[16] = {
    0.0,
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
};

inline double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// x^s for real x > 0.
inline cd pow_real(double x, cd s) {
    const double lx = std::log(x);
    return std::polar(std::exp(s.real() * lx), s.imag() * lx);
}

inline bool is_nonpositive_integer(cd s) {
    return s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::floor(s.real());
}

}  // namespace detail

// Lanczos, g = 607/128 with 15 coefficients (Godfrey's set).
inline cd gamma_complex(cd s) {
    if (detail::is_nonpositive_integer(s))
        throw std::domain_error("gamma_complex: pole at non-positive integer");

    static constexpr double lanczos_g = 607.0 / 128.0;
    static constexpr double coeff[15] = {
        0.99999999999999709182,
        57.156235665862923517,
        -59.597960355475491248,
        14.136097974741747174,
        -0.49191381609762019978,
        0.33994649984811888699e-4,
        0.46523628927048575665e-4,
        -0.98374475304879564677e-4,
        0.15808870322491248884e-3,
        -0.21026444172410488319e-3,
        0.21743961811521264320e-3,
        -0.16431810653676389022e-3,
        0.84418223983852743293e-4,
        -0.26190838401581408670e-4,
        0.36899182659531622704e-5,
    };

    if (s.real() < 0.5) {
        // Reflection: Gamma(s) Gamma(1-s) = pi / sin(pi s).
        const cd denom = std::sin(std::numbers::pi * s) * gamma_complex(1.0 - s);
        return std::numbers::pi / denom;
    }

    cd series{coeff[0], 0.0};
    for (int k = 1; k < 15; ++k) series += coeff[k] / (s + static_cast<double>(k - 1));
    const cd t = s + (lanczos_g - 0.5);
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, s - 0.5) * std::exp(-t) * series;
}

inline cd digamma(cd s, PrecisionPolicy policy = {}) {
    if (detail::is_nonpositive_integer(s))
        throw std::domain_error("digamma: pole at non-positive integer");

    cd acc{0.0, 0.0};
    if (s.real() < 0.0) {
        // psi(s) = psi(1-s) - pi*cot(pi*s)
        const cd ps = std::numbers::pi * s;
        acc -= std::numbers::pi * std::cos(ps) / std::sin(ps);
        s = 1.0 - s;
    }
    while (std::abs(s) < policy.shift_threshold) {
        acc -= 1.0 / s;
        s += 1.0;
    }
    // Asymptotic series: log s - 1/(2s) - sum B_{2n} / (2n s^{2n}).
    const cd inv = 1.0 / s;
    const cd inv2 = inv * inv;
    cd result = std::log(s) - 0.5 * inv;
    cd power = inv2;
    for (int n = 1; n <= 8; ++n) {
        result -= detail::bernoulli2[n] / (2.0 * n) * power;
        power *= inv2;
    }
    return acc + result;
}

// Hurwitz zeta(s, a) for a > 0, s != 1, by Euler-Maclaurin.
inline cd hurwitz_zeta(cd s, double a, PrecisionPolicy policy = {}) {
    if (s == cd{1.0, 0.0}) throw std::domain_error("hurwitz_zeta: pole at s = 1");
    if (!(a > 0.0)) throw std::domain_error("hurwitz_zeta: requires a > 0");
    if (policy.euler_maclaurin_terms < 8 || policy.euler_maclaurin_terms > 15)
        throw std::invalid_argument("hurwitz_zeta: euler_maclaurin_terms out of range");
    if (policy.shift_threshold < 10.0)
        throw std::invalid_argument("hurwitz_zeta: shift_threshold too small");

    // Head sum until the base point N = a + K dominates both the threshold
    // and |Im s|; the Bernoulli tail then converges geometrically.
    const double target = std::max(policy.shift_threshold, std::abs(s.imag()));
    const int shift = static_cast<int>(std::max(0.0, std::ceil(target - a)));

    cd head{0.0, 0.0};
    for (int n = 0; n < shift; ++n) head += detail::pow_real(a + n, -s);

    const double base = a + shift;
    const cd base_pow = detail::pow_real(base, -s);  // N^{-s}
    cd result = head + base * base_pow / (s - 1.0) + 0.5 * base_pow;

    // Tail: sum_r B_{2r}/(2r)! * (s)(s+1)...(s+2r-2) * N^{-s-2r+1}.
    cd poch{1.0, 0.0};
    cd power = base_pow * base;  // N^{1-s}
    const double inv_base2 = 1.0 / (base * base);
    for (int r = 1; r <= policy.euler_maclaurin_terms; ++r) {
        poch *= (r == 1) ? s : (s + cd(2.0 * r - 3.0)) * (s + cd(2.0 * r - 2.0));
        power *= inv_base2;      // N^{1-s-2r}
        result += detail::bernoulli2[r] / detail::factorial(2 * r) * poch * power;
    }
    return result;
}

inline cd riemann_zeta(cd s, PrecisionPolicy policy = {}) {
    return hurwitz_zeta(s, 1.0, policy);
}

// zeta with the Euler factor at q removed: (1 - q^{-s}) zeta(s), q prime.
inline cd zeta_q(cd s, std::uint32_t q, PrecisionPolicy policy = {}) {
    return (1.0 - detail::pow_real(static_cast<double>(q), -s)) * riemann_zeta(s, policy);
}

}  // namespace critline
