#pragma once

// The mollifier apparatus.
//
// For a moment exponent k (k > 0, k != 1) and tuning integers N, M, a
// decreasing sequence of even lengths is generated by
//
//     ell_1 = 2 ceil(N log log q),   ell_{j+1} = 2 ceil(N log ell_j),
//
// truncated at the last term exceeding 10^M (R terms; R = 0 is the legal
// empty apparatus).  Window j collects the primes in (q^{1/ell_{j-1}^2},
// q^{1/ell_j^2}], the first window taking the odd primes up to its cutoff.
// Per window, with P_j(t, chi) = sum_{p in P_j} chi(p) p^{-1/2-it}:
//
//     N_j(t, chi, alpha) = E_{ell_j}(alpha P_j(t, chi)),
//     Q_j(t, chi)        = (12 max(1,k^2) P_j(t, chi) / ell_j)^{r_k ell_j},
//
// where E_ell is the degree-ell Taylor truncation of exp and
// r_k = ceil(1 + 1/k) + 1 for k < 1, ceil(k/(2k-1)) + 1 for k > 1.
// Q_{R+1} = 1 by convention.
//
// At desk-scale q the canonical cutoffs q^{1/ell_1^2} often fall below 3 and
// every window is empty; custom window mode substitutes explicit bounds (and
// explicit even lengths) so the product structure stays nontrivial.  The
// expansion routines turn the factored forms into explicit sparse Dirichlet
// polynomial coefficients; growth is combinatorial, so they fail loudly on a
// support budget instead of truncating.

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <vector>

#include "critline/characters.hpp"
#include "critline/special_functions.hpp"

namespace critline {

inline constexpr std::size_t default_support_cap = 10'000'000;

enum class WindowMode { canonical, custom };

struct PrimeWindow {
    double lo = 0.0;  // exclusive
    double hi = 0.0;  // inclusive
    std::vector<std::uint32_t> primes;
};

struct CustomWindows {
    std::vector<double> bounds;      // ascending upper cutoffs, one per window
    std::vector<unsigned> ells;      // even lengths; empty = derive from the recurrence
};

struct MollifierParams {
    double k = 0.5;
    unsigned big_n = 2;              // N of the length recurrence
    unsigned big_m = 1;              // M of the 10^M termination threshold
    std::uint32_t q = 0;
    WindowMode mode = WindowMode::canonical;
    unsigned r_k = 0;
    std::vector<unsigned> ell;       // ell_1..ell_R
    std::vector<PrimeWindow> windows;
    bool any_empty_window = false;   // flagged, not an error

    unsigned window_count() const { return static_cast<unsigned>(windows.size()); }
};

inline unsigned next_ell(unsigned n, unsigned ell) {
    return 2u * static_cast<unsigned>(std::ceil(n * std::log(static_cast<double>(ell))));
}

inline unsigned mollifier_r_k(double k) {
    if (k > 0.0 && k < 1.0) return static_cast<unsigned>(std::ceil(1.0 + 1.0 / k)) + 1;
    if (k > 1.0) return static_cast<unsigned>(std::ceil(k / (2.0 * k - 1.0))) + 1;
    throw std::invalid_argument("mollifier_r_k: k must be positive and != 1");
}

namespace detail {

inline std::vector<std::uint32_t> primes_in(const std::vector<std::uint32_t>& primes,
                                            double lo, double hi, bool odd_only) {
    std::vector<std::uint32_t> out;
    for (auto p : primes) {
        if (odd_only && p == 2) continue;
        if (static_cast<double>(p) > lo && static_cast<double>(p) <= hi) out.push_back(p);
    }
    return out;
}

}  // namespace detail

inline MollifierParams make_params(double k, unsigned big_n, unsigned big_m, std::uint32_t q,
                                   WindowMode mode = WindowMode::canonical,
                                   const CustomWindows* custom = nullptr) {
    if (!(k > 0.0) || k == 1.0)
        throw std::invalid_argument("make_params: k must be positive and != 1");
    if (big_n == 0) throw std::invalid_argument("make_params: N must be positive");
    if (!is_prime(q)) throw std::invalid_argument("make_params: q must be prime");

    MollifierParams params;
    params.k = k;
    params.big_n = big_n;
    params.big_m = big_m;
    params.q = q;
    params.mode = mode;
    params.r_k = mollifier_r_k(k);

    const double qd = static_cast<double>(q);
    const unsigned ell_1 =
        2u * static_cast<unsigned>(std::ceil(big_n * std::log(std::log(qd))));

    if (mode == WindowMode::canonical) {
        const double threshold = std::pow(10.0, static_cast<double>(big_m));
        unsigned cur = ell_1;
        while (static_cast<double>(cur) > threshold) {
            params.ell.push_back(cur);
            const unsigned nxt = next_ell(big_n, cur);
            if (nxt >= cur)
                throw std::invalid_argument(
                    "make_params: length recurrence stalls above 10^M; increase M");
            cur = nxt;
        }
        double prev_cutoff = 0.0;
        for (std::size_t j = 0; j < params.ell.size(); ++j) {
            const double ell_j = static_cast<double>(params.ell[j]);
            const double cutoff = std::pow(qd, 1.0 / (ell_j * ell_j));
            PrimeWindow window;
            window.lo = prev_cutoff;
            window.hi = cutoff;
            const auto sieved = sieve_primes(static_cast<std::uint64_t>(std::floor(cutoff)));
            window.primes = detail::primes_in(sieved, prev_cutoff, cutoff, j == 0);
            prev_cutoff = cutoff;
            params.windows.push_back(std::move(window));
        }
    } else {
        if (custom == nullptr || custom->bounds.empty())
            throw std::invalid_argument("make_params: custom mode requires window bounds");
        for (std::size_t i = 1; i < custom->bounds.size(); ++i)
            if (!(custom->bounds[i] > custom->bounds[i - 1]))
                throw std::invalid_argument("make_params: custom bounds must ascend strictly");

        if (custom->ells.empty()) {
            unsigned cur = ell_1;
            for (std::size_t i = 0; i < custom->bounds.size(); ++i) {
                params.ell.push_back(cur);
                cur = next_ell(big_n, cur);
            }
        } else {
            if (custom->ells.size() != custom->bounds.size())
                throw std::invalid_argument("make_params: need one length per window bound");
            params.ell = custom->ells;
        }
        for (unsigned l : params.ell)
            if (l < 2 || l % 2 != 0)
                throw std::invalid_argument("make_params: window lengths must be even and >= 2");

        double prev = 0.0;
        for (std::size_t j = 0; j < custom->bounds.size(); ++j) {
            PrimeWindow window;
            window.lo = prev;
            window.hi = custom->bounds[j];
            const auto sieved =
                sieve_primes(static_cast<std::uint64_t>(std::floor(window.hi)));
            window.primes = detail::primes_in(sieved, prev, window.hi, j == 0);
            prev = custom->bounds[j];
            params.windows.push_back(std::move(window));
        }
    }

    for (const auto& window : params.windows)
        if (window.primes.empty()) params.any_empty_window = true;
    return params;
}

// E_ell(x) = sum_{j<=ell} x^j / j!
inline cd truncated_exp(unsigned ell, cd x) {
    cd sum{1.0, 0.0};
    cd term{1.0, 0.0};
    for (unsigned j = 1; j <= ell; ++j) {
        term *= x / static_cast<double>(j);
        sum += term;
    }
    return sum;
}

// Integer power by repeated squaring; 0^0 = 1.
inline cd powi(cd base, unsigned e) {
    cd result{1.0, 0.0};
    while (e > 0) {
        if (e & 1u) result *= base;
        base *= base;
        e >>= 1;
    }
    return result;
}

// P_j(t, chi) over window j (1-based); empty windows give 0.
inline cd power_sum(const MollifierParams& params, unsigned j, const PrimeModulus& mod,
                    CharacterIndex chi, double t) {
    if (j < 1 || j > params.window_count())
        throw std::invalid_argument("power_sum: window index out of range");
    const cd minus_s{-0.5, -t};
    cd sum{0.0, 0.0};
    for (auto p : params.windows[j - 1].primes)
        sum += char_value(mod, chi, p) * detail::pow_real(static_cast<double>(p), minus_s);
    return sum;
}

// P_j(t, chi) for every character at once: one group DFT per window.
// result[w][j] holds the window-(w+1) sum for character j = 0..q-2.
inline std::vector<std::vector<cd>> window_power_sums(const MollifierParams& params,
                                                      const PrimeModulus& mod, double t) {
    std::vector<std::vector<cd>> result;
    result.reserve(params.window_count());
    const cd minus_s{-0.5, -t};
    for (const auto& window : params.windows) {
        std::vector<cd> by_residue(mod.q, cd{0.0, 0.0});
        for (auto p : window.primes)
            by_residue[p % mod.q] += detail::pow_real(static_cast<double>(p), minus_s);
        result.push_back(all_character_sums(mod, by_residue));
    }
    return result;
}

inline cd n_factor(const MollifierParams& params, unsigned j, cd p_value, double alpha) {
    if (j < 1 || j > params.window_count())
        throw std::invalid_argument("n_factor: window index out of range");
    return truncated_exp(params.ell[j - 1], alpha * p_value);
}

inline cd n_product(const MollifierParams& params, const PrimeModulus& mod, CharacterIndex chi,
                    double t, double alpha) {
    cd prod{1.0, 0.0};
    for (unsigned j = 1; j <= params.window_count(); ++j)
        prod *= n_factor(params, j, power_sum(params, j, mod, chi, t), alpha);
    return prod;
}

// Q_j; index j = R+1 is the trailing convention value 1.
inline cd q_factor(const MollifierParams& params, unsigned j, cd p_value) {
    if (j < 1 || j > params.window_count() + 1)
        throw std::invalid_argument("q_factor: window index out of range");
    if (j == params.window_count() + 1) return cd{1.0, 0.0};
    const double ell = static_cast<double>(params.ell[j - 1]);
    const double c = 12.0 * std::max(1.0, params.k * params.k);
    return powi(c * p_value / ell, params.r_k * params.ell[j - 1]);
}

// Sparse Dirichlet polynomial sum_n coeffs[n] chi(n) n^{-1/2-it} with real
// coefficients; the n^{-it} phase is injected at evaluation time.
struct DirichletPolynomial {
    std::map<std::uint64_t, double> coeffs;
    std::uint64_t length_bound = 1;  // max support value

    cd evaluate(const PrimeModulus& mod, CharacterIndex chi, double t) const {
        const cd minus_s{-0.5, -t};
        cd sum{0.0, 0.0};
        for (const auto& [n, c] : coeffs)
            sum += c * char_value(mod, chi, n) * detail::pow_real(static_cast<double>(n), minus_s);
        return sum;
    }
};

namespace detail {

inline double factorial_checked(unsigned n) {
    if (n > 170) throw std::overflow_error("factorial overflows binary64");
    double f = 1.0;
    for (unsigned i = 2; i <= n; ++i) f *= i;
    return f;
}

struct ExpansionBudget {
    std::size_t cap = default_support_cap;
    void check(std::size_t size) const {
        if (size > cap)
            throw std::overflow_error("mollifier expansion exceeds support budget");
    }
};

// Enumerate window-smooth n = prod p^{e_p}.  exact == false records every
// multiset with Omega(n) <= slots and weight alpha^Omega / prod e_p!;
// exact == true records only Omega(n) == slots with weight 1 / prod e_p!.
inline void enumerate_multisets(const std::vector<std::uint32_t>& primes, std::size_t idx,
                                unsigned slots, std::uint64_t n, double inv_w, unsigned omega,
                                double alpha, bool exact, std::map<std::uint64_t, double>& out,
                                const ExpansionBudget& budget) {
    if (idx == primes.size()) {
        if (exact && slots != 0) return;
        const double weight = exact ? inv_w : std::pow(alpha, static_cast<double>(omega)) * inv_w;
        if (weight == 0.0) return;  // keep the map sparse (e.g. alpha = 0)
        out[n] += weight;
        budget.check(out.size());
        return;
    }
    const std::uint64_t p = primes[idx];
    std::uint64_t pn = n;
    double w = inv_w;
    for (unsigned e = 0; e <= slots; ++e) {
        if (e > 0) {
            if (pn > std::numeric_limits<std::uint64_t>::max() / p)
                throw std::overflow_error("mollifier expansion support exceeds 64 bits");
            pn *= p;
            w /= static_cast<double>(e);
        }
        enumerate_multisets(primes, idx + 1, slots - e, pn, w, omega + e, alpha, exact, out,
                            budget);
    }
}

inline std::map<std::uint64_t, double> convolve(const std::map<std::uint64_t, double>& a,
                                                const std::map<std::uint64_t, double>& b,
                                                const ExpansionBudget& budget) {
    std::map<std::uint64_t, double> out;
    for (const auto& [na, ca] : a) {
        for (const auto& [nb, cb] : b) {
            if (na > std::numeric_limits<std::uint64_t>::max() / (nb == 0 ? 1 : nb))
                throw std::overflow_error("mollifier expansion support exceeds 64 bits");
            out[na * nb] += ca * cb;
            budget.check(out.size());
        }
    }
    return out;
}

}  // namespace detail

// Expand prod_{j in subset} E_{ell_j}(alpha P_j) into coefficients x_a:
// a runs over window-smooth integers, x_a = prod_j alpha^{Omega_j} / w_j with
// w(n) = prod_p e_p! the multiset repetition factor.
inline DirichletPolynomial expand_coefficients(const MollifierParams& params, double alpha,
                                               const std::vector<unsigned>& window_subset,
                                               std::size_t support_cap = default_support_cap) {
    detail::ExpansionBudget budget{support_cap};
    std::map<std::uint64_t, double> acc{{1, 1.0}};
    for (unsigned j : window_subset) {
        if (j < 1 || j > params.window_count())
            throw std::invalid_argument("expand_coefficients: window index out of range");
        std::map<std::uint64_t, double> win;
        detail::enumerate_multisets(params.windows[j - 1].primes, 0, params.ell[j - 1], 1, 1.0,
                                    0, alpha, false, win, budget);
        acc = detail::convolve(acc, win, budget);
    }
    DirichletPolynomial poly;
    poly.coeffs = std::move(acc);
    poly.length_bound = poly.coeffs.empty() ? 1 : poly.coeffs.rbegin()->first;
    return poly;
}

inline DirichletPolynomial expand_coefficients(const MollifierParams& params, double alpha,
                                               std::size_t support_cap = default_support_cap) {
    std::vector<unsigned> all;
    for (unsigned j = 1; j <= params.window_count(); ++j) all.push_back(j);
    return expand_coefficients(params, alpha, all, support_cap);
}

// Expand P_{v+1}^{r_k ell_{v+1}}: coefficients (r_k ell)!/w(n) over the
// window-smooth n with exactly r_k ell prime factors counted with
// multiplicity.  v is 0-based as in the v-sums.
inline DirichletPolynomial expand_power_coefficients(const MollifierParams& params, unsigned v,
                                                     std::size_t support_cap = default_support_cap) {
    if (v >= params.window_count())
        throw std::invalid_argument("expand_power_coefficients: v out of range");
    const unsigned m = params.r_k * params.ell[v];
    detail::ExpansionBudget budget{support_cap};
    std::map<std::uint64_t, double> out;
    if (!params.windows[v].primes.empty()) {
        detail::enumerate_multisets(params.windows[v].primes, 0, m, 1, 1.0, 0, 0.0, true, out,
                                    budget);
        const double mfact = detail::factorial_checked(m);
        for (auto& [n, c] : out) c *= mfact;
    }
    DirichletPolynomial poly;
    poly.coeffs = std::move(out);
    poly.length_bound = poly.coeffs.empty() ? 1 : poly.coeffs.rbegin()->first;
    return poly;
}

// Normalized coefficients u_a of prod_{j<=v} N_j(t, chi, k-1) * Q_{v+1}(t, chi):
// u_a = x_{a'} / w(n) over the unique split a = a' n across the disjoint
// windows; |u_a| <= 1 whenever |k-1| <= 1.  v = R has no trailing Q block
// (Q_{R+1} = 1) and reduces to the plain mollifier coefficients.
inline DirichletPolynomial normalized_vblock_coefficients(
    const MollifierParams& params, unsigned v,
    std::size_t support_cap = default_support_cap) {
    if (v > params.window_count())
        throw std::invalid_argument("normalized_vblock_coefficients: v out of range");
    std::vector<unsigned> head;
    for (unsigned j = 1; j <= v; ++j) head.push_back(j);
    const auto mollifier_part = expand_coefficients(params, params.k - 1.0, head, support_cap);
    if (v == params.window_count()) return mollifier_part;

    auto power_part = expand_power_coefficients(params, v, support_cap);
    const double mfact = detail::factorial_checked(params.r_k * params.ell[v]);
    for (auto& [n, c] : power_part.coeffs) c /= mfact;

    detail::ExpansionBudget budget{support_cap};
    DirichletPolynomial poly;
    poly.coeffs = detail::convolve(mollifier_part.coeffs, power_part.coeffs, budget);
    poly.length_bound = poly.coeffs.empty() ? 1 : poly.coeffs.rbegin()->first;
    return poly;
}

}  // namespace critline
