#pragma once

// The experiment layer: moments of |L(1/2+it, chi)| over the character group,
// twisted second-moment comparisons against explicit main terms, the two
// Holder-chain inequality verifiers, diagonal/ratio checks for the mollified
// sums, and scaling sweeps.
//
// Conventions used throughout:
//  - sums over characters run over j = 1..q-2 (principal excluded) in
//    ascending index order, so reruns are bit-stable;
//  - the coefficients of every mollifier block are real, hence
//    N(-t, conj chi, alpha) = conj N(t, chi, alpha) and |Q| is computed from
//    the same window power sums;
//  - tan(i pi t) is evaluated as i tanh(pi t) everywhere;
//  - asymptotic statements with unknowable implied constants are reported as
//    ratios against the reference scale phi*(q) (log q)^{k^2}, never asserted.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "critline/lfunctions.hpp"
#include "critline/mollifier.hpp"

namespace critline {

struct TwistPair {
    std::uint64_t h = 1;
    std::uint64_t b = 1;
};

inline void validate_twist(const PrimeModulus& mod, TwistPair pair) {
    if (pair.h == 0 || pair.b == 0)
        throw std::invalid_argument("twist entries must be positive");
    if (std::gcd(pair.h, pair.b) != 1)
        throw std::invalid_argument("twist pair must be coprime");
    if (pair.h % mod.q == 0 || pair.b % mod.q == 0)
        throw std::invalid_argument("twist pair must be coprime to q");
}

struct TwistedMomentReport {
    TwistPair pair;
    double t = 0.0;
    cd lhs;
    cd s1_term;      // t-independent block, including the twist phase
    cd s2_term;      // digamma/tanh block, including the twist phase
    cd main_total;
    double abs_deviation = 0.0;
    double rel_deviation = 0.0;
    double error_budget = 0.0;  // (|t|+1)^2 ((h+b) sqrt(q) + h b), constant 1
};

struct TwistedGeneralReport {
    cd lhs;
    cd main;
    double abs_deviation = 0.0;
    double rel_deviation = 0.0;
};

struct InequalityReport {
    double lhs = 0.0;  // |character-sum side|
    std::vector<std::pair<double, double>> rhs_factors;  // (value, exponent)
    double rhs = 0.0;
    bool holds = false;
    double slack_ratio = 0.0;  // rhs / |lhs|
};

struct SweepRow {
    std::uint32_t q = 0;
    double k = 0.0;
    double t = 0.0;
    double moment = 0.0;
    double normalizer = 0.0;  // phi*(q) (log q)^{k^2}
    double ratio = 0.0;
    bool admissible = true;
};

inline double reference_scale(const PrimeModulus& mod, double k) {
    return static_cast<double>(mod.phi_star) *
           std::pow(std::log(static_cast<double>(mod.q)), k * k);
}

// ---------------------------------------------------------------------------
// Moments
// ---------------------------------------------------------------------------

inline double moment(const LVector& lv, double k) {
    if (k < 0.0) throw std::invalid_argument("moment: k must be nonnegative");
    double sum = 0.0;
    for (const auto& v : lv.values) sum += std::pow(std::norm(v), k);
    return sum;
}

inline double moment(const PrimeModulus& mod, CriticalPoint point, double k,
                     LMethod method = LMethod::reference, unsigned workers = 0) {
    return moment(l_all(mod, point, method, 0.0, {}, workers), k);
}

// ---------------------------------------------------------------------------
// Twisted second moment
// ---------------------------------------------------------------------------

inline cd twisted_lhs(const PrimeModulus& mod, const LVector& lv, TwistPair pair) {
    validate_twist(mod, pair);
    cd sum{0.0, 0.0};
    for (std::uint32_t j = 1; j <= mod.phi_star; ++j)
        sum += std::norm(lv.value(j)) * char_value(mod, {j}, pair.h) *
               std::conj(char_value(mod, {j}, pair.b));
    return sum;
}

namespace detail {

// Twist phase 1 / (h^{1/2-it} b^{1/2+it}).
inline cd twist_phase(TwistPair pair, double t) {
    return pow_real(static_cast<double>(pair.h), cd{-0.5, t}) *
           pow_real(static_cast<double>(pair.b), cd{-0.5, -t});
}

// The two main-term blocks of the t' -> -t limit formula, without the phase.
// For prime q: prod_{p|q}(1 - 1/p) = 1 - 1/q and sum_{p|q} log p/(p-1)
// collapse to single terms.
inline double s1_block(const PrimeModulus& mod, double log_h, double log_b) {
    const double q = static_cast<double>(mod.q);
    const double phi = q - 1.0;
    const double phi2q = phi * phi / q;
    return phi * (1.0 - 1.0 / q) * std::log(q) / (q - 1.0) +
           phi2q * std::log(q / (2.0 * std::numbers::pi)) - phi * log_h - phi2q * log_b;
}

inline cd s2_block(const PrimeModulus& mod, double t, PrecisionPolicy policy) {
    const double q = static_cast<double>(mod.q);
    const double phi = q - 1.0;
    const double phi2q = phi * phi / q;
    const cd psi = digamma(cd{0.5, t}, policy);
    // (pi/2) tan(i pi t) = i (pi/2) tanh(pi t); its imaginary part cancels
    // Im psi(1/2+it) identically.
    const cd tan_term{0.0, 0.5 * std::numbers::pi * std::tanh(std::numbers::pi * t)};
    return phi2q * (psi - tan_term);
}

}  // namespace detail

inline TwistedMomentReport twisted_main(const PrimeModulus& mod, const LVector& lv,
                                        TwistPair pair, PrecisionPolicy policy = {}) {
    validate_twist(mod, pair);
    TwistedMomentReport report;
    report.pair = pair;
    report.t = lv.point.t;

    const cd phase = detail::twist_phase(pair, lv.point.t);
    const double log_h = std::log(static_cast<double>(pair.h));
    const double log_b = std::log(static_cast<double>(pair.b));
    report.s1_term = phase * detail::s1_block(mod, log_h, log_b);
    report.s2_term = phase * detail::s2_block(mod, lv.point.t, policy);
    report.main_total = report.s1_term + report.s2_term;

    report.lhs = twisted_lhs(mod, lv, pair);
    report.abs_deviation = std::abs(report.lhs - report.main_total);
    report.rel_deviation = report.abs_deviation / std::abs(report.main_total);
    const double tt = std::abs(lv.point.t) + 1.0;
    report.error_budget =
        tt * tt * (static_cast<double>(pair.h + pair.b) * std::sqrt(static_cast<double>(mod.q)) +
                   static_cast<double>(pair.h) * static_cast<double>(pair.b));
    return report;
}

// General two-variable comparison at s, s' inside the critical strip.
// The combined pole configuration s + s' = 1 (both explicit main terms blow
// up) is rejected; use twisted_main for the limit value.
inline TwistedGeneralReport twisted_general(const PrimeModulus& mod, cd s, cd s_prime,
                                            TwistPair pair, PrecisionPolicy policy = {},
                                            unsigned workers = 0) {
    validate_twist(mod, pair);
    if (s.real() <= 0.0 || s.real() >= 1.0 || s_prime.real() <= 0.0 || s_prime.real() >= 1.0)
        throw std::domain_error("twisted_general: need 0 < Re s, Re s' < 1");
    const cd sum = s + s_prime;
    if (std::abs(sum - cd{1.0, 0.0}) < 1e-12 || std::abs(sum - cd{2.0, 0.0}) < 1e-12)
        throw std::domain_error("twisted_general: s + s' hits a pole configuration");

    TwistedGeneralReport report;
    const auto left = lvector_at(mod, s, policy, workers);
    const auto right = lvector_at(mod, s_prime, policy, workers);
    cd lhs{0.0, 0.0};
    for (std::uint32_t j = 1; j <= mod.phi_star; ++j)
        lhs += left[j] * right[conjugate_index(mod, j)] * char_value(mod, {j}, pair.h) *
               std::conj(char_value(mod, {j}, pair.b));
    report.lhs = lhs;

    const double q = static_cast<double>(mod.q);
    const double phi = q - 1.0;
    const double h = static_cast<double>(pair.h);
    const double b = static_cast<double>(pair.b);
    const cd diag = phi / (detail::pow_real(h, s_prime) * detail::pow_real(b, s)) *
                    zeta_q(sum, mod.q, policy);
    const cd off = phi * phi * detail::pow_real(2.0 * std::numbers::pi, sum - 1.0) /
                   (std::numbers::pi * detail::pow_real(q, sum) * detail::pow_real(h, 1.0 - s) *
                    detail::pow_real(b, 1.0 - s_prime)) *
                   gamma_complex(1.0 - s) * gamma_complex(1.0 - s_prime) *
                   std::cos(0.5 * std::numbers::pi * (s - s_prime)) *
                   riemann_zeta(2.0 - sum, policy);
    report.main = diag + off;
    report.abs_deviation = std::abs(report.lhs - report.main);
    report.rel_deviation = report.abs_deviation / std::abs(report.main);
    return report;
}

// ---------------------------------------------------------------------------
// Holder-chain inequality verifiers
// ---------------------------------------------------------------------------

namespace detail {

// Per-character mollifier data shared by the inequality and ratio checks.
struct MollifierTable {
    // pw[w][j]: window power sum P_{w+1}(t, chi_j)
    std::vector<std::vector<cd>> pw;
    unsigned windows = 0;

    MollifierTable(const MollifierParams& params, const PrimeModulus& mod, double t)
        : pw(window_power_sums(params, mod, t)), windows(params.window_count()) {}

    cd n_full(const MollifierParams& params, std::uint32_t j, double alpha) const {
        cd prod{1.0, 0.0};
        for (unsigned w = 0; w < windows; ++w)
            prod *= truncated_exp(params.ell[w], alpha * pw[w][j]);
        return prod;
    }

    // sum_{v=0}^{R} prod_{w<=v} |E_{ell_w}(alpha P_w)|^2 * |Q_{v+1}|^2
    double vsum(const MollifierParams& params, std::uint32_t j, double alpha) const {
        double total = 0.0;
        double prefix = 1.0;
        for (unsigned v = 0; v <= windows; ++v) {
            const double qf =
                (v == windows) ? 1.0 : std::norm(q_factor(params, v + 1, pw[v][j]));
            total += prefix * qf;
            if (v < windows) prefix *= std::norm(truncated_exp(params.ell[v], alpha * pw[v][j]));
        }
        return total;
    }

    // prod_w (|E_{ell_w}(k P_w)|^2 + |Q_w|^2)
    double nq_product(const MollifierParams& params, std::uint32_t j) const {
        double prod = 1.0;
        for (unsigned w = 0; w < windows; ++w)
            prod *= std::norm(truncated_exp(params.ell[w], params.k * pw[w][j])) +
                    std::norm(q_factor(params, w + 1, pw[w][j]));
        return prod;
    }
};

}  // namespace detail

// First Holder chain: |sum* L N(t,chi,k-1) N(-t,conj chi,k)| against the
// branch-dependent product of direct character sums, constant exactly 1.
inline InequalityReport lemma21_check(const PrimeModulus& mod, const LVector& lv,
                                      const MollifierParams& params) {
    const double k = params.k;
    if (!(k > 0.0) || k == 1.0)
        throw std::invalid_argument("lemma21_check: k must be positive and != 1");
    const detail::MollifierTable table(params, mod, lv.point.t);

    cd lhs{0.0, 0.0};
    double sum_l2k = 0.0;   // sum |L|^{2k}
    double sum_l2n = 0.0;   // sum |L|^2 |N(t, chi, k-1)|^2
    double sum_nq = 0.0;    // sum prod (|N_j(k)|^2 + |Q_j|^2)
    for (std::uint32_t j = 1; j <= mod.phi_star; ++j) {
        const cd l = lv.value(j);
        const cd n_km1 = table.n_full(params, j, k - 1.0);
        const cd n_k = table.n_full(params, j, k);
        lhs += l * n_km1 * std::conj(n_k);
        sum_l2k += std::pow(std::norm(l), k);
        sum_l2n += std::norm(l) * std::norm(n_km1);
        sum_nq += table.nq_product(params, j);
    }

    InequalityReport report;
    report.lhs = std::abs(lhs);
    if (k < 1.0) {
        report.rhs_factors = {{sum_l2k, 0.5}, {sum_l2n, (1.0 - k) / 2.0}, {sum_nq, k / 2.0}};
    } else {
        report.rhs_factors = {{sum_l2k, 1.0 / (2.0 * k)}, {sum_nq, (2.0 * k - 1.0) / (2.0 * k)}};
    }
    report.rhs = 1.0;
    for (const auto& [value, exponent] : report.rhs_factors)
        report.rhs *= std::pow(value, exponent);
    report.holds = report.lhs <= report.rhs;
    report.slack_ratio = report.rhs / report.lhs;
    return report;
}

// Second chain (0 < k < 1): sum* |L|^{2k} against the v-sum pair; the implied
// constant is unknown, so the report records the slack instead of asserting.
inline InequalityReport lemma22_check(const PrimeModulus& mod, const LVector& lv,
                                      const MollifierParams& params) {
    const double k = params.k;
    if (!(k > 0.0 && k < 1.0))
        throw std::invalid_argument("lemma22_check: requires 0 < k < 1");
    const detail::MollifierTable table(params, mod, lv.point.t);

    double lhs = 0.0;
    double sum_a = 0.0;  // sum |L|^2 * vsum(k-1)
    double sum_b = 0.0;  // sum vsum(k)
    for (std::uint32_t j = 1; j <= mod.phi_star; ++j) {
        lhs += std::pow(std::norm(lv.value(j)), k);
        sum_a += std::norm(lv.value(j)) * table.vsum(params, j, k - 1.0);
        sum_b += table.vsum(params, j, k);
    }

    InequalityReport report;
    report.lhs = lhs;
    report.rhs_factors = {{sum_a, k}, {sum_b, 1.0 - k}};
    report.rhs = std::pow(sum_a, k) * std::pow(sum_b, 1.0 - k);
    report.slack_ratio = report.rhs / report.lhs;
    report.holds = std::isfinite(report.slack_ratio) && report.slack_ratio > 0.0;
    return report;
}

// ---------------------------------------------------------------------------
// Diagonal main term and bounded-ratio checks
// ---------------------------------------------------------------------------

// phi*(q) sum_{a m = b, m <= X} x_a y_b / sqrt(a b m) with x, y the expanded
// mollifier coefficients at alpha = k-1 and alpha = k; since b = a m the
// weight collapses to 1/b.  Exact arithmetic over the two coefficient maps.
inline double prop24_diagonal(const MollifierParams& params, double x_limit,
                              std::size_t support_cap = default_support_cap) {
    const auto xs = expand_coefficients(params, params.k - 1.0, support_cap);
    const auto ys = expand_coefficients(params, params.k, support_cap);
    double sum = 0.0;
    for (const auto& [b, yb] : ys.coeffs) {
        double inner = 0.0;
        for (const auto& [a, xa] : xs.coeffs) {
            if (a > b || b % a != 0) continue;
            if (static_cast<double>(b / a) > x_limit) continue;
            inner += xa;
        }
        sum += yb * inner / static_cast<double>(b);
    }
    return static_cast<double>(params.q - 2) * sum;
}

struct Prop25Report {
    unsigned v = 0;
    unsigned ell_v1 = 0;          // 0 when v = R (no trailing Q block)
    double direct_sum = 0.0;      // sum* |L|^2 prod_{j<=v}|N_j(k-1)|^2 |Q_{v+1}|^2
    double reference = 0.0;       // phi*(q) (log q)^{k^2}
    double ratio = 0.0;
    double coeff_gcd_sum = 0.0;   // sum_{a,b} (a,b) u_a u_b / (a b)
    double s1s2_estimate = 0.0;   // main-term prediction for direct_sum
    double scaling_factor = 0.0;  // (12/ell)^{2 r_k ell} ((r_k ell)!)^2
};

inline Prop25Report prop25_check(const PrimeModulus& mod, const LVector& lv,
                                 const MollifierParams& params, unsigned v,
                                 PrecisionPolicy policy = {},
                                 std::size_t support_cap = default_support_cap) {
    const double k = params.k;
    if (!(k > 0.0 && k < 1.0))
        throw std::invalid_argument("prop25_check: requires 0 < k < 1");
    if (v > params.window_count())
        throw std::invalid_argument("prop25_check: v out of range");

    Prop25Report report;
    report.v = v;
    report.reference = reference_scale(mod, k);

    const detail::MollifierTable table(params, mod, lv.point.t);
    double direct = 0.0;
    for (std::uint32_t j = 1; j <= mod.phi_star; ++j) {
        double block = (v == params.window_count())
                           ? 1.0
                           : std::norm(q_factor(params, v + 1, table.pw[v][j]));
        for (unsigned w = 0; w < v; ++w)
            block *= std::norm(truncated_exp(params.ell[w], (k - 1.0) * table.pw[w][j]));
        direct += std::norm(lv.value(j)) * block;
    }
    report.direct_sum = direct;
    report.ratio = direct / report.reference;

    double scale = 1.0;
    if (v < params.window_count()) {
        report.ell_v1 = params.ell[v];
        const unsigned m = params.r_k * params.ell[v];
        const double base = std::pow(12.0 / static_cast<double>(params.ell[v]),
                                     2.0 * static_cast<double>(m));
        const double mfact = detail::factorial_checked(m);
        scale = base * mfact * mfact;
    }
    report.scaling_factor = scale;

    const auto u = normalized_vblock_coefficients(params, v, support_cap);
    const cd s2 = detail::s2_block(mod, lv.point.t, policy);
    double gcd_sum = 0.0;
    double weighted = 0.0;
    for (const auto& [a, ua] : u.coeffs) {
        for (const auto& [b, ub] : u.coeffs) {
            const std::uint64_t d = std::gcd(a, b);
            const double w = static_cast<double>(d) * ua * ub /
                             (static_cast<double>(a) * static_cast<double>(b));
            gcd_sum += w;
            const double s1 = detail::s1_block(mod, std::log(static_cast<double>(a / d)),
                                               std::log(static_cast<double>(b / d)));
            weighted += w * (s1 + s2.real());
        }
    }
    report.coeff_gcd_sum = gcd_sum;
    report.s1s2_estimate = scale * weighted;
    return report;
}

struct Prop26Report {
    double prod_sum = 0.0;   // sum* prod_j (|N_j(k)|^2 + |Q_j|^2)
    double vsum = 0.0;       // sum* sum_v prod_{j<=v} |N_j(k)|^2 |Q_{v+1}|^2
    double reference = 0.0;
    double ratio_prod = 0.0;
    double ratio_vsum = 0.0;
};

inline Prop26Report prop26_check(const PrimeModulus& mod, const LVector& lv,
                                 const MollifierParams& params) {
    const double k = params.k;
    if (!(k > 0.0) || k == 1.0)
        throw std::invalid_argument("prop26_check: k must be positive and != 1");
    const detail::MollifierTable table(params, mod, lv.point.t);

    Prop26Report report;
    report.reference = reference_scale(mod, k);
    for (std::uint32_t j = 1; j <= mod.phi_star; ++j) {
        report.prod_sum += table.nq_product(params, j);
        report.vsum += table.vsum(params, j, k);
    }
    report.ratio_prod = report.prod_sum / report.reference;
    report.ratio_vsum = report.vsum / report.reference;
    return report;
}

// ---------------------------------------------------------------------------
// Scaling sweep
// ---------------------------------------------------------------------------

struct SweepResult {
    std::vector<SweepRow> rows;
    std::vector<std::string> errors;  // per-row failures, isolated
};

inline SweepResult sweep(const std::vector<std::uint32_t>& q_list,
                         const std::vector<double>& k_list, const std::vector<double>& t_list,
                         LMethod method = LMethod::reference, double epsilon0 = 0.05,
                         PrecisionPolicy policy = {}, unsigned workers = 0) {
    SweepResult result;

    struct Slot {
        std::uint32_t q;
        double t;
        std::optional<LVector> lv;
        std::string error;
    };
    std::vector<Slot> slots;
    std::vector<std::optional<PrimeModulus>> moduli(q_list.size());
    for (std::size_t qi = 0; qi < q_list.size(); ++qi) {
        try {
            moduli[qi] = build_modulus(q_list[qi]);
        } catch (const std::exception& e) {
            moduli[qi] = std::nullopt;
            result.errors.push_back("q=" + std::to_string(q_list[qi]) + ": " + e.what());
        }
        for (double t : t_list)
            slots.push_back({q_list[qi], t, std::nullopt, ""});
    }

    // Heavy part: one LVector per (q, t); deterministic slot-indexed writes.
    parallel_for(slots.size(), workers, [&](std::size_t i) {
        auto& slot = slots[i];
        const std::size_t qi = i / t_list.size();
        if (!moduli[qi].has_value()) return;
        try {
            slot.lv = l_all(*moduli[qi], CriticalPoint{slot.t, epsilon0}, method, 0.0, policy, 1);
        } catch (const std::exception& e) {
            slot.error = e.what();
        }
    });

    for (const auto& slot : slots)
        if (!slot.error.empty())
            result.errors.push_back("q=" + std::to_string(slot.q) +
                                    " t=" + std::to_string(slot.t) + ": " + slot.error);

    for (std::size_t qi = 0; qi < q_list.size(); ++qi) {
        for (double k : k_list) {
            for (std::size_t ti = 0; ti < t_list.size(); ++ti) {
                const auto& slot = slots[qi * t_list.size() + ti];
                if (!moduli[qi].has_value() || !slot.lv.has_value()) continue;
                try {
                    SweepRow row;
                    row.q = slot.q;
                    row.k = k;
                    row.t = slot.t;
                    row.moment = moment(*slot.lv, k);
                    row.normalizer = reference_scale(*moduli[qi], k);
                    row.ratio = row.moment / row.normalizer;
                    row.admissible = slot.lv->admissible;
                    result.rows.push_back(row);
                } catch (const std::exception& e) {
                    result.errors.push_back("q=" + std::to_string(slot.q) +
                                            " k=" + std::to_string(k) + ": " + e.what());
                }
            }
        }
    }
    return result;
}

}  // namespace critline
