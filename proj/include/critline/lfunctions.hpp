#pragma once

// Dirichlet L-functions on the critical line, two routes:
//
//  - l_truncated: the plain Dirichlet sum cut at length X; its error decays
//    like sqrt(q) log(q) (|t|+1) / sqrt(X).
//  - l_reference: the Hurwitz decomposition
//        L(s, chi) = q^{-s} sum_{a=1}^{q-1} chi(a) zeta(s, a/q),
//    exact up to special-function error, and vectorizable across the whole
//    character group: one pass of q-1 Hurwitz evaluations plus a single
//    group DFT yields every L(s, chi_j) at once.
//
// The principal character is excluded throughout; for prime q every
// remaining character is primitive.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "critline/characters.hpp"
#include "critline/parallel.hpp"
#include "critline/special_functions.hpp"

namespace critline {

struct CriticalPoint {
    double t = 0.0;
    double epsilon0 = 0.05;  // admissibility exponent margin, in (0, 1/4)

    cd s() const { return cd{0.5, t}; }
    // |t| <= q^{1/4 - epsilon0}; inadmissible points are flagged, not rejected.
    bool admissible(std::uint32_t q) const {
        return std::abs(t) <= std::pow(static_cast<double>(q), 0.25 - epsilon0);
    }
};

enum class LMethod { reference, truncated };

struct LVector {
    std::uint32_t q = 0;
    CriticalPoint point;
    LMethod method = LMethod::reference;
    double truncation = 0.0;  // X used when method == truncated
    bool admissible = true;
    std::vector<cd> values;   // index j-1 holds L(1/2+it, chi_j), j = 1..q-2

    const cd& value(std::uint32_t j) const {
        if (j == 0 || j > values.size())
            throw std::out_of_range("LVector::value: index outside 1..q-2");
        return values[j - 1];
    }
};

namespace detail {

struct KahanSum {
    cd sum{0.0, 0.0};
    cd carry{0.0, 0.0};
    void add(cd term) {
        const cd y = term - carry;
        const cd t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

inline void require_nonprincipal(const PrimeModulus& mod, std::uint32_t j) {
    if (j == 0) throw std::invalid_argument("principal character excluded");
    if (j >= mod.phi) throw std::invalid_argument("character index out of range");
}

}  // namespace detail

// Default truncation length q^{3/2} (|t|+1).
inline double default_truncation(std::uint32_t q, double t) {
    return std::pow(static_cast<double>(q), 1.5) * (std::abs(t) + 1.0);
}

inline cd l_truncated(const PrimeModulus& mod, std::uint32_t j, CriticalPoint point, double x) {
    detail::require_nonprincipal(mod, j);
    if (x < 1.0) throw std::invalid_argument("l_truncated: X must be >= 1");
    detail::KahanSum sum;
    const cd minus_s = -point.s();
    for (std::uint64_t m = 1; m <= static_cast<std::uint64_t>(x); ++m) {
        if (m % mod.q == 0) continue;
        sum.add(char_value(mod, {j}, m) * detail::pow_real(static_cast<double>(m), minus_s));
    }
    return sum.sum;
}

// All L(s, chi_j) for j = 0..q-2 at arbitrary s != 1 (entry 0 is the
// principal index and is not meaningful; callers slice it away).
inline std::vector<cd> lvector_at(const PrimeModulus& mod, cd s,
                                  PrecisionPolicy policy = {}, unsigned workers = 0) {
    std::vector<cd> by_residue(mod.q, cd{0.0, 0.0});
    parallel_for(mod.q - 1, workers, [&](std::size_t i) {
        const std::uint32_t a = static_cast<std::uint32_t>(i) + 1;
        by_residue[a] = hurwitz_zeta(s, static_cast<double>(a) / mod.q, policy);
    });
    auto sums = all_character_sums(mod, by_residue);
    const cd scale = detail::pow_real(static_cast<double>(mod.q), -s);
    for (auto& v : sums) v *= scale;
    return sums;
}

inline cd l_reference(const PrimeModulus& mod, std::uint32_t j, CriticalPoint point,
                      PrecisionPolicy policy = {}) {
    detail::require_nonprincipal(mod, j);
    const cd s = point.s();
    detail::KahanSum sum;
    for (std::uint32_t a = 1; a < mod.q; ++a)
        sum.add(char_value(mod, {j}, a) * hurwitz_zeta(s, static_cast<double>(a) / mod.q, policy));
    return detail::pow_real(static_cast<double>(mod.q), -s) * sum.sum;
}

// Truncated sums for every character at once: bin m^{-s} by residue class,
// then one group DFT.
inline std::vector<cd> truncated_all(const PrimeModulus& mod, cd s, double x) {
    if (x < 1.0) throw std::invalid_argument("truncated_all: X must be >= 1");
    std::vector<cd> by_residue(mod.q, cd{0.0, 0.0});
    for (std::uint64_t m = 1; m <= static_cast<std::uint64_t>(x); ++m) {
        const std::uint64_t r = m % mod.q;
        if (r == 0) continue;
        by_residue[r] += detail::pow_real(static_cast<double>(m), -s);
    }
    return all_character_sums(mod, by_residue);
}

inline LVector l_all(const PrimeModulus& mod, CriticalPoint point,
                     LMethod method = LMethod::reference, double truncation = 0.0,
                     PrecisionPolicy policy = {}, unsigned workers = 0) {
    LVector lv;
    lv.q = mod.q;
    lv.point = point;
    lv.method = method;
    lv.admissible = point.admissible(mod.q);

    std::vector<cd> full;
    if (method == LMethod::reference) {
        full = lvector_at(mod, point.s(), policy, workers);
    } else {
        lv.truncation = truncation > 0.0 ? truncation : default_truncation(mod.q, point.t);
        full = truncated_all(mod, point.s(), lv.truncation);
    }
    lv.values.assign(full.begin() + 1, full.begin() + static_cast<std::ptrdiff_t>(mod.phi_star) + 1);
    return lv;
}

struct AfeProfileRow {
    double x = 0.0;
    double median_error = 0.0;
};

struct AfeProfile {
    std::vector<AfeProfileRow> rows;
    double slope = 0.0;   // least-squares slope of log(err) vs log(X)
    bool has_slope = false;
};

// Median truncation error over all non-principal characters, per X, plus the
// fitted log-log decay rate.
inline AfeProfile afe_error_profile(const PrimeModulus& mod, CriticalPoint point,
                                    const std::vector<double>& x_grid,
                                    PrecisionPolicy policy = {}, unsigned workers = 0) {
    if (!std::is_sorted(x_grid.begin(), x_grid.end()))
        throw std::invalid_argument("afe_error_profile: X grid must ascend");
    AfeProfile profile;
    const auto reference = lvector_at(mod, point.s(), policy, workers);
    for (double x : x_grid) {
        const auto truncated = truncated_all(mod, point.s(), x);
        std::vector<double> errs;
        errs.reserve(mod.phi_star);
        for (std::uint32_t j = 1; j <= mod.phi_star; ++j)
            errs.push_back(std::abs(truncated[j] - reference[j]));
        std::sort(errs.begin(), errs.end());
        const std::size_t n = errs.size();
        const double median =
            (n % 2 == 1) ? errs[n / 2] : 0.5 * (errs[n / 2 - 1] + errs[n / 2]);
        profile.rows.push_back({x, median});
    }
    if (profile.rows.size() >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double n = static_cast<double>(profile.rows.size());
        for (const auto& row : profile.rows) {
            const double lx = std::log(row.x);
            const double ly = std::log(row.median_error);
            sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
        }
        profile.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        profile.has_slope = true;
    }
    return profile;
}

}  // namespace critline
