#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <random>

#include "critline/characters.hpp"

using namespace critline;

namespace {

// Naive per-character oracle: loops over char_value, no transform involved.
std::vector<cd> naive_character_sums(const PrimeModulus& mod,
                                     const std::map<std::uint64_t, cd>& coeffs) {
    std::vector<cd> out(mod.phi, cd{0.0, 0.0});
    for (std::uint32_t j = 0; j < mod.phi; ++j)
        for (const auto& [n, c] : coeffs) out[j] += c * char_value(mod, {j}, n);
    return out;
}

double max_abs_diff(const std::vector<cd>& a, const std::vector<cd>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace

TEST_CASE("char_value basics mod 5") {
    const auto mod = build_modulus(5);
    CHECK(std::abs(char_value(mod, {1}, 2) - cd{0.0, 1.0}) < 1e-15);  // dlog[2]=1, e^{2pi i/4} = i
    CHECK(std::abs(char_value(mod, {0}, 3) - cd{1.0, 0.0}) < 1e-15);
    CHECK(char_value(mod, {1}, 5) == cd{0.0, 0.0});
    CHECK(char_value(mod, {1}, 10) == cd{0.0, 0.0});
    CHECK(std::abs(char_value(mod, {1}, 7) - char_value(mod, {1}, 2)) < 1e-15);  // periodicity
}

TEST_CASE("character multiplicativity") {
    const auto mod = build_modulus(101);
    std::mt19937 rng(7);
    std::uniform_int_distribution<std::uint64_t> pick(1, 5000);
    for (int trial = 0; trial < 200; ++trial) {
        const std::uint64_t m = pick(rng), n = pick(rng);
        const std::uint32_t j = static_cast<std::uint32_t>(rng() % mod.phi);
        const cd lhs = char_value(mod, {j}, m * n);
        const cd rhs = char_value(mod, {j}, m) * char_value(mod, {j}, n);
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("character orthogonality") {
    for (std::uint32_t q : {101u, 1009u}) {
        const auto mod = build_modulus(q);
        std::mt19937 rng(11);
        std::uniform_int_distribution<std::uint64_t> pick(1, q - 1);
        for (int trial = 0; trial < 40; ++trial) {
            const std::uint64_t m = pick(rng), n = pick(rng);
            cd sum{0.0, 0.0};
            for (std::uint32_t j = 0; j < mod.phi; ++j)
                sum += char_value(mod, {j}, m) * std::conj(char_value(mod, {j}, n));
            const double expected = (m % q == n % q) ? static_cast<double>(q - 1) : 0.0;
            CHECK(std::abs(sum - expected) < 1e-9);
        }
    }
}

TEST_CASE("all_character_sums trivial coefficient sets") {
    const auto mod = build_modulus(5);
    const auto ones = all_character_sums(mod, std::map<std::uint64_t, cd>{{1, cd{1.0, 0.0}}});
    REQUIRE(ones.size() == 4);
    for (const auto& v : ones) CHECK(std::abs(v - cd{1.0, 0.0}) < 1e-12);

    // coeffs {2: 1}: entry j is chi_j(2) = i^j
    const auto two = all_character_sums(mod, std::map<std::uint64_t, cd>{{2, cd{1.0, 0.0}}});
    CHECK(std::abs(two[0] - cd{1.0, 0.0}) < 1e-12);
    CHECK(std::abs(two[1] - cd{0.0, 1.0}) < 1e-12);
    CHECK(std::abs(two[2] - cd{-1.0, 0.0}) < 1e-12);
    CHECK(std::abs(two[3] - cd{0.0, -1.0}) < 1e-12);
}

TEST_CASE("all_character_sums equals naive loop on random coefficients") {
    // 101 is not adjacent to a power of two, 211 exercises Bluestein at N=210,
    // 257 exercises the radix-2 path at N=256.
    for (std::uint32_t q : {101u, 211u, 257u}) {
        const auto mod = build_modulus(q);
        std::mt19937 rng(q);
        std::uniform_real_distribution<double> coin(-1.0, 1.0);
        std::map<std::uint64_t, cd> coeffs;
        for (std::uint64_t n = 1; n < 3ull * q; ++n)
            if (rng() % 3 == 0) coeffs[n] = cd{coin(rng), coin(rng)};
        coeffs[5ull * q] = cd{3.0, -2.0};  // multiple of q: must be dropped

        const auto fast = all_character_sums(mod, coeffs);
        const auto slow = naive_character_sums(mod, coeffs);
        double scale = 0.0;
        for (const auto& v : slow) scale = std::max(scale, std::abs(v));
        CHECK(max_abs_diff(fast, slow) / scale < 1e-10);
    }
}

TEST_CASE("sum multiset independent of primitive root choice") {
    const std::uint32_t q = 13;
    const auto mod_a = build_modulus(q);
    const auto g2 = next_primitive_root(q, mod_a.g);
    const auto mod_b = build_modulus_with_root(q, g2);

    std::map<std::uint64_t, cd> coeffs;
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> coin(-1.0, 1.0);
    for (std::uint64_t n = 1; n < q; ++n) coeffs[n] = cd{coin(rng), coin(rng)};

    const auto sums_a = all_character_sums(mod_a, coeffs);
    const auto sums_b = all_character_sums(mod_b, coeffs);

    // g_a = g_b^c with c = dlog_b(g_a), so chi^{(b)}_j = chi^{(a)}_{j*c mod (q-1)}.
    const std::uint64_t c = mod_b.dlog[mod_a.g];
    for (std::uint32_t j = 0; j < q - 1; ++j) {
        const std::uint32_t j_a = static_cast<std::uint32_t>(j * c % (q - 1));
        CHECK(std::abs(sums_b[j] - sums_a[j_a]) < 1e-12);
    }
}

TEST_CASE("conjugate_index pairs characters with their conjugates") {
    const auto mod = build_modulus(11);
    for (std::uint32_t j = 0; j < mod.phi; ++j) {
        const std::uint32_t jc = conjugate_index(mod, j);
        for (std::uint64_t n = 1; n < 11; ++n)
            CHECK(std::abs(char_value(mod, {jc}, n) - std::conj(char_value(mod, {j}, n))) < 1e-14);
    }
}
