#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "critline/primes.hpp"
#include "critline/characters.hpp"

using namespace critline;

namespace {

// Trial-division oracle, independent of the sieve.
int count_primes_trial(int limit) {
    int count = 0;
    for (int n = 2; n <= limit; ++n) {
        bool prime = true;
        for (int d = 2; d * d <= n; ++d)
            if (n % d == 0) { prime = false; break; }
        if (prime) ++count;
    }
    return count;
}

// Brute-force multiplicative order of g mod q.
std::uint64_t order_mod(std::uint64_t g, std::uint64_t q) {
    std::uint64_t x = g % q, ord = 1;
    while (x != 1) { x = x * g % q; ++ord; }
    return ord;
}

}  // namespace

TEST_CASE("sieve_primes edge cases") {
    CHECK(sieve_primes(0).empty());
    CHECK(sieve_primes(1).empty());
    CHECK(sieve_primes(10) == std::vector<std::uint32_t>{2, 3, 5, 7});
}

TEST_CASE("sieve_primes counts match trial division") {
    CHECK(sieve_primes(100).size() == static_cast<std::size_t>(count_primes_trial(100)));
    CHECK(sieve_primes(100).size() == 25);
    CHECK(sieve_primes(1000).size() == static_cast<std::size_t>(count_primes_trial(1000)));
    const auto primes = sieve_primes(500);
    CHECK(std::is_sorted(primes.begin(), primes.end()));
}

TEST_CASE("primitive_root smallest generator") {
    CHECK(primitive_root(5) == 2);
    CHECK(primitive_root(7) == 3);
    CHECK(primitive_root(11) == 2);
    for (std::uint32_t q : {5u, 7u, 11u, 13u, 101u, 211u}) {
        const std::uint32_t g = primitive_root(q);
        CHECK(order_mod(g, q) == q - 1);
        // smallest: everything below g has smaller order
        for (std::uint32_t h = 2; h < g; ++h) CHECK(order_mod(h, q) < q - 1);
    }
    CHECK_THROWS_AS(primitive_root(100), std::invalid_argument);
}

TEST_CASE("build_modulus dlog table") {
    const auto mod = build_modulus(5);
    CHECK(mod.g == 2);
    CHECK(mod.phi == 4);
    CHECK(mod.phi_star == 3);
    // powers of 2 mod 5: 1, 2, 4, 3
    CHECK(mod.dlog[1] == 0);
    CHECK(mod.dlog[2] == 1);
    CHECK(mod.dlog[4] == 2);
    CHECK(mod.dlog[3] == 3);

    const auto mod7 = build_modulus(7);
    CHECK(mod7.g == 3);
    CHECK(mod7.dlog[6] == 3);  // 3^3 = 27 = 6 (mod 7)
}

TEST_CASE("build_modulus round trip g^dlog[n] == n") {
    for (std::uint32_t q : {5u, 7u, 101u, 1009u}) {
        const auto mod = build_modulus(q);
        for (std::uint32_t n = 1; n < q; ++n)
            CHECK(pow_mod(mod.g, mod.dlog[n], q) == n);
    }
}

TEST_CASE("build_modulus rejects bad input") {
    CHECK_THROWS_AS(build_modulus(6), std::invalid_argument);
    CHECK_THROWS_AS(build_modulus(3), std::invalid_argument);      // below minimum
    CHECK_THROWS_AS(build_modulus(1009, 500), std::invalid_argument);  // table budget
    CHECK_THROWS_AS(build_modulus_with_root(7, 2), std::invalid_argument);  // 2 has order 3 mod 7
}
