#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "sint/bigarith.hpp"

using namespace sint;

namespace {

IntPolynomial random_poly(std::mt19937_64& rng, int max_deg, long bound) {
    std::uniform_int_distribution<int> deg(0, max_deg);
    std::uniform_int_distribution<long> coef(-bound, bound);
    std::vector<Integer> c(static_cast<std::size_t>(deg(rng)) + 1);
    for (auto& x : c) x = coef(rng);
    if (c.back() == 0) c.back() = 1;
    return IntPolynomial(std::move(c));
}

}  // namespace

TEST_CASE("factor_integer small cases") {
    auto f = factor_integer(91);
    CHECK(f.sign == 1);
    CHECK(f.prime_powers.size() == 2);
    CHECK(f.valuation(7) == 1);
    CHECK(f.valuation(13) == 1);

    auto u = factor_integer(-1);
    CHECK(u.sign == -1);
    CHECK(u.prime_powers.empty());

    // Phi_6(2) = 4 - 2 + 1 = 3
    auto phi6 = factor_integer(cyclotomic(6).evaluate(Integer(2)));
    CHECK(phi6.primes_joined() == "3");

    CHECK_THROWS_AS(factor_integer(0), DomainError);
}

TEST_CASE("factor_integer ordering and prime powers") {
    Integer n = Integer(2) * 2 * 2 * 1000003 * 1000003 * 999983;
    auto f = factor_integer(-n);
    CHECK(f.sign == -1);
    CHECK(f.primes_joined() == "2^3;999983;1000003^2");
    CHECK(f.value() == -n);
}

TEST_CASE("factor_integer splits a semiprime above the trial bound") {
    Integer p("1000000000039"), q("1000000000061");
    auto f = factor_integer(p * q);
    CHECK(f.valuation(p) == 1);
    CHECK(f.valuation(q) == 1);
}

TEST_CASE("factor_integer round-trips 10^4 random inputs below 2^96") {
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(96);
    for (int i = 0; i < 10000; ++i) {
        Integer n = rng.get_z_bits(96);
        if (n == 0) n = 1;
        auto f = factor_integer(n);
        REQUIRE(f.value() == n);
        for (const auto& [p, e] : f.prime_powers) REQUIRE(mpz_probab_prime_p(p.get_mpz_t(), 40) > 0);
    }
}

TEST_CASE("resultant examples") {
    CHECK(abs(resultant(IntPolynomial{-2, 1}, IntPolynomial{-3, 1})) == 1);
    CHECK(resultant(IntPolynomial{-2, 1}, IntPolynomial{1, 0, 1}) == 5);
    // beta = 1/2 against zeta = 1: 2*(-1) - (-1)*1 = -1
    CHECK(abs(resultant(IntPolynomial{-1, 2}, IntPolynomial{-1, 1})) == 1);
    CHECK_THROWS_AS(resultant(IntPolynomial{}, IntPolynomial{1, 1}), DomainError);
}

TEST_CASE("resultant matches the Sylvester determinant and is antisymmetric") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 400; ++t) {
        IntPolynomial f = random_poly(rng, 6, 20);
        IntPolynomial g = random_poly(rng, 6, 20);
        const Integer r = resultant(f, g);
        REQUIRE(r == oracle::sylvester_resultant(f, g));
        const int sgn = (f.degree() * g.degree()) % 2 ? -1 : 1;
        REQUIRE(r == sgn * resultant(g, f));
    }
}

TEST_CASE("resultant with a common factor vanishes") {
    IntPolynomial common{1, 1, 1};
    CHECK(resultant(common * IntPolynomial{3, 2}, common * IntPolynomial{-1, 0, 5}) == 0);
}

TEST_CASE("discriminant") {
    CHECK(discriminant(IntPolynomial{-1, -1, 1}) == 5);
    CHECK(discriminant(IntPolynomial{1, 0, 1}) == -4);
    // x^3 - x: 4 for a=-1, b=0 -> -4a^3 - 27b^2 = 4
    CHECK(discriminant(IntPolynomial{0, -1, 0, 1}) == 4);
}

TEST_CASE("cyclotomic examples") {
    CHECK(cyclotomic(1) == IntPolynomial{-1, 1});
    CHECK(cyclotomic(4) == IntPolynomial{1, 0, 1});
    CHECK(cyclotomic(6).evaluate(Integer(2)) == 3);
    CHECK(cyclotomic(105).coeff(7) == -2);
    CHECK_THROWS_AS(cyclotomic(0), DomainError);
}

TEST_CASE("cyclotomic agrees with iterated division and prod_{d|n} Phi_d = x^n - 1") {
    for (std::uint64_t n = 1; n <= 200; ++n) {
        const IntPolynomial phi = cyclotomic(n);
        REQUIRE(phi == oracle::cyclotomic_by_division(n));
        REQUIRE(phi.degree() == static_cast<int>(euler_phi(n)));
        IntPolynomial prod{1};
        for (auto d : divisors(n)) prod *= cyclotomic(d);
        REQUIRE(prod == IntPolynomial::x_pow_minus_one(n));
    }
}

TEST_CASE("gcd and exact division") {
    IntPolynomial a = IntPolynomial{1, 1} * IntPolynomial{-2, 3} * IntPolynomial{5, 0, 1};
    IntPolynomial b = IntPolynomial{-2, 3} * IntPolynomial{5, 0, 1} * IntPolynomial{7};
    CHECK(gcd(a, b) == IntPolynomial{-2, 3} * IntPolynomial{5, 0, 1});
    CHECK(divide_exact(a, IntPolynomial{1, 1}) == IntPolynomial{-2, 3} * IntPolynomial{5, 0, 1});
    CHECK_THROWS_AS(divide_exact(a, IntPolynomial{1, 2}), DomainError);
}

TEST_CASE("strip_primes and valuation") {
    std::map<Integer, unsigned> found;
    CHECK(strip_primes(Integer(3 * 3 * 7 * 11), {Integer(3), Integer(5)}, &found) == 77);
    CHECK(found.at(Integer(3)) == 2);
    CHECK(found.count(Integer(5)) == 0);
    CHECK(valuation(Integer(250), Integer(5)) == 3);
}

TEST_CASE("mod-p distinct degree factorization") {
    // x^4 + 1 splits mod every prime; mod 3 into two quadratics.
    auto c = modp::distinct_degree_counts(modp::reduce(IntPolynomial{1, 0, 0, 0, 1}, 3), 3);
    CHECK(c[2] == 2);
    // Phi_5 is irreducible mod 2.
    auto d = modp::distinct_degree_counts(modp::reduce(cyclotomic(5), 2), 2);
    CHECK(d[4] == 1);
    // x^3 - x = x(x-1)(x+1) mod 5
    auto e = modp::distinct_degree_counts(modp::reduce(IntPolynomial{0, -1, 0, 1}, 5), 5);
    CHECK(e[1] == 3);
}

TEST_CASE("arithmetic helpers") {
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(300) == 80);
    CHECK(moebius(30) == -1);
    CHECK(moebius(12) == 0);
    CHECK(divisors(12) == std::vector<std::uint64_t>{1, 2, 3, 4, 6, 12});
    CHECK(IntPolynomial{-1, 0, 3}.to_string() == "3*x^2 - 1");
}
