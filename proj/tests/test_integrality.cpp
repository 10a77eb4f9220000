#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "sint/integrality.hpp"

using namespace sint;

namespace {

std::vector<std::uint64_t> orders(const std::vector<ContactReport>& v) {
    std::vector<std::uint64_t> out;
    for (const auto& r : v) out.push_back(r.n);
    return out;
}

// Phi_n(b) = prod_{d | n} (b^d - 1)^mu(n/d), as an exact rational product.
Integer cyclotomic_value_mobius(std::uint64_t n, long b) {
    Rational v = 1;
    for (std::uint64_t d = 1; d <= n; ++d) {
        if (n % d) continue;
        const int mu = moebius(n / d);
        if (mu == 0) continue;
        Integer t;
        mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(b), d);
        t -= 1;
        if (mu > 0)
            v *= t;
        else
            v /= t;
    }
    REQUIRE(v.get_den() == 1);
    return v.get_num();
}

// Norm of g(beta) in Z[x]/(x^2 + c1 x + c0): reduce g modulo the quadratic and
// take N(a + b x) = a^2 - a b c1 + b^2 c0.
Integer quadratic_norm(const IntPolynomial& g, const Integer& c1, const Integer& c0) {
    Integer a = 0, b = 0;  // running value a + b x
    for (std::size_t i = g.coefficients().size(); i-- > 0;) {
        // (a + b x) * x = a x + b x^2 = -b c0 + (a - b c1) x
        const Integer na = -b * c0 + g.coeff(i);
        const Integer nb = a - b * c1;
        a = na, b = nb;
    }
    return a * a - a * b * c1 + b * b * c0;
}

}  // namespace

TEST_CASE("contact_primes examples") {
    auto two = AlgebraicNumber::parse("2");
    CHECK(contact_primes(two, 2).contact_primes.primes_joined() == "3");
    CHECK(contact_primes(two, 5).contact_primes.primes_joined() == "31");
    auto half = AlgebraicNumber::parse("1/2");
    auto r = contact_primes(half, 1);
    CHECK(r.contact_primes.prime_powers.empty());
    CHECK(r.resultant == 1);
    CHECK(r.s_integral);
    // Pole at 2: 1/2 meets every orbit above 2 except where the form vanishes.
    CHECK(contact_primes(half, 2).resultant == 3);
    CHECK(contact_primes(AlgebraicNumber::parse("1/4"), 3).resultant == 21);
    CHECK(contact_primes(two, 6).orbit_size == 2);
}

TEST_CASE("contact_primes rejects beta inside the orbit") {
    auto w = AlgebraicNumber::parse("poly:1,1,1;root:1");
    CHECK_THROWS_AS(contact_primes(w, 3), DomainError);
    CHECK_NOTHROW(contact_primes(w, 6));
    CHECK_THROWS_AS(contact_primes(AlgebraicNumber::parse("1"), 1), DomainError);
    CHECK_THROWS_AS(contact_primes(AlgebraicNumber::parse("-1"), 2), DomainError);
}

TEST_CASE("enumerate_s_integral examples") {
    auto two = AlgebraicNumber::parse("2");
    CHECK(orders(enumerate_s_integral(two, PrimeSet(), 6)) == std::vector<std::uint64_t>{1});
    CHECK(orders(enumerate_s_integral(two, PrimeSet::parse("3,inf"), 6)) == std::vector<std::uint64_t>{1, 2, 6});
    CHECK(orders(enumerate_s_integral(AlgebraicNumber::parse("1/2"), PrimeSet(), 1)) ==
          std::vector<std::uint64_t>{1});
    CHECK(enumerate_s_integral(two, PrimeSet(), 0).empty());
}

TEST_CASE("parallel and serial enumeration agree") {
    const std::vector<std::string> betas = {"2", "3/5", "poly:-1,-1,1;root:0", "poly:-2,0,0,1;root:1", "poly:1,1,1;root:0"};
    const std::vector<std::string> sets = {"", "2", "2,3,5,7", "3,7,31"};
    for (const auto& b : betas)
        for (const auto& s : sets) {
            auto beta = AlgebraicNumber::parse(b);
            auto S = PrimeSet::parse(s);
            auto par = enumerate_s_integral(beta, S, 120);
            auto ser = enumerate_s_integral_serial(beta, S, 120);
            REQUIRE(par.size() == ser.size());
            for (std::size_t i = 0; i < par.size(); ++i) {
                CHECK(par[i].n == ser[i].n);
                CHECK(par[i].resultant == ser[i].resultant);
                CHECK(par[i].contact_primes.primes_joined() == ser[i].contact_primes.primes_joined());
            }
        }
}

TEST_CASE("enumeration matches per-orbit contact primes") {
    auto beta = AlgebraicNumber::parse("poly:-1,-1,1;root:0");
    auto S = PrimeSet::parse("2,3,5,11");
    std::set<std::uint64_t> listed;
    for (const auto& r : enumerate_s_integral(beta, S, 80)) listed.insert(r.n);
    for (std::uint64_t n = 1; n <= 80; ++n) {
        auto r = contact_primes(beta, n, S);
        bool inside = r.contact_primes.complete();
        for (const auto& [p, e] : r.contact_primes.prime_powers) inside = inside && S.contains(p);
        CHECK(inside == r.s_integral);
        CHECK(listed.count(n) == (r.s_integral ? 1U : 0U));
    }
}

TEST_CASE("empty contact set is S-integral for every S") {
    auto beta = AlgebraicNumber::parse("poly:-1,-1,1;root:1");
    for (std::uint64_t n = 1; n <= 60; ++n) {
        auto r = contact_primes(beta, n);
        if (!r.contact_primes.prime_powers.empty()) continue;
        for (const char* s : {"", "2", "5,7"}) {
            auto list = orders(enumerate_s_integral(beta, PrimeSet::parse(s), n));
            CHECK(std::find(list.begin(), list.end(), n) != list.end());
        }
    }
}

TEST_CASE("uniformity_report examples") {
    auto two = AlgebraicNumber::parse("2");
    auto u = uniformity_report(two, PrimeSet::parse("3"), 500, 1);
    // Orbits {1, 2, 6}; phi(6) = 2 exceeds 1 * 1^10, one exceptional orbit
    // against the allowance |S_fin| = 1.
    CHECK(u.orders == std::vector<std::uint64_t>{1, 2, 6});
    CHECK(u.count_above_threshold == 1);
    CHECK(u.within_bound);
    CHECK(uniformity_report(two, PrimeSet::parse("3"), 500, 2).count_above_threshold == 0);
    CHECK(u.max_phi == 2);
    CHECK(uniformity_report(two, PrimeSet(), 500).max_phi == 1);
    auto empty = uniformity_report(two, PrimeSet(), 0);
    CHECK(empty.orbit_count == 0);
    CHECK(empty.orders.empty());
}

TEST_CASE("contact primes divide the norm for quadratic integers") {
    for (const IntPolynomial& f : {IntPolynomial{-1, -1, 1}, IntPolynomial{-2, 0, 1}, IntPolynomial{5, 0, 1},
                                   IntPolynomial{1, 3, 1}, IntPolynomial{3, -1, 1}}) {
        auto beta = AlgebraicNumber::from_polynomial(f, 0);
        for (std::uint64_t n = 1; n <= 100; ++n) {
            const Integer norm = quadratic_norm(cyclotomic(n), f.coeff(1), f.coeff(0));
            const Integer res = contact_resultant(f, n);
            CHECK(abs(norm) == res);
            if (norm == 0 || n > 50) continue;
            auto r = contact_primes(beta, n);
            for (const auto& [p, e] : r.contact_primes.prime_powers)
                CHECK(mpz_divisible_p(norm.get_mpz_t(), p.get_mpz_t()));
        }
    }
}

TEST_CASE("resultant valuation detects common roots modulo p") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> deg(1, 3);
    std::uniform_int_distribution<long> coef(-9, 9);
    std::uniform_int_distribution<std::uint64_t> order(1, 30);
    const std::vector<std::uint64_t> primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
    int cases = 0;
    while (cases < 200) {
        std::vector<Integer> c(static_cast<std::size_t>(deg(rng)) + 1);
        for (auto& x : c) x = coef(rng);
        if (c.back() == 0) continue;
        IntPolynomial f = IntPolynomial(c).primitive_part();
        if (f.degree() < 1 || check_irreducible(f) != Irreducibility::irreducible) continue;
        const std::uint64_t n = order(rng);
        const Integer res = contact_resultant(f, n);
        if (res == 0) continue;
        const IntPolynomial phi = cyclotomic(n);
        for (auto p : primes) {
            // Phi_n is monic, so there is no common root at infinity; a
            // dropped leading coefficient of f only removes a root there.
            const auto g = modp::gcd(modp::reduce(f, p), modp::reduce(phi, p), p);
            const bool common = modp::degree(g) > 0;
            CHECK((mpz_divisible_ui_p(res.get_mpz_t(), p) != 0) == common);
        }
        ++cases;
    }
}

TEST_CASE("beta = 2 desk instance up to 10^4") {
    auto two = AlgebraicNumber::parse("2");
    auto list = enumerate_s_integral(two, PrimeSet::parse("3"), 10000);
    CHECK(orders(list) == std::vector<std::uint64_t>{1, 2, 6});
    // Oracle over a smaller range: Moebius product of 2^d - 1.
    for (std::uint64_t n = 1; n <= 400; ++n) {
        const Integer v = cyclotomic_value_mobius(n, 2);
        CHECK(v == contact_resultant(two.minpoly(), n));
        const bool s_int = strip_primes(v, {Integer(3)}) == 1;
        CHECK(s_int == (n == 1 || n == 2 || n == 6));
    }
}

TEST_CASE("the S-integral set for beta = 2 stabilizes") {
    auto two = AlgebraicNumber::parse("2");
    for (const char* s : {"", "3", "3,7", "2,3,5,7", "3,5,7,11,13,31", "2,3,5,7,11,13,17,19,23,29,31,37,41,43,47"}) {
        CAPTURE(s);
        auto S = PrimeSet::parse(s);
        auto list = orders(enumerate_s_integral(two, S, 4000));
        REQUIRE_FALSE(list.empty());
        CHECK(list.back() <= 200);
    }
}

TEST_CASE("root_of_unity_valuation examples") {
    CHECK(root_of_unity_valuation(5, 5).value == Rational(1, 4));
    CHECK(root_of_unity_valuation(25, 5).value == Rational(1, 20));
    CHECK(root_of_unity_valuation(3, 5).value == 0);
    CHECK(root_of_unity_valuation(10, 5).value == 0);
    CHECK(root_of_unity_valuation(8, 2).value == Rational(1, 4));
    CHECK(root_of_unity_valuation(1, 7).infinite);
    CHECK(root_of_unity_valuation(1, 7).to_string() == "inf");
    CHECK_THROWS_AS(root_of_unity_valuation(5, 6), DomainError);
}

TEST_CASE("two_orbit_separation_check examples") {
    auto r3 = two_orbit_separation_check(3, 9);
    CHECK_FALSE(r3.violated);
    CHECK(r3.max_valuation == Rational(1, 2));
    CHECK(r3.m1 == 1);
    CHECK(r3.m2 == 3);
    CHECK_FALSE(two_orbit_separation_check(5, 100).violated);
    auto r2 = two_orbit_separation_check(2, 2);
    CHECK_FALSE(r2.violated);
    CHECK(r2.max_valuation == 1);
    CHECK(r2.pairs_checked == 1);
    CHECK_THROWS_AS(two_orbit_separation_check(4, 10), DomainError);
    CHECK_THROWS_AS(two_orbit_separation_check(3, 1), DomainError);
}

TEST_CASE("separation scan agrees with a direct pair loop") {
    const std::uint64_t N = 24;
    const std::vector<std::uint64_t> primes = {2, 3, 5, 7};
    auto scan = two_orbit_separation_scan(primes, N);
    for (std::size_t s = 0; s < primes.size(); ++s) {
        Rational best = 0;
        for (std::uint64_t m1 = 1; m1 <= N; ++m1)
            for (std::uint64_t a1 = 0; a1 < m1; ++a1) {
                if (std::gcd(a1, m1) != 1) continue;
                for (std::uint64_t m2 = 1; m2 <= N; ++m2)
                    for (std::uint64_t a2 = 0; a2 < m2; ++a2) {
                        if (std::gcd(a2, m2) != 1 || (a1 * m2 == a2 * m1)) continue;
                        // order of exp(2 pi i (a2/m2 - a1/m1))
                        Rational q(Integer(static_cast<unsigned long>(a2)), Integer(static_cast<unsigned long>(m2)));
                        q -= Rational(Integer(static_cast<unsigned long>(a1)), Integer(static_cast<unsigned long>(m1)));
                        q.canonicalize();
                        auto v = root_of_unity_valuation(q.get_den().get_ui(), primes[s]);
                        if (v.value > best) best = v.value;
                    }
            }
        CHECK(scan[s].max_valuation == best);
        CHECK_FALSE(scan[s].violated);
    }
}
