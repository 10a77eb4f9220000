#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "sint/tate.hpp"

using namespace sint;

namespace {

Integer ipow(const Integer& p, unsigned k) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), p.get_mpz_t(), k);
    return r;
}

Integer random_unit(std::mt19937_64& rng, const Integer& p, unsigned N) {
    const Integer m = ipow(p, N);
    for (;;) {
        Integer r = 0;
        for (int i = 0; i < 4; ++i) r = r * Integer(4294967296UL) + Integer(static_cast<unsigned long>(rng() >> 32));
        r %= m;
        if (r % p != 0) return r;
    }
}

PadicNumber random_padic(std::mt19937_64& rng, const Integer& p, unsigned N, int vlo, int vhi) {
    const long v = vlo + static_cast<long>(rng() % static_cast<std::uint64_t>(vhi - vlo + 1));
    return PadicNumber::from_parts(p, v, random_unit(rng, p, N), N);
}

// sum_{d | n} d^k
Integer sigma(unsigned n, unsigned k) {
    Integer s = 0;
    for (unsigned d = 1; d <= n; ++d)
        if (n % d == 0) {
            Integer t;
            mpz_ui_pow_ui(t.get_mpz_t(), d, k);
            s += t;
        }
    return s;
}

// q-expansion a4 = -5 sum sigma3(n) q^n, a6 = -sum (5 sigma3 + 7 sigma5)/12 q^n at an integer q.
std::pair<Integer, Integer> tate_coefficients_expansion(const Integer& q, unsigned terms, const Integer& modulus) {
    Integer a4 = 0, a6 = 0, qn = 1;
    for (unsigned n = 1; n <= terms; ++n) {
        qn *= q;
        a4 -= 5 * sigma(n, 3) * qn;
        const Integer c = 5 * sigma(n, 3) + 7 * sigma(n, 5);
        a6 -= (c / 12) * qn;
    }
    Integer r4, r6;
    mpz_mod(r4.get_mpz_t(), a4.get_mpz_t(), modulus.get_mpz_t());
    mpz_mod(r6.get_mpz_t(), a6.get_mpz_t(), modulus.get_mpz_t());
    return {r4, r6};
}

// Chord-tangent addition on y^2 + xy = x^3 + a4 x + a6 for points with x1 != x2.
std::pair<PadicNumber, PadicNumber> add_points(const TatePoint& P, const TatePoint& Q) {
    const PadicNumber lambda = (Q.Y - P.Y) / (Q.X - P.X);
    const PadicNumber nu = P.Y - lambda * P.X;
    const PadicNumber x3 = lambda * lambda + lambda - P.X - Q.X;
    const PadicNumber y3 = -((lambda + PadicNumber::from_integer(P.X.prime(), 1, 60)) * x3) - nu;
    return {x3, y3};
}

}  // namespace

TEST_CASE("p-adic arithmetic: ultrametric and valuation properties") {
    std::mt19937_64 rng(11);
    const Integer primes[] = {5, 7, 11};
    std::size_t checked = 0;
    for (int i = 0; i < 10000; ++i) {
        const Integer p = primes[i % 3];
        const PadicNumber x = random_padic(rng, p, 20, -3, 6), y = random_padic(rng, p, 20, -3, 6);
        const PadicNumber z = random_padic(rng, p, 20, -3, 6);
        const PadicNumber s = x + y;
        CHECK(s.valuation() >= std::min(x.valuation(), y.valuation()));
        if (x.valuation() != y.valuation()) CHECK(s.valuation() == std::min(x.valuation(), y.valuation()));
        CHECK((x * y).valuation() == x.valuation() + y.valuation());
        CHECK(((x + y) + z).agrees_with(x + (y + z)));
        CHECK(((x + y) * z).agrees_with(x * z + y * z));
        CHECK((x * y / y).agrees_with(x));
        ++checked;
    }
    CHECK(checked == 10000);
}

TEST_CASE("p-adic conversions") {
    const Integer p = 5;
    const PadicNumber third = PadicNumber::from_rational(p, Rational(1, 3), 12);
    CHECK((third * PadicNumber::from_integer(p, 3, 12)).agrees_with(PadicNumber::from_integer(p, 1, 12)));
    const PadicNumber x = PadicNumber::from_rational(p, Rational(7, 250), 10);
    CHECK(x.valuation() == -3);
    CHECK(x.relative_precision() == 10);
    CHECK(PadicNumber::from_rational(p, x.representative(), 10).agrees_with(x));
    CHECK(PadicNumber::from_integer(p, 125, 8).valuation() == 3);
    CHECK((x - x).is_zero());
    CHECK((x - x).valuation() == x.absolute_precision());
    // Precision loss from cancellation.
    const PadicNumber a = PadicNumber::from_integer(p, 1 + 625, 10), b = PadicNumber::from_integer(p, 1, 10);
    CHECK((a - b).valuation() == 4);
    CHECK((a - b).relative_precision() == 6);
    CHECK_THROWS_AS(PadicNumber::zero(p, 10).inverse(), DomainError);
    CHECK_THROWS_AS(PadicNumber::from_parts(p, 0, 10, 5), DomainError);
    for (int a0 = 1; a0 < 7; ++a0) {
        const PadicNumber w = PadicNumber::teichmuller(7, a0, 15);
        CHECK(w.pow(6).agrees_with(PadicNumber::from_integer(7, 1, 15)));
        CHECK((w - PadicNumber::from_integer(7, a0, 15)).valuation() >= 1);
    }
}

TEST_CASE("Tate coefficients match the q-expansion") {
    for (const Integer p : {Integer(5), Integer(7), Integer(11)}) {
        const unsigned N = 25;
        for (const Integer q : {Integer(p), Integer(p * 3), Integer(p * p * 2 + p * p * p)}) {
            const PadicNumber qp = PadicNumber::from_integer(p, q, N);
            const auto [a4, a6] = tate_coefficients(qp, N);
            const Integer modulus = ipow(p, N);
            const auto [e4, e6] = tate_coefficients_expansion(q, N + 2, modulus);
            // The expansion is only known mod p^N.
            CHECK((a4 - PadicNumber::from_integer(p, e4, N)).valuation() >= static_cast<long>(N));
            CHECK((a6 - PadicNumber::from_integer(p, e6, N)).valuation() >= static_cast<long>(N));
        }
    }
    const auto [a4, a6] = tate_coefficients(PadicNumber::from_integer(5, 5, 20), 20);
    CHECK(a4.valuation() == 2);
    CHECK(a6.valuation() == 1);
    CHECK_THROWS_AS(tate_coefficients(PadicNumber::from_integer(3, 3, 20), 20), DomainError);
    CHECK_THROWS_AS(tate_coefficients(PadicNumber::from_integer(2, 2, 20), 20), DomainError);
    CHECK_THROWS_AS(tate_coefficients(PadicNumber::from_integer(5, 2, 20), 20), DomainError);
}

TEST_CASE("Tate points lie on the curve") {
    std::mt19937_64 rng(5);
    std::size_t checked = 0;
    for (const Integer p : {Integer(5), Integer(7)}) {
        for (int i = 0; i < 100; ++i) {
            const unsigned N = 20;
            const int vq = 1 + static_cast<int>(rng() % 3);
            const TateCurve E = make_tate_curve(random_padic(rng, p, N, vq, vq), N);
            PadicNumber u;
            do {
                u = random_padic(rng, p, N, 0, vq - 1);
            } while ((u - PadicNumber::from_integer(p, 1, N)).valuation() > 0);
            const TatePoint P = tate_point(E, u);
            CHECK(tate_residual(E, P).valuation() >= static_cast<long>(N) - 3);
            ++checked;
        }
    }
    CHECK(checked == 200);
}

TEST_CASE("Tate parametrization examples and symmetries") {
    const Integer p = 5;
    // q -> 0: X(u) = u / (1 - u)^2.
    const TateCurve E0 = make_tate_curve(PadicNumber::zero(p), 20);
    CHECK(tate_point(E0, PadicNumber::from_integer(p, -1, 20)).X.agrees_with(PadicNumber::from_rational(p, Rational(-1, 4), 20)));
    const TateCurve Esmall = make_tate_curve(PadicNumber::from_integer(p, ipow(p, 15), 20), 20);
    CHECK((tate_point(Esmall, PadicNumber::from_integer(p, -1, 20)).X - PadicNumber::from_rational(p, Rational(-1, 4), 20))
              .valuation() >= 15);

    std::mt19937_64 rng(8);
    const unsigned N = 20;
    const TateCurve E = make_tate_curve(PadicNumber::from_integer(p, 5 * 3, N), N);
    for (int i = 0; i < 30; ++i) {
        const PadicNumber u = random_padic(rng, p, N, 0, 0);
        if ((u - PadicNumber::from_integer(p, 1, N)).valuation() > 0) continue;
        const TatePoint P = tate_point(E, u), Pi = tate_point(E, u.inverse());
        CHECK(Pi.X.agrees_with(P.X));
        CHECK(Pi.Y.agrees_with(-(P.X + P.Y)));
        // Periodicity in q.
        const TatePoint Pq = tate_point(E, u * E.q);
        CHECK(Pq.X.agrees_with(P.X));
        CHECK(Pq.Y.agrees_with(P.Y));
    }
    CHECK_THROWS_AS(tate_point(E, PadicNumber::from_integer(p, 1, N)), DomainError);
    CHECK_THROWS_AS(tate_point(E, PadicNumber::from_integer(p, 1 + ipow(p, N + 2), N + 4)), DomainError);
    CHECK_THROWS_AS(make_tate_curve(PadicNumber::from_integer(7, 1, N), N), DomainError);
}

TEST_CASE("Tate parametrization is a homomorphism") {
    std::mt19937_64 rng(21);
    std::size_t checked = 0;
    for (const Integer p : {Integer(5), Integer(7), Integer(11)}) {
        const unsigned N = 24;
        const TateCurve E = make_tate_curve(random_padic(rng, p, N, 1, 2), N);
        for (int i = 0; i < 20; ++i) {
            const PadicNumber u1 = random_padic(rng, p, N, 0, 0), u2 = random_padic(rng, p, N, 0, 0);
            const PadicNumber one = PadicNumber::from_integer(p, 1, N);
            if ((u1 - one).valuation() > 0 || (u2 - one).valuation() > 0 || (u1 * u2 - one).valuation() > 0) continue;
            const TatePoint P = tate_point(E, u1), Q = tate_point(E, u2);
            if ((P.X - Q.X).valuation() > 0) continue;
            const auto [x3, y3] = add_points(P, Q);
            const TatePoint R = tate_point(E, u1 * u2);
            CHECK((R.X - x3).valuation() >= static_cast<long>(N) - 4);
            CHECK((R.Y - y3).valuation() >= static_cast<long>(N) - 4);
            ++checked;
        }
    }
    CHECK(checked >= 20);
}

TEST_CASE("short model substitution") {
    const Integer p = 7;
    const unsigned N = 20;
    const TateCurve E = make_tate_curve(PadicNumber::from_integer(p, 14, N), N);
    const auto [A, B] = tate_short_coefficients(E);
    for (int a = 2; a < 7; ++a) {
        const TatePoint P = tate_point(E, PadicNumber::from_integer(p, a, N));
        const auto [x, y] = tate_short_point(P);
        CHECK((y * y - x * x * x - A * x - B).valuation() >= static_cast<long>(N) - 3);
        const auto [xl, yl] = tate_short_point_as_printed(P);
        CHECK((yl * yl - xl * xl * xl - A * xl - B).valuation() < static_cast<long>(N) - 3);
    }
}

TEST_CASE("precision monotonicity") {
    std::mt19937_64 rng(3);
    for (const Integer p : {Integer(5), Integer(7), Integer(11)}) {
        const Integer q = random_unit(rng, p, 40) * p;
        const PadicNumber u = random_padic(rng, p, 40, 0, 0);
        if ((u - PadicNumber::from_integer(p, 1, 40)).valuation() > 0) continue;
        const TateCurve E20 = make_tate_curve(PadicNumber::from_integer(p, q, 20), 20);
        const TateCurve E30 = make_tate_curve(PadicNumber::from_integer(p, q, 30), 30);
        const TatePoint P20 = tate_point(E20, u.truncated(20)), P30 = tate_point(E30, u.truncated(30));
        CHECK((P20.X - P30.X).valuation() >= 20);
        CHECK((P20.Y - P30.Y).valuation() >= 20);
        CHECK(E20.a4.agrees_with(E30.a4));
        CHECK(E20.a6.agrees_with(E30.a6));
    }
}

TEST_CASE("containment: engineered branches") {
    const Integer p = 5;
    const unsigned N = 20;
    const TateCurve E = make_tate_curve(PadicNumber::from_integer(p, 10, N), N);
    const auto small = [&](long v, long unit) { return PadicNumber::from_parts(p, v, unit, N); };
    // |1 + u| < 1: the square branch for X.
    const PadicNumber u = PadicNumber::from_integer(p, -1, N) + small(1, 3);
    const ContainmentResult rx = containment_check_X(E, u, u + small(3, 2));
    CHECK_FALSE(rx.skipped);
    CHECK(rx.branch == 2);
    CHECK(rx.holds);
    CHECK(rx.witness_in_field);
    CHECK(2 * rx.v_uv >= rx.v_zw);
    // Generic unit: linear branch, |u - v| = |z - w|.
    const PadicNumber g = PadicNumber::from_integer(p, 2, N);
    const ContainmentResult rg = containment_check_X(E, g, g + small(4, 1));
    CHECK(rg.branch == 1);
    CHECK(rg.v_uv == 4);
    CHECK(rg.v_zw == 4);
    // Y near u = -2 (f' vanishes to first order there) at p = 7.
    const TateCurve E7 = make_tate_curve(PadicNumber::from_integer(7, 7, N), N);
    const PadicNumber u7 = PadicNumber::from_integer(7, -2, N) + PadicNumber::from_parts(7, 2, 1, N);
    const ContainmentResult ry = containment_check_Y(E7, u7, u7 + PadicNumber::from_parts(7, 3, 4, N));
    CHECK_FALSE(ry.skipped);
    CHECK(ry.branch >= 2);
    CHECK(ry.holds);
    CHECK(3 * ry.v_uv >= ry.v_zw);
    // Neighbourhood of a root of u^2 + 4u + 1 (sqrt 3 exists mod 11).
    const unsigned N11 = 16;
    const TateCurve E11 = make_tate_curve(PadicNumber::from_integer(11, 11, N11), N11);
    Integer r = 0;
    for (Integer c = 0; c < 11; ++c)
        if ((c * c + 4 * c + 1) % 11 == 0) r = c;
    CHECK((r * r + 4 * r + 1) % 11 == 0);
    const Integer m = ipow(11, N11);
    for (int i = 0; i < 40; ++i) {
        Integer inv;
        Integer d = (2 * r + 4) % m;
        mpz_invert(inv.get_mpz_t(), d.get_mpz_t(), m.get_mpz_t());
        r = ((r - (r * r + 4 * r + 1) * inv) % m + m) % m;
    }
    const PadicNumber u11 = PadicNumber::from_integer(11, r, N11) + PadicNumber::from_parts(11, 3, 5, N11);
    const ContainmentResult r11 = containment_check_Y(E11, u11, u11 + PadicNumber::from_parts(11, 2, 3, N11));
    CHECK_FALSE(r11.skipped);
    // f'' vanishes there but f' does not.
    CHECK(r11.coefficient_valuations[2] >= 1);
    CHECK(r11.branch == 1);
    CHECK(r11.holds);
}

TEST_CASE("containment trials at p = 5, 7, 11") {
    for (const Integer p : {Integer(5), Integer(7), Integer(11)}) {
        for (const auto proj : {TateProjection::x, TateProjection::y}) {
            const auto t = containment_trials(p, proj, 1000, 16, 42);
            CHECK(t.trials == 1000);
            CHECK(t.violations == 0);
            CHECK(t.skipped < 200);
            CHECK(t.targeted >= 200);
            CHECK(t.branch_counts[1] > 0);
            CHECK(t.branch_counts[2] > 0);
            CHECK(t.field_witnesses + t.skipped >= 900);
        }
    }
}

TEST_CASE("containment trials: parallel matches serial") {
    for (const auto proj : {TateProjection::x, TateProjection::y}) {
        const auto a = containment_trials(7, proj, 120, 12, 9), b = containment_trials_serial(7, proj, 120, 12, 9);
        CHECK(a.trials == b.trials);
        CHECK(a.skipped == b.skipped);
        CHECK(a.violations == b.violations);
        CHECK(a.field_witnesses == b.field_witnesses);
        CHECK(a.branch_counts == b.branch_counts);
    }
    CHECK_THROWS_AS(containment_trials(3, TateProjection::x, 10, 16, 1), DomainError);
    CHECK_THROWS_AS(containment_trials(5, TateProjection::x, 10, 4, 1), DomainError);
}

TEST_CASE("threshold report") {
    for (const Integer p : {Integer(5), Integer(7), Integer(11)}) {
        for (unsigned m : {1U, 2U, 3U}) {
            const unsigned N = 20;
            const PadicNumber t = PadicNumber::from_integer(p, p * 2, N);
            for (const auto proj : {TateProjection::x, TateProjection::y}) {
                const auto betas = threshold_betas(t, m, N, proj, 40, 17);
                const ThresholdReport rep = threshold_report(t, m, N, proj, betas);
                const double lp = std::log(p.get_d());
                CHECK(rep.v_q == static_cast<long>(m));
                CHECK(rep.literal_threshold == doctest::Approx(3 * lp * (1 - static_cast<double>(m))));
                CHECK(rep.intended_threshold == doctest::Approx(3 * lp * (1 + static_cast<double>(m))));
                CHECK(rep.torsion_points == (p.get_ui() - 1) * m - 1);
                CHECK(rep.violations == 0);
                CHECK(rep.rows.size() == 40);
                std::size_t inside = 0, literal_many = 0;
                for (const auto& row : rep.rows) {
                    inside += row.count_intended;
                    if (row.count_literal >= 2) ++literal_many;
                }
                CHECK(inside > 0);
                // For v(q) >= 2 the printed threshold is negative and admits many points at once.
                if (m >= 2) CHECK(literal_many > 0);
            }
        }
    }
    // Torsion samples are genuine: u^(m(p-1)) is a power of q.
    const Integer p = 7;
    const PadicNumber t = PadicNumber::from_integer(p, 14, 20);
    const PadicNumber u = PadicNumber::teichmuller(p, 3, 20) * t;
    CHECK(u.pow(2 * 6).agrees_with(t.pow(2).pow(6)));
    CHECK_THROWS_AS(threshold_report(PadicNumber::from_integer(p, 3, 20), 1, 20, TateProjection::x, {}), DomainError);
}
