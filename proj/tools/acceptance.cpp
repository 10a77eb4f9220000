// Acceptance gate: one PASS/FAIL line per criterion. Optional arguments pick
// criteria by number. Exit status 0 only if every selected criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "app.hpp"
#include "sint/elliptic.hpp"
#include "sint/equidist.hpp"
#include "sint/integrality.hpp"
#include "sint/linforms.hpp"
#include "sint/pairing.hpp"
#include "sint/tate.hpp"

using namespace sint;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Phi_n(b) as prod (b^d - 1)^mu(n/d).
Integer cyclotomic_value(std::uint64_t n, unsigned long b) {
    Rational v = 1;
    for (std::uint64_t d : divisors(n)) {
        const int mu = moebius(n / d);
        if (mu == 0) continue;
        Integer t;
        mpz_ui_pow_ui(t.get_mpz_t(), b, d);
        t -= 1;
        if (mu > 0)
            v *= t;
        else
            v /= t;
    }
    v.canonicalize();
    return v.get_num();
}

Outcome adelic_identity() {
    double worst = 0;
    std::size_t rows = 0;
    for (const char* text : {"2", "1/2", "3", "poly:-1,-1,1;root:1", "poly:5,-6,5;root:1"}) {
        for (const auto& d : pairing_grid(AlgebraicNumber::parse(text), 300)) {
            worst = std::max(worst, std::abs(d.residual));
            ++rows;
        }
    }
    std::ostringstream os;
    os << rows << " (beta, n) pairs, max residual " << worst;
    return {worst < 1e-10, os.str()};
}

Outcome desk_instance() {
    const auto two = AlgebraicNumber::parse("2");
    std::vector<std::uint64_t> got;
    for (const auto& r : enumerate_s_integral(two, PrimeSet::parse("3"), 10000)) got.push_back(r.n);
    std::vector<std::uint64_t> oracle;
    for (std::uint64_t n = 1; n <= 10000; ++n)
        if (strip_primes(cyclotomic_value(n, 2), {Integer(3)}) == 1) oracle.push_back(n);
    const std::vector<std::uint64_t> expect{1, 2, 6};
    std::string list;
    for (auto n : got) list += (list.empty() ? "" : ",") + std::to_string(n);
    return {got == expect && oracle == expect, "S-integral orders {" + list + "}, oracle agrees: " +
                                                   (oracle == expect ? "yes" : "no")};
}

Outcome local_vanishing() {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> deg(1, 3);
    std::uniform_int_distribution<long> coef(-6, 6);
    std::uniform_int_distribution<std::uint64_t> order(1, 40);
    const std::vector<long> small = {2, 3, 5, 7, 11, 13};
    std::size_t cases = 0, mismatches = 0, integral = 0;
    while (cases < 500) {
        std::vector<Integer> c(static_cast<std::size_t>(deg(rng)) + 1);
        for (auto& x : c) x = coef(rng);
        if (c.back() == 0) continue;
        const IntPolynomial f = IntPolynomial(c).primitive_part();
        if (f.degree() < 1 || check_irreducible(f) != Irreducibility::irreducible) continue;
        const std::uint64_t n = order(rng);
        if (contact_resultant(f, n) == 0) continue;
        const auto beta = AlgebraicNumber::from_polynomial(f, 0);
        std::vector<Integer> s;
        for (long p : small)
            if (rng() % 2) s.push_back(p);
        const PrimeSet S(s);
        const auto report = contact_primes(beta, n, S);
        const auto d = pairing_decomposition(beta, n);
        bool vanish = d.cofactor == 1;
        for (const auto& [p, v] : d.finite_parts)
            if (!S.contains(p) && v != 0) vanish = false;
        mismatches += report.s_integral != vanish;
        integral += report.s_integral;
        ++cases;
    }
    std::ostringstream os;
    os << cases << " cases, " << integral << " S-integral, " << mismatches << " mismatches";
    return {mismatches == 0, os.str()};
}

Outcome lmn_soundness() {
    const std::vector<IntPolynomial> polys = {
        {5, -6, 5}, {5, 6, 5}, {5, -8, 5}, {13, -10, 13}, {2, -1, 2}, {3, -2, 3}, {2, 3, 2},
        {1, -1, -1, -1, 1}, {1, -2, 1, -2, 1}, {1, -1, -3, -1, 1}, {2, -1, 0, -1, 2}, {3, 1, 1, 1, 3}};
    std::size_t betas = 0, rows = 0, violations = 0;
    for (const auto& f : polys)
        for (int i = 0; i < f.degree(); ++i) {
            const auto b = AlgebraicNumber::from_polynomial(f, static_cast<std::size_t>(i));
            if (!on_unit_circle(b)) continue;
            ++betas;
            for (const auto& r : cyclotomic_gap_experiment(b, 500)) {
                ++rows;
                violations += r.violated;
            }
        }
    std::ostringstream os;
    os << betas << " unit-circle betas, " << rows << " rows, " << violations << " violations";
    return {violations == 0 && betas >= 20, os.str()};
}

Outcome separation() {
    std::vector<std::uint64_t> primes;
    for (std::uint64_t p = 2; p <= 50; ++p)
        if (is_prime(Integer(p))) primes.push_back(p);
    std::size_t violated = 0, pairs = 0;
    for (const auto& r : two_orbit_separation_scan(primes, 200)) {
        violated += r.violated;
        pairs = std::max<std::size_t>(pairs, r.pairs_checked);
    }
    std::ostringstream os;
    os << primes.size() << " primes, up to " << pairs << " pairs per prime, " << violated << " primes with a violation";
    return {violated == 0, os.str()};
}

Outcome disc_counts() {
    std::vector<DiscQuery> qs;
    for (std::uint64_t n = 3; n <= 10000; n += (n < 200 ? 1 : 97))
        for (double eps : {1e-3, 1e-2, 0.1, 0.5, 1.0, 2.0})
            for (std::uint64_t k : {std::uint64_t{0}, std::uint64_t{1}, n / 3})
                qs.push_back({n, std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n)), eps});
    const auto recs = disc_count_grid(qs, 1, 10);
    std::size_t mismatch = 0, fails = 0;
    for (std::size_t i = 0; i < recs.size(); ++i) {
        // Independent scan in plain double trigonometry. Roots within 1e-9 of the
        // boundary circle may fall either way.
        std::uint64_t sure = 0, maybe = 0;
        const auto n = qs[i].n;
        for (std::uint64_t j = 0; j < n; ++j) {
            if (std::gcd(j, n) != 1) continue;
            const double d =
                std::abs(std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n)) -
                         qs[i].center);
            sure += d < qs[i].eps - 1e-9;
            maybe += d < qs[i].eps + 1e-9;
        }
        mismatch += recs[i].lhs < sure || recs[i].lhs > maybe;
        fails += !recs[i].holds;
    }
    std::ostringstream os;
    os << recs.size() << " queries, " << mismatch << " count mismatches, " << fails << " inequality failures";
    return {mismatch == 0 && fails == 0, os.str()};
}

Outcome elliptic_suite() {
    const auto& cat = curve_catalog();
    std::size_t failures = 0, checks = 0;
    auto expect = [&](bool ok) {
        ++checks;
        failures += !ok;
    };
    // Torsion heights vanish.
    for (const auto& E : cat)
        for (const auto& [P, m] : rational_torsion(E)) expect(std::abs(canonical_height(E, P).value) < 1e-6);
    // Doubling and the x-map against the group law.
    const std::vector<std::pair<EllipticCurve, Point>> gens = {{cat[3], Point{0, 0, false}}, {cat[4], Point{3, 5, false}}};
    for (const auto& [E, G] : gens) {
        const auto dup = multiplication_x_map(E, 2);
        for (int k = -8; k <= 8; ++k) {
            if (k == 0) continue;
            const Point P = multiply(E, G, k);
            const Point D = double_point(E, P);
            expect(D == add(E, P, P));
            const auto x = apply_x_map(dup, P.x);
            expect(x.has_value() && *x == D.x);
            if (std::abs(k) <= 4)
                expect(std::abs(canonical_height(E, D).value - 4 * canonical_height(E, P).value) < 1e-6);
        }
    }
    // Cassels at good primes.
    for (const auto& E : cat)
        for (const auto& [P, m] : rational_torsion(E))
            for (long p = 2; p <= 50; ++p) {
                if (!is_prime(Integer(p)) || !E.good_reduction(p)) continue;
                expect(cassels_check(E, P, p).holds);
            }
    // Weierstrass differential equation and the elliptic logarithm.
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unit(0.02, 0.98);
    double worst_de = 0, worst_log = 0;
    for (const auto& E : cat) {
        const Lattice L = real_periods(E);
        for (int k = 0; k < 100; ++k) {
            const AComplex z = L.w1 * AFloat(unit(rng)) + L.w2 * AFloat(unit(rng));
            const AComplex x = wp(L, z), y = wp_prime(L, z);
            const AComplex res = y * y - x * x * x * AFloat(4) + x * L.g2 + AComplex(L.g3);
            worst_de = std::max(worst_de, res.abs().convert_to<double>());
        }
    }
    for (const auto& [E, G] : gens) {
        const Lattice L = real_periods(E);
        const AComplex zg = elliptic_log(E, L, G);
        for (int k = 1; k <= 8; ++k) {
            const Point P = multiply(E, G, k);
            const AComplex z = elliptic_log(E, L, P);
            worst_log = std::max(worst_log, lattice_distance(L, elliptic_log(E, L, add(E, P, G)) - z - zg));
            worst_log = std::max(worst_log, lattice_distance(L, elliptic_log(E, L, double_point(E, P)) - z - z));
        }
    }
    expect(worst_de < 1e-9);
    expect(worst_log < 1e-9);
    std::ostringstream os;
    os << checks << " checks, " << failures << " failures, DE residual " << worst_de << ", log residual " << worst_log;
    return {failures == 0, os.str()};
}

Outcome lattes_desk() {
    const EllipticCurve& E = curve_catalog()[0];
    const auto rep = lattes_s_integral_experiment(E, AlgebraicNumber::parse("5"), PrimeSet::parse("2,3,5,inf"), 6);
    bool ok = !rep.rows.empty() && rep.rows[0].m == 2 && rep.rows[0].s_integral;
    std::size_t integral = 0;
    for (const auto& row : rep.rows) {
        integral += row.s_integral;
        const IntPolynomial Lm = torsion_level(E, row.m).level_poly;
        const auto roots = complex_roots<250>(Lm, 1e-200);
        using F = Float<250>;
        F prod = abs(F(Lm.leading().get_str()));
        for (const auto& r : roots.centers) prod *= (r - BigComplex<250>(F(5))).abs();
        const F exact(row.resultant.get_str());
        ok = ok && abs(prod - exact) / exact < F("1e-150");
        ok = ok && row.contact_primes.complete() && row.contact_primes.value() == row.resultant;
    }
    std::ostringstream os;
    os << rep.rows.size() << " levels, S-integral levels: " << integral << " (m = 2 expected), contact primes match the "
       << "product-over-roots oracle";
    return {ok && integral == 1, os.str()};
}

Outcome tate_suite() {
    std::mt19937_64 rng(17);
    std::size_t residual_fail = 0;
    auto unit = [&](const Integer& p, unsigned N) {
        Integer m;
        mpz_pow_ui(m.get_mpz_t(), p.get_mpz_t(), N);
        for (;;) {
            Integer x = Integer(static_cast<unsigned long>(rng() >> 1)) * Integer(static_cast<unsigned long>(rng() >> 1));
            x %= m;
            if (x % p != 0) return x;
        }
    };
    const unsigned N = 20;
    for (const Integer p : {Integer(5), Integer(7)})
        for (int i = 0; i < 50; ++i) {
            const long vq = 1 + static_cast<long>(rng() % 3);
            const TateCurve E = make_tate_curve(PadicNumber::from_parts(p, vq, unit(p, N), N), N);
            PadicNumber u;
            do {
                u = PadicNumber::from_parts(p, static_cast<long>(rng() % static_cast<std::uint64_t>(vq)), unit(p, N), N);
            } while ((u - PadicNumber::from_integer(p, 1, N)).valuation() > 0);
            residual_fail += tate_residual(E, tate_point(E, u)).valuation() < static_cast<long>(N) - 3;
        }
    std::size_t violations = 0, trials = 0;
    for (const Integer p : {Integer(5), Integer(7), Integer(11)})
        for (const auto proj : {TateProjection::x, TateProjection::y}) {
            const auto t = containment_trials(p, proj, 1000, 16, 0);
            violations += t.violations;
            trials += t.trials;
        }
    std::size_t monotone_fail = 0;
    for (const Integer p : {Integer(5), Integer(7), Integer(11)})
        for (int i = 0; i < 10; ++i) {
            const Integer q = unit(p, 40) * p;
            const PadicNumber u = PadicNumber::from_parts(p, 0, unit(p, 40), 40);
            if ((u - PadicNumber::from_integer(p, 1, 40)).valuation() > 0) continue;
            const TateCurve a = make_tate_curve(PadicNumber::from_integer(p, q, 16), 16);
            const TateCurve b = make_tate_curve(PadicNumber::from_integer(p, q, 28), 28);
            const TatePoint Pa = tate_point(a, u.truncated(16)), Pb = tate_point(b, u.truncated(28));
            monotone_fail += (Pa.X - Pb.X).valuation() < 16 || (Pa.Y - Pb.Y).valuation() < 16;
        }
    std::ostringstream os;
    os << "100 residuals (" << residual_fail << " below N-3), " << trials << " containment trials (" << violations
       << " violations), precision monotonicity failures " << monotone_fail;
    return {residual_fail == 0 && violations == 0 && monotone_fail == 0, os.str()};
}

Outcome determinism() {
    const std::vector<std::vector<std::string>> cmds = {
        {"enumerate", "--beta", "2", "--S", "3", "--N", "500"},
        {"uniformity", "--beta", "2", "--S", "3", "--N", "200"},
        {"pairing", "--beta", "2", "--N", "30"},
        {"equidist", "--beta", "poly:5,-6,5;root:0", "--N", "80"},
        {"lmn-gap", "--beta", "poly:5,-6,5;root:0", "--N", "200"},
        {"elliptic", "--mode", "levels", "--curve", "catalog:2", "--M", "8"},
        {"elliptic", "--mode", "torsion", "--curve", "catalog:1"},
        {"elliptic", "--mode", "heights", "--curve", "catalog:4", "--point", "3,5", "--K", "4"},
        {"elliptic", "--mode", "exponents", "--curve", "catalog:3", "--samples", "200", "--seed", "1"},
        {"cassels", "--curve", "catalog:2", "--p-max", "50"},
        {"lattes"},
        {"lattes", "--projection", "y", "--M", "4"},
        {"tate-check", "--mode", "containment", "--projection", "y", "--p", "7", "--trials", "100", "--seed", "2"},
        {"tate-check", "--mode", "residual", "--trials", "20", "--seed", "2"},
        {"tate-check", "--mode", "threshold", "--trials", "20", "--m", "2"},
    };
    std::size_t runs = 0, differ = 0;
    for (const auto& c : cmds)
        for (const std::string fmt : {"csv", "json"}) {
            auto args = c;
            args.push_back("--format");
            args.push_back(fmt);
            std::ostringstream a, b, ea, eb;
            const int ca = sintlab::run(args, a, ea), cb = sintlab::run(args, b, eb);
            differ += ca != 0 || cb != 0 || a.str() != b.str() || a.str().empty();
            runs += 2;
        }
    std::ostringstream os;
    os << runs << " runs of " << cmds.size() << " experiments in two formats, " << differ << " differing pairs";
    return {differ == 0, os.str()};
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"adelic identity, n <= 300", adelic_identity},
        {"beta = 2, S = {3}: S-integral orbits {1, 2, 6} up to 10^4", desk_instance},
        {"S-integrality equals local vanishing on 500 cases", local_vanishing},
        {"linear-forms bound sound on unit-circle beta, n <= 500", lmn_soundness},
        {"root-of-unity separation, orders <= 200, p <= 50", separation},
        {"disc counts exact and inequality with kappa = 1, C = 10", disc_counts},
        {"elliptic suite", elliptic_suite},
        {"Lattes desk instance y^2 = x^3 - x, beta = 5", lattes_desk},
        {"Tate suite", tate_suite},
        {"CLI determinism", determinism},
    };
    std::set<int> pick;
    for (int i = 1; i < argc; ++i) pick.insert(std::atoi(argv[i]));
    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int k = static_cast<int>(i) + 1;
        if (!pick.empty() && !pick.count(k)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("criterion %d: %s  %s [%s] (%.1fs)\n", k, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                    o.detail.c_str(), secs);
        std::fflush(stdout);
        all = all && o.pass;
    }
    return all ? 0 : 1;
}
