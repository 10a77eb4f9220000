#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>

#include "sint/elliptic.hpp"

namespace sint {

namespace {

std::optional<long> opt_valuation(const Rational& r, const Integer& p) {
    if (r == 0) return std::nullopt;
    return static_cast<long>(valuation(r.get_num(), p)) - static_cast<long>(valuation(r.get_den(), p));
}

bool p_integral(const EllipticCurve& E, const Integer& p) {
    for (const Rational* a : {&E.a1(), &E.a2(), &E.a3(), &E.a4(), &E.a6()})
        if (a->get_den() % p == 0) return false;
    return true;
}

// n with order = p^n, or 0.
unsigned p_power_exponent(unsigned order, const Integer& p) {
    if (!p.fits_ulong_p()) return 0;
    const unsigned long q = p.get_ui();
    unsigned n = 0;
    unsigned long m = order;
    while (m % q == 0) {
        m /= q;
        ++n;
    }
    return m == 1 ? n : 0;
}

// -log_p of the p-adic chordal distance between two rationals.
Rational chordal_closeness(const Rational& a, const Rational& b, const Integer& p) {
    if (a == b) throw DomainError("chordal distance of equal points");
    auto v = [&](const Rational& r) { return *opt_valuation(r, p); };
    long out = v(a - b);
    if (a != 0) out -= std::min(0L, v(a));
    if (b != 0) out -= std::min(0L, v(b));
    return Rational(out);
}

IntPolynomial squarefree(const IntPolynomial& f) {
    const IntPolynomial g = gcd(f, f.derivative());
    return g.degree() > 0 ? divide_exact(f, g).primitive_part() : f.primitive_part();
}

}  // namespace

std::string to_string(LattesProjection p) { return p == LattesProjection::x ? "x" : "y"; }

CasselsRecord cassels_check(const EllipticCurve& E, const Point& P, const Integer& p) {
    if (!is_prime(p)) throw DomainError("cassels_check: p must be prime");
    if (!p_integral(E, p)) throw DomainError("cassels_check: the model is not p-integral; use a minimal model at p");
    if (P.infinity) throw DomainError("cassels_check: P is the identity");
    const auto order = torsion_order(E, P, 16);
    if (!order) throw DomainError("cassels_check: P is not a torsion point of order <= 16");
    CasselsRecord r;
    r.P = P;
    r.order = *order;
    r.p = p;
    r.n = p_power_exponent(r.order, p);
    r.p_power = r.n > 0;
    r.vx = opt_valuation(P.x, p);
    r.vy = opt_valuation(P.y, p);
    auto at_least = [](const std::optional<long>& v, const Rational& bound) { return !v || Rational(*v) >= bound; };
    if (r.p_power) {
        Integer pn, pn1;
        mpz_pow_ui(pn.get_mpz_t(), p.get_mpz_t(), r.n);
        mpz_pow_ui(pn1.get_mpz_t(), p.get_mpz_t(), r.n - 1);
        Rational e(Integer(3), pn - pn1);
        e.canonicalize();
        r.min_valuation = -e;
        r.holds = at_least(r.vx, r.min_valuation) && at_least(r.vy, r.min_valuation);
        // |c|_p <= 3/(p^n - p^(n-1)) taken literally.
        auto literal = [&](const std::optional<long>& v) {
            if (!v) return true;
            return std::pow(p.get_d(), static_cast<double>(-*v)) <= e.get_d();
        };
        r.literal_holds = literal(r.vx) && literal(r.vy);
    } else {
        r.min_valuation = 0;
        r.holds = at_least(r.vx, 0) && at_least(r.vy, 0);
        r.literal_holds = r.holds;
    }
    return r;
}

IntPolynomial y_level_polynomial(const EllipticCurve& E, unsigned m) {
    const IntPolynomial L = torsion_level(E, m).level_poly;
    const int d = L.degree();
    const int n = 2 * d;
    if (!E.is_integral()) throw DomainError("y_level_polynomial: an integral model is required");
    auto a = [](const Rational& r) { return r.get_num(); };
    // Res_x(L(x), y^2 + (a1 x + a3) y - x^3 - a2 x^2 - a4 x - a6) at y = 0..n.
    std::vector<Rational> ys, vals;
    for (int k = 0; k <= n; ++k) {
        const Integer y = k;
        IntPolynomial G(std::vector<Integer>{y * y + a(E.a3()) * y - a(E.a6()), a(E.a1()) * y - a(E.a4()),
                                             -a(E.a2()), -1});
        ys.emplace_back(y);
        vals.emplace_back(resultant(L, G));
    }
    // Newton divided differences, then expansion to ascending coefficients.
    std::vector<Rational> c = vals;
    for (int j = 1; j <= n; ++j)
        for (int i = n; i >= j; --i) c[i] = (c[i] - c[i - 1]) / (ys[i] - ys[i - j]);
    std::vector<Rational> poly{c[n]};
    for (int i = n - 1; i >= 0; --i) {
        std::vector<Rational> next(poly.size() + 1, Rational(0));
        for (std::size_t k = 0; k < poly.size(); ++k) {
            next[k + 1] += poly[k];
            next[k] -= poly[k] * ys[i];
        }
        next[0] += c[i];
        poly = std::move(next);
    }
    Integer den = 1;
    for (const auto& q : poly) den = lcm(den, q.get_den());
    std::vector<Integer> coeffs;
    for (const auto& q : poly) {
        const Rational s = q * den;
        coeffs.push_back(s.get_num());
    }
    return squarefree(IntPolynomial(std::move(coeffs)));
}

Integer torsion_contact_resultant(const EllipticCurve& E, unsigned m, const AlgebraicNumber& beta) {
    const Integer r = abs(resultant(beta.minpoly(), torsion_level(E, m).level_poly));
    if (r == 0) throw DomainError("beta is the x-coordinate of a point of exact order " + std::to_string(m));
    return r;
}

Factorization torsion_contact_primes(const EllipticCurve& E, unsigned m, const AlgebraicNumber& beta,
                                     const FactorBudget& budget) {
    return factor_partial(torsion_contact_resultant(E, m, beta), budget);
}

LattesReport lattes_s_integral_experiment(const EllipticCurve& E, const AlgebraicNumber& beta, const PrimeSet& S,
                                          unsigned M, const LattesParams& params, const FactorBudget& budget) {
    if (!E.is_integral()) throw DomainError("lattes experiment: an integral model is required");
    if (!(params.c > 0 && params.gap_C > 0 && params.gap_eps > 0))
        throw DomainError("lattes experiment: c, gap_C and gap_eps must be positive");
    LattesReport rep;
    const double D = beta.degree();
    rep.threshold = params.c * std::pow(D, 20);
    if (M < 2) return rep;
    if (params.projection == LattesProjection::x && beta.is_rational()) {
        const double h = canonical_height_x(E, beta.as_rational(), 40).value;
        if (h < 1e-9) throw DomainError("lattes experiment: beta is preperiodic (canonical height below 1e-9)");
        rep.beta_height = h;
    }
    const double hb = weil_height(beta);
    const double gap_scale = params.gap_C * std::pow(D, 6) * std::pow(std::log(D) + 1, 2) * (hb + 1);
    const std::complex<long double> bv = beta.value().to_long_double();

    rep.rows.resize(M - 1);
    std::exception_ptr error;
    const auto count = static_cast<std::int64_t>(M - 1);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = count - 1; i >= 0; --i) {
        try {
            const unsigned m = static_cast<unsigned>(i) + 2;
            LattesLevelRow row;
            row.m = m;
            const TorsionLevel lvl = torsion_level(E, m);
            const IntPolynomial poly =
                params.projection == LattesProjection::x ? lvl.level_poly : y_level_polynomial(E, m);
            row.level_degree = poly.degree();
            row.resultant = abs(resultant(beta.minpoly(), poly));
            if (row.resultant == 0)
                throw DomainError("beta lies in the torsion level m = " + std::to_string(m));
            row.s_integral = strip_primes(row.resultant, S.primes()) == 1;
            row.contact_primes = factor_partial(row.resultant, budget);
            long double closest = std::numeric_limits<long double>::infinity();
            for (const auto& r : complex_roots<kRootDigits>(poly, 1e-30).centers)
                closest = std::min(closest, std::abs(r.to_long_double() - bv));
            row.closeness = static_cast<double>(-std::log(closest));
            row.gap_bound = gap_scale * std::pow(static_cast<double>(row.level_degree), params.gap_eps);
            row.gap_violated = row.closeness > row.gap_bound;
            row.orbit_certified = params.projection == LattesProjection::x && lvl.orbit_degrees_known &&
                                  lvl.orbit_degrees.size() == 1;
            rep.rows[static_cast<std::size_t>(i)] = std::move(row);
        } catch (...) {
#pragma omp critical
            error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);

    std::size_t certified_violations = 0;
    for (const auto& row : rep.rows) {
        if (row.s_integral) {
            ++rep.s_integral_count;
            rep.max_s_integral_degree = std::max(rep.max_s_integral_degree, row.level_degree);
            if (row.level_degree > rep.threshold) ++rep.count_above_threshold;
        }
        if (row.gap_violated) {
            ++rep.gap_violations;
            if (row.orbit_certified) ++certified_violations;
        }
    }
    rep.exception_rule_broken = certified_violations >= 2;
    return rep;
}

GoodReductionSeparation good_reduction_separation_check(const EllipticCurve& E, const Integer& p, unsigned M) {
    if (!is_prime(p)) throw DomainError("separation check: p must be prime");
    if (!E.is_integral()) throw DomainError("separation check: an integral model is required");
    if (!E.good_reduction(p)) throw DomainError("separation check: bad reduction at p = " + p.get_str());
    GoodReductionSeparation out;
    out.p = p;
    out.M = M;
    out.threshold = Rational(Integer(3), p - 1);
    out.threshold.canonicalize();
    if (M < 2) return out;

    const auto levels = torsion_levels(E, M);
    auto consider = [&](const SeparationWitness& w) {
        const Rational avg = w.log_closeness / static_cast<long>(w.pairs);
        if (avg > out.worst_average) out.worst_average = avg;
        // A single pair at or above the threshold forces the sum there.
        if (w.log_closeness >= out.threshold && out.separated) {
            out.separated = false;
            out.witness = w;
        }
    };

    // Rational torsion x-coordinates, compared exactly.
    std::vector<std::pair<Rational, unsigned>> xs;
    for (const auto& L : levels)
        for (const auto& r : L.rational_roots) xs.push_back({r, L.m});
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = i + 1; j < xs.size(); ++j) {
            SeparationWitness w;
            w.m1 = xs[i].second;
            w.m2 = xs[j].second;
            w.x1 = xs[i].first;
            w.x2 = xs[j].first;
            w.log_closeness = chordal_closeness(w.x1, w.x2, p);
            w.pairs = 1;
            w.rational_pair = true;
            ++out.rational_pairs;
            consider(w);
        }

    // Whole fibers: v_p(res) and v_p(disc)/2 sum -log_p d_sph over all pairs.
    for (std::size_t a = 0; a < levels.size(); ++a) {
        const IntPolynomial& fa = levels[a].level_poly;
        if (fa.degree() >= 2) {
            SeparationWitness w;
            w.m1 = w.m2 = levels[a].m;
            w.log_closeness = Rational(static_cast<long>(valuation(discriminant(fa), p)), 2);
            w.log_closeness.canonicalize();
            w.pairs = static_cast<std::size_t>(fa.degree()) * static_cast<std::size_t>(fa.degree() - 1) / 2;
            ++out.level_pairs;
            consider(w);
        }
        for (std::size_t b = a + 1; b < levels.size(); ++b) {
            const IntPolynomial& fb = levels[b].level_poly;
            SeparationWitness w;
            w.m1 = levels[a].m;
            w.m2 = levels[b].m;
            w.log_closeness = Rational(static_cast<long>(valuation(resultant(fa, fb), p)));
            w.pairs = static_cast<std::size_t>(fa.degree()) * static_cast<std::size_t>(fb.degree());
            ++out.level_pairs;
            consider(w);
        }
    }
    return out;
}

}  // namespace sint
