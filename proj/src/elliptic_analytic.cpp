#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <random>

#include <boost/math/constants/constants.hpp>

#include "sint/elliptic.hpp"

namespace sint {

namespace {

AFloat to_afloat(const Rational& r) { return AFloat(r.get_num().get_str()) / AFloat(r.get_den().get_str()); }

AFloat pi() { return boost::math::constants::pi<AFloat>(); }

AComplex cexp(const AComplex& z) {
    const AFloat m = exp(z.re);
    return {m * cos(z.im), m * sin(z.im)};
}

AComplex scale(const AComplex& z, const AFloat& s) { return {z.re * s, z.im * s}; }

AFloat agm(AFloat a, AFloat b) {
    const AFloat tol = AFloat("1e-48");
    for (int i = 0; i < 200; ++i) {
        if (abs(a - b) <= tol * abs(a)) return a;
        const AFloat an = (a + b) / 2;
        b = sqrt(a * b);
        a = an;
    }
    throw PrecisionError("agm did not converge in 200 iterations");
}

// int_0^phi dt / sqrt(a^2 cos^2 t + b^2 sin^2 t) by descending Landen steps.
AFloat landen_integral(AFloat a, AFloat b, AFloat phi) {
    const AFloat tol = AFloat("1e-48");
    AFloat two_n = 1;
    for (int i = 0; i < 200; ++i) {
        if (abs(a - b) <= tol * abs(a)) return phi / (two_n * a);
        const AFloat s = sin(phi), c = cos(phi);
        phi = 2 * phi + atan((b - a) * s * c / (a * c * c + b * s * s));
        const AFloat an = (a + b) / 2;
        b = sqrt(a * b);
        a = an;
        two_n *= 2;
    }
    throw PrecisionError("elliptic_log: Landen iteration did not converge");
}

// Weierstrass coordinates (X, Y) of a point of E.
std::pair<AFloat, AFloat> weierstrass_xy(const EllipticCurve& E, const Point& P) {
    const Rational X = P.x + E.b2() / 12;
    const Rational Y = 2 * P.y + E.a1() * P.x + E.a3();
    return {to_afloat(X), to_afloat(Y)};
}

struct QSeries {
    AComplex q, two_pi_i_over_w1;
    int terms = 0;
};

QSeries qseries(const Lattice& L) {
    const AComplex tau = L.w2 / L.w1;
    QSeries s;
    const AFloat tp = 2 * pi();
    s.q = cexp(AComplex(-tp * tau.im, tp * tau.re));
    s.two_pi_i_over_w1 = AComplex(0, tp) / L.w1;
    // |q|^(n - 1/2) below 1e-55 after reduction.
    const double lq = -std::log(s.q.abs().convert_to<double>());
    s.terms = static_cast<int>(std::ceil(55 * std::log(10.0) / lq + 1)) + 1;
    return s;
}

// z shifted by a lattice vector so that |Im(z / w1)| <= Im(tau) / 2.
AComplex center_strip(const Lattice& L, const AComplex& z) {
    const AComplex t = z / L.w1;
    const AComplex tau = L.w2 / L.w1;
    const AFloat k = round(t.im / tau.im);
    AComplex out = z - scale(L.w2, k);
    const AFloat j = round((out / L.w1).re);
    return out - scale(L.w1, j);
}

AComplex cube(const AComplex& z) { return z * z * z; }

}  // namespace

Lattice real_periods(const EllipticCurve& E) {
    Lattice L;
    const Rational g2 = E.c4() / 12, g3 = E.c6() / 216;
    L.g2 = to_afloat(g2);
    L.g3 = to_afloat(g3);
    // 4X^3 - g2 X - g3 with cleared denominators.
    Integer den = lcm(g2.get_den(), g3.get_den());
    const Rational c0 = g3 * den, c1 = g2 * den;
    IntPolynomial cubic(std::vector<Integer>{-c0.get_num(), -c1.get_num(), 0, 4 * den});
    const auto roots = complex_roots<kRootDigits>(cubic, 1e-80);
    std::vector<AComplex> e;
    for (const auto& r : roots.centers) e.push_back(AComplex::convert(r));
    if (E.discriminant() > 0) {
        L.real_roots = true;
        for (auto& z : e) z.im = 0;
        std::sort(e.begin(), e.end(), [](const AComplex& a, const AComplex& b) { return a.re > b.re; });
        const AFloat s13 = sqrt(e[0].re - e[2].re), s12 = sqrt(e[0].re - e[1].re), s23 = sqrt(e[1].re - e[2].re);
        L.w1 = AComplex(pi() / agm(s13, s12));
        L.w2 = AComplex(0, pi() / agm(s13, s23));
    } else {
        std::sort(e.begin(), e.end(), [](const AComplex& a, const AComplex& b) { return abs(a.im) < abs(b.im); });
        e[0].im = 0;
        if (e[1].im < 0) std::swap(e[1], e[2]);
        const AFloat r = (e[0] - e[1]).abs();
        const AFloat d = e[0].re - e[1].re;
        const AFloat w1 = 2 * pi() / agm(2 * sqrt(r), sqrt(2 * r + 2 * d));
        L.w1 = AComplex(w1);
        L.w2 = AComplex(-w1 / 2, pi() / agm(2 * sqrt(r), sqrt(2 * r - 2 * d)));
    }
    L.e = e;
    return L;
}

AComplex wp(const Lattice& L, const AComplex& z_in) {
    const QSeries s = qseries(L);
    const AComplex z = center_strip(L, z_in);
    const AComplex u = cexp(s.two_pi_i_over_w1 * z);
    const AComplex one(1);
    auto term = [&](const AComplex& w) {
        const AComplex d = one - w;
        return w / (d * d);
    };
    if ((one - u).abs() < AFloat("1e-45")) throw DomainError("wp: z is a lattice point");
    AComplex sum = AComplex(AFloat(1) / 12) + term(u);
    const AComplex ui = one / u;
    AComplex qn = s.q;
    for (int n = 1; n <= s.terms; ++n) {
        sum += term(qn * u) + term(qn * ui);
        sum -= scale(term(qn), AFloat(2));
        qn = qn * s.q;
    }
    return s.two_pi_i_over_w1 * s.two_pi_i_over_w1 * sum;
}

AComplex wp_prime(const Lattice& L, const AComplex& z_in) {
    const QSeries s = qseries(L);
    const AComplex z = center_strip(L, z_in);
    const AComplex u = cexp(s.two_pi_i_over_w1 * z);
    const AComplex one(1);
    auto term = [&](const AComplex& w) {
        const AComplex d = one - w;
        return w * (one + w) / cube(d);
    };
    if ((one - u).abs() < AFloat("1e-45")) throw DomainError("wp_prime: z is a lattice point");
    AComplex sum = term(u);
    const AComplex ui = one / u;
    AComplex qn = s.q;
    for (int n = 1; n <= s.terms; ++n) {
        sum += term(qn * u);
        sum -= term(qn * ui);
        qn = qn * s.q;
    }
    return cube(s.two_pi_i_over_w1) * sum;
}

std::complex<double> wp(const Lattice& L, std::complex<double> z) {
    return wp(L, AComplex(AFloat(z.real()), AFloat(z.imag()))).to_double();
}

std::complex<double> wp_prime(const Lattice& L, std::complex<double> z) {
    return wp_prime(L, AComplex(AFloat(z.real()), AFloat(z.imag()))).to_double();
}

AComplex reduce_mod_lattice(const Lattice& L, const AComplex& z) {
    // w1 is real: z = s w1 + t w2.
    const AFloat t = z.im / L.w2.im;
    const AFloat s = (z.re - t * L.w2.re) / L.w1.re;
    return z - scale(L.w1, floor(s)) - scale(L.w2, floor(t));
}

double lattice_distance(const Lattice& L, const AComplex& z) {
    const AComplex r = reduce_mod_lattice(L, z);
    AFloat best = r.abs();
    for (int a = -1; a <= 2; ++a)
        for (int b = -1; b <= 2; ++b) best = std::min(best, (r - scale(L.w1, a) - scale(L.w2, b)).abs());
    return best.convert_to<double>();
}

AComplex elliptic_log(const EllipticCurve& E, const Lattice& L, const Point& P) {
    if (!E.on_curve(P)) throw DomainError("elliptic_log: point is not on the curve");
    if (P.infinity) return AComplex();
    const auto [X, Y] = weierstrass_xy(E, P);
    const AFloat e1 = L.e[0].re;

    auto half_period_for = [&](const AFloat& x) {
        const AComplex cands[3] = {scale(L.w1, AFloat(0.5)), scale(L.w2, AFloat(0.5)),
                                   scale(L.w1 + L.w2, AFloat(0.5))};
        AComplex best = cands[0];
        AFloat dist = (wp(L, cands[0]) - AComplex(x)).abs();
        for (int i = 1; i < 3; ++i) {
            const AFloat d = (wp(L, cands[i]) - AComplex(x)).abs();
            if (d < dist) {
                dist = d;
                best = cands[i];
            }
        }
        return best;
    };

    AComplex z;
    if (Y == 0) {
        z = half_period_for(X);
    } else if (L.real_roots) {
        const AFloat e2 = L.e[1].re, e3 = L.e[2].re;
        auto identity_log = [&](const AFloat& x) {
            const AFloat a = sqrt(e1 - e3), b = sqrt(e1 - e2);
            const AFloat theta = asin(sqrt((e1 - e3) / (x - e3)));
            return landen_integral(a, b, theta);
        };
        if (X >= e1) {
            z = AComplex(identity_log(X));
            if (Y > 0) z = AComplex(-z.re, -z.im);
        } else {
            // Egg component: add the 2-torsion point (e3, 0).
            const AFloat k = (e3 - e1) * (e3 - e2);
            const AFloat dx = X - e3;
            const AFloat X2 = e3 + k / dx;
            const AFloat Y2 = -Y * k / (dx * dx);
            AComplex z2(identity_log(X2));
            if (Y2 > 0) z2 = AComplex(-z2.re, -z2.im);
            z = z2 - half_period_for(e3);
        }
    } else {
        const AFloat r = (L.e[0] - L.e[1]).abs();
        const AFloat d = e1 - L.e[1].re;
        const AFloat kp = sqrt((r + d) / (2 * r));
        const AFloat phi = 2 * atan(sqrt(r / (X - e1)));
        z = AComplex(landen_integral(AFloat(1), kp, phi) / (2 * sqrt(r)));
        if (Y > 0) z = AComplex(-z.re, -z.im);
    }
    z = reduce_mod_lattice(L, z);

    const AComplex wx = wp(L, z), wy = wp_prime(L, z);
    const AFloat sx = abs(X) > 1 ? abs(X) : AFloat(1);
    const AFloat sy = abs(Y) > 1 ? abs(Y) : AFloat(1);
    if ((wx - AComplex(X)).abs() / sx > AFloat("1e-12") || (wy - AComplex(Y)).abs() / sy > AFloat("1e-12"))
        throw PrecisionError("elliptic_log: check residual above 1e-12");
    return z;
}

DistanceExponentReport wp_distance_exponent_check(const EllipticCurve& E, std::size_t sample_count,
                                                  std::uint64_t seed) {
    if (sample_count < 4) throw DomainError("wp_distance_exponent_check: need at least 4 samples");
    const Lattice L = real_periods(E);
    const std::complex<double> w1 = L.omega1(), w2 = L.omega2();

    const std::vector<std::complex<double>> half = {w1 / 2.0, w2 / 2.0, (w1 + w2) / 2.0};

    // A zero of wp'': wp = s with s^2 = g2/12, by Newton on wp - s.
    AComplex crit(AFloat(0.37) * L.w1.re + AFloat(0.41) * L.w2.re, AFloat(0.41) * L.w2.im);
    {
        const std::complex<double> s2 = std::sqrt(std::complex<double>(L.g2.convert_to<double>() / 12, 0));
        const AComplex target(AFloat(s2.real()), AFloat(s2.imag()));
        for (int it = 0; it < 200; ++it) {
            const AComplex step = (wp(L, crit) - target) / wp_prime(L, crit);
            crit = crit - step;
            if (step.abs() < AFloat("1e-30")) break;
        }
    }
    const std::complex<double> critical = crit.to_double();

    enum Family { generic, near_half, near_pole, near_critical };
    struct Sample {
        Family fam;
        std::complex<double> z, w;
    };
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0, 1), ang(0, 2 * std::numbers::pi), mag(-9, -1.5);
    std::vector<Sample> samples(sample_count);
    for (std::size_t i = 0; i < sample_count; ++i) {
        const int f = static_cast<int>(i % 5);
        Sample s;
        const std::complex<double> step = std::polar(std::pow(10.0, mag(rng)), ang(rng));
        if (f <= 1) {
            s.fam = generic;
            s.z = unit(rng) * w1 + unit(rng) * w2;
            s.w = s.z + step;
        } else if (f == 2) {
            s.fam = near_half;
            const auto h = half[static_cast<std::size_t>(rng() % 3)];
            s.z = h + std::polar(std::pow(10.0, mag(rng)), ang(rng));
            s.w = s.z + step;
        } else if (f == 3) {
            s.fam = near_critical;
            s.z = critical + std::polar(std::pow(10.0, mag(rng)), ang(rng));
            s.w = s.z + step;
        } else {
            s.fam = near_pole;
            s.z = std::polar(std::pow(10.0, mag(rng) / 3), ang(rng));
            s.w = s.z + step * std::abs(s.z);
        }
        samples[i] = s;
    }

    struct Eval {
        double dist_even = 0, dist_odd = 0;
        double dx = 0, x = 0, dxp = 0, xp = 0;
        bool ok = false;
    };
    std::vector<Eval> ev(sample_count);
    std::exception_ptr error;
    const auto count = static_cast<std::int64_t>(sample_count);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < count; ++i) {
        try {
            const auto& s = samples[static_cast<std::size_t>(i)];
            const AComplex z(AFloat(s.z.real()), AFloat(s.z.imag()));
            const AComplex w(AFloat(s.w.real()), AFloat(s.w.imag()));
            if (lattice_distance(L, z) < 1e-12 || lattice_distance(L, w) < 1e-12) continue;
            Eval e;
            const AComplex x = wp(L, z), y = wp(L, w), xp = wp_prime(L, z), yp = wp_prime(L, w);
            e.dist_odd = lattice_distance(L, z - w);
            e.dist_even = std::min(e.dist_odd, lattice_distance(L, z + w));
            e.dx = (x - y).abs().convert_to<double>();
            e.x = x.abs().convert_to<double>();
            e.dxp = (xp - yp).abs().convert_to<double>();
            e.xp = xp.abs().convert_to<double>();
            e.ok = true;
            ev[static_cast<std::size_t>(i)] = e;
        } catch (...) {
#pragma omp critical
            error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);

    auto ratio_wp = [](const Eval& e) {
        if (e.dist_even == 0) return 0.0;
        return e.dist_even / (std::sqrt(e.dx) * std::max(std::sqrt(e.x), 1.0));
    };
    auto ratio_wpp = [](const Eval& e) {
        if (e.dist_odd == 0) return 0.0;
        return e.dist_odd / (std::cbrt(e.dxp) * std::max(std::cbrt(e.xp), 1.0));
    };

    DistanceExponentReport rep;
    const std::size_t half_n = sample_count / 2;
    for (std::size_t i = 0; i < half_n; ++i) {
        if (!ev[i].ok) continue;
        rep.fitted_C_wp = std::max(rep.fitted_C_wp, ratio_wp(ev[i]));
        rep.fitted_C_wp_prime = std::max(rep.fitted_C_wp_prime, ratio_wpp(ev[i]));
    }
    for (std::size_t i = half_n; i < sample_count; ++i) {
        if (!ev[i].ok) continue;
        const double m1 = ratio_wp(ev[i]) / rep.fitted_C_wp;
        const double m2 = ratio_wpp(ev[i]) / rep.fitted_C_wp_prime;
        rep.max_margin_wp = std::max(rep.max_margin_wp, m1);
        rep.max_margin_wp_prime = std::max(rep.max_margin_wp_prime, m2);
        if (m1 > 2 || m2 > 2) ++rep.violations;
    }

    auto fit = [&](const std::string& name, Family fam, bool even) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        std::size_t n = 0;
        for (std::size_t i = 0; i < sample_count; ++i) {
            const Eval& e = ev[i];
            if (!e.ok || samples[i].fam != fam) continue;
            const double d = even ? e.dist_even : e.dist_odd;
            const double dv = even ? e.dx : e.dxp;
            if (d <= 0 || dv <= 0) continue;
            const double lx = std::log(dv), ly = std::log(d);
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
            ++n;
        }
        ExponentFit f;
        f.family = name;
        f.samples = n;
        if (n >= 2) f.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        rep.fits.push_back(f);
    };
    fit("wp_generic", generic, true);
    fit("wp_near_half_period", near_half, true);
    fit("wp_near_pole", near_pole, true);
    fit("wp_prime_generic", generic, false);
    fit("wp_prime_near_half_period", near_half, false);
    fit("wp_prime_near_pole", near_pole, false);
    fit("wp_prime_near_critical", near_critical, false);
    rep.samples = static_cast<std::size_t>(std::count_if(ev.begin(), ev.end(), [](const Eval& e) { return e.ok; }));
    return rep;
}

}  // namespace sint
