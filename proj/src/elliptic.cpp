#include "sint/elliptic.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <exception>
#include <map>
#include <numbers>
#include <sstream>

namespace sint {

namespace {

Integer as_integer(const Rational& r) {
    if (r.get_den() != 1) throw DomainError("expected an integral coefficient");
    return r.get_num();
}

std::optional<Rational> rational_sqrt(const Rational& r) {
    if (r < 0) return std::nullopt;
    const Integer n = r.get_num(), d = r.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
    Integer sn, sd;
    mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
    return Rational(sn, sd);
}

std::string trim(std::string s) {
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
    return s;
}

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw DomainError("empty rational");
    std::size_t i = 0;
    if (text[0] == '-' || text[0] == '+') i = 1;
    bool slash = false;
    for (std::size_t k = i; k < text.size(); ++k) {
        if (text[k] == '/') {
            if (slash || k == i || k + 1 == text.size()) throw DomainError("malformed rational: " + text);
            slash = true;
        } else if (!std::isdigit(static_cast<unsigned char>(text[k]))) {
            throw DomainError("malformed rational: " + text);
        }
    }
    if (i == text.size()) throw DomainError("malformed rational: " + text);
    Rational r(text[0] == '+' ? text.substr(1) : text);
    if (r.get_den() == 0) throw DomainError("zero denominator: " + text);
    r.canonicalize();
    return r;
}

IntPolynomial x_poly() { return IntPolynomial{0, 1}; }

struct BInts {
    Integer b2, b4, b6, b8;
};

BInts b_integers(const EllipticCurve& E) {
    if (!E.is_integral()) throw DomainError("an integral model is required");
    return {as_integer(E.b2()), as_integer(E.b4()), as_integer(E.b6()), as_integer(E.b8())};
}

// 4x^3 + b2 x^2 + 2 b4 x + b6 = (2y + a1 x + a3)^2
IntPolynomial two_torsion_poly(const BInts& b) {
    return IntPolynomial(std::vector<Integer>{b.b6, 2 * b.b4, b.b2, 4});
}

std::vector<IntPolynomial> division_polynomials_upto(const EllipticCurve& E, unsigned m) {
    const BInts b = b_integers(E);
    const IntPolynomial F = two_torsion_poly(b);
    const IntPolynomial F2 = F * F;
    std::vector<IntPolynomial> f(std::max(m + 1, 5u));
    f[0] = IntPolynomial();
    f[1] = IntPolynomial::constant(1);
    f[2] = IntPolynomial::constant(1);
    f[3] = IntPolynomial(std::vector<Integer>{b.b8, 3 * b.b6, 3 * b.b4, b.b2, 3});
    f[4] = IntPolynomial(std::vector<Integer>{b.b4 * b.b8 - b.b6 * b.b6, b.b2 * b.b8 - b.b4 * b.b6, 10 * b.b8,
                                              10 * b.b6, 5 * b.b4, b.b2, 2});
    for (unsigned i = 5; i <= m; ++i) {
        const unsigned k = i / 2;
        if (i % 2 == 1) {
            const IntPolynomial c1 = f[k + 2] * f[k] * f[k] * f[k];
            const IntPolynomial c2 = f[k - 1] * f[k + 1] * f[k + 1] * f[k + 1];
            f[i] = k % 2 == 0 ? F2 * c1 - c2 : c1 - F2 * c2;
        } else {
            f[i] = f[k] * (f[k + 2] * f[k - 1] * f[k - 1] - f[k - 2] * f[k + 1] * f[k + 1]);
        }
    }
    f.resize(m + 1);
    return f;
}

using HFloat = Float<40>;

}  // namespace

std::string Point::to_string() const {
    if (infinity) return "O";
    return "(" + x.get_str() + "," + y.get_str() + ")";
}

EllipticCurve::EllipticCurve(Rational a1, Rational a2, Rational a3, Rational a4, Rational a6)
    : a_{std::move(a1), std::move(a2), std::move(a3), std::move(a4), std::move(a6)} {
    for (auto& a : a_) a.canonicalize();
    const Rational B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
    disc_ = -B2 * B2 * B8 - 8 * B4 * B4 * B4 - 27 * B6 * B6 + 9 * B2 * B4 * B6;
    if (disc_ == 0) throw DomainError("singular Weierstrass equation (discriminant 0)");
}

EllipticCurve EllipticCurve::parse(const std::string& text) {
    const std::string t = trim(text);
    std::vector<std::string> parts;
    std::stringstream ss(t);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(item);
    if (!t.empty() && t.back() == ',') parts.push_back("");
    if (parts.size() != 5) throw DomainError("curve needs five coefficients a1,a2,a3,a4,a6: " + text);
    return {parse_rational(parts[0]), parse_rational(parts[1]), parse_rational(parts[2]), parse_rational(parts[3]),
            parse_rational(parts[4])};
}

Rational EllipticCurve::b2() const { return a1() * a1() + 4 * a2(); }
Rational EllipticCurve::b4() const { return 2 * a4() + a1() * a3(); }
Rational EllipticCurve::b6() const { return a3() * a3() + 4 * a6(); }
Rational EllipticCurve::b8() const {
    return a1() * a1() * a6() + 4 * a2() * a6() - a1() * a3() * a4() + a2() * a3() * a3() - a4() * a4();
}
Rational EllipticCurve::c4() const { return b2() * b2() - 24 * b4(); }
Rational EllipticCurve::c6() const { return -b2() * b2() * b2() + 36 * b2() * b4() - 216 * b6(); }

bool EllipticCurve::is_integral() const {
    return std::all_of(a_.begin(), a_.end(), [](const Rational& a) { return a.get_den() == 1; });
}

std::pair<Rational, Rational> EllipticCurve::short_coefficients() const {
    return {-c4() / 48, -c6() / 864};
}

std::pair<EllipticCurve, Integer> EllipticCurve::integral_model() const {
    Integer u = 1;
    std::map<Integer, unsigned> need;
    for (int i = 0; i < 5; ++i) {
        const unsigned weight = i < 4 ? static_cast<unsigned>(i + 1) : 6u;
        const Integer d = a_[static_cast<std::size_t>(i)].get_den();
        if (d == 1) continue;
        for (const auto& [p, e] : factor_integer(d).prime_powers) {
            const unsigned k = (e + weight - 1) / weight;
            need[p] = std::max(need[p], k);
        }
    }
    for (const auto& [p, k] : need) {
        Integer pk;
        mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), k);
        u *= pk;
    }
    if (u == 1) return {*this, 1};
    std::array<Rational, 5> c;
    const unsigned weights[5] = {1, 2, 3, 4, 6};
    for (int i = 0; i < 5; ++i) {
        Rational w = 1;
        for (unsigned j = 0; j < weights[i]; ++j) w *= Rational(u);
        c[static_cast<std::size_t>(i)] = a_[static_cast<std::size_t>(i)] * w;
    }
    return {EllipticCurve(c[0], c[1], c[2], c[3], c[4]), u};
}

bool EllipticCurve::good_reduction(const Integer& p) const {
    if (!is_integral()) throw DomainError("good_reduction: an integral model is required");
    return disc_.get_num() % p != 0;
}

bool EllipticCurve::on_curve(const Point& P) const {
    if (P.infinity) return true;
    const Rational& x = P.x;
    const Rational& y = P.y;
    return y * y + a1() * x * y + a3() * y == x * x * x + a2() * x * x + a4() * x + a6();
}

std::vector<Point> EllipticCurve::points_with_x(const Rational& x) const {
    const Rational lin = a1() * x + a3();
    const Rational rhs = x * x * x + a2() * x * x + a4() * x + a6();
    const Rational D = lin * lin + 4 * rhs;
    auto s = rational_sqrt(D);
    if (!s) return {};
    if (*s == 0) return {Point{x, -lin / 2, false}};
    Point lo{x, (-lin - *s) / 2, false}, hi{x, (-lin + *s) / 2, false};
    return {lo, hi};
}

std::string EllipticCurve::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < 5; ++i) out += (i ? "," : "") + a_[i].get_str();
    return out;
}

std::string EllipticCurve::equation() const {
    auto term = [](const Rational& c, const std::string& mono, bool first) {
        if (c == 0) return std::string();
        std::string s;
        const Rational a = abs(c);
        if (first)
            s = c < 0 ? "-" : "";
        else
            s = c < 0 ? " - " : " + ";
        if (a != 1 || mono.empty()) s += a.get_str();
        if (a != 1 && !mono.empty()) s += "*";
        return s + mono;
    };
    std::string lhs = "y^2" + term(a1(), "xy", false) + term(a3(), "y", false);
    std::string rhs = "x^3" + term(a2(), "x^2", false) + term(a4(), "x", false) + term(a6(), "", false);
    return lhs + " = " + rhs;
}

const std::vector<EllipticCurve>& curve_catalog() {
    static const std::vector<EllipticCurve> c = {
        EllipticCurve(0, 0, 0, -1, 0), EllipticCurve(0, 0, 0, 0, 1), EllipticCurve(0, -1, 1, 0, 0),
        EllipticCurve(0, 0, 1, -1, 0), EllipticCurve(0, 0, 0, 0, -2)};
    return c;
}

Point negate(const EllipticCurve& E, const Point& P) {
    if (P.infinity) return P;
    return {P.x, -P.y - E.a1() * P.x - E.a3(), false};
}

Point add(const EllipticCurve& E, const Point& P, const Point& Q) {
    if (P.infinity) return Q;
    if (Q.infinity) return P;
    Rational lambda, nu;
    if (P.x == Q.x) {
        if (P.y + Q.y + E.a1() * Q.x + E.a3() == 0) return Point::identity();
        const Rational den = 2 * P.y + E.a1() * P.x + E.a3();
        lambda = (3 * P.x * P.x + 2 * E.a2() * P.x + E.a4() - E.a1() * P.y) / den;
        nu = (-P.x * P.x * P.x + E.a4() * P.x + 2 * E.a6() - E.a3() * P.y) / den;
    } else {
        const Rational dx = Q.x - P.x;
        lambda = (Q.y - P.y) / dx;
        nu = (P.y * Q.x - Q.y * P.x) / dx;
    }
    Point R;
    R.x = lambda * lambda + E.a1() * lambda - E.a2() - P.x - Q.x;
    R.y = -(lambda + E.a1()) * R.x - nu - E.a3();
    return R;
}

Point double_point(const EllipticCurve& E, const Point& P) { return add(E, P, P); }

Point multiply(const EllipticCurve& E, const Point& P, std::int64_t n) {
    Point base = n < 0 ? negate(E, P) : P;
    std::uint64_t k = n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
    Point acc = Point::identity();
    while (k) {
        if (k & 1) acc = add(E, acc, base);
        k >>= 1;
        if (k) base = double_point(E, base);
    }
    return acc;
}

std::optional<unsigned> torsion_order(const EllipticCurve& E, const Point& P, unsigned max_order) {
    if (!E.on_curve(P)) throw DomainError("torsion_order: point is not on the curve");
    Point Q = P;
    for (unsigned k = 1; k <= max_order; ++k) {
        if (Q.infinity) return k;
        Q = add(E, Q, P);
    }
    return std::nullopt;
}

IntPolynomial division_polynomial(const EllipticCurve& E, unsigned m) {
    if (m < 1) throw DomainError("division_polynomial: m must be positive");
    return division_polynomials_upto(E, m)[m];
}

IntPolynomial full_level_polynomial(const EllipticCurve& E, unsigned m) {
    if (m < 1) throw DomainError("full_level_polynomial: m must be positive");
    if (m == 1) return IntPolynomial::constant(1);
    const IntPolynomial f = division_polynomial(E, m);
    if (m % 2 == 1) return f.primitive_part();
    return (two_torsion_poly(b_integers(E)) * f).primitive_part();
}

std::uint64_t exact_order_count(unsigned m) {
    if (m == 0) throw DomainError("exact_order_count: m must be positive");
    std::uint64_t J = static_cast<std::uint64_t>(m) * m;
    for (std::uint64_t p : prime_divisors(m)) J = J / (p * p) * (p * p - 1);
    return J;
}

TorsionLevel torsion_level(const EllipticCurve& E, unsigned m) {
    if (m < 2) throw DomainError("torsion_level: m must be at least 2");
    if (!E.is_integral()) throw DomainError("torsion_level: an integral model is required");
    IntPolynomial num = IntPolynomial::constant(1), den = IntPolynomial::constant(1);
    for (std::uint64_t d : divisors(m)) {
        if (d == 1) continue;
        const int mu = moebius(m / d);
        if (mu == 1) num *= full_level_polynomial(E, static_cast<unsigned>(d));
        if (mu == -1) den *= full_level_polynomial(E, static_cast<unsigned>(d));
    }
    TorsionLevel L;
    L.m = m;
    L.level_poly = divide_exact(num, den).primitive_part();
    L.rational_roots = rational_roots(L.level_poly);
    IntPolynomial rest = L.level_poly;
    for (const auto& r : L.rational_roots) {
        rest = divide_exact(rest, IntPolynomial::linear_root(r));
        L.orbit_degrees.push_back(1);
    }
    if (rest.degree() <= 0) {
        L.orbit_degrees_known = true;
    } else {
        const Irreducibility irr = rest.degree() <= 12 ? check_irreducible(rest) : check_irreducible_modular(rest, 40);
        if (irr == Irreducibility::irreducible) {
            L.orbit_degrees.push_back(rest.degree());
            L.orbit_degrees_known = true;
        }
    }
    return L;
}

std::vector<TorsionLevel> torsion_levels_serial(const EllipticCurve& E, unsigned M) {
    std::vector<TorsionLevel> out;
    for (unsigned m = 2; m <= M; ++m) out.push_back(torsion_level(E, m));
    return out;
}

std::vector<TorsionLevel> torsion_levels(const EllipticCurve& E, unsigned M) {
    if (M < 2) return {};
    std::vector<TorsionLevel> out(M - 1);
    std::exception_ptr error;
    const auto count = static_cast<std::int64_t>(M - 1);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = count - 1; i >= 0; --i) {
        try {
            out[static_cast<std::size_t>(i)] = torsion_level(E, static_cast<unsigned>(i) + 2);
        } catch (...) {
#pragma omp critical
            error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    return out;
}

std::vector<std::pair<Point, unsigned>> rational_torsion(const EllipticCurve& E) {
    const auto [Ei, u] = E.integral_model();
    const Rational u2 = Rational(u * u);
    const Rational u3 = Rational(u * u * u);
    std::vector<std::pair<Point, unsigned>> out;
    for (unsigned m = 2; m <= 12; ++m) {
        for (const auto& x : rational_roots(torsion_level(Ei, m).level_poly)) {
            for (const auto& P : Ei.points_with_x(x)) out.push_back({Point{P.x / u2, P.y / u3, false}, m});
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second < b.second;
        if (a.first.x != b.first.x) return a.first.x < b.first.x;
        return a.first.y < b.first.y;
    });
    return out;
}

std::pair<IntPolynomial, IntPolynomial> multiplication_x_map(const EllipticCurve& E, unsigned n) {
    if (n < 1) throw DomainError("multiplication_x_map: n must be positive");
    if (n == 1) return {x_poly(), IntPolynomial::constant(1)};
    const auto f = division_polynomials_upto(E, n + 1);
    const IntPolynomial F = two_torsion_poly(b_integers(E));
    const IntPolynomial fn2 = f[n] * f[n];
    const IntPolynomial side = f[n - 1] * f[n + 1];
    if (n % 2 == 1) return {x_poly() * fn2 - F * side, fn2};
    return {x_poly() * F * fn2 - side, F * fn2};
}

std::optional<Rational> apply_x_map(const std::pair<IntPolynomial, IntPolynomial>& map, const Rational& x) {
    const Rational den = map.second.evaluate(x);
    if (den == 0) return std::nullopt;
    return map.first.evaluate(x) / den;
}

double naive_height(const Rational& x) {
    const Integer n = abs(x.get_num());
    const Integer& d = x.get_den();
    const Integer& m = n > d ? n : d;
    long e = 0;
    const double mant = mpz_get_d_2exp(&e, m.get_mpz_t());
    return std::log(mant) + static_cast<double>(e) * std::numbers::ln2;
}

HeightReport naive_canonical_height(const EllipticCurve& E, const Point& P, unsigned iters) {
    if (iters < 1 || iters > 12) throw DomainError("naive_canonical_height: iters must lie in 1..12");
    if (!E.on_curve(P)) throw DomainError("naive_canonical_height: point is not on the curve");
    HeightReport r;
    r.iterations = iters;
    if (P.infinity) return r;
    const auto [Ei, u] = E.integral_model();
    const auto dbl = multiplication_x_map(Ei, 2);
    std::optional<Rational> x = P.x * Rational(u * u);
    double prev = naive_height(*x);
    r.value = prev;
    double scale = 1;
    double worst = 0;
    for (unsigned k = 0; k < iters; ++k) {
        scale /= 4;
        double next = 0;
        if (x) {
            x = apply_x_map(dbl, *x);
            next = x ? naive_height(*x) * scale : 0;
        }
        r.increments.push_back(next - prev);
        worst = std::max(worst, std::abs(next - prev) / scale);
        r.value = next;
        prev = next;
    }
    r.tail_estimate = worst * scale / 3;
    return r;
}

namespace {

// Duplication as binary quartic forms: x(2Q) = F(p, q) / G(p, q) for x(Q) = p/q.
template <class T>
T lift(const Integer& v) {
    if constexpr (std::is_same_v<T, Integer>)
        return v;
    else
        return T(v.get_str());
}

struct DupForms {
    Integer b2, b4, b6, b8;

    template <class T>
    T F(const T& p, const T& q) const {
        const T p2 = p * p, q2 = q * q;
        return p2 * p2 - lift<T>(b4) * p2 * q2 - lift<T>(2 * b6) * p * q2 * q - lift<T>(b8) * q2 * q2;
    }
    template <class T>
    T G(const T& p, const T& q) const {
        const T p2 = p * p, q2 = q * q;
        return T(4) * p2 * p * q + lift<T>(b2) * p2 * q2 + lift<T>(2 * b4) * p * q2 * q + lift<T>(b6) * q2 * q2;
    }
};

Integer mod_positive(const Integer& a, const Integer& m) {
    Integer r = a % m;
    if (r < 0) r += m;
    return r;
}

// Valuation of a residue modulo p^prec; prec when it is zero.
unsigned residue_valuation(const Integer& a, const Integer& p, unsigned prec) {
    if (a == 0) return prec;
    return std::min(prec, valuation(a, p));
}

}  // namespace

HeightReport canonical_height_x(const EllipticCurve& E, const Rational& x_in, unsigned iters) {
    if (iters < 1 || iters > 200) throw DomainError("canonical_height: iters must lie in 1..200");
    const auto [Ei, u] = E.integral_model();
    const BInts b = b_integers(Ei);
    const DupForms forms{b.b2, b.b4, b.b6, b.b8};
    const Rational x0 = x_in * Rational(u * u);

    // Primes where gcd(F(p,q), G(p,q)) can be nontrivial.
    const auto dup = multiplication_x_map(Ei, 2);
    const Integer R = resultant(dup.first, dup.second);
    const Factorization fr = factor_integer(R);

    struct Local {
        Integer p, pk;
        unsigned prec;
        Integer a, c;  // projective point modulo p^prec
    };
    std::vector<Local> locals;
    for (const auto& [p, e] : fr.prime_powers) {
        Local L;
        L.p = p;
        L.prec = iters * e + 8;
        mpz_pow_ui(L.pk.get_mpz_t(), p.get_mpz_t(), L.prec);
        L.a = mod_positive(x0.get_num(), L.pk);
        L.c = mod_positive(x0.get_den(), L.pk);
        locals.push_back(L);
    }

    HeightReport r;
    r.iterations = iters;
    r.value = naive_height(x0);
    HFloat hp(x0.get_num().get_str()), hq(x0.get_den().get_str());
    {
        const HFloat m = abs(hp) > abs(hq) ? abs(hp) : abs(hq);
        hp /= m;
        hq /= m;
    }
    double scale = 1, worst = 0;
    for (unsigned k = 0; k < iters; ++k) {
        scale /= 4;
        HFloat Fv = forms.F(hp, hq), Gv = forms.G(hp, hq);
        const HFloat m = abs(Fv) > abs(Gv) ? abs(Fv) : abs(Gv);
        double delta = static_cast<double>(log(m));
        hp = Fv / m;
        hq = Gv / m;
        for (auto& L : locals) {
            const Integer Fa = mod_positive(forms.F(L.a, L.c), L.pk);
            const Integer Ga = mod_positive(forms.G(L.a, L.c), L.pk);
            const unsigned v = std::min(residue_valuation(Fa, L.p, L.prec), residue_valuation(Ga, L.p, L.prec));
            if (v >= L.prec) throw PrecisionError("canonical_height: local precision exhausted");
            Integer pv;
            mpz_pow_ui(pv.get_mpz_t(), L.p.get_mpz_t(), v);
            L.prec -= v;
            mpz_pow_ui(L.pk.get_mpz_t(), L.p.get_mpz_t(), L.prec);
            L.a = mod_positive(Fa / pv, L.pk);
            L.c = mod_positive(Ga / pv, L.pk);
            delta -= static_cast<double>(v) * std::log(L.p.get_d());
        }
        const double inc = delta * scale;
        r.increments.push_back(inc);
        r.value += inc;
        worst = std::max(worst, std::abs(delta));
    }
    r.tail_estimate = worst * scale / 3;
    return r;
}

HeightReport canonical_height(const EllipticCurve& E, const Point& P, unsigned iters) {
    if (!E.on_curve(P)) throw DomainError("canonical_height: point is not on the curve");
    if (P.infinity) {
        HeightReport r;
        r.iterations = iters;
        return r;
    }
    return canonical_height_x(E, P.x, iters);
}

}  // namespace sint
