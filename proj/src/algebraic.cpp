#include "sint/algebraic.hpp"

#include <algorithm>
#include <charconv>
#include <cctype>
#include <cmath>
#include <limits>

namespace sint {

namespace {

template <unsigned W>
struct Horner {
    BigComplex<W> value, deriv;
    Float<W> abs_bound;  // sum |a_i| |z|^i, for the rounding error term
};

template <unsigned W>
Horner<W> horner(const std::vector<Float<W>>& a, const BigComplex<W>& z) {
    Horner<W> h;
    const Float<W> r = z.abs();
    h.abs_bound = 0;
    for (std::size_t i = a.size(); i-- > 0;) {
        h.deriv = h.deriv * z + h.value;
        h.value = h.value * z + BigComplex<W>(a[i]);
        h.abs_bound = h.abs_bound * r + abs(a[i]);
    }
    return h;
}

template <unsigned W>
bool less_canonical(const BigComplex<W>& a, const BigComplex<W>& b, const Float<W>& tie) {
    if (abs(a.re - b.re) > tie) return a.re < b.re;
    return a.im < b.im;
}

// One certification attempt at W working digits. Returns false when the
// radius target or pairwise disjointness fails.
template <unsigned W, unsigned D>
bool isolate_at(const IntPolynomial& f, double target, RootIsolation<D>& out) {
    const int n = f.degree();
    std::vector<Float<W>> a;
    a.reserve(n + 1);
    for (const auto& c : f.coefficients()) a.emplace_back(Float<W>(c.get_mpz_t()));

    // Start on a circle through the geometric mean of the root moduli.
    Float<W> rho = 1;
    if (f.coeff(0) != 0) rho = pow(abs(a[0] / a[n]), Float<W>(1) / n);
    if (rho == 0) rho = 1;
    std::vector<BigComplex<W>> z(n);
    const Float<W> two_pi = 2 * boost::math::constants::pi<Float<W>>();
    for (int k = 0; k < n; ++k) {
        const Float<W> t = two_pi * k / n + Float<W>("0.4");
        z[k] = BigComplex<W>(rho * cos(t), rho * sin(t));
    }

    const Float<W> eps = pow(Float<W>(10), -static_cast<int>(W));
    const Float<W> tol = pow(Float<W>(10), -static_cast<int>(W) + 8);
    bool converged = false;
    for (int iter = 0; iter < 4000 && !converged; ++iter) {
        converged = true;
        for (int k = 0; k < n; ++k) {
            const auto h = horner(a, z[k]);
            if (h.value.norm() == 0) continue;
            if (h.deriv.norm() == 0) {
                z[k] = z[k] + BigComplex<W>(tol * (1 + k), tol);
                converged = false;
                continue;
            }
            const BigComplex<W> ratio = h.value / h.deriv;
            BigComplex<W> s;
            for (int j = 0; j < n; ++j)
                if (j != k) s += BigComplex<W>(Float<W>(1)) / (z[k] - z[j]);
            const BigComplex<W> w = ratio / (BigComplex<W>(Float<W>(1)) - ratio * s);
            z[k] -= w;
            if (w.abs() > tol * (1 + z[k].abs())) converged = false;
        }
    }

    // Roots of a real polynomial with a negligible imaginary part are moved
    // onto the axis; the disjointness test below then proves them real.
    const Float<W> snap = pow(Float<W>(10), -static_cast<int>(W) / 2);
    for (auto& zk : z)
        if (abs(zk.im) < snap * (1 + abs(zk.re))) zk.im = 0;

    Float<W> radius = 0;
    for (int k = 0; k < n; ++k) {
        const auto h = horner(a, z[k]);
        const Float<W> dnorm = h.deriv.abs();
        if (dnorm == 0) return false;
        const Float<W> err = 4 * (n + 1) * eps * h.abs_bound;
        radius = std::max(radius, n * (h.value.abs() + err) / dnorm);
    }
    radius *= Float<W>("1.000001");
    radius += eps;
    double r = radius.template convert_to<double>();
    r = std::nextafter(r, std::numeric_limits<double>::infinity());
    if (!(r <= target)) return false;

    std::sort(z.begin(), z.end(),
              [&](const BigComplex<W>& x, const BigComplex<W>& y) { return less_canonical(x, y, 2 * radius); });
    const Float<W> sep = 2 * radius;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if ((z[i] - z[j]).abs() <= sep) return false;

    out.centers.clear();
    for (const auto& zk : z) out.centers.push_back(BigComplex<D>::convert(zk));
    out.radius = r;
    out.working_digits = W;
    return true;
}

void floor_to_integer(const RootFloat& x, Integer& out) {
    mpfr_get_z(out.get_mpz_t(), x.backend().data(), MPFR_RNDD);
}

// Rational roots of f among the certified real approximations: convergents
// of each real root with denominator up to |lc| are tested exactly.
std::vector<Rational> rational_roots_from(const IntPolynomial& f, const std::vector<RootComplex>& roots) {
    const Integer lc = abs(f.leading());
    std::vector<Rational> out;
    for (const auto& z : roots) {
        if (z.im != 0) continue;
        RootFloat x = z.re;
        Integer h_prev = 1, h_prev2 = 0, k_prev = 0, k_prev2 = 1;
        for (int step = 0; step < 200; ++step) {
            Integer a;
            floor_to_integer(x, a);
            const Integer h = a * h_prev + h_prev2;
            const Integer k = a * k_prev + k_prev2;
            if (k > lc) break;
            if (f.homogeneous_evaluate(h, k) == 0) {
                Rational r(h, k);
                r.canonicalize();
                out.push_back(r);
                break;
            }
            h_prev2 = h_prev, h_prev = h, k_prev2 = k_prev, k_prev = k;
            const RootFloat frac = x - RootFloat(a.get_mpz_t());
            if (frac < RootFloat("1e-40")) break;
            x = 1 / frac;
        }
    }
    return out;
}

bool has_rational_root(const IntPolynomial& f, const std::vector<RootComplex>& roots) {
    return !rational_roots_from(f, roots).empty();
}

// Exhaustive search for a factor among products of root subsets. If f = g h
// over Z then lc(f) prod_{h(r)=0} (x - r) = lc(g) h has integer coefficients.
class SubsetSearch {
public:
    SubsetSearch(const IntPolynomial& f, const std::vector<RootComplex>& roots) : f_(f), roots_(roots) {}

    // True when a factor of degree k exists; budget_ counts visited subsets.
    bool run(int k) {
        std::vector<RootComplex> poly{RootComplex(RootFloat(f_.leading().get_mpz_t()))};
        return visit(0, k, poly);
    }
    bool exhausted() const { return budget_ == 0; }

private:
    bool visit(std::size_t start, int left, const std::vector<RootComplex>& poly) {
        if (left == 0) {
            if (budget_ == 0) return false;
            --budget_;
            return test(poly);
        }
        for (std::size_t i = start; i + static_cast<std::size_t>(left) <= roots_.size(); ++i) {
            // poly * (x - r)
            std::vector<RootComplex> next(poly.size() + 1);
            for (std::size_t j = 0; j < poly.size(); ++j) {
                next[j + 1] += poly[j];
                next[j] -= poly[j] * roots_[i];
            }
            if (visit(i + 1, left - 1, next)) return true;
            if (budget_ == 0) return false;
        }
        return false;
    }

    bool test(const std::vector<RootComplex>& poly) const {
        const RootFloat tol("1e-30");
        std::vector<Integer> c(poly.size());
        for (std::size_t j = 0; j < poly.size(); ++j) {
            if (abs(poly[j].im) > tol) return false;
            const RootFloat r = round(poly[j].re);
            if (abs(poly[j].re - r) > tol) return false;
            floor_to_integer(r, c[j]);
        }
        const IntPolynomial h = IntPolynomial(c).primitive_part();
        if (h.degree() < 1) return false;
        try {
            divide_exact(f_, h);
            return true;
        } catch (const DomainError&) {
            return false;
        }
    }

    const IntPolynomial& f_;
    const std::vector<RootComplex>& roots_;
    std::uint64_t budget_ = 200000;
};

Irreducibility root_subset_search(const IntPolynomial& f, const std::vector<RootComplex>& roots,
                                  const std::vector<bool>& possible) {
    // Coefficients must stay well inside the stored precision for rounding to be decisive.
    RootFloat scale = abs(RootFloat(f.leading().get_mpz_t()));
    for (const auto& r : roots) scale *= 1 + r.abs();
    if (scale > RootFloat("1e25")) return Irreducibility::unknown;
    SubsetSearch search(f, roots);
    for (int k = 2; 2 * k <= f.degree(); ++k) {
        if (!possible[static_cast<std::size_t>(k)]) continue;
        if (search.run(k)) return Irreducibility::reducible;
        if (search.exhausted()) return Irreducibility::unknown;
    }
    return Irreducibility::irreducible;
}

// Bitmask of degrees attainable by a product of the modular factors.
std::vector<bool> attainable_degrees(const std::vector<int>& counts, int d) {
    std::vector<bool> reach(d + 1, false);
    reach[0] = true;
    for (std::size_t deg = 1; deg < counts.size(); ++deg)
        for (int c = 0; c < counts[deg]; ++c)
            for (int s = d; s >= static_cast<int>(deg); --s)
                if (reach[s - deg]) reach[s] = true;
    return reach;
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

Integer parse_integer(const std::string& s) {
    const std::string t = trim(s);
    Integer v;
    if (t.empty() || v.set_str(t[0] == '+' ? t.substr(1) : t, 10) != 0)
        throw DomainError("not an integer: '" + t + "'");
    return v;
}

template <unsigned D>
RootIsolation<D> isolate(const IntPolynomial& f, double target) {
    if (f.degree() < 1) throw DomainError("complex_roots: polynomial must have positive degree");
    if (!(target > 0)) throw DomainError("complex_roots: target radius must be positive");
    const IntPolynomial g = gcd(f, f.derivative());
    if (g.degree() > 0) throw DomainError("complex_roots: repeated factor " + g.to_string());
    RootIsolation<D> out;
    if (isolate_at<64, D>(f, target, out)) return out;
    if (isolate_at<128, D>(f, target, out)) return out;
    if (isolate_at<256, D>(f, target, out)) return out;
    if (isolate_at<512, D>(f, target, out)) return out;
    throw PrecisionError("complex_roots: could not certify roots of " + f.to_string());
}

}  // namespace

template <unsigned Digits>
RootIsolation<Digits> complex_roots(const IntPolynomial& f, double target_radius) {
    return isolate<Digits>(f, target_radius);
}

template RootIsolation<kRootDigits> complex_roots<kRootDigits>(const IntPolynomial&, double);
template RootIsolation<250> complex_roots<250>(const IntPolynomial&, double);

namespace {

// Degrees of a proper factor still compatible with the factorization
// patterns mod `primes` good primes.
std::vector<bool> modular_degree_sieve(const IntPolynomial& f, const Integer& disc, int primes) {
    const int d = f.degree();
    const Integer lc = f.leading();
    std::vector<bool> possible(d + 1, true);
    int used = 0;
    for (std::uint64_t p = 3; used < primes && p < 100000; p += 2) {
        if (!is_prime(Integer(static_cast<unsigned long>(p)))) continue;
        if (mpz_divisible_ui_p(lc.get_mpz_t(), p) || mpz_divisible_ui_p(disc.get_mpz_t(), p)) continue;
        const auto reach = attainable_degrees(modp::distinct_degree_counts(modp::reduce(f, p), p), d);
        for (int k = 0; k <= d; ++k) possible[k] = possible[k] && reach[k];
        ++used;
    }
    return possible;
}

bool any_proper(const std::vector<bool>& possible) {
    for (std::size_t k = 1; k + 1 < possible.size(); ++k)
        if (possible[k]) return true;
    return false;
}

}  // namespace

Irreducibility check_irreducible(const IntPolynomial& f_in) {
    const IntPolynomial f = f_in.primitive_part();
    const int d = f.degree();
    if (d < 1) throw DomainError("check_irreducible: polynomial must have positive degree");
    if (d == 1) return Irreducibility::irreducible;
    if (f.coeff(0) == 0) return Irreducibility::reducible;

    const Integer disc = discriminant(f);
    if (disc == 0) return Irreducibility::reducible;

    const auto possible = modular_degree_sieve(f, disc, 3);
    if (!any_proper(possible)) return Irreducibility::irreducible;

    const auto roots = complex_roots<kRootDigits>(f, 1e-60);
    if (has_rational_root(f, roots.centers)) return Irreducibility::reducible;
    if (d <= 3) return Irreducibility::irreducible;
    return root_subset_search(f, roots.centers, possible);
}

Irreducibility check_irreducible_modular(const IntPolynomial& f_in, int primes) {
    const IntPolynomial f = f_in.primitive_part();
    const int d = f.degree();
    if (d < 1) throw DomainError("check_irreducible: polynomial must have positive degree");
    if (d == 1) return Irreducibility::irreducible;
    if (f.coeff(0) == 0) return Irreducibility::reducible;
    const Integer disc = discriminant(f);
    if (disc == 0) return Irreducibility::reducible;
    return any_proper(modular_degree_sieve(f, disc, primes)) ? Irreducibility::unknown : Irreducibility::irreducible;
}

namespace {

// A prime p not dividing lc(f) with f squarefree mod p, if one is found.
std::optional<std::uint64_t> squarefree_prime(const IntPolynomial& f) {
    int tried = 0;
    for (std::uint64_t p = 101; tried < 60; p += 2) {
        if (!is_prime(Integer(static_cast<unsigned long>(p)))) continue;
        ++tried;
        if (mpz_divisible_ui_p(f.leading().get_mpz_t(), p)) continue;
        const modp::Poly fp = modp::reduce(f, p);
        if (modp::degree(modp::gcd(fp, modp::reduce(f.derivative(), p), p)) == 0) return p;
    }
    return std::nullopt;
}

// a/b with |a| <= N, 0 < b <= D and a = b r mod m, by the half extended gcd.
std::optional<Rational> rational_reconstruction(const Integer& r, const Integer& m, const Integer& N,
                                                const Integer& D) {
    Integer r0 = m, r1 = r, t0 = 0, t1 = 1;
    while (r1 > N) {
        const Integer q = r0 / r1;
        Integer tmp = r0 - q * r1;
        r0 = r1;
        r1 = tmp;
        tmp = t0 - q * t1;
        t0 = t1;
        t1 = tmp;
    }
    if (t1 == 0 || abs(t1) > D) return std::nullopt;
    Rational out(r1, t1);
    out.canonicalize();
    return out;
}

// Roots of a squarefree f with f(0) != 0 through Hensel lifting of the roots mod p.
std::vector<Rational> hensel_rational_roots(const IntPolynomial& f, std::uint64_t p) {
    const Integer N = abs(f.coeff(0)), D = abs(f.leading());
    const Integer bound = 2 * N * D + 1;
    const IntPolynomial df = f.derivative();
    const Integer P = static_cast<unsigned long>(p);
    std::vector<Rational> out;
    for (std::uint64_t a = 0; a < p; ++a) {
        Integer r = static_cast<unsigned long>(a);
        if (f.evaluate(r) % P != 0) continue;
        Integer m = P;
        while (m < bound) {
            m *= m;
            Integer inv;
            Integer d = df.evaluate(r) % m;
            if (d < 0) d += m;
            if (mpz_invert(inv.get_mpz_t(), d.get_mpz_t(), m.get_mpz_t()) == 0) break;
            r = (r - f.evaluate(r) * inv) % m;
            if (r < 0) r += m;
        }
        if (auto q = rational_reconstruction(r, m, N, D); q && f.evaluate(*q) == 0) out.push_back(*q);
    }
    return out;
}

}  // namespace

std::vector<Rational> rational_roots(const IntPolynomial& f_in) {
    if (f_in.degree() < 1) return {};
    IntPolynomial f = f_in.primitive_part();
    std::vector<Rational> out;
    if (f.coeff(0) == 0) {
        out.push_back(0);
        while (f.coeff(0) == 0) f = divide_exact(f, IntPolynomial{0, 1});
    }
    if (f.degree() >= 1) {
        auto p = squarefree_prime(f);
        if (!p) {
            const IntPolynomial g = gcd(f, f.derivative());
            if (g.degree() > 0) f = divide_exact(f, g);
            p = squarefree_prime(f);
        }
        if (p) {
            for (auto& r : hensel_rational_roots(f, *p)) out.push_back(r);
        } else {
            for (auto& r : rational_roots_from(f, complex_roots<kRootDigits>(f, 1e-60).centers)) out.push_back(r);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

AlgebraicNumber AlgebraicNumber::from_rational(const Rational& r) {
    AlgebraicNumber b;
    b.minpoly_ = IntPolynomial::linear_root(r);
    b.root_index_ = 0;
    b.roots_ = complex_roots<kRootDigits>(b.minpoly_, 1e-60);
    return b;
}

AlgebraicNumber AlgebraicNumber::from_polynomial(const IntPolynomial& f, std::size_t root_index) {
    if (f.degree() < 1) throw DomainError("minimal polynomial must have positive degree");
    AlgebraicNumber b;
    b.minpoly_ = f.primitive_part();
    if (root_index >= static_cast<std::size_t>(b.minpoly_.degree()))
        throw DomainError("root index " + std::to_string(root_index) + " out of range for degree " +
                          std::to_string(b.minpoly_.degree()));
    b.root_index_ = root_index;
    b.roots_ = complex_roots<kRootDigits>(b.minpoly_, 1e-60);
    switch (check_irreducible(b.minpoly_)) {
        case Irreducibility::reducible:
            throw DomainError("polynomial is reducible over Q: " + b.minpoly_.to_string());
        case Irreducibility::unknown:
            b.irreducible_verified_ = false;
            break;
        case Irreducibility::irreducible:
            break;
    }
    return b;
}

AlgebraicNumber AlgebraicNumber::parse(std::string_view text) {
    std::string t(text);
    std::erase_if(t, [](unsigned char c) { return std::isspace(c); });
    if (t.rfind("poly:", 0) == 0) {
        const auto semi = t.find(";root:");
        if (semi == std::string::npos) throw DomainError("expected 'poly:<coeffs>;root:<index>'");
        const std::string list = t.substr(5, semi - 5);
        std::vector<Integer> coeffs;
        std::size_t pos = 0;
        while (true) {
            const auto comma = list.find(',', pos);
            coeffs.push_back(parse_integer(list.substr(pos, comma - pos)));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        const std::string idx = trim(t.substr(semi + 6));
        std::size_t index = 0;
        const auto [ptr, ec] = std::from_chars(idx.data(), idx.data() + idx.size(), index);
        if (ec != std::errc() || ptr != idx.data() + idx.size() || idx.empty())
            throw DomainError("bad root index: '" + idx + "'");
        return from_polynomial(IntPolynomial(std::move(coeffs)), index);
    }
    const auto slash = t.find('/');
    Rational r;
    if (slash == std::string::npos) {
        r = Rational(parse_integer(t));
    } else {
        const Integer num = parse_integer(t.substr(0, slash));
        const Integer den = parse_integer(t.substr(slash + 1));
        if (den == 0) throw DomainError("zero denominator in '" + t + "'");
        r = Rational(num, den);
        r.canonicalize();
    }
    return from_rational(r);
}

Rational AlgebraicNumber::as_rational() const {
    if (!is_rational()) throw DomainError("not a rational number: " + to_string());
    Rational r(-minpoly_.coeff(0), minpoly_.coeff(1));
    r.canonicalize();
    return r;
}

std::vector<std::complex<double>> AlgebraicNumber::conjugates_double() const {
    std::vector<std::complex<double>> out;
    for (const auto& z : conjugates()) out.push_back(z.to_double());
    return out;
}

std::string AlgebraicNumber::to_string() const {
    if (is_rational()) return as_rational().get_str();
    return "poly:" + minpoly_.to_csv() + ";root:" + std::to_string(root_index_);
}

Place Place::finite(const Integer& p) {
    if (!is_prime(p)) throw DomainError("finite place needs a prime, got " + p.get_str());
    return {PlaceKind::finite, p};
}

std::string Place::to_string() const { return kind == PlaceKind::archimedean ? "inf" : prime.get_str(); }

RootFloat weil_height_precise(const AlgebraicNumber& beta) {
    const Integer lc = abs(beta.minpoly().leading());
    RootFloat sum = log(RootFloat(lc.get_mpz_t()));
    for (const auto& z : beta.conjugates()) {
        const RootFloat m = z.abs();
        if (m > 1) sum += log(m);
    }
    return sum / beta.degree();
}

double weil_height(const AlgebraicNumber& beta) { return weil_height_precise(beta).convert_to<double>(); }

std::optional<std::uint64_t> cyclotomic_index(const IntPolynomial& f_in) {
    const IntPolynomial f = f_in.primitive_part();
    const int d = f.degree();
    if (d < 1 || f.leading() != 1 || abs(f.coeff(0)) != 1) return std::nullopt;
    const std::uint64_t bound = 2ULL * d * d + 2;
    for (std::uint64_t n = 1; n <= bound; ++n)
        if (euler_phi(n) == static_cast<std::uint64_t>(d) && cyclotomic(n) == f) return n;
    return std::nullopt;
}

std::optional<std::uint64_t> is_root_of_unity(const AlgebraicNumber& beta) { return cyclotomic_index(beta.minpoly()); }

}  // namespace sint
