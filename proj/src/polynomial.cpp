#include "sint/bigarith.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace sint {

IntPolynomial::IntPolynomial(std::vector<Integer> ascending) : coeffs_(std::move(ascending)) { trim(); }

IntPolynomial::IntPolynomial(std::initializer_list<long> ascending) {
    coeffs_.reserve(ascending.size());
    for (long c : ascending) coeffs_.emplace_back(c);
    trim();
}

IntPolynomial IntPolynomial::constant(const Integer& c) { return IntPolynomial(std::vector<Integer>{c}); }

IntPolynomial IntPolynomial::monomial(const Integer& c, std::size_t k) {
    std::vector<Integer> v(k + 1);
    v[k] = c;
    return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::x_pow_minus_one(std::size_t n) {
    std::vector<Integer> v(n + 1);
    v[0] = -1;
    v[n] += 1;
    return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::linear_root(const Rational& r) {
    return IntPolynomial(std::vector<Integer>{-r.get_num(), r.get_den()});
}

void IntPolynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Integer IntPolynomial::coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Integer(0); }

const Integer& IntPolynomial::leading() const {
    if (coeffs_.empty()) throw DomainError("leading coefficient of the zero polynomial");
    return coeffs_.back();
}

Integer IntPolynomial::content() const {
    Integer g = 0;
    for (const auto& c : coeffs_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

IntPolynomial IntPolynomial::primitive_part() const {
    if (is_zero()) return {};
    Integer g = content();
    if (leading() < 0) g = -g;
    std::vector<Integer> v(coeffs_.size());
    for (std::size_t i = 0; i < v.size(); ++i) mpz_divexact(v[i].get_mpz_t(), coeffs_[i].get_mpz_t(), g.get_mpz_t());
    return IntPolynomial(std::move(v));
}

Integer IntPolynomial::evaluate(const Integer& x) const {
    Integer acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Rational IntPolynomial::evaluate(const Rational& x) const {
    Rational r(homogeneous_evaluate(x.get_num(), x.get_den()));
    Integer scale;
    mpz_pow_ui(scale.get_mpz_t(), x.get_den().get_mpz_t(), static_cast<unsigned long>(std::max(degree(), 0)));
    r /= scale;
    r.canonicalize();
    return r;
}

Integer IntPolynomial::homogeneous_evaluate(const Integer& num, const Integer& den) const {
    // sum c_i num^i den^(d-i), Horner in num with den powers folded in.
    Integer acc = 0;
    Integer den_pow = 1;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * num + *it * den_pow;
        den_pow *= den;
    }
    return acc;
}

IntPolynomial IntPolynomial::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Integer> v(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) v[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
    return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::compose_linear(const Integer& a, const Integer& b) const {
    IntPolynomial lin(std::vector<Integer>{b, a});
    IntPolynomial acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc *= lin;
        acc += constant(*it);
    }
    return acc;
}

IntPolynomial IntPolynomial::substitute_power(std::size_t k) const {
    if (k == 1 || is_zero()) return *this;
    std::vector<Integer> v((coeffs_.size() - 1) * k + 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) v[i * k] = coeffs_[i];
    return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::reversed() const {
    std::vector<Integer> v(coeffs_.rbegin(), coeffs_.rend());
    return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::operator-() const {
    IntPolynomial r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

IntPolynomial& IntPolynomial::operator+=(const IntPolynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
}

IntPolynomial& IntPolynomial::operator-=(const IntPolynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
}

IntPolynomial& IntPolynomial::operator*=(const IntPolynomial& o) {
    if (is_zero() || o.is_zero()) {
        coeffs_.clear();
        return *this;
    }
    std::vector<Integer> v(coeffs_.size() + o.coeffs_.size() - 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
            mpz_addmul(v[i + j].get_mpz_t(), coeffs_[i].get_mpz_t(), o.coeffs_[j].get_mpz_t());
    }
    coeffs_ = std::move(v);
    trim();
    return *this;
}

IntPolynomial& IntPolynomial::operator*=(const Integer& c) {
    for (auto& x : coeffs_) x *= c;
    trim();
    return *this;
}

std::string IntPolynomial::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Integer& c = coeffs_[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        Integer mag = abs(c);
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (i == 0 || mag != 1) {
            os << mag;
            if (i > 0) os << "*";
        }
        if (i >= 1) os << "x";
        if (i >= 2) os << "^" << i;
    }
    return os.str();
}

std::string IntPolynomial::to_csv() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) os << (i ? "," : "") << coeffs_[i];
    return os.str();
}

namespace {

// Schoolbook division over Z; throws as soon as a quotient coefficient
// would leave the integers.
std::pair<IntPolynomial, IntPolynomial> divide(const IntPolynomial& a, const IntPolynomial& b) {
    if (b.is_zero()) throw DomainError("polynomial division by zero");
    std::vector<Integer> r = a.coefficients();
    const auto& bc = b.coefficients();
    const int db = b.degree();
    if (a.degree() < db) return {IntPolynomial{}, a};
    std::vector<Integer> q(static_cast<std::size_t>(a.degree() - db + 1));
    Integer t;
    for (int i = a.degree(); i >= db; --i) {
        const Integer& top = r[static_cast<std::size_t>(i)];
        if (top == 0) continue;
        if (!mpz_divisible_p(top.get_mpz_t(), bc.back().get_mpz_t()))
            throw DomainError("polynomial division is not exact over the integers");
        mpz_divexact(t.get_mpz_t(), top.get_mpz_t(), bc.back().get_mpz_t());
        const auto shift = static_cast<std::size_t>(i - db);
        q[shift] = t;
        for (std::size_t j = 0; j < bc.size(); ++j) mpz_submul(r[shift + j].get_mpz_t(), t.get_mpz_t(), bc[j].get_mpz_t());
    }
    return {IntPolynomial(std::move(q)), IntPolynomial(std::move(r))};
}

}  // namespace

IntPolynomial divide_exact(const IntPolynomial& a, const IntPolynomial& b) {
    auto [q, r] = divide(a, b);
    if (!r.is_zero()) throw DomainError("polynomial division leaves a remainder");
    return q;
}

IntPolynomial pseudo_remainder(const IntPolynomial& a, const IntPolynomial& b) {
    if (b.is_zero()) throw DomainError("pseudo-remainder by zero");
    const int db = b.degree();
    if (a.degree() < db) return a;
    std::vector<Integer> r = a.coefficients();
    const auto& bc = b.coefficients();
    const Integer& lb = bc.back();
    for (int i = a.degree(); i >= db; --i) {
        // r <- lb * r - r_i x^(i-db) b
        const Integer top = r[static_cast<std::size_t>(i)];
        for (auto& c : r) c *= lb;
        const auto shift = static_cast<std::size_t>(i - db);
        for (std::size_t j = 0; j < bc.size(); ++j) mpz_submul(r[shift + j].get_mpz_t(), top.get_mpz_t(), bc[j].get_mpz_t());
        r.resize(static_cast<std::size_t>(i));
    }
    return IntPolynomial(std::move(r));
}

IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero()) return b.primitive_part();
    if (b.is_zero()) return a.primitive_part();
    IntPolynomial u = a.primitive_part();
    IntPolynomial v = b.primitive_part();
    if (u.degree() < v.degree()) std::swap(u, v);
    while (!v.is_zero()) {
        IntPolynomial r = pseudo_remainder(u, v);
        u = std::move(v);
        v = r.is_zero() ? r : r.primitive_part();
    }
    return u.primitive_part();
}

Integer resultant(const IntPolynomial& f, const IntPolynomial& g) {
    if (f.is_zero() || g.is_zero()) throw DomainError("resultant of a zero polynomial");
    IntPolynomial A = f;
    IntPolynomial B = g;
    int s = 1;
    if (A.degree() < B.degree()) {
        std::swap(A, B);
        if ((A.degree() & 1) && (B.degree() & 1)) s = -1;
    }
    const Integer a = A.content();
    const Integer b = B.content();
    Integer t, tb;
    mpz_pow_ui(t.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(B.degree()));
    mpz_pow_ui(tb.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(A.degree()));
    t *= tb;
    A = divide_exact(A, IntPolynomial::constant(a));
    B = divide_exact(B, IntPolynomial::constant(b));

    Integer gg = 1;
    Integer h = 1;
    Integer tmp;
    while (B.degree() > 0) {
        const int delta = A.degree() - B.degree();
        if ((A.degree() & 1) && (B.degree() & 1)) s = -s;
        IntPolynomial R = pseudo_remainder(A, B);
        A = std::move(B);
        if (R.is_zero()) return 0;
        // B <- R / (g h^delta)
        mpz_pow_ui(tmp.get_mpz_t(), h.get_mpz_t(), static_cast<unsigned long>(delta));
        tmp *= gg;
        std::vector<Integer> rc = R.coefficients();
        for (auto& c : rc) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), tmp.get_mpz_t());
        B = IntPolynomial(std::move(rc));
        gg = A.leading();
        // h <- h^(1-delta) g^delta
        if (delta == 0) continue;
        Integer gpow, hpow;
        mpz_pow_ui(gpow.get_mpz_t(), gg.get_mpz_t(), static_cast<unsigned long>(delta));
        mpz_pow_ui(hpow.get_mpz_t(), h.get_mpz_t(), static_cast<unsigned long>(delta - 1));
        mpz_divexact(h.get_mpz_t(), gpow.get_mpz_t(), hpow.get_mpz_t());
    }
    // B is a nonzero constant here.
    const int da = A.degree();
    Integer lpow, hpow;
    mpz_pow_ui(lpow.get_mpz_t(), B.leading().get_mpz_t(), static_cast<unsigned long>(da));
    if (da >= 1) {
        mpz_pow_ui(hpow.get_mpz_t(), h.get_mpz_t(), static_cast<unsigned long>(da - 1));
        mpz_divexact(h.get_mpz_t(), lpow.get_mpz_t(), hpow.get_mpz_t());
    } else {
        h = lpow;
    }
    return s * t * h;
}

Integer discriminant(const IntPolynomial& f) {
    const int d = f.degree();
    if (d < 1) throw DomainError("discriminant needs degree >= 1");
    Integer r = resultant(f, f.derivative());
    mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), f.leading().get_mpz_t());
    if ((static_cast<long>(d) * (d - 1) / 2) % 2 != 0) r = -r;
    return r;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        out.push_back(p);
        while (n % p == 0) n /= p;
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::uint64_t euler_phi(std::uint64_t n) {
    if (n == 0) return 0;
    std::uint64_t r = n;
    for (auto p : prime_divisors(n)) r = r / p * (p - 1);
    return r;
}

int moebius(std::uint64_t n) {
    if (n == 0) return 0;
    int mu = 1;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        mu = -mu;
    }
    if (n > 1) mu = -mu;
    return mu;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
    std::vector<std::uint64_t> lo, hi;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        lo.push_back(d);
        if (d != n / d) hi.push_back(n / d);
    }
    lo.insert(lo.end(), hi.rbegin(), hi.rend());
    return lo;
}

IntPolynomial cyclotomic(std::uint64_t n) {
    if (n == 0) throw DomainError("cyclotomic: n must be positive");
    if (n == 1) return IntPolynomial{-1, 1};
    std::uint64_t rad = 1;
    for (auto p : prime_divisors(n)) rad *= p;
    // Phi_rad = prod_{d | rad} (1 - x^d)^mu(rad/d), expanded as a power series
    // truncated at its degree phi(rad). Multiplications before divisions keeps
    // the intermediate series polynomial.
    const std::size_t deg = euler_phi(rad);
    std::vector<Integer> s(deg + 1);
    s[0] = 1;
    const auto divs = divisors(rad);
    for (auto d : divs) {
        if (moebius(rad / d) != 1 || d > deg) continue;
        for (std::size_t i = deg; i >= d; --i) s[i] -= s[i - d];
    }
    for (auto d : divs) {
        if (moebius(rad / d) != -1 || d > deg) continue;
        for (std::size_t i = d; i <= deg; ++i) s[i] += s[i - d];
    }
    return IntPolynomial(std::move(s)).substitute_power(n / rad);
}

}  // namespace sint
