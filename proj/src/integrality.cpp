#include "sint/integrality.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <exception>
#include <numeric>
#include <sstream>

namespace sint {

PrimeSet::PrimeSet(std::vector<Integer> primes) : primes_(std::move(primes)) {
    for (const auto& p : primes_)
        if (!is_prime(p)) throw DomainError("prime set entry is not prime: " + p.get_str());
    std::sort(primes_.begin(), primes_.end());
    primes_.erase(std::unique(primes_.begin(), primes_.end()), primes_.end());
}

PrimeSet PrimeSet::parse(const std::string& text) {
    std::vector<Integer> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::erase_if(item, [](unsigned char c) { return std::isspace(c); });
        if (item.empty() || item == "inf" || item == "oo") continue;
        Integer p;
        if (p.set_str(item, 10) != 0) throw DomainError("bad prime in set: '" + item + "'");
        out.push_back(p);
    }
    return PrimeSet(std::move(out));
}

bool PrimeSet::contains(const Integer& p) const { return std::binary_search(primes_.begin(), primes_.end(), p); }

std::string PrimeSet::to_string() const {
    std::string s;
    for (const auto& p : primes_) s += p.get_str() + ",";
    return s + "inf";
}

Integer contact_resultant(const IntPolynomial& f, std::uint64_t n) {
    if (n == 0) throw DomainError("orbit order must be positive");
    if (n == 1) return abs(f.evaluate(Integer(1)));
    const IntPolynomial phi = cyclotomic(n);
    if (f.degree() == 1) return abs(phi.homogeneous_evaluate(-f.coeff(0), f.coeff(1)));
    return abs(resultant(f, phi));
}

ContactReport contact_primes(const AlgebraicNumber& beta, std::uint64_t n, const PrimeSet& S,
                             const FactorBudget& budget) {
    ContactReport r;
    r.n = n;
    r.orbit_size = euler_phi(n);
    r.resultant = contact_resultant(beta.minpoly(), n);
    if (r.resultant == 0)
        throw DomainError("beta lies in the orbit of primitive " + std::to_string(n) + "-th roots of unity");
    r.contact_primes = factor_partial(r.resultant, budget);
    r.s_integral = strip_primes(r.resultant, S.primes()) == 1;
    return r;
}

namespace {

// The orbit of order n when it is S-integral; the factorization then
// consists of S-primes only, so no general factoring is needed.
std::optional<ContactReport> s_integral_orbit(const IntPolynomial& f, std::uint64_t n, const PrimeSet& S) {
    ContactReport r;
    r.n = n;
    r.resultant = contact_resultant(f, n);
    if (r.resultant == 0) return std::nullopt;
    std::map<Integer, unsigned> found;
    if (strip_primes(r.resultant, S.primes(), &found) != 1) return std::nullopt;
    r.orbit_size = euler_phi(n);
    r.contact_primes.prime_powers = std::move(found);
    r.s_integral = true;
    return r;
}

}  // namespace

std::vector<ContactReport> enumerate_s_integral_serial(const AlgebraicNumber& beta, const PrimeSet& S,
                                                       std::uint64_t N) {
    std::vector<ContactReport> out;
    for (std::uint64_t n = 1; n <= N; ++n)
        if (auto r = s_integral_orbit(beta.minpoly(), n, S)) out.push_back(std::move(*r));
    return out;
}

std::vector<ContactReport> enumerate_s_integral(const AlgebraicNumber& beta, const PrimeSet& S, std::uint64_t N) {
    std::vector<std::optional<ContactReport>> slots(N);
    std::exception_ptr error;
    const auto count = static_cast<std::int64_t>(N);
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t i = count - 1; i >= 0; --i) {
        try {
            slots[static_cast<std::size_t>(i)] = s_integral_orbit(beta.minpoly(), static_cast<std::uint64_t>(i) + 1, S);
        } catch (...) {
#pragma omp critical
            error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    std::vector<ContactReport> out;
    for (auto& s : slots)
        if (s) out.push_back(std::move(*s));
    return out;
}

UniformityReport uniformity_report(const AlgebraicNumber& beta, const PrimeSet& S, std::uint64_t N, double c) {
    UniformityReport u;
    u.N = N;
    u.c = c;
    u.threshold = c * std::pow(static_cast<double>(beta.degree()), 10);
    u.exceptional_bound = S.finite_size();
    if (N == 0) return u;
    for (const auto& r : enumerate_s_integral(beta, S, N)) {
        ++u.orbit_count;
        u.max_phi = std::max(u.max_phi, r.orbit_size);
        if (static_cast<double>(r.orbit_size) > u.threshold) ++u.count_above_threshold;
        u.orders.push_back(r.n);
    }
    u.within_bound = u.count_above_threshold <= u.exceptional_bound;
    return u;
}

std::string RootValuation::to_string() const { return infinite ? "inf" : value.get_str(); }

RootValuation root_of_unity_valuation(std::uint64_t n, const Integer& p) {
    if (!is_prime(p)) throw DomainError("root_of_unity_valuation: " + p.get_str() + " is not prime");
    if (n == 0) throw DomainError("root_of_unity_valuation: order must be positive");
    RootValuation v;
    if (n == 1) {
        v.infinite = true;
        return v;
    }
    Integer m = static_cast<unsigned long>(n);
    Integer pk = 1;  // p^(k-1)
    if (!mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) return v;
    mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
        pk *= p;
    }
    if (m != 1) return v;
    v.value = Rational(Integer(1), pk * (p - 1));
    return v;
}

std::vector<SeparationResult> two_orbit_separation_scan(const std::vector<std::uint64_t>& primes, std::uint64_t N) {
    if (N < 2) throw DomainError("two_orbit_separation_check: N must be at least 2");
    if (N > 3000) throw DomainError("two_orbit_separation_check: N above 3000 is not supported");
    for (auto p : primes)
        if (!is_prime(Integer(static_cast<unsigned long>(p))))
            throw DomainError("two_orbit_separation_check: " + std::to_string(p) + " is not prime");

    // base[t] = p when t = p^k (k >= 1), else 0; exponent in expo[t].
    const std::uint64_t T = N * N;
    std::vector<std::uint32_t> base(T + 1, 0);
    std::vector<std::uint8_t> expo(T + 1, 0);
    std::vector<bool> composite(T + 1, false);
    for (std::uint64_t q = 2; q <= T; ++q) {
        if (composite[q]) continue;
        for (std::uint64_t v = q * q; v <= T; v += q) composite[v] = true;
        std::uint8_t k = 1;
        for (std::uint64_t v = q; v <= T; v *= q, ++k) {
            base[v] = static_cast<std::uint32_t>(q);
            expo[v] = k;
        }
    }

    struct Root {
        std::uint32_t a, m;
    };
    std::vector<Root> roots;
    for (std::uint32_t m = 1; m <= N; ++m)
        for (std::uint32_t a = 0; a < m; ++a)
            if (std::gcd(a, m) == 1) roots.push_back({a, m});

    // Per prime: smallest exponent k of a quotient order p^k seen, with the
    // first pair (in scan order) attaining it. Smaller k is larger valuation.
    struct Best {
        std::uint8_t k = 255;
        std::uint64_t i = 0, j = 0;
    };
    std::vector<std::uint32_t> want(T + 1, 0);
    std::vector<std::size_t> slot(T + 1, 0);
    for (std::size_t s = 0; s < primes.size(); ++s)
        if (primes[s] <= T) want[primes[s]] = 1, slot[primes[s]] = s;

    const auto R = static_cast<std::int64_t>(roots.size());
    std::vector<std::vector<Best>> rows(static_cast<std::size_t>(R), std::vector<Best>(primes.size()));
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < R; ++i) {
        auto& row = rows[static_cast<std::size_t>(i)];
        const auto [a1, m1] = roots[static_cast<std::size_t>(i)];
        for (std::int64_t j = i + 1; j < R; ++j) {
            const auto [a2, m2] = roots[static_cast<std::size_t>(j)];
            const std::int64_t L = static_cast<std::int64_t>(m1) * m2;
            const std::int64_t x = static_cast<std::int64_t>(a2) * m1 - static_cast<std::int64_t>(a1) * m2;
            const auto t = static_cast<std::uint64_t>(L / std::gcd(x < 0 ? -x : x, L));
            const std::uint32_t b = base[t];
            if (b == 0 || !want[b]) continue;
            Best& best = row[slot[b]];
            if (expo[t] < best.k) best = {expo[t], static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j)};
        }
    }

    const std::uint64_t pairs = static_cast<std::uint64_t>(R) * (R - 1) / 2;
    std::vector<SeparationResult> out;
    for (std::size_t s = 0; s < primes.size(); ++s) {
        const Integer p = static_cast<unsigned long>(primes[s]);
        SeparationResult r;
        r.bound = Rational(Integer(1), p - 1);
        r.pairs_checked = pairs;
        Best best;
        for (const auto& row : rows)
            if (row[s].k < best.k) best = row[s];
        if (best.k != 255) {
            Integer pk;
            mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), best.k - 1U);
            r.max_valuation = Rational(Integer(1), pk * (p - 1));
            r.a1 = roots[best.i].a, r.m1 = roots[best.i].m;
            r.a2 = roots[best.j].a, r.m2 = roots[best.j].m;
        }
        r.violated = r.max_valuation > r.bound;
        out.push_back(r);
    }
    return out;
}

SeparationResult two_orbit_separation_check(std::uint64_t p, std::uint64_t N) {
    return two_orbit_separation_scan({p}, N).front();
}

}  // namespace sint
