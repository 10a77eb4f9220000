#pragma once

// Exact integer arithmetic and dense integer polynomials: resultants,
// cyclotomic polynomials, integer factorization and a few mod-p helpers.

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "sint/errors.hpp"

namespace sint {

using Integer = mpz_class;
using Rational = mpq_class;

/// Dense polynomial with arbitrary-precision integer coefficients, stored in
/// ascending degree order. The coefficient vector never has a trailing zero,
/// so the zero polynomial is the empty vector and has degree -1.
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<Integer> ascending);
    IntPolynomial(std::initializer_list<long> ascending);

    static IntPolynomial constant(const Integer& c);
    static IntPolynomial monomial(const Integer& c, std::size_t k);
    /// x^n - 1
    static IntPolynomial x_pow_minus_one(std::size_t n);
    /// den*x - num, the primitive linear polynomial vanishing at num/den.
    static IntPolynomial linear_root(const Rational& r);

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<Integer>& coefficients() const { return coeffs_; }
    /// Coefficient of x^i; zero beyond the degree.
    Integer coeff(std::size_t i) const;
    const Integer& leading() const;

    Integer content() const;
    /// Content removed and sign normalized so the leading coefficient is positive.
    IntPolynomial primitive_part() const;

    Integer evaluate(const Integer& x) const;
    Rational evaluate(const Rational& x) const;
    /// den^deg * f(num/den), an integer.
    Integer homogeneous_evaluate(const Integer& num, const Integer& den) const;

    IntPolynomial derivative() const;
    /// f(a*x + b)
    IntPolynomial compose_linear(const Integer& a, const Integer& b) const;
    /// f(x^k)
    IntPolynomial substitute_power(std::size_t k) const;
    /// x^deg * f(1/x)
    IntPolynomial reversed() const;

    IntPolynomial operator-() const;
    IntPolynomial& operator+=(const IntPolynomial& o);
    IntPolynomial& operator-=(const IntPolynomial& o);
    IntPolynomial& operator*=(const IntPolynomial& o);
    IntPolynomial& operator*=(const Integer& c);

    friend IntPolynomial operator+(IntPolynomial a, const IntPolynomial& b) { return a += b; }
    friend IntPolynomial operator-(IntPolynomial a, const IntPolynomial& b) { return a -= b; }
    friend IntPolynomial operator*(IntPolynomial a, const IntPolynomial& b) { return a *= b; }
    friend IntPolynomial operator*(IntPolynomial a, const Integer& c) { return a *= c; }
    friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.coeffs_ == b.coeffs_; }

    /// Human-readable form, e.g. "3*x^4 - 6*x^2 - 1".
    std::string to_string() const;
    /// Comma-separated ascending coefficients (the "poly:" input syntax).
    std::string to_csv() const;

private:
    void trim();
    std::vector<Integer> coeffs_;
};

/// Exact quotient a / b; throws DomainError when b does not divide a over Z.
IntPolynomial divide_exact(const IntPolynomial& a, const IntPolynomial& b);
/// lc(b)^(deg a - deg b + 1) * a mod b.
IntPolynomial pseudo_remainder(const IntPolynomial& a, const IntPolynomial& b);
/// Primitive gcd over Z with positive leading coefficient (zero if both are zero).
IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b);

/// Resultant by the subresultant pseudo-remainder sequence.
///
/// Sign convention is that of the Sylvester determinant with the rows of f
/// first, i.e. res(f, g) = lc(f)^deg(g) * prod_{f(a)=0} g(a). Consequently
/// res(f, g) = (-1)^(deg f * deg g) res(g, f).
Integer resultant(const IntPolynomial& f, const IntPolynomial& g);
/// disc(f) = (-1)^(d(d-1)/2) res(f, f') / lc(f).
Integer discriminant(const IntPolynomial& f);

/// n-th cyclotomic polynomial.
IntPolynomial cyclotomic(std::uint64_t n);

std::uint64_t euler_phi(std::uint64_t n);
int moebius(std::uint64_t n);
std::vector<std::uint64_t> divisors(std::uint64_t n);
/// Distinct prime divisors in ascending order (trial division).
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);
bool is_prime(const Integer& n);

/// Exact signed factorization: sign * cofactor * prod p^e. The cofactor is 1
/// for a complete factorization; otherwise it is a composite that resisted
/// the search budget and is coprime to every listed prime.
struct Factorization {
    int sign = 1;
    std::map<Integer, unsigned> prime_powers;
    Integer cofactor = 1;

    bool complete() const { return cofactor == 1; }
    unsigned valuation(const Integer& p) const;
    Integer value() const;
    /// "p^e;q" style list of the primes, plus "[c]" for an unfactored cofactor.
    std::string primes_joined(char sep = ';') const;
};

struct FactorBudget {
    std::uint64_t trial_bound = 1'000'000;
    /// Pollard-Brent iterations granted to a cofactor above 2^128.
    std::uint64_t rho_iterations = 10'000'000;
    /// Same for smaller cofactors; 0 means split them whatever it costs.
    std::uint64_t small_rho_iterations = 0;
};

/// Thrown by factor_integer when a large composite cofactor resists the budget.
class CompositeCofactorError : public DomainError {
public:
    CompositeCofactorError(Factorization partial);
    const Factorization& partial() const { return partial_; }

private:
    Factorization partial_;
};

/// Complete factorization of n != 0, primes in ascending order.
Factorization factor_integer(const Integer& n, const FactorBudget& budget = {});
/// Best-effort factorization that never throws on a resistant cofactor.
Factorization factor_partial(const Integer& n, const FactorBudget& budget = {});

/// Divides every listed prime out of |n|. Returns the remaining part and
/// records the exponents found in `found` (primes with exponent 0 omitted).
Integer strip_primes(const Integer& n, const std::vector<Integer>& primes,
                     std::map<Integer, unsigned>* found = nullptr);

/// p-adic valuation of a nonzero integer.
unsigned valuation(const Integer& n, const Integer& p);

/// Polynomials over F_p with p < 2^32, ascending, trimmed.
namespace modp {

using Poly = std::vector<std::uint64_t>;

Poly reduce(const IntPolynomial& f, std::uint64_t p);
int degree(const Poly& a);
Poly sub(const Poly& a, const Poly& b, std::uint64_t p);
Poly mul(const Poly& a, const Poly& b, std::uint64_t p);
Poly rem(const Poly& a, const Poly& m, std::uint64_t p);
Poly gcd(Poly a, Poly b, std::uint64_t p);
/// x^e mod m
Poly pow_x(const Integer& e, const Poly& m, std::uint64_t p);

/// Distinct-degree factorization of a squarefree polynomial: entry d holds the
/// number of irreducible factors of degree d.
std::vector<int> distinct_degree_counts(const Poly& f, std::uint64_t p);

}  // namespace modp

}  // namespace sint
