#pragma once

// S-integrality of Galois orbits of roots of unity relative to an algebraic
// number, detected through resultants with cyclotomic polynomials.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sint/algebraic.hpp"

namespace sint {

/// A finite set of rational primes together with the archimedean place,
/// which is always present and never obstructs integrality.
class PrimeSet {
public:
    PrimeSet() = default;
    explicit PrimeSet(std::vector<Integer> primes);
    /// Comma-separated list; "inf" entries and blanks are accepted and ignored.
    static PrimeSet parse(const std::string& text);

    const std::vector<Integer>& primes() const { return primes_; }
    bool includes_archimedean() const { return true; }
    bool contains(const Integer& p) const;
    std::size_t finite_size() const { return primes_.size(); }
    std::string to_string() const;

private:
    std::vector<Integer> primes_;
};

struct ContactReport {
    std::uint64_t n = 0;
    std::uint64_t orbit_size = 0;
    /// |res(f_beta, Phi_n)|
    Integer resultant;
    Factorization contact_primes;
    bool s_integral = false;
};

/// Primes where the closure of beta meets the orbit of primitive n-th roots.
/// Throws DomainError when beta is itself a primitive n-th root of unity.
ContactReport contact_primes(const AlgebraicNumber& beta, std::uint64_t n, const PrimeSet& S = {},
                             const FactorBudget& budget = {});

/// |res(f_beta, Phi_n)|, with n = 1 evaluated directly as |f_beta(1)|.
Integer contact_resultant(const IntPolynomial& f, std::uint64_t n);

/// All n <= N whose orbit is S-integral relative to beta, ascending. The orbit
/// containing beta (if beta is a root of unity) is skipped. Parallel over n.
std::vector<ContactReport> enumerate_s_integral(const AlgebraicNumber& beta, const PrimeSet& S, std::uint64_t N);
/// Single-threaded reference for enumerate_s_integral.
std::vector<ContactReport> enumerate_s_integral_serial(const AlgebraicNumber& beta, const PrimeSet& S,
                                                       std::uint64_t N);

struct UniformityReport {
    std::uint64_t N = 0;
    double c = 1;
    double threshold = 0;  // c * deg(beta)^10
    std::uint64_t orbit_count = 0;
    std::uint64_t max_phi = 0;
    std::uint64_t count_above_threshold = 0;
    /// Orbits above the threshold may number at most |S_fin|.
    std::uint64_t exceptional_bound = 0;
    bool within_bound = true;
    std::vector<std::uint64_t> orders;
};

UniformityReport uniformity_report(const AlgebraicNumber& beta, const PrimeSet& S, std::uint64_t N, double c = 1);

/// v_p(zeta_n - 1) normalized by v_p(p) = 1; infinite for n = 1.
struct RootValuation {
    bool infinite = false;
    Rational value = 0;
    std::string to_string() const;
};
RootValuation root_of_unity_valuation(std::uint64_t n, const Integer& p);

/// Largest v_p(zeta_1 - zeta_2) over distinct roots of unity of order <= N,
/// compared against 1/(p-1). A violation means strictly above the bound.
struct SeparationResult {
    bool violated = false;
    Rational bound;
    Rational max_valuation;
    // zeta_i = exp(2 pi i a_i / m_i), reduced; orders m_1, m_2
    std::uint64_t a1 = 0, m1 = 1, a2 = 0, m2 = 1;
    std::uint64_t pairs_checked = 0;
};
SeparationResult two_orbit_separation_check(std::uint64_t p, std::uint64_t N);
/// One exhaustive pair scan shared by several primes; results follow `primes`.
std::vector<SeparationResult> two_orbit_separation_scan(const std::vector<std::uint64_t>& primes, std::uint64_t N);

}  // namespace sint
