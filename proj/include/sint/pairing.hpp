#pragma once

// Local decomposition of the pairing height of beta against the orbit of
// primitive n-th roots of unity, for the squaring-type map z^d.

#include <cstdint>
#include <map>
#include <vector>

#include "sint/algebraic.hpp"

namespace sint {

/// Factoring budget for resultants in pairing reports. Resistant cofactors
/// are kept as a single lumped term.
inline constexpr FactorBudget kPairingBudget{1'000'000, 200'000, 4'000'000};

struct PairingDecomposition {
    std::uint64_t n = 0;
    double archimedean_part = 0;
    /// c_p = v_p(Res) log p / (phi(n) deg beta)
    std::map<Integer, double> finite_parts;
    /// v_p(Res) / (phi(n) deg beta), the exact multiplicity of log p
    std::map<Integer, Rational> multiplicities;
    /// Unfactored part of |Res| and its share log(cofactor)/(phi(n) deg beta).
    Integer cofactor = 1;
    double cofactor_part = 0;
    double finite_sum = 0;
    double height = 0;
    /// archimedean_part + finite_sum - h(beta)
    double residual = 0;
    /// Certified bound on the numerical error of archimedean_part.
    double error_bound = 0;
    Integer resultant;
};

/// (1/(phi(n) d)) sum over primitive zeta and conjugates beta_i of
/// log+|zeta| + log+|beta_i| - log|zeta - beta_i|. PrecisionError if the
/// certified error exceeds tol.
double archimedean_pairing(const AlgebraicNumber& beta, std::uint64_t n, double tol = 1e-30);

/// Prime -> c_p. Only primes dividing the resultant appear.
std::map<Integer, double> finite_pairing_decomposition(const AlgebraicNumber& beta, std::uint64_t n,
                                                       const FactorBudget& budget = kPairingBudget);

PairingDecomposition pairing_decomposition(const AlgebraicNumber& beta, std::uint64_t n,
                                           const FactorBudget& budget = kPairingBudget);

/// |archimedean + sum c_p - h(beta)|
double adelic_identity_check(const AlgebraicNumber& beta, std::uint64_t n, double tol = 1e-10);

/// Pairing of beta with the invariant adelic measure of z^d: every local
/// integral of log|x - beta| equals log+|beta| (Jensen), so this is h(beta).
double az_pairing_power(const AlgebraicNumber& beta);

/// Decompositions for n = 1..N (orbits containing beta skipped), parallel over n.
std::vector<PairingDecomposition> pairing_grid(const AlgebraicNumber& beta, std::uint64_t N,
                                               const FactorBudget& budget = kPairingBudget);
std::vector<PairingDecomposition> pairing_grid_serial(const AlgebraicNumber& beta, std::uint64_t N,
                                                      const FactorBudget& budget = kPairingBudget);

}  // namespace sint
