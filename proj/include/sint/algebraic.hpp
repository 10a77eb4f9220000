#pragma once

// Algebraic numbers given by a minimal polynomial and a root index, with
// certified complex approximations of all conjugates.

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sint/bigarith.hpp"
#include "sint/bigfloat.hpp"

namespace sint {

/// Digits carried by stored root approximations.
inline constexpr unsigned kRootDigits = 100;
using RootFloat = Float<kRootDigits>;
using RootComplex = BigComplex<kRootDigits>;

/// Root approximations with one shared radius: the closed disc of that
/// radius around each center contains exactly one root.
template <unsigned Digits>
struct RootIsolation {
    std::vector<BigComplex<Digits>> centers;
    double radius = 0;
    unsigned working_digits = 0;
};

/// Certified isolation of the complex roots of a squarefree f, ordered by
/// real part and then imaginary part. Throws DomainError on repeated factors
/// and PrecisionError when 512 working digits do not certify target_radius.
template <unsigned Digits = kRootDigits>
RootIsolation<Digits> complex_roots(const IntPolynomial& f, double target_radius = 1e-60);

extern template RootIsolation<kRootDigits> complex_roots<kRootDigits>(const IntPolynomial&, double);
extern template RootIsolation<250> complex_roots<250>(const IntPolynomial&, double);

class AlgebraicNumber {
public:
    static AlgebraicNumber from_rational(const Rational& r);
    /// The root_index-th root (canonical order) of f; f is normalized to its
    /// primitive part and must be irreducible over Q.
    static AlgebraicNumber from_polynomial(const IntPolynomial& f, std::size_t root_index);
    /// "p/q", "p", or "poly:c0,c1,...;root:i".
    static AlgebraicNumber parse(std::string_view text);

    const IntPolynomial& minpoly() const { return minpoly_; }
    int degree() const { return minpoly_.degree(); }
    std::size_t root_index() const { return root_index_; }
    const std::vector<RootComplex>& conjugates() const { return roots_.centers; }
    const RootComplex& value() const { return roots_.centers[root_index_]; }
    double radius() const { return roots_.radius; }
    /// False when the modular test could not rule out a nontrivial factor.
    bool irreducibility_verified() const { return irreducible_verified_; }

    bool is_rational() const { return degree() == 1; }
    Rational as_rational() const;
    std::complex<double> value_double() const { return value().to_double(); }
    std::vector<std::complex<double>> conjugates_double() const;

    /// Input syntax that reproduces this number.
    std::string to_string() const;

private:
    IntPolynomial minpoly_;
    std::size_t root_index_ = 0;
    RootIsolation<kRootDigits> roots_;
    bool irreducible_verified_ = true;
};

enum class PlaceKind { archimedean, finite };

struct Place {
    PlaceKind kind = PlaceKind::archimedean;
    Integer prime = 0;

    static Place infinite() { return {}; }
    static Place finite(const Integer& p);
    std::string to_string() const;
};

/// Outcome of the modular irreducibility test.
enum class Irreducibility { irreducible, reducible, unknown };
Irreducibility check_irreducible(const IntPolynomial& f);
/// Factorization patterns mod `primes` good primes only: irreducible or unknown.
Irreducibility check_irreducible_modular(const IntPolynomial& f, int primes = 8);

/// Distinct rational roots, ascending.
std::vector<Rational> rational_roots(const IntPolynomial& f);

double weil_height(const AlgebraicNumber& beta);
/// Same quantity at the stored precision.
RootFloat weil_height_precise(const AlgebraicNumber& beta);

/// The order n when the minimal polynomial is the n-th cyclotomic polynomial.
std::optional<std::uint64_t> is_root_of_unity(const AlgebraicNumber& beta);
std::optional<std::uint64_t> cyclotomic_index(const IntPolynomial& f);

}  // namespace sint
