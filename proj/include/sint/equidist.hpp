#pragma once

// Equidistribution of roots of unity on the unit circle: disc counts against
// the uniform measure, and the log+ discrepancy of orbit averages.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "sint/algebraic.hpp"

namespace sint {

enum class MeasureKind { uniform_circle, gauss_point };

struct MeasureModel {
    MeasureKind kind = MeasureKind::uniform_circle;
    /// Mass of the open disc D(center, eps). The Gauss point measure is a
    /// marker only and has no disc masses here.
    double disc_mass(std::complex<double> center, double eps) const;
};

/// Integral over the unit circle (uniform probability) of log+ 1/|x - beta|.
/// Zero exactly when |beta| >= 2 or beta = 0.
double circle_integral_logplus(std::complex<double> beta, double tol = 1e-12);

struct DiscCountRecord {
    std::uint64_t n = 0;
    std::uint64_t m = 0;  // phi(n)
    std::complex<double> center;
    double eps = 0, kappa = 1, C = 1;
    std::uint64_t lhs = 0;
    double term1 = 0;  // 1 / (eps m^(1/kappa - 1))
    double term2 = 0;  // m * mu(D(center, e * eps))
    double term3 = 0;  // C sqrt(m log m)
    bool holds = false;
};

/// Number of primitive n-th roots of unity in the open disc D(center, eps).
std::uint64_t disc_count(std::uint64_t n, std::complex<double> center, double eps);
/// Reference count by scanning every primitive root.
std::uint64_t disc_count_bruteforce(std::uint64_t n, std::complex<double> center, double eps);

DiscCountRecord disc_count_check(std::uint64_t n, std::complex<double> center, double eps, double kappa, double C);

struct DiscQuery {
    std::uint64_t n;
    std::complex<double> center;
    double eps;
};
/// disc_count_check over a batch, parallel over queries; order preserved.
std::vector<DiscCountRecord> disc_count_grid(const std::vector<DiscQuery>& queries, double kappa, double C);
std::vector<DiscCountRecord> disc_count_grid_serial(const std::vector<DiscQuery>& queries, double kappa, double C);

/// |(1/phi(n)) sum_j log+ 1/|zeta^j - beta| - circle_integral_logplus(beta)|
double logplus_discrepancy(std::complex<double> beta, std::uint64_t n, double tol = 1e-12);
double logplus_discrepancy(const AlgebraicNumber& beta, std::uint64_t n, double tol = 1e-12);

struct RateRow {
    std::uint64_t n = 0;
    std::uint64_t phi = 0;
    double discrepancy = 0;
    /// max over the orbit of log 1/|zeta - beta|
    double max_closeness = 0;
    /// A (h(beta) + 1) phi^(1/2 - delta)
    double hypothesis_bound = 0;
    bool hypothesis_holds = false;
};

struct RateProfile {
    std::vector<RateRow> rows;
    bool degenerate = false;  // fewer than two positive discrepancies
    double slope = 0;         // least squares of log discrepancy on log phi
};

RateProfile rate_profile(const AlgebraicNumber& beta, const std::vector<std::uint64_t>& n_list, double A = 1,
                         double delta = 0.25);

}  // namespace sint
