#pragma once

// Explicit lower bounds for linear forms in logarithms, and the cyclotomic
// gap experiment that checks them against actual distances.

#include <cstdint>
#include <string>
#include <vector>

#include "sint/algebraic.hpp"

namespace sint {

struct LmnInput {
    double abs_log_alpha = 0;  // |log alpha|, principal branch
    double height_alpha = 0;   // h(alpha)
    double half_degree = 0;    // [Q(alpha):Q] / 2
    std::uint64_t b1 = 1;
    std::uint64_t b2 = 1;
};

struct LmnTerms {
    double a = 0;
    double H = 0;
    double bound = 0;  // -8.87 a H^2
};

/// Laurent-Mignotte-Nesterenko lower bound for log|b1 i pi - b2 log alpha|
/// with |alpha| = 1. DomainError on invalid input.
LmnTerms lmn_terms(const LmnInput& in);
double lmn_lower_bound(const LmnInput& in);

enum class GapBranch {
    lmn,              // Thm route with b1 = k, b2 = n
    liouville,        // k <= 0: |Lambda| >= n |log beta|, bounded by Liouville
    circle_distance,  // |beta| != 1: gap >= ||beta| - 1|
};

std::string to_string(GapBranch b);

struct GapParams {
    /// Constants of the abstract corollary form -C_eps d^3 (h + 1) n^eps.
    double C_eps = 1;
    double eps = 1;
};

struct GapRow {
    std::uint64_t n = 0;
    /// min over primitive n-th roots zeta of log|beta - zeta|
    double actual_gap = 0;
    /// Lower bound valid for every primitive zeta of order n.
    double bound = 0;
    double margin = 0;  // actual_gap - bound
    GapBranch branch = GapBranch::lmn;
    /// Largest b1 used by the LMN branch (0 otherwise).
    std::uint64_t k = 0;
    /// Reported only; its constant is not effective.
    double corollary_form = 0;
    bool violated = false;
};

/// True when beta lies on the unit circle at its embedding: the minimal
/// polynomial is self-reciprocal up to sign and |beta| = 1 numerically.
bool on_unit_circle(const AlgebraicNumber& beta);

/// Gap rows for n = 1..N, parallel over n. DomainError for roots of unity.
std::vector<GapRow> cyclotomic_gap_experiment(const AlgebraicNumber& beta, std::uint64_t N, GapParams params = {});
std::vector<GapRow> cyclotomic_gap_experiment_serial(const AlgebraicNumber& beta, std::uint64_t N,
                                                     GapParams params = {});
GapRow cyclotomic_gap_row(const AlgebraicNumber& beta, std::uint64_t n, GapParams params = {});

/// -C D^6 (log D + 1)^2 log B (hE + 1)(log+ hE + 1)^4
double dhk_bound(double D, double logB, double hE, double C = 1);
/// -C (hE + 1) log B
double ag_cm_bound(double logB, double hE, double C = 1);

}  // namespace sint
