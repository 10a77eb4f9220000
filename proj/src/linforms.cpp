#include "sint/linforms.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <numeric>

namespace sint {

namespace {

using ld = long double;

bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0; }

double log_plus(double x) { return x > 1 ? std::log(x) : 0.0; }

}  // namespace

LmnTerms lmn_terms(const LmnInput& in) {
    if (!(std::isfinite(in.abs_log_alpha) && in.abs_log_alpha > 0))
        throw DomainError("lmn_lower_bound: |log alpha| must be positive and finite");
    if (!finite_nonneg(in.height_alpha)) throw DomainError("lmn_lower_bound: h(alpha) must be nonnegative");
    if (!(std::isfinite(in.half_degree) && in.half_degree > 0))
        throw DomainError("lmn_lower_bound: D must be positive");
    if (in.b1 < 1 || in.b2 < 1) throw DomainError("lmn_lower_bound: b1 and b2 must be positive");
    const double D = in.half_degree;
    LmnTerms t;
    t.a = std::max(20.0, 10.98 * in.abs_log_alpha + D * in.height_alpha);
    const double inner = static_cast<double>(in.b1) / (2 * t.a) + static_cast<double>(in.b2) / 68.9;
    t.H = std::max({17.0, std::sqrt(D) / 10, D * std::log(inner) + 2.35 * D + 5.03});
    t.bound = -8.87 * t.a * t.H * t.H;
    return t;
}

double lmn_lower_bound(const LmnInput& in) { return lmn_terms(in).bound; }

std::string to_string(GapBranch b) {
    switch (b) {
        case GapBranch::lmn: return "lmn";
        case GapBranch::liouville: return "liouville";
        case GapBranch::circle_distance: return "circle_distance";
    }
    return "?";
}

bool on_unit_circle(const AlgebraicNumber& beta) {
    const auto& f = beta.minpoly();
    const auto r = f.reversed();
    if (!(r == f || r == -f)) return false;
    return boost::multiprecision::abs(beta.value().abs() - 1) < RootFloat("1e-40");
}

GapRow cyclotomic_gap_row(const AlgebraicNumber& beta, std::uint64_t n, GapParams params) {
    if (n == 0) throw DomainError("cyclotomic_gap: n must be positive");
    const double h = weil_height(beta);
    const double d = beta.degree();
    const auto bv = beta.value();
    const std::complex<ld> b(static_cast<ld>(bv.re), static_cast<ld>(bv.im));

    GapRow row;
    row.n = n;
    row.corollary_form = -params.C_eps * d * d * d * (h + 1) * std::pow(static_cast<double>(n), params.eps);
    ld closest = std::numeric_limits<ld>::infinity();
    for (std::uint64_t j = 0; j < n; ++j) {
        if (std::gcd(j, n) != 1) continue;
        const ld t = 2 * std::numbers::pi_v<ld> * static_cast<ld>(j) / static_cast<ld>(n);
        closest = std::min(closest, std::abs(std::complex<ld>(std::cos(t), std::sin(t)) - b));
    }
    row.actual_gap = static_cast<double>(std::log(closest));

    if (!on_unit_circle(beta)) {
        row.branch = GapBranch::circle_distance;
        const RootFloat off = boost::multiprecision::abs(bv.abs() - 1);
        row.bound = static_cast<double>(boost::multiprecision::log(off));
    } else {
        // Conjugate if needed so theta = arg(alpha) lies in (0, pi).
        const ld theta = std::abs(std::arg(b));
        const ld pi = std::numbers::pi_v<ld>;
        // |beta - zeta| = 2|sin(delta/2)| >= (2/pi)|delta|, delta = |Lambda| / n.
        const double sine = std::log(2 / std::numbers::pi);
        const double liouville = -d * (h + std::numbers::ln2) + sine;
        row.bound = std::numeric_limits<double>::infinity();
        for (std::uint64_t j = 0; j < n; ++j) {
            if (std::gcd(j, n) != 1) continue;
            const ld phi = 2 * pi * static_cast<ld>(j) / static_cast<ld>(n);
            const std::int64_t jj = phi > theta + pi ? static_cast<std::int64_t>(j) - static_cast<std::int64_t>(n)
                                                     : static_cast<std::int64_t>(j);
            double bj;
            GapBranch br;
            if (jj <= 0) {
                bj = liouville;
                br = GapBranch::liouville;
            } else {
                const auto k = static_cast<std::uint64_t>(2 * jj);
                LmnInput in{static_cast<double>(theta), h, d / 2, k, n};
                bj = lmn_lower_bound(in) - std::log(static_cast<double>(n)) + sine;
                br = GapBranch::lmn;
                row.k = std::max(row.k, k);
            }
            if (bj < row.bound) {
                row.bound = bj;
                row.branch = br;
            }
        }
    }
    row.margin = row.actual_gap - row.bound;
    row.violated = row.actual_gap < row.bound;
    return row;
}

std::vector<GapRow> cyclotomic_gap_experiment_serial(const AlgebraicNumber& beta, std::uint64_t N, GapParams params) {
    if (is_root_of_unity(beta)) throw DomainError("cyclotomic_gap: beta is a root of unity");
    std::vector<GapRow> out;
    out.reserve(N);
    for (std::uint64_t n = 1; n <= N; ++n) out.push_back(cyclotomic_gap_row(beta, n, params));
    return out;
}

std::vector<GapRow> cyclotomic_gap_experiment(const AlgebraicNumber& beta, std::uint64_t N, GapParams params) {
    if (is_root_of_unity(beta)) throw DomainError("cyclotomic_gap: beta is a root of unity");
    std::vector<GapRow> out(N);
    std::exception_ptr error;
    const auto count = static_cast<std::int64_t>(N);
#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t i = 0; i < count; ++i) {
        try {
            out[static_cast<std::size_t>(i)] = cyclotomic_gap_row(beta, static_cast<std::uint64_t>(i) + 1, params);
        } catch (...) {
#pragma omp critical
            error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    return out;
}

double dhk_bound(double D, double logB, double hE, double C) {
    if (!(std::isfinite(D) && D > 0)) throw DomainError("dhk_bound: D must be positive");
    if (!(std::isfinite(logB) && logB >= 1)) throw DomainError("dhk_bound: log B must be at least 1");
    if (!finite_nonneg(hE)) throw DomainError("dhk_bound: h_E must be nonnegative");
    if (!(std::isfinite(C) && C > 0)) throw DomainError("dhk_bound: C must be positive");
    const double lD = std::log(D) + 1;
    return -C * std::pow(D, 6) * lD * lD * logB * (hE + 1) * std::pow(log_plus(hE) + 1, 4);
}

double ag_cm_bound(double logB, double hE, double C) {
    if (!(std::isfinite(logB) && logB >= 1)) throw DomainError("ag_cm_bound: log B must be at least 1");
    if (!finite_nonneg(hE)) throw DomainError("ag_cm_bound: h_E must be nonnegative");
    if (!(std::isfinite(C) && C > 0)) throw DomainError("ag_cm_bound: C must be positive");
    return -C * (hE + 1) * logB;
}

}  // namespace sint
