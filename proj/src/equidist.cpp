#include "sint/equidist.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <numeric>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "sint/integrality.hpp"

namespace sint {

namespace {

using ld = long double;

std::complex<ld> root_point(std::uint64_t n, std::uint64_t j) {
    const ld t = 2 * std::numbers::pi_v<ld> * static_cast<ld>(j % n) / static_cast<ld>(n);
    return {std::cos(t), std::sin(t)};
}

bool inside(std::uint64_t n, std::uint64_t j, std::complex<ld> c, ld eps) {
    return std::abs(root_point(n, j) - c) < eps;
}

// cos of the half-angle of the arc of the unit circle inside D(center, eps).
ld arc_cos(ld r, ld eps) { return (1 + r * r - eps * eps) / (2 * r); }

}  // namespace

double MeasureModel::disc_mass(std::complex<double> center, double eps) const {
    if (kind != MeasureKind::uniform_circle) throw DomainError("disc masses are defined for the circle measure only");
    if (eps <= 0) return 0;
    const double r = std::abs(center);
    if (r == 0) return eps > 1 ? 1 : 0;
    if (std::abs(r - 1) < 1e-15) return 2 / std::numbers::pi * std::asin(std::min(eps, 2.0) / 2);
    const double c = static_cast<double>(arc_cos(r, eps));
    if (c <= -1) return 1;
    if (c >= 1) return 0;
    return std::acos(c) / std::numbers::pi;
}

double circle_integral_logplus(std::complex<double> beta, double tol) {
    const ld r = std::abs(std::complex<ld>(beta));
    if (r == 0 || r >= 2) return 0;
    // By symmetry about arg(beta): (1/pi) int_0^A -log|e^{it} - r| dt, where
    // the arc |t| < A = arccos(r/2) is where the distance is below 1.
    const ld A = std::acos(r / 2);
    auto g = [r](ld t) {
        const ld s = std::sin(t / 2);
        const ld d2 = (1 - r) * (1 - r) + 4 * r * s * s;
        return d2 > 0 ? -std::log(d2) / 2 : ld(0);
    };
    boost::math::quadrature::tanh_sinh<ld> integrator;
    ld err = 0;
    const ld v = integrator.integrate(g, ld(0), A, static_cast<ld>(tol) / 10, &err);
    if (err > tol) throw PrecisionError("circle_integral_logplus: quadrature did not reach tolerance");
    return static_cast<double>(v / std::numbers::pi_v<ld>);
}

std::uint64_t disc_count_bruteforce(std::uint64_t n, std::complex<double> center, double eps) {
    if (n == 0) throw DomainError("disc_count: n must be positive");
    std::uint64_t count = 0;
    for (std::uint64_t j = 0; j < n; ++j)
        if (std::gcd(j, n) == 1 && inside(n, j, center, eps)) ++count;
    return count;
}

std::uint64_t disc_count(std::uint64_t n, std::complex<double> center, double eps) {
    if (n == 0) throw DomainError("disc_count: n must be positive");
    if (eps <= 0) return 0;
    const ld r = std::abs(std::complex<ld>(center));
    if (r == 0) return disc_count_bruteforce(n, center, eps);
    const ld c = arc_cos(r, eps);
    if (c >= 1 + 1e-12L) return 0;
    if (c <= -1 + 1e-12L) return disc_count_bruteforce(n, center, eps);
    // Candidates in a slightly widened angular window, then the exact test.
    const ld half = std::acos(std::clamp(c, ld(-1), ld(1))) + 1e-9L;
    const ld alpha = std::arg(std::complex<ld>(center));
    const ld scale = static_cast<ld>(n) / (2 * std::numbers::pi_v<ld>);
    const auto lo = static_cast<std::int64_t>(std::floor((alpha - half) * scale)) - 1;
    const auto hi = static_cast<std::int64_t>(std::ceil((alpha + half) * scale)) + 1;
    if (hi - lo + 1 >= static_cast<std::int64_t>(n)) return disc_count_bruteforce(n, center, eps);
    const auto sn = static_cast<std::int64_t>(n);
    std::uint64_t count = 0;
    for (std::int64_t k = lo; k <= hi; ++k) {
        const auto j = static_cast<std::uint64_t>(((k % sn) + sn) % sn);
        if (std::gcd(j, n) == 1 && inside(n, j, center, eps)) ++count;
    }
    return count;
}

DiscCountRecord disc_count_check(std::uint64_t n, std::complex<double> center, double eps, double kappa, double C) {
    if (n < 3) throw DomainError("disc_count_check: n must be at least 3");
    if (!(eps > 0)) throw DomainError("disc_count_check: eps must be positive");
    if (!(kappa > 0 && kappa <= 1)) throw DomainError("disc_count_check: kappa must lie in (0, 1]");
    if (!(C >= 0)) throw DomainError("disc_count_check: C must be nonnegative");
    DiscCountRecord rec;
    rec.n = n;
    rec.m = euler_phi(n);
    rec.center = center;
    rec.eps = eps;
    rec.kappa = kappa;
    rec.C = C;
    rec.lhs = disc_count(n, center, eps);
    const double m = static_cast<double>(rec.m);
    rec.term1 = 1 / (eps * std::pow(m, 1 / kappa - 1));
    rec.term2 = m * MeasureModel{}.disc_mass(center, std::numbers::e * eps);
    rec.term3 = C * std::sqrt(m * std::log(m));
    rec.holds = static_cast<double>(rec.lhs) <= rec.term1 + rec.term2 + rec.term3;
    return rec;
}

std::vector<DiscCountRecord> disc_count_grid_serial(const std::vector<DiscQuery>& queries, double kappa, double C) {
    std::vector<DiscCountRecord> out;
    out.reserve(queries.size());
    for (const auto& q : queries) out.push_back(disc_count_check(q.n, q.center, q.eps, kappa, C));
    return out;
}

std::vector<DiscCountRecord> disc_count_grid(const std::vector<DiscQuery>& queries, double kappa, double C) {
    std::vector<DiscCountRecord> out(queries.size());
    std::exception_ptr error;
    const auto count = static_cast<std::int64_t>(queries.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < count; ++i) {
        const auto& q = queries[static_cast<std::size_t>(i)];
        try {
            out[static_cast<std::size_t>(i)] = disc_count_check(q.n, q.center, q.eps, kappa, C);
        } catch (...) {
#pragma omp critical
            error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    return out;
}

double logplus_discrepancy(std::complex<double> beta, std::uint64_t n, double tol) {
    if (n == 0) throw DomainError("logplus_discrepancy: n must be positive");
    const std::complex<ld> b(beta);
    ld sum = 0;
    for (std::uint64_t j = 0; j < n; ++j) {
        if (std::gcd(j, n) != 1) continue;
        const ld d = std::abs(root_point(n, j) - b);
        if (d == 0) throw DomainError("logplus_discrepancy: beta lies on the orbit");
        if (d < 1) sum -= std::log(d);
    }
    const ld avg = sum / static_cast<ld>(euler_phi(n));
    return static_cast<double>(std::abs(avg - static_cast<ld>(circle_integral_logplus(beta, tol))));
}

double logplus_discrepancy(const AlgebraicNumber& beta, std::uint64_t n, double tol) {
    if (contact_resultant(beta.minpoly(), n) == 0) throw DomainError("logplus_discrepancy: beta lies on the orbit");
    return logplus_discrepancy(beta.value_double(), n, tol);
}

RateProfile rate_profile(const AlgebraicNumber& beta, const std::vector<std::uint64_t>& n_list, double A,
                         double delta) {
    if (n_list.size() < 3) throw DomainError("rate_profile: need at least 3 grid points");
    if (is_root_of_unity(beta)) throw DomainError("rate_profile: beta is a root of unity");
    const double h = weil_height(beta);
    const std::complex<ld> b(beta.value_double());
    RateProfile prof;
    prof.rows.resize(n_list.size());
    std::exception_ptr error;
    const auto count = static_cast<std::int64_t>(n_list.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < count; ++i) {
        try {
            RateRow& row = prof.rows[static_cast<std::size_t>(i)];
            row.n = n_list[static_cast<std::size_t>(i)];
            row.phi = euler_phi(row.n);
            row.discrepancy = logplus_discrepancy(beta, row.n);
            ld closest = -std::numeric_limits<ld>::infinity();
            for (std::uint64_t j = 0; j < row.n; ++j)
                if (std::gcd(j, row.n) == 1) closest = std::max(closest, -std::log(std::abs(root_point(row.n, j) - b)));
            row.max_closeness = static_cast<double>(closest);
            row.hypothesis_bound = A * (h + 1) * std::pow(static_cast<double>(row.phi), 0.5 - delta);
            row.hypothesis_holds = row.max_closeness < row.hypothesis_bound;
        } catch (...) {
#pragma omp critical
            error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);

    // Values at quadrature-noise level count as zero.
    std::vector<double> xs, ys;
    for (const auto& row : prof.rows)
        if (row.discrepancy > 1e-11) {
            xs.push_back(std::log(static_cast<double>(row.phi)));
            ys.push_back(std::log(row.discrepancy));
        }
    if (xs.size() < 2) {
        prof.degenerate = true;
        return prof;
    }
    const double k = static_cast<double>(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / k;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / k;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    if (sxx == 0) {
        prof.degenerate = true;
        return prof;
    }
    prof.slope = sxy / sxx;
    return prof;
}

}  // namespace sint
