#include "sint/pairing.hpp"

#include <exception>
#include <numeric>
#include <optional>

#include "sint/integrality.hpp"

namespace sint {

namespace {

struct ArchValue {
    RootFloat value;
    double error;
};

ArchValue archimedean_precise(const AlgebraicNumber& beta, std::uint64_t n) {
    if (contact_resultant(beta.minpoly(), n) == 0)
        throw DomainError("beta coincides with a primitive " + std::to_string(n) + "-th root of unity");
    const RootFloat two_pi = 2 * boost::math::constants::pi<RootFloat>();
    const RootFloat r = beta.radius();
    std::vector<RootFloat> logplus;
    for (const auto& b : beta.conjugates()) {
        const RootFloat m = b.abs();
        logplus.push_back(m > 1 ? RootFloat(log(m)) : RootFloat(0));
    }
    RootFloat sum = 0;
    RootFloat err = 0;
    for (std::uint64_t j = 1; j <= n; ++j) {
        if (std::gcd(j, n) != 1) continue;
        const RootFloat t = two_pi * j / n;
        const RootComplex zeta(cos(t), sin(t));
        for (std::size_t i = 0; i < beta.conjugates().size(); ++i) {
            const RootFloat dist = (zeta - beta.conjugates()[i]).abs();
            if (dist <= 2 * r) throw PrecisionError("archimedean_pairing: conjugate too close to a root of unity");
            sum += logplus[i] - log(dist);
            err += r / (dist - r) + r;
        }
    }
    const RootFloat scale = RootFloat(euler_phi(n)) * beta.degree();
    return {sum / scale, (err / scale).convert_to<double>() + 1e-90};
}

}  // namespace

double archimedean_pairing(const AlgebraicNumber& beta, std::uint64_t n, double tol) {
    const auto a = archimedean_precise(beta, n);
    if (a.error > tol) throw PrecisionError("archimedean_pairing: error bound above tolerance");
    return a.value.convert_to<double>();
}

PairingDecomposition pairing_decomposition(const AlgebraicNumber& beta, std::uint64_t n,
                                           const FactorBudget& budget) {
    PairingDecomposition d;
    d.n = n;
    d.resultant = contact_resultant(beta.minpoly(), n);
    if (d.resultant == 0)
        throw DomainError("beta coincides with a primitive " + std::to_string(n) + "-th root of unity");
    const auto arch = archimedean_precise(beta, n);
    d.archimedean_part = arch.value.convert_to<double>();
    d.error_bound = arch.error;

    const Integer scale = Integer(static_cast<unsigned long>(euler_phi(n))) * beta.degree();
    const RootFloat fscale(scale.get_mpz_t());
    const Factorization f = factor_partial(d.resultant, budget);
    RootFloat finite = 0;
    for (const auto& [p, e] : f.prime_powers) {
        const RootFloat c = RootFloat(e) * log(RootFloat(p.get_mpz_t())) / fscale;
        finite += c;
        d.finite_parts[p] = c.convert_to<double>();
        Rational m(Integer(e), scale);
        m.canonicalize();
        d.multiplicities[p] = m;
    }
    d.cofactor = f.cofactor;
    if (!f.complete()) {
        const RootFloat c = log(RootFloat(f.cofactor.get_mpz_t())) / fscale;
        finite += c;
        d.cofactor_part = c.convert_to<double>();
    }
    d.finite_sum = finite.convert_to<double>();
    const RootFloat h = weil_height_precise(beta);
    d.height = h.convert_to<double>();
    d.residual = (arch.value + finite - h).convert_to<double>();
    return d;
}

std::map<Integer, double> finite_pairing_decomposition(const AlgebraicNumber& beta, std::uint64_t n,
                                                       const FactorBudget& budget) {
    return pairing_decomposition(beta, n, budget).finite_parts;
}

double adelic_identity_check(const AlgebraicNumber& beta, std::uint64_t n, double tol) {
    const auto d = pairing_decomposition(beta, n);
    const double r = std::abs(d.residual);
    if (d.error_bound > tol) throw PrecisionError("adelic_identity_check: error bound above tolerance");
    return r;
}

double az_pairing_power(const AlgebraicNumber& beta) { return weil_height(beta); }

std::vector<PairingDecomposition> pairing_grid_serial(const AlgebraicNumber& beta, std::uint64_t N,
                                                      const FactorBudget& budget) {
    std::vector<PairingDecomposition> out;
    for (std::uint64_t n = 1; n <= N; ++n)
        if (contact_resultant(beta.minpoly(), n) != 0) out.push_back(pairing_decomposition(beta, n, budget));
    return out;
}

std::vector<PairingDecomposition> pairing_grid(const AlgebraicNumber& beta, std::uint64_t N,
                                               const FactorBudget& budget) {
    std::vector<std::optional<PairingDecomposition>> slots(N);
    std::exception_ptr error;
    const auto count = static_cast<std::int64_t>(N);
#pragma omp parallel for schedule(dynamic, 2)
    for (std::int64_t i = count - 1; i >= 0; --i) {
        const auto n = static_cast<std::uint64_t>(i) + 1;
        try {
            if (contact_resultant(beta.minpoly(), n) != 0)
                slots[static_cast<std::size_t>(i)] = pairing_decomposition(beta, n, budget);
        } catch (...) {
#pragma omp critical
            error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    std::vector<PairingDecomposition> out;
    for (auto& s : slots)
        if (s) out.push_back(std::move(*s));
    return out;
}

}  // namespace sint
