#pragma once

// Fixed-precision p-adic numbers over Q_p and the Tate uniformization
// u -> (X(u,q), Y(u,q)) of y^2 + xy = x^3 + a4(q) x + a6(q).

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sint/bigarith.hpp"

namespace sint {

/// p^v * unit + O(p^(v + N)) with unit a p-adic unit known mod p^N. Zero is
/// stored as O(p^a), its valuation being the absolute precision a.
class PadicNumber {
public:
    /// Absolute precision used for exact zero constants.
    static constexpr long kExactZero = 1L << 30;

    PadicNumber() = default;
    static PadicNumber zero(const Integer& p, long absolute_precision = kExactZero);
    static PadicNumber from_integer(const Integer& p, const Integer& n, unsigned N);
    static PadicNumber from_rational(const Integer& p, const Rational& r, unsigned N);
    /// p^v * unit with unit reduced mod p^N; unit must be prime to p.
    static PadicNumber from_parts(const Integer& p, long v, const Integer& unit, unsigned N);
    /// Teichmueller representative of a mod p, a not divisible by p.
    static PadicNumber teichmuller(const Integer& p, const Integer& a, unsigned N);

    const Integer& prime() const { return p_; }
    bool is_zero() const { return zero_; }
    /// Exact valuation; for zero, the absolute precision.
    long valuation() const { return val_; }
    long absolute_precision() const { return zero_ ? val_ : val_ + static_cast<long>(prec_); }
    unsigned relative_precision() const { return prec_; }
    const Integer& unit() const { return unit_; }
    /// Same number known only to the given relative precision (never raised).
    PadicNumber truncated(unsigned N) const;
    /// Rational p^v * unit (the stored representative).
    Rational representative() const;

    PadicNumber operator-() const;
    friend PadicNumber operator+(const PadicNumber& a, const PadicNumber& b);
    friend PadicNumber operator-(const PadicNumber& a, const PadicNumber& b) { return a + (-b); }
    friend PadicNumber operator*(const PadicNumber& a, const PadicNumber& b);
    friend PadicNumber operator/(const PadicNumber& a, const PadicNumber& b);
    PadicNumber inverse() const;
    PadicNumber pow(unsigned k) const;

    /// a - b is zero at the available precision.
    bool agrees_with(const PadicNumber& o) const { return (*this - o).is_zero(); }

    /// "unit*p^v + O(p^a)" or "O(p^a)".
    std::string to_string() const;

private:
    static PadicNumber normalized(const Integer& p, const Integer& value, long v, long absolute);

    Integer p_ = 0;
    bool zero_ = true;
    long val_ = kExactZero;
    unsigned prec_ = 0;
    Integer unit_ = 0;
};

struct TateCurve {
    Integer p;
    PadicNumber q;
    unsigned N = 0;  // working relative precision
    PadicNumber a4, a6;
};

/// s_k(q) = sum n^k q^n / (1 - q^n), truncated so the omitted tail has valuation >= N + 2.
PadicNumber divisor_power_sum(const PadicNumber& q, unsigned k, unsigned N);
/// a4 = -5 s3, a6 = -(5 s3 + 7 s5)/12. DomainError for p < 5 or v(q) < 1.
std::pair<PadicNumber, PadicNumber> tate_coefficients(const PadicNumber& q, unsigned N);
TateCurve make_tate_curve(const PadicNumber& q, unsigned N);

struct TatePoint {
    PadicNumber u;  // normalized into 0 <= v(u) < v(q)
    PadicNumber X, Y;
};

/// u multiplied by the power of q that puts v(u) in [0, v(q)).
PadicNumber normalize_to_annulus(const TateCurve& E, const PadicNumber& u);
/// DomainError when u is 1 at the working precision (the identity).
TatePoint tate_point(const TateCurve& E, const PadicNumber& u);
/// Y^2 + XY - X^3 - a4 X - a6.
PadicNumber tate_residual(const TateCurve& E, const TatePoint& P);

/// Taylor coefficients c_0..c_3 of d -> X(u + d) and d -> Y(u + d).
std::array<PadicNumber, 4> tate_taylor_X(const TateCurve& E, const PadicNumber& u);
std::array<PadicNumber, 4> tate_taylor_Y(const TateCurve& E, const PadicNumber& u);

/// Short model y'^2 = x'^3 + A x' + B via x' = x + 1/12, y' = y + x/2.
std::pair<PadicNumber, PadicNumber> tate_short_coefficients(const TateCurve& E);
std::pair<PadicNumber, PadicNumber> tate_short_point(const TatePoint& P);
/// The substitution x' = x - 1/12, y' = x/2 as printed; kept to show it does not give a model.
std::pair<PadicNumber, PadicNumber> tate_short_point_as_printed(const TatePoint& P);

enum class TateProjection { x, y };

struct ContainmentResult {
    bool skipped = false;  // |z - w| >= 1 (or |z|, |w| > 1 for Y)
    /// First k in 1..3 with |c_k| >= 1 (0 if none): the disc D(u, r) maps onto D(z, r^k).
    int branch = 0;
    std::array<long, 4> coefficient_valuations{};
    long v_zw = 0;  // v(z - w)
    long v_uv = 0;  // v(u - chosen preimage)
    PadicNumber chosen;
    /// The chosen preimage in Q_p meets |u - v| <= |z - w|^(1/k_max).
    bool witness_in_field = false;
    /// Witness found, or the branch guarantees one over an extension.
    bool holds = false;
};

/// z = X(u), w = X(v); preimages of w are v and 1/v modulo q. Checks
/// |u - v'| <= |z - w|^(1/2) for the closer one.
ContainmentResult containment_check_X(const TateCurve& E, const PadicNumber& u, const PadicNumber& v);
/// z = Y(u), w = Y(v) with |z|, |w| <= 1; checks |u - v| <= |z - w|^(1/3).
ContainmentResult containment_check_Y(const TateCurve& E, const PadicNumber& u, const PadicNumber& v);

struct ContainmentTrials {
    std::size_t trials = 0, skipped = 0, violations = 0, field_witnesses = 0;
    std::array<std::size_t, 4> branch_counts{};
    /// Trials whose u sits in the targeted families (near -1, near -2, near roots of u^2 + 4u + 1).
    std::size_t targeted = 0;
};

/// Seeded random trials on q = p * (random unit); parallel over trials.
ContainmentTrials containment_trials(const Integer& p, TateProjection proj, std::size_t trials, unsigned N,
                                     std::uint64_t seed);
ContainmentTrials containment_trials_serial(const Integer& p, TateProjection proj, std::size_t trials, unsigned N,
                                            std::uint64_t seed);

struct ThresholdRow {
    std::string beta;
    /// Distinct projected torsion values x with v(x - beta) above each threshold.
    std::size_t count_literal = 0;
    std::size_t count_intended = 0;
    /// Distinct values in the residue disc of beta (|x - beta| < 1).
    std::size_t count_residue_disc = 0;
    bool violation = false;  // count_intended >= 2
};

struct ThresholdReport {
    Integer p;
    long v_q = 0;
    /// 3(log p + log|q|_v) as printed, and 3(log p + log|q|_v^-1).
    double literal_threshold = 0, intended_threshold = 0;
    std::size_t torsion_points = 0;
    std::size_t distinct_values = 0;
    std::vector<ThresholdRow> rows;
    std::size_t violations = 0;
};

/// Torsion samples u = zeta t^a (zeta a (p-1)-th root of unity, 0 <= a < m,
/// u != 1) on the curve with q = t^m, projected by x' or y'.
ThresholdReport threshold_report(const PadicNumber& t, unsigned m, unsigned N, TateProjection proj,
                                 const std::vector<PadicNumber>& betas);
/// Seeded beta sample: random elements plus points placed close to torsion values.
std::vector<PadicNumber> threshold_betas(const PadicNumber& t, unsigned m, unsigned N, TateProjection proj,
                                         std::size_t count, std::uint64_t seed);

}  // namespace sint
