#pragma once

// Elliptic curves over Q: exact group law, division and torsion-level
// polynomials, canonical heights, periods and elliptic logarithms, and the
// S-integrality experiments for the Lattes map attached to the x-coordinate.

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sint/algebraic.hpp"
#include "sint/bigfloat.hpp"
#include "sint/integrality.hpp"

namespace sint {

struct Point {
    Rational x = 0, y = 0;
    bool infinity = false;

    static Point identity() { return {0, 0, true}; }
    friend bool operator==(const Point& a, const Point& b) {
        return a.infinity == b.infinity && (a.infinity || (a.x == b.x && a.y == b.y));
    }
    std::string to_string() const;
};

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over Q.
class EllipticCurve {
public:
    EllipticCurve(Rational a1, Rational a2, Rational a3, Rational a4, Rational a6);
    static EllipticCurve short_form(Rational a, Rational b) { return {0, 0, 0, std::move(a), std::move(b)}; }
    /// "a1,a2,a3,a4,a6" with rational entries.
    static EllipticCurve parse(const std::string& text);

    const Rational& a1() const { return a_[0]; }
    const Rational& a2() const { return a_[1]; }
    const Rational& a3() const { return a_[2]; }
    const Rational& a4() const { return a_[3]; }
    const Rational& a6() const { return a_[4]; }
    Rational b2() const;
    Rational b4() const;
    Rational b6() const;
    Rational b8() const;
    Rational c4() const;
    Rational c6() const;
    const Rational& discriminant() const { return disc_; }

    bool is_short() const { return a1() == 0 && a2() == 0 && a3() == 0; }
    bool is_integral() const;
    /// (A, B) of the isomorphic model y'^2 = x'^3 + A x' + B, where
    /// x' = x + b2/12 and y' = y + (a1 x + a3)/2.
    std::pair<Rational, Rational> short_coefficients() const;
    /// Scaled model a_i -> u^i a_i with integral coefficients; x -> u^2 x.
    std::pair<EllipticCurve, Integer> integral_model() const;
    /// Good reduction at p for this (integral) model: p does not divide the discriminant.
    bool good_reduction(const Integer& p) const;

    bool on_curve(const Point& P) const;
    /// Points with the given x-coordinate (zero, one or two).
    std::vector<Point> points_with_x(const Rational& x) const;

    /// "a1,a2,a3,a4,a6"
    std::string to_string() const;
    /// "y^2 + y = x^3 - x^2" style equation.
    std::string equation() const;

private:
    std::array<Rational, 5> a_;
    Rational disc_;
};

/// Built-in curves: y^2=x^3-x, y^2=x^3+1, y^2+y=x^3-x^2, y^2+y=x^3-x, y^2=x^3-2.
const std::vector<EllipticCurve>& curve_catalog();

Point negate(const EllipticCurve& E, const Point& P);
Point add(const EllipticCurve& E, const Point& P, const Point& Q);
Point double_point(const EllipticCurve& E, const Point& P);
Point multiply(const EllipticCurve& E, const Point& P, std::int64_t n);
/// Order of P when it is at most max_order, by repeated addition.
std::optional<unsigned> torsion_order(const EllipticCurve& E, const Point& P, unsigned max_order = 16);

/// x-part f_m of the m-th division polynomial of an integral model:
/// psi_m = f_m for odd m and psi_m = (2y + a1 x + a3) f_m for even m.
IntPolynomial division_polynomial(const EllipticCurve& E, unsigned m);
/// Primitive polynomial whose roots are the x(P), P in E[m] minus O.
IntPolynomial full_level_polynomial(const EllipticCurve& E, unsigned m);

struct TorsionLevel {
    unsigned m = 0;
    /// Primitive, squarefree; roots are the x-coordinates of exact order m.
    IntPolynomial level_poly;
    std::vector<Rational> rational_roots;
    /// Orbit sizes: one per rational root, then the rest when it is irreducible.
    std::vector<int> orbit_degrees;
    bool orbit_degrees_known = false;
    int degree() const { return level_poly.degree(); }
};

/// Exact-order level m >= 2 by Moebius inversion over the full levels.
TorsionLevel torsion_level(const EllipticCurve& E, unsigned m);
/// Levels 2..M, parallel over m.
std::vector<TorsionLevel> torsion_levels(const EllipticCurve& E, unsigned M);
std::vector<TorsionLevel> torsion_levels_serial(const EllipticCurve& E, unsigned M);
/// Number of points of exact order m (Jordan totient J_2).
std::uint64_t exact_order_count(unsigned m);

/// Rational torsion points other than O, found through rational roots of the
/// levels 2..12, sorted by order then coordinates.
std::vector<std::pair<Point, unsigned>> rational_torsion(const EllipticCurve& E);

/// x([n]P) = num(x) / den(x) with num = x psi_n^2 - psi_{n-1} psi_{n+1},
/// den = psi_n^2, both written in x alone.
std::pair<IntPolynomial, IntPolynomial> multiplication_x_map(const EllipticCurve& E, unsigned n);
/// num(x)/den(x); nullopt when den(x) = 0 (the image is O).
std::optional<Rational> apply_x_map(const std::pair<IntPolynomial, IntPolynomial>& map, const Rational& x);

/// log max(|num|, |den|) of a rational in lowest terms.
double naive_height(const Rational& x);

struct HeightReport {
    double value = 0;
    /// value = h(x(P)) + sum of the increments 4^-(k+1) (h(x_{k+1}) - 4 h(x_k)).
    std::vector<double> increments;
    /// max |4^(k+1) increment_k| / (3 4^K), the size of the truncated tail
    /// if later steps behave like the recorded ones.
    double tail_estimate = 0;
    unsigned iterations = 0;
};

/// lim 4^-k h(x([2^k]P)). The telescoping increments are split into an
/// archimedean part (multiprecision floats) and exact local gcd losses at the
/// primes dividing the duplication resultant, so many steps are cheap.
HeightReport canonical_height(const EllipticCurve& E, const Point& P, unsigned iters = 40);
/// Same limit for an x-coordinate alone (the Lattes map's dynamical height).
HeightReport canonical_height_x(const EllipticCurve& E, const Rational& x, unsigned iters = 40);
/// Reference: exact rational doubling, iters <= 12.
HeightReport naive_canonical_height(const EllipticCurve& E, const Point& P, unsigned iters = 8);

// Analytic side. Long-model points map to (X, Y) = (x + b2/12, 2y + a1 x + a3),
// which satisfy Y^2 = 4X^3 - g2 X - g3 with g2 = c4/12, g3 = c6/216.

inline constexpr unsigned kAnalyticDigits = 50;
using AFloat = Float<kAnalyticDigits>;
using AComplex = BigComplex<kAnalyticDigits>;

struct Lattice {
    AComplex w1, w2;  // w1 real, Im(w2/w1) > 0
    AFloat g2, g3;
    /// Roots of 4X^3 - g2 X - g3; when all are real, e1 > e2 > e3.
    std::vector<AComplex> e;
    bool real_roots = false;
    std::complex<double> omega1() const { return w1.to_double(); }
    std::complex<double> omega2() const { return w2.to_double(); }
};

/// Periods by the arithmetic-geometric mean.
Lattice real_periods(const EllipticCurve& E);

/// Weierstrass function of the lattice and its derivative, by q-series.
AComplex wp(const Lattice& L, const AComplex& z);
AComplex wp_prime(const Lattice& L, const AComplex& z);
std::complex<double> wp(const Lattice& L, std::complex<double> z);
std::complex<double> wp_prime(const Lattice& L, std::complex<double> z);

/// Representative of z in the parallelogram {s w1 + t w2 : s, t in [0, 1)}.
AComplex reduce_mod_lattice(const Lattice& L, const AComplex& z);
/// Distance from z to the nearest lattice point.
double lattice_distance(const Lattice& L, const AComplex& z);

/// z with (wp(z), wp'(z)) = (X(P), Y(P)) for a real point, by the descending
/// Landen transformation. PrecisionError if the check residual exceeds 1e-12.
AComplex elliptic_log(const EllipticCurve& E, const Lattice& L, const Point& P);

struct ExponentFit {
    std::string family;  // sampling family
    double exponent = 0; // least-squares slope of log|z - w| on log|x - y|
    std::size_t samples = 0;
};

struct DistanceExponentReport {
    std::vector<ExponentFit> fits;
    /// Largest |z - w| / (|x - y|^e max(|x|^e, 1)) on the calibration half.
    double fitted_C_wp = 0, fitted_C_wp_prime = 0;
    /// Worst ratio over fitted C on the validation half (<= 1 means no violation).
    double max_margin_wp = 0, max_margin_wp_prime = 0;
    std::size_t violations = 0;
    std::size_t samples = 0;
};

/// Samples close pairs z, w and checks |z - w| <= C |x - y|^(1/2) max(|x|^(1/2), 1)
/// for x = wp and the 1/3 analogue for wp'. Validation allows a factor 2 over
/// the calibrated C.
DistanceExponentReport wp_distance_exponent_check(const EllipticCurve& E, std::size_t sample_count,
                                                  std::uint64_t seed = 1);

// Lattes experiments for phi with x o [2] = phi o x.

struct CasselsRecord {
    Point P;
    unsigned order = 0;
    Integer p;
    bool p_power = false;
    unsigned n = 0;  // order = p^n on the p-power branch
    /// v_p of the coordinates; nullopt for a zero coordinate.
    std::optional<long> vx, vy;
    /// -3 / (p^n - p^(n-1)) on the p-power branch, 0 otherwise.
    Rational min_valuation = 0;
    /// |x|, |y| <= p^(3/(p^n - p^(n-1))), or integrality off the p-power branch.
    bool holds = false;
    /// The literal magnitude reading |x|, |y| <= 3/(p^n - p^(n-1)).
    bool literal_holds = false;
};

/// DomainError if P is not torsion of order 2..16 or the model is not p-integral.
CasselsRecord cassels_check(const EllipticCurve& E, const Point& P, const Integer& p);

/// |res(f_beta, level_m)|; DomainError when beta is an exact-order-m x-coordinate.
Integer torsion_contact_resultant(const EllipticCurve& E, unsigned m, const AlgebraicNumber& beta);
Factorization torsion_contact_primes(const EllipticCurve& E, unsigned m, const AlgebraicNumber& beta,
                                     const FactorBudget& budget = {});

/// Projection E -> P^1 through which the Lattes map is taken.
enum class LattesProjection { x, y };
std::string to_string(LattesProjection p);

/// Squarefree primitive polynomial whose roots are the y(P), P of exact order
/// m, obtained by eliminating x between the level polynomial and the curve.
IntPolynomial y_level_polynomial(const EllipticCurve& E, unsigned m);

struct LattesParams {
    LattesProjection projection = LattesProjection::x;
    double c = 1;           // degree threshold c deg(beta)^20
    double gap_C = 1;       // gap rule C D^6 (log D + 1)^2 (h(beta) + 1) |F|^eps
    double gap_eps = 0.5;
};

struct LattesLevelRow {
    unsigned m = 0;
    int level_degree = 0;
    Integer resultant;
    Factorization contact_primes;
    bool s_integral = false;
    /// max over the level of log 1/|x - beta| at the archimedean place
    double closeness = 0;
    double gap_bound = 0;
    bool gap_violated = false;
    /// The orbit size used by the gap rule is a verified Galois orbit.
    bool orbit_certified = false;
};

struct LattesReport {
    std::vector<LattesLevelRow> rows;
    double threshold = 0;
    int max_s_integral_degree = 0;
    std::size_t s_integral_count = 0;
    std::size_t count_above_threshold = 0;
    std::size_t gap_violations = 0;
    /// Two or more certified gap violations contradict the single exception.
    bool exception_rule_broken = false;
    /// Canonical height of beta for rational beta; nullopt otherwise.
    std::optional<double> beta_height;
};

/// Levels m = 2..M. DomainError if beta lies in one of them or (for rational
/// beta) its canonical height is below 1e-9.
LattesReport lattes_s_integral_experiment(const EllipticCurve& E, const AlgebraicNumber& beta, const PrimeSet& S,
                                          unsigned M, const LattesParams& params = {},
                                          const FactorBudget& budget = {});

struct SeparationWitness {
    unsigned m1 = 0, m2 = 0;
    Rational x1 = 0, x2 = 0;
    /// -log_p d_sph, summed over the pairs the record covers
    Rational log_closeness = 0;
    std::size_t pairs = 0;
    bool rational_pair = false;
};

struct GoodReductionSeparation {
    Integer p;
    unsigned M = 0;
    Rational threshold = 0;  // 3/(p-1) per pair
    std::size_t rational_pairs = 0;
    std::size_t level_pairs = 0;
    /// False when a rational pair reaches the threshold, or when a fiber's
    /// summed closeness does (then no single pair is certified either way).
    bool separated = true;
    std::optional<SeparationWitness> witness;
    /// Largest per-pair average of -log_p d_sph seen.
    Rational worst_average = 0;
};

/// Chordal p-adic separation of torsion x-coordinates of order <= M: exact for
/// rational pairs, and via v_p of resultants (discriminants within a level)
/// for the whole fibers. DomainError at bad reduction.
GoodReductionSeparation good_reduction_separation_check(const EllipticCurve& E, const Integer& p, unsigned M);

}  // namespace sint
