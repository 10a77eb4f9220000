#include <algorithm>
#include <cmath>
#include <exception>
#include <random>
#include <sstream>

#include "sint/tate.hpp"

namespace sint {

namespace {

Integer ipow(const Integer& p, long k) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(std::max(0L, k)));
    return r;
}

Integer mod_inverse(const Integer& a, const Integer& m) {
    Integer r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw DomainError("p-adic inverse of a non-unit");
    return r;
}

Integer mod(const Integer& a, const Integer& m) {
    Integer r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

}  // namespace

PadicNumber PadicNumber::normalized(const Integer& p, const Integer& value, long v, long absolute) {
    PadicNumber out;
    out.p_ = p;
    if (absolute <= v || value == 0) {
        out.val_ = absolute;
        return out;
    }
    const Integer reduced = mod(value, ipow(p, absolute - v));
    if (reduced == 0) {
        out.val_ = absolute;
        return out;
    }
    const long k = static_cast<long>(sint::valuation(reduced, p));
    out.zero_ = false;
    out.val_ = v + k;
    out.prec_ = static_cast<unsigned>(absolute - out.val_);
    out.unit_ = mod(reduced / ipow(p, k), ipow(p, out.prec_));
    return out;
}

PadicNumber PadicNumber::zero(const Integer& p, long absolute_precision) {
    PadicNumber out;
    out.p_ = p;
    out.val_ = absolute_precision;
    return out;
}

PadicNumber PadicNumber::from_integer(const Integer& p, const Integer& n, unsigned N) {
    if (n == 0) return zero(p);
    const long v = static_cast<long>(sint::valuation(Integer(abs(n)), p));
    return normalized(p, n / ipow(p, v), v, v + static_cast<long>(N));
}

PadicNumber PadicNumber::from_rational(const Integer& p, const Rational& r, unsigned N) {
    if (r == 0) return zero(p);
    const Integer num = r.get_num(), den = r.get_den();
    const long vn = static_cast<long>(sint::valuation(Integer(abs(num)), p));
    const long vd = static_cast<long>(sint::valuation(den, p));
    const Integer m = ipow(p, N);
    const Integer u = mod((num / ipow(p, vn)) * mod_inverse(den / ipow(p, vd), m), m);
    return normalized(p, u, vn - vd, vn - vd + static_cast<long>(N));
}

PadicNumber PadicNumber::from_parts(const Integer& p, long v, const Integer& unit, unsigned N) {
    if (mod(unit, p) == 0) throw DomainError("from_parts: unit divisible by p");
    return normalized(p, unit, v, v + static_cast<long>(N));
}

PadicNumber PadicNumber::teichmuller(const Integer& p, const Integer& a, unsigned N) {
    if (mod(a, p) == 0) throw DomainError("teichmuller: a is divisible by p");
    const Integer m = ipow(p, N);
    Integer x = mod(a, m);
    for (unsigned i = 0; i < N; ++i) mpz_powm(x.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t(), m.get_mpz_t());
    return normalized(p, x, 0, N);
}

PadicNumber PadicNumber::truncated(unsigned N) const {
    if (zero_ || N >= prec_) return *this;
    return normalized(p_, unit_, val_, val_ + static_cast<long>(N));
}

Rational PadicNumber::representative() const {
    if (zero_) return 0;
    Rational r(unit_);
    if (val_ >= 0)
        r *= ipow(p_, val_);
    else
        r /= ipow(p_, -val_);
    r.canonicalize();
    return r;
}

PadicNumber PadicNumber::operator-() const {
    if (zero_) return *this;
    PadicNumber out = *this;
    out.unit_ = ipow(p_, prec_) - unit_;
    return out;
}

PadicNumber operator+(const PadicNumber& a, const PadicNumber& b) {
    const Integer& p = a.p_ != 0 ? a.p_ : b.p_;
    const long absolute = std::min(a.absolute_precision(), b.absolute_precision());
    if (a.zero_ && b.zero_) return PadicNumber::zero(p, absolute);
    if (a.zero_) return PadicNumber::normalized(p, b.unit_, b.val_, absolute);
    if (b.zero_) return PadicNumber::normalized(p, a.unit_, a.val_, absolute);
    const long m = std::min(a.val_, b.val_);
    const Integer s = a.unit_ * ipow(p, a.val_ - m) + b.unit_ * ipow(p, b.val_ - m);
    return PadicNumber::normalized(p, s, m, absolute);
}

PadicNumber operator*(const PadicNumber& a, const PadicNumber& b) {
    const Integer& p = a.p_ != 0 ? a.p_ : b.p_;
    if (a.zero_ || b.zero_) {
        const long va = a.val_, vb = b.val_;
        const long s = std::min(va + vb, PadicNumber::kExactZero);
        return PadicNumber::zero(p, s);
    }
    const unsigned prec = std::min(a.prec_, b.prec_);
    return PadicNumber::normalized(p, a.unit_ * b.unit_, a.val_ + b.val_, a.val_ + b.val_ + static_cast<long>(prec));
}

PadicNumber PadicNumber::inverse() const {
    if (zero_) throw DomainError("p-adic division by zero at working precision");
    PadicNumber out = *this;
    out.val_ = -val_;
    out.unit_ = mod_inverse(unit_, ipow(p_, prec_));
    return out;
}

PadicNumber operator/(const PadicNumber& a, const PadicNumber& b) { return a * b.inverse(); }

PadicNumber PadicNumber::pow(unsigned k) const {
    if (zero_) return k == 0 ? from_integer(p_, 1, 64) : zero(p_, std::min(val_ * static_cast<long>(k), kExactZero));
    PadicNumber result = from_integer(p_, 1, prec_);
    PadicNumber base = *this;
    while (k) {
        if (k & 1) result = result * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return result;
}

std::string PadicNumber::to_string() const {
    std::ostringstream os;
    if (zero_) {
        os << "O(" << p_ << "^" << val_ << ")";
        return os.str();
    }
    os << unit_ << "*" << p_ << "^" << val_ << " + O(" << p_ << "^" << absolute_precision() << ")";
    return os.str();
}

namespace {

// Truncated power series in d over Q_p, degree <= 3.
struct Series {
    std::array<PadicNumber, 4> c;
    int deg = 0;
};

Series constant(const PadicNumber& a, int deg) {
    Series s;
    s.deg = deg;
    s.c.fill(PadicNumber::zero(a.prime()));
    s.c[0] = a;
    return s;
}

Series operator+(const Series& a, const Series& b) {
    Series s = a;
    for (int i = 0; i <= a.deg; ++i) s.c[i] = a.c[i] + b.c[i];
    return s;
}

Series operator-(const Series& a, const Series& b) {
    Series s = a;
    for (int i = 0; i <= a.deg; ++i) s.c[i] = a.c[i] - b.c[i];
    return s;
}

Series operator*(const Series& a, const Series& b) {
    Series s = constant(PadicNumber::zero(a.c[0].prime()), a.deg);
    for (int i = 0; i <= a.deg; ++i)
        for (int j = 0; i + j <= a.deg; ++j) s.c[i + j] = s.c[i + j] + a.c[i] * b.c[j];
    return s;
}

Series scaled(const Series& a, const PadicNumber& k) {
    Series s = a;
    for (int i = 0; i <= a.deg; ++i) s.c[i] = a.c[i] * k;
    return s;
}

Series inverse(const Series& a) {
    Series s = constant(a.c[0].inverse(), a.deg);
    for (int k = 1; k <= a.deg; ++k) {
        PadicNumber acc = PadicNumber::zero(a.c[0].prime());
        for (int j = 1; j <= k; ++j) acc = acc + a.c[j] * s.c[k - j];
        s.c[k] = -(acc * s.c[0]);
    }
    return s;
}

long q_valuation(const PadicNumber& q) {
    if (q.valuation() < 1) throw DomainError("Tate curve: need v(q) >= 1");
    return q.valuation();
}

// Terms n = 1..count cover valuations up to N + slack.
unsigned term_count(long vq, unsigned N, long extra) {
    const long need = static_cast<long>(N) + 4 + extra;
    return static_cast<unsigned>((need + vq - 1) / vq + 1);
}

struct TateSeries {
    Series X, Y;
};

// X(u + d), Y(u + d) as series in d of the given degree.
TateSeries tate_series(const TateCurve& E, const PadicNumber& u, int deg) {
    const Integer& p = E.p;
    const PadicNumber one = PadicNumber::from_integer(p, 1, E.N + 8);
    Series us = constant(u, deg);
    if (deg >= 1) us.c[1] = one;
    const Series unit_s = constant(one, deg);
    const Series u_inv = inverse(us);

    // w/(1-w)^2 and w^2/(1-w)^3.
    auto xterm = [&](const Series& w) {
        const Series d = inverse(unit_s - w);
        return w * d * d;
    };
    auto yterm = [&](const Series& w) {
        const Series d = inverse(unit_s - w);
        return w * w * d * d * d;
    };

    Series X = xterm(us), Y = yterm(us);
    const long vq = E.q.valuation();
    const unsigned n_max = E.q.is_zero() ? 0 : term_count(vq, E.N, 4 * vq);
    PadicNumber qn = E.q;
    for (unsigned n = 1; n <= n_max; ++n) {
        const Series w = scaled(us, qn);
        const Series t = scaled(u_inv, qn);
        const PadicNumber c = one / ((one - qn) * (one - qn));
        X = X + xterm(w) + xterm(t) - constant(qn * c * PadicNumber::from_integer(p, 2, E.N + 8), deg);
        // Y: n < 0 terms are -t/(1-t)^3 in t = q^n/u.
        const Series dt = inverse(unit_s - t);
        Y = Y + yterm(w) - t * dt * dt * dt + constant(qn * c, deg);
        qn = qn * E.q;
    }
    return {X, Y};
}

}  // namespace

PadicNumber divisor_power_sum(const PadicNumber& q, unsigned k, unsigned N) {
    const Integer& p = q.prime();
    if (q.is_zero()) return PadicNumber::zero(p, q.valuation());
    const long vq = q_valuation(q);
    const PadicNumber one = PadicNumber::from_integer(p, 1, N + 8);
    PadicNumber sum = PadicNumber::zero(p);
    PadicNumber qn = q;
    const unsigned n_max = term_count(vq, N, 0);
    for (unsigned n = 1; n <= n_max; ++n) {
        Integer nk;
        mpz_ui_pow_ui(nk.get_mpz_t(), n, k);
        sum = sum + PadicNumber::from_integer(p, nk, N + 8) * qn / (one - qn);
        qn = qn * q;
    }
    return sum;
}

std::pair<PadicNumber, PadicNumber> tate_coefficients(const PadicNumber& q, unsigned N) {
    const Integer& p = q.prime();
    if (p < 5 || !is_prime(p)) throw DomainError("tate_coefficients: need a prime p >= 5");
    if (!q.is_zero()) q_valuation(q);
    const PadicNumber s3 = divisor_power_sum(q, 3, N), s5 = divisor_power_sum(q, 5, N);
    const PadicNumber five = PadicNumber::from_integer(p, 5, N + 8), seven = PadicNumber::from_integer(p, 7, N + 8);
    const PadicNumber a4 = -(five * s3);
    const PadicNumber a6 = -((five * s3 + seven * s5) / PadicNumber::from_integer(p, 12, N + 8));
    return {a4.truncated(N), a6.truncated(N)};
}

TateCurve make_tate_curve(const PadicNumber& q, unsigned N) {
    if (N < 4) throw DomainError("Tate curve: precision must be at least 4");
    TateCurve E;
    E.p = q.prime();
    E.q = q.truncated(N);
    E.N = N;
    std::tie(E.a4, E.a6) = tate_coefficients(E.q, N);
    return E;
}

PadicNumber normalize_to_annulus(const TateCurve& E, const PadicNumber& u) {
    if (u.is_zero()) throw DomainError("tate_point: u = 0");
    if (E.q.is_zero()) {
        if (u.valuation() < 0 || u.valuation() >= E.q.valuation())
            throw DomainError("tate_point: u outside the annulus");
        return u;
    }
    const long vq = E.q.valuation();
    const long v = u.valuation();
    long k = v >= 0 ? v / vq : -((-v + vq - 1) / vq);
    PadicNumber out = u;
    if (k > 0) out = u / E.q.pow(static_cast<unsigned>(k));
    if (k < 0) out = u * E.q.pow(static_cast<unsigned>(-k));
    return out;
}

TatePoint tate_point(const TateCurve& E, const PadicNumber& u_in) {
    const PadicNumber u = normalize_to_annulus(E, u_in).truncated(E.N);
    const PadicNumber one = PadicNumber::from_integer(E.p, 1, E.N + 8);
    if ((u - one).is_zero()) throw DomainError("tate_point: u is 1 (the identity) at working precision");
    const TateSeries s = tate_series(E, u, 0);
    return {u, s.X.c[0], s.Y.c[0]};
}

PadicNumber tate_residual(const TateCurve& E, const TatePoint& P) {
    return P.Y * P.Y + P.X * P.Y - P.X * P.X * P.X - E.a4 * P.X - E.a6;
}

std::array<PadicNumber, 4> tate_taylor_X(const TateCurve& E, const PadicNumber& u) {
    return tate_series(E, normalize_to_annulus(E, u), 3).X.c;
}

std::array<PadicNumber, 4> tate_taylor_Y(const TateCurve& E, const PadicNumber& u) {
    return tate_series(E, normalize_to_annulus(E, u), 3).Y.c;
}

std::pair<PadicNumber, PadicNumber> tate_short_coefficients(const TateCurve& E) {
    const auto r = [&](long a, long b) { return PadicNumber::from_rational(E.p, Rational(a, b), E.N + 8); };
    return {E.a4 - r(1, 48), E.a6 - E.a4 * r(1, 12) + r(1, 864)};
}

std::pair<PadicNumber, PadicNumber> tate_short_point(const TatePoint& P) {
    const Integer& p = P.X.prime();
    const unsigned N = std::max(P.X.relative_precision(), P.Y.relative_precision()) + 8;
    const auto r = [&](long a, long b) { return PadicNumber::from_rational(p, Rational(a, b), N); };
    return {P.X + r(1, 12), P.Y + P.X * r(1, 2)};
}

std::pair<PadicNumber, PadicNumber> tate_short_point_as_printed(const TatePoint& P) {
    const Integer& p = P.X.prime();
    const unsigned N = std::max(P.X.relative_precision(), P.Y.relative_precision()) + 8;
    const auto r = [&](long a, long b) { return PadicNumber::from_rational(p, Rational(a, b), N); };
    return {P.X - r(1, 12), P.X * r(1, 2)};
}

namespace {

ContainmentResult containment(const TateCurve& E, const PadicNumber& u_in, const PadicNumber& v_in,
                              TateProjection proj) {
    ContainmentResult res;
    const PadicNumber u = normalize_to_annulus(E, u_in);
    const PadicNumber v = normalize_to_annulus(E, v_in);
    const TatePoint Pu = tate_point(E, u), Pv = tate_point(E, v);
    const PadicNumber z = proj == TateProjection::x ? Pu.X : Pu.Y;
    const PadicNumber w = proj == TateProjection::x ? Pv.X : Pv.Y;
    const PadicNumber diff = z - w;
    res.v_zw = diff.valuation();
    if (res.v_zw < 1 || (proj == TateProjection::y && (z.valuation() < 0 || w.valuation() < 0))) {
        res.skipped = true;
        return res;
    }
    const auto c = proj == TateProjection::x ? tate_taylor_X(E, u) : tate_taylor_Y(E, u);
    const int k_max = proj == TateProjection::x ? 2 : 3;
    for (int k = 0; k < 4; ++k) res.coefficient_valuations[k] = c[k].valuation();
    for (int k = 1; k <= k_max; ++k)
        if (c[k].valuation() <= 0) {
            res.branch = k;
            break;
        }

    std::vector<PadicNumber> candidates{v};
    if (proj == TateProjection::x) candidates.push_back(normalize_to_annulus(E, v.inverse()));
    res.chosen = candidates[0];
    res.v_uv = (u - candidates[0]).valuation();
    for (std::size_t i = 1; i < candidates.size(); ++i) {
        const long d = (u - candidates[i]).valuation();
        if (d > res.v_uv) {
            res.v_uv = d;
            res.chosen = candidates[i];
        }
    }
    res.witness_in_field = static_cast<long>(k_max) * res.v_uv >= res.v_zw;
    res.holds = res.witness_in_field || res.branch != 0;
    return res;
}

}  // namespace

ContainmentResult containment_check_X(const TateCurve& E, const PadicNumber& u, const PadicNumber& v) {
    return containment(E, u, v, TateProjection::x);
}

ContainmentResult containment_check_Y(const TateCurve& E, const PadicNumber& u, const PadicNumber& v) {
    return containment(E, u, v, TateProjection::y);
}

namespace {

struct Trial {
    TateCurve curve;
    PadicNumber u, v;
    bool targeted = false;
};

Integer random_below(std::mt19937_64& rng, const Integer& bound) {
    // Digits base 2^32 then reduced: uniform enough for test sampling.
    Integer r = 0;
    const std::size_t words = mpz_sizeinbase(bound.get_mpz_t(), 2) / 32 + 2;
    for (std::size_t i = 0; i < words; ++i) r = r * Integer(4294967296UL) + Integer(static_cast<unsigned long>(rng() >> 32));
    return mod(r, bound);
}

Integer random_unit(std::mt19937_64& rng, const Integer& p, unsigned N) {
    const Integer m = ipow(p, N);
    for (;;) {
        Integer r = random_below(rng, m);
        if (mod(r, p) != 0) return r;
    }
}

// Hensel lift of a simple root r0 of x^2 + 4x + 1 mod p.
std::optional<Integer> quadratic_root(const Integer& p, unsigned N) {
    const Integer m = ipow(p, N);
    for (Integer r0 = 0; r0 < p; ++r0) {
        if (mod(r0 * r0 + 4 * r0 + 1, p) != 0) continue;
        Integer r = r0;
        for (unsigned i = 0; i < N + 1; ++i) r = mod(r - (r * r + 4 * r + 1) * mod_inverse(mod(2 * r + 4, m), m), m);
        return r;
    }
    return std::nullopt;
}

Trial make_trial(const Integer& p, TateProjection proj, unsigned N, std::uint64_t seed, std::size_t index) {
    std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
    Trial t;
    const long vq = 1 + static_cast<long>(rng() % 3);
    t.curve = make_tate_curve(PadicNumber::from_parts(p, vq, random_unit(rng, p, N), N), N);
    const unsigned family = static_cast<unsigned>(index % 4);
    const PadicNumber one = PadicNumber::from_integer(p, 1, N);
    auto small = [&](long lo) {
        const long j = lo + static_cast<long>(rng() % static_cast<std::uint64_t>(std::max<long>(1, N / 2 - lo + 1)));
        return PadicNumber::from_parts(p, j, random_unit(rng, p, N), N);
    };
    PadicNumber u;
    if (family == 1) {
        // Near -1 for X, near -2 for Y.
        u = PadicNumber::from_integer(p, proj == TateProjection::x ? -1 : -2, N) + small(1);
        t.targeted = true;
    } else if (family == 2 && proj == TateProjection::y) {
        if (const auto r = quadratic_root(p, N)) {
            u = PadicNumber::from_integer(p, *r, N) + small(1);
            t.targeted = true;
        }
    } else if (family == 3 && vq > 1) {
        u = PadicNumber::from_parts(p, 1 + static_cast<long>(rng() % static_cast<std::uint64_t>(vq - 1)),
                                    random_unit(rng, p, N), N);
    }
    if (u.is_zero()) {
        do {
            u = PadicNumber::from_parts(p, 0, random_unit(rng, p, N), N);
        } while ((u - one).valuation() > 0);
    }
    t.u = u;
    t.v = u + small(1);
    return t;
}

void tally(ContainmentTrials& out, const Trial& t, const ContainmentResult& r) {
    ++out.trials;
    if (t.targeted) ++out.targeted;
    if (r.skipped) {
        ++out.skipped;
        return;
    }
    ++out.branch_counts[static_cast<std::size_t>(r.branch)];
    if (r.witness_in_field) ++out.field_witnesses;
    if (!r.holds) ++out.violations;
}

void check_trial_args(const Integer& p, unsigned N) {
    if (p < 5 || !is_prime(p)) throw DomainError("containment_trials: need a prime p >= 5");
    if (N < 8) throw DomainError("containment_trials: precision must be at least 8");
}

}  // namespace

ContainmentTrials containment_trials(const Integer& p, TateProjection proj, std::size_t trials, unsigned N,
                                     std::uint64_t seed) {
    check_trial_args(p, N);
    std::vector<Trial> ts(trials);
    std::vector<ContainmentResult> rs(trials);
    std::exception_ptr error;
    const auto count = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t i = 0; i < count; ++i) {
        try {
            const auto k = static_cast<std::size_t>(i);
            ts[k] = make_trial(p, proj, N, seed, k);
            rs[k] = proj == TateProjection::x ? containment_check_X(ts[k].curve, ts[k].u, ts[k].v)
                                              : containment_check_Y(ts[k].curve, ts[k].u, ts[k].v);
        } catch (...) {
#pragma omp critical
            error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    ContainmentTrials out;
    for (std::size_t i = 0; i < trials; ++i) tally(out, ts[i], rs[i]);
    return out;
}

ContainmentTrials containment_trials_serial(const Integer& p, TateProjection proj, std::size_t trials, unsigned N,
                                            std::uint64_t seed) {
    check_trial_args(p, N);
    ContainmentTrials out;
    for (std::size_t i = 0; i < trials; ++i) {
        const Trial t = make_trial(p, proj, N, seed, i);
        tally(out, t, proj == TateProjection::x ? containment_check_X(t.curve, t.u, t.v)
                                                : containment_check_Y(t.curve, t.u, t.v));
    }
    return out;
}

namespace {

struct TorsionSample {
    TateCurve curve;
    std::vector<PadicNumber> values;  // distinct projected values
    std::size_t points = 0;
};

TorsionSample torsion_sample(const PadicNumber& t, unsigned m, unsigned N, TateProjection proj) {
    if (m == 0) throw DomainError("threshold_report: m must be positive");
    if (t.is_zero() || t.valuation() < 1) throw DomainError("threshold_report: need v(t) >= 1");
    const Integer& p = t.prime();
    TorsionSample s;
    s.curve = make_tate_curve(t.pow(m), N);
    const PadicNumber one = PadicNumber::from_integer(p, 1, N);
    const unsigned long pm1 = static_cast<unsigned long>(p.get_ui()) - 1;
    for (unsigned long a = 1; a <= pm1; ++a) {
        const PadicNumber zeta = PadicNumber::teichmuller(p, a, N);
        for (unsigned j = 0; j < m; ++j) {
            const PadicNumber u = zeta * t.pow(j);
            if ((u - one).is_zero()) continue;
            const TatePoint P = tate_point(s.curve, u);
            const auto [xs, ys] = tate_short_point(P);
            const PadicNumber val = proj == TateProjection::x ? xs : ys;
            ++s.points;
            if (std::none_of(s.values.begin(), s.values.end(), [&](const PadicNumber& o) { return o.agrees_with(val); }))
                s.values.push_back(val);
        }
    }
    return s;
}

}  // namespace

ThresholdReport threshold_report(const PadicNumber& t, unsigned m, unsigned N, TateProjection proj,
                                 const std::vector<PadicNumber>& betas) {
    const TorsionSample s = torsion_sample(t, m, N, proj);
    ThresholdReport rep;
    rep.p = t.prime();
    rep.v_q = s.curve.q.valuation();
    const double lp = std::log(rep.p.get_d());
    const double log_abs_q = -static_cast<double>(rep.v_q) * lp;
    rep.literal_threshold = 3 * (lp + log_abs_q);
    rep.intended_threshold = 3 * (lp - log_abs_q);
    rep.torsion_points = s.points;
    rep.distinct_values = s.values.size();
    // -log|x - beta| > T  <=>  v(x - beta) > T / log p.
    const double lit = rep.literal_threshold / lp, intd = rep.intended_threshold / lp;
    for (const auto& beta : betas) {
        ThresholdRow row;
        row.beta = beta.to_string();
        for (const auto& x : s.values) {
            const double v = static_cast<double>((x - beta).valuation());
            if (v > lit) ++row.count_literal;
            if (v > intd) ++row.count_intended;
            if (v > 0) ++row.count_residue_disc;
        }
        row.violation = row.count_intended >= 2;
        if (row.violation) ++rep.violations;
        rep.rows.push_back(row);
    }
    return rep;
}

std::vector<PadicNumber> threshold_betas(const PadicNumber& t, unsigned m, unsigned N, TateProjection proj,
                                         std::size_t count, std::uint64_t seed) {
    const TorsionSample s = torsion_sample(t, m, N, proj);
    const Integer& p = t.prime();
    std::mt19937_64 rng(seed);
    std::vector<PadicNumber> out;
    for (std::size_t i = 0; i < count; ++i) {
        if (i % 2 == 0 || s.values.empty()) {
            const long v = static_cast<long>(rng() % 3);
            out.push_back(PadicNumber::from_parts(p, v, random_unit(rng, p, N), N));
        } else {
            const auto& x = s.values[static_cast<std::size_t>(rng() % s.values.size())];
            const long j = 1 + static_cast<long>(rng() % static_cast<std::uint64_t>(N - 1));
            out.push_back(x + PadicNumber::from_parts(p, std::max(x.valuation(), 0L) + j, random_unit(rng, p, N), N));
        }
    }
    return out;
}

}  // namespace sint
