#include "sint/bigarith.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace sint {

namespace {

// Primes below 10^6; trial bounds above that are capped.
const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> primes = [] {
        constexpr std::uint32_t limit = 1'000'000;
        std::vector<bool> composite(limit + 1);
        std::vector<std::uint32_t> out;
        for (std::uint32_t i = 2; i <= limit; ++i) {
            if (composite[i]) continue;
            out.push_back(i);
            for (std::uint64_t j = static_cast<std::uint64_t>(i) * i; j <= limit; j += i) composite[j] = true;
        }
        return out;
    }();
    return primes;
}

const Integer& two_pow_128() {
    static const Integer v = Integer(1) << 128;
    return v;
}

// Pollard rho with Brent's cycle detection. Returns a nontrivial factor, or 0
// when this constant fails or the iteration budget runs out (budget 0 means
// unlimited). `spent` accumulates iterations across calls.
Integer brent_split(const Integer& n, unsigned long c, std::uint64_t budget, std::uint64_t& spent) {
    Integer y = 2 + c, x, ys, q = 1, g = 1, t;
    std::uint64_t r = 1;
    constexpr std::uint64_t m = 128;
    auto step = [&](Integer& v) {
        v = v * v + c;
        mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    };
    do {
        x = y;
        for (std::uint64_t i = 0; i < r; ++i) step(y);
        std::uint64_t k = 0;
        do {
            ys = y;
            const std::uint64_t lim = std::min(m, r - k);
            for (std::uint64_t i = 0; i < lim; ++i) {
                step(y);
                t = x - y;
                q *= abs(t);
                mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            }
            spent += lim;
            mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            k += m;
        } while (k < r && g == 1);
        r *= 2;
        if (budget && spent > budget && g == 1) return 0;
    } while (g == 1);
    if (g == n) {
        do {
            step(ys);
            t = abs(Integer(x - ys));
            mpz_gcd(g.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
        } while (g == 1);
    }
    if (g == n) return 0;
    return g;
}

// Brent rho on moduli below 2^126 with 128-bit Montgomery arithmetic.
using u128 = unsigned __int128;
using u64 = std::uint64_t;

struct Montgomery128 {
    u128 n;
    u128 ninv;  // -n^{-1} mod 2^128

    explicit Montgomery128(u128 modulus) : n(modulus) {
        u128 inv = n;
        for (int i = 0; i < 7; ++i) inv *= 2 - n * inv;
        ninv = -inv;
    }

    static void mul_wide(u128 a, u128 b, u128& hi, u128& lo) {
        const u128 a0 = static_cast<u64>(a), a1 = a >> 64;
        const u128 b0 = static_cast<u64>(b), b1 = b >> 64;
        const u128 p00 = a0 * b0, p01 = a0 * b1, p10 = a1 * b0, p11 = a1 * b1;
        const u128 mid = (p00 >> 64) + static_cast<u64>(p01) + static_cast<u64>(p10);
        lo = static_cast<u64>(p00) | (mid << 64);
        hi = p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64);
    }

    u128 mul(u128 a, u128 b) const {
        u128 hi, lo, mh, ml;
        mul_wide(a, b, hi, lo);
        const u128 m = lo * ninv;
        mul_wide(m, n, mh, ml);
        u128 t = hi + mh + (lo != 0 ? 1 : 0);
        if (t >= n) t -= n;
        return t;
    }
};

u128 gcd128(u128 a, u128 b) {
    while (b) {
        const u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

u128 to_u128(const Integer& v) {
    Integer hi = v >> 64;
    Integer lo = v - (hi << 64);
    return (static_cast<u128>(hi.get_ui()) << 64) | lo.get_ui();
}

Integer from_u128(u128 v) {
    Integer r = static_cast<unsigned long>(v >> 64);
    r <<= 64;
    r += static_cast<unsigned long>(static_cast<u64>(v));
    return r;
}

// Same contract as brent_split, for odd n < 2^126.
Integer brent_split_small(const Integer& big_n, unsigned long c, std::uint64_t budget, std::uint64_t& spent) {
    const u128 n = to_u128(big_n);
    const Montgomery128 mont(n);
    const u128 cc = c % n;
    auto step = [&](u128 v) {
        v = mont.mul(v, v) + cc;
        return v >= n ? v - n : v;
    };
    auto diff = [&](u128 a, u128 b) { return a >= b ? a - b : b - a; };
    u128 y = (2 + c) % n, x = 0, ys = 0, q = 1, g = 1;
    std::uint64_t r = 1;
    constexpr std::uint64_t m = 128;
    do {
        x = y;
        for (std::uint64_t i = 0; i < r; ++i) y = step(y);
        std::uint64_t k = 0;
        do {
            ys = y;
            const std::uint64_t lim = std::min(m, r - k);
            for (std::uint64_t i = 0; i < lim; ++i) {
                y = step(y);
                q = mont.mul(q, diff(x, y));
            }
            spent += lim;
            g = gcd128(q, n);
            k += m;
        } while (k < r && g == 1);
        r *= 2;
        if (budget && spent > budget && g == 1) return 0;
    } while (g == 1);
    if (g == n) {
        do {
            ys = step(ys);
            g = gcd128(diff(x, ys), n);
        } while (g == 1);
    }
    if (g == n) return 0;
    return from_u128(g);
}

void add_prime(Factorization& f, const Integer& p, unsigned e) { f.prime_powers[p] += e; }

// Products of consecutive blocks of small primes; a gcd against a block
// product skips the block unless one of its primes divides n.
constexpr std::size_t kBlock = 256;

const std::vector<Integer>& block_products() {
    static const std::vector<Integer> blocks = [] {
        const auto& primes = small_primes();
        std::vector<Integer> out;
        for (std::size_t i = 0; i < primes.size(); i += kBlock) {
            Integer prod = 1;
            for (std::size_t j = i; j < std::min(primes.size(), i + kBlock); ++j) prod *= primes[j];
            out.push_back(prod);
        }
        return out;
    }();
    return blocks;
}

void factor_into(Factorization& out, Integer n, const FactorBudget& budget) {
    const auto& primes = small_primes();
    const auto& blocks = block_products();
    Integer g;
    for (std::size_t b = 0; b < blocks.size() && n != 1; ++b) {
        const std::uint32_t first = primes[b * kBlock];
        if (first > budget.trial_bound) break;
        if (Integer(first) * first > n) {
            // n has no factor below its square root here, so it is prime.
            if (n > 1) add_prime(out, n, 1);
            return;
        }
        mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), blocks[b].get_mpz_t());
        if (g == 1) continue;
        for (std::size_t j = b * kBlock; j < std::min(primes.size(), (b + 1) * kBlock); ++j) {
            const std::uint32_t p = primes[j];
            if (p > budget.trial_bound) break;
            if (!mpz_divisible_ui_p(g.get_mpz_t(), p)) continue;
            unsigned e = 0;
            while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
                mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
                ++e;
            }
            add_prime(out, Integer(p), e);
        }
    }
    if (n == 1) return;

    static const Integer small_limit = Integer(1) << 126;
    // Pending factors with multiplicity.
    std::vector<std::pair<Integer, unsigned>> work{{n, 1}};
    std::vector<std::pair<Integer, unsigned>> resistant;
    while (!work.empty()) {
        auto [m, mult] = std::move(work.back());
        work.pop_back();
        if (m == 1) continue;
        if (is_prime(m)) {
            // A prime may already be present via another split branch.
            add_prime(out, m, mult);
            continue;
        }
        // Rho cannot separate the equal factors of a perfect power.
        if (mpz_perfect_power_p(m.get_mpz_t())) {
            const auto bits = mpz_sizeinbase(m.get_mpz_t(), 2);
            Integer root;
            unsigned long k = 2;
            while (k <= bits && !mpz_root(root.get_mpz_t(), m.get_mpz_t(), k)) ++k;
            if (k <= bits) {
                work.emplace_back(root, mult * static_cast<unsigned>(k));
                continue;
            }
        }
        const std::uint64_t budget_iters = m > two_pow_128() ? budget.rho_iterations : budget.small_rho_iterations;
        std::uint64_t spent = 0;
        Integer d = 0;
        for (unsigned long c = 1; d == 0; ++c) {
            d = (m < small_limit && mpz_odd_p(m.get_mpz_t())) ? brent_split_small(m, c, budget_iters, spent)
                                                              : brent_split(m, c, budget_iters, spent);
            if (d == 0 && budget_iters && spent > budget_iters) break;
        }
        if (d == 0) {
            resistant.emplace_back(m, mult);
            continue;
        }
        Integer other;
        mpz_divexact(other.get_mpz_t(), m.get_mpz_t(), d.get_mpz_t());
        work.emplace_back(d, mult);
        work.emplace_back(other, mult);
    }
    for (auto& [r, mult] : resistant) {
        // Keep the cofactor coprime to every listed prime.
        for (auto& [p, e] : out.prime_powers) {
            while (mpz_divisible_p(r.get_mpz_t(), p.get_mpz_t())) {
                mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), p.get_mpz_t());
                e += mult;
            }
        }
        Integer t;
        mpz_pow_ui(t.get_mpz_t(), r.get_mpz_t(), mult);
        out.cofactor *= t;
    }
}

}  // namespace

bool is_prime(const Integer& n) { return n >= 2 && mpz_probab_prime_p(n.get_mpz_t(), 40) > 0; }

unsigned Factorization::valuation(const Integer& p) const {
    auto it = prime_powers.find(p);
    return it == prime_powers.end() ? 0U : it->second;
}

Integer Factorization::value() const {
    Integer v = cofactor;
    Integer t;
    for (const auto& [p, e] : prime_powers) {
        mpz_pow_ui(t.get_mpz_t(), p.get_mpz_t(), e);
        v *= t;
    }
    return sign * v;
}

std::string Factorization::primes_joined(char sep) const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [p, e] : prime_powers) {
        if (!first) os << sep;
        first = false;
        os << p;
        if (e > 1) os << "^" << e;
    }
    if (!complete()) os << (first ? "" : std::string(1, sep)) << "[" << cofactor << "]";
    return os.str();
}

CompositeCofactorError::CompositeCofactorError(Factorization partial)
    : DomainError("composite cofactor resisted factorization: " + partial.cofactor.get_str()),
      partial_(std::move(partial)) {}

Factorization factor_partial(const Integer& n, const FactorBudget& budget) {
    if (n == 0) throw DomainError("factor_integer: zero has no factorization");
    Factorization f;
    f.sign = n < 0 ? -1 : 1;
    factor_into(f, abs(n), budget);
    return f;
}

Factorization factor_integer(const Integer& n, const FactorBudget& budget) {
    Factorization f = factor_partial(n, budget);
    if (!f.complete()) throw CompositeCofactorError(std::move(f));
    return f;
}

Integer strip_primes(const Integer& n, const std::vector<Integer>& primes, std::map<Integer, unsigned>* found) {
    Integer m = abs(n);
    for (const auto& p : primes) {
        if (m == 0) break;
        unsigned e = 0;
        while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
            mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
            ++e;
        }
        if (e && found) (*found)[p] += e;
    }
    return m;
}

unsigned valuation(const Integer& n, const Integer& p) {
    if (n == 0) throw DomainError("valuation of zero");
    Integer m = n;
    unsigned e = 0;
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
        ++e;
    }
    return e;
}

}  // namespace sint
