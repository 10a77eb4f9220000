#include "sint/bigarith.hpp"

namespace sint::modp {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

std::uint64_t inverse(std::uint64_t a, std::uint64_t p) { return powmod(a, p - 2, p); }

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

}  // namespace

Poly reduce(const IntPolynomial& f, std::uint64_t p) {
    Poly out(f.coefficients().size());
    Integer t;
    for (std::size_t i = 0; i < out.size(); ++i) {
        mpz_fdiv_r_ui(t.get_mpz_t(), f.coefficients()[i].get_mpz_t(), p);
        out[i] = t.get_ui();
    }
    trim(out);
    return out;
}

int degree(const Poly& a) { return static_cast<int>(a.size()) - 1; }

Poly sub(const Poly& a, const Poly& b, std::uint64_t p) {
    Poly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < r.size(); ++i) {
        std::uint64_t x = i < a.size() ? a[i] : 0;
        std::uint64_t y = i < b.size() ? b[i] : 0;
        r[i] = (x + p - y) % p;
    }
    trim(r);
    return r;
}

Poly mul(const Poly& a, const Poly& b, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
    trim(r);
    return r;
}

Poly rem(const Poly& a, const Poly& m, std::uint64_t p) {
    if (m.empty()) throw DomainError("modp::rem by zero");
    Poly r = a;
    const std::uint64_t inv = inverse(m.back(), p);
    const std::size_t dm = m.size() - 1;
    while (r.size() > dm) {
        const std::uint64_t t = mulmod(r.back(), inv, p);
        const std::size_t shift = r.size() - 1 - dm;
        for (std::size_t j = 0; j <= dm; ++j) r[shift + j] = (r[shift + j] + p - mulmod(t, m[j], p)) % p;
        trim(r);
    }
    return r;
}

Poly gcd(Poly a, Poly b, std::uint64_t p) {
    while (!b.empty()) {
        Poly r = rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        const std::uint64_t inv = inverse(a.back(), p);
        for (auto& c : a) c = mulmod(c, inv, p);
    }
    return a;
}

Poly pow_x(const Integer& e, const Poly& m, std::uint64_t p) {
    Poly result{1};
    Poly base = rem(Poly{0, 1}, m, p);
    result = rem(result, m, p);
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        result = rem(mul(result, result, p), m, p);
        if (mpz_tstbit(e.get_mpz_t(), i)) result = rem(mul(result, base, p), m, p);
    }
    return result;
}

std::vector<int> distinct_degree_counts(const Poly& f, std::uint64_t p) {
    const int d = degree(f);
    std::vector<int> counts(static_cast<std::size_t>(std::max(d, 0)) + 1);
    Poly rest = f;
    Poly xq{0, 1};  // x^(p^i) mod rest
    for (int i = 1; 2 * i <= degree(rest); ++i) {
        // x^(p^i) = (x^(p^(i-1)))^p: raise by composition through pow of the residue.
        Poly acc{1};
        Poly base = rem(xq, rest, p);
        std::uint64_t e = p;
        while (e) {
            if (e & 1) acc = rem(mul(acc, base, p), rest, p);
            base = rem(mul(base, base, p), rest, p);
            e >>= 1;
        }
        xq = acc;
        Poly g = gcd(rest, sub(xq, Poly{0, 1}, p), p);
        const int dg = degree(g);
        if (dg > 0) {
            counts[static_cast<std::size_t>(i)] += dg / i;
            // rest /= g
            Poly q;
            Poly r = rest;
            const std::uint64_t inv = inverse(g.back(), p);
            q.assign(r.size() - g.size() + 1, 0);
            while (r.size() >= g.size()) {
                const std::uint64_t t = mulmod(r.back(), inv, p);
                const std::size_t shift = r.size() - g.size();
                q[shift] = t;
                for (std::size_t j = 0; j < g.size(); ++j) r[shift + j] = (r[shift + j] + p - mulmod(t, g[j], p)) % p;
                trim(r);
                if (r.size() < g.size()) break;
            }
            rest = q;
            trim(rest);
            xq = rem(xq, rest, p);
        }
    }
    if (degree(rest) > 0) counts[static_cast<std::size_t>(degree(rest))] += 1;
    return counts;
}

}  // namespace sint::modp
