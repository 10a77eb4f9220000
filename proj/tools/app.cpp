#include "app.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "report.hpp"
#include "sint/elliptic.hpp"
#include "sint/equidist.hpp"
#include "sint/integrality.hpp"
#include "sint/linforms.hpp"
#include "sint/pairing.hpp"
#include "sint/tate.hpp"

namespace sintlab {

using namespace sint;

namespace {

constexpr const char* kOutDirEnv = "SINTLAB_OUT_DIR";

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Params {
public:
    explicit Params(std::map<std::string, std::string> v) : v_(std::move(v)) {}

    const std::string& text(const std::string& key) const { return v_.at(key); }

    std::uint64_t u64(const std::string& key, std::uint64_t min = 1) const {
        const std::string& s = text(key);
        std::size_t used = 0;
        std::uint64_t x = 0;
        try {
            if (s.empty() || s[0] == '-') throw std::invalid_argument(s);
            x = std::stoull(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != s.size() || used == 0) fail(key, "expected a non-negative integer, got '" + s + "'");
        if (x < min) fail(key, "must be at least " + std::to_string(min));
        return x;
    }

    double positive(const std::string& key) const {
        const std::string& s = text(key);
        std::size_t used = 0;
        double x = 0;
        try {
            x = std::stod(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != s.size() || used == 0 || !std::isfinite(x)) fail(key, "expected a number, got '" + s + "'");
        if (x <= 0) fail(key, "must be positive");
        return x;
    }

    AlgebraicNumber beta(const std::string& key = "beta") const {
        if (text(key).empty()) fail(key, "is required");
        return guarded(key, [&] { return AlgebraicNumber::parse(text(key)); });
    }

    PrimeSet primes(const std::string& key = "S") const {
        return guarded(key, [&] { return PrimeSet::parse(text(key)); });
    }

    EllipticCurve curve(const std::string& key = "curve") const {
        const std::string& s = text(key);
        if (s.rfind("catalog:", 0) == 0) {
            const std::string idx = s.substr(8);
            const auto& cat = curve_catalog();
            if (idx.size() != 1 || idx[0] < '0' || idx[0] >= static_cast<char>('0' + cat.size()))
                fail(key, "catalog index must be 0.." + std::to_string(cat.size() - 1));
            return cat[static_cast<std::size_t>(idx[0] - '0')];
        }
        return guarded(key, [&] { return EllipticCurve::parse(s); });
    }

    std::string choice(const std::string& key, const std::vector<std::string>& allowed) const {
        const std::string& s = text(key);
        for (const auto& a : allowed)
            if (s == a) return s;
        std::string list;
        for (const auto& a : allowed) list += (list.empty() ? "" : "|") + a;
        fail(key, "expected one of " + list + ", got '" + s + "'");
    }

    [[noreturn]] static void fail(const std::string& key, const std::string& msg) {
        throw ValidationError("--" + key + ": " + msg);
    }

private:
    template <class F>
    static auto guarded(const std::string& key, F f) -> decltype(f()) {
        try {
            return f();
        } catch (const PrecisionError&) {
            throw;
        } catch (const std::exception& e) {
            fail(key, e.what());
        }
    }

    std::map<std::string, std::string> v_;
};

struct Command {
    CLI::App* app = nullptr;
    std::map<std::string, std::string> values;
    std::function<Report(const Params&)> body;

    void option(const std::string& key, const std::string& def, const std::string& help) {
        values[key] = def;
        app->add_option("--" + key, values[key], help);
    }
};

std::string point_coords(const Point& P) { return P.to_string(); }

std::string join_ints(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + std::to_string(v[i]);
    return s;
}

Report enumerate_cmd(const Params& a) {
    const auto beta = a.beta();
    const auto S = a.primes();
    Report r;
    r.columns = {"n", "orbit_size", "resultant", "contact_primes", "s_integral"};
    for (const auto& c : enumerate_s_integral(beta, S, a.u64("N")))
        r.add({c.n, c.orbit_size, c.resultant.get_str(), c.contact_primes.primes_joined(), c.s_integral});
    return r;
}

Report uniformity_cmd(const Params& a) {
    const auto u = uniformity_report(a.beta(), a.primes(), a.u64("N"), a.positive("c"));
    std::string orders;
    for (std::size_t i = 0; i < u.orders.size(); ++i) orders += (i ? ";" : "") + std::to_string(u.orders[i]);
    Report r;
    r.columns = {"N", "c", "threshold", "orbit_count", "max_phi", "count_above_threshold", "exceptional_bound",
                 "within_bound", "orders"};
    r.add({u.N, u.c, u.threshold, u.orbit_count, u.max_phi, u.count_above_threshold, u.exceptional_bound,
           u.within_bound, orders});
    return r;
}

Report pairing_cmd(const Params& a) {
    const auto beta = a.beta();
    std::vector<PairingDecomposition> rows;
    if (a.text("n") != "0")
        rows.push_back(pairing_decomposition(beta, a.u64("n")));
    else
        rows = pairing_grid(beta, a.u64("N"));
    Report r;
    r.columns = {"n", "archimedean", "finite_sum", "cofactor_part", "height", "residual", "error_bound",
                 "finite_parts", "resultant"};
    for (const auto& d : rows) {
        std::string parts;
        for (const auto& [p, c] : d.finite_parts) parts += (parts.empty() ? "" : ";") + p.get_str() + ":" + format_double(c);
        r.add({d.n, d.archimedean_part, d.finite_sum, d.cofactor_part, d.height, d.residual, d.error_bound, parts,
               d.resultant.get_str()});
    }
    return r;
}

Report equidist_cmd(const Params& a) {
    const auto beta = a.beta();
    const std::uint64_t N = a.u64("N");
    const double eps = a.positive("eps"), kappa = a.positive("kappa"), C = a.positive("C");
    const std::complex<double> center = beta.value_double();
    std::vector<DiscQuery> qs;
    if (N < 3) Params::fail("N", "must be at least 3");
    for (std::uint64_t n = 3; n <= N; ++n) qs.push_back({n, center, eps});
    const auto recs = disc_count_grid(qs, kappa, C);
    Report r;
    r.columns = {"n", "phi", "center_re", "center_im", "eps", "count", "bruteforce_count", "term1", "term2", "term3",
                 "holds", "logplus_discrepancy"};
    for (const auto& d : recs)
        r.add({d.n, d.m, d.center.real(), d.center.imag(), d.eps, d.lhs, disc_count_bruteforce(d.n, center, eps),
               d.term1, d.term2, d.term3, d.holds, logplus_discrepancy(beta, d.n)});
    return r;
}

Report lmn_gap_cmd(const Params& a) {
    GapParams gp;
    gp.C_eps = a.positive("C-eps");
    gp.eps = a.positive("eps");
    Report r;
    r.columns = {"n", "actual_gap", "bound", "margin", "branch", "k", "corollary_form", "violated"};
    for (const auto& g : cyclotomic_gap_experiment(a.beta(), a.u64("N"), gp))
        r.add({g.n, g.actual_gap, g.bound, g.margin, to_string(g.branch), g.k, g.corollary_form, g.violated});
    return r;
}

Report elliptic_cmd(const Params& a, std::uint64_t seed) {
    const auto E = a.curve();
    const std::string mode = a.choice("mode", {"levels", "torsion", "heights", "exponents"});
    Report r;
    if (mode == "levels") {
        const auto M = static_cast<unsigned>(a.u64("M", 2));
        if (M > 16) Params::fail("M", "levels above 16 are not supported");
        const auto [Ei, u] = E.integral_model();
        r.columns = {"m", "degree", "rational_roots", "orbit_degrees", "orbit_degrees_known"};
        for (const auto& L : torsion_levels(Ei, M)) {
            std::string roots;
            for (const auto& x : L.rational_roots) roots += (roots.empty() ? "" : ";") + x.get_str();
            r.add({std::uint64_t{L.m}, std::int64_t{L.degree()}, roots, join_ints(L.orbit_degrees),
                   L.orbit_degrees_known});
        }
    } else if (mode == "torsion") {
        r.columns = {"point", "order", "canonical_height"};
        for (const auto& [P, n] : rational_torsion(E))
            r.add({point_coords(P), std::uint64_t{n}, P.infinity ? 0.0 : canonical_height(E, P).value});
    } else if (mode == "heights") {
        const std::string& pt = a.text("point");
        const auto comma = pt.find(',');
        if (comma == std::string::npos) Params::fail("point", "expected x,y");
        Point P;
        try {
            P = Point{Rational(pt.substr(0, comma)), Rational(pt.substr(comma + 1)), false};
            P.x.canonicalize();
            P.y.canonicalize();
        } catch (const std::exception&) {
            Params::fail("point", "coordinates must be rationals");
        }
        if (!E.on_curve(P)) Params::fail("point", "not on the curve");
        const auto K = a.u64("K");
        const double h1 = canonical_height(E, P).value;
        r.columns = {"k", "canonical_height", "ratio_to_k2_h"};
        for (std::uint64_t k = 1; k <= K; ++k) {
            const Point Q = multiply(E, P, static_cast<std::int64_t>(k));
            const double h = Q.infinity ? 0.0 : canonical_height(E, Q).value;
            r.add({k, h, h1 > 0 ? h / (static_cast<double>(k * k) * h1) : 0.0});
        }
    } else {
        const auto rep = wp_distance_exponent_check(E, a.u64("samples", 4), seed);
        r.columns = {"family", "exponent", "samples", "fitted_C_wp", "fitted_C_wp_prime", "violations"};
        for (const auto& f : rep.fits)
            r.add({f.family, f.exponent, std::uint64_t{f.samples}, rep.fitted_C_wp, rep.fitted_C_wp_prime,
                   std::uint64_t{rep.violations}});
    }
    return r;
}

Report cassels_cmd(const Params& a) {
    const auto E = a.curve();
    const auto pmax = a.u64("p-max", 2);
    Report r;
    r.columns = {"point", "order", "p", "p_power", "n", "vx", "vy", "min_valuation", "holds", "literal_holds"};
    const auto opt = [](const std::optional<long>& v) { return v ? std::to_string(*v) : std::string("inf"); };
    for (const auto& [P, order] : rational_torsion(E)) {
        if (P.infinity) continue;
        for (std::uint64_t p = 2; p <= pmax; ++p) {
            if (!is_prime(Integer(p)) || !E.good_reduction(Integer(p))) continue;
            const auto c = cassels_check(E, P, Integer(p));
            r.add({point_coords(P), std::uint64_t{order}, p, c.p_power, std::uint64_t{c.n}, opt(c.vx), opt(c.vy),
                   c.min_valuation.get_str(), c.holds, c.literal_holds});
        }
    }
    return r;
}

Report lattes_cmd(const Params& a) {
    const auto E = a.curve();
    LattesParams lp;
    lp.projection = a.choice("projection", {"x", "y"}) == "x" ? LattesProjection::x : LattesProjection::y;
    lp.c = a.positive("c");
    lp.gap_C = a.positive("gap-C");
    lp.gap_eps = a.positive("gap-eps");
    const auto M = static_cast<unsigned>(a.u64("M", 2));
    if (M > 16) Params::fail("M", "levels above 16 are not supported");
    const auto rep = lattes_s_integral_experiment(E, a.beta(), a.primes(), M, lp);
    Report r;
    r.columns = {"m", "level_degree", "resultant", "contact_primes", "s_integral", "closeness", "gap_bound",
                 "gap_violated", "orbit_certified"};
    for (const auto& row : rep.rows)
        r.add({std::uint64_t{row.m}, std::int64_t{row.level_degree}, row.resultant.get_str(),
               row.contact_primes.primes_joined(), row.s_integral, row.closeness, row.gap_bound, row.gap_violated,
               row.orbit_certified});
    return r;
}

Report tate_cmd(const Params& a, std::uint64_t seed) {
    const Integer p(a.u64("p", 5));
    if (p < 5 || !is_prime(p)) Params::fail("p", "must be a prime >= 5");
    const auto N = static_cast<unsigned>(a.u64("N", 8));
    if (N > 200) Params::fail("N", "precision above 200 is not supported");
    const std::string mode = a.choice("mode", {"residual", "containment", "threshold"});
    const auto proj = a.choice("projection", {"x", "y"}) == "x" ? TateProjection::x : TateProjection::y;
    const auto trials = a.u64("trials");
    Report r;
    if (mode == "containment") {
        const auto t = containment_trials(p, proj, trials, N, seed);
        r.columns = {"trials", "skipped", "violations", "field_witnesses", "branch_1", "branch_2", "branch_3",
                     "unresolved", "targeted"};
        r.add({std::uint64_t{t.trials}, std::uint64_t{t.skipped}, std::uint64_t{t.violations},
               std::uint64_t{t.field_witnesses}, std::uint64_t{t.branch_counts[1]}, std::uint64_t{t.branch_counts[2]},
               std::uint64_t{t.branch_counts[3]}, std::uint64_t{t.branch_counts[0]}, std::uint64_t{t.targeted}});
    } else if (mode == "residual") {
        r.columns = {"trial", "v_q", "v_u", "residual_valuation", "ok"};
        std::mt19937_64 rng(seed);
        Integer pn;
        mpz_pow_ui(pn.get_mpz_t(), p.get_mpz_t(), N);
        auto unit = [&] {
            for (;;) {
                Integer x = Integer(static_cast<unsigned long>(rng() >> 1)) * Integer(static_cast<unsigned long>(rng() >> 1));
                x %= pn;
                if (x % p != 0) return x;
            }
        };
        for (std::uint64_t i = 0; i < trials; ++i) {
            const long vq = 1 + static_cast<long>(rng() % 3);
            const TateCurve E = make_tate_curve(PadicNumber::from_parts(p, vq, unit(), N), N);
            PadicNumber u;
            do {
                u = PadicNumber::from_parts(p, static_cast<long>(rng() % static_cast<std::uint64_t>(vq)), unit(), N);
            } while ((u - PadicNumber::from_integer(p, 1, N)).valuation() > 0);
            const long v = tate_residual(E, tate_point(E, u)).valuation();
            r.add({i, std::int64_t{vq}, std::int64_t{u.valuation()}, std::int64_t{v}, v >= static_cast<long>(N) - 3});
        }
    } else {
        const auto m = static_cast<unsigned>(a.u64("m"));
        if (m > 6) Params::fail("m", "must be at most 6");
        const PadicNumber t = PadicNumber::from_integer(p, 2 * p, N);
        const auto rep = threshold_report(t, m, N, proj, threshold_betas(t, m, N, proj, trials, seed));
        r.columns = {"beta", "literal_threshold", "intended_threshold", "count_literal", "count_intended",
                     "count_residue_disc", "violation"};
        for (const auto& row : rep.rows)
            r.add({row.beta, rep.literal_threshold, rep.intended_threshold, std::uint64_t{row.count_literal},
                   std::uint64_t{row.count_intended}, std::uint64_t{row.count_residue_disc}, row.violation});
    }
    return r;
}

std::map<std::string, std::string> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("--config: cannot read '" + path + "'");
    std::map<std::string, std::string> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError("--config: line " + std::to_string(lineno) + " is not key=value");
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t"), e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"S-integrality laboratory: exact experiments on torsion orbits", "sintlab"};
    app.require_subcommand(1);
    app.fallthrough(false);

    std::map<std::string, std::unique_ptr<Command>> cmds;
    auto make = [&](const std::string& name, const std::string& help) -> Command& {
        auto c = std::make_unique<Command>();
        c->app = app.add_subcommand(name, help);
        c->option("format", "csv", "csv or json");
        c->option("out", "", "output file (default: $" + std::string(kOutDirEnv) + "/<command>.<format> or stdout)");
        c->option("seed", "0", "seed for sampled experiments");
        c->option("config", "", "key=value file whose entries override flags");
        auto& ref = *c;
        cmds[name] = std::move(c);
        return ref;
    };

    Command& enumerate = make("enumerate", "S-integral orbits of roots of unity relative to beta");
    enumerate.option("beta", "", "algebraic number: rational, or poly:c0,c1,...;root:i");
    enumerate.option("S", "", "comma-separated primes (inf implied)");
    enumerate.option("N", "100", "largest orbit order");
    enumerate.body = enumerate_cmd;

    Command& uniformity = make("uniformity", "count of S-integral orbits above the degree threshold");
    uniformity.option("beta", "", "algebraic number");
    uniformity.option("S", "", "comma-separated primes");
    uniformity.option("N", "100", "largest orbit order");
    uniformity.option("c", "1", "threshold constant");
    uniformity.body = uniformity_cmd;

    Command& pairing = make("pairing", "local decomposition of the pairing against torsion orbits");
    pairing.option("beta", "", "algebraic number");
    pairing.option("n", "0", "single orbit order (0: use --N grid)");
    pairing.option("N", "20", "grid bound");
    pairing.body = pairing_cmd;

    Command& equidist = make("equidist", "disc counts and log+ discrepancy of roots of unity near beta");
    equidist.option("beta", "", "algebraic number (disc center)");
    equidist.option("N", "100", "largest orbit order");
    equidist.option("eps", "0.1", "disc radius");
    equidist.option("kappa", "1", "exponent kappa");
    equidist.option("C", "10", "constant C");
    equidist.body = equidist_cmd;

    Command& lmn = make("lmn-gap", "actual cyclotomic gaps against linear-forms bounds");
    lmn.option("beta", "", "algebraic number");
    lmn.option("N", "100", "largest orbit order");
    lmn.option("C-eps", "1", "corollary constant");
    lmn.option("eps", "1", "corollary exponent");
    lmn.body = lmn_gap_cmd;

    std::uint64_t seed_value = 0;
    Command& elliptic = make("elliptic", "torsion levels, heights and distance exponents");
    elliptic.option("curve", "catalog:0", "a1,a2,a3,a4,a6 or catalog:i");
    elliptic.option("mode", "levels", "levels|torsion|heights|exponents");
    elliptic.option("M", "8", "largest torsion level");
    elliptic.option("point", "", "x,y for heights");
    elliptic.option("K", "6", "multiples for heights");
    elliptic.option("samples", "400", "samples for exponents");
    elliptic.body = [&](const Params& a) { return elliptic_cmd(a, seed_value); };

    Command& cassels = make("cassels", "valuation bounds for rational torsion at good primes");
    cassels.option("curve", "catalog:0", "a1,a2,a3,a4,a6 or catalog:i");
    cassels.option("p-max", "50", "largest prime");
    cassels.body = cassels_cmd;

    Command& lattes = make("lattes", "S-integral torsion levels under a Lattes projection");
    lattes.option("curve", "0,0,0,-1,0", "integral model a1,a2,a3,a4,a6 or catalog:i");
    lattes.option("beta", "5", "algebraic number");
    lattes.option("S", "2,3,5", "comma-separated primes");
    lattes.option("M", "6", "largest level");
    lattes.option("projection", "x", "x|y");
    lattes.option("c", "1", "degree threshold constant");
    lattes.option("gap-C", "1", "gap rule constant");
    lattes.option("gap-eps", "0.5", "gap rule exponent");
    lattes.body = lattes_cmd;

    Command& tate = make("tate-check", "Tate curve residuals, containment trials and thresholds");
    tate.option("p", "5", "prime >= 5");
    tate.option("N", "16", "p-adic precision");
    tate.option("mode", "containment", "residual|containment|threshold");
    tate.option("projection", "x", "x|y");
    tate.option("trials", "100", "trials or beta samples");
    tate.option("m", "2", "q = t^m for threshold");
    tate.body = [&](const Params& a) { return tate_cmd(a, seed_value); };

    if (!args.empty() && !args[0].empty() && args[0][0] != '-' && !cmds.count(args[0])) {
        err << "error: unknown subcommand '" << args[0] << "'\n" << app.help();
        return kValidation;
    }
    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        const auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front();
        err << (sub ? sub->help() : app.help());
        return kValidation;
    }

    CLI::App* sub = app.get_subcommands().front();
    Command& cmd = *cmds.at(sub->get_name());
    try {
        auto values = cmd.values;
        if (!values["config"].empty()) {
            for (const auto& [k, v] : read_config(values["config"])) {
                if (!values.count(k) || k == "config") throw ValidationError("--config: unknown key '" + k + "'");
                values[k] = v;
            }
        }
        const Params params(values);
        const std::string format = params.choice("format", {"csv", "json"});
        seed_value = params.u64("seed", 0);
        Report rep = cmd.body(params);
        rep.meta = {{"command", sub->get_name()}, {"seed", std::to_string(seed_value)}};

        std::string path = values["out"];
        if (path.empty())
            if (const char* dir = std::getenv(kOutDirEnv); dir && *dir)
                path = std::string(dir) + "/" + sub->get_name() + "." + format;
        std::ostringstream buf;
        if (format == "csv")
            write_csv(rep, buf);
        else
            write_json(rep, buf);
        if (path.empty()) {
            out << buf.str();
        } else {
            std::ofstream f(path, std::ios::binary);
            if (!(f << buf.str()) || !f.flush()) {
                err << "error: --out: cannot write '" << path << "'\n";
                return kPrecision;
            }
        }
        return kOk;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kValidation;
    } catch (const PrecisionError& e) {
        err << "precision error: " << e.what() << "\n";
        return kPrecision;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kValidation;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kInternal;
    }
}

}  // namespace sintlab
