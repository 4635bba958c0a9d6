#include "freecomm/checks.hpp"

#include "freecomm/analytic.hpp"
#include "freecomm/mixedmoments.hpp"
#include "freecomm/ncpart.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace freecomm::checks {

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            if (pass) detail.str("");
            if (!detail.str().empty()) detail << "; ";
            detail << "FAILED " << what;
        }
        pass = pass && ok;
    }
    void note(const std::string& text)
    {
        if (!pass) return;
        if (!detail.str().empty()) detail << "; ";
        detail << text;
    }
};

std::string sci(double x)
{
    std::ostringstream os;
    os << std::setprecision(2) << std::scientific << x;
    return os.str();
}

Rat rnd_rat(std::mt19937& rng)
{
    std::uniform_int_distribution<int> num(-5, 5);
    std::uniform_int_distribution<int> den(1, 3);
    return make_rat(num(rng), den(rng));
}

Distribution random_dist(std::mt19937& rng, int order, bool even)
{
    for (;;) {
        std::vector<Rat> m;
        for (int k = 1; k <= order; ++k) m.push_back(even && k % 2 == 1 ? Rat(0) : rnd_rat(rng));
        Distribution d(std::move(m));
        if (d.variance() != 0) return d;
    }
}

using Pair = std::pair<Distribution, Distribution>;

std::vector<Pair> named_pairs(int order)
{
    auto law = [&](const char* s) { return make_law(s, order); };
    return {
        {law("semicircular:2"), law("semicircular:2")},
        {law("semicircular:2"), law("projection:1/4")},
        {law("projection:1/3"), law("projection:1/2")},
        {law("arcsine:1"), law("bernoulli:1/2,-1,1")},
    };
}

// 1. Zeta and Moeb are inverse under star.
void star_inverse(Outcome& o, unsigned)
{
    const auto t0 = Clock::now();
    const int n = 12;
    const bool zm = star(zeta(n), moeb(n)) == PowerSeries::identity(n);
    const bool mz = star(moeb(n), zeta(n)) == PowerSeries::identity(n);
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    o.require(zm && mz, "star(Zeta, Moeb) = Id to order 12");
    o.require(secs < 1.0, "runtime < 1 s (took " + sci(secs) + " s)");
    o.note("Zeta * Moeb = Moeb * Zeta = Id to order 12");
}

// 2. The worked epsilon-complement and the Kreweras special case.
void eps_complement(Outcome& o, unsigned)
{
    const auto t0 = Clock::now();
    using namespace ncpart;
    const Partition got = ncpart::eps_complement(parse_signature("11221"), parse_partition("{{1,2},{3,4,5}}"));
    o.require(got == parse_partition("{{1},{2,3,5},{4}}"), "C_(1,1,2,2,1)({{1,2},{3,4,5}}) = " + to_string(got));
    long checked = 0;
    bool all = true;
    for (int n = 1; n <= 7; ++n) {
        const auto ones = EpsSignature::constant(n, 1);
        for (const auto& pi : enumerate_nc(n)) {
            all = all && ncpart::eps_complement(ones, pi) == kreweras(pi);
            ++checked;
        }
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    o.require(all, "eps_complement((1..1), pi) = K(pi) for n <= 7");
    o.require(secs < 10.0, "runtime < 10 s");
    o.note("worked example ok; Kreweras agreement on " + std::to_string(checked) + " partitions");
}

// 3. Brute-force oracle equals the commutator formula.
void oracle(Outcome& o, unsigned)
{
    const auto t0 = Clock::now();
    const int n = 8;
    int compared = 0;
    for (const auto& [a, b] : named_pairs(n)) {
        const Distribution c = free_commutator(a, b);
        for (int k = 1; k <= n; ++k) {
            const bool eq = commutator_law_moment(a, b, k) == c.moment(k);
            o.require(eq, "moment " + std::to_string(k));
            ++compared;
        }
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    o.require(secs < 60.0, "runtime < 60 s");
    o.note(std::to_string(compared) + " moments equal exactly over 4 pairs, n <= 8");
}

// 4. Odd-block partitions cancel; the even-block sum is the full sum.
void nco_cancellation(Outcome& o, unsigned seed)
{
    const int n = 6;
    auto pairs = named_pairs(n);
    std::mt19937 rng(seed);
    for (int t = 0; t < 5; ++t) pairs.emplace_back(random_dist(rng, n, false), random_dist(rng, n, false));
    for (const auto& [a, b] : pairs) {
        for (int k = 1; k <= n; ++k) {
            o.require(freecomm::nco_cancellation(a, b, k) == 0, "NCO sum vanishes at n = " + std::to_string(k));
            o.require(commutator_moment_nce(a, b, k) == commutator_moment_oracle(a, b, k),
                      "NCE sum equals the full sum at n = " + std::to_string(k));
        }
    }
    o.note("9 pairs (4 named, 5 random), n <= 6: NCO sum = 0, NCE sum = full sum");
}

// 5. Two free semicirculars.
void symmetric_poisson(Outcome& o, unsigned)
{
    const int n = 12;
    const Distribution c = free_commutator(make_law("semicircular:2", n), make_law("semicircular:2", n));
    std::vector<Rat> expect;
    for (int k = 1; k <= n; ++k) expect.push_back(k % 2 == 0 ? Rat(2) : Rat(0));
    o.require(c.cumulants() == PowerSeries(expect), "cumulants (0,2,0,2,...) to order 12");
    o.require(c.cumulants() == Rat(2) * substitute_square(zeta(n / 2), n), "R = 2 Zeta(z^2)");
    o.require(c.moment(2) == 2, "m2 = 2");
    o.require(c.moment(4) == 10, "m4 = 10");
    o.note("R = 2z^2/(1-z^2) to order 12, m2 = 2, m4 = 10");
}

// 6. Commutator with the symmetric Bernoulli law.
void bernoulli_reduction(Outcome& o, unsigned)
{
    const int n = 12;
    const Distribution b = make_law("bernoulli:1/2,-1,1", n);
    for (const char* spec : {"semicircular:2", "poisson:1,1", "projection:1/3"}) {
        const Distribution mu = make_law(spec, n);
        o.require(free_commutator(mu, b) == free_add(mu, negate(mu)), std::string("mu = ") + spec);
    }
    o.note("[mu, Bernoulli] = mu (+) mu(-x) for 3 laws, order 12");
}

// 7. Closed-form inverses of R_E.
void inverse_table(Outcome& o, unsigned)
{
    const int k = 8;
    for (const char* spec : {"semicircular:3", "poisson:2,1/3", "arcsine:2", "bernoulli:1/3,-1,2"}) {
        const auto inv = closed_form_inverse(parse_law(spec), k);
        const PowerSeries re = truncate(r_even(make_law(spec, 2 * k).cumulants()), k);
        o.require(inv.has_value() && compose(re, *inv) == PowerSeries::identity(k), std::string("row ") + spec);
    }
    o.note("R_E o (tabulated inverse) = Id to order 8 for 4 rows");
}

// 8. Moment route and S-route against the star formula; variances.
void routes(Outcome& o, unsigned seed)
{
    const int n = 10;
    std::mt19937 rng(seed);
    auto general = named_pairs(n);
    for (int t = 0; t < 3; ++t) general.emplace_back(random_dist(rng, n, false), random_dist(rng, n, false));
    for (const auto& [a, b] : general) {
        o.require(commutator_moment_route(a, b) == free_commutator(a, b), "moment route");
    }
    std::vector<Pair> even{
        {make_law("semicircular:2", n), make_law("semicircular:2", n)},
        {make_law("semicircular:2", n), make_law("symbernoulli:1", n)},
        {make_law("arcsine:1", n), make_law("bernoulli:1/2,-1,1", n)},
    };
    for (int t = 0; t < 3; ++t) even.emplace_back(random_dist(rng, n, true), random_dist(rng, n, true));
    for (const auto& [a, b] : even) {
        o.require(commutator_from_s_route(a, b) == free_commutator(a, b), "S-route");
    }
    for (int t = 0; t < 10; ++t) {
        const Distribution a = random_dist(rng, n, true), b = random_dist(rng, n, true);
        const Rat expect = 2 * a.variance() * b.variance();
        o.require(free_commutator(a, b).variance() == expect, "variance of the commutator");
        o.require(commutator_s_route_even(a, b).gamma_c == expect, "S-route variance");
    }
    o.note(std::to_string(general.size()) + " moment-route pairs, " + std::to_string(even.size()) +
           " S-route pairs equal at order 10; gamma_c = 2 gamma_a gamma_b for 10 random pairs");
}

// 9. (ab, ba) is R-diagonal with the predicted determining series.
void r_diagonal(Outcome& o, unsigned seed)
{
    const int n = 8;
    const Distribution sc = make_law("semicircular:2", n), bern = make_law("bernoulli:1/2,-1,1", n);
    std::mt19937 rng(seed);
    std::vector<Pair> pairs{{sc, sc}, {sc, bern}, {bern, bern}, {make_law("arcsine:1", n), make_law("symbernoulli:2", n)}};
    for (int t = 0; t < 2; ++t) pairs.emplace_back(random_dist(rng, n, true), random_dist(rng, n, true));
    for (const auto& [a, b] : pairs) {
        const JointDist2 j = joint_ab_ba(a, b, n);
        const auto f = r_diagonal_test(j);
        o.require(f.has_value(), "non-alternating cumulants vanish");
        if (!f) continue;
        o.require(determining_series_check(j, a, b), "f = R(x1 x2) * Moeb = R_E(a) * Zeta * R_E(b)");
        o.require(substitute_square(Rat(2) * f->f, n) == free_commutator(a, b).cumulants(), "2 f(z^2) = R(c)");
    }
    const auto circ = r_diagonal_test(joint_ab_ba(sc, bern, n));
    o.require(circ && circ->f == PowerSeries::identity(n / 2), "f = Id for (semicircular, Bernoulli)");
    const auto haar = r_diagonal_test(joint_ab_ba(bern, bern, n));
    o.require(haar && haar->f == moeb(n / 2), "f = Moeb for (Bernoulli, Bernoulli)");
    o.note(std::to_string(pairs.size()) + " even pairs R-diagonal at order 8; f = Id (circular), f = Moeb (Haar unitary)");
}

// 10. Permutation identities, closed form, and (nu_m)_n = (nu_n)_m.
void higher_order(Outcome& o, unsigned seed)
{
    const int n = 8;
    std::mt19937 rng(seed);
    std::vector<Distribution> args;
    for (int i = 0; i < 5; ++i) args.push_back(random_dist(rng, n, false));

    int pairs = 0;
    for (int leaves = 2; leaves <= 4; ++leaves) {
        const auto exprs = CommutatorExpr::all(leaves);
        const std::vector<Distribution> a(args.begin(), args.begin() + leaves);
        for (const auto& f : exprs) {
            for (const auto& g : exprs) {
                const auto df = f.depths(), dg = g.depths();
                auto sf = df, sg = dg;
                std::sort(sf.begin(), sf.end());
                std::sort(sg.begin(), sg.end());
                if (sf != sg) continue;
                std::vector<int> sigma(static_cast<std::size_t>(leaves));
                std::iota(sigma.begin(), sigma.end(), 0);
                do {
                    bool match = true;
                    for (int j = 0; j < leaves && match; ++j) match = dg[sigma[j]] == df[j];
                    if (!match) continue;
                    std::vector<Distribution> permuted;
                    for (int j = 0; j < leaves; ++j) permuted.push_back(a[sigma[j]]);
                    o.require(eval_expr(f, permuted) == eval_expr(g, a), f.to_string() + " vs " + g.to_string());
                    ++pairs;
                } while (std::next_permutation(sigma.begin(), sigma.end()));
            }
        }
    }
    int closed = 0;
    for (int leaves = 1; leaves <= 5; ++leaves) {
        const std::vector<Distribution> a(args.begin(), args.begin() + leaves);
        for (const auto& e : CommutatorExpr::all(leaves)) {
            o.require(eval_expr(e, a) == eval_expr_closed_form(e, a), "closed form for " + e.to_string());
            ++closed;
        }
    }
    const Distribution nu = random_dist(rng, n, false);
    auto iter = [](const Distribution& d, int m) { return iterate_commutator(d, m).back(); };
    for (int a = 1; a <= 3; ++a) {
        for (int b = a + 1; b <= 3; ++b) {
            o.require(iter(iter(nu, a), b) == iter(iter(nu, b), a),
                      "(nu_" + std::to_string(a) + ")_" + std::to_string(b) + " symmetry");
        }
    }
    o.note(std::to_string(pairs) + " depth-matched pairs (<= 4 leaves) equal; closed form = recursion on " +
           std::to_string(closed) + " expressions; (nu_m)_n = (nu_n)_m for m,n <= 3");
}

// 11. Square relation for even laws.
void even_square(Outcome& o, unsigned seed)
{
    const int n = 12;
    std::mt19937 rng(seed);
    for (int t = 0; t < 10; ++t) {
        const SquareRelation s = square_relation_even(random_dist(rng, n, true));
        o.require(s.r_even_of_mu == s.square_times_moeb, "R_E(mu) = R(mu_{a^2}) * Moeb");
        o.require(s.square_moments == s.r_even_zeta_zeta, "M(mu_{a^2}) = R_E(mu) * Zeta * Zeta");
    }
    o.note("both square relations exact for 10 random even laws, order 12");
}

// 12. Iterated commutators.
void iterated(Outcome& o, unsigned seed)
{
    std::mt19937 rng(seed);
    const Distribution mu = random_dist(rng, 12, true);
    const auto cs = iterate_commutator(mu, 6);
    const Rat g = mu.variance();
    for (int m = 1; m <= 6; ++m) {
        o.require(cs[static_cast<std::size_t>(m - 1)].variance() == pow(2 * g, m) / 2, "variance of c_m");
    }

    const int order = 8;
    const Distribution b = make_law("symbernoulli:sqrt(1/2)", order);
    const Distribution c10 = iterate_commutator(b, 10).back();
    const Distribution target = make_law("semicircular:sqrt(2)", order);
    std::ostringstream errs;
    for (int k = 2; k <= order; k += 2) {
        const double rel = Rat(abs(c10.moment(k) - target.moment(k)) / target.moment(k)).get_d();
        if (k <= 4) o.require(rel <= 1e-3, "relative error of m" + std::to_string(k) + " = " + sci(rel));
        errs << (k > 2 ? ", " : "") << "m" << k << " " << sci(rel);
    }

    const UnitSeries s = reciprocal(UnitSeries::linear(order, 1, 1));
    const LimitS lim = limit_s(s);
    const UnitSeries e = exp_half(-2, order);
    Rat worst = 0;
    for (int j = 0; j <= order; ++j) {
        const Rat d = abs(lim.value.coef(j) - e.coef(j));
        o.require(d <= lim.tail_bounds[static_cast<std::size_t>(j)], "exp_half coefficient " + std::to_string(j));
        worst = std::max(worst, lim.tail_bounds[static_cast<std::size_t>(j)]);
    }
    o.note("variance 1/2 (2 gamma)^m for m <= 6; c_10 vs semicircular(sqrt 2): " + errs.str() +
           " (m2, m4 within 1e-3); prod 1/(1+w/2^k) = exp_1/2(-2w) to order 8 within tail bound " +
           sci(worst.get_d()));
}

// 13. Stieltjes inversion and closed forms.
void analytic_layer(Outcome& o, unsigned)
{
    using namespace analytic;
    const auto t0 = Clock::now();
    constexpr double pi = std::numbers::pi;
    SolveOptions opt;
    opt.atom_candidates = {0};

    std::vector<double> grid;
    for (int i = 0; i <= 22; ++i) grid.push_back(-1.1 + 0.1 * i);
    const auto half = solve_density(semi_proj_equation(make_rat(1, 2)), grid, opt);
    double err = 0;
    for (const auto& s : half.samples) err = std::max(err, std::abs(s.density - std::sqrt(2 - s.t * s.t) / pi));
    o.require(err < 1e-6 && half.model.atoms.empty(), "semi_proj(1/2) = semicircle of radius sqrt 2 (err " + sci(err) + ")");

    const double w = solved_atom_weight(semi_proj_equation(make_rat(1, 4)), 0, opt);
    o.require(std::abs(w - 0.5) < 1e-6, "semi_proj(1/4) atom weight " + sci(w));

    const auto eq = semi_semi_equation();
    const double edge = support_edge(eq, 3.0, 3.6);
    o.require(std::abs(edge - 3.33019) < 1e-4, "semi_semi support edge " + std::to_string(edge));
    std::vector<double> inner;
    for (int i = 0; i <= 26; ++i) {
        inner.push_back(0.3 + 0.1 * i);
        inner.push_back(-0.3 - 0.1 * i);
    }
    const auto ss = solve_density(eq, inner, opt);
    double err2 = 0;
    for (const auto& s : ss.samples) {
        err2 = std::max(err2, std::abs(s.density - closed_form_density(ClosedForm::SemiSemi, 0, s.t)));
    }
    o.require(err2 < 1e-6 && ss.flagged == 0, "semi_semi density vs closed form (err " + sci(err2) + ")");
    std::vector<double> wide;
    for (int i = 0; i <= 28; ++i) wide.push_back(-3.5 + 0.25 * i);
    const auto full = solve_density(eq, wide, opt);
    const Distribution exact = free_commutator(make_law("semicircular:2", 8), make_law("semicircular:2", 8));
    double err3 = 0;
    for (int n = 0; n <= 8; ++n) err3 = std::max(err3, std::abs(density_moment(full.model, n) - exact.moment(n).get_d()));
    o.require(err3 < 1e-5, "semi_semi moments <= 8 vs exact (err " + sci(err3) + ")");

    double err4 = 0;
    int models = 0;
    auto mass = [&](ClosedForm which, double lambda) {
        err4 = std::max(err4, std::abs(total_mass(closed_form_model(which, lambda)) - 1));
        ++models;
    };
    for (double l : {0.25, 1.0 / 3, 0.5}) {
        mass(ClosedForm::SemiProj, l);
        mass(ClosedForm::ProjHalf, l);
    }
    mass(ClosedForm::SemiSemi, 0.5);
    for (double l : {0.1, 0.2, 0.35, 0.5}) mass(proj_proj_case(l), l);
    o.require(err4 < 1e-6, "closed-form masses (err " + sci(err4) + ")");

    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    o.require(secs < 120, "runtime < 2 min");
    o.note("semicircle err " + sci(err) + ", atom 1/2 err " + sci(std::abs(w - 0.5)) + ", edge " +
           std::to_string(edge) + ", semi_semi density err " + sci(err2) + ", moments err " + sci(err3) + ", " +
           std::to_string(models) + " models normalized (err " + sci(err4) + ")");
}

// 14. Hankel detection of non-positive functionals.
void positivity(Outcome& o, unsigned)
{
    const int n = 12;
    const Distribution p = make_law("projection:9/20", n);
    const Distribution half =
        free_power(free_commutator(p, make_law("projection:1/2", n)), make_rat(1, 2));
    const auto h1 = analytic::hankel_positive(half, 6);
    const auto h2 = analytic::hankel_positive(even_part(p), 6);
    o.require(!h1.positive && h1.first_failure && *h1.first_failure <= 6, "half power of the commutator");
    o.require(!h2.positive && h2.first_failure && *h2.first_failure <= 6, "even part of projection(0.45)");
    o.note("non-positive: half power fails at r = " + std::to_string(h1.first_failure.value_or(-1)) +
           ", even part fails at r = " + std::to_string(h2.first_failure.value_or(-1)) + " (exact determinants)");
}

struct Suite {
    const char* name;
    void (*fn)(Outcome&, unsigned);
};

const std::vector<Suite>& suites()
{
    static const std::vector<Suite> s{
        {"star-inverse", star_inverse},     {"eps-complement", eps_complement},
        {"oracle", oracle},                 {"nco-cancellation", nco_cancellation},
        {"symmetric-poisson", symmetric_poisson}, {"bernoulli-reduction", bernoulli_reduction},
        {"table1", inverse_table},                 {"routes", routes},
        {"r-diagonal", r_diagonal},         {"higher-order", higher_order},
        {"even-square", even_square},       {"iterated", iterated},
        {"analytic", analytic_layer},       {"positivity", positivity},
    };
    return s;
}

} // namespace

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& s : suites()) v.emplace_back(s.name);
        return v;
    }();
    return names;
}

CheckResult run_suite(const std::string& name, unsigned seed)
{
    const auto& all = suites();
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (name != all[i].name) continue;
        CheckResult r;
        r.id = static_cast<int>(i) + 1;
        r.name = name;
        Outcome o;
        const auto t0 = Clock::now();
        try {
            all[i].fn(o, seed);
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        r.pass = o.pass;
        r.detail = o.detail.str();
        return r;
    }
    throw std::invalid_argument("unknown suite '" + name + "'");
}

std::vector<CheckResult> run_all(unsigned seed)
{
    std::vector<CheckResult> out;
    for (const auto& name : suite_names()) out.push_back(run_suite(name, seed));
    return out;
}

std::string format(const CheckResult& r)
{
    std::ostringstream os;
    os << (r.pass ? "PASS" : "FAIL") << ' ' << std::setw(2) << r.id << ' ' << r.name << ": " << r.detail << " ("
       << std::fixed << std::setprecision(2) << r.seconds << " s)";
    return os.str();
}

std::optional<PowerSeries> closed_form_inverse(const LawSpec& spec, int k)
{
    auto rational = [k](const std::vector<Rat>& p, const std::vector<Rat>& q) {
        auto pad = [k](const std::vector<Rat>& v) {
            std::vector<Rat> c(static_cast<std::size_t>(k) + 1, Rat(0));
            for (std::size_t i = 0; i < v.size() && i < c.size(); ++i) c[i] = v[i];
            return UnitSeries(std::move(c));
        };
        return to_power(pad(p) / pad(q));
    };
    auto two_point = [&](const Rat& l, const Rat& d2) -> std::optional<PowerSeries> {
        const Rat v = l - l * l;
        if (v == 0 || d2 == 0) return std::nullopt;
        return rational({0, 1, 5, 8, 4}, {d2 * v, d2, d2});
    };
    using K = LawSpec::Kind;
    switch (spec.kind) {
    case K::Semicircular: return PowerSeries::monomial(k, 1, Rat(4) / spec.r_squared);
    case K::FreePoisson: {
        const Rat b2 = spec.beta * spec.beta;
        return rational({0, 1}, {spec.alpha * b2, b2});
    }
    case K::Arcsine: return rational({0, 2, 1}, {spec.r_squared});
    case K::Bernoulli: return two_point(spec.lambda, (spec.t1 - spec.t0) * (spec.t1 - spec.t0));
    case K::Projection: return two_point(spec.lambda, 1);
    case K::SymBernoulli: return two_point(make_rat(1, 2), 4 * spec.r_squared);
    case K::Atomic: {
        if (spec.atoms.size() != 2) return std::nullopt;
        const Rat d = spec.atoms[1].second - spec.atoms[0].second;
        return two_point(spec.atoms[0].first, d * d);
    }
    }
    return std::nullopt;
}

} // namespace freecomm::checks
