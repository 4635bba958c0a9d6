#include "doctest.h"

#include "freecomm/analytic.hpp"

#include <cmath>
#include <numbers>

using namespace freecomm;
using namespace freecomm::analytic;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> linspace(double a, double b, int n)
{
    std::vector<double> v;
    for (int i = 0; i < n; ++i) v.push_back(a + (b - a) * i / (n - 1));
    return v;
}

std::vector<double> symmetric_grid(double a, double b, int n)
{
    auto v = linspace(a, b, n);
    auto w = v;
    for (double t : w) v.push_back(-t);
    return v;
}

double semi_semi_radius() { return std::sqrt((11 + 5 * std::sqrt(5.0)) / 2); }

} // namespace

TEST_CASE("Cauchy transform from moments")
{
    auto sc = make_law("semicircular:2", 80);
    auto g = cauchy_from_moments(sc, 3.0);
    CHECK(std::abs(g.value - Complex((3 - std::sqrt(5.0)) / 2, 0)) < 1e-9);
    CHECK(g.tail_bound < 1e-9);
    CHECK(g.terms == 81);

    auto delta = point_mass(Rat(0), 10);
    for (Complex z : {Complex(0.3, 0), Complex(0, 2), Complex(-1, 1)}) {
        CHECK(std::abs(cauchy_from_moments(delta, z).value - 1.0 / z) < 1e-15);
    }

    // 1 + M(z) = z^{-1} G(1/z)
    const Complex z(0.1, 0.05);
    Complex m = 1;
    Complex zp = 1;
    for (int n = 1; n <= 80; ++n) {
        zp *= z;
        m += sc.moment(n).get_d() * zp;
    }
    CHECK(std::abs(m - cauchy_from_moments(sc, 1.0 / z).value / z) < 1e-9);

    CHECK_THROWS_AS(cauchy_from_moments(sc, 1.5), std::out_of_range);
    CHECK_THROWS_AS(cauchy_from_moments(make_law("semicircular:2", 10), 2.5), std::out_of_range);
}

TEST_CASE("example equations and their residuals")
{
    auto e = semi_proj_equation(make_rat(1, 2));
    CHECK(e.degree() == 2);
    CHECK(e.coeffs[0] == std::vector<Rat>{0, 0, 2});
    CHECK(e.to_string() == "(z^2)*G^2 + (-2*z^3)*G + (2*z^2) = 0");
    CHECK_THROWS_AS(semi_proj_equation(Rat(0)), std::invalid_argument);
    CHECK_THROWS_AS(semi_proj_equation(Rat(1)), std::invalid_argument);
    CHECK_THROWS_AS(proj_proj_equation(make_rat(1, 2), make_rat(3, 2)), std::invalid_argument);
    CHECK(semi_semi_equation().degree() == 3);

    const int order = 40;
    auto sc = make_law("semicircular:2", order);
    for (Rat lambda : {make_rat(1, 4), make_rat(1, 3), make_rat(1, 2)}) {
        auto mu = free_commutator(sc, make_law("projection:" + to_string(lambda), order));
        for (Complex z : {Complex(0, 3), Complex(2, 2.5), Complex(-3, 0.5)}) {
            auto g = cauchy_from_moments(mu, z);
            CHECK(std::abs(semi_proj_equation(lambda).residual(z, g.value)) < 1e-6);
        }
    }

    auto ss = free_commutator(make_law("semicircular:2", 60), make_law("semicircular:2", 60));
    for (Complex z : {Complex(0, 5), Complex(4, 3), Complex(-5, 1)}) {
        CHECK(std::abs(semi_semi_equation().residual(z, cauchy_from_moments(ss, z).value)) < 1e-6);
    }
    // |2i| is below the norm of the commutator, so the moment series diverges there.
    CHECK_THROWS_AS(cauchy_from_moments(ss, Complex(0, 2)), std::out_of_range);

    for (auto [la, lb] : {std::pair{make_rat(1, 3), make_rat(1, 2)}, std::pair{make_rat(1, 5), make_rat(1, 5)},
                          std::pair{make_rat(1, 10), make_rat(2, 3)}}) {
        auto mu = free_commutator(make_law("projection:" + to_string(la), order),
                                  make_law("projection:" + to_string(lb), order));
        for (Complex z : {Complex(0, 1), Complex(0.8, 0.6), Complex(-1, 0.2)}) {
            CAPTURE(z);
            CHECK(std::abs(proj_proj_equation(la, lb).residual(z, cauchy_from_moments(mu, z).value)) < 1e-6);
        }
    }
}

TEST_CASE("root tracking picks the Cauchy branch")
{
    auto eq = semi_proj_equation(make_rat(1, 2));
    for (Complex z : {Complex(0.3, 0.1), Complex(-2, 1e-3), Complex(0, 5)}) {
        bool amb = true;
        auto g = track_root(eq, z, 1e3, &amb);
        CHECK_FALSE(amb);
        CHECK(std::abs(g - (z - std::sqrt(z - std::sqrt(2.0)) * std::sqrt(z + std::sqrt(2.0)))) < 1e-10);
        CHECK(g.imag() < 0);
    }
    CHECK_THROWS_AS(track_root(eq, Complex(1, 0)), std::invalid_argument);
}

TEST_CASE("solve_density: semi_proj")
{
    SolveOptions opt;
    opt.atom_candidates = {0};
    auto half = solve_density(semi_proj_equation(make_rat(1, 2)), linspace(-1.1, 1.1, 45), opt);
    CHECK(half.flagged == 0);
    CHECK(half.model.atoms.empty());
    for (const auto& s : half.samples) {
        CAPTURE(s.t);
        CHECK(std::abs(s.density - std::sqrt(2 - s.t * s.t) / kPi) < 1e-6);
        CHECK(std::abs(s.density - closed_form_density(ClosedForm::SemiProj, 0.5, s.t)) < 1e-6);
    }

    auto quarter = solve_density(semi_proj_equation(make_rat(1, 4)), symmetric_grid(0.55, 1.15, 13), opt);
    REQUIRE(quarter.model.atoms.size() == 1);
    CHECK(std::abs(quarter.model.atoms[0].weight - 0.5) < 1e-6);
    CHECK(std::abs(closed_form_atom(ClosedForm::SemiProj, 0.25) - 0.5) < 1e-15);
    for (const auto& s : quarter.samples) {
        CAPTURE(s.t);
        CHECK(std::abs(s.density - closed_form_density(ClosedForm::SemiProj, 0.25, s.t)) < 1e-6);
    }
    CHECK(std::abs(solved_atom_weight(semi_proj_equation(make_rat(1, 3)), 0, opt) -
                   closed_form_atom(ClosedForm::SemiProj, 1.0 / 3)) < 1e-6);

    SolveOptions bad;
    bad.eps_schedule = {1e-3, 1e-2};
    CHECK_THROWS_AS(solved_density_at(semi_proj_equation(make_rat(1, 2)), 0.1, bad), std::invalid_argument);
    SolveOptions window;
    window.support = {{-1, 1}};
    CHECK_THROWS_AS(solve_density(semi_proj_equation(make_rat(1, 2)), {0, 1.5}, window), std::invalid_argument);
}

TEST_CASE("solve_density: semi_semi")
{
    const auto eq = semi_semi_equation();
    const double r = semi_semi_radius();
    CHECK(std::abs(r - 3.33019) < 1e-5);
    CHECK(std::abs(support_edge(eq, 3.0, 3.6) - r) < 1e-6);

    SolveOptions opt;
    opt.atom_candidates = {0};
    auto sol = solve_density(eq, symmetric_grid(0.3, 2.9, 27), opt);
    CHECK(sol.flagged == 0);
    CHECK(sol.model.atoms.empty());
    for (const auto& s : sol.samples) {
        CAPTURE(s.t);
        CHECK(std::abs(s.density - closed_form_density(ClosedForm::SemiSemi, 0, s.t)) < 1e-6);
    }
    CHECK(std::abs(closed_form_density(ClosedForm::SemiSemi, 0, 0) - 1 / kPi) < 1e-6);
    CHECK(closed_form_density(ClosedForm::SemiSemi, 0, 3.34) == 0);

    auto full = solve_density(eq, linspace(-3.5, 3.5, 29), opt);
    REQUIRE(full.model.support.size() == 1);
    CHECK(std::abs(full.model.support[0].hi - r) < 1e-4);
    CHECK(std::abs(full.model.support[0].lo + r) < 1e-4);

    auto exact = free_commutator(make_law("semicircular:2", 8), make_law("semicircular:2", 8));
    for (int n = 0; n <= 8; ++n) {
        CAPTURE(n);
        CHECK(std::abs(density_moment(full.model, n) - exact.moment(n).get_d()) < 1e-5);
    }
}

TEST_CASE("closed forms: special values")
{
    for (double t : {0.0, 0.1, -0.3, 0.45}) {
        CHECK(std::abs(closed_form_density(ClosedForm::ProjHalf, 0.5, t) - 1 / (kPi * std::sqrt(0.25 - t * t))) < 1e-12);
        CHECK(std::abs(closed_form_density(ClosedForm::ProjProjMid, 0.5, t) - 1 / (kPi * std::sqrt(0.25 - t * t))) <
              1e-12);
    }
    CHECK(closed_form_density(ClosedForm::ProjHalf, 0.5, 0.5) == 0);
    CHECK(closed_form_density(ClosedForm::SemiProj, 0.25, 0.1) == 0);
    CHECK(closed_form_density(ClosedForm::SemiProj, 0.25, 2) == 0);
    CHECK(closed_form_atom(ClosedForm::SemiProj, 0.5) == 0);
    CHECK(std::abs(closed_form_atom(ClosedForm::ProjHalf, 0.2) - 0.6) < 1e-12);

    CHECK(proj_proj_case(0.1) == ClosedForm::ProjProjSmall);
    CHECK(proj_proj_case(0.9) == ClosedForm::ProjProjSmall);
    CHECK(proj_proj_case(0.35) == ClosedForm::ProjProjMid);
    CHECK_THROWS_AS(closed_form_density(ClosedForm::ProjProjSmall, 0.35, 0), std::invalid_argument);
    CHECK_THROWS_AS(closed_form_density(ClosedForm::ProjProjMid, 0.1, 0), std::invalid_argument);
    CHECK_THROWS_AS(closed_form_density(ClosedForm::SemiProj, 1.2, 0), std::invalid_argument);
    CHECK(std::abs(closed_form_density(ClosedForm::ProjProjSmall, 0.9, 0.05) -
                   closed_form_density(ClosedForm::ProjProjSmall, 0.1, 0.05)) < 1e-15);
}

TEST_CASE("semi_proj radicand: the squared reading vanishes at both endpoints")
{
    for (double lambda : {0.1, 0.25, 1.0 / 3}) {
        const double p = lambda * (1 - lambda);
        const double alpha = std::sqrt(1 - 2 * std::sqrt(p)), beta = std::sqrt(1 + 2 * std::sqrt(p));
        auto squared = [&](double t) { return 4 * p - (t * t - 1) * (t * t - 1); };
        auto literal = [&](double t) { return 4 * p - (t - 1) * (t - 1); };
        CHECK(std::abs(squared(alpha)) < 1e-12);
        CHECK(std::abs(squared(beta)) < 1e-12);
        CHECK(std::abs(literal(beta)) > 1e-2);
        CHECK(std::abs(literal(alpha)) > 1e-2);
    }
    // The squared reading at lambda = 1/2 is the semicircle of radius sqrt 2.
    for (double t : {0.0, 0.5, 1.2})
        CHECK(std::abs(closed_form_density(ClosedForm::SemiProj, 0.5, t) - std::sqrt(2 - t * t) / kPi) < 1e-12);
}

TEST_CASE("closed-form models: mass and moments against the exact engine")
{
    struct Case {
        ClosedForm which;
        Rat lambda;
        Distribution exact;
    };
    const int order = 12;
    auto sc = make_law("semicircular:2", order);
    auto proj = [&](const Rat& l) { return make_law("projection:" + to_string(l), order); };
    std::vector<Case> cases;
    for (Rat l : {make_rat(1, 4), make_rat(1, 3), make_rat(1, 2)})
        cases.push_back({ClosedForm::SemiProj, l, free_commutator(sc, proj(l))});
    cases.push_back({ClosedForm::SemiSemi, make_rat(1, 2), free_commutator(sc, sc)});
    for (Rat l : {make_rat(1, 4), make_rat(1, 3), make_rat(1, 2)})
        cases.push_back({ClosedForm::ProjHalf, l, free_commutator(proj(l), proj(make_rat(1, 2)))});
    for (Rat l : {make_rat(1, 10), make_rat(1, 5), make_rat(7, 20), make_rat(1, 2), make_rat(4, 5)})
        cases.push_back({proj_proj_case(l.get_d()), l, free_commutator(proj(l), proj(l))});

    for (const auto& c : cases) {
        CAPTURE(to_string(c.which));
        CAPTURE(c.lambda.get_d());
        auto model = closed_form_model(c.which, c.lambda.get_d());
        CHECK(std::abs(total_mass(model) - 1) < 1e-6);
        for (int n = 1; n <= order; ++n) {
            CAPTURE(n);
            const double v = density_moment(model, n);
            if (n % 2 == 1) {
                CHECK(std::abs(v) < 1e-8);
            } else {
                CHECK(std::abs(v - c.exact.moment(n).get_d()) < 1e-5);
            }
        }
    }
}

TEST_CASE("solved atoms of projection pairs")
{
    SolveOptions opt;
    for (Rat l : {make_rat(1, 10), make_rat(1, 5), make_rat(7, 20), make_rat(2, 5)}) {
        const double xi = 4 * l.get_d() * (1 - l.get_d());
        CAPTURE(l.get_d());
        CHECK(std::abs(solved_atom_weight(proj_proj_equation(l, l), 0, opt) - std::sqrt(1 - xi)) < 1e-6);
        CHECK(std::abs(solved_atom_weight(proj_proj_equation(l, make_rat(1, 2)), 0, opt) - std::sqrt(1 - xi)) < 1e-6);
    }
    // mid case: atom and density share the origin; s = sqrt(xi(1 - xi)) ~ 0.196 splits h1 from h2
    opt.atom_candidates = {0};
    auto sol = solve_density(proj_proj_equation(make_rat(2, 5), make_rat(2, 5)),
                             {-0.4, -0.3, -0.08, -0.04, 0.04, 0.08, 0.3, 0.4}, opt);
    REQUIRE(sol.model.atoms.size() == 1);
    for (const auto& s : sol.samples) {
        CAPTURE(s.t);
        CHECK(std::abs(s.density - closed_form_density(ClosedForm::ProjProjMid, 0.4, s.t)) < 1e-6);
    }
}

TEST_CASE("Hankel positivity")
{
    auto sc = make_law("semicircular:2", 12);
    auto h = hankel_positive(sc, 6);
    CHECK(h.positive);
    CHECK_FALSE(h.first_failure.has_value());
    CHECK(h.determinants.size() == 7);
    CHECK(h.determinants[0] == 1);
    CHECK(h.determinants[1] == 1);
    for (const auto& d : h.determinants) CHECK(d == 1); // Catalan Hankel determinants

    auto bern = make_law("bernoulli:1/2,-1,1", 12);
    auto hb = hankel_positive(bern, 6);
    CHECK(hb.positive);
    CHECK(hb.determinants[2] == 0);

    const int n = 12;
    auto p = make_law("projection:9/20", n);
    auto c = free_commutator(make_law("projection:9/20", n), make_law("projection:1/2", n));
    auto half = free_power(c, make_rat(1, 2));
    auto hh = hankel_positive(half, 6);
    CHECK_FALSE(hh.positive);
    REQUIRE(hh.first_failure.has_value());
    CHECK(*hh.first_failure <= 6);

    auto he = hankel_positive(even_part(p), 6);
    CHECK_FALSE(he.positive);
    REQUIRE(he.first_failure.has_value());
    CHECK(*he.first_failure <= 6);

    // monotone in k
    for (const auto* mu : {&half, &c, &sc}) {
        bool failed = false;
        for (int k = 0; k <= 6; ++k) {
            const bool pos = hankel_positive(*mu, k).positive;
            if (failed) CHECK_FALSE(pos);
            failed = failed || !pos;
        }
    }
    CHECK(hankel_positive(c, 6).positive);
    CHECK_THROWS_AS(hankel_positive(sc, 7), std::invalid_argument);
}
