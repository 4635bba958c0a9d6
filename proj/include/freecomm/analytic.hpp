#pragma once

// Floating-point layer: Cauchy transforms from moments, the algebraic
// equations for G in the worked examples, Stieltjes inversion, closed-form
// densities and exact Hankel positivity.

#include "freecomm/freeops.hpp"

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace freecomm::analytic {

using Complex = std::complex<double>;

struct CauchyValue {
    Complex value;
    double tail_bound = 0; // estimated size of the omitted terms
    int terms = 0;
};

/// G(zeta) = (1/zeta)(1 + sum_n m_n zeta^{-n}) by partial sums over every
/// available moment. The tail is estimated from the growth rate of the last
/// moments; std::out_of_range when zeta lies outside the estimated disc of
/// convergence or the tail estimate exceeds tol.
CauchyValue cauchy_from_moments(const Distribution& mu, Complex zeta, double tol = 1e-9);

/// sum_k c_k(zeta) G^k = 0, coeffs[k][j] being the coefficient of zeta^j G^k.
struct CauchyEquation {
    std::vector<std::vector<Rat>> coeffs;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    /// c_0(zeta) .. c_d(zeta).
    std::vector<Complex> at(Complex zeta) const;
    Complex residual(Complex zeta, Complex g) const;
    std::string to_string() const;
};

/// semicircular(2) against projection(lambda): quadratic.
CauchyEquation semi_proj_equation(const Rat& lambda);
/// semicircular(2) against semicircular(2): cubic.
CauchyEquation semi_semi_equation();
/// projection(la) against projection(lb): bi-quadratic
/// (4z^2 - 1) z^4 G^4 - (4z^2 + a + b) z^2 G^2 - a b = 0, a = 4 la(1-la) - 1, b likewise.
CauchyEquation proj_proj_equation(const Rat& la, const Rat& lb);

struct Atom {
    double location = 0;
    double weight = 0;
};

struct Interval {
    double lo = 0;
    double hi = 0;
};

/// Atoms plus a density on finitely many intervals (zero elsewhere).
/// Interval endpoints double as quadrature breakpoints.
struct DensityModel {
    std::vector<Atom> atoms;
    std::vector<Interval> support;
    std::function<double(double)> density;
};

struct SolveOptions {
    std::vector<double> eps_schedule{1e-2, 1e-3, 1e-4};
    std::vector<Interval> support;        // declared support window
    std::vector<double> atom_candidates;  // locations probed for atoms
    double start_height = 1e3;            // the path starts at i * start_height
    double atom_threshold = 1e-8;
};

struct DensitySample {
    double t = 0;
    double density = 0;
    bool flagged = false; // two roots stayed indistinguishable along the path
};

struct SolvedDensity {
    DensityModel model;
    std::vector<DensitySample> samples;
    int flagged = 0;
};

/// The physical root at zeta (Im zeta > 0), continued from G ~ 1/zeta at
/// i * start_height: horizontally to Re zeta, then down. Sets *ambiguous
/// when the nearest-root choice could not be made unambiguously.
Complex track_root(const CauchyEquation& eq, Complex zeta, double start_height = 1e3, bool* ambiguous = nullptr);

/// -Im G(t + i eps) / pi over the eps schedule, extrapolated to eps = 0.
double solved_density_at(const CauchyEquation& eq, double t, const SolveOptions& opt, bool* ambiguous = nullptr);
/// lim eps -> 0 of -eps Im G(x + i eps), extrapolated over the schedule.
double solved_atom_weight(const CauchyEquation& eq, double x, const SolveOptions& opt);

SolvedDensity solve_density(const CauchyEquation& eq, const std::vector<double>& grid, const SolveOptions& opt);

/// Bisection for the point between inside (density > 0) and outside
/// (density = 0) where the density vanishes.
double support_edge(const CauchyEquation& eq, double inside, double outside, double tol = 1e-10);

enum class ClosedForm {
    SemiProj,      // semicircular(2) vs projection(lambda)
    SemiSemi,      // semicircular(2) vs semicircular(2)
    ProjHalf,      // projection(lambda) vs projection(1/2)
    ProjProjSmall, // projection(lambda) twice, lambda <= 1/2 - 1/sqrt(8)
    ProjProjMid,   // projection(lambda) twice, 1/2 - 1/sqrt(8) <= lambda <= 1/2
};

std::string to_string(ClosedForm which);
/// lambda in (0,1) for projection pairs; mapped to 1 - lambda above 1/2.
ClosedForm proj_proj_case(double lambda);

/// Density at t (0 outside the support). std::invalid_argument when lambda
/// is outside the range of the chosen case.
double closed_form_density(ClosedForm which, double lambda, double t);
/// Weight of the atom at 0.
double closed_form_atom(ClosedForm which, double lambda);
DensityModel closed_form_model(ClosedForm which, double lambda);

/// sum_atoms w a^n + integral of t^n density over the support, tanh-sinh per
/// interval. std::runtime_error if a quadrature misses its tolerance.
double density_moment(const DensityModel& model, int n, double tol = 1e-10);
double total_mass(const DensityModel& model);

struct HankelResult {
    bool positive = true;
    /// Smallest r whose (r+1)x(r+1) leading Hankel determinant is negative.
    std::optional<int> first_failure;
    std::vector<Rat> determinants; // r = 0..k
};

/// det[(m_{i+j})_{0<=i,j<=r}] for r = 0..k, exactly. Needs 2k <= order.
HankelResult hankel_positive(const Distribution& mu, int k);

} // namespace freecomm::analytic
