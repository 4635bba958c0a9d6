#include "freecomm/analytic.hpp"

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace freecomm::analytic {

namespace {

constexpr double kPi = std::numbers::pi;
// Height used for boundary values G(t + i0): support edges and the model density.
constexpr double kBoundaryEps = 1e-12;
constexpr double kEdgeThreshold = 1e-7;
constexpr double kRunThreshold = 1e-6;

double to_double(const Rat& r) { return r.get_d(); }

Complex horner(const std::vector<Complex>& c, Complex x)
{
    Complex acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

std::vector<Complex> roots_of(std::vector<Complex> c)
{
    while (!c.empty() && c.back() == 0.0) c.pop_back();
    const int d = static_cast<int>(c.size()) - 1;
    if (d < 1) throw std::domain_error("CauchyEquation: degree drops to 0");

    std::vector<Complex> roots;
    if (d == 1) {
        roots.push_back(-c[0] / c[1]);
    } else {
        // G = s H with s the Fujiwara-type root scale, so the monic companion
        // matrix for H has entries of order one even when G is huge or tiny.
        double s = 0;
        for (int k = 0; k < d; ++k) {
            const double r = std::abs(c[static_cast<std::size_t>(k)] / c.back());
            if (r > 0) s = std::max(s, std::pow(r, 1.0 / (d - k)));
        }
        if (s == 0) s = 1;
        Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(d, d);
        for (int i = 1; i < d; ++i) comp(i, i - 1) = 1;
        for (int i = 0; i < d; ++i) {
            comp(i, d - 1) = -c[static_cast<std::size_t>(i)] / c.back() * std::pow(s, i - d);
        }
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
        for (int i = 0; i < d; ++i) roots.push_back(s * es.eigenvalues()(i));
    }

    std::vector<Complex> dc;
    for (int k = 1; k <= d; ++k) dc.push_back(static_cast<double>(k) * c[static_cast<std::size_t>(k)]);
    for (auto& r : roots) {
        for (int it = 0; it < 3; ++it) {
            const Complex p = horner(c, r), dp = horner(dc, r);
            if (std::abs(dp) == 0) break;
            const Complex next = r - p / dp;
            if (!(std::abs(horner(c, next)) < std::abs(p))) break;
            r = next;
        }
    }
    return roots;
}

// Nearest root at z to the branch value g at z_prev, with the distance to the
// runner-up. Distances are measured on u = zeta G, which stays bounded where
// G blows up like w / zeta at an atom at the origin.
struct Nearest {
    Complex root;
    double d1, d2;
};

Nearest nearest_root(const CauchyEquation& eq, Complex z, Complex z_prev, Complex g)
{
    Nearest n{0, std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    const Complex u = z_prev * g;
    for (const auto& r : roots_of(eq.at(z))) {
        const double d = std::abs(z * r - u);
        if (d < n.d1) {
            n.d2 = n.d1;
            n.d1 = d;
            n.root = r;
        } else if (d < n.d2) {
            n.d2 = d;
        }
    }
    return n;
}

// Follows the branch through g along path(s), s from 0 to 1. A step is
// accepted when the runner-up root is at least 3x farther than the winner;
// otherwise it is halved, down to a floor where the point gets flagged.
template <class Path>
Complex follow(const CauchyEquation& eq, Complex g, Path path, double h0, bool& ambiguous)
{
    constexpr double kMinStep = 1e-7;
    h0 = std::min(1.0, h0);
    double s = 0, h = h0;
    while (s < 1) {
        const double next = std::min(1.0, s + h);
        const Nearest n = nearest_root(eq, path(next), path(s), g);
        const bool clear = n.d2 >= 3 * n.d1;
        if (!clear && h > kMinStep) {
            h /= 2;
            continue;
        }
        g = n.root;
        s = next;
        if (clear) {
            h *= 1.5;
        } else {
            ambiguous = true;
            h = h0;
        }
    }
    return g;
}

// Tracks the physical branch from i*R to t + i*h for each h in `heights`
// (strictly decreasing): across at height R, then straight down with
// geometric steps. Returns G at each height.
std::vector<Complex> track_heights(const CauchyEquation& eq, double t, const std::vector<double>& heights,
                                   double start_height, bool& ambiguous)
{
    const double R = std::max(start_height, 2 * heights.front());
    Complex g;
    {
        const Complex z(0, R);
        const auto roots = roots_of(eq.at(z));
        const Complex guess = 1.0 / z;
        g = *std::min_element(roots.begin(), roots.end(),
                              [&](Complex a, Complex b) { return std::abs(a - guess) < std::abs(b - guess); });
    }
    g = follow(eq, g, [&](double s) { return Complex(s * t, R); }, 0.25 * R / std::max(std::abs(t), 1e-300),
               ambiguous);
    std::vector<Complex> out;
    double y = R;
    for (double h : heights) {
        const double l0 = std::log(y), l1 = std::log(h);
        g = follow(eq, g, [&](double s) { return Complex(t, std::exp(l0 + s * (l1 - l0))); },
                   std::log(2.0) / (l0 - l1), ambiguous);
        y = h;
        out.push_back(g);
    }
    return out;
}

// Value at x = 0 of the polynomial through (xs[i], ys[i]).
double neville_at_zero(const std::vector<double>& xs, std::vector<double> ys)
{
    const std::size_t n = xs.size();
    for (std::size_t m = 1; m < n; ++m) {
        for (std::size_t i = 0; i + m < n; ++i) {
            ys[i] = (xs[i + m] * ys[i] - xs[i] * ys[i + 1]) / (xs[i + m] - xs[i]);
        }
    }
    return ys[0];
}

void check_schedule(const std::vector<double>& eps)
{
    if (eps.empty()) throw std::invalid_argument("eps schedule is empty");
    for (std::size_t i = 0; i < eps.size(); ++i) {
        if (!(eps[i] > 0) || (i > 0 && !(eps[i] < eps[i - 1]))) {
            throw std::invalid_argument("eps schedule must be positive and strictly decreasing");
        }
    }
}

Complex atom_part(const std::vector<Atom>& atoms, Complex z)
{
    Complex s = 0;
    for (const auto& a : atoms) s += a.weight / (z - a.location);
    return s;
}

double density_with_atoms(const CauchyEquation& eq, double t, const SolveOptions& opt, const std::vector<Atom>& atoms,
                          bool* ambiguous)
{
    check_schedule(opt.eps_schedule);
    bool amb = false;
    const auto gs = track_heights(eq, t, opt.eps_schedule, opt.start_height, amb);
    std::vector<double> ds;
    for (std::size_t i = 0; i < gs.size(); ++i) {
        const Complex z(t, opt.eps_schedule[i]);
        ds.push_back(-(gs[i] - atom_part(atoms, z)).imag() / kPi);
    }
    if (ambiguous) *ambiguous = amb;
    return std::max(0.0, neville_at_zero(opt.eps_schedule, ds));
}

// -Im G(t + i0) / pi with the atoms' Poisson kernels removed.
double boundary_density(const CauchyEquation& eq, double t, double start_height, const std::vector<Atom>& atoms)
{
    for (const auto& a : atoms) {
        if (std::abs(t - a.location) < 1e-6) t = a.location + (t < a.location ? -1e-6 : 1e-6);
    }
    bool amb = false;
    const Complex g = track_heights(eq, t, {kBoundaryEps}, start_height, amb).front();
    return std::max(0.0, -(g - atom_part(atoms, Complex(t, kBoundaryEps))).imag() / kPi);
}

void require_lambda(double lambda, const char* what)
{
    if (!(lambda > 0 && lambda < 1)) {
        throw std::invalid_argument(std::string(what) + ": lambda must lie in (0,1)");
    }
}

Rat require_lambda(const Rat& lambda, const char* what)
{
    if (lambda <= 0 || lambda >= 1) {
        throw std::invalid_argument(std::string(what) + ": lambda must lie in (0,1), got " + freecomm::to_string(lambda));
    }
    return lambda;
}

double xi_of(double lambda) { return 4 * lambda * (1 - lambda); }

const double kSmallMidSplit = 0.5 - 1 / std::sqrt(8.0);
constexpr double kCaseTol = 1e-12;

double fold(double lambda) { return lambda > 0.5 ? 1 - lambda : lambda; }

double semi_semi_radius() { return std::sqrt((11 + 5 * std::sqrt(5.0)) / 2); }

} // namespace

CauchyValue cauchy_from_moments(const Distribution& mu, Complex zeta, double tol)
{
    const double az = std::abs(zeta);
    if (az == 0) throw std::out_of_range("cauchy_from_moments: zeta = 0");
    const int N = mu.order();
    std::vector<double> m(static_cast<std::size_t>(N) + 1);
    for (int n = 0; n <= N; ++n) m[static_cast<std::size_t>(n)] = to_double(mu.moment(n));

    // Growth rate from the root test on the upper half and from the ratio of
    // the last two nonzero moments of equal parity.
    double rho = 0;
    for (int n = std::max(1, N / 2); n <= N; ++n) {
        rho = std::max(rho, std::pow(std::abs(m[static_cast<std::size_t>(n)]), 1.0 / n));
    }
    int last = N;
    while (last > 0 && m[static_cast<std::size_t>(last)] == 0) --last;
    for (int prev = last - 2; prev >= 1 && last > 0; prev -= 2) {
        if (m[static_cast<std::size_t>(prev)] != 0) {
            rho = std::max(rho, std::pow(std::abs(m[static_cast<std::size_t>(last)] / m[static_cast<std::size_t>(prev)]),
                                         1.0 / (last - prev)));
            break;
        }
    }

    const double q = rho / az;
    if (q >= 1) {
        std::ostringstream os;
        os << "cauchy_from_moments: |zeta| = " << az << " is inside the estimated spectral radius " << rho;
        throw std::out_of_range(os.str());
    }
    const double tail = std::pow(q, N + 1) / (az * (1 - q));
    if (tail > tol) {
        std::ostringstream os;
        os << "cauchy_from_moments: tail estimate " << tail << " exceeds " << tol << " with " << N << " moments";
        throw std::out_of_range(os.str());
    }
    const Complex w = 1.0 / zeta;
    Complex acc = 0;
    for (int n = N; n >= 0; --n) acc = acc * w + m[static_cast<std::size_t>(n)];
    return {acc * w, tail, N + 1};
}

std::vector<Complex> CauchyEquation::at(Complex zeta) const
{
    std::vector<Complex> out;
    for (const auto& row : coeffs) {
        Complex acc = 0;
        for (auto it = row.rbegin(); it != row.rend(); ++it) acc = acc * zeta + to_double(*it);
        out.push_back(acc);
    }
    return out;
}

Complex CauchyEquation::residual(Complex zeta, Complex g) const { return horner(at(zeta), g); }

std::string CauchyEquation::to_string() const
{
    std::ostringstream os;
    bool first_term = true;
    for (int k = degree(); k >= 0; --k) {
        const auto& row = coeffs[static_cast<std::size_t>(k)];
        std::ostringstream poly;
        int nz = 0;
        for (int j = static_cast<int>(row.size()) - 1; j >= 0; --j) {
            const Rat& c = row[static_cast<std::size_t>(j)];
            if (c == 0) continue;
            if (nz++ > 0) poly << (c > 0 ? " + " : " - ");
            else if (c < 0) poly << "-";
            const Rat a = abs(c);
            if (a != 1 || j == 0) poly << freecomm::to_string(a) << (j > 0 ? "*" : "");
            if (j == 1) poly << "z";
            if (j > 1) poly << "z^" << j;
        }
        if (nz == 0) continue;
        if (!first_term) os << " + ";
        first_term = false;
        os << "(" << poly.str() << ")";
        if (k == 1) os << "*G";
        if (k > 1) os << "*G^" << k;
    }
    os << " = 0";
    return os.str();
}

CauchyEquation semi_proj_equation(const Rat& lambda)
{
    require_lambda(lambda, "semi_proj");
    const Rat xi = 4 * lambda * (1 - lambda);
    CauchyEquation eq;
    eq.coeffs = {{xi - 1, 0, 2}, {0, 0, 0, -2}, {0, 0, 1}};
    return eq;
}

CauchyEquation semi_semi_equation()
{
    CauchyEquation eq;
    eq.coeffs = {{1}, {0, -1}, {1}, {0, 1}};
    return eq;
}

CauchyEquation proj_proj_equation(const Rat& la, const Rat& lb)
{
    require_lambda(la, "proj_proj");
    require_lambda(lb, "proj_proj");
    const Rat a = 4 * la * (1 - la) - 1, b = 4 * lb * (1 - lb) - 1;
    CauchyEquation eq;
    eq.coeffs = {{-a * b}, {}, {0, 0, -(a + b), 0, -4}, {}, {0, 0, 0, 0, -1, 0, 4}};
    return eq;
}

Complex track_root(const CauchyEquation& eq, Complex zeta, double start_height, bool* ambiguous)
{
    if (!(zeta.imag() > 0)) throw std::invalid_argument("track_root: Im zeta must be positive");
    bool amb = false;
    const Complex g = track_heights(eq, zeta.real(), {zeta.imag()}, start_height, amb).front();
    if (ambiguous) *ambiguous = amb;
    return g;
}

double solved_density_at(const CauchyEquation& eq, double t, const SolveOptions& opt, bool* ambiguous)
{
    return density_with_atoms(eq, t, opt, {}, ambiguous);
}

double solved_atom_weight(const CauchyEquation& eq, double x, const SolveOptions& opt)
{
    check_schedule(opt.eps_schedule);
    bool amb = false;
    const auto gs = track_heights(eq, x, opt.eps_schedule, opt.start_height, amb);
    std::vector<double> ws;
    for (std::size_t i = 0; i < gs.size(); ++i) ws.push_back(-opt.eps_schedule[i] * gs[i].imag());
    return neville_at_zero(opt.eps_schedule, ws);
}

double support_edge(const CauchyEquation& eq, double inside, double outside, double tol)
{
    auto in = [&](double t) { return boundary_density(eq, t, 1e3, {}) > kEdgeThreshold; };
    if (!in(inside) || in(outside)) {
        throw std::invalid_argument("support_edge: endpoints do not bracket a support edge");
    }
    while (std::abs(outside - inside) > tol) {
        const double mid = 0.5 * (inside + outside);
        (in(mid) ? inside : outside) = mid;
    }
    return 0.5 * (inside + outside);
}

SolvedDensity solve_density(const CauchyEquation& eq, const std::vector<double>& grid, const SolveOptions& opt)
{
    check_schedule(opt.eps_schedule);
    std::vector<double> ts = grid;
    std::sort(ts.begin(), ts.end());
    for (double t : ts) {
        if (opt.support.empty()) break;
        const bool ok = std::any_of(opt.support.begin(), opt.support.end(),
                                    [&](const Interval& iv) { return t >= iv.lo && t <= iv.hi; });
        if (!ok) throw std::invalid_argument("solve_density: grid point outside the declared support window");
    }

    SolvedDensity out;
    for (double x : opt.atom_candidates) {
        const double w = solved_atom_weight(eq, x, opt);
        if (w > opt.atom_threshold) out.model.atoms.push_back({x, w});
    }
    const auto atoms = out.model.atoms;

    for (double t : ts) {
        bool amb = false;
        const double d = density_with_atoms(eq, t, opt, atoms, &amb);
        out.samples.push_back({t, d, amb});
        if (amb) ++out.flagged;
    }

    // Support: maximal runs of positive samples, ends refined by bisection.
    const auto& s = out.samples;
    for (std::size_t i = 0; i < s.size();) {
        if (s[i].density <= kRunThreshold || s[i].flagged) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < s.size() && s[j + 1].density > kRunThreshold && !s[j + 1].flagged) ++j;
        double lo = s[i].t, hi = s[j].t;
        auto inside = [&](double t) { return boundary_density(eq, t, opt.start_height, atoms) > kEdgeThreshold; };
        if (i > 0 && inside(lo) && !inside(s[i - 1].t)) lo = support_edge(eq, lo, s[i - 1].t);
        if (j + 1 < s.size() && inside(hi) && !inside(s[j + 1].t)) hi = support_edge(eq, hi, s[j + 1].t);
        out.model.support.push_back({lo, hi});
        i = j + 1;
    }
    const double R = opt.start_height;
    out.model.density = [eq, R, atoms](double t) { return boundary_density(eq, t, R, atoms); };
    return out;
}

std::string to_string(ClosedForm which)
{
    switch (which) {
    case ClosedForm::SemiProj: return "semi_proj";
    case ClosedForm::SemiSemi: return "semi_semi";
    case ClosedForm::ProjHalf: return "proj_half";
    case ClosedForm::ProjProjSmall: return "proj_proj_small";
    case ClosedForm::ProjProjMid: return "proj_proj_mid";
    }
    return "?";
}

ClosedForm proj_proj_case(double lambda)
{
    require_lambda(lambda, "proj_proj");
    return fold(lambda) <= kSmallMidSplit ? ClosedForm::ProjProjSmall : ClosedForm::ProjProjMid;
}

double closed_form_density(ClosedForm which, double lambda, double t)
{
    const double at = std::abs(t);
    switch (which) {
    case ClosedForm::SemiProj: {
        require_lambda(lambda, "semi_proj");
        // sqrt(4p - (t^2 - 1)^2) / (pi |t|) = sqrt((t^2 - alpha^2)(beta^2 - t^2)) / (pi |t|)
        const double rp = std::sqrt(lambda * (1 - lambda));
        const double a2 = 1 - 2 * rp, b2 = 1 + 2 * rp;
        const double t2 = t * t;
        if (t2 > b2 || t2 < a2) return 0;
        if (t == 0) return a2 <= 0 ? std::sqrt(b2) / kPi : 0;
        return std::sqrt(std::max(0.0, (1 - a2 / t2) * (b2 - t2))) / kPi;
    }
    case ClosedForm::SemiSemi: {
        if (at > semi_semi_radius()) return 0;
        const double u = std::max(at, 1e-6), u2 = u * u;
        const double h = std::cbrt((18 * u2 + 1) / 27 + std::sqrt(std::max(0.0, u2 * (1 + 11 * u2 - u2 * u2) / 27)));
        return std::max(0.0, std::sqrt(3.0) / (2 * kPi * u) * (h - (3 * u2 + 1) / (9 * h)));
    }
    case ClosedForm::ProjHalf: {
        require_lambda(lambda, "proj_half");
        const double xi = xi_of(lambda);
        const double lo = std::sqrt(std::max(0.0, 1 - xi)) / 2;
        if (at >= 0.5 || at < lo) return 0;
        const double q = 1 - 4 * t * t;
        if (t == 0) return 2 / kPi / std::sqrt(q);
        return std::sqrt(std::max(0.0, (4 * t * t - 1 + xi) / q)) / (kPi * at);
    }
    case ClosedForm::ProjProjSmall: {
        require_lambda(lambda, "proj_proj_small");
        if (fold(lambda) > kSmallMidSplit + kCaseTol) {
            throw std::invalid_argument("proj_proj_small: needs lambda <= 1/2 - 1/sqrt(8) (or the mirror)");
        }
        const double xi = xi_of(lambda), s2 = xi * (1 - xi);
        if (t * t >= s2) return 0;
        const double q2 = 1 - 4 * t * t, q = std::sqrt(q2);
        return 2 / kPi * std::sqrt((s2 - t * t) / (q2 * (1 + q) * (1 - 2 * xi + q)));
    }
    case ClosedForm::ProjProjMid: {
        require_lambda(lambda, "proj_proj_mid");
        if (fold(lambda) < kSmallMidSplit - kCaseTol) {
            throw std::invalid_argument("proj_proj_mid: needs 1/2 - 1/sqrt(8) <= lambda <= 1/2 (or the mirror)");
        }
        const double xi = xi_of(lambda), s2 = xi * (1 - xi);
        if (at >= 0.5) return 0;
        const double q2 = 1 - 4 * t * t, q = std::sqrt(q2);
        if (t * t < s2) return std::sqrt(std::max(0.0, (2 * xi - 1 + q) / ((1 + q) * q2))) / kPi;
        if (t == 0) return 2 / kPi / q;
        const double num = 2 * t * t - 1 + xi + 2 * at * std::sqrt(std::max(0.0, t * t - s2));
        return std::sqrt(std::max(0.0, num / (t * t * q2))) / kPi;
    }
    }
    return 0;
}

double closed_form_atom(ClosedForm which, double lambda)
{
    if (which == ClosedForm::SemiSemi) return 0;
    require_lambda(lambda, to_string(which).c_str());
    return std::sqrt(std::max(0.0, 1 - xi_of(lambda)));
}

DensityModel closed_form_model(ClosedForm which, double lambda)
{
    closed_form_density(which, which == ClosedForm::SemiSemi ? 0.5 : lambda, 0); // parameter checks
    DensityModel m;
    const double w = closed_form_atom(which, lambda);
    if (w > 0) m.atoms.push_back({0, w});
    auto symmetric = [&](double lo, double hi) {
        if (lo <= 0) {
            m.support.push_back({-hi, hi});
        } else {
            m.support.push_back({-hi, -lo});
            m.support.push_back({lo, hi});
        }
    };
    switch (which) {
    case ClosedForm::SemiProj: {
        const double rp = std::sqrt(lambda * (1 - lambda));
        symmetric(std::sqrt(std::max(0.0, 1 - 2 * rp)), std::sqrt(1 + 2 * rp));
        break;
    }
    case ClosedForm::SemiSemi: symmetric(0, semi_semi_radius()); break;
    case ClosedForm::ProjHalf: symmetric(std::sqrt(std::max(0.0, 1 - xi_of(lambda))) / 2, 0.5); break;
    case ClosedForm::ProjProjSmall: {
        const double xi = xi_of(lambda);
        symmetric(0, std::sqrt(xi * (1 - xi)));
        break;
    }
    case ClosedForm::ProjProjMid: {
        const double xi = xi_of(lambda), s = std::sqrt(xi * (1 - xi));
        if (s > 0) m.support.push_back({-s, s});
        if (s < 0.5) {
            m.support.push_back({-0.5, -s});
            m.support.push_back({s, 0.5});
        }
        break;
    }
    }
    m.density = [which, lambda](double t) { return closed_form_density(which, lambda, t); };
    return m;
}

double density_moment(const DensityModel& model, int n, double tol)
{
    if (n < 0) throw std::invalid_argument("density_moment: negative order");
    double total = 0;
    for (const auto& a : model.atoms) total += a.weight * std::pow(a.location, n);
    std::vector<Interval> pieces;
    for (const auto& iv : model.support) {
        if (iv.lo < 0 && iv.hi > 0) {
            pieces.push_back({iv.lo, 0});
            pieces.push_back({0, iv.hi});
        } else if (iv.hi > iv.lo) {
            pieces.push_back(iv);
        }
    }
    boost::math::quadrature::tanh_sinh<double> integrator;
    for (const auto& iv : pieces) {
        double err = 0, l1 = 0;
        auto f = [&](double t) { return std::pow(t, n) * model.density(t); };
        const double v = integrator.integrate(f, iv.lo, iv.hi, tol, &err, &l1);
        if (!std::isfinite(v) || err > 1e3 * tol * std::max(1.0, l1)) {
            std::ostringstream os;
            os << "density_moment: quadrature error " << err << " on [" << iv.lo << ", " << iv.hi << "]";
            throw std::runtime_error(os.str());
        }
        total += v;
    }
    return total;
}

double total_mass(const DensityModel& model) { return density_moment(model, 0); }

HankelResult hankel_positive(const Distribution& mu, int k)
{
    if (k < 0 || 2 * k > mu.order()) {
        throw std::invalid_argument("hankel_positive: needs 0 <= 2k <= order");
    }
    HankelResult res;
    for (int r = 0; r <= k; ++r) {
        const int n = r + 1;
        std::vector<std::vector<Rat>> a(static_cast<std::size_t>(n), std::vector<Rat>(static_cast<std::size_t>(n)));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = mu.moment(i + j);
        Rat det = 1;
        for (int c = 0; c < n && det != 0; ++c) {
            int piv = c;
            while (piv < n && a[static_cast<std::size_t>(piv)][static_cast<std::size_t>(c)] == 0) ++piv;
            if (piv == n) {
                det = 0;
                break;
            }
            if (piv != c) {
                std::swap(a[static_cast<std::size_t>(piv)], a[static_cast<std::size_t>(c)]);
                det = -det;
            }
            const Rat p = a[static_cast<std::size_t>(c)][static_cast<std::size_t>(c)];
            det *= p;
            for (int i = c + 1; i < n; ++i) {
                const Rat f = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] / p;
                if (f == 0) continue;
                for (int j = c; j < n; ++j) {
                    a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -=
                        f * a[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)];
                }
            }
        }
        if (det < 0 && !res.first_failure) {
            res.first_failure = r;
            res.positive = false;
        }
        res.determinants.push_back(det);
    }
    return res;
}

} // namespace freecomm::analytic
