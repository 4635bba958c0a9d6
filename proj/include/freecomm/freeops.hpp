#pragma once

// Distributions as exact moment sequences and the operations of free
// probability on them: free additive and multiplicative convolution, the
// free commutator i(ab - ba) and its variants, commutator expressions and
// iterated commutators.
//
// Precondition failures (zero variance, odd inputs where evenness is
// required) throw std::domain_error; malformed specs and order mismatches
// throw std::invalid_argument.

#include "freecomm/series.hpp"
#include "freecomm/transforms.hpp"

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace freecomm {

/// moments[n-1] = mu(X^n), n = 1..order; mu(1) = 1 is implicit. Positivity
/// is not assumed.
class Distribution {
public:
    Distribution() = default;
    explicit Distribution(std::vector<Rat> moments);
    explicit Distribution(PowerSeries moment_series);
    static Distribution from_cumulants(const PowerSeries& R);

    int order() const { return moments_.order(); }
    /// mu(X^n), 0 <= n <= order.
    Rat moment(int n) const;
    const PowerSeries& moment_series() const { return moments_; }
    /// The R-transform coefficients (free cumulants). Needs order <= kMaxStarOrder.
    PowerSeries cumulants() const;

    Rat mean() const { return moment(1); }
    Rat variance() const;
    bool is_even() const;

    friend bool operator==(const Distribution&, const Distribution&) = default;

private:
    PowerSeries moments_;
};

Distribution truncate(const Distribution& mu, int order);

/// Named laws. Radius-type parameters may be given as sqrt(q); only their
/// squares enter the moments.
struct LawSpec {
    enum class Kind { Semicircular, FreePoisson, Arcsine, Bernoulli, Atomic, Projection, SymBernoulli };
    Kind kind = Kind::Semicircular;
    Rat r_squared = 4;      // semicircular, arcsine, symbernoulli (atom squared)
    Rat alpha = 1, beta = 1; // free Poisson
    Rat lambda = 0, t0 = 0, t1 = 0;
    std::vector<std::pair<Rat, Rat>> atoms; // (weight, location)
};

/// Parses `semicircular:2`, `poisson:1,1`, `arcsine:1/2`,
/// `bernoulli:1/2,-1,1`, `atomic:(1/2@-1,1/2@1)`, `projection:1/2`,
/// `symbernoulli:sqrt(1/2)`, `delta:3`.
LawSpec parse_law(std::string_view text);
std::string to_string(const LawSpec& spec);

/// semicircular(r): R = r^2 z^2 / 4. freePoisson(a,b): R = a b z / (1 - b z).
/// arcsine(r): R = -1 + sqrt(1 + r^2 z^2). bernoulli(l,t0,t1) =
/// l delta_t0 + (1-l) delta_t1. projection(l) = bernoulli(1-l, 0, 1).
/// symbernoulli(a) = (delta_a + delta_-a)/2.
Distribution make_law(const LawSpec& spec, int order);
Distribution make_law(std::string_view spec, int order);
Distribution point_mass(const Rat& t, int order);

Distribution free_add(const Distribution& mu, const Distribution& nu);
Distribution free_power(const Distribution& mu, const Rat& t);
Distribution free_mul(const Distribution& mu, const Distribution& nu);

/// The distribution of i(ab - ba) for free a ~ mu, b ~ nu:
/// R_E(out) = 2 (R_E(mu) * R_E(nu) * Zeta), odd cumulants zero.
Distribution free_commutator(const Distribution& mu, const Distribution& nu);
/// For even inputs the anticommutator ab + ba has the commutator's law.
Distribution free_anticommutator_even(const Distribution& mu, const Distribution& nu);

/// Odd free cumulants set to zero.
Distribution even_part(const Distribution& mu);
/// Law of lambda a + t.
Distribution negate_dilate_shift(const Distribution& mu, const Rat& lambda, const Rat& t);
Distribution negate(const Distribution& mu);
/// Law of a^2: moments m_{2n}; order halves.
Distribution q_map(const Distribution& mu);

/// Commutator moments through the compositional inverses of R_E.
Distribution commutator_moment_route(const Distribution& mu, const Distribution& nu);

struct SRouteResult {
    UnitSeries s;  // S of c^2 / gamma_c
    Rat gamma_c;   // 2 gamma_a gamma_b
};
/// Even inputs with nonzero variances.
SRouteResult commutator_s_route_even(const Distribution& mu, const Distribution& nu);
/// The commutator law reconstructed from the S-route, order = input order.
Distribution commutator_from_s_route(const Distribution& mu, const Distribution& nu);
/// S-transform of the law of X / gamma, X ~ rho.
UnitSeries s_of_rescaled(const Distribution& rho, const Rat& gamma);

struct SquareRelation {
    PowerSeries r_even_of_mu;        // R_E(mu)
    PowerSeries square_times_moeb;   // R(mu_{a^2}) * Moeb
    PowerSeries square_moments;      // M(mu_{a^2})
    PowerSeries r_even_zeta_zeta;    // R_E(mu) * Zeta * Zeta
    bool holds() const { return r_even_of_mu == square_times_moeb && square_moments == r_even_zeta_zeta; }
};
SquareRelation square_relation_even(const Distribution& mu);

/// Binary tree of nested commutators; leaves are numbered 1..n left to right.
class CommutatorExpr {
public:
    static CommutatorExpr leaf();
    static CommutatorExpr node(CommutatorExpr left, CommutatorExpr right);
    /// Bracket syntax `[[1,2],[3,4]]`; leaf labels must read 1..n in order.
    static CommutatorExpr parse(std::string_view text);
    /// f_m: [[..[1,2],3],..,m].
    static CommutatorExpr canonical(int m);
    /// (f_m)_n: f_n applied to n copies of f_m.
    static CommutatorExpr nested_canonical(int m, int n);
    /// Every expression with n leaves.
    static std::vector<CommutatorExpr> all(int n);

    bool is_leaf() const { return !left_; }
    const CommutatorExpr& left() const { return *left_; }
    const CommutatorExpr& right() const { return *right_; }
    int leaves() const { return leaves_; }

    std::vector<int> depths() const;
    std::vector<int> box_depths() const;
    std::string to_string() const;

private:
    std::shared_ptr<const CommutatorExpr> left_, right_;
    int leaves_ = 1;
};

/// Evaluation by recursion on free_commutator.
Distribution eval_expr(const CommutatorExpr& e, const std::vector<Distribution>& args);
/// Evaluation through the closed form
/// R_E = [*_i 2^{d_i} R_E(nu_i) * *_j 2^{t_j} Zeta] o D_{4^{-T}}, T = t_1 + .. + t_{n-1}.
/// Each bracket contributes D_{1/4} once per bracket enclosing or equal to
/// it, which is what T counts; T = n - 1 only for n <= 2.
Distribution eval_expr_closed_form(const CommutatorExpr& e, const std::vector<Distribution>& args);

/// c_1 = mu, c_k = [c_{k-1}, mu]; returns c_1..c_m.
std::vector<Distribution> iterate_commutator(const Distribution& mu, int m);

/// S(2 c_m^2) predicted from g = S(2 a^2):
/// prod_{k=1}^{m-1} g(w/2^k) * g(w/2^{m-1}) (1 + w/2^{m-1}) / (1 + w).
UnitSeries iterated_s_closed_form(const UnitSeries& g, int m);

struct LimitS {
    UnitSeries value;          // (1/(1+w)) prod_{k=1}^{K} g(w/2^k)
    std::vector<Rat> deltas;   // |coefficient change from K-1 to K terms|
    std::vector<Rat> tail_bounds; // 2 * deltas: bound on the distance to the limit
    int terms = 0;
};
inline constexpr int kLimitTerms = 24;
LimitS limit_s(const UnitSeries& g, int terms = kLimitTerms);

/// 1 + sum_n (c w)^n / ([1][2]..[n]) with [n] = 2 - 2^{1-n}.
UnitSeries exp_half(const Rat& c, int order);

} // namespace freecomm
