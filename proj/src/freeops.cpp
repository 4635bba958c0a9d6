#include "freecomm/freeops.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace freecomm {

namespace {

void require_same_order(const Distribution& a, const Distribution& b, const char* op)
{
    if (a.order() != b.order()) {
        throw std::invalid_argument(std::string(op) + ": order mismatch (" + std::to_string(a.order()) +
                                    " vs " + std::to_string(b.order()) + ")");
    }
}

void require_even(const Distribution& mu, const char* op)
{
    if (!mu.is_even()) {
        throw std::domain_error(std::string(op) + ": input distribution is not even");
    }
}

void require_variance(const Distribution& mu, const char* op)
{
    if (mu.variance() == 0) {
        throw std::domain_error(std::string(op) + ": zero variance, R_E is not invertible");
    }
}

// (1 + c w) at the given order.
UnitSeries one_plus(int order, const Rat& c) { return UnitSeries::linear(order, 1, c); }

} // namespace

// --------------------------------------------------------------- Distribution

Distribution::Distribution(std::vector<Rat> moments)
    : moments_(std::move(moments))
{
}

Distribution::Distribution(PowerSeries moment_series)
    : moments_(std::move(moment_series))
{
    if (moments_.order() < 1) {
        throw std::invalid_argument("distribution needs at least one moment");
    }
}

Distribution Distribution::from_cumulants(const PowerSeries& R) { return Distribution(R_to_moments(R)); }

Rat Distribution::moment(int n) const
{
    if (n == 0) {
        return 1;
    }
    return moments_.coef(n);
}

PowerSeries Distribution::cumulants() const { return moments_to_R(moments_); }

Rat Distribution::variance() const { return moment(2) - moment(1) * moment(1); }

bool Distribution::is_even() const
{
    for (int n = 1; n <= order(); n += 2) {
        if (moments_.coef(n) != 0) {
            return false;
        }
    }
    return true;
}

Distribution truncate(const Distribution& mu, int order)
{
    return Distribution(truncate(mu.moment_series(), order));
}

// ---------------------------------------------------------------------- laws

namespace {

std::string lower(std::string_view s)
{
    std::string out;
    for (char c : s) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        }
    }
    return out;
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == sep && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

// A radius-type parameter: "q" or "sqrt(q)"; returns its square.
Rat parse_squared(const std::string& s)
{
    if (s.rfind("sqrt(", 0) == 0 && s.back() == ')') {
        Rat q = parse_rat(s.substr(5, s.size() - 6));
        if (q < 0) {
            throw std::invalid_argument("sqrt of a negative number");
        }
        return q;
    }
    Rat r = parse_rat(s);
    if (r < 0) {
        throw std::invalid_argument("radius must be positive");
    }
    return r * r;
}

std::string render_sqrt(const Rat& sq)
{
    mpz_class n = sq.get_num(), d = sq.get_den();
    if (mpz_perfect_square_p(n.get_mpz_t()) != 0 && mpz_perfect_square_p(d.get_mpz_t()) != 0) {
        mpz_class rn, rd;
        mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
        mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
        Rat r(rn, rd);
        r.canonicalize();
        return to_string(r);
    }
    return "sqrt(" + to_string(sq) + ")";
}

[[noreturn]] void bad_spec(std::string_view text, const std::string& why)
{
    throw std::invalid_argument("bad distribution spec '" + std::string(text) + "': " + why);
}

void validate(const LawSpec& s, std::string_view text)
{
    using K = LawSpec::Kind;
    switch (s.kind) {
    case K::Semicircular:
    case K::Arcsine:
    case K::SymBernoulli:
        if (s.r_squared <= 0) bad_spec(text, "radius must be positive");
        break;
    case K::FreePoisson:
        if (s.alpha <= 0 || s.beta <= 0) bad_spec(text, "parameters must be positive");
        break;
    case K::Bernoulli:
        if (s.lambda <= 0 || s.lambda >= 1) bad_spec(text, "weight must lie in (0,1)");
        if (s.t0 >= s.t1) bad_spec(text, "atoms must satisfy t0 < t1");
        break;
    case K::Projection:
        if (s.lambda <= 0 || s.lambda >= 1) bad_spec(text, "trace must lie in (0,1)");
        break;
    case K::Atomic: {
        if (s.atoms.empty()) bad_spec(text, "no atoms");
        Rat total = 0;
        for (const auto& [w, a] : s.atoms) {
            if (w < 0) bad_spec(text, "negative weight");
            total += w;
        }
        if (total != 1) bad_spec(text, "weights do not sum to 1");
        break;
    }
    }
}

} // namespace

LawSpec parse_law(std::string_view text)
{
    const std::string s = lower(text);
    const auto colon = s.find(':');
    if (colon == std::string::npos) {
        bad_spec(text, "expected name:parameters");
    }
    const std::string name = s.substr(0, colon);
    const std::string args = s.substr(colon + 1);
    auto params = split(args, ',');
    LawSpec spec;
    using K = LawSpec::Kind;
    auto need = [&](std::size_t n) {
        if (params.size() != n) {
            bad_spec(text, "expected " + std::to_string(n) + " parameter(s)");
        }
    };
    try {
        if (name == "semicircular" || name == "semicircle" || name == "semi") {
            need(1);
            spec.kind = K::Semicircular;
            spec.r_squared = parse_squared(params[0]);
        } else if (name == "poisson" || name == "freepoisson") {
            need(2);
            spec.kind = K::FreePoisson;
            spec.alpha = parse_rat(params[0]);
            spec.beta = parse_rat(params[1]);
        } else if (name == "arcsine") {
            need(1);
            spec.kind = K::Arcsine;
            spec.r_squared = parse_squared(params[0]);
        } else if (name == "bernoulli") {
            need(3);
            spec.kind = K::Bernoulli;
            spec.lambda = parse_rat(params[0]);
            spec.t0 = parse_rat(params[1]);
            spec.t1 = parse_rat(params[2]);
        } else if (name == "projection") {
            need(1);
            spec.kind = K::Projection;
            spec.lambda = parse_rat(params[0]);
        } else if (name == "symbernoulli") {
            need(1);
            spec.kind = K::SymBernoulli;
            spec.r_squared = parse_squared(params[0]);
        } else if (name == "delta") {
            need(1);
            spec.kind = K::Atomic;
            spec.atoms = {{Rat(1), parse_rat(params[0])}};
        } else if (name == "atomic") {
            std::string body = args;
            if (body.size() < 2 || body.front() != '(' || body.back() != ')') {
                bad_spec(text, "atomic parameters must be parenthesized");
            }
            spec.kind = K::Atomic;
            for (const auto& item : split(body.substr(1, body.size() - 2), ',')) {
                auto at = item.find('@');
                if (at == std::string::npos) {
                    bad_spec(text, "atoms are written weight@location");
                }
                spec.atoms.emplace_back(parse_rat(item.substr(0, at)), parse_rat(item.substr(at + 1)));
            }
        } else {
            bad_spec(text, "unknown law '" + name + "'");
        }
    } catch (const std::invalid_argument& e) {
        if (std::string(e.what()).rfind("bad distribution spec", 0) == 0) {
            throw;
        }
        bad_spec(text, e.what());
    }
    validate(spec, text);
    return spec;
}

std::string to_string(const LawSpec& s)
{
    using K = LawSpec::Kind;
    switch (s.kind) {
    case K::Semicircular: return "semicircular:" + render_sqrt(s.r_squared);
    case K::FreePoisson: return "poisson:" + to_string(s.alpha) + "," + to_string(s.beta);
    case K::Arcsine: return "arcsine:" + render_sqrt(s.r_squared);
    case K::Bernoulli:
        return "bernoulli:" + to_string(s.lambda) + "," + to_string(s.t0) + "," + to_string(s.t1);
    case K::Projection: return "projection:" + to_string(s.lambda);
    case K::SymBernoulli: return "symbernoulli:" + render_sqrt(s.r_squared);
    case K::Atomic: {
        std::string out = "atomic:(";
        for (std::size_t i = 0; i < s.atoms.size(); ++i) {
            if (i != 0) out += ",";
            out += to_string(s.atoms[i].first) + "@" + to_string(s.atoms[i].second);
        }
        return out + ")";
    }
    }
    return "?";
}

namespace {

Distribution atomic_moments(const std::vector<std::pair<Rat, Rat>>& atoms, int order)
{
    std::vector<Rat> m(static_cast<std::size_t>(order), Rat(0));
    for (const auto& [w, a] : atoms) {
        Rat p = a;
        for (int n = 1; n <= order; ++n) {
            m[static_cast<std::size_t>(n - 1)] += w * p;
            p *= a;
        }
    }
    return Distribution(std::move(m));
}

// binom(1/2, k)
Rat half_binomial(int k)
{
    Rat b = 1;
    for (int j = 0; j < k; ++j) {
        b *= Rat(1, 2) - j;
        b /= j + 1;
    }
    return b;
}

} // namespace

Distribution make_law(const LawSpec& spec, int order)
{
    if (order < 1) {
        throw std::invalid_argument("make_law: order must be >= 1");
    }
    validate(spec, to_string(spec));
    using K = LawSpec::Kind;
    switch (spec.kind) {
    case K::Semicircular:
        return Distribution::from_cumulants(PowerSeries::monomial(order, 2, spec.r_squared / 4));
    case K::FreePoisson: {
        std::vector<Rat> r;
        Rat b = spec.beta;
        for (int n = 1; n <= order; ++n, b *= spec.beta) {
            r.push_back(spec.alpha * b);
        }
        return Distribution::from_cumulants(PowerSeries(std::move(r)));
    }
    case K::Arcsine: {
        std::vector<Rat> r(static_cast<std::size_t>(order), Rat(0));
        for (int k = 1; 2 * k <= order; ++k) {
            r[static_cast<std::size_t>(2 * k - 1)] = half_binomial(k) * pow(spec.r_squared, k);
        }
        return Distribution::from_cumulants(PowerSeries(std::move(r)));
    }
    case K::Bernoulli:
        return atomic_moments({{spec.lambda, spec.t0}, {1 - spec.lambda, spec.t1}}, order);
    case K::Projection:
        return atomic_moments({{1 - spec.lambda, Rat(0)}, {spec.lambda, Rat(1)}}, order);
    case K::SymBernoulli: {
        std::vector<Rat> m(static_cast<std::size_t>(order), Rat(0));
        for (int k = 1; 2 * k <= order; ++k) {
            m[static_cast<std::size_t>(2 * k - 1)] = pow(spec.r_squared, k);
        }
        return Distribution(std::move(m));
    }
    case K::Atomic:
        return atomic_moments(spec.atoms, order);
    }
    throw std::logic_error("make_law: unhandled law");
}

Distribution make_law(std::string_view spec, int order) { return make_law(parse_law(spec), order); }

Distribution point_mass(const Rat& t, int order) { return atomic_moments({{Rat(1), t}}, order); }

// ------------------------------------------------------------ free operations

Distribution free_add(const Distribution& mu, const Distribution& nu)
{
    require_same_order(mu, nu, "free_add");
    return Distribution::from_cumulants(mu.cumulants() + nu.cumulants());
}

Distribution free_power(const Distribution& mu, const Rat& t)
{
    return Distribution::from_cumulants(t * mu.cumulants());
}

Distribution free_mul(const Distribution& mu, const Distribution& nu)
{
    require_same_order(mu, nu, "free_mul");
    return Distribution::from_cumulants(star(mu.cumulants(), nu.cumulants()));
}

Distribution free_commutator(const Distribution& mu, const Distribution& nu)
{
    require_same_order(mu, nu, "free_commutator");
    const int n = mu.order();
    if (n < 2) {
        throw std::invalid_argument("free_commutator: order must be >= 2");
    }
    const int k = n / 2;
    PowerSeries re = Rat(2) * star(star(r_even(mu.cumulants()), r_even(nu.cumulants())), zeta(k));
    return Distribution::from_cumulants(substitute_square(re, n));
}

Distribution free_anticommutator_even(const Distribution& mu, const Distribution& nu)
{
    require_even(mu, "free_anticommutator_even");
    require_even(nu, "free_anticommutator_even");
    return free_commutator(mu, nu);
}

Distribution even_part(const Distribution& mu)
{
    std::vector<Rat> r = mu.cumulants().coeffs();
    for (std::size_t i = 0; i < r.size(); i += 2) {
        r[i] = 0;
    }
    return Distribution::from_cumulants(PowerSeries(std::move(r)));
}

Distribution negate_dilate_shift(const Distribution& mu, const Rat& lambda, const Rat& t)
{
    PowerSeries r = dilate(mu.cumulants(), lambda);
    r += PowerSeries::monomial(r.order(), 1, t);
    return Distribution::from_cumulants(r);
}

Distribution negate(const Distribution& mu)
{
    std::vector<Rat> m = mu.moment_series().coeffs();
    for (std::size_t i = 0; i < m.size(); i += 2) {
        m[i] = -m[i];
    }
    return Distribution(std::move(m));
}

Distribution q_map(const Distribution& mu)
{
    return Distribution(even_coefficients(mu.moment_series()));
}

Distribution commutator_moment_route(const Distribution& mu, const Distribution& nu)
{
    require_same_order(mu, nu, "commutator_moment_route");
    require_variance(mu, "commutator_moment_route");
    require_variance(nu, "commutator_moment_route");
    const int n = mu.order();
    const int k = n / 2;
    const Rat half(1, 2);
    // With A = [R_E(mu)]^{<-1>} = w A'(w) and likewise B:
    //   h(w) = (w/2) A'(w/2) B'(w/2) / ((1 + w/2)(1 + w)^2),  M_c(z) = h^{<-1>}(z^2).
    UnitSeries a = dilate(shift_div(comp_inverse(r_even(mu.cumulants())), 1), half);
    UnitSeries b = dilate(shift_div(comp_inverse(r_even(nu.cumulants())), 1), half);
    UnitSeries den = one_plus(k - 1, half) * pow(one_plus(k - 1, 1), 2);
    PowerSeries h = half * to_power(shift_div(a * b / den, -1));
    return Distribution(substitute_square(comp_inverse(h), n));
}

UnitSeries s_of_rescaled(const Distribution& rho, const Rat& gamma)
{
    return s_transform(dilate(rho.moment_series(), 1 / gamma));
}

SRouteResult commutator_s_route_even(const Distribution& mu, const Distribution& nu)
{
    require_same_order(mu, nu, "commutator_s_route_even");
    require_even(mu, "commutator_s_route_even");
    require_even(nu, "commutator_s_route_even");
    require_variance(mu, "commutator_s_route_even");
    require_variance(nu, "commutator_s_route_even");
    const Rat ga = mu.variance(), gb = nu.variance();
    const Rat half(1, 2);
    UnitSeries sa = dilate(s_of_rescaled(q_map(mu), ga), half);
    UnitSeries sb = dilate(s_of_rescaled(q_map(nu), gb), half);
    const int k = sa.order();
    UnitSeries s = one_plus(k, half) / one_plus(k, 1) * sa * sb;
    return {s, 2 * ga * gb};
}

Distribution commutator_from_s_route(const Distribution& mu, const Distribution& nu)
{
    auto [s, gamma_c] = commutator_s_route_even(mu, nu);
    // M^{<-1>}(w) = w S(w) / (1 + w) for the law of c^2 / gamma_c.
    PowerSeries m_inv = to_power(shift_div(s / one_plus(s.order(), 1), -1));
    PowerSeries m_sq = dilate(comp_inverse(m_inv), gamma_c); // moments of c^2
    return Distribution(substitute_square(m_sq, mu.order()));
}

SquareRelation square_relation_even(const Distribution& mu)
{
    require_even(mu, "square_relation_even");
    SquareRelation out;
    out.r_even_of_mu = r_even(mu.cumulants());
    const int k = out.r_even_of_mu.order();
    Distribution sq = q_map(mu);
    out.square_times_moeb = star(sq.cumulants(), moeb(k));
    out.square_moments = sq.moment_series();
    out.r_even_zeta_zeta = star(star(out.r_even_of_mu, zeta(k)), zeta(k));
    return out;
}

// ------------------------------------------------------ commutator expressions

CommutatorExpr CommutatorExpr::leaf() { return CommutatorExpr(); }

CommutatorExpr CommutatorExpr::node(CommutatorExpr left, CommutatorExpr right)
{
    CommutatorExpr e;
    e.leaves_ = left.leaves_ + right.leaves_;
    e.left_ = std::make_shared<const CommutatorExpr>(std::move(left));
    e.right_ = std::make_shared<const CommutatorExpr>(std::move(right));
    return e;
}

CommutatorExpr CommutatorExpr::parse(std::string_view text)
{
    std::size_t pos = 0;
    int next_label = 1;
    auto fail = [&](const std::string& why) -> CommutatorExpr {
        throw std::invalid_argument("bad commutator expression '" + std::string(text) + "': " + why);
    };
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    std::function<CommutatorExpr()> expr = [&]() -> CommutatorExpr {
        skip();
        if (pos >= text.size()) return fail("unexpected end");
        if (text[pos] == '[') {
            ++pos;
            CommutatorExpr l = expr();
            skip();
            if (pos >= text.size() || text[pos] != ',') return fail("expected ','");
            ++pos;
            CommutatorExpr r = expr();
            skip();
            if (pos >= text.size() || text[pos] != ']') return fail("expected ']'");
            ++pos;
            return node(std::move(l), std::move(r));
        }
        if (!std::isdigit(static_cast<unsigned char>(text[pos]))) return fail("unexpected character");
        int v = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            v = v * 10 + (text[pos++] - '0');
        }
        if (v != next_label) return fail("arguments must be numbered 1..n from left to right");
        ++next_label;
        return leaf();
    };
    CommutatorExpr e = expr();
    skip();
    if (pos != text.size()) fail("trailing characters");
    return e;
}

CommutatorExpr CommutatorExpr::canonical(int m)
{
    if (m < 1) throw std::invalid_argument("canonical: m must be >= 1");
    CommutatorExpr e = leaf();
    for (int i = 2; i <= m; ++i) e = node(std::move(e), leaf());
    return e;
}

CommutatorExpr CommutatorExpr::nested_canonical(int m, int n)
{
    if (n < 1) throw std::invalid_argument("nested_canonical: n must be >= 1");
    CommutatorExpr e = canonical(m);
    for (int i = 2; i <= n; ++i) e = node(std::move(e), canonical(m));
    return e;
}

std::vector<CommutatorExpr> CommutatorExpr::all(int n)
{
    if (n < 1) throw std::invalid_argument("all: n must be >= 1");
    if (n == 1) return {leaf()};
    std::vector<CommutatorExpr> out;
    for (int k = 1; k < n; ++k) {
        for (const auto& l : all(k)) {
            for (const auto& r : all(n - k)) out.push_back(node(l, r));
        }
    }
    return out;
}

std::vector<int> CommutatorExpr::depths() const
{
    if (is_leaf()) return {0};
    std::vector<int> d = left_->depths();
    for (int x : right_->depths()) d.push_back(x);
    for (int& x : d) ++x;
    return d;
}

std::vector<int> CommutatorExpr::box_depths() const
{
    if (is_leaf()) return {};
    std::vector<int> t = left_->box_depths();
    for (int& x : t) ++x;
    t.push_back(1);
    for (int x : right_->box_depths()) t.push_back(x + 1);
    return t;
}

std::string CommutatorExpr::to_string() const
{
    int label = 0;
    std::function<std::string(const CommutatorExpr&)> rec = [&](const CommutatorExpr& e) -> std::string {
        if (e.is_leaf()) return std::to_string(++label);
        std::string l = rec(e.left());
        return "[" + l + "," + rec(e.right()) + "]";
    };
    return rec(*this);
}

namespace {

void require_arity(const CommutatorExpr& e, const std::vector<Distribution>& args)
{
    if (static_cast<int>(args.size()) != e.leaves()) {
        throw std::invalid_argument("expression has " + std::to_string(e.leaves()) + " arguments, got " +
                                    std::to_string(args.size()));
    }
    for (const auto& a : args) {
        if (a.order() != args.front().order()) {
            throw std::invalid_argument("expression arguments must share one order");
        }
    }
}

Distribution eval_rec(const CommutatorExpr& e, const std::vector<Distribution>& args, std::size_t& next)
{
    if (e.is_leaf()) return args[next++];
    Distribution l = eval_rec(e.left(), args, next);
    Distribution r = eval_rec(e.right(), args, next);
    return free_commutator(l, r);
}

} // namespace

Distribution eval_expr(const CommutatorExpr& e, const std::vector<Distribution>& args)
{
    require_arity(e, args);
    std::size_t next = 0;
    return eval_rec(e, args, next);
}

Distribution eval_expr_closed_form(const CommutatorExpr& e, const std::vector<Distribution>& args)
{
    require_arity(e, args);
    const int n = e.leaves();
    if (n == 1) return args.front();
    const int order = args.front().order();
    const int k = order / 2;
    auto d = e.depths();
    auto t = e.box_depths();
    PowerSeries acc = pow(Rat(2), d[0]) * r_even(args[0].cumulants());
    for (int i = 1; i < n; ++i) {
        acc = star(acc, pow(Rat(2), d[static_cast<std::size_t>(i)]) * r_even(args[static_cast<std::size_t>(i)].cumulants()));
    }
    for (int tj : t) {
        acc = star(acc, pow(Rat(2), tj) * zeta(k));
    }
    int box_total = 0;
    for (int tj : t) box_total += tj;
    PowerSeries re = dilate(acc, pow(Rat(1, 4), box_total));
    return Distribution::from_cumulants(substitute_square(re, order));
}

// ------------------------------------------------------- iterated commutators

std::vector<Distribution> iterate_commutator(const Distribution& mu, int m)
{
    if (m < 1) throw std::invalid_argument("iterate_commutator: m must be >= 1");
    std::vector<Distribution> out{mu};
    for (int i = 2; i <= m; ++i) out.push_back(free_commutator(out.back(), mu));
    return out;
}

UnitSeries iterated_s_closed_form(const UnitSeries& g, int m)
{
    if (m < 1) throw std::invalid_argument("iterated_s_closed_form: m must be >= 1");
    const int k = g.order();
    UnitSeries out = UnitSeries::constant(k, 1);
    for (int j = 1; j <= m - 1; ++j) out = out * dilate(g, pow(Rat(1, 2), j));
    const Rat last = pow(Rat(1, 2), m - 1);
    out = out * dilate(g, last) * one_plus(k, last) / one_plus(k, 1);
    return out;
}

LimitS limit_s(const UnitSeries& g, int terms)
{
    if (terms < 2) throw std::invalid_argument("limit_s: need at least two product terms");
    const int k = g.order();
    UnitSeries prev = reciprocal(one_plus(k, 1));
    for (int j = 1; j < terms; ++j) prev = prev * dilate(g, pow(Rat(1, 2), j));
    UnitSeries cur = prev * dilate(g, pow(Rat(1, 2), terms));
    LimitS out{cur, {}, {}, terms};
    for (int j = 0; j <= k; ++j) {
        Rat d = abs(cur.coef(j) - prev.coef(j));
        out.deltas.push_back(d);
        out.tail_bounds.push_back(2 * d);
    }
    return out;
}

UnitSeries exp_half(const Rat& c, int order)
{
    std::vector<Rat> e(static_cast<std::size_t>(order) + 1);
    e[0] = 1;
    Rat denom = 1;
    for (int n = 1; n <= order; ++n) {
        denom *= 2 - pow(Rat(1, 2), n - 1);
        e[static_cast<std::size_t>(n)] = pow(c, n) / denom;
    }
    return UnitSeries(std::move(e));
}

} // namespace freecomm
