#include "cli.hpp"

#include "CLI11.hpp"
#include "freecomm/analytic.hpp"
#include "freecomm/checks.hpp"
#include "freecomm/mixedmoments.hpp"
#include "freecomm/ncpart.hpp"

#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace freeconv {

namespace {

using namespace freecomm;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Global {
    int decimal = -1;
    unsigned seed = 1;
    bool dump = false;

    std::string fmt(const Rat& r) const { return decimal >= 0 ? to_decimal(r, decimal) : to_string(r); }
};

using Row = std::vector<std::string>;

void print_table(std::ostream& out, const Row& header, const std::vector<Row>& rows)
{
    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
    for (const auto& r : rows)
        for (std::size_t c = 0; c < r.size() && c < width.size(); ++c) width[c] = std::max(width[c], r[c].size());
    auto line = [&](const Row& r) {
        for (std::size_t c = 0; c < r.size(); ++c) {
            out << r[c];
            if (c + 1 < r.size()) out << std::string(width[c] - r[c].size() + 2, ' ');
        }
        out << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
}

void dump(std::ostream& out, const Global& g, const Distribution& d)
{
    if (!g.dump) return;
    out << "M = " << to_text(d.moment_series()) << '\n';
    out << "R = " << to_text(d.cumulants()) << '\n';
}

int checked_order(int order, int fallback)
{
    if (order == 0) return fallback;
    if (order < 1) throw UsageError("--order must be positive");
    return order;
}

void law_table(std::ostream& out, const Global& g, const Distribution& d, bool moments, bool cumulants)
{
    Row header{"n"};
    if (moments) header.push_back("moment");
    if (cumulants) header.push_back("cumulant");
    const PowerSeries r = cumulants ? d.cumulants() : PowerSeries();
    std::vector<Row> rows;
    for (int n = 1; n <= d.order(); ++n) {
        Row row{std::to_string(n)};
        if (moments) row.push_back(g.fmt(d.moment(n)));
        if (cumulants) row.push_back(g.fmt(r.coef(n)));
        rows.push_back(std::move(row));
    }
    print_table(out, header, rows);
}

int cmd_commutator(std::ostream& out, const Global& g, const std::string& sa, const std::string& sb, int order,
                   const std::string& route)
{
    const bool oracle = route == "oracle" || route == "all";
    const int n = checked_order(order, oracle ? 8 : 12);
    if (oracle && n > kMaxOracleOrder) {
        throw UsageError("the oracle route supports --order up to " + std::to_string(kMaxOracleOrder));
    }
    const Distribution a = make_law(sa, n), b = make_law(sb, n);
    std::vector<std::pair<std::string, Distribution>> results;
    if (route == "theorem12" || route == "all") results.emplace_back("theorem12", free_commutator(a, b));
    if (route == "cor14" || route == "all") results.emplace_back("cor14", commutator_moment_route(a, b));
    if (oracle) results.emplace_back("oracle", commutator_by_oracle(a, b, n));

    out << "# law of i(ab - ba), a = " << sa << ", b = " << sb << ", order " << n << '\n';
    Row header{"n"};
    for (const auto& [name, d] : results) header.push_back("moment[" + name + "]");
    header.push_back("cumulant");
    const PowerSeries r = results.front().second.cumulants();
    std::vector<Row> rows;
    for (int k = 1; k <= n; ++k) {
        Row row{std::to_string(k)};
        for (const auto& [name, d] : results) row.push_back(g.fmt(d.moment(k)));
        row.push_back(g.fmt(r.coef(k)));
        rows.push_back(std::move(row));
    }
    print_table(out, header, rows);
    dump(out, g, results.front().second);
    if (route != "all") return 0;
    bool agree = true;
    for (const auto& [name, d] : results) agree = agree && d == results.front().second;
    out << "verdict: " << (agree ? "AGREE" : "DISAGREE") << '\n';
    return agree ? 0 : 1;
}

int cmd_iterate(std::ostream& out, const Global& g, const std::string& spec, int steps, int order)
{
    if (steps < 1) throw UsageError("--steps must be positive");
    const int n = checked_order(order, 12);
    const Distribution mu = make_law(spec, n);
    const auto cs = iterate_commutator(mu, steps);
    out << "# iterated commutators of " << spec << ", order " << n << "; predicted variance 1/2 (2 gamma)^m\n";
    Row header{"m", "variance", "predicted"};
    for (int k = 1; k <= n; ++k) header.push_back("m" + std::to_string(k));
    std::vector<Row> rows;
    for (int m = 1; m <= steps; ++m) {
        const Distribution& c = cs[static_cast<std::size_t>(m - 1)];
        Row row{std::to_string(m), g.fmt(c.variance()), g.fmt(pow(2 * mu.variance(), m) / 2)};
        for (int k = 1; k <= n; ++k) row.push_back(g.fmt(c.moment(k)));
        rows.push_back(std::move(row));
    }
    print_table(out, header, rows);
    dump(out, g, cs.back());
    return 0;
}

std::string join(const std::vector<int>& v)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    return os.str();
}

int cmd_expr(std::ostream& out, const Global& g, const std::string& tree, const std::vector<std::string>& specs,
             int order)
{
    const CommutatorExpr e = CommutatorExpr::parse(tree);
    const int n = checked_order(order, 12);
    if (specs.size() != 1 && static_cast<int>(specs.size()) != e.leaves()) {
        throw UsageError("--args needs 1 or " + std::to_string(e.leaves()) + " distribution specs");
    }
    std::vector<Distribution> args;
    for (int i = 0; i < e.leaves(); ++i) args.push_back(make_law(specs[specs.size() == 1 ? 0 : i], n));
    const Distribution rec = eval_expr(e, args);
    const Distribution closed = eval_expr_closed_form(e, args);
    out << "# expression " << e.to_string() << ", depths " << join(e.depths()) << ", box depths "
        << join(e.box_depths()) << ", order " << n << '\n';
    std::vector<Row> rows;
    const PowerSeries r = rec.cumulants();
    for (int k = 1; k <= n; ++k) {
        rows.push_back({std::to_string(k), g.fmt(rec.moment(k)), g.fmt(closed.moment(k)), g.fmt(r.coef(k))});
    }
    print_table(out, {"n", "moment[recursion]", "moment[closed]", "cumulant"}, rows);
    dump(out, g, rec);
    const bool agree = rec == closed;
    out << "verdict: " << (agree ? "AGREE" : "DISAGREE") << '\n';
    return agree ? 0 : 1;
}

std::vector<double> parse_grid(const std::string& text)
{
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw UsageError("--grid must read a:b:steps");
    double a = 0, b = 0;
    int steps = 0;
    try {
        a = std::stod(parts[0]);
        b = std::stod(parts[1]);
        steps = std::stoi(parts[2]);
    } catch (const std::exception&) {
        throw UsageError("--grid must read a:b:steps");
    }
    if (steps < 1 || !(b > a)) throw UsageError("--grid needs a < b and steps >= 1");
    std::vector<double> t;
    for (int i = 0; i <= steps; ++i) t.push_back(a + (b - a) * i / steps);
    return t;
}

int cmd_density(std::ostream& out, const std::string& example, const std::string& grid_text, const std::string& method)
{
    using namespace analytic;
    const auto colon = example.find(':');
    const std::string name = example.substr(0, colon);
    const std::string param = colon == std::string::npos ? "" : example.substr(colon + 1);
    const bool needs_lambda = name != "semi_semi";
    if (name != "semi_proj" && name != "semi_semi" && name != "proj_half" && name != "proj_proj") {
        throw UsageError("unknown example '" + name + "' (semi_proj:L, semi_semi, proj_half:L, proj_proj:L)");
    }
    if (needs_lambda == param.empty()) throw UsageError("example '" + name + "' parameter mismatch");
    const Rat lambda = needs_lambda ? parse_rat(param) : make_rat(1, 2);
    const double l = lambda.get_d();
    const auto grid = parse_grid(grid_text);

    std::vector<Atom> atoms;
    std::vector<std::pair<double, double>> rows;
    std::vector<double> flagged;
    if (method == "solve") {
        CauchyEquation eq;
        if (name == "semi_proj") eq = semi_proj_equation(lambda);
        if (name == "semi_semi") eq = semi_semi_equation();
        if (name == "proj_half") eq = proj_proj_equation(lambda, make_rat(1, 2));
        if (name == "proj_proj") eq = proj_proj_equation(lambda, lambda);
        SolveOptions opt;
        opt.atom_candidates = {0};
        const auto sol = solve_density(eq, grid, opt);
        atoms = sol.model.atoms;
        for (const auto& s : sol.samples) {
            rows.emplace_back(s.t, s.density);
            if (s.flagged) flagged.push_back(s.t);
        }
    } else {
        ClosedForm which = ClosedForm::SemiSemi;
        if (name == "semi_proj") which = ClosedForm::SemiProj;
        if (name == "proj_half") which = ClosedForm::ProjHalf;
        if (name == "proj_proj") which = proj_proj_case(l);
        const DensityModel m = closed_form_model(which, l);
        atoms = m.atoms;
        for (double t : grid) rows.emplace_back(t, m.density(t));
    }
    out << std::setprecision(12);
    for (const auto& a : atoms) out << "# atom " << a.location << ' ' << a.weight << '\n';
    for (double t : flagged) out << "# flagged " << t << '\n';
    out << "t,density\n";
    for (const auto& [t, d] : rows) out << t << ',' << d << '\n';
    return 0;
}

int cmd_check(std::ostream& out, const Global& g, const std::string& suite)
{
    std::vector<std::string> names;
    if (suite == "all") {
        names = checks::suite_names();
    } else {
        const auto& known = checks::suite_names();
        if (std::find(known.begin(), known.end(), suite) == known.end()) {
            std::string list;
            for (const auto& k : known) list += " " + k;
            throw UsageError("unknown suite '" + suite + "'; known: all" + list);
        }
        names.push_back(suite);
    }
    bool ok = true;
    for (const auto& name : names) {
        const auto r = checks::run_suite(name, g.seed);
        out << checks::format(r) << std::endl;
        ok = ok && r.pass;
    }
    return ok ? 0 : 1;
}

// Partition inspection: `check --partition {{1,2},{3}} [--eps 112]`.
int cmd_partition(std::ostream& out, const std::string& text, const std::string& eps_text)
{
    using namespace ncpart;
    const Partition pi = parse_partition(text);
    if (!pi.is_noncrossing()) throw UsageError("partition " + to_string(pi) + " is crossing");
    out << "partition       " << to_string(pi) << '\n';
    out << "kreweras        " << to_string(kreweras(pi)) << '\n';
    out << "parity          " << (parity_class(pi) == ParityClass::NCE ? "NCE" : "NCO") << '\n';
    if (eps_text.empty()) return 0;
    const EpsSignature eps = parse_signature(eps_text);
    out << "eps             " << to_string(eps) << '\n';
    out << "eps_complement  " << to_string(eps_complement(eps, pi)) << '\n';
    out << "eps_alternating " << (is_eps_alternating(eps, pi) ? "yes" : "no") << '\n';
    return 0;
}

int cmd_inverse_table(std::ostream& out, const Global& g, const std::string& spec, int order)
{
    const int k = checked_order(order, 8);
    const auto closed = checks::closed_form_inverse(parse_law(spec), k);
    if (!closed) throw UsageError("no closed-form row for '" + spec + "'");
    const PowerSeries computed = comp_inverse(truncate(r_even(make_law(spec, 2 * k).cumulants()), k));
    out << "# compositional inverse of R_E for " << spec << ", order " << k << '\n';
    std::vector<Row> rows;
    bool ok = true;
    for (int n = 1; n <= k; ++n) {
        const bool eq = computed.coef(n) == closed->coef(n);
        ok = ok && eq;
        rows.push_back({std::to_string(n), g.fmt(computed.coef(n)), g.fmt(closed->coef(n)), eq ? "ok" : "MISMATCH"});
    }
    print_table(out, {"n", "computed", "closed_form", "status"}, rows);
    out << "verdict: " << (ok ? "AGREE" : "DISAGREE") << '\n';
    return ok ? 0 : 1;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Distributions of free commutators and related operations on free random variables."};
    app.name("freeconv");
    app.require_subcommand(1);
    Global g;
    app.add_option("--decimal", g.decimal, "print rationals as decimals with this many digits")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--seed", g.seed, "seed for randomized check suites");
    app.add_flag("--dump-series", g.dump, "also print the moment and cumulant series in text form");

    std::string law, a_spec, b_spec, route = "theorem12", tree, example, grid, method = "solve", suite = "all";
    std::vector<std::string> expr_args;
    int order = 0, steps = 6;

    auto* moments = app.add_subcommand("moments", "moments of a named law");
    moments->add_option("--law", law, "distribution spec")->required();
    moments->add_option("--order", order, "number of moments (default 12)");

    auto* cumulants = app.add_subcommand("cumulants", "free cumulants of a named law");
    cumulants->add_option("--law", law, "distribution spec")->required();
    cumulants->add_option("--order", order, "number of cumulants (default 12)");

    auto* commutator = app.add_subcommand("commutator", "law of i(ab - ba) for free a, b");
    commutator->add_option("--a", a_spec, "law of a")->required();
    commutator->add_option("--b", b_spec, "law of b")->required();
    commutator->add_option("--order", order, "order (default 12, or 8 with the oracle)");
    commutator->add_option("--route", route, "theorem12 | cor14 | oracle | all")
        ->check(CLI::IsMember({"theorem12", "cor14", "oracle", "all"}));

    auto* anticommutator = app.add_subcommand("anticommutator", "law of ab + ba for free even a, b");
    anticommutator->add_option("--a", a_spec, "law of a")->required();
    anticommutator->add_option("--b", b_spec, "law of b")->required();
    anticommutator->add_option("--order", order, "order (default 12)");

    auto* iterate = app.add_subcommand("iterate", "iterated commutators c_m = i[c_{m-1}, a_m]");
    iterate->add_option("--mu", law, "common law of the a_m")->required();
    iterate->add_option("--steps", steps, "number of iterations (default 6)");
    iterate->add_option("--order", order, "order (default 12)");

    auto* expr = app.add_subcommand("expr", "nested commutator expression, by recursion and closed form");
    expr->add_option("--tree", tree, "bracket expression such as [[1,2],3]")->required();
    expr->add_option("--args", expr_args, "one spec for all leaves, or one per leaf")->required();
    expr->add_option("--order", order, "order (default 12)");

    auto* density = app.add_subcommand("density", "density CSV for a worked example");
    density->add_option("--example", example, "semi_proj:L | semi_semi | proj_half:L | proj_proj:L")->required();
    density->add_option("--grid", grid, "a:b:steps")->required();
    density->add_option("--method", method, "solve (Stieltjes inversion) | closed")
        ->check(CLI::IsMember({"solve", "closed"}));

    auto* check = app.add_subcommand("check", "run acceptance suites");
    std::string partition, eps;
    check->add_option("--suite", suite, "suite name or all");
    check->add_option("--partition", partition, "inspect a partition such as {{1,2},{3}} instead");
    check->add_option("--eps", eps, "signature such as 112, used with --partition");

    auto* inverse_tab = app.add_subcommand("table1", "compositional inverse of R_E against its closed form");
    inverse_tab->add_option("--law", law, "distribution spec")->required();
    inverse_tab->add_option("--order", order, "order (default 8)");

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    }

    try {
        if (*moments || *cumulants) {
            const Distribution d = make_law(law, checked_order(order, 12));
            law_table(out, g, d, moments->parsed(), cumulants->parsed());
            dump(out, g, d);
            return 0;
        }
        if (*commutator) return cmd_commutator(out, g, a_spec, b_spec, order, route);
        if (*anticommutator) {
            const int n = checked_order(order, 12);
            const Distribution d = free_anticommutator_even(make_law(a_spec, n), make_law(b_spec, n));
            out << "# law of ab + ba, a = " << a_spec << ", b = " << b_spec << ", order " << n << '\n';
            law_table(out, g, d, true, true);
            dump(out, g, d);
            return 0;
        }
        if (*iterate) return cmd_iterate(out, g, law, steps, order);
        if (*expr) return cmd_expr(out, g, tree, expr_args, order);
        if (*density) return cmd_density(out, example, grid, method);
        if (*check) {
            if (!eps.empty() && partition.empty()) throw UsageError("--eps needs --partition");
            return partition.empty() ? cmd_check(out, g, suite) : cmd_partition(out, partition, eps);
        }
        if (*inverse_tab) return cmd_inverse_table(out, g, law, order);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

} // namespace freeconv
