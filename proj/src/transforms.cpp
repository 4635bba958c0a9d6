#include "freecomm/transforms.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace freecomm {

namespace {

void require_same_order(int a, int b, const char* op)
{
    if (a != b) {
        throw std::invalid_argument(std::string(op) + ": order mismatch (" + std::to_string(a) +
                                    " vs " + std::to_string(b) + ")");
    }
}

// For one n: each distinct (type of pi, type of K(pi)) pair with its
// multiplicity, a type being the sorted list of block sizes.
struct StarTable {
    struct Entry {
        std::vector<int> left;
        std::vector<int> right;
        long count;
    };
    std::vector<Entry> entries;
};

std::vector<int> block_type(const ncpart::Partition& p)
{
    auto s = p.block_sizes();
    std::sort(s.begin(), s.end());
    return s;
}

const StarTable& star_table(int n)
{
    static std::mutex mu;
    static std::array<std::unique_ptr<StarTable>, kMaxStarOrder + 1> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[static_cast<std::size_t>(n)];
    if (!slot) {
        std::map<std::pair<std::vector<int>, std::vector<int>>, long> counts;
        for (const auto& pi : ncpart::enumerate_nc(n)) {
            ++counts[{block_type(pi), block_type(ncpart::kreweras(pi))}];
        }
        auto table = std::make_unique<StarTable>();
        for (auto& [key, c] : counts) {
            table->entries.push_back({key.first, key.second, c});
        }
        slot = std::move(table);
    }
    return *slot;
}

// Per n: every pi in NC(n) as block position lists, together with K(pi).
struct Star2Table {
    struct Entry {
        std::vector<std::vector<int>> left;
        std::vector<std::vector<int>> right;
    };
    std::vector<Entry> entries;
};

const Star2Table& star2_table(int n)
{
    static std::mutex mu;
    static std::array<std::unique_ptr<Star2Table>, kMaxNCOrder + 1> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[static_cast<std::size_t>(n)];
    if (!slot) {
        auto table = std::make_unique<Star2Table>();
        for (const auto& pi : ncpart::enumerate_nc(n)) {
            table->entries.push_back({pi.blocks(), ncpart::kreweras(pi).blocks()});
        }
        slot = std::move(table);
    }
    return *slot;
}

// Bits of the subword at the given 1-based positions of a length-n word.
unsigned restrict_bits(unsigned bits, int n, const std::vector<int>& positions)
{
    unsigned out = 0;
    for (int p : positions) {
        out = (out << 1) | ((bits >> (n - p)) & 1U);
    }
    return out;
}

Rat restricted_product(const NCSeries2& f, unsigned bits, int n,
                       const std::vector<std::vector<int>>& blocks)
{
    Rat p = 1;
    for (const auto& b : blocks) {
        const Rat& c = f.coef(static_cast<int>(b.size()), restrict_bits(bits, n, b));
        if (c == 0) {
            return 0;
        }
        p *= c;
    }
    return p;
}

} // namespace

std::string to_string(TransformKind kind)
{
    switch (kind) {
    case TransformKind::Moments: return "moments";
    case TransformKind::RCumulants: return "R";
    case TransformKind::REven: return "R_E";
    case TransformKind::STransform: return "S";
    }
    return "?";
}

Rat moeb_coefficient(int n)
{
    if (n < 1) {
        throw std::out_of_range("moeb_coefficient: n must be >= 1");
    }
    // Catalan(n-1) = binom(2n-2, n-1) / n
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(2 * n - 2), static_cast<unsigned long>(n - 1));
    Rat c(b / n);
    return n % 2 == 1 ? c : Rat(-c);
}

PowerSeries zeta(int order)
{
    if (order < 1) {
        throw std::out_of_range("zeta: order must be >= 1");
    }
    return PowerSeries(std::vector<Rat>(static_cast<std::size_t>(order), Rat(1)));
}

PowerSeries moeb(int order)
{
    if (order < 1) {
        throw std::out_of_range("moeb: order must be >= 1");
    }
    std::vector<Rat> c;
    for (int n = 1; n <= order; ++n) {
        c.push_back(moeb_coefficient(n));
    }
    return PowerSeries(std::move(c));
}

namespace {

NCSeries2 lift(const PowerSeries& f)
{
    NCSeries2 out(f.order());
    for (int n = 1; n <= f.order(); ++n) {
        for (unsigned b = 0; b < (1U << n); ++b) {
            out.set(n, b, f.coef(n));
        }
    }
    return out;
}

} // namespace

NCSeries2 zeta2(int order) { return lift(zeta(order)); }
NCSeries2 moeb2(int order) { return lift(moeb(order)); }

NCSeries2 sum2(int order)
{
    NCSeries2 out(order);
    out.set(1, 0, 1);
    out.set(1, 1, 1);
    return out;
}

PowerSeries special_series(Special which, int order)
{
    return which == Special::Zeta ? zeta(order) : moeb(order);
}

NCSeries2 special_series2(Special which, int order)
{
    return which == Special::Zeta ? zeta2(order) : moeb2(order);
}

namespace {

// Value at t = 0 of a series whose n-th coefficient is a polynomial of
// degree <= n in t, from its values at t = 1..order+1.
PowerSeries value_at_zero(const std::function<PowerSeries(const Rat&)>& eval, int order)
{
    PowerSeries out(order);
    for (int i = 1; i <= order + 1; ++i) {
        Rat w = 1;
        for (int j = 1; j <= order + 1; ++j) {
            if (j != i) {
                w *= Rat(j) / Rat(j - i);
            }
        }
        out += w * eval(Rat(i));
    }
    return out;
}

} // namespace

PowerSeries star_by_fourier(const PowerSeries& f, const PowerSeries& g)
{
    require_same_order(f.order(), g.order(), "star_by_fourier");
    const int order = f.order();
    // A singleton block of pi carries f_1, so coef n of (f + t z) * g has degree <= n in t.
    if (f.coef(1) == 0) {
        return value_at_zero([&](const Rat& t) { return star_by_fourier(f + PowerSeries::monomial(order, 1, t), g); },
                             order);
    }
    if (g.coef(1) == 0) {
        return value_at_zero([&](const Rat& t) { return star_by_fourier(f, g + PowerSeries::monomial(order, 1, t)); },
                             order);
    }
    return comp_inverse(to_power(shift_div(fourier(f) * fourier(g), -1)));
}

PowerSeries star(const PowerSeries& f, const PowerSeries& g)
{
    require_same_order(f.order(), g.order(), "star");
    const int order = f.order();
    if (order > kMaxStarOrder) {
        return star_by_fourier(f, g);
    }
    std::vector<Rat> out(static_cast<std::size_t>(order), Rat(0));
    for (int n = 1; n <= order; ++n) {
        Rat sum = 0;
        for (const auto& e : star_table(n).entries) {
            Rat term = e.count;
            for (int s : e.left) {
                term *= f.coef(s);
                if (term == 0) break;
            }
            if (term == 0) continue;
            for (int s : e.right) {
                term *= g.coef(s);
                if (term == 0) break;
            }
            sum += term;
        }
        out[static_cast<std::size_t>(n - 1)] = sum;
    }
    return PowerSeries(std::move(out));
}

NCSeries2 star2(const NCSeries2& f, const NCSeries2& g)
{
    require_same_order(f.order(), g.order(), "star2");
    const int order = f.order();
    NCSeries2 out(order);
    for (int n = 1; n <= order; ++n) {
        const auto& table = star2_table(n);
        for (unsigned bits = 0; bits < (1U << n); ++bits) {
            Rat sum = 0;
            for (const auto& e : table.entries) {
                Rat a = restricted_product(f, bits, n, e.left);
                if (a == 0) continue;
                Rat b = restricted_product(g, bits, n, e.right);
                if (b == 0) continue;
                sum += a * b;
            }
            out.set(n, bits, std::move(sum));
        }
    }
    return out;
}

// M(z) = R(z (1 + M(z))): R = M o u^{<-1>} with u = z (1 + M).
PowerSeries moments_to_R(const PowerSeries& moments)
{
    const PowerSeries z = PowerSeries::identity(moments.order());
    return compose(moments, comp_inverse(z + z * moments));
}

PowerSeries R_to_moments(const PowerSeries& cumulants)
{
    // u = z (1 + M) solves u / (1 + R(u)) = z; one extra order gives M_n = u_{n+1}.
    const int order = cumulants.order();
    std::vector<Rat> r = cumulants.coeffs();
    r.emplace_back(0);
    const PowerSeries rr(std::move(r));
    const PowerSeries g = PowerSeries::identity(order + 1) / (UnitSeries::constant(order + 1, 1) + to_unit(rr));
    const PowerSeries u = comp_inverse(g);
    std::vector<Rat> m;
    for (int n = 1; n <= order; ++n) m.push_back(u.coef(n + 1));
    return PowerSeries(std::move(m));
}

NCSeries2 moments2_to_R2(const NCSeries2& moments) { return star2(moments, moeb2(moments.order())); }
NCSeries2 R2_to_moments2(const NCSeries2& cumulants) { return star2(cumulants, zeta2(cumulants.order())); }

PowerSeries r_even(const PowerSeries& R) { return even_coefficients(R); }

UnitSeries fourier(const PowerSeries& f)
{
    if (f.coef(1) == 0) {
        throw std::domain_error("fourier: linear coefficient is zero");
    }
    return shift_div(comp_inverse(f), 1);
}

UnitSeries s_transform(const PowerSeries& moments)
{
    if (moments.coef(1) == 0) {
        throw std::domain_error("s_transform: first moment is zero, S is undefined");
    }
    UnitSeries inv_over_w = shift_div(comp_inverse(moments), 1);
    return UnitSeries::linear(inv_over_w.order(), 1, 1) * inv_over_w;
}

} // namespace freecomm
