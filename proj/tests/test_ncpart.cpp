#include "doctest.h"

#include "freecomm/ncpart.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

using namespace freecomm::ncpart;

namespace {

// Catalan numbers from the convolution recursion.
long catalan(int n)
{
    std::vector<long> c(static_cast<std::size_t>(n) + 1, 0);
    c[0] = 1;
    for (int m = 1; m <= n; ++m) {
        for (int k = 0; k < m; ++k) {
            c[static_cast<std::size_t>(m)] += c[static_cast<std::size_t>(k)] * c[static_cast<std::size_t>(m - 1 - k)];
        }
    }
    return c[static_cast<std::size_t>(n)];
}

// All set partitions of {1..n} as label vectors.
void all_set_partitions(int n, std::vector<int>& labels, int i, int max_label,
                        std::vector<std::vector<int>>& out)
{
    if (i == n) {
        out.push_back(labels);
        return;
    }
    for (int b = 0; b <= max_label + 1; ++b) {
        labels[static_cast<std::size_t>(i)] = b;
        all_set_partitions(n, labels, i + 1, std::max(max_label, b), out);
    }
}

// Crossing test by the four-index definition.
bool crossing_by_definition(const std::vector<int>& l)
{
    const int n = static_cast<int>(l.size());
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c)
                for (int d = c + 1; d < n; ++d)
                    if (l[a] == l[c] && l[b] == l[d] && l[a] != l[b])
                        return true;
    return false;
}

// Circle positions in units of thirds of an arc: P_i at 3(i-1), Q_i one
// third clockwise (l_i = 1) or counter-clockwise (l_i = 2) from P_i.
int p_angle(int i) { return 3 * (i - 1); }
int q_angle(const EpsSignature& e, int n, int i)
{
    int a = 3 * (i - 1) + (e.at(i) == 1 ? 1 : -1);
    return (a + 3 * n) % (3 * n);
}

bool strictly_between(int x, int a, int b, int period)
{
    int dx = (x - a + period) % period;
    int db = (b - a + period) % period;
    return dx > 0 && dx < db;
}

bool chords_cross(int a, int b, int c, int d, int period)
{
    return strictly_between(c, a, b, period) != strictly_between(d, a, b, period);
}

// Literal reading of the complement: i ~ j iff the chord Q_iQ_j meets no
// chord P_hP_k with h, k in a common block of pi.
Partition geometric_complement(const EpsSignature& e, const Partition& pi)
{
    const int n = pi.size();
    const int period = 3 * n;
    std::vector<int> labels(static_cast<std::size_t>(n), -1);
    int next = 0;
    for (int i = 1; i <= n; ++i) {
        if (labels[static_cast<std::size_t>(i - 1)] != -1) continue;
        labels[static_cast<std::size_t>(i - 1)] = next;
        for (int j = i + 1; j <= n; ++j) {
            bool ok = true;
            for (int h = 1; h <= n && ok; ++h)
                for (int k = h + 1; k <= n && ok; ++k)
                    if (pi.label(h) == pi.label(k) &&
                        chords_cross(q_angle(e, n, i), q_angle(e, n, j), p_angle(h), p_angle(k), period))
                        ok = false;
            if (ok) labels[static_cast<std::size_t>(j - 1)] = next;
        }
        ++next;
    }
    return Partition::from_labels(labels);
}

// Kreweras as the coarsest sigma with pi on 1,3,5,.. and sigma on 2,4,6,..
// jointly non-crossing.
Partition kreweras_by_maximality(const Partition& pi, const std::vector<Partition>& nc)
{
    const int n = pi.size();
    const Partition* best = nullptr;
    for (const auto& sigma : nc) {
        std::vector<int> joint(static_cast<std::size_t>(2 * n));
        for (int i = 1; i <= n; ++i) {
            joint[static_cast<std::size_t>(2 * i - 2)] = pi.label(i);
            joint[static_cast<std::size_t>(2 * i - 1)] = 100 + sigma.label(i);
        }
        if (crossing_by_definition(joint)) continue;
        if (best == nullptr || sigma.block_count() < best->block_count()) best = &sigma;
    }
    REQUIRE(best != nullptr);
    return *best;
}

std::multiset<int> size_multiset(const Partition& p)
{
    auto s = p.block_sizes();
    return {s.begin(), s.end()};
}

} // namespace

TEST_CASE("enumerate_nc counts are Catalan numbers")
{
    CHECK(enumerate_nc(1).size() == 1);
    CHECK(to_string(enumerate_nc(1).front()) == "{{1}}");
    for (int n = 1; n <= 11; ++n) {
        CHECK(static_cast<long>(enumerate_nc(n).size()) == catalan(n));
    }
    CHECK(enumerate_nc(4).size() == 14);
    CHECK(enumerate_nc(8).size() == 1430);
    CHECK_THROWS_AS(enumerate_nc(0), std::out_of_range);
    CHECK_THROWS_AS(enumerate_nc(kMaxEnumerate + 1), std::out_of_range);
}

TEST_CASE("enumerate_nc equals brute-force filtering of all set partitions")
{
    for (int n = 1; n <= 8; ++n) {
        std::vector<std::vector<int>> all;
        std::vector<int> labels(static_cast<std::size_t>(n), 0);
        all_set_partitions(n, labels, 1, 0, all);
        std::vector<Partition> expected;
        for (const auto& l : all) {
            if (!crossing_by_definition(l)) expected.push_back(Partition::from_labels(l));
        }
        auto got = enumerate_nc(n);
        CHECK(got == expected); // both in lexicographic RGS order
        for (const auto& p : got) CHECK(p.is_noncrossing());
        CHECK(std::is_sorted(got.begin(), got.end()));
    }
}

TEST_CASE("is_noncrossing agrees with the four-index definition")
{
    std::vector<std::vector<int>> all;
    std::vector<int> labels(7, 0);
    all_set_partitions(7, labels, 1, 0, all);
    for (const auto& l : all) {
        CHECK(Partition::from_labels(l).is_noncrossing() == !crossing_by_definition(l));
    }
}

TEST_CASE("partition construction and text form")
{
    Partition p = Partition::from_blocks(5, {{4, 3, 5}, {2, 1}});
    CHECK(to_string(p) == "{{1,2},{3,4,5}}");
    CHECK(parse_partition("{{1,2},{3,4,5}}") == p);
    CHECK(p.block_sizes() == std::vector<int>{2, 3});
    CHECK_THROWS_AS(Partition::from_blocks(3, {{1, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(Partition::from_blocks(3, {{1, 2}, {2, 3}}), std::invalid_argument);
    CHECK_THROWS_AS(parse_partition("{{1,2}"), std::invalid_argument);
    CHECK_THROWS_AS(Partition::singletons(kMaxGroundSet + 1), std::out_of_range);
    CHECK(to_string(parse_signature("11221")) == "11221");
    CHECK_THROWS_AS(parse_signature("123"), std::invalid_argument);
    CHECK(EpsSignature::from_index(3, 0b011).letters() == std::vector<int>{1, 2, 2});
}

TEST_CASE("leq: refinement order")
{
    auto nc = enumerate_nc(5);
    for (const auto& p : nc) {
        CHECK(leq(p, p));
        CHECK(leq(Partition::singletons(5), p));
        CHECK(leq(p, Partition::one_block(5)));
    }
    CHECK(leq(parse_partition("{{1},{2},{3,4}}"), parse_partition("{{1,2},{3,4}}")));
    CHECK_FALSE(leq(parse_partition("{{1,2},{3,4}}"), parse_partition("{{1},{2},{3,4}}")));
    CHECK_THROWS_AS(leq(Partition::singletons(2), Partition::singletons(3)), std::invalid_argument);
}

TEST_CASE("pairs pi <= rho in NC(n) are equinumerous with NCE(2n)")
{
    for (int n = 1; n <= 6; ++n) {
        auto nc = enumerate_nc(n);
        long pairs = 0;
        for (const auto& a : nc)
            for (const auto& b : nc)
                if (leq(a, b)) ++pairs;
        long nce = 0;
        for (const auto& p : enumerate_nc(2 * n))
            if (parity_class(p) == ParityClass::NCE) ++nce;
        CHECK(pairs == nce);
        if (n == 3) CHECK(nce == 12);
    }
}

TEST_CASE("kreweras examples")
{
    CHECK(to_string(kreweras(parse_partition("{{1,2}}"))) == "{{1},{2}}");
    CHECK(to_string(kreweras(parse_partition("{{1,2},{3,4}}"))) == "{{1},{2,4},{3}}");
    for (int n = 1; n <= 6; ++n) {
        CHECK(kreweras(Partition::singletons(n)) == Partition::one_block(n));
    }
    CHECK_THROWS_AS(kreweras(parse_partition("{{1,3},{2,4}}")), std::invalid_argument);
}

TEST_CASE("kreweras matches the maximal-interleaving oracle")
{
    for (int n = 1; n <= 6; ++n) {
        auto nc = enumerate_nc(n);
        for (const auto& p : nc) CHECK(kreweras(p) == kreweras_by_maximality(p, nc));
    }
}

TEST_CASE("kreweras is an order-reversing bijection")
{
    for (int n = 1; n <= 7; ++n) {
        auto nc = enumerate_nc(n);
        std::set<Partition> images;
        std::map<Partition, Partition> k;
        for (const auto& p : nc) {
            k[p] = kreweras(p);
            CHECK(k[p].is_noncrossing());
            images.insert(k[p]);
        }
        CHECK(images.size() == nc.size());
        if (n <= 6) {
            for (const auto& a : nc)
                for (const auto& b : nc)
                    CHECK(leq(a, b) == leq(k[b], k[a]));
        }
    }
}

TEST_CASE("eps_complement: the worked five-point instance")
{
    auto rho = eps_complement(parse_signature("11221"), parse_partition("{{1,2},{3,4,5}}"));
    CHECK(to_string(rho) == "{{1},{2,3,5},{4}}");
}

TEST_CASE("eps_complement equals the literal chord-intersection rule")
{
    for (int n = 1; n <= 6; ++n) {
        auto nc = enumerate_nc(n);
        for (unsigned e = 0; e < (1U << n); ++e) {
            auto eps = EpsSignature::from_index(n, e);
            for (const auto& p : nc) {
                auto rho = eps_complement(eps, p);
                REQUIRE(rho == geometric_complement(eps, p));
                CHECK(rho.is_noncrossing());
            }
        }
    }
}

TEST_CASE("eps_complement at constant signatures")
{
    for (int n = 1; n <= 7; ++n) {
        auto ones = EpsSignature::constant(n, 1);
        auto twos = EpsSignature::constant(n, 2);
        for (const auto& p : enumerate_nc(n)) {
            CHECK(eps_complement(ones, p) == kreweras(p));
            CHECK(eps_complement(twos, kreweras(p)) == p);
        }
    }
    CHECK_THROWS_AS(eps_complement(parse_signature("12"), Partition::singletons(3)), std::invalid_argument);
}

TEST_CASE("eps-alternating partitions")
{
    CHECK(is_eps_alternating(parse_signature("12"), parse_partition("{{1,2}}")));
    CHECK_FALSE(is_eps_alternating(parse_signature("11"), parse_partition("{{1,2}}")));
    CHECK_FALSE(is_eps_alternating(parse_signature("1"), parse_partition("{{1}}")));

    for (int n = 1; n <= 8; ++n) {
        auto nc = enumerate_nc(n);
        for (unsigned e = 0; e < (1U << n); ++e) {
            auto eps = EpsSignature::from_index(n, e);
            for (const auto& p : nc) {
                bool alt = is_eps_alternating(eps, p);
                if (alt) {
                    CHECK(parity_class(p) == ParityClass::NCE);
                    if (eps.balanced()) CHECK(is_eps_alternating(eps, eps_complement(eps, p)));
                }
                if (eps.balanced() && parity_class(p) == ParityClass::NCE &&
                    parity_class(eps_complement(eps, p)) == ParityClass::NCE) {
                    CHECK(alt);
                }
            }
        }
    }
}

TEST_CASE("parity classes")
{
    CHECK(parity_class(parse_partition("{{1,2}}")) == ParityClass::NCE);
    CHECK(parity_class(parse_partition("{{1},{2,3}}")) == ParityClass::NCO);
}

TEST_CASE("twist interval")
{
    CHECK(twist_interval(parse_partition("{{1}}")) == std::pair{1, 1});
    CHECK(twist_interval(parse_partition("{{1,2},{3}}")) == std::pair{3, 3});
    CHECK(twist_interval(parse_partition("{{1,2,3},{4}}")) == std::pair{1, 3});
    CHECK_THROWS_AS(twist_interval(parse_partition("{{1,2}}")), std::domain_error);
    CHECK_THROWS_AS(twist(parse_partition("{{1,4},{2,3}}")), std::domain_error);
    for (int n = 1; n <= 8; ++n) {
        for (const auto& p : enumerate_nc(n)) {
            if (parity_class(p) != ParityClass::NCO) continue;
            auto [t0, t1] = twist_interval(p);
            CHECK((t1 - t0) % 2 == 0);
        }
    }
}

TEST_CASE("twist is an involution preserving block sizes and twist interval")
{
    for (int n = 1; n <= 8; ++n) {
        for (const auto& p : enumerate_nc(n)) {
            if (parity_class(p) != ParityClass::NCO) continue;
            auto t = twist(p);
            CHECK(t.is_noncrossing());
            CHECK(parity_class(t) == ParityClass::NCO);
            CHECK(twist_interval(t) == twist_interval(p));
            CHECK(twist(t) == p);
            CHECK(size_multiset(t) == size_multiset(p));
            auto [t0, t1] = twist_interval(p);
            if (t0 == t1) CHECK(t == p);
        }
    }
}

TEST_CASE("signed twist: involution, parity flip and block structure")
{
    for (int n = 1; n <= 7; ++n) {
        auto nc = enumerate_nc(n);
        for (unsigned e = 0; e < (1U << n); ++e) {
            auto eps = EpsSignature::from_index(n, e);
            for (const auto& p : nc) {
                if (parity_class(p) != ParityClass::NCO) continue;
                auto [p2, eps2] = twist_signed(p, eps);
                auto back = twist_signed(p2, eps2);
                CHECK(back.first == p);
                CHECK(back.second == eps);
                CHECK((eps.twos() + eps2.twos()) % 2 == 1);
                CHECK(size_multiset(eps_complement(eps, p)) == size_multiset(eps_complement(eps2, p2)));
            }
        }
    }
}
