#include "doctest.h"

#include "freecomm/mixedmoments.hpp"

#include <random>
#include <stdexcept>

using namespace freecomm;
using ncpart::EpsSignature;

namespace {

Rat rnd_rat(std::mt19937& rng)
{
    std::uniform_int_distribution<int> num(-4, 4);
    std::uniform_int_distribution<int> den(1, 3);
    return make_rat(num(rng), den(rng));
}

Distribution random_dist(std::mt19937& rng, int order, bool even = false)
{
    std::vector<Rat> m;
    for (int k = 1; k <= order; ++k) m.push_back(even && k % 2 == 1 ? Rat(0) : rnd_rat(rng));
    m[1] = 1 + rnd_rat(rng) * rnd_rat(rng); // keep the variance generic
    return Distribution(std::move(m));
}

EpsSignature sig(std::vector<int> l) { return EpsSignature(std::move(l)); }

} // namespace

TEST_CASE("mixed word moments: small cases")
{
    auto sc = make_law("semicircular:2", 8);
    CHECK(mixed_word_moment(sc, sc, sig({1, 2})) == 1);
    CHECK(mixed_word_moment(sc, sc, sig({1, 1})) == 0);
    std::mt19937 rng(1);
    auto a = random_dist(rng, 6), b = random_dist(rng, 6);
    CHECK(mixed_word_moment(a, b, sig({1})) == a.mean() * b.mean());
    CHECK(mixed_word_moment(a, b, sig({2})) == a.mean() * b.mean());
    // phi(abba) = phi(a^2) phi(b)^2 + ... is not symmetric in general, but for
    // a point mass b = t every word collapses to phi(a^n) t^n.
    auto t = point_mass(make_rat(3, 2), 6);
    CHECK(mixed_word_moment(a, t, sig({1, 2, 2})) == a.moment(3) * pow(make_rat(3, 2), 3));
    // second-order freeness by hand: phi(abab) = m2(a) m1(b)^2 + m1(a)^2 m2(b) - m1(a)^2 m1(b)^2
    Rat abab = a.moment(2) * b.mean() * b.mean() + a.mean() * a.mean() * b.moment(2) -
               a.mean() * a.mean() * b.mean() * b.mean();
    CHECK(mixed_word_moment(a, b, sig({1, 1})) == abab);
    // phi(abba) = phi(a b^2 a) = phi(a^2) phi(b^2) by freeness of a^2 and b^2 under traciality
    CHECK(mixed_word_moment(a, b, sig({1, 2})) == a.moment(2) * b.moment(2));
    CHECK_THROWS_AS(mixed_word_moment(a, b, EpsSignature::constant(7, 1)), std::out_of_range);
}

TEST_CASE("commutator oracle: hand values")
{
    auto sc = make_law("semicircular:2", 8);
    CHECK(commutator_moment_oracle(sc, sc, 2) == -2);
    CHECK(commutator_moment_oracle(sc, sc, 4) == 10);
    CHECK(commutator_law_moment(sc, sc, 2) == 2);
    CHECK(commutator_law_moment(sc, sc, 4) == 10);
    std::mt19937 rng(2);
    auto a = random_dist(rng, 7), b = random_dist(rng, 7);
    for (int n : {1, 3, 5, 7}) CHECK(commutator_moment_oracle(a, b, n) == 0);
    CHECK_THROWS_AS(commutator_moment_oracle(a, b, 8), std::out_of_range);
    CHECK_THROWS_AS(commutator_moment_oracle(a, b, 0), std::out_of_range);
}

TEST_CASE("oracle equals free_commutator")
{
    const int n = 8;
    std::mt19937 rng(3);
    std::vector<std::pair<Distribution, Distribution>> pairs{
        {make_law("semicircular:2", n), make_law("projection:1/3", n)},
        {make_law("poisson:2,1/2", n), make_law("arcsine:1", n)},
        {make_law("bernoulli:1/4,-1,2", n), make_law("poisson:1,1", n)},
    };
    for (int t = 0; t < 2; ++t) pairs.emplace_back(random_dist(rng, n), random_dist(rng, n));
    for (const auto& [a, b] : pairs) {
        CHECK(commutator_by_oracle(a, b, n) == free_commutator(a, b));
    }
}

TEST_CASE("odd-block partitions cancel; even-block sum is the full sum")
{
    std::mt19937 rng(4);
    for (int t = 0; t < 5; ++t) {
        auto a = random_dist(rng, 6), b = random_dist(rng, 6);
        for (int n = 1; n <= 6; ++n) {
            CAPTURE(n);
            CHECK(nco_cancellation(a, b, n) == 0);
            CHECK(commutator_moment_nce(a, b, n) == commutator_moment_oracle(a, b, n));
            CHECK(commutator_moment_nce(even_part(a), b, n) == commutator_moment_nce(a, b, n));
        }
        CHECK(commutator_moment_nce(a, b, 5) == 0);
    }
}

TEST_CASE("joint distribution of (ab, ba)")
{
    const int n = 6;
    std::mt19937 rng(5);
    auto a = random_dist(rng, n, true), b = random_dist(rng, n, true);
    auto j = joint_ab_ba(a, b, n);
    CHECK(j.cumulants() == moments2_to_R2(j.moments()));
    CHECK(j.moments().coef(Word{1}) == a.mean() * b.mean());
    for (int len = 1; len <= n; len += 2)
        for (unsigned bits = 0; bits < (1U << len); ++bits) CHECK(j.cumulants().coef(len, bits) == 0);

    CHECK(commutator_R_from_joint(j) == free_commutator(a, b).cumulants());
    CHECK(anticommutator_R_from_joint(j) == commutator_R_from_joint(j));

    auto g = random_dist(rng, n), h = random_dist(rng, n);
    auto jg = joint_ab_ba(g, h, n);
    CHECK(commutator_R_from_joint(jg) == free_commutator(g, h).cumulants());
    CHECK(R_to_moments(anticommutator_R_from_joint(jg)) == diagonal(jg.moments(), 1, 1));
}

TEST_CASE("R-diagonality of (ab, ba)")
{
    const int n = 8;
    auto sc = make_law("semicircular:2", n);
    auto bern = make_law("bernoulli:1/2,-1,1", n);

    auto circ = r_diagonal_test(joint_ab_ba(sc, bern, n));
    REQUIRE(circ.has_value());
    CHECK(circ->f == PowerSeries::identity(n / 2));

    auto haar = r_diagonal_test(joint_ab_ba(bern, bern, n));
    REQUIRE(haar.has_value());
    CHECK(haar->f == moeb(n / 2));

    std::mt19937 rng(6);
    auto a = random_dist(rng, 6, true), b = random_dist(rng, 6, true);
    CHECK(r_diagonal_test(joint_ab_ba(a, b, 6)).has_value());

    // Without evenness the pair is not R-diagonal.
    auto shifted = negate_dilate_shift(make_law("semicircular:2", 6), 1, 1);
    CHECK_FALSE(r_diagonal_test(joint_ab_ba(shifted, shifted, 6)).has_value());
}

TEST_CASE("determining series")
{
    const int n = 8;
    auto sc = make_law("semicircular:2", n);
    auto jsc = joint_ab_ba(sc, sc, n);
    auto f = r_diagonal_test(jsc);
    REQUIRE(f.has_value());
    CHECK(f->f == zeta(n / 2));
    CHECK(determining_series_check(jsc, sc, sc));

    std::mt19937 rng(7);
    auto a = random_dist(rng, 6, true);
    auto bern = make_law("bernoulli:1/2,-1,1", 6);
    auto jb = joint_ab_ba(a, bern, 6);
    auto fb = r_diagonal_test(jb);
    REQUIRE(fb.has_value());
    CHECK(fb->f == r_even(a.cumulants()));
    CHECK(determining_series_check(jb, a, bern));

    auto b = random_dist(rng, 6, true);
    auto jab = joint_ab_ba(a, b, 6);
    auto fab = r_diagonal_test(jab);
    REQUIRE(fab.has_value());
    CHECK(determining_series_check(jab, a, b));
    // 2 f(z^2) = R of the commutator
    CHECK(substitute_square(Rat(2) * fab->f, 6) == free_commutator(a, b).cumulants());

    auto shifted = negate_dilate_shift(make_law("semicircular:2", 6), 1, 1);
    CHECK_THROWS_AS(determining_series_check(joint_ab_ba(shifted, shifted, 6), shifted, shifted), std::domain_error);
}

TEST_CASE("worker count honours FREECONV_THREADS")
{
    setenv("FREECONV_THREADS", "1", 1);
    CHECK(worker_count() == 1);
    setenv("FREECONV_THREADS", "junk", 1);
    CHECK(worker_count() >= 1);
    unsetenv("FREECONV_THREADS");
    CHECK(worker_count() >= 1);
}
