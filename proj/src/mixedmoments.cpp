#include "freecomm/mixedmoments.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>

namespace freecomm {

namespace {

using ncpart::EpsSignature;
using ncpart::ParityClass;
using ncpart::Partition;

void require_budget(const Distribution& mu_a, const Distribution& mu_b, int n)
{
    if (n < 1 || n > kMaxOracleOrder) {
        throw std::out_of_range("oracle: word length " + std::to_string(n) + " outside 1.." +
                                std::to_string(kMaxOracleOrder));
    }
    if (mu_a.order() < n || mu_b.order() < n) {
        throw std::out_of_range("oracle: distributions must have at least " + std::to_string(n) + " moments");
    }
}

enum class Restrict { All, OddBlock, EvenOnly };

// The signed sum over (pi, eps) with pi restricted as requested.
Rat signed_sum(const Distribution& mu_a, const Distribution& mu_b, int n, Restrict which)
{
    require_budget(mu_a, mu_b, n);
    const PowerSeries ra = truncate(mu_a.cumulants(), n);
    const PowerSeries mb = truncate(mu_b.moment_series(), n);

    std::vector<Partition> parts;
    std::vector<Rat> weights;
    for (const auto& pi : ncpart::enumerate_nc(n)) {
        if (which == Restrict::OddBlock && ncpart::parity_class(pi) != ParityClass::NCO) continue;
        if (which == Restrict::EvenOnly && ncpart::parity_class(pi) != ParityClass::NCE) continue;
        Rat w = coef_partition(ra, pi);
        if (w == 0) continue;
        parts.push_back(pi);
        weights.push_back(std::move(w));
    }

    const unsigned words = 1U << n;
    const unsigned workers = static_cast<unsigned>(std::min<int>(worker_count(), static_cast<int>(words)));
    std::vector<Rat> partial(workers, Rat(0));
    auto run = [&](unsigned id) {
        Rat acc = 0;
        for (unsigned idx = id; idx < words; idx += workers) {
            const EpsSignature eps = EpsSignature::from_index(n, idx);
            Rat s = 0;
            for (std::size_t k = 0; k < parts.size(); ++k) {
                s += weights[k] * coef_partition(mb, ncpart::eps_complement(eps, parts[k]));
            }
            if (eps.twos() % 2 == 0) {
                acc += s;
            } else {
                acc -= s;
            }
        }
        partial[id] = std::move(acc);
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned id = 0; id < workers; ++id) pool.emplace_back(run, id);
        for (auto& t : pool) t.join();
    }
    Rat total = 0;
    for (const auto& p : partial) total += p;
    return total;
}

bool alternating(int length, unsigned bits)
{
    if (length % 2 != 0) return false;
    for (int i = 1; i < length; ++i) {
        const unsigned a = (bits >> (length - i)) & 1U, b = (bits >> (length - i - 1)) & 1U;
        if (a == b) return false;
    }
    return true;
}

// (1,2)^k: bits 0101...
unsigned one_two_power(int k)
{
    unsigned bits = 0;
    for (int i = 0; i < k; ++i) bits = (bits << 2) | 1U;
    return bits;
}

} // namespace

int worker_count()
{
    int n = static_cast<int>(std::thread::hardware_concurrency());
    if (n < 1) n = 1;
    if (const char* env = std::getenv("FREECONV_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && cap > 0) n = std::min<long>(n, cap);
    }
    return n;
}

Rat mixed_word_moment(const Distribution& mu_a, const Distribution& mu_b, const EpsSignature& eps)
{
    const int n = eps.size();
    require_budget(mu_a, mu_b, n);
    const PowerSeries ra = truncate(mu_a.cumulants(), n);
    const PowerSeries mb = truncate(mu_b.moment_series(), n);
    Rat s = 0;
    for (const auto& pi : ncpart::enumerate_nc(n)) {
        Rat w = coef_partition(ra, pi);
        if (w != 0) s += w * coef_partition(mb, ncpart::eps_complement(eps, pi));
    }
    return s;
}

Rat commutator_moment_oracle(const Distribution& mu_a, const Distribution& mu_b, int n)
{
    return signed_sum(mu_a, mu_b, n, Restrict::All);
}

Rat nco_cancellation(const Distribution& mu_a, const Distribution& mu_b, int n)
{
    return signed_sum(mu_a, mu_b, n, Restrict::OddBlock);
}

Rat commutator_moment_nce(const Distribution& mu_a, const Distribution& mu_b, int n)
{
    return signed_sum(mu_a, mu_b, n, Restrict::EvenOnly);
}

Rat commutator_law_moment(const Distribution& mu_a, const Distribution& mu_b, int n)
{
    Rat v = commutator_moment_oracle(mu_a, mu_b, n);
    if (n % 2 == 1) {
        if (v != 0) {
            throw std::domain_error("odd moment of ab - ba is nonzero: " + to_string(v));
        }
        return v;
    }
    return n % 4 == 0 ? v : Rat(-v);
}

Distribution commutator_by_oracle(const Distribution& mu_a, const Distribution& mu_b, int order)
{
    std::vector<Rat> m;
    for (int n = 1; n <= order; ++n) m.push_back(commutator_law_moment(mu_a, mu_b, n));
    return Distribution(std::move(m));
}

JointDist2::JointDist2(NCSeries2 moments)
    : moments_(std::move(moments))
    , cumulants_(moments2_to_R2(moments_))
{
}

JointDist2 joint_ab_ba(const Distribution& mu_a, const Distribution& mu_b, int order)
{
    require_budget(mu_a, mu_b, order);
    NCSeries2 m(order);
    for (int len = 1; len <= order; ++len) {
        for (unsigned bits = 0; bits < (1U << len); ++bits) {
            m.set(len, bits, mixed_word_moment(mu_a, mu_b, EpsSignature::from_index(len, bits)));
        }
    }
    return JointDist2(std::move(m));
}

std::optional<DeterminingSeries> r_diagonal_test(const JointDist2& joint)
{
    const NCSeries2& r = joint.cumulants();
    for (int len = 1; len <= joint.order(); ++len) {
        for (unsigned bits = 0; bits < (1U << len); ++bits) {
            if (!alternating(len, bits) && r.coef(len, bits) != 0) return std::nullopt;
        }
    }
    const int k = joint.order() / 2;
    if (k == 0) return std::nullopt;
    std::vector<Rat> f;
    for (int j = 1; j <= k; ++j) {
        const unsigned w12 = one_two_power(j);
        const unsigned w21 = w12 << 1;
        if (r.coef(2 * j, w12) != r.coef(2 * j, w21)) return std::nullopt;
        f.push_back(r.coef(2 * j, w12));
    }
    return DeterminingSeries{PowerSeries(std::move(f))};
}

bool determining_series_check(const JointDist2& joint, const Distribution& mu_a, const Distribution& mu_b)
{
    auto det = r_diagonal_test(joint);
    if (!det) {
        throw std::domain_error("determining_series_check: the pair is not R-diagonal");
    }
    const int k = det->f.order();
    std::vector<Rat> m;
    for (int j = 1; j <= k; ++j) m.push_back(joint.moments().coef(2 * j, one_two_power(j)));
    if (det->f != star(moments_to_R(PowerSeries(std::move(m))), moeb(k))) return false;
    if (mu_a.is_even() && mu_b.is_even()) {
        const PowerSeries ea = truncate(r_even(mu_a.cumulants()), k);
        const PowerSeries eb = truncate(r_even(mu_b.cumulants()), k);
        if (det->f != star(star(ea, zeta(k)), eb)) return false;
    }
    return true;
}

PowerSeries commutator_R_from_joint(const JointDist2& joint)
{
    // i^n sum_w (-1)^{#2(w)} R_w
    PowerSeries d = diagonal(joint.cumulants(), 1, -1);
    std::vector<Rat> c = d.coeffs();
    for (int n = 1; n <= d.order(); ++n) {
        Rat& x = c[static_cast<std::size_t>(n - 1)];
        if (n % 2 == 1) {
            if (x != 0) throw std::domain_error("commutator_R_from_joint: odd coefficient is nonzero");
        } else if (n % 4 == 2) {
            x = -x;
        }
    }
    return PowerSeries(std::move(c));
}

PowerSeries anticommutator_R_from_joint(const JointDist2& joint) { return diagonal(joint.cumulants(), 1, 1); }

} // namespace freecomm
