#pragma once

// Brute-force mixed moments of x1 = ab and x2 = ba for free a, b, summed
// directly over non-crossing partitions and epsilon-complements:
//
//   phi(x_{l_1} ... x_{l_n}) = sum_{pi in NC(n)} [R(mu_a); pi] [M(mu_b); C_eps(pi)]
//
// Nothing here goes through the commutator formulas of freeops; only the
// series and partition primitives are shared. Words are limited to
// kMaxOracleOrder letters (std::out_of_range beyond, or when a distribution
// is too short).

#include "freecomm/freeops.hpp"
#include "freecomm/ncpart.hpp"
#include "freecomm/series.hpp"

#include <optional>

namespace freecomm {

inline constexpr int kMaxOracleOrder = kMaxNCOrder;

/// Worker threads for the oracle sums: hardware concurrency, capped by the
/// FREECONV_THREADS environment variable when it holds a positive integer.
int worker_count();

Rat mixed_word_moment(const Distribution& mu_a, const Distribution& mu_b, const ncpart::EpsSignature& eps);

/// phi((ab - ba)^n) as the signed sum over NC(n) x {1,2}^n.
Rat commutator_moment_oracle(const Distribution& mu_a, const Distribution& mu_b, int n);
/// The same sum restricted to partitions with an odd block; always 0.
Rat nco_cancellation(const Distribution& mu_a, const Distribution& mu_b, int n);
/// The same sum restricted to partitions with only even blocks.
Rat commutator_moment_nce(const Distribution& mu_a, const Distribution& mu_b, int n);

/// Moment n of i(ab - ba), i.e. i^n phi((ab - ba)^n). Throws std::domain_error
/// if an odd n gives a nonzero (imaginary) value.
Rat commutator_law_moment(const Distribution& mu_a, const Distribution& mu_b, int n);
/// The law of i(ab - ba) to the given order, moment by moment from the oracle.
Distribution commutator_by_oracle(const Distribution& mu_a, const Distribution& mu_b, int order);

/// Joint distribution of a pair: word moments and their two-variable cumulants.
class JointDist2 {
public:
    explicit JointDist2(NCSeries2 moments);
    int order() const { return moments_.order(); }
    const NCSeries2& moments() const { return moments_; }
    const NCSeries2& cumulants() const { return cumulants_; }

private:
    NCSeries2 moments_;
    NCSeries2 cumulants_;
};

/// The pair (ab, ba), every word up to the given order.
JointDist2 joint_ab_ba(const Distribution& mu_a, const Distribution& mu_b, int order);

struct DeterminingSeries {
    PowerSeries f;
};

/// R-diagonality: every cumulant of a non-alternating word vanishes and the
/// two alternating words of each length agree. Then coef(f, k) is the
/// cumulant of (1,2)^k; f has order floor(order / 2).
std::optional<DeterminingSeries> r_diagonal_test(const JointDist2& joint);

/// f == R(mu_{x1 x2}) * Moeb, the moments of x1 x2 read from the words
/// (1,2)^k; for even inputs also f == R_E(mu_a) * Zeta * R_E(mu_b).
/// Throws std::domain_error when the pair is not R-diagonal.
bool determining_series_check(const JointDist2& joint, const Distribution& mu_a, const Distribution& mu_b);

/// Cumulants substituted at (iz, -iz): R of i(x1 - x2). Throws
/// std::domain_error if an odd coefficient survives.
PowerSeries commutator_R_from_joint(const JointDist2& joint);
/// Cumulants substituted at (z, z): R of x1 + x2.
PowerSeries anticommutator_R_from_joint(const JointDist2& joint);

} // namespace freecomm
