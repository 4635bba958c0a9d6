#pragma once

// Acceptance suites shared by the `check` subcommand and the acceptance
// test binary. Each suite checks one criterion and reports a one-line verdict.

#include "freecomm/freeops.hpp"

#include <optional>
#include <string>
#include <vector>

namespace freecomm::checks {

struct CheckResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

/// Suite names in criterion order.
const std::vector<std::string>& suite_names();

/// std::invalid_argument for an unknown name. The seed drives the random
/// inputs of the randomized suites.
CheckResult run_suite(const std::string& name, unsigned seed = 1);
std::vector<CheckResult> run_all(unsigned seed = 1);

/// "PASS  3 oracle: ... (1.2 s)".
std::string format(const CheckResult& r);

/// Closed-form compositional inverse of R_E for the named laws, to order k:
///   semicircular(r)       4w / r^2
///   freePoisson(a, b)     w / (b^2 (a + w))
///   arcsine(r)            (2w + w^2) / r^2
///   two-point laws        w (1+w)(1+2w)^2 / ((t1-t0)^2 (w^2 + w + l - l^2))
/// Two-point laws are Bernoulli, projection, symbernoulli and atomic with two
/// atoms. std::nullopt for anything else.
std::optional<PowerSeries> closed_form_inverse(const LawSpec& spec, int k);

} // namespace freecomm::checks
