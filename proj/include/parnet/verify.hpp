#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace parnet {

struct CheckResult {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double threshold = 0.0;
    std::string detail;
};

// Optimization machinery: gradient oracle vs finite differences, descent
// monotonicity and drift localization, and the projected-descent risk bound.
std::vector<CheckResult> run_opt_suite(std::uint64_t seed);

// Constructive approximation: Taylor remainder, piecewise-polynomial identities,
// slab sums, sigmoid surrogate decay, monomial/multiplier scaling laws, and the
// assembled-network sup-error decay.
std::vector<CheckResult> run_approx_suite(std::uint64_t seed);

// Inductive input-derivative bound vs finite-difference samples.
std::vector<CheckResult> run_derivbound_suite(std::uint64_t seed);

std::vector<CheckResult> run_suite(const std::string& which, std::uint64_t seed);

bool all_pass(const std::vector<CheckResult>& results);

std::string results_to_json(const std::vector<CheckResult>& results);

}  // namespace parnet
