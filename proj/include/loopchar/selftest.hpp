#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "loopchar/types.hpp"

// Randomized and exhaustive equivalence checks between the closed-form
// character formulas, the exp-polynomial machinery and their brute-force
// counterparts. Shared by the `selftest` CLI verb and the acceptance binary.
namespace loopchar::selftest {

struct BatteryResult {
    std::string name;
    bool passed = true;
    std::size_t instances = 0;
    std::size_t randomized = 0;  // how many of the instances were drawn at random
    std::string detail;  // first failure, if any
    double seconds = 0;
};

struct BatteryOptions {
    std::uint64_t seed = 20240601;
    // Random dimension tables for the single-stage check; each is run for every r in 1..6.
    std::size_t single_stage_tables = 120;
    // Random d = 2 tables per order vector for the nested check.
    std::size_t nested_random_tables = 10;
    // Random exp-polynomial data for the datum-level checks.
    std::size_t random_specs = 200;
    // Specs used for the annihilator minimality spot-check.
    std::size_t minimality_specs = 20;
    std::int64_t box = 8;
};

/// eigenspace_char against the necklace count, and the partition identity
/// sum_k = P^r, on random and exhaustive small tables.
std::vector<BatteryResult> check_single_stage(const BatteryOptions& options);

/// nested_component_chars against the orbit count for r in
/// {(2,2),(2,3),(3,2),(2,2,2)}, plus sum over k = P^R.
BatteryResult check_nested(const BatteryOptions& options);

/// Lattice recovery / reconstruction, relation (R) with minimality, and ideal
/// coprimality with the CRT dimension identity, on random twisted data.
std::vector<BatteryResult> check_exp_polynomials(const BatteryOptions& options);

/// C_q(k) = sum over units j of zeta_q^{jk} in Q(zeta_q), q <= max_q.
BatteryResult check_ramanujan(std::int64_t max_q = 24);

std::vector<BatteryResult> run_all(const BatteryOptions& options);

}  // namespace loopchar::selftest
