#pragma once

#include <cstdint>
#include <vector>

// Elementary arithmetic functions. Inputs are small (cyclic orders and their
// divisors), so everything is computed by trial division.
namespace loopchar::numtheory {

/// Positive divisors of n in increasing order. Throws std::invalid_argument for n < 1.
std::vector<std::int64_t> divisors(std::int64_t n);

/// Distinct prime factors of n in increasing order.
std::vector<std::int64_t> prime_factors(std::int64_t n);

int mobius(std::int64_t n);

std::int64_t euler_phi(std::int64_t n);

/// C_q(k) = sum over t | gcd(q, k) of t * mu(q / t), with gcd(q, 0) = q.
/// Equals the sum of the k-th powers of the primitive q-th roots of unity.
std::int64_t ramanujan_sum(std::int64_t q, std::int64_t k);

struct RamanujanSum {
    std::int64_t q = 1;
    std::int64_t k = 0;
    std::int64_t value = 1;

    static RamanujanSum of(std::int64_t q, std::int64_t k) { return {q, k, ramanujan_sum(q, k)}; }
};

std::int64_t lcm(std::int64_t a, std::int64_t b);

/// Non-negative residue of a mod m (m > 0).
inline std::int64_t mod(std::int64_t a, std::int64_t m) {
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace loopchar::numtheory
