#include "loopchar/numtheory.hpp"

#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>

namespace loopchar::numtheory {

namespace {

void require_positive(std::int64_t n, const char* what) {
    if (n < 1) {
        throw std::invalid_argument(std::string(what) + ": argument must be >= 1, got " + std::to_string(n));
    }
}

}  // namespace

std::vector<std::int64_t> divisors(std::int64_t n) {
    require_positive(n, "divisors");
    std::vector<std::int64_t> small;
    std::vector<std::int64_t> large;
    for (std::int64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        small.push_back(d);
        if (d != n / d) large.push_back(n / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

std::vector<std::int64_t> prime_factors(std::int64_t n) {
    require_positive(n, "prime_factors");
    std::vector<std::int64_t> primes;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        primes.push_back(p);
        while (n % p == 0) n /= p;
    }
    if (n > 1) primes.push_back(n);
    return primes;
}

int mobius(std::int64_t n) {
    require_positive(n, "mobius");
    int sign = 1;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        n /= p;
        if (n % p == 0) return 0;
        sign = -sign;
    }
    if (n > 1) sign = -sign;
    return sign;
}

std::int64_t euler_phi(std::int64_t n) {
    require_positive(n, "euler_phi");
    std::int64_t result = n;
    for (std::int64_t p : prime_factors(n)) result = result / p * (p - 1);
    return result;
}

std::int64_t ramanujan_sum(std::int64_t q, std::int64_t k) {
    require_positive(q, "ramanujan_sum");
    const std::int64_t g = k == 0 ? q : std::gcd(q, std::llabs(k));
    std::int64_t sum = 0;
    for (std::int64_t t : divisors(g)) sum += t * mobius(q / t);
    return sum;
}

std::int64_t lcm(std::int64_t a, std::int64_t b) {
    require_positive(a, "lcm");
    require_positive(b, "lcm");
    return a / std::gcd(a, b) * b;
}

}  // namespace loopchar::numtheory
