#pragma once

#include <cstdint>
#include <vector>

#include "loopchar/charseries.hpp"
#include "loopchar/exppoly.hpp"
#include "loopchar/verdict.hpp"

// Brute-force enumerations used to certify the closed-form character
// formulas. Nothing here calls into the formula code in charseries; the
// series type is only used as a container for the counts.
namespace loopchar::oracle {

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

struct BasisElement {
    std::size_t id = 0;
    std::vector<int> degree;
};

/// An explicit basis of a graded space, one element per dimension.
class GradedBasis {
public:
    GradedBasis(std::size_t rank, std::vector<BasisElement> elements);

    /// One basis element per unit of each coefficient. The series must be a
    /// plain nonnegative integral dimension series.
    static GradedBasis from_series(const GradedSeries& dims);

    std::size_t rank() const noexcept { return rank_; }
    const std::vector<BasisElement>& elements() const noexcept { return elements_; }

private:
    std::size_t rank_;
    std::vector<BasisElement> elements_;
};

/// Dimensions of the xi^k eigenspaces of the cyclic rotation on the r-fold
/// tensor power, index k = 0..r-1. A necklace of period s spans an
/// s-dimensional cyclic space with one dimension in each k = 0 mod r/s.
/// Throws BudgetExceeded once more than `budget` words have been enumerated.
std::vector<GradedSeries> brute_eigenspace_dims(const GradedBasis& basis, std::int64_t r,
                                                const std::vector<int>& truncation,
                                                std::uint64_t budget = kDefaultBudget);

/// Joint eigenspace dimensions of the commuting block rotations on the
/// (r_1 ... r_n)-fold tensor power, computed orbit by orbit: the span of an
/// orbit with stabilizer H carries every character trivial on H exactly once.
ComponentChars brute_multi_eigenspace_dims(const GradedBasis& basis, const IntVector& orders,
                                           const std::vector<int>& truncation, std::uint64_t budget = kDefaultBudget);

/// True iff f(m) = 0 at every m in [-box, box]^n off the lattice.
Verdict brute_vanishing_check(const ExpPoly& f, const SupportLattice& lattice, std::int64_t box);

}  // namespace loopchar::oracle
