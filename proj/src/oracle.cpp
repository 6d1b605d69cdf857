#include "loopchar/oracle.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "loopchar/error.hpp"

namespace loopchar::oracle {

GradedBasis::GradedBasis(std::size_t rank, std::vector<BasisElement> elements)
    : rank_(rank), elements_(std::move(elements)) {}

GradedBasis GradedBasis::from_series(const GradedSeries& dims) {
    if (dims.has_eigen_coordinates()) throw std::invalid_argument("GradedBasis: expects a plain graded series");
    std::vector<BasisElement> elements;
    for (const auto& [e, c] : dims.terms()) {
        if (c < 0 || c.get_den() != 1) throw std::invalid_argument("GradedBasis: dimensions must be nonnegative integers");
        const std::vector<int> degree(e.begin(), e.end());
        for (mpz_class i = 0; i < c.get_num(); ++i) elements.push_back({elements.size(), degree});
    }
    return GradedBasis(dims.rank(), std::move(elements));
}

namespace {

// Depth-first enumeration of words of the given length whose total degree
// stays within the truncation.
class WordEnumerator {
public:
    WordEnumerator(const GradedBasis& basis, std::size_t length, const std::vector<int>& truncation,
                   std::uint64_t budget)
        : basis_(basis), length_(length), truncation_(truncation), budget_(budget),
          word_(length), degree_(truncation.size(), 0) {
        if (truncation.size() != basis.rank()) throw std::invalid_argument("oracle: truncation rank mismatch");
    }

    void run(const std::function<void(const std::vector<std::size_t>&, const IntVector&)>& visit) {
        visit_ = &visit;
        descend(0);
    }

private:
    void descend(std::size_t pos) {
        if (pos == length_) {
            if (++count_ > budget_) {
                throw Error(ErrorKind::BudgetExceeded,
                            "oracle enumeration exceeded " + std::to_string(budget_) + " words",
                            "raise \"budget\" or lower the truncation");
            }
            (*visit_)(word_, degree_);
            return;
        }
        for (const auto& el : basis_.elements()) {
            bool fits = true;
            for (std::size_t i = 0; i < degree_.size(); ++i) {
                if (degree_[i] + el.degree[i] > truncation_[i]) fits = false;
            }
            if (!fits) continue;
            for (std::size_t i = 0; i < degree_.size(); ++i) degree_[i] += el.degree[i];
            word_[pos] = el.id;
            descend(pos + 1);
            for (std::size_t i = 0; i < degree_.size(); ++i) degree_[i] -= el.degree[i];
        }
    }

    const GradedBasis& basis_;
    std::size_t length_;
    const std::vector<int>& truncation_;
    std::uint64_t budget_;
    std::uint64_t count_ = 0;
    std::vector<std::size_t> word_;
    IntVector degree_;
    const std::function<void(const std::vector<std::size_t>&, const IntVector&)>* visit_ = nullptr;
};

}  // namespace

std::vector<GradedSeries> brute_eigenspace_dims(const GradedBasis& basis, std::int64_t r,
                                                const std::vector<int>& truncation, std::uint64_t budget) {
    if (r < 1) throw std::invalid_argument("brute_eigenspace_dims: r must be >= 1");
    std::vector<GradedSeries> out(static_cast<std::size_t>(r), GradedSeries(truncation));
    const auto len = static_cast<std::size_t>(r);
    std::vector<std::size_t> rotated(len);

    WordEnumerator(basis, len, truncation, budget).run([&](const std::vector<std::size_t>& w, const IntVector& deg) {
        std::int64_t period = r;
        for (std::size_t s = 1; s < len; ++s) {
            for (std::size_t p = 0; p < len; ++p) rotated[p] = w[(p + s) % len];
            if (rotated < w) return;  // not the orbit's least rotation
            if (rotated == w) {
                period = static_cast<std::int64_t>(s);
                break;
            }
        }
        const std::int64_t step = r / period;
        for (std::int64_t k = 0; k < r; k += step) out[static_cast<std::size_t>(k)].add(deg, 1);
    });
    return out;
}

ComponentChars brute_multi_eigenspace_dims(const GradedBasis& basis, const IntVector& orders,
                                           const std::vector<int>& truncation, std::uint64_t budget) {
    const SupportLattice group(orders);
    const auto elements = group.elements();
    const std::size_t size = elements.size();
    const std::int64_t R = group.index();

    // Positions are group elements in lexicographic order; shift[g][p] = p - g.
    auto index_of = [&](const IntVector& k) {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < k.size(); ++i) idx = idx * static_cast<std::size_t>(orders[i]) + static_cast<std::size_t>(k[i]);
        return idx;
    };
    std::vector<std::vector<std::size_t>> shift(size, std::vector<std::size_t>(size));
    for (std::size_t g = 0; g < size; ++g) {
        for (std::size_t p = 0; p < size; ++p) {
            IntVector q = elements[p];
            for (std::size_t i = 0; i < q.size(); ++i) q[i] -= elements[g][i];
            shift[g][p] = index_of(group.reduce(q));
        }
    }

    ComponentChars out;
    for (const auto& k : elements) out.emplace(k, GradedSeries(truncation));

    std::vector<std::size_t> moved(size);
    std::vector<std::size_t> stabilizer;
    WordEnumerator(basis, size, truncation, budget).run([&](const std::vector<std::size_t>& w, const IntVector& deg) {
        stabilizer.clear();
        for (std::size_t g = 1; g < size; ++g) {
            for (std::size_t p = 0; p < size; ++p) moved[p] = w[shift[g][p]];
            if (moved < w) return;
            if (moved == w) stabilizer.push_back(g);
        }
        for (const auto& k : elements) {
            bool trivial = true;
            for (std::size_t h : stabilizer) {
                // chi_k(h) = exp(2 pi i sum_i k_i h_i / r_i)
                std::int64_t phase = 0;
                for (std::size_t i = 0; i < k.size(); ++i) phase += k[i] * elements[h][i] * (R / orders[i]);
                if (phase % R != 0) {
                    trivial = false;
                    break;
                }
            }
            if (trivial) out.at(k).add(deg, 1);
        }
    });
    return out;
}

Verdict brute_vanishing_check(const ExpPoly& f, const SupportLattice& lattice, std::int64_t box) {
    std::optional<IntVector> witness;
    for_each_point_outward(f.arity(), box, [&](const IntVector& m) {
        if (witness || lattice.contains(m)) return;
        if (!f.eval(m).is_zero()) witness = m;
    });
    if (witness) return Verdict::fail(*witness, "nonzero value off the support lattice", box);
    return Verdict{true, {}, {}, box};
}

}  // namespace loopchar::oracle
