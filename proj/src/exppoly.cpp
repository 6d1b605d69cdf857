#include "loopchar/exppoly.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <tuple>

#include "loopchar/error.hpp"
#include "loopchar/numtheory.hpp"

namespace loopchar {

// ---------------------------------------------------------------------------
// ExpTerm / ExpPoly

int ExpTerm::degree(std::size_t i) const {
    int d = -1;
    for (const auto& [mono, c] : poly) d = std::max(d, mono.at(i));
    return d;
}

CycScalar ExpTerm::poly_value(std::span<const std::int64_t> m) const {
    CycScalar sum(base.front().field());
    for (const auto& [mono, c] : poly) {
        mpz_class w = 1;
        for (std::size_t i = 0; i < mono.size(); ++i) {
            for (int e = 0; e < mono[i]; ++e) w *= m[i];
        }
        if (w == 0) continue;
        sum += c * w;
    }
    return sum;
}

int compare_bases(const std::vector<CycScalar>& a, const std::vector<CycScalar>& b) {
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
        if (const int c = a[i].compare(b[i]); c != 0) return c;
    }
    if (a.size() == b.size()) return 0;
    return a.size() < b.size() ? -1 : 1;
}

ExpPoly::ExpPoly(FieldPtr field, std::size_t arity) : field_(std::move(field)), arity_(arity) {}

ExpPoly ExpPoly::normalize(FieldPtr field, std::size_t arity, std::vector<ExpTerm> raw) {
    ExpPoly out(field, arity);
    for (auto& term : raw) {
        if (term.base.size() != arity) {
            throw Error(ErrorKind::ParseError, "term base has " + std::to_string(term.base.size()) +
                                                   " components, expected " + std::to_string(arity));
        }
        for (const auto& a : term.base) {
            if (a.is_zero()) throw Error(ErrorKind::ParseError, "term base components must be nonzero");
        }
        for (const auto& [mono, c] : term.poly) {
            if (mono.size() != arity) {
                throw Error(ErrorKind::ParseError, "monomial exponent vector has wrong length");
            }
            if (std::any_of(mono.begin(), mono.end(), [](int e) { return e < 0; })) {
                throw Error(ErrorKind::ParseError, "monomial exponents must be non-negative");
            }
        }
    }
    std::sort(raw.begin(), raw.end(),
              [](const ExpTerm& a, const ExpTerm& b) { return compare_bases(a.base, b.base) < 0; });
    for (auto& term : raw) {
        if (!out.terms_.empty() && compare_bases(out.terms_.back().base, term.base) == 0) {
            auto& poly = out.terms_.back().poly;
            for (auto& [mono, c] : term.poly) {
                auto [it, inserted] = poly.try_emplace(mono, c);
                if (!inserted) it->second += c;
            }
        } else {
            out.terms_.push_back(std::move(term));
        }
    }
    for (auto& term : out.terms_) std::erase_if(term.poly, [](const auto& kv) { return kv.second.is_zero(); });
    std::erase_if(out.terms_, [](const ExpTerm& t) { return t.poly.empty(); });
    return out;
}

CycScalar ExpPoly::eval(std::span<const std::int64_t> m) const {
    if (m.size() != arity_) throw std::invalid_argument("ExpPoly::eval: point has wrong dimension");
    CycScalar sum(field_);
    for (const auto& term : terms_) {
        CycScalar v = term.poly_value(m);
        if (v.is_zero()) continue;
        for (std::size_t i = 0; i < arity_; ++i) v *= term.base[i].pow(m[i]);
        sum += v;
    }
    return sum;
}

ExpPoly ExpPoly::embed(const FieldPtr& larger) const {
    std::vector<ExpTerm> terms;
    for (const auto& t : terms_) {
        ExpTerm e;
        for (const auto& a : t.base) e.base.push_back(a.embed(larger));
        for (const auto& [mono, c] : t.poly) e.poly.emplace(mono, c.embed(larger));
        terms.push_back(std::move(e));
    }
    return normalize(larger, arity_, std::move(terms));
}

ExpPoly operator+(const ExpPoly& a, const ExpPoly& b) {
    std::vector<ExpTerm> all = a.terms_;
    all.insert(all.end(), b.terms_.begin(), b.terms_.end());
    return ExpPoly::normalize(a.field_, a.arity_, std::move(all));
}

bool operator==(const ExpPoly& a, const ExpPoly& b) {
    if (a.arity_ != b.arity_ || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
        if (compare_bases(a.terms_[i].base, b.terms_[i].base) != 0) return false;
        if (a.terms_[i].poly != b.terms_[i].poly) return false;
    }
    return true;
}

std::string ExpPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    for (std::size_t t = 0; t < terms_.size(); ++t) {
        if (t > 0) out << " + ";
        out << "[";
        bool first = true;
        for (const auto& [mono, c] : terms_[t].poly) {
            if (!first) out << " + ";
            first = false;
            out << "(" << c.to_string() << ")";
            for (std::size_t i = 0; i < mono.size(); ++i) {
                if (mono[i] > 0) out << "*m" << i + 1 << (mono[i] > 1 ? "^" + std::to_string(mono[i]) : "");
            }
        }
        out << "]";
        for (std::size_t i = 0; i < arity_; ++i) out << "*(" << terms_[t].base[i].to_string() << ")^m" << i + 1;
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// PsiSpec

void PsiSpec::validate() const {
    if (n < 1) throw Error(ErrorKind::ParseError, "n must be >= 1");
    if (generators.empty()) throw Error(ErrorKind::ParseError, "no generators given");
    for (const auto& g : generators) {
        if (g.function.arity() != n) {
            throw Error(ErrorKind::ParseError, "generator '" + g.label + "' has arity " +
                                                   std::to_string(g.function.arity()) + ", expected " + std::to_string(n));
        }
    }
    if (is_zero()) {
        throw Error(ErrorKind::ParseError,
                    "psi is identically zero: the function psi is trivial and V(psi) is one dimensional",
                    "give at least one generator a nonzero exp-polynomial");
    }
}

bool PsiSpec::is_zero() const {
    return std::all_of(generators.begin(), generators.end(), [](const Generator& g) { return g.function.is_zero(); });
}

PsiSpec PsiSpec::embed(const FieldPtr& larger) const {
    PsiSpec out{larger, n, {}, extra_weights};
    for (const auto& g : generators) out.generators.push_back({g.label, g.function.embed(larger)});
    return out;
}

bool operator==(const PsiSpec& a, const PsiSpec& b) {
    if (a.n != b.n || a.generators.size() != b.generators.size()) return false;
    for (std::size_t i = 0; i < a.generators.size(); ++i) {
        if (a.generators[i].label != b.generators[i].label) return false;
        if (!(a.generators[i].function == b.generators[i].function)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// SupportLattice

SupportLattice::SupportLattice(IntVector orders) : orders_(std::move(orders)) {
    for (std::int64_t r : orders_) {
        if (r < 1) throw std::invalid_argument("SupportLattice: orders must be >= 1");
        index_ *= r;
    }
}

std::vector<IntVector> SupportLattice::elements() const {
    std::vector<IntVector> out;
    out.reserve(static_cast<std::size_t>(index_));
    IntVector lo(orders_.size(), 0);
    IntVector hi;
    for (std::int64_t r : orders_) hi.push_back(r - 1);
    for_each_point(lo, hi, [&](const IntVector& k) { out.push_back(k); });
    return out;
}

IntVector SupportLattice::reduce(IntVector k) const {
    for (std::size_t i = 0; i < k.size(); ++i) k[i] = numtheory::mod(k[i], orders_.at(i));
    return k;
}

bool SupportLattice::contains(std::span<const std::int64_t> m) const {
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (numtheory::mod(m[i], orders_[i]) != 0) return false;
    }
    return true;
}

void for_each_point(const IntVector& lo, const IntVector& hi, const std::function<void(const IntVector&)>& fn) {
    for (std::size_t i = 0; i < lo.size(); ++i) {
        if (lo[i] > hi[i]) return;
    }
    IntVector m = lo;
    for (;;) {
        fn(m);
        std::size_t i = m.size();
        while (i > 0) {
            --i;
            if (m[i] < hi[i]) {
                ++m[i];
                break;
            }
            m[i] = lo[i];
            if (i == 0) return;
        }
        if (m.empty()) return;
    }
}

void for_each_point_outward(std::size_t n, std::int64_t box, const std::function<void(const IntVector&)>& fn) {
    std::vector<IntVector> points;
    for_each_point(IntVector(n, -box), IntVector(n, box), [&](const IntVector& m) { points.push_back(m); });
    auto key = [](const IntVector& m) {
        std::int64_t linf = 0, l1 = 0;
        IntVector coords;
        for (auto x : m) {
            linf = std::max(linf, std::abs(x));
            l1 += std::abs(x);
            coords.push_back(x > 0 ? 2 * x - 1 : -2 * x);
        }
        return std::make_tuple(linf, l1, coords);
    };
    std::sort(points.begin(), points.end(), [&](const IntVector& a, const IntVector& b) { return key(a) < key(b); });
    for (const auto& m : points) fn(m);
}

// ---------------------------------------------------------------------------
// Lattice detection

namespace {

const ExpTerm* find_term(const ExpPoly& f, const std::vector<CycScalar>& base) {
    const auto& terms = f.terms();
    auto it = std::lower_bound(terms.begin(), terms.end(), base,
                               [](const ExpTerm& t, const std::vector<CycScalar>& b) { return compare_bases(t.base, b) < 0; });
    if (it != terms.end() && compare_bases(it->base, base) == 0) return &*it;
    return nullptr;
}

// Is every term of f matched by a term with base multiplied componentwise by
// `factor` and the same polynomial part?
bool invariant_under(const ExpPoly& f, const std::vector<CycScalar>& factor) {
    for (const auto& term : f.terms()) {
        std::vector<CycScalar> moved = term.base;
        for (std::size_t i = 0; i < moved.size(); ++i) moved[i] *= factor[i];
        const ExpTerm* match = find_term(f, moved);
        if (match == nullptr || match->poly != term.poly) return false;
    }
    return true;
}

bool all_invariant(const PsiSpec& spec, const std::vector<CycScalar>& factor) {
    return std::all_of(spec.generators.begin(), spec.generators.end(),
                       [&](const Generator& g) { return invariant_under(g.function, factor); });
}

}  // namespace

LatticeDetection detect_lattice(const PsiSpec& spec) {
    LatticeDetection out;
    out.required_conductor = spec.field->conductor();
    const CycScalar one(spec.field, 1);

    for (std::size_t i = 0; i < spec.n; ++i) {
        // Candidate twists: ratios of i-th components that are roots of unity.
        std::vector<std::pair<std::int64_t, CycScalar>> candidates;
        for (const auto& g : spec.generators) {
            const auto& terms = g.function.terms();
            for (std::size_t a = 0; a < terms.size(); ++a) {
                for (std::size_t b = 0; b < terms.size(); ++b) {
                    if (a == b) continue;
                    const CycScalar ratio = terms[b].base[i] / terms[a].base[i];
                    const auto order = ratio.multiplicative_order();
                    if (!order || *order == 1) continue;
                    const bool seen = std::any_of(candidates.begin(), candidates.end(),
                                                  [&](const auto& c) { return c.first == *order; });
                    if (!seen) candidates.emplace_back(*order, ratio);
                }
            }
        }
        std::sort(candidates.begin(), candidates.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
        std::int64_t r = 1;
        for (const auto& [order, ratio] : candidates) {
            std::vector<CycScalar> factor(spec.n, one);
            factor[i] = ratio;
            if (all_invariant(spec, factor)) {
                r = order;
                break;
            }
        }
        out.orders.push_back(r);
        out.required_conductor = numtheory::lcm(out.required_conductor, r);
    }

    // Joint twists outside the diagonal group.
    for (const auto& g : spec.generators) {
        const auto& terms = g.function.terms();
        for (std::size_t a = 0; a < terms.size() && !out.non_diagonal_symmetry; ++a) {
            for (std::size_t b = 0; b < terms.size(); ++b) {
                if (a == b) continue;
                std::vector<CycScalar> factor;
                bool roots = true;
                bool outside = false;
                for (std::size_t i = 0; i < spec.n && roots; ++i) {
                    factor.push_back(terms[b].base[i] / terms[a].base[i]);
                    const auto order = factor.back().multiplicative_order();
                    roots = order.has_value();
                    if (roots && out.orders[i] % *order != 0) outside = true;
                }
                if (roots && outside && all_invariant(spec, factor)) {
                    out.non_diagonal_symmetry = true;
                    break;
                }
            }
        }
    }
    return out;
}

SupportLattice support_lattice(const PsiSpec& spec) {
    const LatticeDetection det = detect_lattice(spec);
    if (det.required_conductor != spec.field->conductor()) {
        std::ostringstream msg;
        msg << "detected support lattice r = (";
        for (std::size_t i = 0; i < det.orders.size(); ++i) msg << (i ? "," : "") << det.orders[i];
        msg << ") needs roots of unity outside Q(zeta_" << spec.field->conductor() << ")";
        Error err(ErrorKind::ConductorTooSmall, msg.str(),
                  "use conductor " + std::to_string(det.required_conductor) + " (or pass --extend-conductor)");
        err.suggested_conductor = det.required_conductor;
        throw err;
    }
    return SupportLattice(det.orders);
}

// ---------------------------------------------------------------------------
// Phi extraction and twisting

namespace {

std::vector<CycScalar> twist_base(const std::vector<CycScalar>& base, const SupportLattice& lattice,
                                  std::span<const std::int64_t> k) {
    std::vector<CycScalar> out = base;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (lattice.orders()[i] == 1) continue;
        out[i] *= CycScalar::root_of_unity(base[i].field(), lattice.orders()[i], k[i]);
    }
    return out;
}

}  // namespace

PsiSpec extract_phi(const PsiSpec& spec, const SupportLattice& lattice) {
    PsiSpec phi{spec.field, spec.n, {}, spec.extra_weights};
    const auto group = lattice.elements();
    for (const auto& g : spec.generators) {
        const auto& terms = g.function.terms();
        std::vector<bool> used(terms.size(), false);
        std::vector<ExpTerm> kept;
        // Terms are sorted by key, so the first unused term is its orbit's minimum.
        for (std::size_t t = 0; t < terms.size(); ++t) {
            if (used[t]) continue;
            for (const auto& k : group) {
                const auto moved = twist_base(terms[t].base, lattice, k);
                const ExpTerm* match = find_term(g.function, moved);
                if (match == nullptr || match->poly != terms[t].poly) {
                    throw Error(ErrorKind::OrbitInconsistency,
                                "generator '" + g.label + "': twist orbit of term " + std::to_string(t) +
                                    " is incomplete or has mismatched polynomial parts",
                                "the input is not a sum of twists over the detected lattice");
                }
                used[static_cast<std::size_t>(match - terms.data())] = true;
            }
            kept.push_back(terms[t]);
        }
        phi.generators.push_back({g.label, ExpPoly::normalize(spec.field, spec.n, std::move(kept))});
    }
    return phi;
}

ExpPoly twist(const ExpPoly& f, const SupportLattice& lattice, std::span<const std::int64_t> k) {
    std::vector<ExpTerm> terms = f.terms();
    for (auto& t : terms) t.base = twist_base(t.base, lattice, k);
    return ExpPoly::normalize(f.field(), f.arity(), std::move(terms));
}

PsiSpec twist(const PsiSpec& phi, const SupportLattice& lattice, std::span<const std::int64_t> k) {
    PsiSpec out{phi.field, phi.n, {}, phi.extra_weights};
    for (const auto& g : phi.generators) out.generators.push_back({g.label, twist(g.function, lattice, k)});
    return out;
}

// ---------------------------------------------------------------------------
// Sampling

std::int64_t determining_box(const std::vector<const ExpPoly*>& functions) {
    std::int64_t box = 0;
    if (functions.empty()) return box;
    const std::size_t n = functions.front()->arity();
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::pair<CycScalar, int>> roots;
        for (const ExpPoly* f : functions) {
            for (const auto& t : f->terms()) {
                auto it = std::find_if(roots.begin(), roots.end(), [&](const auto& r) { return r.first == t.base[i]; });
                if (it == roots.end()) {
                    roots.emplace_back(t.base[i], t.degree(i));
                } else {
                    it->second = std::max(it->second, t.degree(i));
                }
            }
        }
        std::int64_t dim = 0;
        for (const auto& r : roots) dim += r.second + 1;
        box = std::max(box, dim / 2);
    }
    return box;
}

ValueGrid::ValueGrid(const ExpPoly& f, IntVector lo, IntVector hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    std::size_t size = 1;
    for (std::size_t i = 0; i < lo_.size(); ++i) size *= static_cast<std::size_t>(hi_[i] - lo_[i] + 1);
    values_.assign(size, CycScalar(f.field()));

    for (const auto& term : f.terms()) {
        // powers[i][m - lo_i] = a_i^m
        std::vector<std::vector<CycScalar>> powers(lo_.size());
        for (std::size_t i = 0; i < lo_.size(); ++i) {
            CycScalar p = term.base[i].pow(lo_[i]);
            for (std::int64_t m = lo_[i]; m <= hi_[i]; ++m) {
                powers[i].push_back(p);
                if (m < hi_[i]) p *= term.base[i];
            }
        }
        const bool constant_poly = term.poly.size() == 1 && std::all_of(term.poly.begin()->first.begin(),
                                                                          term.poly.begin()->first.end(),
                                                                          [](int e) { return e == 0; });
        std::size_t idx = 0;
        for_each_point(lo_, hi_, [&](const IntVector& m) {
            CycScalar v = constant_poly ? term.poly.begin()->second : term.poly_value(m);
            if (!v.is_zero()) {
                for (std::size_t i = 0; i < m.size(); ++i) v *= powers[i][static_cast<std::size_t>(m[i] - lo_[i])];
                values_[idx] += v;
            }
            ++idx;
        });
    }
}

std::size_t ValueGrid::offset(std::span<const std::int64_t> m) const {
    std::size_t off = 0;
    for (std::size_t i = 0; i < lo_.size(); ++i) {
        if (m[i] < lo_[i] || m[i] > hi_[i]) throw std::out_of_range("ValueGrid: point outside grid");
        off = off * static_cast<std::size_t>(hi_[i] - lo_[i] + 1) + static_cast<std::size_t>(m[i] - lo_[i]);
    }
    return off;
}

const CycScalar& ValueGrid::at(std::span<const std::int64_t> m) const { return values_[offset(m)]; }

Verdict reconstruct_check(const PsiSpec& spec, const PsiSpec& phi, const SupportLattice& lattice, std::int64_t box) {
    if (spec.generators.size() != phi.generators.size()) {
        return Verdict::fail({}, "generator count differs between psi and phi");
    }
    const auto group = lattice.elements();
    Verdict termwise;
    std::vector<ExpPoly> rebuilt;
    for (std::size_t h = 0; h < spec.generators.size(); ++h) {
        ExpPoly sum(spec.field, spec.n);
        for (const auto& k : group) sum = sum + twist(phi.generators[h].function, lattice, k);
        if (!(sum == spec.generators[h].function) && termwise.passed) {
            termwise = Verdict::fail({}, "generator '" + spec.generators[h].label +
                                             "': sum of twists differs termwise from psi");
        }
        rebuilt.push_back(std::move(sum));
    }

    std::int64_t eff = box;
    for (std::size_t h = 0; h < spec.generators.size(); ++h) {
        eff = std::max(eff, determining_box({&spec.generators[h].function, &rebuilt[h]}));
    }
    const IntVector lo(spec.n, -eff);
    const IntVector hi(spec.n, eff);
    for (std::size_t h = 0; h < spec.generators.size(); ++h) {
        const ValueGrid target(spec.generators[h].function, lo, hi);
        std::vector<ValueGrid> parts;
        for (const auto& k : group) parts.emplace_back(twist(phi.generators[h].function, lattice, k), lo, hi);
        std::optional<IntVector> witness;
        for_each_point_outward(spec.n, eff, [&](const IntVector& m) {
            if (witness) return;
            CycScalar sum(spec.field);
            for (const auto& p : parts) sum += p.at(m);
            if (!(sum == target.at(m))) witness = m;
        });
        if (witness) {
            return Verdict::fail(*witness, "generator '" + spec.generators[h].label +
                                               "': sum of twists of phi disagrees with psi at the witness point", eff);
        }
    }
    termwise.box = eff;
    return termwise;
}

// ---------------------------------------------------------------------------
// Annihilators

bool AnnihilatorData::factored() const {
    return !variables.empty() && std::all_of(variables.begin(), variables.end(),
                                             [](const VariableAnnihilator& v) { return !v.factors.empty(); });
}

AnnihilatorData annihilator_polys(const PsiSpec& spec) {
    AnnihilatorData out;
    for (std::size_t i = 0; i < spec.n; ++i) {
        std::vector<RootMultiplicity> roots;
        for (const auto& g : spec.generators) {
            for (const auto& t : g.function.terms()) {
                const int mult = t.degree(i) + 1;
                auto it = std::find_if(roots.begin(), roots.end(), [&](const auto& r) { return r.root == t.base[i]; });
                if (it == roots.end()) {
                    roots.push_back({t.base[i], mult});
                } else {
                    it->multiplicity = std::max(it->multiplicity, mult);
                }
            }
        }
        std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) { return a.root.compare(b.root) < 0; });
        VariableAnnihilator var{UPoly::from_roots(spec.field, roots), std::move(roots), 1, {}, {}};
        out.variables.push_back(std::move(var));
    }
    return out;
}

std::vector<ValueGrid> relation_grids(const PsiSpec& spec, std::int64_t box, int max_degree) {
    std::vector<ValueGrid> grids;
    const IntVector lo(spec.n, -box);
    const IntVector hi(spec.n, box + std::max(max_degree, 0));
    for (const auto& g : spec.generators) grids.emplace_back(g.function, lo, hi);
    return grids;
}

Verdict annihilates(const std::vector<ValueGrid>& grids, std::size_t variable, const UPoly& poly, std::int64_t box) {
    for (std::size_t h = 0; h < grids.size(); ++h) {
        const ValueGrid& grid = grids[h];
        std::optional<IntVector> witness;
        for_each_point_outward(grid.lo().size(), box, [&](const IntVector& m) {
            if (witness) return;
            CycScalar sum(poly.field());
            IntVector shifted = m;
            for (std::size_t j = 0; j < poly.coeffs().size(); ++j) {
                shifted[variable] = m[variable] + static_cast<std::int64_t>(j);
                if (!poly.coeffs()[j].is_zero()) sum += poly.coeffs()[j] * grid.at(shifted);
            }
            if (!sum.is_zero()) witness = m;
        });
        if (witness) {
            return Verdict::fail(*witness, "P_" + std::to_string(variable + 1) + " does not annihilate generator #" +
                                               std::to_string(h + 1) + " at the witness point", box);
        }
    }
    return Verdict{true, {}, {}, box};
}

Verdict relation_R_check(const PsiSpec& spec, const AnnihilatorData& ann, std::int64_t box) {
    std::vector<const ExpPoly*> fs;
    for (const auto& g : spec.generators) fs.push_back(&g.function);
    const std::int64_t eff = std::max(box, determining_box(fs));
    int max_degree = 0;
    for (const auto& v : ann.variables) max_degree = std::max(max_degree, v.poly.degree());
    const auto grids = relation_grids(spec, eff, max_degree);
    for (std::size_t i = 0; i < ann.variables.size(); ++i) {
        Verdict v = annihilates(grids, i, ann.variables[i].poly, eff);
        if (!v) return v;
    }
    return Verdict{true, {}, {}, eff};
}

AnnihilatorData orbit_factorization(AnnihilatorData ann, const SupportLattice& lattice) {
    for (std::size_t i = 0; i < ann.variables.size(); ++i) {
        auto& var = ann.variables[i];
        const std::int64_t r = lattice.orders().at(i);
        const FieldPtr& field = var.poly.field();
        var.orbit_size = r;
        var.orbit_representatives.clear();
        var.factors.clear();

        std::vector<bool> used(var.roots.size(), false);
        for (std::size_t a = 0; a < var.roots.size(); ++a) {
            if (used[a]) continue;
            for (std::int64_t ell = 0; ell < r; ++ell) {
                const CycScalar target = CycScalar::root_of_unity(field, r, ell) * var.roots[a].root;
                auto it = std::find_if(var.roots.begin(), var.roots.end(), [&](const auto& x) { return x.root == target; });
                if (it == var.roots.end() || it->multiplicity != var.roots[a].multiplicity) {
                    throw Error(ErrorKind::OrbitInconsistency,
                                "variable " + std::to_string(i + 1) + ": root orbit of " + var.roots[a].root.to_string() +
                                    " is incomplete or has unequal multiplicities");
                }
                used[static_cast<std::size_t>(it - var.roots.begin())] = true;
            }
            var.orbit_representatives.push_back(var.roots[a]);
        }

        UPoly product(field, {CycScalar(field, 1)});
        for (std::int64_t ell = 1; ell <= r; ++ell) {
            const CycScalar xi = CycScalar::root_of_unity(field, r, ell);
            std::vector<RootMultiplicity> shifted;
            for (const auto& rep : var.orbit_representatives) shifted.push_back({xi * rep.root, rep.multiplicity});
            var.factors.push_back(UPoly::from_roots(field, shifted));
            product = product * var.factors.back();
        }
        if (!(product == var.poly)) {
            throw Error(ErrorKind::OrbitInconsistency,
                        "variable " + std::to_string(i + 1) + ": orbit factors do not multiply back to P_i");
        }
    }
    return ann;
}

std::vector<UPoly> ideal_generators(const AnnihilatorData& ann, std::span<const std::int64_t> index) {
    if (!ann.factored()) throw std::logic_error("ideal_generators: run orbit_factorization first");
    std::vector<UPoly> out;
    for (std::size_t i = 0; i < ann.variables.size(); ++i) {
        const auto& var = ann.variables[i];
        std::int64_t ell = numtheory::mod(index[i], var.orbit_size);
        if (ell == 0) ell = var.orbit_size;
        out.push_back(var.factors[static_cast<std::size_t>(ell - 1)]);
    }
    return out;
}

bool ideal_coprimality(const AnnihilatorData& ann, std::span<const std::int64_t> j, std::span<const std::int64_t> j_prime) {
    if (!ann.factored()) throw std::logic_error("ideal_coprimality: run orbit_factorization first");
    bool same = true;
    for (std::size_t i = 0; i < ann.variables.size(); ++i) {
        const std::int64_t r = ann.variables[i].orbit_size;
        if (numtheory::mod(j[i], r) != numtheory::mod(j_prime[i], r)) same = false;
    }
    if (same) return false;
    for (std::size_t i = 0; i < ann.variables.size(); ++i) {
        const auto& var = ann.variables[i];
        const std::int64_t r = var.orbit_size;
        const std::int64_t ell = numtheory::mod(j[i], r);
        const std::int64_t ell_prime = numtheory::mod(j_prime[i], r);
        if (ell == ell_prime) continue;
        // P_{i,ell} has roots xi^ell a_ij; coprime iff P_{i,ell'} vanishes at none of them.
        const UPoly& other = var.factors[static_cast<std::size_t>((ell_prime == 0 ? r : ell_prime) - 1)];
        const CycScalar xi = CycScalar::root_of_unity(var.poly.field(), r, ell);
        const bool disjoint = std::none_of(var.orbit_representatives.begin(), var.orbit_representatives.end(),
                                           [&](const RootMultiplicity& rep) { return other.eval(xi * rep.root).is_zero(); });
        if (disjoint) return true;
    }
    return false;
}

bool crt_dimension_identity(const AnnihilatorData& ann) {
    for (const auto& var : ann.variables) {
        int total = 0;
        for (const auto& f : var.factors) total += f.degree();
        if (total != var.poly.degree()) return false;
    }
    return true;
}

}  // namespace loopchar
