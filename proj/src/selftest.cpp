#include "loopchar/selftest.hpp"

#include <chrono>
#include <numeric>
#include <random>
#include <sstream>

#include "loopchar/charseries.hpp"
#include "loopchar/error.hpp"
#include "loopchar/exppoly.hpp"
#include "loopchar/numtheory.hpp"
#include "loopchar/oracle.hpp"

namespace loopchar::selftest {

namespace {

using Clock = std::chrono::steady_clock;

BatteryResult named(std::string name) {
    BatteryResult r;
    r.name = std::move(name);
    return r;
}

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string tuple(const std::vector<int>& v) {
    std::ostringstream out;
    out << '(';
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
    out << ')';
    return out.str();
}

std::string tuple(const IntVector& v) { return tuple(std::vector<int>(v.begin(), v.end())); }

// Records the first failure only; later ones would mostly repeat it.
void fail(BatteryResult& res, const std::string& what) {
    if (res.passed) res.detail = what;
    res.passed = false;
}

using Table = std::vector<std::pair<std::vector<int>, mpq_class>>;

GradedSeries series_of(const Table& table, const std::vector<int>& truncation) {
    return GradedSeries::from_terms(truncation, table);
}

// Units placed at random degrees in [0, max_degree]^d.
Table random_table(std::mt19937_64& rng, std::size_t d, int total, int max_degree) {
    std::map<std::vector<int>, mpq_class> counts;
    for (int u = 0; u < total; ++u) {
        std::vector<int> deg(d);
        for (auto& x : deg) x = static_cast<int>(rng() % static_cast<std::uint64_t>(max_degree + 1));
        counts[deg] += 1;
    }
    return {counts.begin(), counts.end()};
}

Table table_1d(const std::vector<int>& dims) {
    Table t;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (dims[i] > 0) t.emplace_back(std::vector<int>{static_cast<int>(i)}, mpq_class(dims[i]));
    }
    return t;
}

// Every dims vector over degrees 0..slots-1 with 1 <= total <= max_total.
void enumerate_1d(std::size_t slots, int max_total, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (cur.size() == slots) {
        const int total = std::accumulate(cur.begin(), cur.end(), 0);
        if (total >= 1) out.push_back(cur);
        return;
    }
    const int used = std::accumulate(cur.begin(), cur.end(), 0);
    for (int c = 0; used + c <= max_total; ++c) {
        cur.push_back(c);
        enumerate_1d(slots, max_total, cur, out);
        cur.pop_back();
    }
}

struct SingleStage {
    BatteryResult oracle = named("single_stage_oracle");
    BatteryResult partition = named("single_stage_partition");

    void run(const GradedSeries& p, std::int64_t r, const std::string& label) {
        ++oracle.instances;
        ++partition.instances;
        const auto basis = oracle::GradedBasis::from_series(p);
        const auto brute = oracle::brute_eigenspace_dims(basis, r, p.truncation());
        GradedSeries sum(p.truncation());
        for (std::int64_t k = 0; k < r; ++k) {
            GradedSeries formula(p.truncation());
            try {
                formula = eigenspace_char(p, r, k);
            } catch (const Error& e) {
                fail(oracle, label + " r=" + std::to_string(r) + " k=" + std::to_string(k) + ": " + e.what());
                return;
            }
            if (!(formula == brute[static_cast<std::size_t>(k)])) {
                fail(oracle, label + " r=" + std::to_string(r) + " k=" + std::to_string(k) + ": formula " +
                                 formula.to_string() + " vs count " + brute[static_cast<std::size_t>(k)].to_string());
            }
            sum += formula;
        }
        if (!(sum == p.pow(r))) {
            fail(partition, label + " r=" + std::to_string(r) + ": sum " + sum.to_string() + " vs P^r " + p.pow(r).to_string());
        }
    }
};

}  // namespace

std::vector<BatteryResult> check_single_stage(const BatteryOptions& options) {
    const auto t0 = Clock::now();
    SingleStage st;
    std::mt19937_64 rng(options.seed);

    for (std::size_t n = 0; n < options.single_stage_tables; ++n) {
        const std::size_t d = 1 + rng() % 2;
        const int total = 1 + static_cast<int>(rng() % 6);
        const Table table = random_table(rng, d, total, 3);
        std::vector<int> trunc(d);
        for (auto& t : trunc) t = static_cast<int>(rng() % 7);
        const GradedSeries p = series_of(table, trunc);
        if (p.is_zero()) continue;
        std::ostringstream label;
        label << "random table #" << n << " trunc " << tuple(trunc) << " P=" << p.to_string();
        for (std::int64_t r = 1; r <= 6; ++r) st.run(p, r, label.str());
    }
    st.oracle.randomized = st.partition.randomized = st.oracle.instances;

    // Fixed small tables, every d = 1 table of total <= 6 on degrees 0..3 and
    // every d = 2 table of total <= 3 on degrees {0,1}^2.
    std::vector<std::vector<int>> tables = {{1, 1}, {2, 1}, {1, 1, 1}};
    std::vector<int> cur;
    enumerate_1d(4, 6, cur, tables);
    for (const auto& dims : tables) {
        for (int t = 0; t <= 6; ++t) {
            const GradedSeries p = series_of(table_1d(dims), {t});
            if (p.is_zero()) continue;
            for (std::int64_t r = 1; r <= 6; ++r) st.run(p, r, "dims " + tuple(dims) + " trunc " + std::to_string(t));
        }
    }
    std::vector<std::vector<int>> tables_2d;
    cur.clear();
    enumerate_1d(4, 3, cur, tables_2d);
    const std::vector<std::vector<int>> corners = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    for (const auto& dims : tables_2d) {
        Table table;
        for (std::size_t i = 0; i < dims.size(); ++i) {
            if (dims[i] > 0) table.emplace_back(corners[i], mpq_class(dims[i]));
        }
        for (int t1 = 0; t1 <= 6; t1 += 2) {
            for (int t2 = 1; t2 <= 6; t2 += 2) {
                const GradedSeries p = series_of(table, {t1, t2});
                if (p.is_zero()) continue;
                for (std::int64_t r = 1; r <= 6; ++r) {
                    st.run(p, r, "2-graded dims " + tuple(dims) + " trunc (" + std::to_string(t1) + "," + std::to_string(t2) + ")");
                }
            }
        }
    }

    st.oracle.seconds = st.partition.seconds = since(t0);
    return {st.oracle, st.partition};
}

BatteryResult check_nested(const BatteryOptions& options) {
    const auto t0 = Clock::now();
    BatteryResult res = named("nested_oracle");
    std::mt19937_64 rng(options.seed ^ 0x5eedULL);
    const std::vector<IntVector> order_sets = {{2, 2}, {2, 3}, {3, 2}, {2, 2, 2}};

    auto run = [&](const GradedSeries& p, const IntVector& orders, const std::string& label) {
        ++res.instances;
        const std::int64_t R = std::accumulate(orders.begin(), orders.end(), std::int64_t{1}, std::multiplies<>());
        ComponentChars nested;
        try {
            nested = nested_component_chars(p, orders);
        } catch (const Error& e) {
            fail(res, label + ": " + e.what());
            return;
        }
        const auto brute = oracle::brute_multi_eigenspace_dims(oracle::GradedBasis::from_series(p), orders, p.truncation());
        GradedSeries sum(p.truncation());
        for (const auto& [k, count] : brute) {
            auto it = nested.find(k);
            if (it == nested.end()) {
                fail(res, label + ": no nested component for k=" + tuple(k));
                return;
            }
            if (!(it->second == count)) {
                fail(res, label + " k=" + tuple(k) + ": nested " + it->second.to_string() + " vs count " + count.to_string());
            }
            sum += it->second;
        }
        if (nested.size() != brute.size()) fail(res, label + ": component count mismatch");
        const GradedSeries total = total_char(p, R);
        if (!(sum == total)) fail(res, label + ": sum over k " + sum.to_string() + " vs P^R " + total.to_string());
    };

    std::vector<std::vector<int>> tables;
    std::vector<int> cur;
    enumerate_1d(4, 3, cur, tables);
    std::vector<std::vector<int>> tables_2d;
    cur.clear();
    enumerate_1d(4, 3, cur, tables_2d);
    const std::vector<std::vector<int>> corners = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    for (const auto& orders : order_sets) {
        for (const auto& dims : tables_2d) {
            Table table;
            for (std::size_t i = 0; i < dims.size(); ++i) {
                if (dims[i] > 0) table.emplace_back(corners[i], mpq_class(dims[i]));
            }
            for (const std::vector<int>& trunc : {std::vector<int>{1, 1}, std::vector<int>{2, 4}}) {
                run(series_of(table, trunc), orders, "r=" + tuple(orders) + " 2-graded dims " + tuple(dims) + " trunc " + tuple(trunc));
            }
        }
        for (const auto& dims : tables) {
            for (int t = 0; t <= 4; ++t) {
                const GradedSeries p = series_of(table_1d(dims), {t});
                if (p.is_zero()) continue;
                run(p, orders, "r=" + tuple(orders) + " dims " + tuple(dims) + " trunc " + std::to_string(t));
            }
        }
        for (std::size_t n = 0; n < options.nested_random_tables; ++n) {
            const int total = 1 + static_cast<int>(rng() % 3);
            const std::vector<int> trunc = {static_cast<int>(rng() % 5), static_cast<int>(rng() % 5)};
            const GradedSeries p = series_of(random_table(rng, 2, total, 2), trunc);
            if (p.is_zero()) continue;
            run(p, orders, "r=" + tuple(orders) + " P=" + p.to_string() + " trunc " + tuple(trunc));
            ++res.randomized;
        }
    }
    res.seconds = since(t0);
    return res;
}

// ---------------------------------------------------------------------------

namespace {

struct RandomDatum {
    PsiSpec psi;
    IntVector orders;
};

// psi = sum over Gamma-bar of twist(phi, k) for a random phi over Q(zeta_12).
// Any two terms of phi differ in absolute value in some coordinate, so the
// twist orbits are disjoint and the invariance group is exactly the chosen one.
RandomDatum random_datum(std::mt19937_64& rng, const FieldPtr& field) {
    static const std::vector<mpq_class> magnitudes = {1, 2, 3, mpq_class(1, 2), mpq_class(3, 2), mpq_class(2, 3), 5};
    const std::size_t n = 1 + rng() % 2;
    IntVector orders(n);
    for (auto& r : orders) r = 1 + static_cast<std::int64_t>(rng() % 4);
    const SupportLattice lattice(orders);
    auto pick = [&](std::uint64_t m) { return static_cast<std::int64_t>(rng() % m); };

    auto random_coeff = [&]() {
        for (;;) {
            const CycScalar c = CycScalar(field, pick(7) - 3) + CycScalar(field, pick(5) - 2) * CycScalar::root_of_unity(field, 12, pick(12));
            if (!c.is_zero()) return c;
        }
    };

    PsiSpec psi{field, n, {}, {}};
    const std::size_t gens = 1 + rng() % 2;
    for (std::size_t g = 0; g < gens; ++g) {
        const std::size_t term_count = 1 + rng() % 3;
        std::vector<std::vector<std::size_t>> used;
        std::vector<ExpTerm> raw;
        while (raw.size() < term_count) {
            std::vector<std::size_t> mags(n);
            for (auto& m : mags) m = rng() % magnitudes.size();
            bool clash = false;
            for (const auto& u : used) clash = clash || u == mags;
            if (clash) continue;
            used.push_back(mags);
            ExpTerm term;
            for (std::size_t i = 0; i < n; ++i) {
                term.base.push_back(CycScalar(field, magnitudes[mags[i]]) * CycScalar::root_of_unity(field, 12, pick(12)));
            }
            const std::size_t monomials = 1 + rng() % 2;
            for (std::size_t j = 0; j < monomials; ++j) {
                Monomial e(n, 0);
                const int deg = static_cast<int>(rng() % 3);
                for (int u = 0; u < deg; ++u) ++e[rng() % n];
                term.poly[e] = random_coeff();
            }
            raw.push_back(std::move(term));
        }
        const ExpPoly phi = ExpPoly::normalize(field, n, std::move(raw));
        ExpPoly sum(field, n);
        for (const auto& k : lattice.elements()) sum = sum + twist(phi, lattice, k);
        psi.generators.push_back({"h" + std::to_string(g + 1), sum});
    }
    return {std::move(psi), std::move(orders)};
}

}  // namespace

std::vector<BatteryResult> check_exp_polynomials(const BatteryOptions& options) {
    const auto t0 = Clock::now();
    BatteryResult roundtrip = named("exp_polynomial_roundtrip");
    BatteryResult relation = named("relation_R");
    BatteryResult coprime = named("ideal_coprimality");
    std::mt19937_64 rng(options.seed ^ 0xc0ffeeULL);
    const FieldPtr field = CyclotomicField::make(12);

    for (std::size_t s = 0; s < options.random_specs; ++s) {
        const RandomDatum datum = random_datum(rng, field);
        const PsiSpec& psi = datum.psi;
        const std::string label = "datum #" + std::to_string(s) + " r=" + tuple(datum.orders);
        ++roundtrip.instances;
        ++relation.instances;
        ++coprime.instances;
        ++roundtrip.randomized;
        ++relation.randomized;
        ++coprime.randomized;
        try {
            const SupportLattice lattice = support_lattice(psi);
            if (lattice.orders() != datum.orders) {
                fail(roundtrip, label + ": recovered r=" + tuple(lattice.orders()));
                continue;
            }
            const PsiSpec phi = extract_phi(psi, lattice);
            const Verdict rec = reconstruct_check(psi, phi, lattice, options.box);
            if (!rec) fail(roundtrip, label + ": reconstruction failed at " + tuple(rec.witness) + ": " + rec.detail);
            const IntVector phi_orders = detect_lattice(phi).orders;
            if (phi_orders != IntVector(psi.n, 1)) fail(roundtrip, label + ": phi has lattice " + tuple(phi_orders));

            const AnnihilatorData ann = annihilator_polys(psi);
            const Verdict rel = relation_R_check(psi, ann, options.box);
            if (!rel) fail(relation, label + ": relation fails at " + tuple(rel.witness) + ": " + rel.detail);
            if (s < options.minimality_specs) {
                int max_degree = 0;
                for (const auto& v : ann.variables) max_degree = std::max(max_degree, v.poly.degree());
                const auto grids = relation_grids(psi, options.box, max_degree);
                for (std::size_t i = 0; i < ann.variables.size(); ++i) {
                    const auto& roots = ann.variables[i].roots;
                    for (std::size_t j = 0; j < roots.size(); ++j) {
                        auto lowered = roots;
                        --lowered[j].multiplicity;
                        if (lowered[j].multiplicity == 0) lowered.erase(lowered.begin() + static_cast<std::ptrdiff_t>(j));
                        if (annihilates(grids, i, UPoly::from_roots(field, lowered), options.box)) {
                            fail(relation, label + ": lowering root " + roots[j].root.to_string() + " of P_" +
                                               std::to_string(i + 1) + " still annihilates");
                        }
                    }
                }
            }

            const AnnihilatorData factored = orbit_factorization(ann, lattice);
            const auto gamma_bar = lattice.elements();
            for (const auto& j : gamma_bar) {
                for (const auto& jp : gamma_bar) {
                    if (j != jp && !ideal_coprimality(factored, j, jp)) {
                        fail(coprime, label + ": I_J, I_J' not coprime for J=" + tuple(j) + " J'=" + tuple(jp));
                    }
                }
            }
            if (!crt_dimension_identity(factored)) fail(coprime, label + ": CRT dimension identity fails");
        } catch (const Error& e) {
            fail(roundtrip, label + ": " + to_string(e.kind()) + ": " + e.what());
        }
    }
    roundtrip.seconds = relation.seconds = coprime.seconds = since(t0);
    return {roundtrip, relation, coprime};
}

BatteryResult check_ramanujan(std::int64_t max_q) {
    const auto t0 = Clock::now();
    BatteryResult res = named("ramanujan_sum");
    for (std::int64_t q = 1; q <= max_q; ++q) {
        const FieldPtr field = CyclotomicField::make(q);
        for (std::int64_t k = 0; k < q; ++k) {
            ++res.instances;
            CycScalar sum(field);
            for (std::int64_t j = 1; j <= q; ++j) {
                if (std::gcd(j, q) == 1) sum = sum + CycScalar::root_of_unity(field, q, j * k);
            }
            const std::int64_t c = numtheory::ramanujan_sum(q, k);
            if (!(sum == CycScalar(field, c))) {
                fail(res, "C_" + std::to_string(q) + "(" + std::to_string(k) + ") = " + std::to_string(c) + " but the root sum is " +
                              sum.to_string());
            }
        }
        if (numtheory::ramanujan_sum(q, 0) != numtheory::euler_phi(q)) {
            fail(res, "C_" + std::to_string(q) + "(0) != phi(" + std::to_string(q) + ")");
        }
    }
    res.seconds = since(t0);
    return res;
}

std::vector<BatteryResult> run_all(const BatteryOptions& options) {
    std::vector<BatteryResult> out = check_single_stage(options);
    out.push_back(check_nested(options));
    for (auto& r : check_exp_polynomials(options)) out.push_back(std::move(r));
    out.push_back(check_ramanujan());
    return out;
}

}  // namespace loopchar::selftest
