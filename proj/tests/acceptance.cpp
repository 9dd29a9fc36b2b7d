// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "fqcycles.h"
#include "fqcycles/cycleindex.hpp"
#include "fqcycles/oracle.hpp"
#include "fqcycles/padic.hpp"
#include "fqcycles/partitions.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace fqc;

namespace {

struct Outcome {
    bool passed = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
    return std::chrono::duration<double>(Clock::now() - t).count();
}

// Every constraint set over degrees 1..n: each degree absent or with k in 0..n/d.
std::vector<std::vector<Constraint>> all_constraint_sets(unsigned n) {
    std::vector<std::vector<Constraint>> out{{}};
    for (unsigned d = 1; d <= n; ++d) {
        std::vector<std::vector<Constraint>> next;
        for (const auto& base : out) {
            next.push_back(base);
            for (unsigned k = 0; k <= n / d; ++k) {
                auto ext = base;
                ext.push_back({d, k});
                next.push_back(std::move(ext));
            }
        }
        out = std::move(next);
    }
    return out;
}

std::string describe(const std::vector<Constraint>& cs) {
    std::string s = "{";
    for (const auto& c : cs)
        s += "d=" + std::to_string(c.degree) + ":k=" + std::to_string(c.count) + ";";
    return s + "}";
}

Outcome oracle_equivalence() {
    const auto start = Clock::now();
    std::size_t compared = 0;
    const std::pair<unsigned, std::uint64_t> cases[] = {{1, 2}, {1, 3}, {2, 2}, {2, 3}, {3, 2}, {2, 4}};
    for (auto [n, q] : cases) {
        std::vector<unsigned> tracked;
        for (unsigned d = 1; d <= n; ++d)
            tracked.push_back(d);
        const auto brute = enumerate_matrix_distribution(n, q, tracked, {}, 4);
        for (const auto& cs : all_constraint_sets(n)) {
            ++compared;
            const BigRational a = mat_joint_prob(n, q, cs);
            const BigRational b = brute.probability(cs);
            if (a != b)
                return {false, "n=" + std::to_string(n) + " q=" + std::to_string(q) + " " + describe(cs) +
                                   ": " + fraction_string(a) + " vs " + fraction_string(b)};
        }
    }
    for (unsigned n = 1; n <= 8; ++n) {
        std::vector<unsigned> tracked;
        for (unsigned d = 1; d <= n; ++d)
            tracked.push_back(d);
        const auto brute = enumerate_perm_distribution(n, tracked);
        for (const auto& cs : all_constraint_sets(n)) {
            ++compared;
            const BigRational a = sym_joint_prob(n, cs);
            const BigRational b = brute.probability(cs);
            if (a != b)
                return {false, "S_" + std::to_string(n) + " " + describe(cs) + ": " + fraction_string(a) +
                                   " vs " + fraction_string(b)};
        }
    }
    const double t = seconds_since(start);
    std::ostringstream s;
    s << compared << " constraint sets equal, " << t << " s";
    return {t < 120.0, s.str()};
}

Outcome key_identity() {
    for (unsigned long q : {2ul, 3ul, 4ul}) {
        const BigRational qinv(BigInt(1), BigInt(q));
        BigRational prod = 1;
        for (unsigned n = 0; n <= 8; ++n) {
            BigRational lhs = 0;
            for (const auto& lambda : enumerate_partitions(n))
                lhs += BigRational(BigInt(1), macdonald_aut(BigInt(q), lambda));
            lhs.canonicalize();
            if (n)
                prod *= 1 - rpow(qinv, n);
            BigRational rhs = rpow(qinv, n) / prod;
            rhs.canonicalize();
            if (lhs != rhs)
                return {false, "q=" + std::to_string(q) + " n=" + std::to_string(n) + ": " + fraction_string(lhs) +
                                   " vs " + fraction_string(rhs)};
            if (q == 2 && n == 2 && lhs != BigRational(2, 3))
                return {false, "spot value n=2 q=2 is " + fraction_string(lhs)};
        }
    }
    return {true, "n<=8, q in {2,3,4}; n=2 q=2 gives 2/3"};
}

Outcome nilpotent_counts() {
    const std::pair<unsigned, std::uint64_t> cases[] = {{1, 2}, {2, 2}, {2, 3}, {3, 2}};
    for (auto [n, q] : cases) {
        const BigInt counted = nilpotent_count(n, q, {}, 4);
        const BigInt closed = ipow(BigInt(static_cast<unsigned long>(q)), n * (n - 1));
        if (counted != closed)
            return {false, "n=" + std::to_string(n) + " q=" + std::to_string(q) + ": " + counted.get_str() +
                               " vs " + closed.get_str()};
    }
    return {true, "4 (n, q) pairs equal q^(n(n-1))"};
}

Outcome squarefree_counts() {
    for (std::uint64_t q : {2u, 3u}) {
        const Field f = Field::of_order(q);
        for (unsigned n = 2; n <= 4; ++n) {
            const BigInt all = enumerate_squarefree_polys(f, n, false);
            const BigInt nz = enumerate_squarefree_polys(f, n, true);
            const BigInt qq(static_cast<unsigned long>(q));
            if (all != ipow(qq, n) - ipow(qq, n - 1) || all != squarefree_count(q, n))
                return {false, "square-free n=" + std::to_string(n) + " q=" + std::to_string(q) +
                                   ": enumeration " + all.get_str()};
            if (nz != squarefree_nonzero_constant_count(q, n))
                return {false, "f(0)!=0 n=" + std::to_string(n) + " q=" + std::to_string(q) + ": enumeration " +
                                   nz.get_str() + " vs " + squarefree_nonzero_constant_count(q, n).get_str()};
        }
    }
    return {true, "n=2..4, q=2,3 both counts equal"};
}

Outcome macdonald_vs_brute() {
    std::size_t compared = 0;
    for (std::uint32_t q : {2u, 3u})
        for (unsigned n = 1; saturating_pow(q, n) <= 4096; ++n)
            for (const auto& lambda : enumerate_partitions(n)) {
                ++compared;
                if (macdonald_aut(BigInt(q), lambda) != aut_brute_force(q, lambda, 4096)) {
                    std::string parts;
                    for (unsigned x : lambda.parts())
                        parts += std::to_string(x) + ",";
                    return {false, "q=" + std::to_string(q) + " lambda=(" + parts + ")"};
                }
            }
    return {true, std::to_string(compared) + " partitions with q^|lambda| <= 4096 agree"};
}

Outcome shepp_lloyd_identity() {
    constexpr unsigned kOrder = 12;
    std::vector<unsigned> state(4, 0);  // 0 absent, 1 zero, 1 + k hit with k
    std::size_t evaluations = 0;
    for (;;) {
        std::vector<unsigned> zeros;
        std::vector<Constraint> hits;
        for (unsigned d = 1; d <= 4; ++d) {
            if (state[d - 1] == 1)
                zeros.push_back(d);
            else if (state[d - 1] > 1)
                hits.push_back({d, state[d - 1] - 1});
        }
        const TruncSeries f = shepp_lloyd_series(zeros, hits, kOrder);
        for (unsigned n = 0; n <= kOrder; ++n) {
            // each hit degree has either 0 or exactly k cycles
            BigRational direct = 0;
            for (unsigned mask = 0; mask < (1u << hits.size()); ++mask) {
                std::vector<Constraint> cs;
                for (unsigned d : zeros)
                    cs.push_back({d, 0});
                for (std::size_t i = 0; i < hits.size(); ++i)
                    cs.push_back({hits[i].degree, (mask >> i & 1) ? hits[i].count : 0});
                direct += sym_joint_prob(n, cs);
            }
            if (direct != f.coefficient(n))
                return {false, "u^" + std::to_string(n) + " evaluation " + std::to_string(evaluations)};
        }
        ++evaluations;
        unsigned i = 0;
        while (i < 4 && ++state[i] > 4)
            state[i++] = 0;
        if (i == 4)
            break;
    }
    return {true, std::to_string(evaluations) + " evaluations equal through u^12"};
}

Outcome poisson_convergence() {
    const Constraint no_fixed[] = {{1, 0}};
    const Constraint no_two[] = {{2, 0}};
    const long double a = std::fabs(static_cast<long double>(sym_joint_prob(20, no_fixed).get_d()) - std::exp(-1.0L));
    const long double b =
        std::fabs(static_cast<long double>(sym_joint_prob(16, no_two).get_d()) - std::exp(-0.5L));
    std::ostringstream s;
    s.precision(3);
    s << "|P20(no 1-cycle) - e^-1| = " << static_cast<double>(a) << ", |P16(no 2-cycle) - e^-1/2| = "
      << static_cast<double>(b);
    return {a < 1e-6L && b < 1e-3L, s.str()};
}

Outcome large_q_convergence() {
    const std::uint64_t qs[] = {2, 3, 4, 5, 7, 8, 9};
    std::size_t queries = 0, trivial = 0;
    std::vector<std::string> nonmonotone, violations;
    for (unsigned n = 1; n <= 4; ++n)
        for (unsigned d = 1; d <= n; ++d)
            for (unsigned k = 0; k <= n / d; ++k) {
                const Constraint c[] = {{d, k}};
                const auto rep = limit_q_report(n, c, qs, 4);
                ++queries;
                const BigRational& g2 = rep.rows.front().gap;
                const BigRational& g9 = rep.rows.back().gap;
                if (g2 == 0 && g9 == 0) {
                    ++trivial;
                } else if (!(g9 < g2)) {
                    violations.push_back("n=" + std::to_string(n) + " d=" + std::to_string(d) + " k=" +
                                         std::to_string(k) + " P_2=" + fraction_string(rep.rows.front().exact) +
                                         " P_9=" + fraction_string(rep.rows.back().exact) +
                                         " P_inf=" + fraction_string(rep.target));
                }
                for (auto q : rep.monotonicity_failures)
                    nonmonotone.push_back("n=" + std::to_string(n) + ",d=" + std::to_string(d) +
                                          ",k=" + std::to_string(k) + ",q=" + std::to_string(q));
            }
    std::string detail = std::to_string(queries) + " queries (" + std::to_string(trivial) +
                         " with zero gap throughout); weak monotonicity failures: ";
    if (nonmonotone.empty())
        detail += "none";
    for (std::size_t i = 0; i < nonmonotone.size(); ++i)
        detail += (i ? " " : "") + nonmonotone[i];
    if (!violations.empty()) {
        detail += "; gap at q=9 not below gap at q=2:";
        for (const auto& v : violations)
            detail += " [" + v + "]";
    }
    return {violations.empty(), detail};
}

Outcome jordan_landau() {
    const auto start = Clock::now();
    const long double big = jl_ratio(1000000, 2);
    const long double small = jl_ratio(1000, 2);
    bool ok = std::fabs(big - 1.0L) <= 0.25L && std::fabs(big - 1.0L) < std::fabs(small - 1.0L);
    for (unsigned long n : {2ul, 10ul, 1000ul, 1000000ul})
        ok = ok && jl_ratio(n, 1) == 1.0L;
    long double worst = 0;
    for (unsigned long n : {1000ul, 1000000ul}) {
        const long double h = harmonic_number(n - 1) / std::log(static_cast<long double>(n));
        worst = std::max(worst, std::fabs(jl_ratio(n, 2) - h));
    }
    ok = ok && worst < 1e-12L;
    const double t = seconds_since(start);
    std::ostringstream s;
    s.precision(6);
    s << "ratio(10^6,2)=" << static_cast<double>(big) << " ratio(10^3,2)=" << static_cast<double>(small)
      << " harmonic gap " << static_cast<double>(worst) << ", " << t << " s";
    return {ok && t < 30.0, s.str()};
}

Outcome padic_concordance() {
    for (std::uint32_t p : {2u, 3u, 5u})
        for (unsigned n = 1; n <= 4; ++n) {
            const std::vector<std::vector<unsigned>> degree_sets{{1}, {2}, {1, 2}, {1, 3}};
            for (const auto& ds : degree_sets) {
                std::vector<Constraint> zeros;
                for (unsigned d : ds)
                    zeros.push_back({d, 0});
                if (coker_zero_prob_exact(p, n, ds) != mat_joint_prob(n, p, zeros))
                    return {false, "exact value differs from the all-zero joint probability"};
            }
        }
    SamplerConfig cfg;
    cfg.p = 5;
    cfg.n = 3;
    cfg.precision = 1;
    cfg.samples = 100000;
    cfg.seed = 42;
    const unsigned degrees[] = {1};
    cfg.threads = 1;
    const auto one = monte_carlo_cokernel(cfg, degrees);
    cfg.threads = 8;
    const auto eight = monte_carlo_cokernel(cfg, degrees);
    std::ostringstream s;
    s.precision(6);
    s << "empirical " << one.empirical() << " +- " << one.ci99() << " vs exact " << fraction_string(one.exact)
      << " (" << one.exact.get_d() << "); threads 1 and 8 "
      << (one.to_json() == eight.to_json() ? "identical" : "DIFFER");
    return {one.within_ci99() && one.to_json() == eight.to_json(), s.str()};
}

Outcome fault_injection() {
    fqc_context* ctx = nullptr;
    if (fqc_context_create(&ctx) != FQC_OK)
        return {false, "cannot create context"};
    fqc_context_set_threads(ctx, 4);
    struct Case {
        const char* fault;
        const char* expect;
    };
    const Case cases[] = {{nullptr, nullptr}, {"mac", "FAIL mac:"}, {"nilpotent", "FAIL fine-herstein:"},
                          {"squarefree", "FAIL sf:"}};
    std::string detail;
    bool ok = true;
    for (const auto& c : cases) {
        const fqc_verify_options opt{nullptr, 0, nullptr, 0, 0, 20000, 42, c.fault};
        fqc_report* r = nullptr;
        if (fqc_verify(ctx, &opt, &r) != FQC_OK) {
            fqc_context_destroy(ctx);
            return {false, std::string("verify errored: ") + fqc_context_last_error(ctx)};
        }
        const std::string text = fqc_report_string(r, FQC_FORMAT_TEXT);
        const int passed = fqc_report_passed(r);
        fqc_report_destroy(r);
        if (!c.fault) {
            ok = ok && passed == 1;
            detail += passed == 1 ? "unperturbed suite passes" : "unperturbed suite FAILS";
        } else {
            const bool named = text.find(c.expect) != std::string::npos;
            ok = ok && passed == 0 && named;
            detail += std::string("; ") + c.fault + (named ? " -> " + std::string(c.expect) : " -> not caught");
        }
    }
    fqc_context_destroy(ctx);
    return {ok, detail};
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"01 cycle-index probabilities equal exhaustive enumeration", oracle_equivalence},
        {"02 partition sum of 1/|Aut| equals its product form", key_identity},
        {"03 nilpotent counts", nilpotent_counts},
        {"04 square-free counts", squarefree_counts},
        {"05 Macdonald formula equals direct automorphism count", macdonald_vs_brute},
        {"06 closed-form generating function equals S_n sums", shepp_lloyd_identity},
        {"07 Poisson limits for S_n", poisson_convergence},
        {"08 large-q convergence", large_q_convergence},
        {"09 Jordan-Landau ratio", jordan_landau},
        {"10 p-adic cokernel sampling", padic_concordance},
        {"11 fault injection is detected", fault_injection},
    };
    int failures = 0;
    for (const auto& [name, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::cout << (o.passed ? "PASS " : "FAIL ") << name << " -- " << o.detail << std::endl;
        failures += !o.passed;
    }
    return failures ? 1 : 0;
}
