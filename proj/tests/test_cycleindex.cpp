#include "fqcycles/cycleindex.hpp"
#include "fqcycles/oracle.hpp"

#include <doctest.h>

#include <cmath>

using namespace fqc;

namespace {

BigRational frac(long a, long b) {
    BigRational r(a, b);
    r.canonicalize();
    return r;
}

} // namespace

TEST_CASE("constraint validation") {
    const Constraint dup[] = {{1, 0}, {1, 1}};
    CHECK_THROWS_AS(validate_constraints(dup), InvalidArgument);
    const Constraint zero[] = {{0, 1}};
    CHECK_THROWS_AS(validate_constraints(zero), InvalidArgument);
}

TEST_CASE("small matrix probabilities") {
    const Constraint irr2[] = {{2, 1}};
    CHECK(mat_joint_prob(2, 2, irr2) == frac(1, 8));
    CHECK(mat_joint_prob(2, 3, irr2) == frac(18, 81));
    const Constraint lin[] = {{1, 1}};
    CHECK(mat_joint_prob(1, 5, lin) == 1);
    CHECK(mat_joint_prob(1, 5, std::span<const Constraint>{}) == 1);
    CHECK(gl_fraction(2, 2) == frac(3, 8));
}

TEST_CASE("matrix distribution matches exhaustive enumeration") {
    const std::pair<unsigned, std::uint64_t> cases[] = {{1, 2}, {2, 2}, {2, 3}, {3, 2}, {2, 4}};
    for (auto [n, q] : cases) {
        std::vector<unsigned> tracked;
        for (unsigned d = 1; d <= n; ++d)
            tracked.push_back(d);
        const auto formula = mat_distribution(n, q, tracked);
        const auto brute = enumerate_matrix_distribution(n, q, tracked);
        CHECK(formula.entries() == brute.entries());
        CHECK(formula.total() == 1);
    }
}

TEST_CASE("permutation distribution matches exhaustive enumeration") {
    for (unsigned n = 0; n <= 7; ++n) {
        std::vector<unsigned> tracked;
        for (unsigned d = 1; d <= n; ++d)
            tracked.push_back(d);
        CHECK(sym_distribution(n, tracked).entries() == enumerate_perm_distribution(n, tracked).entries());
        CHECK(sym_cycle_index(n, tracked).evaluate_at_ones() == 1);
    }
    const Constraint two_cycle[] = {{2, 1}};
    // S_6 with exactly one 2-cycle: 15 * 15 of 720
    CHECK(sym_joint_prob(6, two_cycle) == BigRational(5, 16));
    CHECK(sym_joint_prob(6, two_cycle) == enumerate_perm_distribution(6, std::vector<unsigned>{2}).probability(two_cycle));
}

TEST_CASE("distribution queries need tracked degrees") {
    const auto dist = sym_distribution(4, std::vector<unsigned>{1});
    const Constraint c[] = {{2, 0}};
    CHECK_THROWS_AS(dist.probability(c), InvalidArgument);
    CHECK(dist.to_json().find("\"context\":\"permutation\"") != std::string::npos);
}

TEST_CASE("constraints beyond n") {
    const Constraint big[] = {{5, 1}};
    CHECK(mat_joint_prob(3, 2, big) == 0);
    const Constraint big0[] = {{5, 0}};
    CHECK(mat_joint_prob(3, 2, big0) == 1);
    CHECK(sym_joint_prob(3, big) == 0);
}

TEST_CASE("large-q report") {
    const Constraint c[] = {{1, 0}};
    const std::uint64_t qs[] = {2, 3, 4, 5, 7, 8, 9};
    const auto rep = limit_q_report(3, c, qs, 2);
    CHECK(rep.target == frac(1, 3));
    CHECK(rep.rows.size() == 7);
    CHECK(rep.rows.back().gap < rep.rows.front().gap);
    CHECK(rep.to_csv().rfind("q,exact,float,gap\n", 0) == 0);
    const std::uint64_t bad_order[] = {3, 2};
    CHECK_THROWS_AS(limit_q_report(2, c, bad_order), InvalidArgument);
    const std::uint64_t bad_q[] = {6};
    CHECK_THROWS_AS(limit_q_report(2, c, bad_q), InvalidArgument);
}

TEST_CASE("closed-form cycle generating function") {
    const unsigned order = 10;
    const auto free = shepp_lloyd_series({}, {}, order);
    CHECK(free == TruncSeries::geometric(order));
    // derangements: D_n / n!
    const unsigned one[] = {1};
    const auto der = shepp_lloyd_series(one, {}, order);
    BigInt d_prev = 1, d = 0;  // D_0, D_1
    CHECK(der.coefficient(0) == 1);
    CHECK(der.coefficient(1) == 0);
    for (unsigned n = 2; n <= order; ++n) {
        const BigInt next = (n - 1) * (d + d_prev);
        d_prev = d;
        d = next;
        BigRational expected(d, factorial(n));
        expected.canonicalize();
        CHECK(der.coefficient(n) == expected);
    }
    const Constraint hit0[] = {{2, 0}};
    CHECK_THROWS_AS(shepp_lloyd_series({}, hit0, order), InvalidArgument);
}

TEST_CASE("Poisson limits") {
    const Constraint c[] = {{1, 0}};
    const auto v = poisson_limit(c);
    CHECK(v.to_string() == "1/1*e^(-1/1)");
    CHECK(std::abs(v.value() - std::exp(-1.0)) < 1e-15);
    const Constraint c2[] = {{2, 1}, {3, 2}};
    const auto w = poisson_limit(c2);
    CHECK(w.coefficient == frac(1, 2 * 9 * 2));
    CHECK(w.exponent == frac(-5, 6));
}
