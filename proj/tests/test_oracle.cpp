#include "fqcycles/oracle.hpp"

#include <doctest.h>

#include <cmath>

using namespace fqc;

TEST_CASE("odometer visits every matrix once") {
    const Field f = Field::of_order(3);
    std::uint64_t count = 0;
    std::vector<FqElem> last;
    for_each_matrix(f, 2, 0, 81, [&](const MatrixFq& a) {
        ++count;
        last = a.entries();
    });
    CHECK(count == 81);
    CHECK(last == std::vector<FqElem>{2, 2, 2, 2});
    for_each_matrix(f, 2, 5, 6, [&](const MatrixFq& a) { CHECK(a.entries() == std::vector<FqElem>{0, 0, 1, 2}); });
}

TEST_CASE("enumeration budgets") {
    CHECK_THROWS_AS(enumerate_matrix_distribution(3, 4, std::vector<unsigned>{1}, EnumerationBudget{1000}),
                    BudgetExceeded);
    CHECK_THROWS_AS(enumerate_perm_distribution(9, std::vector<unsigned>{1}, EnumerationBudget{1000}),
                    BudgetExceeded);
    CHECK_THROWS_AS(nilpotent_count(4, 3), BudgetExceeded);
}

TEST_CASE("thread count does not change tallies") {
    const std::vector<unsigned> tracked{1, 2};
    const auto one = enumerate_matrix_distribution(3, 2, tracked, {}, 1);
    const auto many = enumerate_matrix_distribution(3, 2, tracked, {}, 5);
    CHECK(one.entries() == many.entries());
    CHECK(nilpotent_count(2, 3, {}, 1) == nilpotent_count(2, 3, {}, 4));
}

TEST_CASE("nilpotent counts") {
    CHECK(nilpotent_count(1, 2) == 1);
    CHECK(nilpotent_count(2, 2) == 4);
    CHECK(nilpotent_count(2, 3) == 9);
    CHECK(nilpotent_count(3, 2) == 64);
    CHECK(nilpotent_count(2, 4) == 16);
}

TEST_CASE("square-free fraction bound") {
    const auto rep = squarefree_fraction_bound_check(2, 2);
    CHECK(rep.total_matrices == 16);
    CHECK(rep.holds);
    // char polys t^2 and (t+1)^2 are the non-square-free ones over F_2
    CHECK(rep.squarefree_matrices == 16 - 4 - 4);
}

TEST_CASE("cycle-count probabilities") {
    for (unsigned n = 1; n <= 20; ++n) {
        CycleProbTable table(n, n);
        CHECK(std::fabs(static_cast<double>(table.row_sum()) - 1.0) < 1e-15);
        for (unsigned k = 1; k <= n; ++k)
            CHECK(std::fabs(static_cast<double>(table[k]) - stirling_cycle_prob_exact(n, k).get_d()) < 1e-15);
    }
    // c(4, 2) = 11
    CHECK(stirling_cycle_prob_exact(4, 2) == BigRational(11, 24));
    CHECK_THROWS_AS(stirling_cycle_prob(5, 0), InvalidArgument);
    CHECK_THROWS_AS(stirling_cycle_prob(5, 6), InvalidArgument);
    CHECK_THROWS_AS(stirling_cycle_prob_exact(31, 2), InvalidArgument);
}

TEST_CASE("normalized cycle ratios") {
    CHECK(jl_ratio(1000, 1) == 1.0L);
    for (unsigned long n : {10ul, 1000ul, 100000ul}) {
        const long double expected = harmonic_number(n - 1) / std::log(static_cast<long double>(n));
        CHECK(std::fabs(static_cast<double>(jl_ratio(n, 2) - expected)) < 1e-12);
    }
    CHECK_THROWS_AS(jl_ratio(1, 2), InvalidArgument);
    CHECK(std::fabs(static_cast<double>(harmonic_number(4)) - 25.0 / 12.0) < 1e-15);
}
