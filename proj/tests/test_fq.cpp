#include "fqcycles/fq.hpp"
#include "fqcycles/oracle.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

using namespace fqc;

namespace {

// det(tI - A) by the Leibniz expansion over F_q[t].
Coeffs leibniz_char_poly(const Field& field, const MatrixFq& a) {
    const unsigned n = a.n();
    const PolyRing ring(field);
    std::vector<unsigned> perm(n);
    std::iota(perm.begin(), perm.end(), 0u);
    Coeffs total;
    do {
        Coeffs term{1};
        for (unsigned i = 0; i < n; ++i) {
            Coeffs entry{field.neg(a(i, perm[i]))};
            if (perm[i] == i)
                entry.push_back(1);
            PolyRing::trim(entry);
            term = ring.mul(term, entry);
        }
        unsigned inversions = 0;
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = i + 1; j < n; ++j)
                inversions += perm[i] > perm[j];
        total = inversions % 2 ? ring.sub(total, term) : ring.add(total, term);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

// Irreducible iff no monic divisor of degree 1..deg/2, by exhaustive trial division.
bool trial_division_irreducible(const Field& field, const MonicPoly& f) {
    const PolyRing ring(field);
    const unsigned q = field.q();
    for (unsigned d = 1; 2 * d <= f.degree(); ++d) {
        const std::uint64_t total = saturating_pow(q, d);
        for (std::uint64_t code = 0; code < total; ++code) {
            Coeffs g(d + 1, 1);
            std::uint64_t rest = code;
            for (unsigned i = 0; i < d; ++i) {
                g[i] = static_cast<FqElem>(rest % q);
                rest /= q;
            }
            if (PolyRing::is_zero(ring.mod(f.coeffs(), g)))
                return false;
        }
    }
    return f.degree() >= 1;
}

MatrixFq random_matrix(const Field& field, unsigned n, std::mt19937_64& rng) {
    std::uniform_int_distribution<FqElem> entry(0, field.q() - 1);
    std::vector<FqElem> e(n * n);
    for (auto& x : e)
        x = entry(rng);
    return MatrixFq(n, e);
}

} // namespace

TEST_CASE("field axioms hold exhaustively for small orders") {
    for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9, 16, 25, 27}) {
        const Field f = Field::of_order(q);
        CHECK(f.q() == q);
        for (FqElem a = 0; a < q; ++a) {
            CHECK(f.add(a, f.neg(a)) == 0);
            CHECK(f.sub(a, a) == 0);
            CHECK(f.mul(a, 1) == a);
            if (a)
                CHECK(f.mul(a, f.inv(a)) == 1);
            CHECK(f.pow(f.pth_root(a), f.p()) == a);
            CHECK(f.pow(a, q) == a);
            for (FqElem b = 0; b < q; ++b) {
                CHECK(f.add(a, b) == f.add(b, a));
                CHECK(f.mul(a, b) == f.mul(b, a));
                for (FqElem c = 0; c < q; c += 3)
                    CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
            }
        }
    }
}

TEST_CASE("extension moduli are the least irreducibles") {
    CHECK(Field::of_order(4).modulus() == std::vector<std::uint32_t>{1, 1, 1});
    CHECK(Field::of_order(8).modulus() == std::vector<std::uint32_t>{1, 1, 0, 1});
    CHECK(Field::of_order(9).modulus() == std::vector<std::uint32_t>{1, 0, 1});
    CHECK(Field::of_order(5).modulus() == std::vector<std::uint32_t>{0, 1});
}

TEST_CASE("field construction rejects bad orders") {
    CHECK_THROWS_AS(Field::of_order(6), InvalidArgument);
    CHECK_THROWS_AS(Field::of_order(1), InvalidArgument);
    CHECK_THROWS_AS(Field::of_order(2048), InvalidArgument);
    CHECK_NOTHROW(Field::of_order(1021));
}

TEST_CASE("digits round-trip") {
    const Field f = Field::of_order(27);
    for (FqElem a = 0; a < 27; ++a) {
        const auto d = f.digits(a);
        CHECK(d.size() == 3);
        CHECK(f.from_digits(d) == a);
    }
}

TEST_CASE("monic polynomials") {
    CHECK_THROWS_AS(MonicPoly(Coeffs{1, 0}), InvalidArgument);
    CHECK_THROWS_AS(MonicPoly(Coeffs{}), InvalidArgument);
    CHECK(MonicPoly(Coeffs{0, 1}) < MonicPoly(Coeffs{1, 1}));
    CHECK(MonicPoly(Coeffs{1, 1}) < MonicPoly(Coeffs{0, 0, 1}));
}

TEST_CASE("polynomial division identity") {
    std::mt19937_64 rng(7);
    for (std::uint64_t q : {2, 3, 4, 9}) {
        const Field f = Field::of_order(q);
        const PolyRing ring(f);
        std::uniform_int_distribution<FqElem> coef(0, f.q() - 1);
        for (int trial = 0; trial < 50; ++trial) {
            Coeffs a(7), b(4);
            for (auto& x : a)
                x = coef(rng);
            for (auto& x : b)
                x = coef(rng);
            b.back() = 1;
            PolyRing::trim(a);
            auto [quo, rem] = ring.divmod(a, b);
            CHECK(PolyRing::degree(rem) < PolyRing::degree(b));
            CHECK(ring.add(ring.mul(quo, b), rem) == a);
            const Coeffs g = ring.gcd(a, b);
            if (!PolyRing::is_zero(g)) {
                CHECK(PolyRing::is_zero(ring.mod(a, g)));
                CHECK(PolyRing::is_zero(ring.mod(b, g)));
            }
        }
    }
}

TEST_CASE("necklace counts") {
    const long expected_q2[] = {2, 1, 2, 3, 6, 9, 18, 30};
    for (unsigned d = 1; d <= 8; ++d)
        CHECK(irreducible_count(2, d) == expected_q2[d - 1]);
    CHECK(irreducible_count(3, 2) == 3);
    CHECK(irreducible_count(4, 2) == 6);
    CHECK(irreducible_count(5, 3) == 40);
}

TEST_CASE("enumerated irreducibles match trial division and the necklace count") {
    for (std::uint64_t q : {2, 3, 4, 5}) {
        const Field f = Field::of_order(q);
        for (unsigned d = 1; d <= 4 && saturating_pow(q, d) <= 1024; ++d) {
            const auto list = enumerate_irreducibles(f, d);
            CHECK(BigInt(static_cast<unsigned long>(list.size())) == irreducible_count(q, d));
            CHECK(std::is_sorted(list.begin(), list.end()));
            for (const auto& p : list)
                CHECK(trial_division_irreducible(f, p));
        }
    }
    // every monic quartic over F_3 is classified the same way by both tests
    const Field f3 = Field::of_order(3);
    for (unsigned code = 0; code < 81; ++code) {
        Coeffs c{code % 3, code / 3 % 3, code / 9 % 3, code / 27 % 3, 1};
        const MonicPoly p(c);
        CHECK(is_irreducible(f3, p) == trial_division_irreducible(f3, p));
    }
}

TEST_CASE("enumeration budget is enforced") {
    CHECK_THROWS_AS(enumerate_irreducibles(Field::of_order(2), 10, 1000), BudgetExceeded);
}

TEST_CASE("factor profiles of products of known irreducibles") {
    std::mt19937_64 rng(11);
    for (std::uint64_t q : {2, 3, 4, 5}) {
        const Field f = Field::of_order(q);
        const PolyRing ring(f);
        std::vector<MonicPoly> pool;
        for (unsigned d = 1; d <= 3; ++d)
            for (const auto& p : enumerate_irreducibles(f, d))
                pool.push_back(p);
        std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
        for (int trial = 0; trial < 60; ++trial) {
            Coeffs prod{1};
            std::map<unsigned, unsigned> expected;
            const int factors = 1 + trial % 5;
            for (int i = 0; i < factors; ++i) {
                const auto& p = pool[pick(rng)];
                prod = ring.mul(prod, p.coeffs());
                ++expected[p.degree()];
            }
            const FactorProfile profile = factor_degree_profile(f, MonicPoly(prod));
            CHECK(profile == FactorProfile(expected));
            CHECK(profile.weighted_degree() == PolyRing::degree(prod));
        }
    }
}

TEST_CASE("inseparable-looking inputs in characteristic p") {
    const Field f = Field::of_order(2);
    // (t^2 + t + 1)^2 = t^4 + t^2 + 1
    const FactorProfile p = factor_degree_profile(f, MonicPoly(Coeffs{1, 0, 1, 0, 1}));
    CHECK(p.count(2) == 2);
    CHECK(p.weighted_degree() == 4);
    // t^4 over F_4, with a p-th power root step
    CHECK(factor_degree_profile(Field::of_order(4), MonicPoly(Coeffs{0, 0, 0, 0, 1})).count(1) == 4);
}

TEST_CASE("characteristic polynomial agrees with the Leibniz expansion") {
    std::mt19937_64 rng(3);
    for (std::uint64_t q : {2, 3, 4, 5, 9}) {
        const Field f = Field::of_order(q);
        for (unsigned n = 1; n <= 5; ++n)
            for (int trial = 0; trial < 20; ++trial) {
                const MatrixFq a = random_matrix(f, n, rng);
                CHECK(char_poly(f, a).coeffs() == leibniz_char_poly(f, a));
            }
    }
    const Field f2 = Field::of_order(2);
    CHECK(char_poly(f2, MatrixFq(2, {0, 1, 1, 1})).coeffs() == Coeffs{1, 1, 1});
}

TEST_CASE("square-free closed forms against enumeration") {
    for (std::uint64_t q : {2, 3, 4, 5}) {
        const Field f = Field::of_order(q);
        for (unsigned n = 0; n <= 5 && saturating_pow(q, n) <= 4096; ++n) {
            CHECK(squarefree_count(q, n) == enumerate_squarefree_polys(f, n, false));
            CHECK(squarefree_nonzero_constant_count(q, n) == enumerate_squarefree_polys(f, n, true));
        }
    }
    CHECK(squarefree_nonzero_constant_count(2, 3) == 3);
    CHECK(squarefree_nonzero_constant_count(5, 1) == 4);
    CHECK(squarefree_count(2, 3) == 4);
}

TEST_CASE("Reiner counts against exhaustive char-poly tallies") {
    for (std::uint64_t q : {2, 3}) {
        const Field f = Field::of_order(q);
        for (unsigned n = 1; n <= 3; ++n) {
            std::map<Coeffs, std::uint64_t> tally;
            for_each_matrix(f, n, 0, saturating_pow(q, n * n),
                            [&](const MatrixFq& a) { ++tally[char_poly(f, a).coeffs()]; });
            // every product of distinct irreducibles of total degree n
            std::vector<MonicPoly> pool;
            for (unsigned d = 1; d <= n; ++d)
                for (const auto& p : enumerate_irreducibles(f, d))
                    pool.push_back(p);
            const PolyRing ring(f);
            for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << pool.size()); ++mask) {
                std::vector<MonicPoly> chosen;
                unsigned deg = 0;
                Coeffs prod{1};
                for (std::size_t i = 0; i < pool.size(); ++i)
                    if (mask >> i & 1) {
                        chosen.push_back(pool[i]);
                        deg += pool[i].degree();
                        prod = ring.mul(prod, pool[i].coeffs());
                    }
                if (deg != n)
                    continue;
                CHECK(reiner_count(f, chosen, n) == BigInt(static_cast<unsigned long>(tally[prod])));
            }
        }
    }
    const Field f2 = Field::of_order(2);
    const MonicPoly t2t1(Coeffs{1, 1, 1});
    CHECK(reiner_count(f2, std::vector{t2t1}, 2) == 2);
    CHECK(reiner_count(f2, std::vector{MonicPoly(Coeffs{0, 1}), MonicPoly(Coeffs{1, 1})}, 2) == 6);
    CHECK_THROWS_AS(reiner_count(f2, std::vector{t2t1, t2t1}, 4), InvalidArgument);
    CHECK_THROWS_AS(reiner_count(f2, std::vector{MonicPoly(Coeffs{1, 0, 1})}, 2), InvalidArgument);
    CHECK_THROWS_AS(reiner_count(f2, std::vector{t2t1}, 3), InvalidArgument);
}

TEST_CASE("general linear group order") {
    CHECK(gl_order(2, 2) == 6);
    CHECK(gl_order(3, 2) == 48);
    CHECK(gl_order(2, 3) == 168);
}
