#include "fqcycles/oracle.hpp"

#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace fqc {

void EnumerationBudget::check(std::uint64_t states, const std::string& what) const {
    if (states > max_states)
        throw BudgetExceeded(what + ": " + std::to_string(states) + " states exceed budget " +
                             std::to_string(max_states));
}

void for_each_matrix(const Field& field, unsigned n, std::uint64_t begin, std::uint64_t end,
                     const std::function<void(const MatrixFq&)>& fn) {
    const unsigned cells = n * n;
    const std::uint32_t q = field.q();
    MatrixFq a = MatrixFq::zero(n);
    // decode `begin`, then count upward like an odometer
    std::vector<FqElem> digits(cells, 0);
    std::uint64_t rest = begin;
    for (unsigned c = cells; c-- > 0;) {
        digits[c] = static_cast<FqElem>(rest % q);
        rest /= q;
    }
    for (std::uint64_t idx = begin; idx < end; ++idx) {
        for (unsigned c = 0; c < cells; ++c)
            a(c / n, c % n) = digits[c];
        fn(a);
        for (unsigned c = cells; c-- > 0;) {
            if (++digits[c] < q)
                break;
            digits[c] = 0;
        }
    }
}

JointDistribution enumerate_matrix_distribution(unsigned n, std::uint64_t q,
                                                std::span<const unsigned> tracked,
                                                const EnumerationBudget& budget, unsigned threads) {
    const Field field = Field::of_order(q);
    const std::uint64_t total = saturating_pow(q, std::uint64_t{n} * n);
    budget.check(total, "matrix enumeration");

    const unsigned workers = std::max(1u, threads);
    std::vector<std::map<FactorProfile, std::uint64_t>> tallies(workers);
    detail::parallel_shards(total, workers, [&](unsigned shard, std::uint64_t begin, std::uint64_t end) {
        std::map<Coeffs, FactorProfile> cache;
        auto& tally = tallies[shard];
        for_each_matrix(field, n, begin, end, [&](const MatrixFq& a) {
            const MonicPoly f = char_poly(field, a);
            auto it = cache.find(f.coeffs());
            if (it == cache.end())
                it = cache.emplace(f.coeffs(), factor_degree_profile(field, f)).first;
            ++tally[it->second.restricted(tracked)];
        });
    });

    std::map<FactorProfile, BigInt> merged;
    for (const auto& tally : tallies)
        for (const auto& [profile, count] : tally)
            merged[profile] += BigInt(static_cast<unsigned long>(count));
    JointDistribution out(n, q, {tracked.begin(), tracked.end()});
    const BigInt denom = ipow(BigInt(static_cast<unsigned long>(q)), n * n);
    for (const auto& [profile, count] : merged) {
        BigRational p(count, denom);
        p.canonicalize();
        out.add(profile, p);
    }
    return out;
}

JointDistribution enumerate_perm_distribution(unsigned n, std::span<const unsigned> tracked,
                                              const EnumerationBudget& budget) {
    std::uint64_t total = 1;
    for (unsigned i = 2; i <= n; ++i) {
        total = total > budget.max_states ? total : total * i;
    }
    budget.check(total, "permutation enumeration");

    std::vector<unsigned> perm(n);
    std::iota(perm.begin(), perm.end(), 0u);
    std::map<FactorProfile, std::uint64_t> tally;
    std::vector<char> seen(n);
    do {
        std::fill(seen.begin(), seen.end(), 0);
        FactorProfile profile;
        for (unsigned s = 0; s < n; ++s) {
            if (seen[s])
                continue;
            unsigned len = 0;
            for (unsigned x = s; !seen[x]; x = perm[x]) {
                seen[x] = 1;
                ++len;
            }
            profile.add(len, 1);
        }
        ++tally[profile.restricted(tracked)];
    } while (std::next_permutation(perm.begin(), perm.end()));

    JointDistribution out(n, std::nullopt, {tracked.begin(), tracked.end()});
    const BigInt denom = factorial(n);
    for (const auto& [profile, count] : tally) {
        BigRational p(BigInt(static_cast<unsigned long>(count)), denom);
        p.canonicalize();
        out.add(profile, p);
    }
    return out;
}

BigInt nilpotent_count(unsigned n, std::uint64_t q, const EnumerationBudget& budget,
                       unsigned threads) {
    const Field field = Field::of_order(q);
    const std::uint64_t total = saturating_pow(q, std::uint64_t{n} * n);
    budget.check(total, "nilpotent enumeration");
    const unsigned workers = std::max(1u, threads);
    std::vector<std::uint64_t> counts(workers, 0);
    detail::parallel_shards(total, workers, [&](unsigned shard, std::uint64_t begin, std::uint64_t end) {
        for_each_matrix(field, n, begin, end, [&](const MatrixFq& a) {
            MatrixFq power = MatrixFq::identity(n);
            for (unsigned i = 0; i < n; ++i)
                power = matmul(field, power, a);
            const auto& e = power.entries();
            if (std::all_of(e.begin(), e.end(), [](FqElem x) { return x == 0; }))
                ++counts[shard];
        });
    });
    BigInt out = 0;
    for (auto c : counts)
        out += BigInt(static_cast<unsigned long>(c));
    return out;
}

SquarefreeFractionReport squarefree_fraction_bound_check(unsigned n, std::uint64_t q,
                                                         const EnumerationBudget& budget,
                                                         unsigned threads) {
    const Field field = Field::of_order(q);
    const std::uint64_t total = saturating_pow(q, std::uint64_t{n} * n);
    budget.check(total, "square-free fraction enumeration");
    const unsigned workers = std::max(1u, threads);
    std::vector<std::uint64_t> counts(workers, 0);
    detail::parallel_shards(total, workers, [&](unsigned shard, std::uint64_t begin, std::uint64_t end) {
        std::map<Coeffs, bool> cache;
        for_each_matrix(field, n, begin, end, [&](const MatrixFq& a) {
            const MonicPoly f = char_poly(field, a);
            auto it = cache.find(f.coeffs());
            if (it == cache.end())
                it = cache.emplace(f.coeffs(), is_squarefree(field, f)).first;
            if (it->second)
                ++counts[shard];
        });
    });
    SquarefreeFractionReport out;
    out.n = n;
    out.q = q;
    out.squarefree_matrices = 0;
    for (auto c : counts)
        out.squarefree_matrices += BigInt(static_cast<unsigned long>(c));
    out.total_matrices = ipow(BigInt(static_cast<unsigned long>(q)), n * n);
    out.fraction = BigRational(out.squarefree_matrices, out.total_matrices);
    out.fraction.canonicalize();
    const BigRational qinv(1, static_cast<unsigned long>(q));
    out.lower_bound = 1 - qinv;
    for (unsigned i = 1; i <= n; ++i)
        out.lower_bound *= 1 - rpow(qinv, i);
    out.holds = out.fraction >= out.lower_bound;
    return out;
}

BigInt enumerate_squarefree_polys(const Field& field, unsigned n, bool nonzero_constant) {
    const std::uint32_t q = field.q();
    const std::uint64_t total = saturating_pow(q, n);
    Coeffs c(n + 1, 0);
    c[n] = 1;
    std::uint64_t count = 0;
    for (std::uint64_t code = 0; code < total; ++code) {
        std::uint64_t rest = code;
        for (unsigned i = 0; i < n; ++i) {
            c[i] = static_cast<FqElem>(rest % q);
            rest /= q;
        }
        if (nonzero_constant && c[0] == 0)
            continue;
        if (is_squarefree(field, MonicPoly(c)))
            ++count;
    }
    return BigInt(static_cast<unsigned long>(count));
}

CycleProbTable::CycleProbTable(unsigned long n, unsigned k_max) : n_(n), row_(k_max + 1, 0.0L) {
    row_[0] = 1.0L;  // p(0, 0)
    for (unsigned long m = 1; m <= n; ++m) {
        const long double inv = 1.0L / static_cast<long double>(m);
        const long double stay = static_cast<long double>(m - 1) * inv;
        for (unsigned k = k_max; k >= 1; --k)
            row_[k] = row_[k - 1] * inv + stay * row_[k];
        row_[0] = 0.0L;
    }
}

long double CycleProbTable::row_sum() const {
    long double out = 0.0L;
    for (auto it = row_.rbegin(); it != row_.rend(); ++it)
        out += *it;
    return out;
}

long double stirling_cycle_prob(unsigned long n, unsigned k) {
    if (k < 1 || k > n)
        throw InvalidArgument("stirling_cycle_prob: need 1 <= k <= n");
    return CycleProbTable(n, k)[k];
}

BigRational stirling_cycle_prob_exact(unsigned n, unsigned k) {
    if (n > 30)
        throw InvalidArgument("stirling_cycle_prob_exact: n is capped at 30");
    if (k < 1 || k > n)
        throw InvalidArgument("stirling_cycle_prob_exact: need 1 <= k <= n");
    std::vector<BigRational> row(k + 1, BigRational(0));
    row[0] = 1;
    for (unsigned m = 1; m <= n; ++m) {
        for (unsigned j = k; j >= 1; --j) {
            row[j] = row[j - 1] / m + BigRational(m - 1, m) * row[j];
            row[j].canonicalize();
        }
        row[0] = 0;
    }
    return row[k];
}

long double jl_ratio(unsigned long n, unsigned k) {
    if (n < 2 || k < 1)
        throw InvalidArgument("jl_ratio: need n >= 2 and k >= 1");
    if (k == 1)
        return 1.0L;  // p(n,1) = 1/n exactly
    long double fact = 1.0L;
    for (unsigned i = 2; i < k; ++i)
        fact *= i;
    const long double logn = std::log(static_cast<long double>(n));
    return stirling_cycle_prob(n, k) * fact * static_cast<long double>(n) /
           std::pow(logn, static_cast<long double>(k - 1));
}

long double harmonic_number(unsigned long m) {
    long double out = 0.0L;
    for (unsigned long i = m; i >= 1; --i)
        out += 1.0L / static_cast<long double>(i);
    return out;
}

} // namespace fqc
