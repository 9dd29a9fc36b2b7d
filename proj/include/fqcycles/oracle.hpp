#ifndef FQCYCLES_ORACLE_HPP
#define FQCYCLES_ORACLE_HPP

#include "fqcycles/common.hpp"
#include "fqcycles/cycleindex.hpp"
#include "fqcycles/fq.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace fqc {

/// Cap on exhaustive enumerations (q^{n^2} matrices or n! permutations).
struct EnumerationBudget {
    std::uint64_t max_states = kDefaultMaxStates;

    /// Throws BudgetExceeded when `states` is over the cap.
    void check(std::uint64_t states, const std::string& what) const;
};

/// Visits A_begin .. A_{end-1} of Mat_n(F_q) in odometer order, where A_i has
/// the base-q digits of i as entries (last entry fastest).
void for_each_matrix(const Field& field, unsigned n, std::uint64_t begin, std::uint64_t end,
                     const std::function<void(const MatrixFq&)>& fn);

/// Exhaustive distribution of tracked factor profiles over all of Mat_n(F_q).
JointDistribution enumerate_matrix_distribution(unsigned n, std::uint64_t q,
                                                std::span<const unsigned> tracked,
                                                const EnumerationBudget& budget = {},
                                                unsigned threads = 1);

/// Exhaustive distribution of tracked cycle counts over all of S_n.
JointDistribution enumerate_perm_distribution(unsigned n, std::span<const unsigned> tracked,
                                              const EnumerationBudget& budget = {});

/// Number of A in Mat_n(F_q) with A^n = 0, by exhaustive search.
BigInt nilpotent_count(unsigned n, std::uint64_t q, const EnumerationBudget& budget = {},
                       unsigned threads = 1);

struct SquarefreeFractionReport {
    unsigned n;
    std::uint64_t q;
    BigInt squarefree_matrices;
    BigInt total_matrices;
    BigRational fraction;
    BigRational lower_bound;  // (1 - 1/q) prod_{i<=n} (1 - q^{-i})
    bool holds;
};

/// Exhaustive fraction of A whose char poly is square-free, against the lower bound.
SquarefreeFractionReport squarefree_fraction_bound_check(unsigned n, std::uint64_t q,
                                                         const EnumerationBudget& budget = {},
                                                         unsigned threads = 1);

/// Exhaustive count of monic degree-n polynomials over F_q that are square-free
/// (and, if `nonzero_constant`, have f(0) != 0). Uses gcd(f, f').
BigInt enumerate_squarefree_polys(const Field& field, unsigned n, bool nonzero_constant);

/*
 * Probabilities p(n, k) that a uniform permutation of n letters has exactly k
 * cycles, for k <= k_max, via p(n,k) = p(n-1,k-1)/n + (n-1)/n p(n-1,k).
 * Only one row is kept, so memory is O(k_max) for any n.
 */
class CycleProbTable {
  public:
    CycleProbTable(unsigned long n, unsigned k_max);

    unsigned long n() const { return n_; }
    unsigned k_max() const { return static_cast<unsigned>(row_.size() - 1); }
    long double operator[](unsigned k) const { return k < row_.size() ? row_[k] : 0.0L; }
    long double row_sum() const;

  private:
    unsigned long n_;
    std::vector<long double> row_;
};

/// Extended-precision p(n, k); throws InvalidArgument unless 1 <= k <= n.
long double stirling_cycle_prob(unsigned long n, unsigned k);

/// Exact p(n, k) = c(n,k)/n!; n is capped at 30.
BigRational stirling_cycle_prob_exact(unsigned n, unsigned k);

/// p(n,k) (k-1)! n / (log n)^{k-1}; natural log. Requires n >= 2, k >= 1.
long double jl_ratio(unsigned long n, unsigned k);

/// H_m = 1 + 1/2 + ... + 1/m in extended precision.
long double harmonic_number(unsigned long m);

} // namespace fqc

#endif
