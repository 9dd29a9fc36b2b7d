#ifndef FQCYCLES_PARTITIONS_HPP
#define FQCYCLES_PARTITIONS_HPP

#include "fqcycles/common.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace fqc {

/*
 * An integer partition lambda_1 >= ... >= lambda_l > 0, stored as its part
 * list. Part multiplicities m_d are tabulated once at construction since the
 * cycle-index code queries them repeatedly.
 */
class Partition {
  public:
    Partition() = default;
    /// Throws InvalidArgument unless parts are positive and weakly decreasing.
    explicit Partition(std::vector<unsigned> parts);

    const std::vector<unsigned>& parts() const { return parts_; }
    unsigned length() const { return static_cast<unsigned>(parts_.size()); }
    unsigned size() const { return size_; }
    bool empty() const { return parts_.empty(); }
    unsigned largest() const { return parts_.empty() ? 0 : parts_.front(); }

    /// m_d: number of parts equal to d.
    unsigned multiplicity(unsigned d) const {
        return d < mult_.size() ? mult_[d] : 0;
    }

    /// n(lambda) = sum (i-1) lambda_i.
    std::uint64_t weighted_index() const;

    friend bool operator==(const Partition& a, const Partition& b) { return a.parts_ == b.parts_; }
    friend bool operator<(const Partition& a, const Partition& b) { return a.parts_ < b.parts_; }

  private:
    std::vector<unsigned> parts_;
    std::vector<unsigned> mult_;
    unsigned size_ = 0;
};

/// Calls fn on every partition of n, in reverse-lexicographic order.
void for_each_partition(unsigned n, const std::function<void(const Partition&)>& fn);

/// Partitions of n in reverse-lexicographic order; n = 0 gives {empty}.
std::vector<Partition> enumerate_partitions(unsigned n);

/// Partitions of n whose parts are all at most max_part.
std::vector<Partition> enumerate_partitions(unsigned n, unsigned max_part);

/// Transposed Young diagram.
Partition conjugate(const Partition& lambda);

/*
 * Automorphism count of the torsion module with residue field of order q and
 * elementary divisor type lambda:
 *   q^{|lambda| + 2 n(lambda)} prod_d prod_{i <= m_d} (1 - q^{-i}).
 * Throws IdentityFailure if the product is not an integer.
 */
BigInt macdonald_aut(const BigInt& q, const Partition& lambda);

/*
 * Independent count of Aut(F_q[t]/(t^l1) + ... + F_q[t]/(t^lk)) for prime q.
 *
 * Automorphisms correspond one-to-one with ordered bases (v_1, ..., v_k),
 * meaning M = R v_1 (+) ... (+) R v_k with ann(v_i) = (t^{l_i}). Taking parts
 * largest first, the number of valid v_i does not depend on the earlier
 * choices, so the count is a product over i of
 *   #{ v : t^{l_i} v = 0 and span{t^j v} meets span(e_1..e_{i-1}) trivially
 *         with dimension l_i },
 * each found by scanning all q^{|lambda|} module elements and doing Gaussian
 * elimination. Throws BudgetExceeded when q^{|lambda|} > max_module_size.
 */
BigInt aut_brute_force(std::uint32_t q, const Partition& lambda,
                       std::uint64_t max_module_size = 4096);

/// Mismatch found by bounded_partition_identity_check.
struct SeriesMismatch {
    unsigned degree;
    BigInt lhs;
    BigInt rhs;
};

/*
 * Compares sum_{lambda with <= n parts} X^{|lambda|} with
 * sum_{lambda with parts <= n} X^{|lambda|} coefficientwise through X^D.
 * Returns the first differing coefficient, or nullopt when they agree.
 */
std::optional<SeriesMismatch> bounded_partition_identity_check(unsigned n, unsigned max_degree);

} // namespace fqc

#endif
