#ifndef FQCYCLES_CYCLEINDEX_HPP
#define FQCYCLES_CYCLEINDEX_HPP

#include "fqcycles/common.hpp"
#include "fqcycles/fq.hpp"
#include "fqcycles/partitions.hpp"
#include "fqcycles/series.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fqc {

/// "exactly `count` cycles of length `degree`" / "exactly `count` degree-`degree` factors".
struct Constraint {
    unsigned degree = 1;
    unsigned count = 0;

    friend auto operator<=>(const Constraint&, const Constraint&) = default;
};

/// Throws InvalidArgument on a zero degree or a repeated degree.
void validate_constraints(std::span<const Constraint> constraints);

/// Sorted, de-duplicated degrees of a constraint set.
std::vector<unsigned> constraint_degrees(std::span<const Constraint> constraints);

bool profile_matches(const FactorProfile& profile, std::span<const Constraint> constraints);

/*
 * Exact distribution of a factor or cycle profile restricted to `tracked`
 * degrees, either over S_n (no q) or over Mat_n(F_q).
 */
class JointDistribution {
  public:
    JointDistribution(unsigned n, std::optional<std::uint64_t> q, std::vector<unsigned> tracked);

    unsigned n() const { return n_; }
    const std::optional<std::uint64_t>& q() const { return q_; }
    const std::vector<unsigned>& tracked() const { return tracked_; }
    const std::map<FactorProfile, BigRational>& entries() const { return entries_; }

    void add(const FactorProfile& profile, const BigRational& p);
    BigRational probability(std::span<const Constraint> constraints) const;
    BigRational total() const;

    /// {"n", "context", "q", "tracked", "entries": [{"profile", "exact", "float"}], "total"}
    std::string to_json() const;

    friend bool operator==(const JointDistribution& a, const JointDistribution& b) {
        return a.n_ == b.n_ && a.tracked_ == b.tracked_ && a.entries_ == b.entries_;
    }

  private:
    unsigned n_;
    std::optional<std::uint64_t> q_;
    std::vector<unsigned> tracked_;
    std::map<FactorProfile, BigRational> entries_;
};

/// 1 / z_lambda = prod_i 1 / (m_i! i^{m_i}): the fraction of S_n with cycle type lambda.
BigRational cycle_type_fraction(const Partition& lambda);

/// Z(S_n, x) with untracked x_d set to 1, by summing over cycle types.
MultiPoly sym_cycle_index(unsigned n, std::span<const unsigned> tracked);

/// Prob over sigma in S_n that m_d(sigma) = k for every constraint.
BigRational sym_joint_prob(unsigned n, std::span<const Constraint> constraints);

JointDistribution sym_distribution(unsigned n, std::span<const unsigned> tracked);

/*
 * sum_n bold-Z([Mat_n/GL_n](F_q), x) u^n through u^order, assembled as
 *   prod_{d=1}^{order} F_d(u)^{M(q,d)},
 *   F_d(u) = sum_{lambda : d|lambda| <= order} x_d^{|lambda|} u^{d|lambda|} / |Aut_{q^d}(lambda)|,
 * with x_d = 1 for untracked d. Coefficients keep the 1/|GL_n| normalization.
 */
TruncSeries mat_cycle_index_series(std::uint64_t q, unsigned order, std::span<const unsigned> tracked);

/// Per-degree factor F_d(u) above (x_d tracked iff `tracked_marker`).
TruncSeries mat_degree_factor(std::uint64_t q, unsigned d, unsigned order, bool tracked_marker);

/// Distribution of the tracked factor profile of f_A over A in Mat_n(F_q).
JointDistribution mat_distribution(unsigned n, std::uint64_t q, std::span<const unsigned> tracked);

/// Prob over A in Mat_n(F_q) that f_A has k degree-d irreducible factors for every constraint.
BigRational mat_joint_prob(unsigned n, std::uint64_t q, std::span<const Constraint> constraints);

struct LimitRow {
    std::uint64_t q;
    BigRational exact;
    BigRational gap;  // |exact - target|
};

struct LimitReport {
    unsigned n;
    std::vector<Constraint> constraints;
    BigRational target;  // the S_n probability
    std::vector<LimitRow> rows;
    /// q values at which the gap grew relative to the previous q.
    std::vector<std::uint64_t> monotonicity_failures;

    bool weakly_decreasing() const { return monotonicity_failures.empty(); }
    std::string to_json() const;
    /// Columns q, exact, float, gap.
    std::string to_csv() const;
};

/// qs must be strictly increasing prime powers. Rows are computed on up to
/// `threads` workers; the result does not depend on the worker count.
LimitReport limit_q_report(unsigned n, std::span<const Constraint> constraints,
                           std::span<const std::uint64_t> qs, unsigned threads = 1);

/*
 * Generating function sum_n Prob_{S_n}(m_d = 0 for d in zero_degrees and
 * m_d in {0, k} for (d, k) in hits) u^n in closed form:
 *   exp(-sum_{all listed d} u^d / d) / (1 - u) * prod_hits (1 + (u^d/d)^k / k!).
 * Throws InvalidArgument on repeated degrees or a hit with k = 0.
 */
TruncSeries shepp_lloyd_series(std::span<const unsigned> zero_degrees,
                               std::span<const Constraint> hits, unsigned order);

/// Exact form of prod_j e^{-1/d_j} (1/d_j)^{k_j} / k_j!: a rational times e^{exponent}.
struct PoissonValue {
    BigRational coefficient;
    BigRational exponent;          // -sum_j 1/d_j
    std::vector<unsigned> degrees; // one entry per factor e^{-1/d}

    double value() const;
    /// e.g. "1/2*e^(-1/2)".
    std::string to_string() const;
};

PoissonValue poisson_limit(std::span<const Constraint> constraints);

/// |GL_n(F_q)| / q^{n^2}.
BigRational gl_fraction(std::uint64_t q, unsigned n);

} // namespace fqc

#endif
