#ifndef FQCYCLES_PADIC_HPP
#define FQCYCLES_PADIC_HPP

#include "fqcycles/common.hpp"
#include "fqcycles/cycleindex.hpp"
#include "fqcycles/fq.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fqc {

/// n x n matrix over Z/p^K, the truncation of a matrix over Z_p. Row-major.
class PadicMatrix {
  public:
    /// Entries are reduced mod p^K. Requires p prime, K >= 1, p^K < 2^62.
    PadicMatrix(std::uint32_t p, unsigned precision, unsigned n, std::vector<std::uint64_t> entries);
    static PadicMatrix identity(std::uint32_t p, unsigned precision, unsigned n);

    std::uint32_t p() const { return p_; }
    unsigned precision() const { return precision_; }
    unsigned n() const { return n_; }
    std::uint64_t modulus() const { return modulus_; }
    std::uint64_t operator()(unsigned i, unsigned j) const { return entries_[i * n_ + j]; }
    const std::vector<std::uint64_t>& entries() const { return entries_; }

    PadicMatrix operator*(const PadicMatrix& other) const;
    PadicMatrix operator+(const PadicMatrix& other) const;
    PadicMatrix scaled(std::uint64_t c) const;

  private:
    std::uint32_t p_;
    unsigned precision_;
    unsigned n_;
    std::uint64_t modulus_;
    std::vector<std::uint64_t> entries_;
};

/*
 * Elementary-divisor valuations v_1 <= ... <= v_n of a matrix over Z/p^K, so
 * that coker = (+) Z/p^{v_i}. A valuation equal to K means "at least K": the
 * true value is beyond the working precision and `exact` is false.
 */
struct CokernelProfile {
    std::vector<unsigned> valuations;
    unsigned precision = 1;
    bool exact = true;

    bool is_zero() const;
    /// log_p |coker|, a lower bound when !exact.
    unsigned total_valuation() const;
};

/// Smith normal form by minimal-valuation pivoting.
CokernelProfile smith_valuations(const PadicMatrix& m);

/// P(A) with P lifted coefficientwise to {0, ..., p-1}; P must live over F_p.
PadicMatrix evaluate_lift(const MonicPoly& poly, const PadicMatrix& a);

/*
 * Prob over Haar-random A in Mat_n(Z_p) that coker(P(A)) = 0 for every monic
 * irreducible P of the given degrees. Reduction mod p turns this into "f_A has
 * no irreducible factor of those degrees" over F_p, which is mat_joint_prob
 * with every count set to 0.
 */
BigRational coker_zero_prob_exact(std::uint32_t p, unsigned n, std::span<const unsigned> degrees);

/// Sampling parameters shared by the Monte Carlo experiments.
struct SamplerConfig {
    std::uint32_t p = 2;
    unsigned n = 1;
    unsigned precision = 1;
    std::uint64_t samples = 1;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::uint64_t irreducible_budget = kDefaultIrreducibleBudget;
};

/*
 * Counter-based sample of Mat_n(Z/p^K): entry (i, j) of sample s has p-adic
 * digits drawn in order from a stream keyed by (seed, s, i n + j), so the
 * matrix depends only on (seed, s) and its reduction mod p^k does not depend
 * on K >= k.
 */
PadicMatrix sample_matrix(std::uint32_t p, unsigned precision, unsigned n, std::uint64_t seed,
                          std::uint64_t sample);

inline constexpr double kZ99 = 2.5758293035489004;

struct CokernelReport {
    std::uint32_t p;
    unsigned n;
    unsigned precision;
    std::vector<unsigned> degrees;
    std::uint64_t samples;
    std::uint64_t seed;
    std::uint64_t hits;       // samples with coker(P(A)) = 0 for all listed P
    std::uint64_t saturated;  // samples where some P(A) hit the precision
    BigRational exact;
    PoissonValue poisson_target;

    double empirical() const;
    double ci99() const;  // normal-approximation half-width
    double sigma() const; // sqrt(exact (1 - exact) / samples)
    bool within_ci99() const;
    bool within_3sigma() const;
    std::string to_json() const;
    std::string to_csv() const;
};

CokernelReport monte_carlo_cokernel(const SamplerConfig& config, std::span<const unsigned> degrees);

struct TupleFrequency {
    std::vector<MonicPoly> tuple;
    std::uint64_t hits;
};

/*
 * Frequency estimates for |coker(P_j(A))| = p^{d_j k_j}. Both readings of
 * "for all tuples" are recorded: per fixed tuple (P_1, ..., P_r) and the
 * simultaneous event over every tuple. When all k_j = 0 and K = 1 the exact
 * value is available and reported.
 */
struct ConjectureReport {
    std::uint32_t p;
    unsigned n;
    unsigned precision;
    std::vector<Constraint> constraints;
    std::uint64_t samples;
    std::uint64_t seed;
    std::vector<TupleFrequency> tuples;
    std::uint64_t simultaneous_hits;
    std::uint64_t saturated;
    std::optional<BigRational> exact;  // all k_j = 0
    PoissonValue poisson_target;

    double tuple_average() const;
    double simultaneous() const;
    std::string to_json() const;
    std::string to_csv() const;
};

/// Throws InvalidArgument unless K > max_j d_j k_j and degrees are distinct.
ConjectureReport conjecture_experiment(const SamplerConfig& config,
                                       std::span<const Constraint> constraints,
                                       std::uint64_t max_tuples = 100000);

struct PadicRow {
    unsigned n;
    std::uint32_t p;
    BigRational exact;
    BigRational sym_target;  // Prob_{S_n}(no d_j-cycles)
    BigRational gap;
};

struct PadicTable {
    std::vector<unsigned> degrees;
    std::vector<PadicRow> rows;
    PoissonValue poisson_target;

    std::string to_json() const;
    /// Columns n, p, exact, float, sym_target, gap.
    std::string to_csv() const;
};

PadicTable padic_table_report(std::span<const unsigned> degrees, std::span<const unsigned> ns,
                                std::span<const std::uint32_t> ps, unsigned threads = 1);

} // namespace fqc

#endif
