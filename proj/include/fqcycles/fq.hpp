#ifndef FQCYCLES_FQ_HPP
#define FQCYCLES_FQ_HPP

#include "fqcycles/common.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <vector>

namespace fqc {

/// {p, e} with q = p^e.
struct FieldSpec {
    std::uint32_t p = 2;
    std::uint32_t e = 1;

    std::uint64_t q() const;
    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

/// An element of F_q. F_{p^e} is F_p[x]/(g); the element sum c_i x^i is stored
/// as the integer sum c_i p^i, so 0 and 1 keep their usual encodings.
using FqElem = std::uint32_t;

/*
 * Arithmetic in F_q. Prime fields compute residues directly; proper
 * extensions use precomputed tables, which limits them to q <= 1024.
 * The modulus of F_{p^e} is the lexicographically least monic irreducible
 * of degree e over F_p (comparing coefficient vectors from the top down).
 * Copies share the immutable tables.
 */
class Field {
  public:
    static constexpr std::uint64_t kMaxTabulatedOrder = 1024;

    explicit Field(FieldSpec spec);
    static Field prime(std::uint32_t p) { return Field(FieldSpec{p, 1}); }
    static Field of_order(std::uint64_t q);

    const FieldSpec& spec() const { return spec_; }
    std::uint32_t p() const { return spec_.p; }
    std::uint32_t e() const { return spec_.e; }
    std::uint32_t q() const { return q_; }

    /// Modulus over F_p, constant term first; {0, 1} when e == 1.
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    FqElem add(FqElem a, FqElem b) const;
    FqElem sub(FqElem a, FqElem b) const;
    FqElem neg(FqElem a) const;
    FqElem mul(FqElem a, FqElem b) const;
    FqElem inv(FqElem a) const;
    FqElem pow(FqElem a, std::uint64_t k) const;

    /// Image of an integer in the prime subfield.
    FqElem from_int(long long v) const;

    /// Coefficients over F_p, length e.
    std::vector<std::uint32_t> digits(FqElem a) const;
    FqElem from_digits(std::span<const std::uint32_t> digits) const;

    /// Inverse Frobenius: the unique b with b^p = a.
    FqElem pth_root(FqElem a) const;

    friend bool operator==(const Field& a, const Field& b) { return a.spec_ == b.spec_; }

  private:
    struct Tables {
        std::vector<FqElem> add, mul, neg, inv;
    };

    FieldSpec spec_;
    std::uint32_t q_;
    std::vector<std::uint32_t> modulus_;
    std::shared_ptr<const Tables> tables_;
};

/// Dense polynomial over F_q, constant term first, no trailing zeros.
using Coeffs = std::vector<FqElem>;

/// Monic polynomial over F_q; the coefficient vector ends in 1.
class MonicPoly {
  public:
    MonicPoly() : coeffs_{1} {}
    explicit MonicPoly(Coeffs coeffs);

    unsigned degree() const { return static_cast<unsigned>(coeffs_.size() - 1); }
    const Coeffs& coeffs() const { return coeffs_; }
    FqElem operator[](std::size_t i) const { return coeffs_[i]; }

    friend bool operator==(const MonicPoly&, const MonicPoly&) = default;
    /// Lexicographic on the coefficient vector from the leading term down.
    friend bool operator<(const MonicPoly& a, const MonicPoly& b);

  private:
    Coeffs coeffs_;
};

/// Polynomial arithmetic in F_q[t] over a fixed field.
class PolyRing {
  public:
    explicit PolyRing(Field field) : field_(std::move(field)) {}
    const Field& field() const { return field_; }

    static void trim(Coeffs& a);
    static bool is_zero(const Coeffs& a) { return a.empty(); }
    static int degree(const Coeffs& a) { return static_cast<int>(a.size()) - 1; }

    Coeffs add(const Coeffs& a, const Coeffs& b) const;
    Coeffs sub(const Coeffs& a, const Coeffs& b) const;
    Coeffs mul(const Coeffs& a, const Coeffs& b) const;
    Coeffs scale(const Coeffs& a, FqElem c) const;
    /// Quotient and remainder; b must be nonzero.
    std::pair<Coeffs, Coeffs> divmod(const Coeffs& a, const Coeffs& b) const;
    Coeffs mod(const Coeffs& a, const Coeffs& b) const { return divmod(a, b).second; }
    Coeffs div_exact(const Coeffs& a, const Coeffs& b) const;
    Coeffs make_monic(const Coeffs& a) const;
    /// Monic gcd; gcd(0, 0) = 0.
    Coeffs gcd(Coeffs a, Coeffs b) const;
    Coeffs derivative(const Coeffs& a) const;
    Coeffs powmod(Coeffs base, std::uint64_t exp, const Coeffs& modulus) const;
    FqElem eval(const Coeffs& a, FqElem x) const;

    /// For a polynomial in t^p, the polynomial whose p-th power it is.
    Coeffs pth_root(const Coeffs& a) const;

  private:
    Field field_;
};

/// Degree d -> number of degree-d monic irreducible factors, counted with
/// multiplicity. Zero counts are never stored.
class FactorProfile {
  public:
    FactorProfile() = default;
    explicit FactorProfile(std::map<unsigned, unsigned> counts);

    unsigned count(unsigned d) const;
    void add(unsigned d, unsigned k);
    unsigned weighted_degree() const;
    const std::map<unsigned, unsigned>& counts() const { return counts_; }

    /// Keeps only the listed degrees; absent ones read as zero.
    FactorProfile restricted(std::span<const unsigned> degrees) const;

    friend auto operator<=>(const FactorProfile&, const FactorProfile&) = default;

  private:
    std::map<unsigned, unsigned> counts_;
};

/// n x n matrix over F_q, row-major.
class MatrixFq {
  public:
    MatrixFq(unsigned n, std::vector<FqElem> entries);
    static MatrixFq zero(unsigned n) { return MatrixFq(n, std::vector<FqElem>(n * n, 0)); }
    static MatrixFq identity(unsigned n);

    unsigned n() const { return n_; }
    FqElem operator()(unsigned i, unsigned j) const { return entries_[i * n_ + j]; }
    FqElem& operator()(unsigned i, unsigned j) { return entries_[i * n_ + j]; }
    const std::vector<FqElem>& entries() const { return entries_; }

  private:
    unsigned n_;
    std::vector<FqElem> entries_;
};

MatrixFq matmul(const Field& field, const MatrixFq& a, const MatrixFq& b);

/// Number of monic irreducibles of degree d over F_q (necklace formula).
BigInt irreducible_count(std::uint64_t q, unsigned d);

/// All monic irreducibles of degree d, sorted; refuses when q^d > budget.
std::vector<MonicPoly> enumerate_irreducibles(const Field& field, unsigned d,
                                              std::uint64_t budget = kDefaultIrreducibleBudget);

/// Square-free factorization: pairs (square-free part, multiplicity).
std::vector<std::pair<Coeffs, unsigned>> squarefree_decomposition(const PolyRing& ring,
                                                                  const Coeffs& f);

/// Distinct-degree split of a square-free monic polynomial: degree -> count.
std::map<unsigned, unsigned> distinct_degree_counts(const PolyRing& ring, const Coeffs& f);

FactorProfile factor_degree_profile(const Field& field, const MonicPoly& f);

bool is_irreducible(const Field& field, const MonicPoly& f);
bool is_squarefree(const Field& field, const MonicPoly& f);

/// det(tI - A), computed with Berkowitz's division-free recurrence.
MonicPoly char_poly(const Field& field, const MatrixFq& a);

/// Monic degree-n square-free polynomials: q^n - q^{n-1} for n >= 2, else q^n.
BigInt squarefree_count(std::uint64_t q, unsigned n);

/// Monic degree-n square-free f with f(0) != 0, read off the generating
/// function (1 - q t^2) / ((1 + t)(1 - q t)).
BigInt squarefree_nonzero_constant_count(std::uint64_t q, unsigned n);

/*
 * Number of A in Mat_n(F_q) whose characteristic polynomial is the product of
 * the given distinct irreducibles:
 *   q^{n^2 - n} prod_{i<=n} (1 - q^{-i}) / prod_j (1 - q^{-deg P_j}).
 * Throws InvalidArgument on repeated, reducible or degree-mismatched input.
 */
BigInt reiner_count(const Field& field, std::span<const MonicPoly> factors, unsigned n);

/// |GL_n(F_q)| = prod_{i<n} (q^n - q^i).
BigInt gl_order(std::uint64_t q, unsigned n);

} // namespace fqc

#endif
