#ifndef FQCYCLES_SERIES_HPP
#define FQCYCLES_SERIES_HPP

#include "fqcycles/common.hpp"

#include <compare>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace fqc {

/// A marker variable: x_d when refinement == 0, otherwise x_{d,m} with m = refinement.
struct Marker {
    unsigned degree = 1;
    unsigned refinement = 0;

    friend auto operator<=>(const Marker&, const Marker&) = default;
};

/// Monomial in marker variables, sorted by marker with no zero exponents.
class MarkerMonomial {
  public:
    MarkerMonomial() = default;
    static MarkerMonomial single(Marker m, unsigned exponent = 1);
    static MarkerMonomial x(unsigned degree, unsigned exponent = 1) {
        return single(Marker{degree, 0}, exponent);
    }

    unsigned exponent(Marker m) const;
    unsigned exponent_of_degree(unsigned d) const { return exponent(Marker{d, 0}); }
    bool is_constant() const { return factors_.empty(); }
    const std::vector<std::pair<Marker, unsigned>>& factors() const { return factors_; }

    /// Drops every occurrence of m (i.e. evaluates it at 1).
    MarkerMonomial without(Marker m) const;

    /// "1", "x1", "x1^2*x3", "x2_1" (x_{2,1}).
    std::string to_string() const;

    friend MarkerMonomial operator*(const MarkerMonomial& a, const MarkerMonomial& b);
    friend auto operator<=>(const MarkerMonomial&, const MarkerMonomial&) = default;

  private:
    std::vector<std::pair<Marker, unsigned>> factors_;
};

/// Sparse polynomial over Q in the marker variables; zero terms are never stored.
class MultiPoly {
  public:
    using Terms = std::map<MarkerMonomial, BigRational>;

    MultiPoly() = default;
    MultiPoly(const BigRational& c);  // NOLINT: constants convert implicitly
    MultiPoly(const MarkerMonomial& m, const BigRational& c);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// Constant term (the coefficient of the empty monomial).
    BigRational constant() const;
    BigRational coefficient(const MarkerMonomial& m) const;

    void add_term(const MarkerMonomial& m, const BigRational& c);

    MultiPoly& operator+=(const MultiPoly& other);
    MultiPoly& operator-=(const MultiPoly& other);
    MultiPoly& operator*=(const BigRational& c);
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(MultiPoly a, const BigRational& c) { return a *= c; }
    MultiPoly operator-() const { return *this * BigRational(-1); }
    friend bool operator==(const MultiPoly&, const MultiPoly&) = default;

    /// Sets the given marker to 1.
    MultiPoly drop_marker(Marker m) const;
    /// Sets every marker to 1.
    BigRational evaluate_at_ones() const;

    std::string to_string() const;

  private:
    Terms terms_;
};

/*
 * Power series in u truncated after u^order. Orders are fixed at construction
 * and binary operations require equal orders.
 */
class TruncSeries {
  public:
    explicit TruncSeries(unsigned order);
    TruncSeries(unsigned order, std::vector<MultiPoly> coeffs);

    static TruncSeries constant(unsigned order, const MultiPoly& c);
    /// c u^k (zero when k > order).
    static TruncSeries monomial(unsigned order, unsigned k, const MultiPoly& c);
    /// 1 + u + u^2 + ... = 1 / (1 - u).
    static TruncSeries geometric(unsigned order);

    unsigned order() const { return order_; }
    const MultiPoly& operator[](unsigned n) const { return coeffs_.at(n); }
    const std::vector<MultiPoly>& coeffs() const { return coeffs_; }

    /// Coefficient of u^n times the marker monomial m.
    BigRational coefficient(unsigned n, const MarkerMonomial& m = {}) const;

    TruncSeries& operator+=(const TruncSeries& other);
    TruncSeries& operator-=(const TruncSeries& other);
    TruncSeries& operator*=(const BigRational& c);
    friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
    friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }
    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);
    friend TruncSeries operator*(TruncSeries a, const BigRational& c) { return a *= c; }
    friend bool operator==(const TruncSeries&, const TruncSeries&) = default;

    /// Evaluates every marker at 1.
    TruncSeries drop_markers() const;

    /// JSON text {"order": N, "coeffs": [[["monomial", "num/den"], ...], ...]}.
    std::string to_json() const;

  private:
    void check_order(const TruncSeries& other) const;

    unsigned order_;
    std::vector<MultiPoly> coeffs_;
};

/// a^M by binary exponentiation.
TruncSeries series_pow(const TruncSeries& a, const BigInt& exponent);

/// exp(a) via n g_n = sum_k k a_k g_{n-k}; a must have zero constant term.
TruncSeries series_exp(const TruncSeries& a);

/// 1/a for a with constant term exactly 1.
TruncSeries geometric_inverse(const TruncSeries& a);

/// c_0 + ... + c_n, the u^n coefficient of f/(1-u); f must be marker-free.
BigRational partial_sum_limit(const TruncSeries& f, unsigned n);

} // namespace fqc

#endif
