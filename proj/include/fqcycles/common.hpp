#ifndef FQCYCLES_COMMON_HPP
#define FQCYCLES_COMMON_HPP

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fqc {

using BigInt = mpz_class;
using BigRational = mpq_class;

// Error kinds map one-to-one onto the C API status codes and CLI exit codes.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
  public:
    using Error::Error;
};

class BudgetExceeded : public Error {
  public:
    using Error::Error;
};

class IdentityFailure : public Error {
  public:
    using Error::Error;
};

/// Default cap on exhaustive enumerations (q^{n^2} matrices, n! permutations).
inline constexpr std::uint64_t kDefaultMaxStates = std::uint64_t{1} << 22;

/// Default cap on q^d when listing irreducibles of degree d.
inline constexpr std::uint64_t kDefaultIrreducibleBudget = 10'000'000;

BigInt ipow(const BigInt& base, unsigned long exp);
BigRational rpow(const BigRational& base, long exp);
BigInt factorial(unsigned long n);

/// Always "num/den", including integers ("3/1").
std::string fraction_string(const BigRational& x);
BigRational parse_fraction(const std::string& s);

/// Saturating q^e for budget checks; returns UINT64_MAX on overflow.
std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp);

bool is_prime(std::uint64_t n);

/// Splits q = p^e; throws InvalidArgument when q is not a prime power.
struct PrimePower {
    std::uint32_t p;
    std::uint32_t e;
};
PrimePower split_prime_power(std::uint64_t q);

} // namespace fqc

#endif
