#include "fqcycles/common.hpp"

#include <limits>

namespace fqc {

BigInt ipow(const BigInt& base, unsigned long exp) {
    BigInt out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
    return out;
}

BigRational rpow(const BigRational& base, long exp) {
    if (exp < 0) {
        if (base == 0)
            throw InvalidArgument("rpow: zero to a negative power");
        return rpow(BigRational(1) / base, -exp);
    }
    BigRational out(ipow(base.get_num(), static_cast<unsigned long>(exp)),
                    ipow(base.get_den(), static_cast<unsigned long>(exp)));
    out.canonicalize();
    return out;
}

BigInt factorial(unsigned long n) {
    BigInt out;
    mpz_fac_ui(out.get_mpz_t(), n);
    return out;
}

std::string fraction_string(const BigRational& x) {
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

BigRational parse_fraction(const std::string& s) {
    BigRational out;
    if (out.set_str(s, 10) != 0 || out.get_den() == 0)
        throw InvalidArgument("not a rational: '" + s + "'");
    out.canonicalize();
    return out;
}

std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t out = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (base != 0 && out > std::numeric_limits<std::uint64_t>::max() / base)
            return std::numeric_limits<std::uint64_t>::max();
        out *= base;
    }
    return out;
}

bool is_prime(std::uint64_t n) {
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

PrimePower split_prime_power(std::uint64_t q) {
    if (q < 2)
        throw InvalidArgument("not a prime power: " + std::to_string(q));
    std::uint64_t p = 2;
    while (p * p <= q && q % p != 0)
        ++p;
    if (q % p != 0)
        p = q;
    std::uint32_t e = 0;
    std::uint64_t rest = q;
    while (rest % p == 0) {
        rest /= p;
        ++e;
    }
    if (rest != 1 || p > std::numeric_limits<std::uint32_t>::max())
        throw InvalidArgument("not a prime power: " + std::to_string(q));
    return {static_cast<std::uint32_t>(p), e};
}

} // namespace fqc
