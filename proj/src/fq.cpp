#include "fqcycles/fq.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace fqc {

std::uint64_t FieldSpec::q() const { return saturating_pow(p, e); }

namespace {

std::vector<std::uint32_t> least_irreducible_modulus(std::uint32_t p, std::uint32_t e) {
    const Field base = Field::prime(p);
    std::vector<std::uint32_t> digits(e, 0);
    const std::uint64_t candidates = saturating_pow(p, e);
    for (std::uint64_t code = 0; code < candidates; ++code) {
        std::uint64_t rest = code;
        for (std::uint32_t i = 0; i < e; ++i) {
            digits[i] = static_cast<std::uint32_t>(rest % p);
            rest /= p;
        }
        Coeffs c(digits.begin(), digits.end());
        c.push_back(1);
        MonicPoly g(c);
        if (is_irreducible(base, g))
            return {c.begin(), c.end()};
    }
    throw Error("no irreducible modulus found");  // unreachable for prime p
}

} // namespace

Field::Field(FieldSpec spec) : spec_(spec) {
    if (!is_prime(spec.p))
        throw InvalidArgument("field characteristic is not prime: " + std::to_string(spec.p));
    if (spec.e == 0)
        throw InvalidArgument("field extension degree must be >= 1");
    if (spec.p > (std::uint32_t{1} << 31))
        throw InvalidArgument("field characteristic too large");
    const std::uint64_t q = spec.q();
    if (spec.e == 1) {
        q_ = spec.p;
        modulus_ = {0, 1};
        return;
    }
    if (q > kMaxTabulatedOrder)
        throw InvalidArgument("extension field order " + std::to_string(q) +
                              " exceeds the tabulated limit " +
                              std::to_string(kMaxTabulatedOrder));
    q_ = static_cast<std::uint32_t>(q);
    modulus_ = least_irreducible_modulus(spec.p, spec.e);

    const std::uint32_t p = spec.p;
    const std::uint32_t e = spec.e;
    auto tables = std::make_shared<Tables>();
    tables->add.resize(q * q);
    tables->mul.resize(q * q);
    tables->neg.resize(q);
    tables->inv.resize(q, 0);

    auto split = [&](std::uint32_t a) {
        std::vector<std::uint32_t> d(e);
        for (std::uint32_t i = 0; i < e; ++i) {
            d[i] = a % p;
            a /= p;
        }
        return d;
    };
    auto join = [&](const std::vector<std::uint32_t>& d) {
        std::uint32_t out = 0;
        for (std::uint32_t i = e; i-- > 0;)
            out = out * p + d[i];
        return out;
    };

    for (std::uint32_t a = 0; a < q_; ++a) {
        const auto da = split(a);
        std::vector<std::uint32_t> dn(e);
        for (std::uint32_t i = 0; i < e; ++i)
            dn[i] = (p - da[i]) % p;
        tables->neg[a] = join(dn);
        for (std::uint32_t b = 0; b < q_; ++b) {
            const auto db = split(b);
            std::vector<std::uint32_t> sum(e);
            for (std::uint32_t i = 0; i < e; ++i)
                sum[i] = (da[i] + db[i]) % p;
            tables->add[a * q_ + b] = join(sum);

            std::vector<std::uint64_t> prod(2 * e - 1, 0);
            for (std::uint32_t i = 0; i < e; ++i)
                for (std::uint32_t j = 0; j < e; ++j)
                    prod[i + j] = (prod[i + j] + std::uint64_t{da[i]} * db[j]) % p;
            // reduce by the monic modulus from the top
            for (std::uint32_t k = 2 * e - 1; k-- > e;) {
                const std::uint64_t c = prod[k];
                if (c == 0)
                    continue;
                prod[k] = 0;
                for (std::uint32_t i = 0; i < e; ++i)
                    prod[k - e + i] = (prod[k - e + i] + (p - c) * modulus_[i]) % p;
            }
            std::vector<std::uint32_t> red(e);
            for (std::uint32_t i = 0; i < e; ++i)
                red[i] = static_cast<std::uint32_t>(prod[i]);
            tables->mul[a * q_ + b] = join(red);
        }
    }
    for (std::uint32_t a = 1; a < q_; ++a)
        for (std::uint32_t b = 1; b < q_; ++b)
            if (tables->mul[a * q_ + b] == 1) {
                tables->inv[a] = b;
                break;
            }
    tables_ = std::move(tables);
}

Field Field::of_order(std::uint64_t q) {
    const auto pp = split_prime_power(q);
    return Field(FieldSpec{pp.p, pp.e});
}

FqElem Field::add(FqElem a, FqElem b) const {
    if (!tables_) {
        const std::uint64_t s = std::uint64_t{a} + b;
        return static_cast<FqElem>(s >= q_ ? s - q_ : s);
    }
    return tables_->add[a * q_ + b];
}

FqElem Field::neg(FqElem a) const {
    if (!tables_)
        return a == 0 ? 0 : q_ - a;
    return tables_->neg[a];
}

FqElem Field::sub(FqElem a, FqElem b) const { return add(a, neg(b)); }

FqElem Field::mul(FqElem a, FqElem b) const {
    if (!tables_)
        return static_cast<FqElem>(std::uint64_t{a} * b % q_);
    return tables_->mul[a * q_ + b];
}

FqElem Field::pow(FqElem a, std::uint64_t k) const {
    FqElem out = 1;
    while (k) {
        if (k & 1)
            out = mul(out, a);
        a = mul(a, a);
        k >>= 1;
    }
    return out;
}

FqElem Field::inv(FqElem a) const {
    if (a == 0)
        throw InvalidArgument("inverse of zero in F_q");
    if (!tables_)
        return pow(a, q_ - 2);
    return tables_->inv[a];
}

FqElem Field::from_int(long long v) const {
    long long r = v % static_cast<long long>(spec_.p);
    if (r < 0)
        r += spec_.p;
    return static_cast<FqElem>(r);
}

std::vector<std::uint32_t> Field::digits(FqElem a) const {
    std::vector<std::uint32_t> d(spec_.e);
    for (auto& x : d) {
        x = a % spec_.p;
        a /= spec_.p;
    }
    return d;
}

FqElem Field::from_digits(std::span<const std::uint32_t> digits) const {
    if (digits.size() != spec_.e)
        throw InvalidArgument("F_q element needs exactly e digits");
    std::uint64_t out = 0;
    for (std::size_t i = digits.size(); i-- > 0;) {
        if (digits[i] >= spec_.p)
            throw InvalidArgument("digit not reduced mod p");
        out = out * spec_.p + digits[i];
    }
    return static_cast<FqElem>(out);
}

FqElem Field::pth_root(FqElem a) const {
    // Frobenius has order e, so its inverse is x -> x^{p^{e-1}}.
    return pow(a, saturating_pow(spec_.p, spec_.e - 1));
}

MonicPoly::MonicPoly(Coeffs coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty() || coeffs_.back() != 1)
        throw InvalidArgument("polynomial is not monic");
}

bool operator<(const MonicPoly& a, const MonicPoly& b) {
    if (a.degree() != b.degree())
        return a.degree() < b.degree();
    return std::lexicographical_compare(a.coeffs_.rbegin(), a.coeffs_.rend(), b.coeffs_.rbegin(),
                                        b.coeffs_.rend());
}

void PolyRing::trim(Coeffs& a) {
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

Coeffs PolyRing::add(const Coeffs& a, const Coeffs& b) const {
    Coeffs out(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = field_.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    trim(out);
    return out;
}

Coeffs PolyRing::sub(const Coeffs& a, const Coeffs& b) const {
    Coeffs out(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = field_.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    trim(out);
    return out;
}

Coeffs PolyRing::mul(const Coeffs& a, const Coeffs& b) const {
    if (a.empty() || b.empty())
        return {};
    Coeffs out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] = field_.add(out[i + j], field_.mul(a[i], b[j]));
    }
    trim(out);
    return out;
}

Coeffs PolyRing::scale(const Coeffs& a, FqElem c) const {
    Coeffs out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = field_.mul(a[i], c);
    trim(out);
    return out;
}

std::pair<Coeffs, Coeffs> PolyRing::divmod(const Coeffs& a, const Coeffs& b) const {
    if (b.empty())
        throw InvalidArgument("polynomial division by zero");
    Coeffs rem = a;
    trim(rem);
    if (rem.size() < b.size())
        return {{}, rem};
    Coeffs quot(rem.size() - b.size() + 1, 0);
    const FqElem lead_inv = field_.inv(b.back());
    for (std::size_t k = rem.size() - 1;; --k) {
        const FqElem c = field_.mul(rem[k], lead_inv);
        const std::size_t shift = k - (b.size() - 1);
        quot[shift] = c;
        if (c != 0)
            for (std::size_t i = 0; i < b.size(); ++i)
                rem[shift + i] = field_.sub(rem[shift + i], field_.mul(c, b[i]));
        if (k == b.size() - 1)
            break;
    }
    trim(rem);
    trim(quot);
    return {quot, rem};
}

Coeffs PolyRing::div_exact(const Coeffs& a, const Coeffs& b) const {
    auto [q, r] = divmod(a, b);
    if (!r.empty())
        throw Error("inexact polynomial division");
    return q;
}

Coeffs PolyRing::make_monic(const Coeffs& a) const {
    if (a.empty())
        return a;
    return scale(a, field_.inv(a.back()));
}

Coeffs PolyRing::gcd(Coeffs a, Coeffs b) const {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Coeffs r = mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(a);
}

Coeffs PolyRing::derivative(const Coeffs& a) const {
    if (a.size() <= 1)
        return {};
    Coeffs out(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i)
        out[i - 1] = field_.mul(field_.from_int(static_cast<long long>(i % field_.p())), a[i]);
    trim(out);
    return out;
}

Coeffs PolyRing::powmod(Coeffs base, std::uint64_t exp, const Coeffs& modulus) const {
    Coeffs out{1};
    out = mod(out, modulus);
    base = mod(base, modulus);
    while (exp) {
        if (exp & 1)
            out = mod(mul(out, base), modulus);
        exp >>= 1;
        if (exp)
            base = mod(mul(base, base), modulus);
    }
    return out;
}

FqElem PolyRing::eval(const Coeffs& a, FqElem x) const {
    FqElem out = 0;
    for (std::size_t i = a.size(); i-- > 0;)
        out = field_.add(field_.mul(out, x), a[i]);
    return out;
}

Coeffs PolyRing::pth_root(const Coeffs& a) const {
    const std::uint32_t p = field_.p();
    Coeffs out;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i % p != 0) {
            if (a[i] != 0)
                throw Error("pth_root: polynomial is not a p-th power");
            continue;
        }
        out.push_back(field_.pth_root(a[i]));
    }
    trim(out);
    return out;
}

FactorProfile::FactorProfile(std::map<unsigned, unsigned> counts) {
    for (auto [d, k] : counts)
        add(d, k);
}

unsigned FactorProfile::count(unsigned d) const {
    auto it = counts_.find(d);
    return it == counts_.end() ? 0 : it->second;
}

void FactorProfile::add(unsigned d, unsigned k) {
    if (d == 0)
        throw InvalidArgument("factor degree must be >= 1");
    if (k)
        counts_[d] += k;
}

unsigned FactorProfile::weighted_degree() const {
    unsigned out = 0;
    for (auto [d, k] : counts_)
        out += d * k;
    return out;
}

FactorProfile FactorProfile::restricted(std::span<const unsigned> degrees) const {
    FactorProfile out;
    for (unsigned d : degrees)
        out.add(d, count(d));
    return out;
}

MatrixFq::MatrixFq(unsigned n, std::vector<FqElem> entries) : n_(n), entries_(std::move(entries)) {
    if (entries_.size() != std::size_t{n} * n)
        throw InvalidArgument("matrix is not square");
}

MatrixFq MatrixFq::identity(unsigned n) {
    MatrixFq out = zero(n);
    for (unsigned i = 0; i < n; ++i)
        out(i, i) = 1;
    return out;
}

MatrixFq matmul(const Field& field, const MatrixFq& a, const MatrixFq& b) {
    const unsigned n = a.n();
    MatrixFq out = MatrixFq::zero(n);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned k = 0; k < n; ++k) {
            const FqElem aik = a(i, k);
            if (aik == 0)
                continue;
            for (unsigned j = 0; j < n; ++j)
                out(i, j) = field.add(out(i, j), field.mul(aik, b(k, j)));
        }
    return out;
}

namespace {

int mobius(unsigned n) {
    int out = 1;
    for (unsigned p = 2; p * p <= n; ++p) {
        if (n % p)
            continue;
        n /= p;
        if (n % p == 0)
            return 0;
        out = -out;
    }
    if (n > 1)
        out = -out;
    return out;
}

} // namespace

BigInt irreducible_count(std::uint64_t q, unsigned d) {
    if (d == 0)
        throw InvalidArgument("irreducible_count: degree must be >= 1");
    BigInt sum = 0;
    const BigInt qq(static_cast<unsigned long>(q));
    for (unsigned e = 1; e <= d; ++e) {
        if (d % e)
            continue;
        const int mu = mobius(e);
        if (mu)
            sum += mu * ipow(qq, d / e);
    }
    return sum / d;
}

std::vector<MonicPoly> enumerate_irreducibles(const Field& field, unsigned d, std::uint64_t budget) {
    if (d == 0)
        throw InvalidArgument("enumerate_irreducibles: degree must be >= 1");
    const std::uint64_t total = saturating_pow(field.q(), d);
    if (total > budget)
        throw BudgetExceeded("enumerate_irreducibles: q^d = " + std::to_string(total) +
                             " exceeds budget " + std::to_string(budget));
    std::vector<MonicPoly> out;
    Coeffs c(d + 1, 0);
    c[d] = 1;
    for (std::uint64_t code = 0; code < total; ++code) {
        std::uint64_t rest = code;
        for (unsigned i = 0; i < d; ++i) {
            c[i] = static_cast<FqElem>(rest % field.q());
            rest /= field.q();
        }
        MonicPoly f(c);
        if (is_irreducible(field, f))
            out.push_back(std::move(f));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::pair<Coeffs, unsigned>> squarefree_decomposition(const PolyRing& ring,
                                                                  const Coeffs& f) {
    std::vector<std::pair<Coeffs, unsigned>> out;
    if (PolyRing::degree(f) < 1)
        return out;
    const Coeffs one{1};
    Coeffs c = ring.gcd(f, ring.derivative(f));
    Coeffs w = ring.div_exact(ring.make_monic(f), c);
    unsigned i = 1;
    while (w != one) {
        Coeffs y = ring.gcd(w, c);
        Coeffs fac = ring.div_exact(w, y);
        if (PolyRing::degree(fac) > 0)
            out.emplace_back(std::move(fac), i);
        w = std::move(y);
        c = ring.div_exact(c, w);
        ++i;
    }
    if (c != one) {
        const unsigned p = ring.field().p();
        for (auto& [g, m] : squarefree_decomposition(ring, ring.pth_root(c)))
            out.emplace_back(std::move(g), m * p);
    }
    return out;
}

std::map<unsigned, unsigned> distinct_degree_counts(const PolyRing& ring, const Coeffs& f) {
    std::map<unsigned, unsigned> out;
    Coeffs rest = ring.make_monic(f);
    const Coeffs t{0, 1};
    Coeffs h = ring.mod(t, rest);
    const std::uint64_t q = ring.field().q();
    for (unsigned i = 1; PolyRing::degree(rest) >= static_cast<int>(2 * i); ++i) {
        h = ring.powmod(h, q, rest);
        Coeffs g = ring.gcd(ring.sub(h, t), rest);
        const int dg = PolyRing::degree(g);
        if (dg > 0) {
            out[i] += static_cast<unsigned>(dg) / i;
            rest = ring.div_exact(rest, g);
            h = ring.mod(h, rest);
        }
    }
    if (PolyRing::degree(rest) > 0)
        out[static_cast<unsigned>(PolyRing::degree(rest))] += 1;
    return out;
}

FactorProfile factor_degree_profile(const Field& field, const MonicPoly& f) {
    const PolyRing ring(field);
    FactorProfile out;
    for (const auto& [part, mult] : squarefree_decomposition(ring, f.coeffs()))
        for (auto [d, k] : distinct_degree_counts(ring, part))
            out.add(d, k * mult);
    if (out.weighted_degree() != f.degree())
        throw IdentityFailure("factor_degree_profile: degrees do not add up");
    return out;
}

bool is_irreducible(const Field& field, const MonicPoly& f) {
    if (f.degree() == 0)
        return false;
    const auto profile = factor_degree_profile(field, f);
    return profile.counts().size() == 1 && profile.count(f.degree()) == 1;
}

bool is_squarefree(const Field& field, const MonicPoly& f) {
    const PolyRing ring(field);
    return PolyRing::degree(ring.gcd(f.coeffs(), ring.derivative(f.coeffs()))) == 0;
}

MonicPoly char_poly(const Field& field, const MatrixFq& a) {
    const unsigned n = a.n();
    // Coefficients highest degree first; starts as the char poly of the 0x0 matrix.
    std::vector<FqElem> poly{1};
    for (unsigned r = 0; r < n; ++r) {
        // Toeplitz column: 1, -a_rr, -R C, -R S C, ..., -R S^{r-1} C where S is
        // the leading r x r block, C = A[0..r)[r] and R = A[r][0..r).
        std::vector<FqElem> toeplitz{1, field.neg(a(r, r))};
        std::vector<FqElem> col(r);
        for (unsigned i = 0; i < r; ++i)
            col[i] = a(i, r);
        for (unsigned k = 0; k < r; ++k) {
            FqElem dot = 0;
            for (unsigned j = 0; j < r; ++j)
                dot = field.add(dot, field.mul(a(r, j), col[j]));
            toeplitz.push_back(field.neg(dot));
            std::vector<FqElem> next(r, 0);
            for (unsigned i = 0; i < r; ++i)
                for (unsigned j = 0; j < r; ++j)
                    next[i] = field.add(next[i], field.mul(a(i, j), col[j]));
            col = std::move(next);
        }
        std::vector<FqElem> updated(r + 2, 0);
        for (unsigned i = 0; i < r + 2; ++i)
            for (unsigned j = 0; j <= std::min(i, r); ++j)
                updated[i] = field.add(updated[i], field.mul(toeplitz[i - j], poly[j]));
        poly = std::move(updated);
    }
    std::reverse(poly.begin(), poly.end());
    return MonicPoly(std::move(poly));
}

BigInt squarefree_count(std::uint64_t q, unsigned n) {
    const BigInt qq(static_cast<unsigned long>(q));
    if (n < 2)
        return ipow(qq, n);
    return ipow(qq, n) - ipow(qq, n - 1);
}

BigInt squarefree_nonzero_constant_count(std::uint64_t q, unsigned n) {
    // c_k = sum_{i<=k} (-1)^i q^{k-i} is the t^k coefficient of 1/((1+t)(1-qt));
    // multiplying by (1 - q t^2) gives a_n = c_n - q c_{n-2}.
    const BigInt qq(static_cast<unsigned long>(q));
    std::vector<BigInt> c(n + 1);
    c[0] = 1;
    for (unsigned k = 1; k <= n; ++k)
        c[k] = qq * c[k - 1] + (k % 2 ? -1 : 1);
    return n >= 2 ? BigInt(c[n] - qq * c[n - 2]) : c[n];
}

BigInt reiner_count(const Field& field, std::span<const MonicPoly> factors, unsigned n) {
    unsigned total = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (!is_irreducible(field, factors[i]))
            throw InvalidArgument("reiner_count: factor is not irreducible");
        for (std::size_t j = 0; j < i; ++j)
            if (factors[i] == factors[j])
                throw InvalidArgument("reiner_count: repeated factor");
        total += factors[i].degree();
    }
    if (total != n)
        throw InvalidArgument("reiner_count: factor degrees do not sum to n");
    const BigRational qinv(1, static_cast<unsigned long>(field.q()));
    BigRational value = ipow(BigInt(static_cast<unsigned long>(field.q())), n * n - n);
    for (unsigned i = 1; i <= n; ++i)
        value *= 1 - rpow(qinv, i);
    for (const auto& f : factors)
        value /= 1 - rpow(qinv, f.degree());
    value.canonicalize();
    if (value.get_den() != 1)
        throw IdentityFailure("reiner_count: formula value is not an integer");
    return value.get_num();
}

BigInt gl_order(std::uint64_t q, unsigned n) {
    const BigInt qq(static_cast<unsigned long>(q));
    const BigInt qn = ipow(qq, n);
    BigInt out = 1;
    for (unsigned i = 0; i < n; ++i)
        out *= qn - ipow(qq, i);
    return out;
}

} // namespace fqc
