#include "fqcycles/series.hpp"

#include <json.hpp>

namespace fqc {

MarkerMonomial MarkerMonomial::single(Marker m, unsigned exponent) {
    MarkerMonomial out;
    if (exponent)
        out.factors_.emplace_back(m, exponent);
    return out;
}

unsigned MarkerMonomial::exponent(Marker m) const {
    for (const auto& [marker, e] : factors_)
        if (marker == m)
            return e;
    return 0;
}

MarkerMonomial MarkerMonomial::without(Marker m) const {
    MarkerMonomial out;
    for (const auto& f : factors_)
        if (f.first != m)
            out.factors_.push_back(f);
    return out;
}

std::string MarkerMonomial::to_string() const {
    if (factors_.empty())
        return "1";
    std::string out;
    for (const auto& [m, e] : factors_) {
        if (!out.empty())
            out += "*";
        out += "x" + std::to_string(m.degree);
        if (m.refinement)
            out += "_" + std::to_string(m.refinement);
        if (e != 1)
            out += "^" + std::to_string(e);
    }
    return out;
}

MarkerMonomial operator*(const MarkerMonomial& a, const MarkerMonomial& b) {
    MarkerMonomial out;
    auto i = a.factors_.begin();
    auto j = b.factors_.begin();
    while (i != a.factors_.end() || j != b.factors_.end()) {
        if (j == b.factors_.end() || (i != a.factors_.end() && i->first < j->first)) {
            out.factors_.push_back(*i++);
        } else if (i == a.factors_.end() || j->first < i->first) {
            out.factors_.push_back(*j++);
        } else {
            out.factors_.emplace_back(i->first, i->second + j->second);
            ++i;
            ++j;
        }
    }
    return out;
}

MultiPoly::MultiPoly(const BigRational& c) { add_term({}, c); }

MultiPoly::MultiPoly(const MarkerMonomial& m, const BigRational& c) { add_term(m, c); }

bool MultiPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_constant());
}

BigRational MultiPoly::constant() const { return coefficient({}); }

BigRational MultiPoly::coefficient(const MarkerMonomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? BigRational(0) : it->second;
}

void MultiPoly::add_term(const MarkerMonomial& m, const BigRational& c) {
    if (c == 0)
        return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& other) {
    for (const auto& [m, c] : other.terms_)
        add_term(m, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& other) {
    for (const auto& [m, c] : other.terms_)
        add_term(m, -c);
    return *this;
}

MultiPoly& MultiPoly::operator*=(const BigRational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, coeff] : terms_)
        coeff *= c;
    return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly out;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_)
            out.add_term(ma * mb, ca * cb);
    return out;
}

MultiPoly MultiPoly::drop_marker(Marker m) const {
    MultiPoly out;
    for (const auto& [mono, c] : terms_)
        out.add_term(mono.without(m), c);
    return out;
}

BigRational MultiPoly::evaluate_at_ones() const {
    BigRational out = 0;
    for (const auto& [mono, c] : terms_)
        out += c;
    return out;
}

std::string MultiPoly::to_string() const {
    if (terms_.empty())
        return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
        if (!out.empty())
            out += " + ";
        out += "(" + fraction_string(c) + ")";
        if (!m.is_constant())
            out += "*" + m.to_string();
    }
    return out;
}

TruncSeries::TruncSeries(unsigned order) : order_(order), coeffs_(order + 1) {}

TruncSeries::TruncSeries(unsigned order, std::vector<MultiPoly> coeffs)
    : order_(order), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() > order_ + 1)
        throw InvalidArgument("TruncSeries: more coefficients than the order allows");
    coeffs_.resize(order_ + 1);
}

TruncSeries TruncSeries::constant(unsigned order, const MultiPoly& c) {
    return monomial(order, 0, c);
}

TruncSeries TruncSeries::monomial(unsigned order, unsigned k, const MultiPoly& c) {
    TruncSeries out(order);
    if (k <= order)
        out.coeffs_[k] = c;
    return out;
}

TruncSeries TruncSeries::geometric(unsigned order) {
    return TruncSeries(order, std::vector<MultiPoly>(order + 1, MultiPoly(BigRational(1))));
}

BigRational TruncSeries::coefficient(unsigned n, const MarkerMonomial& m) const {
    if (n > order_)
        throw InvalidArgument("coefficient index " + std::to_string(n) +
                              " beyond truncation order " + std::to_string(order_));
    return coeffs_[n].coefficient(m);
}

void TruncSeries::check_order(const TruncSeries& other) const {
    if (order_ != other.order_)
        throw InvalidArgument("TruncSeries: truncation orders differ (" + std::to_string(order_) +
                              " vs " + std::to_string(other.order_) + ")");
}

TruncSeries& TruncSeries::operator+=(const TruncSeries& other) {
    check_order(other);
    for (unsigned n = 0; n <= order_; ++n)
        coeffs_[n] += other.coeffs_[n];
    return *this;
}

TruncSeries& TruncSeries::operator-=(const TruncSeries& other) {
    check_order(other);
    for (unsigned n = 0; n <= order_; ++n)
        coeffs_[n] -= other.coeffs_[n];
    return *this;
}

TruncSeries& TruncSeries::operator*=(const BigRational& c) {
    for (auto& coeff : coeffs_)
        coeff *= c;
    return *this;
}

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    a.check_order(b);
    TruncSeries out(a.order_);
    for (unsigned i = 0; i <= a.order_; ++i) {
        if (a.coeffs_[i].is_zero())
            continue;
        for (unsigned j = 0; i + j <= a.order_; ++j)
            if (!b.coeffs_[j].is_zero())
                out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return out;
}

TruncSeries TruncSeries::drop_markers() const {
    TruncSeries out(order_);
    for (unsigned n = 0; n <= order_; ++n)
        out.coeffs_[n] = MultiPoly(coeffs_[n].evaluate_at_ones());
    return out;
}

std::string TruncSeries::to_json() const {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& c : coeffs_) {
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& [m, value] : c.terms())
            terms.push_back({m.to_string(), fraction_string(value)});
        coeffs.push_back(std::move(terms));
    }
    return nlohmann::json{{"order", order_}, {"coeffs", std::move(coeffs)}}.dump();
}

TruncSeries series_pow(const TruncSeries& a, const BigInt& exponent) {
    if (exponent < 0)
        throw InvalidArgument("series_pow: negative exponent");
    TruncSeries out = TruncSeries::constant(a.order(), MultiPoly(BigRational(1)));
    TruncSeries base = a;
    BigInt k = exponent;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t()))
            out = out * base;
        k >>= 1;
        if (k > 0)
            base = base * base;
    }
    return out;
}

TruncSeries series_exp(const TruncSeries& a) {
    if (!a[0].is_zero())
        throw InvalidArgument("series_exp: constant term must be zero");
    const unsigned order = a.order();
    std::vector<MultiPoly> g(order + 1);
    g[0] = MultiPoly(BigRational(1));
    for (unsigned n = 1; n <= order; ++n) {
        MultiPoly acc;
        for (unsigned k = 1; k <= n; ++k)
            if (!a[k].is_zero())
                acc += a[k] * g[n - k] * BigRational(k);
        g[n] = acc * BigRational(1, n);
    }
    return TruncSeries(order, std::move(g));
}

TruncSeries geometric_inverse(const TruncSeries& a) {
    if (a[0] != MultiPoly(BigRational(1)))
        throw InvalidArgument("geometric_inverse: constant term must be 1");
    const unsigned order = a.order();
    std::vector<MultiPoly> g(order + 1);
    g[0] = MultiPoly(BigRational(1));
    for (unsigned n = 1; n <= order; ++n) {
        MultiPoly acc;
        for (unsigned k = 1; k <= n; ++k)
            if (!a[k].is_zero())
                acc -= a[k] * g[n - k];
        g[n] = std::move(acc);
    }
    return TruncSeries(order, std::move(g));
}

BigRational partial_sum_limit(const TruncSeries& f, unsigned n) {
    if (n > f.order())
        throw InvalidArgument("partial_sum_limit: index beyond truncation order");
    BigRational out = 0;
    for (unsigned i = 0; i <= n; ++i) {
        if (!f[i].is_constant())
            throw InvalidArgument("partial_sum_limit: coefficients carry markers");
        out += f[i].constant();
    }
    return out;
}

} // namespace fqc
