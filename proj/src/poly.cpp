#include "dynlab/poly.hpp"

#include "dynlab/error.hpp"

#include <boost/integer/common_factor.hpp>

namespace dynlab::poly {

void trim(RatPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

void trim(IntPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const RatPoly& p) {
    RatPoly t = p;
    trim(t);
    return static_cast<int>(t.size()) - 1;
}

int degree(const IntPoly& p) {
    IntPoly t = p;
    trim(t);
    return static_cast<int>(t.size()) - 1;
}

RatPoly to_rational(const IntPoly& p) {
    RatPoly out(p.begin(), p.end());
    trim(out);
    return out;
}

IntPoly to_primitive(const RatPoly& p) {
    RatPoly t = p;
    trim(t);
    if (t.empty()) return {};
    BigInt lcm_den = 1;
    for (const auto& c : t) lcm_den = boost::integer::lcm(lcm_den, BigInt(denominator(c)));
    IntPoly out;
    out.reserve(t.size());
    BigInt content = 0;
    for (const auto& c : t) {
        BigInt v = numerator(c) * (lcm_den / denominator(c));
        content = boost::integer::gcd(content, abs(v));
        out.push_back(std::move(v));
    }
    if (t.back() < 0) content = -content;
    for (auto& c : out) c /= content;
    return out;
}

RatPoly mul(const RatPoly& a, const RatPoly& b) {
    if (a.empty() || b.empty()) return {};
    RatPoly out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    trim(out);
    return out;
}

IntPoly mul(const IntPoly& a, const IntPoly& b) {
    if (a.empty() || b.empty()) return {};
    IntPoly out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    trim(out);
    return out;
}

std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b) {
    RatPoly divisor = b;
    trim(divisor);
    if (divisor.empty()) throw DomainError("poly", "division by the zero polynomial");
    RatPoly rem = a;
    trim(rem);
    if (rem.size() < divisor.size()) return {RatPoly{}, rem};
    RatPoly quot(rem.size() - divisor.size() + 1);
    const Rational lead_inv = 1 / divisor.back();
    for (std::size_t i = quot.size(); i-- > 0;) {
        const Rational c = rem[i + divisor.size() - 1] * lead_inv;
        quot[i] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j < divisor.size(); ++j) rem[i + j] -= c * divisor[j];
    }
    trim(quot);
    trim(rem);
    return {quot, rem};
}

RatPoly derivative(const RatPoly& p) {
    if (p.size() <= 1) return {};
    RatPoly out(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i) out[i - 1] = p[i] * static_cast<long long>(i);
    trim(out);
    return out;
}

RatPoly monic(const RatPoly& p) {
    RatPoly out = p;
    trim(out);
    if (out.empty()) return out;
    const Rational lead = out.back();
    for (auto& c : out) c /= lead;
    return out;
}

RatPoly gcd(RatPoly a, RatPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

std::vector<RatPoly> squarefree_decomposition(const RatPoly& p) {
    RatPoly f = monic(p);
    if (f.size() <= 1) return {};
    std::vector<RatPoly> parts;
    RatPoly a = gcd(f, derivative(f));
    RatPoly b = divmod(f, a).first;
    RatPoly c = divmod(derivative(f), a).first;
    RatPoly d = c;
    {
        auto db = derivative(b);
        d.resize(std::max(c.size(), db.size()));
        for (std::size_t i = 0; i < db.size(); ++i) d[i] -= db[i];
        trim(d);
    }
    while (degree(b) > 0) {
        RatPoly s = gcd(b, d);
        parts.push_back(s);
        b = divmod(b, s).first;
        c = divmod(d, s).first;
        auto db = derivative(b);
        d = c;
        d.resize(std::max(c.size(), db.size()));
        for (std::size_t i = 0; i < db.size(); ++i) d[i] -= db[i];
        trim(d);
    }
    while (!parts.empty() && degree(parts.back()) == 0) parts.pop_back();
    return parts;
}

IntPoly reverse(const IntPoly& p, int deg) {
    IntPoly out(static_cast<std::size_t>(deg + 1));
    for (std::size_t i = 0; i < p.size() && static_cast<int>(i) <= deg; ++i) out[deg - i] = p[i];
    trim(out);
    return out;
}

} // namespace dynlab::poly
