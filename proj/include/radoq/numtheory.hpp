#ifndef RADOQ_NUMTHEORY_HPP
#define RADOQ_NUMTHEORY_HPP

/*
 * Multiplicative structure of nonzero rationals.
 *
 * Every nonzero rational q has a unique representation
 *
 *      q = s * prod_i p_i^{e_i},   s in {+1,-1},  e_i != 0,
 *
 * with distinct primes p_i.  For a fixed prime p this induces
 *
 *      q = p^{v_p(q)} * a/b,   p does not divide a or b,  b > 0,
 *
 * and the unit part of q at p is the residue
 *
 *      w_p(q) = a * b^{-1}  (mod p),   w_p(q) in {1, ..., p-1}.
 *
 * Both v_p and w_p are totally multiplicative in q (w_p modulo p).
 *
 * Factorization uses trial division with a deterministic primality
 * check on the remaining cofactor; inputs in this library's domain
 * have tiny prime supports, so no heavier machinery is warranted.
 */

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "radoq/error.hpp"
#include "radoq/rational.hpp"

namespace radoq {

// Deterministic Miller-Rabin, exact for n < 3.3e24 (fixed base set).
inline bool is_prime(const Integer& n) {
    if (n < 2) return false;
    for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    static const Integer limit("3317044064679887385961981");
    if (n >= limit) throw InvalidArgument("primality check out of supported range");
    Integer d = n - 1;
    unsigned r = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++r;
    }
    for (int a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        Integer x = powm(Integer(a), d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (unsigned i = 1; i < r; ++i) {
            x = x * x % n;
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

inline void require_prime(const Integer& p) {
    if (!is_prime(p)) throw InvalidPrime("not a prime: " + p.str());
}

// Sign and prime support of a nonzero rational.  Exponents are the
// nonzero e_i above; factors are sorted by prime.
struct PrimeDecomposition {
    int sign = 1;
    std::vector<std::pair<Integer, std::int64_t>> factors;

    std::int64_t exponent_of(const Integer& p) const {
        for (const auto& [q, e] : factors)
            if (q == p) return e;
        return 0;
    }
};

namespace detail {

// Trial division of n > 0 into `out` with exponent direction `dir`.
inline void factor_positive(Integer n, int dir,
                            std::vector<std::pair<Integer, std::int64_t>>& out) {
    auto strip = [&](const Integer& p) {
        std::int64_t e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) out.emplace_back(p, dir * e);
    };
    strip(2);
    for (Integer d = 3; d * d <= n && d <= 1000000; d += 2) strip(d);
    if (n > 1) {
        if (!is_prime(n)) throw Error("cofactor " + n.str() + " exceeds the trial-division range");
        out.emplace_back(n, dir);
    }
}

}  // namespace detail

// Unique factorization of a nonzero rational.
inline PrimeDecomposition factor(const Rational& q) {
    if (q.is_zero()) throw UndefinedValuation("factor(0) is undefined");
    PrimeDecomposition d;
    d.sign = q.sign();
    detail::factor_positive(abs(q.num()), +1, d.factors);
    detail::factor_positive(q.den(), -1, d.factors);
    std::sort(d.factors.begin(), d.factors.end());
    return d;
}

inline Rational recompose(const PrimeDecomposition& d) {
    Rational r(d.sign);
    for (const auto& [p, e] : d.factors) r *= Rational(p).pow(e);
    return r;
}

// p-adic valuation of a nonzero rational.
inline std::int64_t v_p(const Integer& p, const Rational& q) {
    require_prime(p);
    if (q.is_zero()) throw UndefinedValuation("v_p(0) is undefined");
    std::int64_t v = 0;
    Integer n = abs(q.num());
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    if (v) return v;
    Integer d = q.den();
    while (d % p == 0) {
        d /= p;
        --v;
    }
    return v;
}

// Unit residue w_p(q) in {1, ..., p-1}.
inline std::int64_t w_p(const Integer& p, const Rational& q) {
    require_prime(p);
    if (q.is_zero()) throw UndefinedValuation("w_p(0) is undefined");
    Integer n = q.num(), d = q.den();
    while (n % p == 0) n /= p;
    while (d % p == 0) d /= p;
    n %= p;
    if (n < 0) n += p;
    Integer base = d % p;
    Integer exp = p - 2;
    Integer inv = powm(base, exp, p);
    Integer w = n * inv % p;
    return w.convert_to<std::int64_t>();
}

// Smallest-magnitude witness (m, n) with a^m = b^n, or nullopt when the
// only solution is m = n = 0.  Absence certifies that log_a(b) is
// irrational.  Both inputs must be positive and different from 1.
// The witness is normalized to m > 0.
inline std::optional<std::pair<std::int64_t, std::int64_t>> multiplicative_dependence(
    const Rational& a, const Rational& b) {
    if (a.sign() <= 0 || b.sign() <= 0) throw InvalidArgument("multiplicative_dependence needs positive inputs");
    if (a == Rational(1) || b == Rational(1)) throw InvalidArgument("multiplicative_dependence is undefined at 1");
    PrimeDecomposition da = factor(a), db = factor(b);
    if (da.factors.size() != db.factors.size()) return std::nullopt;
    for (std::size_t i = 0; i < da.factors.size(); ++i)
        if (da.factors[i].first != db.factors[i].first) return std::nullopt;
    // Exponent vectors must be proportional: e_a * kb == e_b * ka
    // componentwise, with (ka, kb) the first component pair reduced.
    std::int64_t ka = da.factors[0].second, kb = db.factors[0].second;
    std::int64_t g = std::gcd(ka, kb);
    ka /= g;
    kb /= g;
    for (std::size_t i = 0; i < da.factors.size(); ++i)
        if (da.factors[i].second * kb != db.factors[i].second * ka) return std::nullopt;
    std::int64_t m = kb, n = ka;
    if (m < 0) {
        m = -m;
        n = -n;
    }
    return std::make_pair(m, n);
}

// In any finite tuple of nonzero rationals summing to zero, the minimal
// p-adic valuation is attained at least twice.  Checks that property on
// the given tuple; the zero sum itself is a precondition.
inline bool validate_zero_sum_valuations(const Integer& p, const std::vector<Rational>& terms) {
    require_prime(p);
    if (terms.size() < 2) throw PreconditionViolation("need at least two terms");
    Rational sum;
    for (const auto& t : terms) {
        if (t.is_zero()) throw PreconditionViolation("terms must be nonzero");
        sum += t;
    }
    if (!sum.is_zero()) throw PreconditionViolation("terms do not sum to zero");
    std::vector<std::int64_t> vals;
    vals.reserve(terms.size());
    for (const auto& t : terms) vals.push_back(v_p(p, t));
    std::sort(vals.begin(), vals.end());
    return vals[0] == vals[1];
}

}  // namespace radoq

#endif
