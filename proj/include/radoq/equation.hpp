#ifndef RADOQ_EQUATION_HPP
#define RADOQ_EQUATION_HPP

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "radoq/error.hpp"
#include "radoq/rational.hpp"

namespace radoq {

// Homogeneous linear equation a_1 x_1 + ... + a_n x_n = 0 with nonzero
// rational coefficients, n >= 2.  Solutions are sought over the nonzero
// rationals throughout.
class LinearEquation {
  public:
    explicit LinearEquation(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.size() < 2) throw DegenerateEquation("need at least two coefficients");
        for (const auto& a : coeffs_)
            if (a.is_zero()) throw DegenerateEquation("zero coefficient");
    }

    std::size_t arity() const { return coeffs_.size(); }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    const Rational& coeff(std::size_t i) const { return coeffs_[i]; }

    bool satisfied_by(const std::vector<Rational>& values) const {
        if (values.size() != coeffs_.size()) throw InvalidArgument("tuple arity mismatch");
        Rational sum;
        for (std::size_t i = 0; i < values.size(); ++i) sum += coeffs_[i] * values[i];
        return sum.is_zero();
    }

    std::string str() const {
        std::string s;
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (i) s += ',';
            s += coeffs_[i].str();
        }
        return s;
    }

    friend bool operator==(const LinearEquation& a, const LinearEquation& b) {
        return a.coeffs_ == b.coeffs_;
    }

  private:
    std::vector<Rational> coeffs_;
};

// The family E(q, n):  x_1 + q x_2 + ... + q^{n-2} x_{n-1} = q^{n-1} x_n,
// encoded as coefficients [1, q, ..., q^{n-2}, -q^{n-1}].
inline LinearEquation make_equation_E(const Rational& q, std::size_t n) {
    if (q.is_zero()) throw InvalidArgument("E(q, n) needs q != 0");
    if (n < 2) throw InvalidArgument("E(q, n) needs n >= 2");
    std::vector<Rational> coeffs;
    coeffs.reserve(n);
    Rational power(1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        coeffs.push_back(power);
        power *= q;
    }
    coeffs.push_back(-power);
    return LinearEquation(std::move(coeffs));
}

// Rado's condition for a single homogeneous equation: partition regular
// over the positive integers iff some nonempty subset of coefficients
// sums to zero.
inline bool rado_single_equation_regular(const LinearEquation& eq) {
    std::size_t n = eq.arity();
    if (n > 24) throw InvalidArgument("arity too large for subset scan");
    for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << n); ++mask) {
        Rational sum;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) sum += eq.coeff(i);
        if (sum.is_zero()) return true;
    }
    return false;
}

// One solution of an equation, as the value assigned to each position.
struct SolutionTuple {
    std::vector<Rational> values;

    friend bool operator==(const SolutionTuple& a, const SolutionTuple& b) {
        return a.values == b.values;
    }
};

// Canonical ordering of ground sets: ascending by value (all negatives
// precede all positives).
inline std::vector<Rational> canonical_set(std::vector<Rational> s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    for (const auto& x : s)
        if (x.is_zero()) throw InvalidArgument("ground sets must exclude zero");
    return s;
}

// All tuples in S^n satisfying the equation, in lexicographic order of
// the canonical ordering of S.  Implemented by a meet-in-the-middle
// split of the positions (partial sums of one half are indexed by
// value), which enumerates the same set as assigning n-1 coordinates
// and solving for the last but touches |S|^ceil(n/2) partial tuples
// instead of |S|^(n-1).
inline std::vector<SolutionTuple> enumerate_solutions(const LinearEquation& eq,
                                                      const std::vector<Rational>& set) {
    std::vector<Rational> s = canonical_set(set);
    std::size_t n = eq.arity(), m = s.size();
    std::vector<SolutionTuple> out;
    if (m == 0) return out;

    std::size_t nlow = n / 2, nhigh = n - nlow;  // positions [0, nhigh) and [nhigh, n)

    // Index partial sums over the trailing nlow positions.
    std::unordered_map<Rational, std::vector<std::vector<std::uint32_t>>> tails;
    {
        std::vector<std::uint32_t> idx(nlow, 0);
        for (;;) {
            Rational sum;
            for (std::size_t j = 0; j < nlow; ++j) sum += eq.coeff(nhigh + j) * s[idx[j]];
            tails[sum].push_back(idx);
            std::size_t j = nlow;
            while (j > 0 && ++idx[j - 1] == m) idx[--j] = 0;
            if (j == 0) break;
        }
    }

    // Walk the leading positions and look up the complementary sum.
    std::vector<std::uint32_t> idx(nhigh, 0);
    for (;;) {
        Rational sum;
        for (std::size_t j = 0; j < nhigh; ++j) sum += eq.coeff(j) * s[idx[j]];
        auto it = tails.find(-sum);
        if (it != tails.end()) {
            for (const auto& tail : it->second) {
                SolutionTuple t;
                t.values.reserve(n);
                for (std::size_t j = 0; j < nhigh; ++j) t.values.push_back(s[idx[j]]);
                for (std::size_t j = 0; j < nlow; ++j) t.values.push_back(s[tail[j]]);
                out.push_back(std::move(t));
            }
        }
        std::size_t j = nhigh;
        while (j > 0 && ++idx[j - 1] == m) idx[--j] = 0;
        if (j == 0) break;
    }

    std::sort(out.begin(), out.end(), [](const SolutionTuple& a, const SolutionTuple& b) {
        return std::lexicographical_compare(a.values.begin(), a.values.end(), b.values.begin(),
                                            b.values.end());
    });
    return out;
}

// A ratio r such that any coloring giving x and r*x the same color
// admits a monochromatic solution.  Witness: the two-value solution
// over {1, r} exhibiting it, with witness[i] assigned to position i.
// Canonical representative: |r| > 1, or r = -1 (its own inverse).
struct ForbiddenRatio {
    Rational ratio;
    std::vector<Rational> witness;
};

// Two-value partitions of the coefficient positions.  Assigning x to
// part A and r*x to part B solves the equation iff
// sum(A) + r*sum(B) = 0, so every A with sum(B) != 0 and the resulting
// r outside {0, 1} forbids the ratio r.  Ratios are deduplicated under
// r <-> 1/r and reported with the canonical representative, positives
// first, descending absolute value.
inline std::vector<ForbiddenRatio> forbidden_ratios(const LinearEquation& eq) {
    std::size_t n = eq.arity();
    if (n > 16) throw InvalidArgument("arity too large for partition scan");
    std::vector<ForbiddenRatio> out;
    auto seen = [&](const Rational& r) {
        for (const auto& f : out)
            if (f.ratio == r) return true;
        return false;
    };
    for (std::uint32_t mask = 1; mask + 1 < (std::uint32_t(1) << n); ++mask) {
        Rational sa, sb;
        for (std::size_t i = 0; i < n; ++i) (mask >> i & 1 ? sa : sb) += eq.coeff(i);
        if (sb.is_zero()) continue;
        Rational r = -sa / sb;
        if (r.is_zero() || r == Rational(1)) continue;
        bool flip = r.abs() < Rational(1);
        Rational rep = flip ? r.inverse() : r;
        if (seen(rep)) continue;
        // witness: value 1 on the part whose companion is rep * 1.
        std::vector<Rational> witness(n);
        for (std::size_t i = 0; i < n; ++i) {
            bool in_a = mask >> i & 1;
            witness[i] = (in_a == flip) ? rep : Rational(1);
        }
        out.push_back(ForbiddenRatio{rep, std::move(witness)});
    }
    std::sort(out.begin(), out.end(), [](const ForbiddenRatio& a, const ForbiddenRatio& b) {
        if (a.ratio.sign() != b.ratio.sign()) return a.ratio.sign() > b.ratio.sign();
        return a.ratio.abs() > b.ratio.abs();
    });
    return out;
}

// For E(q, 3) the two generators a = (q+1)/q^2 and b = q(q-1) satisfy:
// any coloring free of monochromatic E(q, 3) solutions gives x and
// a^m b^n x equal colors exactly when m + n = 0 (mod 3).
inline std::pair<Rational, Rational> lemma_fr_generators(const Rational& q) {
    if (q.is_zero() || q == Rational(1) || q == Rational(-1))
        throw InvalidArgument("generators need q outside {-1, 0, 1}");
    Rational a = (q + Rational(1)) / (q * q);
    Rational b = q * (q - Rational(1));
    return {a, b};
}

}  // namespace radoq

#endif
