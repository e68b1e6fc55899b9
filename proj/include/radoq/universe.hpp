#ifndef RADOQ_UNIVERSE_HPP
#define RADOQ_UNIVERSE_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <unordered_map>
#include <utility>
#include <vector>

#include "radoq/equation.hpp"
#include "radoq/error.hpp"
#include "radoq/numtheory.hpp"
#include "radoq/rational.hpp"

namespace radoq {

// One element of a finitely generated multiplicative set.  A node stands
// for sign * prod(p_i^e_i) * x with a symbolic nonzero base x; the base
// cancels in every homogeneous computation, so nodes are evaluated at
// x = 1 throughout.
struct Node {
    int sign = 1;  // +1 or -1
    std::vector<std::int64_t> exponents;

    friend bool operator==(const Node& a, const Node& b) {
        return a.sign == b.sign && a.exponents == b.exponents;
    }
    // Canonical total order: positive nodes first, then exponent vectors
    // lexicographically.
    friend bool operator<(const Node& a, const Node& b) {
        if (a.sign != b.sign) return a.sign > b.sign;
        return a.exponents < b.exponents;
    }
};

// Exponent interval per declared prime, inclusive on both ends.
using ExponentBounds = std::vector<std::pair<std::int64_t, std::int64_t>>;

// Value of a node at base x = 1.
inline Rational node_value(const Node& n, const std::vector<Integer>& primes) {
    if (n.exponents.size() != primes.size())
        throw InvalidArgument("node and prime list have different lengths");
    Integer num = n.sign;
    Integer den = 1;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        std::int64_t e = n.exponents[i];
        if (e > 0)
            num *= Integer(boost::multiprecision::pow(primes[i], static_cast<unsigned>(e)));
        else if (e < 0)
            den *= Integer(boost::multiprecision::pow(primes[i], static_cast<unsigned>(-e)));
    }
    return Rational(num, den);
}

// A deduplicated, canonically ordered list of nodes over a declared prime
// support and exponent box.  The identity node is always a member.
class NodeUniverse {
  public:
    NodeUniverse(std::vector<Integer> primes, ExponentBounds bounds, bool include_negatives,
                 std::vector<Node> nodes)
        : primes_(std::move(primes)),
          bounds_(std::move(bounds)),
          include_negatives_(include_negatives) {
        if (bounds_.size() != primes_.size())
            throw InvalidArgument("one exponent interval per prime is required");
        for (std::size_t i = 0; i < primes_.size(); ++i) {
            require_prime(primes_[i]);
            if (i > 0 && primes_[i] <= primes_[i - 1])
                throw InvalidArgument("universe primes must be strictly increasing");
            if (bounds_[i].first > bounds_[i].second)
                throw InvalidArgument("empty exponent interval");
            if (bounds_[i].first > 0 || bounds_[i].second < 0)
                throw InvalidArgument("exponent intervals must contain zero");
        }
        nodes.push_back(Node{1, std::vector<std::int64_t>(primes_.size(), 0)});
        std::sort(nodes.begin(), nodes.end());
        nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
        for (const Node& n : nodes) {
            if (n.sign != 1 && n.sign != -1) throw InvalidArgument("node sign must be +1 or -1");
            if (n.sign < 0 && !include_negatives_)
                throw InvalidArgument("negative node in a positive-only universe");
            if (n.exponents.size() != primes_.size())
                throw InvalidArgument("node exponent count does not match the prime list");
            if (!inside_bounds(n)) throw InvalidArgument("node outside the declared bounds");
        }
        nodes_ = std::move(nodes);
        values_.reserve(nodes_.size());
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            values_.push_back(node_value(nodes_[i], primes_));
            index_.emplace(values_[i], i);
        }
    }

    const std::vector<Integer>& primes() const { return primes_; }
    const ExponentBounds& bounds() const { return bounds_; }
    bool include_negatives() const { return include_negatives_; }
    std::size_t size() const { return nodes_.size(); }
    const std::vector<Node>& nodes() const { return nodes_; }
    const Node& node(std::size_t i) const { return nodes_.at(i); }
    const std::vector<Rational>& values() const { return values_; }
    const Rational& value(std::size_t i) const { return values_.at(i); }

    std::optional<std::size_t> index_of(const Rational& v) const {
        auto it = index_.find(v);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    bool contains(const Rational& v) const { return index_.count(v) > 0; }

    bool inside_bounds(const Node& n) const {
        for (std::size_t i = 0; i < bounds_.size(); ++i)
            if (n.exponents[i] < bounds_[i].first || n.exponents[i] > bounds_[i].second)
                return false;
        return true;
    }

    // Factors v over the declared primes.  Empty when v is zero or its
    // support leaves the declared prime list; bounds are not checked.
    std::optional<Node> node_for(const Rational& v) const {
        if (v.is_zero()) return std::nullopt;
        PrimeDecomposition d = factor(v);
        Node n{d.sign, std::vector<std::int64_t>(primes_.size(), 0)};
        for (const auto& [p, e] : d.factors) {
            auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
            if (it == primes_.end() || *it != p) return std::nullopt;
            n.exponents[static_cast<std::size_t>(it - primes_.begin())] = e;
        }
        return n;
    }

  private:
    std::vector<Integer> primes_;
    ExponentBounds bounds_;
    bool include_negatives_;
    std::vector<Node> nodes_;
    std::vector<Rational> values_;
    std::unordered_map<Rational, std::size_t> index_;
};

// Every sign and exponent combination inside the box.
inline NodeUniverse generate_universe(std::vector<Integer> primes, ExponentBounds bounds,
                                      bool include_negatives,
                                      std::uint64_t max_nodes = 1'000'000) {
    if (bounds.size() != primes.size())
        throw InvalidArgument("one exponent interval per prime is required");
    std::uint64_t count = include_negatives ? 2 : 1;
    for (const auto& [lo, hi] : bounds) {
        if (lo > hi) throw InvalidArgument("empty exponent interval");
        std::uint64_t width = static_cast<std::uint64_t>(hi - lo + 1);
        if (width != 0 && count > max_nodes / width)
            throw BudgetExceeded("universe box exceeds the node budget", 0, 0, max_nodes);
        count *= width;
    }
    std::vector<Node> nodes;
    nodes.reserve(count);
    std::vector<std::int64_t> exps(primes.size());
    for (std::size_t i = 0; i < primes.size(); ++i) exps[i] = bounds[i].first;
    for (;;) {
        nodes.push_back(Node{1, exps});
        if (include_negatives) nodes.push_back(Node{-1, exps});
        std::size_t j = primes.size();
        while (j > 0 && ++exps[j - 1] > bounds[j - 1].second) {
            exps[j - 1] = bounds[j - 1].first;
            --j;
        }
        if (j == 0) break;
    }
    return NodeUniverse(std::move(primes), std::move(bounds), include_negatives,
                        std::move(nodes));
}

// Universe holding exactly the given nonzero values (plus the identity).
// The prime list is their joint support and the bounds are the tightest
// box containing them and the zero vector.
inline NodeUniverse universe_from_values(const std::vector<Rational>& values) {
    std::vector<PrimeDecomposition> decs;
    decs.reserve(values.size());
    std::set<Integer> support;
    bool negatives = false;
    for (const auto& v : values) {
        if (v.is_zero()) throw InvalidArgument("universe values must be nonzero");
        decs.push_back(factor(v));
        if (decs.back().sign < 0) negatives = true;
        for (const auto& [p, e] : decs.back().factors) support.insert(p);
    }
    std::vector<Integer> primes(support.begin(), support.end());
    ExponentBounds bounds(primes.size(), {0, 0});
    std::vector<Node> nodes;
    nodes.reserve(values.size());
    for (const auto& d : decs) {
        Node n{d.sign, std::vector<std::int64_t>(primes.size(), 0)};
        for (const auto& [p, e] : d.factors) {
            std::size_t i = static_cast<std::size_t>(
                std::lower_bound(primes.begin(), primes.end(), p) - primes.begin());
            n.exponents[i] = e;
            bounds[i].first = std::min(bounds[i].first, e);
            bounds[i].second = std::max(bounds[i].second, e);
        }
        nodes.push_back(std::move(n));
    }
    return NodeUniverse(std::move(primes), std::move(bounds), negatives, std::move(nodes));
}

// Closure growth controls.  exact_arithmetic routes the completion step
// through Rational instead of the fixed-denominator integer path; both
// paths produce the same universe.
struct ClosureOptions {
    int rounds = 3;
    std::uint64_t max_nodes = 100'000;
    bool exact_arithmetic = false;
};

namespace detail {

// Signed 128-bit valuation stripping: removes all factors p, counting them.
inline int strip_factor(__int128& n, std::int64_t p) {
    int count = 0;
    while (n % p == 0) {
        n /= p;
        ++count;
    }
    return count;
}

// Interprets num/den as a node if the reduced value is supported by the
// primes, inside the bounds, and sign-admissible.  den must be positive.
inline std::optional<Node> admit_ratio_i128(__int128 num, __int128 den,
                                            const std::vector<std::int64_t>& primes,
                                            const ExponentBounds& bounds,
                                            bool include_negatives) {
    if (num == 0) return std::nullopt;
    int sign = 1;
    if (num < 0) {
        sign = -1;
        num = -num;
    }
    if (sign < 0 && !include_negatives) return std::nullopt;
    Node n{sign, std::vector<std::int64_t>(primes.size(), 0)};
    for (std::size_t i = 0; i < primes.size(); ++i) {
        std::int64_t e =
            strip_factor(num, primes[i]) - strip_factor(den, primes[i]);
        if (e < bounds[i].first || e > bounds[i].second) return std::nullopt;
        n.exponents[i] = e;
    }
    if (num != den) return std::nullopt;  // leftover cofactor off the support
    return n;
}

inline std::optional<Node> admit_rational(const Rational& v, const NodeUniverse& shape,
                                          bool include_negatives) {
    if (v.is_zero()) return std::nullopt;
    if (v.sign() < 0 && !include_negatives) return std::nullopt;
    std::optional<Node> n = shape.node_for(v);
    if (!n || !shape.inside_bounds(*n)) return std::nullopt;
    return n;
}

// Positions of the equation grouped by equal coefficient, excluding one
// target position.  Only group sizes matter; choices within a group are
// order-free.
struct CompletionGroup {
    Rational coeff;
    std::size_t count = 0;
};

inline std::vector<CompletionGroup> completion_groups(const LinearEquation& eq,
                                                      std::size_t target) {
    std::vector<CompletionGroup> groups;
    for (std::size_t j = 0; j < eq.arity(); ++j) {
        if (j == target) continue;
        bool found = false;
        for (auto& g : groups)
            if (g.coeff == eq.coeff(j)) {
                ++g.count;
                found = true;
                break;
            }
        if (!found) groups.push_back(CompletionGroup{eq.coeff(j), 1});
    }
    return groups;
}

}  // namespace detail

// Grows a universe from the identity (and its negative) by alternating
// two steps for the given number of rounds: multiply every node by every
// forbidden ratio of the equation in both directions, and complete every
// choice of values at all but one position of the equation to a full
// solution.  Candidates are admitted only inside the declared box and
// prime support.
inline NodeUniverse closure_universe(const LinearEquation& eq, std::vector<Integer> primes,
                                     ExponentBounds bounds, bool include_negatives,
                                     const ClosureOptions& options = {}) {
    if (options.rounds < 0) throw InvalidArgument("closure rounds must be nonnegative");
    // The completion step divides by coefficients, so their support must
    // stay inside the universe's.
    NodeUniverse shape(primes, bounds, include_negatives, {});
    for (const auto& a : eq.coeffs())
        if (!shape.node_for(a))
            throw UnsupportedPrime("equation coefficient " + a.str() +
                                   " leaves the universe support");

    // Forbidden ratios as exponent translations, both directions, when
    // representable over the declared primes.
    std::vector<std::pair<int, std::vector<std::int64_t>>> deltas;
    for (const ForbiddenRatio& f : forbidden_ratios(eq)) {
        std::optional<Node> d = shape.node_for(f.ratio);
        if (!d) continue;
        std::vector<std::int64_t> neg(d->exponents);
        for (auto& e : neg) e = -e;
        deltas.emplace_back(d->sign, d->exponents);
        deltas.emplace_back(d->sign, std::move(neg));
    }

    std::set<Node> nodes;
    nodes.insert(Node{1, std::vector<std::int64_t>(primes.size(), 0)});
    if (include_negatives) nodes.insert(Node{-1, std::vector<std::int64_t>(primes.size(), 0)});

    // Fixed-denominator integer arithmetic is exact whenever every node
    // value times L = lcm(coefficient denominators) * prod(p^max|e|) and
    // every coefficient numerator stay well under 63 bits.
    Integer box_mag = 1;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        std::int64_t m = std::max(-bounds[i].first, bounds[i].second);
        box_mag *= Integer(boost::multiprecision::pow(primes[i], static_cast<unsigned>(m)));
    }
    Integer coeff_den_lcm = 1;
    Integer coeff_num_max = 1;
    for (const auto& a : eq.coeffs()) {
        coeff_den_lcm = boost::multiprecision::lcm(coeff_den_lcm, a.den());
        Integer num_abs = boost::multiprecision::abs(a.num());
        if (num_abs > coeff_num_max) coeff_num_max = num_abs;
    }
    // Each per-position term is bounded by coeff_num_max * L, and the
    // solved numerator by arity * that * coeff_den_lcm; both must stay
    // clear of the int64 and int128 ranges respectively.
    Integer term_bound = coeff_num_max * coeff_den_lcm * box_mag * box_mag;
    Integer solve_bound = Integer(eq.arity()) * term_bound * coeff_den_lcm;
    bool fast = !options.exact_arithmetic && term_bound < (Integer(1) << 62) &&
                solve_bound < (Integer(1) << 120);
    std::vector<std::int64_t> primes64;
    std::int64_t lcm64 = 0, box64 = 0;
    if (fast) {
        for (const auto& p : primes) primes64.push_back(p.convert_to<std::int64_t>());
        lcm64 = coeff_den_lcm.convert_to<std::int64_t>();
        box64 = box_mag.convert_to<std::int64_t>();
    }

    auto check_budget = [&]() {
        if (nodes.size() > options.max_nodes)
            throw BudgetExceeded("closure exceeds the node budget", 0, 0, nodes.size());
    };

    for (int round = 0; round < options.rounds; ++round) {
        std::vector<Node> cur(nodes.begin(), nodes.end());

        // Ratio translation step.
        for (const Node& n : cur) {
            for (const auto& [dsign, dexp] : deltas) {
                Node m{n.sign * dsign, n.exponents};
                bool ok = m.sign > 0 || include_negatives;
                for (std::size_t i = 0; ok && i < dexp.size(); ++i) {
                    m.exponents[i] += dexp[i];
                    if (m.exponents[i] < bounds[i].first || m.exponents[i] > bounds[i].second)
                        ok = false;
                }
                if (ok) nodes.insert(std::move(m));
            }
            check_budget();
        }

        // Completion step: for one representative target position per
        // distinct coefficient, iterate multisets of current values over
        // the remaining positions and solve for the target.  The ratio
        // step's discoveries from this round participate.
        cur.assign(nodes.begin(), nodes.end());
        std::vector<Rational> cur_values;
        cur_values.reserve(cur.size());
        for (const Node& n : cur) cur_values.push_back(node_value(n, primes));

        std::vector<Rational> targets_done;
        for (std::size_t t = 0; t < eq.arity(); ++t) {
            bool done = false;
            for (const auto& c : targets_done)
                if (c == eq.coeff(t)) done = true;
            if (done) continue;
            targets_done.push_back(eq.coeff(t));

            std::vector<detail::CompletionGroup> groups = detail::completion_groups(eq, t);

            if (fast) {
                // terms[g][i] = coeff_g * value_i * L, an exact integer.
                std::vector<std::vector<std::int64_t>> terms(groups.size());
                for (std::size_t g = 0; g < groups.size(); ++g) {
                    const Rational& c = groups[g].coeff;
                    terms[g].reserve(cur_values.size());
                    for (const Rational& v : cur_values) {
                        // v.den() divides box_mag because v lies in the box.
                        Integer w = c.num() * v.num() * (coeff_den_lcm / c.den()) *
                                    (box_mag / v.den());
                        terms[g].push_back(w.convert_to<std::int64_t>());
                    }
                }
                __int128 L = static_cast<__int128>(lcm64) * static_cast<__int128>(box64);
                std::int64_t tn = eq.coeff(t).num().convert_to<std::int64_t>();
                std::int64_t td = eq.coeff(t).den().convert_to<std::int64_t>();
                // x = -(S / L) / (tn / td), so x = (-S * td) / (L * tn).
                std::vector<std::size_t> pick;
                auto leaf = [&](__int128 s) {
                    __int128 num = -s * td;
                    __int128 den = L * tn;
                    if (den < 0) {
                        den = -den;
                        num = -num;
                    }
                    std::optional<Node> n = detail::admit_ratio_i128(num, den, primes64, bounds,
                                                                     include_negatives);
                    if (n) nodes.insert(std::move(*n));
                };
                auto rec = [&](auto&& self, std::size_t g, std::size_t slot, std::size_t start,
                               __int128 s) -> void {
                    if (g == groups.size()) {
                        leaf(s);
                        return;
                    }
                    if (slot == groups[g].count) {
                        self(self, g + 1, 0, 0, s);
                        return;
                    }
                    for (std::size_t i = start; i < cur_values.size(); ++i)
                        self(self, g, slot + 1, i, s + terms[g][i]);
                };
                rec(rec, 0, 0, 0, 0);
            } else {
                std::vector<std::vector<Rational>> terms(groups.size());
                for (std::size_t g = 0; g < groups.size(); ++g) {
                    terms[g].reserve(cur_values.size());
                    for (const Rational& v : cur_values) terms[g].push_back(groups[g].coeff * v);
                }
                Rational ct = eq.coeff(t);
                auto rec = [&](auto&& self, std::size_t g, std::size_t slot, std::size_t start,
                               const Rational& s) -> void {
                    if (g == groups.size()) {
                        Rational x = -s / ct;
                        std::optional<Node> n =
                            detail::admit_rational(x, shape, include_negatives);
                        if (n) nodes.insert(std::move(*n));
                        return;
                    }
                    if (slot == groups[g].count) {
                        self(self, g + 1, 0, 0, s);
                        return;
                    }
                    for (std::size_t i = start; i < cur_values.size(); ++i)
                        self(self, g, slot + 1, i, s + terms[g][i]);
                };
                rec(rec, 0, 0, 0, Rational(0));
            }
            check_budget();
        }
    }

    return NodeUniverse(std::move(primes), std::move(bounds), include_negatives,
                        std::vector<Node>(nodes.begin(), nodes.end()));
}

}  // namespace radoq

#endif
