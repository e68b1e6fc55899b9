#ifndef RADOQ_CONSTRAINTS_HPP
#define RADOQ_CONSTRAINTS_HPP

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "radoq/equation.hpp"
#include "radoq/error.hpp"
#include "radoq/universe.hpp"

namespace radoq {

// Disequality between two universe nodes related by a forbidden ratio:
// value(to) == value(from) * ratio, and a valid coloring must separate
// them.  ratio is a canonical forbidden representative.
struct RatioEdge {
    std::size_t from = 0;
    std::size_t to = 0;
    Rational ratio;
};

// Not-all-equal constraint over three or more distinct universe nodes
// that occur together in one solution of the equation.  witness is a
// position-ordered solution tuple over exactly these nodes' values.
struct NaeTuple {
    std::vector<std::size_t> members;  // sorted, distinct, size >= 3
    SolutionTuple witness;
};

// A solution all of whose positions carry one node's value.  Any
// coloring whatsoever leaves this solution monochromatic.
struct UniversalTuple {
    std::size_t node = 0;
    SolutionTuple witness;
};

// All coloring constraints an equation induces on a universe, with
// per-node incidence lists for propagation.
class ConstraintSet {
  public:
    ConstraintSet(LinearEquation equation, std::size_t node_count, std::vector<RatioEdge> edges,
                  std::vector<NaeTuple> tuples, std::vector<UniversalTuple> universal)
        : equation_(std::move(equation)),
          edges_(std::move(edges)),
          tuples_(std::move(tuples)),
          universal_(std::move(universal)),
          edges_at_(node_count),
          tuples_at_(node_count) {
        for (std::size_t e = 0; e < edges_.size(); ++e) {
            edges_at_.at(edges_[e].from).push_back(e);
            edges_at_.at(edges_[e].to).push_back(e);
        }
        for (std::size_t t = 0; t < tuples_.size(); ++t)
            for (std::size_t n : tuples_[t].members) tuples_at_.at(n).push_back(t);
    }

    const LinearEquation& equation() const { return equation_; }
    const std::vector<RatioEdge>& edges() const { return edges_; }
    const std::vector<NaeTuple>& tuples() const { return tuples_; }
    const std::vector<UniversalTuple>& universal() const { return universal_; }
    const std::vector<std::size_t>& edges_at(std::size_t node) const {
        return edges_at_.at(node);
    }
    const std::vector<std::size_t>& tuples_at(std::size_t node) const {
        return tuples_at_.at(node);
    }

  private:
    LinearEquation equation_;
    std::vector<RatioEdge> edges_;
    std::vector<NaeTuple> tuples_;
    std::vector<UniversalTuple> universal_;
    std::vector<std::vector<std::size_t>> edges_at_;
    std::vector<std::vector<std::size_t>> tuples_at_;
};

// Derives every constraint the equation places on colorings of the
// universe: one edge per forbidden ratio per related node pair, one
// not-all-equal tuple per solution spanning three or more distinct
// nodes, and a universal contradiction per all-equal solution.
// Two-node solutions are never emitted as tuples: their partition ratio
// is a forbidden ratio, so the corresponding edge already carries them,
// except when both partition sums vanish, in which case the coefficient
// sum is zero and every node already carries a universal contradiction.
inline ConstraintSet derive_constraints(const LinearEquation& eq, const NodeUniverse& U) {
    for (const Rational& a : eq.coeffs())
        if (!U.node_for(a))
            throw UnsupportedPrime("coefficient " + a.str() +
                                   " is not supported by the universe primes");

    std::vector<RatioEdge> edges;
    for (const ForbiddenRatio& f : forbidden_ratios(eq)) {
        for (std::size_t i = 0; i < U.size(); ++i) {
            Rational target = U.value(i) * f.ratio;
            std::optional<std::size_t> j = U.index_of(target);
            if (!j) continue;
            if (f.ratio == Rational(-1) && *j <= i) continue;  // self-inverse ratio
            edges.push_back(RatioEdge{i, *j, f.ratio});
        }
    }

    std::vector<NaeTuple> tuples;
    std::vector<UniversalTuple> universal;
    std::map<std::vector<std::size_t>, std::size_t> tuple_index;
    for (const SolutionTuple& sol : enumerate_solutions(eq, U.values())) {
        std::vector<std::size_t> members;
        members.reserve(sol.values.size());
        for (const Rational& v : sol.values) members.push_back(*U.index_of(v));
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        if (members.size() == 1) {
            universal.push_back(UniversalTuple{members[0], sol});
        } else if (members.size() >= 3) {
            if (tuple_index.emplace(members, tuples.size()).second)
                tuples.push_back(NaeTuple{std::move(members), sol});
        }
    }

    return ConstraintSet(eq, U.size(), std::move(edges), std::move(tuples),
                         std::move(universal));
}

}  // namespace radoq

#endif
