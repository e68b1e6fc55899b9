#ifndef RADOQ_COLORING_HPP
#define RADOQ_COLORING_HPP

/*
 * Coloring catalog.
 *
 * A coloring assigns an integer color to every nonzero rational.  The
 * families here are all built from the valuation v_p and the unit
 * residue w_p:
 *
 *   cpn       c(q) = v_p(q) mod n
 *   cpvn      c(q) = floor(v_p(q) / v) mod n
 *   cp        c(q) = w_p(q)
 *   cpi       c(q) = pi_{v_p(q)}(w_p(q)), pi_l a permutation of
 *             {1..p-1} per level l, identity outside a finite window,
 *             pi_0 the identity
 *   c4pi      base 2: with i(q) = (v_2(q)/2) mod 3 on even valuations,
 *             c(q) = i(q) on Q_0 and c(q) = pi(i(2q)) on Q_1
 *   oddprime  residues w and p-w share a class; per class sigma, a
 *             permutation of {0..n-1}, c(q) = sigma(v_p(q) mod n); the
 *             class of 1 is pinned to the identity
 *   explicit  finite lookup table
 *
 * Freeness of a coloring with respect to an equation is always checked
 * against a concrete finite set, never assumed.
 */

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "radoq/equation.hpp"
#include "radoq/error.hpp"
#include "radoq/numtheory.hpp"
#include "radoq/rational.hpp"

namespace radoq {

using Permutation = std::vector<std::int64_t>;

// Permutation of {base, ..., base + size - 1}, stored as images in
// order: perm[i] is the image of base + i.
inline void require_permutation(const Permutation& perm, std::int64_t base, std::size_t size) {
    if (perm.size() != size) throw InvalidArgument("permutation has the wrong length");
    std::vector<bool> hit(size, false);
    for (auto x : perm) {
        if (x < base || x >= base + static_cast<std::int64_t>(size))
            throw InvalidArgument("permutation image out of range");
        if (hit[static_cast<std::size_t>(x - base)]) throw InvalidArgument("permutation repeats an image");
        hit[static_cast<std::size_t>(x - base)] = true;
    }
}

inline std::int64_t apply_permutation(const Permutation& perm, std::int64_t base, std::int64_t x) {
    return perm[static_cast<std::size_t>(x - base)];
}

inline bool is_identity_permutation(const Permutation& perm, std::int64_t base) {
    for (std::size_t i = 0; i < perm.size(); ++i)
        if (perm[i] != base + static_cast<std::int64_t>(i)) return false;
    return true;
}

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b, r = a % b;
    return (r != 0 && (r < 0) != (b < 0)) ? q - 1 : q;
}

inline std::int64_t pos_mod(std::int64_t a, std::int64_t n) {
    std::int64_t r = a % n;
    return r < 0 ? r + n : r;
}

struct Cpn {
    Integer p;
    std::int64_t n;
    Cpn(Integer p_, std::int64_t n_) : p(std::move(p_)), n(n_) {
        require_prime(p);
        if (n < 2) throw InvalidArgument("cpn needs n >= 2");
    }
};

struct Cpvn {
    Integer p;
    std::int64_t v;
    std::int64_t n;
    Cpvn(Integer p_, std::int64_t v_, std::int64_t n_) : p(std::move(p_)), v(v_), n(n_) {
        require_prime(p);
        if (v == 0) throw InvalidArgument("cpvn needs v != 0");
        if (n < 2) throw InvalidArgument("cpvn needs n >= 2");
    }
};

struct CapCp {
    Integer p;
    explicit CapCp(Integer p_) : p(std::move(p_)) { require_prime(p); }
};

struct CPi {
    Integer p;
    std::map<std::int64_t, Permutation> window;
    CPi(Integer p_, std::map<std::int64_t, Permutation> window_)
        : p(std::move(p_)), window(std::move(window_)) {
        require_prime(p);
        std::size_t units = (p - 1).convert_to<std::size_t>();
        for (const auto& [level, perm] : window) {
            require_permutation(perm, 1, units);
            if (level == 0 && !is_identity_permutation(perm, 1))
                throw InvalidArgument("cpi pins level 0 to the identity");
        }
    }
};

struct C4pi {
    Permutation perm;
    explicit C4pi(Permutation perm_) : perm(std::move(perm_)) { require_permutation(perm, 0, 3); }
};

struct OddPrimeFamily {
    Integer p;
    std::int64_t n;
    // Keyed by the smaller residue of the class {w, p-w}; keys run over
    // 2..(p-1)/2.  The class {1, p-1} carries the identity; absent keys
    // default to the identity as well.
    std::map<std::int64_t, Permutation> perms;
    OddPrimeFamily(Integer p_, std::int64_t n_, std::map<std::int64_t, Permutation> perms_)
        : p(std::move(p_)), n(n_), perms(std::move(perms_)) {
        require_prime(p);
        if (p == 2) throw InvalidPrime("oddprime needs an odd prime");
        if (n < 2) throw InvalidArgument("oddprime needs n >= 2");
        Integer half = (p - 1) / 2;
        for (const auto& [key, perm] : perms) {
            if (key < 2 || Integer(key) > half)
                throw InvalidArgument("class key must be a residue in 2..(p-1)/2");
            require_permutation(perm, 0, static_cast<std::size_t>(n));
        }
    }
};

struct ExplicitColoring {
    std::vector<Rational> domain;
    std::vector<std::int64_t> colors;
    std::unordered_map<Rational, std::int64_t> table;
    ExplicitColoring(std::vector<Rational> domain_, std::vector<std::int64_t> colors_)
        : domain(std::move(domain_)), colors(std::move(colors_)) {
        if (domain.size() != colors.size()) throw InvalidArgument("domain/color length mismatch");
        for (std::size_t i = 0; i < domain.size(); ++i) {
            if (domain[i].is_zero()) throw InvalidArgument("explicit domain must exclude zero");
            if (colors[i] < 0) throw InvalidArgument("colors must be nonnegative");
            if (!table.emplace(domain[i], colors[i]).second)
                throw InvalidArgument("explicit domain repeats " + domain[i].str());
        }
    }
};

using ColoringSpec = std::variant<Cpn, Cpvn, CapCp, CPi, C4pi, OddPrimeFamily, ExplicitColoring>;

inline std::int64_t eval(const ColoringSpec& spec, const Rational& q) {
    if (q.is_zero()) throw UndefinedColor("colorings are undefined at zero");
    struct Visitor {
        const Rational& q;
        std::int64_t operator()(const Cpn& c) const { return pos_mod(v_p(c.p, q), c.n); }
        std::int64_t operator()(const Cpvn& c) const {
            return pos_mod(floor_div(v_p(c.p, q), c.v), c.n);
        }
        std::int64_t operator()(const CapCp& c) const { return w_p(c.p, q); }
        std::int64_t operator()(const CPi& c) const {
            std::int64_t level = v_p(c.p, q), unit = w_p(c.p, q);
            auto it = c.window.find(level);
            return it == c.window.end() ? unit : apply_permutation(it->second, 1, unit);
        }
        std::int64_t operator()(const C4pi& c) const {
            std::int64_t v = v_p(2, q);
            if (v % 2 == 0) return pos_mod(v / 2, 3);
            return apply_permutation(c.perm, 0, pos_mod((v + 1) / 2, 3));
        }
        std::int64_t operator()(const OddPrimeFamily& c) const {
            std::int64_t level = pos_mod(v_p(c.p, q), c.n);
            Integer w = w_p(c.p, q);
            Integer mirror = c.p - w;
            Integer key = w < mirror ? w : mirror;
            if (key == 1) return level;
            auto it = c.perms.find(key.convert_to<std::int64_t>());
            return it == c.perms.end() ? level : apply_permutation(it->second, 0, level);
        }
        std::int64_t operator()(const ExplicitColoring& c) const {
            auto it = c.table.find(q);
            if (it == c.table.end()) throw UndefinedColor("no color assigned to " + q.str());
            return it->second;
        }
    };
    return std::visit(Visitor{q}, spec);
}

// Relabels a color sequence by order of first occurrence, so any two
// sequences equal up to a bijection of colors get the same image.
inline std::vector<std::int64_t> canonicalize(const std::vector<std::int64_t>& colors) {
    std::vector<std::int64_t> out;
    out.reserve(colors.size());
    std::unordered_map<std::int64_t, std::int64_t> relabel;
    for (auto c : colors) {
        auto it = relabel.emplace(c, static_cast<std::int64_t>(relabel.size())).first;
        out.push_back(it->second);
    }
    return out;
}

// One monochromatic solution found by a scan.
struct MonochromaticHit {
    SolutionTuple tuple;
    std::int64_t color;
};

// Result of scanning a finite set for monochromatic solutions.  The
// scanned set is always carried along: an empty hit list certifies
// freeness restricted to exactly that set.  `checked` is the nominal
// number of assign-and-solve probes the scan covers; `truncated` marks
// a scan stopped early by the hit limit.
struct FreenessReport {
    std::vector<MonochromaticHit> hits;
    std::uint64_t checked = 0;
    bool truncated = false;
    std::vector<Rational> set;

    bool free() const { return hits.empty() && !truncated; }
};

// Scans S for solutions of the equation that are monochromatic under
// the coloring.  A monochromatic solution lies inside one color class,
// so each class is scanned independently; classes are visited in
// ascending color order.  limit = 0 reports every hit.
inline FreenessReport find_monochromatic(const ColoringSpec& spec, const LinearEquation& eq,
                                         const std::vector<Rational>& set,
                                         std::uint64_t limit = 0) {
    FreenessReport report;
    report.set = canonical_set(set);
    std::map<std::int64_t, std::vector<Rational>> classes;
    for (const auto& x : report.set) classes[eval(spec, x)].push_back(x);
    for (const auto& [color, members] : classes) {
        std::uint64_t probes = 1;
        for (std::size_t i = 0; i + 1 < eq.arity(); ++i) probes *= members.size();
        report.checked += probes;
        for (auto& tuple : enumerate_solutions(eq, members)) {
            if (limit && report.hits.size() >= limit) {
                report.truncated = true;
                return report;
            }
            report.hits.push_back(MonochromaticHit{std::move(tuple), color});
        }
    }
    return report;
}

// Freeness of the coloring for every nonempty sub-multiset A' of the
// coefficient multiset, each taken as the equation sum(a in A') a x_a = 0
// over distinct variables.  Singletons admit no nonzero solution and
// are skipped.  Sub-multisets are deduplicated by their sorted
// coefficient list.
struct SubsetReport {
    std::vector<Rational> coeffs;
    FreenessReport report;
};

inline std::vector<SubsetReport> strongly_free_check(const ColoringSpec& spec,
                                                     const std::vector<Rational>& coeffs,
                                                     const std::vector<Rational>& set,
                                                     std::uint64_t limit = 0) {
    std::size_t n = coeffs.size();
    if (n < 2 || n > 16) throw InvalidArgument("coefficient multiset size out of range");
    std::vector<SubsetReport> out;
    std::vector<std::vector<Rational>> seen;
    for (std::uint32_t mask = 1; mask < (std::uint32_t(1) << n); ++mask) {
        std::vector<Rational> sub;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) sub.push_back(coeffs[i]);
        if (sub.size() < 2) continue;
        std::vector<Rational> key = sub;
        std::sort(key.begin(), key.end());
        if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
        seen.push_back(key);
        out.push_back(SubsetReport{sub, find_monochromatic(spec, LinearEquation(sub), set, limit)});
    }
    return out;
}

}  // namespace radoq

#endif
