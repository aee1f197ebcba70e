#pragma once

/*
 * Katetov maps over a finite metric space.
 *
 * A map f is Katetov when |f(x) - f(y)| <= d(x,y) <= f(x) + f(y) for all
 * pairs; such maps are exactly the possible distance traces of one extra
 * point. The greatest extension of a partial Katetov map f0 on a subset S
 * is x -> min { f0(s) + d(x,s) : s in S }; it dominates every Katetov map
 * agreeing with f0 on S. Maps carry an optional support: when present, the
 * stored values on the support control the whole map through that formula.
 *
 * sup_distance is the metric on maps; the distance trace of a realized
 * point x is the map d(x, .) (kuratowski), and sup_distance(f, d(x, .))
 * always equals f(x).
 */

#include "ums/metric_space.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace ums {

struct KatetovMap {
    std::vector<Rational> values;            // one value per base point
    std::optional<std::vector<int>> support; // sorted; values on it control the map
};

// Full-map check; errors in checking order:
//   NegativeValue x, LipschitzViolation x y, SumViolation x y
void katetov_check(const FiniteMetricSpace& s, const std::vector<Rational>& values);

// Same inequalities restricted to a subset, reported with original indices.
void katetov_check_subset(const FiniteMetricSpace& s, const std::vector<int>& subset,
                          const std::vector<Rational>& values);

// Checked constructor; when a support is given, verifies the control
// equation at every point (SupportMismatch x otherwise).
KatetovMap make_katetov(const FiniteMetricSpace& s, std::vector<Rational> values,
                        std::optional<std::vector<int>> support = std::nullopt);

// Greatest Katetov extension of a partial map on `subset`.
KatetovMap katetov_extend(const FiniteMetricSpace& s, const std::vector<int>& subset,
                          const std::vector<Rational>& values);

// Distance trace d(x, .) of an existing point, supported on {x}.
KatetovMap kuratowski(const FiniteMetricSpace& s, int x);

// Sup metric on maps over the same base; BaseMismatch on size difference.
Rational sup_distance(const FiniteMetricSpace& s, const KatetovMap& f, const KatetovMap& g);

struct FeasibleInterval {
    int point = 0;
    Rational lower;
    std::optional<Rational> upper; // nullopt marks an unbounded interval
};

// Exact set of values v at `point` for which the partial assignment
// extends to a Katetov map with f(point) = v. InfeasiblePartial when the
// assignment is not Katetov on its own subset.
FeasibleInterval feasible_interval(const FiniteMetricSpace& s, const std::vector<int>& subset,
                                   const std::vector<Rational>& values, int point);

// All distinct greatest extensions of grid-valued partial Katetov maps on
// supports of size 1..max_support. Values are constrained to the grid on
// the support only; extension values may leave the grid. Deterministic
// order: supports by (size, lexicographic), value tuples lexicographic in
// ascending grid order, first occurrence kept on duplicates.
std::vector<KatetovMap> enumerate_katetov(const FiniteMetricSpace& s,
                                          std::vector<Rational> grid, int max_support);

// Streaming form; fn receives (support, support values, full extension)
// for each distinct map and returns false to stop the enumeration.
void enumerate_katetov_stream(
    const FiniteMetricSpace& s, std::vector<Rational> grid, int max_support,
    const std::function<bool(const std::vector<int>&, const std::vector<Rational>&,
                             const std::vector<Rational>&)>& fn);

// Largest sup-distance from f over Katetov maps agreeing with f on K:
// pointwise the greatest extension above, the feasible lower bound below.
// EmptySubset when K is empty.
Rational saturation_radius(const FiniteMetricSpace& s, const std::vector<Rational>& f_values,
                           const std::vector<int>& K);

struct SaturationWitness {
    std::vector<int> subset;
    Rational radius;
    bool optimal; // exhaustive search ran (it does for n <= exhaustive_limit)
};

// Smallest subset K with saturation_radius <= eps; exhaustive by
// (size, lexicographic) up to exhaustive_limit points, greedy beyond.
SaturationWitness min_saturation_witness(const FiniteMetricSpace& s,
                                         const std::vector<Rational>& f_values,
                                         const Rational& eps, int exhaustive_limit = 12);

// "kmap v1" text format: "space <file>", "n <count>", "v <i> <p>[/<q>]"
// per point, optional "support <i>...", "end". The space reference is
// resolved relative to the kmap file's directory on reading.
struct KmapFile {
    std::string space_path;
    FiniteMetricSpace space;
    KatetovMap map;
};
KmapFile read_kmap_file(const std::string& path);
void write_kmap_file(const std::string& path, const std::string& space_ref, const KatetovMap& map);

} // namespace ums
