#pragma once

/*
 * Partial isometries and deterministic isometric-copy search.
 *
 * find_embedding maps every point of the pattern into the host so that all
 * distances are preserved; the backtracking assigns pattern points in index
 * order and tries host candidates in ascending index, so a successful
 * search returns the lexicographically least image vector. Candidates are
 * pruned by distance-multiset containment before the search starts.
 */

#include "ums/metric_space.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace ums {

struct PartialIsometry {
    // (source point, target point), injective on both sides.
    std::vector<std::pair<int, int>> pairs;
};

// Errors: BadPair i j (range), NotInjective i j, DistanceMismatch i j.
void validate_partial_isometry(const FiniteMetricSpace& source, const FiniteMetricSpace& target,
                               const PartialIsometry& p);

// Total distance-preserving injection of pattern into host; nullopt when
// no isometric copy exists.
std::optional<PartialIsometry> find_embedding(const FiniteMetricSpace& pattern,
                                              const FiniteMetricSpace& host);

// Bijective isometry; requires equal point counts to succeed.
std::optional<PartialIsometry> find_isometry(const FiniteMetricSpace& a,
                                             const FiniteMetricSpace& b);

} // namespace ums
