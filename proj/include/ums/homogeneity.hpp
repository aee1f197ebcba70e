#pragma once

/*
 * Partial-isometry extension and trace separation.
 *
 * back_and_forth grows a partial self-isometry until the requested points
 * are all matched, choosing for every new point the least-index image
 * whose distances to the current range replay the point's distances to
 * the current domain. Getting stuck is a legitimate outcome on truncated
 * spaces: the unrealizable forced distance pattern is returned so callers
 * can realize it and retry.
 *
 * separating_extension builds the offset extension that distinguishes two
 * points with identical traces on a reference set; avoidance_extension
 * builds the extension that keeps a prescribed clearance from a net.
 */

#include "ums/isometry.hpp"
#include "ums/katetov.hpp"

#include <optional>
#include <vector>

namespace ums {

// Distances from z to the subset points, in subset order.
std::vector<Rational> distance_trace(const FiniteMetricSpace& s, const std::vector<int>& subset,
                                     int z);

struct BnfStep {
    int source = 0;
    int target = 0;
    std::vector<Rational> forced; // distances to the pre-step domain, pair order
};

struct ExtensionTrace {
    std::vector<BnfStep> steps;
    bool completed = false;
    int stuck_source = -1;              // set when no admissible image exists
    std::vector<Rational> stuck_forced; // the unrealizable pattern
    PartialIsometry result;             // pairs after all performed steps
};

// Matched points (domain and range of the growing map) are never reused
// as images; unmatched targets are processed in ascending index order.
ExtensionTrace back_and_forth(const FiniteMetricSpace& ambient, const PartialIsometry& p,
                              std::vector<int> targets);

struct UniquenessReport {
    bool unique = false;
    int witness_x = -1; // equal-trace pair when not unique
    int witness_y = -1;
};

UniquenessReport is_uniqueness_set(const FiniteMetricSpace& s, const std::vector<int>& A);

// Strict versions of both map inequalities on every pair.
bool is_nice(const FiniteMetricSpace& s, const std::vector<Rational>& values);

struct SeparatingExtension {
    KatetovMap map; // over the core space
    Rational alpha;
    Rational alpha_max;
};

// Core must consist exactly of the reference points xs plus x and y, with
// d(x, x_i) = d(y, x_i) for every reference point. The returned map keeps
// f on xs, takes the greatest-extension value at y and that value minus
// alpha at x. Default alpha is half of alpha_max; alpha = 0 gives the
// plain greatest extension (non-separating).
// Errors: NotNice, TraceMismatch(x, y, x_i), AlphaTooLarge.
SeparatingExtension separating_extension(const FiniteMetricSpace& core,
                                         const std::vector<int>& xs, int x, int y,
                                         const std::vector<Rational>& f,
                                         std::optional<Rational> alpha = std::nullopt);

struct AvoidanceExtension {
    std::vector<int> domain; // targets then net, ambient indices
    std::vector<Rational> values;
    Rational margin; // min over net of g - (M + eps), nonnegative on success
};

// Greatest extension of f from the targets, checked to stay at least
// M + eps on every net point; MarginViolated reports the first breach
// (either a net point closer than M to a target, or a small extension
// value).
AvoidanceExtension avoidance_extension(const FiniteMetricSpace& ambient,
                                       const std::vector<int>& targets,
                                       const std::vector<Rational>& f,
                                       const std::vector<int>& net, const Rational& M,
                                       const Rational& eps);

} // namespace ums
