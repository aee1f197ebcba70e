#pragma once

/*
 * Iterated one-point-extension towers.
 *
 * Each round enumerates grid-valued finitely-supported maps over the
 * current level and realizes every map that is not already the distance
 * trace of an existing point. Distances between two new points use the
 * sup metric of their maps over the generating level; levels are nested
 * index prefixes of the final space. Growth is truncated by depth and by
 * a total point budget; hitting the budget flags the result instead of
 * failing.
 */

#include "ums/katetov.hpp"
#include "ums/metric_space.hpp"

#include <string>
#include <vector>

namespace ums {

struct TowerConfig {
    std::vector<Rational> grid;
    int max_support = 1;
    int depth = 1;
    long long max_points = 100000; // total point budget, seed included
};

struct PointOrigin {
    int point = 0; // index in the final space
    int level = 0; // level whose points carry the generating map
    std::vector<int> support;
    std::vector<Rational> values; // grid values on the support
};

struct TowerApprox {
    FiniteMetricSpace space;          // top level
    std::vector<int> level_sizes;     // level_sizes[0] = seed size
    std::vector<PointOrigin> origins; // one per added point, in index order
    bool budget_exceeded = false;

    int depth() const { return static_cast<int>(level_sizes.size()) - 1; }
    // The level as a space (index prefix of the top level).
    FiniteMetricSpace level(int i) const;
};

// One extra point at the distances given by f. DuplicatePoint when f is
// the distance trace of an existing point (some value is zero).
FiniteMetricSpace realize(const FiniteMetricSpace& s, const KatetovMap& f,
                          std::string label = "");

TowerApprox build_tower(const FiniteMetricSpace& seed, const TowerConfig& cfg);

struct AuditFailure {
    std::vector<int> subset;
    std::vector<Rational> values;
};

struct AuditReport {
    long long checked = 0;  // grid maps examined
    long long realized = 0; // maps with a witness within tolerance
    std::vector<AuditFailure> failures;
};

// For every subset of size 1..k drawn from the first `universe` points
// (default: all) and every grid-valued Katetov map on it: is there a point
// z with |d(z,s) - f(s)| <= eps for all s in the subset?
AuditReport injectivity_audit(const FiniteMetricSpace& space, std::vector<Rational> grid,
                              int k, const Rational& eps, int universe = -1);

// Extends the top level by the greatest extension of a partial map living
// on the first level_sizes[level] points. DuplicatePoint when some
// existing point already realizes the map on that level.
TowerApprox extend_on_demand(const TowerApprox& approx, int level,
                             const std::vector<int>& subset,
                             const std::vector<Rational>& values);

// "prov v1" sidecar: header, "levels <s0> <s1> ...", "truncated 0|1",
// lines "p <index> level <i> support <j...> values <q...>", "end".
struct TowerFile {
    std::vector<int> level_sizes;
    std::vector<PointOrigin> origins;
    bool budget_exceeded = false;
};
TowerFile read_prov_file(const std::string& path);
void write_prov_file(const std::string& path, const TowerApprox& t);

} // namespace ums
