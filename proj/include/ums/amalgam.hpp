#pragma once

/*
 * Metric amalgamation.
 *
 * Gluing two spaces over a distance-preserving identification uses the
 * greatest amalgam: cross distances are the min-plus value through the
 * glue. The same formula glues any number of extensions of a common base
 * (multi_amalgamate) and builds the orbit extension of a space by a
 * self-isometry and a one-point-extension map (orbit_amalgam). Distances
 * of zero arising between points from different sides are legitimate;
 * such points are identified and every identification is reported.
 */

#include "ums/isometry.hpp"
#include "ums/katetov.hpp"
#include "ums/metric_space.hpp"

#include <utility>
#include <vector>

namespace ums {

struct Amalgam {
    FiniteMetricSpace space;
    std::vector<int> left_map;  // left point -> result index
    std::vector<int> right_map; // right point -> result index
    // zero-distance identifications beyond the glue: (left point, right point)
    std::vector<std::pair<int, int>> merges;
};

// Glue pairs (left index, right index) must form a distance-preserving
// bijection between subsets; validated with the partial-isometry checks.
// Result points: all of left in order, then unglued right points ascending.
Amalgam amalgamate(const FiniteMetricSpace& left, const FiniteMetricSpace& right,
                   const std::vector<std::pair<int, int>>& glue);

struct DoubleSpace {
    FiniteMetricSpace space;
    std::vector<int> first_map;  // embedding of the original into copy 1
    std::vector<int> second_map; // embedding of the original into copy 2
    PartialIsometry swap;        // total involution exchanging the copies
};

// Two copies of a space glued over a nonempty subset, plus the involution
// swapping the copies and fixing the glued points.
DoubleSpace double_with_swap(const FiniteMetricSpace& base, const std::vector<int>& glued);

struct OrbitAmalgam {
    FiniteMetricSpace space; // base points first, then y_{-N} .. y_N
    int horizon = 0;
    // offset i+horizon -> index of y_i in space (a base index when merged)
    std::vector<int> y_index;
    bool collapsed = false; // true when every y_i merged into the base
    PartialIsometry shift;  // phi on base plus y_i -> y_{i+1}, i < horizon
    // zero-distance identifications: (orbit offset i, base point)
    std::vector<std::pair<long long, int>> merges;
};

// Extension of base by the phi-orbit of the one-point extension f:
//   d(x, y_i) = f(phi^{-i}(x)),  d(y_i, y_j) = min_x d(y_i,x) + d(x,y_j).
// When f takes the value 0 somewhere it is the distance trace of a base
// point and the whole orbit collapses onto the base (reported in merges).
OrbitAmalgam orbit_amalgam(const FiniteMetricSpace& base, const std::vector<int>& phi,
                           const KatetovMap& f, int horizon);

struct MultiMerge {
    int ext_a = 0;
    int point_a = 0;
    int ext_b = 0;
    int point_b = 0;
};

struct MultiAmalgam {
    FiniteMetricSpace space; // base first, then surviving new points per extension
    // per extension: extension point -> result index (base prefix maps to itself)
    std::vector<std::vector<int>> point_map;
    std::vector<MultiMerge> merges;
};

// Iterated amalgam of spaces that all contain base as their index prefix.
// Cross distances between new points of different extensions go through
// the base; zero-distance pairs are identified and reported.
MultiAmalgam multi_amalgamate(const FiniteMetricSpace& base,
                              const std::vector<FiniteMetricSpace>& extensions);

// Checks that perm is a distance-preserving permutation of s.
// Errors: NotPermutation(i), PhiNotIsometry(i,j).
void check_self_isometry(const FiniteMetricSpace& s, const std::vector<int>& perm);

// "glue v1" text format: header, lines `g <left-index> <right-index>`, "end".
std::vector<std::pair<int, int>> read_glue(std::istream& in);
std::vector<std::pair<int, int>> read_glue_file(const std::string& path);
void write_glue_file(const std::string& path, const std::vector<std::pair<int, int>>& glue);

} // namespace ums
