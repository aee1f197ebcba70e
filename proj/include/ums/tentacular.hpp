#pragma once

/*
 * Inline sequences and their repair.
 *
 * A sequence is eps-good-inline when walking it in order telescopes: every
 * prefix of consecutive hops overshoots the direct distance from the start
 * by at most eps. extract_inline_subsequence greedily thins an arbitrary
 * sequence until each scheduled tolerance holds, keeping the basepoint and
 * dropping any point whose detour would exceed the stage tolerance.
 *
 * euclid_spread builds the standard counterexample family: radii grow by
 * one while every pair stays one unit longer than the radius gap, so no
 * reordering is inline. fa_family turns subsets of the spread into
 * uniformly separated one-Lipschitz maps.
 */

#include "ums/katetov.hpp"
#include "ums/metric_space.hpp"

#include <optional>
#include <vector>

namespace ums {

struct InlineReport {
    bool good = false;
    int worst_r = -1;    // prefix length with the largest overshoot
    Rational worst_excess; // path length minus direct distance there
};

InlineReport eps_good_inline(const FiniteMetricSpace& s, const std::vector<int>& order,
                             const Rational& eps);

struct TailLawReport {
    bool holds = false;
    std::optional<int> pivot_bound; // least N working for the whole tail
};

// order[0] is the basepoint, order[1..] the sequence proper. Looks for the
// least N such that every later sequence member is within delta of lying
// behind one of the first N+1 members as seen from the basepoint.
TailLawReport condition_c_check(const FiniteMetricSpace& s, const std::vector<int>& order,
                                const Rational& delta);

// One greedy pass per schedule entry; each pass keeps a point only when
// the accumulated path to it stays within the stage tolerance of the
// direct distance. Input shorter than 2 points: TooShort.
std::vector<int> extract_inline_subsequence(const FiniteMetricSpace& s,
                                            const std::vector<int>& order,
                                            const std::vector<Rational>& schedule);

// Points 0..n-1 on a line at unit spacing.
FiniteMetricSpace nat_line(int n);

// Base point plus n-1 points with radii 1..n-1 and pair distances found by
// the smallest half-integer search satisfying d(x_i, x_j) >= r_i - r_j + 1.
// Errors: SearchFailed(i) when no admissible value exists.
FiniteMetricSpace euclid_spread(int n);

// One map per subset A: the tight extension of the radii restricted to A.
// Distinct subsets give maps at supremum distance at least 1.
std::vector<KatetovMap> fa_family(const FiniteMetricSpace& spread,
                                  const std::vector<std::vector<int>>& subsets);

// Supremum gap between f and its tight extension from the first i+1 points
// of the unit line, for i = 0..n-1. Nonincreasing, ending at zero.
std::vector<Rational> example1_convergence(int n, const std::vector<Rational>& f);

// "seq v1" text format: "space <file>", "order <i> ...", "end".
struct SeqFile {
    std::string space_path;
    FiniteMetricSpace space;
    std::vector<int> order;
};

SeqFile read_seq_file(const std::string& path);
void write_seq_file(const std::string& path, const std::string& space_ref,
                    const std::vector<int>& order);

} // namespace ums
