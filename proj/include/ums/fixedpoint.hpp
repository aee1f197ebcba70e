#pragma once

/*
 * Self-isometries with a distinguished fixed base, and the constructions
 * that keep that base equal to the fixed set one approximation level up.
 *
 * property_star_check is the finite surrogate of an asymptotic lower
 * bound: for every ordered pair and every power of phi outside a small
 * symmetric window, the distance from one point to the shifted other
 * must be at least the sum of their distances to the base. Powers that
 * map the second point exactly onto the first are skipped; in the finite
 * cyclic group they recur on every lap and stand in for the finitely
 * many exceptional exponents the asymptotic statement ignores.
 *
 * fixed_set_level glues one shifted orbit per admissible grid map onto
 * the space and closes each orbit cyclically. The closure may distort a
 * few distances; the worst distortion is measured and reported, never
 * hidden. Maps with a zero value would collapse their orbit onto the
 * space and are skipped (counted).
 */

#include "ums/amalgam.hpp"
#include "ums/katetov.hpp"

#include <vector>

namespace ums {

struct IsometrySystem {
    FiniteMetricSpace space;
    std::vector<int> phi;
    std::vector<int> base; // fixed points singled out as the reference set
};

// Errors: NotPermutation, PhiNotIsometry, BaseNotFixed(i).
void validate_system(const IsometrySystem& sys);

IsometrySystem make_system(FiniteMetricSpace space, std::vector<int> phi, std::vector<int> base);

// Cycle of x under phi, starting at x.
std::vector<int> orbit_of(const IsometrySystem& sys, int x);
Rational orbit_diameter(const IsometrySystem& sys, int x);
std::vector<int> fixed_set(const IsometrySystem& sys);

struct MigrationMap {
    std::vector<int> domain; // orbit of z, then the reference points
    std::vector<Rational> values;
    Rational rho;           // orbit diameter of z
    std::vector<int> cases; // per reference point: 0 shrink, 1 stretch, 2 keep
};

// Constant rho/2 on the orbit; each reference value migrates toward the
// actual distance when it is off by more than rho/2 and is kept otherwise.
// Requires a nontrivial orbit, phi-fixed reference points, and reference
// values at least 2*rho (HypothesisViolated).
MigrationMap migration_map(const IsometrySystem& sys, int z, const std::vector<int>& points,
                           const std::vector<Rational>& f);

struct StarReport {
    bool pass = false;
    long long checked = 0;
    Rational worst;         // largest shortfall found, 0 when none
    int worst_x1 = -1;
    int worst_x2 = -1;
    long long worst_power = -1;
};

// Shortfall of a triple (x1, x2, p) is d(x1,base)+d(x2,base)-d(x1,phi^p(x2)).
// Powers with min(p, ord-p) <= window are excluded, as are exact hits
// phi^p(x2) == x1. Passes when every shortfall is at most eps.
StarReport property_star_check(const IsometrySystem& sys, const Rational& eps, int window = 1);

struct FixedSetLevel {
    IsometrySystem system;
    Rational wrap_slack; // worst distance distortion of the cyclic closure
    StarReport star;     // separation check on the result, at tolerance 0
    int maps_used = 0;
    int maps_skipped = 0; // zero-valued maps, orbit would collapse
    bool budget_exceeded = false;
    std::vector<std::vector<int>> blocks; // result indices per used map, offsets -h..h
};

// Requires the input to pass property_star_check at tolerance 0
// (StarViolated otherwise) and horizon >= 1.
FixedSetLevel fixed_set_level(const IsometrySystem& sys, const std::vector<Rational>& grid,
                              int max_support, int horizon, long long max_points = 100000);

// "perm v1" text format: "m <i> <j>" per mapped point, optional
// "base <i> ...", "end". The paired space travels in its own file.
struct PermFile {
    std::vector<std::pair<int, int>> mapping;
    std::vector<int> base;
};

PermFile read_perm(std::istream& in);
PermFile read_perm_file(const std::string& path);
void write_perm(std::ostream& out, const std::vector<int>& phi, const std::vector<int>& base);
void write_perm_file(const std::string& path, const std::vector<int>& phi,
                     const std::vector<int>& base);

// Turns the sparse mapping into a total permutation on n points.
std::vector<int> to_permutation(const PermFile& pf, int n);

} // namespace ums
