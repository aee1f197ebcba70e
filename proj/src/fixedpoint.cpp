#include "ums/fixedpoint.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace ums {

namespace {

constexpr long long kMaxOrder = 1 << 20;

std::vector<char> point_flags(const FiniteMetricSpace& s, const std::vector<int>& pts,
                              const char* what, bool allow_empty) {
    if (pts.empty() && !allow_empty) throw std::invalid_argument(std::string(what) + " is empty");
    std::vector<char> seen(static_cast<size_t>(s.n()), 0);
    for (int p : pts) {
        if (p < 0 || p >= s.n()) throw std::invalid_argument(std::string(what) + " index out of range");
        if (seen[static_cast<size_t>(p)]) throw std::invalid_argument(std::string(what) + " has a repeated index");
        seen[static_cast<size_t>(p)] = 1;
    }
    return seen;
}

long long permutation_order(const std::vector<int>& phi) {
    int n = static_cast<int>(phi.size());
    std::vector<int> pw(phi.begin(), phi.end());
    long long ord = 1;
    auto is_id = [&] {
        for (int x = 0; x < n; ++x)
            if (pw[static_cast<size_t>(x)] != x) return false;
        return true;
    };
    while (!is_id()) {
        for (int x = 0; x < n; ++x) pw[static_cast<size_t>(x)] = phi[static_cast<size_t>(pw[static_cast<size_t>(x)])];
        if (++ord > kMaxOrder) throw std::invalid_argument("permutation order too large");
    }
    return ord;
}

// Core of property_star_check without revalidating; fixed_set_level uses it
// on results whose closure may distort a few distances.
StarReport star_scan(const FiniteMetricSpace& s, const std::vector<int>& phi,
                     const std::vector<int>& base, const Rational& eps, int window) {
    if (window < 0) throw std::invalid_argument("window must be nonnegative");
    if (eps < Rational(0)) throw std::invalid_argument("tolerance must be nonnegative");
    int n = s.n();
    std::vector<Rational> dbase(static_cast<size_t>(n));
    for (int x = 0; x < n; ++x) {
        Rational best = s.dist(x, base[0]);
        for (size_t b = 1; b < base.size(); ++b) best = rat_min(best, s.dist(x, base[b]));
        dbase[static_cast<size_t>(x)] = best;
    }

    long long ord = permutation_order(phi);
    StarReport rep;
    rep.worst = Rational(0);

    std::vector<int> pw(static_cast<size_t>(n));
    for (int x = 0; x < n; ++x) pw[static_cast<size_t>(x)] = x;
    for (long long p = 0; p < ord; ++p) {
        long long sym = std::min(p, ord - p);
        if (sym > window) {
            for (int x1 = 0; x1 < n; ++x1) {
                for (int x2 = 0; x2 < n; ++x2) {
                    int img = pw[static_cast<size_t>(x2)];
                    if (img == x1) continue; // exact departure, outside the asymptotic bound
                    Rational shortfall =
                        dbase[static_cast<size_t>(x1)] + dbase[static_cast<size_t>(x2)] - s.dist(x1, img);
                    ++rep.checked;
                    if (shortfall > rep.worst) {
                        rep.worst = shortfall;
                        rep.worst_x1 = x1;
                        rep.worst_x2 = x2;
                        rep.worst_power = p;
                    }
                }
            }
        }
        for (int x = 0; x < n; ++x) pw[static_cast<size_t>(x)] = phi[static_cast<size_t>(pw[static_cast<size_t>(x)])];
    }
    rep.pass = !(rep.worst > eps);
    return rep;
}

} // namespace

void validate_system(const IsometrySystem& sys) {
    check_self_isometry(sys.space, sys.phi);
    point_flags(sys.space, sys.base, "base", true);
    for (int b : sys.base)
        if (sys.phi[static_cast<size_t>(b)] != b)
            throw MetricError("BaseNotFixed", {b}, "reference point moves under the map");
}

IsometrySystem make_system(FiniteMetricSpace space, std::vector<int> phi, std::vector<int> base) {
    std::sort(base.begin(), base.end());
    IsometrySystem sys{std::move(space), std::move(phi), std::move(base)};
    validate_system(sys);
    return sys;
}

std::vector<int> orbit_of(const IsometrySystem& sys, int x) {
    if (x < 0 || x >= sys.space.n()) throw std::invalid_argument("point index out of range");
    std::vector<int> orbit{x};
    int cur = sys.phi[static_cast<size_t>(x)];
    while (cur != x) {
        orbit.push_back(cur);
        cur = sys.phi[static_cast<size_t>(cur)];
    }
    return orbit;
}

Rational orbit_diameter(const IsometrySystem& sys, int x) {
    std::vector<int> orbit = orbit_of(sys, x);
    Rational out(0);
    for (size_t i = 0; i < orbit.size(); ++i)
        for (size_t j = i + 1; j < orbit.size(); ++j)
            out = rat_max(out, sys.space.dist(orbit[i], orbit[j]));
    return out;
}

std::vector<int> fixed_set(const IsometrySystem& sys) {
    std::vector<int> out;
    for (int x = 0; x < sys.space.n(); ++x)
        if (sys.phi[static_cast<size_t>(x)] == x) out.push_back(x);
    return out;
}

MigrationMap migration_map(const IsometrySystem& sys, int z, const std::vector<int>& points,
                           const std::vector<Rational>& f) {
    validate_system(sys);
    point_flags(sys.space, points, "reference points", false);
    if (f.size() != points.size())
        throw std::invalid_argument("value count does not match the reference points");
    for (int p : points)
        if (sys.phi[static_cast<size_t>(p)] != p)
            throw MetricError("HypothesisViolated", {p}, "reference point is not fixed");
    katetov_check_subset(sys.space, points, f);

    std::vector<int> orbit = orbit_of(sys, z);
    Rational rho = orbit_diameter(sys, z);
    if (!(rho > Rational(0)))
        throw MetricError("HypothesisViolated", {z}, "the moving point is already fixed");
    for (size_t i = 0; i < points.size(); ++i)
        if (f[i] < Rational(2) * rho)
            throw MetricError("HypothesisViolated", {points[i]},
                              "reference value below twice the orbit diameter");

    Rational half = rho / Rational(2);
    MigrationMap out;
    out.rho = rho;
    out.domain = orbit;
    out.values.assign(orbit.size(), half);
    for (size_t i = 0; i < points.size(); ++i) {
        Rational d = sys.space.dist(z, points[i]);
        out.domain.push_back(points[i]);
        if (d < f[i] - half) {
            out.values.push_back(d + half);
            out.cases.push_back(0);
        } else if (d > f[i] + half) {
            out.values.push_back(d - half);
            out.cases.push_back(1);
        } else {
            out.values.push_back(f[i]);
            out.cases.push_back(2);
        }
    }
    return out;
}

StarReport property_star_check(const IsometrySystem& sys, const Rational& eps, int window) {
    validate_system(sys);
    if (sys.base.empty()) throw std::invalid_argument("reference set is empty");
    return star_scan(sys.space, sys.phi, sys.base, eps, window);
}

FixedSetLevel fixed_set_level(const IsometrySystem& sys, const std::vector<Rational>& grid,
                              int max_support, int horizon, long long max_points) {
    validate_system(sys);
    if (sys.base.empty()) throw std::invalid_argument("reference set is empty");
    if (horizon < 1) throw std::invalid_argument("horizon must be at least 1");
    if (max_points < sys.space.n()) throw std::invalid_argument("budget below the starting size");

    StarReport gate = star_scan(sys.space, sys.phi, sys.base, Rational(0), 1);
    if (!gate.pass)
        throw MetricError("StarViolated", {gate.worst_x1, gate.worst_x2, gate.worst_power},
                          "input fails the separation bound");

    FixedSetLevel out;
    int width = 2 * horizon + 1;
    std::vector<FiniteMetricSpace> exts;
    std::vector<KatetovMap> used;

    enumerate_katetov_stream(sys.space, grid, max_support,
                             [&](const std::vector<int>&, const std::vector<Rational>&,
                                 const std::vector<Rational>& ext) {
                                 bool zero = false;
                                 for (const Rational& v : ext)
                                     if (!(v > Rational(0))) zero = true;
                                 if (zero) {
                                     ++out.maps_skipped;
                                     return true;
                                 }
                                 long long next = sys.space.n() +
                                                  static_cast<long long>(exts.size() + 1) * width;
                                 if (next > max_points) {
                                     out.budget_exceeded = true;
                                     return false;
                                 }
                                 KatetovMap f;
                                 f.values = ext;
                                 OrbitAmalgam oa = orbit_amalgam(sys.space, sys.phi, f, horizon);
                                 exts.push_back(oa.space);
                                 used.push_back(std::move(f));
                                 return true;
                             });
    out.maps_used = static_cast<int>(exts.size());

    MultiAmalgam glued = multi_amalgamate(sys.space, exts);
    if (!glued.merges.empty())
        throw MetricError("ZeroDistanceCollision",
                          {glued.merges[0].ext_a, glued.merges[0].point_a, glued.merges[0].ext_b,
                           glued.merges[0].point_b},
                          "positive maps should not collide");

    int n = sys.space.n();
    int m = glued.space.n();
    std::vector<int> phi2(static_cast<size_t>(m), -1);
    for (int x = 0; x < n; ++x) phi2[static_cast<size_t>(x)] = sys.phi[static_cast<size_t>(x)];
    for (size_t b = 0; b < exts.size(); ++b) {
        std::vector<int> block(static_cast<size_t>(width));
        for (int o = 0; o < width; ++o) block[static_cast<size_t>(o)] = glued.point_map[b][static_cast<size_t>(n + o)];
        for (int o = 0; o < width; ++o)
            phi2[static_cast<size_t>(block[static_cast<size_t>(o)])] =
                block[static_cast<size_t>((o + 1) % width)];
        out.blocks.push_back(std::move(block));
    }

    Rational slack(0);
    for (int u = 0; u < m; ++u) {
        for (int v = u + 1; v < m; ++v) {
            Rational before = glued.space.dist(u, v);
            Rational after = glued.space.dist(phi2[static_cast<size_t>(u)], phi2[static_cast<size_t>(v)]);
            Rational diff = after - before;
            if (diff < Rational(0)) diff = -diff;
            slack = rat_max(slack, diff);
        }
    }
    out.wrap_slack = slack;
    out.star = star_scan(glued.space, phi2, sys.base, Rational(0), 1);
    out.system = IsometrySystem{std::move(glued.space), std::move(phi2), sys.base};
    if (!(slack > Rational(0))) validate_system(out.system);
    return out;
}

} // namespace ums
