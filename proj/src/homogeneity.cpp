#include "ums/homogeneity.hpp"

#include <algorithm>
#include <stdexcept>

namespace ums {

namespace {

void require_points(const FiniteMetricSpace& s, const std::vector<int>& pts, const char* what,
                    bool allow_empty = false) {
    if (pts.empty() && !allow_empty) throw std::invalid_argument(std::string(what) + " is empty");
    std::vector<char> seen(static_cast<size_t>(s.n()), 0);
    for (int p : pts) {
        if (p < 0 || p >= s.n()) throw std::invalid_argument(std::string(what) + " index out of range");
        if (seen[static_cast<size_t>(p)]) throw std::invalid_argument(std::string(what) + " has a repeated index");
        seen[static_cast<size_t>(p)] = 1;
    }
}

} // namespace

std::vector<Rational> distance_trace(const FiniteMetricSpace& s, const std::vector<int>& subset,
                                     int z) {
    require_points(s, subset, "subset");
    if (z < 0 || z >= s.n()) throw std::invalid_argument("point index out of range");
    std::vector<Rational> out;
    out.reserve(subset.size());
    for (int p : subset) out.push_back(s.dist(z, p));
    return out;
}

ExtensionTrace back_and_forth(const FiniteMetricSpace& ambient, const PartialIsometry& p,
                              std::vector<int> targets) {
    validate_partial_isometry(ambient, ambient, p);
    require_points(ambient, targets, "targets", true);
    std::sort(targets.begin(), targets.end());

    ExtensionTrace trace;
    trace.result = p;
    std::vector<char> in_domain(static_cast<size_t>(ambient.n()), 0);
    std::vector<char> in_range(static_cast<size_t>(ambient.n()), 0);
    for (const auto& pr : trace.result.pairs) {
        in_domain[static_cast<size_t>(pr.first)] = 1;
        in_range[static_cast<size_t>(pr.second)] = 1;
    }

    for (int tx : targets) {
        if (in_domain[static_cast<size_t>(tx)]) continue;
        std::vector<Rational> forced;
        forced.reserve(trace.result.pairs.size());
        for (const auto& pr : trace.result.pairs) forced.push_back(ambient.dist(tx, pr.first));

        int image = -1;
        for (int y = 0; y < ambient.n(); ++y) {
            if (in_domain[static_cast<size_t>(y)] || in_range[static_cast<size_t>(y)]) continue;
            bool ok = true;
            for (size_t k = 0; k < trace.result.pairs.size(); ++k) {
                if (!(ambient.dist(y, trace.result.pairs[k].second) == forced[k])) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                image = y;
                break;
            }
        }
        if (image < 0) {
            trace.completed = false;
            trace.stuck_source = tx;
            trace.stuck_forced = std::move(forced);
            return trace;
        }
        trace.result.pairs.push_back({tx, image});
        in_domain[static_cast<size_t>(tx)] = 1;
        in_range[static_cast<size_t>(image)] = 1;
        trace.steps.push_back(BnfStep{tx, image, std::move(forced)});
    }
    trace.completed = true;
    return trace;
}

UniquenessReport is_uniqueness_set(const FiniteMetricSpace& s, const std::vector<int>& A) {
    require_points(s, A, "subset");
    for (int x = 0; x < s.n(); ++x) {
        for (int y = x + 1; y < s.n(); ++y) {
            bool same = true;
            for (int a : A) {
                if (!(s.dist(x, a) == s.dist(y, a))) {
                    same = false;
                    break;
                }
            }
            if (same) return UniquenessReport{false, x, y};
        }
    }
    return UniquenessReport{true, -1, -1};
}

bool is_nice(const FiniteMetricSpace& s, const std::vector<Rational>& values) {
    katetov_check(s, values);
    for (int i = 0; i < s.n(); ++i) {
        for (int j = i + 1; j < s.n(); ++j) {
            Rational d = s.dist(i, j);
            Rational diff = values[static_cast<size_t>(i)] - values[static_cast<size_t>(j)];
            if (diff < Rational(0)) diff = -diff;
            if (!(diff < d)) return false;
            if (!(d < values[static_cast<size_t>(i)] + values[static_cast<size_t>(j)])) return false;
        }
    }
    return true;
}

SeparatingExtension separating_extension(const FiniteMetricSpace& core, const std::vector<int>& xs,
                                         int x, int y, const std::vector<Rational>& f,
                                         std::optional<Rational> alpha) {
    require_points(core, xs, "reference points");
    if (x < 0 || x >= core.n() || y < 0 || y >= core.n())
        throw std::invalid_argument("point index out of range");
    if (x == y) throw std::invalid_argument("the separated points must be distinct");
    {
        std::vector<char> seen(static_cast<size_t>(core.n()), 0);
        for (int p : xs) seen[static_cast<size_t>(p)] = 1;
        if (seen[static_cast<size_t>(x)] || seen[static_cast<size_t>(y)])
            throw std::invalid_argument("separated points listed among the reference points");
        seen[static_cast<size_t>(x)] = 1;
        seen[static_cast<size_t>(y)] = 1;
        for (int i = 0; i < core.n(); ++i)
            if (!seen[static_cast<size_t>(i)])
                throw std::invalid_argument("core contains points outside the construction");
    }
    if (f.size() != xs.size()) throw std::invalid_argument("value count does not match the reference points");
    katetov_check_subset(core, xs, f);

    for (size_t i = 0; i < xs.size(); ++i)
        if (!(core.dist(x, xs[i]) == core.dist(y, xs[i])))
            throw MetricError("TraceMismatch", {x, y, xs[i]},
                              "the two points differ on the reference set");

    // niceness of f over the reference points alone, both inequalities strict
    for (size_t i = 0; i < xs.size(); ++i) {
        for (size_t j = i + 1; j < xs.size(); ++j) {
            Rational d = core.dist(xs[i], xs[j]);
            Rational diff = f[i] - f[j];
            if (diff < Rational(0)) diff = -diff;
            if (!(diff < d) || !(d < f[i] + f[j]))
                throw MetricError("NotNice", {xs[i], xs[j]},
                                  "reference values are not strictly interior");
        }
    }

    Rational gy = f[0] + core.dist(y, xs[0]);
    for (size_t i = 1; i < xs.size(); ++i) gy = rat_min(gy, f[i] + core.dist(y, xs[i]));

    Rational dxy = core.dist(x, y);
    Rational amax = dxy;
    amax = rat_min(amax, Rational(2) * gy - dxy);
    for (size_t i = 0; i < xs.size(); ++i) {
        Rational d = core.dist(x, xs[i]);
        amax = rat_min(amax, f[i] + gy - d);
        amax = rat_min(amax, d - f[i] + gy);
    }

    // alpha = 0 is allowed: it yields the plain greatest extension, which
    // assigns x and y the same value (valid, just not separating).
    Rational a = alpha ? *alpha : amax / Rational(2);
    if (alpha && alpha->is_negative()) throw std::invalid_argument("offset must be nonnegative");
    if (a > amax)
        throw MetricError("AlphaTooLarge", {x, y}, "offset exceeds the admissible maximum");

    std::vector<Rational> vals(static_cast<size_t>(core.n()));
    for (size_t i = 0; i < xs.size(); ++i) vals[static_cast<size_t>(xs[i])] = f[i];
    vals[static_cast<size_t>(y)] = gy;
    vals[static_cast<size_t>(x)] = gy - a;
    KatetovMap out = make_katetov(core, vals);
    return SeparatingExtension{std::move(out), a, amax};
}

AvoidanceExtension avoidance_extension(const FiniteMetricSpace& ambient,
                                       const std::vector<int>& targets,
                                       const std::vector<Rational>& f,
                                       const std::vector<int>& net, const Rational& M,
                                       const Rational& eps) {
    require_points(ambient, targets, "targets");
    require_points(ambient, net, "net");
    {
        std::vector<char> seen(static_cast<size_t>(ambient.n()), 0);
        for (int t : targets) seen[static_cast<size_t>(t)] = 1;
        for (int x : net)
            if (seen[static_cast<size_t>(x)])
                throw std::invalid_argument("net and targets overlap");
    }
    if (f.size() != targets.size()) throw std::invalid_argument("value count does not match the targets");
    if (!(M > Rational(0)) || eps < Rational(0)) throw std::invalid_argument("bad clearance parameters");
    katetov_check_subset(ambient, targets, f);

    AvoidanceExtension out;
    out.domain = targets;
    out.values = f;
    Rational level = M + eps;
    bool first = true;
    for (int xj : net) {
        Rational g;
        bool gset = false;
        for (size_t i = 0; i < targets.size(); ++i) {
            Rational d = ambient.dist(targets[i], xj);
            if (d < M)
                throw MetricError("MarginViolated", {targets[i], xj},
                                  "net point inside the protected radius of a target");
            Rational cand = f[i] + d;
            if (!gset || cand < g) {
                g = cand;
                gset = true;
            }
        }
        if (g < level)
            throw MetricError("MarginViolated", {xj}, "extension value below the protected level");
        out.domain.push_back(xj);
        out.values.push_back(g);
        Rational slack = g - level;
        if (first || slack < out.margin) {
            out.margin = slack;
            first = false;
        }
    }
    return out;
}

} // namespace ums
