#include "ums/tower.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace ums {

namespace {

struct RatVecHash {
    size_t operator()(const std::vector<Rational>& v) const {
        size_t h = v.size();
        std::hash<Rational> hr;
        for (const auto& r : v) h = h * 1000003ULL + hr(r) + 0x9e3779b97f4a7c15ULL;
        return h;
    }
};

struct IntVecHash {
    size_t operator()(const std::vector<long long>& v) const {
        size_t h = v.size();
        for (long long x : v)
            h = h * 1000003ULL + static_cast<size_t>(x) + 0x9e3779b97f4a7c15ULL;
        return h;
    }
};

// Common denominator small enough for exact int64 work over a whole level;
// 0 disables the fast path.
long long common_denominator(const FiniteMetricSpace& s, const std::vector<Rational>& grid) {
    constexpr long long cap = 1LL << 24;
    long long l = 1;
    auto fold = [&](const Rational& r) {
        if (l == 0) return;
        long long d = r.den();
        l = l / std::gcd(l, d) * d;
        if (l > cap) l = 0;
    };
    for (int i = 0; i < s.n() && l; ++i)
        for (int j = i + 1; j < s.n() && l; ++j) fold(s.dist(i, j));
    for (const auto& g : grid) {
        if (!l) break;
        fold(g);
    }
    return l;
}

std::vector<long long> scale_vec(const std::vector<Rational>& v, long long l) {
    std::vector<long long> out(v.size());
    for (size_t i = 0; i < v.size(); ++i)
        out[i] = v[i].num() * (l / v[i].den());
    return out;
}

} // namespace

FiniteMetricSpace TowerApprox::level(int i) const {
    if (i < 0 || i >= static_cast<int>(level_sizes.size()))
        throw std::invalid_argument("level index out of range");
    if (level_sizes[static_cast<size_t>(i)] == space.n()) return space;
    std::vector<int> pts(static_cast<size_t>(level_sizes[static_cast<size_t>(i)]));
    std::iota(pts.begin(), pts.end(), 0);
    return space.induced(pts);
}

FiniteMetricSpace realize(const FiniteMetricSpace& s, const KatetovMap& f, std::string label) {
    katetov_check(s, f.values);
    for (int x = 0; x < s.n(); ++x)
        if (f.values[static_cast<size_t>(x)].is_zero())
            throw MetricError("DuplicatePoint", {x}, "map is the distance trace of this point");
    return s.with_point(f.values, std::move(label));
}

TowerApprox build_tower(const FiniteMetricSpace& seed, const TowerConfig& cfg) {
    if (seed.n() < 1) throw std::invalid_argument("seed must be nonempty");
    if (cfg.depth < 0) throw std::invalid_argument("depth must be nonnegative");
    if (cfg.max_support < 1) throw std::invalid_argument("max_support must be positive");
    if (cfg.grid.empty()) throw std::invalid_argument("grid must be nonempty");
    for (const auto& g : cfg.grid)
        if (g.is_negative() || g.is_zero())
            throw std::invalid_argument("grid values must be positive");
    if (cfg.max_points < seed.n())
        throw std::invalid_argument("budget below the seed size");

    TowerApprox out;
    out.level_sizes.push_back(seed.n());
    FiniteMetricSpace gen = seed;
    MetricSpaceBuilder builder(seed);

    for (int lvl = 0; lvl < cfg.depth && !out.budget_exceeded; ++lvl) {
        if (lvl > 0) gen = std::move(builder).freeze();
        builder = MetricSpaceBuilder(gen);
        const int gn = gen.n();

        const long long L = common_denominator(gen, cfg.grid);
        const bool fast = L > 0;

        std::unordered_set<std::vector<long long>, IntVecHash> seen_s;
        std::unordered_set<std::vector<Rational>, RatVecHash> seen_r;
        std::vector<std::vector<long long>> added_s;
        std::vector<std::vector<Rational>> added_r;
        for (int x = 0; x < gn; ++x) {
            auto row = gen.row(x);
            if (fast)
                seen_s.insert(scale_vec(row, L));
            else
                seen_r.insert(std::move(row));
        }

        enumerate_katetov_stream(
            gen, cfg.grid, cfg.max_support,
            [&](const std::vector<int>& support, const std::vector<Rational>& vals,
                const std::vector<Rational>& ext) {
                std::vector<long long> ext_s;
                if (fast) {
                    ext_s = scale_vec(ext, L);
                    if (seen_s.count(ext_s)) return true;
                } else if (seen_r.count(ext)) {
                    return true;
                }
                if (builder.n() >= cfg.max_points) {
                    out.budget_exceeded = true;
                    return false;
                }
                std::vector<Rational> dists(ext.begin(), ext.end());
                dists.reserve(static_cast<size_t>(builder.n()));
                if (fast) {
                    for (const auto& other : added_s) {
                        long long best = 0;
                        for (size_t x = 0; x < other.size(); ++x) {
                            long long d = ext_s[x] - other[x];
                            if (d < 0) d = -d;
                            if (d > best) best = d;
                        }
                        dists.push_back(Rational(best, L));
                    }
                } else {
                    for (const auto& other : added_r) {
                        Rational best;
                        for (size_t x = 0; x < other.size(); ++x)
                            best = rat_max(best, (ext[x] - other[x]).abs());
                        dists.push_back(best);
                    }
                }
                int idx = builder.add_point(std::move(dists));
                out.origins.push_back(PointOrigin{idx, lvl, support, vals});
                if (fast) {
                    seen_s.insert(ext_s);
                    added_s.push_back(std::move(ext_s));
                } else {
                    seen_r.insert(ext);
                    added_r.push_back(ext);
                }
                return true;
            });
        out.level_sizes.push_back(builder.n());
    }
    out.space = std::move(builder).freeze();
    return out;
}

AuditReport injectivity_audit(const FiniteMetricSpace& space, std::vector<Rational> grid,
                              int k, const Rational& eps, int universe) {
    if (eps.is_negative()) throw std::invalid_argument("tolerance must be nonnegative");
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    for (const auto& g : grid)
        if (g.is_negative()) throw std::invalid_argument("grid values must be nonnegative");
    if (universe < 0) universe = space.n();
    if (universe > space.n()) throw std::invalid_argument("universe exceeds the space");

    AuditReport report;
    const int g = static_cast<int>(grid.size());
    if (g == 0 || universe == 0 || k < 1) return report;
    const int kmax = std::min(k, universe);

    std::vector<int> S;
    std::vector<Rational> vals;
    for (int t = 1; t <= kmax; ++t) {
        S.resize(static_cast<size_t>(t));
        vals.resize(static_cast<size_t>(t));
        for (int i = 0; i < t; ++i) S[static_cast<size_t>(i)] = i;
        for (;;) {
            std::vector<int> idx(static_cast<size_t>(t), 0);
            for (;;) {
                for (int i = 0; i < t; ++i)
                    vals[static_cast<size_t>(i)] = grid[static_cast<size_t>(idx[static_cast<size_t>(i)])];
                bool katetov = true;
                for (int i = 0; i < t && katetov; ++i)
                    for (int j = i + 1; j < t && katetov; ++j) {
                        const Rational& d = space.dist(S[static_cast<size_t>(i)], S[static_cast<size_t>(j)]);
                        const Rational& a = vals[static_cast<size_t>(i)];
                        const Rational& b = vals[static_cast<size_t>(j)];
                        if ((a - b).abs() > d || d > a + b) katetov = false;
                    }
                if (katetov) {
                    ++report.checked;
                    bool found = false;
                    for (int z = 0; z < space.n() && !found; ++z) {
                        bool ok = true;
                        for (int i = 0; i < t && ok; ++i)
                            if ((space.dist(z, S[static_cast<size_t>(i)]) -
                                 vals[static_cast<size_t>(i)]).abs() > eps)
                                ok = false;
                        found = ok;
                    }
                    if (found)
                        ++report.realized;
                    else
                        report.failures.push_back(AuditFailure{S, vals});
                }
                int pos = t - 1;
                while (pos >= 0 && idx[static_cast<size_t>(pos)] == g - 1) {
                    idx[static_cast<size_t>(pos)] = 0;
                    --pos;
                }
                if (pos < 0) break;
                ++idx[static_cast<size_t>(pos)];
            }
            int pos = t - 1;
            while (pos >= 0 && S[static_cast<size_t>(pos)] == universe - t + pos) --pos;
            if (pos < 0) break;
            ++S[static_cast<size_t>(pos)];
            for (int i = pos + 1; i < t; ++i)
                S[static_cast<size_t>(i)] = S[static_cast<size_t>(i - 1)] + 1;
        }
    }
    return report;
}

TowerApprox extend_on_demand(const TowerApprox& approx, int level,
                             const std::vector<int>& subset,
                             const std::vector<Rational>& values) {
    if (level < 0 || level >= static_cast<int>(approx.level_sizes.size()))
        throw std::invalid_argument("level index out of range");
    const int ln = approx.level_sizes[static_cast<size_t>(level)];
    FiniteMetricSpace lvl = approx.level(level);
    KatetovMap full = katetov_extend(lvl, subset, values);

    const FiniteMetricSpace& top = approx.space;
    for (int z = 0; z < top.n(); ++z) {
        bool same = true;
        for (int y = 0; y < ln && same; ++y)
            if (top.dist(z, y) != full.values[static_cast<size_t>(y)]) same = false;
        if (same)
            throw MetricError("DuplicatePoint", {z}, "map already realized at this point");
    }

    std::vector<Rational> lifted(static_cast<size_t>(top.n()));
    for (int x = 0; x < top.n(); ++x) {
        Rational best = full.values[0] + top.dist(x, 0);
        for (int y = 1; y < ln; ++y)
            best = rat_min(best, full.values[static_cast<size_t>(y)] + top.dist(x, y));
        lifted[static_cast<size_t>(x)] = best;
    }

    TowerApprox out = approx;
    out.space = realize(top, KatetovMap{std::move(lifted), std::nullopt});
    out.level_sizes.back() += 1;
    PointOrigin origin;
    origin.point = top.n();
    origin.level = level;
    origin.support = *full.support;
    origin.values.reserve(origin.support.size());
    for (int sdx : origin.support)
        origin.values.push_back(full.values[static_cast<size_t>(sdx)]);
    out.origins.push_back(std::move(origin));
    return out;
}

} // namespace ums
