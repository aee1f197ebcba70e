#include "ums/katetov.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace ums {

namespace {

void require_subset(const FiniteMetricSpace& s, const std::vector<int>& subset,
                    bool allow_empty = false) {
    if (subset.empty() && !allow_empty)
        throw std::invalid_argument("subset must be nonempty");
    std::vector<char> seen(static_cast<size_t>(s.n()), 0);
    for (int p : subset) {
        if (p < 0 || p >= s.n()) throw std::invalid_argument("subset index out of range");
        if (seen[static_cast<size_t>(p)]) throw std::invalid_argument("subset index repeated");
        seen[static_cast<size_t>(p)] = 1;
    }
}

struct VecHash {
    size_t operator()(const std::vector<Rational>& v) const {
        size_t h = v.size();
        std::hash<Rational> hr;
        for (const auto& r : v) h = h * 1000003ULL + hr(r) + 0x9e3779b97f4a7c15ULL;
        return h;
    }
};

std::vector<Rational> greatest_extension(const FiniteMetricSpace& s,
                                         const std::vector<int>& subset,
                                         const std::vector<Rational>& values) {
    std::vector<Rational> ext(static_cast<size_t>(s.n()));
    for (int x = 0; x < s.n(); ++x) {
        Rational best = values[0] + s.dist(x, subset[0]);
        for (size_t i = 1; i < subset.size(); ++i)
            best = rat_min(best, values[i] + s.dist(x, subset[i]));
        ext[static_cast<size_t>(x)] = best;
    }
    return ext;
}

} // namespace

void katetov_check(const FiniteMetricSpace& s, const std::vector<Rational>& values) {
    if (static_cast<int>(values.size()) != s.n())
        throw std::invalid_argument("value count does not match space size");
    for (int x = 0; x < s.n(); ++x)
        if (values[static_cast<size_t>(x)].is_negative())
            throw MetricError("NegativeValue", {x}, "map value below zero");
    for (int x = 0; x < s.n(); ++x) {
        for (int y = x + 1; y < s.n(); ++y) {
            const Rational& fx = values[static_cast<size_t>(x)];
            const Rational& fy = values[static_cast<size_t>(y)];
            const Rational& d = s.dist(x, y);
            if ((fx - fy).abs() > d)
                throw MetricError("LipschitzViolation", {x, y},
                                  "value gap exceeds point distance");
            if (d > fx + fy)
                throw MetricError("SumViolation", {x, y},
                                  "point distance exceeds value sum");
        }
    }
}

void katetov_check_subset(const FiniteMetricSpace& s, const std::vector<int>& subset,
                          const std::vector<Rational>& values) {
    require_subset(s, subset);
    if (values.size() != subset.size())
        throw std::invalid_argument("value count does not match subset size");
    for (size_t i = 0; i < subset.size(); ++i)
        if (values[i].is_negative())
            throw MetricError("NegativeValue", {subset[i]}, "map value below zero");
    for (size_t i = 0; i < subset.size(); ++i) {
        for (size_t j = i + 1; j < subset.size(); ++j) {
            const Rational& d = s.dist(subset[i], subset[j]);
            if ((values[i] - values[j]).abs() > d)
                throw MetricError("LipschitzViolation", {subset[i], subset[j]},
                                  "value gap exceeds point distance");
            if (d > values[i] + values[j])
                throw MetricError("SumViolation", {subset[i], subset[j]},
                                  "point distance exceeds value sum");
        }
    }
}

KatetovMap make_katetov(const FiniteMetricSpace& s, std::vector<Rational> values,
                        std::optional<std::vector<int>> support) {
    katetov_check(s, values);
    if (support) {
        require_subset(s, *support);
        if (!std::is_sorted(support->begin(), support->end()))
            throw std::invalid_argument("support must be sorted");
        std::vector<Rational> on_support;
        on_support.reserve(support->size());
        for (int p : *support) on_support.push_back(values[static_cast<size_t>(p)]);
        auto ext = greatest_extension(s, *support, on_support);
        for (int x = 0; x < s.n(); ++x)
            if (ext[static_cast<size_t>(x)] != values[static_cast<size_t>(x)])
                throw MetricError("SupportMismatch", {x},
                                  "value not controlled by the declared support");
    }
    return KatetovMap{std::move(values), std::move(support)};
}

KatetovMap katetov_extend(const FiniteMetricSpace& s, const std::vector<int>& subset,
                          const std::vector<Rational>& values) {
    katetov_check_subset(s, subset, values);
    std::vector<size_t> order(subset.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return subset[a] < subset[b]; });
    std::vector<int> sorted_subset;
    std::vector<Rational> sorted_values;
    sorted_subset.reserve(subset.size());
    sorted_values.reserve(subset.size());
    for (size_t i : order) {
        sorted_subset.push_back(subset[i]);
        sorted_values.push_back(values[i]);
    }
    auto ext = greatest_extension(s, sorted_subset, sorted_values);
    return KatetovMap{std::move(ext), std::move(sorted_subset)};
}

KatetovMap kuratowski(const FiniteMetricSpace& s, int x) {
    if (x < 0 || x >= s.n()) throw std::invalid_argument("point index out of range");
    return KatetovMap{s.row(x), std::vector<int>{x}};
}

Rational sup_distance(const FiniteMetricSpace& s, const KatetovMap& f, const KatetovMap& g) {
    if (static_cast<int>(f.values.size()) != s.n() ||
        static_cast<int>(g.values.size()) != s.n())
        throw MetricError("BaseMismatch",
                          {static_cast<long long>(f.values.size()),
                           static_cast<long long>(g.values.size())},
                          "maps live over different base sizes");
    Rational best;
    for (int x = 0; x < s.n(); ++x)
        best = rat_max(best, (f.values[static_cast<size_t>(x)] -
                              g.values[static_cast<size_t>(x)]).abs());
    return best;
}

FeasibleInterval feasible_interval(const FiniteMetricSpace& s, const std::vector<int>& subset,
                                   const std::vector<Rational>& values, int point) {
    require_subset(s, subset, true);
    if (values.size() != subset.size())
        throw std::invalid_argument("value count does not match subset size");
    if (point < 0 || point >= s.n()) throw std::invalid_argument("point index out of range");
    for (int p : subset)
        if (p == point) throw std::invalid_argument("point already carries a value");
    try {
        if (!subset.empty()) katetov_check_subset(s, subset, values);
    } catch (const MetricError& e) {
        throw MetricError("InfeasiblePartial", e.args(),
                          std::string("partial map invalid: ") + e.detail());
    }
    FeasibleInterval out;
    out.point = point;
    out.lower = Rational(0);
    out.upper = std::nullopt;
    for (size_t i = 0; i < subset.size(); ++i) {
        const Rational& d = s.dist(point, subset[i]);
        out.lower = rat_max(out.lower, (values[i] - d).abs());
        Rational hi = values[i] + d;
        if (!out.upper || hi < *out.upper) out.upper = hi;
    }
    if (out.upper && *out.upper < out.lower)
        throw MetricError("InfeasiblePartial", {point}, "empty feasible interval");
    return out;
}

void enumerate_katetov_stream(
    const FiniteMetricSpace& s, std::vector<Rational> grid, int max_support,
    const std::function<bool(const std::vector<int>&, const std::vector<Rational>&,
                             const std::vector<Rational>&)>& fn) {
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    for (const auto& g : grid)
        if (g.is_negative()) throw std::invalid_argument("grid values must be nonnegative");
    if (max_support < 0) throw std::invalid_argument("max_support must be nonnegative");
    const int n = s.n();
    const int g = static_cast<int>(grid.size());
    if (n == 0 || g == 0 || max_support == 0) return;
    const int kmax = std::min(max_support, n);

    std::unordered_set<std::vector<Rational>, VecHash> seen;
    std::vector<int> support;
    std::vector<Rational> vals;

    for (int k = 1; k <= kmax; ++k) {
        support.resize(static_cast<size_t>(k));
        vals.assign(static_cast<size_t>(k), grid[0]);
        for (int i = 0; i < k; ++i) support[static_cast<size_t>(i)] = i;
        for (;;) {
            // value odometer over the current support combination
            std::vector<int> idx(static_cast<size_t>(k), 0);
            for (;;) {
                for (int i = 0; i < k; ++i)
                    vals[static_cast<size_t>(i)] = grid[static_cast<size_t>(idx[static_cast<size_t>(i)])];
                bool ok = true;
                for (int i = 0; i < k && ok; ++i) {
                    for (int j = i + 1; j < k && ok; ++j) {
                        const Rational& d = s.dist(support[static_cast<size_t>(i)],
                                                   support[static_cast<size_t>(j)]);
                        const Rational& a = vals[static_cast<size_t>(i)];
                        const Rational& b = vals[static_cast<size_t>(j)];
                        if ((a - b).abs() > d || d > a + b) ok = false;
                    }
                }
                if (ok) {
                    auto ext = greatest_extension(s, support, vals);
                    if (seen.insert(ext).second) {
                        if (!fn(support, vals, ext)) return;
                    }
                }
                int pos = k - 1;
                while (pos >= 0 && idx[static_cast<size_t>(pos)] == g - 1) {
                    idx[static_cast<size_t>(pos)] = 0;
                    --pos;
                }
                if (pos < 0) break;
                ++idx[static_cast<size_t>(pos)];
            }
            // next combination in lexicographic order
            int pos = k - 1;
            while (pos >= 0 && support[static_cast<size_t>(pos)] == n - k + pos) --pos;
            if (pos < 0) break;
            ++support[static_cast<size_t>(pos)];
            for (int i = pos + 1; i < k; ++i)
                support[static_cast<size_t>(i)] = support[static_cast<size_t>(i - 1)] + 1;
        }
    }
}

std::vector<KatetovMap> enumerate_katetov(const FiniteMetricSpace& s,
                                          std::vector<Rational> grid, int max_support) {
    std::vector<KatetovMap> out;
    enumerate_katetov_stream(
        s, std::move(grid), max_support,
        [&](const std::vector<int>& support, const std::vector<Rational>&,
            const std::vector<Rational>& ext) {
            out.push_back(KatetovMap{ext, support});
            return true;
        });
    return out;
}

namespace {

// deviation reachable at the single point x among maps agreeing with f on K
Rational point_slack(const FiniteMetricSpace& s, const std::vector<Rational>& f,
                     const std::vector<int>& K, int x) {
    Rational up = f[static_cast<size_t>(K[0])] + s.dist(x, K[0]);
    Rational low = (f[static_cast<size_t>(K[0])] - s.dist(x, K[0])).abs();
    for (size_t i = 1; i < K.size(); ++i) {
        const Rational& d = s.dist(x, K[i]);
        up = rat_min(up, f[static_cast<size_t>(K[i])] + d);
        low = rat_max(low, (f[static_cast<size_t>(K[i])] - d).abs());
    }
    return rat_max(up - f[static_cast<size_t>(x)], f[static_cast<size_t>(x)] - low);
}

Rational radius_of(const FiniteMetricSpace& s, const std::vector<Rational>& f,
                   const std::vector<int>& K) {
    std::vector<char> in(static_cast<size_t>(s.n()), 0);
    for (int p : K) in[static_cast<size_t>(p)] = 1;
    Rational r;
    for (int x = 0; x < s.n(); ++x)
        if (!in[static_cast<size_t>(x)]) r = rat_max(r, point_slack(s, f, K, x));
    return r;
}

} // namespace

Rational saturation_radius(const FiniteMetricSpace& s, const std::vector<Rational>& f_values,
                           const std::vector<int>& K) {
    katetov_check(s, f_values);
    if (K.empty()) throw MetricError("EmptySubset", {}, "saturation needs a nonempty subset");
    require_subset(s, K);
    return radius_of(s, f_values, K);
}

SaturationWitness min_saturation_witness(const FiniteMetricSpace& s,
                                         const std::vector<Rational>& f_values,
                                         const Rational& eps, int exhaustive_limit) {
    katetov_check(s, f_values);
    if (eps.is_negative()) throw std::invalid_argument("tolerance must be nonnegative");
    if (s.n() == 0) throw std::invalid_argument("space must be nonempty");
    const int n = s.n();

    if (n <= exhaustive_limit) {
        for (int k = 1; k <= n; ++k) {
            std::vector<int> K(static_cast<size_t>(k));
            for (int i = 0; i < k; ++i) K[static_cast<size_t>(i)] = i;
            for (;;) {
                Rational r = radius_of(s, f_values, K);
                if (!(eps < r)) return SaturationWitness{K, r, true};
                int pos = k - 1;
                while (pos >= 0 && K[static_cast<size_t>(pos)] == n - k + pos) --pos;
                if (pos < 0) break;
                ++K[static_cast<size_t>(pos)];
                for (int i = pos + 1; i < k; ++i)
                    K[static_cast<size_t>(i)] = K[static_cast<size_t>(i - 1)] + 1;
            }
        }
        // unreachable: the full set always has radius zero
        throw std::logic_error("exhaustive witness search fell through");
    }

    std::vector<int> K;
    Rational best_r;
    int best_p = 0;
    for (int p = 0; p < n; ++p) {
        Rational r = radius_of(s, f_values, {p});
        if (p == 0 || r < best_r) {
            best_r = r;
            best_p = p;
        }
    }
    K.push_back(best_p);
    while (eps < best_r) {
        std::vector<char> in(static_cast<size_t>(n), 0);
        for (int p : K) in[static_cast<size_t>(p)] = 1;
        int pick = -1;
        Rational pick_r;
        for (int p = 0; p < n; ++p) {
            if (in[static_cast<size_t>(p)]) continue;
            auto trial = K;
            trial.insert(std::lower_bound(trial.begin(), trial.end(), p), p);
            Rational r = radius_of(s, f_values, trial);
            if (pick < 0 || r < pick_r) {
                pick = p;
                pick_r = r;
            }
        }
        K.insert(std::lower_bound(K.begin(), K.end(), pick), pick);
        best_r = pick_r;
    }
    return SaturationWitness{K, best_r, false};
}

} // namespace ums
