#include "ums/amalgam.hpp"

#include <algorithm>
#include <stdexcept>

namespace ums {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<size_t>(n)) {
        for (int i = 0; i < n; ++i) parent[static_cast<size_t>(i)] = i;
    }
    int find(int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (b < a) std::swap(a, b); // keep the smaller index as representative
        parent[static_cast<size_t>(b)] = a;
    }
};

// Collapses zero-distance classes of a pseudo-metric matrix. Returns the
// old-index -> new-index map; rows/labels are rewritten in place.
std::vector<int> collapse_zeros(std::vector<std::vector<Rational>>& rows,
                                std::vector<std::string>& labels) {
    const int m = static_cast<int>(rows.size());
    UnionFind uf(m);
    bool any = false;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (rows[static_cast<size_t>(i)][static_cast<size_t>(j)].is_zero()) {
                uf.unite(i, j);
                any = true;
            }
    std::vector<int> remap(static_cast<size_t>(m));
    if (!any) {
        for (int i = 0; i < m; ++i) remap[static_cast<size_t>(i)] = i;
        return remap;
    }
    int next = 0;
    for (int i = 0; i < m; ++i)
        remap[static_cast<size_t>(i)] = (uf.find(i) == i) ? next++ : -1;
    for (int i = 0; i < m; ++i)
        if (remap[static_cast<size_t>(i)] < 0)
            remap[static_cast<size_t>(i)] = remap[static_cast<size_t>(uf.find(i))];
    std::vector<std::vector<Rational>> nrows(static_cast<size_t>(next),
                                             std::vector<Rational>(static_cast<size_t>(next)));
    std::vector<std::string> nlabels(static_cast<size_t>(next));
    for (int i = 0; i < m; ++i) {
        if (uf.find(i) != i) continue;
        nlabels[static_cast<size_t>(remap[static_cast<size_t>(i)])] = labels[static_cast<size_t>(i)];
        for (int j = 0; j < m; ++j) {
            if (uf.find(j) != j) continue;
            nrows[static_cast<size_t>(remap[static_cast<size_t>(i)])]
                 [static_cast<size_t>(remap[static_cast<size_t>(j)])] =
                rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
        }
    }
    rows = std::move(nrows);
    labels = std::move(nlabels);
    return remap;
}

} // namespace

void check_self_isometry(const FiniteMetricSpace& s, const std::vector<int>& perm) {
    if (static_cast<int>(perm.size()) != s.n())
        throw MetricError("NotPermutation", {static_cast<long long>(perm.size())},
                          "size differs from point count");
    std::vector<char> hit(static_cast<size_t>(s.n()), 0);
    for (int i = 0; i < s.n(); ++i) {
        int t = perm[static_cast<size_t>(i)];
        if (t < 0 || t >= s.n() || hit[static_cast<size_t>(t)])
            throw MetricError("NotPermutation", {i}, "not a bijection at this index");
        hit[static_cast<size_t>(t)] = 1;
    }
    for (int i = 0; i < s.n(); ++i)
        for (int j = i + 1; j < s.n(); ++j)
            if (s.dist(perm[static_cast<size_t>(i)], perm[static_cast<size_t>(j)]) != s.dist(i, j))
                throw MetricError("PhiNotIsometry", {i, j}, "distance not preserved");
}

Amalgam amalgamate(const FiniteMetricSpace& left, const FiniteMetricSpace& right,
                   const std::vector<std::pair<int, int>>& glue) {
    if (glue.empty())
        throw MetricError("EmptyGlue", {}, "amalgam needs at least one glued pair");
    validate_partial_isometry(left, right, PartialIsometry{glue});

    const int nl = left.n();
    const int nr = right.n();
    std::vector<int> right_map(static_cast<size_t>(nr), -1);
    for (const auto& [l, r] : glue) right_map[static_cast<size_t>(r)] = l;
    std::vector<int> unglued; // right points that become new result points
    for (int r = 0; r < nr; ++r)
        if (right_map[static_cast<size_t>(r)] < 0) {
            right_map[static_cast<size_t>(r)] = nl + static_cast<int>(unglued.size());
            unglued.push_back(r);
        }

    const int m = nl + static_cast<int>(unglued.size());
    std::vector<std::vector<Rational>> rows(static_cast<size_t>(m),
                                            std::vector<Rational>(static_cast<size_t>(m)));
    for (int i = 0; i < nl; ++i)
        for (int j = 0; j < nl; ++j) rows[static_cast<size_t>(i)][static_cast<size_t>(j)] = left.dist(i, j);
    for (size_t a = 0; a < unglued.size(); ++a)
        for (size_t b = 0; b < unglued.size(); ++b)
            rows[static_cast<size_t>(nl) + a][static_cast<size_t>(nl) + b] =
                right.dist(unglued[a], unglued[b]);
    for (int i = 0; i < nl; ++i) {
        for (size_t b = 0; b < unglued.size(); ++b) {
            const int rb = unglued[b];
            bool first = true;
            Rational best;
            for (const auto& [cl, cr] : glue) {
                Rational v = left.dist(i, cl) + right.dist(cr, rb);
                if (first || v < best) {
                    best = v;
                    first = false;
                }
            }
            rows[static_cast<size_t>(i)][static_cast<size_t>(nl) + b] = best;
            rows[static_cast<size_t>(nl) + b][static_cast<size_t>(i)] = best;
        }
    }

    std::vector<std::string> labels(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) labels[static_cast<size_t>(i)] = std::to_string(i);

    Amalgam out;
    for (int i = 0; i < nl; ++i)
        for (size_t b = 0; b < unglued.size(); ++b)
            if (rows[static_cast<size_t>(i)][static_cast<size_t>(nl) + b].is_zero())
                out.merges.emplace_back(i, unglued[b]);
    auto remap = collapse_zeros(rows, labels);

    out.space = validate_space(rows, labels);
    out.left_map.resize(static_cast<size_t>(nl));
    for (int i = 0; i < nl; ++i) out.left_map[static_cast<size_t>(i)] = remap[static_cast<size_t>(i)];
    for (int r = 0; r < nr; ++r)
        right_map[static_cast<size_t>(r)] = remap[static_cast<size_t>(right_map[static_cast<size_t>(r)])];
    out.right_map = std::move(right_map);
    return out;
}

DoubleSpace double_with_swap(const FiniteMetricSpace& base, const std::vector<int>& glued) {
    if (glued.empty())
        throw MetricError("EmptyGlue", {}, "doubling needs a nonempty glued subset");
    std::vector<std::pair<int, int>> glue;
    glue.reserve(glued.size());
    for (int g : glued) glue.emplace_back(g, g);
    Amalgam am = amalgamate(base, base, glue);

    DoubleSpace out;
    out.space = std::move(am.space);
    out.first_map = std::move(am.left_map);
    out.second_map = std::move(am.right_map);
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<size_t>(out.space.n()));
    std::vector<char> is_glued(static_cast<size_t>(base.n()), 0);
    for (int g : glued) is_glued[static_cast<size_t>(g)] = 1;
    for (int p = 0; p < base.n(); ++p) {
        if (is_glued[static_cast<size_t>(p)]) {
            pairs.emplace_back(out.first_map[static_cast<size_t>(p)],
                               out.first_map[static_cast<size_t>(p)]);
        } else {
            pairs.emplace_back(out.first_map[static_cast<size_t>(p)],
                               out.second_map[static_cast<size_t>(p)]);
            pairs.emplace_back(out.second_map[static_cast<size_t>(p)],
                               out.first_map[static_cast<size_t>(p)]);
        }
    }
    std::sort(pairs.begin(), pairs.end());
    out.swap = PartialIsometry{std::move(pairs)};
    return out;
}

OrbitAmalgam orbit_amalgam(const FiniteMetricSpace& base, const std::vector<int>& phi,
                           const KatetovMap& f, int horizon) {
    if (base.n() == 0) throw std::invalid_argument("orbit amalgam needs a nonempty base");
    if (horizon < 0) throw std::invalid_argument("horizon must be nonnegative");
    check_self_isometry(base, phi);
    katetov_check(base, f.values);

    const int n = base.n();
    const int width = 2 * horizon + 1;
    OrbitAmalgam out;
    out.horizon = horizon;

    int zero_at = -1;
    for (int x = 0; x < n; ++x)
        if (f.values[static_cast<size_t>(x)].is_zero()) {
            zero_at = x;
            break;
        }

    std::vector<int> phi_inv(static_cast<size_t>(n));
    for (int x = 0; x < n; ++x) phi_inv[static_cast<size_t>(phi[static_cast<size_t>(x)])] = x;

    if (zero_at >= 0) {
        // f is the distance trace of zero_at: every y_i lands on a base point
        out.space = base;
        out.collapsed = true;
        out.y_index.resize(static_cast<size_t>(width));
        int fwd = zero_at;
        out.y_index[static_cast<size_t>(horizon)] = zero_at;
        for (int i = 1; i <= horizon; ++i) {
            fwd = phi[static_cast<size_t>(fwd)];
            out.y_index[static_cast<size_t>(horizon + i)] = fwd;
        }
        int bwd = zero_at;
        for (int i = 1; i <= horizon; ++i) {
            bwd = phi_inv[static_cast<size_t>(bwd)];
            out.y_index[static_cast<size_t>(horizon - i)] = bwd;
        }
        for (int o = 0; o < width; ++o)
            out.merges.emplace_back(static_cast<long long>(o - horizon),
                                    out.y_index[static_cast<size_t>(o)]);
        std::vector<std::pair<int, int>> pairs;
        for (int x = 0; x < n; ++x) pairs.emplace_back(x, phi[static_cast<size_t>(x)]);
        out.shift = PartialIsometry{std::move(pairs)};
        return out;
    }

    // trace of y_i over the base: x -> f(phi^{-i}(x)), offsets -N..N
    std::vector<std::vector<Rational>> ytr(static_cast<size_t>(width),
                                           std::vector<Rational>(static_cast<size_t>(n)));
    std::vector<int> pw(static_cast<size_t>(n)); // phi^{-i} as i walks upward
    for (int x = 0; x < n; ++x) pw[static_cast<size_t>(x)] = x;
    for (int i = 0; i <= horizon; ++i) {
        for (int x = 0; x < n; ++x)
            ytr[static_cast<size_t>(horizon + i)][static_cast<size_t>(x)] =
                f.values[static_cast<size_t>(pw[static_cast<size_t>(x)])];
        if (i < horizon) {
            std::vector<int> next(static_cast<size_t>(n));
            for (int x = 0; x < n; ++x)
                next[static_cast<size_t>(x)] = pw[static_cast<size_t>(phi_inv[static_cast<size_t>(x)])];
            pw = std::move(next);
        }
    }
    for (int x = 0; x < n; ++x) pw[static_cast<size_t>(x)] = x;
    for (int i = 1; i <= horizon; ++i) {
        std::vector<int> next(static_cast<size_t>(n));
        for (int x = 0; x < n; ++x)
            next[static_cast<size_t>(x)] = pw[static_cast<size_t>(phi[static_cast<size_t>(x)])];
        pw = std::move(next);
        for (int x = 0; x < n; ++x)
            ytr[static_cast<size_t>(horizon - i)][static_cast<size_t>(x)] =
                f.values[static_cast<size_t>(pw[static_cast<size_t>(x)])];
    }

    const int m = n + width;
    std::vector<std::vector<Rational>> rows(static_cast<size_t>(m),
                                            std::vector<Rational>(static_cast<size_t>(m)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) rows[static_cast<size_t>(i)][static_cast<size_t>(j)] = base.dist(i, j);
    for (int o = 0; o < width; ++o)
        for (int x = 0; x < n; ++x) {
            rows[static_cast<size_t>(n + o)][static_cast<size_t>(x)] =
                ytr[static_cast<size_t>(o)][static_cast<size_t>(x)];
            rows[static_cast<size_t>(x)][static_cast<size_t>(n + o)] =
                ytr[static_cast<size_t>(o)][static_cast<size_t>(x)];
        }
    for (int o = 0; o < width; ++o)
        for (int p = o + 1; p < width; ++p) {
            Rational best = ytr[static_cast<size_t>(o)][0] + ytr[static_cast<size_t>(p)][0];
            for (int x = 1; x < n; ++x)
                best = rat_min(best, ytr[static_cast<size_t>(o)][static_cast<size_t>(x)] +
                                         ytr[static_cast<size_t>(p)][static_cast<size_t>(x)]);
            rows[static_cast<size_t>(n + o)][static_cast<size_t>(n + p)] = best;
            rows[static_cast<size_t>(n + p)][static_cast<size_t>(n + o)] = best;
        }

    std::vector<std::string> labels = base.labels();
    for (int o = 0; o < width; ++o) labels.push_back("y" + std::to_string(o - horizon));
    out.space = validate_space(rows, labels);
    out.y_index.resize(static_cast<size_t>(width));
    for (int o = 0; o < width; ++o) out.y_index[static_cast<size_t>(o)] = n + o;

    std::vector<std::pair<int, int>> pairs;
    for (int x = 0; x < n; ++x) pairs.emplace_back(x, phi[static_cast<size_t>(x)]);
    for (int o = 0; o + 1 < width; ++o) pairs.emplace_back(n + o, n + o + 1);
    out.shift = PartialIsometry{std::move(pairs)};
    return out;
}

MultiAmalgam multi_amalgamate(const FiniteMetricSpace& base,
                              const std::vector<FiniteMetricSpace>& extensions) {
    const int nb = base.n();
    for (size_t k = 0; k < extensions.size(); ++k) {
        const auto& ext = extensions[k];
        if (ext.n() < nb)
            throw MetricError("BaseMismatch", {static_cast<long long>(k)},
                              "extension smaller than the base");
        for (int i = 0; i < nb; ++i)
            for (int j = i + 1; j < nb; ++j)
                if (ext.dist(i, j) != base.dist(i, j))
                    throw MetricError("BaseMismatch", {static_cast<long long>(k)},
                                      "extension does not contain the base as its prefix");
    }

    // global layout: base, then each extension's new points in order
    std::vector<std::pair<int, int>> origin; // candidate index -> (ext, point)
    for (size_t k = 0; k < extensions.size(); ++k)
        for (int p = nb; p < extensions[k].n(); ++p)
            origin.emplace_back(static_cast<int>(k), p);
    const int m = nb + static_cast<int>(origin.size());

    std::vector<std::vector<Rational>> rows(static_cast<size_t>(m),
                                            std::vector<Rational>(static_cast<size_t>(m)));
    for (int i = 0; i < nb; ++i)
        for (int j = 0; j < nb; ++j) rows[static_cast<size_t>(i)][static_cast<size_t>(j)] = base.dist(i, j);
    for (size_t a = 0; a < origin.size(); ++a) {
        const auto& [ka, pa] = origin[a];
        const auto& ea = extensions[static_cast<size_t>(ka)];
        for (int i = 0; i < nb; ++i) {
            rows[static_cast<size_t>(nb) + a][static_cast<size_t>(i)] = ea.dist(pa, i);
            rows[static_cast<size_t>(i)][static_cast<size_t>(nb) + a] = ea.dist(pa, i);
        }
        for (size_t b = a + 1; b < origin.size(); ++b) {
            const auto& [kb, pb] = origin[b];
            const auto& eb = extensions[static_cast<size_t>(kb)];
            Rational v;
            if (ka == kb) {
                v = ea.dist(pa, pb);
            } else {
                v = ea.dist(pa, 0) + eb.dist(0, pb);
                for (int c = 1; c < nb; ++c)
                    v = rat_min(v, ea.dist(pa, c) + eb.dist(c, pb));
            }
            rows[static_cast<size_t>(nb) + a][static_cast<size_t>(nb) + b] = v;
            rows[static_cast<size_t>(nb) + b][static_cast<size_t>(nb) + a] = v;
        }
    }

    MultiAmalgam out;
    for (size_t a = 0; a < origin.size(); ++a)
        for (size_t b = a + 1; b < origin.size(); ++b)
            if (rows[static_cast<size_t>(nb) + a][static_cast<size_t>(nb) + b].is_zero())
                out.merges.push_back(MultiMerge{origin[a].first, origin[a].second,
                                                origin[b].first, origin[b].second});

    std::vector<std::string> labels(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i)
        labels[static_cast<size_t>(i)] = i < nb ? base.label(i) : std::to_string(i);
    auto remap = collapse_zeros(rows, labels);

    out.space = validate_space(rows, labels);
    out.point_map.resize(extensions.size());
    int cursor = nb;
    for (size_t k = 0; k < extensions.size(); ++k) {
        out.point_map[k].resize(static_cast<size_t>(extensions[k].n()));
        for (int i = 0; i < nb; ++i) out.point_map[k][static_cast<size_t>(i)] = i;
        for (int p = nb; p < extensions[k].n(); ++p)
            out.point_map[k][static_cast<size_t>(p)] = remap[static_cast<size_t>(cursor++)];
    }
    return out;
}

} // namespace ums
