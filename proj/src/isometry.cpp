#include "ums/isometry.hpp"

#include <algorithm>

namespace ums {

namespace {

std::vector<Rational> sorted_row(const FiniteMetricSpace& s, int i) {
    std::vector<Rational> out;
    out.reserve(s.n() - 1);
    for (int j = 0; j < s.n(); ++j)
        if (j != i)
            out.push_back(s.dist(i, j));
    std::sort(out.begin(), out.end());
    return out;
}

// Every value of `sub` appears in `sup` with at least the same multiplicity.
bool multiset_contains(const std::vector<Rational>& sup, const std::vector<Rational>& sub) {
    std::size_t i = 0;
    for (const Rational& v : sub) {
        while (i < sup.size() && sup[i] < v)
            ++i;
        if (i == sup.size() || !(sup[i] == v))
            return false;
        ++i;
    }
    return true;
}

std::optional<PartialIsometry> search(const FiniteMetricSpace& pattern,
                                      const FiniteMetricSpace& host, bool exact_rows) {
    const int np = pattern.n();
    const int nh = host.n();
    if (np > nh)
        return std::nullopt;

    std::vector<std::vector<Rational>> prow(np);
    for (int i = 0; i < np; ++i)
        prow[i] = sorted_row(pattern, i);

    // one host row at a time keeps memory linear in the host size
    std::vector<std::vector<char>> feasible(np, std::vector<char>(nh));
    for (int j = 0; j < nh; ++j) {
        std::vector<Rational> hrow = sorted_row(host, j);
        for (int i = 0; i < np; ++i)
            feasible[i][j] = exact_rows ? prow[i] == hrow : multiset_contains(hrow, prow[i]);
    }

    std::vector<int> image(np, -1);
    std::vector<char> used(nh, 0);

    auto extend = [&](auto&& self, int i) -> bool {
        if (i == np)
            return true;
        for (int j = 0; j < nh; ++j) {
            if (used[j] || !feasible[i][j])
                continue;
            bool ok = true;
            for (int u = 0; u < i; ++u)
                if (!(host.dist(j, image[u]) == pattern.dist(i, u))) {
                    ok = false;
                    break;
                }
            if (!ok)
                continue;
            image[i] = j;
            used[j] = 1;
            if (self(self, i + 1))
                return true;
            used[j] = 0;
            image[i] = -1;
        }
        return false;
    };

    if (!extend(extend, 0))
        return std::nullopt;
    PartialIsometry out;
    out.pairs.reserve(np);
    for (int i = 0; i < np; ++i)
        out.pairs.emplace_back(i, image[i]);
    return out;
}

} // namespace

void validate_partial_isometry(const FiniteMetricSpace& source, const FiniteMetricSpace& target,
                               const PartialIsometry& p) {
    const auto& pairs = p.pairs;
    for (auto [a, b] : pairs) {
        if (a < 0 || a >= source.n() || b < 0 || b >= target.n())
            throw MetricError("BadPair", {a, b});
    }
    for (std::size_t i = 0; i < pairs.size(); ++i)
        for (std::size_t j = i + 1; j < pairs.size(); ++j) {
            if (pairs[i].first == pairs[j].first || pairs[i].second == pairs[j].second)
                throw MetricError("NotInjective",
                                  {static_cast<long long>(i), static_cast<long long>(j)});
            if (!(source.dist(pairs[i].first, pairs[j].first) ==
                  target.dist(pairs[i].second, pairs[j].second)))
                throw MetricError("DistanceMismatch", {pairs[i].first, pairs[j].first});
        }
}

std::optional<PartialIsometry> find_embedding(const FiniteMetricSpace& pattern,
                                              const FiniteMetricSpace& host) {
    return search(pattern, host, false);
}

std::optional<PartialIsometry> find_isometry(const FiniteMetricSpace& a,
                                             const FiniteMetricSpace& b) {
    if (a.n() != b.n())
        return std::nullopt;
    return search(a, b, true);
}

} // namespace ums
