#include "ums/tentacular.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace ums {

namespace {

void require_order(const FiniteMetricSpace& s, const std::vector<int>& order) {
    std::vector<char> seen(static_cast<size_t>(s.n()), 0);
    for (int p : order) {
        if (p < 0 || p >= s.n()) throw std::invalid_argument("order index out of range");
        if (seen[static_cast<size_t>(p)]) throw std::invalid_argument("order index repeated");
        seen[static_cast<size_t>(p)] = 1;
    }
}

// smallest multiple of 1/2 that is >= v
Rational half_up(const Rational& v) {
    Rational two = v * Rational(2);
    long long q = two.num() / two.den();
    if (Rational(q) < two) ++q;
    return Rational(q, 2);
}

} // namespace

InlineReport eps_good_inline(const FiniteMetricSpace& s, const std::vector<int>& order,
                             const Rational& eps) {
    require_order(s, order);
    if (eps < Rational(0)) throw std::invalid_argument("tolerance must be nonnegative");
    InlineReport rep;
    rep.worst_excess = Rational(0);
    Rational path(0);
    for (size_t t = 1; t < order.size(); ++t) {
        path = path + s.dist(order[t - 1], order[t]);
        Rational excess = path - s.dist(order[0], order[t]);
        if (rep.worst_r < 0 || excess > rep.worst_excess) {
            rep.worst_excess = excess;
            rep.worst_r = static_cast<int>(t);
        }
    }
    rep.good = !(rep.worst_excess > eps);
    return rep;
}

TailLawReport condition_c_check(const FiniteMetricSpace& s, const std::vector<int>& order,
                                const Rational& delta) {
    require_order(s, order);
    if (delta < Rational(0)) throw std::invalid_argument("tolerance must be nonnegative");
    TailLawReport rep;
    if (order.size() <= 2) {
        rep.holds = true;
        rep.pivot_bound = 0;
        return rep;
    }
    int base = order[0];
    std::vector<int> tail(order.begin() + 1, order.end());
    int T = static_cast<int>(tail.size());
    for (int N = 0; N + 1 < T; ++N) {
        bool all = true;
        for (int n = N + 1; n < T && all; ++n) {
            bool found = false;
            for (int i = 0; i <= N && !found; ++i) {
                Rational lhs = s.dist(base, tail[static_cast<size_t>(n)]);
                Rational rhs = s.dist(base, tail[static_cast<size_t>(i)]) +
                               s.dist(tail[static_cast<size_t>(i)], tail[static_cast<size_t>(n)]) -
                               delta;
                if (!(lhs < rhs)) found = true;
            }
            if (!found) all = false;
        }
        if (all) {
            rep.holds = true;
            rep.pivot_bound = N;
            return rep;
        }
    }
    rep.holds = false;
    return rep;
}

std::vector<int> extract_inline_subsequence(const FiniteMetricSpace& s,
                                            const std::vector<int>& order,
                                            const std::vector<Rational>& schedule) {
    require_order(s, order);
    if (order.size() < 2)
        throw MetricError("TooShort", {static_cast<long long>(order.size())},
                          "need at least two points to thin");
    for (const Rational& d : schedule)
        if (d < Rational(0)) throw std::invalid_argument("tolerances must be nonnegative");

    std::vector<int> cur = order;
    for (const Rational& delta : schedule) {
        std::vector<int> kept{cur[0]};
        Rational path(0);
        int last = cur[0];
        for (size_t t = 1; t < cur.size(); ++t) {
            int v = cur[t];
            Rational cand = path + s.dist(last, v);
            if (!(cand > s.dist(cur[0], v) + delta)) {
                kept.push_back(v);
                path = cand;
                last = v;
            }
        }
        cur = std::move(kept);
    }
    return cur;
}

FiniteMetricSpace nat_line(int n) {
    if (n < 2) throw std::invalid_argument("need at least two points");
    // |i - j| satisfies every triangle identity, so skip the cubic recheck
    MetricSpaceBuilder b;
    for (int i = 0; i < n; ++i) {
        std::vector<Rational> d;
        d.reserve(static_cast<size_t>(i));
        for (int j = 0; j < i; ++j) d.push_back(Rational(i - j));
        b.add_point(std::move(d));
    }
    return std::move(b).freeze();
}

FiniteMetricSpace euclid_spread(int n) {
    if (n < 2) throw std::invalid_argument("need at least two points");
    std::vector<std::vector<Rational>> d(static_cast<size_t>(n),
                                         std::vector<Rational>(static_cast<size_t>(n)));
    auto set = [&](int a, int b, const Rational& v) {
        d[static_cast<size_t>(a)][static_cast<size_t>(b)] = v;
        d[static_cast<size_t>(b)][static_cast<size_t>(a)] = v;
    };
    for (int i = 1; i < n; ++i) set(0, i, Rational(i));
    for (int i = 2; i < n; ++i) {
        for (int j = 1; j < i; ++j) {
            Rational lb(i - j + 1); // one longer than the radius gap
            Rational ub = Rational(i) + Rational(j);
            auto clamp_with = [&](int k) {
                const Rational& a = d[static_cast<size_t>(i)][static_cast<size_t>(k)];
                const Rational& b = d[static_cast<size_t>(j)][static_cast<size_t>(k)];
                Rational lo = a - b;
                if (lo < Rational(0)) lo = -lo;
                lb = rat_max(lb, lo);
                ub = rat_min(ub, a + b);
            };
            clamp_with(0);
            for (int k = 1; k < j; ++k) clamp_with(k);
            Rational v = half_up(lb);
            if (v > ub)
                throw MetricError("SearchFailed", {i, j}, "no admissible distance at this pair");
            set(i, j, v);
        }
    }
    std::vector<std::string> labels(static_cast<size_t>(n));
    labels[0] = "o";
    for (int i = 1; i < n; ++i) labels[static_cast<size_t>(i)] = "x" + std::to_string(i);
    return validate_space(d, labels);
}

std::vector<KatetovMap> fa_family(const FiniteMetricSpace& spread,
                                  const std::vector<std::vector<int>>& subsets) {
    std::vector<KatetovMap> out;
    out.reserve(subsets.size());
    for (const auto& A : subsets) {
        if (A.empty()) throw std::invalid_argument("subsets must be nonempty");
        for (int a : A)
            if (a <= 0 || a >= spread.n())
                throw std::invalid_argument("subsets index the spread points, not the base");
        std::vector<Rational> radii;
        radii.reserve(A.size());
        for (int a : A) radii.push_back(spread.dist(0, a));
        out.push_back(katetov_extend(spread, A, radii));
    }
    return out;
}

std::vector<Rational> example1_convergence(int n, const std::vector<Rational>& f) {
    FiniteMetricSpace line = nat_line(n);
    katetov_check(line, f);
    std::vector<Rational> cur(static_cast<size_t>(n));
    for (int x = 0; x < n; ++x) cur[static_cast<size_t>(x)] = f[0] + Rational(x);
    std::vector<Rational> gaps;
    gaps.reserve(static_cast<size_t>(n));
    auto record = [&] {
        Rational g(0);
        for (int x = 0; x < n; ++x) g = rat_max(g, cur[static_cast<size_t>(x)] - f[static_cast<size_t>(x)]);
        gaps.push_back(g);
    };
    record();
    for (int i = 1; i < n; ++i) {
        for (int x = 0; x < n; ++x)
            cur[static_cast<size_t>(x)] =
                rat_min(cur[static_cast<size_t>(x)], f[static_cast<size_t>(i)] + line.dist(x, i));
        record();
    }
    return gaps;
}

} // namespace ums
