#include "doctest.h"

#include "ums/homogeneity.hpp"
#include "ums/tower.hpp"

#include <random>
#include <stdexcept>
#include <vector>

using ums::FiniteMetricSpace;
using ums::MetricError;
using ums::PartialIsometry;
using ums::Rational;

namespace {

FiniteMetricSpace space_from(const std::vector<std::vector<long long>>& m) {
    std::vector<std::vector<Rational>> rows;
    for (const auto& r : m) {
        rows.emplace_back();
        for (long long v : r) rows.back().push_back(Rational(v));
    }
    return ums::validate_space(rows);
}

FiniteMetricSpace equilateral(int n) {
    std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(n, Rational(1)));
    for (int i = 0; i < n; ++i) rows[i][i] = Rational(0);
    return ums::validate_space(rows);
}

// x at 1 and 2 from the ends of a unit segment
FiniteMetricSpace fork3() { return space_from({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}); }

FiniteMetricSpace random_space(std::mt19937_64& rng, int n) {
    std::uniform_int_distribution<int> dval(3, 6);
    std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) rows[i][j] = rows[j][i] = Rational(dval(rng));
    return ums::validate_space(rows);
}

} // namespace

TEST_CASE("traces restrict the distance rows") {
    auto e = equilateral(3);
    CHECK(ums::distance_trace(e, {0, 1}, 2) == std::vector<Rational>{Rational(1), Rational(1)});
    CHECK(ums::distance_trace(e, {0, 1}, 0) == std::vector<Rational>{Rational(0), Rational(1)});
    // a member's trace is its row restricted to the subset
    auto s = fork3();
    CHECK(ums::distance_trace(s, {0, 2}, 0) == std::vector<Rational>{Rational(0), Rational(2)});
}

TEST_CASE("traces contract distances") {
    std::mt19937_64 rng(2718);
    for (int trial = 0; trial < 30; ++trial) {
        auto s = random_space(rng, 6);
        std::vector<int> subset{0, 2, 4};
        for (int z = 0; z < 6; ++z)
            for (int w = 0; w < 6; ++w) {
                auto a = ums::distance_trace(s, subset, z);
                auto b = ums::distance_trace(s, subset, w);
                Rational worst(0);
                for (size_t k = 0; k < subset.size(); ++k) {
                    Rational gap = (a[k] - b[k]).abs();
                    worst = ums::rat_max(worst, gap);
                }
                CHECK(worst <= s.dist(z, w));
            }
    }
}

TEST_CASE("matching already matched points is a no-op") {
    auto e = equilateral(3);
    PartialIsometry p{{{0, 0}, {1, 1}}};
    auto trace = ums::back_and_forth(e, p, {0, 1});
    CHECK(trace.completed);
    CHECK(trace.steps.empty());
    CHECK(trace.result.pairs == p.pairs);
}

TEST_CASE("extension prefers the least admissible image") {
    auto e = equilateral(3);
    auto trace = ums::back_and_forth(e, PartialIsometry{}, {0, 1});
    CHECK(trace.completed);
    REQUIRE(trace.steps.size() == 2);
    CHECK(trace.steps[0].source == 0);
    CHECK(trace.steps[0].target == 0);
    CHECK(trace.steps[1].source == 1);
    CHECK(trace.steps[1].target == 1);
    CHECK(trace.steps[1].forced == std::vector<Rational>{Rational(1)});
}

TEST_CASE("an unrealizable pattern reports the forced distances") {
    auto s = fork3(); // x=0, ends 1 and 2 of the segment
    auto trace = ums::back_and_forth(s, PartialIsometry{{{1, 2}}}, {0});
    CHECK_FALSE(trace.completed);
    CHECK(trace.stuck_source == 0);
    CHECK(trace.stuck_forced == std::vector<Rational>{Rational(1)});
    CHECK(trace.result.pairs == std::vector<std::pair<int, int>>{{1, 2}});
}

TEST_CASE("realizing the forced pattern unblocks the extension") {
    auto s = fork3();
    // the stuck request wants a fresh point at distance 1 from point 2
    auto f = ums::katetov_extend(s, {2}, {Rational(1)});
    auto grown = ums::realize(s, f);
    auto trace = ums::back_and_forth(grown, PartialIsometry{{{1, 2}}}, {0});
    CHECK(trace.completed);
    REQUIRE(trace.steps.size() == 1);
    CHECK(trace.steps[0].source == 0);
    CHECK(trace.steps[0].target == 3);
    CHECK_NOTHROW(ums::validate_partial_isometry(grown, grown, trace.result));
}

TEST_CASE("matched points are never reused as images") {
    // on the equilateral triple, 2 is the only point off the partial map,
    // and it cannot serve two sources
    auto e = equilateral(3);
    auto trace = ums::back_and_forth(e, PartialIsometry{{{0, 1}}}, {1, 2});
    CHECK_FALSE(trace.completed);
    REQUIRE(trace.steps.size() == 1);
    CHECK(trace.steps[0].source == 1);
    CHECK(trace.steps[0].target == 2);
    CHECK(trace.stuck_source == 2);
}

TEST_CASE("results always validate") {
    std::mt19937_64 rng(1123);
    for (int trial = 0; trial < 40; ++trial) {
        auto s = random_space(rng, 6);
        PartialIsometry p;
        if (rng() % 2) p.pairs.push_back({0, 0});
        std::vector<int> targets;
        for (int i = 0; i < 6; ++i)
            if (rng() % 2) targets.push_back(i);
        auto trace = ums::back_and_forth(s, p, targets);
        CHECK_NOTHROW(ums::validate_partial_isometry(s, s, trace.result));
        if (trace.completed)
            for (int t : targets) {
                bool found = false;
                for (auto [a, b] : trace.result.pairs) found = found || a == t;
                CHECK(found);
            }
    }
}

TEST_CASE("the whole space always separates points") {
    auto s = fork3();
    auto rep = ums::is_uniqueness_set(s, {0, 1, 2});
    CHECK(rep.unique);
    CHECK(rep.witness_x == -1);
}

TEST_CASE("a single vertex of the equilateral triple separates nothing") {
    auto e = equilateral(3);
    auto rep = ums::is_uniqueness_set(e, {0});
    CHECK_FALSE(rep.unique);
    CHECK(rep.witness_x == 1);
    CHECK(rep.witness_y == 2);
}

TEST_CASE("two vertices of the equilateral triple separate everything") {
    auto e = equilateral(3);
    CHECK(ums::is_uniqueness_set(e, {0, 1}).unique);
}

TEST_CASE("interior maps are recognized") {
    auto two = space_from({{0, 2}, {2, 0}});
    CHECK(ums::is_nice(two, {Rational(2), Rational(2)}));
    CHECK_FALSE(ums::is_nice(two, {Rational(1), Rational(1)})); // sum not strict
    auto unit = space_from({{0, 1}, {1, 0}});
    CHECK_FALSE(ums::is_nice(unit, {Rational(1), Rational(2)})); // slope not strict
    CHECK(ums::is_nice(unit, {Rational(1), Rational(1)}));
}

TEST_CASE("offset extension separates a twin pair") {
    // reference point 0 at distance 2 from both twins 1 and 2, twins at 1
    auto core = space_from({{0, 2, 2}, {2, 0, 1}, {2, 1, 0}});
    std::vector<Rational> f{Rational(2)};

    auto sep = ums::separating_extension(core, {0}, 1, 2, f);
    CHECK(sep.alpha_max == Rational(1));
    CHECK(sep.alpha == Rational(1, 2));
    CHECK(sep.map.values == std::vector<Rational>{Rational(2), Rational(7, 2), Rational(4)});

    auto zero = ums::separating_extension(core, {0}, 1, 2, f, Rational(0));
    CHECK(zero.map.values == std::vector<Rational>{Rational(2), Rational(4), Rational(4)});

    auto full = ums::separating_extension(core, {0}, 1, 2, f, Rational(1));
    CHECK(full.map.values == std::vector<Rational>{Rational(2), Rational(3), Rational(4)});

    CHECK_THROWS_AS(ums::separating_extension(core, {0}, 1, 2, f, Rational(-1)),
                    std::invalid_argument);
    try {
        ums::separating_extension(core, {0}, 1, 2, f, Rational(3, 2));
        FAIL("expected rejection");
    } catch (const MetricError& e) {
        CHECK(e.name() == "AlphaTooLarge");
    }
}

TEST_CASE("twins must actually look alike") {
    auto core = space_from({{0, 2, 3}, {2, 0, 1}, {3, 1, 0}});
    try {
        ums::separating_extension(core, {0}, 1, 2, {Rational(2)});
        FAIL("expected rejection");
    } catch (const MetricError& e) {
        CHECK(e.name() == "TraceMismatch");
        CHECK(e.args() == std::vector<long long>{1, 2, 0});
    }
}

TEST_CASE("boundary reference values are rejected") {
    // references 0,1 at distance 1 carry values 1,2: slope is tight, not interior
    auto core = space_from({{0, 1, 2, 2}, {1, 0, 2, 2}, {2, 2, 0, 1}, {2, 2, 1, 0}});
    try {
        ums::separating_extension(core, {0, 1}, 2, 3, {Rational(1), Rational(2)});
        FAIL("expected rejection");
    } catch (const MetricError& e) {
        CHECK(e.name() == "NotNice");
        CHECK(e.args() == std::vector<long long>{0, 1});
    }
}

TEST_CASE("core must be exactly references plus the twins") {
    auto core = space_from({{0, 2, 2, 2}, {2, 0, 1, 1}, {2, 1, 0, 1}, {2, 1, 1, 0}});
    CHECK_THROWS_AS(ums::separating_extension(core, {0}, 1, 2, {Rational(2)}),
                    std::invalid_argument);
}

TEST_CASE("separated maps stay within bounds for every admissible offset") {
    std::mt19937_64 rng(515);
    std::uniform_int_distribution<long long> dval(3, 6);
    for (int trial = 0; trial < 40; ++trial) {
        // two references at distance a, twins with matching traces (b, c)
        long long a = dval(rng), b = dval(rng), c = dval(rng), e = dval(rng);
        auto s = space_from({{0, a, b, b}, {a, 0, c, c}, {b, c, 0, e}, {b, c, e, 0}});
        std::vector<Rational> f{Rational(a), Rational(a)};
        REQUIRE(ums::is_nice(s.induced({0, 1}), f));
        auto sep = ums::separating_extension(s, {0, 1}, 2, 3, f);
        CHECK(sep.alpha_max > Rational(0));
        CHECK(sep.map.values[2] + sep.alpha == sep.map.values[3]);
        CHECK_NOTHROW(ums::katetov_check(s, sep.map.values));
    }
}

TEST_CASE("clearance extension on the smallest example") {
    auto s = space_from({{0, 3}, {3, 0}});
    auto out = ums::avoidance_extension(s, {0}, {Rational(1)}, {1}, Rational(1), Rational(3));
    CHECK(out.domain == std::vector<int>{0, 1});
    CHECK(out.values == std::vector<Rational>{Rational(1), Rational(4)});
    CHECK(out.margin == Rational(0));
}

TEST_CASE("clearance violations are reported with their witnesses") {
    auto s = space_from({{0, 3}, {3, 0}});
    try { // extension value 4 below the demanded 1 + 7/2
        ums::avoidance_extension(s, {0}, {Rational(1)}, {1}, Rational(1), Rational(7, 2));
        FAIL("expected a violation");
    } catch (const MetricError& e) {
        CHECK(e.name() == "MarginViolated");
        CHECK(e.args() == std::vector<long long>{1});
    }
    try { // net point closer than the protected radius
        ums::avoidance_extension(s, {0}, {Rational(1)}, {1}, Rational(4), Rational(0));
        FAIL("expected a violation");
    } catch (const MetricError& e) {
        CHECK(e.name() == "MarginViolated");
        CHECK(e.args() == std::vector<long long>{0, 1});
    }
}

TEST_CASE("well separated configurations always clear the bar") {
    std::mt19937_64 rng(140);
    for (int trial = 0; trial < 50; ++trial) {
        auto s = random_space(rng, 6);
        std::vector<int> targets{0, 1};
        std::vector<int> net{2, 3};
        // values at least eps, net at least M away: distances are all >= 3
        Rational M(2), eps(3);
        std::vector<Rational> f{s.dist(0, 4) , s.dist(1, 4)};
        auto out = ums::avoidance_extension(s, targets, f, net, M, eps);
        CHECK(out.margin >= Rational(0));
        for (size_t k = targets.size(); k < out.values.size(); ++k)
            CHECK(out.values[k] >= M + eps);
    }
}
