#include "doctest.h"

#include "ums/amalgam.hpp"
#include "ums/fixedpoint.hpp"
#include "ums/graph.hpp"
#include "ums/katetov.hpp"
#include "ums/metric_space.hpp"
#include "ums/tentacular.hpp"
#include "ums/tower.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using ums::FiniteMetricSpace;
using ums::MetricError;
using ums::Rational;

namespace {

namespace fs = std::filesystem;

fs::path scratch_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "ums_format_tests";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

FiniteMetricSpace space_from(const std::vector<std::vector<long long>>& m,
                             std::vector<std::string> labels = {}) {
    std::vector<std::vector<Rational>> rows;
    for (const auto& r : m) {
        rows.emplace_back();
        for (long long v : r) rows.back().push_back(Rational(v));
    }
    return ums::validate_space(rows, std::move(labels));
}

std::string parse_error_name(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const MetricError& e) {
        return e.name();
    }
    return "(no error)";
}

} // namespace

TEST_CASE("metric files have a fixed canonical form") {
    auto s = space_from({{0, 1}, {1, 0}});
    std::ostringstream out;
    ums::write_ums(out, s);
    CHECK(out.str() == "ums v1\nn 2\nd 0 1 1\nend\n");

    auto named = space_from({{0, 1}, {1, 0}}, {"a", "b"});
    std::ostringstream out2;
    ums::write_ums(out2, named);
    CHECK(out2.str() == "ums v1\nn 2\nlabels a b\nd 0 1 1\nend\n");

    auto single = space_from({{0}});
    std::ostringstream out3;
    ums::write_ums(out3, single);
    CHECK(out3.str() == "ums v1\nn 1\nend\n");
}

TEST_CASE("metric files survive a round trip") {
    std::vector<std::vector<Rational>> rows(4, std::vector<Rational>(4));
    auto set = [&](int i, int j, Rational v) {
        rows[static_cast<size_t>(i)][static_cast<size_t>(j)] = v;
        rows[static_cast<size_t>(j)][static_cast<size_t>(i)] = v;
    };
    set(0, 1, Rational(7, 2));
    set(0, 2, Rational(4));
    set(0, 3, Rational(3));
    set(1, 2, Rational(9, 2));
    set(1, 3, Rational(13, 2));
    set(2, 3, Rational(5));
    auto s = ums::validate_space(rows, {"p", "q", "r", "s"});

    std::ostringstream out;
    ums::write_ums(out, s);
    std::istringstream in(out.str());
    auto back = ums::read_ums(in);
    CHECK(back == s);
    for (int i = 0; i < 4; ++i) CHECK(back.label(i) == s.label(i));

    std::ostringstream again;
    ums::write_ums(again, back);
    CHECK(again.str() == out.str());
}

TEST_CASE("comments and blank lines are ignored") {
    std::istringstream in("# produced by hand\nums v1\n\nn 2\n  # spacing\nd 0 1 3/2\nend\n");
    auto s = ums::read_ums(in);
    CHECK(s.n() == 2);
    CHECK(s.dist(0, 1) == Rational(3, 2));
}

TEST_CASE("malformed metric files name the offending line") {
    auto read = [](const std::string& text) {
        return [text] {
            std::istringstream in(text);
            ums::read_ums(in);
        };
    };
    CHECK(parse_error_name(read("ums v2\nn 1\nend\n")) == "ParseError");
    try {
        std::istringstream in("ums v2\nn 1\nend\n");
        ums::read_ums(in);
    } catch (const MetricError& e) {
        CHECK(e.args() == std::vector<long long>{1});
    }
    CHECK(parse_error_name(read("ums v1\nd 0 1 1\nend\n")) == "ParseError");
    CHECK(parse_error_name(read("ums v1\nn 0\nend\n")) == "ParseError");
    CHECK(parse_error_name(read("ums v1\nn 200000\nend\n")) == "ParseError");
    CHECK(parse_error_name(read("ums v1\nn 2\nd 0 1 1\nd 0 1 1\nend\n")) == "ParseError");
    CHECK(parse_error_name(read("ums v1\nn 2\nd 1 0 1\nend\n")) == "ParseError");
    CHECK(parse_error_name(read("ums v1\nn 2\nd 0 1 1.5\nend\n")) == "ParseError");
    CHECK(parse_error_name(read("ums v1\nn 2\nend\n")) == "ParseError");
    CHECK(parse_error_name(read("ums v1\nn 2\nd 0 1 1\n")) == "ParseError");
    CHECK(parse_error_name(read("ums v1\nn 2\nd 0 1 1\nend\nextra\n")) == "ParseError");
    CHECK(parse_error_name(read("ums v1\nn 2\nd 0 1 1\nlabels a b\nend\n")) == "ParseError");
    CHECK(parse_error_name(read("ums v1\nn 2\nd 0 5 1\nend\n")) == "ParseError");
}

TEST_CASE("reading enforces the metric axioms") {
    std::istringstream in("ums v1\nn 3\nd 0 1 1\nd 0 2 3\nd 1 2 1\nend\n");
    CHECK(parse_error_name([&] { ums::read_ums(in); }) == "TriangleViolation");
}

TEST_CASE("missing files are reported as such") {
    CHECK(parse_error_name([] { ums::read_ums_file("/no/such/file.ums"); }) == "FileError");
}

TEST_CASE("graph files round trip") {
    auto g = ums::make_graph(4, {{2, 3}, {0, 1}, {1, 2}});
    std::ostringstream out;
    ums::write_graph(out, g);
    CHECK(out.str() == "graph v1\nn 4\ne 0 1\ne 1 2\ne 2 3\nend\n");
    std::istringstream in(out.str());
    auto back = ums::read_graph(in);
    CHECK(back.n == 4);
    CHECK(back.edges == g.edges);
}

TEST_CASE("graph validation failures carry witnesses") {
    CHECK(parse_error_name([] { ums::make_graph(3, {{0, 5}}); }) == "BadVertex");
    CHECK(parse_error_name([] { ums::make_graph(3, {{1, 1}}); }) == "SelfLoop");
    CHECK(parse_error_name([] { ums::make_graph(3, {{0, 1}, {1, 0}}); }) == "DuplicateEdge");
    auto disconnected = ums::make_graph(4, {{0, 1}, {2, 3}});
    CHECK(parse_error_name([&] { ums::graph_to_metric(disconnected); }) == "DisconnectedGraph");
}

TEST_CASE("graph metrics count hops") {
    auto p4 = ums::graph_to_metric(ums::make_graph(4, {{0, 1}, {1, 2}, {2, 3}}));
    CHECK(p4.dist(0, 3) == Rational(3));
    CHECK(p4.dist(1, 3) == Rational(2));
    auto c4 = ums::graph_to_metric(ums::make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}));
    CHECK(c4.dist(0, 2) == Rational(2));
    CHECK(c4.dist(0, 3) == Rational(1));
}

TEST_CASE("map files resolve their space next to themselves") {
    auto dir = scratch_dir();
    auto s = space_from({{0, 2, 2}, {2, 0, 2}, {2, 2, 0}});
    ums::write_ums_file((dir / "base.ums").string(), s);

    auto f = ums::katetov_extend(s, {0}, {Rational(3)});
    ums::write_kmap_file((dir / "m.kmap").string(), "base.ums", f);
    auto text = slurp(dir / "m.kmap");
    CHECK(text == "kmap v1\nspace base.ums\nn 3\nv 0 3\nv 1 5\nv 2 5\nsupport 0\nend\n");

    auto back = ums::read_kmap_file((dir / "m.kmap").string());
    CHECK(back.space == s);
    CHECK(back.map.values == f.values);
    REQUIRE(back.map.support.has_value());
    CHECK(*back.map.support == std::vector<int>{0});
    CHECK(fs::path(back.space_path).filename() == "base.ums");
}

TEST_CASE("map files are checked against their space") {
    auto dir = scratch_dir();
    auto s = space_from({{0, 1}, {1, 0}});
    ums::write_ums_file((dir / "two.ums").string(), s);

    std::ofstream wrong(dir / "wrong.kmap");
    wrong << "kmap v1\nspace two.ums\nn 3\nv 0 1\nv 1 1\nv 2 1\nend\n";
    wrong.close();
    CHECK(parse_error_name([&] { ums::read_kmap_file((dir / "wrong.kmap").string()); }) ==
          "BaseMismatch");

    std::ofstream bad(dir / "bad.kmap");
    bad << "kmap v1\nspace two.ums\nn 2\nv 0 1\nv 1 5\nend\n";
    bad.close();
    CHECK(parse_error_name([&] { ums::read_kmap_file((dir / "bad.kmap").string()); }) ==
          "LipschitzViolation");

    std::ofstream missing(dir / "missing.kmap");
    missing << "kmap v1\nspace two.ums\nn 2\nv 0 1\nend\n";
    missing.close();
    CHECK(parse_error_name([&] { ums::read_kmap_file((dir / "missing.kmap").string()); }) ==
          "ParseError");
}

TEST_CASE("glue files round trip and tolerate a missing end") {
    auto dir = scratch_dir();
    std::vector<std::pair<int, int>> glue{{0, 2}, {1, 0}};
    ums::write_glue_file((dir / "g.glue").string(), glue);
    CHECK(slurp(dir / "g.glue") == "glue v1\ng 0 2\ng 1 0\nend\n");
    CHECK(ums::read_glue_file((dir / "g.glue").string()) == glue);

    std::istringstream bare("glue v1\ng 0 0\n");
    CHECK(ums::read_glue(bare) == std::vector<std::pair<int, int>>{{0, 0}});

    std::istringstream junk("glue v1\nh 0 0\nend\n");
    CHECK(parse_error_name([&] { ums::read_glue(junk); }) == "ParseError");
}

TEST_CASE("permutation files keep every pair and the base") {
    std::ostringstream out;
    ums::write_perm(out, {1, 0, 2}, {2});
    CHECK(out.str() == "perm v1\nm 0 1\nm 1 0\nm 2 2\nbase 2\nend\n");
    std::istringstream in(out.str());
    auto pf = ums::read_perm(in);
    CHECK(pf.mapping == std::vector<std::pair<int, int>>{{0, 1}, {1, 0}, {2, 2}});
    CHECK(pf.base == std::vector<int>{2});
    CHECK(ums::to_permutation(pf, 3) == std::vector<int>{1, 0, 2});

    std::ostringstream nb;
    ums::write_perm(nb, {0, 1}, {});
    CHECK(nb.str() == "perm v1\nm 0 0\nm 1 1\nend\n");

    std::istringstream bare("perm v1\nm 0 0\n");
    CHECK(ums::read_perm(bare).mapping == std::vector<std::pair<int, int>>{{0, 0}});
    std::istringstream dup("perm v1\nbase 0\nbase 1\nend\n");
    CHECK(parse_error_name([&] { ums::read_perm(dup); }) == "ParseError");
}

TEST_CASE("sequence files resolve their space like map files") {
    auto dir = scratch_dir();
    auto line = ums::nat_line(5);
    ums::write_ums_file((dir / "line.ums").string(), line);
    ums::write_seq_file((dir / "walk.seq").string(), "line.ums", {0, 2, 4});
    CHECK(slurp(dir / "walk.seq") == "seq v1\nspace line.ums\norder 0 2 4\nend\n");

    auto back = ums::read_seq_file((dir / "walk.seq").string());
    CHECK(back.space == line);
    CHECK(back.order == std::vector<int>{0, 2, 4});
}

TEST_CASE("tower sidecars reproduce the construction record") {
    auto seed = space_from({{0}});
    ums::TowerConfig cfg;
    cfg.grid = {Rational(1), Rational(2)};
    cfg.max_support = 1;
    cfg.depth = 1;
    auto t = ums::build_tower(seed, cfg);

    auto dir = scratch_dir();
    ums::write_prov_file((dir / "t.prov").string(), t);
    auto text = slurp(dir / "t.prov");
    CHECK(text == "prov v1\nlevels 1 3\ntruncated 0\n"
                  "p 1 level 0 support 0 values 1\n"
                  "p 2 level 0 support 0 values 2\nend\n");

    auto back = ums::read_prov_file((dir / "t.prov").string());
    CHECK(back.level_sizes == t.level_sizes);
    CHECK(back.budget_exceeded == t.budget_exceeded);
    REQUIRE(back.origins.size() == t.origins.size());
    for (size_t i = 0; i < back.origins.size(); ++i) {
        CHECK(back.origins[i].point == t.origins[i].point);
        CHECK(back.origins[i].level == t.origins[i].level);
        CHECK(back.origins[i].support == t.origins[i].support);
        CHECK(back.origins[i].values == t.origins[i].values);
    }
}

TEST_CASE("tower sidecars flag truncation and validate level sizes") {
    auto seed = space_from({{0, 1}, {1, 0}});
    ums::TowerConfig cfg;
    cfg.grid = {Rational(1)};
    cfg.max_support = 1;
    cfg.depth = 3;
    cfg.max_points = 3;
    auto t = ums::build_tower(seed, cfg);
    REQUIRE(t.budget_exceeded);

    auto dir = scratch_dir();
    ums::write_prov_file((dir / "cut.prov").string(), t);
    auto back = ums::read_prov_file((dir / "cut.prov").string());
    CHECK(back.budget_exceeded);

    auto parse = [](const std::string& text) {
        return [text] {
            auto dir2 = scratch_dir();
            auto p = dir2 / "bad.prov";
            std::ofstream out(p);
            out << text;
            out.close();
            ums::read_prov_file(p.string());
        };
    };
    CHECK(parse_error_name(parse("prov v1\nlevels 2 1\ntruncated 0\nend\n")) == "ParseError");
    CHECK(parse_error_name(parse("prov v1\nlevels 1 2\ntruncated 7\nend\n")) == "ParseError");
    CHECK(parse_error_name(parse("prov v1\nlevels 1 2\ntruncated 0\np 1 level 0 support 0\nend\n")) ==
          "ParseError");
}
