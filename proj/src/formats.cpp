#include "ums/amalgam.hpp"
#include "ums/fixedpoint.hpp"
#include "ums/graph.hpp"
#include "ums/katetov.hpp"
#include "ums/tentacular.hpp"
#include "ums/tower.hpp"

#include "textio.hpp"

#include <algorithm>
#include <optional>

namespace ums {

using detail::Line;
using detail::LineReader;
using detail::expect_header;
using detail::open_input;
using detail::open_output;
using detail::parse_fail;
using detail::sibling_path;
using detail::to_index;
using detail::to_rational;

namespace {

// every format closes with "end" and allows nothing after it
void expect_end_reached(LineReader& rd, Line& ln) {
    if (ln.tokens.size() != 1 || ln.tokens[0] != "end")
        parse_fail(ln.number, "expected 'end'");
    if (rd.next(ln)) parse_fail(ln.number, "content after 'end'");
}

int small_index(const Line& ln, const std::string& tok, long long limit) {
    long long v = to_index(ln, tok);
    if (v < 0 || v >= limit) parse_fail(ln.number, "index '" + tok + "' out of range");
    return static_cast<int>(v);
}

} // namespace

FiniteMetricSpace read_ums(std::istream& in) {
    LineReader rd(in);
    expect_header(rd, "ums");
    Line ln;
    if (!rd.next(ln) || ln.tokens.size() != 2 || ln.tokens[0] != "n")
        parse_fail(ln.number, "expected 'n <count>'");
    long long n = to_index(ln, ln.tokens[1]);
    if (n < 1 || n > 100000) parse_fail(ln.number, "unreasonable point count");

    std::vector<std::string> labels;
    std::vector<std::vector<Rational>> rows(static_cast<size_t>(n),
                                            std::vector<Rational>(static_cast<size_t>(n)));
    std::vector<std::vector<char>> have(static_cast<size_t>(n),
                                        std::vector<char>(static_cast<size_t>(n), 0));
    bool saw_d = false;
    while (rd.next(ln)) {
        if (ln.tokens[0] == "labels") {
            if (saw_d || !labels.empty()) parse_fail(ln.number, "misplaced labels line");
            if (static_cast<long long>(ln.tokens.size()) != n + 1)
                parse_fail(ln.number, "label count differs from point count");
            labels.assign(ln.tokens.begin() + 1, ln.tokens.end());
            continue;
        }
        if (ln.tokens[0] == "d") {
            if (ln.tokens.size() != 4) parse_fail(ln.number, "expected 'd <i> <j> <value>'");
            int i = small_index(ln, ln.tokens[1], n);
            int j = small_index(ln, ln.tokens[2], n);
            if (i >= j) parse_fail(ln.number, "pairs must be listed with i < j");
            if (have[static_cast<size_t>(i)][static_cast<size_t>(j)])
                parse_fail(ln.number, "duplicate pair");
            Rational v = to_rational(ln, ln.tokens[3]);
            rows[static_cast<size_t>(i)][static_cast<size_t>(j)] = v;
            rows[static_cast<size_t>(j)][static_cast<size_t>(i)] = v;
            have[static_cast<size_t>(i)][static_cast<size_t>(j)] = 1;
            saw_d = true;
            continue;
        }
        break;
    }
    for (long long i = 0; i < n; ++i)
        for (long long j = i + 1; j < n; ++j)
            if (!have[static_cast<size_t>(i)][static_cast<size_t>(j)])
                parse_fail(ln.number, "missing distance for pair " + std::to_string(i) + " " +
                                          std::to_string(j));
    expect_end_reached(rd, ln);
    return validate_space(rows, labels);
}

FiniteMetricSpace read_ums_file(const std::string& path) {
    auto in = open_input(path);
    return read_ums(in);
}

void write_ums(std::ostream& out, const FiniteMetricSpace& s) {
    out << "ums v1\n";
    out << "n " << s.n() << "\n";
    if (!s.has_default_labels()) {
        out << "labels";
        for (int i = 0; i < s.n(); ++i) out << " " << s.label(i);
        out << "\n";
    }
    for (int i = 0; i < s.n(); ++i)
        for (int j = i + 1; j < s.n(); ++j)
            out << "d " << i << " " << j << " " << s.dist(i, j).to_string() << "\n";
    out << "end\n";
}

void write_ums_file(const std::string& path, const FiniteMetricSpace& s) {
    auto out = open_output(path);
    write_ums(out, s);
}

SimpleGraph read_graph(std::istream& in) {
    LineReader rd(in);
    expect_header(rd, "graph");
    Line ln;
    if (!rd.next(ln) || ln.tokens.size() != 2 || ln.tokens[0] != "n")
        parse_fail(ln.number, "expected 'n <count>'");
    long long n = to_index(ln, ln.tokens[1]);
    if (n < 1 || n > 100000) parse_fail(ln.number, "unreasonable vertex count");
    std::vector<std::pair<int, int>> edges;
    while (rd.next(ln)) {
        if (ln.tokens[0] != "e") break;
        if (ln.tokens.size() != 3) parse_fail(ln.number, "expected 'e <i> <j>'");
        edges.emplace_back(small_index(ln, ln.tokens[1], n), small_index(ln, ln.tokens[2], n));
    }
    expect_end_reached(rd, ln);
    return make_graph(static_cast<int>(n), std::move(edges));
}

SimpleGraph read_graph_file(const std::string& path) {
    auto in = open_input(path);
    return read_graph(in);
}

void write_graph(std::ostream& out, const SimpleGraph& g) {
    out << "graph v1\n";
    out << "n " << g.n << "\n";
    for (const auto& [i, j] : g.edges) out << "e " << i << " " << j << "\n";
    out << "end\n";
}

void write_graph_file(const std::string& path, const SimpleGraph& g) {
    auto out = open_output(path);
    write_graph(out, g);
}

KmapFile read_kmap_file(const std::string& path) {
    auto in = open_input(path);
    LineReader rd(in);
    expect_header(rd, "kmap");
    Line ln;
    if (!rd.next(ln) || ln.tokens.size() != 2 || ln.tokens[0] != "space")
        parse_fail(ln.number, "expected 'space <file>'");
    std::string ref = ln.tokens[1];
    if (!rd.next(ln) || ln.tokens.size() != 2 || ln.tokens[0] != "n")
        parse_fail(ln.number, "expected 'n <count>'");
    long long n = to_index(ln, ln.tokens[1]);
    if (n < 1 || n > 100000) parse_fail(ln.number, "unreasonable value count");

    std::vector<Rational> values(static_cast<size_t>(n));
    std::vector<char> have(static_cast<size_t>(n), 0);
    std::optional<std::vector<int>> support;
    while (rd.next(ln)) {
        if (ln.tokens[0] == "v") {
            if (ln.tokens.size() != 3) parse_fail(ln.number, "expected 'v <i> <value>'");
            int i = small_index(ln, ln.tokens[1], n);
            if (have[static_cast<size_t>(i)]) parse_fail(ln.number, "duplicate value index");
            values[static_cast<size_t>(i)] = to_rational(ln, ln.tokens[2]);
            have[static_cast<size_t>(i)] = 1;
            continue;
        }
        if (ln.tokens[0] == "support") {
            if (support) parse_fail(ln.number, "duplicate support line");
            std::vector<int> sup;
            for (size_t t = 1; t < ln.tokens.size(); ++t)
                sup.push_back(small_index(ln, ln.tokens[t], n));
            std::sort(sup.begin(), sup.end());
            support = std::move(sup);
            continue;
        }
        break;
    }
    for (long long i = 0; i < n; ++i)
        if (!have[static_cast<size_t>(i)])
            parse_fail(ln.number, "missing value for point " + std::to_string(i));
    expect_end_reached(rd, ln);

    KmapFile out;
    out.space_path = sibling_path(path, ref);
    out.space = read_ums_file(out.space_path);
    if (out.space.n() != static_cast<int>(n))
        throw MetricError("BaseMismatch", {n, out.space.n()},
                          "value count differs from the space size");
    out.map = make_katetov(out.space, std::move(values), std::move(support));
    return out;
}

void write_kmap_file(const std::string& path, const std::string& space_ref,
                     const KatetovMap& map) {
    auto out = open_output(path);
    out << "kmap v1\n";
    out << "space " << space_ref << "\n";
    out << "n " << map.values.size() << "\n";
    for (size_t i = 0; i < map.values.size(); ++i)
        out << "v " << i << " " << map.values[i].to_string() << "\n";
    if (map.support) {
        out << "support";
        for (int p : *map.support) out << " " << p;
        out << "\n";
    }
    out << "end\n";
}

std::vector<std::pair<int, int>> read_glue(std::istream& in) {
    LineReader rd(in);
    expect_header(rd, "glue");
    Line ln;
    std::vector<std::pair<int, int>> glue;
    bool ended = false;
    while (rd.next(ln)) {
        if (ln.tokens.size() == 1 && ln.tokens[0] == "end") {
            if (rd.next(ln)) parse_fail(ln.number, "content after 'end'");
            ended = true;
            break;
        }
        if (ln.tokens[0] != "g" || ln.tokens.size() != 3)
            parse_fail(ln.number, "expected 'g <left> <right>'");
        glue.emplace_back(static_cast<int>(to_index(ln, ln.tokens[1])),
                          static_cast<int>(to_index(ln, ln.tokens[2])));
    }
    (void)ended; // EOF without 'end' is tolerated for hand-written files
    for (const auto& [l, r] : glue)
        if (l < 0 || r < 0) parse_fail(0, "negative glue index");
    return glue;
}

std::vector<std::pair<int, int>> read_glue_file(const std::string& path) {
    auto in = open_input(path);
    return read_glue(in);
}

void write_glue_file(const std::string& path, const std::vector<std::pair<int, int>>& glue) {
    auto out = open_output(path);
    out << "glue v1\n";
    for (const auto& [l, r] : glue) out << "g " << l << " " << r << "\n";
    out << "end\n";
}

PermFile read_perm(std::istream& in) {
    LineReader rd(in);
    expect_header(rd, "perm");
    Line ln;
    PermFile out;
    bool saw_base = false;
    while (rd.next(ln)) {
        if (ln.tokens.size() == 1 && ln.tokens[0] == "end") {
            if (rd.next(ln)) parse_fail(ln.number, "content after 'end'");
            return out;
        }
        if (ln.tokens[0] == "m") {
            if (ln.tokens.size() != 3) parse_fail(ln.number, "expected 'm <i> <j>'");
            out.mapping.emplace_back(static_cast<int>(to_index(ln, ln.tokens[1])),
                                     static_cast<int>(to_index(ln, ln.tokens[2])));
            continue;
        }
        if (ln.tokens[0] == "base") {
            if (saw_base) parse_fail(ln.number, "duplicate base line");
            for (size_t t = 1; t < ln.tokens.size(); ++t)
                out.base.push_back(static_cast<int>(to_index(ln, ln.tokens[t])));
            saw_base = true;
            continue;
        }
        parse_fail(ln.number, "unexpected line in perm file");
    }
    return out; // EOF without 'end' tolerated
}

PermFile read_perm_file(const std::string& path) {
    auto in = open_input(path);
    return read_perm(in);
}

void write_perm(std::ostream& out, const std::vector<int>& phi, const std::vector<int>& base) {
    out << "perm v1\n";
    for (size_t i = 0; i < phi.size(); ++i) out << "m " << i << " " << phi[i] << "\n";
    if (!base.empty()) {
        out << "base";
        for (int b : base) out << " " << b;
        out << "\n";
    }
    out << "end\n";
}

void write_perm_file(const std::string& path, const std::vector<int>& phi,
                     const std::vector<int>& base) {
    auto out = open_output(path);
    write_perm(out, phi, base);
}

std::vector<int> to_permutation(const PermFile& pf, int n) {
    std::vector<int> phi(static_cast<size_t>(n), -1);
    for (const auto& [i, j] : pf.mapping) {
        if (i < 0 || i >= n || j < 0 || j >= n)
            throw MetricError("NotPermutation", {i}, "mapped index out of range");
        if (phi[static_cast<size_t>(i)] != -1)
            throw MetricError("NotPermutation", {i}, "point mapped twice");
        phi[static_cast<size_t>(i)] = j;
    }
    for (int i = 0; i < n; ++i)
        if (phi[static_cast<size_t>(i)] == -1)
            throw MetricError("NotPermutation", {i}, "point has no image");
    return phi;
}

SeqFile read_seq_file(const std::string& path) {
    auto in = open_input(path);
    LineReader rd(in);
    expect_header(rd, "seq");
    Line ln;
    if (!rd.next(ln) || ln.tokens.size() != 2 || ln.tokens[0] != "space")
        parse_fail(ln.number, "expected 'space <file>'");
    SeqFile out;
    out.space_path = sibling_path(path, ln.tokens[1]);
    out.space = read_ums_file(out.space_path);
    if (!rd.next(ln) || ln.tokens[0] != "order")
        parse_fail(ln.number, "expected 'order <i> ...'");
    for (size_t t = 1; t < ln.tokens.size(); ++t)
        out.order.push_back(small_index(ln, ln.tokens[t], out.space.n()));
    if (!rd.next(ln)) parse_fail(ln.number, "expected 'end'");
    expect_end_reached(rd, ln);
    return out;
}

void write_seq_file(const std::string& path, const std::string& space_ref,
                    const std::vector<int>& order) {
    auto out = open_output(path);
    out << "seq v1\n";
    out << "space " << space_ref << "\n";
    out << "order";
    for (int i : order) out << " " << i;
    out << "\n";
    out << "end\n";
}

TowerFile read_prov_file(const std::string& path) {
    auto in = open_input(path);
    LineReader rd(in);
    expect_header(rd, "prov");
    Line ln;
    if (!rd.next(ln) || ln.tokens.size() < 2 || ln.tokens[0] != "levels")
        parse_fail(ln.number, "expected 'levels <s0> ...'");
    TowerFile out;
    for (size_t t = 1; t < ln.tokens.size(); ++t) {
        long long v = to_index(ln, ln.tokens[t]);
        if (v < 1 || v > 100000) parse_fail(ln.number, "unreasonable level size");
        out.level_sizes.push_back(static_cast<int>(v));
        if (out.level_sizes.size() > 1 &&
            out.level_sizes[out.level_sizes.size() - 2] > out.level_sizes.back())
            parse_fail(ln.number, "level sizes must be nondecreasing");
    }
    if (!rd.next(ln) || ln.tokens.size() != 2 || ln.tokens[0] != "truncated" ||
        (ln.tokens[1] != "0" && ln.tokens[1] != "1"))
        parse_fail(ln.number, "expected 'truncated 0|1'");
    out.budget_exceeded = ln.tokens[1] == "1";

    int top = out.level_sizes.back();
    while (rd.next(ln)) {
        if (ln.tokens[0] != "p") break;
        if (ln.tokens.size() < 7) parse_fail(ln.number, "short provenance record");
        PointOrigin rec;
        size_t t = 1;
        rec.point = small_index(ln, ln.tokens[t++], top);
        if (ln.tokens[t++] != "level") parse_fail(ln.number, "expected 'level'");
        rec.level = small_index(ln, ln.tokens[t++], static_cast<long long>(out.level_sizes.size()));
        if (ln.tokens[t++] != "support") parse_fail(ln.number, "expected 'support'");
        while (t < ln.tokens.size() && ln.tokens[t] != "values")
            rec.support.push_back(small_index(ln, ln.tokens[t++], top));
        if (t >= ln.tokens.size() || ln.tokens[t] != "values")
            parse_fail(ln.number, "expected 'values'");
        ++t;
        while (t < ln.tokens.size()) rec.values.push_back(to_rational(ln, ln.tokens[t++]));
        if (rec.support.empty() || rec.support.size() != rec.values.size())
            parse_fail(ln.number, "support and values disagree");
        out.origins.push_back(std::move(rec));
    }
    expect_end_reached(rd, ln);
    return out;
}

void write_prov_file(const std::string& path, const TowerApprox& t) {
    auto out = open_output(path);
    out << "prov v1\n";
    out << "levels";
    for (int s : t.level_sizes) out << " " << s;
    out << "\n";
    out << "truncated " << (t.budget_exceeded ? 1 : 0) << "\n";
    for (const auto& rec : t.origins) {
        out << "p " << rec.point << " level " << rec.level << " support";
        for (int s : rec.support) out << " " << s;
        out << " values";
        for (const auto& v : rec.values) out << " " << v.to_string();
        out << "\n";
    }
    out << "end\n";
}

} // namespace ums
