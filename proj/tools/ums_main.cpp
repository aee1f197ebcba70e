// Command line front end. Every subcommand reads the text formats owned by
// the library, prints a line-oriented report to stdout, and exits 0 on
// success, 1 on a domain error (error name first on the report), 2 on usage
// problems. Output bytes are deterministic for identical inputs; the only
// decoration is color on the first line, applied when stdout is a terminal
// and UMS_COLOR is not "0".

#include "ums/amalgam.hpp"
#include "ums/fixedpoint.hpp"
#include "ums/graph.hpp"
#include "ums/homogeneity.hpp"
#include "ums/isometry.hpp"
#include "ums/katetov.hpp"
#include "ums/metric_space.hpp"
#include "ums/tentacular.hpp"
#include "ums/tower.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#ifdef _WIN32
#include <io.h>
#define UMS_ISATTY _isatty
#define UMS_FILENO _fileno
#else
#include <unistd.h>
#define UMS_ISATTY isatty
#define UMS_FILENO fileno
#endif

namespace {

using ums::Rational;

bool colored_output() {
    const char* c = std::getenv("UMS_COLOR");
    if (c != nullptr && std::string(c) == "0") return false;
    return UMS_ISATTY(UMS_FILENO(stdout)) != 0;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : text) {
        if (ch == sep) {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

std::vector<Rational> rat_list(const std::string& csv) {
    std::vector<Rational> out;
    for (const auto& tok : split(csv, ',')) out.push_back(Rational::parse(tok));
    return out;
}

Rational rat_arg(const std::string& text) { return Rational::parse(text); }

std::vector<int> int_list(const std::string& csv) {
    std::vector<int> out;
    for (const auto& tok : split(csv, ',')) {
        size_t used = 0;
        long long v = std::stoll(tok, &used);
        if (used != tok.size()) throw std::invalid_argument("bad integer '" + tok + "'");
        out.push_back(static_cast<int>(v));
    }
    return out;
}

std::vector<std::pair<int, int>> pair_list(const std::string& csv) {
    std::vector<std::pair<int, int>> out;
    for (const auto& tok : split(csv, ',')) {
        auto colon = tok.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("expected '<from>:<to>' in '" + tok + "'");
        out.emplace_back(std::stoi(tok.substr(0, colon)), std::stoi(tok.substr(colon + 1)));
    }
    return out;
}

std::string strip_ext(const std::string& path) {
    auto slash = path.find_last_of('/');
    auto dot = path.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path;
    return path.substr(0, dot);
}

std::string derive_out(const std::string& input, const std::string& tag, const std::string& ext) {
    return strip_ext(input) + "." + tag + ext;
}

std::string sidecar(const std::string& ums_path, const std::string& ext) {
    return strip_ext(ums_path) + ext;
}

std::string dir_of(const std::string& path) {
    auto slash = path.find_last_of('/');
    return slash == std::string::npos ? std::string() : path.substr(0, slash);
}

std::string base_of(const std::string& path) {
    auto slash = path.find_last_of('/');
    return slash == std::string::npos ? path : path.substr(slash + 1);
}

// reference stored inside a kmap/seq file, resolved relative to that file
std::string ref_for(const std::string& out_path, const std::string& space_path) {
    if (dir_of(out_path) == dir_of(space_path)) return base_of(space_path);
    return space_path;
}

struct Report {
    std::vector<std::string> lines;
    int code = 0;

    void add(const std::string& line) { lines.push_back(line); }
    void fail(const std::string& first) {
        lines.insert(lines.begin(), first);
        code = 1;
    }
};

void kv(Report& rep, const std::string& key, const std::string& value) {
    rep.add(key + " " + value);
}

std::string join_ints(const std::vector<int>& v) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += " ";
        out += std::to_string(v[i]);
    }
    return out;
}

std::string join_rats(const std::vector<Rational>& v) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += " ";
        out += v[i].to_string();
    }
    return out;
}

void print_report(const Report& rep) {
    bool color = colored_output();
    for (size_t i = 0; i < rep.lines.size(); ++i) {
        if (i == 0 && color && rep.code == 0)
            std::cout << "\033[32m" << rep.lines[i] << "\033[0m\n";
        else if (i == 0 && color)
            std::cout << "\033[31m" << rep.lines[i] << "\033[0m\n";
        else
            std::cout << rep.lines[i] << "\n";
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite metric space workbench"};
    app.require_subcommand(1);
    Report rep;

    // validate
    std::string v_file;
    auto* c_validate = app.add_subcommand("validate", "check a distance matrix file");
    c_validate->add_option("file", v_file, "ums file")->required();
    c_validate->callback([&] {
        auto s = ums::read_ums_file(v_file);
        kv(rep, "ok n", std::to_string(s.n()));
        kv(rep, "diameter", s.diameter().to_string());
    });

    // katetov check | extend | enumerate
    auto* c_kat = app.add_subcommand("katetov", "one-point extension maps");
    c_kat->require_subcommand(1);
    std::string kc_file;
    auto* c_kc = c_kat->add_subcommand("check", "validate a map file");
    c_kc->add_option("file", kc_file, "kmap file")->required();
    c_kc->callback([&] {
        auto km = ums::read_kmap_file(kc_file);
        kv(rep, "ok n", std::to_string(km.space.n()));
        if (km.map.support) kv(rep, "support", join_ints(*km.map.support));
    });

    std::string ke_file, ke_support, ke_values, ke_out;
    auto* c_ke = c_kat->add_subcommand("extend", "tight extension of a partial map");
    c_ke->add_option("file", ke_file, "ums file")->required();
    c_ke->add_option("--support", ke_support, "comma list of point indices")->required();
    c_ke->add_option("--values", ke_values, "comma list of rationals")->required();
    c_ke->add_option("--out", ke_out, "output kmap path");
    c_ke->callback([&] {
        auto s = ums::read_ums_file(ke_file);
        auto map = ums::katetov_extend(s, int_list(ke_support), rat_list(ke_values));
        std::string out = ke_out.empty() ? derive_out(ke_file, "ext", ".kmap") : ke_out;
        ums::write_kmap_file(out, ref_for(out, ke_file), map);
        kv(rep, "support", join_ints(*map.support));
        for (size_t i = 0; i < map.values.size(); ++i)
            rep.add("v " + std::to_string(i) + " " + map.values[i].to_string());
        kv(rep, "wrote", out);
    });

    std::string kn_file, kn_grid;
    int kn_support = 1;
    auto* c_kn = c_kat->add_subcommand("enumerate", "all grid maps up to a support size");
    c_kn->add_option("file", kn_file, "ums file")->required();
    c_kn->add_option("--grid", kn_grid, "comma list of rationals")->required();
    c_kn->add_option("--support", kn_support, "largest support size");
    c_kn->callback([&] {
        auto s = ums::read_ums_file(kn_file);
        auto maps = ums::enumerate_katetov(s, rat_list(kn_grid), kn_support);
        kv(rep, "count", std::to_string(maps.size()));
        for (const auto& m : maps) rep.add("map " + join_rats(m.values));
    });

    // tower build | audit | extend
    auto* c_tower = app.add_subcommand("tower", "iterated extension levels");
    c_tower->require_subcommand(1);
    std::string tb_file, tb_grid, tb_out;
    int tb_support = 1, tb_depth = 1;
    long long tb_budget = 100000;
    auto* c_tb = c_tower->add_subcommand("build", "grow levels from a seed space");
    c_tb->add_option("file", tb_file, "seed ums file")->required();
    c_tb->add_option("--grid", tb_grid, "comma list of rationals")->required();
    c_tb->add_option("--support", tb_support, "largest support size");
    c_tb->add_option("--depth", tb_depth, "levels to build");
    c_tb->add_option("--budget", tb_budget, "point budget");
    c_tb->add_option("--out", tb_out, "output ums path");
    c_tb->callback([&] {
        auto seed = ums::read_ums_file(tb_file);
        ums::TowerConfig cfg;
        cfg.grid = rat_list(tb_grid);
        cfg.max_support = tb_support;
        cfg.depth = tb_depth;
        cfg.max_points = tb_budget;
        auto t = ums::build_tower(seed, cfg);
        std::string out = tb_out.empty() ? derive_out(tb_file, "tower", ".ums") : tb_out;
        std::string prov = sidecar(out, ".prov");
        ums::write_ums_file(out, t.space);
        ums::write_prov_file(prov, t);
        kv(rep, "levels", join_ints(t.level_sizes));
        kv(rep, "truncated", t.budget_exceeded ? "1" : "0");
        kv(rep, "wrote", out);
        kv(rep, "wrote", prov);
    });

    std::string ta_file, ta_grid, ta_eps = "0";
    int ta_support = 2, ta_universe = -1;
    auto* c_ta = c_tower->add_subcommand("audit", "search for unrealized small maps");
    c_ta->add_option("file", ta_file, "ums file")->required();
    c_ta->add_option("--grid", ta_grid, "comma list of rationals")->required();
    c_ta->add_option("--support", ta_support, "largest subset size");
    c_ta->add_option("--eps", ta_eps, "witness tolerance");
    c_ta->add_option("--universe", ta_universe, "restrict subsets to the first k points");
    c_ta->callback([&] {
        auto s = ums::read_ums_file(ta_file);
        auto rpt = ums::injectivity_audit(s, rat_list(ta_grid), ta_support, rat_arg(ta_eps),
                                          ta_universe);
        kv(rep, "checked", std::to_string(rpt.checked));
        kv(rep, "realized", std::to_string(rpt.realized));
        kv(rep, "failures", std::to_string(rpt.failures.size()));
        size_t shown = 0;
        for (const auto& f : rpt.failures) {
            if (++shown > 20) break;
            rep.add("fail support " + join_ints(f.subset) + " values " + join_rats(f.values));
        }
    });

    std::string tx_ums, tx_prov, tx_support, tx_values, tx_out;
    int tx_level = 0;
    auto* c_tx = c_tower->add_subcommand("extend", "realize one more map on the top level");
    c_tx->add_option("ums", tx_ums, "tower ums file")->required();
    c_tx->add_option("prov", tx_prov, "tower sidecar file")->required();
    c_tx->add_option("--level", tx_level, "level the partial map lives on")->required();
    c_tx->add_option("--support", tx_support, "comma list of point indices")->required();
    c_tx->add_option("--values", tx_values, "comma list of rationals")->required();
    c_tx->add_option("--out", tx_out, "output ums path");
    c_tx->callback([&] {
        ums::TowerApprox t;
        t.space = ums::read_ums_file(tx_ums);
        auto tf = ums::read_prov_file(tx_prov);
        t.level_sizes = tf.level_sizes;
        t.origins = tf.origins;
        t.budget_exceeded = tf.budget_exceeded;
        auto grown = ums::extend_on_demand(t, tx_level, int_list(tx_support), rat_list(tx_values));
        std::string out = tx_out.empty() ? derive_out(tx_ums, "ext", ".ums") : tx_out;
        std::string prov = sidecar(out, ".prov");
        ums::write_ums_file(out, grown.space);
        ums::write_prov_file(prov, grown);
        kv(rep, "point", std::to_string(grown.space.n() - 1));
        kv(rep, "levels", join_ints(grown.level_sizes));
        kv(rep, "wrote", out);
        kv(rep, "wrote", prov);
    });

    // bnf
    std::string b_file, b_pairs, b_targets;
    auto* c_bnf = app.add_subcommand("bnf", "grow a partial self-isometry over given points");
    c_bnf->add_option("file", b_file, "ums file")->required();
    c_bnf->add_option("--pairs", b_pairs, "starting map as from:to,from:to");
    c_bnf->add_option("--targets", b_targets, "points to absorb into the domain")->required();
    c_bnf->callback([&] {
        auto s = ums::read_ums_file(b_file);
        ums::PartialIsometry p;
        if (!b_pairs.empty()) p.pairs = pair_list(b_pairs);
        auto trace = ums::back_and_forth(s, p, int_list(b_targets));
        for (const auto& st : trace.steps)
            rep.add("step " + std::to_string(st.source) + " " + std::to_string(st.target));
        if (trace.completed) {
            kv(rep, "completed", "1");
        } else {
            kv(rep, "forced", join_rats(trace.stuck_forced));
            rep.fail("Stuck " + std::to_string(trace.stuck_source));
        }
    });

    // amalgam
    std::string am_left, am_right, am_glue, am_out;
    auto* c_am = app.add_subcommand("amalgam", "glue two spaces along a partial isometry");
    c_am->add_option("left", am_left, "left ums file")->required();
    c_am->add_option("right", am_right, "right ums file")->required();
    c_am->add_option("glue", am_glue, "glue file")->required();
    c_am->add_option("--out", am_out, "output ums path");
    c_am->callback([&] {
        auto left = ums::read_ums_file(am_left);
        auto right = ums::read_ums_file(am_right);
        auto glue = ums::read_glue_file(am_glue);
        auto a = ums::amalgamate(left, right, glue);
        std::string out = am_out.empty() ? derive_out(am_left, "amalgam", ".ums") : am_out;
        ums::write_ums_file(out, a.space);
        kv(rep, "n", std::to_string(a.space.n()));
        for (const auto& [x, y] : a.merges)
            rep.add("merged " + std::to_string(x) + " " + std::to_string(y));
        kv(rep, "wrote", out);
    });

    // double
    std::string db_file, db_glued, db_out;
    auto* c_db = app.add_subcommand("double", "two copies glued over a subset, plus the swap");
    c_db->add_option("file", db_file, "ums file")->required();
    c_db->add_option("--glued", db_glued, "comma list of point indices")->required();
    c_db->add_option("--out", db_out, "output ums path");
    c_db->callback([&] {
        auto s = ums::read_ums_file(db_file);
        auto glued = int_list(db_glued);
        auto d = ums::double_with_swap(s, glued);
        std::string out = db_out.empty() ? derive_out(db_file, "double", ".ums") : db_out;
        std::string perm = sidecar(out, ".perm");
        ums::write_ums_file(out, d.space);
        std::vector<int> phi(static_cast<size_t>(d.space.n()));
        for (const auto& [a, b] : d.swap.pairs) phi[static_cast<size_t>(a)] = b;
        ums::write_perm_file(perm, phi, glued);
        kv(rep, "n", std::to_string(d.space.n()));
        kv(rep, "wrote", out);
        kv(rep, "wrote", perm);
    });

    // orbit
    std::string or_kmap, or_perm, or_out;
    int or_horizon = 1;
    auto* c_or = app.add_subcommand("orbit", "glue a shifted orbit prescribed by a map");
    c_or->add_option("kmap", or_kmap, "map file (carries its space)")->required();
    c_or->add_option("perm", or_perm, "permutation file")->required();
    c_or->add_option("--horizon", or_horizon, "orbit truncation radius");
    c_or->add_option("--out", or_out, "output ums path");
    c_or->callback([&] {
        auto km = ums::read_kmap_file(or_kmap);
        auto pf = ums::read_perm_file(or_perm);
        auto phi = ums::to_permutation(pf, km.space.n());
        auto oa = ums::orbit_amalgam(km.space, phi, km.map, or_horizon);
        std::string out = or_out.empty() ? derive_out(or_kmap, "orbit", ".ums") : or_out;
        ums::write_ums_file(out, oa.space);
        kv(rep, "horizon", std::to_string(oa.horizon));
        kv(rep, "collapsed", oa.collapsed ? "1" : "0");
        for (const auto& [off, pt] : oa.merges)
            rep.add("merged " + std::to_string(off) + " " + std::to_string(pt));
        kv(rep, "wrote", out);
    });

    // fixset build | check
    auto* c_fix = app.add_subcommand("fixset", "fixed-set preserving constructions");
    c_fix->require_subcommand(1);
    std::string fb_ums, fb_perm, fb_grid, fb_out;
    int fb_support = 1, fb_horizon = 1;
    long long fb_budget = 100000;
    auto* c_fb = c_fix->add_subcommand("build", "one level keeping the fixed set");
    c_fb->add_option("ums", fb_ums, "ums file")->required();
    c_fb->add_option("perm", fb_perm, "permutation file with base")->required();
    c_fb->add_option("--grid", fb_grid, "comma list of rationals")->required();
    c_fb->add_option("--support", fb_support, "largest support size");
    c_fb->add_option("--horizon", fb_horizon, "orbit truncation radius");
    c_fb->add_option("--budget", fb_budget, "point budget");
    c_fb->add_option("--out", fb_out, "output ums path");
    c_fb->callback([&] {
        auto s = ums::read_ums_file(fb_ums);
        auto pf = ums::read_perm_file(fb_perm);
        auto sys = ums::make_system(s, ums::to_permutation(pf, s.n()), pf.base);
        auto lvl = ums::fixed_set_level(sys, rat_list(fb_grid), fb_support, fb_horizon, fb_budget);
        std::string out = fb_out.empty() ? derive_out(fb_ums, "fixset", ".ums") : fb_out;
        std::string perm = sidecar(out, ".perm");
        ums::write_ums_file(out, lvl.system.space);
        ums::write_perm_file(perm, lvl.system.phi, lvl.system.base);
        kv(rep, "n", std::to_string(lvl.system.space.n()));
        kv(rep, "maps_used", std::to_string(lvl.maps_used));
        kv(rep, "maps_skipped", std::to_string(lvl.maps_skipped));
        kv(rep, "truncated", lvl.budget_exceeded ? "1" : "0");
        kv(rep, "wrap_slack", lvl.wrap_slack.to_string());
        kv(rep, "star_worst", lvl.star.worst.to_string());
        kv(rep, "star_pass", lvl.star.pass ? "1" : "0");
        kv(rep, "wrote", out);
        kv(rep, "wrote", perm);
    });

    std::string fc_ums, fc_perm, fc_eps = "0";
    int fc_window = 1;
    auto* c_fc = c_fix->add_subcommand("check", "asymptotic separation bound");
    c_fc->add_option("ums", fc_ums, "ums file")->required();
    c_fc->add_option("perm", fc_perm, "permutation file with base")->required();
    c_fc->add_option("--eps", fc_eps, "allowed shortfall");
    c_fc->add_option("--window", fc_window, "excluded small powers");
    c_fc->callback([&] {
        auto s = ums::read_ums_file(fc_ums);
        auto pf = ums::read_perm_file(fc_perm);
        auto sys = ums::make_system(s, ums::to_permutation(pf, s.n()), pf.base);
        auto r = ums::property_star_check(sys, rat_arg(fc_eps), fc_window);
        kv(rep, "checked", std::to_string(r.checked));
        kv(rep, "worst", r.worst.to_string());
        if (r.pass) {
            rep.lines.insert(rep.lines.begin(), "pass");
        } else {
            rep.fail("StarViolated " + std::to_string(r.worst_x1) + " " +
                     std::to_string(r.worst_x2) + " " + std::to_string(r.worst_power));
        }
    });

    // inline
    std::string in_file, in_eps, in_delta, in_extract, in_out;
    auto* c_in = app.add_subcommand("inline", "telescoping checks along a point order");
    c_in->add_option("file", in_file, "seq file")->required();
    c_in->add_option("--eps", in_eps, "overshoot tolerance to enforce");
    c_in->add_option("--delta", in_delta, "tail law tolerance to enforce");
    c_in->add_option("--extract", in_extract, "comma list of thinning tolerances");
    c_in->add_option("--out", in_out, "output seq path for --extract");
    c_in->callback([&] {
        auto sf = ums::read_seq_file(in_file);
        Rational eps = in_eps.empty() ? Rational(0) : rat_arg(in_eps);
        auto g = ums::eps_good_inline(sf.space, sf.order, eps);
        kv(rep, "worst_r", std::to_string(g.worst_r));
        kv(rep, "excess", g.worst_excess.to_string());
        kv(rep, "good", g.good ? "1" : "0");
        bool tail_bad = false;
        if (!in_delta.empty()) {
            auto t = ums::condition_c_check(sf.space, sf.order, rat_arg(in_delta));
            kv(rep, "tail", t.holds ? "1" : "0");
            if (t.holds) kv(rep, "pivot", std::to_string(*t.pivot_bound));
            tail_bad = !t.holds;
        }
        if (!in_extract.empty()) {
            auto kept = ums::extract_inline_subsequence(sf.space, sf.order, rat_list(in_extract));
            std::string out = in_out.empty() ? derive_out(in_file, "thin", ".seq") : in_out;
            ums::write_seq_file(out, ref_for(out, sf.space_path), kept);
            kv(rep, "order", join_ints(kept));
            kv(rep, "wrote", out);
        }
        if (!in_eps.empty() && !g.good)
            rep.fail("NotInline " + std::to_string(g.worst_r) + " " + g.worst_excess.to_string());
        else if (tail_bad)
            rep.fail("TailLawViolated");
    });

    // spread
    int sp_n = 0;
    std::string sp_out;
    auto* c_sp = app.add_subcommand("spread", "radial family with no inline order");
    c_sp->add_option("n", sp_n, "point count")->required();
    c_sp->add_option("--out", sp_out, "output ums path");
    c_sp->callback([&] {
        auto s = ums::euclid_spread(sp_n);
        std::string out = sp_out.empty() ? "spread" + std::to_string(sp_n) + ".ums" : sp_out;
        ums::write_ums_file(out, s);
        kv(rep, "n", std::to_string(s.n()));
        kv(rep, "wrote", out);
    });

    // fa
    std::string fa_file, fa_subsets;
    auto* c_fa = app.add_subcommand("fa", "separated map family over a spread");
    c_fa->add_option("file", fa_file, "spread ums file")->required();
    c_fa->add_option("--subsets", fa_subsets, "semicolon list of comma subsets")->required();
    c_fa->callback([&] {
        auto s = ums::read_ums_file(fa_file);
        std::vector<std::vector<int>> subsets;
        for (const auto& part : split(fa_subsets, ';')) subsets.push_back(int_list(part));
        auto fam = ums::fa_family(s, subsets);
        std::optional<Rational> minsep;
        for (size_t i = 0; i < fam.size(); ++i)
            for (size_t j = i + 1; j < fam.size(); ++j) {
                Rational d = ums::sup_distance(s, fam[i], fam[j]);
                if (!minsep || d < *minsep) minsep = d;
            }
        kv(rep, "maps", std::to_string(fam.size()));
        if (minsep) kv(rep, "min_separation", minsep->to_string());
        for (size_t i = 0; i < fam.size(); ++i)
            rep.add("map " + std::to_string(i) + " " + join_rats(fam[i].values));
    });

    // graph encode | iso
    auto* c_gr = app.add_subcommand("graph", "path metrics and isomorphism");
    c_gr->require_subcommand(1);
    std::string ge_file, ge_out;
    auto* c_ge = c_gr->add_subcommand("encode", "shortest-path metric of a connected graph");
    c_ge->add_option("file", ge_file, "graph file")->required();
    c_ge->add_option("--out", ge_out, "output ums path");
    c_ge->callback([&] {
        auto g = ums::read_graph_file(ge_file);
        auto s = ums::graph_to_metric(g);
        std::string out = ge_out.empty() ? derive_out(ge_file, "metric", ".ums") : ge_out;
        ums::write_ums_file(out, s);
        kv(rep, "n", std::to_string(s.n()));
        kv(rep, "diameter", s.diameter().to_string());
        kv(rep, "wrote", out);
    });

    std::string gi_a, gi_b;
    auto* c_gi = c_gr->add_subcommand("iso", "isometry of two path metrics");
    c_gi->add_option("first", gi_a, "graph file")->required();
    c_gi->add_option("second", gi_b, "graph file")->required();
    c_gi->callback([&] {
        auto a = ums::graph_to_metric(ums::read_graph_file(gi_a));
        auto b = ums::graph_to_metric(ums::read_graph_file(gi_b));
        auto iso = ums::find_isometry(a, b);
        if (!iso) {
            rep.fail("NotFound");
            return;
        }
        for (const auto& [x, y] : iso->pairs)
            rep.add("m " + std::to_string(x) + " " + std::to_string(y));
    });

    // trace
    std::string tr_file, tr_subset;
    int tr_point = 0;
    auto* c_tr = app.add_subcommand("trace", "distances from a point to a subset");
    c_tr->add_option("file", tr_file, "ums file")->required();
    c_tr->add_option("--subset", tr_subset, "comma list of point indices")->required();
    c_tr->add_option("--point", tr_point, "observed point")->required();
    c_tr->callback([&] {
        auto s = ums::read_ums_file(tr_file);
        auto subset = int_list(tr_subset);
        auto tr = ums::distance_trace(s, subset, tr_point);
        for (size_t i = 0; i < subset.size(); ++i)
            rep.add("t " + std::to_string(subset[i]) + " " + tr[i].to_string());
    });

    // unique
    std::string un_file, un_subset;
    auto* c_un = app.add_subcommand("unique", "does the subset separate all points");
    c_un->add_option("file", un_file, "ums file")->required();
    c_un->add_option("--subset", un_subset, "comma list of point indices")->required();
    c_un->callback([&] {
        auto s = ums::read_ums_file(un_file);
        auto r = ums::is_uniqueness_set(s, int_list(un_subset));
        if (r.unique)
            rep.add("unique");
        else
            rep.fail("NotUnique " + std::to_string(r.witness_x) + " " +
                     std::to_string(r.witness_y));
    });

    // nice
    std::string ni_file;
    auto* c_ni = app.add_subcommand("nice", "are both map inequalities strict");
    c_ni->add_option("file", ni_file, "kmap file")->required();
    c_ni->callback([&] {
        auto km = ums::read_kmap_file(ni_file);
        if (ums::is_nice(km.space, km.map.values))
            rep.add("nice");
        else
            rep.fail("NotNice");
    });

    // migrate
    std::string mg_ums, mg_perm, mg_refs, mg_values;
    int mg_point = 0;
    auto* c_mg = app.add_subcommand("migrate", "move reference values toward a wandering point");
    c_mg->add_option("ums", mg_ums, "ums file")->required();
    c_mg->add_option("perm", mg_perm, "permutation file")->required();
    c_mg->add_option("--point", mg_point, "wandering point")->required();
    c_mg->add_option("--refs", mg_refs, "comma list of fixed points")->required();
    c_mg->add_option("--values", mg_values, "comma list of rationals")->required();
    c_mg->callback([&] {
        auto s = ums::read_ums_file(mg_ums);
        auto pf = ums::read_perm_file(mg_perm);
        auto sys = ums::make_system(s, ums::to_permutation(pf, s.n()), pf.base);
        auto refs = int_list(mg_refs);
        auto m = ums::migration_map(sys, mg_point, refs, rat_list(mg_values));
        kv(rep, "rho", m.rho.to_string());
        size_t orbit = m.domain.size() - refs.size();
        for (size_t i = 0; i < orbit; ++i)
            rep.add("o " + std::to_string(m.domain[i]) + " " + m.values[i].to_string());
        static const char* words[] = {"down", "up", "keep"};
        for (size_t i = 0; i < refs.size(); ++i)
            rep.add("g " + std::to_string(m.domain[orbit + i]) + " " +
                    m.values[orbit + i].to_string() + " " + words[m.cases[i]]);
    });

    // avoid
    std::string av_file, av_targets, av_values, av_net, av_margin, av_eps = "0";
    auto* c_av = app.add_subcommand("avoid", "extension staying clear of a net");
    c_av->add_option("file", av_file, "ums file")->required();
    c_av->add_option("--targets", av_targets, "comma list of point indices")->required();
    c_av->add_option("--values", av_values, "comma list of rationals")->required();
    c_av->add_option("--net", av_net, "comma list of point indices")->required();
    c_av->add_option("--margin", av_margin, "protected radius")->required();
    c_av->add_option("--eps", av_eps, "extra clearance");
    c_av->callback([&] {
        auto s = ums::read_ums_file(av_file);
        auto targets = int_list(av_targets);
        Rational big = rat_arg(av_margin);
        Rational eps = rat_arg(av_eps);
        auto a = ums::avoidance_extension(s, targets, rat_list(av_values), int_list(av_net), big,
                                          eps);
        for (size_t i = targets.size(); i < a.domain.size(); ++i)
            rep.add("g " + std::to_string(a.domain[i]) + " " + a.values[i].to_string());
        kv(rep, "margin", a.margin.to_string());
        rep.add("certificate clearance " + a.margin.to_string() + " above level " +
                (big + eps).to_string());
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const ums::MetricError& e) {
        Report err;
        err.lines.push_back(e.report_line());
        if (!e.detail().empty()) err.lines.push_back(e.detail());
        err.code = 1;
        print_report(err);
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::overflow_error& e) {
        Report err;
        err.lines.push_back("Overflow");
        err.lines.push_back(e.what());
        err.code = 1;
        print_report(err);
        return 1;
    }

    print_report(rep);
    return rep.code;
}
