#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ums/katetov.hpp"
#include "ums/metric_space.hpp"
#include "ums/tower.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int code = -1;
    std::string out;
};

fs::path fresh_dir(const std::string& name) {
    fs::path d = fs::temp_directory_path() / "ums_cli_tests" / name;
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

RunResult run_in(const fs::path& dir, const std::string& args) {
    std::string cmd = "cd '" + dir.string() + "' && UMS_COLOR=0 '" UMS_BINARY "' " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[512];
    while (size_t got = fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, got);
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

void put(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string first_line(const std::string& text) {
    auto nl = text.find('\n');
    return nl == std::string::npos ? text : text.substr(0, nl);
}

const std::string kEquilateral = "ums v1\nn 3\nd 0 1 1\nd 0 2 1\nd 1 2 1\nend\n";

} // namespace

TEST_CASE("validate reports size and diameter") {
    auto dir = fresh_dir("validate_ok");
    put(dir / "one.ums", "ums v1\nn 1\nend\n");
    auto r = run_in(dir, "validate one.ums");
    CHECK(r.code == 0);
    CHECK(r.out == "ok n 1\ndiameter 0\n");
}

TEST_CASE("validate names the violated axiom first") {
    auto dir = fresh_dir("validate_bad");
    put(dir / "bad.ums", "ums v1\nn 3\nd 0 1 1\nd 0 2 3\nd 1 2 1\nend\n");
    auto r = run_in(dir, "validate bad.ums");
    CHECK(r.code == 1);
    CHECK(first_line(r.out) == "TriangleViolation 0 1 2");
}

TEST_CASE("usage problems exit with code two") {
    auto dir = fresh_dir("usage");
    CHECK(run_in(dir, "").code == 2);
    CHECK(run_in(dir, "validate").code == 2);
    CHECK(run_in(dir, "validate --nope x.ums").code == 2);
    CHECK(run_in(dir, "no_such_command").code == 2);
    CHECK(run_in(dir, "--help").code == 0);
    CHECK(run_in(dir, "tower build --help").code == 0);
}

TEST_CASE("missing input files are a domain failure") {
    auto dir = fresh_dir("missing");
    auto r = run_in(dir, "validate ghost.ums");
    CHECK(r.code == 1);
    CHECK(first_line(r.out) == "FileError");
}

TEST_CASE("tower build grows one level and records provenance") {
    auto dir = fresh_dir("tower_build");
    put(dir / "seed1.ums", "ums v1\nn 1\nend\n");
    auto r = run_in(dir, "tower build --depth 1 --grid 1,2 --support 1 seed1.ums");
    CHECK(r.code == 0);
    CHECK(r.out == "levels 1 3\ntruncated 0\nwrote seed1.tower.ums\nwrote seed1.tower.prov\n");
    CHECK(slurp(dir / "seed1.tower.ums") ==
          "ums v1\nn 3\nd 0 1 1\nd 0 2 2\nd 1 2 1\nend\n");
    auto prov = ums::read_prov_file((dir / "seed1.tower.prov").string());
    CHECK(prov.level_sizes == std::vector<int>{1, 3});
    REQUIRE(prov.origins.size() == 2);
    CHECK(prov.origins[0].values == std::vector<ums::Rational>{ums::Rational(1)});
}

TEST_CASE("identical invocations produce identical bytes") {
    auto a = fresh_dir("det_a");
    auto b = fresh_dir("det_b");
    for (const auto& dir : {a, b}) {
        put(dir / "seed1.ums", "ums v1\nn 1\nend\n");
        auto r = run_in(dir, "tower build --depth 2 --grid 1,2 --support 2 seed1.ums");
        CHECK(r.code == 0);
    }
    CHECK(slurp(a / "seed1.tower.ums") == slurp(b / "seed1.tower.ums"));
    CHECK(slurp(a / "seed1.tower.prov") == slurp(b / "seed1.tower.prov"));
}

TEST_CASE("tower audit lists unrealized maps") {
    auto dir = fresh_dir("tower_audit");
    put(dir / "two.ums", "ums v1\nn 2\nd 0 1 1\nend\n");
    auto r = run_in(dir, "tower audit --grid 1 --support 2 --eps 0 two.ums");
    CHECK(r.code == 0);
    CHECK(r.out == "checked 3\nrealized 2\nfailures 1\nfail support 0 1 values 1 1\n");

    put(dir / "equi.ums", kEquilateral);
    auto clean = run_in(dir, "tower audit --grid 1 --support 1 equi.ums");
    CHECK(clean.code == 0);
    CHECK(clean.out == "checked 3\nrealized 3\nfailures 0\n");
}

TEST_CASE("tower extend realizes one more map and refuses duplicates") {
    auto dir = fresh_dir("tower_extend");
    put(dir / "seed1.ums", "ums v1\nn 1\nend\n");
    REQUIRE(run_in(dir, "tower build --depth 1 --grid 1,2 --support 1 seed1.ums").code == 0);

    auto r = run_in(dir, "tower extend seed1.tower.ums seed1.tower.prov"
                         " --level 0 --support 0 --values 3/2 --out grown.ums");
    CHECK(r.code == 0);
    CHECK(r.out == "point 3\nlevels 1 4\nwrote grown.ums\nwrote grown.prov\n");
    CHECK(run_in(dir, "validate grown.ums").code == 0);

    auto dup = run_in(dir, "tower extend seed1.tower.ums seed1.tower.prov"
                           " --level 0 --support 0 --values 1");
    CHECK(dup.code == 1);
    CHECK(first_line(dup.out) == "DuplicatePoint 1");
}

TEST_CASE("graph encode writes the path metric") {
    auto dir = fresh_dir("graph_encode");
    put(dir / "c4.graph", "graph v1\nn 4\ne 0 1\ne 1 2\ne 2 3\ne 0 3\nend\n");
    auto r = run_in(dir, "graph encode c4.graph --out c4.ums");
    CHECK(r.code == 0);
    CHECK(r.out == "n 4\ndiameter 2\nwrote c4.ums\n");
    CHECK(slurp(dir / "c4.ums") ==
          "ums v1\nn 4\nd 0 1 1\nd 0 2 2\nd 0 3 1\nd 1 2 1\nd 1 3 2\nd 2 3 1\nend\n");
}

TEST_CASE("graph iso finds a matching or reports none") {
    auto dir = fresh_dir("graph_iso");
    put(dir / "c4.graph", "graph v1\nn 4\ne 0 1\ne 1 2\ne 2 3\ne 0 3\nend\n");
    put(dir / "p4.graph", "graph v1\nn 4\ne 0 1\ne 1 2\ne 2 3\nend\n");
    auto no = run_in(dir, "graph iso c4.graph p4.graph");
    CHECK(no.code == 1);
    CHECK(first_line(no.out) == "NotFound");

    auto yes = run_in(dir, "graph iso c4.graph c4.graph");
    CHECK(yes.code == 0);
    CHECK(yes.out == "m 0 0\nm 1 1\nm 2 2\nm 3 3\n");
}

TEST_CASE("map enumeration is ordered and counted") {
    auto dir = fresh_dir("kat_enum");
    put(dir / "two.ums", "ums v1\nn 2\nd 0 1 1\nend\n");
    auto r = run_in(dir, "katetov enumerate --grid 1,2 --support 2 two.ums");
    CHECK(r.code == 0);
    CHECK(r.out == "count 6\nmap 1 2\nmap 2 3\nmap 2 1\nmap 3 2\nmap 1 1\nmap 2 2\n");
}

TEST_CASE("map files are checked and extended") {
    auto dir = fresh_dir("kat_ext");
    put(dir / "equi.ums", kEquilateral);
    put(dir / "ones.kmap", "kmap v1\nspace equi.ums\nn 3\nv 0 1\nv 1 1\nv 2 1\nend\n");
    auto ok = run_in(dir, "katetov check ones.kmap");
    CHECK(ok.code == 0);
    CHECK(ok.out == "ok n 3\n");

    put(dir / "low.kmap", "kmap v1\nspace equi.ums\nn 3\nv 0 2\nv 1 2\nv 2 2\nsupport 0 1\nend\n");
    auto bad = run_in(dir, "katetov check low.kmap");
    CHECK(bad.code == 1);
    CHECK(first_line(bad.out) == "SupportMismatch 2");

    auto ext = run_in(dir, "katetov extend --support 0 --values 3 --out ext.kmap equi.ums");
    CHECK(ext.code == 0);
    CHECK(ext.out == "support 0\nv 0 3\nv 1 4\nv 2 4\nwrote ext.kmap\n");
    auto back = ums::read_kmap_file((dir / "ext.kmap").string());
    CHECK(back.map.values ==
          std::vector<ums::Rational>{ums::Rational(3), ums::Rational(4), ums::Rational(4)});
    REQUIRE(back.map.support.has_value());
    CHECK(*back.map.support == std::vector<int>{0});
}

TEST_CASE("partial self isometries grow or get stuck") {
    auto dir = fresh_dir("bnf");
    put(dir / "equi.ums", kEquilateral);
    auto done = run_in(dir, "bnf --targets 0,1 equi.ums");
    CHECK(done.code == 0);
    CHECK(done.out == "step 0 0\nstep 1 1\ncompleted 1\n");

    put(dir / "wedge.ums", "ums v1\nn 3\nd 0 1 1\nd 0 2 2\nd 1 2 1\nend\n");
    auto stuck = run_in(dir, "bnf --pairs 1:2 --targets 0 wedge.ums");
    CHECK(stuck.code == 1);
    CHECK(stuck.out == "Stuck 0\nforced 1\n");
}

TEST_CASE("gluing two segments along a point") {
    auto dir = fresh_dir("amalgam");
    put(dir / "L.ums", "ums v1\nn 2\nd 0 1 1\nend\n");
    put(dir / "R.ums", "ums v1\nn 2\nd 0 1 2\nend\n");
    put(dir / "a.glue", "glue v1\ng 0 0\nend\n");
    auto r = run_in(dir, "amalgam --out am.ums L.ums R.ums a.glue");
    CHECK(r.code == 0);
    CHECK(r.out == "n 3\nwrote am.ums\n");
    CHECK(slurp(dir / "am.ums") == "ums v1\nn 3\nd 0 1 1\nd 0 2 2\nd 1 2 3\nend\n");
}

TEST_CASE("doubling writes the space and its swap") {
    auto dir = fresh_dir("double");
    put(dir / "pair2.ums", "ums v1\nn 2\nd 0 1 2\nend\n");
    auto r = run_in(dir, "double --glued 0 --out dbl.ums pair2.ums");
    CHECK(r.code == 0);
    CHECK(r.out == "n 3\nwrote dbl.ums\nwrote dbl.perm\n");
    CHECK(slurp(dir / "dbl.ums") == "ums v1\nn 3\nd 0 1 2\nd 0 2 2\nd 1 2 4\nend\n");
    CHECK(slurp(dir / "dbl.perm") == "perm v1\nm 0 0\nm 1 2\nm 2 1\nbase 0\nend\n");
}

TEST_CASE("orbit gluing labels the new walk") {
    auto dir = fresh_dir("orbit");
    put(dir / "one.ums", "ums v1\nn 1\nend\n");
    put(dir / "one.kmap", "kmap v1\nspace one.ums\nn 1\nv 0 1\nend\n");
    put(dir / "id1.perm", "perm v1\nm 0 0\nbase 0\nend\n");
    auto r = run_in(dir, "orbit --horizon 1 --out orb.ums one.kmap id1.perm");
    CHECK(r.code == 0);
    CHECK(r.out == "horizon 1\ncollapsed 0\nwrote orb.ums\n");
    CHECK(slurp(dir / "orb.ums") ==
          "ums v1\nn 4\nlabels 0 y-1 y0 y1\nd 0 1 1\nd 0 2 1\nd 0 3 1\n"
          "d 1 2 2\nd 1 3 2\nd 2 3 2\nend\n");
    CHECK(run_in(dir, "validate orb.ums").code == 0);
}

TEST_CASE("fixed set levels report their construction") {
    auto dir = fresh_dir("fixset");
    put(dir / "one.ums", "ums v1\nn 1\nend\n");
    put(dir / "id1.perm", "perm v1\nm 0 0\nbase 0\nend\n");
    auto r = run_in(dir, "fixset build --grid 1 --support 1 --horizon 1 --out fx.ums"
                         " one.ums id1.perm");
    CHECK(r.code == 0);
    CHECK(r.out == "n 4\nmaps_used 1\nmaps_skipped 0\ntruncated 0\nwrap_slack 0\n"
                   "star_worst 0\nstar_pass 1\nwrote fx.ums\nwrote fx.perm\n");
    CHECK(slurp(dir / "fx.perm") == "perm v1\nm 0 0\nm 1 2\nm 2 3\nm 3 1\nbase 0\nend\n");

    auto chk = run_in(dir, "fixset check fx.ums fx.perm");
    CHECK(chk.code == 0);
    CHECK(chk.out == "pass\nchecked 0\nworst 0\n");
}

TEST_CASE("trace prints distances from a point") {
    auto dir = fresh_dir("trace");
    put(dir / "equi.ums", kEquilateral);
    auto r = run_in(dir, "trace --point 2 --subset 0,1 equi.ums");
    CHECK(r.code == 0);
    CHECK(r.out == "t 0 1\nt 1 1\n");
    auto self = run_in(dir, "trace --point 0 --subset 0,1 equi.ums");
    CHECK(self.out == "t 0 0\nt 1 1\n");
}

TEST_CASE("uniqueness of trace extensions is decided with witnesses") {
    auto dir = fresh_dir("unique");
    put(dir / "equi.ums", kEquilateral);
    auto whole = run_in(dir, "unique --subset 0,1,2 equi.ums");
    CHECK(whole.code == 0);
    CHECK(whole.out == "unique\n");
    auto part = run_in(dir, "unique --subset 0 equi.ums");
    CHECK(part.code == 1);
    CHECK(first_line(part.out) == "NotUnique 1 2");
}

TEST_CASE("strictness of the defining inequalities") {
    auto dir = fresh_dir("nice");
    put(dir / "pair2.ums", "ums v1\nn 2\nd 0 1 2\nend\n");
    put(dir / "nice2.kmap", "kmap v1\nspace pair2.ums\nn 2\nv 0 2\nv 1 2\nend\n");
    auto r = run_in(dir, "nice nice2.kmap");
    CHECK(r.code == 0);
    CHECK(r.out == "nice\n");

    put(dir / "tight.kmap", "kmap v1\nspace pair2.ums\nn 2\nv 0 1\nv 1 1\nend\n");
    auto not_nice = run_in(dir, "nice tight.kmap");
    CHECK(not_nice.code == 1);
    CHECK(first_line(not_nice.out) == "NotNice");
}

TEST_CASE("migration reports the orbit constant and each reference case") {
    auto dir = fresh_dir("migrate");
    put(dir / "pa.ums", "ums v1\nn 3\nd 0 1 1\nd 0 2 5\nd 1 2 5\nend\n");
    put(dir / "swap.perm", "perm v1\nm 0 1\nm 1 0\nm 2 2\nbase 2\nend\n");
    auto r = run_in(dir, "migrate --point 0 --refs 2 --values 5 pa.ums swap.perm");
    CHECK(r.code == 0);
    CHECK(r.out == "rho 1\no 0 1/2\no 1 1/2\ng 2 5 keep\n");

    auto fixed = run_in(dir, "migrate --point 2 --refs 2 --values 5 pa.ums swap.perm");
    CHECK(fixed.code == 1);
    CHECK(first_line(fixed.out) == "HypothesisViolated 2");
}

TEST_CASE("avoidance extensions certify their clearance") {
    auto dir = fresh_dir("avoid");
    put(dir / "pair3.ums", "ums v1\nn 2\nd 0 1 3\nend\n");
    auto r = run_in(dir, "avoid --targets 0 --values 1 --net 1 --margin 1 --eps 3 pair3.ums");
    CHECK(r.code == 0);
    CHECK(r.out == "g 1 4\nmargin 0\ncertificate clearance 0 above level 4\n");

    put(dir / "pair2.ums", "ums v1\nn 2\nd 0 1 2\nend\n");
    auto low = run_in(dir, "avoid --targets 0 --values 1 --net 1 --margin 1 --eps 3 pair2.ums");
    CHECK(low.code == 1);
    CHECK(first_line(low.out) == "MarginViolated 1");
}

TEST_CASE("walk reports cover overshoot and the tail law") {
    auto dir = fresh_dir("inline");
    put(dir / "equi.ums", kEquilateral);
    put(dir / "walk.seq", "seq v1\nspace equi.ums\norder 0 1 2\nend\n");
    auto tight = run_in(dir, "inline --eps 0 walk.seq");
    CHECK(tight.code == 1);
    CHECK(tight.out == "NotInline 2 1\nworst_r 2\nexcess 1\ngood 0\n");
    auto loose = run_in(dir, "inline --eps 1 walk.seq");
    CHECK(loose.code == 0);
    CHECK(loose.out == "worst_r 2\nexcess 1\ngood 1\n");
    auto tail = run_in(dir, "inline --delta 0 walk.seq");
    CHECK(tail.code == 1);
    CHECK(first_line(tail.out) == "TailLawViolated");
}

TEST_CASE("thinning a walk writes the kept subsequence") {
    auto dir = fresh_dir("extract");
    std::ostringstream line;
    line << "ums v1\nn 7\n";
    for (int i = 0; i < 7; ++i)
        for (int j = i + 1; j < 7; ++j) line << "d " << i << " " << j << " " << (j - i) << "\n";
    line << "end\n";
    put(dir / "line7.ums", line.str());
    put(dir / "shuf.seq", "seq v1\nspace line7.ums\norder 0 2 1 4 3 6 5\nend\n");
    auto r = run_in(dir, "inline --extract 0 --out thin.seq shuf.seq");
    CHECK(r.code == 0);
    CHECK(r.out == "worst_r 6\nexcess 6\ngood 0\norder 0 2 4 6\nwrote thin.seq\n");
    CHECK(slurp(dir / "thin.seq") == "seq v1\nspace line7.ums\norder 0 2 4 6\nend\n");
}

TEST_CASE("the spread family and its separated maps") {
    auto dir = fresh_dir("spread");
    auto r = run_in(dir, "spread 3 --out sp3.ums");
    CHECK(r.code == 0);
    CHECK(r.out == "n 3\nwrote sp3.ums\n");
    CHECK(slurp(dir / "sp3.ums") ==
          "ums v1\nn 3\nlabels o x1 x2\nd 0 1 1\nd 0 2 2\nd 1 2 2\nend\n");

    auto fam = run_in(dir, "fa --subsets \"1;2\" sp3.ums");
    CHECK(fam.code == 0);
    CHECK(fam.out == "maps 2\nmin_separation 3\nmap 0 2 1 3\nmap 1 4 4 2\n");
}
