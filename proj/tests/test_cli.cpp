#include "doctest.h"

#include "json.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

const std::string cli = PRODREL_CLI;
const std::string fx = std::string(FIXTURE_DIR) + "/";

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    Run r;
    std::string cmd = cli + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf;
    for (std::size_t n; (n = fread(buf.data(), 1, buf.size(), p)) > 0;)
        r.out.append(buf.data(), n);
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

nlohmann::json js(const Run& r) { return nlohmann::json::parse(r.out); }

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("sa") {
    auto r = run("sa " + fx + "toy_half.poly --level 2 --project --report /tmp/prodrel_cli_sa.json");
    CHECK(r.code == 0);
    CHECK(r.out == "vars: x1 x2\n-1 0 <= 0\n0 -1 <= 0\n1 1 <= 1\n");
    auto rep = nlohmann::json::parse(slurp("/tmp/prodrel_cli_sa.json"));
    CHECK(rep["checks"][0]["status"] == "PASS");
    CHECK(rep["equals_integer_hull"] == true);

    auto echo = run("sa " + fx + "toy_half.poly --level 0");
    CHECK(echo.code == 0);
    CHECK(echo.out == slurp(fx + "toy_half.poly"));

    run("sa " + fx + "knapsack3.poly --level 3 --project --report /tmp/prodrel_cli_sa3.json");
    CHECK(nlohmann::json::parse(slurp("/tmp/prodrel_cli_sa3.json"))["equals_integer_hull"] == true);

    auto lifted = run("sa " + fx + "toy_half.poly --level 1");
    CHECK(lifted.code == 0);
    CHECK(lifted.out.rfind("vars: x1 x2 z{1,2}\n", 0) == 0);
}

TEST_CASE("translate") {
    auto ok = run("translate " + fx + "duplicate_q.poly " + fx + "duplicate.section");
    CHECK(ok.code == 0);
    CHECK(js(ok)["status"] == "PASS");
    auto dj = run("translate " + fx + "disjunctive_q.poly " + fx + "disjunctive.section");
    CHECK(dj.code == 0);
    CHECK(js(dj)["checks"].size() == 5);
    auto bad = run("translate " + fx + "duplicate_q.poly " + fx + "duplicate_corrupt.section");
    CHECK(bad.code == 1);
    auto b = js(bad);
    CHECK(b["status"] == "FAIL");
    CHECK(b["checks"][0]["witness"].get<std::string>().find("(1,0)") != std::string::npos);
}

TEST_CASE("corelab") {
    auto tri = run("corelab " + fx + "triangle_core.vp " + fx + "square_dhat.vp");
    CHECK(tri.code == 0);
    CHECK(js(tri)["bound"] == 3);
    CHECK(js(tri)["edges_found"] == 3);
    auto one = run("corelab " + fx + "single_core.vp " + fx + "square_dhat.vp");
    CHECK(js(one)["bound"] == 1);
    auto edge = run("corelab " + fx + "one_edge_core.vp " + fx + "square_dhat.vp --max-arity 3");
    CHECK(js(edge)["edges_found"] == 1);
    CHECK(run("corelab " + fx + "square_dhat.vp " + fx + "square_dhat.vp").code == 1);
}

TEST_CASE("cfl") {
    auto vp = run("cfl verify-pair --n 5 --window 30");
    CHECK(vp.code == 0);
    auto v = js(vp);
    CHECK(v["instance"]["m"] == 626);
    CHECK(v["pair"]["overlap"] == 4);
    CHECK(v["gap"]["frac_cost"] == "160/93");
    for (const auto& c : v["checks"])
        CHECK(c["status"] == "PASS");

    auto gt = run("cfl gap-table");
    CHECK(gt.code == 0);
    auto g = js(gt);
    CHECK(g["rows"].size() == 29);
    CHECK(g["rows"][1]["frac_cost"] == "160/93");
    CHECK(g["first_ratio_above_one"] == 10);

    auto csv = run("cfl gap-table --from 4 --to 5 --format csv");
    CHECK(csv.out == "n,frac_cost,ratio,ratio_decimal,scaled,scaled_decimal\n"
                     "4,32/15,15/32,0.46875,15/16,0.9375\n"
                     "5,160/93,93/160,0.5812499999999999,31/32,0.96875\n");

    auto ef = run("cfl exact-ef --capacity 1,1 --clients 1");
    CHECK(ef.code == 0);
    CHECK(js(ef)["rows"] == 53);
}

TEST_CASE("sa-bound") {
    auto r = run("sa-bound --n 20 --level 2 --r 3 --delta 1/2");
    CHECK(r.code == 0);
    auto j = js(r);
    CHECK(j["bound_at_t"] == "2280");
    CHECK(j["max_t_within"] == 2);
    CHECK(j["rows"].size() == 11);
}

TEST_CASE("determinism") {
    CHECK(run("cfl verify-pair --n 5 --window 20 --seed 7").out == run("cfl verify-pair --n 5 --window 20 --seed 7").out);
    CHECK(run("corelab " + fx + "triangle_core.vp " + fx + "square_dhat.vp --jobs 3").out ==
          run("corelab " + fx + "triangle_core.vp " + fx + "square_dhat.vp").out);
    run("cfl gap-table --out /tmp/prodrel_cli_gt1.json");
    run("cfl gap-table --out /tmp/prodrel_cli_gt2.json");
    CHECK(slurp("/tmp/prodrel_cli_gt1.json") == slurp("/tmp/prodrel_cli_gt2.json"));
}

TEST_CASE("input errors exit 2") {
    CHECK(run("").code == 2);
    CHECK(run("sa /nonexistent.poly --level 1").code == 2);
    CHECK(run("cfl verify-pair --n 3").code == 2);
    CHECK(run("cfl verify-pair --n 5 --l 5,6,7,8,9 --l2 5,6,7,8,9").code == 2);
    CHECK(run("cfl gap-table --format xml").code == 2);
    CHECK(run("sa " + fx + "toy_half.poly --level -1").code == 2);
    CHECK(run("sa-bound --n 10 --delta x").code == 2);
}
