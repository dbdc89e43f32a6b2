#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    const char* cli = std::getenv("A2B_CLI");
    REQUIRE(cli);
    std::string cmd = std::string(cli) + " " + args + " 2>/dev/null";
    Run r;
    FILE* f = popen(cmd.c_str(), "r");
    REQUIRE(f);
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, f)) > 0) r.out.append(buf, n);
    int st = pclose(f);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path workdir() {
    fs::path d = fs::temp_directory_path() / ("a2b_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
}

}  // namespace

TEST_CASE("gen writes valid scenes deterministically") {
    fs::path d = workdir();
    Run a = run("gen --p 5 --n 4 --seed 3 --out " + (d / "a.json").string());
    REQUIRE(a.code == 0);
    json summary = json::parse(a.out);
    CHECK(summary["is_sset"] == true);
    CHECK(summary["shifts"].size() == 4);
    Run b = run("gen --p 5 --n 4 --seed 3 --out " + (d / "b.json").string());
    CHECK(b.code == 0);
    CHECK(slurp(d / "a.json") == slurp(d / "b.json"));
    json scene = json::parse(slurp(d / "a.json"));
    CHECK(scene["p"] == 5);
    CHECK(scene["flags"].size() == 4);
}

TEST_CASE("duplicate flags are rejected with a certificate") {
    fs::path d = workdir();
    Run a = run("gen --p 2 --n 4 --shape duplicate --seed 1 --out " + (d / "dup.json").string());
    REQUIRE(a.code == 0);
    json summary = json::parse(a.out);
    CHECK(summary["is_sset"] == false);
    CHECK_FALSE(summary["certificate"].get<std::string>().empty());
    CHECK(run("tree --scene " + (d / "dup.json").string()).code != 0);
}

TEST_CASE("tree command") {
    fs::path d = workdir();
    REQUIRE(run("gen --p 2 --n 3 --shape symmetric --out " + (d / "sym.json").string()).code == 0);
    Run t = run("tree --scene " + (d / "sym.json").string() + " --out " + (d / "symtree").string());
    REQUIRE(t.code == 0);
    CHECK(t.out.find("ends: eta0 eta1 eta2") != std::string::npos);
    CHECK(t.out.find("edge v") == std::string::npos);
    CHECK(fs::exists(d / "symtree.dot"));
    json tj = json::parse(slurp(d / "symtree.json"));
    CHECK(tj["four_point_failures"] == 0);

    REQUIRE(run("gen --p 3 --n 6 --seed 4 --out " + (d / "six.json").string()).code == 0);
    Run six = run("tree --scene " + (d / "six.json").string() + " --out " + (d / "sixtree").string());
    CHECK(six.code == 0);
    CHECK(six.out.find("four-point condition: exact pass") != std::string::npos);
    std::string first = slurp(d / "sixtree.json");
    REQUIRE(run("tree --scene " + (d / "six.json").string() + " --out " + (d / "sixtree").string()).code == 0);
    CHECK(slurp(d / "sixtree.json") == first);

    REQUIRE(run("gen --p 2 --shape four-point --seed 2 --out " + (d / "four.json").string()).code == 0);
    Run four = run("tree --scene " + (d / "four.json").string());
    CHECK(four.code == 0);
    CHECK(four.out.find("graph") != std::string::npos);
}

TEST_CASE("verify exit codes and reproducible reports") {
    fs::path d = workdir();
    REQUIRE(run("gen --p 2 --n 3 --seed 5 --out " + (d / "s.json").string()).code == 0);
    std::string scene = " --scene " + (d / "s.json").string();
    Run ok = run("verify" + scene + " --suite kset --samples 30 --out " + (d / "r1.json").string());
    CHECK(ok.code == 0);
    CHECK(ok.out.find("exit 0") != std::string::npos);
    Run again = run("verify" + scene + " --suite kset --samples 30 --out " + (d / "r2.json").string());
    CHECK(again.code == 0);
    CHECK(slurp(d / "r1.json") == slurp(d / "r2.json"));
    json rep = json::parse(slurp(d / "r1.json"));
    CHECK(rep["exit_code"] == 0);
    CHECK(rep["reports"][0]["violations"].empty());

    CHECK(run("verify" + scene + " --suite kset --samples 30 --plant balls").code == 2);
    CHECK(run("verify" + scene + " --suite kset --samples 30 --plant slab").code == 2);
    CHECK(run("verify" + scene + " --suite thicken --samples 20 --plant wide").code == 3);
    CHECK(run("verify" + scene + " --suite bogus").code == 3);
    CHECK(run("verify --scene " + (d / "missing.json").string()).code != 0);
}

TEST_CASE("render") {
    fs::path d = workdir();
    REQUIRE(run("gen --p 2 --n 4 --seed 6 --out " + (d / "s.json").string()).code == 0);
    std::string scene = " --scene " + (d / "s.json").string();
    Run f = run("render" + scene + " --flat 0,1 --render-grid 6");
    REQUIRE(f.code == 0);
    CHECK(f.out.rfind("<svg", 0) == 0);
    CHECK(f.out.find("stroke=\"#ccc\"") != std::string::npos);
    Run t = run("render" + scene + " --tree --out " + (d / "t.svg").string());
    CHECK(t.code == 0);
    CHECK(slurp(d / "t.svg").find("<svg") != std::string::npos);
    CHECK(run("render" + scene + " --flat 0,7").code != 0);
    fs::remove_all(d);
}
