#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

const std::string cli = TAMITL_CLI;
const std::string models = TAMITL_MODELS;

int run(const std::string& args) {
    int st = std::system((cli + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream o;
    o << f.rdbuf();
    return o.str();
}

fs::path scratch() {
    auto d = fs::temp_directory_path() / ("tamitl-cli-" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
}

}  // namespace

TEST_CASE("exit codes follow the verdict") {
    auto m = models + "/fischer2.ta";
    CHECK(run("check --model " + m + " --property " + models + "/properties/live-one.mitl --bound 10") == 0);
    CHECK(run("check --model " + m + " --property " + models + "/properties/live-five.mitl --bound 10") == 1);
    CHECK(run("check --model " + m + " --formula 'F[0,3] p1.cs' --bound 10 --timeout 0.001") == 2);
}

TEST_CASE("usage and input errors") {
    auto m = models + "/fischer2.ta";
    CHECK(run("check --model " + m + " --formula 'p1.cs' --bound 1") == 64);
    CHECK(run("check --model " + m + " --bound 5") == 64);
    CHECK(run("frobnicate") == 64);
    CHECK(run("check --model " + m + " --formula 'F[2,2] p1.cs' --bound 5") == 65);
    CHECK(run("check --model " + m + " --formula 'F[0,2] nobody.home' --bound 5") == 65);
    CHECK(run("check --model " + m + " --formula 'G[0,2' --bound 5") == 65);
    CHECK(run("check --model " + m + " --formula 'p1.cs' --bound 5 --edges open-closed") == 65);
}

TEST_CASE("emitted artifacts are byte identical across runs") {
    auto d = scratch();
    auto args = "check --model " + models + "/csma2.ta --property " + models +
                "/properties/live-csma.mitl --bound 6 --solver true";
    REQUIRE(run(args + " --emit-smt " + (d / "a.smt2").string() + " --emit-cltloc " + (d / "a.cltloc").string()) == 2);
    REQUIRE(run(args + " --emit-smt " + (d / "b.smt2").string() + " --emit-cltloc " + (d / "b.cltloc").string()) == 2);
    CHECK(slurp(d / "a.smt2") == slurp(d / "b.smt2"));
    CHECK(slurp(d / "a.cltloc") == slurp(d / "b.cltloc"));
    CHECK(fs::file_size(d / "a.smt2") > 1000);
    fs::remove_all(d);
}

TEST_CASE("stats and generators") {
    auto d = scratch();
    auto stats = d / "s.json";
    CHECK(run("check --model " + models + "/fischer2.ta --property " + models +
              "/properties/live-two.mitl --bound 8 --stats " + stats.string()) == 0);
    auto s = slurp(stats);
    CHECK(s.find("\"verdict\": \"holds\"") != std::string::npos);
    CHECK(s.find("\"bound\": 8") != std::string::npos);
    CHECK(run("gen --family token-ring --n 3") == 0);
    CHECK(run("gen --family csma --n 2 --property live-one") == 64);
    fs::remove_all(d);
}
