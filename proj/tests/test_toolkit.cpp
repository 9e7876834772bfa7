#include "doctest.h"

#include "hcb/toolkit.hpp"

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

using namespace hcb;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        std::string tmpl = (fs::temp_directory_path() / "hcb-test-XXXXXX").string();
        path = mkdtemp(tmpl.data());
    }
    ~TempDir() { fs::remove_all(path); }
};

int run(const std::string& args, const fs::path& dir) {
    std::string cmd = "cd '" + dir.string() + "' && '" HCB_CLI "' " + args + " >out.txt 2>err.txt";
    int st = std::system(cmd.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::vector<fs::path> filesIn(const fs::path& d) {
    std::vector<fs::path> out;
    if (!fs::exists(d)) return out;
    for (auto& e : fs::directory_iterator(d)) out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("config files") {
    RunConfig c = parseConfig("# numerics\ndigits = 60\ntolerance = 1e-12\n\njobs=2\nout-dir = results # here\n");
    CHECK(c.digits == 60);
    CHECK(c.tolerance == "1e-12");
    CHECK(c.jobs == 2);
    CHECK(c.outDir == fs::path("results"));
    CHECK_NOTHROW(c.validate());
    CHECK_THROWS_WITH(parseConfig("digits = 40\nspeed = 3\n"), doctest::Contains("config line 2"));
    CHECK_THROWS(parseConfig("digits 40\n"));
    RunConfig bad;
    bad.digits = 8;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = RunConfig{};
    bad.tolerance = "1e-20";
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = RunConfig{};
    bad.jobs = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("result cache") {
    TempDir t;
    ResultCache c(t.path / "cache");
    CHECK(c.enabled());
    CHECK_FALSE(c.get("op", "in").has_value());
    int calls = 0;
    auto compute = [&] {
        ++calls;
        return std::string("value\nwith lines\n");
    };
    CHECK(c.fetch("op", "in", compute) == "value\nwith lines\n");
    CHECK(c.fetch("op", "in", compute) == "value\nwith lines\n");
    CHECK(calls == 1);
    CHECK(c.key("op", "in") != c.key("op", "in2"));
    CHECK(c.key("op", "in") != c.key("op2", "in"));
    // A different tool version does not see the entry.
    ResultCache other(t.path / "cache", "hcb 0.9");
    CHECK_FALSE(other.get("op", "in").has_value());
    CHECK(other.key("op", "in") != c.key("op", "in"));
    // A disabled cache always computes.
    ResultCache off{fs::path{}};
    CHECK_FALSE(off.enabled());
    off.fetch("op", "in", compute);
    CHECK(calls == 2);
}

TEST_CASE("atomic writes leave no temporaries") {
    TempDir t;
    fs::path p = t.path / "a.txt";
    atomicWrite(p, "one");
    atomicWrite(p, "two");
    CHECK(readFile(p) == "two");
    CHECK(filesIn(t.path).size() == 1);
    CHECK_THROWS(readFile(t.path / "missing"));
}

TEST_CASE("factorizations of series denominators") {
    // [PAPER] 7^4, 5*7^7*11, 5^2*7^10*11^2*13
    CHECK(factorText(2401) == "7^4");
    CHECK(factorText(45294865) == "5*7^7*11");
    CHECK(factorText(mpz_class("11108339166925")) == "5^2*7^10*11^2*13");
    CHECK(factorText(1) == "1");
    auto f = factorInteger(mpz_class("1000003") * 1000033);  // both prime, above the trial limit
    mpz_class prod = 1;
    for (auto& [p, e] : f)
        for (int i = 0; i < e; ++i) prod *= p;
    CHECK(prod == mpz_class("1000003") * 1000033);
}

TEST_CASE("parallel map keeps index order") {
    std::atomic<int> calls{0};
    auto out = parallelMap(50, 4, [&](int i) {
        ++calls;
        return std::to_string(i * i);
    });
    REQUIRE(out.size() == 50);
    for (int i = 0; i < 50; ++i) CHECK(out[static_cast<size_t>(i)] == std::to_string(i * i));
    CHECK(calls == 50);
    CHECK(parallelMap(0, 3, [](int) { return std::string(); }).empty());
}

TEST_CASE("command line exit codes") {
    TempDir t;
    CHECK(run("--no-cache --out o bt series --order 4 --emit csv", t.path) == 0);
    std::string csv = readFile(t.path / "o" / "bt_series_4.csv");
    CHECK(csv.find("3,-30024/45294865,5*7^7*11") != std::string::npos);
    CHECK(run("--no-cache --out o bt certify --n 1/4 --b 89/368 --k 3", t.path) == 0);
    fs::path cert = t.path / "o" / "bt_n1_4_b89_368_k3.cert";
    REQUIRE(fs::exists(cert));
    CHECK(run("verify o/bt_n1_4_b89_368_k3.cert", t.path) == 0);
    // Tampered certificate: exit 1.
    std::string text = readFile(cert);
    auto at = text.find("b 89/368");
    REQUIRE(at != std::string::npos);
    text.replace(at, 8, "b 90/368");
    atomicWrite(t.path / "bad.cert", text);
    CHECK(run("verify bad.cert", t.path) == 1);
    // Irrational eigenvalues: indeterminate.
    CHECK(run("--no-cache --out o bt certify --n 1/4 --b 3/10 --k 3", t.path) == 2);
    CHECK(run("frobnicate", t.path) == 64);
    CHECK(run("bt series --order x", t.path) == 64);
}

TEST_CASE("cache is transparent to the artifacts") {
    TempDir t;
    const std::string cmd = " --out o bt certify --n 1/4 --b 103/228 --k 3";
    const std::string cache = "--cache-dir '" + (t.path / "c").string() + "'";
    for (const char* d : {"plain", "cold", "warm"}) fs::create_directory(t.path / d);
    REQUIRE(run("--no-cache" + cmd, t.path / "plain") == 0);
    REQUIRE(run(cache + cmd, t.path / "cold") == 0);
    REQUIRE(run(cache + cmd, t.path / "warm") == 0);
    CHECK_FALSE(filesIn(t.path / "c").empty());
    auto plain = filesIn(t.path / "plain" / "o");
    REQUIRE_FALSE(plain.empty());
    for (const char* d : {"cold", "warm"}) {
        auto other = filesIn(t.path / d / "o");
        REQUIRE(other.size() == plain.size());
        for (size_t i = 0; i < plain.size(); ++i) {
            CHECK(other[i].filename() == plain[i].filename());
            CHECK(readFile(other[i]) == readFile(plain[i]));
        }
    }
}
