#include "boollat/cli.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace boollat;

namespace {

struct CliResult {
    int code = 0;
    std::string out;
    std::string err;
};

CliResult invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

Json parse_report(const CliResult& r) { return Json::parse(r.out); }

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("count reports the exact antichain count", "[cli]") {
    CliResult r = invoke({"count", "--graph", "comparability:n=3"});
    REQUIRE(r.code == 0);
    Json rep = parse_report(r);
    CHECK(rep["tool"] == "boollat");
    CHECK(rep["command"] == "count");
    CHECK(rep["config"]["graph"] == "comparability:n=3");
    CHECK(rep["count"] == "20");

    CliResult max = invoke({"count", "--graph", "comparability:n=4", "--mode", "max"});
    REQUIRE(max.code == 0);
    Json mrep = parse_report(max);
    CHECK(mrep["count"] == "6");
    CHECK(mrep["witness"].size() == 6);
}

TEST_CASE("bounds reports exact rationals with an approximation", "[cli]") {
    Json h = parse_report(invoke({"bounds", "--family", "hamming", "--n", "7", "--t", "1"}));
    CHECK(h["bound"]["num"] == "16");
    CHECK(h["bound"]["den"] == "1");

    Json t = parse_report(
        invoke({"bounds", "--family", "transport", "--n", "4", "--k", "2", "--d", "3"}));
    CHECK(t["bound"]["num"] == "3");
    CHECK(t["bound"]["den"] == "2");
    CHECK(t["bound"]["approx"] == "1.500000");

    Json k = parse_report(invoke({"bounds", "--family", "katona", "--n", "4", "--t", "2"}));
    CHECK(k["bound"]["num"] == "5");
    CHECK(k["bound"]["den"] == "1");
}

TEST_CASE("reports are byte-identical across reruns and thread counts", "[cli]") {
    std::vector<std::string> cont{"containers", "--graph", "hamming:n=3,t=1", "--delta", "4,2",
                                  "--switch", "6"};
    CliResult a = invoke(cont);
    CliResult b = invoke(cont);
    std::vector<std::string> cont4 = cont;
    cont4.insert(cont4.end(), {"--threads", "4"});
    CliResult c = invoke(cont4);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);

    std::vector<std::string> rk{"random-katona", "--n",      "6", "--t",    "1",
                                "--p",           "1/2",      "--trials", "3", "--seed", "11"};
    CHECK(invoke(rk).out == invoke(rk).out);
}

TEST_CASE("supersat passes report bound, witness, and exit code", "[cli]") {
    CliResult r = invoke({"supersat", "--lemma", "kleitman", "--n", "3", "--x", "2", "--mode",
                          "exhaustive"});
    REQUIRE(r.code == 0);
    Json rep = parse_report(r);
    CHECK(rep["family_size"] == 5);
    CHECK(rep["bound"]["num"] == "4");
    CHECK(rep["exhaustive"] == true);
    CHECK(rep["pass"] == true);
    CHECK(rep["witness"].size() == 5);

    CliResult tr = invoke({"supersat", "--lemma", "transport", "--n", "4", "--k", "2", "--x", "1",
                           "--mode", "exhaustive"});
    REQUIRE(tr.code == 0);
    Json trep = parse_report(tr);
    for (const auto& w : trep["witness"])
        CHECK(w.get<std::string>().find('|') != std::string::npos);
}

TEST_CASE("failed checks exit with code 2", "[cli]") {
    auto path = temp_file("boollat-cli-skew.txt");
    {
        std::ofstream f(path);
        f << "n=2\n0 1\n1 2\n";
    }
    CliResult r = invoke({"construct", "--what", "skew-check", "--file", path.string(), "--a", "1",
                          "--b", "1"});
    CHECK(r.code == 2);
    Json rep = parse_report(r);
    CHECK(rep["pass"] == false);
    CHECK(rep["order_violations"] == 1);

    auto overlap = temp_file("boollat-cli-isp.txt");
    {
        std::ofstream f(overlap);
        f << "n=2\n1 1\n";
    }
    CHECK(invoke({"construct", "--what", "isp-check", "--file", overlap.string()}).code == 2);
    std::filesystem::remove(path);
    std::filesystem::remove(overlap);
}

TEST_CASE("usage and data errors exit with code 1", "[cli]") {
    CliResult unknown = invoke({"count", "--graph", "comparability:n=3", "--nope"});
    CHECK(unknown.code == 1);
    CHECK_FALSE(unknown.err.empty());

    CHECK(invoke({"count", "--graph", "comparability:n=23"}).code == 1);
    CHECK(invoke({"count", "--graph", "comparability:n=6", "--budget-nodes", "50"}).code == 1);
    CHECK(invoke({"construct", "--what", "fT", "--n", "4", "--k", "2"}).code == 1);

    auto bad = temp_file("boollat-cli-bad.txt");
    {
        std::ofstream f(bad);
        f << "n=2\n1 zz\n";
    }
    CHECK(invoke({"construct", "--what", "isp-check", "--file", bad.string()}).code == 1);
    std::filesystem::remove(bad);

    CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("patch families round-trip through the family file format", "[cli]") {
    auto path = temp_file("boollat-cli-patch.txt");
    CliResult r = invoke({"construct", "--what", "fT", "--n", "4", "--k", "2", "--B", "6", "--r",
                          "4", "--s", "2", "--family-out", path.string()});
    REQUIRE(r.code == 0);
    Json rep = parse_report(r);
    CHECK(rep["family"]["members"] == Json::array({"5", "b", "e"}));

    std::ifstream in(path);
    Family f = read_family(in);
    CHECK(f.n == 4);
    CHECK(f.members == std::vector<SetMask>{0x5, 0xb, 0xe});
    std::filesystem::remove(path);
}

TEST_CASE("csv output is a flat key-value projection", "[cli]") {
    CliResult r = invoke({"bounds", "--family", "transport", "--n", "4", "--k", "2", "--d", "3",
                          "--format", "csv"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("key,value\n", 0) == 0);
    CHECK(r.out.find("bound.num,3\n") != std::string::npos);
    CHECK(r.out.find("config.family,transport\n") != std::string::npos);
}
