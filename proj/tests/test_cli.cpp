#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"

using nlohmann::json;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args)
{
    const std::string cmd = std::string(QFORGE_CLI) + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

std::string data(const std::string& name)
{
    return std::string(QFORGE_DATA) + "/" + name;
}

std::string temp_file(const std::string& name, const std::string& content)
{
    const auto path = std::filesystem::temp_directory_path() / ("qforge_test_" + name);
    std::ofstream(path) << content;
    return path.string();
}

}  // namespace

TEST_CASE("axioms")
{
    const auto r = run("axioms " + data("t2.json"));
    REQUIRE(r.status == 0);
    const auto j = json::parse(r.out);
    CHECK(j.at("quandle") == true);
    CHECK(j.at("components") == 2);
    CHECK(j.at("inn_order") == 1);
    const auto bad = run("axioms " + data("not_quandle.json"));
    REQUIRE(bad.status == 0);
    CHECK(json::parse(bad.out).at("quandle") == false);
}

TEST_CASE("cohomology and links")
{
    const auto c = run("cohomology " + data("r3.json") + " --degree 2 --theory quandle");
    REQUIRE(c.status == 0);
    CHECK(json::parse(c.out).at("dimension") == 0);
    const auto l = run("link " + data("trefoil.json") + " " + data("r3.json"));
    REQUIRE(l.status == 0);
    CHECK(json::parse(l.out).at("colorings") == 9);
    CHECK(json::parse(l.out).at("abelianization") == "Z");
}

TEST_CASE("exit codes")
{
    CHECK(run("axioms /nonexistent.json").status == 2);
    CHECK(run("cohomology " + data("r3.json") + " --degree 7").status == 2);
    CHECK(run("frobnicate").status == 2);
    const auto broken = temp_file("broken.json", "{\"size\": 2, ");
    const auto r = run("axioms " + broken);
    CHECK(r.status == 2);
    CHECK(json::parse(r.out).at("error") == "input");

    const auto wrong = temp_file("wrong_defect.json",
                                 R"({"generators": ["a", "b"], "quasimorphism": {"kind": "count", "word": "ab", "defect_upper": "1/2"}})");
    const auto cert = run("qm " + wrong + " --radius 3");
    CHECK(cert.status == 1);
    CHECK(json::parse(cert.out).at("error") == "certification");
}

TEST_CASE("repeat runs are byte-identical")
{
    const std::string args = "classes " + data("fq_ab.json") + " " + data("hcount_ab.json") + " --radius 3 --seed 7";
    const auto a = run(args), b = run(args);
    REQUIRE(a.status == 0);
    CHECK(a.out == b.out);
    const auto j = json::parse(a.out);
    CHECK(j.at("certified") == true);
    CHECK(j.at("seed") == 7);
    const auto q1 = run("qm " + data("qm_commutator.json")), q2 = run("qm " + data("qm_commutator.json"));
    CHECK(q1.out == q2.out);
}

TEST_CASE("output file")
{
    const auto path = (std::filesystem::temp_directory_path() / "qforge_test_out.json").string();
    std::filesystem::remove(path);
    REQUIRE(run("cohomology " + data("t2.json") + " --out " + path).status == 0);
    std::ifstream in(path);
    CHECK(json::parse(in).at("dimension") == 2);
}
