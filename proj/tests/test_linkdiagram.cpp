#include "doctest.h"

#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "qforge/errors.hpp"
#include "qforge/linkdiagram.hpp"

using namespace qforge;

namespace {

DiagramCode load(const std::string& name)
{
    std::ifstream in(std::string(QFORGE_DATA) + "/" + name);
    std::stringstream s;
    s << in.rdbuf();
    return parse_diagram(s.str());
}

std::vector<std::array<int, 4>> raw(const QuandlePresentation& p)
{
    std::vector<std::array<int, 4>> out;
    for (const auto& r : p.relations) out.push_back({r.k, r.j, r.i, r.sign});
    return out;
}

DiagramCode mirror_dual(DiagramCode code)
{
    for (auto& c : code.crossings) {
        std::swap(c.under_in, c.under_out);
        c.sign = -c.sign;
    }
    return code;
}

}  // namespace

TEST_CASE("parsing")
{
    const auto unknot = parse_diagram(R"({"arcs": 1, "crossings": []})");
    CHECK(unknot.arcs == 1);
    CHECK(presentation(unknot).relations.empty());
    const auto trefoil = load("trefoil.json");
    CHECK(trefoil.crossings.size() == 3);
    CHECK(trefoil.components.size() == 1);
    CHECK(to_json(trefoil).at("arcs") == 3);

    CHECK_THROWS_AS(parse_diagram("{\"arcs\": 1, "), InputError);
    CHECK_THROWS_AS(parse_diagram(R"({"arcs": 2, "crossings": [{"over": 5, "under_in": 0, "under_out": 1, "sign": 1}]})"),
                    InputError);
    CHECK_THROWS_AS(parse_diagram(R"({"arcs": 2, "crossings": [{"over": 0, "under_in": 0, "under_out": 1, "sign": 2}]})"),
                    InputError);
    // Two crossings both ending arc 1.
    CHECK_THROWS_AS(parse_diagram(R"({"arcs": 2, "crossings": [
        {"over": 0, "under_in": 0, "under_out": 1, "sign": 1},
        {"over": 0, "under_in": 1, "under_out": 1, "sign": 1}]})"),
                    InputError);
    try {
        parse_diagram(R"({"arcs": 2, "crossings": [{"over": 9, "under_in": 0, "under_out": 1, "sign": 1}]})");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("crossings[0]") != std::string::npos);
    }
}

TEST_CASE("presentations")
{
    const auto pres = presentation(load("trefoil.json"));
    CHECK(pres.generators == 3);
    REQUIRE(pres.relations.size() == 3);
    CHECK(pres.relations[0] == Relation{0, 1, 2, 1});
    CHECK(pres.relations[1] == Relation{1, 2, 0, 1});
    CHECK(pres.relations[2] == Relation{2, 0, 1, 1});
    const auto kink = presentation(parse_diagram(R"({"arcs": 1, "crossings": [{"over": 0, "under_in": 0, "under_out": 0, "sign": 1}]})"));
    CHECK(kink.relations[0] == Relation{0, 0, 0, 1});
    CHECK(wirtinger_presentation(kink).abelianization.to_string() == "Z");
}

TEST_CASE("Wirtinger abelianization")
{
    CHECK(wirtinger_presentation(presentation(load("unknot.json"))).abelianization.to_string() == "Z");
    CHECK(wirtinger_presentation(presentation(load("unlink2.json"))).abelianization.to_string() == "Z^2");
    for (const char* name : {"trefoil.json", "trefoil_kink.json", "figure_eight.json"})
        CHECK(wirtinger_presentation(presentation(load(name))).abelianization.to_string() == "Z");
    const auto w = wirtinger_presentation(presentation(load("trefoil.json")));
    CHECK(w.relators.size() == 3);
}

TEST_CASE("coloring counts")
{
    const auto r3 = dihedral_quandle(3), r5 = dihedral_quandle(5);
    const auto trefoil = presentation(load("trefoil.json"));
    const auto fig8 = presentation(load("figure_eight.json"));
    CHECK(count_colorings(trefoil, r3).count == 9);
    CHECK(count_colorings(trefoil, r5).count == 5);
    CHECK(count_colorings(trefoil, trivial_quandle(2)).count == 2);
    CHECK(count_colorings(fig8, r5).count == 25);
    CHECK(count_colorings(fig8, r3).count == 3);
    CHECK(count_colorings(presentation(load("trefoil_kink.json")), r3).count == 9);
    for (int n = 1; n <= 7; ++n) CHECK(count_colorings(presentation(load("unknot.json")), dihedral_quandle(n)).count == n);
    CHECK(count_colorings(presentation(load("unlink2.json")), r3).count == 9);
    const auto res = count_colorings(trefoil, r3);
    CHECK(res.brute_force_checked);
    CHECK(res.colorings.size() == 9);
}

TEST_CASE("colorings agree with the brute-force oracle")
{
    std::vector<TableRack> racks{dihedral_quandle(3), dihedral_quandle(4), dihedral_quandle(5), dihedral_quandle(7),
                                 alexander_quandle(5, 2), trivial_quandle(3),
                                 conjugation_quandle(symmetric_group_generators(3))};
    for (const char* name : {"trefoil.json", "trefoil_kink.json", "figure_eight.json", "unlink2.json"}) {
        const auto code = load(name);
        const auto pres = presentation(code);
        for (const auto& X : racks) {
            const auto expected = oracle::brute_force_colorings(pres.generators, raw(pres), X.table());
            CHECK(count_colorings(pres, X).count == expected);
            CHECK(count_colorings(presentation(mirror_dual(code)), X).count == expected);
            CHECK(expected >= X.size());
        }
    }
}
