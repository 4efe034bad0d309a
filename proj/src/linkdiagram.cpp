#include "qforge/linkdiagram.hpp"

#include <map>
#include <numeric>

#include "qforge/errors.hpp"
#include "qforge/parallel.hpp"

namespace qforge {

namespace {

int arc_field(const nlohmann::json& c, const char* key, int arcs, const std::string& where)
{
    if (!c.contains(key)) throw InputError(where + ": missing \"" + key + "\"");
    const auto& v = c.at(key);
    if (!v.is_number_integer()) throw InputError(where + "." + key + ": expected an integer");
    const auto id = v.get<long>();
    if (id < 0 || id >= arcs)
        throw InputError(where + "." + key + ": arc " + std::to_string(id) + " outside [0, " + std::to_string(arcs) +
                         ")");
    return static_cast<int>(id);
}

std::vector<std::vector<int>> strand_components(int arcs, const std::vector<Crossing>& crossings)
{
    std::vector<int> parent(arcs);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (const auto& c : crossings) {
        int a = find(c.under_in), b = find(c.under_out);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    std::map<int, std::vector<int>> groups;
    for (int a = 0; a < arcs; ++a) groups[find(a)].push_back(a);
    std::vector<std::vector<int>> out;
    for (auto& [root, members] : groups) out.push_back(std::move(members));
    return out;
}

}  // namespace

DiagramCode diagram_from_json(const nlohmann::json& j)
{
    if (!j.is_object()) throw InputError("diagram: expected a JSON object");
    if (!j.contains("arcs") || !j.at("arcs").is_number_integer()) throw InputError("diagram.arcs: expected an integer");
    DiagramCode code;
    const auto arcs = j.at("arcs").get<long>();
    if (arcs < 1) throw InputError("diagram.arcs: need at least one arc");
    code.arcs = static_cast<int>(arcs);
    if (j.contains("crossings")) {
        const auto& list = j.at("crossings");
        if (!list.is_array()) throw InputError("diagram.crossings: expected an array");
        for (std::size_t n = 0; n < list.size(); ++n) {
            const std::string where = "crossings[" + std::to_string(n) + "]";
            const auto& c = list[n];
            if (!c.is_object()) throw InputError(where + ": expected an object");
            Crossing x;
            x.over = arc_field(c, "over", code.arcs, where);
            x.under_in = arc_field(c, "under_in", code.arcs, where);
            x.under_out = arc_field(c, "under_out", code.arcs, where);
            if (c.contains("sign")) {
                if (!c.at("sign").is_number_integer()) throw InputError(where + ".sign: expected 1 or -1");
                x.sign = c.at("sign").get<int>();
            }
            if (x.sign != 1 && x.sign != -1) throw InputError(where + ".sign: expected 1 or -1");
            code.crossings.push_back(x);
        }
    }

    std::vector<int> in_at(code.arcs, -1), out_at(code.arcs, -1);
    for (std::size_t n = 0; n < code.crossings.size(); ++n) {
        const auto& c = code.crossings[n];
        const std::string where = "crossings[" + std::to_string(n) + "]";
        if (in_at[c.under_in] >= 0)
            throw InputError(where + ".under_in: arc " + std::to_string(c.under_in) + " already ends at crossings[" +
                             std::to_string(in_at[c.under_in]) + "]");
        if (out_at[c.under_out] >= 0)
            throw InputError(where + ".under_out: arc " + std::to_string(c.under_out) +
                             " already starts at crossings[" + std::to_string(out_at[c.under_out]) + "]");
        in_at[c.under_in] = static_cast<int>(n);
        out_at[c.under_out] = static_cast<int>(n);
    }
    for (int a = 0; a < code.arcs; ++a)
        if ((in_at[a] >= 0) != (out_at[a] >= 0))
            throw InputError("arc " + std::to_string(a) + ": " + (in_at[a] >= 0 ? "ends" : "starts") +
                             " at an undercrossing but never " + (in_at[a] >= 0 ? "starts" : "ends") + " at one");
    code.components = strand_components(code.arcs, code.crossings);
    return code;
}

DiagramCode parse_diagram(const std::string& text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("diagram: malformed JSON at byte ") + std::to_string(e.byte) + ": " + e.what());
    }
    return diagram_from_json(j);
}

nlohmann::json to_json(const DiagramCode& code)
{
    nlohmann::json crossings = nlohmann::json::array();
    for (const auto& c : code.crossings)
        crossings.push_back({{"over", c.over}, {"under_in", c.under_in}, {"under_out", c.under_out}, {"sign", c.sign}});
    return {{"arcs", code.arcs}, {"crossings", crossings}};
}

QuandlePresentation presentation(const DiagramCode& code)
{
    QuandlePresentation p;
    p.generators = code.arcs;
    for (const auto& c : code.crossings) p.relations.push_back({c.under_in, c.over, c.under_out, c.sign});
    return p;
}

GroupPresentation wirtinger_presentation(const QuandlePresentation& pres)
{
    std::vector<std::string> names;
    for (int a = 0; a < pres.generators; ++a) names.push_back("e" + std::to_string(a));
    GroupPresentation g{Alphabet::free_group(names), {}, {}};
    std::vector<std::vector<Integer>> matrix;
    for (const auto& r : pres.relations) {
        const auto k = static_cast<std::size_t>(r.k), j = static_cast<std::size_t>(r.j),
                   i = static_cast<std::size_t>(r.i);
        g.relators.push_back(GroupWord::from_syllables({{i, -1}, {j, -r.sign}, {k, 1}, {j, r.sign}}, g.generators));
        std::vector<Integer> row(pres.generators, 0);
        row[k] += 1;
        row[i] -= 1;
        matrix.push_back(std::move(row));
    }
    g.abelianization = abelian_invariants(matrix, static_cast<std::size_t>(pres.generators));
    return g;
}

namespace {

bool satisfied(const Relation& r, const std::vector<int>& color, const TableRack& rack)
{
    const int lhs = r.sign > 0 ? rack.op(color[r.k], color[r.j]) : rack.op_inv(color[r.k], color[r.j]);
    return lhs == color[r.i];
}

}  // namespace

ColoringResult count_colorings(const QuandlePresentation& pres, const TableRack& rack)
{
    const int s = pres.generators;
    const int m = rack.size();
    for (const auto& r : pres.relations)
        for (int a : {r.k, r.j, r.i})
            if (a < 0 || a >= s) throw InputError("relation refers to generator " + std::to_string(a));

    // A relation is checked as soon as its highest arc is colored.
    std::vector<std::vector<Relation>> due(s);
    for (const auto& r : pres.relations) due[std::max({r.k, r.j, r.i})].push_back(r);

    std::vector<std::uint64_t> counts(m, 0);
    std::vector<std::vector<std::vector<int>>> found(m);
    parallel_chunks(static_cast<std::size_t>(m), [&](std::size_t begin, std::size_t end, std::size_t) {
        for (std::size_t first = begin; first < end; ++first) {
            std::vector<int> color(s, -1);
            std::function<void(int)> extend = [&](int arc) {
                if (arc == s) {
                    ++counts[first];
                    if (found[first].size() <= kListedColorings) found[first].push_back(color);
                    return;
                }
                const int lo = arc == 0 ? static_cast<int>(first) : 0;
                const int hi = arc == 0 ? static_cast<int>(first) + 1 : m;
                for (int c = lo; c < hi; ++c) {
                    color[arc] = c;
                    bool ok = true;
                    for (const auto& r : due[arc])
                        if (!satisfied(r, color, rack)) {
                            ok = false;
                            break;
                        }
                    if (ok) extend(arc + 1);
                }
                color[arc] = -1;
            };
            extend(0);
        }
    });

    ColoringResult result;
    for (int c = 0; c < m; ++c) result.count += counts[c];
    if (result.count <= kListedColorings)
        for (int c = 0; c < m; ++c)
            for (auto& col : found[c]) result.colorings.push_back(std::move(col));

    double states = 1;
    for (int a = 0; a < s; ++a) states *= m;
    if (states <= static_cast<double>(kBruteForceLimit)) {
        std::uint64_t brute = 0;
        std::vector<int> color(s, 0);
        const auto total = static_cast<std::uint64_t>(states);
        for (std::uint64_t t = 0; t < total; ++t) {
            std::uint64_t rest = t;
            for (int a = 0; a < s; ++a) {
                color[a] = static_cast<int>(rest % m);
                rest /= m;
            }
            bool ok = true;
            for (const auto& r : pres.relations)
                if (!satisfied(r, color, rack)) {
                    ok = false;
                    break;
                }
            if (ok) ++brute;
        }
        if (brute != result.count)
            throw CertificationFailure("coloring search found " + std::to_string(result.count) +
                                       " colorings, enumeration found " + std::to_string(brute));
        result.brute_force_checked = true;
    }
    return result;
}

nlohmann::json to_json(const QuandlePresentation& pres)
{
    nlohmann::json rel = nlohmann::json::array();
    for (const auto& r : pres.relations) rel.push_back({{"k", r.k}, {"j", r.j}, {"i", r.i}, {"sign", r.sign}});
    return {{"generators", pres.generators}, {"relations", rel}};
}

}  // namespace qforge
