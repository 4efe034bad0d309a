// qforge: command-line front end. Every run prints exactly one JSON document.
//
// Exit status: 0 success, 1 certification failure, 2 input error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qforge/boundedclasses.hpp"
#include "qforge/cohomology.hpp"
#include "qforge/errors.hpp"
#include "qforge/linkdiagram.hpp"
#include "qforge/quandle.hpp"
#include "qforge/quasimorphism.hpp"

using nlohmann::json;
using namespace qforge;

namespace {

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  int radius = 3;
  std::uint64_t samples = 10000;
  std::uint64_t seed = 1;
  int n_max = 32;
  int degree = 2;
  std::string theory = "quandle";
  std::size_t part = 0;
  std::string out;
  // classes
  std::string mode = "full";
  std::size_t trials = 20;
  std::vector<std::int64_t> en = {0, 1, 2, 3, 4};
  std::int64_t en_range = 100;
  std::vector<std::string> generators = {"a", "b"};
  int k = 3;
  std::string word = "ab";
};

json read_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
        return json::parse(buffer.str());
    } catch (const json::parse_error& e) {
        throw InputError(path + ": malformed JSON at byte " + std::to_string(e.byte));
    }
}

std::string read_text(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

const std::string& input(const RunConfig& cfg, std::size_t i, const char* what)
{
    if (cfg.inputs.size() <= i) throw InputError(std::string("missing input: ") + what);
    return cfg.inputs[i];
}

Alphabet alphabet_from_json(const json& j)
{
    auto names = j.at("generators").get<std::vector<std::string>>();
    std::vector<int> orders(names.size(), kInfiniteOrder);
    if (j.contains("orders")) {
        const auto& o = j.at("orders");
        if (o.size() != names.size()) throw InputError("\"orders\" must match \"generators\"");
        for (std::size_t i = 0; i < o.size(); ++i)
            orders[i] = o[i].is_null() || (o[i].is_string() && o[i] == "inf") ? kInfiniteOrder : o[i].get<int>();
    }
    return Alphabet(std::move(names), std::move(orders));
}

json cmd_axioms(const RunConfig& cfg)
{
    const auto table = operation_table_from_json(read_json(input(cfg, 0, "table")));
    const auto report = check_axioms(table);
    json out = {{"command", "axioms"},
                {"size", table.size()},
                {"rack", report.is_rack()},
                {"quandle", report.is_quandle()},
                {"message", report.message}};
    if (report.idempotence_witness) out["idempotence_witness"] = *report.idempotence_witness;
    if (report.column_witness) out["column_witness"] = {report.column_witness->first, report.column_witness->second};
    if (report.distributivity_witness) out["distributivity_witness"] = *report.distributivity_witness;
    if (report.is_rack()) {
        const TableRack rack(table);
        const auto comps = components(rack);
        out["components"] = comps.size();
        out["orbits"] = comps;
        const auto order = inner_group_order(rack);
        out["inn_order"] = order.fits_ulong_p() ? json(order.get_ui()) : json(order.get_str());
        out["diameters"] = component_diameter(rack);
        if (rack.is_quandle()) out["env_abelianization"] = env_presentation(rack).abelianization.to_string();
    }
    return out;
}

json cmd_cohomology(const RunConfig& cfg)
{
    const auto rack = table_rack_from_json(read_json(input(cfg, 0, "table")));
    const auto theory = parse_theory(cfg.theory);
    const auto dim = cohomology_dimension(rack, cfg.degree, theory);
    json out = {{"command", "cohomology"}, {"degree", cfg.degree}, {"theory", to_string(theory)}, {"dimension", dim}};
    if (cfg.degree == 2) {
        const auto cmp = bounded_comparison_finite(rack, 2, theory);
        out["bounded_dimension"] = cmp.bounded_cohomology;
        out["comparison_kernel"] = cmp.comparison_kernel;
    }
    return out;
}

// {"generators": [...], "orders": [...], "quasimorphism": {...},
//  "evaluate": ["ab", ...], "scl": ["aba^-1b^-1", ...]}
json cmd_qm(const RunConfig& cfg)
{
    const auto doc = read_json(input(cfg, 0, "quasimorphism input"));
    const auto A = alphabet_from_json(doc);
    const auto phi = quasimorphism_from_json(doc.at("quasimorphism"), A);
    json out = {{"command", "qm"}, {"seed", cfg.seed}, {"radius", cfg.radius}};
    out["quasimorphism"] = to_json(phi, A);

    const auto hat = phi.kind() == Quasimorphism::Kind::kCounting || phi.kind() == Quasimorphism::Kind::kHomomorphism
                         ? homogenize(phi, A)
                         : phi;
    out["homogenized"] = to_json(hat, A);

    if (doc.contains("evaluate")) {
        json values = json::object();
        for (const auto& w : doc.at("evaluate")) {
            const auto g = parse_word(w.get<std::string>(), A);
            values[format_word(g, A)] = {{"value", to_string(eval(phi, g, A))},
                                         {"homogenized", to_string(eval(hat, g, A))}};
        }
        out["values"] = values;
    }

    const auto m = measure_defect(phi, A, cfg.radius, cfg.samples, cfg.seed);
    out["defect"] = {{"measured", to_string(m.value)},
                     {"upper", to_string(phi.defect_upper())},
                     {"exhaustive", m.exhaustive},
                     {"pairs", m.pairs}};
    if (hat.homogeneous()) {
        const auto r = restriction_is_zero_on_commutators(hat, A, cfg.radius);
        out["commutators"] = {{"max_abs", to_string(r.max_abs)},
                              {"argmax", format_word(r.argmax, A)},
                              {"elements", r.elements},
                              {"within_defect", r.within_defect}};
    }
    if (doc.contains("scl")) {
        json bounds = json::array();
        for (const auto& w : doc.at("scl")) {
            const auto g = parse_word(w.get<std::string>(), A);
            const auto b = scl_lower_bound(g, {hat}, A);
            bounds.push_back({{"element", format_word(g, A)}, {"lower", to_string(b.lower)}});
        }
        out["scl"] = bounds;
    }
    out["empirical"] = phi.empirical();
    return out;
}

json envelope(const std::string& kind, json parameters, bool certified, bool empirical, json witnesses,
              std::uint64_t seed)
{
    return {{"kind", kind},
            {"parameters", std::move(parameters)},
            {"certified", certified},
            {"empirical", empirical},
            {"witnesses", std::move(witnesses)},
            {"seed", seed}};
}

json cmd_classes(const RunConfig& cfg)
{
    if (cfg.mode == "en") {
        const auto r = en_family_report(cfg.en, -cfg.en_range, cfg.en_range);
        const bool ok = r.coboundary_bounded && r.unit_above_n && r.linear_growth && r.pairwise_distinct &&
                        r.coboundary_rank == cfg.en.size();
        return envelope("en_family", {{"n", cfg.en}, {"range", {-cfg.en_range, cfg.en_range}}}, ok, false,
                        json::array({to_json(r)}), cfg.seed);
    }
    if (cfg.mode == "kquandle") {
        const auto r = k_quandle_pipeline(cfg.generators, cfg.k, cfg.word, cfg.n_max, cfg.radius, cfg.samples,
                                          cfg.seed);
        return envelope("k_quandle",
                        {{"generators", cfg.generators}, {"k", cfg.k}, {"word", cfg.word}, {"n_max", cfg.n_max},
                         {"radius", cfg.radius}, {"samples", cfg.samples}},
                        r.certified, r.phi.empirical(), json::array({to_json(r)}), cfg.seed);
    }
    if (cfg.mode != "full") throw InputError("unknown classes mode '" + cfg.mode + "' (full, en, kquandle)");

    const auto X = coset_quandle_from_json(read_json(input(cfg, 0, "coset quandle")));
    const auto& A = X.alphabet();
    const auto doc = read_json(input(cfg, 1, "quasimorphism"));
    const auto phi = quasimorphism_from_json(doc.contains("quasimorphism") ? doc.at("quasimorphism") : doc, A);
    const auto phi_x = build_phi_X(X, phi, cfg.part);

    json witnesses = json::array();
    bool certified = true;
    const auto defect = defect_report(phi_x, cfg.radius, cfg.samples, cfg.seed);
    witnesses.push_back({{"defect", to_json(defect, A)}});
    if (phi_x.base()) {
        witnesses.push_back({{"growth", to_json(growth_certificate(phi_x, cfg.n_max), A)}});
    } else {
        certified = false;
        witnesses.push_back({{"growth", nullptr}, {"warning", *phi_x.warning()}});
    }
    const auto chooser = chooser_independence(X, phi, cfg.part, ChooserRule::kShortest, ChooserRule::kShifted,
                                              cfg.radius, 1000, cfg.seed);
    witnesses.push_back({{"chooser", to_json(chooser)}});

    if (doc.contains("family")) {
        std::vector<QuandleQuasimorphism> family;
        for (const auto& f : doc.at("family")) family.push_back(build_phi_X(X, quasimorphism_from_json(f, A), cfg.part));
        const auto ind = independence_certificate(family, cfg.trials, kDefaultBaseRadius, cfg.n_max, cfg.seed);
        witnesses.push_back({{"independence", to_json(ind, A)}});
    }
    return envelope("phi_x",
                    {{"quandle", to_json(X)}, {"quasimorphism", to_json(phi, A)}, {"part", cfg.part},
                     {"radius", cfg.radius}, {"samples", cfg.samples}, {"n_max", cfg.n_max}},
                    certified, phi.empirical(), witnesses, cfg.seed);
}

json cmd_link(const RunConfig& cfg)
{
    const auto code = parse_diagram(read_text(input(cfg, 0, "diagram")));
    const auto pres = presentation(code);
    const auto wirtinger = wirtinger_presentation(pres);
    json out = {{"command", "link"},
                {"arcs", code.arcs},
                {"crossings", code.crossings.size()},
                {"components", code.components.size()},
                {"presentation", to_json(pres)},
                {"abelianization", wirtinger.abelianization.to_string()}};
    if (cfg.inputs.size() > 1) {
        const auto rack = table_rack_from_json(read_json(cfg.inputs[1]));
        if (!rack.is_quandle()) throw InputError("colorings need a quandle table");
        const auto result = count_colorings(pres, rack);
        out["colorings"] = result.count;
        out["brute_force_checked"] = result.brute_force_checked;
        if (result.count <= kListedColorings) out["coloring_list"] = result.colorings;
    }
    return out;
}

void emit(const json& doc, const std::string& out)
{
    const std::string text = doc.dump(2) + "\n";
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(out);
    if (!file) throw InputError("cannot write " + out);
    file << text;
}

}  // namespace

int main(int argc, char** argv)
{
    RunConfig cfg;
    CLI::App app{"qforge: racks, quandles, quasimorphisms and bounded cohomology"};
    app.require_subcommand(1);
    app.add_option("--out", cfg.out, "Write the JSON document to this file");

    auto common = [&](CLI::App* sub, const char* inputs_help) {
        sub->add_option("inputs", cfg.inputs, inputs_help);
        sub->add_option("--radius", cfg.radius, "Word-ball radius")->capture_default_str();
        sub->add_option("--samples", cfg.samples, "Sampled pairs when exhaustive scans are too large")
            ->capture_default_str();
        sub->add_option("--seed", cfg.seed, "Seed for all sampling")->capture_default_str();
        sub->add_option("--n-max", cfg.n_max, "Largest power in growth certificates")->capture_default_str();
        sub->add_option("--degree", cfg.degree, "Cohomology degree")->capture_default_str();
        sub->add_option("--theory", cfg.theory, "rack or quandle")->capture_default_str();
        sub->add_option("--part", cfg.part, "Part index i0 of the coset quandle")->capture_default_str();
        sub->add_option("--out", cfg.out, "Write the JSON document to this file");
    };
    auto* axioms = app.add_subcommand("axioms", "Axioms, orbits, Inn order and diameters of a table");
    common(axioms, "TABLE.json");
    auto* cohomology = app.add_subcommand("cohomology", "Rack or quandle cohomology dimension");
    common(cohomology, "TABLE.json");
    auto* qm = app.add_subcommand("qm", "Group quasimorphism evaluation, defect and scl bounds");
    common(qm, "QM.json");
    auto* classes = app.add_subcommand("classes", "Bounded 2-cocycle certificates");
    common(classes, "QUANDLE.json QM.json");
    classes->add_option("--mode", cfg.mode, "full, en or kquandle")->capture_default_str();
    classes->add_option("--trials", cfg.trials, "Coefficient trials for independence")->capture_default_str();
    classes->add_option("--en", cfg.en, "Indices n of the e_n family")->delimiter(',');
    classes->add_option("--en-range", cfg.en_range, "Check e_n on [-R, R]")->capture_default_str();
    classes->add_option("--generators", cfg.generators, "Generators of FQ_k")->delimiter(',');
    classes->add_option("--k", cfg.k, "Order k of FQ_k")->capture_default_str();
    classes->add_option("--word", cfg.word, "Counting word")->capture_default_str();
    auto* link = app.add_subcommand("link", "Presentation, Wirtinger abelianization and colorings");
    common(link, "DIAGRAM.json [TABLE.json]");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        std::cout << json{{"error", "input"}, {"message", e.what()}}.dump(2) << "\n";
        return 2;
    }

    try {
        json doc;
        if (*axioms) doc = cmd_axioms(cfg);
        if (*cohomology) doc = cmd_cohomology(cfg);
        if (*qm) doc = cmd_qm(cfg);
        if (*classes) doc = cmd_classes(cfg);
        if (*link) doc = cmd_link(cfg);
        emit(doc, cfg.out);
        return 0;
    } catch (const CertificationFailure& e) {
        std::cerr << "certification failure: " << e.what() << "\n";
        emit(json{{"error", "certification"}, {"message", e.what()}, {"seed", cfg.seed}}, cfg.out);
        return 1;
    } catch (const std::exception& e) {
        // InputError, PreconditionError, DomainError and JSON access errors.
        std::cerr << "input error: " << e.what() << "\n";
        try {
            emit(json{{"error", "input"}, {"message", e.what()}}, cfg.out);
        } catch (const std::exception&) {
        }
        return 2;
    }
}
