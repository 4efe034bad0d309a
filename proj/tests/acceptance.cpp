// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qforge/boundedclasses.hpp"
#include "qforge/cohomology.hpp"
#include "qforge/errors.hpp"
#include "qforge/linkdiagram.hpp"
#include "qforge/quandle.hpp"
#include "qforge/quasimorphism.hpp"

using namespace qforge;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

void expect(Outcome& o, bool cond, const std::string& what)
{
    if (!cond && o.ok) {
        o.ok = false;
        o.detail = what;
    }
}

std::string data(const std::string& name)
{
    return std::string(QFORGE_DATA) + "/" + name;
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

int cli_status(const std::string& args)
{
    const std::string cmd = std::string(QFORGE_CLI) + " " + args + " >/dev/null 2>&1";
    const int raw = std::system(cmd.c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

// Exhaustive classification written against the raw table.
std::string classify(const std::vector<std::vector<int>>& op)
{
    const int n = static_cast<int>(op.size());
    for (int y = 0; y < n; ++y) {
        std::vector<bool> seen(n, false);
        for (int x = 0; x < n; ++x) {
            if (seen[op[x][y]]) return "neither";
            seen[op[x][y]] = true;
        }
    }
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                if (op[op[x][y]][z] != op[op[x][z]][op[y][z]]) return "neither";
    for (int x = 0; x < n; ++x)
        if (op[x][x] != x) return "rack";
    return "quandle";
}

std::string classify(const AxiomReport& r)
{
    return r.is_quandle() ? "quandle" : r.is_rack() ? "rack" : "neither";
}

std::vector<TableRack> quandle_corpus()
{
    std::vector<TableRack> out;
    for (int n = 3; n <= 12; ++n) out.push_back(dihedral_quandle(n));
    for (int n = 1; n <= 8; ++n) out.push_back(trivial_quandle(n));
    out.push_back(conjugation_quandle(symmetric_group_generators(3)));
    return out;
}

Outcome criterion1()
{
    Outcome o;
    std::size_t checked = 0;
    for (const auto& X : quandle_corpus()) {
        expect(o, classify(X.table()) == "quandle", "corpus member not a quandle by the oracle");
        expect(o, classify(check_axioms(X.table())) == "quandle", "corpus member misclassified");
        ++checked;
    }
    std::mt19937_64 rng(2024);
    std::size_t racks = 0;
    for (int t = 0; t < 20; ++t) {
        const int n = 2 + t % 5;
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::vector<std::vector<int>> op(n, std::vector<int>(n));
        for (int y = 0; y < n; ++y) {
            // Every fourth table repeats one permutation in all columns, which is always a rack.
            if (t % 4 != 0 || y == 0) std::shuffle(perm.begin(), perm.end(), rng);
            for (int x = 0; x < n; ++x) op[x][y] = perm[x];
        }
        const auto expected = classify(op);
        racks += expected != "neither";
        expect(o, classify(check_axioms(op)) == expected, "random table misclassified");
        ++checked;
    }
    o.detail = o.ok ? std::to_string(checked) + " tables, " + std::to_string(racks) + " random racks" : o.detail;
    return o;
}

Outcome criterion2()
{
    Outcome o;
    const auto corpus = quandle_corpus();
    for (const auto& X : corpus) {
        for (auto theory : {Theory::kRack, Theory::kQuandle})
            for (int n = 0; n + 1 <= kMaxCoboundaryDegree; ++n)
                expect(o, (coboundary_matrix(X, n + 1, theory) * coboundary_matrix(X, n, theory)).is_zero(),
                       "delta^{n+1} delta^n != 0");
        const auto d1 = coboundary_matrix(X, 1, Theory::kRack);
        expect(o, d1.cols - rank(d1) == components(X).size(), "dim ker delta^1 != |pi_0|");
        if (X.size() <= 6)
            expect(o, cohomology_dimension(X, 2, Theory::kQuandle) == oracle::quandle_h2(X.table()),
                   "H^2 disagrees with the dense oracle");
    }
    expect(o, cohomology_dimension(dihedral_quandle(3), 2, Theory::kQuandle) == 0, "H^2(R3) != 0");
    expect(o, cohomology_dimension(trivial_quandle(2), 2, Theory::kQuandle) == 2, "H^2(T2) != 2");
    if (o.ok) o.detail = std::to_string(corpus.size()) + " quandles, H^2(R3) = 0, H^2(T2) = 2";
    return o;
}

Outcome criterion3()
{
    Outcome o;
    const Alphabet F2 = Alphabet::free_group({"a", "b"});
    const oracle::Group g{F2.names(), F2.orders()};
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> len(0, 8), gen(0, 1), sign(0, 1);
    auto random_word = [&]() {
        WordBuilder b(F2);
        const int n = len(rng);
        for (int i = 0; i < n; ++i) b.push(Syllable{static_cast<std::size_t>(gen(rng)), sign(rng) ? 1 : -1});
        return b.take();
    };
    for (const char* text : {"ab", "ab^-1", "ab^2", "aba^-1b^-1"}) {
        const auto word = parse_word(text, F2);
        const auto count = Quasimorphism::counting(word, F2);
        const auto hat = Quasimorphism::homogenized_counting(word, F2);
        const auto letters = oracle::letters_of(text, g);
        for_each_ball_word(F2, 4, [&](const GroupWord& x) {
            const Rational v = eval(hat, x, F2);
            expect(o, v == oracle::homogenized_counting(letters, oracle::letters_of(format_word(x, F2), g), g),
                   std::string("homogenized value disagrees with the oracle for ") + text);
            for (int n = -3; n <= 3; ++n)
                expect(o, eval(hat, power(x, n, F2), F2) == n * v, std::string("homogeneity fails for ") + text);
            for (int N : {8, 16, 32})
                expect(o, abs(Rational(v - eval(count, power(x, N, F2), F2) / N)) <= count.defect_upper() / N,
                       std::string("convergence bound fails for ") + text);
        });
        for (int t = 0; t < 1000; ++t) {
            const auto x = random_word(), y = random_word();
            expect(o, eval(hat, conjugate(x, y, F2), F2) == eval(hat, x, F2),
                   std::string("conjugacy invariance fails for ") + text);
        }
        for (const auto* phi : {&count, &hat}) {
            const auto m = measure_defect(*phi, F2, 4, 100000, 1);
            expect(o, m.value <= phi->defect_upper(), "measured defect above defect_upper");
        }
    }
    if (o.ok) o.detail = "4 words, radius-4 balls, 1000 conjugate pairs each";
    return o;
}

Outcome criterion4()
{
    Outcome o;
    const auto X = CosetQuandle::free_quandle({"a", "b"});
    const auto& A = X.alphabet();
    const auto phi = Quasimorphism::homogenized_counting(parse_word("ab", A), A);
    const auto phi_x = build_phi_X(X, phi, 0);
    const auto r3 = defect_report(phi_x, 3, 10000, 1);
    expect(o, r3.exhaustive, "radius 3 scan not exhaustive");
    expect(o, r3.observed <= r3.bound, "defect bound violated at radius 3");
    const auto r6 = defect_report(phi_x, 6, 10000, 1);
    expect(o, r6.pairs == 10000, "radius 6 sample size");
    expect(o, r6.observed <= r6.bound, "defect bound violated at radius 6");
    const auto growth = growth_certificate(phi_x, 32);
    expect(o, growth.values.size() == 33, "growth certificate length");
    for (std::size_t n = 0; n < growth.values.size(); ++n)
        expect(o, abs(growth.values[n]) >= static_cast<long>(n) * growth.slope - growth.defect, "growth bound");

    const auto bad = std::filesystem::temp_directory_path() / "qforge_acceptance_bad_defect.json";
    std::ofstream(bad) << R"({"quasimorphism": {"kind": "hcount", "word": "ab", "defect_upper": "1/100"}})";
    const int status = cli_status("classes " + data("fq_ab.json") + " " + bad.string() + " --radius 3");
    expect(o, status == 1, "CLI exit status on a violated bound is " + std::to_string(status));
    expect(o, cli_status("classes " + data("fq_ab.json") + " " + data("hcount_ab.json") + " --radius 3") == 0,
           "CLI run on valid input failed");
    if (o.ok)
        o.detail = "observed " + to_string(r3.observed) + "/" + to_string(r6.observed) + " <= bound " +
                   to_string(r3.bound) + ", growth to n = 32, CLI exit 1 on violation";
    return o;
}

Outcome criterion5()
{
    Outcome o;
    const auto X = CosetQuandle::free_quandle({"a", "b"});
    const auto& A = X.alphabet();
    const oracle::Group g{A.names(), A.orders()};
    const auto phi = Quasimorphism::homogenized_counting(parse_word("ab", A), A);
    const auto ch = chooser_independence(X, phi, 0, ChooserRule::kShortest, ChooserRule::kShifted, 3, 1000, 1);
    expect(o, ch.pairs == 1000 && ch.coboundaries_equal, "coboundary equality");
    expect(o, ch.eta_sup <= ch.eta_bound, "eta above D");

    const auto spec = nlohmann::json::parse(slurp(data("hcount_ab.json")));
    std::vector<std::string> words;
    std::vector<QuandleQuasimorphism> family;
    for (const auto& f : spec.at("family")) {
        words.push_back(f.at("word").get<std::string>());
        family.push_back(build_phi_X(X, quasimorphism_from_json(f, A), 0));
    }
    expect(o, family.size() == 5, "family size");
    const auto rep = independence_certificate(family, 20, kDefaultBaseRadius, 32, 1);
    expect(o, rep.trials.size() == 20 && rep.witnesses + rep.inconclusive == 20, "trial bookkeeping");
    std::size_t verified = 0;
    for (const auto& trial : rep.trials) {
        if (!trial.witness) continue;
        const auto& w = *trial.witness;
        bool good = true;
        for (std::size_t n = 0; n < w.values.size(); ++n) {
            const auto rep_n = X.element(0, power(w.base, static_cast<long>(n), A)).rep;
            const auto letters = oracle::letters_of(format_word(rep_n, A), g);
            Rational expected = 0;
            for (std::size_t k = 0; k < words.size(); ++k)
                expected += trial.coefficients[k] *
                            oracle::homogenized_counting(oracle::letters_of(words[k], g), letters, g);
            good = good && expected == w.values[n] && abs(expected) >= static_cast<long>(n) * w.slope - w.defect;
        }
        good = good && w.slope > 0;
        verified += good;
    }
    expect(o, verified == rep.witnesses, "a reported witness failed re-verification");
    expect(o, verified >= 18, "only " + std::to_string(verified) + " of 20 trials produced witnesses");
    if (o.ok)
        o.detail = "eta sup " + to_string(ch.eta_sup) + " <= " + to_string(ch.eta_bound) + ", " +
                   std::to_string(verified) + "/20 witnesses verified, " + std::to_string(rep.inconclusive) +
                   " inconclusive";
    return o;
}

Outcome criterion6()
{
    Outcome o;
    const std::vector<std::int64_t> ns{0, 1, 2, 3, 4};
    const auto r = en_family_report(ns, -100, 100);
    expect(o, r.coboundary_bounded && r.unit_above_n && r.linear_growth && r.pairwise_distinct,
           "e_n report flags");
    expect(o, r.coboundary_rank == 5, "coboundary rank " + std::to_string(r.coboundary_rank));
    // Direct evaluation from the closed form.
    std::vector<std::vector<Rational>> rows;
    for (auto n : ns) {
        const auto e = en_family(n);
        std::vector<Rational> row;
        for (std::int64_t m = -100; m <= 100; ++m) {
            const Rational expected = m >= n ? Rational(static_cast<long>(m - n)) : Rational(0);
            expect(o, e.eval(m) == expected, "e_n value");
            const Rational d = e.coboundary(m, 0);
            expect(o, d == expected - (m + 1 >= n ? Rational(static_cast<long>(m + 1 - n)) : Rational(0)),
                   "coboundary value");
            expect(o, abs(d) <= 1, "|delta e_n| > 1");
            if (m >= n) expect(o, abs(d) == 1, "|delta e_n| != 1 above n");
            row.push_back(d);
        }
        rows.push_back(row);
    }
    expect(o, oracle::dense_rank(rows) == 5, "dense rank of coboundary vectors");
    if (o.ok) o.detail = "n = 0..4 on [-100, 100], rank 5";
    return o;
}

Outcome criterion7()
{
    Outcome o;
    const auto P = free_product(CosetQuandle::free_quandle({"a"}), CosetQuandle::free_quandle({"b"}));
    const auto F = CosetQuandle::free_quandle({"a", "b"});
    expect(o, P.alphabet() == F.alphabet() && P.parts().size() == F.parts().size(), "free product carrier");
    std::mt19937_64 rng(7);
    const auto& A = F.alphabet();
    std::uniform_int_distribution<int> len(0, 6), gen(0, 1), sign(0, 1), part(0, 1);
    auto random_pair = [&]() {
        WordBuilder b(A);
        const int n = len(rng);
        for (int i = 0; i < n; ++i) b.push(Syllable{static_cast<std::size_t>(gen(rng)), sign(rng) ? 1 : -1});
        return std::make_pair(static_cast<std::size_t>(part(rng)), b.take());
    };
    for (int t = 0; t < 1000; ++t) {
        const auto [i, x] = random_pair();
        const auto [j, y] = random_pair();
        const auto lhs = P.op(P.element(i, x), P.element(j, y));
        const auto rhs = F.op(F.element(i, x), F.element(j, y));
        expect(o, lhs == rhs, "free product and FQ disagree");
        expect(o, P.op_inv(lhs, P.element(j, y)) == F.op_inv(rhs, F.element(j, y)), "inverse operation disagrees");
    }
    for (const auto& [gens, k] : std::vector<std::pair<std::vector<std::string>, int>>{{{"a", "b"}, 3},
                                                                                     {{"a", "b", "c"}, 2}}) {
        const auto r = k_quandle_pipeline(gens, k, "ab", 32, 3, 10000, 1);
        expect(o, r.certified && !r.warning, "k-quandle pipeline (" + std::to_string(gens.size()) + "," +
                                                 std::to_string(k) + ") not certified");
    }
    const auto K = CosetQuandle::free_k_quandle({"a", "b"}, 2);
    const auto d4 = truncated_component_diameters(K, 4);
    const auto d6 = truncated_component_diameters(K, 6);
    bool stable = d4.size() == d6.size();
    for (std::size_t i = 0; stable && i < d4.size(); ++i) stable = d4[i].value == d6[i].value;
    expect(o, stable, "FQ_2 diameters change between radius 4 and 6");
    const auto base = F.element(0, GroupWord());
    const auto e2 = truncated_eccentricity(F, base, 2).value;
    const auto e4 = truncated_eccentricity(F, base, 4).value;
    const auto e6 = truncated_eccentricity(F, base, 6).value;
    expect(o, e2 < e4 && e4 < e6, "FQ eccentricity not strictly increasing");
    if (o.ok) {
        std::string ds;
        for (const auto& d : d6) ds += (ds.empty() ? "" : ",") + std::to_string(d.value);
        o.detail = "1000 pairs agree, FQ_2 diameters {" + ds + "} at radii 4 and 6, FQ eccentricity " +
                   std::to_string(e2) + " < " + std::to_string(e4) + " < " + std::to_string(e6);
    }
    return o;
}

Outcome criterion8()
{
    Outcome o;
    auto load = [](const std::string& name) { return presentation(parse_diagram(slurp(data(name)))); };
    auto brute = [](const QuandlePresentation& p, const TableRack& X) {
        std::vector<std::array<int, 4>> rel;
        for (const auto& r : p.relations) rel.push_back({r.k, r.j, r.i, r.sign});
        return oracle::brute_force_colorings(p.generators, rel, X.table());
    };
    const auto r3 = dihedral_quandle(3), r5 = dihedral_quandle(5);
    const auto trefoil = load("trefoil.json"), kink = load("trefoil_kink.json"), fig8 = load("figure_eight.json");
    expect(o, count_colorings(trefoil, r3).count == 9, "trefoil by R3");
    expect(o, count_colorings(trefoil, r5).count == 5, "trefoil by R5");
    const auto fig8_expected = brute(fig8, r5);
    expect(o, fig8_expected == 25, "brute-force figure-eight by R5");
    expect(o, count_colorings(fig8, r5).count == fig8_expected, "figure-eight by R5");
    const auto unknot = load("unknot.json");
    for (int n = 3; n <= 12; ++n)
        expect(o, count_colorings(unknot, dihedral_quandle(n)).count == static_cast<std::uint64_t>(n), "unknot by R_n");
    for (const char* name : {"unknot.json", "unlink2.json", "trefoil.json", "trefoil_kink.json", "figure_eight.json"}) {
        const auto code = parse_diagram(slurp(data(name)));
        const auto comps = code.components.size();
        const std::string expected = comps == 1 ? "Z" : "Z^" + std::to_string(comps);
        expect(o, wirtinger_presentation(presentation(code)).abelianization.to_string() == expected,
               std::string("abelianization of ") + name);
    }
    for (int n = 3; n <= 7; ++n) {
        const auto X = dihedral_quandle(n);
        expect(o, count_colorings(trefoil, X).count == count_colorings(kink, X).count, "trefoil diagrams differ");
    }
    if (o.ok) o.detail = "trefoil 9/5, figure-eight 25 (brute force), unknot n, kink variant equal";
    return o;
}

Outcome criterion9()
{
    Outcome o;
    const Alphabet F2 = Alphabet::free_group({"a", "b"});
    const oracle::Group g{F2.names(), F2.orders()};
    const auto comm = parse_word("aba^-1b^-1", F2);
    std::vector<Quasimorphism> family;
    for (const char* w : {"ab", "aba^-1b^-1", "ab^-1", "ab^2"})
        family.push_back(Quasimorphism::homogenized_counting(parse_word(w, F2), F2));
    for (const auto& phi : family) expect(o, !phi.empirical(), "defect bound is not certified");
    const auto lower = scl_lower_bound(comm, family, F2).lower;
    expect(o, lower > 0, "scl lower bound is 0");
    std::string cls;
    for (int n = 1; n <= 3; ++n) {
        const int cl = oracle::commutator_length_upper(oracle::power(oracle::letters_of("aba^-1b^-1", g), n, g), g, 2);
        cls += (cls.empty() ? "" : ",") + std::to_string(cl);
        expect(o, cl >= 1 && cl <= n, "cl([a,b]^n) > n");
        if (cl < 1) continue;
        Rational half_cl(cl, 2 * n);
        half_cl.canonicalize();
        expect(o, lower <= half_cl, "lower bound above cl/(2n)");
        expect(o, scl_lower_bound(power(comm, n, F2), family, F2).lower <= cl, "lower bound for g^n above cl");
    }
    if (o.ok) o.detail = "scl([a,b]) >= " + to_string(lower) + ", cl([a,b]^n) <= {" + cls + "}";
    return o;
}

}  // namespace

int main()
{
    struct Criterion {
      int id;
      double limit_seconds;  // 0 = no limit
      std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, 5, criterion1},    {2, 60, criterion2}, {3, 120, criterion3}, {4, 300, criterion4}, {5, 600, criterion5},
        {6, 0, criterion6},    {7, 0, criterion7},  {8, 0, criterion8},   {9, 0, criterion9},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.limit_seconds > 0 && secs >= c.limit_seconds) {
            o.ok = false;
            o.detail = "runtime limit " + std::to_string(static_cast<int>(c.limit_seconds)) + " s exceeded; " + o.detail;
        }
        char timing[64];
        std::snprintf(timing, sizeof timing, "%.2f s", secs);
        std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << c.id << " (" << timing
                  << (c.limit_seconds > 0 ? " < " + std::to_string(static_cast<int>(c.limit_seconds)) + " s" : "")
                  << "): " << o.detail << std::endl;
        failures += !o.ok;
    }
    return failures == 0 ? 0 : 1;
}
