#include "qforge/boundedclasses.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "qforge/cohomology.hpp"
#include "qforge/errors.hpp"
#include "qforge/parallel.hpp"

namespace qforge {

namespace {

constexpr std::uint64_t kExhaustivePairLimit = 1000000;

nlohmann::json element_json(const CosetElement& x, const Alphabet& alphabet)
{
    return {{"part", x.part}, {"rep", format_word(x.rep, alphabet)}};
}

}  // namespace

QuandleQuasimorphism::QuandleQuasimorphism(CosetQuandle quandle, Quasimorphism source, std::size_t part,
                                           ChooserRule chooser, int base_radius)
    : quandle_(std::move(quandle)), source_(std::move(source)), part_(part), chooser_(chooser)
{
    if (part_ >= quandle_.parts().size()) throw InputError("part index " + std::to_string(part_) + " out of range");
    if (!source_.homogeneous()) throw PreconditionError("phi_X needs a homogeneous quasimorphism");
    const auto& alphabet = quandle_.alphabet();
    if (!vanishes_on_cyclic(source_, quandle_.parts()[part_].h, alphabet))
        throw PreconditionError("quasimorphism does not vanish on the stabilizer <" +
                                format_word(quandle_.parts()[part_].h, alphabet) + ">");
    for (const auto& w : enumerate_ball(alphabet, base_radius)) {
        auto rep = quandle_.representative(part_, w, chooser_);
        if (qforge::eval(source_, rep, alphabet) != 0) {
            base_ = std::move(rep);
            break;
        }
    }
    if (!base_)
        warning_ = "no representative with nonzero value in the ball of radius " + std::to_string(base_radius);
}

Rational QuandleQuasimorphism::eval(const CosetElement& x) const
{
    if (x.part != part_) return 0;
    return qforge::eval(source_, quandle_.representative(part_, x.rep, chooser_), quandle_.alphabet());
}

Rational QuandleQuasimorphism::coboundary(const CosetElement& x, const CosetElement& y) const
{
    return eval(x) - eval(quandle_.op(x, y));
}

QuandleQuasimorphism build_phi_X(const CosetQuandle& quandle, const Quasimorphism& phi, std::size_t part,
                                 ChooserRule chooser, int base_radius)
{
    return QuandleQuasimorphism(quandle, phi, part, chooser, base_radius);
}

DefectReport defect_report(const QuandleQuasimorphism& phi_x, int radius, std::uint64_t samples, std::uint64_t seed)
{
    const auto& X = phi_x.quandle();
    const auto& A = X.alphabet();
    const auto& phi = phi_x.source();

    DefectReport r;
    r.radius = radius;
    r.seed = seed;
    r.empirical = phi.empirical();
    const Rational z0 = eval(phi, X.parts()[phi_x.part()].z, A);
    Rational spread = 0;
    for (const auto& p : X.parts()) spread = std::max(spread, Rational(abs(Rational(z0 - eval(phi, p.z, A)))));
    r.bound = spread + 6 * phi.defect_upper();

    const auto elements = X.truncated_elements(radius);
    const std::uint64_t total = static_cast<std::uint64_t>(elements.size()) * elements.size();
    r.exhaustive = total <= kExhaustivePairLimit;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    if (!r.exhaustive) {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::size_t> pick(0, elements.size() - 1);
        for (std::uint64_t s = 0; s < samples; ++s) pairs.emplace_back(pick(rng), pick(rng));
    }
    r.pairs = r.exhaustive ? total : pairs.size();

    std::vector<Rational> values(elements.size());
    parallel_chunks(elements.size(), [&](std::size_t b, std::size_t e, std::size_t) {
        for (std::size_t i = b; i < e; ++i) values[i] = phi_x.eval(elements[i]);
    });

    struct Best {
      Rational value = 0;
      std::uint64_t index = 0;
    };
    std::vector<Best> best(thread_count());
    parallel_chunks(r.pairs, [&](std::size_t b, std::size_t e, std::size_t w) {
        Best local{Rational(-1), 0};
        for (std::size_t t = b; t < e; ++t) {
            const auto [i, j] = r.exhaustive ? std::make_pair(t / elements.size(), t % elements.size()) : pairs[t];
            Rational d = abs(values[i] - phi_x.eval(X.op(elements[i], elements[j])));
            if (d > local.value) local = {d, t};
        }
        best[w] = local;
    });
    const auto winner = std::max_element(best.begin(), best.end(),
                                         [](const Best& a, const Best& b) { return a.value < b.value; });
    r.observed = 0;
    if (r.pairs > 0 && winner->value >= 0) {
        r.observed = winner->value;
        const auto t = winner->index;
        const auto [i, j] = r.exhaustive ? std::make_pair(t / elements.size(), t % elements.size()) : pairs[t];
        r.argmax = std::make_pair(elements[i], elements[j]);
    }
    if (r.observed > r.bound)
        throw CertificationFailure("quandle quasimorphism defect " + to_string(r.observed) + " exceeds bound " +
                                   to_string(r.bound));
    return r;
}

GrowthCertificate growth_certificate(const QuandleQuasimorphism& phi_x, int n_max,
                                     const std::optional<GroupWord>& base)
{
    const auto& X = phi_x.quandle();
    const auto& A = X.alphabet();
    const auto& chosen = base ? base : phi_x.base();
    if (!chosen) throw PreconditionError("growth certificate needs a base element with nonzero value");
    GrowthCertificate c;
    c.base = *chosen;
    c.base_value = eval(phi_x.source(), c.base, A);
    if (c.base_value == 0)
        throw PreconditionError("growth certificate base " + format_word(c.base, A) + " has value 0");
    c.defect = phi_x.source().defect_upper();
    c.slope = abs(c.base_value);
    c.empirical = phi_x.source().empirical();
    for (int n = 0; n <= n_max; ++n) {
        const Rational v = phi_x.eval(X.element(phi_x.part(), power(c.base, n, A)));
        const Rational bound = n * c.slope - c.defect;
        c.ns.push_back(n);
        c.values.push_back(v);
        if (abs(v) < bound)
            throw CertificationFailure("growth bound fails at n = " + std::to_string(n) + ": |" + to_string(v) +
                                       "| < " + to_string(bound));
    }
    return c;
}

ChooserReport chooser_independence(const CosetQuandle& quandle, const Quasimorphism& phi, std::size_t part,
                                   ChooserRule first, ChooserRule second, int radius, std::size_t pairs,
                                   std::uint64_t seed)
{
    const QuandleQuasimorphism f1(quandle, phi, part, first, 0);
    const QuandleQuasimorphism f2(quandle, phi, part, second, 0);
    const auto& A = quandle.alphabet();
    auto eta = [&](const CosetElement& x) -> Rational {
        if (x.part != part) return 0;
        return eval(phi, quandle.representative(part, x.rep, first), A) -
               eval(phi, quandle.representative(part, x.rep, second), A);
    };

    ChooserReport r;
    r.first = first;
    r.second = second;
    r.seed = seed;
    r.eta_bound = phi.defect_upper();
    r.eta_sup = 0;
    const auto cosets = quandle.truncated_part(part, radius);
    r.cosets = cosets.size();
    for (const auto& x : cosets) {
        const Rational e = abs(eta(x));
        if (e != 0) ++r.eta_nonzero;
        r.eta_sup = std::max(r.eta_sup, e);
    }
    if (r.eta_sup > r.eta_bound)
        throw CertificationFailure("eta sup " + to_string(r.eta_sup) + " exceeds D(phi) = " + to_string(r.eta_bound));

    const auto elements = quandle.truncated_elements(radius);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, elements.size() - 1);
    std::vector<std::pair<std::size_t, std::size_t>> sample;
    for (std::size_t s = 0; s < pairs; ++s) sample.emplace_back(pick(rng), pick(rng));
    r.pairs = sample.size();
    std::vector<char> ok(thread_count(), 1);
    parallel_chunks(sample.size(), [&](std::size_t b, std::size_t e, std::size_t w) {
        for (std::size_t t = b; t < e; ++t) {
            const auto& x = elements[sample[t].first];
            const auto& y = elements[sample[t].second];
            const Rational lhs = f1.coboundary(x, y) - f2.coboundary(x, y);
            const Rational rhs = eta(x) - eta(quandle.op(x, y));
            if (lhs != rhs) ok[w] = 0;
        }
    });
    r.coboundaries_equal = std::all_of(ok.begin(), ok.end(), [](char c) { return c != 0; });
    if (!r.coboundaries_equal) throw CertificationFailure("delta(phi_X - phi_X') differs from delta(eta)");
    return r;
}

IndependenceTrial independence_trial(const std::vector<QuandleQuasimorphism>& family,
                                     const std::vector<Rational>& coefficients, int ball_radius, int n_max)
{
    if (family.empty()) throw InputError("independence check needs a nonempty family");
    if (coefficients.size() != family.size()) throw InputError("one coefficient per family member required");
    if (std::all_of(coefficients.begin(), coefficients.end(), [](const Rational& c) { return c == 0; }))
        throw InputError("coefficient vector must be nonzero");
    const auto& first = family.front();
    for (const auto& f : family)
        if (f.part() != first.part() || f.chooser() != first.chooser() ||
            !(f.quandle().alphabet() == first.quandle().alphabet()))
            throw InputError("family members must share quandle, part and chooser");

    std::vector<Quasimorphism::Term> terms;
    for (std::size_t k = 0; k < family.size(); ++k)
        if (coefficients[k] != 0) terms.emplace_back(coefficients[k], family[k].source());
    const auto combined = build_phi_X(first.quandle(), Quasimorphism::linear_combination(std::move(terms)),
                                      first.part(), first.chooser(), ball_radius);
    IndependenceTrial trial;
    trial.coefficients = coefficients;
    if (combined.base()) trial.witness = growth_certificate(combined, n_max);
    return trial;
}

IndependenceReport independence_certificate(const std::vector<QuandleQuasimorphism>& family,
                                            std::size_t coeff_trials, int ball_radius, int n_max,
                                            std::uint64_t seed)
{
    IndependenceReport r;
    r.ball_radius = ball_radius;
    r.n_max = n_max;
    r.seed = seed;
    r.trials.resize(coeff_trials);
    std::vector<std::vector<Rational>> coefficients(coeff_trials);
    for (std::size_t t = 0; t < coeff_trials; ++t) {
        std::mt19937_64 rng(seed + t);
        std::uniform_int_distribution<int> num(-6, 6), den(1, 4);
        do {
            coefficients[t].clear();
            for (std::size_t k = 0; k < family.size(); ++k) {
                const int p = num(rng);
                const int q = den(rng);
                Rational c(p, q);
                c.canonicalize();
                coefficients[t].push_back(c);
            }
        } while (std::all_of(coefficients[t].begin(), coefficients[t].end(),
                             [](const Rational& c) { return c == 0; }));
    }
    parallel_chunks(coeff_trials, [&](std::size_t b, std::size_t e, std::size_t) {
        for (std::size_t t = b; t < e; ++t) r.trials[t] = independence_trial(family, coefficients[t], ball_radius, n_max);
    });
    for (const auto& t : r.trials) (t.witness ? r.witnesses : r.inconclusive)++;
    return r;
}

Rational EnQuasimorphism::eval(std::int64_t m) const
{
    return m >= n ? Rational(static_cast<long>(m - n)) : Rational(0);
}

Rational EnQuasimorphism::coboundary(std::int64_t m, std::int64_t k) const
{
    return eval(m) - eval(PermutationRackZ::op(m, k));
}

EnQuasimorphism en_family(std::int64_t n)
{
    return EnQuasimorphism{n};
}

EnFamilyReport en_family_report(const std::vector<std::int64_t>& ns, std::int64_t lo, std::int64_t hi)
{
    if (lo > hi) throw InputError("empty range for the e_n family");
    EnFamilyReport r;
    r.ns = ns;
    r.lo = lo;
    r.hi = hi;
    SparseMatrix vectors{ns.size(), static_cast<std::size_t>(hi - lo + 1), {}};
    std::vector<std::vector<Rational>> dense;
    for (const auto n : ns) {
        const auto e = en_family(n);
        std::vector<Rational> column;
        std::vector<std::pair<std::size_t, Rational>> row;
        for (std::int64_t m = lo; m <= hi; ++m) {
            // The action does not depend on k; k = m is as good as any.
            const Rational d = e.coboundary(m, m);
            if (abs(d) > 1) r.coboundary_bounded = false;
            if (m >= n && abs(d) != 1) r.unit_above_n = false;
            if (m >= n && e.eval(m) != Rational(static_cast<long>(m - n))) r.linear_growth = false;
            column.push_back(d);
            if (d != 0) row.emplace_back(static_cast<std::size_t>(m - lo), d);
        }
        dense.push_back(std::move(column));
        vectors.row_entries.push_back(std::move(row));
    }
    for (std::size_t i = 0; i < dense.size(); ++i)
        for (std::size_t j = i + 1; j < dense.size(); ++j)
            if (dense[i] == dense[j]) r.pairwise_distinct = false;
    r.coboundary_rank = rank(vectors);
    return r;
}

KQuandleReport k_quandle_pipeline(const std::vector<std::string>& generators, int k, const std::string& word,
                                  int n_max, int radius, std::uint64_t samples, std::uint64_t seed)
{
    const auto X = CosetQuandle::free_k_quandle(generators, k);
    const auto& A = X.alphabet();
    KQuandleReport r;
    r.alphabet = A;
    r.generators = generators.size();
    r.k = k;
    r.word = parse_word(word, A);
    std::set<std::size_t> used;
    for (const auto& s : r.word.syllables()) used.insert(s.gen);
    if (used.size() < 2) throw InputError("quasimorphism word must use at least two distinct generators");
    const bool hypothesis = (generators.size() >= 2 && k >= 3) || (generators.size() >= 3 && k == 2);
    if (!hypothesis)
        r.warning = "(|S|, k) = (" + std::to_string(generators.size()) + ", " + std::to_string(k) +
                    ") lies outside |S| >= 2, k >= 3 or |S| >= 3, k = 2; the quandle is expected to be bounded";
    r.phi = Quasimorphism::homogenized_counting(r.word, A);
    const auto phi_x = build_phi_X(X, r.phi, 0);
    r.base = phi_x.base();
    r.defect = defect_report(phi_x, radius, samples, seed);
    if (r.base) r.growth = growth_certificate(phi_x, n_max);
    r.certified = r.growth.has_value();
    return r;
}

// ---------------------------------------------------------------------------
// JSON

nlohmann::json to_json(const DefectReport& r, const Alphabet& alphabet)
{
    nlohmann::json j = {{"observed", to_string(r.observed)},
                        {"bound", to_string(r.bound)},
                        {"exhaustive", r.exhaustive},
                        {"pairs", r.pairs},
                        {"radius", r.radius},
                        {"empirical", r.empirical}};
    if (r.argmax)
        j["argmax"] = {element_json(r.argmax->first, alphabet), element_json(r.argmax->second, alphabet)};
    return j;
}

nlohmann::json to_json(const GrowthCertificate& c, const Alphabet& alphabet)
{
    nlohmann::json values = nlohmann::json::array();
    for (const auto& v : c.values) values.push_back(to_string(v));
    return {{"base", format_word(c.base, alphabet)},
            {"base_value", to_string(c.base_value)},
            {"defect", to_string(c.defect)},
            {"slope", to_string(c.slope)},
            {"n", c.ns},
            {"values", values},
            {"empirical", c.empirical}};
}

nlohmann::json to_json(const ChooserReport& r)
{
    return {{"first", to_string(r.first)},
            {"second", to_string(r.second)},
            {"eta_sup", to_string(r.eta_sup)},
            {"eta_bound", to_string(r.eta_bound)},
            {"eta_nonzero", r.eta_nonzero},
            {"cosets", r.cosets},
            {"pairs", r.pairs},
            {"coboundaries_equal", r.coboundaries_equal}};
}

nlohmann::json to_json(const IndependenceReport& r, const Alphabet& alphabet)
{
    nlohmann::json trials = nlohmann::json::array();
    for (const auto& t : r.trials) {
        nlohmann::json c = nlohmann::json::array();
        for (const auto& v : t.coefficients) c.push_back(to_string(v));
        nlohmann::json entry = {{"coefficients", c}};
        if (t.witness)
            entry["witness"] = to_json(*t.witness, alphabet);
        else
            entry["result"] = "inconclusive at radius " + std::to_string(r.ball_radius);
        trials.push_back(entry);
    }
    return {{"trials", trials},
            {"witnesses", r.witnesses},
            {"inconclusive", r.inconclusive},
            {"ball_radius", r.ball_radius},
            {"n_max", r.n_max}};
}

nlohmann::json to_json(const EnFamilyReport& r)
{
    return {{"n", r.ns},
            {"range", {r.lo, r.hi}},
            {"coboundary_bounded", r.coboundary_bounded},
            {"unit_above_n", r.unit_above_n},
            {"linear_growth", r.linear_growth},
            {"pairwise_distinct", r.pairwise_distinct},
            {"coboundary_rank", r.coboundary_rank}};
}

nlohmann::json to_json(const KQuandleReport& r)
{
    nlohmann::json j = {{"generators", r.alphabet.names()},
                        {"k", r.k},
                        {"word", format_word(r.word, r.alphabet)},
                        {"certified", r.certified},
                        {"defect_upper", to_string(r.phi.defect_upper())},
                        {"empirical", r.phi.empirical()}};
    j["warning"] = r.warning ? nlohmann::json(*r.warning) : nlohmann::json(nullptr);
    j["base"] = r.base ? nlohmann::json(format_word(*r.base, r.alphabet)) : nlohmann::json(nullptr);
    if (r.defect) j["defect"] = to_json(*r.defect, r.alphabet);
    if (r.growth) j["growth"] = to_json(*r.growth, r.alphabet);
    return j;
}

}  // namespace qforge
