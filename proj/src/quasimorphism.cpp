#include "qforge/quasimorphism.hpp"

#include <algorithm>
#include <random>

#include "qforge/errors.hpp"
#include "qforge/parallel.hpp"

namespace qforge {

namespace {

constexpr std::uint64_t kExhaustivePairLimit = 1'000'000;

std::int64_t count_occurrences(const std::vector<Letter>& text, const std::vector<Letter>& pattern)
{
    if (pattern.empty() || pattern.size() > text.size()) return 0;
    std::int64_t n = 0;
    for (std::size_t i = 0; i + pattern.size() <= text.size(); ++i)
        if (std::equal(pattern.begin(), pattern.end(), text.begin() + static_cast<std::ptrdiff_t>(i))) ++n;
    return n;
}

// Occurrences starting in [0, period) of the bi-infinite periodic word.
std::int64_t count_cyclic_occurrences(const std::vector<Letter>& period, const std::vector<Letter>& pattern)
{
    if (pattern.empty() || period.empty()) return 0;
    std::int64_t n = 0;
    for (std::size_t i = 0; i < period.size(); ++i) {
        bool match = true;
        for (std::size_t j = 0; j < pattern.size() && match; ++j)
            match = period[(i + j) % period.size()] == pattern[j];
        if (match) ++n;
    }
    return n;
}

Rational counting_bound(const GroupWord& w)
{
    const auto len = letter_length(w);
    return len >= 2 ? Rational(2 * static_cast<long>(len - 1)) : Rational(0);
}

DefectMeasurement scan_defect(const Quasimorphism& phi, const Alphabet& alphabet, int radius,
                              std::uint64_t samples, std::uint64_t seed)
{
    if (radius < 1) throw PreconditionError("measure_defect: radius must be >= 1");
    const auto ball = enumerate_ball(alphabet, radius);
    std::vector<Rational> values(ball.size());
    parallel_chunks(ball.size(), [&](std::size_t b, std::size_t e, std::size_t) {
        for (std::size_t i = b; i < e; ++i) values[i] = eval(phi, ball[i], alphabet);
    });

    const std::uint64_t total = static_cast<std::uint64_t>(ball.size()) * ball.size();
    const bool exhaustive = total <= kExhaustivePairLimit;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    if (!exhaustive) {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::size_t> pick(0, ball.size() - 1);
        pairs.reserve(samples);
        for (std::uint64_t s = 0; s < samples; ++s) pairs.emplace_back(pick(rng), pick(rng));
    }
    const std::uint64_t count = exhaustive ? total : pairs.size();

    const std::size_t workers = thread_count();
    std::vector<Rational> best(workers, Rational(0));
    parallel_chunks(count, [&](std::size_t b, std::size_t e, std::size_t w) {
        Rational local = 0;
        for (std::size_t t = b; t < e; ++t) {
            std::size_t i, j;
            if (exhaustive) {
                i = t / ball.size();
                j = t % ball.size();
            } else {
                std::tie(i, j) = pairs[t];
            }
            Rational d = abs(values[i] + values[j] - eval(phi, multiply(ball[i], ball[j], alphabet), alphabet));
            if (d > local) local = d;
        }
        best[w] = local;
    });
    DefectMeasurement m;
    m.value = *std::max_element(best.begin(), best.end());
    m.exhaustive = exhaustive;
    m.pairs = count;
    return m;
}

}  // namespace

// ---------------------------------------------------------------------------

Quasimorphism Quasimorphism::homomorphism(std::vector<Rational> weights, const Alphabet& alphabet)
{
    if (weights.size() != alphabet.size())
        throw InputError("homomorphism: expected " + std::to_string(alphabet.size()) + " weights");
    for (std::size_t g = 0; g < weights.size(); ++g)
        if (alphabet.is_torsion(g) && weights[g] != 0)
            throw InputError("homomorphism: torsion generator '" + alphabet.name(g) + "' must have weight 0");
    Quasimorphism q;
    q.kind_ = Kind::kHomomorphism;
    q.weights_ = std::move(weights);
    return q;
}

Quasimorphism Quasimorphism::counting(const GroupWord& w, const Alphabet& alphabet, std::optional<Rational> defect_upper)
{
    validate(w, alphabet);
    if (w.is_identity()) throw InputError("counting quasimorphism needs a nonempty word");
    Quasimorphism q;
    q.kind_ = Kind::kCounting;
    q.word_ = w;
    q.homogeneous_ = false;
    if (defect_upper) {
        q.defect_upper_ = *defect_upper;
    } else if (alphabet.is_free()) {
        q.defect_upper_ = counting_bound(w);
    } else {
        return calibrate_empirical_defect(q, alphabet);
    }
    return q;
}

Quasimorphism Quasimorphism::homogenized_counting(const GroupWord& w, const Alphabet& alphabet,
                                                  std::optional<Rational> defect_upper)
{
    validate(w, alphabet);
    if (w.is_identity()) throw InputError("counting quasimorphism needs a nonempty word");
    Quasimorphism q;
    q.kind_ = Kind::kHomogenizedCounting;
    q.word_ = w;
    q.homogeneous_ = true;
    if (defect_upper) {
        q.defect_upper_ = *defect_upper;
    } else if (alphabet.is_free()) {
        q.defect_upper_ = 2 * counting_bound(w);
    } else {
        return calibrate_empirical_defect(q, alphabet);
    }
    return q;
}

Quasimorphism Quasimorphism::linear_combination(std::vector<Term> terms)
{
    Quasimorphism q;
    q.kind_ = Kind::kLinearCombination;
    q.defect_upper_ = 0;
    q.homogeneous_ = true;
    for (const auto& [c, member] : terms) {
        q.defect_upper_ += abs(c) * member.defect_upper();
        q.homogeneous_ = q.homogeneous_ && member.homogeneous();
        q.empirical_ = q.empirical_ || member.empirical();
    }
    q.terms_ = std::make_shared<const std::vector<Term>>(std::move(terms));
    return q;
}

Quasimorphism Quasimorphism::with_witnessed_defect(const Rational& witnessed) const
{
    Quasimorphism q = *this;
    if (witnessed > q.defect_lower_) q.defect_lower_ = witnessed;
    return q;
}

Quasimorphism Quasimorphism::with_defect_upper(const Rational& bound, bool empirical) const
{
    Quasimorphism q = *this;
    q.defect_upper_ = bound;
    q.empirical_ = empirical;
    return q;
}

// ---------------------------------------------------------------------------

Rational eval(const Quasimorphism& phi, const GroupWord& g, const Alphabet& alphabet)
{
    using Kind = Quasimorphism::Kind;
    switch (phi.kind()) {
        case Kind::kHomomorphism: {
            validate(g, alphabet);
            Rational v = 0;
            for (const auto& s : g.syllables()) v += phi.weights().at(s.gen) * Rational(static_cast<long>(s.exponent));
            return v;
        }
        case Kind::kCounting: {
            validate(g, alphabet);
            const auto text = letters(g);
            const auto n = count_occurrences(text, letters(phi.word())) -
                           count_occurrences(text, letters(invert(phi.word(), alphabet)));
            return Rational(static_cast<long>(n));
        }
        case Kind::kHomogenizedCounting: {
            const auto cyc = cyclic_normal_form(g, alphabet);
            const auto& core = cyc.core.syllables();
            if (core.empty()) return 0;
            // A lone torsion syllable has bounded powers.
            if (core.size() == 1 && alphabet.is_torsion(core.front().gen)) return 0;
            const auto period = letters(cyc.core);
            const auto n = count_cyclic_occurrences(period, letters(phi.word())) -
                           count_cyclic_occurrences(period, letters(invert(phi.word(), alphabet)));
            return Rational(static_cast<long>(n));
        }
        case Kind::kLinearCombination: {
            Rational v = 0;
            for (const auto& [c, member] : phi.terms())
                if (c != 0) v += c * eval(member, g, alphabet);
            return v;
        }
    }
    return 0;
}

Quasimorphism homogenize(const Quasimorphism& phi, const Alphabet& alphabet)
{
    using Kind = Quasimorphism::Kind;
    switch (phi.kind()) {
        case Kind::kHomomorphism:
        case Kind::kHomogenizedCounting:
            return phi;
        case Kind::kCounting: {
            // A single letter counts exponents: already a homomorphism.
            const Rational bound = letter_length(phi.word()) == 1 ? phi.defect_upper() : 2 * phi.defect_upper();
            return Quasimorphism::homogenized_counting(phi.word(), alphabet, bound)
                .with_defect_upper(bound, phi.empirical());
        }
        case Kind::kLinearCombination: {
            std::vector<Quasimorphism::Term> terms;
            for (const auto& [c, member] : phi.terms()) terms.emplace_back(c, homogenize(member, alphabet));
            return Quasimorphism::linear_combination(std::move(terms));
        }
    }
    return phi;
}

DefectMeasurement measure_defect(const Quasimorphism& phi, const Alphabet& alphabet, int radius,
                                 std::uint64_t samples, std::uint64_t seed)
{
    auto m = scan_defect(phi, alphabet, radius, samples, seed);
    if (m.value > phi.defect_upper())
        throw CertificationFailure("measured defect " + to_string(m.value) + " exceeds certified bound " +
                                   to_string(phi.defect_upper()));
    return m;
}

Quasimorphism calibrate_empirical_defect(const Quasimorphism& phi, const Alphabet& alphabet, int radius)
{
    auto m = scan_defect(phi, alphabet, radius, 0, 0);
    return phi.with_defect_upper(kEmpiricalSafetyFactor * m.value, true).with_witnessed_defect(m.value);
}

bool vanishes_on_cyclic(const Quasimorphism& phi, const GroupWord& h, const Alphabet& alphabet)
{
    if (!phi.homogeneous()) throw PreconditionError("vanishes_on_cyclic: quasimorphism is not homogeneous");
    return eval(phi, h, alphabet) == 0;
}

CommutatorRestrictionReport restriction_is_zero_on_commutators(const Quasimorphism& phi, const Alphabet& alphabet,
                                                               int radius)
{
    if (!phi.homogeneous())
        throw PreconditionError("restriction_is_zero_on_commutators: quasimorphism is not homogeneous");
    CommutatorRestrictionReport r;
    r.max_abs = 0;
    for (const auto& g : commutator_ball(alphabet, radius)) {
        ++r.elements;
        Rational v = abs(eval(phi, g, alphabet));
        if (v > r.max_abs) {
            r.max_abs = v;
            r.argmax = g;
        }
    }
    r.within_defect = r.max_abs <= phi.defect_upper();
    return r;
}

SclBound scl_lower_bound(const GroupWord& g, const std::vector<Quasimorphism>& family, const Alphabet& alphabet)
{
    validate(g, alphabet);
    if (!in_commutator_subgroup(g, alphabet))
        throw InputError("scl_lower_bound: element '" + format_word(g, alphabet) + "' is not in [G,G]");
    SclBound bound;
    bound.element = g;
    for (std::size_t i = 0; i < family.size(); ++i) {
        const auto& phi = family[i];
        if (!phi.homogeneous()) throw PreconditionError("scl_lower_bound: family member is not homogeneous");
        if (phi.kind() == Quasimorphism::Kind::kHomomorphism || phi.defect_upper() == 0) continue;
        Rational v = abs(eval(phi, g, alphabet)) / (2 * phi.defect_upper());
        if (v > bound.lower || (!bound.witness && v == bound.lower)) {
            bound.lower = v;
            bound.witness = i;
        }
    }
    return bound;
}

// ---------------------------------------------------------------------------

nlohmann::json to_json(const Quasimorphism& phi, const Alphabet& alphabet)
{
    using Kind = Quasimorphism::Kind;
    nlohmann::json j;
    switch (phi.kind()) {
        case Kind::kHomomorphism: {
            j["kind"] = "hom";
            nlohmann::json w = nlohmann::json::object();
            for (std::size_t g = 0; g < alphabet.size(); ++g) w[alphabet.name(g)] = to_string(phi.weights().at(g));
            j["weights"] = w;
            break;
        }
        case Kind::kCounting:
        case Kind::kHomogenizedCounting:
            j["kind"] = phi.kind() == Kind::kCounting ? "count" : "hcount";
            j["word"] = format_word(phi.word(), alphabet);
            break;
        case Kind::kLinearCombination: {
            j["kind"] = "lin";
            nlohmann::json coeffs = nlohmann::json::array();
            for (const auto& [c, member] : phi.terms())
                coeffs.push_back({{"coeff", to_string(c)}, {"qm", to_json(member, alphabet)}});
            j["coeffs"] = coeffs;
            break;
        }
    }
    j["defect_upper"] = to_string(phi.defect_upper());
    j["defect_lower"] = to_string(phi.defect_lower());
    j["homogeneous"] = phi.homogeneous();
    j["empirical"] = phi.empirical();
    return j;
}

Quasimorphism quasimorphism_from_json(const nlohmann::json& j, const Alphabet& alphabet)
{
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw InputError("quasimorphism JSON needs a string \"kind\"");
    const std::string kind = j["kind"];
    std::optional<Rational> bound;
    if (j.contains("defect_upper")) bound = parse_rational(j["defect_upper"].get<std::string>());

    Quasimorphism q;
    if (kind == "hom") {
        std::vector<Rational> weights(alphabet.size(), Rational(0));
        if (j.contains("weights")) {
            for (const auto& [name, value] : j["weights"].items()) {
                auto g = alphabet.index_of(name);
                if (!g) throw InputError("hom weights: unknown generator '" + name + "'");
                weights[*g] = parse_rational(value.get<std::string>());
            }
        }
        q = Quasimorphism::homomorphism(std::move(weights), alphabet);
        if (bound && *bound != 0) throw InputError("homomorphism must have defect_upper 0");
    } else if (kind == "count" || kind == "hcount") {
        if (!j.contains("word")) throw InputError("counting quasimorphism JSON needs \"word\"");
        const auto w = parse_word(j["word"].get<std::string>(), alphabet);
        q = kind == "count" ? Quasimorphism::counting(w, alphabet, bound)
                            : Quasimorphism::homogenized_counting(w, alphabet, bound);
        if (bound && j.value("empirical", false)) q = q.with_defect_upper(*bound, true);
    } else if (kind == "lin") {
        std::vector<Quasimorphism::Term> terms;
        for (const auto& t : j.at("coeffs"))
            terms.emplace_back(parse_rational(t.at("coeff").get<std::string>()),
                               quasimorphism_from_json(t.at("qm"), alphabet));
        q = Quasimorphism::linear_combination(std::move(terms));
        if (bound) q = q.with_defect_upper(*bound, q.empirical());
    } else {
        throw InputError("unknown quasimorphism kind '" + kind + "'");
    }
    if (j.contains("defect_lower")) q = q.with_witnessed_defect(parse_rational(j["defect_lower"].get<std::string>()));
    if (q.defect_lower() > q.defect_upper())
        throw InputError("quasimorphism JSON: defect_lower exceeds defect_upper");
    return q;
}

}  // namespace qforge
