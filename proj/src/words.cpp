#include "qforge/words.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "qforge/errors.hpp"

namespace qforge {

Alphabet::Alphabet(std::vector<std::string> names, std::vector<int> orders)
    : names_(std::move(names)), orders_(std::move(orders))
{
    if (names_.size() != orders_.size())
        throw InputError("alphabet: " + std::to_string(names_.size()) + " generators but " +
                         std::to_string(orders_.size()) + " orders");
    std::set<std::string> seen;
    for (const auto& n : names_) {
        if (n.empty()) throw InputError("alphabet: empty generator name");
        if (n == "1" || n.find_first_of("^-+ ") != std::string::npos)
            throw InputError("alphabet: reserved character in generator name '" + n + "'");
        if (!seen.insert(n).second) throw InputError("alphabet: duplicate generator name '" + n + "'");
    }
    for (int k : orders_)
        if (k != kInfiniteOrder && k < 2) throw InputError("alphabet: generator order must be 0 (infinite) or >= 2");
}

Alphabet Alphabet::free_group(std::vector<std::string> names)
{
    std::vector<int> orders(names.size(), kInfiniteOrder);
    return Alphabet(std::move(names), std::move(orders));
}

Alphabet Alphabet::cyclic_product(std::vector<std::string> names, int order)
{
    std::vector<int> orders(names.size(), order);
    return Alphabet(std::move(names), std::move(orders));
}

bool Alphabet::is_free() const
{
    return std::all_of(orders_.begin(), orders_.end(), [](int k) { return k == kInfiniteOrder; });
}

std::optional<std::size_t> Alphabet::index_of(const std::string& name) const
{
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - names_.begin());
}

// ---------------------------------------------------------------------------

namespace {

std::int64_t reduce_exponent(std::int64_t e, int order)
{
    if (order == kInfiniteOrder) return e;
    std::int64_t r = e % order;
    return r < 0 ? r + order : r;
}

}  // namespace

WordBuilder::WordBuilder(const Alphabet& alphabet, const GroupWord& start)
    : alphabet_(&alphabet), stack_(start.syllables())
{
}

void WordBuilder::push(Syllable s)
{
    if (s.gen >= alphabet_->size())
        throw InputError("word uses generator index " + std::to_string(s.gen) + " outside alphabet of size " +
                         std::to_string(alphabet_->size()));
    const int order = alphabet_->order(s.gen);
    if (!stack_.empty() && stack_.back().gen == s.gen) {
        std::int64_t e = reduce_exponent(stack_.back().exponent + s.exponent, order);
        if (e == 0)
            stack_.pop_back();
        else
            stack_.back().exponent = e;
        return;
    }
    s.exponent = reduce_exponent(s.exponent, order);
    if (s.exponent != 0) stack_.push_back(s);
}

void WordBuilder::push(const GroupWord& w)
{
    for (const auto& s : w.syllables()) push(s);
}

void WordBuilder::push_inverse(const GroupWord& w)
{
    const auto& syl = w.syllables();
    for (auto it = syl.rbegin(); it != syl.rend(); ++it) push(Syllable{it->gen, -it->exponent});
}

GroupWord WordBuilder::take()
{
    GroupWord w;
    w.syllables_ = std::move(stack_);
    stack_.clear();
    return w;
}

GroupWord GroupWord::from_syllables(const std::vector<Syllable>& syllables, const Alphabet& alphabet)
{
    WordBuilder b(alphabet);
    for (const auto& s : syllables) b.push(s);
    return b.take();
}

GroupWord GroupWord::generator(std::size_t gen, const Alphabet& alphabet, std::int64_t exponent)
{
    return from_syllables({Syllable{gen, exponent}}, alphabet);
}

void validate(const GroupWord& w, const Alphabet& alphabet)
{
    const auto& syl = w.syllables();
    for (std::size_t i = 0; i < syl.size(); ++i) {
        const auto& s = syl[i];
        if (s.gen >= alphabet.size())
            throw InputError("word uses generator index " + std::to_string(s.gen) + " outside alphabet");
        if (s.exponent == 0) throw InputError("word has a zero exponent syllable");
        const int k = alphabet.order(s.gen);
        if (k != kInfiniteOrder && (s.exponent < 1 || s.exponent > k - 1))
            throw InputError("torsion exponent outside [1, k-1] for generator '" + alphabet.name(s.gen) + "'");
        if (i > 0 && syl[i - 1].gen == s.gen) throw InputError("adjacent syllables share a generator");
    }
}

bool is_valid(const GroupWord& w, const Alphabet& alphabet)
{
    try {
        validate(w, alphabet);
        return true;
    } catch (const InputError&) {
        return false;
    }
}

GroupWord multiply(const GroupWord& lhs, const GroupWord& rhs, const Alphabet& alphabet)
{
    validate(lhs, alphabet);
    validate(rhs, alphabet);
    WordBuilder b(alphabet, lhs);
    b.push(rhs);
    return b.take();
}

GroupWord invert(const GroupWord& w, const Alphabet& alphabet)
{
    WordBuilder b(alphabet);
    b.push_inverse(w);
    return b.take();
}

GroupWord conjugate(const GroupWord& w, const GroupWord& by, const Alphabet& alphabet)
{
    WordBuilder b(alphabet);
    b.push_inverse(by);
    b.push(w);
    b.push(by);
    return b.take();
}

GroupWord power(const GroupWord& w, std::int64_t n, const Alphabet& alphabet)
{
    WordBuilder b(alphabet);
    for (std::int64_t i = 0; i < (n < 0 ? -n : n); ++i) {
        if (n > 0)
            b.push(w);
        else
            b.push_inverse(w);
    }
    return b.take();
}

GroupWord commutator(const GroupWord& lhs, const GroupWord& rhs, const Alphabet& alphabet)
{
    WordBuilder b(alphabet);
    b.push(lhs);
    b.push(rhs);
    b.push_inverse(lhs);
    b.push_inverse(rhs);
    return b.take();
}

std::vector<Letter> letters(const GroupWord& w)
{
    std::vector<Letter> out;
    out.reserve(letter_length(w));
    for (const auto& s : w.syllables()) {
        const Letter l{s.gen, s.exponent < 0};
        for (std::int64_t i = 0; i < (s.exponent < 0 ? -s.exponent : s.exponent); ++i) out.push_back(l);
    }
    return out;
}

std::size_t letter_length(const GroupWord& w)
{
    std::size_t n = 0;
    for (const auto& s : w.syllables()) n += static_cast<std::size_t>(s.exponent < 0 ? -s.exponent : s.exponent);
    return n;
}

std::vector<std::int64_t> exponent_sums(const GroupWord& w, const Alphabet& alphabet)
{
    std::vector<std::int64_t> sums(alphabet.size(), 0);
    for (const auto& s : w.syllables()) sums.at(s.gen) += s.exponent;
    return sums;
}

bool in_commutator_subgroup(const GroupWord& w, const Alphabet& alphabet)
{
    auto sums = exponent_sums(w, alphabet);
    for (std::size_t g = 0; g < sums.size(); ++g) {
        const int k = alphabet.order(g);
        if (k == kInfiniteOrder ? sums[g] != 0 : sums[g] % k != 0) return false;
    }
    return true;
}

bool shortlex_less(const GroupWord& lhs, const GroupWord& rhs)
{
    const auto ll = letter_length(lhs);
    const auto rl = letter_length(rhs);
    if (ll != rl) return ll < rl;
    const auto a = letters(lhs);
    const auto b = letters(rhs);
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [](const Letter& x, const Letter& y) { return x.key() < y.key(); });
}

CyclicForm cyclic_normal_form(const GroupWord& w, const Alphabet& alphabet)
{
    validate(w, alphabet);
    GroupWord core = w;
    GroupWord conj;
    // Merge matching end syllables: a^p X a^q  ~  a^{p+q} X, conjugating by a^q.
    while (core.syllables().size() >= 2 && core.syllables().front().gen == core.syllables().back().gen) {
        const Syllable last = core.syllables().back();
        WordBuilder b(alphabet);
        b.push(last);
        b.push(core);
        b.push(Syllable{last.gen, -last.exponent});
        core = b.take();
        WordBuilder c(alphabet);
        c.push(last);
        c.push(conj);
        conj = c.take();
    }

    const auto& syl = core.syllables();
    const std::size_t m = syl.size();
    std::size_t best = 0;
    std::vector<Syllable> best_rot(syl.begin(), syl.end());
    for (std::size_t s = 1; s < m; ++s) {
        std::vector<Syllable> rot(syl.begin() + static_cast<std::ptrdiff_t>(s), syl.end());
        rot.insert(rot.end(), syl.begin(), syl.begin() + static_cast<std::ptrdiff_t>(s));
        GroupWord cand = GroupWord::from_syllables(rot, alphabet);
        GroupWord cur = GroupWord::from_syllables(best_rot, alphabet);
        if (shortlex_less(cand, cur)) {
            best = s;
            best_rot = std::move(rot);
        }
    }
    if (best == 0) return {core, conj};

    // core = P Q with Q the suffix starting at `best`; rotation Q P = Q core Q^-1.
    GroupWord suffix = GroupWord::from_syllables(
        std::vector<Syllable>(syl.begin() + static_cast<std::ptrdiff_t>(best), syl.end()), alphabet);
    GroupWord rotated = GroupWord::from_syllables(best_rot, alphabet);
    WordBuilder c(alphabet);
    c.push(suffix);
    c.push(conj);
    return {rotated, c.take()};
}

// ---------------------------------------------------------------------------

namespace {

struct BallWalker {
  const Alphabet& alphabet;
  const std::function<void(const GroupWord&)>& visit;
  std::vector<Syllable> current;

  void extend(std::size_t remaining)
  {
      if (remaining == 0) {
          GroupWord w = GroupWord::from_syllables(current, alphabet);
          visit(w);
          return;
      }
      for (std::size_t g = 0; g < alphabet.size(); ++g) {
          const int k = alphabet.order(g);
          for (int sign : {1, -1}) {
              if (sign < 0 && k != kInfiniteOrder) continue;
              if (!current.empty() && current.back().gen == g) {
                  auto& last = current.back();
                  if (k == kInfiniteOrder) {
                      if ((last.exponent > 0) != (sign > 0)) continue;
                  } else if (last.exponent + 1 > k - 1) {
                      continue;
                  }
                  last.exponent += sign;
                  extend(remaining - 1);
                  current.back().exponent -= sign;
              } else {
                  current.push_back(Syllable{g, sign});
                  extend(remaining - 1);
                  current.pop_back();
              }
          }
      }
  }
};

}  // namespace

void for_each_ball_word(const Alphabet& alphabet, int radius, const std::function<void(const GroupWord&)>& visit)
{
    if (radius < 0) throw InputError("ball radius must be nonnegative");
    BallWalker walker{alphabet, visit, {}};
    for (int len = 0; len <= radius; ++len) walker.extend(static_cast<std::size_t>(len));
}

std::vector<GroupWord> enumerate_ball(const Alphabet& alphabet, int radius)
{
    std::vector<GroupWord> out;
    for_each_ball_word(alphabet, radius, [&](const GroupWord& w) { out.push_back(w); });
    return out;
}

std::vector<GroupWord> commutator_ball(const Alphabet& alphabet, int radius)
{
    std::vector<GroupWord> out;
    for_each_ball_word(alphabet, radius, [&](const GroupWord& w) {
        if (in_commutator_subgroup(w, alphabet)) out.push_back(w);
    });
    return out;
}

// ---------------------------------------------------------------------------

std::string format_word(const GroupWord& w, const Alphabet& alphabet)
{
    if (w.is_identity()) return "1";
    std::string out;
    for (const auto& s : w.syllables()) {
        out += alphabet.name(s.gen);
        if (s.exponent != 1) out += "^" + std::to_string(s.exponent);
    }
    return out;
}

GroupWord parse_word(const std::string& text, const Alphabet& alphabet)
{
    if (text == "1") return {};
    if (text.empty()) throw InputError("empty word text (use \"1\" for the identity)");
    WordBuilder b(alphabet);
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t best_len = 0;
        std::size_t best_gen = 0;
        for (std::size_t g = 0; g < alphabet.size(); ++g) {
            const auto& n = alphabet.name(g);
            if (n.size() > best_len && text.compare(pos, n.size(), n) == 0) {
                best_len = n.size();
                best_gen = g;
            }
        }
        if (best_len == 0)
            throw InputError("word '" + text + "': no generator matches at position " + std::to_string(pos));
        pos += best_len;
        std::int64_t exponent = 1;
        if (pos < text.size() && text[pos] == '^') {
            ++pos;
            std::size_t start = pos;
            if (pos < text.size() && text[pos] == '-') ++pos;
            while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
            const std::string digits = text.substr(start, pos - start);
            if (digits.empty() || digits == "-")
                throw InputError("word '" + text + "': missing exponent at position " + std::to_string(start));
            try {
                exponent = std::stoll(digits);
            } catch (const std::exception&) {
                throw InputError("word '" + text + "': exponent out of range");
            }
        }
        b.push(Syllable{best_gen, exponent});
    }
    return b.take();
}

std::size_t GroupWordHash::operator()(const GroupWord& w) const noexcept
{
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (const auto& s : w.syllables()) {
        h ^= std::hash<std::size_t>{}(s.gen) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h ^= std::hash<std::int64_t>{}(s.exponent) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

}  // namespace qforge
