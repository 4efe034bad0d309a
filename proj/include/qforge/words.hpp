#pragma once

// Exact arithmetic in free groups F(S) and free products of cyclic groups
// Z_k * ... * Z_k. Words are plain values in syllable normal form; every
// operation takes the Alphabet they live over explicitly.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qforge {

// Order 0 marks an infinite-order (free) generator.
inline constexpr int kInfiniteOrder = 0;

class Alphabet {
 public:
  Alphabet() = default;
  Alphabet(std::vector<std::string> names, std::vector<int> orders);

  static Alphabet free_group(std::vector<std::string> names);
  static Alphabet cyclic_product(std::vector<std::string> names, int order);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t gen) const { return names_.at(gen); }
  int order(std::size_t gen) const { return orders_.at(gen); }
  bool is_torsion(std::size_t gen) const { return orders_.at(gen) != kInfiniteOrder; }
  bool is_free() const;
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<int>& orders() const { return orders_; }
  std::optional<std::size_t> index_of(const std::string& name) const;

  bool operator==(const Alphabet&) const = default;

 private:
  std::vector<std::string> names_;
  std::vector<int> orders_;
};

struct Syllable {
  std::size_t gen = 0;
  std::int64_t exponent = 0;
  bool operator==(const Syllable&) const = default;
};

// A single letter of the expanded word: generator and sign. Torsion
// generators only ever produce positive letters.
struct Letter {
  std::size_t gen = 0;
  bool inverse = false;
  bool operator==(const Letter&) const = default;
  // Generator order first, positive before negative.
  int key() const { return static_cast<int>(2 * gen + (inverse ? 1 : 0)); }
};

class GroupWord {
 public:
  GroupWord() = default;

  // Normalizes an arbitrary syllable list over `alphabet`.
  static GroupWord from_syllables(const std::vector<Syllable>& syllables, const Alphabet& alphabet);
  static GroupWord generator(std::size_t gen, const Alphabet& alphabet, std::int64_t exponent = 1);

  const std::vector<Syllable>& syllables() const { return syllables_; }
  bool is_identity() const { return syllables_.empty(); }

  bool operator==(const GroupWord&) const = default;

 private:
  std::vector<Syllable> syllables_;
  friend class WordBuilder;
};

// Incremental normal-form reducer: push syllables, read the result.
class WordBuilder {
 public:
  explicit WordBuilder(const Alphabet& alphabet) : alphabet_(&alphabet) {}
  WordBuilder(const Alphabet& alphabet, const GroupWord& start);

  void push(Syllable s);
  void push(const GroupWord& w);
  void push_inverse(const GroupWord& w);
  GroupWord take();

 private:
  const Alphabet* alphabet_;
  std::vector<Syllable> stack_;
};

// Throws InputError unless `w` is a normal-form word over `alphabet`.
void validate(const GroupWord& w, const Alphabet& alphabet);
bool is_valid(const GroupWord& w, const Alphabet& alphabet);

GroupWord multiply(const GroupWord& lhs, const GroupWord& rhs, const Alphabet& alphabet);
GroupWord invert(const GroupWord& w, const Alphabet& alphabet);
// by^-1 * w * by
GroupWord conjugate(const GroupWord& w, const GroupWord& by, const Alphabet& alphabet);
GroupWord power(const GroupWord& w, std::int64_t n, const Alphabet& alphabet);
// lhs * rhs * lhs^-1 * rhs^-1
GroupWord commutator(const GroupWord& lhs, const GroupWord& rhs, const Alphabet& alphabet);

std::vector<Letter> letters(const GroupWord& w);
std::size_t letter_length(const GroupWord& w);
std::vector<std::int64_t> exponent_sums(const GroupWord& w, const Alphabet& alphabet);
bool in_commutator_subgroup(const GroupWord& w, const Alphabet& alphabet);

// Length first, then lexicographic on letters.
bool shortlex_less(const GroupWord& lhs, const GroupWord& rhs);

// Returns (c, u) with w = u^-1 c u, c cyclically reduced and lexicographically
// minimal among its syllable rotations (smallest rotation wins ties).
struct CyclicForm {
  GroupWord core;
  GroupWord conjugator;
};
CyclicForm cyclic_normal_form(const GroupWord& w, const Alphabet& alphabet);

// Visits every normal-form word of letter length <= radius exactly once, in
// length-then-lexicographic order.
void for_each_ball_word(const Alphabet& alphabet, int radius, const std::function<void(const GroupWord&)>& visit);
std::vector<GroupWord> enumerate_ball(const Alphabet& alphabet, int radius);
std::vector<GroupWord> commutator_ball(const Alphabet& alphabet, int radius);

// Text form: "a^2b^-1", identity "1". Parsing matches the longest generator
// name at each position and normalizes the result.
std::string format_word(const GroupWord& w, const Alphabet& alphabet);
GroupWord parse_word(const std::string& text, const Alphabet& alphabet);

struct GroupWordHash {
  std::size_t operator()(const GroupWord& w) const noexcept;
};

}  // namespace qforge
