#pragma once

// Group quasimorphisms on free groups and free products of cyclics.
//
// Four kinds are supported: homomorphisms (weights per generator), counting
// quasimorphisms (signed occurrence counts of a word), their exact
// homogenizations, and rational linear combinations. Every value carries a
// certified defect upper bound; over free products of cyclics the bound is
// empirical (measured, times a safety factor) and flagged as such.

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "json.hpp"

#include "qforge/rational.hpp"
#include "qforge/words.hpp"

namespace qforge {

class Quasimorphism {
 public:
  enum class Kind { kHomomorphism, kCounting, kHomogenizedCounting, kLinearCombination };
  using Term = std::pair<Rational, Quasimorphism>;

  static Quasimorphism homomorphism(std::vector<Rational> weights, const Alphabet& alphabet);
  // Without an explicit bound: 2(|w|-1) over free groups, empirical otherwise.
  static Quasimorphism counting(const GroupWord& w, const Alphabet& alphabet,
                                std::optional<Rational> defect_upper = std::nullopt);
  // Without an explicit bound: twice the counting bound over free groups,
  // empirical otherwise.
  static Quasimorphism homogenized_counting(const GroupWord& w, const Alphabet& alphabet,
                                            std::optional<Rational> defect_upper = std::nullopt);
  // Defect bound is sum |c_k| D_k; homogeneous iff every term is.
  static Quasimorphism linear_combination(std::vector<Term> terms);

  Kind kind() const { return kind_; }
  const GroupWord& word() const { return word_; }
  const std::vector<Rational>& weights() const { return weights_; }
  const std::vector<Term>& terms() const { return *terms_; }
  const Rational& defect_upper() const { return defect_upper_; }
  const Rational& defect_lower() const { return defect_lower_; }
  bool homogeneous() const { return homogeneous_; }
  bool empirical() const { return empirical_; }

  // Copy with defect_lower raised to `witnessed` if larger.
  Quasimorphism with_witnessed_defect(const Rational& witnessed) const;
  Quasimorphism with_defect_upper(const Rational& bound, bool empirical) const;

 private:
  Kind kind_ = Kind::kHomomorphism;
  GroupWord word_;
  std::vector<Rational> weights_;
  std::shared_ptr<const std::vector<Term>> terms_ = std::make_shared<std::vector<Term>>();
  Rational defect_upper_ = 0;
  Rational defect_lower_ = 0;
  bool homogeneous_ = true;
  bool empirical_ = false;
};

// Radius of the exhaustive scan behind empirical defect bounds.
inline constexpr int kEmpiricalDefectRadius = 4;
// Factor applied to the measured value to obtain an empirical bound.
inline constexpr int kEmpiricalSafetyFactor = 2;

Rational eval(const Quasimorphism& phi, const GroupWord& g, const Alphabet& alphabet);

Quasimorphism homogenize(const Quasimorphism& phi, const Alphabet& alphabet);

struct DefectMeasurement {
  Rational value;
  bool exhaustive = false;
  std::uint64_t pairs = 0;
};

// Max of |phi(g) + phi(h) - phi(gh)| over all pairs from ball(radius) when
// there are at most 1e6 of them, otherwise over `samples` seeded random pairs.
// Throws CertificationFailure if the result exceeds defect_upper.
DefectMeasurement measure_defect(const Quasimorphism& phi, const Alphabet& alphabet, int radius,
                                 std::uint64_t samples, std::uint64_t seed);

// Replaces the defect bound by kEmpiricalSafetyFactor times the exhaustive
// measurement at `radius`, marking the result empirical.
Quasimorphism calibrate_empirical_defect(const Quasimorphism& phi, const Alphabet& alphabet,
                                         int radius = kEmpiricalDefectRadius);

// True iff phi(h) == 0; for homogeneous phi this is vanishing on <h>.
bool vanishes_on_cyclic(const Quasimorphism& phi, const GroupWord& h, const Alphabet& alphabet);

struct CommutatorRestrictionReport {
  Rational max_abs;
  GroupWord argmax;
  std::size_t elements = 0;
  bool within_defect = false;
};
CommutatorRestrictionReport restriction_is_zero_on_commutators(const Quasimorphism& phi, const Alphabet& alphabet,
                                                               int radius);

struct SclBound {
  GroupWord element;
  Rational lower = 0;
  std::optional<std::size_t> witness;  // index into the family
};
// max over the family of |phi(g)| / (2 D(phi)); members with zero defect bound
// are skipped.
SclBound scl_lower_bound(const GroupWord& g, const std::vector<Quasimorphism>& family, const Alphabet& alphabet);

nlohmann::json to_json(const Quasimorphism& phi, const Alphabet& alphabet);
Quasimorphism quasimorphism_from_json(const nlohmann::json& j, const Alphabet& alphabet);

}  // namespace qforge
