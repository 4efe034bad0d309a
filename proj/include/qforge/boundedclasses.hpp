#pragma once

// Quandle quasimorphisms built from homogeneous group quasimorphisms on
// coset quandles, and the certificates attached to their bounded 2-cocycles
// delta^1(phi_X): defect bound, unbounded growth, independence from the
// choice of coset representatives, and nontriviality of linear combinations.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "qforge/quandle.hpp"
#include "qforge/quasimorphism.hpp"
#include "qforge/rational.hpp"
#include "qforge/words.hpp"

namespace qforge {

inline constexpr int kDefaultBaseRadius = 4;

// phi_X(H_{i0} a) = phi(x) with x the representative of H_{i0} a under the
// chooser, and phi_X = 0 on every other part.
class QuandleQuasimorphism {
 public:
  // Throws PreconditionError unless phi is homogeneous and phi(h_{i0}) = 0.
  QuandleQuasimorphism(CosetQuandle quandle, Quasimorphism source, std::size_t part,
                       ChooserRule chooser = ChooserRule::kShortest, int base_radius = kDefaultBaseRadius);

  const CosetQuandle& quandle() const { return quandle_; }
  const Quasimorphism& source() const { return source_; }
  std::size_t part() const { return part_; }
  ChooserRule chooser() const { return chooser_; }

  // Representative x_{j0} with phi(x_{j0}) != 0, found by scanning ball words.
  const std::optional<GroupWord>& base() const { return base_; }
  const std::optional<std::string>& warning() const { return warning_; }

  Rational eval(const CosetElement& x) const;
  // delta^1(phi_X)(x, y) = phi_X(x) - phi_X(x * y)
  Rational coboundary(const CosetElement& x, const CosetElement& y) const;

 private:
  CosetQuandle quandle_;
  Quasimorphism source_;
  std::size_t part_;
  ChooserRule chooser_;
  std::optional<GroupWord> base_;
  std::optional<std::string> warning_;
};

QuandleQuasimorphism build_phi_X(const CosetQuandle& quandle, const Quasimorphism& phi, std::size_t part,
                                 ChooserRule chooser = ChooserRule::kShortest,
                                 int base_radius = kDefaultBaseRadius);

struct DefectReport {
  Rational observed;      // max |phi_X(x) - phi_X(x * y)| over the scanned pairs
  Rational bound;         // max_r |phi(z_{i0}) - phi(z_r)| + 6 D(phi)
  bool exhaustive = false;
  std::uint64_t pairs = 0;
  int radius = 0;
  std::uint64_t seed = 0;
  bool empirical = false;
  std::optional<std::pair<CosetElement, CosetElement>> argmax;
};

// Pairs come from elements with representatives of length <= radius: all of
// them when there are at most 1e6 pairs, otherwise `samples` seeded pairs.
// Throws CertificationFailure if the bound is exceeded.
DefectReport defect_report(const QuandleQuasimorphism& phi_x, int radius, std::uint64_t samples, std::uint64_t seed);

struct GrowthCertificate {
  GroupWord base;
  Rational base_value;           // phi(x_{j0})
  Rational defect;               // D(phi) used in the bound
  std::vector<std::int64_t> ns;  // 0 .. n_max
  std::vector<Rational> values;  // phi_X(H_{i0} x_{j0}^n)
  Rational slope;                // |phi(x_{j0})|
  bool empirical = false;
};

// Checks |phi_X(H_{i0} x^n)| >= n |phi(x)| - D(phi) for n = 0 .. n_max with
// x = base (default: phi_x.base()). Throws PreconditionError without a base
// and CertificationFailure on a violation.
GrowthCertificate growth_certificate(const QuandleQuasimorphism& phi_x, int n_max,
                                     const std::optional<GroupWord>& base = std::nullopt);

struct ChooserReport {
  ChooserRule first = ChooserRule::kShortest;
  ChooserRule second = ChooserRule::kShifted;
  Rational eta_sup;    // max |eta| over the sampled cosets
  Rational eta_bound;  // D(phi)
  std::size_t cosets = 0;
  std::size_t pairs = 0;
  std::size_t eta_nonzero = 0;
  bool coboundaries_equal = true;
  std::uint64_t seed = 0;
};

// eta(H_{i0} g) = phi(x) - phi(y) for the two representatives x, y. Verifies
// ||eta|| <= D(phi) on all elements of radius <= radius and
// delta^1(phi_X - phi_X') = delta^1(eta) on `pairs` seeded pairs.
// Throws CertificationFailure if either check fails.
ChooserReport chooser_independence(const CosetQuandle& quandle, const Quasimorphism& phi, std::size_t part,
                                   ChooserRule first, ChooserRule second, int radius, std::size_t pairs,
                                   std::uint64_t seed);

struct IndependenceTrial {
  std::vector<Rational> coefficients;
  std::optional<GrowthCertificate> witness;  // nullopt: inconclusive at this radius
};

struct IndependenceReport {
  std::vector<IndependenceTrial> trials;
  std::size_t witnesses = 0;
  std::size_t inconclusive = 0;
  int ball_radius = 0;
  int n_max = 0;
  std::uint64_t seed = 0;
};

// For each trial, draws seeded nonzero rational coefficients c, searches the
// ball for a representative g with sum c_k phi_k(g) != 0 and certifies growth
// of the combination along g^n. Trial t uses seed + t.
IndependenceReport independence_certificate(const std::vector<QuandleQuasimorphism>& family,
                                            std::size_t coeff_trials, int ball_radius, int n_max,
                                            std::uint64_t seed);
// Single trial with given coefficients. Throws InputError if all are zero.
IndependenceTrial independence_trial(const std::vector<QuandleQuasimorphism>& family,
                                     const std::vector<Rational>& coefficients, int ball_radius, int n_max);

// e_n on the permutation rack Z (m * k = m + 1): e_n(m) = m - n for m >= n,
// and 0 otherwise.
struct EnQuasimorphism {
  std::int64_t n = 0;
  Rational eval(std::int64_t m) const;
  Rational coboundary(std::int64_t m, std::int64_t k) const;
};
EnQuasimorphism en_family(std::int64_t n);

struct EnFamilyReport {
  std::vector<std::int64_t> ns;
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  bool coboundary_bounded = true;  // |delta^1 e_n| <= 1 on [lo, hi]
  bool unit_above_n = true;        // |delta^1 e_n(m, k)| = 1 for m >= n
  bool linear_growth = true;       // e_n(n + t) = t
  bool pairwise_distinct = true;
  std::size_t coboundary_rank = 0;  // rank of the truncated coboundary vectors
};
EnFamilyReport en_family_report(const std::vector<std::int64_t>& ns, std::int64_t lo, std::int64_t hi);

struct KQuandleReport {
  Alphabet alphabet;
  std::size_t generators = 0;
  int k = 0;
  GroupWord word;
  std::optional<std::string> warning;
  Quasimorphism phi;
  std::optional<GroupWord> base;
  std::optional<GrowthCertificate> growth;
  std::optional<DefectReport> defect;
  bool certified = false;
};

// FQ_k(S) with the homogenized counting quasimorphism of `word` (empirical
// defect), phi_X on the first part, defect report and growth certificate.
KQuandleReport k_quandle_pipeline(const std::vector<std::string>& generators, int k, const std::string& word,
                                  int n_max, int radius, std::uint64_t samples, std::uint64_t seed);

nlohmann::json to_json(const DefectReport& r, const Alphabet& alphabet);
nlohmann::json to_json(const GrowthCertificate& c, const Alphabet& alphabet);
nlohmann::json to_json(const ChooserReport& r);
nlohmann::json to_json(const IndependenceReport& r, const Alphabet& alphabet);
nlohmann::json to_json(const EnFamilyReport& r);
nlohmann::json to_json(const KQuandleReport& r);

}  // namespace qforge
