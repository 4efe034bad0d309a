#pragma once

// Racks and quandles: finite operation tables, coset quandles
// \sqcup_i (G/H_i, z_i) over free groups and free products of cyclics, the
// permutation rack on Z, and the metric d(x, y) given by the least number of
// right operations carrying x to y.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "qforge/rational.hpp"
#include "qforge/words.hpp"

namespace qforge {

using Permutation = std::vector<int>;

// ---------------------------------------------------------------------------
// Finite racks

struct AxiomReport {
  bool well_formed = false;     // square table, entries in range
  bool right_invertible = false;  // every column is a permutation
  bool self_distributive = false;
  bool idempotent = false;
  bool is_rack() const { return well_formed && right_invertible && self_distributive; }
  bool is_quandle() const { return is_rack() && idempotent; }
  // First violation found, as element indices.
  std::optional<int> idempotence_witness;
  std::optional<std::pair<int, int>> column_witness;  // (column j, repeated value)
  std::optional<std::array<int, 3>> distributivity_witness;
  std::string message;
};

// Exhaustive check of the three axioms on a raw table, op[i][j] = i * j.
AxiomReport check_axioms(const std::vector<std::vector<int>>& op);

class TableRack {
 public:
  // Throws InputError unless the table is a rack.
  explicit TableRack(std::vector<std::vector<int>> op);

  int size() const { return size_; }
  int op(int x, int y) const { return op_[index(x, y)]; }
  int op_inv(int x, int y) const { return inv_[index(x, y)]; }
  bool is_quandle() const { return is_quandle_; }
  std::vector<std::vector<int>> table() const;
  // Column permutation S_y: x -> x * y.
  Permutation column(int y) const;

  bool operator==(const TableRack& other) const { return size_ == other.size_ && op_ == other.op_; }

 private:
  std::size_t index(int x, int y) const;
  int size_ = 0;
  std::vector<int> op_;
  std::vector<int> inv_;
  bool is_quandle_ = false;
};

TableRack dihedral_quandle(int n);             // i * j = 2j - i mod n
TableRack trivial_quandle(int n);              // i * j = i
TableRack alexander_quandle(int n, int t);     // i * j = t i + (1 - t) j mod n, gcd(t, n) = 1
TableRack cyclic_permutation_rack(int n);      // i * j = i + 1 mod n (not a quandle for n > 1)
// Conjugation quandle x * y = y^-1 x y on the group generated by `generators`.
TableRack conjugation_quandle(const std::vector<Permutation>& generators);
std::vector<Permutation> symmetric_group_generators(int n);

// Coset quandle of a finite permutation group: part i is (G/H_i, z_i) with
// H_i generated by subgroup_generators[i]. Throws InputError unless
// H_i <= C_G(z_i).
struct FiniteCosetPart {
  std::vector<Permutation> subgroup_generators;
  Permutation z;
};
TableRack finite_coset_quandle(const std::vector<Permutation>& group_generators,
                               const std::vector<FiniteCosetPart>& parts);

// Orbits of the group generated by all columns; each sorted, ordered by least element.
std::vector<std::vector<int>> components(const TableRack& rack);
// Order of Inn(X) = <S_x>, via Schreier-Sims.
Integer inner_group_order(const TableRack& rack);
// Order of the permutation group generated by `generators` on {0..n-1}.
Integer permutation_group_order(const std::vector<Permutation>& generators, int degree);

// ---------------------------------------------------------------------------
// Presentations and abelianization

struct AbelianInvariants {
  int free_rank = 0;
  std::vector<Integer> torsion;  // invariant factors > 1, each dividing the next
  std::string to_string() const;  // e.g. "Z^2 + Z/3"
  bool operator==(const AbelianInvariants&) const = default;
};

// Invariants of Z^columns / rowspan(relations), via Smith normal form.
AbelianInvariants abelian_invariants(const std::vector<std::vector<Integer>>& relations, std::size_t columns);

struct GroupPresentation {
  Alphabet generators;             // free alphabet e_0, ..., e_{n-1}
  std::vector<GroupWord> relators;  // each relator r means r = 1
  AbelianInvariants abelianization;
};

// Env(X) = < e_x | e_{x*y} = e_y^-1 e_x e_y >. Relators are stored as
// e_{x*y}^-1 e_y^-1 e_x e_y, one per pair (x, y) in row-major order.
GroupPresentation env_presentation(const TableRack& rack);

// ---------------------------------------------------------------------------
// Metric on finite racks

// Least n with y = (((x * x_1) * x_2) ... ) * x_n; nullopt if y is unreachable.
// Throws DomainError when x and y lie in different components.
std::optional<int> metric_distance(const TableRack& rack, int x, int y);
// Diameter of each component (same order as components()); unreachable
// ordered pairs inside a component cannot occur for finite racks.
std::vector<int> component_diameter(const TableRack& rack);

// ---------------------------------------------------------------------------
// Coset quandles over free groups / free products of cyclics

struct CosetPart {
  GroupWord h;  // generator of the cyclic stabilizer H_i = <h>
  GroupWord z;
};

struct CosetElement {
  std::size_t part = 0;
  GroupWord rep;  // canonical representative of H_part * rep
  bool operator==(const CosetElement&) const = default;
};

struct CosetElementHash {
  std::size_t operator()(const CosetElement& x) const noexcept;
};

// How a representative of a right coset H g is chosen.
//  kShortest: the shortlex-least element of H g (for h a single generator this
//             strips the leading h-syllable).
//  kShifted:  h^t * shortest with t = (|shortest| mod 3) - 1, a different but
//             equally valid choice used to test representative independence.
enum class ChooserRule { kShortest, kShifted };
std::string to_string(ChooserRule rule);

class CosetQuandle {
 public:
  // Throws InputError if some h_i does not commute with z_i.
  CosetQuandle(Alphabet alphabet, std::vector<CosetPart> parts);

  // FQ(S): parts (a_i, a_i) over F(S).
  static CosetQuandle free_quandle(std::vector<std::string> generators);
  // FQ_k(S): parts (a_i, a_i) over Z_k * ... * Z_k.
  static CosetQuandle free_k_quandle(std::vector<std::string> generators, int k);

  const Alphabet& alphabet() const { return alphabet_; }
  const std::vector<CosetPart>& parts() const { return parts_; }

  // Element H_part * g with canonical representative.
  CosetElement element(std::size_t part, const GroupWord& g) const;
  // Representative of H_part * g under `rule`.
  GroupWord representative(std::size_t part, const GroupWord& g, ChooserRule rule) const;

  // H_i x * H_j y = H_i z_i^-1 x y^-1 z_j y
  CosetElement op(const CosetElement& x, const CosetElement& y) const;
  // H_i x *^-1 H_j y = H_i z_i x y^-1 z_j^-1 y
  CosetElement op_inv(const CosetElement& x, const CosetElement& y) const;

  // All distinct elements of part `part` whose canonical representative has
  // letter length <= radius, in shortlex order of representatives.
  std::vector<CosetElement> truncated_part(std::size_t part, int radius) const;
  std::vector<CosetElement> truncated_elements(int radius) const;

 private:
  void check_element(const CosetElement& x) const;
  Alphabet alphabet_;
  std::vector<CosetPart> parts_;
};

// Parts of X2 follow those of X1 over the concatenated alphabet. Throws
// InputError when generator names collide.
CosetQuandle free_product(const CosetQuandle& lhs, const CosetQuandle& rhs);

// Distance with operating elements restricted to representatives in
// ball(op_radius); nullopt means "> cap". This is an upper bound for the
// unrestricted metric. Throws DomainError for different parts (the part index
// is invariant under the action, so different parts are different components).
std::optional<int> metric_distance(const CosetQuandle& quandle, const CosetElement& x, const CosetElement& y,
                                   int cap, int op_radius = 3);

// BFS restricted to elements with representatives of length <= radius, with
// every such element available as an operator.
struct TruncatedMetric {
  int radius = 0;
  std::size_t states = 0;
  int value = 0;              // eccentricity or diameter over reachable pairs
  std::size_t unreachable = 0;  // ordered pairs with no path inside the truncation
};
TruncatedMetric truncated_eccentricity(const CosetQuandle& quandle, const CosetElement& base, int radius);
// One entry per part.
std::vector<TruncatedMetric> truncated_component_diameters(const CosetQuandle& quandle, int radius);

// ---------------------------------------------------------------------------
// The permutation rack on Z with m * k = m + 1.

struct PermutationRackZ {
  static std::int64_t op(std::int64_t m, std::int64_t /*k*/) { return m + 1; }
  static std::int64_t op_inv(std::int64_t m, std::int64_t /*k*/) { return m - 1; }
};

// ---------------------------------------------------------------------------
// JSON

nlohmann::json to_json(const TableRack& rack);
TableRack table_rack_from_json(const nlohmann::json& j);
// Raw table without the rack check (for check_axioms on arbitrary input).
std::vector<std::vector<int>> operation_table_from_json(const nlohmann::json& j);

nlohmann::json to_json(const CosetQuandle& quandle);
CosetQuandle coset_quandle_from_json(const nlohmann::json& j);

}  // namespace qforge
