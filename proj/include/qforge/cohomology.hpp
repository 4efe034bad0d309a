#pragma once

// Rack and quandle cochain complexes of finite racks with rational
// coefficients, exact ranks, and low-degree cohomology.
//
// Tuples (x_1, ..., x_n) are indexed row-major: x_1 is the most significant
// digit in base |X|.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "qforge/quandle.hpp"
#include "qforge/rational.hpp"

namespace qforge {

enum class Theory { kRack, kQuandle };
std::string to_string(Theory theory);
Theory parse_theory(const std::string& text);

// Highest cochain degree n for which delta^n is assembled.
inline constexpr int kMaxCoboundaryDegree = 3;

struct Cochain {
  int degree = 0;
  std::vector<Rational> values;  // |X|^degree entries
};

// delta^n f for a cochain f of degree n <= kMaxCoboundaryDegree:
// sum_{i=1}^{n+1} (-1)^i (f(.. x_i omitted ..) - f(x_1*x_i, .., x_{i-1}*x_i, x_{i+1}, ..)).
Cochain coboundary(const TableRack& rack, const Cochain& f);

// True iff f vanishes on every tuple with x_i = x_{i+1}.
bool vanishes_on_degenerate(const TableRack& rack, const Cochain& f);

struct SparseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> row_entries;  // sorted by column

  std::size_t nonzeros() const;
  bool is_zero() const { return nonzeros() == 0; }
};

SparseMatrix operator*(const SparseMatrix& lhs, const SparseMatrix& rhs);
std::size_t rank(const SparseMatrix& m);

// Basis of C^n: all tuples (rack theory) or the non-degenerate ones
// (quandle theory, n >= 2). Entries are tuple indices in increasing order.
std::vector<std::size_t> cochain_basis(const TableRack& rack, int degree, Theory theory);

// Matrix of delta^n : C^n -> C^{n+1} in the bases above.
SparseMatrix coboundary_matrix(const TableRack& rack, int degree, Theory theory);

// Checks that delta^n of every cochain vanishing on degenerate n-tuples
// vanishes on degenerate (n+1)-tuples.
bool degenerate_subcomplex_preserved(const TableRack& rack, int degree);

// dim ker delta^n - rank delta^{n-1}, for n in {1, 2, 3}.
std::size_t cohomology_dimension(const TableRack& rack, int degree, Theory theory);

struct ComparisonReport {
  int degree = 2;
  Theory theory = Theory::kQuandle;
  std::size_t cohomology = 0;          // dim H^n
  std::size_t bounded_cohomology = 0;  // dim H^n_b
  std::size_t comparison_kernel = 0;   // dim ker c^n
};

// For a finite carrier every cochain is bounded, so H^n_b = H^n and c^n is
// the identity.
ComparisonReport bounded_comparison_finite(const TableRack& rack, int degree = 2,
                                           Theory theory = Theory::kQuandle);

nlohmann::json to_json(const Cochain& f);
Cochain cochain_from_json(const nlohmann::json& j, const TableRack& rack);

}  // namespace qforge
