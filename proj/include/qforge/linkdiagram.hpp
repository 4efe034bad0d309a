#pragma once

// Oriented link diagrams given as explicit crossing lists, their quandle
// presentations, Wirtinger presentations, and colorings by finite quandles.
//
// Convention at every crossing: x_{under_in} *^{sign} x_{over} = x_{under_out}.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "qforge/quandle.hpp"

namespace qforge {

struct Crossing {
  int over = 0;
  int under_in = 0;
  int under_out = 0;
  int sign = 1;
  bool operator==(const Crossing&) const = default;
};

struct DiagramCode {
  int arcs = 0;
  std::vector<Crossing> crossings;
  std::vector<std::vector<int>> components;  // arcs grouped along the strands
};

// Parses {"arcs": s, "crossings": [{"over", "under_in", "under_out", "sign"}, ...]}.
// Throws InputError naming the offending location.
DiagramCode parse_diagram(const std::string& text);
DiagramCode diagram_from_json(const nlohmann::json& j);
nlohmann::json to_json(const DiagramCode& code);

// x_k *^{sign} x_j = x_i
struct Relation {
  int k = 0;
  int j = 0;
  int i = 0;
  int sign = 1;
  bool operator==(const Relation&) const = default;
};

struct QuandlePresentation {
  int generators = 0;
  std::vector<Relation> relations;
};

QuandlePresentation presentation(const DiagramCode& code);

// Generators e_0 .. e_{s-1}; relator e_i^-1 e_j^-sign e_k e_j^sign per relation.
GroupPresentation wirtinger_presentation(const QuandlePresentation& pres);

struct ColoringResult {
  std::uint64_t count = 0;
  std::vector<std::vector<int>> colorings;  // filled when count <= kListedColorings
  bool brute_force_checked = false;
};

inline constexpr std::uint64_t kListedColorings = 100;
inline constexpr std::uint64_t kBruteForceLimit = 1000000;

// Backtracking count of arc colorings satisfying every relation. When
// |X|^s <= kBruteForceLimit the count is re-derived by plain enumeration and
// a mismatch throws CertificationFailure.
ColoringResult count_colorings(const QuandlePresentation& pres, const TableRack& rack);

nlohmann::json to_json(const QuandlePresentation& pres);

}  // namespace qforge
