#pragma once

// Frozen reference counts for complex dimension 5, keyed by the generator
// blocks and Psi labels of the reference table.

#include <optional>
#include <string>
#include <vector>

#include "chw/code.hpp"
#include "chw/matrix.hpp"
#include "chw/pipeline.hpp"

namespace chw::reference {

struct TableRow {
  std::vector<std::string> generators;
  int psi_label;  // 0 for the zero matrix, k for Psi_k
  std::uint64_t count;
};

inline PsiMatrix psi_from_rows(const std::vector<std::string>& rows) {
  PsiMatrix m(static_cast<int>(rows.size()));
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] == '1';
  return m;
}

inline PsiMatrix table_psi(int label) {
  switch (label) {
    case 1: return psi_from_rows({"00000", "00000", "00000", "11100", "11100"});
    case 2: return psi_from_rows({"00000", "00000", "11010", "11100", "00110"});
    case 3: return psi_from_rows({"00000", "00000", "11011", "11101", "00110"});
    case 4: return psi_from_rows({"00000", "00110", "01001", "10101", "11010"});
    default: return PsiMatrix(5);
  }
}

inline const std::vector<TableRow>& dim5_table() {
  static const std::vector<TableRow> rows = {
      {{}, 0, 667},
      {{"11000"}, 0, 1551},
      {{"11100"}, 0, 1716},
      {{"11110"}, 0, 1290},
      {{"11111"}, 0, 420},
      {{"11000", "10100"}, 0, 283},
      {{"11000", "10100"}, 1, 82},
      {{"11000", "00110"}, 0, 516},
      {{"11000", "10110"}, 0, 691},
      {{"11000", "00111"}, 0, 381},
      {{"11000", "10111"}, 0, 340},
      {{"11100", "10011"}, 0, 362},
      {{"11000", "10100", "10010"}, 0, 34},
      {{"11000", "10100", "10010"}, 1, 42},
      {{"11000", "10100", "10010"}, 2, 25},
      {{"11000", "10100", "00011"}, 0, 56},
      {{"11000", "10100", "00011"}, 1, 28},
      {{"11000", "10100", "00111"}, 0, 41},
      {{"11000", "10100", "00111"}, 1, 21},
      {{"11000", "00110", "10101"}, 0, 38},
      {{"11000", "00110", "10101"}, 3, 9},
      {{"11000", "10100", "10010", "10001"}, 0, 2},
      {{"11000", "10100", "10010", "10001"}, 1, 9},
      {{"11000", "10100", "10010", "10001"}, 2, 9},
      {{"11000", "10100", "10010", "10001"}, 4, 4},
  };
  return rows;
}

inline constexpr std::uint64_t kDim5TableSum = 8617;
inline constexpr std::uint64_t kDim5StatedTotal = 8616;

/// Moves a table (W, Psi) to the canonical code and returns the index of the
/// report row whose Psi representative lies in the same S(W)-orbit.
inline std::optional<std::size_t> locate_row(const ClassificationReport& report, const TableRow& row) {
  const Code w = Code::from_strings(5, row.generators);
  PsiMatrix psi = table_psi(row.psi_label);
  if (psi_violation(psi, w)) return std::nullopt;
  const Code canon = canonical_code(w);
  psi = relocate(psi, canonicalizing_permutation(w));
  normalize_psi(psi);
  const auto orbits = psi_orbits(enumerate_psi(canon), stabilizer(canon), canon);
  for (const auto& o : orbits) {
    if (std::find(o.members.begin(), o.members.end(), psi) == o.members.end()) continue;
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
      const auto& r = report.rows[i];
      if (Code::from_strings(5, r.w_generators) == canon && r.psi == o.representative) return i;
    }
  }
  return std::nullopt;
}

}  // namespace chw::reference
