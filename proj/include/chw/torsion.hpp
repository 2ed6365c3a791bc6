#pragma once

// The torsion-free condition on pairs, and an independent check built
// directly on 4-torsion coordinates of the points x_i^j.

#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "chw/code.hpp"
#include "chw/equivalence.hpp"
#include "chw/klein.hpp"
#include "chw/matrix.hpp"

namespace chw {

using IndexSet = std::uint32_t;  // bit i = index i (0-based)

/// Proper subsets of {0..n-1} of odd size, by increasing size then value.
inline const std::vector<IndexSet>& proper_odd_subsets(int n) {
  static const auto table = [] {
    std::array<std::vector<IndexSet>, kMaxDim + 1> t;
    for (int m = 1; m <= kMaxDim; ++m)
      for (int size = 1; size < m; size += 2)
        for (IndexSet s = 1; s < (IndexSet{1} << m); ++s)
          if (std::popcount(s) == size) t[static_cast<std::size_t>(m)].push_back(s);
    return t;
  }();
  if (n < 1 || n > kMaxDim) throw std::invalid_argument("proper_odd_subsets: dimension out of range");
  return table[static_cast<std::size_t>(n)];
}

/// Signed alternating sum of column j over I, split at the position of j:
/// sum_{k<p} (-1)^(k-1) psi_{i_k j} - sum_{k>p} (-1)^(k-1) psi_{i_k j}
/// where i_1 < ... < i_m lists I and j = i_p.
inline int psi_I_j(const PsiMatrix& psi, IndexSet subset, int j) {
  if (!((subset >> j) & 1u)) throw std::invalid_argument("psi_I_j: index is not in the subset");
  int total = 0;
  int pos = 0;  // 0-based position within the subset
  bool after = false;
  for (int i = 0; i < psi.n; ++i) {
    if (!((subset >> i) & 1u)) continue;
    if (i == j) {
      after = true;
    } else if (psi(i, j)) {
      const int sign = (pos % 2 == 0) ? 1 : -1;
      total += after ? -sign : sign;
    }
    ++pos;
  }
  return total;
}

inline bool subset_passes(const PsiMatrix& psi, const PhiMatrix& phi, IndexSet subset) {
  for (int j = 0; j < phi.n; ++j) {
    if (!((subset >> j) & 1u)) continue;
    const int s = psi_I_j(psi, subset, j);
    if (s % 2 != 0) return true;
    Klein sum = Klein::Zero;
    for (int k = 0; k < phi.n; ++k)
      if ((subset >> k) & 1u) sum += phi(k, j);
    if (sum != tau_times(s / 2)) return true;
  }
  return false;
}

/// For every proper odd-size subset I some j in I has psi_Ij odd or the
/// Klein sum of column j over I different from (psi_Ij / 2) * tau.
inline bool torsion_free(const PsiMatrix& psi, const PhiMatrix& phi) {
  for (IndexSet subset : proper_odd_subsets(phi.n))
    if (!subset_passes(psi, phi, subset)) return false;
  return true;
}

inline bool torsion_free(const Pair& p) { return torsion_free(p.psi, p.phi); }

inline bool class_is_manifold(const std::vector<Pair>& orbit) {
  for (const auto& p : orbit)
    if (!torsion_free(p)) return false;
  return true;
}

struct PointTable {
  int n = 0;
  std::array<std::array<E4Point, kMaxDim>, kMaxDim> x{};  // x[i][j] = x_i^j
  std::array<E4Point, kMaxDim> t{};
};

/// x_i^j = kappa^{-1}(phi_ij) + psi_ij * y_j with y_j = (0,1).
inline PointTable build_points(const PsiMatrix& psi, const PhiMatrix& phi) {
  PointTable pt;
  pt.n = phi.n;
  for (int i = 0; i < pt.n; ++i) {
    pt.t[static_cast<std::size_t>(i)] = kTorsionT;
    for (int j = 0; j < pt.n; ++j)
      pt.x[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = kappa_inv(phi(i, j)) + static_cast<long long>(psi(i, j)) * kSqrtT;
  }
  return pt;
}

inline PointTable build_points(const Pair& p) { return build_points(p.psi, p.phi); }

namespace detail {

inline E4Point pt_at(const PointTable& pt, int i, int j) {
  return pt.x[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
}

// x_I^j with the sign split at the position of j when j is in I.
inline E4Point alternating_point(const PointTable& pt, IndexSet subset, int j) {
  E4Point total;
  int pos = 0;
  bool after = false;
  const bool j_in = (subset >> j) & 1u;
  for (int i = 0; i < pt.n; ++i) {
    if (!((subset >> i) & 1u)) continue;
    const long long sign = (pos % 2 == 0) ? 1 : -1;
    total = total + (after ? -sign : sign) * pt_at(pt, i, j);
    if (j_in && i == j) after = true;
    ++pos;
  }
  return total;
}

inline E4Point word_point(const PointTable& pt, Word w, int j) {
  return word_bit(w, j) ? pt.t[static_cast<std::size_t>(j)] : E4Point{};
}

}  // namespace detail

struct OracleVerdict {
  bool diagonal = true;    // x_i^i nonzero 2-torsion, distinct from t_i
  bool commutators = true; // condition i)
  bool free_action = true; // condition ii)
  bool last_row = true;    // condition iii)
  bool ok() const noexcept { return diagonal && commutators && free_action && last_row; }
};

inline OracleVerdict oracle_verdict(const PointTable& pt, const Code& w) {
  OracleVerdict v;
  const int n = pt.n;
  for (int i = 0; i < n; ++i) {
    const E4Point d = detail::pt_at(pt, i, i);
    if (!d.is_two_torsion() || d == E4Point{} || d == pt.t[static_cast<std::size_t>(i)]) v.diagonal = false;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      Word word = 0;
      for (int k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        const E4Point d = 2 * (detail::pt_at(pt, i, k) - detail::pt_at(pt, j, k));
        if (d == pt.t[static_cast<std::size_t>(k)])
          word |= Word{1} << k;
        else if (d != E4Point{})
          v.commutators = false;
      }
      if (!w.contains(word)) v.commutators = false;
    }
  for (IndexSet subset : proper_odd_subsets(n)) {
    for (Word c : w.codewords()) {
      bool differs = false;
      for (int j = 0; j < n && !differs; ++j)
        if ((subset >> j) & 1u) differs = detail::alternating_point(pt, subset, j) != detail::word_point(pt, c, j);
      if (!differs) v.free_action = false;
    }
  }
  const IndexSet all_but_last = (IndexSet{1} << (n - 1)) - 1;
  for (int j = 0; j < n; ++j)
    if (detail::pt_at(pt, n - 1, j) != detail::alternating_point(pt, all_but_last, j)) v.last_row = false;
  return v;
}

inline bool oracle_conditions(const PointTable& pt, const Code& w) { return oracle_verdict(pt, w).ok(); }

inline bool oracle_is_manifold(const Pair& p) { return oracle_conditions(build_points(p), p.w); }

}  // namespace chw
