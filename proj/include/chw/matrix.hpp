#pragma once

// The matrix spaces attached to a code W: binary matrices Psi and Klein
// matrices Phi, their structural constraints, and their enumeration.
//
// Indices are 0-based throughout. The reference row of column j is row 1
// for j = 0 and row 0 otherwise.

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "chw/code.hpp"
#include "chw/klein.hpp"
#include "chw/permutation.hpp"

namespace chw {

inline constexpr int kMaxDim = 7;

constexpr int ref_row(int j) noexcept { return j == 0 ? 1 : 0; }

// Row whose entry in column j absorbs the column-sum law.
constexpr int slack_row(int n, int j) noexcept { return j < n - 1 ? n - 1 : n - 2; }

inline void check_dim(int n) {
  if (n < 2 || n > kMaxDim) throw std::invalid_argument("matrix dimension must be in [2, " + std::to_string(kMaxDim) + "]");
}

template <typename T>
struct SquareMatrix {
  int n = 0;
  std::array<T, kMaxDim * kMaxDim> e{};

  SquareMatrix() = default;
  explicit SquareMatrix(int dim) : n(dim) { check_dim(dim); }

  T& operator()(int i, int j) noexcept { return e[static_cast<std::size_t>(i * kMaxDim + j)]; }
  T operator()(int i, int j) const noexcept { return e[static_cast<std::size_t>(i * kMaxDim + j)]; }

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

  // Row-major lexicographic order (entry (0,0) most significant).
  friend std::strong_ordering operator<=>(const SquareMatrix& a, const SquareMatrix& b) {
    if (auto c = a.n <=> b.n; c != 0) return c;
    for (int i = 0; i < a.n; ++i)
      for (int j = 0; j < a.n; ++j)
        if (auto c = a(i, j) <=> b(i, j); c != 0) return c;
    return std::strong_ordering::equal;
  }
};

using PsiMatrix = SquareMatrix<std::uint8_t>;
using PhiMatrix = SquareMatrix<Klein>;

inline bool is_zero(const PsiMatrix& psi) {
  for (int i = 0; i < psi.n; ++i)
    for (int j = 0; j < psi.n; ++j)
      if (psi(i, j)) return false;
  return true;
}

/// Smallest row i != j with psi(i,j) == 1, or -1.
inline int first_one_row(const PsiMatrix& psi, int j) noexcept {
  for (int i = 0; i < psi.n; ++i)
    if (i != j && psi(i, j)) return i;
  return -1;
}

/// sum_{i<j} (-1)^i psi_ij - sum_{i>j} (-1)^i psi_ij  (0-based signs).
inline int column_signed_sum(const PsiMatrix& psi, int j) noexcept {
  int s = 0;
  for (int i = 0; i < psi.n; ++i) {
    if (i == j || !psi(i, j)) continue;
    const int sign = (i % 2 == 0) ? 1 : -1;
    s += (i < j) ? sign : -sign;
  }
  return s;
}

/// Required Klein sum of column j of Phi: half the signed sum, times tau.
inline Klein column_target(const PsiMatrix& psi, int j) {
  const int s = column_signed_sum(psi, j);
  if (s % 2 != 0) throw std::domain_error("column_target: signed column sum is odd");
  return tau_times(s / 2);
}

/// Word with bit k set iff psi(i,k) != psi(j,k), for k outside {i, j}.
inline Word row_difference(const PsiMatrix& psi, int i, int j) noexcept {
  Word w = 0;
  for (int k = 0; k < psi.n; ++k)
    if (k != i && k != j && psi(i, k) != psi(j, k)) w |= Word{1} << k;
  return w;
}

/// First violated Psi invariant relative to W, if any.
inline std::optional<std::string> psi_violation(const PsiMatrix& psi, const Code& w) {
  const int n = psi.n;
  if (n != w.n()) return "dimension mismatch between psi and code";
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (psi(i, j) > 1) return "psi entries must be 0 or 1";
  for (int i = 0; i < n; ++i)
    if (psi(i, i)) return "psi diagonal must be 0";
  for (int j = 0; j < n; ++j)
    if (psi(ref_row(j), j)) return "psi reference rows must be 0";
  for (int j = 0; j < n; ++j) {
    int sum = 0;
    for (int i = 0; i < n; ++i) sum += psi(i, j);
    if (sum % 2 != 0) return "psi column sums must be even";
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!w.contains(row_difference(psi, i, j))) return "psi row differences must lie in W";
  return std::nullopt;
}

/// First violated Phi invariant relative to Psi, if any.
inline std::optional<std::string> phi_violation(const PhiMatrix& phi, const PsiMatrix& psi) {
  const int n = phi.n;
  if (n != psi.n) return "dimension mismatch between phi and psi";
  for (int i = 0; i < n; ++i)
    if (phi(i, i) != Klein::One) return "diagonal must be 1";
  for (int j = 0; j < n; ++j)
    if (phi(ref_row(j), j) != Klein::Zero) return "phi reference rows must be 0";
  for (int j = 0; j < n; ++j)
    if (int k = first_one_row(psi, j); k >= 0 && phi(k, j) != Klein::Zero) return "phi must vanish at the first 1 of each psi column";
  for (int j = 0; j < n; ++j) {
    Klein sum = Klein::Zero;
    for (int i = 0; i < n; ++i) sum += phi(i, j);
    if (column_signed_sum(psi, j) % 2 != 0 || sum != column_target(psi, j)) return "phi column sums must match the psi target";
  }
  return std::nullopt;
}

/// All Psi admissible for W, in ascending row-major order.
inline std::vector<PsiMatrix> enumerate_psi(const Code& w) {
  const int n = w.n();
  check_dim(n);
  // Row i agrees with row 0 (which is zero) outside {0, i} up to a codeword,
  // so every row is drawn from the codewords vanishing at 0 and i.
  std::vector<std::vector<Word>> row_options(static_cast<std::size_t>(n));
  for (int i = 1; i < n; ++i) {
    auto& opts = row_options[static_cast<std::size_t>(i)];
    for (Word c : w.codewords())
      if (!word_bit(c, 0) && !word_bit(c, i)) opts.push_back(c);
    // Column 0 carries no constraint from row 0 (its reference row is 1),
    // so rows >= 2 may set it freely.
    if (i >= 2) {
      const std::size_t m = opts.size();
      for (std::size_t t = 0; t < m; ++t) opts.push_back(opts[t] | Word{1});
    }
    // ascending lexicographic order with column 0 most significant
    std::sort(opts.begin(), opts.end(), [n](Word a, Word b) {
      for (int k = 0; k < n; ++k)
        if (word_bit(a, k) != word_bit(b, k)) return word_bit(b, k);
      return false;
    });
  }

  std::vector<PsiMatrix> out;
  PsiMatrix cur(n);
  auto set_row = [&](int i, Word r) {
    for (int k = 0; k < n; ++k) cur(i, k) = word_bit(r, k) ? 1 : 0;
  };
  auto recurse = [&](auto&& self, int i) -> void {
    if (i == n) {
      for (int j = 0; j < n; ++j) {
        int sum = 0;
        for (int r = 0; r < n; ++r) sum += cur(r, j);
        if (sum % 2 != 0) return;
      }
      out.push_back(cur);
      return;
    }
    for (Word r : row_options[static_cast<std::size_t>(i)]) {
      set_row(i, r);
      bool ok = true;
      for (int p = 1; p < i && ok; ++p) ok = w.contains(row_difference(cur, p, i));
      if (ok) self(self, i + 1);
    }
    set_row(i, 0);
  };
  recurse(recurse, 1);
  return out;
}

/// psi'(sigma(i), sigma(j)) = psi(i, j).
template <typename T>
SquareMatrix<T> relocate(const SquareMatrix<T>& m, const Permutation& sigma) {
  SquareMatrix<T> out(m.n);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) out(sigma(i), sigma(j)) = m(i, j);
  return out;
}

/// Re-expresses every off-diagonal entry relative to the column's reference row.
inline void normalize_psi(PsiMatrix& psi) noexcept {
  for (int j = 0; j < psi.n; ++j) {
    const std::uint8_t r = psi(ref_row(j), j);
    if (!r) continue;
    for (int i = 0; i < psi.n; ++i)
      if (i != j) psi(i, j) ^= r;
  }
}

inline bool contains_permutation(const std::vector<Permutation>& group, const Permutation& sigma) {
  return std::find(group.begin(), group.end(), sigma) != group.end();
}

inline bool stabilizes(const Code& w, const Permutation& sigma) {
  for (Word g : w.generators())
    if (!w.contains(permute_word(g, sigma))) return false;
  return true;
}

/// Action of S(W) on Psi: relocation followed by reference-row normalization.
inline PsiMatrix psi_act(const Permutation& sigma, const PsiMatrix& psi, const Code& w) {
  if (sigma.size() != psi.n || !stabilizes(w, sigma)) throw std::invalid_argument("psi_act: permutation does not stabilize W");
  auto out = relocate(psi, sigma);
  normalize_psi(out);
  return out;
}

struct PsiOrbit {
  PsiMatrix representative;
  std::vector<PsiMatrix> members;  // ascending
  std::vector<Permutation> stabilizer;
};

/// Orbits of S(W) on the admissible Psi; the representative is the orbit minimum.
inline std::vector<PsiOrbit> psi_orbits(const std::vector<PsiMatrix>& psis, const std::vector<Permutation>& s_w, const Code& w) {
  std::vector<PsiOrbit> out;
  std::vector<bool> done(psis.size(), false);
  auto index_of = [&](const PsiMatrix& m) -> std::size_t {
    auto it = std::lower_bound(psis.begin(), psis.end(), m);
    if (it == psis.end() || *it != m) throw std::logic_error("psi_orbits: action left the admissible set");
    return static_cast<std::size_t>(it - psis.begin());
  };
  for (std::size_t t = 0; t < psis.size(); ++t) {
    if (done[t]) continue;
    PsiOrbit orbit;
    std::vector<PsiMatrix> members;
    for (const auto& sigma : s_w) {
      PsiMatrix img = psi_act(sigma, psis[t], w);
      const std::size_t idx = index_of(img);
      if (!done[idx]) {
        done[idx] = true;
        members.push_back(img);
      }
      if (img == psis[t]) orbit.stabilizer.push_back(sigma);
    }
    std::sort(members.begin(), members.end());
    orbit.representative = members.front();
    orbit.members = std::move(members);
    if (orbit.representative != psis[t]) {
      // the first unvisited matrix is the smallest of its orbit
      throw std::logic_error("psi_orbits: representative is not the orbit minimum");
    }
    out.push_back(std::move(orbit));
  }
  return out;
}

using Position = std::pair<int, int>;

inline bool is_forced_zero(const PsiMatrix& psi, int i, int j) noexcept {
  return i == ref_row(j) || i == first_one_row(psi, j);
}

/// Off-diagonal Phi entries that are neither forced to zero nor a column's
/// slack entry, in row-major order.
inline std::vector<Position> free_positions(const PsiMatrix& psi) {
  std::vector<Position> out;
  const int n = psi.n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j || is_forced_zero(psi, i, j) || i == slack_row(n, j)) continue;
      out.emplace_back(i, j);
    }
  return out;
}

/// Bijection between admissible Phi for a fixed Psi and the integers
/// [0, 4^f), f = number of free positions. The first free position is the
/// most significant base-4 digit.
class PhiSpace {
 public:
  explicit PhiSpace(const PsiMatrix& psi) : psi_(psi), free_(free_positions(psi)) {
    for (int j = 0; j < psi.n; ++j) {
      const int k = first_one_row(psi, j);
      if (k == slack_row(psi.n, j) || ref_row(j) == slack_row(psi.n, j))
        throw std::logic_error("PhiSpace: slack entry collides with a forced zero");
      targets_[static_cast<std::size_t>(j)] = column_target(psi, j);
    }
    if (free_.size() > 31) throw std::invalid_argument("PhiSpace: too many free positions to index");
  }

  const PsiMatrix& psi() const noexcept { return psi_; }
  const std::vector<Position>& free() const noexcept { return free_; }
  std::uint64_t size() const noexcept { return std::uint64_t{1} << (2 * free_.size()); }
  Klein target(int j) const noexcept { return targets_[static_cast<std::size_t>(j)]; }

  PhiMatrix decode(std::uint64_t index) const {
    PhiMatrix phi(psi_.n);
    for (int i = 0; i < psi_.n; ++i) phi(i, i) = Klein::One;
    for (std::size_t t = free_.size(); t-- > 0;) {
      phi(free_[t].first, free_[t].second) = static_cast<Klein>(index & 3u);
      index >>= 2;
    }
    solve_slack(phi);
    return phi;
  }

  std::uint64_t encode(const PhiMatrix& phi) const noexcept {
    std::uint64_t index = 0;
    for (const auto& [i, j] : free_) index = (index << 2) | static_cast<std::uint64_t>(phi(i, j));
    return index;
  }

  void solve_slack(PhiMatrix& phi) const noexcept {
    const int n = psi_.n;
    for (int j = 0; j < n; ++j) {
      const int s = slack_row(n, j);
      Klein sum = targets_[static_cast<std::size_t>(j)];
      for (int i = 0; i < n; ++i)
        if (i != s) sum += phi(i, j);
      phi(s, j) = sum;
    }
  }

 private:
  PsiMatrix psi_;
  std::vector<Position> free_;
  std::array<Klein, kMaxDim> targets_{};
};

/// Streams every admissible Phi for a fixed Psi without materializing them.
class PhiStream {
 public:
  explicit PhiStream(const PsiMatrix& psi) : space_(psi) {}

  std::uint64_t count() const noexcept { return space_.size(); }

  bool next(PhiMatrix& out) {
    if (next_ >= space_.size()) return false;
    out = space_.decode(next_++);
    return true;
  }

 private:
  PhiSpace space_;
  std::uint64_t next_ = 0;
};

inline PhiStream enumerate_phi(const PsiMatrix& psi) { return PhiStream(psi); }

}  // namespace chw
