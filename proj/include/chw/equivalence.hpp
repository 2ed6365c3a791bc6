#pragma once

// Equivalence of pairs (Phi, Psi): the three generating operations, the
// four normalizations that follow each of them, and orbit computation.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "chw/code.hpp"
#include "chw/klein.hpp"
#include "chw/matrix.hpp"
#include "chw/permutation.hpp"

namespace chw {

struct Pair {
  Code w;
  PsiMatrix psi;
  PhiMatrix phi;

  int n() const noexcept { return psi.n; }
  friend bool operator==(const Pair& a, const Pair& b) { return a.w == b.w && a.psi == b.psi && a.phi == b.phi; }
};

// Bit-packed encoding, most significant entry first, so that comparing keys
// compares (Psi row-major, then Phi row-major) lexicographically.
struct PairKey {
  std::uint64_t psi = 0;
  std::uint64_t phi_hi = 0;
  std::uint64_t phi_lo = 0;

  friend auto operator<=>(const PairKey&, const PairKey&) = default;
};

struct PairKeyHash {
  std::size_t operator()(const PairKey& k) const noexcept {
    std::uint64_t h = k.psi * 0x9E3779B97F4A7C15ull;
    h ^= k.phi_hi + 0x7F4A7C159E3779B9ull + (h << 6) + (h >> 2);
    h ^= k.phi_lo + 0x94D049BB133111EBull + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

inline PairKey pack(const PsiMatrix& psi, const PhiMatrix& phi) noexcept {
  PairKey key;
  int t = 0;
  for (int i = 0; i < psi.n; ++i)
    for (int j = 0; j < psi.n; ++j, ++t) {
      key.psi = (key.psi << 1) | psi(i, j);
      auto v = static_cast<std::uint64_t>(phi(i, j));
      if (t < 32)
        key.phi_hi = (key.phi_hi << 2) | v;
      else
        key.phi_lo = (key.phi_lo << 2) | v;
    }
  return key;
}

inline PairKey pack(const Pair& p) noexcept { return pack(p.psi, p.phi); }

namespace detail {

// Normalization 3 for column j. Columns j < n-1 absorb the defect in their
// last-row entry. In the last column a tau defect means the last row was
// re-chosen, which moves x_n^n by t_n: it is put on the diagonal and
// normalization 4 then renames the 2-torsion of that curve. Any 1-part
// (unreachable from admissible pairs) goes to the entry above the diagonal.
inline void repair_column_sum(PhiMatrix& phi, int j, Klein target) noexcept {
  const int n = phi.n;
  if (j < n - 1) {
    Klein sum = target;
    for (int i = 0; i < n; ++i)
      if (i != n - 1) sum += phi(i, j);
    phi(n - 1, j) = sum;
    return;
  }
  Klein defect = target;
  for (int i = 0; i < n; ++i) defect += phi(i, j);
  const auto bits = static_cast<std::uint8_t>(defect);
  phi(n - 1, j) += static_cast<Klein>(bits & 2u);
  phi(n - 2, j) += static_cast<Klein>(bits & 1u);
}

// Normalizations 2-4 for an already normalized Psi.
inline void normalize_phi_once(const PsiMatrix& psi, PhiMatrix& phi) {
  const int n = psi.n;
  for (int j = 0; j < n; ++j) {
    // reference row of each Psi class in this column
    int ref[2] = {-1, -1};
    for (int i = 0; i < n && (ref[0] < 0 || ref[1] < 0); ++i)
      if (i != j && ref[psi(i, j)] < 0) ref[psi(i, j)] = i;
    const Klein sub[2] = {ref[0] >= 0 ? phi(ref[0], j) : Klein::Zero, ref[1] >= 0 ? phi(ref[1], j) : Klein::Zero};
    for (int i = 0; i < n; ++i)
      if (i != j) phi(i, j) -= sub[psi(i, j)];
  }
  for (int j = 0; j < n; ++j) repair_column_sum(phi, j, column_target(psi, j));
  for (int j = 0; j < n; ++j)
    if (phi(j, j) != Klein::One)
      for (int i = 0; i < n; ++i) phi(i, j) = delta(phi(i, j));
}

}  // namespace detail

/// Normalizations 2-4 specialised to one normalized Psi; the hot path of
/// orbit enumeration.
class PhiNormalizer {
 public:
  explicit PhiNormalizer(const PsiMatrix& psi) : n_(psi.n) {
    for (int j = 0; j < n_; ++j) {
      auto& c = cols_[static_cast<std::size_t>(j)];
      c.ref[0] = c.ref[1] = -1;
      for (int i = 0; i < n_; ++i)
        if (i != j && c.ref[psi(i, j)] < 0) c.ref[psi(i, j)] = i;
      c.target = column_target(psi, j);
      for (int i = 0; i < n_; ++i) c.cls[static_cast<std::size_t>(i)] = psi(i, j);
    }
  }

  void operator()(PhiMatrix& phi) const noexcept {
    for (int j = 0; j < n_; ++j) {
      const auto& c = cols_[static_cast<std::size_t>(j)];
      const Klein sub[2] = {c.ref[0] >= 0 ? phi(c.ref[0], j) : Klein::Zero, c.ref[1] >= 0 ? phi(c.ref[1], j) : Klein::Zero};
      for (int i = 0; i < n_; ++i)
        if (i != j) phi(i, j) -= sub[c.cls[static_cast<std::size_t>(i)]];
      detail::repair_column_sum(phi, j, c.target);
      if (phi(j, j) != Klein::One)
        for (int i = 0; i < n_; ++i) phi(i, j) = delta(phi(i, j));
    }
  }

 private:
  struct Column {
    int ref[2];
    Klein target;
    std::array<std::uint8_t, kMaxDim> cls;
  };
  int n_;
  std::array<Column, kMaxDim> cols_{};
};

/// Applies normalizations 1-4 in order, repeating until nothing changes.
/// Throws std::logic_error if a second pass still changes the pair.
inline Pair normalize(Pair p) {
  for (int pass = 0; pass < 2; ++pass) {
    const Pair before = p;
    normalize_psi(p.psi);
    detail::normalize_phi_once(p.psi, p.phi);
    if (p == before) return p;
  }
  throw std::logic_error("normalize: no fixed point after two passes");
}

inline bool is_normalized(const Pair& p) { return normalize(p) == p; }

inline Pair op_permute(const Pair& p, const Permutation& sigma) {
  if (sigma.size() != p.n() || !stabilizes(p.w, sigma)) throw std::invalid_argument("op_permute: permutation does not stabilize W");
  return normalize(Pair{p.w, relocate(p.psi, sigma), relocate(p.phi, sigma)});
}

/// Adds tau*w to row r of Phi (r is 0-based and may not be the last row).
inline Pair op_row_add(const Pair& p, Word w, int r) {
  if (r < 0 || r >= p.n() - 1) throw std::invalid_argument("op_row_add: row must not be the last row");
  if (!p.w.contains(w)) throw std::invalid_argument("op_row_add: word is not in W");
  Pair q = p;
  for (int k = 0; k < p.n(); ++k)
    if (word_bit(w, k)) q.phi(r, k) += Klein::Tau;
  return normalize(std::move(q));
}

/// Applies gamma to column k of Phi; k must lie outside the support of W.
inline Pair op_gamma_col(const Pair& p, int k) {
  if (k < 0 || k >= p.n() || word_bit(p.w.support(), k)) throw std::invalid_argument("op_gamma_col: column is in the support of W");
  Pair q = p;
  for (int i = 0; i < p.n(); ++i) q.phi(i, k) = gamma(q.phi(i, k));
  return normalize(std::move(q));
}

/// S(Psi) = { sigma in S(W) : psi_act(sigma, Psi) = Psi }.
inline std::vector<Permutation> psi_stabilizer(const PsiMatrix& psi, const Code& w) {
  std::vector<Permutation> out;
  for (auto& sigma : stabilizer(w))
    if (psi_act(sigma, psi, w) == psi) out.push_back(std::move(sigma));
  return out;
}

/// Every pair reachable from a normalized p by the generating operations,
/// with permutations drawn from s_psi (a subset of S(Psi)). Psi is fixed
/// along the orbit, so the search runs on Phi alone. Sorted by encoding.
inline std::vector<Pair> pair_orbit(const Pair& p, const std::vector<Permutation>& s_psi) {
  const int n = p.n();
  for (const auto& sigma : s_psi)
    if (psi_act(sigma, p.psi, p.w) != p.psi) throw std::invalid_argument("pair_orbit: permutation does not fix Psi");
  const PhiNormalizer norm(p.psi);
  std::vector<Word> words;
  for (Word c : p.w.codewords())
    if (c) words.push_back(c);
  const auto free_cols = free_columns(p.w);

  std::unordered_set<PairKey, PairKeyHash> seen;
  std::vector<PhiMatrix> members{p.phi};
  seen.reserve(4096);
  seen.insert(pack(p.psi, p.phi));
  auto visit = [&](PhiMatrix& q) {
    norm(q);
    if (seen.insert(pack(p.psi, q)).second) members.push_back(q);
  };
  for (std::size_t head = 0; head < members.size(); ++head) {
    const PhiMatrix cur = members[head];
    for (const auto& sigma : s_psi) {
      PhiMatrix q = relocate(cur, sigma);
      visit(q);
    }
    for (Word c : words)
      for (int r = 0; r + 1 < n; ++r) {
        PhiMatrix q = cur;
        for (int k = 0; k < n; ++k)
          if (word_bit(c, k)) q(r, k) += Klein::Tau;
        visit(q);
      }
    for (int k : free_cols) {
      PhiMatrix q = cur;
      for (int i = 0; i < n; ++i) q(i, k) = gamma(q(i, k));
      visit(q);
    }
  }
  std::sort(members.begin(), members.end(), [&](const PhiMatrix& a, const PhiMatrix& b) { return pack(p.psi, a) < pack(p.psi, b); });
  std::vector<Pair> out;
  out.reserve(members.size());
  for (auto& m : members) out.push_back(Pair{p.w, p.psi, m});
  return out;
}

inline Pair canonical_pair(const Pair& p, const std::vector<Permutation>& s_psi) {
  return pair_orbit(p, generating_set(s_psi)).front();
}

inline Pair canonical_pair(const Pair& p) { return canonical_pair(p, psi_stabilizer(p.psi, p.w)); }

/// Relabels the curves of p by any sigma, moving W along with the matrices.
inline Pair transport(const Pair& p, const Permutation& sigma) {
  return normalize(Pair{permute_code(p.w, sigma), relocate(p.psi, sigma), relocate(p.phi, sigma)});
}

/// Canonical form across representatives: W is moved to its canonical code,
/// Psi to the minimum of its S(W)-orbit, and Phi to the orbit minimum.
inline Pair full_canonical_form(const Pair& p) {
  const Code target = canonical_code(p.w);
  const auto s_target = stabilizer(target);
  const Pair moved = transport(p, canonicalizing_permutation(p.w));
  PsiMatrix rep = moved.psi;
  for (const auto& tau : s_target) rep = std::min(rep, psi_act(tau, moved.psi, target));
  for (const auto& tau : s_target)
    if (psi_act(tau, moved.psi, target) == rep) return canonical_pair(transport(moved, tau));
  throw std::logic_error("full_canonical_form: orbit minimum unreachable");
}

}  // namespace chw
