#pragma once

// Full classification driver: code classes, Psi orbits, Phi orbits and the
// torsion-free filter, aggregated per (W class, Psi orbit) cell.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "chw/code.hpp"
#include "chw/equivalence.hpp"
#include "chw/matrix.hpp"
#include "chw/permutation.hpp"
#include "chw/torsion.hpp"

namespace chw {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::uint32_t{0}); }

  std::uint32_t find(std::uint32_t x) noexcept {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // The smaller index always becomes the root.
  void unite(std::uint32_t a, std::uint32_t b) noexcept {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b)
      parent_[b] = a;
    else
      parent_[a] = b;
  }

 private:
  std::vector<std::uint32_t> parent_;
};

struct CellOptions {
  bool verify_oracle = false;
  // Use every element of S(Psi) and every codeword instead of generators.
  bool all_operations = false;
};

struct CellResult {
  Code w;
  PsiMatrix psi;
  std::uint64_t phi_space = 0;
  std::uint64_t orbit_count = 0;
  std::uint64_t manifold_count = 0;
  std::uint64_t orbit_size_sum = 0;
  std::uint64_t oracle_checked = 0;
  std::uint64_t oracle_disagreements = 0;
};

/// Partitions the Phi space of one (W, Psi) cell into equivalence classes
/// and counts those whose members all satisfy the torsion-free condition.
inline CellResult classify_cell(const Code& w, const PsiMatrix& psi, const std::vector<Permutation>& s_psi, const CellOptions& opts = {}) {
  const int n = psi.n;
  const PhiSpace space(psi);
  const PhiNormalizer normalize_phi(psi);
  if (space.size() > (std::uint64_t{1} << 31)) throw std::invalid_argument("classify_cell: Phi space too large");
  const auto size = static_cast<std::uint32_t>(space.size());

  const auto perms = opts.all_operations ? s_psi : generating_set(s_psi);
  std::vector<Word> words;
  if (opts.all_operations) {
    for (Word c : w.codewords())
      if (c) words.push_back(c);
  } else {
    words = w.generators();
  }
  const auto gamma_cols = free_columns(w);

  UnionFind uf(size);
  std::vector<std::uint8_t> tf(size);
  for (std::uint32_t idx = 0; idx < size; ++idx) {
    const PhiMatrix phi = space.decode(idx);
    tf[idx] = torsion_free(psi, phi) ? 1 : 0;
    for (const auto& sigma : perms) {
      PhiMatrix q = relocate(phi, sigma);
      normalize_phi(q);
      uf.unite(idx, static_cast<std::uint32_t>(space.encode(q)));
    }
    for (Word c : words)
      for (int r = 0; r + 1 < n; ++r) {
        PhiMatrix q = phi;
        for (int k = 0; k < n; ++k)
          if (word_bit(c, k)) q(r, k) += Klein::Tau;
        normalize_phi(q);
        uf.unite(idx, static_cast<std::uint32_t>(space.encode(q)));
      }
    for (int k : gamma_cols) {
      PhiMatrix q = phi;
      for (int i = 0; i < n; ++i) q(i, k) = gamma(q(i, k));
      normalize_phi(q);
      uf.unite(idx, static_cast<std::uint32_t>(space.encode(q)));
    }
  }

  // roots are orbit minima because unite() keeps the smaller index
  std::vector<std::uint8_t> all_tf(size, 0);
  std::vector<std::uint32_t> orbit_size(size, 0);
  CellResult res{w, psi, space.size()};
  for (std::uint32_t idx = 0; idx < size; ++idx) {
    const std::uint32_t root = uf.find(idx);
    if (root == idx) {
      all_tf[idx] = 1;
      ++res.orbit_count;
    }
    all_tf[root] &= tf[idx];
    ++orbit_size[root];
  }
  for (std::uint32_t idx = 0; idx < size; ++idx) {
    if (uf.find(idx) != idx) continue;
    res.manifold_count += all_tf[idx];
    res.orbit_size_sum += orbit_size[idx];
  }
  if (opts.verify_oracle) {
    for (std::uint32_t idx = 0; idx < size; ++idx) {
      const bool oracle = oracle_is_manifold(Pair{w, psi, space.decode(idx)});
      ++res.oracle_checked;
      if (oracle != static_cast<bool>(all_tf[uf.find(idx)])) ++res.oracle_disagreements;
    }
  }
  return res;
}

struct ReportRow {
  std::vector<std::string> w_generators;
  PsiMatrix psi;
  std::string psi_id;
  std::uint64_t manifold_count = 0;
  std::uint64_t orbit_count = 0;
  std::uint64_t phi_space = 0;
};

struct ClassificationReport {
  int n = 0;
  std::vector<ReportRow> rows;
  std::uint64_t total = 0;
  std::uint64_t oracle_checked = 0;
  std::uint64_t oracle_disagreements = 0;
};

struct ClassifyOptions {
  int jobs = 1;
  std::vector<Code> only;  // restrict to these classes (any representative)
  bool verify_oracle = false;
};

inline void check_classify_dim(int n) {
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("classify: dimension must be odd and at least 3");
  if (n > 5) throw std::invalid_argument("classify: a full run is infeasible for n >= 7 (the diagonal cell alone has 4^28 matrices); use bound7");
}

/// "0" for the zero matrix, "Psi_k" for the k-th distinct nonzero
/// representative in report order.
inline void assign_psi_ids(std::vector<ReportRow>& rows) {
  std::vector<PsiMatrix> seen;
  for (auto& row : rows) {
    if (is_zero(row.psi)) {
      row.psi_id = "0";
      continue;
    }
    auto it = std::find(seen.begin(), seen.end(), row.psi);
    if (it == seen.end()) {
      seen.push_back(row.psi);
      it = seen.end() - 1;
    }
    row.psi_id = "Psi_" + std::to_string(it - seen.begin() + 1);
  }
}

inline ClassificationReport classify(int n, const ClassifyOptions& opts = {}) {
  check_classify_dim(n);
  std::vector<Code> classes;
  if (opts.only.empty()) {
    classes = enumerate_sub_classes(n);
  } else {
    for (const auto& c : opts.only) {
      if (c.n() != n) throw std::invalid_argument("classify: code length does not match dimension");
      classes.push_back(canonical_code(c));
    }
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  }

  struct Cell {
    const Code* w;
    PsiOrbit orbit;
  };
  std::vector<Cell> cells;
  for (const auto& w : classes) {
    const auto s_w = stabilizer(w);
    for (auto& o : psi_orbits(enumerate_psi(w), s_w, w)) cells.push_back({&w, std::move(o)});
  }

  std::vector<CellResult> results(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++)
      results[i] = classify_cell(*cells[i].w, cells[i].orbit.representative, cells[i].orbit.stabilizer, {opts.verify_oracle});
  };
  const int jobs = std::max(1, opts.jobs);
  {
    std::vector<std::jthread> pool;
    for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
  }

  ClassificationReport report;
  report.n = n;
  for (const auto& r : results) {
    report.rows.push_back({r.w.generator_strings(), r.psi, "", r.manifold_count, r.orbit_count, r.phi_space});
    report.total += r.manifold_count;
    report.oracle_checked += r.oracle_checked;
    report.oracle_disagreements += r.oracle_disagreements;
    if (r.orbit_size_sum != r.phi_space) throw std::logic_error("classify: orbits do not cover the Phi space");
  }
  assign_psi_ids(report.rows);
  return report;
}

struct Dim7Bound {
  std::uint64_t free_positions = 0;
  std::uint64_t matrix_count = 0;
  std::uint64_t group_order = 0;
  std::uint64_t bound = 0;
  std::uint64_t remainder = 0;  // matrix_count mod group_order
};

/// Lower bound on the number of classes with trivial W in dimension 7:
/// admissible Phi minus a union bound over torsion-failing subsets, divided
/// by the order of S_7 x Z_2^7.
inline Dim7Bound dim7_lower_bound() {
  constexpr int n = 7;
  const PsiMatrix zero(n);
  const Code trivial(n);
  Dim7Bound b;
  b.free_positions = free_positions(zero).size();
  const auto pow4 = [](std::uint64_t e) { return std::uint64_t{1} << (2 * e); };
  std::uint64_t failing = 0;
  for (IndexSet s : proper_odd_subsets(n)) {
    const auto size = static_cast<std::uint64_t>(std::popcount(s));
    if (size >= 3) failing += pow4(b.free_positions - size);
  }
  b.matrix_count = pow4(b.free_positions) - failing;
  b.group_order = factorial(n) << free_columns(trivial).size();
  b.bound = b.matrix_count / b.group_order;
  b.remainder = b.matrix_count % b.group_order;
  return b;
}

}  // namespace chw
