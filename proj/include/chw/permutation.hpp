#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace chw {

// Bijection of {0, ..., n-1}; images[i] is where i is sent.
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::vector<std::uint8_t> images) : images_(std::move(images)) {
    std::vector<bool> hit(images_.size(), false);
    for (auto v : images_) {
      if (v >= images_.size() || hit[v]) throw std::invalid_argument("Permutation: images are not a bijection");
      hit[v] = true;
    }
  }

  static Permutation identity(int n) {
    std::vector<std::uint8_t> img(static_cast<std::size_t>(n));
    std::iota(img.begin(), img.end(), std::uint8_t{0});
    return Permutation(std::move(img));
  }

  // Swaps 0-based coordinates a and b.
  static Permutation transposition(int n, int a, int b) {
    auto p = identity(n);
    std::swap(p.images_[static_cast<std::size_t>(a)], p.images_[static_cast<std::size_t>(b)]);
    return p;
  }

  int size() const noexcept { return static_cast<int>(images_.size()); }
  int operator()(int i) const noexcept { return images_[static_cast<std::size_t>(i)]; }
  const std::vector<std::uint8_t>& images() const noexcept { return images_; }

  bool is_identity() const noexcept {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i) return false;
    return true;
  }

  Permutation inverse() const {
    std::vector<std::uint8_t> inv(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = static_cast<std::uint8_t>(i);
    return Permutation(std::move(inv));
  }

  // (a * b)(i) = a(b(i)): b acts first.
  friend Permutation operator*(const Permutation& a, const Permutation& b) {
    if (a.size() != b.size()) throw std::invalid_argument("Permutation: size mismatch");
    std::vector<std::uint8_t> img(a.images_.size());
    for (std::size_t i = 0; i < img.size(); ++i) img[i] = a.images_[b.images_[i]];
    return Permutation(std::move(img));
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

  // One-based cycle notation, "()" for the identity.
  std::string to_string() const {
    std::string out;
    std::vector<bool> seen(images_.size(), false);
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (seen[i] || images_[i] == i) continue;
      out += '(';
      for (std::size_t j = i; !seen[j]; j = images_[j]) {
        if (j != i) out += ' ';
        seen[j] = true;
        out += std::to_string(j + 1);
      }
      out += ')';
    }
    return out.empty() ? "()" : out;
  }

 private:
  std::vector<std::uint8_t> images_;
};

/// All n! permutations in lexicographic order of their image arrays.
inline std::vector<Permutation> all_permutations(int n) {
  std::vector<std::uint8_t> img(static_cast<std::size_t>(n));
  std::iota(img.begin(), img.end(), std::uint8_t{0});
  std::vector<Permutation> out;
  do {
    out.emplace_back(img);
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

inline std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

/// Greedy generating set: each element is added only if it lies outside
/// the subgroup generated so far.
inline std::vector<Permutation> generating_set(const std::vector<Permutation>& group) {
  std::vector<Permutation> gens;
  if (group.empty()) return gens;
  std::set<Permutation> span{Permutation::identity(group.front().size())};
  for (const auto& g : group) {
    if (span.contains(g)) continue;
    gens.push_back(g);
    std::vector<Permutation> frontier(span.begin(), span.end());
    while (!frontier.empty()) {
      std::vector<Permutation> next;
      for (const auto& x : frontier)
        for (const auto& s : gens) {
          Permutation y = s * x;
          if (span.insert(y).second) next.push_back(std::move(y));
        }
      frontier = std::move(next);
    }
  }
  return gens;
}

}  // namespace chw
