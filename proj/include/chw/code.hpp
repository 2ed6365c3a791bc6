#pragma once

// Binary linear codes of length n with no weight-one word: the subgroups
// W of Z_2^n that contain none of the standard generators t_i.
//
// A word is an n-bit integer. Coordinate 1 (the leftmost character of the
// text form) is bit 0, so "110" is the integer 3.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "chw/permutation.hpp"

namespace chw {

using Word = std::uint32_t;

inline constexpr int kMaxCodeLength = 10;

constexpr bool word_bit(Word w, int coord) noexcept { return (w >> coord) & 1u; }
constexpr int weight(Word w) noexcept { return std::popcount(w); }

inline Word parse_word(std::string_view s) {
  if (s.empty() || s.size() > static_cast<std::size_t>(kMaxCodeLength))
    throw std::invalid_argument("word has invalid length: '" + std::string(s) + "'");
  Word w = 0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k] == '1')
      w |= Word{1} << k;
    else if (s[k] != '0')
      throw std::invalid_argument("word must consist of '0' and '1': '" + std::string(s) + "'");
  }
  return w;
}

inline std::string word_to_string(Word w, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int k = 0; k < n; ++k)
    if (word_bit(w, k)) s[static_cast<std::size_t>(k)] = '1';
  return s;
}

inline Word permute_word(Word w, const Permutation& sigma) noexcept {
  Word out = 0;
  for (int k = 0; k < sigma.size(); ++k)
    if (word_bit(w, k)) out |= Word{1} << sigma(k);
  return out;
}

struct CodeCheck {
  bool ok = true;
  std::string diagnostic;
};

/// True iff `words` is a subgroup of Z_2^n without weight-one words.
/// Failures are reported through the diagnostic, never thrown.
inline CodeCheck is_valid_code(int n, const std::vector<Word>& words) {
  if (n < 1 || n > kMaxCodeLength) return {false, "length out of range"};
  std::set<Word> set;
  for (Word w : words) {
    if (w >> n) return {false, "word " + std::to_string(w) + " has bits beyond length " + std::to_string(n)};
    set.insert(w);
  }
  if (!set.contains(0)) return {false, "zero word missing"};
  for (Word a : set) {
    if (weight(a) == 1) return {false, "contains weight-one word " + word_to_string(a, n)};
    for (Word b : set)
      if (!set.contains(a ^ b))
        return {false, "not closed under addition: " + word_to_string(a, n) + " + " + word_to_string(b, n)};
  }
  return {};
}

class Code {
 public:
  Code() : Code(1) {}

  // The trivial code of length n.
  explicit Code(int n) : n_(n), codewords_{0} {
    if (n < 1 || n > kMaxCodeLength) throw std::invalid_argument("code length out of range");
  }

  static Code from_generators(int n, const std::vector<Word>& gens) {
    Code c(n);
    for (Word g : gens) {
      if (g >> n) throw std::invalid_argument("generator exceeds code length");
      if (c.contains(g)) continue;
      std::vector<Word> next = c.codewords_;
      for (Word w : c.codewords_) next.push_back(w ^ g);
      std::sort(next.begin(), next.end());
      c.codewords_ = std::move(next);
    }
    c.rebuild_generators();
    if (auto chk = is_valid_code(n, c.codewords_); !chk.ok) throw std::invalid_argument("invalid code: " + chk.diagnostic);
    return c;
  }

  static Code from_strings(int n, const std::vector<std::string>& gens) {
    std::vector<Word> words;
    for (const auto& s : gens) {
      if (static_cast<int>(s.size()) != n) throw std::invalid_argument("generator '" + s + "' does not have length " + std::to_string(n));
      words.push_back(parse_word(s));
    }
    return from_generators(n, words);
  }

  int n() const noexcept { return n_; }
  const std::vector<Word>& codewords() const noexcept { return codewords_; }
  const std::vector<Word>& generators() const noexcept { return generators_; }
  std::size_t size() const noexcept { return codewords_.size(); }
  int rank() const noexcept { return static_cast<int>(generators_.size()); }

  bool contains(Word w) const noexcept { return std::binary_search(codewords_.begin(), codewords_.end(), w); }

  // Union of the supports of all codewords.
  Word support() const noexcept {
    Word s = 0;
    for (Word g : generators_) s |= g;
    return s;
  }

  std::vector<std::string> generator_strings() const {
    std::vector<std::string> out;
    for (Word g : generators_) out.push_back(word_to_string(g, n_));
    return out;
  }

  friend bool operator==(const Code& a, const Code& b) { return a.n_ == b.n_ && a.codewords_ == b.codewords_; }
  friend bool operator<(const Code& a, const Code& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    return a.codewords_ < b.codewords_;
  }

 private:
  // Greedy basis: each generator is the smallest codeword outside the span so far.
  void rebuild_generators() {
    generators_.clear();
    std::vector<Word> span{0};
    for (Word w : codewords_) {
      if (std::find(span.begin(), span.end(), w) != span.end()) continue;
      generators_.push_back(w);
      const std::size_t m = span.size();
      for (std::size_t i = 0; i < m; ++i) span.push_back(span[i] ^ w);
    }
  }

  int n_;
  std::vector<Word> codewords_;
  std::vector<Word> generators_;
};

inline Code permute_code(const Code& w, const Permutation& sigma) {
  if (sigma.size() != w.n()) throw std::invalid_argument("permute_code: permutation size mismatch");
  std::vector<Word> gens;
  for (Word g : w.generators()) gens.push_back(permute_word(g, sigma));
  return Code::from_generators(w.n(), gens);
}

namespace detail {

inline std::vector<Word> permuted_sorted(const std::vector<Word>& words, const Permutation& sigma) {
  std::vector<Word> out;
  out.reserve(words.size());
  for (Word w : words) out.push_back(permute_word(w, sigma));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// Minimum, over all coordinate permutations, of the sorted codeword list.
inline Code canonical_code(const Code& w) {
  std::vector<Word> best = w.codewords();
  for (const auto& sigma : all_permutations(w.n())) {
    auto cand = detail::permuted_sorted(w.codewords(), sigma);
    if (cand < best) best = std::move(cand);
  }
  return Code::from_generators(w.n(), best);
}

/// A permutation sending `w` to its canonical form.
inline Permutation canonicalizing_permutation(const Code& w) {
  const Code canon = canonical_code(w);
  for (const auto& sigma : all_permutations(w.n()))
    if (detail::permuted_sorted(w.codewords(), sigma) == canon.codewords()) return sigma;
  throw std::logic_error("canonicalizing_permutation: canonical form unreachable");
}

/// The stabilizer S(W) = { sigma in S_n : sigma W = W }, listed in
/// lexicographic order of image arrays.
inline std::vector<Permutation> stabilizer(const Code& w) {
  std::vector<Permutation> out;
  for (auto& sigma : all_permutations(w.n())) {
    bool fixes = true;
    for (Word g : w.generators())
      if (!w.contains(permute_word(g, sigma))) {
        fixes = false;
        break;
      }
    if (fixes) out.push_back(std::move(sigma));
  }
  return out;
}

/// Coordinates (0-based) on which every codeword vanishes.
inline std::vector<int> free_columns(const Code& w) {
  std::vector<int> out;
  const Word supp = w.support();
  for (int k = 0; k < w.n(); ++k)
    if (!word_bit(supp, k)) out.push_back(k);
  return out;
}

/// Orthogonal complement under the standard bilinear form.
inline std::vector<Word> dual_code(const Code& w) {
  std::vector<Word> out;
  for (Word v = 0; v < (Word{1} << w.n()); ++v) {
    bool orth = true;
    for (Word g : w.generators())
      if (weight(v & g) % 2 != 0) {
        orth = false;
        break;
      }
    if (orth) out.push_back(v);
  }
  return out;
}

/// One canonical representative per permutation class of valid codes,
/// sorted by canonical encoding. Built by extending canonical codes one
/// generator at a time.
inline std::vector<Code> enumerate_sub_classes(int n) {
  if (n < 1 || n > kMaxCodeLength) throw std::invalid_argument("enumerate_sub_classes: length out of range");
  std::set<Code> seen;
  std::vector<Code> frontier{Code(n)};
  seen.insert(frontier.front());
  while (!frontier.empty()) {
    std::vector<Code> next;
    for (const Code& c : frontier) {
      std::set<Word> tried;
      for (Word v = 1; v < (Word{1} << n); ++v) {
        if (c.contains(v) || weight(v) == 1) continue;
        // words in the same coset of c give the same extension
        Word coset_min = v;
        for (Word x : c.codewords()) coset_min = std::min(coset_min, v ^ x);
        if (!tried.insert(coset_min).second) continue;
        bool ok = true;
        for (Word x : c.codewords())
          if (weight(v ^ x) == 1) {
            ok = false;
            break;
          }
        if (!ok) continue;
        auto gens = c.generators();
        gens.push_back(v);
        Code canon = canonical_code(Code::from_generators(n, gens));
        if (seen.insert(canon).second) next.push_back(std::move(canon));
      }
    }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

}  // namespace chw
