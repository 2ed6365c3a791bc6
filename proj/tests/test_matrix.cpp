#include <gtest/gtest.h>

#include <set>

#include "chw/matrix.hpp"
#include "test_support.hpp"

using namespace chw;

namespace {

// All Psi with zero diagonal and zero reference rows, filtered by the
// validator; independent of the backtracking enumerator.
std::vector<PsiMatrix> brute_force_psi(const Code& w) {
  const int n = w.n();
  std::vector<Position> open;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && i != ref_row(j)) open.emplace_back(i, j);
  std::vector<PsiMatrix> out;
  for (std::uint32_t mask = 0; mask < (1u << open.size()); ++mask) {
    PsiMatrix m(n);
    for (std::size_t k = 0; k < open.size(); ++k) m(open[k].first, open[k].second) = mask >> k & 1u;
    if (!psi_violation(m, w)) out.push_back(m);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Psi, EnumerationMatchesBruteForce) {
  for (int n : {3, 5})
    for (const auto& w : enumerate_sub_classes(n)) EXPECT_EQ(enumerate_psi(w), brute_force_psi(w)) << w.generator_strings().size();
}

TEST(Psi, DimensionThreeOnlyZero) {
  for (const auto& w : enumerate_sub_classes(3)) {
    const auto psis = enumerate_psi(w);
    ASSERT_EQ(psis.size(), 1u);
    EXPECT_TRUE(is_zero(psis.front()));
  }
}

TEST(Psi, SmallCodesOnlyZero) {
  for (int n : {5, 7})
    for (const auto& w : enumerate_sub_classes(n)) {
      if (w.size() > 2) continue;
      const auto psis = enumerate_psi(w);
      ASSERT_EQ(psis.size(), 1u);
      EXPECT_TRUE(is_zero(psis.front()));
    }
}

TEST(Psi, ActionLaw) {
  for (const auto& w : enumerate_sub_classes(5)) {
    const auto s_w = stabilizer(w);
    for (const auto& psi : enumerate_psi(w)) {
      EXPECT_EQ(psi_act(Permutation::identity(5), psi, w), psi);
      for (const auto& a : s_w)
        for (const auto& b : generating_set(s_w)) EXPECT_EQ(psi_act(a * b, psi, w), psi_act(a, psi_act(b, psi, w), w));
    }
  }
}

TEST(Psi, ActionRejectsNonStabilizer) {
  const Code w = Code::from_strings(5, {"11000"});
  EXPECT_THROW(psi_act(Permutation::transposition(5, 1, 2), PsiMatrix(5), w), std::invalid_argument);
}

TEST(Psi, OrbitCounts) {
  EXPECT_EQ(psi_orbits(enumerate_psi(Code::from_strings(5, {"11000", "10100"})), stabilizer(Code::from_strings(5, {"11000", "10100"})),
                       Code::from_strings(5, {"11000", "10100"}))
                .size(),
            2u);
  const Code big = Code::from_strings(5, {"11000", "10100", "10010", "10001"});
  const auto orbits = psi_orbits(enumerate_psi(big), stabilizer(big), big);
  EXPECT_EQ(orbits.size(), 4u);
  std::size_t total = 0;
  for (const auto& o : orbits) {
    total += o.members.size();
    EXPECT_EQ(o.members.size() * o.stabilizer.size(), stabilizer(big).size());
  }
  EXPECT_EQ(total, enumerate_psi(big).size());
  EXPECT_EQ(chw::testing::cells(5).size(), 25u);
}

TEST(Phi, FreePositionCounts) {
  EXPECT_EQ(free_positions(PsiMatrix(3)).size(), 0u);
  EXPECT_EQ(free_positions(PsiMatrix(5)).size(), 10u);
  EXPECT_EQ(free_positions(PsiMatrix(7)).size(), 28u);
}

TEST(Phi, DimensionThreeIsUnique) {
  const PhiSpace space(PsiMatrix(3));
  ASSERT_EQ(space.size(), 1u);
  const PhiMatrix phi = space.decode(0);
  const char* expected[3] = {"100", "011", "111"};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_EQ(phi(i, j), expected[i][j] == '1' ? Klein::One : Klein::Zero) << i << "," << j;
}

TEST(Phi, SpaceIsBijectiveAndAdmissible) {
  for (const auto& cell : chw::testing::cells(5)) {
    const PhiSpace space(cell.psi);
    EXPECT_EQ(space.size(), std::uint64_t{1} << (2 * free_positions(cell.psi).size()));
    const std::uint64_t step = space.size() > 4096 ? 257 : 1;
    for (std::uint64_t idx = 0; idx < space.size(); idx += step) {
      const PhiMatrix phi = space.decode(idx);
      ASSERT_FALSE(phi_violation(phi, cell.psi)) << *phi_violation(phi, cell.psi);
      ASSERT_EQ(space.encode(phi), idx);
    }
  }
}

TEST(Phi, SlackNeverCollidesWithForcedZero) {
  for (int n : {3, 5})
    for (const auto& cell : chw::testing::cells(n))
      for (int j = 0; j < n; ++j) {
        EXPECT_FALSE(is_forced_zero(cell.psi, slack_row(n, j), j));
        EXPECT_NE(slack_row(n, j), j);
      }
}

TEST(Phi, StreamCoversSpace) {
  auto stream = enumerate_phi(PsiMatrix(5));
  EXPECT_EQ(stream.count(), 1u << 20);
  std::uint64_t seen = 0;
  PhiMatrix phi;
  while (stream.next(phi)) ++seen;
  EXPECT_EQ(seen, stream.count());
}

TEST(Phi, ViolationMessages) {
  PhiMatrix phi = PhiSpace(PsiMatrix(3)).decode(0);
  EXPECT_FALSE(phi_violation(phi, PsiMatrix(3)));
  phi(0, 0) = Klein::Tau;
  EXPECT_EQ(phi_violation(phi, PsiMatrix(3)), "diagonal must be 1");
}

TEST(Matrix, DimensionBounds) {
  EXPECT_THROW(PsiMatrix(8), std::invalid_argument);
  EXPECT_THROW(PsiMatrix(1), std::invalid_argument);
}
