#include <random>

#include <gtest/gtest.h>

#include <vdw/tower.hpp>

#include "oracles.hpp"

using namespace vdw;

namespace {

std::vector<std::string> dec(const std::vector<BigInt>& v) {
  std::vector<std::string> out;
  for (const auto& x : v)
    out.push_back(x.str());
  return out;
}

using S = std::vector<std::string>;

} // namespace

TEST(TowerParams, K2C2) {
  auto p = tower_params(2, 2, 2);
  EXPECT_EQ(dec(p.W), (S{"3", "9"}));
  EXPECT_EQ(dec(p.C), (S{"8"}));
  EXPECT_EQ(dec(p.sizes), (S{"3", "27"}));
}

TEST(TowerParams, K2C2Depth3IsExactBeyond32Bits) {
  auto p = tower_params(2, 2, 3);
  EXPECT_EQ(dec(p.C), (S{"8", "134217728"}));
  EXPECT_EQ(p.width(3), BigInt(134217729));
  EXPECT_EQ(p.size(3), BigInt(27) * 134217729);
  // c_3 = 2^(27 (2^27 + 1)) is far too large to hold.
  try {
    tower_params(2, 2, 4);
    FAIL();
  } catch (const TowerUncomputable& e) {
    EXPECT_EQ(e.stage(), 4u);
  }
}

TEST(TowerParams, K2C1) {
  auto p = tower_params(2, 1, 5);
  EXPECT_EQ(dec(p.W), (S{"2", "2", "2", "2", "2"}));
  EXPECT_EQ(dec(p.C), (S{"1", "1", "1", "1"}));
  EXPECT_EQ(dec(p.sizes), (S{"2", "4", "8", "16", "32"}));
}

TEST(TowerParams, K3C2Uncomputable) {
  try {
    tower_params(3, 2, 2);
    FAIL();
  } catch (const TowerUncomputable& e) {
    EXPECT_EQ(e.stage(), 2u);
  }
  EXPECT_NO_THROW(tower_params(3, 2, 1));
  EXPECT_EQ(tower_params(3, 2, 1).width(1), BigInt(9));
}

TEST(TowerParams, NonUniformStages) {
  auto p = tower_params(std::vector<std::uint32_t>{2, 2, 5}, 1);
  EXPECT_EQ(dec(p.W), (S{"2", "2", "5"}));
  EXPECT_EQ(dec(p.sizes), (S{"2", "4", "20"}));
  EXPECT_THROW(tower_params(std::vector<std::uint32_t>{2, 3}, 2), TowerUncomputable);
}

TEST(TowerParams, SizeLawDeep) {
  auto p = tower_params(2, 1, 20);
  for (std::size_t m = 1; m <= 20; ++m)
    EXPECT_EQ(p.size(m), BigInt(1) << m);
  auto q = tower_params(3, 1, 40);
  EXPECT_EQ(q.size(40), boost::multiprecision::pow(BigInt(3), 40));
}

TEST(TowerParams, Preconditions) {
  EXPECT_THROW(tower_params(1, 2, 2), PreconditionError);
  EXPECT_THROW(tower_params(2, 0, 2), PreconditionError);
  EXPECT_THROW(tower_params(2, 2, 0), PreconditionError);
}

TEST(BuildTowerInterval, Examples) {
  auto p = tower_params(2, 2, 2);
  EXPECT_EQ(build_tower_interval(Interval(1, 3), 1, p), Interval(1, 3));
  EXPECT_EQ(build_tower_interval(Interval(1, 3), 2, p), Interval(1, 27));
  EXPECT_EQ(build_tower_interval(Interval(6, 8), 2, p), Interval(6, 32));
  EXPECT_THROW(build_tower_interval(Interval(1, 4), 2, p), PreconditionError);
  EXPECT_THROW(build_tower_interval(Interval(1, 3), 3, p), PreconditionError);
}

TEST(BuildTowerInterval, GeometryBeyond64Bits) {
  auto p = tower_params(2, 1, 80);
  auto top = build_tower_interval(BigInterval(1, 2), 80, p);
  EXPECT_EQ(top.hi(), BigInt(1) << 80);
  EXPECT_THROW(build_tower_interval(Interval(1, 2), 80, p), ResourceLimitError);
}

TEST(BuildTowerInterval, MatchesLiteralUnion) {
  for (auto [k, c, n] : {std::tuple{2u, 2u, 2u}, {2u, 1u, 6u}, {3u, 1u, 4u}, {2u, 3u, 2u}, {4u, 1u, 3u}}) {
    auto p = tower_params(k, c, n);
    std::vector<std::uint64_t> W;
    for (auto& w : p.W)
      W.push_back(static_cast<std::uint64_t>(w));
    for (Position lo : {1u, 7u}) {
      Interval I(lo, lo + W[0] - 1);
      for (std::size_t m = 1; m <= n; ++m) {
        auto u = oracle::tower_union(lo, W, m);
        auto t = build_tower_interval(I, m, p);
        EXPECT_EQ(*u.begin(), t.lo());
        EXPECT_EQ(*u.rbegin(), t.hi());
        EXPECT_EQ(u.size(), t.size());  // contiguous
      }
    }
  }
}

TEST(Block, Examples) {
  auto p = tower_params(2, 2, 2);
  EXPECT_EQ(block(Interval(1, 3), 1, p, Position{0}), Interval(1, 3));
  EXPECT_EQ(block(Interval(1, 3), 1, p, Position{4}), Interval(13, 15));
  EXPECT_EQ(block(Interval(1, 3), 1, p, Position{8}), Interval(25, 27));
  EXPECT_THROW(block(Interval(1, 3), 1, p, Position{9}), DomainError);
  EXPECT_THROW(block(Interval(1, 3), 2, p, Position{0}), PreconditionError);
}

TEST(Block, BlocksPartitionNextStage) {
  for (auto [k, c, n] : {std::tuple{2u, 2u, 2u}, {2u, 1u, 8u}, {3u, 1u, 5u}}) {
    auto p = tower_params(k, c, n);
    Interval I(5, 5 + static_cast<Position>(p.width(1)) - 1);
    for (std::size_t m = 1; m < n; ++m) {
      auto whole = build_tower_interval(I, m + 1, p);
      Position expect_lo = whole.lo();
      auto count = static_cast<Position>(p.width(m + 1));
      for (Position i = 0; i < count; ++i) {
        auto J = block(I, m, p, i);
        EXPECT_EQ(J.lo(), expect_lo);
        EXPECT_EQ(BigInt(J.size()), p.size(m));
        expect_lo = J.hi() + 1;
      }
      EXPECT_EQ(expect_lo, whole.hi() + 1);
      EXPECT_EQ(block(I, m, p, Position{0}), build_tower_interval(I, m, p));  // nesting
    }
  }
}

TEST(TranslationIdentity, Examples) {
  auto p22 = tower_params(2, 2, 2);
  EXPECT_TRUE(check_translation_identity(Interval(1, 3), 2, p22, Position{5}));
  EXPECT_TRUE(check_translation_identity(Interval(1, 3), 1, p22, Position{0}));
  auto p21 = tower_params(2, 1, 10);
  EXPECT_TRUE(check_translation_identity(Interval(1, 2), 10, p21, Position{100}));
  EXPECT_EQ(translate(build_tower_interval(Interval(1, 2), 10, p21), Position{100}), Interval(101, 1124));
}

TEST(TranslationIdentity, RandomSamples) {
  std::mt19937_64 rng(5);
  auto p = tower_params(2, 1, 30);
  auto q = tower_params(2, 2, 3);
  for (int it = 0; it < 1000; ++it) {
    Position lo = 1 + rng() % 100000, b = rng() % 1000000;
    EXPECT_TRUE(check_translation_identity(Interval(lo, lo + 1), 1 + rng() % 30, p, b));
    EXPECT_TRUE(check_translation_identity(Interval(lo, lo + 2), 1 + rng() % 3, q, b));
    EXPECT_TRUE(check_translation_identity(BigInterval(lo, lo + 1), 30, p, BigInt(b) << 70));
  }
}
