#include <gtest/gtest.h>

#include <sstream>

#include "hvg/grid.hpp"
#include "support.hpp"

using namespace hvg;

TEST(CornerClass, PatternTable) {
  EXPECT_EQ(classify_pattern(false, false, false, false), CornerClass::NotCorner);
  EXPECT_EQ(classify_pattern(true, false, false, false), CornerClass::ConvexCorner);
  EXPECT_EQ(classify_pattern(false, false, false, true), CornerClass::ConvexCorner);
  EXPECT_EQ(classify_pattern(true, true, false, false), CornerClass::NotCorner);
  EXPECT_EQ(classify_pattern(true, false, true, false), CornerClass::NotCorner);
  EXPECT_EQ(classify_pattern(true, false, false, true), CornerClass::Blocked);
  EXPECT_EQ(classify_pattern(false, true, true, false), CornerClass::Blocked);
  EXPECT_EQ(classify_pattern(true, true, true, false), CornerClass::ConcaveCorner);
  EXPECT_EQ(classify_pattern(true, true, true, true), CornerClass::Blocked);
}

TEST(CornerClass, SingleCellHasFourConvexCorners) {
  const GridMap m = parse_map("type octile\nheight 3\nwidth 3\nmap\n...\n.@.\n...\n");
  EXPECT_EQ(m.convex_corners(),
            (std::vector<Vertex>{{1, 1}, {2, 1}, {1, 2}, {2, 2}}));
  EXPECT_EQ(m.corner_class({0, 0}), CornerClass::NotCorner);
}

TEST(CornerClass, MapEdgeCountsAsFree) {
  const GridMap m = parse_map("type octile\nheight 1\nwidth 2\nmap\n@.\n");
  EXPECT_EQ(m.corner_class({0, 0}), CornerClass::ConvexCorner);
  EXPECT_EQ(m.corner_class({1, 1}), CornerClass::ConvexCorner);
}

TEST(MapIo, RoundTrip) {
  const GridMap m = generate_random_map(17, 9, 0.3, 5);
  EXPECT_EQ(parse_map(serialize_map(m)), m);
}

TEST(MapIo, AcceptsMovingAiObstacleGlyphs) {
  const GridMap m = parse_map("type octile\nheight 1\nwidth 6\nmap\n.G@OTW\n");
  EXPECT_FALSE(m.blocked(0, 0));
  EXPECT_FALSE(m.blocked(1, 0));
  for (int x = 2; x < 6; ++x) EXPECT_TRUE(m.blocked(x, 0)) << x;
}

TEST(MapIo, ErrorsCarryLineNumbers) {
  try {
    parse_map("type octile\nheight 2\nwidth 3\nmap\n...\n.?.\n");
    FAIL();
  } catch (const MapParseError& e) {
    EXPECT_EQ(e.line(), 6u);
    EXPECT_EQ(e.column(), 2u);
  }
  EXPECT_THROW(parse_map("type octile\nheight 2\nwidth 3\nmap\n...\n"), MapParseError);
  EXPECT_THROW(parse_map("type octile\nheight 1\nwidth 3\nmap\n....\n"), MapParseError);
  EXPECT_THROW(parse_map(""), MapParseError);
}

TEST(RandomMap, DensityExtremes) {
  EXPECT_EQ(generate_random_map(20, 10, 0.0, 3).obstacle_count(), 0u);
  EXPECT_EQ(generate_random_map(20, 10, 1.0, 3).obstacle_count(), 200u);
  EXPECT_THROW(generate_random_map(4, 4, 1.5, 0), std::invalid_argument);
  EXPECT_THROW(generate_random_map(0, 4, 0.5, 0), std::invalid_argument);
}

TEST(RandomMap, DeterministicPerSeed) {
  EXPECT_EQ(generate_random_map(64, 64, 0.4, 11), generate_random_map(64, 64, 0.4, 11));
  EXPECT_NE(generate_random_map(64, 64, 0.4, 11), generate_random_map(64, 64, 0.4, 12));
  const double frac = generate_random_map(256, 256, 0.3, 1).obstacle_count() / 65536.0;
  EXPECT_NEAR(frac, 0.3, 0.01);
}

TEST(Los, DiagonalPinchBlocks) {
  const GridMap m = parse_map("type octile\nheight 2\nwidth 2\nmap\n@.\n.@\n");
  EXPECT_FALSE(los_segment(m, {0, 2}, {2, 0}));
  EXPECT_FALSE(los_segment(m, {0, 0}, {2, 2}));
  EXPECT_FALSE(los_segment(m, {1, 0}, {1, 2}));
  EXPECT_FALSE(los_segment(m, {0, 1}, {2, 1}));
}

TEST(Los, EdgeBetweenTwoObstaclesIsWalled) {
  const GridMap m = parse_map("type octile\nheight 2\nwidth 3\nmap\n.@.\n.@.\n");
  EXPECT_FALSE(los_segment(m, {1, 1}, {2, 1}));
  EXPECT_TRUE(los_segment(m, {1, 0}, {2, 0}));
  EXPECT_TRUE(los_segment(m, {0, 0}, {0, 2}));
}

TEST(Los, MatchesBruteForceOnAllPairs) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const GridMap m = generate_random_map(8, 8, 0.1 + 0.02 * (seed % 20), seed);
    for (std::size_t i = 0; i < m.vertex_count(); ++i) {
      for (std::size_t j = 0; j < m.vertex_count(); ++j) {
        const Vertex a = m.vertex_at(i);
        const Vertex b = m.vertex_at(j);
        ASSERT_EQ(los_segment(m, a, b), hvgtest::brute_los(m, a, b))
            << "seed " << seed << " " << to_string(a) << " " << to_string(b);
      }
    }
  }
}

TEST(Los, Symmetric) {
  std::mt19937_64 rng(3);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const GridMap m = generate_random_map(16, 16, 0.3, 100 + seed);
    for (int k = 0; k < 2000; ++k) {
      const Vertex a{static_cast<int>(rng() % 17), static_cast<int>(rng() % 17)};
      const Vertex b{static_cast<int>(rng() % 17), static_cast<int>(rng() % 17)};
      ASSERT_EQ(los_segment(m, a, b), los_segment(m, b, a));
    }
  }
}

TEST(ScanStep, NeedsBothFlanksFree) {
  const GridMap m = parse_map("type octile\nheight 2\nwidth 2\nmap\n@.\n..\n");
  EXPECT_FALSE(scan_step_clear(m, {0, 1}, Direction::Right));  // under @
  EXPECT_FALSE(scan_step_clear(m, {1, 0}, Direction::Down));   // beside @
  EXPECT_TRUE(scan_step_clear(m, {1, 1}, Direction::Right));
  EXPECT_TRUE(scan_step_clear(m, {0, 2}, Direction::Right));   // map border
  EXPECT_FALSE(scan_step_clear(m, {2, 2}, Direction::Right));  // leaves lattice
}
