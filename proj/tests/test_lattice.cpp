#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "glassbridge/lattice.hpp"

using namespace glassbridge;

namespace {

ChainZ2 random_chain(const TorusLattice& lat, std::mt19937_64& rng, double density = 0.3) {
  std::bernoulli_distribution coin(density);
  ChainZ2 c(lat.num_edges());
  for (int e = 0; e < lat.num_edges(); ++e)
    if (coin(rng)) c.toggle(e);
  return c;
}

// Closed chain: random sum of plaquettes plus random logical loops.
ChainZ2 random_cycle(const TorusLattice& lat, std::mt19937_64& rng, HomologyClass* k) {
  ChainZ2 c(lat.num_edges());
  std::bernoulli_distribution coin(0.5);
  for (int p = 0; p < lat.num_plaquettes(); ++p)
    if (coin(rng)) c ^= plaquette_chain(lat, p);
  *k = HomologyClass::from_index(static_cast<int>(rng() % 4));
  c ^= logical_operator(lat, *k);
  return c;
}

}  // namespace

TEST(Torus, RejectsDegenerateSizes) {
  EXPECT_THROW(build_torus(1), std::invalid_argument);
  EXPECT_THROW(build_torus(0), std::invalid_argument);
}

TEST(Torus, CountsAndEulerCharacteristic) {
  for (int L = 2; L <= 6; ++L) {
    const auto lat = build_torus(L);
    EXPECT_EQ(lat.num_sites(), L * L);
    EXPECT_EQ(lat.num_edges(), 2 * L * L);
    EXPECT_EQ(lat.num_plaquettes(), L * L);
    EXPECT_EQ(lat.num_sites() - lat.num_edges() + lat.num_plaquettes(), 0);
  }
  const auto l3 = build_torus(3);
  EXPECT_EQ(l3.num_sites(), 9);
  EXPECT_EQ(l3.num_edges(), 18);
}

TEST(Torus, EdgeIndexIsSiteMajor) {
  const auto lat = build_torus(3);
  EXPECT_EQ(lat.edge(4, Direction::horizontal), 8);
  EXPECT_EQ(lat.edge(4, Direction::vertical), 9);
  EXPECT_EQ(lat.edge_site(9), 4);
  EXPECT_EQ(lat.edge_direction(9), Direction::vertical);
  EXPECT_EQ(lat.endpoints(lat.edge(lat.site(0, 2), Direction::horizontal))[1], lat.site(0, 0));
  EXPECT_EQ(lat.endpoints(lat.edge(lat.site(2, 1), Direction::vertical))[1], lat.site(0, 1));
}

TEST(Torus, IncidenceInvariants) {
  for (int L = 2; L <= 5; ++L) {
    const auto lat = build_torus(L);
    std::vector<int> in_stars(lat.num_edges(), 0), in_plaqs(lat.num_edges(), 0);
    for (int s = 0; s < lat.num_sites(); ++s) {
      std::set<int> distinct(lat.star(s).begin(), lat.star(s).end());
      EXPECT_EQ(distinct.size(), 4u);
      for (int e : lat.star(s)) {
        ++in_stars[e];
        const auto& ends = lat.endpoints(e);
        EXPECT_TRUE(ends[0] == s || ends[1] == s);
      }
    }
    for (int p = 0; p < lat.num_plaquettes(); ++p) {
      for (int e : lat.plaquette(p)) ++in_plaqs[e];
      EXPECT_TRUE(boundary(plaquette_chain(lat, p), lat).empty());
    }
    for (int e = 0; e < lat.num_edges(); ++e) {
      EXPECT_EQ(in_stars[e], 2);
      EXPECT_EQ(in_plaqs[e], 2);
    }
  }
}

TEST(Torus, StarPlaquetteOverlap) {
  for (int L = 2; L <= 5; ++L) {
    const auto lat = build_torus(L);
    for (int s = 0; s < lat.num_sites(); ++s) {
      for (int p = 0; p < lat.num_plaquettes(); ++p) {
        int shared = 0;
        for (int e : lat.star(s))
          shared += static_cast<int>(std::count(lat.plaquette(p).begin(), lat.plaquette(p).end(), e));
        const auto& corners = lat.plaquette_corners(p);
        const bool corner = std::find(corners.begin(), corners.end(), s) != corners.end();
        EXPECT_EQ(shared, corner ? 2 : 0) << "L=" << L << " s=" << s << " p=" << p;
      }
    }
  }
}

TEST(Torus, DualEdgeIsBijectionConsistentWithPlaquettes) {
  for (int L = 2; L <= 5; ++L) {
    const auto lat = build_torus(L);
    std::set<int> image;
    for (int e = 0; e < lat.num_edges(); ++e) {
      const int d = lat.dual_edge(e);
      image.insert(d);
      std::set<int> ends(lat.endpoints(d).begin(), lat.endpoints(d).end());
      std::set<int> plaqs(lat.edge_plaquettes(e).begin(), lat.edge_plaquettes(e).end());
      EXPECT_EQ(ends, plaqs);
      for (int p : lat.edge_plaquettes(e)) {
        const auto& pe = lat.plaquette(p);
        EXPECT_NE(std::find(pe.begin(), pe.end(), e), pe.end());
      }
    }
    EXPECT_EQ(static_cast<int>(image.size()), lat.num_edges());
  }
}

TEST(Chain, SymmetricDifferenceGroup) {
  const auto lat = build_torus(4);
  std::mt19937_64 rng(1);
  const auto a = random_chain(lat, rng);
  const auto b = random_chain(lat, rng);
  EXPECT_EQ(a ^ ChainZ2(lat.num_edges()), a);
  EXPECT_TRUE((a ^ a).empty());
  EXPECT_EQ((a ^ b) ^ b, a);
  EXPECT_THROW(ChainZ2::from_edges(4, {4}), std::out_of_range);
  EXPECT_EQ(ChainZ2::from_edges(8, {1, 3, 3}).edges(), std::vector<int>{1});
}

TEST(Boundary, Examples) {
  const auto lat = build_torus(3);
  EXPECT_TRUE(boundary(ChainZ2(lat.num_edges()), lat).empty());
  const int e = lat.edge(lat.site(1, 2), Direction::horizontal);
  const auto b = boundary(ChainZ2::from_edges(lat.num_edges(), {e}), lat);
  EXPECT_EQ(b, (std::vector<int>{lat.site(1, 0), lat.site(1, 2)}));
  EXPECT_TRUE(boundary(plaquette_chain(lat, 4), lat).empty());
}

TEST(Boundary, AlwaysEvenAndMatchesIndependentCount) {
  std::mt19937_64 rng(2);
  for (int L = 2; L <= 5; ++L) {
    const auto lat = build_torus(L);
    for (int trial = 0; trial < 200; ++trial) {
      const auto c = random_chain(lat, rng);
      const auto b = boundary(c, lat);
      EXPECT_EQ(b.size() % 2, 0u);
      // Oracle: degree of every site by scanning its star.
      std::vector<int> odd;
      for (int s = 0; s < lat.num_sites(); ++s) {
        int deg = 0;
        for (int e : lat.star(s)) deg += c.contains(e);
        if (deg % 2) odd.push_back(s);
      }
      EXPECT_EQ(b, odd);
    }
  }
}

TEST(Homology, Examples) {
  const auto lat = build_torus(4);
  EXPECT_EQ(homology_class(plaquette_chain(lat, 5), lat), (HomologyClass{0, 0}));
  auto [lv, lt] = logical_representatives(lat);
  EXPECT_EQ(homology_class(lv, lat), (HomologyClass{1, 0}));
  EXPECT_EQ(homology_class(lt, lat), (HomologyClass{0, 1}));
  EXPECT_EQ(homology_class(lv ^ lt, lat), (HomologyClass{1, 1}));
  EXPECT_THROW(homology_class(ChainZ2::from_edges(lat.num_edges(), {0}), lat), std::invalid_argument);
}

TEST(Homology, ShiftedStraightCyclesKeepTheirClass) {
  const auto lat = build_torus(5);
  for (int r = 0; r < 5; ++r) {
    ChainZ2 row(lat.num_edges()), colm(lat.num_edges());
    for (int c = 0; c < 5; ++c) {
      row.toggle(lat.edge(lat.site(r, c), Direction::horizontal));
      colm.toggle(lat.edge(lat.site(c, r), Direction::vertical));
    }
    EXPECT_EQ(homology_class(row, lat), (HomologyClass{1, 0}));
    EXPECT_EQ(homology_class(colm, lat), (HomologyClass{0, 1}));
  }
}

TEST(Homology, HomomorphismAndPlaquetteInvariance) {
  std::mt19937_64 rng(3);
  for (int L = 2; L <= 5; ++L) {
    const auto lat = build_torus(L);
    for (int trial = 0; trial < 100; ++trial) {
      HomologyClass ka, kb;
      const auto a = random_cycle(lat, rng, &ka);
      const auto b = random_cycle(lat, rng, &kb);
      EXPECT_EQ(homology_class(a, lat), ka);
      EXPECT_EQ(homology_class(a ^ b, lat), ka ^ kb);
      const int p = static_cast<int>(rng() % lat.num_plaquettes());
      EXPECT_EQ(homology_class(a ^ plaquette_chain(lat, p), lat), ka);
    }
  }
}

TEST(Logicals, LengthL) {
  for (int L = 2; L <= 5; ++L) {
    const auto lat = build_torus(L);
    auto [lv, lt] = logical_representatives(lat);
    EXPECT_EQ(lv.weight(), L);
    EXPECT_EQ(lt.weight(), L);
    EXPECT_TRUE(boundary(lv, lat).empty());
    EXPECT_TRUE(boundary(lt, lat).empty());
  }
}

TEST(Torus, JsonListsEveryEdge) {
  const auto lat = build_torus(2);
  const auto text = lat.to_json();
  EXPECT_NE(text.find("\"L\":2"), std::string::npos);
  EXPECT_NE(text.find("[3,\"v\"]"), std::string::npos);
}
